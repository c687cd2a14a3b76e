#include "fpc/container.hpp"

#include <algorithm>

namespace fpc::container {

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t value)
{
    do {
        auto byte = static_cast<std::uint8_t>(value & 0x7f);
        value >>= 7;
        if (value != 0)
            byte |= 0x80;
        out.push_back(byte);
    } while (value != 0);
}

std::uint64_t get_varint(std::span<const std::uint8_t> in, std::size_t& pos)
{
    std::uint64_t value = 0;
    for (unsigned shift = 0;; shift += 7) {
        if (pos >= in.size())
            throw FormatError("truncated header", "varint runs past end of input");
        const std::uint8_t byte = in[pos++];
        if (shift == 63 && (byte & 0x7e) != 0)
            throw FormatError("bad header", "varint overflows 64 bits");
        value |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
        if ((byte & 0x80) == 0)
            return value;
        if (shift >= 63)
            throw FormatError("bad header", "varint longer than 10 bytes");
    }
}

std::vector<std::uint8_t> encode_header(const Header& header)
{
    std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
    out.push_back(static_cast<std::uint8_t>(header.codec));
    put_varint(out, header.alphabet);
    put_varint(out, header.order);
    put_varint(out, header.capacity);
    put_varint(out, header.count);
    out.push_back(static_cast<std::uint8_t>(header.mode));
    if (header.mode == AlphabetMode::dense) {
        put_varint(out, header.symbol_map.size());
        out.insert(out.end(), header.symbol_map.begin(), header.symbol_map.end());
    }
    return out;
}

Header decode_header(std::span<const std::uint8_t> in, std::size_t& consumed)
{
    if (in.size() < kMagic.size())
        throw FormatError(in.empty() ? "bad magic" : "truncated header", "input shorter than the magic");
    if (!std::equal(kMagic.begin(), kMagic.end(), in.begin()))
        throw FormatError("bad magic", "");
    std::size_t pos = kMagic.size();
    if (pos >= in.size())
        throw FormatError("truncated header", "missing codec id");

    Header h;
    const std::uint8_t codec = in[pos++];
    if (codec != static_cast<std::uint8_t>(CodecId::footprint) && codec != static_cast<std::uint8_t>(CodecId::mtf))
        throw FormatError("unknown codec", "codec id " + std::to_string(codec));
    h.codec = static_cast<CodecId>(codec);
    h.alphabet = get_varint(in, pos);
    h.order = get_varint(in, pos);
    h.capacity = get_varint(in, pos);
    h.count = get_varint(in, pos);
    if (pos >= in.size())
        throw FormatError("truncated header", "missing alphabet mode");
    const std::uint8_t mode = in[pos++];
    if (mode > 1)
        throw FormatError("bad header", "alphabet mode " + std::to_string(mode));
    h.mode = static_cast<AlphabetMode>(mode);

    if (h.mode == AlphabetMode::dense) {
        const std::uint64_t d = get_varint(in, pos);
        if (d > 256)
            throw FormatError("bad header", "dense map of " + std::to_string(d) + " entries");
        if (in.size() - pos < d)
            throw FormatError("truncated header", "dense map cut short");
        h.symbol_map.assign(in.begin() + static_cast<std::ptrdiff_t>(pos),
                            in.begin() + static_cast<std::ptrdiff_t>(pos + d));
        pos += d;
        if (h.alphabet != std::max<std::uint64_t>(d, 2))
            throw FormatError("bad header", "dense alphabet size disagrees with map");
    } else if (h.alphabet != 256) {
        throw FormatError("bad header", "raw byte alphabet must have n = 256");
    }
    if (h.codec == CodecId::mtf && (h.order != 0 || h.capacity != 0))
        throw FormatError("bad header", "MTF container must carry l = k = 0");
    if (h.codec == CodecId::footprint && (h.capacity < 1 || h.capacity > h.alphabet))
        throw FormatError("bad header", "capacity outside [1, n]");

    consumed = pos;
    return h;
}

}  // namespace fpc::container
