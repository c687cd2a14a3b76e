#include "fpc/bitcodec.hpp"

#include <stdexcept>

namespace fpc {

BitString BitString::from_string(std::string_view text)
{
    BitString out;
    for (char c : text) {
        if (c == '0' || c == '1')
            out.append_bit(c == '1');
        else if (c != ' ')
            throw std::invalid_argument("bit string may only contain '0', '1' and spaces");
    }
    return out;
}

void BitString::append_bit(bool bit)
{
    const unsigned offset = size_ & 7;
    if (offset == 0)
        bytes_.push_back(0);
    if (bit)
        bytes_.back() |= static_cast<std::uint8_t>(0x80u >> offset);
    ++size_;
}

void BitString::append_bits(std::uint64_t value, unsigned width)
{
    if (width > 64)
        throw std::invalid_argument("field width exceeds 64 bits");
    if (width < 64 && (value >> width) != 0)
        throw std::invalid_argument("value " + std::to_string(value) + " does not fit in " +
                                    std::to_string(width) + " bits");
    while (width > 0) {
        const unsigned offset = size_ & 7;
        if (offset == 0)
            bytes_.push_back(0);
        const unsigned room = 8 - offset;
        const unsigned take = width < room ? width : room;
        const auto chunk = static_cast<std::uint8_t>((value >> (width - take)) & ((1u << take) - 1));
        bytes_.back() |= static_cast<std::uint8_t>(chunk << (room - take));
        size_ += take;
        width -= take;
    }
}

void BitString::append(const BitString& other)
{
    if ((size_ & 7) == 0) {
        bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
        size_ += other.size_;
        return;
    }
    const std::size_t full = other.size_ / 8;
    for (std::size_t i = 0; i < full; ++i)
        append_bits(other.bytes_[i], 8);
    const unsigned tail = other.size_ & 7;
    if (tail != 0)
        append_bits(static_cast<std::uint64_t>(other.bytes_[full] >> (8 - tail)), tail);
}

bool BitString::bit(std::size_t index) const
{
    if (index >= size_)
        throw std::out_of_range("bit index out of range");
    return (bytes_[index >> 3] >> (7 - (index & 7))) & 1u;
}

std::string BitString::to_string() const
{
    std::string out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i)
        out.push_back(bit(i) ? '1' : '0');
    return out;
}

std::vector<std::uint8_t> BitString::take_full_bytes()
{
    const std::size_t full = size_ / 8;
    std::vector<std::uint8_t> out(bytes_.begin(), bytes_.begin() + static_cast<std::ptrdiff_t>(full));
    bytes_.erase(bytes_.begin(), bytes_.begin() + static_cast<std::ptrdiff_t>(full));
    size_ -= full * 8;
    return out;
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count)
    : bytes_(bytes), limit_(bit_count)
{
    if (bit_count > bytes.size() * 8)
        throw std::invalid_argument("bit count exceeds buffer");
}

bool BitReader::read_bit()
{
    if (pos_ >= limit_)
        throw TruncatedStream("needed 1 more bit");
    const bool b = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return b;
}

std::uint64_t BitReader::read_bits(unsigned width)
{
    if (width > 64)
        throw std::invalid_argument("field width exceeds 64 bits");
    if (remaining() < width)
        throw TruncatedStream("needed " + std::to_string(width) + " bits, " +
                              std::to_string(remaining()) + " left");
    std::uint64_t value = 0;
    while (width > 0) {
        const unsigned offset = pos_ & 7;
        const unsigned room = 8 - offset;
        const unsigned take = width < room ? width : room;
        const unsigned byte = bytes_[pos_ >> 3];
        const std::uint64_t chunk = (byte >> (room - take)) & ((1u << take) - 1);
        value = (take == 64 ? 0 : value << take) | chunk;
        pos_ += take;
        width -= take;
    }
    return value;
}

void write_bits(BitString& sink, std::uint64_t value, unsigned width)
{
    sink.append_bits(value, width);
}

std::uint64_t read_bits(BitReader& source, unsigned width)
{
    return source.read_bits(width);
}

void gamma_encode(BitString& sink, std::uint64_t x)
{
    if (x == 0)
        throw std::invalid_argument("gamma code is defined only for x >= 1");
    const unsigned b = bit_length(x);
    sink.append_bits(0, b - 1);
    sink.append_bits(x, b);
}

BitString gamma_encode(std::uint64_t x)
{
    BitString out;
    gamma_encode(out, x);
    return out;
}

std::uint64_t gamma_decode(BitReader& source)
{
    unsigned zeros = 0;
    while (!source.read_bit()) {
        if (++zeros > 63)
            throw CorruptStream("gamma prefix longer than 63 zeros");
    }
    return (std::uint64_t{1} << zeros) | source.read_bits(zeros);
}

void delta_encode(BitString& sink, std::uint64_t x)
{
    if (x == 0)
        throw std::invalid_argument("delta code is defined only for x >= 1");
    const unsigned b = bit_length(x);
    gamma_encode(sink, b);
    sink.append_bits(b == 64 ? x & ~(std::uint64_t{1} << 63) : x & ((std::uint64_t{1} << (b - 1)) - 1),
                     b - 1);
}

BitString delta_encode(std::uint64_t x)
{
    BitString out;
    delta_encode(out, x);
    return out;
}

std::uint64_t delta_decode(BitReader& source)
{
    const std::uint64_t b = gamma_decode(source);
    if (b > 64)
        throw CorruptStream("delta length field " + std::to_string(b) + " exceeds 64");
    const auto low = static_cast<unsigned>(b - 1);
    return (std::uint64_t{1} << low) | source.read_bits(low);
}

std::uint64_t delta_codeword(std::uint64_t x)
{
    if (x == 0)
        throw std::invalid_argument("delta code is defined only for x >= 1");
    if (delta_length(x) > 64)
        throw std::invalid_argument("delta codeword does not fit in 64 bits");
    const unsigned b = bit_length(x);
    // gamma(b) read as an integer is b itself; the leading zeros are implicit
    return (std::uint64_t{b} << (b - 1)) | (x & ((std::uint64_t{1} << (b - 1)) - 1));
}

}  // namespace fpc
