#include "fpc/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "fpc/bitcodec.hpp"
#include "fpc/debruijn.hpp"
#include "fpc/entropy.hpp"
#include "fpc/mtf.hpp"

namespace fpc::cli {

namespace {

constexpr std::size_t kChunk = 1 << 16;

using container::AlphabetMode;
using container::CodecId;

struct Alphabet {
    std::uint32_t size = 256;
    std::array<Symbol, 256> to_symbol{};
    std::vector<std::uint8_t> to_byte;
};

Alphabet raw_alphabet()
{
    Alphabet a;
    for (unsigned b = 0; b < 256; ++b)
        a.to_symbol[b] = b;
    return a;
}

Alphabet dense_alphabet(const std::array<std::uint64_t, 256>& histogram)
{
    Alphabet a;
    for (unsigned b = 0; b < 256; ++b) {
        if (histogram[b] != 0) {
            a.to_symbol[b] = static_cast<Symbol>(a.to_byte.size());
            a.to_byte.push_back(static_cast<std::uint8_t>(b));
        }
    }
    a.size = std::max<std::uint32_t>(static_cast<std::uint32_t>(a.to_byte.size()), 2);
    return a;
}

std::vector<std::uint8_t> read_all(std::istream& in)
{
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw Error("cannot read input");
    return data;
}

void write_bytes(std::ostream& out, std::span<const std::uint8_t> bytes)
{
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error("cannot write output");
}

// size of the remaining input, or nullopt when the stream cannot seek
std::optional<std::uint64_t> remaining_size(std::istream& in)
{
    const auto start = in.tellg();
    if (start == std::streampos(-1))
        return std::nullopt;
    if (!in.seekg(0, std::ios::end)) {
        in.clear();
        return std::nullopt;
    }
    const auto end = in.tellg();
    in.seekg(start);
    if (!in || end == std::streampos(-1))
        return std::nullopt;
    return static_cast<std::uint64_t>(end - start);
}

std::array<std::uint64_t, 256> scan_histogram(std::istream& in)
{
    std::array<std::uint64_t, 256> histogram{};
    const auto start = in.tellg();
    std::vector<char> buffer(kChunk);
    while (in.read(buffer.data(), static_cast<std::streamsize>(buffer.size())) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i)
            ++histogram[static_cast<std::uint8_t>(buffer[static_cast<std::size_t>(i)])];
    }
    in.clear();
    in.seekg(start);
    return histogram;
}

std::string format_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

const char* codec_name(CodecId id)
{
    return id == CodecId::mtf ? "mtf" : "footprint";
}

BoundReport compress_seekable(std::istream& in, std::ostream& out, const CompressOptions& options,
                              std::uint64_t count)
{
    const Alphabet alphabet =
        options.alphabet == AlphabetMode::dense ? dense_alphabet(scan_histogram(in)) : raw_alphabet();
    const std::uint32_t n = alphabet.size;

    container::Header header;
    header.codec = options.codec;
    header.alphabet = n;
    header.count = count;
    header.mode = options.alphabet;
    header.symbol_map = alphabet.to_byte;

    std::optional<footprint::CodecParams> params;
    unsigned order = 0;
    if (options.codec == CodecId::footprint) {
        if (options.capacity.has_value() == options.epsilon.has_value())
            throw std::invalid_argument("give exactly one of --capacity and --epsilon");
        if (checked_pow(n, options.order, options.max_contexts) == 0)
            throw std::invalid_argument("n^l = " + std::to_string(n) + "^" + std::to_string(options.order) +
                                        " exceeds the model budget cap of " +
                                        std::to_string(options.max_contexts) + " contexts");
        const std::uint32_t k =
            options.capacity ? *options.capacity : footprint::derive_capacity(n, *options.epsilon);
        params = footprint::CodecParams::make(n, options.order, k);
        order = params->order;
        header.order = params->order;
        header.capacity = params->capacity;
    }

    const std::vector<std::uint8_t> head = container::encode_header(header);
    write_bytes(out, head);

    std::vector<entropy::ContextHistogram> histograms;
    for (unsigned l = 0; l <= order; ++l)
        histograms.emplace_back(n, l);

    std::optional<footprint::Compressor> encoder;
    std::optional<mtf::MtfList> mtf_list;
    if (params)
        encoder.emplace(*params);
    else
        mtf_list.emplace(n);

    BitString sink;
    std::uint64_t seen = 0;
    std::uint64_t payload_bytes = 0;
    std::vector<char> buffer(kChunk);
    while (in.read(buffer.data(), static_cast<std::streamsize>(buffer.size())) || in.gcount() > 0) {
        const auto got = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < got; ++i) {
            const Symbol s = alphabet.to_symbol[static_cast<std::uint8_t>(buffer[i])];
            if (encoder)
                encoder->push(s, sink);
            else
                delta_encode(sink, mtf_list->encode(s));
            for (auto& h : histograms)
                h.push(s);
        }
        seen += got;
        const std::vector<std::uint8_t> full = sink.take_full_bytes();
        payload_bytes += full.size();
        write_bytes(out, full);
    }
    if (in.bad())
        throw Error("cannot read input");
    if (seen != count)
        throw Error("input changed size while compressing");

    const std::uint64_t tail_bits = sink.size();
    payload_bytes += sink.bytes().size();
    write_bytes(out, sink.bytes());

    BoundReport r;
    r.codec = options.codec;
    r.alphabet = n;
    r.order = order;
    r.raw_width = ceil_log2(n);
    r.symbols = count;
    r.header_bytes = head.size();
    r.payload_bytes = payload_bytes;
    r.payload_bits = (payload_bytes - sink.bytes().size()) * 8 + tail_bits;
    r.padding_bits = payload_bytes * 8 - r.payload_bits;
    r.bits_per_symbol = count == 0 ? 0.0 : static_cast<double>(r.payload_bits) / static_cast<double>(count);
    for (const auto& h : histograms) {
        r.entropies.push_back(h.entropy());
        r.histogram_entries += h.entries();
    }
    if (encoder) {
        r.capacity = params->capacity;
        r.footprint = encoder->report();
        r.epsilon_eff = footprint::effective_epsilon(n, params->capacity);
        r.bound_bits = entropy_bound_bits(*params, r.entropies.back(), count);
    } else {
        const double h = r.entropies.front();
        r.bound_bits = (h + 2.0 * std::log2(h + 1.0) + 1.0) * static_cast<double>(count) +
                       static_cast<double>(mtf::additive_slack(n));
    }
    r.pass = static_cast<double>(r.payload_bits) <= r.bound_bits;
    return r;
}

}  // namespace

double entropy_bound_bits(const footprint::CodecParams& params, double hl, std::uint64_t symbols)
{
    const double eps = footprint::effective_epsilon(params.alphabet, params.capacity);
    const double per_symbol = (hl + 2.0 * std::log2(hl + 1.0) + 3.0) / eps;
    const double additive = static_cast<double>(params.context_space) * params.capacity * (params.raw_width + 2.0) +
                            static_cast<double>(params.order) * params.raw_width;
    return per_symbol * static_cast<double>(symbols) + additive;
}

BoundReport compress(std::istream& in, std::ostream& out, const CompressOptions& options)
{
    if (const auto size = remaining_size(in))
        return compress_seekable(in, out, options, *size);
    const std::vector<std::uint8_t> data = read_all(in);
    std::istringstream buffered(std::string(data.begin(), data.end()));
    return compress_seekable(buffered, out, options, data.size());
}

void decompress(std::istream& in, std::ostream& out)
{
    const std::vector<std::uint8_t> data = read_all(in);
    std::size_t consumed = 0;
    const container::Header header = container::decode_header(data, consumed);
    const std::span<const std::uint8_t> payload(data.data() + consumed, data.size() - consumed);
    BitReader reader(payload);

    const auto n = static_cast<std::uint32_t>(header.alphabet);
    std::optional<footprint::Decompressor> decoder;
    std::optional<mtf::MtfList> mtf_list;
    if (header.codec == CodecId::footprint)
        decoder.emplace(footprint::CodecParams::make(n, static_cast<unsigned>(header.order),
                                                     static_cast<std::uint32_t>(header.capacity)));
    else
        mtf_list.emplace(n);

    std::vector<std::uint8_t> chunk;
    chunk.reserve(kChunk);
    for (std::uint64_t i = 0; i < header.count; ++i) {
        const Symbol s = decoder ? decoder->pull(reader) : mtf_list->decode(delta_decode(reader));
        if (header.mode == AlphabetMode::dense) {
            if (s >= header.symbol_map.size())
                throw CorruptStream("symbol " + std::to_string(s) + " outside the dense map");
            chunk.push_back(header.symbol_map[s]);
        } else {
            chunk.push_back(static_cast<std::uint8_t>(s));
        }
        if (chunk.size() == kChunk) {
            write_bytes(out, chunk);
            chunk.clear();
        }
    }
    write_bytes(out, chunk);

    if (reader.remaining() >= 8)
        throw CorruptStream("trailing data after payload");
    if (reader.read_bits(static_cast<unsigned>(reader.remaining())) != 0)
        throw CorruptStream("nonzero padding bits");
}

unsigned max_analyze_order(std::uint32_t alphabet)
{
    unsigned order = 0;
    while (checked_pow(alphabet, order + 1, std::uint64_t{1} << 32) != 0)
        ++order;
    return order;
}

void analyze(std::istream& in, std::ostream& out, const AnalyzeOptions& options)
{
    const std::vector<std::uint8_t> data = read_all(in);
    std::array<std::uint64_t, 256> histogram{};
    for (std::uint8_t b : data)
        ++histogram[b];
    const Alphabet alphabet = options.alphabet == AlphabetMode::dense ? dense_alphabet(histogram) : raw_alphabet();
    const std::uint32_t n = alphabet.size;
    if (options.max_order > max_analyze_order(n))
        throw std::invalid_argument("max order " + std::to_string(options.max_order) + " exceeds the cap of " +
                                    std::to_string(max_analyze_order(n)) + " for n = " + std::to_string(n));

    SymbolString s;
    s.reserve(data.size());
    for (std::uint8_t b : data)
        s.push_back(alphabet.to_symbol[b]);

    const entropy::EntropyReport report = entropy::analyze(s, n, options.max_order);
    out << "symbols " << report.length << '\n';
    out << "alphabet " << n << '\n';
    out << "distinct " << report.distinct << '\n';
    out << "log2_n " << format_double(std::log2(static_cast<double>(n))) << '\n';
    for (unsigned l = 0; l <= options.max_order; ++l)
        out << 'h' << l << ' ' << format_double(report.values[l]) << '\n';

    // the context-table sum against an independent count-based evaluation
    for (unsigned l = 1; l <= options.max_order; ++l) {
        entropy::ContextHistogram counts(n, l);
        for (Symbol c : s)
            counts.push(c);
        const double by_table = report.decomposition_sums[l];
        const double by_counts = counts.entropy() * static_cast<double>(s.size());
        const bool ok = std::fabs(by_table - by_counts) <= 1e-9 * std::max(1.0, std::fabs(by_table));
        out << "decomposition" << l << ' ' << format_double(by_table) << '\n';
        out << "decomposition" << l << "_check " << (ok ? "ok" : "mismatch") << '\n';
    }
}

void debruijn(std::ostream& out, const DeBruijnOptions& options)
{
    if (options.mode == DeBruijnMode::count) {
        const std::uint64_t counted = debruijn::enumerate_count(options.alphabet, options.order);
        const auto formula = debruijn::closed_form_count(options.alphabet, options.order);
        out << counted << ' ' << (formula ? std::to_string(*formula) : std::string("overflow")) << '\n';
        return;
    }
    if (options.alphabet > 256)
        throw std::invalid_argument("emit writes one byte per symbol, so n must be at most 256");
    const SymbolString s = options.full ? debruijn::generate(options.alphabet, options.order)
                                        : debruijn::adversarial_prefix(options.alphabet, options.order);
    std::vector<std::uint8_t> bytes(s.begin(), s.end());
    write_bytes(out, bytes);
}

void write_report(std::ostream& out, const BoundReport& r, ReportFormat format)
{
    if (format == ReportFormat::json) {
        nlohmann::ordered_json j;
        j["codec"] = codec_name(r.codec);
        j["n"] = r.alphabet;
        j["order"] = r.order;
        j["capacity"] = r.capacity;
        j["raw_width"] = r.raw_width;
        j["symbols"] = r.symbols;
        for (std::size_t l = 0; l < r.entropies.size(); ++l)
            j["h" + std::to_string(l)] = r.entropies[l];
        j["header_bytes"] = r.header_bytes;
        j["payload_bytes"] = r.payload_bytes;
        j["padding_bits"] = r.padding_bits;
        j["payload_bits"] = r.payload_bits;
        j["bits_per_symbol"] = r.bits_per_symbol;
        j["eps_eff"] = r.epsilon_eff;
        j["bound_bits"] = r.bound_bits;
        j["pass"] = r.pass;
        j["hits"] = r.footprint.hit_count;
        j["misses"] = r.footprint.miss_count;
        j["raw_symbols"] = r.footprint.raw_count;
        j["raw_prefix_bits"] = r.footprint.raw_prefix_bits;
        j["allocated_lists"] = r.footprint.allocated_lists;
        j["model_bits_actual"] = r.footprint.model_bits_actual;
        j["model_bits_budget"] = r.footprint.model_bits_budget;
        j["index_overhead_bits"] = r.footprint.index_overhead_bits;
        j["histogram_entries"] = r.histogram_entries;
        out << j.dump(2) << '\n';
        return;
    }
    out << "codec " << codec_name(r.codec) << '\n';
    out << "n " << r.alphabet << '\n';
    out << "order " << r.order << '\n';
    out << "capacity " << r.capacity << '\n';
    out << "raw_width " << r.raw_width << '\n';
    out << "symbols " << r.symbols << '\n';
    for (std::size_t l = 0; l < r.entropies.size(); ++l)
        out << 'h' << l << ' ' << format_double(r.entropies[l]) << '\n';
    out << "header_bytes " << r.header_bytes << '\n';
    out << "payload_bytes " << r.payload_bytes << '\n';
    out << "padding_bits " << r.padding_bits << '\n';
    out << "payload_bits " << r.payload_bits << '\n';
    out << "bits_per_symbol " << format_double(r.bits_per_symbol) << '\n';
    out << "eps_eff " << format_double(r.epsilon_eff) << '\n';
    out << "bound_bits " << format_double(r.bound_bits) << '\n';
    out << "pass " << (r.pass ? 1 : 0) << '\n';
    out << "hits " << r.footprint.hit_count << '\n';
    out << "misses " << r.footprint.miss_count << '\n';
    out << "raw_symbols " << r.footprint.raw_count << '\n';
    out << "raw_prefix_bits " << r.footprint.raw_prefix_bits << '\n';
    out << "allocated_lists " << r.footprint.allocated_lists << '\n';
    out << "model_bits_actual " << r.footprint.model_bits_actual << '\n';
    out << "model_bits_budget " << r.footprint.model_bits_budget << '\n';
    out << "index_overhead_bits " << r.footprint.index_overhead_bits << '\n';
    out << "histogram_entries " << r.histogram_entries << '\n';
}

}  // namespace fpc::cli
