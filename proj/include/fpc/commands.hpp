#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fpc/container.hpp"
#include "fpc/footprint.hpp"

namespace fpc::cli {

struct CompressOptions {
    container::CodecId codec = container::CodecId::footprint;
    unsigned order = 0;
    std::optional<std::uint32_t> capacity;
    std::optional<double> epsilon;
    container::AlphabetMode alphabet = container::AlphabetMode::raw;
    std::uint64_t max_contexts = std::uint64_t{1} << 24;   // cap on n^l
};

/// Sizes and bound check for one compression run.
struct BoundReport {
    container::CodecId codec = container::CodecId::footprint;
    std::uint32_t alphabet = 0;
    unsigned order = 0;
    std::uint32_t capacity = 0;
    unsigned raw_width = 0;
    std::uint64_t symbols = 0;
    std::vector<double> entropies;          // H_0..H_l
    std::uint64_t header_bytes = 0;
    std::uint64_t payload_bytes = 0;
    std::uint64_t padding_bits = 0;
    std::uint64_t payload_bits = 0;
    double bits_per_symbol = 0.0;
    double epsilon_eff = 0.0;
    double bound_bits = 0.0;
    bool pass = false;
    std::uint64_t histogram_entries = 0;
    footprint::FootprintReport footprint;   // zero for the MTF codec
};

/// (1/eps_eff)(H_l + 2 log2(H_l + 1) + 3) m + n^l k (raw_width + 2) + l raw_width.
double entropy_bound_bits(const footprint::CodecParams& params, double hl, std::uint64_t symbols);

/// Writes a container for `in` to `out`. Seekable inputs are streamed; others
/// are buffered first. Throws fpc::Error or std::invalid_argument.
BoundReport compress(std::istream& in, std::ostream& out, const CompressOptions& options);

/// Inverse of compress. Throws container::FormatError, TruncatedStream or CorruptStream.
void decompress(std::istream& in, std::ostream& out);

struct AnalyzeOptions {
    unsigned max_order = 2;
    container::AlphabetMode alphabet = container::AlphabetMode::raw;
};

/// Largest order the analyzer accepts for alphabet n (n^L <= 2^32).
unsigned max_analyze_order(std::uint32_t alphabet);

/// Entropy report as `key value` lines.
void analyze(std::istream& in, std::ostream& out, const AnalyzeOptions& options);

enum class DeBruijnMode { emit, count };

struct DeBruijnOptions {
    std::uint32_t alphabet = 2;
    unsigned order = 1;
    DeBruijnMode mode = DeBruijnMode::emit;
    bool full = false;
};

void debruijn(std::ostream& out, const DeBruijnOptions& options);

enum class ReportFormat { text, json };

void write_report(std::ostream& out, const BoundReport& report, ReportFormat format);

}  // namespace fpc::cli
