#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "fpc/bitcodec.hpp"
#include "fpc/types.hpp"

namespace fpc::footprint {

/// Largest n^l the context model accepts.
inline constexpr std::uint64_t kMaxContextSpace = std::uint64_t{1} << 40;

/// Knobs of the context-MTF compressor: alphabet n, context order l and list capacity k.
struct CodecParams {
    std::uint32_t alphabet = 2;
    unsigned order = 0;
    std::uint32_t capacity = 1;
    unsigned raw_width = 1;          // ceil(log2 n)
    std::uint64_t context_space = 1; // n^l

    /// Validates and clamps capacity to n. Throws std::invalid_argument.
    static CodecParams make(std::uint32_t alphabet, unsigned order, std::uint32_t capacity);

    friend bool operator==(const CodecParams&, const CodecParams&) = default;
};

/// min(floor(n^eps), n), exact at integer boundaries such as 64^(1/3) = 4.
std::uint32_t derive_capacity(std::uint32_t alphabet, double epsilon);

/// log2(k + 1) / log2(n): the smallest eps whose capacity would exceed k.
double effective_epsilon(std::uint32_t alphabet, std::uint32_t capacity);

/// Recency list holding at most `capacity` distinct symbols, most recent first.
class BoundedMtfList {
public:
    explicit BoundedMtfList(std::uint32_t capacity);

    /// 1-based position of s, or 0 when absent.
    std::size_t find(Symbol s) const noexcept;
    Symbol at(std::size_t position) const { return entries_.at(position - 1); }
    void move_to_front(std::size_t position);
    /// Inserts s at the front and evicts the last entry if the list overflows.
    void insert_front(Symbol s);

    std::size_t size() const noexcept { return entries_.size(); }
    std::uint32_t capacity() const noexcept { return capacity_; }
    std::span<const Symbol> entries() const noexcept { return entries_; }

private:
    std::uint32_t capacity_;
    std::vector<Symbol> entries_;
};

/// One list per context seen so far, created on first use.
class ContextModel {
public:
    explicit ContextModel(const CodecParams& params);

    BoundedMtfList& list_for(std::uint64_t context);
    const BoundedMtfList* find(std::uint64_t context) const;
    std::size_t allocated_count() const noexcept { return lists_.size(); }

private:
    CodecParams params_;
    std::vector<std::uint32_t> flat_;   // list index + 1 per context, used when n^l is small
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
    std::vector<BoundedMtfList> lists_;
};

enum class CodewordKind : std::uint8_t { raw, hit, miss };

/// One emitted codeword, right-aligned in `bits`.
struct Codeword {
    std::uint64_t context = 0;  // meaningless for raw
    CodewordKind kind = CodewordKind::raw;
    Symbol symbol = 0;
    std::uint32_t position = 0; // 1-based list position for hits
    unsigned length = 0;
    std::uint64_t bits = 0;

    friend bool operator==(const Codeword&, const Codeword&) = default;
};

struct FootprintReport {
    std::uint64_t symbols = 0;
    std::uint64_t raw_prefix_bits = 0;
    std::uint64_t hit_bits = 0;
    std::uint64_t miss_bits = 0;
    std::uint64_t payload_bits = 0;
    std::uint64_t raw_count = 0;
    std::uint64_t hit_count = 0;
    std::uint64_t miss_count = 0;
    std::uint64_t allocated_lists = 0;
    std::uint64_t model_bits_actual = 0;   // allocated * k * raw_width
    std::uint64_t model_bits_budget = 0;   // n^l * k * raw_width
    std::uint64_t index_overhead_bits = 0; // allocated * (64-bit key + list length field)

    friend bool operator==(const FootprintReport&, const FootprintReport&) = default;
};

/// Streaming encoder: one call per input symbol, no lookahead.
class Compressor {
public:
    explicit Compressor(const CodecParams& params);

    /// Encodes s into sink. Out-of-range symbols are rejected before anything is written.
    Codeword push(Symbol s, BitString& sink);
    /// Advances the model by one symbol and returns its codeword without emitting it.
    Codeword encode(Symbol s);

    const CodecParams& params() const noexcept { return params_; }
    FootprintReport report() const;

private:
    CodecParams params_;
    ContextModel model_;
    std::uint64_t context_ = 0;
    FootprintReport tally_;
};

/// Streaming decoder mirroring Compressor's list updates.
class Decompressor {
public:
    explicit Decompressor(const CodecParams& params);

    Symbol pull(BitReader& source);

private:
    CodecParams params_;
    ContextModel model_;
    std::uint64_t context_ = 0;
    std::uint64_t position_ = 0;
};

FootprintReport compress(const CodecParams& params, std::span<const Symbol> s, BitString& sink);
BitString compress(const CodecParams& params, std::span<const Symbol> s);

/// Batch encoder producing output identical to compress(). After the raw
/// prefix each context's follower string is coded independently, so contexts
/// are processed in parallel and the codewords are stitched back in input order.
FootprintReport compress_parallel(const CodecParams& params, std::span<const Symbol> s, BitString& sink);

SymbolString decompress(const CodecParams& params, BitReader& source, std::size_t count);
SymbolString decompress(const CodecParams& params, const BitString& bits, std::size_t count);

std::vector<Codeword> codeword_trace(const CodecParams& params, std::span<const Symbol> s);

/// Bits of model memory if every one of the n^l lists were allocated.
std::uint64_t model_bits_budget(const CodecParams& params);

}  // namespace fpc::footprint
