#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fpc/bitcodec.hpp"
#include "fpc/types.hpp"

namespace fpc::mtf {

/// Full recency list over [0, n), starting in identity order.
class MtfList {
public:
    explicit MtfList(std::uint32_t alphabet);

    /// 1-based position of s; s moves to the front.
    std::size_t encode(Symbol s);
    /// Symbol at 1-based position; it moves to the front.
    Symbol decode(std::size_t position);

    std::span<const Symbol> order() const noexcept { return order_; }

private:
    std::vector<Symbol> order_;
};

/// Delta-coded 1-based list positions, one codeword per symbol.
BitString mtf_encode(std::span<const Symbol> s, std::uint32_t alphabet);
void mtf_encode(std::span<const Symbol> s, std::uint32_t alphabet, BitString& sink);

SymbolString mtf_decode(BitReader& source, std::uint32_t alphabet, std::size_t count);
SymbolString mtf_decode(const BitString& bits, std::uint32_t alphabet, std::size_t count);

std::vector<std::size_t> mtf_rank_trace(std::span<const Symbol> s, std::uint32_t alphabet);

/// n * (ceil(log2 n) + 2 ceil(log2(ceil(log2 n) + 1)) + 1): one maximal
/// codeword per distinct symbol.
std::uint64_t additive_slack(std::uint32_t alphabet);

/// (H_0 + 2 log2(H_0 + 1) + 1) |S| + additive_slack(n).
double output_bound_bits(std::span<const Symbol> s, std::uint32_t alphabet);

}  // namespace fpc::mtf
