#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpc {

/// A character of an n-ary string, always in [0, n).
using Symbol = std::uint32_t;
using SymbolString = std::vector<Symbol>;

/// Largest alphabet the codecs accept.
inline constexpr std::uint32_t kMaxAlphabet = 1u << 16;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The bit source ended in the middle of a codeword or field.
struct TruncatedStream : Error {
    explicit TruncatedStream(const std::string& what) : Error("truncated stream: " + what) {}
};

/// The bit source decoded to something no encoder could have produced.
struct CorruptStream : Error {
    explicit CorruptStream(const std::string& what) : Error("corrupt stream: " + what) {}
};

/// Number of bits in the binary representation of x (bitlen(0) = 0).
constexpr unsigned bit_length(std::uint64_t x) noexcept
{
    unsigned b = 0;
    while (x != 0) {
        ++b;
        x >>= 1;
    }
    return b;
}

/// ceil(log2(x)) for x >= 1.
constexpr unsigned ceil_log2(std::uint64_t x) noexcept
{
    return x <= 1 ? 0 : bit_length(x - 1);
}

/// base^exp, or 0 when the result exceeds limit.
constexpr std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit) noexcept
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base)
            return 0;
        r *= base;
    }
    return r <= limit ? r : 0;
}

}  // namespace fpc
