#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpc/types.hpp"

namespace fpc {

/// Append-only bit sequence, packed MSB-first into bytes.
///
/// The unused low bits of the last byte are always zero, so bytes() is the
/// container-level zero-padded encoding of the stream.
class BitString {
public:
    BitString() = default;

    /// Parses a string of '0'/'1' characters; spaces are ignored.
    static BitString from_string(std::string_view text);

    /// Appends the low `width` bits of value, MSB first. Rejects values that do not fit.
    void append_bits(std::uint64_t value, unsigned width);
    void append_bit(bool bit);
    void append(const BitString& other);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    bool bit(std::size_t index) const;

    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
    std::string to_string() const;

    /// Removes every complete byte from the front and returns them, keeping
    /// the trailing partial byte. Used to stream long outputs.
    std::vector<std::uint8_t> take_full_bytes();

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t size_ = 0;
};

/// Cursor over an MSB-first packed bit sequence.
class BitReader {
public:
    BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count);
    explicit BitReader(std::span<const std::uint8_t> bytes) : BitReader(bytes, bytes.size() * 8) {}
    explicit BitReader(const BitString& bits) : BitReader(bits.bytes(), bits.size()) {}

    bool read_bit();
    std::uint64_t read_bits(unsigned width);

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return limit_ - pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t limit_;
    std::size_t pos_ = 0;
};

void write_bits(BitString& sink, std::uint64_t value, unsigned width);
std::uint64_t read_bits(BitReader& source, unsigned width);

// Elias codes over positive integers. Encoders throw std::invalid_argument on 0.

void gamma_encode(BitString& sink, std::uint64_t x);
BitString gamma_encode(std::uint64_t x);
std::uint64_t gamma_decode(BitReader& source);

/// Gamma-coded bit length of x, then the bitlen(x) - 1 low-order bits of x.
void delta_encode(BitString& sink, std::uint64_t x);
BitString delta_encode(std::uint64_t x);
std::uint64_t delta_decode(BitReader& source);

constexpr unsigned gamma_length(std::uint64_t x) noexcept
{
    return 2 * bit_length(x) - 1;
}

constexpr unsigned delta_length(std::uint64_t x) noexcept
{
    const unsigned b = bit_length(x);
    return gamma_length(b) + b - 1;
}

/// The delta codeword of x right-aligned in an integer, for codeword traces.
std::uint64_t delta_codeword(std::uint64_t x);

}  // namespace fpc
