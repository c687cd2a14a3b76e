#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpc/types.hpp"

namespace fpc::container {

inline constexpr std::array<std::uint8_t, 4> kMagic{'F', 'P', 'C', '1'};

enum class CodecId : std::uint8_t { footprint = 1, mtf = 2 };
enum class AlphabetMode : std::uint8_t { raw = 0, dense = 1 };

/// Malformed container. `kind` is a short failure class such as "bad magic".
struct FormatError : Error {
    FormatError(std::string kind, const std::string& detail)
        : Error(detail.empty() ? kind : kind + ": " + detail), kind(std::move(kind)) {}
    std::string kind;
};

/// "FPC1", codec byte, varints n, l, k, m, alphabet-mode byte, then for dense
/// mode a varint d and the d bytes of the symbol map.
struct Header {
    CodecId codec = CodecId::footprint;
    std::uint64_t alphabet = 256;
    std::uint64_t order = 0;
    std::uint64_t capacity = 0;
    std::uint64_t count = 0;
    AlphabetMode mode = AlphabetMode::raw;
    std::vector<std::uint8_t> symbol_map;   // dense mode: byte value of symbol i

    friend bool operator==(const Header&, const Header&) = default;
};

/// Unsigned LEB128: 7 bits per byte, least significant group first.
void put_varint(std::vector<std::uint8_t>& out, std::uint64_t value);
std::uint64_t get_varint(std::span<const std::uint8_t> in, std::size_t& pos);

std::vector<std::uint8_t> encode_header(const Header& header);

/// Parses and checks a header; `consumed` receives its size in bytes.
Header decode_header(std::span<const std::uint8_t> in, std::size_t& consumed);

}  // namespace fpc::container
