#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "fpc/types.hpp"

namespace fpc::debruijn {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kMaxEnumerationEdges = 16;
inline constexpr std::uint64_t kDefaultStepBudget = 200'000'000;

/// A linear de Bruijn sequence of the given order: length n^l + l - 1.
/// Walks an Eulerian circuit of the order-(l-1) de Bruijn graph from the
/// all-zero node, taking the lowest unused symbol first.
/// Throws std::invalid_argument when n^l exceeds budget.
SymbolString generate(std::uint32_t alphabet, unsigned order, std::uint64_t budget = kDefaultBudget);

/// True iff s has length n^l + l - 1, contains every l-tuple over [0, n)
/// exactly once, and its first and last l - 1 symbols agree.
bool validate(std::span<const Symbol> s, std::uint32_t alphabet, unsigned order);

/// Number of distinct linear de Bruijn sequences, by exhaustive enumeration of
/// Eulerian circuits from every start node. Requires n^l <= 16; throws
/// std::invalid_argument when the search would exceed step_budget.
std::uint64_t enumerate_count(std::uint32_t alphabet, unsigned order,
                              std::uint64_t step_budget = kDefaultStepBudget);

/// (n!)^(n^(l-1)), or nullopt on 64-bit overflow.
std::optional<std::uint64_t> closed_form_count(std::uint32_t alphabet, unsigned order);

/// First n^l symbols of generate(n, l).
SymbolString adversarial_prefix(std::uint32_t alphabet, unsigned order, std::uint64_t budget = kDefaultBudget);

/// adversarial_prefix repeated `repeats` times.
SymbolString adversarial_power(std::uint32_t alphabet, unsigned order, unsigned repeats,
                               std::uint64_t budget = kDefaultBudget);

}  // namespace fpc::debruijn
