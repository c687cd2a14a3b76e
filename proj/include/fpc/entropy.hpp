#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "fpc/types.hpp"

namespace fpc::entropy {

/// Follower string S_a for one length-l context a.
struct ContextEntry {
    std::uint64_t key;        // sum of a_j * n^(l-1-j)
    SymbolString followers;
};

/// All contexts of a given order that have at least one follower, sorted by key.
class ContextTable {
public:
    ContextTable(std::uint32_t alphabet, unsigned order) : alphabet_(alphabet), order_(order) {}

    std::uint32_t alphabet() const noexcept { return alphabet_; }
    unsigned order() const noexcept { return order_; }
    const std::vector<ContextEntry>& entries() const noexcept { return entries_; }
    std::vector<ContextEntry>& entries() noexcept { return entries_; }

    /// nullptr when the context never occurs with a follower.
    const ContextEntry* find(std::span<const Symbol> context) const;

    /// The l-tuple a key stands for.
    SymbolString context_of(std::uint64_t key) const;

    std::size_t total_followers() const noexcept;

private:
    std::uint32_t alphabet_;
    unsigned order_;
    std::vector<ContextEntry> entries_;
};

/// Key of a context tuple under base-n positional encoding.
std::uint64_t context_key(std::span<const Symbol> context, std::uint32_t alphabet);

/// Groups each s_i (i > l) under its preceding l symbols, in increasing i.
/// Throws std::invalid_argument when n^l does not fit in 64 bits or a symbol is out of range.
ContextTable extract_contexts(std::span<const Symbol> s, std::uint32_t alphabet, unsigned order);

/// Zeroth-order empirical entropy in bits per symbol. Empty input gives 0.
double h0(std::span<const Symbol> s);

/// l-th order empirical entropy. Per-context terms are evaluated in parallel
/// and summed in key order, so the result is bit-identical to hl_serial.
double hl(std::span<const Symbol> s, std::uint32_t alphabet, unsigned order);

/// Reference single-threaded evaluation of hl.
double hl_serial(std::span<const Symbol> s, std::uint32_t alphabet, unsigned order);

/// |S_a| * H_0(S_a) summed over a context table, in key order.
double weighted_context_entropy(const ContextTable& table);

struct ContextRow {
    SymbolString context;
    std::size_t length;
    double h0;
};

struct EntropyReport {
    std::uint32_t alphabet = 0;
    std::size_t length = 0;
    std::size_t distinct = 0;
    std::vector<double> values;                  // values[l] = H_l
    std::vector<double> decomposition_sums;      // sum |S_a| H_0(S_a), index l >= 1; index 0 is |S| H_0
    std::vector<std::vector<ContextRow>> rows;   // per order l >= 1, empty at index 0
};

/// H_0..H_max_order plus the per-context breakdown.
EntropyReport analyze(std::span<const Symbol> s, std::uint32_t alphabet, unsigned max_order,
                      bool with_rows = false);

/// Exact l-th order entropy from (context, symbol) counts, fed one symbol at a
/// time. Memory is proportional to the number of distinct (context, symbol)
/// pairs seen, not to the input length.
class ContextHistogram {
public:
    ContextHistogram(std::uint32_t alphabet, unsigned order);

    void push(Symbol s);

    std::size_t length() const noexcept { return length_; }
    std::size_t entries() const noexcept { return dense_ ? dense_entries_ : pairs_.size(); }
    double entropy() const;

private:
    std::uint32_t alphabet_;
    unsigned order_;
    std::uint64_t modulus_;       // n^l
    std::uint64_t context_ = 0;
    std::size_t length_ = 0;
    bool dense_ = false;          // flat arrays when n^(l+1) is small
    std::size_t dense_entries_ = 0;
    std::vector<std::uint64_t> dense_pairs_;
    std::vector<std::uint64_t> dense_totals_;
    std::unordered_map<std::uint64_t, std::uint64_t> pairs_;
    std::unordered_map<std::uint64_t, std::uint64_t> totals_;
};

}  // namespace fpc::entropy
