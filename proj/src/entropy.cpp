#include "fpc/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fpc::entropy {

namespace {

constexpr std::uint64_t kKeyLimit = std::numeric_limits<std::uint64_t>::max();

std::uint64_t key_space(std::uint32_t alphabet, unsigned order)
{
    const std::uint64_t space = checked_pow(alphabet, order, kKeyLimit);
    if (space == 0)
        throw std::invalid_argument("n^l = " + std::to_string(alphabet) + "^" + std::to_string(order) +
                                    " does not fit in a 64-bit context key");
    return space;
}

void check_symbols(std::span<const Symbol> s, std::uint32_t alphabet)
{
    for (Symbol c : s)
        if (c >= alphabet)
            throw std::invalid_argument("symbol " + std::to_string(c) + " outside alphabet of size " +
                                        std::to_string(alphabet));
}

// sum over distinct symbols of c * log2(total / c)
double weighted_h0(std::span<const Symbol> s)
{
    if (s.empty())
        return 0.0;
    const auto total = static_cast<double>(s.size());
    const Symbol top = *std::max_element(s.begin(), s.end());
    double sum = 0.0;
    if (top < (1u << 20)) {
        std::vector<std::uint64_t> counts(top + 1, 0);
        for (Symbol c : s)
            ++counts[c];
        for (std::uint64_t c : counts)
            if (c != 0)
                sum += static_cast<double>(c) * std::log2(total / static_cast<double>(c));
        return sum;
    }
    SymbolString sorted(s.begin(), s.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        const auto c = static_cast<double>(j - i);
        sum += c * std::log2(total / c);
        i = j;
    }
    return sum;
}

}  // namespace

std::uint64_t context_key(std::span<const Symbol> context, std::uint32_t alphabet)
{
    std::uint64_t key = 0;
    for (Symbol c : context)
        key = key * alphabet + c;
    return key;
}

const ContextEntry* ContextTable::find(std::span<const Symbol> context) const
{
    if (context.size() != order_)
        return nullptr;
    const std::uint64_t key = context_key(context, alphabet_);
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const ContextEntry& e, std::uint64_t k) { return e.key < k; });
    return it != entries_.end() && it->key == key ? &*it : nullptr;
}

SymbolString ContextTable::context_of(std::uint64_t key) const
{
    SymbolString out(order_);
    for (unsigned j = order_; j-- > 0;) {
        out[j] = static_cast<Symbol>(key % alphabet_);
        key /= alphabet_;
    }
    return out;
}

std::size_t ContextTable::total_followers() const noexcept
{
    std::size_t total = 0;
    for (const auto& e : entries_)
        total += e.followers.size();
    return total;
}

ContextTable extract_contexts(std::span<const Symbol> s, std::uint32_t alphabet, unsigned order)
{
    if (alphabet < 2)
        throw std::invalid_argument("alphabet size must be at least 2");
    if (order == 0)
        throw std::invalid_argument("context order must be at least 1");
    check_symbols(s, alphabet);
    const std::uint64_t space = key_space(alphabet, order);

    ContextTable table(alphabet, order);
    if (s.size() <= order)
        return table;

    std::unordered_map<std::uint64_t, std::size_t> slot;
    auto& entries = table.entries();
    std::uint64_t key = context_key(s.first(order), alphabet);
    for (std::size_t i = order; i < s.size(); ++i) {
        auto [it, fresh] = slot.try_emplace(key, entries.size());
        if (fresh)
            entries.push_back({key, {}});
        entries[it->second].followers.push_back(s[i]);
        // drop the oldest symbol, shift in s[i]
        key = space == 1 ? 0 : (key % (space / alphabet)) * alphabet + s[i];
    }
    std::sort(entries.begin(), entries.end(),
              [](const ContextEntry& a, const ContextEntry& b) { return a.key < b.key; });
    return table;
}

double h0(std::span<const Symbol> s)
{
    if (s.empty())
        return 0.0;
    return weighted_h0(s) / static_cast<double>(s.size());
}

double weighted_context_entropy(const ContextTable& table)
{
    double sum = 0.0;
    for (const auto& e : table.entries())
        sum += weighted_h0(e.followers);
    return sum;
}

double hl_serial(std::span<const Symbol> s, std::uint32_t alphabet, unsigned order)
{
    if (order == 0) {
        check_symbols(s, alphabet);
        return h0(s);
    }
    if (s.empty())
        return 0.0;
    const ContextTable table = extract_contexts(s, alphabet, order);
    return weighted_context_entropy(table) / static_cast<double>(s.size());
}

double hl(std::span<const Symbol> s, std::uint32_t alphabet, unsigned order)
{
    if (order == 0) {
        check_symbols(s, alphabet);
        return h0(s);
    }
    if (s.empty())
        return 0.0;
    const ContextTable table = extract_contexts(s, alphabet, order);
    const auto& entries = table.entries();
    std::vector<double> terms(entries.size());
    const auto count = static_cast<std::ptrdiff_t>(entries.size());

#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < count; ++i)
        terms[static_cast<std::size_t>(i)] = weighted_h0(entries[static_cast<std::size_t>(i)].followers);

    double sum = 0.0;
    for (double t : terms)
        sum += t;
    return sum / static_cast<double>(s.size());
}

EntropyReport analyze(std::span<const Symbol> s, std::uint32_t alphabet, unsigned max_order, bool with_rows)
{
    if (alphabet < 2)
        throw std::invalid_argument("alphabet size must be at least 2");
    check_symbols(s, alphabet);
    key_space(alphabet, max_order);

    EntropyReport report;
    report.alphabet = alphabet;
    report.length = s.size();
    {
        SymbolString sorted(s.begin(), s.end());
        std::sort(sorted.begin(), sorted.end());
        report.distinct = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    }
    const double length = s.empty() ? 1.0 : static_cast<double>(s.size());
    report.values.push_back(h0(s));
    report.decomposition_sums.push_back(weighted_h0(s));
    report.rows.emplace_back();

    for (unsigned order = 1; order <= max_order; ++order) {
        const ContextTable table = extract_contexts(s, alphabet, order);
        const auto& entries = table.entries();
        std::vector<double> terms(entries.size());
        const auto count = static_cast<std::ptrdiff_t>(entries.size());
#pragma omp parallel for schedule(dynamic, 64)
        for (std::ptrdiff_t i = 0; i < count; ++i)
            terms[static_cast<std::size_t>(i)] = weighted_h0(entries[static_cast<std::size_t>(i)].followers);

        double sum = 0.0;
        for (double t : terms)
            sum += t;
        report.values.push_back(s.empty() ? 0.0 : sum / length);
        report.decomposition_sums.push_back(sum);

        std::vector<ContextRow> rows;
        if (with_rows) {
            rows.reserve(entries.size());
            for (std::size_t i = 0; i < entries.size(); ++i) {
                const auto len = entries[i].followers.size();
                rows.push_back({table.context_of(entries[i].key), len, terms[i] / static_cast<double>(len)});
            }
        }
        report.rows.push_back(std::move(rows));
    }
    return report;
}

ContextHistogram::ContextHistogram(std::uint32_t alphabet, unsigned order)
    : alphabet_(alphabet), order_(order)
{
    if (alphabet < 2)
        throw std::invalid_argument("alphabet size must be at least 2");
    if (checked_pow(alphabet, order + 1, kKeyLimit) == 0)
        throw std::invalid_argument("n^(l+1) does not fit in a 64-bit key");
    modulus_ = checked_pow(alphabet, order, kKeyLimit);
    constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 20;
    if (const std::uint64_t cells = checked_pow(alphabet, order + 1, kDenseLimit); cells != 0) {
        dense_ = true;
        dense_pairs_.assign(cells, 0);
        dense_totals_.assign(modulus_, 0);
    }
}

void ContextHistogram::push(Symbol s)
{
    if (s >= alphabet_)
        throw std::invalid_argument("symbol " + std::to_string(s) + " outside alphabet");
    if (length_ >= order_) {
        if (dense_) {
            if (dense_pairs_[context_ * alphabet_ + s]++ == 0)
                ++dense_entries_;
            ++dense_totals_[context_];
        } else {
            ++pairs_[context_ * alphabet_ + s];
            ++totals_[context_];
        }
    }
    ++length_;
    context_ = modulus_ == 1 ? 0 : (context_ % (modulus_ / alphabet_)) * alphabet_ + s;
}

double ContextHistogram::entropy() const
{
    if (length_ == 0)
        return 0.0;
    if (dense_) {
        double sum = 0.0;
        for (std::uint64_t key = 0; key < dense_pairs_.size(); ++key) {
            if (dense_pairs_[key] == 0)
                continue;
            const auto total = static_cast<double>(dense_totals_[key / alphabet_]);
            const auto c = static_cast<double>(dense_pairs_[key]);
            sum += c * std::log2(total / c);
        }
        return sum / static_cast<double>(length_);
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted(pairs_.begin(), pairs_.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (const auto& [key, count] : sorted) {
        const auto total = static_cast<double>(totals_.at(key / alphabet_));
        const auto c = static_cast<double>(count);
        sum += c * std::log2(total / c);
    }
    return sum / static_cast<double>(length_);
}

}  // namespace fpc::entropy
