#pragma once

// Brute-force reference computations for the test suites. Nothing here calls
// into the library's coding paths; everything works on plain strings and
// histories so it can be used to check the real implementation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fpc/types.hpp"

namespace oracle {

inline std::string binary(std::uint64_t x)
{
    std::string out;
    while (x != 0) {
        out.insert(out.begin(), static_cast<char>('0' + (x & 1)));
        x >>= 1;
    }
    return out;
}

inline std::string fixed_width(std::uint64_t x, unsigned width)
{
    std::string b = binary(x);
    return std::string(width - b.size(), '0') + b;
}

inline std::string gamma(std::uint64_t x)
{
    const std::string b = binary(x);
    return std::string(b.size() - 1, '0') + b;
}

inline std::string delta(std::uint64_t x)
{
    const std::string b = binary(x);
    return gamma(b.size()) + b.substr(1);
}

inline unsigned ceil_log2(std::uint64_t n)
{
    unsigned w = 0;
    while ((std::uint64_t{1} << w) < n)
        ++w;
    return w;
}

/// Recency rank of `s` given the history of symbols coded so far in one
/// context: 1 + distinct symbols since its last occurrence, or 0 if unseen.
inline std::size_t recency_rank(const std::vector<fpc::Symbol>& history, fpc::Symbol s)
{
    std::set<fpc::Symbol> between;
    for (std::size_t j = history.size(); j-- > 0;) {
        if (history[j] == s)
            return between.size() + 1;
        between.insert(history[j]);
    }
    return 0;
}

/// H_0 directly from its definition, in long double.
inline double h0(const std::vector<fpc::Symbol>& s)
{
    if (s.empty())
        return 0.0;
    std::map<fpc::Symbol, std::size_t> counts;
    for (auto c : s)
        ++counts[c];
    long double sum = 0;
    const long double total = static_cast<long double>(s.size());
    for (const auto& [sym, c] : counts)
        sum += (c / total) * std::log2(total / c);
    return static_cast<double>(sum);
}

/// H_l from explicit tuple contexts (std::map keyed by the tuple itself).
inline double hl(const std::vector<fpc::Symbol>& s, unsigned order)
{
    if (order == 0)
        return h0(s);
    if (s.empty())
        return 0.0;
    std::map<std::vector<fpc::Symbol>, std::vector<fpc::Symbol>> followers;
    for (std::size_t i = order; i < s.size(); ++i)
        followers[std::vector<fpc::Symbol>(s.begin() + static_cast<std::ptrdiff_t>(i - order),
                                           s.begin() + static_cast<std::ptrdiff_t>(i))]
            .push_back(s[i]);
    long double sum = 0;
    for (const auto& [ctx, f] : followers)
        sum += static_cast<long double>(f.size()) * h0(f);
    return static_cast<double>(sum / s.size());
}

/// Context-MTF compressor simulated with per-context histories instead of lists:
/// a symbol is a hit at position p iff its recency rank p is at most k.
inline std::string context_mtf(std::uint32_t n, unsigned order, std::uint32_t k, const std::vector<fpc::Symbol>& s)
{
    const unsigned w = ceil_log2(n);
    std::map<std::vector<fpc::Symbol>, std::vector<fpc::Symbol>> history;
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i < order) {
            out += fixed_width(s[i], w);
            continue;
        }
        auto& h = history[std::vector<fpc::Symbol>(s.begin() + static_cast<std::ptrdiff_t>(i - order),
                                                   s.begin() + static_cast<std::ptrdiff_t>(i))];
        const std::size_t rank = recency_rank(h, s[i]);
        if (rank != 0 && rank <= k)
            out += "1" + delta(rank);
        else
            out += "0" + fixed_width(s[i], w);
        h.push_back(s[i]);
    }
    return out;
}

/// Full-list MTF via histories: unseen symbols sit behind all seen ones in identity order.
inline std::vector<std::size_t> mtf_ranks(std::uint32_t n, const std::vector<fpc::Symbol>& s)
{
    std::vector<fpc::Symbol> history;
    std::vector<std::size_t> out;
    for (fpc::Symbol c : s) {
        std::size_t rank = recency_rank(history, c);
        if (rank == 0) {
            std::set<fpc::Symbol> seen(history.begin(), history.end());
            rank = seen.size() + 1;
            for (fpc::Symbol u = 0; u < c; ++u)
                if (!seen.count(u))
                    ++rank;
        }
        out.push_back(rank);
        history.push_back(c);
    }
    (void)n;
    return out;
}

/// Counts linear de Bruijn strings by trying every n-ary string of the right length.
inline std::uint64_t count_debruijn_strings(std::uint32_t n, unsigned order)
{
    std::uint64_t tuples = 1;
    for (unsigned i = 0; i < order; ++i)
        tuples *= n;
    const std::size_t len = tuples + order - 1;
    std::vector<fpc::Symbol> s(len, 0);
    std::uint64_t count = 0;
    while (true) {
        std::set<std::vector<fpc::Symbol>> windows;
        for (std::size_t i = 0; i + order <= len; ++i)
            windows.insert(std::vector<fpc::Symbol>(s.begin() + static_cast<std::ptrdiff_t>(i),
                                                    s.begin() + static_cast<std::ptrdiff_t>(i + order)));
        if (windows.size() == tuples)
            ++count;
        std::size_t pos = 0;
        while (pos < len && ++s[pos] == n)
            s[pos++] = 0;
        if (pos == len)
            break;
    }
    return count;
}

inline std::vector<fpc::Symbol> random_string(std::mt19937_64& rng, std::uint32_t n, std::size_t length)
{
    std::uniform_int_distribution<fpc::Symbol> pick(0, n - 1);
    std::vector<fpc::Symbol> s(length);
    for (auto& c : s)
        c = pick(rng);
    return s;
}

/// Random string from a sparse order-1 source so that contexts repeat and lists fill.
inline std::vector<fpc::Symbol> skewed_string(std::mt19937_64& rng, std::uint32_t n, std::size_t length)
{
    std::uniform_int_distribution<fpc::Symbol> pick(0, n - 1);
    std::uniform_int_distribution<fpc::Symbol> small(0, std::min<fpc::Symbol>(n - 1, 3));
    std::bernoulli_distribution jump(0.15);
    std::vector<fpc::Symbol> s(length);
    fpc::Symbol prev = 0;
    for (auto& c : s) {
        c = jump(rng) ? pick(rng) : (prev * 7 + small(rng)) % n;
        prev = c;
    }
    return s;
}

}  // namespace oracle
