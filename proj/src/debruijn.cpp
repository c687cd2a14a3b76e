#include "fpc/debruijn.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpc::debruijn {

namespace {

void check_shape(std::uint32_t alphabet, unsigned order)
{
    if (alphabet < 2)
        throw std::invalid_argument("alphabet size must be at least 2");
    if (alphabet > 256 * 256)
        throw std::invalid_argument("alphabet size too large");
    if (order < 1)
        throw std::invalid_argument("order must be at least 1");
}

std::uint64_t edge_count(std::uint32_t alphabet, unsigned order, std::uint64_t budget)
{
    const std::uint64_t edges = checked_pow(alphabet, order, budget);
    if (edges == 0)
        throw std::invalid_argument("n^l = " + std::to_string(alphabet) + "^" + std::to_string(order) +
                                    " exceeds the budget of " + std::to_string(budget));
    return edges;
}

struct CircuitCounter {
    std::uint32_t alphabet;
    std::uint64_t nodes;
    std::uint64_t edges;
    std::uint64_t budget;
    std::uint64_t steps = 0;
    std::uint32_t used = 0;   // bit e set when edge e = node * n + symbol is taken

    std::uint64_t count_from(std::uint64_t node, std::uint64_t depth)
    {
        if (++steps > budget)
            throw std::invalid_argument("de Bruijn enumeration exceeds step budget of " + std::to_string(budget));
        if (depth == edges)
            return 1;
        std::uint64_t total = 0;
        for (std::uint32_t a = 0; a < alphabet; ++a) {
            const std::uint64_t e = node * alphabet + a;
            if (used & (1u << e))
                continue;
            used |= 1u << e;
            total += count_from(e % nodes, depth + 1);
            used &= ~(1u << e);
        }
        return total;
    }
};

}  // namespace

SymbolString generate(std::uint32_t alphabet, unsigned order, std::uint64_t budget)
{
    check_shape(alphabet, order);
    const std::uint64_t edges = edge_count(alphabet, order, budget);
    const std::uint64_t nodes = edges / alphabet;  // n^(l-1)

    // iterative Hierholzer; next_symbol[v] is the lowest unused out-edge of v
    std::vector<std::uint32_t> next_symbol(nodes, 0);
    struct Frame {
        std::uint64_t node;
        Symbol label;
    };
    std::vector<Frame> stack;
    stack.reserve(edges + 1);
    stack.push_back({0, 0});
    SymbolString labels;
    labels.reserve(edges);
    while (!stack.empty()) {
        const std::uint64_t v = stack.back().node;
        if (next_symbol[v] < alphabet) {
            const Symbol a = next_symbol[v]++;
            stack.push_back({(v * alphabet + a) % nodes, a});
        } else {
            if (stack.size() > 1)
                labels.push_back(stack.back().label);
            stack.pop_back();
        }
    }
    std::reverse(labels.begin(), labels.end());

    // start node is l-1 zeros; the circuit returns there, so the sequence ends with them too
    SymbolString out(order - 1, 0);
    out.insert(out.end(), labels.begin(), labels.end());
    return out;
}

bool validate(std::span<const Symbol> s, std::uint32_t alphabet, unsigned order)
{
    if (alphabet < 2 || order < 1)
        return false;
    const std::uint64_t edges = checked_pow(alphabet, order, std::uint64_t{1} << 32);
    if (edges == 0 || s.size() != edges + order - 1)
        return false;
    if (std::any_of(s.begin(), s.end(), [&](Symbol c) { return c >= alphabet; }))
        return false;

    std::vector<bool> seen(edges, false);
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        key = (key * alphabet + s[i]) % edges;
        if (i + 1 < order)
            continue;
        if (seen[key])
            return false;
        seen[key] = true;
    }
    return std::equal(s.begin(), s.begin() + (order - 1), s.end() - (order - 1));
}

std::uint64_t enumerate_count(std::uint32_t alphabet, unsigned order, std::uint64_t step_budget)
{
    check_shape(alphabet, order);
    const std::uint64_t edges = checked_pow(alphabet, order, kMaxEnumerationEdges);
    if (edges == 0)
        throw std::invalid_argument("exhaustive enumeration needs n^l <= " + std::to_string(kMaxEnumerationEdges));
    const std::uint64_t nodes = edges / alphabet;
    CircuitCounter counter{alphabet, nodes, edges, step_budget};
    std::uint64_t total = 0;
    for (std::uint64_t start = 0; start < nodes; ++start)
        total += counter.count_from(start, 0);
    return total;
}

std::optional<std::uint64_t> closed_form_count(std::uint32_t alphabet, unsigned order)
{
    if (alphabet < 2 || order < 1)
        return std::nullopt;
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t factorial = 1;
    for (std::uint64_t i = 2; i <= alphabet; ++i) {
        if (factorial > kMax / i)
            return std::nullopt;
        factorial *= i;
    }
    const std::uint64_t exponent = checked_pow(alphabet, order - 1, 64);
    if (exponent == 0)
        return std::nullopt;
    const std::uint64_t value = checked_pow(factorial, static_cast<unsigned>(exponent), kMax);
    if (value == 0)
        return std::nullopt;
    return value;
}

SymbolString adversarial_prefix(std::uint32_t alphabet, unsigned order, std::uint64_t budget)
{
    SymbolString s = generate(alphabet, order, budget);
    s.resize(s.size() - (order - 1));
    return s;
}

SymbolString adversarial_power(std::uint32_t alphabet, unsigned order, unsigned repeats, std::uint64_t budget)
{
    if (repeats < 1)
        throw std::invalid_argument("repetition count must be at least 1");
    const SymbolString prefix = adversarial_prefix(alphabet, order, budget);
    SymbolString out;
    out.reserve(prefix.size() * repeats);
    for (unsigned r = 0; r < repeats; ++r)
        out.insert(out.end(), prefix.begin(), prefix.end());
    return out;
}

}  // namespace fpc::debruijn
