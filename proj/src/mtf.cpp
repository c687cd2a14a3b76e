#include "fpc/mtf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fpc/entropy.hpp"

namespace fpc::mtf {

namespace {

void check_alphabet(std::uint32_t alphabet)
{
    if (alphabet < 2 || alphabet > kMaxAlphabet)
        throw std::invalid_argument("alphabet size must be in [2, " + std::to_string(kMaxAlphabet) + "]");
}

}  // namespace

MtfList::MtfList(std::uint32_t alphabet) : order_(alphabet)
{
    std::iota(order_.begin(), order_.end(), Symbol{0});
}

std::size_t MtfList::encode(Symbol s)
{
    auto it = std::find(order_.begin(), order_.end(), s);
    if (it == order_.end())
        throw std::invalid_argument("symbol " + std::to_string(s) + " outside alphabet");
    std::rotate(order_.begin(), it, it + 1);
    return static_cast<std::size_t>(it - order_.begin()) + 1;
}

Symbol MtfList::decode(std::size_t position)
{
    if (position == 0 || position > order_.size())
        throw CorruptStream("MTF position " + std::to_string(position) + " outside list of " +
                            std::to_string(order_.size()));
    auto it = order_.begin() + static_cast<std::ptrdiff_t>(position - 1);
    const Symbol s = *it;
    std::rotate(order_.begin(), it, it + 1);
    return s;
}

void mtf_encode(std::span<const Symbol> s, std::uint32_t alphabet, BitString& sink)
{
    check_alphabet(alphabet);
    for (Symbol c : s)
        if (c >= alphabet)
            throw std::invalid_argument("symbol " + std::to_string(c) + " outside alphabet");
    MtfList list(alphabet);
    for (Symbol c : s)
        delta_encode(sink, list.encode(c));
}

BitString mtf_encode(std::span<const Symbol> s, std::uint32_t alphabet)
{
    BitString out;
    mtf_encode(s, alphabet, out);
    return out;
}

SymbolString mtf_decode(BitReader& source, std::uint32_t alphabet, std::size_t count)
{
    check_alphabet(alphabet);
    MtfList list(alphabet);
    SymbolString out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(list.decode(delta_decode(source)));
    return out;
}

SymbolString mtf_decode(const BitString& bits, std::uint32_t alphabet, std::size_t count)
{
    BitReader reader(bits);
    return mtf_decode(reader, alphabet, count);
}

std::vector<std::size_t> mtf_rank_trace(std::span<const Symbol> s, std::uint32_t alphabet)
{
    check_alphabet(alphabet);
    MtfList list(alphabet);
    std::vector<std::size_t> ranks;
    ranks.reserve(s.size());
    for (Symbol c : s)
        ranks.push_back(list.encode(c));
    return ranks;
}

std::uint64_t additive_slack(std::uint32_t alphabet)
{
    const std::uint64_t w = ceil_log2(alphabet);
    return std::uint64_t{alphabet} * (w + 2 * ceil_log2(w + 1) + 1);
}

double output_bound_bits(std::span<const Symbol> s, std::uint32_t alphabet)
{
    const double h = entropy::h0(s);
    return (h + 2.0 * std::log2(h + 1.0) + 1.0) * static_cast<double>(s.size()) +
           static_cast<double>(additive_slack(alphabet));
}

}  // namespace fpc::mtf
