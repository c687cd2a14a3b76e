#include "fpc/footprint.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fpc::footprint {

namespace {

struct Fraction {
    std::uint64_t num;
    std::uint64_t den;
};

// Continued-fraction approximation of x with a small denominator, if one is exact to ~1e-12.
std::optional<Fraction> small_fraction(double x)
{
    constexpr std::uint64_t kMaxDen = 1000;
    std::uint64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double rest = x;
    for (int iter = 0; iter < 40; ++iter) {
        const double a = std::floor(rest);
        if (a > 1e9)
            break;
        const auto ai = static_cast<std::uint64_t>(a);
        const std::uint64_t h2 = ai * h1 + h0;
        const std::uint64_t k2 = ai * k1 + k0;
        if (k2 > kMaxDen)
            break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        if (std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= 1e-12 * std::max(1.0, x))
            return Fraction{h1, k1};
        const double frac = rest - a;
        if (frac <= 0.0)
            break;
        rest = 1.0 / frac;
    }
    return std::nullopt;
}

void check_symbol(const CodecParams& params, Symbol s)
{
    if (s >= params.alphabet)
        throw std::invalid_argument("symbol " + std::to_string(s) + " outside alphabet of size " +
                                    std::to_string(params.alphabet));
}

std::uint64_t shift_context(const CodecParams& params, std::uint64_t context, Symbol s)
{
    if (params.order == 0)
        return 0;
    return (context % (params.context_space / params.alphabet)) * params.alphabet + s;
}

Codeword make_raw(const CodecParams& params, Symbol s)
{
    return {0, CodewordKind::raw, s, 0, params.raw_width, s};
}

Codeword make_hit(std::uint64_t context, Symbol s, std::size_t position)
{
    const auto p = static_cast<std::uint32_t>(position);
    const unsigned len = delta_length(p);
    // flag 1 sits just above the delta codeword
    return {context, CodewordKind::hit, s, p, 1 + len, (std::uint64_t{1} << len) | delta_codeword(p)};
}

Codeword make_miss(const CodecParams& params, std::uint64_t context, Symbol s)
{
    return {context, CodewordKind::miss, s, 0, 1 + params.raw_width, s};
}

// Codes one symbol against its context list and updates the list.
Codeword code_in_list(const CodecParams& params, BoundedMtfList& list, std::uint64_t context, Symbol s)
{
    if (const std::size_t p = list.find(s); p != 0) {
        list.move_to_front(p);
        return make_hit(context, s, p);
    }
    list.insert_front(s);
    return make_miss(params, context, s);
}

void tally(FootprintReport& r, const Codeword& c)
{
    switch (c.kind) {
    case CodewordKind::raw:
        ++r.raw_count;
        r.raw_prefix_bits += c.length;
        break;
    case CodewordKind::hit:
        ++r.hit_count;
        r.hit_bits += c.length;
        break;
    case CodewordKind::miss:
        ++r.miss_count;
        r.miss_bits += c.length;
        break;
    }
    ++r.symbols;
    r.payload_bits += c.length;
}

void finish_report(const CodecParams& params, FootprintReport& r, std::uint64_t allocated)
{
    r.allocated_lists = allocated;
    r.model_bits_actual = allocated * params.capacity * params.raw_width;
    r.model_bits_budget = model_bits_budget(params);
    r.index_overhead_bits = allocated * (64 + ceil_log2(std::uint64_t{params.capacity} + 1));
}

}  // namespace

CodecParams CodecParams::make(std::uint32_t alphabet, unsigned order, std::uint32_t capacity)
{
    if (alphabet < 2 || alphabet > kMaxAlphabet)
        throw std::invalid_argument("alphabet size must be in [2, " + std::to_string(kMaxAlphabet) + "]");
    if (capacity < 1)
        throw std::invalid_argument("list capacity must be at least 1");
    const std::uint64_t space = checked_pow(alphabet, order, kMaxContextSpace);
    if (space == 0)
        throw std::invalid_argument("n^l = " + std::to_string(alphabet) + "^" + std::to_string(order) +
                                    " exceeds the context-space limit 2^40");
    CodecParams p;
    p.alphabet = alphabet;
    p.order = order;
    p.capacity = std::min(capacity, alphabet);
    p.raw_width = ceil_log2(alphabet);
    p.context_space = space;
    return p;
}

std::uint32_t derive_capacity(std::uint32_t alphabet, double epsilon)
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("epsilon must be a positive finite number");
    if (alphabet < 2)
        throw std::invalid_argument("alphabet size must be at least 2");
    if (epsilon >= 1.0)
        return alphabet;

    if (const auto f = small_fraction(epsilon)) {
        // largest k with k^den <= n^num
        using boost::multiprecision::cpp_int;
        const cpp_int target = boost::multiprecision::pow(cpp_int(alphabet), static_cast<unsigned>(f->num));
        std::uint32_t lo = 1, hi = alphabet;
        while (lo < hi) {
            const std::uint32_t mid = lo + (hi - lo + 1) / 2;
            if (boost::multiprecision::pow(cpp_int(mid), static_cast<unsigned>(f->den)) <= target)
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    }

    const long double logn = std::log(static_cast<long double>(alphabet));
    auto k = static_cast<std::uint64_t>(std::floor(std::exp(static_cast<long double>(epsilon) * logn)));
    const auto fits = [&](std::uint64_t c) {
        return std::log(static_cast<long double>(c)) <= static_cast<long double>(epsilon) * logn;
    };
    while (k > 1 && !fits(k))
        --k;
    while (k < alphabet && fits(k + 1))
        ++k;
    return static_cast<std::uint32_t>(std::clamp<std::uint64_t>(k, 1, alphabet));
}

double effective_epsilon(std::uint32_t alphabet, std::uint32_t capacity)
{
    return std::log2(static_cast<double>(capacity) + 1.0) / std::log2(static_cast<double>(alphabet));
}

BoundedMtfList::BoundedMtfList(std::uint32_t capacity) : capacity_(capacity)
{
    if (capacity == 0)
        throw std::invalid_argument("list capacity must be at least 1");
}

std::size_t BoundedMtfList::find(Symbol s) const noexcept
{
    auto it = std::find(entries_.begin(), entries_.end(), s);
    return it == entries_.end() ? 0 : static_cast<std::size_t>(it - entries_.begin()) + 1;
}

void BoundedMtfList::move_to_front(std::size_t position)
{
    if (position == 0 || position > entries_.size())
        throw std::out_of_range("list position out of range");
    auto it = entries_.begin() + static_cast<std::ptrdiff_t>(position - 1);
    std::rotate(entries_.begin(), it, it + 1);
}

void BoundedMtfList::insert_front(Symbol s)
{
    entries_.insert(entries_.begin(), s);
    if (entries_.size() > capacity_)
        entries_.pop_back();
}

ContextModel::ContextModel(const CodecParams& params) : params_(params)
{
    constexpr std::uint64_t kFlatLimit = std::uint64_t{1} << 16;
    if (params.context_space <= kFlatLimit)
        flat_.assign(params.context_space, 0);
}

BoundedMtfList& ContextModel::list_for(std::uint64_t context)
{
    if (!flat_.empty()) {
        std::uint32_t& slot = flat_[context];
        if (slot == 0) {
            lists_.emplace_back(params_.capacity);
            slot = static_cast<std::uint32_t>(lists_.size());
        }
        return lists_[slot - 1];
    }
    auto [it, fresh] = index_.try_emplace(context, static_cast<std::uint32_t>(lists_.size()));
    if (fresh)
        lists_.emplace_back(params_.capacity);
    return lists_[it->second];
}

const BoundedMtfList* ContextModel::find(std::uint64_t context) const
{
    if (!flat_.empty())
        return context < flat_.size() && flat_[context] != 0 ? &lists_[flat_[context] - 1] : nullptr;
    auto it = index_.find(context);
    return it == index_.end() ? nullptr : &lists_[it->second];
}

std::uint64_t model_bits_budget(const CodecParams& params)
{
    return params.context_space * params.capacity * params.raw_width;
}

Compressor::Compressor(const CodecParams& params) : params_(params), model_(params) {}

Codeword Compressor::encode(Symbol s)
{
    check_symbol(params_, s);
    Codeword c = tally_.symbols < params_.order
                     ? make_raw(params_, s)
                     : code_in_list(params_, model_.list_for(context_), context_, s);
    context_ = shift_context(params_, context_, s);
    tally(tally_, c);
    return c;
}

Codeword Compressor::push(Symbol s, BitString& sink)
{
    const Codeword c = encode(s);
    sink.append_bits(c.bits, c.length);
    return c;
}

FootprintReport Compressor::report() const
{
    FootprintReport r = tally_;
    finish_report(params_, r, model_.allocated_count());
    return r;
}

Decompressor::Decompressor(const CodecParams& params) : params_(params), model_(params) {}

Symbol Decompressor::pull(BitReader& source)
{
    Symbol s = 0;
    if (position_ < params_.order) {
        s = static_cast<Symbol>(source.read_bits(params_.raw_width));
        if (s >= params_.alphabet)
            throw CorruptStream("raw symbol " + std::to_string(s) + " outside alphabet");
    } else {
        BoundedMtfList& list = model_.list_for(context_);
        if (source.read_bit()) {
            const std::uint64_t p = delta_decode(source);
            if (p > list.size())
                throw CorruptStream("hit position " + std::to_string(p) + " exceeds list length " +
                                    std::to_string(list.size()));
            s = list.at(p);
            list.move_to_front(p);
        } else {
            s = static_cast<Symbol>(source.read_bits(params_.raw_width));
            if (s >= params_.alphabet)
                throw CorruptStream("escaped symbol " + std::to_string(s) + " outside alphabet");
            if (list.find(s) != 0)
                throw CorruptStream("escaped symbol " + std::to_string(s) + " is already in its context list");
            list.insert_front(s);
        }
    }
    context_ = shift_context(params_, context_, s);
    ++position_;
    return s;
}

FootprintReport compress(const CodecParams& params, std::span<const Symbol> s, BitString& sink)
{
    Compressor enc(params);
    for (Symbol c : s)
        enc.push(c, sink);
    return enc.report();
}

BitString compress(const CodecParams& params, std::span<const Symbol> s)
{
    BitString out;
    compress(params, s, out);
    return out;
}

FootprintReport compress_parallel(const CodecParams& params, std::span<const Symbol> s, BitString& sink)
{
    for (Symbol c : s)
        check_symbol(params, c);

    const std::size_t prefix = std::min<std::size_t>(params.order, s.size());
    const std::size_t body = s.size() - prefix;

    // group body positions by context, in increasing position
    std::unordered_map<std::uint64_t, std::uint32_t> group_of_context;
    std::vector<std::uint32_t> group(body);
    std::vector<std::uint64_t> group_context;
    std::uint64_t context = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i >= prefix) {
            auto [it, fresh] = group_of_context.try_emplace(context, static_cast<std::uint32_t>(group_context.size()));
            if (fresh)
                group_context.push_back(context);
            group[i - prefix] = it->second;
        }
        context = shift_context(params, context, s[i]);
    }
    const std::size_t groups = group_context.size();
    std::vector<std::size_t> offset(groups + 1, 0);
    for (std::uint32_t g : group)
        ++offset[g + 1];
    for (std::size_t g = 0; g < groups; ++g)
        offset[g + 1] += offset[g];
    std::vector<std::uint32_t> members(body);
    {
        std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
        for (std::size_t j = 0; j < body; ++j)
            members[fill[group[j]]++] = static_cast<std::uint32_t>(j);
    }

    std::vector<Codeword> codes(body);
    const auto group_count = static_cast<std::ptrdiff_t>(groups);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t g = 0; g < group_count; ++g) {
        const auto gi = static_cast<std::size_t>(g);
        BoundedMtfList list(params.capacity);
        for (std::size_t m = offset[gi]; m < offset[gi + 1]; ++m) {
            const std::uint32_t j = members[m];
            codes[j] = code_in_list(params, list, group_context[gi], s[prefix + j]);
        }
    }

    FootprintReport r;
    for (std::size_t i = 0; i < prefix; ++i) {
        const Codeword c = make_raw(params, s[i]);
        sink.append_bits(c.bits, c.length);
        tally(r, c);
    }
    for (const Codeword& c : codes) {
        sink.append_bits(c.bits, c.length);
        tally(r, c);
    }
    finish_report(params, r, groups);
    return r;
}

SymbolString decompress(const CodecParams& params, BitReader& source, std::size_t count)
{
    Decompressor dec(params);
    SymbolString out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(dec.pull(source));
    return out;
}

SymbolString decompress(const CodecParams& params, const BitString& bits, std::size_t count)
{
    BitReader reader(bits);
    return decompress(params, reader, count);
}

std::vector<Codeword> codeword_trace(const CodecParams& params, std::span<const Symbol> s)
{
    Compressor enc(params);
    std::vector<Codeword> out;
    out.reserve(s.size());
    for (Symbol c : s)
        out.push_back(enc.encode(c));
    return out;
}

}  // namespace fpc::footprint
