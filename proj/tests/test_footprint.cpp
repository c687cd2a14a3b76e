#include "doctest.h"

#include <cmath>
#include <map>

#include "fpc/debruijn.hpp"
#include "fpc/entropy.hpp"
#include "fpc/footprint.hpp"
#include "oracles.hpp"

namespace fp = fpc::footprint;
using fp::CodecParams;
using fp::CodewordKind;

namespace {

std::string payload(const CodecParams& p, const fpc::SymbolString& s)
{
    return fp::compress(p, s).to_string();
}

std::string cw_string(const fp::Codeword& c)
{
    return oracle::fixed_width(c.bits, c.length);
}

}  // namespace

TEST_CASE("params validation and clamping")
{
    const auto p = CodecParams::make(256, 2, 1000);
    CHECK(p.capacity == 256);
    CHECK(p.raw_width == 8);
    CHECK(p.context_space == 65536);
    CHECK(CodecParams::make(3, 0, 2).raw_width == 2);
    CHECK_THROWS_AS(CodecParams::make(1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(CodecParams::make(4, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(CodecParams::make(256, 6, 4), std::invalid_argument);
    CHECK_THROWS_AS(CodecParams::make(70000, 1, 4), std::invalid_argument);
}

TEST_CASE("derive_capacity")
{
    CHECK(fp::derive_capacity(256, 0.5) == 16);
    CHECK(fp::derive_capacity(2, 1.0) == 2);
    CHECK(fp::derive_capacity(256, 2.0) == 256);
    CHECK(fp::derive_capacity(64, 1.0 / 3.0) == 4);
    CHECK(fp::derive_capacity(63, 1.0 / 3.0) == 3);
    CHECK(fp::derive_capacity(16, 0.75) == 8);
    CHECK(fp::derive_capacity(15, 0.75) == 7);
    CHECK(fp::derive_capacity(10, 0.5) == 3);
    CHECK(fp::derive_capacity(1000, 0.3) == 7);
    CHECK(fp::derive_capacity(2, 0.01) == 1);
    CHECK(fp::derive_capacity(100, 0.123456789) == 1);
    CHECK_THROWS_AS(fp::derive_capacity(16, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fp::derive_capacity(16, -1.0), std::invalid_argument);
    // exact powers: n = m^q at eps = 1/q must give m, not m - 1
    for (std::uint32_t m = 2; m <= 40; ++m)
        for (unsigned q = 2; q <= 4; ++q) {
            std::uint64_t n = 1;
            for (unsigned i = 0; i < q; ++i)
                n *= m;
            if (n > fpc::kMaxAlphabet)
                continue;
            REQUIRE(fp::derive_capacity(static_cast<std::uint32_t>(n), 1.0 / q) == m);
            REQUIRE(fp::derive_capacity(static_cast<std::uint32_t>(n - 1), 1.0 / q) == m - 1);
        }
}

TEST_CASE("bounded list keeps the k most recent distinct symbols")
{
    fp::BoundedMtfList list(3);
    for (fpc::Symbol s : {5u, 1u, 5u, 2u, 7u})
        if (auto p = list.find(s))
            list.move_to_front(p);
        else
            list.insert_front(s);
    CHECK(std::vector<fpc::Symbol>(list.entries().begin(), list.entries().end()) ==
          std::vector<fpc::Symbol>{7, 2, 5});
    CHECK(list.find(1) == 0);
    CHECK(list.find(5) == 3);
    CHECK_THROWS(fp::BoundedMtfList(0));
}

TEST_CASE("bounded list against the recency oracle")
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        const auto k = static_cast<std::uint32_t>(1 + rng() % 8);
        fp::BoundedMtfList list(k);
        std::vector<fpc::Symbol> history;
        for (int i = 0; i < 200; ++i) {
            const auto s = static_cast<fpc::Symbol>(rng() % 12);
            const std::size_t rank = oracle::recency_rank(history, s);
            const std::size_t p = list.find(s);
            REQUIRE(p == (rank != 0 && rank <= k ? rank : 0));
            if (p)
                list.move_to_front(p);
            else
                list.insert_front(s);
            history.push_back(s);
            // entries are the up-to-k most recent distinct symbols
            std::vector<fpc::Symbol> expect;
            for (std::size_t j = history.size(); j-- > 0 && expect.size() < k;)
                if (std::find(expect.begin(), expect.end(), history[j]) == expect.end())
                    expect.push_back(history[j]);
            REQUIRE(std::vector<fpc::Symbol>(list.entries().begin(), list.entries().end()) == expect);
        }
    }
}

TEST_CASE("hit/miss example with l = 1, k = 1")
{
    const auto p = CodecParams::make(2, 1, 1);
    const fpc::SymbolString s{0, 1, 0, 1, 0};
    fpc::BitString bits;
    const auto r = fp::compress(p, s, bits);
    CHECK(bits.to_string() == "0" "01" "00" "11" "11");
    CHECK(r.raw_count == 1);
    CHECK(r.miss_count == 2);
    CHECK(r.hit_count == 2);
    CHECK(r.payload_bits == 9);
    CHECK(r.raw_prefix_bits == 1);
    CHECK(r.allocated_lists == 2);
    CHECK(fp::decompress(p, fpc::BitString::from_string("0 01 00 11 11"), 5) == s);

    const auto trace = fp::codeword_trace(p, s);
    REQUIRE(trace.size() == 5);
    const CodewordKind kinds[] = {CodewordKind::raw, CodewordKind::miss, CodewordKind::miss, CodewordKind::hit,
                                  CodewordKind::hit};
    const unsigned lengths[] = {1, 2, 2, 2, 2};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(trace[i].kind == kinds[i]);
        CHECK(trace[i].length == lengths[i]);
    }
    CHECK(trace[3].position == 1);
    CHECK(trace[4].position == 1);
}

TEST_CASE("empty input")
{
    const auto p = CodecParams::make(2, 0, 2);
    fpc::BitString bits;
    const auto r = fp::compress(p, fpc::SymbolString{}, bits);
    CHECK(bits.empty());
    CHECK(r.payload_bits == 0);
    CHECK(r.hit_count + r.miss_count + r.raw_count == 0);
    CHECK(r.allocated_lists == 0);
    CHECK(fp::decompress(p, bits, 0).empty());
}

TEST_CASE("inputs no longer than l are all raw")
{
    const auto p = CodecParams::make(5, 3, 2);
    const fpc::SymbolString s{4, 0, 3};
    for (const auto& c : fp::codeword_trace(p, s))
        CHECK(c.kind == CodewordKind::raw);
    CHECK(payload(p, s) == "100" "000" "011");
    CHECK(fp::compress(p, s).size() == 9);
}

TEST_CASE("de Bruijn power: every codeword after n^l + l is 11")
{
    const auto p = CodecParams::make(2, 2, 2);
    const auto s = fpc::debruijn::adversarial_power(2, 2, 3);
    REQUIRE(s == fpc::SymbolString{0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1});
    const auto trace = fp::codeword_trace(p, s);
    for (std::size_t i = 6; i < trace.size(); ++i)
        CHECK(cw_string(trace[i]) == "11");
    CHECK(payload(p, s) == oracle::context_mtf(2, 2, 2, s));
}

TEST_CASE("out-of-range symbols are rejected before emission")
{
    const auto p = CodecParams::make(3, 1, 2);
    fp::Compressor enc(p);
    fpc::BitString sink;
    enc.push(2, sink);
    const auto before = sink.size();
    CHECK_THROWS_AS(enc.push(3, sink), std::invalid_argument);
    CHECK(sink.size() == before);
}

TEST_CASE("decoder detects corrupt and truncated streams")
{
    const auto p = CodecParams::make(4, 0, 4);
    // hit flag with position 1 in an empty list
    CHECK_THROWS_AS(fp::decompress(p, fpc::BitString::from_string("11"), 1), fpc::CorruptStream);
    // miss of symbol 2, then a miss of 2 again although it sits in the list
    CHECK_THROWS_AS(fp::decompress(p, fpc::BitString::from_string("010 010"), 2), fpc::CorruptStream);
    // hit at position 2 with a one-entry list
    CHECK_THROWS_AS(fp::decompress(p, fpc::BitString::from_string("010 10100"), 2), fpc::CorruptStream);
    CHECK_THROWS_AS(fp::decompress(p, fpc::BitString::from_string("01"), 1), fpc::TruncatedStream);
    // raw symbol 2 with n = 3 is fine, 3 is not
    const auto p3 = CodecParams::make(3, 1, 1);
    CHECK(fp::decompress(p3, fpc::BitString::from_string("10"), 1) == fpc::SymbolString{2});
    CHECK_THROWS_AS(fp::decompress(p3, fpc::BitString::from_string("11"), 1), fpc::CorruptStream);
}

TEST_CASE("randomized: lossless, oracle payload, trace consistency, footprint")
{
    std::mt19937_64 rng(32);
    for (int t = 0; t < 400; ++t) {
        const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 30);
        const unsigned l = static_cast<unsigned>(rng() % 4);
        const auto k = static_cast<std::uint32_t>(1 + rng() % n);
        const auto s = t % 2 ? oracle::skewed_string(rng, n, rng() % 600) : oracle::random_string(rng, n, rng() % 600);
        const auto p = CodecParams::make(n, l, k);
        INFO("n=" << n << " l=" << l << " k=" << k << " |S|=" << s.size());

        fpc::BitString bits;
        const auto r = fp::compress(p, s, bits);
        REQUIRE(fp::decompress(p, bits, s.size()) == s);
        REQUIRE(bits.to_string() == oracle::context_mtf(n, l, k, s));

        // codeword lengths and accounting
        const auto trace = fp::codeword_trace(p, s);
        std::string joined;
        std::uint64_t raw_bits = 0;
        std::map<std::uint64_t, int> contexts;
        for (const auto& c : trace) {
            joined += cw_string(c);
            switch (c.kind) {
            case CodewordKind::raw:
                REQUIRE(c.length == p.raw_width);
                raw_bits += c.length;
                break;
            case CodewordKind::hit:
                REQUIRE(c.length == 1 + fpc::delta_length(c.position));
                REQUIRE(c.position <= k);
                contexts[c.context] = 1;
                break;
            case CodewordKind::miss:
                REQUIRE(c.length == 1 + p.raw_width);
                contexts[c.context] = 1;
                break;
            }
        }
        REQUIRE(joined == bits.to_string());
        REQUIRE(raw_bits == std::min<std::size_t>(l, s.size()) * p.raw_width);
        REQUIRE(r.raw_prefix_bits == raw_bits);
        REQUIRE(r.raw_prefix_bits + r.hit_bits + r.miss_bits == r.payload_bits);
        REQUIRE(r.payload_bits == bits.size());

        // model footprint
        REQUIRE(r.allocated_lists == contexts.size());
        REQUIRE(r.model_bits_actual == r.allocated_lists * p.capacity * p.raw_width);
        REQUIRE(r.model_bits_actual <= r.model_bits_budget);
        REQUIRE(r.model_bits_budget == p.context_space * p.capacity * p.raw_width);

        // batch kernel
        fpc::BitString par;
        REQUIRE(fp::compress_parallel(p, s, par) == r);
        REQUIRE(par == bits);
    }
}

TEST_CASE("per-context decomposition into order-0 coders")
{
    std::mt19937_64 rng(33);
    for (int t = 0; t < 150; ++t) {
        const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 20);
        const unsigned l = 1 + static_cast<unsigned>(rng() % 3);
        const auto k = static_cast<std::uint32_t>(1 + rng() % n);
        const auto s = oracle::skewed_string(rng, n, rng() % 1500);
        const auto p = CodecParams::make(n, l, k);
        std::map<std::uint64_t, std::string> per_context;
        for (const auto& c : fp::codeword_trace(p, s))
            if (c.kind != CodewordKind::raw)
                per_context[c.context] += cw_string(c);
        const auto table = fpc::entropy::extract_contexts(s, n, l);
        REQUIRE(per_context.size() == table.entries().size());
        for (const auto& e : table.entries())
            REQUIRE(per_context[e.key] == payload(CodecParams::make(n, 0, k), e.followers));
    }
}
