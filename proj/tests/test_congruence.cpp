#include <algorithm>
#include <set>

#include "doctest.h"
#include "semikit/bounded.hpp"
#include "semikit/congruence.hpp"
#include "semikit/errors.hpp"
#include "semikit/rng.hpp"
#include "semikit/semiring.hpp"

using namespace semikit;

namespace {

/* All interval partitions of the chain {0..b-1}; these are exactly the
 * congruences of the minmax chain, 2^(b-1) of them. */
std::vector<CongruencePartition> interval_partitions(uint32_t b) {
    std::vector<CongruencePartition> out;
    // each subset of the b-1 gaps gives cut points
    for (uint32_t cuts = 0; cuts < (1u << (b - 1)); ++cuts) {
        std::vector<uint32_t> ids(b);
        uint32_t cls = 0;
        for (uint32_t e = 0; e + 1 < b; ++e) {
            ids[e] = cls;
            if (cuts & (1u << e)) ++cls;
        }
        ids[b - 1] = cls;
        out.push_back(CongruencePartition::from_class_ids(std::move(ids)));
    }
    return out;
}

/* Meet of two partitions: classes are intersections. */
CongruencePartition meet(const CongruencePartition& p, const CongruencePartition& q) {
    uint32_t n = p.carrier_size();
    std::vector<uint32_t> ids(n);
    for (uint32_t e = 0; e < n; ++e) ids[e] = p.class_of(e) * n + q.class_of(e);
    return CongruencePartition::from_class_ids(std::move(ids));
}

/* Exhaustive subset oracle for Boolean quotient kernels (small carriers). */
std::optional<std::vector<uint32_t>> boolean_kernel_oracle(const FiniteSemiring& s) {
    const uint32_t n = s.size();
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        auto in = [&](uint32_t e) { return (mask >> e) & 1u; };
        if (!in(s.zero()) || in(s.one())) continue;
        bool ok = true;
        for (uint32_t a = 0; a < n && ok; ++a)
            for (uint32_t b = 0; b < n && ok; ++b) {
                if (in(s.add(a, b)) != (in(a) && in(b))) ok = false;
                if (in(s.mul(a, b)) != (in(a) || in(b))) ok = false;
            }
        if (ok) {
            std::vector<uint32_t> q;
            for (uint32_t e = 0; e < n; ++e)
                if (in(e)) q.push_back(e);
            return q;
        }
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("congruence closure basics") {
    auto m3 = make_minmax(3);
    // relating the ends of the chain collapses everything
    auto full = congruence_closure(m3, {{0, 2}});
    CHECK(full.class_count() == 1);
    // brute check: every enumerated congruence relating (0,2) is full
    for (const auto& info : enumerate_congruences(m3).congruences)
        if (info.partition.same(0, 2)) CHECK(info.partition.class_count() == 1);

    CHECK(congruence_closure(m3, {}).is_discrete());

    auto m4 = make_minmax(4);
    auto c = congruence_closure(m4, {{0, 1}});
    CHECK(c == CongruencePartition::from_classes(4, {{0, 1}, {2}, {3}}));
    // oracle: the least interval partition relating (0,1) that is a congruence
    CongruencePartition least = CongruencePartition::full(4);
    for (const auto& p : interval_partitions(4))
        if (p.same(0, 1) && is_congruence(m4, p) && p.refines(least)) least = p;
    CHECK(c == least);
}

TEST_CASE("is_congruence and witnesses") {
    auto m3 = make_minmax(3);
    CHECK(is_congruence(m3, CongruencePartition::discrete(3)));
    auto bad = CongruencePartition::from_classes(3, {{0, 2}, {1}});
    auto w = congruence_witness(m3, bad);
    REQUIRE(w.has_value());
    // min(1, r) separates the glued ends
    CHECK(!bad.same(m3.mul(w->a, w->r), m3.mul(w->b, w->r)));

    Rng rng(17);
    for (const auto& s : default_catalog()) {
        if (s.size() > 8) continue;
        std::vector<GeneratorPair> gens;
        for (int i = 0; i < 2; ++i)
            gens.emplace_back(static_cast<uint32_t>(rng.below(s.size())),
                              static_cast<uint32_t>(rng.below(s.size())));
        CHECK(is_congruence(s, congruence_closure(s, gens)));
    }
}

TEST_CASE("congruence lattice of chains matches the interval-partition oracle") {
    for (uint32_t b = 2; b <= 5; ++b) {
        auto m = make_minmax(b);
        auto lattice = enumerate_congruences(m);
        CHECK(lattice.congruences.size() == (1u << (b - 1)));

        std::set<std::vector<uint32_t>> found, expected;
        for (const auto& info : lattice.congruences) found.insert(info.partition.class_ids());
        for (const auto& p : interval_partitions(b)) {
            CHECK(is_congruence(m, p));
            expected.insert(p.class_ids());
        }
        CHECK(found == expected);
    }
    CHECK(enumerate_congruences(make_boolean()).congruences.size() == 2);
}

TEST_CASE("lattice bookkeeping: recorded generators regenerate, joins stay inside") {
    for (const auto& s : {make_minmax(4), make_zmod(6), catalog_get("truncnat:2:3")}) {
        auto lattice = enumerate_congruences(s);
        for (const auto& info : lattice.congruences) {
            CHECK(congruence_closure(s, info.generators) == info.partition);
            if (info.principal) {
                REQUIRE(info.principal_generator.has_value());
                CHECK(congruence_closure(s, {*info.principal_generator}) == info.partition);
                CHECK(info.generators.size() <= 1);
            }
        }
        // contains diagonal and full, closed under pairwise join
        CHECK(lattice.find(CongruencePartition::discrete(s.size())) != nullptr);
        CHECK(lattice.find(CongruencePartition::full(s.size())) != nullptr);
        for (const auto& a : lattice.congruences)
            for (const auto& b : lattice.congruences)
                CHECK(lattice.find(congruence_join(s, a.partition, b.partition)) != nullptr);
    }
}

TEST_CASE("closure equals the meet of enumerated congruences above the generators") {
    Rng rng(53);
    for (const auto& s : {make_minmax(4), make_product(make_boolean(), make_boolean()),
                          make_zmod(6), catalog_get("star:boolean")}) {
        auto lattice = enumerate_congruences(s);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<GeneratorPair> gens;
            for (uint64_t i = rng.below(3); i-- > 0;)
                gens.emplace_back(static_cast<uint32_t>(rng.below(s.size())),
                                  static_cast<uint32_t>(rng.below(s.size())));
            auto closed = congruence_closure(s, gens);
            CongruencePartition acc = CongruencePartition::full(s.size());
            for (const auto& info : lattice.congruences) {
                bool contains = true;
                for (const auto& [a, b] : gens)
                    if (!info.partition.same(a, b)) contains = false;
                if (contains) acc = meet(acc, info.partition);
            }
            CHECK(closed == acc);
        }
    }
}

TEST_CASE("closure monotonicity in the generators") {
    Rng rng(67);
    auto s = make_minmax(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<GeneratorPair> gens;
        for (int i = 0; i < 3; ++i)
            gens.emplace_back(static_cast<uint32_t>(rng.below(s.size())),
                              static_cast<uint32_t>(rng.below(s.size())));
        auto small = congruence_closure(s, {gens[0]});
        auto big = congruence_closure(s, gens);
        CHECK(small.refines(big));
    }
}

TEST_CASE("c-principality of minmax chains") {
    CHECK(check_c_principal(make_minmax(2)).c_principal);
    CHECK(check_c_principal(make_minmax(3)).c_principal);

    auto r4 = check_c_principal(make_minmax(4));
    CHECK(!r4.c_principal);
    REQUIRE(r4.witness.has_value());
    CHECK(r4.witness->partition == CongruencePartition::from_classes(4, {{0, 1}, {2, 3}}));

    CHECK(!check_c_principal(make_minmax(5)).c_principal);
    CHECK(check_c_principal(make_zmod(5)).c_principal);
    CHECK(check_c_principal(make_zmod(7)).c_principal);
}

TEST_CASE("boolean quotient kernels") {
    auto qb = boolean_quotient_kernel(make_boolean());
    REQUIRE(qb.has_value());
    CHECK(*qb == std::vector<uint32_t>{0});

    CHECK(!boolean_quotient_kernel(make_zmod(4)).has_value());

    auto q4 = boolean_quotient_kernel(make_minmax(4));
    REQUIRE(q4.has_value());
    CHECK(*q4 == std::vector<uint32_t>{0});

    for (const auto& s : default_catalog()) {
        if (s.size() > 6) continue;
        INFO(s.name());
        auto fast = boolean_quotient_kernel(s);
        auto oracle = boolean_kernel_oracle(s);
        CHECK(fast.has_value() == oracle.has_value());
    }
}

TEST_CASE("Borger-Grinberg consistency") {
    auto z6 = bg_check(make_zmod(6));
    CHECK(z6.ring);
    CHECK(!z6.boolean_kernel.has_value());
    CHECK(z6.consistent);

    auto t = bg_check(catalog_get("truncnat:2:3"));
    CHECK(!t.ring);
    CHECK(t.boolean_kernel.has_value());
    CHECK(t.consistent);

    for (const auto& s : default_catalog()) {
        INFO(s.name());
        CHECK(bg_check(s).consistent);
    }
}

TEST_CASE("powers stay related: closure of (x, x+y) relates nth powers") {
    for (const auto& s : {make_minmax(4), make_zmod(6), catalog_get("truncnat:2:3"),
                          catalog_get("star:boolean")}) {
        for (uint32_t x = 0; x < s.size(); ++x)
            for (uint32_t y = 0; y < s.size(); ++y) {
                if (y == s.zero()) continue;
                auto c = congruence_closure(s, {{x, s.add(x, y)}});
                uint32_t x2 = s.mul(x, x), y2 = s.mul(y, y);
                uint32_t x3 = s.mul(x2, x), y3 = s.mul(y2, y);
                CHECK(c.same(x2, s.add(x2, y2)));
                CHECK(c.same(x3, s.add(x3, y3)));
            }
    }
}

TEST_CASE("bounded closure on B[X]") {
    auto u = BoundedUniverse::bool_poly(6);
    auto idx = [](const BoolPolynomial& p) { return static_cast<uint32_t>(p.mask()); };
    BoolPolynomial one = BoolPolynomial::one();
    BoolPolynomial x = BoolPolynomial::xpow(1), x2 = BoolPolynomial::xpow(2),
                   x3 = BoolPolynomial::xpow(3);
    auto r = bounded_closure(u, {{idx(one + x), idx(one + x2)}});
    REQUIRE(r.reached_fixpoint);
    CHECK(r.partition.same(idx(x + x2), idx(x + x3)));
    CHECK(r.partition.same(idx(one + x + x2), idx(one + x + x3)));

    auto d = bounded_closure(u, {});
    CHECK(d.partition.is_discrete());
}

TEST_CASE("bounded closure on truncated naturals") {
    auto u = BoundedUniverse::naturals(20);
    auto r = bounded_closure(u, {{2, 5}});
    REQUIRE(r.reached_fixpoint);
    // classes: {0}, {1}, {2,5,8,...}, {3,6,...}, {4,7,...}
    CHECK(r.partition.class_count() == 5);
    CHECK(!r.partition.same(0, 3));
    CHECK(!r.partition.same(1, 4));
    for (uint32_t x = 2; x + 3 <= 20; ++x) CHECK(r.partition.same(x, x + 3));
    CHECK(!r.partition.same(2, 3));
    CHECK(!r.partition.same(2, 4));
}

TEST_CASE("bounded closure is sound against finite quotient witnesses") {
    // map N<=30 through the quotient N/(2~5) and check related => equal image
    auto u = BoundedUniverse::naturals(30);
    auto r = bounded_closure(u, {{2, 5}, {7, 10}});
    REQUIRE(r.reached_fixpoint);
    auto t = make_truncated_nat(2, 3);
    auto image = [&](uint32_t x) { return x < 5 ? x : 2 + (x - 2) % 3; };
    for (uint32_t a = 0; a <= 30; ++a)
        for (uint32_t b = 0; b <= 30; ++b)
            if (r.partition.same(a, b)) CHECK(image(a) == image(b));
    // silence unused warning
    CHECK(t.size() == 5);
}

TEST_CASE("nat congruence classifier") {
    CHECK(classify_nat_congruence({}).trivial);
    CHECK(classify_nat_congruence({{3, 3}, {7, 7}}).trivial);

    auto c1 = classify_nat_congruence({{2, 5}});
    CHECK(!c1.trivial);
    CHECK(c1.n == 2);
    CHECK(c1.k == 3);

    auto c2 = classify_nat_congruence({{3, 5}, {4, 10}});
    CHECK(!c2.trivial);
    CHECK(c2.n == 3);
    CHECK(c2.k == 2);

    // the case that defeats the naive 4(n+k) oracle bound
    auto c3 = classify_nat_congruence({{5, 8}, {2, 9}});
    CHECK(c3.n == 2);
    CHECK(c3.k == 1);
}

TEST_CASE("B[X] desk-scale non-relation check") {
    auto r = check_bx_nonrelation(3, 7);
    CHECK(!r.related);
    CHECK(r.reached_fixpoint);
    CHECK(r.generator_count == 3);

    // adding the query as a generator flips the verdict
    BoolPolynomial q1 = BoolPolynomial::xpow(4) + BoolPolynomial::one();
    BoolPolynomial q2 = BoolPolynomial::xpow(5) + BoolPolynomial::one();
    auto r2 = check_bx_nonrelation(3, 7, 50'000'000, std::nullopt, {{q1, q2}});
    CHECK(r2.related);

    // a generator pair queried directly is related
    BoolPolynomial g1 = BoolPolynomial::xpow(2) + BoolPolynomial::one();
    BoolPolynomial g2 = BoolPolynomial::xpow(3) + BoolPolynomial::one();
    auto r3 = check_bx_nonrelation(3, 7, 50'000'000, std::make_pair(g1, g2));
    CHECK(r3.related);

    CHECK_THROWS_AS(check_bx_nonrelation(3, 5), invalid_input_error);
}
