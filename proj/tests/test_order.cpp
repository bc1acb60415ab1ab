#include <algorithm>

#include "doctest.h"
#include "semikit/carriers.hpp"
#include "semikit/errors.hpp"
#include "semikit/order.hpp"
#include "semikit/power_chain.hpp"
#include "semikit/rng.hpp"

using namespace semikit;

namespace {

OrderElement rand_element(const RealOrder& o, Rng& rng, int64_t lo, int64_t hi) {
    std::vector<Int> c;
    for (int i = 0; i < o.degree(); ++i) c.emplace_back(rng.range(lo, hi));
    return o.element(std::move(c));
}

OrderElement rand_in_S(const RealOrder& o, Rng& rng, int64_t span) {
    while (true) {
        auto x = rand_element(o, rng, -span, span);
        if (o.sign(x) >= 0) return x;
    }
}

}  // namespace

TEST_CASE("order construction") {
    auto o = RealOrder::parse("x^2-2@1");
    CHECK(o->degree() == 2);
    CHECK(o->sign(o->theta()) == 1);

    auto cb = RealOrder::parse("x^3-2@0");
    CHECK(cb->degree() == 3);
    CHECK(cb->sign(cb->theta()) == 1);

    CHECK_THROWS_AS(RealOrder::parse("x^2+1@0"), invalid_input_error);  // no real root
    CHECK_THROWS_AS(RealOrder::parse("x-3@0"), invalid_input_error);    // degree 1 is Z
    CHECK_THROWS_AS(RealOrder::parse("x^2-4@0"), invalid_input_error);  // reducible
}

TEST_CASE("membership in S") {
    auto o = RealOrder::parse("x^2-2@1");
    CHECK(o->in_S(o->parse_element("w-1")));    // sqrt2 - 1 > 0
    CHECK(!o->in_S(o->parse_element("1-w")));
    CHECK(o->in_S(o->zero()));
}

TEST_CASE("ideal lattices in HNF") {
    auto o = RealOrder::parse("x^2-2@1");
    auto I = ideal_from_generators(*o, {o->theta()});  // (sqrt2)
    CHECK(I.determinant == 2);
    CHECK(I.hnf(0, 0) == 2);
    CHECK(I.hnf(1, 1) == 1);
    CHECK(I.hnf(1, 0) == 0);
    CHECK(I.hnf(0, 1) == 0);

    auto full = ideal_from_generators(*o, {o->one()});
    CHECK(full.determinant == 1);

    auto two = ideal_from_generators(*o, {o->element_from_int(2)});
    CHECK(two.determinant == 4);

    CHECK_THROWS_AS(ideal_from_generators(*o, {o->zero()}), invalid_input_error);
}

TEST_CASE("ideal membership") {
    auto o = RealOrder::parse("x^2-2@1");
    auto I = ideal_from_generators(*o, {o->theta()});
    CHECK(ideal_contains(I, o->parse_element("3w")));
    CHECK(!ideal_contains(I, o->one()));
    CHECK(ideal_contains(I, o->zero()));
    CHECK(ideal_contains(I, o->element_from_int(2)));  // 2 = sqrt2 * sqrt2
}

TEST_CASE("k-ideal correspondence round trips") {
    auto o = RealOrder::parse("x^2-2@1");
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<OrderElement> gens;
        for (uint64_t i = 1 + rng.below(2); i-- > 0;) {
            auto g = rand_element(*o, rng, -5, 5);
            if (!(g == o->zero())) gens.push_back(g);
        }
        if (gens.empty()) continue;
        auto I = ideal_from_generators(*o, gens);
        auto K = k_ideal_of(*o, I);
        for (const auto& kg : K.k_generators) CHECK(o->sign(kg) >= 0);
        auto back = ring_ideal_of(*o, K.k_generators);
        CHECK(back == I);
    }

    // |−sqrt2| = sqrt2
    auto I = ideal_from_generators(*o, {o->neg(o->theta())});
    auto K = k_ideal_of(*o, I);
    REQUIRE(K.k_generators.size() == 1);
    CHECK(K.k_generators[0] == o->theta());

    auto full = k_ideal_of(*o, ideal_from_generators(*o, {o->one()}));
    CHECK(k_ideal_contains(*o, full, o->one()));
    // membership requires nonnegativity on the k-ideal side
    CHECK(!k_ideal_contains(*o, full, o->parse_element("1-w")));
}

TEST_CASE("congruence classification") {
    auto o = RealOrder::parse("x^2-2@1");
    auto one = o->one();
    auto theta = o->theta();

    auto c1 = classify_congruence(*o, {{one, o->add(one, theta)}});
    CHECK(!c1.trivial);
    CHECK(c1.j == 1);
    CHECK(c1.ideal->determinant == 2);

    auto c0 = classify_congruence(*o, {{o->zero(), theta}});
    CHECK(!c0.trivial);
    CHECK(c0.j == 0);
    CHECK(c0.ideal->determinant == 2);

    auto t = classify_congruence(*o, {{o->element_from_int(3), o->element_from_int(3)}});
    CHECK(t.trivial);

    CHECK_THROWS_AS(classify_congruence(*o, {{o->parse_element("1-w"), one}}),
                    invalid_input_error);
}

TEST_CASE("is_related matches the classified forms") {
    auto o = RealOrder::parse("x^2-2@1");
    auto theta = o->theta();
    auto one = o->one();

    auto c1 = classify_congruence(*o, {{one, o->add(one, theta)}});
    CHECK(!is_related(*o, c1, o->zero(), theta));  // C_1 never relates 0 to positives
    CHECK(is_related(*o, c1, one, o->parse_element("1+2w")));
    CHECK(is_related(*o, c1, o->zero(), o->zero()));

    auto c0 = classify_congruence(*o, {{o->zero(), theta}});
    CHECK(is_related(*o, c0, o->zero(), theta));

    auto t = OrderCongruenceClass{};
    CHECK(is_related(*o, t, one, one));
    CHECK(!is_related(*o, t, one, theta));
}

TEST_CASE("quotient semirings") {
    auto o = RealOrder::parse("x^2-2@1");
    auto theta = o->theta();

    OrderCongruenceClass c;
    c.trivial = false;
    c.ideal = ideal_from_generators(*o, {theta});
    c.j = 0;
    auto q0 = quotient_semiring(*o, c);
    CHECK(q0.size() == 2);
    CHECK(is_valid(q0));
    CHECK(is_ring(q0));

    c.j = 1;
    auto q1 = quotient_semiring(*o, c);
    CHECK(q1.size() == 3);
    CHECK(is_valid(q1));
    CHECK(!is_ring(q1));

    c.ideal = ideal_from_generators(*o, {o->element_from_int(2)});
    c.j = 0;
    auto q2 = quotient_semiring(*o, c);
    CHECK(q2.size() == 4);
    CHECK(is_valid(q2));

    OrderCongruenceClass triv;
    CHECK_THROWS_AS(quotient_semiring(*o, triv), invalid_input_error);
}

TEST_CASE("canonical generators reproduce the class") {
    auto o = RealOrder::parse("x^2-2@1");
    Rng rng(13);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<std::pair<OrderElement, OrderElement>> gens;
        for (uint64_t i = 1 + rng.below(2); i-- > 0;) {
            auto a = rand_in_S(*o, rng, 4);
            auto b = rand_in_S(*o, rng, 4);
            gens.emplace_back(a, b);
        }
        ClassifyOptions opts;
        opts.cross_check = false;
        auto cls = classify_congruence(*o, gens, opts);
        if (cls.trivial) continue;
        auto K = k_ideal_of(*o, *cls.ideal);
        auto canon = canonical_generators(*o, cls, K.k_generators);
        auto cls2 = classify_congruence(*o, canon, opts);
        REQUIRE(!cls2.trivial);
        CHECK(cls2.ideal->hnf == cls.ideal->hnf);
        CHECK(cls2.j == cls.j);
    }

    // (I=(sqrt2), j=1) with generator sqrt2 gives the pair (1, 1+sqrt2)
    OrderCongruenceClass c;
    c.trivial = false;
    c.ideal = ideal_from_generators(*o, {o->theta()});
    c.j = 1;
    auto pairs = canonical_generators(*o, c, {o->theta()});
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].first == o->one());
    CHECK(pairs[0].second == o->parse_element("1+w"));
}

TEST_CASE("I_x monotonicity at query level") {
    auto o = RealOrder::parse("x^2-2@1");
    Rng rng(19);
    auto cls = classify_congruence(*o, {{o->one(), o->parse_element("1+2w")}});
    for (int trial = 0; trial < 30; ++trial) {
        auto x = rand_in_S(*o, rng, 4);
        auto y = rand_in_S(*o, rng, 4);
        if (o->sign(o->sub(y, x)) < 0) std::swap(x, y);  // ensure x <= y
        auto t = rand_in_S(*o, rng, 4);
        // t in I_x  =>  t in I_y
        if (is_related(*o, cls, o->add(x, t), x)) CHECK(is_related(*o, cls, o->add(y, t), y));
    }
}

TEST_CASE("integer relations from minimal polynomials") {
    auto o = RealOrder::parse("x^2-2@1");
    auto theta = o->theta();

    auto r = derive_integer_relation(*o, theta, theta);
    CHECK(r.f == IntPolynomial::parse("x"));
    CHECK(r.g.is_zero());
    CHECK(r.l == 2);
    CHECK(r.m == 3);
    CHECK(r.n == 5);

    auto u = o->parse_element("1+w");  // minimal polynomial x^2-2x-1
    auto r2 = derive_integer_relation(*o, theta, u);
    CHECK(r2.f == IntPolynomial::parse("x"));
    CHECK(r2.g == IntPolynomial::parse("2"));
    CHECK(r2.l == 1);

    auto cb = RealOrder::parse("x^3-2@0");
    auto r3 = derive_integer_relation(*cb, cb->one(), cb->theta());
    CHECK(r3.f == IntPolynomial::parse("x^2"));
    CHECK(r3.g.is_zero());
    CHECK(r3.l == 2);

    CHECK_THROWS_AS(derive_integer_relation(*o, o->zero(), theta), invalid_input_error);
    CHECK_THROWS_AS(derive_integer_relation(*o, theta, o->zero()), invalid_input_error);

    // the identity holds exactly for random u > 0 in both orders
    Rng rng(29);
    for (const char* spec : {"x^2-2@1", "x^3-2@0"}) {
        auto ord = RealOrder::parse(spec);
        for (int trial = 0; trial < 10; ++trial) {
            auto a = rand_in_S(*ord, rng, 3);
            auto u2 = rand_in_S(*ord, rng, 3);
            if (ord->sign(a) <= 0 || ord->sign(u2) <= 0) continue;
            auto rel = derive_integer_relation(*ord, a, u2);
            auto lhs = ord->mul(u2, ord->eval_poly(rel.f, u2));
            auto rhs = ord->add(ord->mul(u2, ord->eval_poly(rel.g, u2)),
                                ord->element_from_int(rel.l));
            CHECK(lhs == rhs);
            CHECK(rel.l > 0);
            CHECK(rel.n - rel.m == rel.l);
            CHECK(ord->sign(ord->sub(ord->element_from_int(rel.m),
                                     ord->mul(a, ord->add(ord->eval_poly(rel.f, a),
                                                          ord->eval_poly(rel.g, a))))) > 0);
        }
    }
}

TEST_CASE("min_poly_of") {
    auto o = RealOrder::parse("x^2-2@1");
    CHECK(o->min_poly_of(o->theta()) == IntPolynomial::parse("x^2-2"));
    CHECK(o->min_poly_of(o->element_from_int(2)) == IntPolynomial::parse("x-2"));
    CHECK(o->min_poly_of(o->parse_element("1+w")) == IntPolynomial::parse("x^2-2x-1"));
}

TEST_CASE("power relation chains over orders and semirings") {
    auto o = RealOrder::parse("x^2-2@1");
    OrderCarrier oc{o.get()};
    Rng rng(37);

    for (int trial = 0; trial < 10; ++trial) {
        auto x = rand_in_S(*o, rng, 3);
        auto y = rand_in_S(*o, rng, 3);
        int n = 1 + static_cast<int>(rng.below(5));
        auto chain = derive_power_chain(oc, x, y, n);
        CHECK(chain.steps.size() == static_cast<size_t>(3 * (n - 1)));
        CHECK(verify_power_chain(oc, chain).ok);
    }

    auto s = make_minmax(4);
    SemiringCarrier sc{&s};
    for (uint32_t x = 0; x < s.size(); ++x)
        for (uint32_t y = 0; y < s.size(); ++y) {
            auto chain = derive_power_chain(sc, x, y, 4);
            CHECK(verify_power_chain(sc, chain).ok);
        }

    // tampering is caught
    auto chain = derive_power_chain(oc, o->one(), o->theta(), 3);
    chain.steps[2].rhs = o->add(chain.steps[2].rhs, o->one());
    CHECK(!verify_power_chain(oc, chain).ok);

    auto chain2 = derive_power_chain(oc, o->one(), o->theta(), 3);
    chain2.steps[4].premise_level = 2;
    CHECK(!verify_power_chain(oc, chain2).ok);
}

TEST_CASE("classification soundness against the bounded cone closure") {
    Rng rng(43);
    for (const char* spec : {"x^2-2@1", "x^3-2@0"}) {
        auto o = RealOrder::parse(spec);
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<std::pair<OrderElement, OrderElement>> gens;
            for (uint64_t i = 1 + rng.below(2); i-- > 0;) {
                std::vector<Int> a, b;
                for (int k = 0; k < o->degree(); ++k) {
                    a.emplace_back(rng.range(0, 3));
                    b.emplace_back(rng.range(0, 3));
                }
                auto ea = o->element(a), eb = o->element(b);
                if (o->sign(ea) >= 0 && o->sign(eb) >= 0) gens.emplace_back(ea, eb);
            }
            // the classifier's built-in oracle must not throw
            auto cls = classify_congruence(*o, gens);
            (void)cls;
        }
    }
}

TEST_CASE("canonical membership derivations verify and detect tampering") {
    Rng rng(61);
    for (const char* spec : {"x^2-2@1", "x^3-2@0"}) {
        auto o = RealOrder::parse(spec);
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<std::pair<OrderElement, OrderElement>> gens;
            for (uint64_t i = 1 + rng.below(3); i-- > 0;) {
                auto a = rand_element(*o, rng, 0, 5);
                auto b = rand_element(*o, rng, 0, 5);
                gens.emplace_back(a, b);
            }
            ClassifyOptions opts;
            opts.cross_check = false;
            auto cls = classify_congruence(*o, gens, opts);
            if (cls.trivial) continue;
            auto K = k_ideal_of(*o, *cls.ideal);
            auto d = derive_canonical_membership(*o, gens, cls, K.k_generators);
            auto verdict = verify_derivation(*o, d);
            INFO(verdict.diagnostics);
            REQUIRE(verdict.ok);
            // conclusions are exactly the canonical pairs
            auto canon = canonical_generators(*o, cls, K.k_generators);
            REQUIRE(d.conclusions.size() == canon.size());
            for (size_t c = 0; c < canon.size(); ++c) {
                const auto& st = d.steps[static_cast<size_t>(d.conclusions[c])];
                CHECK(st.lhs == canon[c].first);
                CHECK(st.rhs == canon[c].second);
            }
            // tampering with any step is caught
            if (!d.steps.empty()) {
                auto bad = d;
                auto& st = bad.steps[bad.steps.size() / 2];
                st.rhs = o->add(st.rhs, o->one());
                CHECK(!verify_derivation(*o, bad).ok);
            }
        }
    }

    // a forged derivation using a negative shift must be rejected
    auto o = RealOrder::parse("x^2-2@1");
    CongruenceDerivation forged;
    forged.generators = {{o->one(), o->parse_element("1+w")}};
    CongruenceStep g;
    g.rule = CongruenceStep::Rule::Generator;
    g.generator_index = 0;
    g.lhs = o->one();
    g.rhs = o->parse_element("1+w");
    forged.steps.push_back(g);
    CongruenceStep sh;
    sh.rule = CongruenceStep::Rule::Shift;
    sh.premise1 = 0;
    sh.operand = o->parse_element("-1");  // outside S
    sh.lhs = o->zero();
    sh.rhs = o->theta();
    forged.steps.push_back(sh);
    CHECK(!verify_derivation(*o, forged).ok);
}

TEST_CASE("two-element generation of congruences on a maximal order (bounded search)") {
    // Z[sqrt2] is the ring of integers of Q(sqrt2); every congruence should
    // be generated by at most two pairs. Checked for small-norm ideals by
    // searching two elements that regenerate the ideal lattice.
    auto o = RealOrder::parse("x^2-2@1");
    std::vector<OrderElement> pool;
    for (int64_t a = -4; a <= 4; ++a)
        for (int64_t b = -4; b <= 4; ++b) {
            if (a == 0 && b == 0) continue;
            pool.push_back(o->element({Int(a), Int(b)}));
        }
    int checked = 0;
    for (size_t i = 0; i < pool.size() && checked < 25; i += 7) {
        for (size_t j = i + 1; j < pool.size() && checked < 25; j += 11) {
            auto I = ideal_from_generators(*o, {pool[i], pool[j]});
            if (abs_int(I.determinant) > 50) continue;
            ++checked;
            bool two_generated = false;
            for (size_t p = 0; p < pool.size() && !two_generated; ++p) {
                if (!ideal_contains(I, pool[p])) continue;
                for (size_t q = p; q < pool.size() && !two_generated; ++q) {
                    if (!ideal_contains(I, pool[q])) continue;
                    if (ideal_from_generators(*o, {pool[p], pool[q]}) == I) two_generated = true;
                }
            }
            CHECK(two_generated);
        }
    }
    CHECK(checked > 0);
}
