#include <vector>

#include "doctest.h"
#include "semikit/errors.hpp"
#include "semikit/numberfield.hpp"
#include "semikit/realroot.hpp"
#include "semikit/rng.hpp"

using namespace semikit;

namespace {

/* Independent root-location oracle: scan for sign flips of p on a fine grid.
 * Valid for squarefree polynomials whose roots are separated by more than
 * the step. */
std::vector<std::pair<Rat, Rat>> brute_flip_intervals(const IntPolynomial& p, int lo, int hi,
                                                      int denom) {
    std::vector<std::pair<Rat, Rat>> out;
    Rat step(1, denom);
    Rat x(lo);
    int prev = p.sign_at(x);
    while (x < hi) {
        Rat next = x + step;
        int cur = p.sign_at(next);
        if (cur == 0) {
            out.emplace_back(next, next);
        } else if (prev != 0 && cur != prev) {
            out.emplace_back(x, next);
        }
        prev = cur == 0 ? prev : cur;
        x = next;
    }
    return out;
}

FieldElement sample_element(const std::shared_ptr<const NumberField>& f, Rng& rng) {
    std::vector<Rat> coords;
    for (int i = 0; i < f->degree(); ++i)
        coords.emplace_back(rng.range(-9, 9), rng.range(1, 4));
    return f->from_coords(std::move(coords));
}

}  // namespace

TEST_CASE("root isolation matches the brute bisection oracle") {
    auto p = IntPolynomial::parse("x^2-2");
    auto roots = isolate_real_roots(p);
    auto oracle = brute_flip_intervals(p, -2, 2, 64);
    REQUIRE(roots.size() == 2);
    REQUIRE(oracle.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        auto [lo, hi] = roots[i].interval_refined(Rat(1, 64));
        CHECK(lo <= oracle[i].second);
        CHECK(hi >= oracle[i].first);
    }
    // sqrt(2) lies in (1.414, 1.415)
    auto [lo, hi] = roots[1].interval_refined(Rat(1, 10000));
    CHECK(lo > Rat(1414, 1000));
    CHECK(hi < Rat(1415, 1000));
}

TEST_CASE("no real roots / exact rational roots") {
    CHECK(isolate_real_roots(IntPolynomial::parse("x^2+1")).empty());

    auto roots = isolate_real_roots(IntPolynomial::parse("x-3"));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].is_exact());
    CHECK(roots[0].exact_value() == 3);

    CHECK_THROWS_AS(isolate_real_roots(IntPolynomial::zero()), invalid_input_error);
}

TEST_CASE("isolating intervals have Sturm count one and are pairwise disjoint") {
    std::vector<std::string> polys = {"x^2-2", "x^3-2", "x^4-10x^2+1", "x^3-x-1", "x^2-x-1",
                                      "x^5-x-1", "x^3-3x+1"};
    for (const auto& text : polys) {
        auto p = IntPolynomial::parse(text);
        auto q = p.squarefree_part();
        auto roots = isolate_real_roots(p);
        for (size_t i = 0; i < roots.size(); ++i) {
            auto [lo, hi] = roots[i].interval();
            if (!roots[i].is_exact()) {
                CHECK(RealRoot::count_roots(q, lo, hi) == 1);
                CHECK(q.sign_at(lo) != q.sign_at(hi));
            }
            if (i > 0) {
                auto [plo, phi] = roots[i - 1].interval();
                bool disjoint = phi <= lo && plo < hi;
                CHECK(disjoint);
            }
        }
    }
}

TEST_CASE("field arithmetic in Q(sqrt 2) and Q(cbrt 2)") {
    auto f = NumberField::parse("x^2-2@1");
    auto one = f->one();
    auto theta = f->theta();

    // (1 + sqrt2)(-1 + sqrt2) = 1
    CHECK((one + theta) * (-one + theta) == one);
    auto a = f->parse_element("3/2w-7");
    CHECK((a + (-a)).is_zero());
    CHECK(a.inverse().inverse() == a);

    auto g = NumberField::parse("x^3-2@0");
    CHECK(g->theta() * (g->theta() * g->theta()) == g->from_rational(Rat(2)));
}

TEST_CASE("exact sign determination") {
    auto f = NumberField::parse("x^2-2@1");
    auto theta = f->theta();
    CHECK((theta - f->one()).sign() == 1);                      // sqrt2 - 1 > 0
    CHECK(f->zero().sign() == 0);
    CHECK((f->from_rational(Rat(3)) - theta - theta).sign() == 1);  // 3 - 2 sqrt2 > 0
    CHECK((f->one() - theta).sign() == -1);
}

TEST_CASE("sign agrees with a 100-digit interval evaluation") {
    Rng rng(2024);
    for (const char* spec : {"x^2-2@1", "x^3-2@0"}) {
        auto f = NumberField::parse(spec);
        for (int trial = 0; trial < 40; ++trial) {
            auto a = sample_element(f, rng);
            Rat width = Rat(1, Int(boost::multiprecision::pow(Int(10), 100)));
            auto [lo, hi] = a.enclosure(width);
            if (a.is_zero()) {
                CHECK(lo <= 0);
                CHECK(hi >= 0);
                continue;
            }
            int s = a.sign();
            // after refinement the enclosure of a nonzero element must not straddle 0
            CHECK(((lo > 0 && s == 1) || (hi < 0 && s == -1)));
        }
    }
}

TEST_CASE("sign is multiplicative") {
    Rng rng(7);
    auto f = NumberField::parse("x^3-2@0");
    for (int trial = 0; trial < 60; ++trial) {
        auto a = sample_element(f, rng);
        auto b = sample_element(f, rng);
        CHECK((a * b).sign() == a.sign() * b.sign());
    }
}

TEST_CASE("floor_ratio") {
    auto f = NumberField::parse("x^2-2@1");
    auto one = f->one();
    auto theta = f->theta();

    CHECK(f->floor_ratio(theta, one) == 1);
    CHECK(f->floor_ratio(one, theta - one) == 2);  // 1/(sqrt2-1) = sqrt2+1 ~ 2.414
    CHECK(f->floor_ratio(f->from_rational(Rat(5)), one) == 5);
    CHECK_THROWS_AS(f->floor_ratio(one, f->zero()), invalid_input_error);
    CHECK_THROWS_AS(f->floor_ratio(one, one - theta), invalid_input_error);

    Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = sample_element(f, rng);
        auto b = sample_element(f, rng);
        if (b.sign() <= 0) continue;
        Int m = f->floor_ratio(a, b);
        CHECK((a - b.scaled(Rat(m))).sign() >= 0);
        CHECK((a - b.scaled(Rat(m + 1))).sign() == -1);
    }
}

TEST_CASE("field construction rejects bad minimal polynomials") {
    CHECK_THROWS_AS(NumberField::parse("x^2-1@0"), invalid_input_error);   // rational roots
    CHECK_THROWS_AS(NumberField::parse("x^2+1@0"), invalid_input_error);   // no real root
    CHECK_THROWS_AS(NumberField::parse("2x^2-1@0"), invalid_input_error);  // not monic
    CHECK_THROWS_AS(NumberField::create(IntPolynomial::parse("x^4-4x^2+4"), 0),
                    invalid_input_error);  // (x^2-2)^2, not squarefree
    CHECK_THROWS_AS(NumberField::parse("x^2-2@2"), invalid_input_error);   // index out of range
}

TEST_CASE("floor of field elements") {
    auto f = NumberField::parse("x^2-2@1");
    CHECK(f->theta().floor() == 1);
    CHECK((-f->theta()).floor() == -2);
    CHECK(f->from_rational(Rat(7, 2)).floor() == 3);
    CHECK(f->from_rational(Rat(-7, 2)).floor() == -4);
    CHECK(f->from_rational(Rat(4)).floor() == 4);
}
