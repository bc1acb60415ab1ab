#include <algorithm>

#include "doctest.h"
#include "semikit/bounded.hpp"
#include "semikit/congruence.hpp"
#include "semikit/errors.hpp"
#include "semikit/rng.hpp"
#include "semikit/semiring.hpp"

using namespace semikit;

TEST_CASE("axiom validation on the catalog") {
    for (const auto& s : default_catalog()) {
        INFO(s.name());
        CHECK(validate_axioms(s).empty());
    }
}

TEST_CASE("axiom validation names violations") {
    // tamper with Z/4: make 2+3 inconsistent with commutativity
    auto s = make_zmod(4);
    auto add = s.add_table();
    auto mul = s.mul_table();
    add[2 * 4 + 3] = 0;
    auto bad = FiniteSemiring::from_tables(4, add, mul, 0, 1);
    auto report = validate_axioms(bad);
    CHECK(!report.empty());
    bool found_comm = false;
    for (const auto& v : report)
        if (v.axiom == "addition-commutativity") found_comm = true;
    CHECK(found_comm);

    CHECK_THROWS_AS(FiniteSemiring::from_tables(2, {0, 1, 1, 7}, {0, 0, 0, 1}, 0, 1),
                    invalid_input_error);
}

TEST_CASE("truncated naturals quotient matches the closure oracle") {
    // N / (1 ~ 2) is the Boolean semifield
    auto u = BoundedUniverse::naturals(8);
    auto closure = bounded_closure(u, {{1, 2}});
    CHECK(closure.partition.class_count() == 2);
    CHECK(closure.partition.same(1, 7));
    CHECK(!closure.partition.same(0, 1));

    auto b = make_truncated_nat(1, 1);
    auto boolean = make_boolean();
    CHECK(b.size() == 2);
    CHECK(b.add_table() == boolean.add_table());
    CHECK(b.mul_table() == boolean.mul_table());
    CHECK(b.add(1, 1) == 1);

    // N / (2 ~ 5): five elements, 4 + 4 = 8 ~ 2
    auto t = make_truncated_nat(2, 3);
    CHECK(t.size() == 5);
    CHECK(t.add(4, 4) == 2);
    CHECK(t.mul(3, 3) == 3);  // 9 ~ 3
    CHECK(validate_axioms(t).empty());
}

TEST_CASE("minmax chains") {
    auto m = make_minmax(3);
    CHECK(validate_axioms(m).empty());
    CHECK(m.zero() == 0);
    CHECK(m.one() == 2);
    CHECK(m.add(1, 2) == 2);   // max
    CHECK(m.mul(1, 2) == 1);   // min
    CHECK_THROWS_AS(make_minmax(1), invalid_input_error);
}

TEST_CASE("products are componentwise") {
    auto p = make_product(make_boolean(), make_boolean());
    CHECK(p.size() == 4);
    CHECK(validate_axioms(p).empty());
    // (1,0) + (0,1) = (1,1); index a*|T|+b
    CHECK(p.add(2, 1) == 3);
    CHECK(p.mul(2, 1) == 0);
}

TEST_CASE("star adjoins a new additive identity") {
    auto sb = make_star(make_boolean());
    CHECK(sb.size() == 3);
    CHECK(validate_axioms(sb).empty());
    CHECK(sb.zero() == 2);  // omega appended last
    CHECK(sb.one() == 1);

    auto sz = make_star(make_zmod(2));
    CHECK(validate_axioms(sz).empty());
    CHECK(sz.zero() == 2);
    // the old zero is an ordinary element now: omega * 0 = omega
    CHECK(sz.mul(2, 0) == 2);
    CHECK(sz.add(2, 0) == 0);

    for (const auto& s : default_catalog()) {
        auto star = make_star(s);
        INFO(s.name());
        CHECK(star.size() == s.size() + 1);
        CHECK(validate_axioms(star).empty());
        CHECK(!is_ring(star));
    }
}

TEST_CASE("quotients by congruences") {
    auto m3 = make_minmax(3);
    auto c = congruence_closure(m3, {{0, 1}});
    CHECK(c.class_count() == 2);
    auto q = make_quotient(m3, c);
    CHECK(q.size() == 2);
    CHECK(validate_axioms(q).empty());

    auto diag = CongruencePartition::discrete(m3.size());
    auto qd = make_quotient(m3, diag);
    CHECK(qd.size() == m3.size());
    CHECK(qd.add_table() == m3.add_table());
    CHECK(qd.mul_table() == m3.mul_table());

    auto full = CongruencePartition::full(m3.size());
    CHECK(make_quotient(m3, full).size() == 1);

    // {0,2},{1} is not compatible with min on the chain
    auto bad = CongruencePartition::from_classes(3, {{0, 2}, {1}});
    CHECK_THROWS_AS(make_quotient(m3, bad), invalid_input_error);
}

TEST_CASE("quotient cardinality equals closure class count") {
    Rng rng(31);
    for (const auto& s : default_catalog()) {
        if (s.size() > 8) continue;
        std::vector<GeneratorPair> gens;
        for (int i = 0; i < 2; ++i)
            gens.emplace_back(static_cast<uint32_t>(rng.below(s.size())),
                              static_cast<uint32_t>(rng.below(s.size())));
        auto c = congruence_closure(s, gens);
        CHECK(make_quotient(s, c).size() == c.class_count());
    }
}

TEST_CASE("boolean polynomials") {
    auto p = BoolPolynomial({0, 3});
    auto q = BoolPolynomial({0, 5});
    CHECK((p + q) == BoolPolynomial({0, 3, 5}));

    auto r = BoolPolynomial({0, 1});
    CHECK((r * r) == BoolPolynomial({0, 1, 2}));

    auto a = BoolPolynomial({0, 7});
    auto b = BoolPolynomial({0, 11});
    CHECK((a * b) == BoolPolynomial({0, 7, 11, 18}));

    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        auto rand_poly = [&]() {
            std::set<uint32_t> s;
            for (uint64_t i = rng.below(4); i-- > 0;) s.insert(static_cast<uint32_t>(rng.below(10)));
            return BoolPolynomial(s);
        };
        auto x = rand_poly(), y = rand_poly(), z = rand_poly();
        CHECK((x + y) == (y + x));
        CHECK((x * y) == (y * x));
        CHECK(((x + y) + z) == (x + (y + z)));
        CHECK(((x * y) * z) == (x * (y * z)));
        CHECK((x + x) == x);
        CHECK((x * (y + z)) == (x * y + x * z));
    }

    CHECK(BoolPolynomial::from_mask(BoolPolynomial({0, 2, 5}).mask()) == BoolPolynomial({0, 2, 5}));
}

TEST_CASE("is_ring") {
    CHECK(is_ring(make_zmod(4)));
    CHECK(!is_ring(make_boolean()));
    CHECK(!is_ring(make_minmax(4)));
}

TEST_CASE("positivity maps") {
    // Z/2: the only positivity map is 0 -> 0, 1 -> 1, and R_p is everything
    auto z2 = make_zmod(2);
    PositivityMap p{{0, 1}};
    CHECK(validate_positivity(z2, p).empty());
    auto [sub, members] = positive_subsemiring(z2, p);
    CHECK(sub.size() == 2);
    CHECK(validate_axioms(sub).empty());

    // multiplicativity violation on Z/4: p(2*2)=p(0)=0 but p(2)^2=1
    auto z4 = make_zmod(4);
    PositivityMap bad{{0, 1, 1, -1}};
    auto viol = validate_positivity(z4, bad);
    CHECK(!viol.empty());
    bool has_mul_violation = false;
    for (const auto& v : viol)
        if (v.axiom == "p(xy)=p(x)p(y)" && v.witness[0] == 2 && v.witness[1] == 2)
            has_mul_violation = true;
    CHECK(has_mul_violation);
    CHECK_THROWS_AS(positive_subsemiring(z4, bad), invalid_input_error);

    // nonzero-indicator on the field Z/3
    auto z3 = make_zmod(3);
    PositivityMap ind{{0, 1, 1}};
    CHECK(validate_positivity(z3, ind).empty());
    auto [sub3, members3] = positive_subsemiring(z3, ind);
    CHECK(sub3.size() == 3);
    CHECK(validate_axioms(sub3).empty());

    // positivity requires a ring underneath
    PositivityMap pb{{0, 1}};
    CHECK_THROWS_AS(positive_subsemiring(make_boolean(), pb), invalid_input_error);
}

TEST_CASE("catalog specs parse") {
    CHECK(catalog_get("boolean").size() == 2);
    CHECK(catalog_get("minmax:4").size() == 4);
    CHECK(catalog_get("truncnat:2:3").size() == 5);
    CHECK(catalog_get("star:boolean").size() == 3);
    CHECK(catalog_get("product:boolean*minmax:3").size() == 6);
    CHECK(catalog_get("star:star:boolean").size() == 4);
    CHECK_THROWS_AS(catalog_get("nonsense"), invalid_input_error);
    CHECK_THROWS_AS(catalog_get("minmax:1"), invalid_input_error);
}
