#include "semikit/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "semikit/bounded.hpp"
#include "semikit/carriers.hpp"
#include "semikit/congruence.hpp"
#include "semikit/errors.hpp"
#include "semikit/flatness.hpp"
#include "semikit/order.hpp"
#include "semikit/power_chain.hpp"
#include "semikit/rng.hpp"
#include "semikit/semiring.hpp"

namespace semikit {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void fail(const std::string& why) {
        ok = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << why;
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

/* A1: the minmax chain is c-principal exactly for b <= 3, with the
 * two-block partition witnessing failure at b = 4. */
void criterion_minmax_principality(Outcome& out, uint64_t) {
    for (uint32_t b : {2u, 3u}) {
        if (!check_c_principal(make_minmax(b)).c_principal)
            out.fail("minmax:" + std::to_string(b) + " reported non-principal");
    }
    for (uint32_t b : {4u, 5u}) {
        auto rep = check_c_principal(make_minmax(b));
        if (rep.c_principal) out.fail("minmax:" + std::to_string(b) + " reported principal");
        if (b == 4) {
            auto expected = CongruencePartition::from_classes(4, {{0, 1}, {2, 3}});
            if (!rep.witness || !(rep.witness->partition == expected))
                out.fail("minmax:4 witness is not {0,1}{2,3}");
        }
    }
    out.note("b=2,3 principal; b=4,5 not, witness {0,1}{2,3}");
}

std::vector<CongruencePartition> interval_partitions(uint32_t b) {
    std::vector<CongruencePartition> out;
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

/* A2: congruence counts of chains are 2^(b-1), cross-checked against the
 * brute-force interval-partition oracle. */
void criterion_lattice_counts(Outcome& out, uint64_t) {
    for (uint32_t b = 2; b <= 5; ++b) {
        auto m = make_minmax(b);
        auto lattice = enumerate_congruences(m);
        if (lattice.congruences.size() != (1u << (b - 1))) {
            out.fail("minmax:" + std::to_string(b) + " has " +
                     std::to_string(lattice.congruences.size()) + " congruences, expected " +
                     std::to_string(1u << (b - 1)));
            continue;
        }
        std::set<std::vector<uint32_t>> found, oracle;
        for (const auto& info : lattice.congruences) found.insert(info.partition.class_ids());
        for (const auto& p : interval_partitions(b)) {
            if (!is_congruence(m, p)) out.fail("oracle partition is not a congruence");
            oracle.insert(p.class_ids());
        }
        if (found != oracle) out.fail("lattice differs from the interval-partition oracle");
    }
    out.note("counts 2,4,8,16 match the oracle");
}

/* Seeded recipe sampler for validated semirings of bounded size. */
FiniteSemiring sample_semiring(Rng& rng, uint32_t max_size, int depth = 0) {
    while (true) {
        switch (rng.below(depth >= 2 ? 4 : 6)) {
            case 0: {
                uint32_t b = 2 + static_cast<uint32_t>(rng.below(max_size - 1));
                if (b <= max_size) return make_minmax(b);
                break;
            }
            case 1: {
                uint32_t m = 2 + static_cast<uint32_t>(rng.below(max_size - 1));
                if (m <= max_size) return make_zmod(m);
                break;
            }
            case 2: {
                uint32_t n = static_cast<uint32_t>(rng.below(max_size));
                uint32_t k = 1 + static_cast<uint32_t>(rng.below(max_size));
                if (n + k >= 2 && n + k <= max_size) return make_truncated_nat(n, k);
                break;
            }
            case 3: {
                // quotient of a sample by the closure of random pairs
                FiniteSemiring s = sample_semiring(rng, max_size, depth + 1);
                std::vector<GeneratorPair> gens;
                for (uint64_t i = rng.below(3); i-- > 0;)
                    gens.emplace_back(static_cast<uint32_t>(rng.below(s.size())),
                                      static_cast<uint32_t>(rng.below(s.size())));
                return make_quotient(s, congruence_closure(s, gens));
            }
            case 4: {
                if (max_size < 3) break;
                FiniteSemiring s = sample_semiring(rng, max_size - 1, depth + 1);
                if (s.size() + 1 <= max_size) return make_star(s);
                break;
            }
            default: {
                if (max_size < 4) break;
                FiniteSemiring a = sample_semiring(rng, max_size / 2, depth + 1);
                FiniteSemiring b = sample_semiring(rng, max_size / a.size(), depth + 1);
                if (a.size() * b.size() <= max_size) return make_product(a, b);
                break;
            }
        }
    }
}

/* A3: is_ring <=> no Boolean quotient, over the catalog and 200 sampled
 * validated semirings of size <= 6. */
void criterion_borger_grinberg(Outcome& out, uint64_t seed) {
    for (const auto& s : default_catalog()) {
        if (!bg_check(s).consistent) out.fail("catalog entry " + s.name() + " inconsistent");
    }
    Rng rng(seed ^ 0xb9ULL);
    int ring_count = 0;
    for (int trial = 0; trial < 200; ++trial) {
        FiniteSemiring s = sample_semiring(rng, 6);
        if (!is_valid(s)) {
            out.fail("sampler produced an invalid semiring");
            continue;
        }
        auto rep = bg_check(s);
        if (!rep.consistent) out.fail("sampled semiring #" + std::to_string(trial) + " inconsistent");
        if (rep.ring) ++ring_count;
    }
    out.note("catalog + 200 samples consistent (" + std::to_string(ring_count) + " rings)");
}

/* A4: B[X] desk-scale check at N=3, D=10. */
void criterion_bx(Outcome& out, uint64_t) {
    auto rep = check_bx_nonrelation(3, 10);
    if (rep.related) out.fail("closure related X^4+1 ~ X^5+1 from generators up to 3");
    if (!rep.reached_fixpoint) out.fail("closure did not reach a fixpoint");

    BoolPolynomial q1 = BoolPolynomial::xpow(4) + BoolPolynomial::one();
    BoolPolynomial q2 = BoolPolynomial::xpow(5) + BoolPolynomial::one();
    auto rep2 = check_bx_nonrelation(3, 10, 50'000'000, std::nullopt, {{q1, q2}});
    if (!rep2.related) out.fail("closure missed the explicitly added generator pair");
    out.note("not related without the pair, related with it (" + std::to_string(rep.steps) +
             " steps)");
}

OrderElement random_cone_element(const RealOrder& order, Rng& rng, int64_t lo, int64_t hi) {
    std::vector<Int> c;
    for (int i = 0; i < order.degree(); ++i) c.emplace_back(rng.range(lo, hi));
    return order.element(std::move(c));
}

/* A5: classification vs bounded closure, 100 random generator sets per
 * order. Soundness is exact on sampled queries; completeness means every
 * canonical generator is reached within budget. Closure fanout is 3N per
 * merge, so each trial starts on a small slice and escalates to a larger
 * one only when a canonical pair is still unresolved. */
void criterion_classification(Outcome& out, uint64_t seed) {
    struct Setup {
        const char* spec;
        int64_t bound;
    };
    for (const Setup& setup : {Setup{"x^2-2@1", 80}, Setup{"x^3-2@0", 16}}) {
        auto order = RealOrder::parse(setup.spec);
        ConeUniverse cone = order_cone_universe(order, setup.bound);
        /* Geometric nested boxes: derivations of the canonical pairs live in
         * small coordinates but occasionally route through large
         * intermediates, and the tiered engine keeps the fanout bill
         * proportional to the box that actually gets used. */
        std::vector<int64_t> thresholds;
        for (int64_t t = 5; t < setup.bound; t *= 2) thresholds.push_back(t);
        thresholds.push_back(setup.bound);
        auto tier_of = [&cone, thresholds](uint32_t e) {
            auto el = cone.element_of(e);
            Int mx(0);
            for (const auto& c : el.c) mx = std::max(mx, abs_int(c));
            for (size_t t = 0; t < thresholds.size(); ++t)
                if (mx <= thresholds[t]) return static_cast<int>(t);
            return static_cast<int>(thresholds.size());
        };

        Rng rng(seed ^ 0xc1a55ULL);
        int nontrivial = 0, derived_witnesses = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<std::pair<OrderElement, OrderElement>> gens;
            for (uint64_t i = 1 + rng.below(4); i-- > 0;)
                gens.emplace_back(random_cone_element(*order, rng, 0, 5),
                                  random_cone_element(*order, rng, 0, 5));
            ClassifyOptions opts;
            opts.cross_check = false;  // this criterion is the cross-check
            OrderCongruenceClass cls = classify_congruence(*order, gens, opts);

            std::vector<GeneratorPair> pairs, queries;
            for (const auto& [a, b] : gens) {
                auto ia = cone.index_of(a), ib = cone.index_of(b);
                if (!ia || !ib) { out.fail("generator escaped the cone universe"); continue; }
                pairs.emplace_back(*ia, *ib);
            }
            if (!cls.trivial) {
                ++nontrivial;
                auto K = k_ideal_of(*order, *cls.ideal);
                for (const auto& [l, r] : canonical_generators(*order, cls, K.k_generators)) {
                    auto il = cone.index_of(l), ir = cone.index_of(r);
                    if (il && ir) queries.emplace_back(*il, *ir);
                }
            }

            BoundedClosureOptions copts;
            copts.max_steps = 40'000'000;
            copts.stop_when_related = queries;
            copts.tier_of = tier_of;
            BoundedClosureResult closure = bounded_closure(cone.universe, pairs, copts);
            if (!queries.empty() && !closure.queries_related) {
                /* The blind closure missed a canonical pair within budget
                 * (large-norm classes route through coordinates no desk-scale
                 * box holds). Fall back to the stronger witness: an exact,
                 * machine-verified derivation of every canonical pair in S
                 * itself. */
                bool witnessed = false;
                try {
                    auto K = k_ideal_of(*order, *cls.ideal);
                    auto derivation =
                        derive_canonical_membership(*order, gens, cls, K.k_generators);
                    auto verdict = verify_derivation(*order, derivation);
                    witnessed = verdict.ok;
                    if (witnessed) {
                        auto canon = canonical_generators(*order, cls, K.k_generators);
                        if (derivation.conclusions.size() != canon.size()) witnessed = false;
                        for (size_t c = 0; witnessed && c < canon.size(); ++c) {
                            const auto& st =
                                derivation.steps[static_cast<size_t>(derivation.conclusions[c])];
                            if (!(st.lhs == canon[c].first) || !(st.rhs == canon[c].second))
                                witnessed = false;
                        }
                    }
                } catch (const std::exception&) {
                    witnessed = false;
                }
                if (!witnessed) {
                    out.fail(std::string(setup.spec) + " trial " + std::to_string(trial) +
                             ": canonical generator neither reached by closure nor witnessed "
                             "by a verified derivation");
                    continue;
                }
                ++derived_witnesses;
            }
            /* soundness on sampled query pairs */
            for (int q = 0; q < 60; ++q) {
                uint32_t i = static_cast<uint32_t>(rng.below(cone.universe.size()));
                uint32_t j = static_cast<uint32_t>(rng.below(cone.universe.size()));
                if (!closure.partition.same(i, j)) continue;
                if (!is_related(*order, cls, cone.element_of(i), cone.element_of(j)))
                    out.fail(std::string(setup.spec) + " trial " + std::to_string(trial) +
                             ": closure relates a pair the classification rejects");
            }
            if (cls.trivial && closure.reached_fixpoint &&
                closure.partition.class_count() != cone.universe.size())
                out.fail("trivial classification but the closure merged something");
        }
        out.note(std::string(setup.spec) + ": 100 sets, " + std::to_string(nontrivial) +
                 " nontrivial, " + std::to_string(derived_witnesses) + " via derivation witness");
    }
}

/* A6: quotient cardinalities |det| and |det|+1, all tables valid, and the
 * (sqrt2, j=1) quotient has exactly three elements. */
void criterion_quotients(Outcome& out, uint64_t) {
    auto order = RealOrder::parse("x^2-2@1");
    struct Case {
        const char* gen;
        Int expected_det;
    };
    for (const Case& c : {Case{"w", Int(2)}, Case{"2", Int(4)}, Case{"1+w", Int(1)},
                          Case{"3", Int(9)}}) {
        auto I = ideal_from_generators(*order, {order->parse_element(c.gen)});
        if (abs_int(I.determinant) != c.expected_det)
            out.fail(std::string("ideal (") + c.gen + ") determinant " + I.determinant.str());
        for (int j : {0, 1}) {
            OrderCongruenceClass cls;
            cls.trivial = false;
            cls.ideal = I;
            cls.j = j;
            FiniteSemiring q = quotient_semiring(*order, cls);
            uint32_t expected = static_cast<uint32_t>(abs_int(I.determinant)) + (j == 1 ? 1 : 0);
            if (q.size() != expected)
                out.fail(std::string("(") + c.gen + "), j=" + std::to_string(j) + ": size " +
                         std::to_string(q.size()) + " != " + std::to_string(expected));
            if (!is_valid(q))
                out.fail(std::string("(") + c.gen + "), j=" + std::to_string(j) +
                         ": axioms violated");
        }
    }
    out.note("dets 2,4,1,9; sizes |det| and |det|+1; (w,j=1) has 3 elements");
}

/* A7: the integer relation construction, exact on the book example and on
 * random positive elements of both orders. */
void criterion_integer_relation(Outcome& out, uint64_t seed) {
    auto sqrt2 = RealOrder::parse("x^2-2@1");
    auto r = derive_integer_relation(*sqrt2, sqrt2->theta(), sqrt2->theta());
    if (!(r.f == IntPolynomial::parse("x")) || !r.g.is_zero() || r.l != 2 || r.m != 3 || r.n != 5)
        out.fail("sqrt2 relation is not (f=X, g=0, l=2, m=3, n=5)");

    Rng rng(seed ^ 0x17ULL);
    int checked = 0;
    for (const char* spec : {"x^2-2@1", "x^3-2@0"}) {
        auto order = RealOrder::parse(spec);
        while (checked < (spec[2] == '2' ? 10 : 20)) {
            auto a = random_cone_element(*order, rng, -3, 3);
            auto u = random_cone_element(*order, rng, -3, 3);
            if (order->sign(a) <= 0 || order->sign(u) <= 0) continue;
            auto rel = derive_integer_relation(*order, a, u);
            auto lhs = order->mul(u, order->eval_poly(rel.f, u));
            auto rhs = order->add(order->mul(u, order->eval_poly(rel.g, u)),
                                  order->element_from_int(rel.l));
            if (!(lhs == rhs)) out.fail("relation fails exactly in " + std::string(spec));
            if (rel.l <= 0 || rel.n - rel.m != rel.l) out.fail("bad l/m/n bookkeeping");
            ++checked;
        }
    }
    out.note("book example exact; " + std::to_string(checked) + " random relations verified");
}

/* A8: power-relation transcripts machine-verify over catalog semirings and
 * bounded order windows. */
void criterion_power_chains(Outcome& out, uint64_t seed) {
    Rng rng(seed ^ 0x8aULL);
    auto catalog = default_catalog();
    for (int trial = 0; trial < 20; ++trial) {
        const auto& s = catalog[rng.below(catalog.size())];
        SemiringCarrier sc{&s};
        uint32_t x = static_cast<uint32_t>(rng.below(s.size()));
        uint32_t y = static_cast<uint32_t>(rng.below(s.size()));
        int n = 1 + static_cast<int>(rng.below(5));
        auto chain = derive_power_chain(sc, x, y, n);
        if (!verify_power_chain(sc, chain).ok)
            out.fail("semiring transcript failed on " + s.name());
    }
    for (const char* spec : {"x^2-2@1", "x^3-2@0"}) {
        auto order = RealOrder::parse(spec);
        OrderCarrier oc{order.get()};
        for (int trial = 0; trial < 10; ++trial) {
            auto x = random_cone_element(*order, rng, 0, 4);
            auto y = random_cone_element(*order, rng, 0, 4);
            int n = 1 + static_cast<int>(rng.below(5));
            auto chain = derive_power_chain(oc, x, y, n);
            if (!verify_power_chain(oc, chain).ok)
                out.fail("order transcript failed in " + std::string(spec));
            if (chain.steps.size() != static_cast<size_t>(3 * (n - 1)))
                out.fail("transcript length is not 3(n-1)");
        }
    }
    out.note("40 transcripts verified, lengths 3(n-1)");
}

/* A9: randomized flatness witnesses, fully audited. */
void criterion_flatness(Outcome& out, uint64_t seed) {
    for (int which = 0; which < 2; ++which) {
        auto field = which == 0 ? NumberField::parse("x^2-2@1") : NumberField::parse("x^3-2@0");
        std::vector<FieldElement> coords{field->one(), field->theta()};
        if (which == 1) coords.push_back(field->theta() * field->theta());
        GammaForm g(field, coords);
        Rng rng(seed ^ (which == 0 ? 0xf2ULL : 0xf3ULL));
        size_t total_steps = 0;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<LatticeVector> targets;
            uint64_t count = 1 + rng.below(5);
            while (targets.size() < count) {
                LatticeVector v;
                for (int i = 0; i < g.n(); ++i) v.emplace_back(rng.range(-5, 5));
                bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
                if (zero || g.value(v).sign() > 0) targets.push_back(std::move(v));
            }
            CoverResult res;
            try {
                res = cover(g, standard_basis(g.n()), targets);
            } catch (const std::exception& err) {
                out.fail("cover failed (n=" + std::to_string(g.n()) + ", trial " +
                         std::to_string(trial) + "): " + err.what());
                continue;
            }
            total_steps += res.chain.steps.size();
            auto chain_verdict = verify_chain(g, res.chain);
            if (!chain_verdict.ok)
                out.fail("chain audit failed (trial " + std::to_string(trial) +
                         "): " + chain_verdict.diagnostics);
            for (const auto& cert : res.certificates) {
                auto mem = verify_membership(g, res.chain.result, cert);
                if (!mem.ok)
                    out.fail("certificate audit failed (trial " + std::to_string(trial) +
                             "): " + mem.diagnostics);
            }
        }
        out.note("n=" + std::to_string(g.n()) + ": 50 covers, " + std::to_string(total_steps) +
                 " steps, all audits passed");
    }
}

/* A10: the shrink trajectory reproduces the Pell convergent pairs at
 * delta = 1/5; convergents computed independently here. */
void criterion_pell(Outcome& out, uint64_t) {
    auto field = NumberField::parse("x^2-2@1");
    GammaForm g(field, {field->one(), field->theta()});
    LatticeVector e1{Int(1), Int(0)}, e2{Int(0), Int(1)};
    auto res = shrink_pair(g, e1, e2, field->from_rational(Rat(1, 5)));

    // continued fraction of sqrt2 = [1; 2, 2, ...]
    long p0 = 1, q0 = 1, p1 = 3, q1 = 2;
    if (!(res.x1 == LatticeVector{Int(p1), Int(-q1)}))
        out.fail("first shrink vector is not (3,-2)");
    long p2 = 2 * p1 + p0, q2 = 2 * q1 + q0;  // 7/5
    if (!(res.x2 == LatticeVector{Int(-p2), Int(q2)}))
        out.fail("second shrink vector is not (-7,5)");
    out.note("trajectory hits (3,-2) then (-7,5)");
}

/* A11: the N classifier agrees with a bound-60 closure on 100 random
 * generator sets with members <= 12. */
void criterion_nat_classifier(Outcome& out, uint64_t seed) {
    Rng rng(seed ^ 0x4eULL);
    auto u = BoundedUniverse::naturals(60);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::pair<uint64_t, uint64_t>> gens;
        for (uint64_t i = 1 + rng.below(3); i-- > 0;)
            gens.emplace_back(rng.below(13), rng.below(13));
        NatCongruenceClass cls;
        try {
            cls = classify_nat_congruence(gens);  // has its own internal oracle
        } catch (const consistency_error& err) {
            out.fail("internal oracle mismatch on trial " + std::to_string(trial) + ": " +
                     err.what());
            continue;
        }
        std::vector<GeneratorPair> pairs;
        for (const auto& [a, b] : gens)
            pairs.emplace_back(static_cast<uint32_t>(a), static_cast<uint32_t>(b));
        auto closure = bounded_closure(u, pairs);
        if (!closure.reached_fixpoint) {
            out.fail("bound-60 closure did not reach a fixpoint");
            continue;
        }
        auto predicted = [&](uint64_t x, uint64_t y) {
            if (cls.trivial) return x == y;
            return x == y || (x >= cls.n && y >= cls.n && (x > y ? x - y : y - x) % cls.k == 0);
        };
        for (uint32_t x = 0; x <= 60; ++x)
            for (uint32_t y = x + 1; y <= 60; ++y)
                if (closure.partition.same(x, y) && !predicted(x, y))
                    out.fail("closure relates (" + std::to_string(x) + "," + std::to_string(y) +
                             ") outside the classified congruence");
        if (!cls.trivial)
            for (uint64_t x = cls.n; x + cls.k <= 30; ++x)
                if (!closure.partition.same(static_cast<uint32_t>(x),
                                            static_cast<uint32_t>(x + cls.k)))
                    out.fail("classified pair (" + std::to_string(x) + "," +
                             std::to_string(x + cls.k) + ") missing from the closure");
    }
    out.note("100 generator sets, zero mismatches");
}

struct CriterionSpec {
    const char* id;
    const char* title;
    const char* suite;
    double budget_seconds;
    void (*run)(Outcome&, uint64_t);
};

const CriterionSpec kCriteria[] = {
    {"A1", "minmax chains c-principal iff b <= 3", "lattice", 5.0, criterion_minmax_principality},
    {"A2", "chain congruence lattices have 2^(b-1) members", "lattice", 10.0,
     criterion_lattice_counts},
    {"A3", "is_ring <=> no Boolean quotient (catalog + 200 samples)", "bg", 30.0,
     criterion_borger_grinberg},
    {"A4", "B[X] bounded closure separates X^4+1 from X^5+1", "bx", 20.0, criterion_bx},
    {"A5", "positive-model classification agrees with bounded closure", "posmodel", 60.0,
     criterion_classification},
    {"A6", "quotient cardinalities are |det| and |det|+1", "posmodel", 5.0, criterion_quotients},
    {"A7", "integer relation u f(u) = u g(u) + l", "posmodel", 5.0, criterion_integer_relation},
    {"A8", "power-relation transcripts machine-verify", "posmodel", 10.0, criterion_power_chains},
    {"A9", "random covers produce verified chains and certificates", "flatness", 60.0,
     criterion_flatness},
    {"A10", "shrink trajectory reproduces the Pell convergents", "flatness", 1.0, criterion_pell},
    {"A11", "N classifier agrees with the bound-60 closure", "bx", 10.0,
     criterion_nat_classifier},
};

}  // namespace

std::vector<std::string> acceptance_suites() {
    return {"lattice", "bg", "bx", "posmodel", "flatness", "all"};
}

AcceptanceReport run_acceptance(const std::string& suite, std::uint64_t seed) {
    bool known = suite == "all";
    for (const auto& s : acceptance_suites())
        if (s == suite) known = true;
    if (!known) throw invalid_input_error("unknown acceptance suite '" + suite + "'");

    AcceptanceReport report;
    report.suite = suite;
    report.seed = seed;
    for (const auto& spec : kCriteria) {
        if (suite != "all" && suite != spec.suite) continue;
        CriterionResult r;
        r.id = spec.id;
        r.title = spec.title;
        r.budget_seconds = spec.budget_seconds;
        Outcome out;
        auto t0 = Clock::now();
        try {
            spec.run(out, seed);
        } catch (const std::exception& err) {
            out.fail(std::string("exception: ") + err.what());
        }
        auto t1 = Clock::now();
        r.seconds = std::chrono::duration<double>(t1 - t0).count();
        r.functional_ok = out.ok;
        r.ok = out.ok && r.seconds < spec.budget_seconds;
        r.detail = out.detail.str();
        if (out.ok && r.seconds >= spec.budget_seconds) r.detail += "; over time budget";
        report.criteria.push_back(std::move(r));
    }
    return report;
}

}  // namespace semikit
