#include <benchmark/benchmark.h>

#include "semikit/bounded.hpp"
#include "semikit/congruence.hpp"
#include "semikit/flatness.hpp"
#include "semikit/intmatrix.hpp"
#include "semikit/order.hpp"
#include "semikit/rng.hpp"
#include "semikit/semiring.hpp"

using namespace semikit;

static void BM_congruence_closure_chain(benchmark::State& state) {
    auto s = make_minmax(static_cast<uint32_t>(state.range(0)));
    for (auto _ : state) {
        auto p = congruence_closure(s, {{0, 1}});
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_congruence_closure_chain)->Arg(8)->Arg(16)->Arg(24);

static void BM_enumerate_congruences(benchmark::State& state) {
    auto s = make_minmax(static_cast<uint32_t>(state.range(0)));
    for (auto _ : state) {
        auto lattice = enumerate_congruences(s);
        benchmark::DoNotOptimize(lattice);
    }
}
BENCHMARK(BM_enumerate_congruences)->Arg(4)->Arg(6);

static void BM_boolean_quotient_kernel(benchmark::State& state) {
    auto s = make_product(make_minmax(3), make_boolean());
    for (auto _ : state) {
        auto q = boolean_quotient_kernel(s);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_boolean_quotient_kernel);

static void BM_bounded_closure_bx(benchmark::State& state) {
    auto u = BoundedUniverse::bool_poly(static_cast<int>(state.range(0)));
    std::vector<GeneratorPair> gens;
    auto idx = [](const BoolPolynomial& p) { return static_cast<uint32_t>(p.mask()); };
    for (uint32_t i = 1; i <= 3; ++i)
        for (uint32_t j = i + 1; j <= 3; ++j)
            gens.emplace_back(idx(BoolPolynomial::xpow(i) + BoolPolynomial::one()),
                              idx(BoolPolynomial::xpow(j) + BoolPolynomial::one()));
    for (auto _ : state) {
        auto r = bounded_closure(u, gens);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_bounded_closure_bx)->Arg(6)->Arg(8);

static void BM_field_sign(benchmark::State& state) {
    auto f = NumberField::parse("x^3-2@0");
    Rng rng(1);
    std::vector<FieldElement> elems;
    for (int i = 0; i < 64; ++i) {
        std::vector<Rat> c;
        for (int k = 0; k < 3; ++k) c.emplace_back(rng.range(-50, 50), rng.range(1, 9));
        elems.push_back(f->from_coords(std::move(c)));
    }
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(elems[i % elems.size()].sign());
        ++i;
    }
}
BENCHMARK(BM_field_sign);

static void BM_hnf_ideal(benchmark::State& state) {
    auto order = RealOrder::parse("x^3-2@0");
    Rng rng(2);
    std::vector<std::vector<OrderElement>> gens;
    for (int i = 0; i < 32; ++i) {
        std::vector<OrderElement> g;
        for (int k = 0; k < 2; ++k) {
            std::vector<Int> c;
            for (int d = 0; d < 3; ++d) c.emplace_back(rng.range(-9, 9));
            g.push_back(order->element(std::move(c)));
        }
        gens.push_back(std::move(g));
    }
    size_t i = 0;
    for (auto _ : state) {
        const auto& g = gens[i % gens.size()];
        bool zero = true;
        for (const auto& e : g)
            if (!(e == order->zero())) zero = false;
        if (!zero) {
            auto ideal = ideal_from_generators(*order, g);
            benchmark::DoNotOptimize(ideal);
        }
        ++i;
    }
}
BENCHMARK(BM_hnf_ideal);

static void BM_cover_n3(benchmark::State& state) {
    auto f = NumberField::parse("x^3-2@0");
    GammaForm g(f, {f->one(), f->theta(), f->theta() * f->theta()});
    std::vector<LatticeVector> targets = {{Int(-1), Int(1), Int(1)}, {Int(-1), Int(-1), Int(2)}};
    for (auto _ : state) {
        auto res = cover(g, standard_basis(3), targets);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_cover_n3);

static void BM_verify_chain_n3(benchmark::State& state) {
    auto f = NumberField::parse("x^3-2@0");
    GammaForm g(f, {f->one(), f->theta(), f->theta() * f->theta()});
    std::vector<LatticeVector> targets = {{Int(-1), Int(1), Int(1)}, {Int(-1), Int(-1), Int(2)}};
    auto res = cover(g, standard_basis(3), targets);
    for (auto _ : state) {
        auto v = verify_chain(g, res.chain);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_verify_chain_n3);

BENCHMARK_MAIN();
