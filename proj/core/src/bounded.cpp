#include "semikit/bounded.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "semikit/errors.hpp"

namespace semikit {

BoundedUniverse BoundedUniverse::bool_poly(int degree_bound) {
    if (degree_bound < 0 || degree_bound > 20)
        throw invalid_input_error("bool_poly degree bound must be in [0, 20]");
    const uint32_t size = 1u << (degree_bound + 1);
    const uint32_t limit = size - 1;  // all supports within degree bound
    auto add = [](uint32_t a, uint32_t b) -> std::optional<uint32_t> { return a | b; };
    auto mul = [limit, degree_bound](uint32_t a, uint32_t b) -> std::optional<uint32_t> {
        if (a == 0 || b == 0) return 0u;
        uint64_t acc = 0;
        for (int i = 0; i <= degree_bound; ++i)
            if (a & (1u << i)) acc |= static_cast<uint64_t>(b) << i;
        if (acc > limit) return std::nullopt;
        return static_cast<uint32_t>(acc);
    };
    auto label = [](uint32_t e) { return BoolPolynomial::from_mask(e).str(); };
    return BoundedUniverse("B[X], degree <= " + std::to_string(degree_bound), size, add, mul,
                           label);
}

BoundedUniverse BoundedUniverse::naturals(uint32_t max_value) {
    const uint32_t size = max_value + 1;
    auto add = [max_value](uint32_t a, uint32_t b) -> std::optional<uint32_t> {
        uint64_t r = static_cast<uint64_t>(a) + b;
        if (r > max_value) return std::nullopt;
        return static_cast<uint32_t>(r);
    };
    auto mul = [max_value](uint32_t a, uint32_t b) -> std::optional<uint32_t> {
        uint64_t r = static_cast<uint64_t>(a) * b;
        if (r > max_value) return std::nullopt;
        return static_cast<uint32_t>(r);
    };
    auto label = [](uint32_t e) { return std::to_string(e); };
    return BoundedUniverse("N, <= " + std::to_string(max_value), size, add, mul, label);
}

namespace {

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(uint32_t n) : parent(n) {
        for (uint32_t i = 0; i < n; ++i) parent[i] = i;
    }
    uint32_t find(uint32_t x) {
        uint32_t root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            uint32_t next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }
    bool merge(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

}  // namespace

BoundedClosureResult bounded_closure(const BoundedUniverse& u,
                                     const std::vector<GeneratorPair>& gens,
                                     const BoundedClosureOptions& opts) {
    const uint32_t n = u.size();
    UnionFind uf(n);
    BoundedClosureResult result;
    /* Tiered nested-box engine. Elements carry a tier (0 = innermost box);
     * the closure saturates within the active tier bound before widening:
     * candidate pairs wait until their members' tiers are active, and every
     * merged pair is fanned out over tier-t elements exactly once per tier,
     * shell by shell. Consequence discovery inside small boxes therefore
     * costs fanout proportional to the small box, not the whole universe.
     * Every consequence is still applied before the engine reports a
     * fixpoint, so the final partition equals the plain one-queue fixpoint;
     * only the (still deterministic) discovery order differs. */
    std::vector<int> tier;
    tier.reserve(n);
    int max_tier = 0;
    for (uint32_t e = 0; e < n; ++e) {
        int t = opts.tier_of ? opts.tier_of(e) : 0;
        if (t < 0) t = 0;
        tier.push_back(t);
        max_tier = std::max(max_tier, t);
    }
    std::vector<std::vector<uint32_t>> shell(static_cast<size_t>(max_tier) + 1);
    for (uint32_t e = 0; e < n; ++e) shell[static_cast<size_t>(tier[e])].push_back(e);

    std::vector<std::deque<GeneratorPair>> queue(static_cast<size_t>(max_tier) + 1);
    std::vector<GeneratorPair> merged_log;
    /* fanned[t] = number of merged_log entries already fanned over shell t */
    std::vector<size_t> fanned(static_cast<size_t>(max_tier) + 1, 0);

    auto enqueue = [&](uint32_t a, uint32_t b) {
        queue[static_cast<size_t>(std::max(tier[a], tier[b]))].emplace_back(a, b);
    };
    for (const auto& [a, b] : gens) {
        if (a >= n || b >= n) throw invalid_input_error("generator outside the bounded universe");
        enqueue(a, b);
    }
    auto queries_done = [&]() {
        if (opts.stop_when_related.empty()) return false;
        for (const auto& [a, b] : opts.stop_when_related)
            if (uf.find(a) != uf.find(b)) return false;
        return true;
    };
    /* The step budget counts operation applications (the actual work): every
     * fanned-out r costs one unit. */
    auto fan_out = [&](uint32_t a, uint32_t b, const std::vector<uint32_t>& range) {
        result.steps += range.size() ? range.size() : 1;
        for (uint32_t r : range) {
            auto ar = u.add(a, r), br = u.add(b, r);
            if (ar && br && *ar != *br) enqueue(*ar, *br);
            auto am = u.mul(a, r), bm = u.mul(b, r);
            if (am && bm && *am != *bm) enqueue(*am, *bm);
            auto ma = u.mul(r, a), mb = u.mul(r, b);
            if (ma && mb && *ma != *mb) enqueue(*ma, *mb);
        }
    };

    int active = 0;
    bool done = false;
    while (!done) {
        if (result.steps >= opts.max_steps) {
            result.budget_exhausted = true;
            break;
        }
        bool worked = false;
        for (int t = 0; t <= active && !worked; ++t) {
            if (!queue[static_cast<size_t>(t)].empty()) {
                auto [a, b] = queue[static_cast<size_t>(t)].front();
                queue[static_cast<size_t>(t)].pop_front();
                ++result.steps;
                worked = true;
                if (uf.merge(a, b)) {
                    merged_log.emplace_back(a, b);
                    if (queries_done()) done = true;
                }
            }
        }
        if (worked || done) continue;
        for (int t = 0; t <= active && !worked; ++t) {
            if (fanned[static_cast<size_t>(t)] < merged_log.size()) {
                const auto& [a, b] = merged_log[fanned[static_cast<size_t>(t)]++];
                fan_out(a, b, shell[static_cast<size_t>(t)]);
                worked = true;
            }
        }
        if (worked) continue;
        if (active < max_tier)
            ++active;
        else
            done = true;  // true fixpoint
    }
    bool complete = true;
    for (int t = 0; t <= max_tier; ++t) {
        if (!queue[static_cast<size_t>(t)].empty()) complete = false;
        if (fanned[static_cast<size_t>(t)] < merged_log.size()) complete = false;
    }
    result.reached_fixpoint = complete;
    std::vector<uint32_t> ids(n);
    for (uint32_t i = 0; i < n; ++i) ids[i] = uf.find(i);
    result.partition = CongruencePartition::from_class_ids(std::move(ids));
    if (!opts.stop_when_related.empty()) {
        result.queries_related = true;
        for (const auto& [a, b] : opts.stop_when_related)
            if (!result.partition.same(a, b)) result.queries_related = false;
    }
    return result;
}

NatCongruenceClass classify_nat_congruence(
    const std::vector<std::pair<uint64_t, uint64_t>>& gens) {
    NatCongruenceClass cls;
    uint64_t n = UINT64_MAX, k = 0, max_member = 0, max_diff = 0;
    for (const auto& [a, b] : gens) {
        if (a == b) continue;
        cls.trivial = false;
        n = std::min(n, std::min(a, b));
        uint64_t d = a > b ? a - b : b - a;
        k = std::gcd(k, d);
        max_member = std::max(max_member, std::max(a, b));
        max_diff = std::max(max_diff, d);
    }
    if (cls.trivial) return cls;
    cls.n = n;
    cls.k = k;

    /* Cross-check against a bounded closure. The bound is 4(n+k) padded by
     * headroom above the largest generator: derivations of x ~ x+k may climb
     * past the generators before descending, so 4(n+k) alone can starve the
     * oracle (e.g. gens {(5,8),(2,9)}). Soundness is checked on the whole
     * slice, completeness on the half-size window. */
    uint64_t bound = std::max<uint64_t>({4 * (n + k), 2 * max_member + 2 * max_diff, 20});
    if (bound > 4000)
        throw resource_error("classify_nat_congruence: generators too large for the oracle");
    BoundedUniverse u = BoundedUniverse::naturals(static_cast<uint32_t>(bound));
    std::vector<GeneratorPair> pairs;
    for (const auto& [a, b] : gens)
        pairs.emplace_back(static_cast<uint32_t>(a), static_cast<uint32_t>(b));
    BoundedClosureResult closure = bounded_closure(u, pairs);
    if (!closure.reached_fixpoint)
        throw resource_error("classify_nat_congruence: oracle budget exhausted");

    auto predicted = [&](uint64_t x, uint64_t y) {
        return x == y || (x >= n && y >= n && (x > y ? x - y : y - x) % k == 0);
    };
    for (uint32_t x = 0; x <= bound; ++x)
        for (uint32_t y = x + 1; y <= bound; ++y)
            if (closure.partition.same(x, y) && !predicted(x, y))
                throw consistency_error("classify_nat_congruence: closure relates (" +
                                        std::to_string(x) + "," + std::to_string(y) +
                                        ") outside the predicted congruence");
    for (uint64_t x = n; x + k <= bound / 2; ++x)
        if (!closure.partition.same(static_cast<uint32_t>(x), static_cast<uint32_t>(x + k)))
            throw consistency_error("classify_nat_congruence: predicted pair (" +
                                    std::to_string(x) + "," + std::to_string(x + k) +
                                    ") not reached by the closure oracle");
    return cls;
}

BxReport check_bx_nonrelation(uint32_t max_gen, int degree_bound, uint64_t max_steps,
                              std::optional<std::pair<BoolPolynomial, BoolPolynomial>> query,
                              std::vector<std::pair<BoolPolynomial, BoolPolynomial>> extra_gens) {
    if (degree_bound <= static_cast<int>(max_gen) + 2)
        throw invalid_input_error("degree bound must exceed max_gen + 2");
    BxReport report;
    report.max_gen = max_gen;
    report.degree_bound = degree_bound;
    BoundedUniverse u = BoundedUniverse::bool_poly(degree_bound);

    auto poly_index = [&](const BoolPolynomial& p) -> uint32_t {
        if (p.degree() > degree_bound)
            throw invalid_input_error("polynomial exceeds the degree bound");
        return static_cast<uint32_t>(p.mask());
    };

    std::vector<GeneratorPair> gens;
    for (uint32_t i = 1; i <= max_gen; ++i)
        for (uint32_t j = i + 1; j <= max_gen; ++j)
            gens.emplace_back(poly_index(BoolPolynomial::xpow(i) + BoolPolynomial::one()),
                              poly_index(BoolPolynomial::xpow(j) + BoolPolynomial::one()));
    for (const auto& [l, r] : extra_gens) gens.emplace_back(poly_index(l), poly_index(r));
    report.generator_count = gens.size();

    if (query) {
        report.query_lhs = query->first;
        report.query_rhs = query->second;
    } else {
        report.query_lhs = BoolPolynomial::xpow(max_gen + 1) + BoolPolynomial::one();
        report.query_rhs = BoolPolynomial::xpow(max_gen + 2) + BoolPolynomial::one();
    }

    BoundedClosureOptions opts;
    opts.max_steps = max_steps;
    BoundedClosureResult closure = bounded_closure(u, gens, opts);
    if (!closure.reached_fixpoint)
        throw resource_error("check_bx_nonrelation: closure budget exhausted before fixpoint; "
                             "a negative verdict would be meaningless");
    report.related =
        closure.partition.same(poly_index(report.query_lhs), poly_index(report.query_rhs));
    report.reached_fixpoint = closure.reached_fixpoint;
    report.steps = closure.steps;
    report.caveat =
        "bounded closure under-approximates the congruence: 'related' is certain, "
        "'not related' only means not derivable within degree <= " +
        std::to_string(degree_bound);
    return report;
}

}  // namespace semikit
