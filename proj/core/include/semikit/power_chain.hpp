#pragma once

#include <string>
#include <vector>

#include "semikit/errors.hpp"

namespace semikit {

/* Derivation transcripts for "x ~ x+y implies x^n ~ x^n + y^n", generic over
 * any commutative carrier with add/mul/eq. Each elementary step applies an
 * established pair (a, b) as (m*a + c, m*b + c), optionally reversed; three
 * steps derive level k+1 from level k, matching the textbook induction
 *   x^{k+1} ~ x(x^k+y^k) ~ x^{k+1} + y^k(x+y) ~ ... ~ x^{k+1} + y^{k+1}.
 *
 * A carrier provides:
 *   using Value = ...;
 *   Value add(const Value&, const Value&) const;
 *   Value mul(const Value&, const Value&) const;
 *   bool eq(const Value&, const Value&) const;
 */

template <typename Carrier>
struct PowerChainStep {
    int premise_level;                 // which established pair is applied
    typename Carrier::Value mult;      // left multiplier m
    typename Carrier::Value addend;    // additive shift c
    bool reversed;                     // chain traverses the rule instance backwards
    typename Carrier::Value lhs, rhs;  // claimed segment endpoints, lhs ~ rhs
};

template <typename Carrier>
struct PowerChain {
    typename Carrier::Value x, y;
    int levels = 1;  // the chain establishes x^n ~ x^n + y^n for n <= levels
    std::vector<PowerChainStep<Carrier>> steps;  // 3*(levels-1) steps
};

template <typename Carrier>
PowerChain<Carrier> derive_power_chain(const Carrier& cr, const typename Carrier::Value& x,
                                       const typename Carrier::Value& y, int n) {
    if (n < 1) throw invalid_input_error("power chain needs n >= 1");
    PowerChain<Carrier> chain;
    chain.x = x;
    chain.y = y;
    chain.levels = n;
    using V = typename Carrier::Value;
    V xk = x, yk = y;  // x^k, y^k for the current level k
    for (int k = 1; k < n; ++k) {
        V xk1 = cr.mul(x, xk), yk1 = cr.mul(y, yk);
        V x_yk = cr.mul(x, yk);
        V mid1 = cr.add(xk1, x_yk);            // x^{k+1} + x y^k
        V mid2 = cr.add(mid1, yk1);            // x^{k+1} + x y^k + y^{k+1}
        V end = cr.add(xk1, yk1);              // x^{k+1} + y^{k+1}
        chain.steps.push_back({k, x, cr.zero(), false, xk1, mid1});
        chain.steps.push_back({1, yk, xk1, false, mid1, mid2});
        chain.steps.push_back({k, x, yk1, true, mid2, end});
        xk = xk1;
        yk = yk1;
    }
    return chain;
}

struct PowerChainVerdict {
    bool ok = true;
    std::string diagnostics;
};

/* Replays the transcript against nothing but the carrier operations and the
 * premise (x, x+y); shares no state with the derivation above. */
template <typename Carrier>
PowerChainVerdict verify_power_chain(const Carrier& cr, const PowerChain<Carrier>& chain) {
    using V = typename Carrier::Value;
    auto fail = [](std::string why) { return PowerChainVerdict{false, std::move(why)}; };
    if (chain.levels < 1) return fail("levels < 1");
    if (chain.steps.size() != static_cast<size_t>(3 * (chain.levels - 1)))
        return fail("expected 3*(n-1) steps");
    std::vector<std::pair<V, V>> established;  // established[k-1] = (x^k, x^k + y^k)
    established.emplace_back(chain.x, cr.add(chain.x, chain.y));
    V xk = chain.x, yk = chain.y;
    for (int k = 1; k < chain.levels; ++k) {
        V xk1 = cr.mul(chain.x, xk), yk1 = cr.mul(chain.y, yk);
        const auto* seg = &chain.steps[static_cast<size_t>(3 * (k - 1))];
        if (!cr.eq(seg[0].lhs, xk1)) return fail("level " + std::to_string(k + 1) + ": chain does not start at x^(k+1)");
        for (int i = 0; i < 3; ++i) {
            const auto& st = seg[i];
            if (st.premise_level < 1 || st.premise_level > k)
                return fail("step uses an unestablished premise");
            const auto& [pa, pb] = established[static_cast<size_t>(st.premise_level - 1)];
            V ra = cr.add(cr.mul(st.mult, pa), st.addend);
            V rb = cr.add(cr.mul(st.mult, pb), st.addend);
            if (st.reversed) std::swap(ra, rb);
            if (!cr.eq(ra, st.lhs) || !cr.eq(rb, st.rhs))
                return fail("step " + std::to_string(3 * (k - 1) + i) +
                            " is not an instance of the congruence rule");
            if (i > 0 && !cr.eq(seg[i - 1].rhs, st.lhs))
                return fail("chain discontinuity at step " + std::to_string(3 * (k - 1) + i));
        }
        if (!cr.eq(seg[2].rhs, cr.add(xk1, yk1)))
            return fail("level " + std::to_string(k + 1) + ": chain does not end at x^(k+1) + y^(k+1)");
        established.emplace_back(xk1, cr.add(xk1, yk1));
        xk = xk1;
        yk = yk1;
    }
    return {};
}

}  // namespace semikit
