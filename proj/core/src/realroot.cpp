#include "semikit/realroot.hpp"

#include <algorithm>

#include "semikit/errors.hpp"

namespace semikit {

namespace {

/* Remainder of a by b over Q, returned as a primitive integer polynomial
 * scaled by a positive rational. The positive scale keeps sign data intact,
 * which is all Sturm sequences need. */
IntPolynomial rat_rem_primitive(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Rat> r;
    r.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) r.emplace_back(c);
    const int dn = b.degree();
    const Rat lc{b.leading()};
    while (static_cast<int>(r.size()) - 1 >= dn) {
        Rat f = r.back() / lc;
        int shift = static_cast<int>(r.size()) - 1 - dn;
        for (int j = 0; j <= dn; ++j) r[static_cast<size_t>(shift + j)] -= f * Rat(b.coeff(j));
        r.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    if (r.empty()) return IntPolynomial();
    Int den(1);
    for (const auto& c : r) den = boost::multiprecision::lcm(den, denominator(c));
    std::vector<Int> v;
    v.reserve(r.size());
    for (const auto& c : r) v.push_back(numerator(c) * (den / denominator(c)));
    return IntPolynomial(std::move(v)).primitive_part();
}

std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p) {
    std::vector<IntPolynomial> chain;
    chain.push_back(p);
    if (p.degree() >= 1) chain.push_back(p.derivative());
    while (chain.back().degree() >= 1) {
        IntPolynomial r = rat_rem_primitive(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int variations(const std::vector<IntPolynomial>& chain, const Rat& x) {
    int count = 0, prev = 0;
    for (const auto& s : chain) {
        int sg = s.sign_at(x);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++count;
        prev = sg;
    }
    return count;
}

Int cauchy_bound(const IntPolynomial& p) {
    Int maxc(0);
    for (int i = 0; i < p.degree(); ++i) maxc = std::max(maxc, abs_int(p.coeff(i)));
    Int lead = abs_int(p.leading());
    return Int(1) + floor_div(maxc, lead) + 1;
}

}  // namespace

struct RealRoot::Rep {
    IntPolynomial poly;  // squarefree, positive leading coefficient
    mutable std::mutex mu;
    mutable Rat lo, hi;
    mutable int sign_lo = 0;  // 0 iff exact

    void refine_once_locked() const {
        if (lo == hi) return;
        Rat mid = (lo + hi) / 2;
        int s = poly.sign_at(mid);
        if (s == 0) {
            lo = hi = mid;
            sign_lo = 0;
        } else if (s == sign_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
};

const IntPolynomial& RealRoot::polynomial() const { return rep_->poly; }

std::pair<Rat, Rat> RealRoot::interval() const {
    std::lock_guard<std::mutex> lock(rep_->mu);
    return {rep_->lo, rep_->hi};
}

std::pair<Rat, Rat> RealRoot::interval_refined(const Rat& width) const {
    std::lock_guard<std::mutex> lock(rep_->mu);
    while (rep_->lo != rep_->hi && rep_->hi - rep_->lo >= width) rep_->refine_once_locked();
    return {rep_->lo, rep_->hi};
}

void RealRoot::refine_steps(int bisections) const {
    std::lock_guard<std::mutex> lock(rep_->mu);
    for (int i = 0; i < bisections && rep_->lo != rep_->hi; ++i) rep_->refine_once_locked();
}

bool RealRoot::is_exact() const {
    std::lock_guard<std::mutex> lock(rep_->mu);
    return rep_->lo == rep_->hi;
}

Rat RealRoot::exact_value() const {
    std::lock_guard<std::mutex> lock(rep_->mu);
    return rep_->lo;
}

int RealRoot::count_roots(const IntPolynomial& squarefree, const Rat& a, const Rat& b) {
    auto chain = sturm_chain(squarefree);
    return variations(chain, a) - variations(chain, b);
}

std::vector<RealRoot> isolate_real_roots(const IntPolynomial& p) {
    if (p.is_zero()) throw invalid_input_error("isolate_real_roots: zero polynomial");
    IntPolynomial q = p.squarefree_part();
    std::vector<RealRoot> out;
    if (q.degree() < 1) return out;

    /* Exact rational roots are reported as degenerate intervals and divided
     * out, so the Sturm phase only ever sees irrational roots. */
    std::vector<Rat> rat_roots = q.rational_roots();
    for (const Rat& r : rat_roots) {
        IntPolynomial factor({-numerator(r), denominator(r)});
        q = q.divide_exact(factor).primitive_part();
        auto rep = std::make_shared<RealRoot::Rep>();
        rep->poly = factor.leading() > 0 ? factor : -factor;
        rep->lo = rep->hi = r;
        rep->sign_lo = 0;
        out.push_back(RealRoot(std::move(rep)));
    }
    std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) {
        return a.exact_value() < b.exact_value();
    });
    if (q.degree() < 1) return out;
    if (q.leading() < 0) q = -q;

    auto chain = sturm_chain(q);
    auto var = [&](const Rat& x) { return variations(chain, x); };

    std::vector<RealRoot> irr;
    auto make_root = [&](const Rat& lo, const Rat& hi, int sign_lo) {
        auto rep = std::make_shared<RealRoot::Rep>();
        rep->poly = q;
        rep->lo = lo;
        rep->hi = hi;
        rep->sign_lo = sign_lo;
        irr.push_back(RealRoot(std::move(rep)));
    };

    /* Split (lo, hi] recursively by Sturm counts. Interval endpoints are
     * kept off the root set; an exact rational hit at a midpoint becomes a
     * degenerate root and the recursion steps around it. */
    auto isolate = [&](auto&& self, const Rat& lo, const Rat& hi, int vlo, int vhi) -> void {
        int count = vlo - vhi;
        if (count <= 0) return;
        if (count == 1) {
            make_root(lo, hi, q.sign_at(lo));
            return;
        }
        Rat mid = (lo + hi) / 2;
        if (q.sign_at(mid) != 0) {
            int vm = var(mid);
            self(self, lo, mid, vlo, vm);
            self(self, mid, hi, vm, vhi);
            return;
        }
        Rat eps = (hi - lo) / 4;
        while (true) {
            Rat a = mid - eps, b = mid + eps;
            if (q.sign_at(a) != 0 && q.sign_at(b) != 0 && var(a) - var(b) == 1) {
                int va = var(a), vb = var(b);
                self(self, lo, a, vlo, va);
                make_root(mid, mid, 0);
                self(self, b, hi, vb, vhi);
                return;
            }
            eps /= 2;
        }
    };

    Rat bound{cauchy_bound(q)};
    isolate(isolate, -bound, bound, var(-bound), var(bound));

    /* Keep all intervals pairwise disjoint: narrow the irrational ones until
     * they avoid every exact rational root. */
    for (auto& root : irr) {
        for (const auto& ex : out) {
            Rat v = ex.exact_value();
            auto iv = root.interval();
            while (iv.first <= v && v <= iv.second) {
                root.refine_steps(1);
                iv = root.interval();
            }
        }
    }
    for (auto& r : irr) out.push_back(std::move(r));
    std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) {
        while (true) {
            auto ia = a.interval(), ib = b.interval();
            if (ia.second < ib.first) return true;
            if (ib.second < ia.first) return false;
            a.refine_steps(1);
            b.refine_steps(1);
        }
    });
    return out;
}

}  // namespace semikit
