#include "semikit/order.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "semikit/errors.hpp"
#include "semikit/rng.hpp"

namespace semikit {

std::shared_ptr<const RealOrder> RealOrder::create(const IntPolynomial& poly, int root_index) {
    if (poly.degree() < 2)
        throw invalid_input_error("real orders here have degree >= 2; for Z use the N classifier");
    auto field = NumberField::create(poly, root_index);
    return std::shared_ptr<const RealOrder>(new RealOrder(std::move(field)));
}

std::shared_ptr<const RealOrder> RealOrder::parse(const std::string& spec) {
    auto at = spec.find('@');
    std::string poly_part = at == std::string::npos ? spec : spec.substr(0, at);
    int index = 0;
    if (at != std::string::npos) {
        try {
            index = std::stoi(spec.substr(at + 1));
        } catch (const std::exception&) {
            throw invalid_input_error("bad root index in order spec '" + spec + "'");
        }
    }
    return create(IntPolynomial::parse(poly_part), index);
}

OrderElement RealOrder::theta() const {
    std::vector<Int> c(static_cast<size_t>(degree()), Int(0));
    c[1] = 1;
    return {std::move(c)};
}

OrderElement RealOrder::element_from_int(Int v) const {
    std::vector<Int> c(static_cast<size_t>(degree()), Int(0));
    c[0] = std::move(v);
    return {std::move(c)};
}

OrderElement RealOrder::element(std::vector<Int> coords) const {
    if (static_cast<int>(coords.size()) != degree())
        throw invalid_input_error("coordinate vector has wrong length");
    return {std::move(coords)};
}

OrderElement RealOrder::parse_element(const std::string& text) const {
    if (text.find(',') != std::string::npos) {
        std::vector<Int> coords;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                coords.emplace_back(Int(tok));
            } catch (const std::exception&) {
                throw invalid_input_error("bad coordinate '" + tok + "'");
            }
        }
        return element(std::move(coords));
    }
    FieldElement fe = field_->parse_element(text);
    std::vector<Int> coords;
    for (const Rat& r : fe.coords()) {
        if (denominator(r) != 1)
            throw invalid_input_error("order elements need integer coordinates: '" + text + "'");
        coords.push_back(numerator(r));
    }
    return {std::move(coords)};
}

OrderElement RealOrder::add(const OrderElement& a, const OrderElement& b) const {
    std::vector<Int> c(a.c);
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.c[i];
    return {std::move(c)};
}

OrderElement RealOrder::sub(const OrderElement& a, const OrderElement& b) const {
    std::vector<Int> c(a.c);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= b.c[i];
    return {std::move(c)};
}

OrderElement RealOrder::neg(const OrderElement& a) const {
    std::vector<Int> c(a.c);
    for (auto& x : c) x = -x;
    return {std::move(c)};
}

OrderElement RealOrder::mul(const OrderElement& a, const OrderElement& b) const {
    const size_t d = static_cast<size_t>(degree());
    std::vector<Int> raw(2 * d - 1, Int(0));
    for (size_t i = 0; i < d; ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < d; ++j) {
            if (b.c[j] == 0) continue;
            raw[i + j] += a.c[i] * b.c[j];
        }
    }
    /* Reduce monomials theta^k, k >= d using the monic minimal polynomial;
     * everything stays integral. */
    const IntPolynomial& mp = field_->minimal_polynomial();
    for (size_t k = raw.size(); k-- > d;) {
        if (raw[k] == 0) continue;
        for (size_t i = 0; i < d; ++i) raw[k - d + i] -= raw[k] * mp.coeff(static_cast<int>(i));
        raw[k] = 0;
    }
    raw.resize(d);
    return {std::move(raw)};
}

OrderElement RealOrder::scale(const OrderElement& a, const Int& m) const {
    std::vector<Int> c(a.c);
    for (auto& x : c) x *= m;
    return {std::move(c)};
}

OrderElement RealOrder::abs(const OrderElement& a) const { return sign(a) < 0 ? neg(a) : a; }

OrderElement RealOrder::eval_poly(const IntPolynomial& p, const OrderElement& a) const {
    OrderElement acc = zero();
    for (int i = p.degree(); i >= 0; --i) {
        acc = mul(acc, a);
        acc.c[0] += p.coeff(i);
    }
    return acc;
}

int RealOrder::sign(const OrderElement& a) const { return to_field(a).sign(); }

Int RealOrder::floor(const OrderElement& a) const { return to_field(a).floor(); }

FieldElement RealOrder::to_field(const OrderElement& a) const {
    return field_->from_int_coords(a.c);
}

std::string RealOrder::str(const OrderElement& a) const { return to_field(a).str(); }

IntMatrix RealOrder::mult_matrix(const OrderElement& a) const {
    const int d = degree();
    IntMatrix m(d, d);
    OrderElement cur = a;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) m(i, j) = cur.c[static_cast<size_t>(i)];
        if (j + 1 < d) cur = mul(cur, theta());
    }
    return m;
}

IntPolynomial RealOrder::min_poly_of(const OrderElement& a) const {
    const int d = degree();
    /* Krylov search: the least k with a^k in the rational span of lower
     * powers; the relation is monic and integral since a is an algebraic
     * integer. */
    std::vector<OrderElement> powers{one()};
    for (int k = 1; k <= d; ++k) powers.push_back(mul(powers.back(), a));
    for (int k = 1; k <= d; ++k) {
        IntMatrix m(d, k);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < d; ++i) m(i, j) = powers[static_cast<size_t>(j)].c[static_cast<size_t>(i)];
        /* Solve m * c = a^k over Q via elimination on the augmented matrix. */
        std::vector<std::vector<Rat>> aug(static_cast<size_t>(d),
                                          std::vector<Rat>(static_cast<size_t>(k) + 1));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < k; ++j) aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rat(m(i, j));
            aug[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                Rat(powers[static_cast<size_t>(k)].c[static_cast<size_t>(i)]);
        }
        int row = 0;
        std::vector<int> pivot_col;
        for (int col = 0; col < k && row < d; ++col) {
            int p = -1;
            for (int r = row; r < d; ++r)
                if (aug[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) { p = r; break; }
            if (p < 0) continue;
            std::swap(aug[static_cast<size_t>(row)], aug[static_cast<size_t>(p)]);
            for (int r = 0; r < d; ++r) {
                if (r == row || aug[static_cast<size_t>(r)][static_cast<size_t>(col)] == 0) continue;
                Rat f = aug[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                        aug[static_cast<size_t>(row)][static_cast<size_t>(col)];
                for (int c2 = col; c2 <= k; ++c2)
                    aug[static_cast<size_t>(r)][static_cast<size_t>(c2)] -=
                        f * aug[static_cast<size_t>(row)][static_cast<size_t>(c2)];
            }
            pivot_col.push_back(col);
            ++row;
        }
        bool consistent = true;
        for (int r = row; r < d; ++r)
            if (aug[static_cast<size_t>(r)][static_cast<size_t>(k)] != 0) consistent = false;
        if (!consistent) continue;
        std::vector<Rat> coeff(static_cast<size_t>(k), Rat(0));
        for (int i = row - 1; i >= 0; --i) {
            int col = pivot_col[static_cast<size_t>(i)];
            Rat v = aug[static_cast<size_t>(i)][static_cast<size_t>(k)];
            for (int c2 = col + 1; c2 < k; ++c2)
                v -= aug[static_cast<size_t>(i)][static_cast<size_t>(c2)] * coeff[static_cast<size_t>(c2)];
            coeff[static_cast<size_t>(col)] = v / aug[static_cast<size_t>(i)][static_cast<size_t>(col)];
        }
        std::vector<Int> poly(static_cast<size_t>(k) + 1, Int(0));
        poly[static_cast<size_t>(k)] = 1;
        bool integral = true;
        for (int j = 0; j < k; ++j) {
            if (denominator(coeff[static_cast<size_t>(j)]) != 1) integral = false;
            poly[static_cast<size_t>(j)] = -numerator(coeff[static_cast<size_t>(j)]);
        }
        if (!integral)
            throw consistency_error("min_poly_of: relation is not integral");
        return IntPolynomial(std::move(poly));
    }
    throw consistency_error("min_poly_of: no relation up to the field degree");
}

IdealLattice ideal_from_generators(const RealOrder& order, const std::vector<OrderElement>& gens) {
    const int d = order.degree();
    bool any_nonzero = false;
    for (const auto& g : gens)
        if (!(g == order.zero())) any_nonzero = true;
    if (!any_nonzero)
        throw invalid_input_error("ideal_from_generators: all generators are zero");
    IntMatrix m(d, static_cast<int>(gens.size()) * d);
    int col = 0;
    for (const auto& g : gens) {
        OrderElement cur = g;
        for (int i = 0; i < d; ++i) {
            for (int r = 0; r < d; ++r) m(r, col) = cur.c[static_cast<size_t>(r)];
            ++col;
            if (i + 1 < d) cur = order.mul(cur, order.theta());
        }
    }
    IntMatrix h = hnf_column_basis(m);
    if (h.cols() != d)
        throw consistency_error("ideal lattice is not full rank");
    IdealLattice ideal;
    ideal.hnf = h;
    ideal.determinant = det(h);
    ideal.generators = gens;
    /* Closure under multiplication by theta is what makes the lattice an
     * ideal; assert it on the basis columns. */
    for (int c = 0; c < d; ++c) {
        OrderElement basis = order.element(h.col(c));
        OrderElement shifted = order.mul(basis, order.theta());
        if (!hnf_solve(h, shifted.c))
            throw consistency_error("ideal lattice is not closed under multiplication by theta");
    }
    return ideal;
}

bool ideal_contains(const IdealLattice& ideal, const OrderElement& x) {
    return hnf_solve(ideal.hnf, x.c).has_value();
}

KIdeal k_ideal_of(const RealOrder& order, const IdealLattice& ideal) {
    KIdeal k;
    k.lattice = ideal;
    for (const auto& g : ideal.generators) k.k_generators.push_back(order.abs(g));
    return k;
}

IdealLattice ring_ideal_of(const RealOrder& order, const std::vector<OrderElement>& k_generators) {
    return ideal_from_generators(order, k_generators);
}

bool k_ideal_contains(const RealOrder& order, const KIdeal& k, const OrderElement& x) {
    return order.sign(x) >= 0 && ideal_contains(k.lattice, x);
}

OrderCongruenceClass classify_congruence(
    const RealOrder& order, const std::vector<std::pair<OrderElement, OrderElement>>& gens,
    const ClassifyOptions& opts) {
    OrderCongruenceClass cls;
    std::vector<OrderElement> diffs;
    bool zero_touching = false;
    for (const auto& [a, b] : gens) {
        if (!order.in_S(a) || !order.in_S(b))
            throw invalid_input_error("generator pair member outside S");
        if (a == b) continue;
        diffs.push_back(order.abs(order.sub(a, b)));
        bool a_zero = a == order.zero(), b_zero = b == order.zero();
        if (a_zero != b_zero) zero_touching = true;
    }
    if (diffs.empty()) return cls;
    cls.trivial = false;
    cls.j = zero_touching ? 0 : 1;
    cls.ideal = ideal_from_generators(order, diffs);

    if (opts.cross_check) {
        /* Soundness cross-check: every relation the bounded closure derives
         * from the generators must hold in the classified congruence. */
        Int maxc(0);
        for (const auto& [a, b] : gens) {
            for (const auto& v : a.c) maxc = std::max(maxc, abs_int(v));
            for (const auto& v : b.c) maxc = std::max(maxc, abs_int(v));
        }
        int64_t bound = opts.coord_bound;
        if (bound == 0) {
            int64_t mc = static_cast<int64_t>(maxc);
            bound = order.degree() == 2 ? std::min<int64_t>(2 * mc + 4, 20)
                                        : std::min<int64_t>(mc + 2, 7);
        }
        if (Int(bound) >= maxc) {
            auto order_ptr = order.shared_from_this();
            ConeUniverse cone = order_cone_universe(order_ptr, bound);
            std::vector<GeneratorPair> pairs;
            bool fits = true;
            for (const auto& [a, b] : gens) {
                auto ia = cone.index_of(a), ib = cone.index_of(b);
                if (!ia || !ib) { fits = false; break; }
                pairs.emplace_back(*ia, *ib);
            }
            if (fits) {
                BoundedClosureOptions copts;
                copts.max_steps = opts.max_steps;
                auto closure = bounded_closure(cone.universe, pairs, copts);
                Rng rng(0xC0FFEE);
                for (int trial = 0; trial < opts.soundness_samples; ++trial) {
                    uint32_t i = static_cast<uint32_t>(rng.below(cone.universe.size()));
                    uint32_t j = static_cast<uint32_t>(rng.below(cone.universe.size()));
                    if (!closure.partition.same(i, j)) continue;
                    if (!is_related(order, cls, cone.element_of(i), cone.element_of(j)))
                        throw consistency_error(
                            "classify_congruence: bounded closure relates a pair the "
                            "classified congruence rejects");
                }
                /* Classes are unions of closure classes; spot-check the class
                 * of each generator endpoint too. */
                for (const auto& [ia, ib] : pairs) {
                    if (!is_related(order, cls, cone.element_of(ia), cone.element_of(ib)))
                        throw consistency_error(
                            "classify_congruence: a generator pair is not related under "
                            "the classified congruence");
                }
            }
        }
    }
    return cls;
}

bool is_related(const RealOrder& order, const OrderCongruenceClass& cls, const OrderElement& x,
                const OrderElement& y) {
    if (!order.in_S(x) || !order.in_S(y))
        throw invalid_input_error("is_related arguments must lie in S");
    if (cls.trivial) return x == y;
    if (cls.j == 0) return ideal_contains(*cls.ideal, order.sub(x, y));
    bool x_zero = x == order.zero(), y_zero = y == order.zero();
    if (x_zero || y_zero) return x_zero && y_zero;
    return ideal_contains(*cls.ideal, order.sub(x, y));
}

FiniteSemiring quotient_semiring(const RealOrder& order, const OrderCongruenceClass& cls) {
    if (cls.trivial)
        throw invalid_input_error("quotient by the diagonal congruence is infinite");
    const IdealLattice& ideal = *cls.ideal;
    Int size = abs_int(ideal.determinant);
    if (size > 20000) throw resource_error("quotient larger than 20000 elements");
    const int d = order.degree();
    SmithDecomposition snf = smith(ideal.hnf);

    std::vector<Int> diag = snf.diag;
    auto mod_pos = [](const Int& v, const Int& m) {
        Int r = v % m;
        if (r < 0) r += m;
        return r;
    };
    uint32_t total = static_cast<uint32_t>(size);
    /* Mixed-radix enumeration of residue tuples. */
    auto tuple_of_index = [&](uint32_t idx) {
        std::vector<Int> t(static_cast<size_t>(d));
        Int rest(idx);
        for (int i = d - 1; i >= 0; --i) {
            t[static_cast<size_t>(i)] = rest % diag[static_cast<size_t>(i)];
            rest /= diag[static_cast<size_t>(i)];
        }
        return t;
    };
    auto index_of_tuple = [&](const std::vector<Int>& t) {
        Int idx(0);
        for (int i = 0; i < d; ++i) idx = idx * diag[static_cast<size_t>(i)] + t[static_cast<size_t>(i)];
        return static_cast<uint32_t>(idx);
    };
    auto project = [&](const OrderElement& x) {
        auto v = snf.U.apply(x.c);
        std::vector<Int> t(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) t[static_cast<size_t>(i)] = mod_pos(v[static_cast<size_t>(i)], diag[static_cast<size_t>(i)]);
        return index_of_tuple(t);
    };
    auto lift = [&](uint32_t idx) { return order.element(snf.Uinv.apply(tuple_of_index(idx))); };

    std::vector<uint32_t> add(static_cast<size_t>(total) * total),
        mul(static_cast<size_t>(total) * total);
    std::vector<std::string> labels(total);
    std::vector<OrderElement> lifts;
    lifts.reserve(total);
    for (uint32_t i = 0; i < total; ++i) {
        lifts.push_back(lift(i));
        auto t = tuple_of_index(i);
        std::ostringstream lab;
        lab << "(";
        for (int k = 0; k < d; ++k) lab << (k ? "," : "") << t[static_cast<size_t>(k)].str();
        lab << ")";
        labels[i] = lab.str();
    }
    for (uint32_t a = 0; a < total; ++a)
        for (uint32_t b = 0; b < total; ++b) {
            add[static_cast<size_t>(a) * total + b] = project(order.add(lifts[a], lifts[b]));
            mul[static_cast<size_t>(a) * total + b] = project(order.mul(lifts[a], lifts[b]));
        }
    FiniteSemiring ring = FiniteSemiring::from_tables(total, std::move(add), std::move(mul),
                                                      project(order.zero()), project(order.one()),
                                                      std::move(labels));
    FiniteSemiring out = cls.j == 0 ? ring : make_star(ring);
    if (!is_valid(out)) throw consistency_error("quotient tables violate the semiring axioms");
    return out;
}

std::vector<std::pair<OrderElement, OrderElement>> canonical_generators(
    const RealOrder& order, const OrderCongruenceClass& cls,
    const std::vector<OrderElement>& k_ideal_generators) {
    if (cls.trivial) throw invalid_input_error("the diagonal congruence has no canonical generators");
    OrderElement j = order.element_from_int(cls.j);
    std::vector<std::pair<OrderElement, OrderElement>> out;
    for (const auto& x : k_ideal_generators) {
        OrderElement xa = order.abs(x);
        if (xa == order.zero()) continue;
        out.emplace_back(j, order.add(j, xa));
    }
    return out;
}

IntegerRelation derive_integer_relation(const RealOrder& order, const OrderElement& a,
                                        const OrderElement& u) {
    if (order.sign(u) <= 0 || order.sign(a) <= 0)
        throw invalid_input_error("derive_integer_relation requires a > 0 and u > 0");
    IntPolynomial psi = order.min_poly_of(u);
    if (psi.coeff(0) == 0) throw consistency_error("minimal polynomial with zero constant term");
    /* psi(X) = X*phi(X) + c0, so u phi(u) = -c0. Splitting phi by
     * coefficient sign gives u f(u) = u g(u) + l with l = |c0|. */
    std::vector<Int> fp, gp;
    for (int i = 1; i <= psi.degree(); ++i) {
        const Int& c = psi.coeff(i);
        fp.push_back(c > 0 ? c : Int(0));
        gp.push_back(c < 0 ? Int(-c) : Int(0));
    }
    IntegerRelation rel;
    Int c0 = psi.coeff(0);
    if (c0 < 0) {
        rel.f = IntPolynomial(fp);
        rel.g = IntPolynomial(gp);
        rel.l = -c0;
    } else {
        rel.f = IntPolynomial(gp);
        rel.g = IntPolynomial(fp);
        rel.l = c0;
    }
    OrderElement lhs = order.mul(u, order.eval_poly(rel.f, u));
    OrderElement rhs = order.add(order.mul(u, order.eval_poly(rel.g, u)),
                                 order.element_from_int(rel.l));
    if (!(lhs == rhs)) throw consistency_error("integer relation does not hold in the order");

    OrderElement bound = order.mul(a, order.add(order.eval_poly(rel.f, a), order.eval_poly(rel.g, a)));
    rel.m = order.floor(bound) + 1;
    rel.n = rel.m + rel.l;
    return rel;
}

DerivationVerdict verify_derivation(const RealOrder& order, const CongruenceDerivation& d) {
    auto fail = [](std::string why) { return DerivationVerdict{false, std::move(why)}; };
    for (const auto& [a, b] : d.generators)
        if (!order.in_S(a) || !order.in_S(b)) return fail("generator member outside S");
    for (size_t k = 0; k < d.steps.size(); ++k) {
        const auto& st = d.steps[k];
        auto prem = [&](int p) -> const CongruenceStep& {
            if (p < 0 || p >= static_cast<int>(k))
                throw invalid_input_error("premise index out of range");
            return d.steps[static_cast<size_t>(p)];
        };
        std::string where = "step " + std::to_string(k) + ": ";
        try {
            switch (st.rule) {
                case CongruenceStep::Rule::Generator: {
                    if (st.generator_index < 0 ||
                        st.generator_index >= static_cast<int>(d.generators.size()))
                        return fail(where + "bad generator index");
                    const auto& g = d.generators[static_cast<size_t>(st.generator_index)];
                    if (!(st.lhs == g.first) || !(st.rhs == g.second))
                        return fail(where + "pair is not the cited generator");
                    break;
                }
                case CongruenceStep::Rule::Reflexive:
                    if (!(st.lhs == st.rhs)) return fail(where + "reflexive pair differs");
                    if (!order.in_S(st.lhs)) return fail(where + "reflexive element outside S");
                    break;
                case CongruenceStep::Rule::Symmetry: {
                    const auto& p = prem(st.premise1);
                    if (!(st.lhs == p.rhs) || !(st.rhs == p.lhs))
                        return fail(where + "not the symmetric pair");
                    break;
                }
                case CongruenceStep::Rule::Transitivity: {
                    const auto& p = prem(st.premise1);
                    const auto& q = prem(st.premise2);
                    if (!(p.rhs == q.lhs)) return fail(where + "middle terms differ");
                    if (!(st.lhs == p.lhs) || !(st.rhs == q.rhs))
                        return fail(where + "endpoints differ");
                    break;
                }
                case CongruenceStep::Rule::Shift: {
                    const auto& p = prem(st.premise1);
                    if (order.sign(st.operand) < 0) return fail(where + "shift amount outside S");
                    if (!(st.lhs == order.add(p.lhs, st.operand)) ||
                        !(st.rhs == order.add(p.rhs, st.operand)))
                        return fail(where + "shifted pair differs");
                    break;
                }
                case CongruenceStep::Rule::Multiply: {
                    const auto& p = prem(st.premise1);
                    if (order.sign(st.operand) < 0) return fail(where + "multiplier outside S");
                    if (!(st.lhs == order.mul(p.lhs, st.operand)) ||
                        !(st.rhs == order.mul(p.rhs, st.operand)))
                        return fail(where + "multiplied pair differs");
                    break;
                }
            }
        } catch (const invalid_input_error& err) {
            return fail(where + err.what());
        }
    }
    for (int c : d.conclusions)
        if (c < 0 || c >= static_cast<int>(d.steps.size()))
            return fail("conclusion index out of range");
    return {};
}

namespace {

struct DerivationBuilder {
    const RealOrder& order;
    CongruenceDerivation d;

    int push(CongruenceStep st) {
        d.steps.push_back(std::move(st));
        return static_cast<int>(d.steps.size()) - 1;
    }
    const CongruenceStep& at(int k) const { return d.steps[static_cast<size_t>(k)]; }

    int gen(int i) {
        CongruenceStep st;
        st.rule = CongruenceStep::Rule::Generator;
        st.generator_index = i;
        st.lhs = d.generators[static_cast<size_t>(i)].first;
        st.rhs = d.generators[static_cast<size_t>(i)].second;
        return push(std::move(st));
    }
    int sym(int k) {
        CongruenceStep st;
        st.rule = CongruenceStep::Rule::Symmetry;
        st.premise1 = k;
        st.lhs = at(k).rhs;
        st.rhs = at(k).lhs;
        return push(std::move(st));
    }
    int trans(int k1, int k2) {
        CongruenceStep st;
        st.rule = CongruenceStep::Rule::Transitivity;
        st.premise1 = k1;
        st.premise2 = k2;
        st.lhs = at(k1).lhs;
        st.rhs = at(k2).rhs;
        return push(std::move(st));
    }
    int shift(int k, OrderElement s) {
        CongruenceStep st;
        st.rule = CongruenceStep::Rule::Shift;
        st.premise1 = k;
        st.lhs = order.add(at(k).lhs, s);
        st.rhs = order.add(at(k).rhs, s);
        st.operand = std::move(s);
        return push(std::move(st));
    }
    int mul(int k, OrderElement r) {
        CongruenceStep st;
        st.rule = CongruenceStep::Rule::Multiply;
        st.premise1 = k;
        st.lhs = order.mul(at(k).lhs, r);
        st.rhs = order.mul(at(k).rhs, r);
        st.operand = std::move(r);
        return push(std::move(st));
    }

    /* From a step (base, base + y), produce (base, base + N y) by doubling:
     * O(log N) steps. Requires base ~ base + y with y > 0, N >= 1. */
    int pump(int step_base_y, const OrderElement& y, const Int& n) {
        int cur = step_base_y;      // (base, base + 2^k y)
        OrderElement cur_y = y;     // 2^k y
        int acc = -1;
        OrderElement acc_y = order.zero();
        Int rest = n;
        while (rest > 0) {
            if ((rest & 1) != 0) {
                if (acc < 0) {
                    acc = cur;
                    acc_y = cur_y;
                } else {
                    // (base, base + M y) + (base, base + 2^k y) -> (base, base + (M + 2^k) y)
                    int shifted = shift(cur, acc_y);
                    acc = trans(acc, shifted);
                    acc_y = order.add(acc_y, cur_y);
                }
            }
            rest >>= 1;
            if (rest > 0) {
                int shifted = shift(cur, cur_y);
                cur = trans(cur, shifted);
                cur_y = order.add(cur_y, cur_y);
            }
        }
        return acc;
    }
};

/* A deterministic element of S with value strictly between 0 and 1. */
OrderElement small_positive_element(const RealOrder& order) {
    for (int64_t radius = 1; radius <= 6; ++radius) {
        std::vector<int64_t> v(static_cast<size_t>(order.degree()), -radius);
        while (true) {
            std::vector<Int> coords(v.begin(), v.end());
            OrderElement e = order.element(coords);
            bool zero = std::all_of(v.begin(), v.end(), [](int64_t x) { return x == 0; });
            if (!zero && order.sign(e) > 0 &&
                order.sign(order.sub(order.one(), e)) > 0)
                return e;
            int i = order.degree() - 1;
            while (i >= 0 && v[static_cast<size_t>(i)] == radius) v[static_cast<size_t>(i--)] = -radius;
            if (i < 0) break;
            ++v[static_cast<size_t>(i)];
        }
    }
    throw consistency_error("no small positive element found (degenerate order?)");
}

}  // namespace

CongruenceDerivation derive_canonical_membership(
    const RealOrder& order, const std::vector<std::pair<OrderElement, OrderElement>>& gens,
    const OrderCongruenceClass& cls, const std::vector<OrderElement>& k_ideal_generators) {
    if (cls.trivial) throw invalid_input_error("nothing to derive for the diagonal congruence");
    DerivationBuilder b{order, {}};
    b.d.generators = gens;

    /* Orient every nontrivial pair as (base, base + x) with x > 0 and line
     * the pairs up with their difference. */
    struct Oriented {
        int step;  // derivation step holding (base, base + x)
        OrderElement base, x;
    };
    std::vector<Oriented> oriented;
    int zero_pair = -1;  // index into oriented with base == 0
    for (size_t i = 0; i < gens.size(); ++i) {
        const auto& [u, v] = gens[i];
        if (u == v) continue;
        int g = b.gen(static_cast<int>(i));
        int s = order.sign(order.sub(v, u));
        Oriented o;
        if (s > 0) {
            o.step = g;
            o.base = u;
            o.x = order.sub(v, u);
        } else {
            o.step = b.sym(g);
            o.base = v;
            o.x = order.sub(u, v);
        }
        if (o.base == order.zero() && zero_pair < 0) zero_pair = static_cast<int>(oriented.size());
        oriented.push_back(std::move(o));
    }
    if (oriented.empty()) throw consistency_error("classified nontrivial with no nontrivial pair");
    if (cls.j == 0 && zero_pair < 0)
        throw consistency_error("classified j=0 without a zero-touching pair");

    OrderElement one = order.one();
    auto& field = *order.field();

    std::vector<int> conclusions;
    for (const auto& target : k_ideal_generators) {
        OrderElement x = order.abs(target);
        /* find the oriented pair with this difference */
        int pi = -1;
        for (size_t i = 0; i < oriented.size(); ++i)
            if (oriented[i].x == x) { pi = static_cast<int>(i); break; }
        if (pi < 0) throw consistency_error("canonical generator is not a generator difference");
        const Oriented& o = oriented[static_cast<size_t>(pi)];

        if (cls.j == 1) {
            /* (base, base+x) -> (1, 1+x): scale the pair below 1, pump the
             * scaled difference past base, exchange, pump back down. */
            OrderElement beta = one;
            int cur = o.step;
            if (order.sign(order.sub(o.base, one)) >= 0) {
                OrderElement u = small_positive_element(order);
                while (order.sign(order.sub(one, order.mul(beta, o.base))) <= 0)
                    beta = order.mul(beta, u);
                cur = b.mul(o.step, beta);
            }
            OrderElement beta_base = order.mul(beta, o.base);
            OrderElement y = order.mul(beta, o.x);
            int base1 = b.shift(cur, order.sub(one, beta_base));  // (1, 1+y)
            Int n = field.floor_ratio(field.from_int_coords(o.base.c),
                                      field.from_int_coords(y.c)) + 1;
            int pumped = b.pump(base1, y, n);  // (1, 1 + n y)
            OrderElement ny = order.scale(y, n);
            int lhs_chain = b.shift(pumped, o.x);  // (1+x, 1+x+ny)
            int exchange =
                b.sym(b.shift(o.step, order.sub(order.add(one, ny), o.base)));  // (1+ny+x, 1+ny)
            int down = b.sym(pumped);                                           // (1+ny, 1)
            int to_one = b.trans(b.trans(lhs_chain, exchange), down);           // (1+x, 1)
            conclusions.push_back(b.sym(to_one));                               // (1, 1+x)
        } else {
            /* (base, base+x) -> (0, x) via the zero-touching pair (0, t). */
            if (o.base == order.zero()) {
                conclusions.push_back(o.step);
                continue;
            }
            const Oriented& z = oriented[static_cast<size_t>(zero_pair)];
            Int n = field.floor_ratio(field.from_int_coords(o.base.c),
                                      field.from_int_coords(z.x.c)) + 1;
            int pumped = b.pump(z.step, z.x, n);  // (0, n t)
            OrderElement nt = order.scale(z.x, n);
            int up = b.shift(o.step, order.sub(nt, o.base));  // (nt, nt + x)
            int back = b.sym(b.shift(pumped, x));             // (x + nt, x)
            conclusions.push_back(b.trans(b.trans(pumped, up), back));  // (0, x)
        }
    }
    b.d.conclusions = std::move(conclusions);
    return b.d;
}

ConeUniverse order_cone_universe(std::shared_ptr<const RealOrder> order, int64_t coord_bound) {
    if (coord_bound < 1) throw invalid_input_error("coordinate bound must be >= 1");
    const int d = order->degree();
    double approx = 1;
    for (int i = 0; i < d; ++i) approx *= static_cast<double>(2 * coord_bound + 1);
    if (approx > 2e6) throw resource_error("cone universe too large for the coordinate bound");
    if (coord_bound > 100000) throw resource_error("coordinate bound too large for int64 products");
    if (d > 8) throw resource_error("cone universe supports degree <= 8");

    /* Dense perfect index over the coordinate box and pure int64 operation
     * kernels: the closure fanout calls add/mul millions of times, so the
     * bignum layer stays out of this path. Products are safe in int64:
     * |raw convolution| <= d * C^2 and each reduction row multiplies by a
     * fixed minimal-polynomial coefficient. */
    struct ConeData {
        std::shared_ptr<const RealOrder> order;
        int64_t bound;
        int d;
        std::vector<int64_t> strides;           // mixed-radix over [-C..C]^d
        std::vector<std::vector<int64_t>> redrows;  // theta^k rows, k = d..2d-2
        std::vector<std::vector<int64_t>> elems;
        std::vector<int32_t> dense;             // box offset -> cone index or -1
        int64_t box_size = 1;

        int64_t offset_of(const int64_t* c) const {
            int64_t off = 0;
            for (int i = 0; i < d; ++i) off += (c[i] + bound) * strides[static_cast<size_t>(i)];
            return off;
        }
    };
    auto data = std::make_shared<ConeData>();
    data->order = order;
    data->bound = coord_bound;
    data->d = d;
    data->strides.assign(static_cast<size_t>(d), 1);
    for (int i = 1; i < d; ++i)
        data->strides[static_cast<size_t>(i)] =
            data->strides[static_cast<size_t>(i - 1)] * (2 * coord_bound + 1);
    data->box_size = data->strides[static_cast<size_t>(d - 1)] * (2 * coord_bound + 1);
    {
        const IntPolynomial& mp = order->field()->minimal_polynomial();
        std::vector<int64_t> cur(static_cast<size_t>(d), 0);
        for (int i = 0; i < d; ++i) cur[static_cast<size_t>(i)] = -static_cast<int64_t>(mp.coeff(i));
        for (int k = d; k <= 2 * d - 2; ++k) {
            data->redrows.push_back(cur);
            std::vector<int64_t> next(static_cast<size_t>(d), 0);
            for (int i = 0; i + 1 < d; ++i) next[static_cast<size_t>(i + 1)] = cur[static_cast<size_t>(i)];
            int64_t top = cur[static_cast<size_t>(d - 1)];
            if (top != 0)
                for (int i = 0; i < d; ++i)
                    next[static_cast<size_t>(i)] -= top * static_cast<int64_t>(mp.coeff(i));
            cur = std::move(next);
        }
    }

    /* One up-front refinement of the embedding makes every enumeration sign
     * decision a single interval evaluation: a nonzero algebraic integer
     * with conjugate magnitudes <= B has absolute value >= 1/B^(d-1). */
    const IntPolynomial& mp = order->field()->minimal_polynomial();
    Int maxc(0);
    for (int i = 0; i < mp.degree(); ++i) maxc = std::max(maxc, abs_int(mp.coeff(i)));
    Rat root_bound = Rat(1) + Rat(maxc);
    Rat conj_bound(0);
    Rat power(1);
    for (int i = 0; i < d; ++i) {
        conj_bound += Rat(coord_bound) * power;
        power *= root_bound;
    }
    Rat lower(1);
    for (int i = 0; i < d - 1; ++i) lower /= conj_bound;
    Rat width = lower / (Rat(coord_bound) * d * d * power);
    order->field()->root().interval_refined(width);

    data->dense.assign(static_cast<size_t>(data->box_size), -1);
    std::vector<int64_t> v(static_cast<size_t>(d), -coord_bound);
    while (true) {
        bool zero = std::all_of(v.begin(), v.end(), [](int64_t x) { return x == 0; });
        bool keep = zero;
        if (!zero) {
            std::vector<Int> coords(v.begin(), v.end());
            keep = order->sign(order->element(coords)) > 0;
        }
        if (keep) {
            data->dense[static_cast<size_t>(data->offset_of(v.data()))] =
                static_cast<int32_t>(data->elems.size());
            data->elems.push_back(v);
        }
        int i = d - 1;
        while (i >= 0 && v[static_cast<size_t>(i)] == coord_bound) v[static_cast<size_t>(i--)] = -coord_bound;
        if (i < 0) break;
        ++v[static_cast<size_t>(i)];
    }

    auto lookup = [data](const int64_t* c) -> std::optional<uint32_t> {
        for (int i = 0; i < data->d; ++i)
            if (c[i] > data->bound || c[i] < -data->bound) return std::nullopt;
        int32_t idx = data->dense[static_cast<size_t>(data->offset_of(c))];
        if (idx < 0) return std::nullopt;
        return static_cast<uint32_t>(idx);
    };
    auto add = [data, lookup](uint32_t a, uint32_t b) -> std::optional<uint32_t> {
        int64_t s[8];
        const auto& ca = data->elems[a];
        const auto& cb = data->elems[b];
        for (int i = 0; i < data->d; ++i) s[i] = ca[static_cast<size_t>(i)] + cb[static_cast<size_t>(i)];
        return lookup(s);
    };
    auto mul = [data, lookup](uint32_t a, uint32_t b) -> std::optional<uint32_t> {
        int64_t raw[16] = {0};
        const auto& ca = data->elems[a];
        const auto& cb = data->elems[b];
        const int d = data->d;
        for (int i = 0; i < d; ++i) {
            if (ca[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j < d; ++j)
                raw[i + j] += ca[static_cast<size_t>(i)] * cb[static_cast<size_t>(j)];
        }
        for (int k = 2 * d - 2; k >= d; --k) {
            if (raw[k] == 0) continue;
            const auto& row = data->redrows[static_cast<size_t>(k - d)];
            for (int i = 0; i < d; ++i) raw[i] += raw[k] * row[static_cast<size_t>(i)];
            raw[k] = 0;
        }
        return lookup(raw);
    };
    auto label = [data](uint32_t e) {
        std::vector<Int> c(data->elems[e].begin(), data->elems[e].end());
        return data->order->str({std::move(c)});
    };

    ConeUniverse cone{
        BoundedUniverse("S(" + order->spec_string() + "), |coords| <= " +
                            std::to_string(coord_bound),
                        static_cast<uint32_t>(data->elems.size()), add, mul, label),
        [data, lookup](const OrderElement& x) -> std::optional<uint32_t> {
            int64_t key[8];
            for (int i = 0; i < data->d; ++i) {
                if (x.c[static_cast<size_t>(i)] > data->bound ||
                    x.c[static_cast<size_t>(i)] < -data->bound)
                    return std::nullopt;
                key[i] = static_cast<int64_t>(x.c[static_cast<size_t>(i)]);
            }
            return lookup(key);
        },
        [data](uint32_t idx) {
            std::vector<Int> c(data->elems[idx].begin(), data->elems[idx].end());
            return OrderElement{std::move(c)};
        }};
    return cone;
}

}  // namespace semikit
