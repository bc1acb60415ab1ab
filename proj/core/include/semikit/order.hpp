#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semikit/bounded.hpp"
#include "semikit/intmatrix.hpp"
#include "semikit/numberfield.hpp"
#include "semikit/semiring.hpp"

namespace semikit {

/* An element of the order Z[theta], as integer coordinates on the power
 * basis 1, theta, ..., theta^(d-1). */
struct OrderElement {
    std::vector<Int> c;
    bool operator==(const OrderElement& o) const { return c == o.c; }
};

/* A monogenic real order Z[theta] with a fixed real embedding. Degree >= 2
 * by construction: the degree-1 case is plain Z, whose congruences are the
 * business of classify_nat_congruence, and the classification implemented
 * here assumes otherwise. */
class RealOrder : public std::enable_shared_from_this<RealOrder> {
public:
    static std::shared_ptr<const RealOrder> create(const IntPolynomial& poly, int root_index);
    static std::shared_ptr<const RealOrder> parse(const std::string& spec);  // "x^2-2@1"

    int degree() const { return field_->degree(); }
    const std::shared_ptr<const NumberField>& field() const { return field_; }
    std::string spec_string() const { return field_->spec_string(); }

    OrderElement zero() const { return element_from_int(0); }
    OrderElement one() const { return element_from_int(1); }
    OrderElement theta() const;
    OrderElement element_from_int(Int v) const;
    OrderElement element(std::vector<Int> coords) const;
    /* Accepts "w^2-3w+1" (integer coefficients) or a comma tuple "1,-3,1". */
    OrderElement parse_element(const std::string& text) const;

    OrderElement add(const OrderElement& a, const OrderElement& b) const;
    OrderElement sub(const OrderElement& a, const OrderElement& b) const;
    OrderElement neg(const OrderElement& a) const;
    OrderElement mul(const OrderElement& a, const OrderElement& b) const;
    OrderElement scale(const OrderElement& a, const Int& m) const;
    OrderElement abs(const OrderElement& a) const;
    /* Horner evaluation of an integer polynomial at a. */
    OrderElement eval_poly(const IntPolynomial& p, const OrderElement& a) const;

    int sign(const OrderElement& a) const;
    bool in_S(const OrderElement& a) const { return sign(a) >= 0; }
    Int floor(const OrderElement& a) const;
    FieldElement to_field(const OrderElement& a) const;
    std::string str(const OrderElement& a) const;

    /* Matrix of multiplication by a on the power basis. */
    IntMatrix mult_matrix(const OrderElement& a) const;
    /* Monic minimal polynomial of a over Q; integral because a is an
     * algebraic integer. */
    IntPolynomial min_poly_of(const OrderElement& a) const;

private:
    std::shared_ptr<const NumberField> field_;
    explicit RealOrder(std::shared_ptr<const NumberField> f) : field_(std::move(f)) {}
};

/* A nonzero ideal of the order as a full-rank sublattice in HNF. */
struct IdealLattice {
    IntMatrix hnf;  // d x d, lower triangular, canonical
    Int determinant;
    std::vector<OrderElement> generators;  // as supplied
    bool operator==(const IdealLattice& o) const { return hnf == o.hnf; }
};

/* HNF basis of the Z-span of {g * theta^i}; throws if all generators are
 * zero (the zero ideal has no finite quotient and stays out of scope). */
IdealLattice ideal_from_generators(const RealOrder& order, const std::vector<OrderElement>& gens);
bool ideal_contains(const IdealLattice& ideal, const OrderElement& x);

/* The k-ideal I_{>=0} of S corresponding to a ring ideal I. */
struct KIdeal {
    std::vector<OrderElement> k_generators;  // |x| for the supplied ring generators
    IdealLattice lattice;
};

KIdeal k_ideal_of(const RealOrder& order, const IdealLattice& ideal);
IdealLattice ring_ideal_of(const RealOrder& order, const std::vector<OrderElement>& k_generators);
bool k_ideal_contains(const RealOrder& order, const KIdeal& k, const OrderElement& x);

/* A congruence on S = Z[theta]_{>=0}: the diagonal, or a nonzero ideal
 * with a flavor bit. C_0(I) relates x ~ y iff |x-y| in I; C_1(I) relates
 * 0 only to itself. */
struct OrderCongruenceClass {
    bool trivial = true;
    std::optional<IdealLattice> ideal;
    int j = 1;
};

struct ClassifyOptions {
    bool cross_check = true;        // oracle soundness check via bounded closure
    int64_t coord_bound = 0;        // 0 = automatic
    uint64_t max_steps = 4'000'000;
    int soundness_samples = 150;
};

/* Classification of the congruence generated by pairs in S. Throws
 * invalid_input_error if a pair member lies outside S, consistency_error if
 * the bounded-closure oracle contradicts the classified relation. */
OrderCongruenceClass classify_congruence(const RealOrder& order,
                                         const std::vector<std::pair<OrderElement, OrderElement>>& gens,
                                         const ClassifyOptions& opts = {});

bool is_related(const RealOrder& order, const OrderCongruenceClass& cls, const OrderElement& x,
                const OrderElement& y);

/* Finite quotient tables: S/C_0(I) is R/I (via Smith normal form of the
 * ideal lattice), S/C_1(I) is (R/I) with a fresh additive identity
 * adjoined. Trivial class -> invalid_input_error (infinite quotient). */
FiniteSemiring quotient_semiring(const RealOrder& order, const OrderCongruenceClass& cls);

/* Pairs (j, j + x_i) for k-ideal generators x_i. */
std::vector<std::pair<OrderElement, OrderElement>> canonical_generators(
    const RealOrder& order, const OrderCongruenceClass& cls,
    const std::vector<OrderElement>& k_ideal_generators);

/* u f(u) = u g(u) + l with f, g over N and l > 0, obtained by splitting the
 * minimal polynomial of u; m is the least integer exceeding a f(a) + a g(a)
 * and n = m + l, so that m ~ n in any congruence relating a to a + u. */
struct IntegerRelation {
    IntPolynomial f, g;
    Int l;
    Int m, n;
};

IntegerRelation derive_integer_relation(const RealOrder& order, const OrderElement& a,
                                        const OrderElement& u);

/* The bounded slice {x in Z^d : |x_i| <= coord_bound, x >= 0} of S with
 * partial operations, plus index translation. */
struct ConeUniverse {
    BoundedUniverse universe;
    std::function<std::optional<uint32_t>(const OrderElement&)> index_of;
    std::function<OrderElement(uint32_t)> element_of;
};

ConeUniverse order_cone_universe(std::shared_ptr<const RealOrder> order, int64_t coord_bound);

/* Explicit derivations in the congruence lattice of S: a step derives one
 * related pair from generators by reflexivity, symmetry, transitivity,
 * adding an element of S to both sides, or multiplying both sides by an
 * element of S. A verified derivation is an exact membership witness for
 * its final pair in the generated congruence, with no bounded universe in
 * sight. */
struct CongruenceStep {
    enum class Rule { Generator, Reflexive, Symmetry, Transitivity, Shift, Multiply };
    Rule rule = Rule::Reflexive;
    int premise1 = -1, premise2 = -1;  // indices of earlier steps
    int generator_index = -1;
    OrderElement operand;  // shift amount or multiplier, an element of S
    OrderElement lhs, rhs;
};

struct CongruenceDerivation {
    std::vector<std::pair<OrderElement, OrderElement>> generators;
    std::vector<CongruenceStep> steps;
    /* indices of the steps whose pairs are the advertised conclusions */
    std::vector<int> conclusions;
};

struct DerivationVerdict {
    bool ok = true;
    std::string diagnostics;
};

/* Replays every rule application with exact arithmetic. */
DerivationVerdict verify_derivation(const RealOrder& order, const CongruenceDerivation& d);

/* Constructs a derivation of every canonical generator pair (j, j + x_i)
 * of the classified congruence from the original generator pairs, following
 * the I_x algebra: multiply a pair down below 1 (or up past the target),
 * then pump with geometric doubling. Throws consistency_error if the
 * construction fails, which would mean the classification itself is wrong. */
CongruenceDerivation derive_canonical_membership(
    const RealOrder& order, const std::vector<std::pair<OrderElement, OrderElement>>& gens,
    const OrderCongruenceClass& cls, const std::vector<OrderElement>& k_ideal_generators);

}  // namespace semikit
