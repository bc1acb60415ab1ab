#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace semikit {

class CongruencePartition;

/* A finite semiring as explicit operation tables. Elements are dense
 * indices 0..size-1; labels are cosmetic. Instances are immutable and safe
 * to share across threads. */
class FiniteSemiring {
public:
    FiniteSemiring() = default;
    /* Checks table shape and index ranges only; algebraic axioms are the
     * business of validate_axioms. */
    static FiniteSemiring from_tables(uint32_t size, std::vector<uint32_t> add,
                                      std::vector<uint32_t> mul, uint32_t zero, uint32_t one,
                                      std::vector<std::string> labels = {});

    uint32_t size() const { return size_; }
    uint32_t zero() const { return zero_; }
    uint32_t one() const { return one_; }
    uint32_t add(uint32_t a, uint32_t b) const { return add_[a * size_ + b]; }
    uint32_t mul(uint32_t a, uint32_t b) const { return mul_[a * size_ + b]; }
    const std::string& label(uint32_t i) const { return labels_[i]; }
    const std::vector<uint32_t>& add_table() const { return add_; }
    const std::vector<uint32_t>& mul_table() const { return mul_; }

    std::string name() const { return name_; }
    FiniteSemiring with_name(std::string n) const;

private:
    uint32_t size_ = 0, zero_ = 0, one_ = 0;
    std::vector<uint32_t> add_, mul_;
    std::vector<std::string> labels_;
    std::string name_;
};

struct AxiomViolation {
    std::string axiom;                 // e.g. "left-distributivity"
    std::array<uint32_t, 3> witness;   // offending triple (unused slots = 0)
    std::string detail;
};

/* Every violated axiom with a witnessing triple; empty iff the tables form
 * a semiring (commutative addition, absorbing zero, two-sided identity,
 * associative both ways, distributive on both sides). Multiplication is
 * not required to be commutative. */
std::vector<AxiomViolation> validate_axioms(const FiniteSemiring& s);
/* Throws invalid_input_error naming the first violation. */
void require_valid(const FiniteSemiring& s);
bool is_valid(const FiniteSemiring& s);

/* True iff every element has an additive inverse. */
bool is_ring(const FiniteSemiring& s);

/* Constructors for the catalog. */
FiniteSemiring make_boolean();
/* The quotient of N by n ~ n+k: carrier {0..n+k-1}. truncnat(0,m) is Z/m. */
FiniteSemiring make_truncated_nat(uint32_t n, uint32_t k);
FiniteSemiring make_zmod(uint32_t m);
/* Chain {0..b-1}, addition = max, multiplication = min, zero = 0,
 * one = b-1. This is the convention under which the b-element minmax chain
 * is c-principal exactly for b <= 3 (checked by enumeration in the tests). */
FiniteSemiring make_minmax(uint32_t b);
FiniteSemiring make_product(const FiniteSemiring& s, const FiniteSemiring& t);
/* Adjoins omega with omega + x = x and omega * x = omega. The result's
 * additive identity is omega (appended as the last index); the old zero
 * becomes an ordinary element. */
FiniteSemiring make_star(const FiniteSemiring& s);
/* Quotient by a congruence; throws with a witnessing pair if p is not one. */
FiniteSemiring make_quotient(const FiniteSemiring& s, const CongruencePartition& p);

/* Parses "boolean", "minmax:4", "truncnat:2:3", "zmod:6", "star:<spec>",
 * "product:<spec>*<spec>". */
FiniteSemiring catalog_get(const std::string& spec);
/* The fixed example catalog the test and acceptance suites sweep. */
std::vector<FiniteSemiring> default_catalog();

/* An element of B[X]: the support set of a {0,1}-coefficient polynomial. */
class BoolPolynomial {
public:
    BoolPolynomial() = default;
    explicit BoolPolynomial(std::set<uint32_t> support) : support_(std::move(support)) {}
    static BoolPolynomial one() { return BoolPolynomial({0}); }
    static BoolPolynomial xpow(uint32_t n) { return BoolPolynomial({n}); }

    const std::set<uint32_t>& support() const { return support_; }
    bool is_zero() const { return support_.empty(); }
    int degree() const { return support_.empty() ? -1 : static_cast<int>(*support_.rbegin()); }

    friend BoolPolynomial operator+(const BoolPolynomial& a, const BoolPolynomial& b);
    friend BoolPolynomial operator*(const BoolPolynomial& a, const BoolPolynomial& b);
    bool operator==(const BoolPolynomial& o) const { return support_ == o.support_; }
    bool operator<(const BoolPolynomial& o) const { return support_ < o.support_; }

    /* Bitmask encoding, defined for degree <= 63. */
    uint64_t mask() const;
    static BoolPolynomial from_mask(uint64_t mask);

    std::string str() const;

private:
    std::set<uint32_t> support_;
};

/* A trichotomy assignment p: R -> {-1, 0, +1} on a finite ring. */
struct PositivityMap {
    std::vector<int8_t> values;
};

struct PositivityViolation {
    std::string axiom;
    std::array<uint32_t, 2> witness;
};

/* Checks p(0)=0, p(1)=1, p(xy)=p(x)p(y), and p(x+y)=-1 => p(x)=-1 or
 * p(y)=-1. Empty iff p is a positivity function. */
std::vector<PositivityViolation> validate_positivity(const FiniteSemiring& ring,
                                                     const PositivityMap& p);

/* The induced subsemiring on {x : p(x) >= 0}. Requires ring to be a ring
 * and p valid; throws invalid_input_error with a witness otherwise.
 * Returns the subsemiring and the carrier-index embedding. */
std::pair<FiniteSemiring, std::vector<uint32_t>> positive_subsemiring(const FiniteSemiring& ring,
                                                                      const PositivityMap& p);

}  // namespace semikit
