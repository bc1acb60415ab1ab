#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "semikit/intpoly.hpp"
#include "semikit/realroot.hpp"

namespace semikit {

class NumberField;

/* An element of Q(theta), stored as rational coordinates on the power basis
 * 1, theta, ..., theta^(d-1). Elements are immutable; all operations return
 * fresh values and are safe to call concurrently. */
class FieldElement {
public:
    FieldElement() = default;

    const std::vector<Rat>& coords() const { return c_; }
    const std::shared_ptr<const NumberField>& field() const { return field_; }
    bool is_zero() const;
    bool is_rational() const;  // all coordinates beyond the constant vanish
    Rat rational_value() const;

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement scaled(const Rat& r) const;
    bool operator==(const FieldElement& o) const;

    FieldElement inverse() const;
    /* Exact sign of the real value under the field's embedding. */
    int sign() const;
    /* Largest integer <= the real value. */
    Int floor() const;
    /* A rational enclosure [lo, hi] of the real value with hi - lo < width. */
    std::pair<Rat, Rat> enclosure(const Rat& width) const;

    std::string str(const std::string& var = "w") const;

private:
    friend class NumberField;
    std::shared_ptr<const NumberField> field_;
    std::vector<Rat> c_;
    FieldElement(std::shared_ptr<const NumberField> f, std::vector<Rat> c);
};

/* Q(theta) for a chosen real root theta of a monic integer polynomial.
 *
 * Exactness of the zero test rests on the minimal polynomial being
 * irreducible over Q. Full factorization is out of scope, so construction
 * performs the cheap necessary tests only: squarefreeness, no rational
 * roots for degree >= 2 (which is a complete test up to degree 3). Callers
 * supplying reducible polynomials of degree >= 4 get undefined signs. */
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    /* poly must be monic of degree >= 1; root_index selects among the real
     * roots in increasing order. */
    static std::shared_ptr<const NumberField> create(const IntPolynomial& poly, int root_index);
    /* "x^2-2@1" -> field defined by x^2-2, root index 1 (the positive root). */
    static std::shared_ptr<const NumberField> parse(const std::string& spec);

    int degree() const { return degree_; }
    const IntPolynomial& minimal_polynomial() const { return minpoly_; }
    const RealRoot& root() const { return root_; }
    int root_index() const { return root_index_; }
    std::string spec_string() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement theta() const;
    FieldElement from_rational(const Rat& r) const;
    FieldElement from_coords(std::vector<Rat> coords) const;
    FieldElement from_int_coords(const std::vector<Int>& coords) const;
    /* Polynomial in the field generator with rational coefficients, e.g.
     * "w^2-1", "1/2w+3". Degrees >= d are reduced. */
    FieldElement parse_element(const std::string& text) const;

    /* floor(a / b) for b > 0, decided exactly. */
    Int floor_ratio(const FieldElement& a, const FieldElement& b) const;
    /* sign(a - b) */
    int compare(const FieldElement& a, const FieldElement& b) const;

private:
    IntPolynomial minpoly_;
    RealRoot root_;
    int degree_ = 0;
    int root_index_ = 0;
    /* theta^k for k in [d, 2d-2], written on the power basis. */
    std::vector<std::vector<Int>> high_power_rows_;

    /* Cached rational enclosures of 1, theta, ..., theta^(d-1), rebuilt
     * lazily as the isolating interval narrows. The coarse tier is frozen
     * at a moderate depth so that the bulk of sign queries never touch the
     * arbitrarily deep endpoints the fine tier accumulates. Semantically
     * everything stays immutable; this is a guarded memo. */
    struct EnclosureCache {
        Rat lo{0}, hi{-1};  // lo > hi marks "not built"
        std::vector<std::pair<Rat, Rat>> powers;
    };
    mutable std::mutex cache_mu_;
    mutable EnclosureCache coarse_, fine_;

    void rebuild_cache(EnclosureCache& cache, const Rat& lo, const Rat& hi) const;
    /* +1/-1 when the cached enclosure decides the sign, 0 when it straddles. */
    int cached_eval_sign(const EnclosureCache& cache, const std::vector<Rat>& coords) const;
    std::pair<Rat, Rat> cached_eval_interval(const EnclosureCache& cache,
                                             const std::vector<Rat>& coords) const;
    int sign_of(const std::vector<Rat>& coords) const;
    std::pair<Rat, Rat> enclosure_of(const std::vector<Rat>& coords, const Rat& width) const;

    NumberField(IntPolynomial poly, RealRoot root, int root_index);
    std::vector<Rat> reduce(std::vector<Rat> raw) const;
    friend class FieldElement;
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
};

}  // namespace semikit
