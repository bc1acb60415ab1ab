#pragma once

#include <string>
#include <vector>

#include "semikit/numeric.hpp"

namespace semikit {

/* Univariate polynomial over Z, coefficients stored lowest degree first.
 * The representation is normalized: no trailing zero coefficients, so the
 * zero polynomial has an empty coefficient vector and degree -1. */
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs);

    static IntPolynomial zero() { return IntPolynomial(); }
    static IntPolynomial constant(Int c);
    static IntPolynomial monomial(int degree, Int c = Int(1));
    /* Accepts e.g. "x^2-2", "x^3 - 2*x - 1", "7". Any single letter works
     * as the variable; mixing letters in one input is rejected. */
    static IntPolynomial parse(const std::string& text);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const Int& coeff(int i) const;   // 0 outside the support
    const Int& leading() const;      // defined only for nonzero polynomials
    const std::vector<Int>& coeffs() const { return coeffs_; }
    bool is_monic() const { return !is_zero() && leading() == 1; }

    IntPolynomial operator-() const;
    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    IntPolynomial scaled(const Int& c) const;
    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;
    int sign_at(const Rat& x) const;

    IntPolynomial derivative() const;
    Int content() const;             // gcd of coefficients, >= 0; 0 for zero poly
    IntPolynomial primitive_part() const;

    /* Quotient of exact division; throws consistency_error if it does not divide. */
    IntPolynomial divide_exact(const IntPolynomial& d) const;

    /* Largest squarefree divisor of the primitive part, with positive leading
     * coefficient. */
    IntPolynomial squarefree_part() const;

    /* gcd via primitive pseudo-remainder sequence; result primitive with
     * positive leading coefficient. */
    static IntPolynomial gcd(IntPolynomial a, IntPolynomial b);

    /* All rational roots (exact). Used by the cheap irreducibility tests. */
    std::vector<Rat> rational_roots() const;

    std::string str(const std::string& var = "x") const;

private:
    std::vector<Int> coeffs_;
    void normalize();
};

/* Signed pseudo-remainder: returns r with lc(d)^k * n = q*d + r for some k,
 * deg r < deg d. The sign convention is irrelevant to callers that take
 * primitive parts afterwards. */
IntPolynomial pseudo_rem(const IntPolynomial& n, const IntPolynomial& d);

}  // namespace semikit
