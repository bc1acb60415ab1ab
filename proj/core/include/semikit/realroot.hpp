#pragma once

#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "semikit/intpoly.hpp"

namespace semikit {

/* A real algebraic number: a squarefree integer polynomial together with an
 * isolating interval with rational endpoints containing exactly one of its
 * real roots. A degenerate interval (lo == hi) encodes an exact rational
 * root.
 *
 * The visible value never changes; the interval only narrows. Narrowing is
 * cached inside a shared representation under a mutex, so concurrent
 * readers are fine and refinement work is never repeated. */
class RealRoot {
public:
    const IntPolynomial& polynomial() const;

    std::pair<Rat, Rat> interval() const;
    /* Narrow until hi - lo < width (no-op for exact roots). */
    std::pair<Rat, Rat> interval_refined(const Rat& width) const;
    void refine_steps(int bisections) const;

    bool is_exact() const;
    Rat exact_value() const;  // only when is_exact()

    /* Sturm count of polynomial() roots in (a, b]. Exposed for tests. */
    static int count_roots(const IntPolynomial& squarefree, const Rat& a, const Rat& b);

private:
    struct Rep;
    std::shared_ptr<Rep> rep_;
    explicit RealRoot(std::shared_ptr<Rep> rep) : rep_(std::move(rep)) {}
    friend std::vector<RealRoot> isolate_real_roots(const IntPolynomial& p);
};

/* All distinct real roots of p in increasing order. p must be nonzero; the
 * squarefree part is taken internally, so multiplicities are ignored. */
std::vector<RealRoot> isolate_real_roots(const IntPolynomial& p);

}  // namespace semikit
