#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semikit/congruence.hpp"
#include "semikit/semiring.hpp"

namespace semikit {

/* A finite enumerated slice of an infinite semiring with partial operations:
 * an operation is undefined exactly when its true result falls outside the
 * slice. Closure over such a slice is sound for "related" and says nothing
 * about "unrelated". */
class BoundedUniverse {
public:
    using PartialOp = std::function<std::optional<uint32_t>(uint32_t, uint32_t)>;
    using LabelFn = std::function<std::string(uint32_t)>;

    BoundedUniverse(std::string description, uint32_t size, PartialOp add, PartialOp mul,
                    LabelFn label)
        : description_(std::move(description)), size_(size), add_(std::move(add)),
          mul_(std::move(mul)), label_(std::move(label)) {}

    uint32_t size() const { return size_; }
    const std::string& description() const { return description_; }
    std::optional<uint32_t> add(uint32_t a, uint32_t b) const { return add_(a, b); }
    std::optional<uint32_t> mul(uint32_t a, uint32_t b) const { return mul_(a, b); }
    std::string label(uint32_t e) const { return label_(e); }

    /* B[X] truncated at degree <= degree_bound; the element index is the
     * support bitmask, so index 0 is the zero polynomial and index 1 is 1. */
    static BoundedUniverse bool_poly(int degree_bound);
    /* N truncated at <= max_value; index == value. */
    static BoundedUniverse naturals(uint32_t max_value);

private:
    std::string description_;
    uint32_t size_;
    PartialOp add_, mul_;
    LabelFn label_;
};

struct BoundedClosureOptions {
    uint64_t max_steps = 50'000'000;
    /* When nonempty, stop as soon as every listed pair is related. */
    std::vector<GeneratorPair> stop_when_related;
    /* Optional element tiering (0 = hot). Consequence pairs whose members
     * are all tier 0 are processed before the rest; within a tier the order
     * is FIFO, so runs stay deterministic. The fixpoint partition does not
     * depend on this; it only decides how early the interesting merges
     * happen under a step budget. */
    std::function<int(uint32_t)> tier_of;
};

struct BoundedClosureResult {
    CongruencePartition partition;
    bool reached_fixpoint = false;   // worklist drained
    bool budget_exhausted = false;
    bool queries_related = false;    // meaningful when stop_when_related given
    uint64_t steps = 0;
};

/* Fixpoint of the one-sided closure rules restricted to operation
 * applications that stay inside the universe. Every reported relation lies
 * in the true congruence of the ambient semiring. */
BoundedClosureResult bounded_closure(const BoundedUniverse& u,
                                     const std::vector<GeneratorPair>& gens,
                                     const BoundedClosureOptions& opts = {});

/* Classification of the semiring congruence on N generated by integer
 * pairs: either trivial, or the relation {x = y, or x,y >= n and
 * x == y mod k}. The formula is asserted, not assumed: every call
 * cross-checks against a bounded closure and throws consistency_error on
 * any mismatch. */
struct NatCongruenceClass {
    bool trivial = true;
    uint64_t n = 0, k = 0;
};

NatCongruenceClass classify_nat_congruence(const std::vector<std::pair<uint64_t, uint64_t>>& gens);

/* Desk-scale consistency check for the congruence of B[X] generated by
 * {X^i+1 ~ X^j+1 : 1 <= i < j <= max_gen}: with degree bound degree_bound,
 * reports whether the bounded closure relates X^(max_gen+1)+1 to
 * X^(max_gen+2)+1 (expected: no). A custom query pair may be supplied. */
struct BxReport {
    uint32_t max_gen = 0;
    int degree_bound = 0;
    BoolPolynomial query_lhs, query_rhs;
    bool related = false;
    bool reached_fixpoint = false;
    uint64_t steps = 0;
    size_t generator_count = 0;
    std::string caveat;  // states the one-sidedness of the check
};

BxReport check_bx_nonrelation(uint32_t max_gen, int degree_bound, uint64_t max_steps = 50'000'000,
                              std::optional<std::pair<BoolPolynomial, BoolPolynomial>> query =
                                  std::nullopt,
                              std::vector<std::pair<BoolPolynomial, BoolPolynomial>> extra_gens = {});

}  // namespace semikit
