#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semikit/semiring.hpp"

namespace semikit {

/* An equivalence partition of {0..n-1}. Class ids are normalized by first
 * occurrence, so equal partitions compare equal as vectors. */
class CongruencePartition {
public:
    CongruencePartition() = default;
    static CongruencePartition discrete(uint32_t n);
    static CongruencePartition full(uint32_t n);
    /* Accepts arbitrary class ids and renumbers them. */
    static CongruencePartition from_class_ids(std::vector<uint32_t> raw);
    /* Classes as explicit element lists; elements not mentioned become
     * singletons. */
    static CongruencePartition from_classes(uint32_t n,
                                            const std::vector<std::vector<uint32_t>>& classes);

    uint32_t carrier_size() const { return static_cast<uint32_t>(class_of_.size()); }
    uint32_t class_count() const { return classes_; }
    uint32_t class_of(uint32_t e) const { return class_of_[e]; }
    bool same(uint32_t a, uint32_t b) const { return class_of_[a] == class_of_[b]; }
    bool is_discrete() const { return classes_ == carrier_size(); }
    std::vector<std::vector<uint32_t>> classes() const;

    bool operator==(const CongruencePartition& o) const { return class_of_ == o.class_of_; }
    /* True iff every class of *this is contained in a class of coarser. */
    bool refines(const CongruencePartition& coarser) const;
    const std::vector<uint32_t>& class_ids() const { return class_of_; }

private:
    std::vector<uint32_t> class_of_;
    uint32_t classes_ = 0;
};

using GeneratorPair = std::pair<uint32_t, uint32_t>;

struct CongruenceWitness {
    uint32_t a, b, r;
    std::string op;  // "add", "mul-right", "mul-left"
};

/* nullopt iff p is compatible with both operations. */
std::optional<CongruenceWitness> congruence_witness(const FiniteSemiring& s,
                                                    const CongruencePartition& p);
bool is_congruence(const FiniteSemiring& s, const CongruencePartition& p);

/* Least congruence containing the generator pairs: worklist over union-find,
 * FIFO in index order, so the output is reproducible. Empty gens give the
 * diagonal. */
CongruencePartition congruence_closure(const FiniteSemiring& s,
                                       const std::vector<GeneratorPair>& gens);

/* Join (least upper bound) in the congruence lattice. */
CongruencePartition congruence_join(const FiniteSemiring& s, const CongruencePartition& p,
                                    const CongruencePartition& q);

struct CongruenceInfo {
    CongruencePartition partition;
    std::vector<GeneratorPair> generators;  // a known (greedily pruned) generating set
    bool principal = false;                 // generated by one pair
    std::optional<GeneratorPair> principal_generator;
};

struct CongruenceLattice {
    std::vector<CongruenceInfo> congruences;  // finer partitions first, deterministic order
    const CongruenceInfo* find(const CongruencePartition& p) const;
};

struct EnumerationBudget {
    uint32_t max_carrier = 24;
    size_t max_congruences = 200000;
};

/* Every congruence of s: the join closure of the principal congruences plus
 * the diagonal. */
CongruenceLattice enumerate_congruences(const FiniteSemiring& s, const EnumerationBudget& budget = {});

struct PrincipalityReport {
    bool c_principal = false;
    size_t congruence_count = 0;
    /* A non-principal congruence when the verdict is negative. */
    std::optional<CongruenceInfo> witness;
};

PrincipalityReport check_c_principal(const FiniteSemiring& s, const EnumerationBudget& budget = {});

/* Searches for Q with 0 in Q, 1 not in Q, a+b in Q <=> a,b in Q and
 * ab in Q <=> a in Q or b in Q; these are exactly the congruence kernels of
 * surjections onto the Boolean semifield. Backtracking with constraint
 * propagation; returns the sorted kernel or nullopt. */
std::optional<std::vector<uint32_t>> boolean_quotient_kernel(const FiniteSemiring& s);

struct BorgerGrinbergReport {
    bool ring = false;
    std::optional<std::vector<uint32_t>> boolean_kernel;
    bool consistent = false;  // ring <=> no Boolean quotient
};

BorgerGrinbergReport bg_check(const FiniteSemiring& s);

}  // namespace semikit
