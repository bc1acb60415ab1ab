#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semikit/intmatrix.hpp"
#include "semikit/numberfield.hpp"

namespace semikit {

using LatticeVector = std::vector<Int>;

/* gamma = (gamma_1..gamma_n), positive field elements of a shared real
 * field. Q-linear independence of the coordinates is not certified up
 * front: any nonzero integer vector with v . gamma = 0 raises
 * dependence_error at the point of use. */
class GammaForm {
public:
    GammaForm(std::shared_ptr<const NumberField> field, std::vector<FieldElement> coords);

    int n() const { return static_cast<int>(coords_.size()); }
    const std::shared_ptr<const NumberField>& field() const { return field_; }
    const FieldElement& coord(int i) const { return coords_[static_cast<size_t>(i)]; }

    FieldElement value(const LatticeVector& v) const;  // v . gamma
    /* Exact sign of v . gamma; 0 for a nonzero v is a dependence error. */
    int sign(const LatticeVector& v) const;
    /* sign(v . gamma - w . gamma) */
    int compare(const LatticeVector& v, const LatticeVector& w) const;

private:
    std::shared_ptr<const NumberField> field_;
    std::vector<FieldElement> coords_;
};

struct NiceCollection {
    std::vector<LatticeVector> vecs;
    int n() const { return static_cast<int>(vecs.size()); }
    bool operator==(const NiceCollection& o) const { return vecs == o.vecs; }
};

/* Columns are the collection vectors. */
IntMatrix collection_matrix(const NiceCollection& v);
NiceCollection standard_basis(int n);

struct NiceVerdict {
    bool ok = true;
    std::string reason;
};

/* |det| = 1 and every gamma-value positive. */
NiceVerdict is_nice(const GammaForm& g, const NiceCollection& v);

struct RefinementStep {
    enum class Kind { Permute, Subtract };
    Kind kind = Kind::Subtract;
    std::vector<int> perm;  // Permute: new[k] = old[perm[k]]
    int i = 0, j = 0;       // Subtract: v_i <- v_i - v_j, legal when v_i.g > v_j.g
    static RefinementStep subtract(int i, int j);
    static RefinementStep permute(std::vector<int> perm);
};

/* Applies one elementary refinement, checking legality exactly. */
NiceCollection apply_step(const GammaForm& g, const NiceCollection& v, const RefinementStep& s);

struct RefinementChain {
    NiceCollection start;
    std::vector<RefinementStep> steps;
    NiceCollection result;
};

struct MembershipCertificate {
    LatticeVector target;
    std::vector<Int> coefficients;  // nonnegative; sum coeff_i * v_i = target
};

struct ShrinkPairResult {
    std::vector<RefinementStep> steps;  // Subtract steps on pair-local indices 0, 1
    LatticeVector x1, x2;               // final pair
    /* Nonnegative 2x2 matrix: original pair = reconstruction * final pair. */
    IntMatrix reconstruction;
};

/* Alternating floor subtractions (the continued-fraction walk of the
 * two-vector case) until both gamma-values drop below delta. Requires
 * 0 < x1.g < x2.g and delta > 0. The larger value at least halves every
 * two rounds; this loop variant is asserted at runtime. */
ShrinkPairResult shrink_pair(const GammaForm& g, LatticeVector x1, LatticeVector x2,
                             const FieldElement& delta);

struct ShrinkSubsetResult {
    RefinementChain chain;
    std::vector<int> indices;  // the subset J, in processing order
    /* coefficients(r, c): original vecs[J[r]] = sum_c coefficients(r,c) * result vecs[J[c]],
     * all entries nonnegative. */
    IntMatrix coefficients;
};

/* Refine only the J-indexed vectors until each gamma-value is below delta,
 * leaving the rest untouched, with every original J-vector certified inside
 * the N-span of the refined J-vectors. |J| >= 2. */
ShrinkSubsetResult shrink_subset(const GammaForm& g, const NiceCollection& v, std::vector<int> J,
                                 const FieldElement& delta);

struct AbsorbResult {
    RefinementChain chain;
    MembershipCertificate certificate;
};

/* Refines v until e lies in the N-span, returning the chain and an exact
 * nonnegative certificate. Requires e nonzero with e.g > 0. Dispatches on
 * the number Q of negative coordinates of e in the current basis: Q=0 is
 * immediate; n=2 runs the continued-fraction walk; Q=1 runs the
 * shrink-and-eta-subtract construction; Q>=2 reduces Q by one pivot round
 * and recurses. */
AbsorbResult absorb(const GammaForm& g, const NiceCollection& v, const LatticeVector& e);

struct CoverResult {
    RefinementChain chain;
    std::vector<MembershipCertificate> certificates;  // one per target, against chain.result
};

/* Sequentially absorbs every target; earlier certificates are re-expressed
 * through later refinement steps (v_i = v_i' + v_j' under a subtraction). */
CoverResult cover(const GammaForm& g, const NiceCollection& w,
                  const std::vector<LatticeVector>& targets);

struct VerifyVerdict {
    bool ok = true;
    std::string diagnostics;
};

/* Full independent audit: replays the chain checking step legality and
 * niceness (|det| = 1, positive gamma-values) at every stage. Shares the
 * arithmetic layer with the construction code but none of its logic. */
VerifyVerdict verify_chain(const GammaForm& g, const RefinementChain& chain);
/* Checks sum coeff_i v_i = target with nonnegative integer coefficients. */
VerifyVerdict verify_membership(const GammaForm& g, const NiceCollection& v,
                                const MembershipCertificate& cert);

/* Experimental sampler for the open n=3 question: N-span containment
 * between nice collections without a refinement witness. Reports sampled
 * pairs where Sp_N(V) is contained in Sp_N(W) together with whether a
 * bounded search finds a refinement from V to W. No outcome promised. */
struct SpanProbe {
    NiceCollection v, w;
    bool span_contained = false;
    bool refinement_found = false;
    int depth_searched = 0;
};

std::vector<SpanProbe> probe_span_vs_refinement(const GammaForm& g, int samples, uint64_t seed,
                                                int max_depth);

}  // namespace semikit
