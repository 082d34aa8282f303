#pragma once

#include "omack/burnside.hpp"
#include "omack/insep.hpp"
#include "omack/matrix.hpp"
#include "omack/span.hpp"

#include <map>
#include <string>
#include <vector>

namespace omack {

// A rational incomplete Mackey functor as a Lewis diagram: a vector space
// per level with restriction, admissible transfer and conjugation matrices.
// `family_top` cuts the diagram down to the family of subgroups
// subconjugate to it; ordinary functors have family_top = the whole group.
//
// Matrices act on column vectors; res[(l,k)] maps M(G/l) -> M(G/k) for
// k <= l, tr[(k,l)] maps M(G/k) -> M(G/l) for k -> l in the system, and
// conj[(g,l)] maps M(G/l) -> M(G/glg^-1).
struct MackeyFunctor {
    TransferSystem ts;
    int family_top = -1;
    std::vector<int> levels;    // subgroup ids in the family, sorted
    std::vector<int> dims;      // indexed by subgroup id; 0 off-family
    std::map<std::pair<int, int>, QMatrix> res;
    std::map<std::pair<int, int>, QMatrix> tr;
    std::map<std::pair<int, int>, QMatrix> conj;
    std::vector<std::vector<std::string>> basis_names; // optional, by id

    bool in_family(int l) const;
    int dim(int l) const { return dims[l]; }
    const QMatrix& res_at(int l, int k) const;
    const QMatrix& tr_at(int k, int l) const;
    const QMatrix& conj_at(int g, int l) const;
    bool has_tr(int k, int l) const { return tr.count({k, l}) > 0; }
};

// Skeleton with the right level set and all-zero dimensions; maps filled
// with empty matrices.
MackeyFunctor zero_mackey(const TransferSystem& ts, int family_top = -1);

struct MackeyViolation {
    std::string what;
};

// Exhaustive axiom check: functoriality of res/tr, the conjugation action
// and its compatibilities, inner conjugations trivial, and the double
// coset rule for every admissible (transfer, restriction) pair. Shape
// errors (missing or mis-sized matrices) throw Error{DimensionMismatch};
// axiom failures come back as data.
std::vector<MackeyViolation> validate_mackey(const MackeyFunctor& m);

// The Burnside Mackey functor of the system: level L has the admissible
// orbit basis, transfers are induction, restrictions are double cosets.
MackeyFunctor burnside_mackey(const TransferSystem& ts, int family_top = -1);

// The functor represented by G/K: level L is free on the span basis from
// G/K to G/L, structure maps are span composition.
MackeyFunctor represented_mackey(const TransferSystem& ts, int k);

// Matrix of an arbitrary basis span under a Mackey functor
// (tr-part after conjugation after res-part).
QMatrix matrix_of_span(const MackeyFunctor& m, const Span& s);

// Action of a top-level Burnside element on each level of M (through
// restriction of x, each orbit L/J acting as tr o res). Throws
// Error{InadmissibleAction} naming the orbit if a required transfer
// matrix is absent.
std::map<int, QMatrix> act(const TransferSystem& ts, const BurnsideElement& x, const MackeyFunctor& m);

struct SplitSummand {
    int label = -1;
    MackeyFunctor part;
    std::map<int, QMatrix> inclusion; // summand coords -> M coords per level
};
struct SplitResult {
    std::vector<SplitSummand> summands;
    InsepPartition partition;
};
// Splits M by the primitive idempotents. Verifies projector algebra,
// commutation with the structure maps and levelwise reassembly; any
// failure is an Error{Internal} since the theory guarantees them.
SplitResult split(const TransferSystem& ts, const MackeyFunctor& m);

MackeyFunctor restrict_to_family(const MackeyFunctor& m, int h);

bool is_class_functor(const TransferSystem& ts, const InsepPartition& p, int label,
                      const MackeyFunctor& m);

// Per-level block data of the closed-form extensions: one block per
// L-conjugation orbit of the top set, with the coinvariant quotient (for
// induction) and the fixed-point basis (for coinduction) of the
// N_L(rep)-action.
struct ClassBlocks {
    std::vector<int> reps;
    std::vector<int> n_l; // N_L(rep) subgroup id
    std::vector<QuotientSpace> coinv;
    std::vector<QMatrix> fixed;
    std::vector<int> qoff, foff;
    int qdim = 0, fdim = 0;
};
ClassBlocks class_blocks(const TransferSystem& ts, const InsepPartition& p, int label,
                         const MackeyFunctor& m_class, int l);

// Closed-form left/right extension of a class-supported functor to the
// levels above the class: blockwise coinvariants (induction) or fixed
// points (coinduction) over the top-set orbits.
MackeyFunctor induct_class(const TransferSystem& ts, int label, const MackeyFunctor& m);
MackeyFunctor coinduct_class(const TransferSystem& ts, int label, const MackeyFunctor& m);

// Independent oracles: raw coend (quotient of spans tensor values by the
// bimodule relations) and raw end (natural families), computed by exact
// linear algebra. Slow; meant for cross-checking the closed forms.
struct OracleLevel {
    std::vector<int> block_member;         // class member per ambient block
    std::vector<std::vector<Span>> spans;  // span list per block
    std::vector<int> offset;               // ambient offset per block
    int ambient_dim = 0;
    QuotientSpace quotient; // coend
    QMatrix kernel;         // end: ambient x dim basis of the solution space

    int index_of(int member, const Span& s, int mrow, const MackeyFunctor& m) const;
};
struct ClassExtension {
    MackeyFunctor f;
    std::map<int, OracleLevel> internals;
};
ClassExtension induct_class_coend_full(const TransferSystem& ts, int label, const MackeyFunctor& m);
ClassExtension coinduct_class_end_full(const TransferSystem& ts, int label, const MackeyFunctor& m);
MackeyFunctor induct_class_coend(const TransferSystem& ts, int label, const MackeyFunctor& m);
MackeyFunctor coinduct_class_end(const TransferSystem& ts, int label, const MackeyFunctor& m);

// Levelwise maps A -> B indexed by subgroup id.
using MackeyMap = std::map<int, QMatrix>;

bool maps_commute(const MackeyFunctor& a, const MackeyFunctor& b, const MackeyMap& phi);
bool is_mackey_iso(const MackeyFunctor& a, const MackeyFunctor& b, const MackeyMap& phi);

// Canonical comparison maps (verified, not searched):
//  - counit Ind(res M) -> M: sums of transfers; an isomorphism exactly
//    when M is in the image of induction.
MackeyMap counit_maps(const TransferSystem& ts, int label, const MackeyFunctor& ind_res,
                      const MackeyFunctor& m);
//  - comparison of the coend/end oracles with the closed forms; both maps
//    are built from spans acting through the closed-form functor.
MackeyMap coend_comparison(const TransferSystem& ts, int label, const ClassExtension& coend,
                           const MackeyFunctor& closed, const MackeyFunctor& m_class);
MackeyMap end_comparison(const TransferSystem& ts, int label, const MackeyFunctor& closed,
                         const ClassExtension& end_oracle, const MackeyFunctor& m_class);

// Frobenius composite Ind(res M) -> M -> CoInd(res M): invertible at every
// level when M vanishes off the above-set of the class.
bool frobenius_check(const TransferSystem& ts, int label, const MackeyFunctor& m);

// The under-H data of a class functor over the normalizer N = N_G(H):
// levels K <= H in the class, restriction/transfer among them and the
// conjugation action of N.
struct NormalizerClassData {
    int label = -1;
    int normalizer = -1;
    std::vector<int> levels;
    TransferSystem restricted; // i*_N of the system
    std::map<int, int> dims;
    std::map<std::pair<int, int>, QMatrix> res;
    std::map<std::pair<int, int>, QMatrix> tr; // internal transfers only
    std::map<std::pair<int, int>, QMatrix> conj; // (n, K) for n in N
    bool has_internal_transfers = false;
};
NormalizerClassData restrict_to_normalizer(const TransferSystem& ts, int label,
                                           const MackeyFunctor& m);
// Checks that conjugation transport from the under-H data recovers every
// map of the class functor.
bool normalizer_roundtrip_check(const TransferSystem& ts, int label, const MackeyFunctor& m,
                                const NormalizerClassData& data);

// Direct sum with block-diagonal structure maps (for reassembly checks).
MackeyFunctor direct_sum(const std::vector<MackeyFunctor>& parts);

bool mackey_equal(const MackeyFunctor& a, const MackeyFunctor& b);

} // namespace omack
