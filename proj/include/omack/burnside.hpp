#pragma once

#include "omack/insep.hpp"
#include "omack/matrix.hpp"
#include "omack/transfer.hpp"

#include <map>
#include <vector>

namespace omack {

// Element of the incomplete Burnside ring at a level: exact rational
// combination of admissible orbits level/K, keyed by the canonical
// level-conjugacy representative of K.
struct BurnsideElement {
    int level = -1;
    std::map<int, Rat> coeffs;

    BurnsideElement& drop_zeros();
    bool is_zero() const;
    bool operator==(const BurnsideElement& o) const { return level == o.level && coeffs == o.coeffs; }
    BurnsideElement operator+(const BurnsideElement& o) const;
    BurnsideElement operator-(const BurnsideElement& o) const;
    BurnsideElement scaled(const Rat& c) const;
};

BurnsideElement orbit_element(int level, int k);

// Conjugation-invariant function on the admissible subgroups, stored on
// conjugacy-class representatives.
struct ClassFunction {
    std::vector<int> domain; // sorted class-rep ids
    std::map<int, Rat> values;
    bool operator==(const ClassFunction& o) const { return domain == o.domain && values == o.values; }
};

// Admissible orbit classes at a level, sorted by (order, id): the basis of
// the Burnside ring at that level. With this order the mark matrix is
// upper triangular with nonzero diagonal.
std::vector<int> admissible_basis(const TransferSystem& ts, int level);

// Bilinear extension of the orbit product; defined for same-level elements.
BurnsideElement multiply(const TransferSystem& ts, const BurnsideElement& a, const BurnsideElement& b);

// Ghost coordinates of a top-level element: H -> |x^H| on the admissible
// class representatives.
ClassFunction marks(const TransferSystem& ts, const BurnsideElement& x);

// Primitive idempotent of the class labelled by the admissible class rep H,
// from the Mobius formula over the relation poset under H.
BurnsideElement idempotent(const TransferSystem& ts, int label);
// Same element by triangular back-substitution of marks(x) = delta_H.
BurnsideElement idempotent_oracle(const TransferSystem& ts, int label);

// Classical idempotent e_(K) of the complete rational Burnside ring,
// computed by inverting the full table of marks.
BurnsideElement classical_idempotent(LatticePtr lat, int class_rep);

// Verifies G/H = sum over K -> H of |N_G(K)|/|H| e_[K] exactly.
bool orbit_sum_identity_check(const TransferSystem& ts, int h);

// Basis inclusion of admissible orbits into the complete Burnside ring.
BurnsideElement include_complete(const TransferSystem& ts, const BurnsideElement& x);

// res^G_L on the Burnside ring, by double cosets.
BurnsideElement restrict_element(const TransferSystem& ts, const BurnsideElement& x, int l);

// tr: level H to an admissible target, H/K -> target/K.
BurnsideElement transfer_element(const TransferSystem& ts, const BurnsideElement& x, int target);

std::string element_str(const SubgroupLattice& lat, const BurnsideElement& x);

} // namespace omack
