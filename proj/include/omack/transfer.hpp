#pragma once

#include "omack/lattice.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace omack {

// A transfer system: a partial order on the subgroups of `top` refining
// inclusion, closed under conjugation (by elements of top) and restriction.
// `top` is the whole group for ordinary systems and a subgroup for
// restrictions i_H^* of a system.
struct TransferSystem {
    LatticePtr lat;
    int top = -1;
    std::vector<std::vector<bool>> rel; // rel[k][h] <=> k -> h

    bool has(int k, int h) const { return rel[k][h]; }
    // Non-reflexive pairs in canonical (k, h) order; the identity of the
    // system for deduplication and ordering.
    std::vector<std::pair<int, int>> pairs() const;
    bool same_relation(const TransferSystem& o) const { return rel == o.rel; }
    bool contained_in(const TransferSystem& o) const;
};

struct TsViolation {
    enum class Kind { Refines, Reflexive, Transitive, Conjugation, Restriction };
    Kind kind;
    int k = -1, h = -1, witness = -1; // witness: g element or L subgroup id
    std::string describe(const SubgroupLattice& lat) const;
};

// Empty result means the relation is a valid transfer system. Violations
// are data, not errors.
std::vector<TsViolation> validate(const TransferSystem& ts);

TransferSystem minimal_system(LatticePtr lat, int top = -1);
TransferSystem maximal_system(LatticePtr lat, int top = -1);

// Least transfer system containing the seed pairs: closure under
// reflexivity, conjugation, restriction and transitivity.
// Throws Error{PairNotNested} if some seed (k, h) does not satisfy k <= h.
TransferSystem generate(LatticePtr lat, const std::vector<std::pair<int, int>>& seeds,
                        int top = -1);

// i_H^*: the restriction of the system to Sub(H).
TransferSystem restrict_to_subgroup(const TransferSystem& ts, int h);

// All transfer systems on the full group, deduplicated and ordered by
// (number of non-reflexive pairs, lexicographic pair list).
std::vector<TransferSystem> enumerate_all(LatticePtr lat, int jobs = 0);
std::vector<TransferSystem> enumerate_all_serial(LatticePtr lat);
// Reference oracle: filters every subset of the nested pairs through
// validate. Only for small groups (throws Error{GroupTooLarge} when the
// number of nested pairs exceeds 26).
std::vector<TransferSystem> enumerate_all_powerset(LatticePtr lat, int jobs = 0);

// Disk-like systems are generated by their transfers into the top group.
bool is_disklike(const TransferSystem& ts);
// Largest disk-like system contained in ts.
TransferSystem maximal_disklike(const TransferSystem& ts);

// Subgroups transferring to the top, sorted; closed under meets and
// conjugation, with a minimal element.
std::vector<int> admissible_to_top(const TransferSystem& ts);

// Mobius function of the relation poset: mu(k, h) = sum_i (-1)^i c_i with
// c_i the number of strict chains k -> ... -> h with i steps.
struct MobiusTable {
    std::map<std::pair<int, int>, long long> mu;
    long long at(int k, int h) const;
};
MobiusTable mobius(const TransferSystem& ts);

} // namespace omack
