#pragma once

#include "omack/transfer.hpp"

#include <vector>

namespace omack {

// Partition of the subgroups induced by the hull map: two subgroups share
// a class iff their hulls are conjugate. Class labels are the canonical
// conjugacy-class representative of the (admissible) hull.
struct InsepPartition {
    std::vector<int> hull;  // subgroup id -> subgroup id
    std::vector<int> label; // subgroup id -> class label (a class-rep subgroup id)
    // (label, sorted members) in increasing label order
    std::vector<std::pair<int, std::vector<int>>> classes;

    const std::vector<int>& members_of(int label_rep) const;
    bool operator==(const InsepPartition& o) const {
        return hull == o.hull && label == o.label && classes == o.classes;
    }
};

// The minimal admissible subgroup containing J: the meet of all admissible
// supergroups.
int hull(const TransferSystem& ts, int j);

InsepPartition partition(const TransferSystem& ts);

// Independent route: classes are the fibers of the admissible-level mark
// vector J -> (L in admissibles -> |(G/L)^J|).
InsepPartition partition_by_marks(const TransferSystem& ts);

// L is above the class labelled [H] iff some member is contained in L.
bool is_above(const TransferSystem& ts, int l, int label);
bool is_above(const TransferSystem& ts, const InsepPartition& p, int l, int label);

struct TopSet {
    std::vector<int> members;              // the subgroups L cap gHg^-1 in the class, sorted
    std::vector<std::vector<int>> l_orbits; // partition into L-conjugation orbits
    std::vector<int> l_orbit_reps;          // minimal member per orbit, sorted
};
// Throws Error{NotAbove} when L is not above the class.
TopSet top_set(const TransferSystem& ts, int l, int label);
TopSet top_set(const TransferSystem& ts, const InsepPartition& p, int l, int label);

// Checks the G-set decomposition of a class into the conjugates of its
// under-H part: (g, K) -> gKg^-1 is a bijection from the balanced product
// over N_G(H). False indicates an implementation bug.
bool tombstone_check(const TransferSystem& ts, int label);

// Members K c H of the class labelled by H, i.e. one connected component
// of the class under inclusion.
std::vector<int> class_under_label(const TransferSystem& ts, int label);
std::vector<int> class_under_label(const TransferSystem& ts, const InsepPartition& p, int label);

// Pairs (j, k), j != k, inside the class with j -> k in the system.
std::vector<std::pair<int, int>> internal_transfers(const TransferSystem& ts, int label);
std::vector<std::pair<int, int>> internal_transfers(const TransferSystem& ts,
                                                    const InsepPartition& p, int label);

} // namespace omack
