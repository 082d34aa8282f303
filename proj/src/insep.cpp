#include "omack/insep.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace omack {

const std::vector<int>& InsepPartition::members_of(int label_rep) const {
    for (const auto& [rep, members] : classes)
        if (rep == label_rep) return members;
    throw Error(Error::Kind::NotAdmissible, "no inseparability class with that label");
}

int hull(const TransferSystem& ts, int j) {
    const SubgroupLattice& lat = *ts.lat;
    int acc = ts.top;
    for (int h : admissible_to_top(ts))
        if (lat.leq(j, h)) acc = lat.meet(acc, h);
    // The meet of admissible supergroups is admissible (Meet Lemma).
    if (!ts.rel[acc][ts.top]) throw Error(Error::Kind::Internal, "hull fell outside the admissibles");
    return acc;
}

namespace {

InsepPartition assemble(const TransferSystem& ts, const std::vector<int>& label) {
    InsepPartition p;
    p.label = label;
    p.hull.assign(ts.lat->size(), -1);
    for (int j = 0; j < ts.lat->size(); ++j)
        if (ts.lat->leq(j, ts.top)) p.hull[j] = hull(ts, j);
    std::map<int, std::vector<int>> classes;
    for (int j = 0; j < ts.lat->size(); ++j)
        if (label[j] >= 0) classes[label[j]].push_back(j);
    for (auto& [rep, members] : classes) {
        std::sort(members.begin(), members.end());
        p.classes.emplace_back(rep, members);
    }
    return p;
}

} // namespace

InsepPartition partition(const TransferSystem& ts) {
    const SubgroupLattice& lat = *ts.lat;
    std::vector<int> label(lat.size(), -1);
    for (int j = 0; j < lat.size(); ++j)
        if (lat.leq(j, ts.top)) label[j] = lat.class_rep(hull(ts, j));
    return assemble(ts, label);
}

InsepPartition partition_by_marks(const TransferSystem& ts) {
    const SubgroupLattice& lat = *ts.lat;
    std::vector<int> adm = admissible_to_top(ts);
    // Group subgroups by their fixed-point vector on admissible levels.
    std::map<std::vector<int>, std::vector<int>> fibers;
    for (int j = 0; j < lat.size(); ++j) {
        if (!lat.leq(j, ts.top)) continue;
        std::vector<int> marks;
        marks.reserve(adm.size());
        for (int l : adm) marks.push_back(lat.fixed_points(l, j));
        fibers[marks].push_back(j);
    }
    std::vector<int> label(lat.size(), -1);
    for (auto& [marks, members] : fibers) {
        // The label is the conjugacy class of the largest admissible member;
        // every fiber contains the common hull of its members.
        int best = -1;
        for (int j : members)
            if (ts.rel[j][ts.top] && (best < 0 || lat.order_of(j) > lat.order_of(best))) best = j;
        if (best < 0) throw Error(Error::Kind::Internal, "mark fiber without admissible member");
        for (int j : members) label[j] = lat.class_rep(best);
    }
    return assemble(ts, label);
}

bool is_above(const TransferSystem& ts, int l, int label) {
    return is_above(ts, partition(ts), l, label);
}

bool is_above(const TransferSystem& ts, const InsepPartition& p, int l, int label) {
    for (int k : p.members_of(label))
        if (ts.lat->leq(k, l)) return true;
    return false;
}

TopSet top_set(const TransferSystem& ts, int l, int label) {
    return top_set(ts, partition(ts), l, label);
}

TopSet top_set(const TransferSystem& ts, const InsepPartition& p, int l, int label) {
    const SubgroupLattice& lat = *ts.lat;
    const std::vector<int>& members = p.members_of(label);
    std::set<int> member_set(members.begin(), members.end());
    bool above = false;
    for (int k : members)
        if (lat.leq(k, l)) { above = true; break; }
    if (!above)
        throw Error(Error::Kind::NotAbove,
                    lat.subgroup_name(l) + " is not above the class of " + lat.subgroup_name(label));

    // Intersections L cap gHg^-1 that land in the class. Scanning double
    // coset representatives L\G/N_G(H) covers all distinct conjugates of H
    // seen by L; the equality with the full scan is exercised in tests.
    int h = label;
    std::set<int> found;
    for (int g : lat.double_cosets(l, lat.normalizer(h))) {
        int inter = lat.meet(l, lat.conj_sub(g, h));
        if (member_set.count(inter)) found.insert(inter);
    }
    TopSet t;
    t.members.assign(found.begin(), found.end());

    std::set<int> seen;
    for (int m : t.members) {
        if (seen.count(m)) continue;
        std::vector<int> orbit;
        for (int x : lat.subgroups[l].elements) {
            int c = lat.conj_sub(x, m);
            if (!seen.count(c) && found.count(c)) {
                orbit.push_back(c);
                seen.insert(c);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        t.l_orbit_reps.push_back(orbit.front());
        t.l_orbits.push_back(std::move(orbit));
    }
    return t;
}

std::vector<int> class_under_label(const TransferSystem& ts, int label) {
    return class_under_label(ts, partition(ts), label);
}

std::vector<int> class_under_label(const TransferSystem& ts, const InsepPartition& p, int label) {
    std::vector<int> out;
    for (int k : p.members_of(label))
        if (ts.lat->leq(k, label)) out.push_back(k);
    return out;
}

bool tombstone_check(const TransferSystem& ts, int label) {
    const SubgroupLattice& lat = *ts.lat;
    InsepPartition p = partition(ts);
    const std::vector<int>& members = p.members_of(label);
    std::vector<int> under = class_under_label(ts, label);

    // Balanced product |G x_{N} S| with the map (g, K) -> gKg^-1: collect
    // images and check the fiber over each image has exactly |N| pairs.
    int n_order = lat.order_of(lat.normalizer(label));
    std::map<int, int> fiber_size;
    for (int g = 0; g < lat.group.order; ++g)
        for (int k : under) ++fiber_size[lat.conj_sub(g, k)];

    std::set<int> image;
    for (auto& [img, cnt] : fiber_size) {
        if (cnt != n_order) return false; // not a free-and-balanced correspondence
        image.insert(img);
    }
    return image == std::set<int>(members.begin(), members.end());
}

std::vector<std::pair<int, int>> internal_transfers(const TransferSystem& ts, int label) {
    return internal_transfers(ts, partition(ts), label);
}

std::vector<std::pair<int, int>> internal_transfers(const TransferSystem& ts,
                                                    const InsepPartition& p, int label) {
    const std::vector<int>& members = p.members_of(label);
    std::vector<std::pair<int, int>> out;
    for (int j : members)
        for (int k : members)
            if (j != k && ts.rel[j][k]) out.emplace_back(j, k);
    return out;
}

} // namespace omack
