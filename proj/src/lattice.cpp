#include "omack/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace omack {

namespace {

uint64_t close_under_ops(const FiniteGroup& g, uint64_t seed) {
    uint64_t cur = seed | 1; // identity is element 0
    for (;;) {
        uint64_t next = cur;
        for (int a = 0; a < g.order; ++a) {
            if (!((cur >> a) & 1)) continue;
            next |= uint64_t(1) << g.inv[a];
            for (int b = 0; b < g.order; ++b)
                if ((cur >> b) & 1) next |= uint64_t(1) << g.mul[a][b];
        }
        if (next == cur) return cur;
        cur = next;
    }
}

std::vector<int> mask_elements(uint64_t m) {
    std::vector<int> v;
    for (int i = 0; i < 64; ++i)
        if ((m >> i) & 1) v.push_back(i);
    return v;
}

} // namespace

int SubgroupLattice::join(int a, int b) const {
    return id_of_mask(close_under_ops(group, subgroups[a].mask | subgroups[b].mask));
}

int SubgroupLattice::id_of_mask(uint64_t mask) const {
    auto it = mask_to_id_.find(mask);
    if (it == mask_to_id_.end()) throw Error(Error::Kind::Internal, "element set is not a subgroup");
    return it->second;
}

int SubgroupLattice::id_of_elements(const std::vector<int>& elems) const {
    uint64_t m = 0;
    for (int e : elems) {
        if (e < 0 || e >= group.order) throw Error(Error::Kind::Parse, "subgroup element out of range");
        m |= uint64_t(1) << e;
    }
    auto it = mask_to_id_.find(m);
    if (it == mask_to_id_.end()) throw Error(Error::Kind::Parse, "element list is not a subgroup");
    return it->second;
}

std::vector<int> SubgroupLattice::class_members(int rep) const {
    std::vector<int> out;
    for (int k = 0; k < size(); ++k)
        if (class_rep_[k] == class_rep_[rep]) out.push_back(k);
    return out;
}

bool SubgroupLattice::subconjugate(int j, int k) const {
    for (int g = 0; g < group.order; ++g)
        if (leq(conj_[g][j], k)) return true;
    return false;
}

int SubgroupLattice::fixed_points(int k, int h) const {
    int count = 0;
    for (int g : coset_reps(k))
        if (leq(h, conj_[g][k])) ++count;
    return count;
}

std::vector<int> SubgroupLattice::coset_reps(int k) const {
    return left_cosets_in(top(), k);
}

std::vector<int> SubgroupLattice::left_cosets_in(int h, int k) const {
    std::vector<bool> seen(group.order, false);
    std::vector<int> reps;
    for (int g : subgroups[h].elements) {
        if (seen[g]) continue;
        reps.push_back(g);
        for (int x : subgroups[k].elements) seen[group.mul[g][x]] = true;
    }
    return reps;
}

std::vector<int> SubgroupLattice::double_cosets(int k, int l) const {
    return double_cosets_in(top(), k, l);
}

std::vector<int> SubgroupLattice::double_cosets_in(int h, int k, int l) const {
    std::vector<bool> seen(group.order, false);
    std::vector<int> reps;
    for (int g : subgroups[h].elements) {
        if (seen[g]) continue;
        reps.push_back(g);
        for (int x : subgroups[k].elements)
            for (int y : subgroups[l].elements) seen[group.mul[group.mul[x][g]][y]] = true;
    }
    return reps;
}

int SubgroupLattice::h_class_rep(int h, int k) const {
    int best = k;
    for (int g : subgroups[h].elements) best = std::min(best, conj_[g][k]);
    return best;
}

std::vector<int> SubgroupLattice::h_class_reps(int h) const {
    std::vector<int> out;
    for (int k = 0; k < size(); ++k)
        if (leq(k, h) && h_class_rep(h, k) == k) out.push_back(k);
    return out;
}

std::vector<int> SubgroupLattice::subgroups_of(int h) const {
    std::vector<int> out;
    for (int k = 0; k < size(); ++k)
        if (leq(k, h)) out.push_back(k);
    return out;
}

std::string SubgroupLattice::subgroup_name(int k) const {
    std::ostringstream os;
    // Cyclic subgroups get the familiar C_d label; the id keeps names unique.
    bool cyclic = false;
    for (int g : subgroups[k].elements) {
        uint64_t gen = close_under_ops(group, uint64_t(1) << g);
        if (gen == subgroups[k].mask) { cyclic = true; break; }
    }
    if (cyclic)
        os << "C" << order_of(k);
    else
        os << "H" << order_of(k);
    os << "#" << k;
    return os.str();
}

SubgroupLattice subgroup_lattice(const FiniteGroup& g, int order_cap) {
    if (g.order > order_cap || g.order > 64)
        throw Error(Error::Kind::GroupTooLarge,
                    "group order " + std::to_string(g.order) + " exceeds cap");

    std::set<uint64_t> found;
    std::vector<uint64_t> frontier;
    uint64_t triv = close_under_ops(g, 0);
    found.insert(triv);
    frontier.push_back(triv);
    while (!frontier.empty()) {
        std::vector<uint64_t> next;
        for (uint64_t h : frontier)
            for (int a = 0; a < g.order; ++a) {
                if ((h >> a) & 1) continue;
                uint64_t bigger = close_under_ops(g, h | (uint64_t(1) << a));
                if (found.insert(bigger).second) next.push_back(bigger);
            }
        frontier = std::move(next);
    }

    SubgroupLattice lat;
    lat.group = g;
    for (uint64_t m : found) {
        Subgroup s;
        s.mask = m;
        s.elements = mask_elements(m);
        lat.subgroups.push_back(std::move(s));
    }
    std::sort(lat.subgroups.begin(), lat.subgroups.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
        return a.elements < b.elements;
    });
    for (int i = 0; i < lat.size(); ++i) lat.mask_to_id_[lat.subgroups[i].mask] = i;

    int n = lat.size();
    lat.conj_.assign(g.order, std::vector<int>(n, -1));
    for (int x = 0; x < g.order; ++x)
        for (int k = 0; k < n; ++k) {
            uint64_t m = 0;
            for (int a : lat.subgroups[k].elements) m |= uint64_t(1) << g.conj(x, a);
            lat.conj_[x][k] = lat.mask_to_id_.at(m);
        }

    lat.class_rep_.assign(n, -1);
    for (int k = 0; k < n; ++k) {
        int best = k;
        for (int x = 0; x < g.order; ++x) best = std::min(best, lat.conj_[x][k]);
        lat.class_rep_[k] = best;
    }
    for (int k = 0; k < n; ++k)
        if (lat.class_rep_[k] == k) lat.class_reps_.push_back(k);

    lat.normalizer_.assign(n, -1);
    for (int k = 0; k < n; ++k) {
        uint64_t m = 0;
        for (int x = 0; x < g.order; ++x)
            if (lat.conj_[x][k] == k) m |= uint64_t(1) << x;
        lat.normalizer_[k] = lat.mask_to_id_.at(m);
    }
    return lat;
}

LatticePtr make_lattice(const FiniteGroup& g, int order_cap) {
    return std::make_shared<const SubgroupLattice>(subgroup_lattice(g, order_cap));
}

OrbitSum orbit_product(const SubgroupLattice& lat, int level, int k, int l) {
    if (!lat.leq(k, level) || !lat.leq(l, level))
        throw Error(Error::Kind::LevelMismatch, "orbit_product factors must lie under the level");
    OrbitSum out;
    out.level = level;
    for (int h : lat.double_cosets_in(level, k, l)) {
        int stab = lat.meet(k, lat.conj_sub(h, l));
        out.coeffs[lat.h_class_rep(level, stab)] += 1;
    }
    return out;
}

MarkTable mark_table(const SubgroupLattice& lat, const std::vector<int>& ids) {
    MarkTable t;
    t.ids = ids;
    t.entries.assign(ids.size(), std::vector<Rat>(ids.size()));
    for (size_t i = 0; i < ids.size(); ++i)
        for (size_t j = 0; j < ids.size(); ++j) t.entries[i][j] = lat.fixed_points(ids[j], ids[i]);
    return t;
}

} // namespace omack
