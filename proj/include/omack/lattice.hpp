#pragma once

#include "omack/group.hpp"
#include "omack/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace omack {

struct Subgroup {
    std::vector<int> elements; // strictly sorted element indices
    uint64_t mask = 0;
};

// Formal rational combination of orbits level/K, with K recorded by its
// canonical conjugacy-class representative inside the level.
struct OrbitSum {
    int level = -1;
    std::map<int, Rat> coeffs;
};

// Complete subgroup lattice of a finite group, with inclusion, conjugation,
// normalizer and coset data precomputed. Subgroups are canonically ordered
// by (cardinality, lexicographic element list) and immutable afterwards.
class SubgroupLattice {
public:
    FiniteGroup group;
    std::vector<Subgroup> subgroups;

    int size() const { return int(subgroups.size()); }
    int bottom() const { return 0; }
    int top() const { return size() - 1; }
    int order_of(int h) const { return int(subgroups[h].elements.size()); }
    bool contains(int h, int g) const { return (subgroups[h].mask >> g) & 1; }
    bool leq(int k, int h) const { return (subgroups[k].mask & ~subgroups[h].mask) == 0; }
    int meet(int a, int b) const { return id_of_mask(subgroups[a].mask & subgroups[b].mask); }
    int join(int a, int b) const; // subgroup generated by the union

    int conj_sub(int g, int k) const { return conj_[g][k]; }
    int class_rep(int k) const { return class_rep_[k]; }
    const std::vector<int>& class_reps() const { return class_reps_; }
    std::vector<int> class_members(int rep) const;
    int normalizer(int h) const { return normalizer_[h]; }
    bool is_normal(int h) const { return normalizer_[h] == top(); }

    bool subconjugate(int j, int k) const; // exists g with gJg^-1 <= K

    // |(G/K)^H| = #{gK : H <= gKg^-1}
    int fixed_points(int k, int h) const;

    // Canonical (minimal-element) representatives.
    std::vector<int> coset_reps(int k) const;               // G/K
    std::vector<int> double_cosets(int k, int l) const;     // K\G/L
    std::vector<int> left_cosets_in(int h, int k) const;    // H/K for K <= H
    std::vector<int> double_cosets_in(int h, int k, int l) const; // K\H/L

    // Conjugacy of subgroups of H under H only.
    int h_class_rep(int h, int k) const;
    std::vector<int> h_class_reps(int h) const;
    std::vector<int> subgroups_of(int h) const;

    int id_of_mask(uint64_t mask) const;
    int id_of_elements(const std::vector<int>& elems) const;

    std::string subgroup_name(int k) const;

private:
    friend SubgroupLattice subgroup_lattice(const FiniteGroup&, int);
    std::vector<std::vector<int>> conj_; // [g][k] -> id of gKg^-1
    std::vector<int> class_rep_;
    std::vector<int> class_reps_;
    std::vector<int> normalizer_;
    std::map<uint64_t, int> mask_to_id_;
};

using LatticePtr = std::shared_ptr<const SubgroupLattice>;

// Exhaustive closure enumeration of all subgroups. Throws
// Error{GroupTooLarge} above the cap (default 64; all library routines
// assume masks fit one word).
SubgroupLattice subgroup_lattice(const FiniteGroup& g, int order_cap = 64);
LatticePtr make_lattice(const FiniteGroup& g, int order_cap = 64);

// H/K x H/L decomposed into H-orbits (K, L <= level).
OrbitSum orbit_product(const SubgroupLattice& lat, int level, int k, int l);

// Table of marks restricted to the given subgroup ids (rows and columns in
// the given order): entry (i, j) = |(G/ids[j])^{ids[i]}|.
// With ids sorted by subgroup order this is triangular with nonzero diagonal.
struct MarkTable {
    std::vector<int> ids;
    std::vector<std::vector<Rat>> entries;
};
MarkTable mark_table(const SubgroupLattice& lat, const std::vector<int>& ids);

} // namespace omack
