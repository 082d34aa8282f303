#pragma once

#include "omack/rational.hpp"

#include <string>
#include <vector>

namespace omack {

// A finite group given by its full multiplication table over element
// indices 0..order-1. After validation the identity is always index 0
// (loaders reindex if needed and record the permutation applied).
struct FiniteGroup {
    int order = 0;
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;
    int identity = 0;
    std::vector<std::string> element_names;
    std::string family_name; // "cyclic:6" etc. for built-ins, empty otherwise
    // old index -> new index permutation applied by the loader; empty when
    // no reindexing was necessary.
    std::vector<int> reindex_permutation;

    int op(int a, int b) const { return mul[a][b]; }
    // g x g^-1
    int conj(int g, int x) const { return mul[mul[g][x]][inv[g]]; }
    bool is_abelian() const;
};

// Validates the table: square, associative, two-sided identity, two-sided
// inverses. Throws Error{NotAssociative|NoIdentity|NoInverse} naming the
// witnessing elements. Reindexes so that the identity is element 0.
FiniteGroup build_group(std::vector<std::vector<int>> table,
                        std::vector<std::string> names = {});

// Built-in families with documented element orderings:
//   cyclic:n      elements are residues 0..n-1, x*y = x+y mod n
//   dihedral:n    order 2n; 0..n-1 are rotations r^k, n+k is r^k s
//   klein4       C2 x C2 on {0,1,2,3} with xor composition
//   symmetric:n   n in {3,4}; permutations of {0..n-1} in lexicographic
//                 one-line order, (p*q)(i) = p(q(i))
//   quaternion:8  {1, -1, i, -i, j, -j, k, -k} in that order
// Throws Error{UnknownFamily} otherwise.
FiniteGroup named_group(const std::string& name);

// The twenty built-in groups of order <= 16 used by the sweep suites:
// cyclic 2..16, klein4, symmetric:3, dihedral:4, quaternion:8, dihedral:6.
std::vector<std::string> builtin_sweep_names(int max_order = 16);

} // namespace omack
