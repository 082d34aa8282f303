#pragma once

#include "omack/transfer.hpp"

#include <map>
#include <vector>

namespace omack {

// A basis morphism between orbits in the span category: the isomorphism
// class of
//     G/src <- G/stab -> G/dst,   x stab -> x.left src,  x stab -> x.right dst
// with the forward leg admissible: stab -> right stab(dst) right^-1 in the
// system. Stored in canonical form (lexicographically minimal translate),
// so equal values mean isomorphic spans.
struct Span {
    int src = -1, dst = -1;
    int stab = -1;
    int left = 0, right = 0; // group elements picking the two cosets

    auto key() const { return std::tuple(src, dst, stab, left, right); }
    bool operator<(const Span& o) const { return key() < o.key(); }
    bool operator==(const Span& o) const { return key() == o.key(); }
};

// Integer combination of basis spans with common endpoints.
using SpanSum = std::map<Span, long long>;

// Canonicalizes the raw data (stab, left, right) for a span src -> dst.
Span make_span(const SubgroupLattice& lat, int src, int dst, int stab, int left, int right);

// Generator spans.
Span span_res(const SubgroupLattice& lat, int l, int j);            // from L to J, J <= L
Span span_tr(const SubgroupLattice& lat, int j, int l);             // from J to L (J -> L admissible)
Span span_conj(const SubgroupLattice& lat, int g, int l);           // from L to gLg^-1
Span span_identity(const SubgroupLattice& lat, int l);

bool span_admissible(const TransferSystem& ts, const Span& s);

// All basis spans from G/src to G/dst in the system, canonically ordered.
std::vector<Span> span_basis(const TransferSystem& ts, int src, int dst);

// Composite "first a, then b" in A(src(a), dst(b)); pullback decomposed
// into orbits. Requires dst(a) == src(b).
SpanSum span_compose(const SubgroupLattice& lat, const Span& a, const Span& b);

} // namespace omack
