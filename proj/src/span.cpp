#include "omack/span.hpp"

#include <algorithm>

namespace omack {

namespace {

int coset_min(const SubgroupLattice& lat, int sub, int g) {
    int best = lat.group.order;
    for (int x : lat.subgroups[sub].elements) best = std::min(best, lat.group.mul[g][x]);
    return best;
}

} // namespace

Span make_span(const SubgroupLattice& lat, int src, int dst, int stab, int left, int right) {
    const FiniteGroup& g = lat.group;
    Span best;
    best.src = src;
    best.dst = dst;
    best.stab = lat.size();
    best.left = g.order;
    best.right = g.order;
    for (int c = 0; c < g.order; ++c) {
        Span cand;
        cand.src = src;
        cand.dst = dst;
        cand.stab = lat.conj_sub(c, stab);
        cand.left = coset_min(lat, src, g.mul[c][left]);
        cand.right = coset_min(lat, dst, g.mul[c][right]);
        if (cand < best) best = cand;
    }
    return best;
}

Span span_res(const SubgroupLattice& lat, int l, int j) {
    if (!lat.leq(j, l)) throw Error(Error::Kind::Internal, "restriction span needs nested subgroups");
    return make_span(lat, l, j, j, 0, 0);
}

Span span_tr(const SubgroupLattice& lat, int j, int l) {
    if (!lat.leq(j, l)) throw Error(Error::Kind::Internal, "transfer span needs nested subgroups");
    return make_span(lat, j, l, j, 0, 0);
}

Span span_conj(const SubgroupLattice& lat, int g, int l) {
    int cl = lat.conj_sub(g, l);
    return make_span(lat, l, cl, cl, g, 0);
}

Span span_identity(const SubgroupLattice& lat, int l) { return make_span(lat, l, l, l, 0, 0); }

bool span_admissible(const TransferSystem& ts, const Span& s) {
    const SubgroupLattice& lat = *ts.lat;
    int target = lat.conj_sub(s.right, s.dst);
    return lat.leq(s.stab, target) && ts.rel[s.stab][target];
}

std::vector<Span> span_basis(const TransferSystem& ts, int src, int dst) {
    const SubgroupLattice& lat = *ts.lat;
    std::vector<Span> out;
    for (int c : lat.coset_reps(dst)) {
        int cdst = lat.conj_sub(c, dst);
        for (int stab = 0; stab < lat.size(); ++stab) {
            if (!lat.leq(stab, src) || !lat.leq(stab, cdst)) continue;
            if (!ts.rel[stab][cdst]) continue;
            Span s = make_span(lat, src, dst, stab, 0, c);
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SpanSum span_compose(const SubgroupLattice& lat, const Span& a, const Span& b) {
    if (a.dst != b.src) throw Error(Error::Kind::Internal, "span composition endpoint mismatch");
    const FiniteGroup& g = lat.group;
    const int mid = a.dst;

    // Pullback of  G/a.stab -> G/mid <- G/b.stab  as pairs of cosets.
    std::vector<int> reps1 = lat.coset_reps(a.stab);
    std::vector<int> reps2 = lat.coset_reps(b.stab);
    auto rep_index = [&](const std::vector<int>& reps, int sub, int x) {
        int r = coset_min(lat, sub, x);
        return int(std::lower_bound(reps.begin(), reps.end(), r) - reps.begin());
    };

    std::vector<std::pair<int, int>> points; // (index into reps1, index into reps2)
    for (int i = 0; i < int(reps1.size()); ++i)
        for (int j = 0; j < int(reps2.size()); ++j) {
            // x a.right mid == y b.left mid ?
            int x = g.mul[reps1[i]][a.right];
            int y = g.mul[reps2[j]][b.left];
            if (lat.contains(mid, g.mul[g.inv[y]][x])) points.emplace_back(i, j);
        }

    SpanSum out;
    std::vector<bool> used(points.size(), false);
    for (size_t p = 0; p < points.size(); ++p) {
        if (used[p]) continue;
        auto [i, j] = points[p];
        // Mark the diagonal orbit of this point.
        for (int c = 0; c < g.order; ++c) {
            int ci = rep_index(reps1, a.stab, g.mul[c][reps1[i]]);
            int cj = rep_index(reps2, b.stab, g.mul[c][reps2[j]]);
            auto it = std::lower_bound(points.begin(), points.end(), std::pair(ci, cj));
            used[it - points.begin()] = true;
        }
        int x = reps1[i], y = reps2[j];
        int stab = lat.meet(lat.conj_sub(x, a.stab), lat.conj_sub(y, b.stab));
        Span s = make_span(lat, a.src, b.dst, stab, g.mul[x][a.left], g.mul[y][b.right]);
        out[s] += 1;
    }
    return out;
}

} // namespace omack
