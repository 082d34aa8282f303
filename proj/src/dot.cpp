#include "omack/dot.hpp"

#include <sstream>

namespace omack {

namespace {

bool is_cover(const SubgroupLattice& lat, int k, int h) {
    if (k == h || !lat.leq(k, h)) return false;
    for (int j = 0; j < lat.size(); ++j)
        if (j != k && j != h && lat.leq(k, j) && lat.leq(j, h)) return false;
    return true;
}

bool is_rel_cover(const TransferSystem& ts, int k, int h) {
    if (k == h || !ts.rel[k][h]) return false;
    for (int j = 0; j < ts.lat->size(); ++j)
        if (j != k && j != h && ts.rel[k][j] && ts.rel[j][h]) return false;
    return true;
}

} // namespace

std::string lewis_diagram_dot(const MackeyFunctor& m, const std::string& title) {
    const SubgroupLattice& lat = *m.ts.lat;
    std::ostringstream os;
    os << "digraph \"" << title << "\" {\n";
    os << "  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
    for (int l : m.levels) {
        os << "  n" << l << " [label=\"" << lat.subgroup_name(l) << "\\ndim " << m.dim(l);
        if (l < int(m.basis_names.size()))
            for (const std::string& b : m.basis_names[l]) os << "\\n" << b;
        os << "\"];\n";
    }
    for (int l : m.levels)
        for (int k : m.levels) {
            if (is_cover(lat, k, l))
                os << "  n" << l << " -> n" << k << " [label=\"res\", color=gray40];\n";
            if (is_rel_cover(m.ts, k, l))
                os << "  n" << k << " -> n" << l << " [label=\"tr\", color=blue, style=bold];\n";
        }
    for (int l : m.levels) {
        // Mark a nontrivial Weyl action with a dashed loop.
        bool nontrivial = false;
        for (int n : lat.subgroups[lat.normalizer(l)].elements)
            if (!m.conj_at(n, l).is_identity()) { nontrivial = true; break; }
        if (nontrivial) os << "  n" << l << " -> n" << l << " [label=\"W\", style=dashed];\n";
    }
    os << "}\n";
    return os.str();
}

std::string transfer_system_dot(const TransferSystem& ts, const std::string& title) {
    const SubgroupLattice& lat = *ts.lat;
    std::ostringstream os;
    os << "digraph \"" << title << "\" {\n";
    os << "  rankdir=BT;\n  node [shape=plaintext, fontname=\"monospace\"];\n";
    for (int l : lat.subgroups_of(ts.top))
        os << "  n" << l << " [label=\"" << lat.subgroup_name(l) << "\"];\n";
    for (int k : lat.subgroups_of(ts.top))
        for (int h : lat.subgroups_of(ts.top)) {
            if (is_cover(lat, k, h))
                os << "  n" << k << " -> n" << h << " [color=gray80, arrowhead=none];\n";
            if (is_rel_cover(ts, k, h))
                os << "  n" << k << " -> n" << h << " [color=blue, style=bold];\n";
        }
    os << "}\n";
    return os.str();
}

} // namespace omack
