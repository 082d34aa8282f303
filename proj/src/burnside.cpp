#include "omack/burnside.hpp"

#include <algorithm>
#include <sstream>

namespace omack {

BurnsideElement& BurnsideElement::drop_zeros() {
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = it->second == 0 ? coeffs.erase(it) : std::next(it);
    return *this;
}

bool BurnsideElement::is_zero() const {
    for (const auto& [k, c] : coeffs)
        if (c != 0) return false;
    return true;
}

BurnsideElement BurnsideElement::operator+(const BurnsideElement& o) const {
    if (level != o.level) throw Error(Error::Kind::LevelMismatch, "sum of elements at different levels");
    BurnsideElement r = *this;
    for (const auto& [k, c] : o.coeffs) r.coeffs[k] += c;
    return r.drop_zeros();
}

BurnsideElement BurnsideElement::operator-(const BurnsideElement& o) const {
    return *this + o.scaled(-1);
}

BurnsideElement BurnsideElement::scaled(const Rat& c) const {
    BurnsideElement r;
    r.level = level;
    for (const auto& [k, v] : coeffs) r.coeffs[k] = v * c;
    return r.drop_zeros();
}

BurnsideElement orbit_element(int level, int k) {
    BurnsideElement e;
    e.level = level;
    e.coeffs[k] = 1;
    return e;
}

std::vector<int> admissible_basis(const TransferSystem& ts, int level) {
    const SubgroupLattice& lat = *ts.lat;
    if (!lat.leq(level, ts.top)) throw Error(Error::Kind::LevelMismatch, "level outside the system");
    std::vector<int> basis;
    for (int k : lat.h_class_reps(level))
        if (ts.rel[k][level]) basis.push_back(k);
    std::sort(basis.begin(), basis.end(), [&](int a, int b) {
        if (lat.order_of(a) != lat.order_of(b)) return lat.order_of(a) < lat.order_of(b);
        return a < b;
    });
    return basis;
}

BurnsideElement multiply(const TransferSystem& ts, const BurnsideElement& a, const BurnsideElement& b) {
    if (a.level != b.level) throw Error(Error::Kind::LevelMismatch, "product of elements at different levels");
    const SubgroupLattice& lat = *ts.lat;
    BurnsideElement r;
    r.level = a.level;
    for (const auto& [k, ck] : a.coeffs)
        for (const auto& [l, cl] : b.coeffs) {
            OrbitSum prod = orbit_product(lat, a.level, k, l);
            for (const auto& [stab, mult] : prod.coeffs) {
                if (!ts.rel[stab][a.level])
                    throw Error(Error::Kind::Internal, "orbit product left the admissible basis");
                r.coeffs[stab] += ck * cl * mult;
            }
        }
    return r.drop_zeros();
}

ClassFunction marks(const TransferSystem& ts, const BurnsideElement& x) {
    if (x.level != ts.top) throw Error(Error::Kind::LevelMismatch, "marks expects a top-level element");
    const SubgroupLattice& lat = *ts.lat;
    ClassFunction f;
    for (int h : admissible_basis(ts, ts.top)) f.domain.push_back(h);
    for (int h : f.domain) {
        Rat v = 0;
        for (const auto& [k, c] : x.coeffs) v += c * lat.fixed_points(k, h);
        f.values[h] = v;
    }
    return f;
}

BurnsideElement idempotent(const TransferSystem& ts, int label) {
    const SubgroupLattice& lat = *ts.lat;
    if (!lat.leq(label, ts.top) || !ts.rel[label][ts.top])
        throw Error(Error::Kind::NotAdmissible,
                    lat.subgroup_name(label) + " does not transfer to the top");
    MobiusTable mu = mobius(ts);
    BurnsideElement e;
    e.level = ts.top;
    Rat norm(1, lat.order_of(lat.normalizer(label)));
    for (int k = 0; k < lat.size(); ++k) {
        if (!ts.rel[k][label]) continue;
        Rat c = norm * lat.order_of(k) * Rat(long(mu.at(k, label)));
        e.coeffs[lat.h_class_rep(ts.top, k)] += c;
    }
    return e.drop_zeros();
}

BurnsideElement idempotent_oracle(const TransferSystem& ts, int label) {
    const SubgroupLattice& lat = *ts.lat;
    if (!lat.leq(label, ts.top) || !ts.rel[label][ts.top])
        throw Error(Error::Kind::NotAdmissible,
                    lat.subgroup_name(label) + " does not transfer to the top");
    std::vector<int> basis = admissible_basis(ts, ts.top);
    int n = int(basis.size());
    MarkTable m = mark_table(lat, basis);
    // marks(sum_j x_j G/K_j) at level H_i = sum_j |(G/K_j)^{H_i}| x_j; the
    // matrix is upper triangular in the (order, id) basis order, so plain
    // back-substitution solves marks(x) = delta exactly.
    std::vector<Rat> delta(n, 0);
    int target = lat.class_rep(label);
    for (int i = 0; i < n; ++i)
        if (lat.class_rep(basis[i]) == target) delta[i] = 1;
    std::vector<Rat> x(n, 0);
    for (int i = n - 1; i >= 0; --i) {
        if (m.entries[i][i] == 0) throw Error(Error::Kind::SingularMarks, "zero diagonal mark");
        Rat acc = delta[i];
        for (int j = i + 1; j < n; ++j) acc -= m.entries[i][j] * x[j];
        x[i] = acc / m.entries[i][i];
    }
    BurnsideElement e;
    e.level = ts.top;
    for (int i = 0; i < n; ++i) e.coeffs[basis[i]] = x[i];
    return e.drop_zeros();
}

BurnsideElement classical_idempotent(LatticePtr lat, int class_rep) {
    TransferSystem complete = maximal_system(lat);
    return idempotent_oracle(complete, lat->class_rep(class_rep));
}

bool orbit_sum_identity_check(const TransferSystem& ts, int h) {
    const SubgroupLattice& lat = *ts.lat;
    if (!ts.rel[h][ts.top])
        throw Error(Error::Kind::NotAdmissible, "identity check needs an admissible subgroup");
    BurnsideElement lhs = orbit_element(ts.top, lat.h_class_rep(ts.top, h));
    BurnsideElement rhs;
    rhs.level = ts.top;
    for (int k = 0; k < lat.size(); ++k) {
        if (!ts.rel[k][h]) continue;
        Rat c(lat.order_of(lat.normalizer(k)), lat.order_of(h));
        c.canonicalize();
        BurnsideElement e = idempotent(ts, lat.class_rep(k));
        rhs = rhs + e.scaled(c);
    }
    return lhs == rhs;
}

BurnsideElement include_complete(const TransferSystem& ts, const BurnsideElement& x) {
    if (x.level != ts.top) throw Error(Error::Kind::LevelMismatch, "inclusion expects a top-level element");
    // Admissible orbit classes are already keyed by their G-conjugacy
    // representatives at the top level, which is the complete-ring basis.
    return x;
}

BurnsideElement restrict_element(const TransferSystem& ts, const BurnsideElement& x, int l) {
    const SubgroupLattice& lat = *ts.lat;
    if (x.level != ts.top) throw Error(Error::Kind::LevelMismatch, "restriction starts at the top level");
    if (!lat.leq(l, ts.top)) throw Error(Error::Kind::LevelMismatch, "restriction target outside the group");
    BurnsideElement r;
    r.level = l;
    for (const auto& [k, c] : x.coeffs)
        for (int g : lat.double_cosets(l, k)) {
            int stab = lat.meet(l, lat.conj_sub(g, k));
            if (!ts.rel[stab][l])
                throw Error(Error::Kind::Internal, "restriction left the admissible basis");
            r.coeffs[lat.h_class_rep(l, stab)] += c;
        }
    return r.drop_zeros();
}

BurnsideElement transfer_element(const TransferSystem& ts, const BurnsideElement& x, int target) {
    const SubgroupLattice& lat = *ts.lat;
    if (!lat.leq(x.level, target) || !ts.rel[x.level][target])
        throw Error(Error::Kind::NotAdmissibleTransfer,
                    "no transfer from " + lat.subgroup_name(x.level) + " to " + lat.subgroup_name(target));
    BurnsideElement r;
    r.level = target;
    for (const auto& [k, c] : x.coeffs) r.coeffs[lat.h_class_rep(target, k)] += c;
    return r.drop_zeros();
}

std::string element_str(const SubgroupLattice& lat, const BurnsideElement& x) {
    if (x.coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : x.coeffs) {
        if (c == 0) continue;
        if (!first) os << " + ";
        os << rat_str(c) << "*" << lat.subgroup_name(x.level) << "/" << lat.subgroup_name(k);
        first = false;
    }
    return first ? "0" : os.str();
}

} // namespace omack
