#include "omack/transfer.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <set>
#include <sstream>

namespace omack {

std::vector<std::pair<int, int>> TransferSystem::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int k = 0; k < lat->size(); ++k)
        for (int h = 0; h < lat->size(); ++h)
            if (k != h && rel[k][h]) out.emplace_back(k, h);
    return out;
}

bool TransferSystem::contained_in(const TransferSystem& o) const {
    for (int k = 0; k < lat->size(); ++k)
        for (int h = 0; h < lat->size(); ++h)
            if (rel[k][h] && !o.rel[k][h]) return false;
    return true;
}

std::string TsViolation::describe(const SubgroupLattice& lat) const {
    std::ostringstream os;
    auto nm = [&](int i) { return lat.subgroup_name(i); };
    switch (kind) {
        case Kind::Refines:
            os << "pair " << nm(k) << " -> " << nm(h) << " does not refine inclusion";
            break;
        case Kind::Reflexive:
            os << "missing reflexive pair at " << nm(k);
            break;
        case Kind::Transitive:
            os << nm(k) << " -> " << nm(witness) << " -> " << nm(h) << " but " << nm(k)
               << " -> " << nm(h) << " is missing";
            break;
        case Kind::Conjugation:
            os << "conjugate of " << nm(k) << " -> " << nm(h) << " by element " << witness
               << " is missing";
            break;
        case Kind::Restriction:
            os << "restriction of " << nm(k) << " -> " << nm(h) << " along L = " << nm(witness)
               << " is missing";
            break;
    }
    return os.str();
}

namespace {

int resolve_top(const LatticePtr& lat, int top) { return top < 0 ? lat->top() : top; }

// Runs the closure fixpoint in place: conjugation, restriction,
// transitivity. Reflexive pairs are assumed present.
void close_over(TransferSystem& ts) {
    const SubgroupLattice& l = *ts.lat;
    std::vector<int> dom = l.subgroups_of(ts.top);
    const auto& top_elems = l.subgroups[ts.top].elements;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k : dom)
            for (int h : dom) {
                if (!ts.rel[k][h] || k == h) continue;
                for (int g : top_elems) {
                    int ck = l.conj_sub(g, k), ch = l.conj_sub(g, h);
                    if (!ts.rel[ck][ch]) { ts.rel[ck][ch] = true; changed = true; }
                }
                for (int m : dom) {
                    if (!l.leq(m, h)) continue;
                    int km = l.meet(k, m);
                    if (!ts.rel[km][m]) { ts.rel[km][m] = true; changed = true; }
                }
                for (int j : dom)
                    if (ts.rel[h][j] && !ts.rel[k][j]) { ts.rel[k][j] = true; changed = true; }
            }
    }
}

} // namespace

std::vector<TsViolation> validate(const TransferSystem& ts) {
    const SubgroupLattice& lat = *ts.lat;
    std::vector<TsViolation> out;
    std::vector<int> dom = lat.subgroups_of(ts.top);
    std::vector<bool> in_dom(lat.size(), false);
    for (int k : dom) in_dom[k] = true;

    for (int k = 0; k < lat.size(); ++k)
        for (int h = 0; h < lat.size(); ++h)
            if (ts.rel[k][h] && (!in_dom[h] || !lat.leq(k, h)))
                out.push_back({TsViolation::Kind::Refines, k, h, -1});
    for (int k : dom)
        if (!ts.rel[k][k]) out.push_back({TsViolation::Kind::Reflexive, k, k, -1});

    for (int k : dom)
        for (int j : dom)
            if (k != j && ts.rel[k][j])
                for (int h : dom)
                    if (j != h && ts.rel[j][h] && !ts.rel[k][h])
                        out.push_back({TsViolation::Kind::Transitive, k, h, j});

    const auto& top_elems = lat.subgroups[ts.top].elements;
    for (int k : dom)
        for (int h : dom)
            if (k != h && ts.rel[k][h])
                for (int g : top_elems)
                    if (!ts.rel[lat.conj_sub(g, k)][lat.conj_sub(g, h)]) {
                        out.push_back({TsViolation::Kind::Conjugation, k, h, g});
                        break;
                    }

    for (int k : dom)
        for (int h : dom)
            if (k != h && ts.rel[k][h])
                for (int l : dom)
                    if (lat.leq(l, h) && !ts.rel[lat.meet(k, l)][l])
                        out.push_back({TsViolation::Kind::Restriction, k, h, l});

    return out;
}

TransferSystem minimal_system(LatticePtr lat, int top) {
    TransferSystem ts;
    ts.lat = lat;
    ts.top = resolve_top(lat, top);
    ts.rel.assign(lat->size(), std::vector<bool>(lat->size(), false));
    for (int k : lat->subgroups_of(ts.top)) ts.rel[k][k] = true;
    return ts;
}

TransferSystem maximal_system(LatticePtr lat, int top) {
    TransferSystem ts = minimal_system(lat, top);
    for (int k : lat->subgroups_of(ts.top))
        for (int h : lat->subgroups_of(ts.top))
            if (lat->leq(k, h)) ts.rel[k][h] = true;
    return ts;
}

TransferSystem generate(LatticePtr lat, const std::vector<std::pair<int, int>>& seeds, int top) {
    TransferSystem ts = minimal_system(lat, top);
    const SubgroupLattice& l = *lat;
    for (auto [k, h] : seeds) {
        if (!l.leq(k, h) || !l.leq(h, ts.top))
            throw Error(Error::Kind::PairNotNested,
                        "seed pair " + l.subgroup_name(k) + " -> " + l.subgroup_name(h) +
                            " is not nested under the top");
        ts.rel[k][h] = true;
    }
    close_over(ts);
    return ts;
}

TransferSystem restrict_to_subgroup(const TransferSystem& ts, int h) {
    const SubgroupLattice& lat = *ts.lat;
    if (!lat.leq(h, ts.top))
        throw Error(Error::Kind::LevelMismatch, "restriction target is not under the top");
    TransferSystem out = minimal_system(ts.lat, h);
    for (int k : lat.subgroups_of(h))
        for (int j : lat.subgroups_of(h))
            if (ts.rel[k][j]) out.rel[k][j] = true;
    return out;
}

namespace {

using PairKey = std::vector<std::pair<int, int>>;

std::vector<TransferSystem> order_systems(LatticePtr lat, std::set<PairKey>&& keys) {
    std::vector<PairKey> sorted(keys.begin(), keys.end());
    std::sort(sorted.begin(), sorted.end(), [](const PairKey& a, const PairKey& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<TransferSystem> out;
    out.reserve(sorted.size());
    TransferSystem base = minimal_system(lat);
    for (const PairKey& key : sorted) {
        TransferSystem ts = base;
        for (auto [k, h] : key) ts.rel[k][h] = true;
        out.push_back(std::move(ts)); // keys are already closed
    }
    return out;
}

// Frontier BFS over the lattice of transfer systems: every system is the
// closure of one more generator added to a smaller one, so starting from
// the minimal system reaches everything.
std::set<PairKey> enumerate_keys(LatticePtr lat, int jobs) {
    std::vector<std::pair<int, int>> nested;
    for (int k = 0; k < lat->size(); ++k)
        for (int h = 0; h < lat->size(); ++h)
            if (k != h && lat->leq(k, h)) nested.emplace_back(k, h);

    std::set<PairKey> found;
    std::vector<PairKey> frontier;
    found.insert(PairKey{});
    frontier.push_back(PairKey{});
    while (!frontier.empty()) {
        std::vector<std::vector<PairKey>> produced(frontier.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
#endif
        for (size_t i = 0; i < frontier.size(); ++i) {
            TransferSystem base = minimal_system(lat);
            for (auto [k, h] : frontier[i]) base.rel[k][h] = true;
            for (auto [k, h] : nested) {
                if (base.rel[k][h]) continue;
                TransferSystem ts = base;
                ts.rel[k][h] = true;
                close_over(ts);
                produced[i].push_back(ts.pairs());
            }
        }
        std::vector<PairKey> next;
        for (auto& block : produced)
            for (auto& key : block)
                if (found.insert(key).second) next.push_back(key);
        frontier = std::move(next);
    }
    return found;
}

} // namespace

std::vector<TransferSystem> enumerate_all(LatticePtr lat, int jobs) {
    if (lat->size() > 64) throw Error(Error::Kind::GroupTooLarge, "subgroup lattice too large to enumerate");
    return order_systems(lat, enumerate_keys(lat, jobs));
}

std::vector<TransferSystem> enumerate_all_serial(LatticePtr lat) {
    if (lat->size() > 64) throw Error(Error::Kind::GroupTooLarge, "subgroup lattice too large to enumerate");
    return order_systems(lat, enumerate_keys(lat, 1));
}

std::vector<TransferSystem> enumerate_all_powerset(LatticePtr lat, int jobs) {
    const SubgroupLattice& l = *lat;
    std::vector<std::pair<int, int>> nested;
    for (int k = 0; k < l.size(); ++k)
        for (int h = 0; h < l.size(); ++h)
            if (k != h && l.leq(k, h)) nested.emplace_back(k, h);
    const int m = int(nested.size());
    if (m > 26) throw Error(Error::Kind::GroupTooLarge, "powerset oracle limited to 26 nested pairs");

    // Validity of a candidate set of non-reflexive pairs, expressed as
    // implication masks over the pair indices. Reflexive pairs are always
    // present and conjugation/restriction/composition of nested pairs stay
    // nested, so the axioms close within the index set.
    std::map<std::pair<int, int>, int> index;
    for (int i = 0; i < m; ++i) index[nested[i]] = i;
    std::vector<uint32_t> required(m, 0); // conjugates + restrictions of pair i
    for (int i = 0; i < m; ++i) {
        auto [k, h] = nested[i];
        for (int g = 0; g < l.group.order; ++g) {
            int ck = l.conj_sub(g, k), ch = l.conj_sub(g, h);
            required[i] |= uint32_t(1) << index.at({ck, ch});
        }
        for (int sub = 0; sub < l.size(); ++sub) {
            if (!l.leq(sub, h)) continue;
            int km = l.meet(k, sub);
            if (km != sub) required[i] |= uint32_t(1) << index.at({km, sub});
        }
    }
    // composition[i][j] = index of the composite when nested[i] = (k, j0)
    // and nested[j] = (j0, h), else -1.
    std::vector<std::vector<int>> comp(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (nested[i].second == nested[j].first)
                comp[i][j] = index.at({nested[i].first, nested[j].second});

    auto valid = [&](uint32_t mask) {
        for (int i = 0; i < m; ++i) {
            if (!((mask >> i) & 1)) continue;
            if ((required[i] & ~mask) != 0) return false;
            for (int j = 0; j < m; ++j)
                if (((mask >> j) & 1) && comp[i][j] >= 0 && !((mask >> comp[i][j]) & 1))
                    return false;
        }
        return true;
    };

    const uint64_t total = uint64_t(1) << m;
#ifdef _OPENMP
    int nthreads = jobs > 0 ? jobs : omp_get_max_threads();
#else
    int nthreads = 1;
    (void)jobs;
#endif
    std::vector<std::vector<uint32_t>> good(nthreads);
#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
#endif
    {
#ifdef _OPENMP
        int tid = omp_get_thread_num();
#else
        int tid = 0;
#endif
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (int64_t mask = 0; mask < int64_t(total); ++mask)
            if (valid(uint32_t(mask))) good[tid].push_back(uint32_t(mask));
    }
    std::set<PairKey> keys;
    for (auto& block : good)
        for (uint32_t mask : block) {
            PairKey key;
            for (int i = 0; i < m; ++i)
                if ((mask >> i) & 1) key.push_back(nested[i]);
            keys.insert(std::move(key));
        }
    return order_systems(lat, std::move(keys));
}

bool is_disklike(const TransferSystem& ts) {
    return maximal_disklike(ts).same_relation(ts);
}

TransferSystem maximal_disklike(const TransferSystem& ts) {
    std::vector<std::pair<int, int>> seeds;
    for (int h : admissible_to_top(ts))
        if (h != ts.top) seeds.emplace_back(h, ts.top);
    return generate(ts.lat, seeds, ts.top);
}

std::vector<int> admissible_to_top(const TransferSystem& ts) {
    std::vector<int> out;
    for (int h = 0; h < ts.lat->size(); ++h)
        if (ts.lat->leq(h, ts.top) && ts.rel[h][ts.top]) out.push_back(h);
    return out;
}

long long MobiusTable::at(int k, int h) const {
    auto it = mu.find({k, h});
    if (it == mu.end()) throw Error(Error::Kind::Internal, "mobius value requested off the relation");
    return it->second;
}

MobiusTable mobius(const TransferSystem& ts) {
    const SubgroupLattice& lat = *ts.lat;
    MobiusTable t;
    // mu(k, h) counts strict chains with alternating sign; peeling the
    // first step gives mu(k, h) = -sum_{k -> j strict, j -> h} mu(j, h)
    // with mu(h, h) = 1.
    std::vector<int> dom = lat.subgroups_of(ts.top);
    for (int h : dom) {
        std::vector<int> under;
        for (int k : dom)
            if (ts.rel[k][h]) under.push_back(k);
        std::sort(under.begin(), under.end(),
                  [&](int a, int b) { return lat.order_of(a) > lat.order_of(b); });
        for (int k : under) {
            if (k == h) {
                t.mu[{k, h}] = 1;
                continue;
            }
            long long v = 0;
            for (int j : under)
                if (j != k && ts.rel[k][j]) v -= t.mu.at({j, h});
            t.mu[{k, h}] = v;
        }
    }
    return t;
}

} // namespace omack
