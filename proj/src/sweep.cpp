#include "omack/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <set>
#include <sstream>

namespace omack {

namespace {

std::string ts_tag(const TransferSystem& ts) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto [k, h] : ts.pairs()) {
        os << (first ? "" : ",") << k << ">" << h;
        first = false;
    }
    os << "}";
    return os.str();
}

} // namespace

std::vector<std::string> check_system_burnside(const TransferSystem& ts) {
    const SubgroupLattice& lat = *ts.lat;
    std::vector<std::string> bad;
    std::string tag = ts_tag(ts);
    auto fail = [&](const std::string& s) { bad.push_back(tag + ": " + s); };

    if (!validate(ts).empty()) fail("system fails validation");
    if (!generate(ts.lat, ts.pairs()).same_relation(ts)) fail("closure of own pairs changed the system");

    // Meet property.
    for (int h = 0; h < lat.size(); ++h)
        for (int j = 0; j < lat.size(); ++j)
            for (int k = 0; k < lat.size(); ++k)
                if (ts.rel[h][k] && ts.rel[j][k]) {
                    int m = lat.meet(h, j);
                    if (!ts.rel[m][h] || !ts.rel[m][j]) fail("meet property fails");
                }

    // Mobius recursion.
    MobiusTable mu = mobius(ts);
    for (int k = 0; k < lat.size(); ++k)
        for (int h = 0; h < lat.size(); ++h) {
            if (!ts.rel[k][h]) continue;
            long long total = 0;
            for (int j = 0; j < lat.size(); ++j)
                if (ts.rel[k][j] && ts.rel[j][h]) total += mu.at(k, j);
            if (total != (k == h ? 1 : 0)) fail("mobius recursion fails");
        }

    // Admissibles: closed under meets and conjugation, with a minimum.
    std::vector<int> adm = admissible_to_top(ts);
    int bottom_adm = ts.top;
    for (int a : adm) {
        bottom_adm = lat.meet(bottom_adm, a);
        for (int b : adm)
            if (std::find(adm.begin(), adm.end(), lat.meet(a, b)) == adm.end())
                fail("admissibles not closed under meets");
        for (int g = 0; g < lat.group.order; ++g)
            if (std::find(adm.begin(), adm.end(), lat.conj_sub(g, a)) == adm.end())
                fail("admissibles not closed under conjugation");
    }
    if (std::find(adm.begin(), adm.end(), bottom_adm) == adm.end())
        fail("admissibles have no minimal element");

    InsepPartition p = partition(ts);
    if (!(p == partition_by_marks(ts))) fail("hull partition disagrees with mark partition");

    TransferSystem od = maximal_disklike(ts);
    if (!od.contained_in(ts)) fail("maximal disk-like subsystem not contained");
    if (!is_disklike(od)) fail("maximal disk-like subsystem is not disk-like");
    if (!maximal_disklike(od).same_relation(od)) fail("maximal disk-like is not idempotent");
    if (!(partition(od) == p)) fail("partition changes under disk-like reduction");
    bool disk = is_disklike(ts);

    // Hull equivariance and minimality rigidity.
    for (int j = 0; j < lat.size(); ++j) {
        int hj = hull(ts, j);
        if (!lat.leq(j, hj)) fail("hull does not contain the subgroup");
        for (int g = 0; g < lat.group.order; ++g) {
            if (hull(ts, lat.conj_sub(g, j)) != lat.conj_sub(g, hj)) fail("hull not equivariant");
            if (!lat.contains(lat.normalizer(hj), g) && lat.leq(j, lat.conj_sub(g, hj)))
                fail("subgroup lies in a second conjugate of its hull");
        }
    }

    // Per-class structure.
    std::vector<BurnsideElement> idems;
    BurnsideElement one = orbit_element(ts.top, ts.top);
    BurnsideElement total;
    total.level = ts.top;
    for (const auto& [label, members] : p.classes) {
        if (!tombstone_check(ts, label)) fail("tombstone decomposition fails");
        // Relative family: anything between two members is a member.
        std::set<int> mem(members.begin(), members.end());
        for (int j : members)
            for (int m : members)
                for (int k = 0; k < lat.size(); ++k)
                    if (lat.leq(j, k) && lat.leq(k, m) && !mem.count(k))
                        fail("class is not a relative family");
        // Normalizer rigidity for members under the representative.
        for (int k : members) {
            if (!lat.leq(k, label)) continue;
            for (int g = 0; g < lat.group.order; ++g)
                if (lat.leq(lat.conj_sub(g, k), label) && !lat.contains(lat.normalizer(label), g))
                    fail("rigidity: conjugator outside the normalizer");
            if (!lat.leq(lat.normalizer(k), lat.normalizer(label)))
                fail("rigidity: normalizer not nested");
        }
        if (disk && !internal_transfers(ts, p, label).empty())
            fail("disk-like system has transfers inside a class");

        BurnsideElement e = idempotent(ts, label);
        if (!(e == idempotent_oracle(ts, label))) fail("mobius and mark-solve idempotents differ");
        ClassFunction mk = marks(ts, e);
        for (int h : mk.domain) {
            Rat want = lat.class_rep(h) == lat.class_rep(label) ? 1 : 0;
            if (mk.values.at(h) != want) fail("idempotent marks are not the indicator");
        }
        if (!(multiply(ts, e, e) == e)) fail("idempotent is not idempotent");
        total = total + e;
        idems.push_back(e);

        // Complete-ring image: sum of the classical idempotents of the
        // member conjugacy classes.
        std::set<int> member_classes;
        for (int m : members) member_classes.insert(lat.class_rep(m));
        BurnsideElement want;
        want.level = ts.top;
        for (int c : member_classes) want = want + classical_idempotent(ts.lat, c);
        if (!(include_complete(ts, e) == want)) fail("complete-ring image mismatch");

        // Transfer preimage of the idempotent.
        {
            MobiusTable mu2 = mobius(ts);
            BurnsideElement inner;
            inner.level = label;
            Rat norm(1, lat.order_of(lat.normalizer(label)));
            for (int k = 0; k < lat.size(); ++k)
                if (ts.rel[k][label])
                    inner.coeffs[lat.h_class_rep(label, k)] +=
                        norm * lat.order_of(k) * Rat(long(mu2.at(k, label)));
            inner.drop_zeros();
            if (!(transfer_element(ts, inner, ts.top) == e)) fail("transfer preimage formula fails");
        }

        // Restriction vanishing exactly off the above-set; top sets.
        for (int l = 0; l < lat.size(); ++l) {
            bool above = is_above(ts, p, l, label);
            if (restrict_element(ts, e, l).is_zero() == above)
                fail("idempotent restriction vanishing mismatch");
            if (!above) continue;
            TopSet t = top_set(ts, p, l, label);
            std::set<int> full;
            for (int g = 0; g < lat.group.order; ++g) {
                int inter = lat.meet(l, lat.conj_sub(g, label));
                if (mem.count(inter)) full.insert(inter);
            }
            if (full != std::set<int>(t.members.begin(), t.members.end()))
                fail("double-coset top set differs from the full scan");
            // Members are exactly the maximal class members transferring to l.
            std::set<int> maximal;
            for (int j : members) {
                if (!ts.rel[j][l]) continue;
                bool is_max = true;
                for (int j2 : members)
                    if (j2 != j && ts.rel[j2][l] && lat.leq(j, j2)) { is_max = false; break; }
                if (is_max) maximal.insert(j);
            }
            if (maximal != full) fail("top set is not the set of maximal transferring members");
            for (int mbr : t.members)
                if (lat.meet(lat.normalizer(mbr), l) != lat.meet(lat.normalizer(hull(ts, mbr)), l))
                    fail("normalizer formula fails on the top set");
        }
    }
    if (!(total == one)) fail("idempotents do not sum to one");
    for (size_t a = 0; a < idems.size(); ++a)
        for (size_t b = a + 1; b < idems.size(); ++b)
            if (!multiply(ts, idems[a], idems[b]).is_zero()) fail("idempotents are not orthogonal");

    for (int h : adm)
        if (!orbit_sum_identity_check(ts, h)) fail("orbit-sum identity fails");

    // Multiplicativity of marks on all basis pairs.
    std::vector<int> basis = admissible_basis(ts, ts.top);
    for (int a : basis)
        for (int b : basis) {
            BurnsideElement ea = orbit_element(ts.top, a), eb = orbit_element(ts.top, b);
            ClassFunction ma = marks(ts, ea), mb = marks(ts, eb), mab = marks(ts, multiply(ts, ea, eb));
            for (int h : ma.domain)
                if (mab.values.at(h) != ma.values.at(h) * mb.values.at(h))
                    fail("marks are not multiplicative");
        }
    return bad;
}

QMatrix coinduct_tr_alt(const TransferSystem& ts, int label, const MackeyFunctor& m_class, int l,
                        int k) {
    const SubgroupLattice& lat = *ts.lat;
    InsepPartition p = partition(ts);
    if (!is_above(ts, p, l, label) || !is_above(ts, p, k, label)) {
        ClassBlocks bk = is_above(ts, p, k, label) ? class_blocks(ts, p, label, m_class, k)
                                                   : ClassBlocks{};
        ClassBlocks bl = is_above(ts, p, l, label) ? class_blocks(ts, p, label, m_class, l)
                                                   : ClassBlocks{};
        return QMatrix(bk.fdim, bl.fdim);
    }
    ClassBlocks bl = class_blocks(ts, p, label, m_class, l);
    ClassBlocks bk = class_blocks(ts, p, label, m_class, k);
    // Accumulate raw values per representative block, then express them in
    // the fixed bases once all double-coset terms are in.
    std::vector<QMatrix> raw;
    for (int rep : bk.reps) raw.emplace_back(m_class.dim(rep), bl.fdim);
    for (size_t j = 0; j < bl.reps.size(); ++j) {
        int lj = bl.reps[j];
        int kg = lat.meet(k, hull(ts, lj));
        for (int ell : lat.double_cosets_in(k, l, kg)) {
            int inv = lat.group.inv[ell];
            int member = lat.conj_sub(inv, kg);
            int src2 = lat.conj_sub(inv, lj);
            QMatrix v = m_class.tr_at(src2, member) * (m_class.conj_at(inv, lj) * bl.fixed[j]);
            for (size_t i = 0; i < bk.reps.size(); ++i) {
                bool in_orbit = false;
                int a = -1;
                for (int x : lat.subgroups[k].elements)
                    if (lat.conj_sub(x, member) == bk.reps[i]) {
                        in_orbit = true;
                        a = x;
                        break;
                    }
                if (!in_orbit) continue;
                QMatrix w = m_class.conj_at(a, member) * v;
                for (int r = 0; r < w.rows(); ++r)
                    for (int c = 0; c < w.cols(); ++c) raw[i].at(r, bl.foff[j] + c) += w.at(r, c);
                break;
            }
        }
    }
    QMatrix t(bk.fdim, bl.fdim);
    for (size_t i = 0; i < bk.reps.size(); ++i) {
        auto coords = bk.fixed[i].solve(raw[i]);
        if (!coords) throw Error(Error::Kind::Internal, "alt transfer left the fixed space");
        for (int r = 0; r < coords->rows(); ++r)
            for (int c = 0; c < coords->cols(); ++c) t.at(bk.foff[i] + r, c) += coords->at(r, c);
    }
    return t;
}

std::vector<std::string> check_system_mackey(const TransferSystem& ts, bool with_oracles,
                                             int represented_count) {
    const SubgroupLattice& lat = *ts.lat;
    std::vector<std::string> bad;
    std::string tag = ts_tag(ts);
    auto fail = [&](const std::string& s) { bad.push_back(tag + ": " + s); };

    InsepPartition p = partition(ts);

    std::vector<std::pair<std::string, MackeyFunctor>> instances;
    instances.emplace_back("burnside", burnside_mackey(ts));
    std::vector<int> reps = lat.class_reps();
    std::vector<int> picks = reps;
    if (int(picks.size()) > represented_count && represented_count > 0)
        picks = {reps.front(), reps[reps.size() / 2], reps.back()};
    for (int k : picks)
        instances.emplace_back("rep(" + lat.subgroup_name(k) + ")", represented_mackey(ts, k));

    for (auto& [name, m] : instances) {
        for (auto& v : validate_mackey(m)) fail(name + ": " + v.what);
        SplitResult sr;
        try {
            sr = split(ts, m);
        } catch (const Error& e) {
            fail(name + ": split failed: " + e.what());
            continue;
        }
        // (a) dimensions add up.
        for (int l : m.levels) {
            int total = 0;
            for (auto& s : sr.summands) total += s.part.dim(l);
            if (total != m.dim(l)) fail(name + ": summand dimensions do not add up");
        }
        for (auto& s : sr.summands) {
            std::string ctx = name + "/e[" + lat.subgroup_name(s.label) + "]";
            // (b) vanishing off the above-set.
            for (int l : m.levels)
                if (!is_above(ts, p, l, s.label) && s.part.dim(l) != 0)
                    fail(ctx + ": summand alive below its class");
            // (c) the idempotent acts as the identity on its summand.
            auto action = act(ts, idempotent(ts, s.label), s.part);
            for (auto& [l, a] : action)
                if (!a.is_identity()) fail(ctx + ": idempotent is not the identity on the summand");

            MackeyFunctor m_class = restrict_to_family(s.part, s.label);
            if (!is_class_functor(ts, p, s.label, m_class))
                fail(ctx + ": class restriction has support off the class");

            MackeyFunctor ind = induct_class(ts, s.label, m_class);
            for (auto& v : validate_mackey(ind)) fail(ctx + ": induction invalid: " + v.what);
            // (d) the counit is an isomorphism onto the summand.
            MackeyMap counit = counit_maps(ts, s.label, ind, s.part);
            if (!is_mackey_iso(ind, s.part, counit))
                fail(ctx + ": counit is not an isomorphism onto the summand");
            // Transfers from the top set generate every level of the summand.
            for (int l : m.levels) {
                if (s.part.dim(l) == 0 || !is_above(ts, p, l, s.label)) continue;
                QMatrix all(s.part.dim(l), 0);
                for (int mbr : top_set(ts, p, l, s.label).members)
                    all = all.hstack(s.part.tr_at(mbr, l));
                if (all.rank() != s.part.dim(l)) fail(ctx + ": transfers do not generate a level");
            }

            MackeyFunctor coind = coinduct_class(ts, s.label, m_class);
            for (auto& v : validate_mackey(coind)) fail(ctx + ": coinduction invalid: " + v.what);
            for (int l : m.levels)
                if (ind.dim(l) != coind.dim(l)) fail(ctx + ": induction/coinduction dims differ");
            // The two displayed transfer formulas agree.
            for (int l : coind.levels)
                for (int k2 : coind.levels)
                    if (l != k2 && ts.rel[l][k2] &&
                        coinduct_tr_alt(ts, s.label, m_class, l, k2) != coind.tr_at(l, k2))
                        fail(ctx + ": coinduction transfer formulas disagree");
            // (e) Frobenius.
            if (!frobenius_check(ts, s.label, s.part)) fail(ctx + ": Frobenius composite not invertible");

            if (with_oracles) {
                // (f) closed forms match the raw coend/end.
                ClassExtension coend = induct_class_coend_full(ts, s.label, m_class);
                MackeyMap phi = coend_comparison(ts, s.label, coend, ind, m_class);
                if (!is_mackey_iso(coend.f, ind, phi)) fail(ctx + ": coend oracle disagrees");
                ClassExtension endx = coinduct_class_end_full(ts, s.label, m_class);
                MackeyMap psi = end_comparison(ts, s.label, coind, endx, m_class);
                if (!is_mackey_iso(coind, endx.f, psi)) fail(ctx + ": end oracle disagrees");
            }
        }
    }
    return bad;
}

namespace {

template <typename Fn>
SweepReport run_sweep(const std::vector<TransferSystem>& systems, int jobs, Fn&& fn) {
    SweepReport rep;
    rep.systems = int(systems.size());
    std::vector<std::vector<std::string>> buckets(systems.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
#endif
    for (size_t i = 0; i < systems.size(); ++i) buckets[i] = fn(systems[i]);
    (void)jobs;
    for (auto& b : buckets)
        for (auto& s : b) rep.failures.push_back(std::move(s));
    return rep;
}

} // namespace

SweepReport burnside_sweep(LatticePtr lat, const std::vector<TransferSystem>& systems, int jobs) {
    (void)lat;
    return run_sweep(systems, jobs, [](const TransferSystem& ts) { return check_system_burnside(ts); });
}

SweepReport burnside_sweep_serial(LatticePtr lat, const std::vector<TransferSystem>& systems) {
    (void)lat;
    SweepReport rep;
    rep.systems = int(systems.size());
    for (const auto& ts : systems)
        for (auto& s : check_system_burnside(ts)) rep.failures.push_back(std::move(s));
    return rep;
}

SweepReport mackey_sweep(LatticePtr lat, const std::vector<TransferSystem>& systems,
                         const MackeySweepOptions& opt) {
    (void)lat;
    return run_sweep(systems, opt.jobs, [&](const TransferSystem& ts) {
        return check_system_mackey(ts, opt.with_oracles, opt.represented);
    });
}

SweepReport mackey_sweep_serial(LatticePtr lat, const std::vector<TransferSystem>& systems,
                                const MackeySweepOptions& opt) {
    (void)lat;
    SweepReport rep;
    rep.systems = int(systems.size());
    for (const auto& ts : systems)
        for (auto& s : check_system_mackey(ts, opt.with_oracles, opt.represented))
            rep.failures.push_back(std::move(s));
    return rep;
}

} // namespace omack
