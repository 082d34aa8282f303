#include <doctest.h>

#include "omack/dot.hpp"
#include "omack/mackey.hpp"
#include "omack/sweep.hpp"

using namespace omack;

namespace {

int cyc_sub(const SubgroupLattice& lat, int order) {
    for (int k = 0; k < lat.size(); ++k)
        if (lat.order_of(k) == order) return k;
    REQUIRE(false);
    return -1;
}

QMatrix col(std::vector<Rat> entries) {
    QMatrix m(int(entries.size()), 1);
    for (int i = 0; i < m.rows(); ++i) m.at(i, 0) = entries[i];
    return m;
}

} // namespace

TEST_CASE("zero and Burnside functors validate") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    int c2 = cyc_sub(*c6, 2), top = c6->top();
    TransferSystem ts = generate(c6, {{c2, top}});
    CHECK(validate_mackey(zero_mackey(ts)).empty());

    MackeyFunctor b = burnside_mackey(ts);
    CHECK(validate_mackey(b).empty());
    CHECK(b.dim(c6->bottom()) == 1);
    CHECK(b.dim(c2) == 1);
    CHECK(b.dim(cyc_sub(*c6, 3)) == 2);
    CHECK(b.dim(top) == 2);

    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    TransferSystem ts8 = generate(c8, {{cyc_sub(*c8, 2), cyc_sub(*c8, 4)},
                                       {cyc_sub(*c8, 2), c8->top()}});
    MackeyFunctor b8 = burnside_mackey(ts8);
    CHECK(validate_mackey(b8).empty());
    CHECK(b8.dim(c8->bottom()) == 1);
    CHECK(b8.dim(cyc_sub(*c8, 2)) == 1);
    CHECK(b8.dim(cyc_sub(*c8, 4)) == 2);
    CHECK(b8.dim(c8->top()) == 2);

    LatticePtr triv = make_lattice(named_group("cyclic:1"));
    CHECK(burnside_mackey(maximal_system(triv)).dim(0) == 1);
}

TEST_CASE("validation pins a broken double coset instance") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    int c2 = cyc_sub(*c6, 2), top = c6->top();
    TransferSystem ts = generate(c6, {{c2, top}});
    MackeyFunctor b = burnside_mackey(ts);
    b.tr[{c2, top}].at(0, 0) += 1; // corrupt the transfer
    auto v = validate_mackey(b);
    bool named = false;
    for (auto& viol : v)
        if (viol.what.find("double coset") != std::string::npos) named = true;
    CHECK(named);
}

TEST_CASE("unit element acts as the identity") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    TransferSystem ts = generate(c6, {{cyc_sub(*c6, 2), c6->top()}});
    MackeyFunctor b = burnside_mackey(ts);
    auto action = act(ts, orbit_element(ts.top, ts.top), b);
    for (auto& [l, a] : action) CHECK(a.is_identity());
}

TEST_CASE("act surfaces missing transfers") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    TransferSystem ts = generate(c6, {{cyc_sub(*c6, 2), c6->top()}});
    MackeyFunctor b = burnside_mackey(ts);
    b.tr.erase({cyc_sub(*c6, 2), c6->top()});
    try {
        act(ts, idempotent(ts, cyc_sub(*c6, 2)), b);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == Error::Kind::InadmissibleAction);
    }
}

TEST_CASE("splitting the C6 Burnside functor reproduces the two pieces") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    int c1 = c6->bottom(), c2 = cyc_sub(*c6, 2), c3 = cyc_sub(*c6, 3), top = c6->top();
    TransferSystem ts = generate(c6, {{c2, top}});
    MackeyFunctor b = burnside_mackey(ts);
    SplitResult sr = split(ts, b);
    REQUIRE(sr.summands.size() == 2);
    const SplitSummand& piece2 = sr.summands[0]; // label C2
    const SplitSummand& piece6 = sr.summands[1]; // label C6
    REQUIRE(piece2.label == c2);
    REQUIRE(piece6.label == top);

    CHECK(piece2.part.dim(top) == 1);
    CHECK(piece2.part.dim(c3) == 1);
    CHECK(piece2.part.dim(c2) == 1);
    CHECK(piece2.part.dim(c1) == 1);
    CHECK(piece6.part.dim(top) == 1);
    CHECK(piece6.part.dim(c3) == 1);
    CHECK(piece6.part.dim(c2) == 0);
    CHECK(piece6.part.dim(c1) == 0);

    // Exact inclusion vectors; the basis at a level lists orbits by
    // stabilizer order, so index 0 is X/smaller and index 1 is X/X.
    CHECK(piece2.inclusion.at(top) == col({1, 0}));               // C6/C2 line
    CHECK(piece2.inclusion.at(c3) == col({1, 0}));                // C3/C1 line
    CHECK(piece6.inclusion.at(top) == col({rat(-1, 3), 1}));      // C6/C6 - (1/3) C6/C2
    CHECK(piece6.inclusion.at(c3) == col({rat(-1, 3), 1}));       // C3/C3 - (1/3) C3/C1
    // Named maps on the nonzero pieces are isomorphisms.
    CHECK(piece6.part.res_at(top, c3).is_identity());
    CHECK(validate_mackey(piece2.part).empty());
    CHECK(validate_mackey(piece6.part).empty());

    // The zero functor splits into zero summands.
    SplitResult zr = split(ts, zero_mackey(ts));
    for (auto& s : zr.summands)
        for (int l : s.part.levels) CHECK(s.part.dim(l) == 0);
}

TEST_CASE("splitting the C8 Burnside functor") {
    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    int d1 = c8->bottom(), d2 = cyc_sub(*c8, 2), d4 = cyc_sub(*c8, 4), top = c8->top();
    TransferSystem ts = generate(c8, {{d2, d4}, {d2, top}});
    SplitResult sr = split(ts, burnside_mackey(ts));
    REQUIRE(sr.summands.size() == 2);
    const SplitSummand& p2 = sr.summands[0];
    const SplitSummand& p8 = sr.summands[1];
    CHECK(p2.inclusion.at(top) == col({1, 0}));          // C8/C2 line
    CHECK(p8.inclusion.at(top) == col({rat(-1, 4), 1})); // C8/C8 - (1/4) C8/C2
    CHECK(p8.inclusion.at(d4) == col({rat(-1, 2), 1}));  // C4/C4 - (1/2) C4/C2
    CHECK(p8.part.dim(d2) == 0);
    CHECK(p8.part.dim(d1) == 0);
    CHECK(p2.part.dim(d2) == 1);
}

TEST_CASE("induction of a class functor matches the abelian formula and the coend") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    int c1 = c6->bottom(), c2 = cyc_sub(*c6, 2), c3 = cyc_sub(*c6, 3), top = c6->top();
    TransferSystem ts = generate(c6, {{c2, top}});

    // Class functor on [C2] = {C1, C2}: dims 1 at both, identity res,
    // trivial conjugation, no internal transfers.
    MackeyFunctor m = zero_mackey(ts, c2);
    m.dims[c1] = 1;
    m.dims[c2] = 1;
    for (int l : m.levels) {
        for (int k : m.levels)
            if (c6->leq(k, l)) m.res[{l, k}] = QMatrix::identity(1);
        for (int g = 0; g < 6; ++g) m.conj[{g, l}] = QMatrix::identity(1);
        m.tr[{l, l}] = QMatrix::identity(1);
    }
    CHECK(validate_mackey(m).empty());

    MackeyFunctor ind = induct_class(ts, c2, m);
    CHECK(validate_mackey(ind).empty());
    // Abelian closed form: Ind(G/L) = M(G/(H cap L)) coinvariants.
    CHECK(ind.dim(top) == 1);
    CHECK(ind.dim(c3) == 1);
    CHECK(ind.dim(c2) == 1);
    CHECK(ind.dim(c1) == 1);

    ClassExtension coend = induct_class_coend_full(ts, c2, m);
    MackeyMap cmp = coend_comparison(ts, c2, coend, ind, m);
    CHECK(is_mackey_iso(coend.f, ind, cmp));

    MackeyFunctor coind = coinduct_class(ts, c2, m);
    CHECK(validate_mackey(coind).empty());
    for (int l : coind.levels) CHECK(coind.dim(l) == ind.dim(l));
    ClassExtension endx = coinduct_class_end_full(ts, c2, m);
    MackeyMap emp = end_comparison(ts, c2, coind, endx, m);
    CHECK(is_mackey_iso(coind, endx.f, emp));

    CHECK_THROWS_AS(induct_class(ts, c2, burnside_mackey(ts)), Error);
}

TEST_CASE("summands are inductions of their class restrictions") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    TransferSystem ts = generate(c6, {{cyc_sub(*c6, 2), c6->top()}});
    MackeyFunctor b = burnside_mackey(ts);
    for (auto& s : split(ts, b).summands) {
        MackeyFunctor cls = restrict_to_family(s.part, s.label);
        MackeyFunctor ind = induct_class(ts, s.label, cls);
        MackeyMap counit = counit_maps(ts, s.label, ind, s.part);
        CHECK(is_mackey_iso(ind, s.part, counit));
        CHECK(frobenius_check(ts, s.label, s.part));
        auto action = act(ts, idempotent(ts, s.label), s.part);
        for (auto& [l, a] : action) CHECK(a.is_identity());
    }
}

TEST_CASE("family restriction") {
    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    int d1 = c8->bottom(), d2 = cyc_sub(*c8, 2), d4 = cyc_sub(*c8, 4);
    TransferSystem ts = generate(c8, {{d2, d4}, {d2, c8->top()}});
    MackeyFunctor b = burnside_mackey(ts);
    MackeyFunctor r = restrict_to_family(b, d4);
    CHECK(r.levels == std::vector<int>{d1, d2, d4});
    CHECK(r.dim(d4) == 2);
    CHECK(r.dim(d2) == 1);
    CHECK(validate_mackey(r).empty());
    CHECK(mackey_equal(restrict_to_family(b, c8->top()), b));
}

TEST_CASE("normalizer restriction keeps the under-label data") {
    // C8 with the internal transfer: levels {C2, C4, C8} with T(C2 -> C4)
    // present; the disk-like reduction loses that map.
    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    int d1 = c8->bottom(), d2 = cyc_sub(*c8, 2), d4 = cyc_sub(*c8, 4), top = c8->top();
    TransferSystem ts = generate(c8, {{d1, d2}, {d1, d4}, {d1, top}, {d2, d4}});
    MackeyFunctor b = burnside_mackey(ts);
    SplitResult sr = split(ts, b);
    REQUIRE(sr.summands.size() == 2);
    const SplitSummand& s8 = sr.summands[1];
    REQUIRE(s8.label == top);
    MackeyFunctor cls = restrict_to_family(s8.part, top);
    NormalizerClassData d = restrict_to_normalizer(ts, top, cls);
    CHECK(d.levels == std::vector<int>{d2, d4, top});
    CHECK(d.has_internal_transfers);
    CHECK(d.tr.count({d2, d4}) == 1);
    CHECK(normalizer_roundtrip_check(ts, top, cls, d));

    TransferSystem od = maximal_disklike(ts);
    MackeyFunctor bd = burnside_mackey(od);
    SplitResult srd = split(od, bd);
    const SplitSummand& s8d = srd.summands[1];
    MackeyFunctor clsd = restrict_to_family(s8d.part, top);
    NormalizerClassData dd = restrict_to_normalizer(od, top, clsd);
    CHECK(dd.levels == std::vector<int>{d2, d4, top});
    CHECK(!dd.has_internal_transfers);

    // Maximal system on S3: a class keeps a single level with its Weyl action.
    LatticePtr s3 = make_lattice(named_group("symmetric:3"));
    TransferSystem full = maximal_system(s3);
    MackeyFunctor rep = represented_mackey(full, s3->bottom());
    for (auto& s : split(full, rep).summands) {
        MackeyFunctor cl = restrict_to_family(s.part, s.label);
        NormalizerClassData nd = restrict_to_normalizer(full, s.label, cl);
        CHECK(nd.levels == std::vector<int>{s.label});
        CHECK(!nd.has_internal_transfers);
        CHECK(normalizer_roundtrip_check(full, s.label, cl, nd));
    }
}

TEST_CASE("one nonabelian instance end to end") {
    LatticePtr s3 = make_lattice(named_group("symmetric:3"));
    int a3 = -1;
    for (int k = 0; k < s3->size(); ++k)
        if (s3->order_of(k) == 3) a3 = k;
    TransferSystem ts = generate(s3, {{a3, s3->top()}});
    auto bad = check_system_mackey(ts, true, 3);
    for (auto& b : bad) MESSAGE(b);
    CHECK(bad.empty());
}

TEST_CASE("lewis diagram export mentions every level") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    TransferSystem ts = generate(c6, {{cyc_sub(*c6, 2), c6->top()}});
    std::string dot = lewis_diagram_dot(burnside_mackey(ts));
    for (int l = 0; l < c6->size(); ++l)
        CHECK(dot.find("n" + std::to_string(l)) != std::string::npos);
    CHECK(dot.find("tr") != std::string::npos);
    CHECK(dot.find("res") != std::string::npos);
}
