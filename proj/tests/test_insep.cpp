#include <doctest.h>

#include "omack/insep.hpp"

#include <set>

using namespace omack;

namespace {

int cyc_sub(const SubgroupLattice& lat, int order) {
    for (int k = 0; k < lat.size(); ++k)
        if (lat.order_of(k) == order) return k;
    REQUIRE(false);
    return -1;
}

} // namespace

TEST_CASE("hulls") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    int c1 = c6->bottom(), c2 = cyc_sub(*c6, 2), c3 = cyc_sub(*c6, 3), top = c6->top();
    TransferSystem ts = generate(c6, {{c2, top}});
    CHECK(hull(ts, c2) == c2);     // admissible subgroups are their own hull
    CHECK(hull(ts, top) == top);
    CHECK(hull(ts, c1) == c2);
    CHECK(hull(ts, c3) == top);

    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    int d1 = c8->bottom(), d2 = cyc_sub(*c8, 2), d4 = cyc_sub(*c8, 4);
    TransferSystem t8 = generate(c8, {{d1, d2}, {d1, d4}, {d1, c8->top()}, {d2, d4}});
    CHECK(hull(t8, d2) == c8->top());
    CHECK(hull(t8, d4) == c8->top());
}

TEST_CASE("partitions") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    // maximal: classes are conjugacy classes (singletons in an abelian group)
    InsepPartition pm = partition(maximal_system(c6));
    CHECK(pm.classes.size() == 4);
    // minimal: one class containing everything
    InsepPartition p0 = partition(minimal_system(c6));
    REQUIRE(p0.classes.size() == 1);
    CHECK(p0.classes[0].second == std::vector<int>{0, 1, 2, 3});

    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    int d1 = c8->bottom(), d2 = cyc_sub(*c8, 2), d4 = cyc_sub(*c8, 4), top = c8->top();
    TransferSystem ts = generate(c8, {{d2, d4}, {d2, top}});
    InsepPartition p = partition(ts);
    REQUIRE(p.classes.size() == 2);
    CHECK(p.classes[0] == std::pair<int, std::vector<int>>{d2, {d1, d2}});
    CHECK(p.classes[1] == std::pair<int, std::vector<int>>{top, {d4, top}});

    // hull-based and mark-based partitions agree on every C6/C8/S3 system
    for (const char* name : {"cyclic:6", "cyclic:8", "symmetric:3"}) {
        LatticePtr lat = make_lattice(named_group(name));
        for (const TransferSystem& t : enumerate_all(lat)) CHECK(partition(t) == partition_by_marks(t));
    }
}

TEST_CASE("above relation") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    int c1 = c6->bottom(), c2 = cyc_sub(*c6, 2), c3 = cyc_sub(*c6, 3), top = c6->top();
    TransferSystem ts = generate(c6, {{c1, top}, {c3, top}});
    InsepPartition p = partition(ts);
    // classes: [C1], [C3], [C6] = {C2, C6}
    CHECK(p.label[c1] == c1);
    CHECK(p.label[c3] == c3);
    CHECK(p.label[c2] == top);
    CHECK(is_above(ts, top, c3));
    CHECK(!is_above(ts, c2, c3)); // inseparable from C6 yet not above [C3]
    CHECK(is_above(ts, c2, top));

    // H is above its own class.
    for (auto& [label, members] : p.classes) CHECK(is_above(ts, label, label));
}

TEST_CASE("top sets") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    int c2 = cyc_sub(*c6, 2), top = c6->top();
    TransferSystem ts = generate(c6, {{c2, top}});
    TopSet t = top_set(ts, top, c2);
    CHECK(t.members == std::vector<int>{c2});
    CHECK(t.l_orbit_reps == std::vector<int>{c2});
    // C3 is above [C2] through the trivial subgroup; C2 is not above [C6].
    CHECK(top_set(ts, cyc_sub(*c6, 3), c2).members == std::vector<int>{c6->bottom()});
    CHECK_THROWS_AS(top_set(ts, c2, top), Error);

    // S3 with the maximal system: L an order-2 subgroup, class of order 2.
    LatticePtr s3 = make_lattice(named_group("symmetric:3"));
    TransferSystem full = maximal_system(s3);
    std::vector<int> twos;
    for (int k = 0; k < s3->size(); ++k)
        if (s3->order_of(k) == 2) twos.push_back(k);
    int label = partition(full).label[twos[0]];
    TopSet tt = top_set(full, twos[1], label);
    CHECK(tt.members == std::vector<int>{twos[1]});
    // Independent route: intersect L with all three conjugates, keep class members.
    std::set<int> direct;
    for (int g = 0; g < s3->group.order; ++g) {
        int inter = s3->meet(twos[1], s3->conj_sub(g, label));
        if (partition(full).label[inter] == label) direct.insert(inter);
    }
    CHECK(direct == std::set<int>{twos[1]});
}

TEST_CASE("tombstone decompositions") {
    // Abelian: the class equals its under-label part.
    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    int d1 = c8->bottom(), d2 = cyc_sub(*c8, 2), d4 = cyc_sub(*c8, 4), top = c8->top();
    TransferSystem ts = generate(c8, {{d1, d2}, {d1, d4}, {d1, top}, {d2, d4}});
    InsepPartition p = partition(ts);
    REQUIRE(p.classes.size() == 2);
    CHECK(p.members_of(top) == std::vector<int>{d2, d4, top});
    CHECK(class_under_label(ts, top) == std::vector<int>{d2, d4, top});
    CHECK(tombstone_check(ts, top));
    CHECK(tombstone_check(ts, d1));

    // S3, maximal system, order-2 class: three conjugates, one per component.
    LatticePtr s3 = make_lattice(named_group("symmetric:3"));
    TransferSystem full = maximal_system(s3);
    InsepPartition ps = partition(full);
    for (auto& [label, members] : ps.classes) {
        CHECK(tombstone_check(full, label));
        if (s3->order_of(label) == 2) {
            CHECK(members.size() == 3);
            CHECK(class_under_label(full, label) == std::vector<int>{label});
        }
    }
}

TEST_CASE("internal transfers") {
    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    int d1 = c8->bottom(), d2 = cyc_sub(*c8, 2), d4 = cyc_sub(*c8, 4), top = c8->top();
    TransferSystem ts = generate(c8, {{d1, d2}, {d1, d4}, {d1, top}, {d2, d4}});
    CHECK(internal_transfers(ts, top) == std::vector<std::pair<int, int>>{{d2, d4}});
    CHECK(internal_transfers(ts, d1).empty());

    TransferSystem od = maximal_disklike(ts);
    CHECK(internal_transfers(od, top).empty());

    // Disk-like systems never have internal transfers; maximal systems have
    // singleton-conjugacy classes.
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    for (const TransferSystem& t : enumerate_all(c6)) {
        InsepPartition p = partition(t);
        if (is_disklike(t))
            for (auto& [label, members] : p.classes) CHECK(internal_transfers(t, label).empty());
    }
    InsepPartition pm = partition(maximal_system(c6));
    for (auto& [label, members] : pm.classes) CHECK(internal_transfers(maximal_system(c6), label).empty());
}

TEST_CASE("hull rigidity and normalizer rigidity") {
    for (const char* name : {"symmetric:3", "dihedral:4"}) {
        LatticePtr lat = make_lattice(named_group(name));
        TransferSystem full = maximal_system(lat);
        // also try one generated incomplete system per group
        std::vector<TransferSystem> some = {full, generate(lat, {{lat->bottom(), lat->top()}})};
        for (const TransferSystem& ts : some) {
            InsepPartition p = partition(ts);
            for (int j = 0; j < lat->size(); ++j) {
                int hj = hull(ts, j);
                for (int g = 0; g < lat->group.order; ++g) {
                    CHECK(hull(ts, lat->conj_sub(g, j)) == lat->conj_sub(g, hj));
                    if (!lat->contains(lat->normalizer(hj), g))
                        CHECK(!lat->leq(j, lat->conj_sub(g, hj)));
                }
            }
            for (auto& [label, members] : p.classes)
                for (int k : members) {
                    if (!lat->leq(k, label)) continue;
                    for (int g = 0; g < lat->group.order; ++g)
                        if (lat->leq(lat->conj_sub(g, k), label))
                            CHECK(lat->contains(lat->normalizer(label), g));
                    CHECK(lat->leq(lat->normalizer(k), lat->normalizer(label)));
                }
        }
    }
}
