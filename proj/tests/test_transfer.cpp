#include <doctest.h>

#include "omack/transfer.hpp"

#include <set>

using namespace omack;

namespace {

// Unique subgroup of a given order in a cyclic group.
int cyc_sub(const SubgroupLattice& lat, int order) {
    for (int k = 0; k < lat.size(); ++k)
        if (lat.order_of(k) == order) return k;
    REQUIRE(false);
    return -1;
}

// Brute-force strict chain count for the Mobius definition.
long long mobius_bruteforce(const TransferSystem& ts, int k, int h) {
    if (k == h) return 1;
    long long total = 0;
    // chains k = H0 -> ... -> Hi = h, sign (-1)^i, enumerated by DFS
    struct Rec {
        const TransferSystem& ts;
        int h;
        long long go(int at, int len) {
            if (at == h) return (len % 2 == 0) ? 1 : -1;
            long long acc = 0;
            for (int j = 0; j < ts.lat->size(); ++j)
                if (j != at && ts.rel[at][j] && ts.rel[j][h]) acc += go(j, len + 1);
            return acc;
        }
    } rec{ts, h};
    for (int j = 0; j < ts.lat->size(); ++j)
        if (j != k && ts.rel[k][j] && ts.rel[j][h]) total += rec.go(j, 1);
    if (ts.rel[k][h] && k != h) {
        // the length-1 chain k -> h is included above via j == h
    }
    return total;
}

} // namespace

TEST_CASE("validate accepts the extremes and reports restriction gaps") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    CHECK(validate(minimal_system(c6)).empty());
    CHECK(validate(maximal_system(c6)).empty());

    // {C2 -> C6} without C1 -> C3 violates restriction along C3.
    TransferSystem ts = minimal_system(c6);
    int c2 = cyc_sub(*c6, 2), c3 = cyc_sub(*c6, 3);
    ts.rel[c2][c6->top()] = true;
    auto v = validate(ts);
    REQUIRE(!v.empty());
    bool found = false;
    for (auto& viol : v)
        if (viol.kind == TsViolation::Kind::Restriction && viol.witness == c3) found = true;
    CHECK(found);
}

TEST_CASE("generate closes seeds minimally") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    CHECK(generate(c6, {}).same_relation(minimal_system(c6)));

    int c1 = c6->bottom(), c2 = cyc_sub(*c6, 2), c3 = cyc_sub(*c6, 3), top = c6->top();
    TransferSystem ts = generate(c6, {{c2, top}});
    CHECK(ts.pairs() == std::vector<std::pair<int, int>>{{c1, c3}, {c2, top}});
    CHECK(validate(ts).empty());

    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    int d2 = cyc_sub(*c8, 2), d4 = cyc_sub(*c8, 4);
    TransferSystem t8 = generate(c8, {{d2, d4}, {d2, c8->top()}});
    CHECK(t8.pairs() == std::vector<std::pair<int, int>>{{d2, d4}, {d2, c8->top()}});

    CHECK_THROWS_AS(generate(c6, {{c2, c3}}), Error);
}

TEST_CASE("restriction to a subgroup") {
    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    int c2 = cyc_sub(*c8, 2), c4 = cyc_sub(*c8, 4);
    TransferSystem ts = generate(c8, {{c2, c4}, {c2, c8->top()}});
    CHECK(restrict_to_subgroup(ts, c8->top()).same_relation(ts));

    TransferSystem bottom = restrict_to_subgroup(ts, c8->bottom());
    CHECK(bottom.pairs().empty());

    TransferSystem mid = restrict_to_subgroup(ts, c4);
    CHECK(mid.pairs() == std::vector<std::pair<int, int>>{{c2, c4}});
    CHECK(validate(mid).empty());
}

TEST_CASE("restriction is invariant under normalizer conjugation") {
    LatticePtr s3 = make_lattice(named_group("symmetric:3"));
    TransferSystem full = maximal_system(s3);
    for (int h = 0; h < s3->size(); ++h) {
        TransferSystem r = restrict_to_subgroup(full, h);
        for (int n : s3->subgroups[s3->normalizer(h)].elements)
            for (auto [k, j] : r.pairs())
                CHECK(r.rel[s3->conj_sub(n, k)][s3->conj_sub(n, j)]);
    }
}

TEST_CASE("enumeration counts and the powerset oracle") {
    auto count = [](const char* name) {
        return int(enumerate_all(make_lattice(named_group(name))).size());
    };
    CHECK(count("cyclic:2") == 2);
    CHECK(count("cyclic:3") == 2);
    CHECK(count("cyclic:5") == 2);
    CHECK(count("cyclic:4") == 5);
    CHECK(count("cyclic:8") == 14);
    CHECK(count("cyclic:16") == 42);
    CHECK(count("cyclic:6") == 10);

    for (const char* name : {"cyclic:4", "cyclic:6", "cyclic:8", "klein4", "symmetric:3",
                             "quaternion:8"}) {
        LatticePtr lat = make_lattice(named_group(name));
        auto fast = enumerate_all(lat);
        auto serial = enumerate_all_serial(lat);
        auto oracle = enumerate_all_powerset(lat);
        REQUIRE(fast.size() == oracle.size());
        REQUIRE(fast.size() == serial.size());
        for (size_t i = 0; i < fast.size(); ++i) {
            CHECK(fast[i].same_relation(oracle[i]));
            CHECK(fast[i].same_relation(serial[i]));
            CHECK(validate(fast[i]).empty());
        }
    }
}

TEST_CASE("enumerated systems are closed and satisfy the meet property") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    for (const TransferSystem& ts : enumerate_all(c6)) {
        CHECK(generate(c6, ts.pairs()).same_relation(ts));
        for (int h = 0; h < c6->size(); ++h)
            for (int j = 0; j < c6->size(); ++j)
                for (int k = 0; k < c6->size(); ++k)
                    if (ts.rel[h][k] && ts.rel[j][k]) {
                        int m = c6->meet(h, j);
                        CHECK(ts.rel[m][h]);
                        CHECK(ts.rel[m][j]);
                    }
    }
}

TEST_CASE("disk-like detection and reduction") {
    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    int c1 = c8->bottom(), c2 = cyc_sub(*c8, 2), c4 = cyc_sub(*c8, 4), top = c8->top();

    CHECK(is_disklike(maximal_system(c8)));
    CHECK(is_disklike(minimal_system(c8)));

    TransferSystem ts = generate(c8, {{c1, c2}, {c1, c4}, {c1, top}, {c2, c4}});
    CHECK(ts.pairs() ==
          std::vector<std::pair<int, int>>{{c1, c2}, {c1, c4}, {c1, top}, {c2, c4}});
    CHECK(!is_disklike(ts));
    TransferSystem d = maximal_disklike(ts);
    CHECK(d.pairs() == std::vector<std::pair<int, int>>{{c1, c2}, {c1, c4}, {c1, top}});
    CHECK(is_disklike(d));

    // A lone middle transfer reduces to the trivial system.
    TransferSystem lone = generate(c8, {{c2, c4}});
    CHECK(maximal_disklike(lone).same_relation(minimal_system(c8)));

    // Idempotent and monotone.
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    auto all = enumerate_all(c6);
    for (const auto& a : all) {
        TransferSystem da = maximal_disklike(a);
        CHECK(maximal_disklike(da).same_relation(da));
        for (const auto& b : all)
            if (a.contained_in(b)) CHECK(maximal_disklike(a).contained_in(maximal_disklike(b)));
    }
}

TEST_CASE("mobius values against brute-force chain counting") {
    LatticePtr c8 = make_lattice(named_group("cyclic:8"));
    int c1 = c8->bottom(), c2 = cyc_sub(*c8, 2), c4 = cyc_sub(*c8, 4), top = c8->top();
    TransferSystem ts = generate(c8, {{c1, c2}, {c1, c4}, {c1, top}, {c2, c4}});
    MobiusTable mu = mobius(ts);
    CHECK(mu.at(c1, c1) == 1);
    CHECK(mu.at(c1, c2) == -1); // a cover with no intermediates
    CHECK(mu.at(c1, top) == -1); // C1->C2->C8 and C1->C4->C8 are blocked

    for (LatticePtr lat : {make_lattice(named_group("cyclic:6")), c8}) {
        for (const TransferSystem& t : enumerate_all(lat)) {
            MobiusTable m = mobius(t);
            for (int k = 0; k < lat->size(); ++k)
                for (int h = 0; h < lat->size(); ++h) {
                    if (!t.rel[k][h]) continue;
                    CHECK(m.at(k, h) == mobius_bruteforce(t, k, h));
                    // poset recursion
                    long long sum = 0;
                    for (int j = 0; j < lat->size(); ++j)
                        if (t.rel[k][j] && t.rel[j][h]) sum += m.at(k, j);
                    CHECK(sum == (k == h ? 1 : 0));
                }
        }
    }
}

TEST_CASE("admissibles to the top") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    int c2 = cyc_sub(*c6, 2), top = c6->top();
    CHECK(admissible_to_top(maximal_system(c6)).size() == 4);
    TransferSystem ts = generate(c6, {{c2, top}});
    CHECK(admissible_to_top(ts) == std::vector<int>{c2, top});
    // the minimal admissible equals the meet of all of them
    for (const TransferSystem& t : enumerate_all(c6)) {
        auto adm = admissible_to_top(t);
        int m = t.top;
        for (int a : adm) m = c6->meet(m, a);
        CHECK(std::find(adm.begin(), adm.end(), m) != adm.end());
        CHECK(m == adm.front());
    }
}
