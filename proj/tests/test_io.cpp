#include <doctest.h>

#include "omack/json_io.hpp"

using namespace omack;

namespace {

int cyc_sub(const SubgroupLattice& lat, int order) {
    for (int k = 0; k < lat.size(); ++k)
        if (lat.order_of(k) == order) return k;
    REQUIRE(false);
    return -1;
}

} // namespace

TEST_CASE("group files round trip and reindex the identity") {
    FiniteGroup g = named_group("symmetric:3");
    Json j = group_to_json(g);
    FiniteGroup g2 = group_from_json(j);
    CHECK(g2.mul == g.mul);

    // identity sitting at index 1 gets moved to 0
    Json shifted;
    shifted["order"] = 2;
    shifted["mul"] = Json::array({Json::array({1, 0}), Json::array({0, 1})});
    FiniteGroup h = group_from_json(shifted);
    CHECK(h.identity == 0);
    CHECK(h.reindex_permutation == std::vector<int>{1, 0});

    CHECK_THROWS_AS(group_from_json(Json::object()), Error);
    CHECK(resolve_group_spec("cyclic:6").order == 6);
}

TEST_CASE("transfer system files report closure additions") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    int c1 = c6->bottom(), c2 = cyc_sub(*c6, 2), c3 = cyc_sub(*c6, 3), top = c6->top();
    Json j;
    j["group"] = "cyclic:6";
    j["pairs"] = Json::array({Json::array({c2, top})});
    TsLoadResult r = ts_from_json(j);
    CHECK(r.given == std::vector<std::pair<int, int>>{{c2, top}});
    CHECK(r.added == std::vector<std::pair<int, int>>{{c1, c3}});
    CHECK(validate(r.ts).empty());

    // round trip
    TsLoadResult r2 = ts_from_json(ts_to_json(r.ts));
    CHECK(r2.ts.same_relation(r.ts));
    CHECK(r2.added.empty());
}

TEST_CASE("elements serialize canonically") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    BurnsideElement e;
    e.level = c6->top();
    e.coeffs[c6->bottom()] = rat(-2, 6);
    e.coeffs[c6->top()] = rat(4, 2);
    Json j = element_to_json(e);
    CHECK(j.at("coeffs").at("0").get<std::string>() == "-1/3");
    CHECK(j.at("coeffs").at("3").get<std::string>() == "2");
    CHECK(element_from_json(j) == e);
}

TEST_CASE("partition export schema") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    TransferSystem ts = generate(c6, {{cyc_sub(*c6, 2), c6->top()}});
    Json j = partition_to_json(partition(ts));
    REQUIRE(j.contains("classes"));
    REQUIRE(j.contains("hull"));
    CHECK(j.at("classes").size() == 2);
    CHECK(j.at("hull").at("0").get<int>() == cyc_sub(*c6, 2));
}

TEST_CASE("mackey functors round trip") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    TransferSystem ts = generate(c6, {{cyc_sub(*c6, 2), c6->top()}});
    MackeyFunctor b = burnside_mackey(ts);
    Json j = mackey_to_json(b);
    MackeyFunctor b2 = mackey_from_json(j);
    CHECK(validate_mackey(b2).empty());
    CHECK(b2.dims == b.dims);
    CHECK(b2.res == b.res);
    CHECK(b2.tr == b.tr);
    CHECK(b2.conj == b.conj);
}

TEST_CASE("conjugation data extends from generators") {
    LatticePtr s3 = make_lattice(named_group("symmetric:3"));
    TransferSystem full = maximal_system(s3);
    MackeyFunctor rep = represented_mackey(full, s3->bottom());
    Json j = mackey_to_json(rep);
    // strip conj entries for non-generators, keep g=1..2 (transposition and
    // 3-cycle generate S3)
    Json conj = Json::object();
    for (auto& [key, val] : j.at("conj").items()) {
        int g = std::stoi(key.substr(0, key.find(',')));
        if (g == 1 || g == 2) conj[key] = val;
    }
    j["conj"] = conj;
    MackeyFunctor back = mackey_from_json(j);
    CHECK(back.conj == rep.conj);
}

TEST_CASE("canonical dumps and hashes are stable") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    TransferSystem ts = generate(c6, {{cyc_sub(*c6, 2), c6->top()}});
    Json a = ts_to_json(ts);
    Json b = ts_to_json(generate(c6, {{cyc_sub(*c6, 2), c6->top()}}));
    CHECK(canonical_dump(a) == canonical_dump(b));
    CHECK(content_hash(a) == content_hash(b));
    b["pairs"].push_back(Json::array({0, 3}));
    CHECK(content_hash(a) != content_hash(b));
}
