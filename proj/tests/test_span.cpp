#include <doctest.h>

#include "omack/mackey.hpp"
#include "omack/span.hpp"

using namespace omack;

namespace {

int cyc_sub(const SubgroupLattice& lat, int order) {
    for (int k = 0; k < lat.size(); ++k)
        if (lat.order_of(k) == order) return k;
    REQUIRE(false);
    return -1;
}

SpanSum compose_sum(const SubgroupLattice& lat, const SpanSum& a, const Span& b) {
    SpanSum out;
    for (const auto& [s, c] : a)
        for (const auto& [t, d] : span_compose(lat, s, b)) out[t] += c * d;
    return out;
}

} // namespace

TEST_CASE("identity spans act as identities") {
    LatticePtr s3 = make_lattice(named_group("symmetric:3"));
    TransferSystem full = maximal_system(s3);
    for (int k = 0; k < s3->size(); ++k)
        for (int l = 0; l < s3->size(); ++l)
            for (const Span& s : span_basis(full, k, l)) {
                SpanSum left = span_compose(*s3, span_identity(*s3, k), s);
                SpanSum right = span_compose(*s3, s, span_identity(*s3, l));
                CHECK(left == SpanSum{{s, 1}});
                CHECK(right == SpanSum{{s, 1}});
            }
}

TEST_CASE("span composition is associative") {
    LatticePtr s3 = make_lattice(named_group("symmetric:3"));
    TransferSystem full = maximal_system(s3);
    int e = s3->bottom(), t = -1, a3 = -1, g = s3->top();
    for (int k = 0; k < s3->size(); ++k) {
        if (s3->order_of(k) == 2 && t < 0) t = k;
        if (s3->order_of(k) == 3) a3 = k;
    }
    std::vector<std::array<int, 4>> chains = {
        {g, t, a3, g}, {e, t, g, a3}, {t, g, t, g}, {a3, g, e, t}};
    for (auto [w, x, y, z] : chains)
        for (const Span& s1 : span_basis(full, w, x))
            for (const Span& s2 : span_basis(full, x, y))
                for (const Span& s3v : span_basis(full, y, z)) {
                    SpanSum left = compose_sum(*s3, span_compose(*s3, s1, s2), s3v);
                    SpanSum right;
                    for (const auto& [mid, c] : span_compose(*s3, s2, s3v))
                        for (const auto& [fin, d] : span_compose(*s3, s1, mid)) right[fin] += c * d;
                    CHECK(left == right);
                }
}

TEST_CASE("span bases respect admissibility") {
    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    int c2 = cyc_sub(*c6, 2), top = c6->top();
    TransferSystem ts = generate(c6, {{c2, top}});
    for (int k = 0; k < c6->size(); ++k)
        for (int l = 0; l < c6->size(); ++l)
            for (const Span& s : span_basis(ts, k, l)) CHECK(span_admissible(ts, s));
    // With fewer transfers there are no more spans than in the complete case.
    TransferSystem full = maximal_system(c6);
    for (int k = 0; k < c6->size(); ++k)
        for (int l = 0; l < c6->size(); ++l)
            CHECK(span_basis(ts, k, l).size() <= span_basis(full, k, l).size());
}

TEST_CASE("represented functor dimensions") {
    // With the maximal system and K trivial, the level-L dimension is the
    // number of L-orbits on G, i.e. the index of L.
    LatticePtr s3 = make_lattice(named_group("symmetric:3"));
    TransferSystem full = maximal_system(s3);
    MackeyFunctor m = represented_mackey(full, s3->bottom());
    for (int l = 0; l < s3->size(); ++l) CHECK(m.dim(l) == s3->group.order / s3->order_of(l));
}

TEST_CASE("represented functors satisfy the axioms") {
    // This pits the span calculus against the whole Lewis-diagram axiom
    // battery, double cosets included.
    LatticePtr s3 = make_lattice(named_group("symmetric:3"));
    TransferSystem full = maximal_system(s3);
    for (int k : s3->class_reps()) CHECK(validate_mackey(represented_mackey(full, k)).empty());

    LatticePtr c6 = make_lattice(named_group("cyclic:6"));
    TransferSystem ts = generate(c6, {{cyc_sub(*c6, 2), c6->top()}});
    for (int k : c6->class_reps()) CHECK(validate_mackey(represented_mackey(ts, k)).empty());

    LatticePtr d4 = make_lattice(named_group("dihedral:4"));
    TransferSystem td = generate(d4, {{d4->bottom(), d4->top()}});
    CHECK(validate_mackey(represented_mackey(td, d4->bottom())).empty());
}
