#include "doctest.h"

#include <set>

#include "superloop/realize.hpp"

using namespace superloop;

namespace {

LieSuperalgebra abelian(std::size_t n)
{
    LieSuperalgebra g("abelian", std::vector<Parity>(n, Parity::Even));
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < n; ++i)
        all.push_back(i);
    g.set_cartan(all);
    return g;
}

} // namespace

TEST_CASE("bracket on an abelian algebra")
{
    LieSuperalgebra g = abelian(3);
    SparseVec x = SparseVec::from_dense(std::vector<Scalar>{1, 2, 3});
    CHECK(g.bracket(x, x).is_zero());
    CHECK_THROWS_AS(g.bracket(x, SparseVec(2)), std::invalid_argument);
    auto roots = root_decomposition(g);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].root.is_zero());
    CHECK(roots[0].indices.size() == 3);
}

TEST_CASE("sl(2,1) odd anticommutator")
{
    auto [g, r] = build_sl(2, 1);
    auto idx = [&](const std::string& label) {
        for (std::size_t i = 0; i < r->labels.size(); ++i)
            if (r->labels[i] == label)
                return i;
        FAIL("no label " << label);
        return std::size_t{0};
    };
    std::size_t e13 = idx("E1,3");
    std::size_t e31 = idx("E3,1");
    CHECK(g->parity(e13) == Parity::Odd);
    Mat expect(3, 3);
    expect.set(0, 0, 1);
    expect.set(2, 2, 1);
    SparseVec b = g->bracket_basis(e13, e31);
    Mat back(3, 3);
    for (const auto& e : b.entries())
        back.axpy(e.value, r->basis[e.index]);
    CHECK(back == expect);

    // [h, x_alpha] = alpha(h) x_alpha, with alpha read off the diagonal of h.
    for (std::size_t c : g->cartan())
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                if (i == j)
                    continue;
                std::size_t x = idx("E" + std::to_string(i + 1) + "," + std::to_string(j + 1));
                Scalar a = r->basis[c].at(i, i) - r->basis[c].at(j, j);
                CHECK(g->bracket_basis(c, x) == SparseVec::unit(8, x, a));
            }
}

TEST_CASE("axiom checks pass on constructed algebras and catch injected faults")
{
    auto sl21 = build_sl(2, 1);
    auto rep = check_axioms(*sl21.algebra);
    CHECK(rep.pass());
    CHECK(rep.triples_checked == 8 * 8 * 8);

    auto c3 = build_C(3);
    auto rc = check_axioms(*c3.algebra);
    CHECK(rc.pass());
    CHECK(rc.triples_checked == 19 * 19 * 19);

    LieSuperalgebra bad = *sl21.algebra;
    // Corrupt one constant by +1.
    std::size_t i = bad.cartan()[0];
    std::size_t j = bad.indices_of(Parity::Odd)[0];
    SparseVec v = bad.bracket_basis(i, j);
    v.set(j, v.get(j) + 1);
    bad.set_bracket(i, j, v);
    auto rb = check_axioms(bad);
    CHECK_FALSE(rb.pass());
    bool skew_named = false;
    for (const auto& x : rb.violations)
        if (x.kind == AxiomViolation::Kind::SkewSymmetry && x.i == std::min(i, j) && x.j == std::max(i, j))
            skew_named = true;
    CHECK(skew_named);
}

TEST_CASE("Z-grading checks")
{
    auto [g, r] = build_sl(2, 1);
    auto rep = check_z_grading(*g);
    CHECK(rep.pass());
    CHECK(rep.dim_minus == 2);
    CHECK(rep.dim_plus == 2);
    CHECK(rep.dim_zero == 4);
    CHECK(check_z_grading(*build_C(3).algebra).pass());

    LieSuperalgebra bad = *g;
    std::vector<int> z;
    for (std::size_t i = 0; i < bad.dim(); ++i)
        z.push_back(bad.zdeg(i));
    z[bad.indices_of_degree(-1)[0]] = 1;
    bad.set_zdeg(z);
    CHECK_FALSE(check_z_grading(bad).pass());

    bad.clear_zdeg();
    CHECK_THROWS_AS(check_z_grading(bad), PreconditionError);
}

TEST_CASE("parity of brackets")
{
    for (auto r : {build_sl(2, 1), build_sl(1, 3), build_C(3)}) {
        const auto& g = *r.algebra;
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t j = 0; j < g.dim(); ++j)
                for (const auto& e : g.bracket_basis(i, j).entries())
                    CHECK(g.parity(e.index) == g.parity(i) + g.parity(j));
    }
}

TEST_CASE("root decompositions of sl(2,1) and C(3)")
{
    auto sl = build_sl(2, 1);
    const auto& r = *sl.realization;
    std::set<Root> even;
    std::set<Root> odd;
    std::size_t total = 0;
    for (const auto& s : root_decomposition(*sl.algebra)) {
        total += s.indices.size();
        if (s.root.is_zero())
            continue;
        CHECK(s.indices.size() == 1);
        (s.parity == Parity::Even ? even : odd).insert(s.root);
    }
    CHECK(total == 8);
    auto f = [&](std::vector<Scalar> c) { return r.functional(c); };
    CHECK(even == std::set<Root>{f({1, -1, 0}), f({-1, 1, 0})});
    CHECK(odd == std::set<Root>{f({1, 0, -1}), f({-1, 0, 1}), f({0, 1, -1}), f({0, -1, 1})});

    auto c = build_C(3);
    const auto& rc = *c.realization;
    auto fc = [&](std::vector<Scalar> v) { return rc.functional(v); };
    std::set<Root> ce;
    std::set<Root> co;
    total = 0;
    for (const auto& s : root_decomposition(*c.algebra)) {
        total += s.indices.size();
        if (s.root.is_zero()) {
            CHECK(s.indices.size() == 3);
            continue;
        }
        (s.parity == Parity::Even ? ce : co).insert(s.root);
    }
    CHECK(total == 19);
    std::set<Root> expect_even;
    for (int a : {1, -1}) {
        expect_even.insert(fc({0, 2 * a, 0}));
        expect_even.insert(fc({0, 0, 2 * a}));
        for (int b : {1, -1})
            expect_even.insert(fc({0, a, b}));
    }
    std::set<Root> expect_odd;
    for (int a : {1, -1})
        for (int b : {1, -1}) {
            expect_odd.insert(fc({a, b, 0}));
            expect_odd.insert(fc({a, 0, b}));
        }
    CHECK(ce == expect_even);
    CHECK(co == expect_odd);
    CHECK(rc.root_label(fc({1, 0, -1})) == "eps1-delta2");
}
