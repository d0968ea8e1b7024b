#include "doctest.h"

#include <set>

#include "superloop/realize.hpp"

using namespace superloop;

namespace {

Mat matrix_of(const MatrixRealization& r, const SparseVec& x)
{
    Mat m(r.size, r.size);
    for (const auto& e : x.entries())
        m.axpy(e.value, r.basis[e.index]);
    return m;
}

// Determinant by fraction-free elimination over mpq_class, independent of rref.
mpq_class oracle_det(std::vector<std::vector<mpq_class>> a)
{
    const std::size_t n = a.size();
    mpq_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            mpq_class f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

std::vector<std::vector<mpq_class>> to_mpq(const Mat& m)
{
    std::vector<std::vector<mpq_class>> out;
    for (const auto& row : m.to_dense()) {
        std::vector<mpq_class> q;
        for (const auto& x : row)
            q.push_back(x.to_mpq());
        out.push_back(q);
    }
    return out;
}

} // namespace

TEST_CASE("sl dimensions")
{
    auto a = build_sl(2, 1);
    CHECK(a.algebra->dim() == 8);
    CHECK(a.algebra->indices_of(Parity::Even).size() == 4);
    CHECK(a.algebra->indices_of(Parity::Odd).size() == 4);
    CHECK_FALSE(a.algebra->center());

    auto b = build_sl(2, 2);
    CHECK(b.algebra->dim() == 15);
    REQUIRE(b.algebra->center());
    CHECK(matrix_of(*b.realization, *b.algebra->center()) == Mat::identity(4));
    const auto& z = *b.algebra->center();
    for (std::size_t i = 0; i < b.algebra->dim(); ++i)
        CHECK(b.algebra->bracket(z, b.algebra->basis_vector(i)).is_zero());

    for (const auto& m : b.realization->basis)
        CHECK(supertrace(m, 2, 2).is_zero());
    CHECK_THROWS_AS(build_sl(1, 1), PreconditionError);
    CHECK_THROWS_AS(build_sl(0, 3), PreconditionError);
}

TEST_CASE("C dimensions")
{
    auto c = build_C(3);
    CHECK(c.algebra->dim() == 19);
    CHECK(c.algebra->indices_of(Parity::Even).size() == 11);
    CHECK(c.algebra->indices_of(Parity::Odd).size() == 8);
    for (const auto& m : c.realization->basis)
        CHECK(supertrace(m, 2, 4).is_zero());
    CHECK_THROWS_AS(build_C(2), PreconditionError);
    for (std::size_t m : {3u, 4u, 5u})
        CHECK(build_C(m).algebra->dim() == 1 + (m - 1) * (2 * m - 1) + 4 * (m - 1));
}

TEST_CASE("supertrace")
{
    CHECK(supertrace(Mat::identity(3), 2, 1) == Scalar(1));
    CHECK(supertrace(Mat::identity(4), 2, 2).is_zero());
    Mat odd(3, 3);
    odd.set(0, 2, 5);
    odd.set(2, 1, -2);
    CHECK(supertrace(odd, 2, 1).is_zero());
    CHECK_THROWS_AS(supertrace(Mat::identity(3), 2, 2), PreconditionError);
}

TEST_CASE("realization faithfulness")
{
    for (auto r : {build_sl(2, 1), build_sl(2, 2), build_C(3)}) {
        const auto& g = *r.algebra;
        const auto& m = *r.realization;
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t j = 0; j < g.dim(); ++j) {
                const Mat& x = m.basis[i];
                const Mat& y = m.basis[j];
                // Plain matrix supercommutator, parity taken from the table.
                Mat expect = x * y;
                int s = (g.parity(i) == Parity::Odd && g.parity(j) == Parity::Odd) ? -1 : 1;
                expect.axpy(Scalar(-s), y * x);
                CHECK(matrix_of(m, g.bracket_basis(i, j)) == expect);
            }
    }
}

TEST_CASE("center split")
{
    auto a = build_sl(2, 1);
    CenterSplit s = center_split(*a.algebra);
    Mat z = matrix_of(*a.realization, s.z);
    Mat expect(3, 3);
    expect.set(0, 0, 1);
    expect.set(1, 1, 1);
    expect.set(2, 2, 2);
    CHECK(z == expect);
    CHECK(s.ss_indices.size() == 3);
    CHECK(s.h_ss.size() == 1);
    for (std::size_t i : a.algebra->indices_of(Parity::Even))
        CHECK(a.algebra->bracket(s.z, a.algebra->basis_vector(i)).is_zero());

    auto c = build_C(3);
    CenterSplit sc = center_split(*c.algebra);
    Mat zc = matrix_of(*c.realization, sc.z);
    Mat alpha(6, 6);
    alpha.set(0, 0, 1);
    alpha.set(1, 1, -1);
    CHECK(zc == alpha);
    CHECK(sc.ss_indices.size() == 10);
    CHECK(sc.h_ss.size() == 2);

    // sl(m,n): z = diag(n 1_m, m 1_n) up to scale.
    auto b = build_sl(3, 1);
    Mat z31 = matrix_of(*b.realization, center_split(*b.algebra).z);
    Mat e31(4, 4);
    for (std::size_t i = 0; i < 3; ++i)
        e31.set(i, i, 1);
    e31.set(3, 3, 3);
    CHECK(z31 == e31);

    // sl(2,2): the even center is the identity, which is central in all of g.
    auto d = build_sl(2, 2);
    CenterSplit sd = center_split(*d.algebra);
    CHECK(sd.z == *d.algebra->center());
}

TEST_CASE("semisimple parts have nondegenerate Killing forms")
{
    for (auto r : {build_sl(2, 1), build_sl(3, 1), build_C(3)}) {
        CenterSplit s = center_split(*r.algebra);
        auto ss = semisimple_part(*r.algebra, s);
        CHECK(check_axioms(*ss).pass());
        CHECK(oracle_det(to_mpq(killing_form(*ss))) != 0);
    }
    CHECK(semisimple_part(*build_C(3).algebra, center_split(*build_C(3).algebra))->dim() == 10);
}

TEST_CASE("triangular decompositions")
{
    auto a = build_sl(2, 1);
    Triangular t = triangular(*a.algebra);
    CHECK(t.pos.size() == 3);
    CHECK(t.neg.size() == 3);
    CHECK(t.cartan.size() == 2);
    // Odd positive roots are eps_i - delta_1.
    std::set<Root> odd_pos;
    for (std::size_t i : t.pos)
        if (a.algebra->parity(i) == Parity::Odd) {
            odd_pos.insert(a.algebra->root_of(i));
            CHECK(a.algebra->zdeg(i) == 1);
        }
    const auto& r = *a.realization;
    CHECK(odd_pos == std::set<Root>{r.functional({1, 0, -1}), r.functional({0, 1, -1})});

    auto c = build_C(3);
    Triangular tc = triangular(*c.algebra);
    CHECK(tc.pos.size() == 8);
    CHECK(tc.neg.size() == 8);
    std::size_t odd = 0;
    for (std::size_t i : tc.pos)
        if (c.algebra->parity(i) == Parity::Odd) {
            ++odd;
            CHECK(c.algebra->zdeg(i) == 1);
        }
    CHECK(odd == 4);

    // sl(2,2) has no regular element in h; the stored split is used.
    auto b = build_sl(2, 2);
    CHECK(b.algebra->regular().empty());
    Triangular tb = triangular(*b.algebra);
    CHECK(tb.pos.size() == tb.neg.size());
    CHECK(tb.pos.size() == 6);
}

TEST_CASE("property: root and degree counts for small block sizes")
{
    for (std::size_t m = 1; m <= 5; ++m)
        for (std::size_t n = 1; m + n <= 6; ++n) {
            if (m + n < 3)
                continue;
            CAPTURE(m);
            CAPTURE(n);
            auto r = build_sl(m, n);
            const auto& g = *r.algebra;
            CHECK(g.dim() == (m + n) * (m + n) - 1);
            CHECK(g.indices_of_degree(1).size() == m * n);
            CHECK(g.indices_of_degree(-1).size() == m * n);
            // Roots counted with multiplicity: for m == n the odd roots
            // eps_i - delta_j and delta_k - eps_l agree on h in pairs.
            std::size_t even = 0;
            std::size_t odd = 0;
            std::size_t total = 0;
            for (const auto& s : root_decomposition(g)) {
                total += s.indices.size();
                if (!s.root.is_zero())
                    (s.parity == Parity::Even ? even : odd) += s.indices.size();
            }
            CHECK(total == g.dim());
            CHECK(even == m * (m - 1) + n * (n - 1));
            CHECK(odd == 2 * m * n);
            if (m + n <= 4)
                CHECK(check_axioms(g).pass());
            CHECK(check_z_grading(g).pass());
        }
    for (std::size_t m : {3u, 4u}) {
        auto r = build_C(m);
        const auto& g = *r.algebra;
        CHECK(g.indices_of_degree(1).size() == 2 * (m - 1));
        CHECK(g.indices_of_degree(-1).size() == 2 * (m - 1));
        std::size_t odd = 0;
        for (const auto& s : root_decomposition(g))
            if (!s.root.is_zero() && s.parity == Parity::Odd)
                ++odd;
        CHECK(odd == 4 * (m - 1));
    }
}

TEST_CASE("odd brackets leave the derived even part")
{
    for (auto r : {build_sl(2, 1), build_sl(3, 2), build_C(3), build_C(4)}) {
        const auto& g = *r.algebra;
        CenterSplit s = center_split(g);
        bool witness = false;
        for (std::size_t i : g.indices_of(Parity::Odd))
            for (std::size_t j : g.indices_of(Parity::Odd))
                if (!s.z_component(g.bracket_basis(i, j)).is_zero())
                    witness = true;
        CHECK(witness);
        auto w = odd_bracket_center_witness(g, s);
        REQUIRE(w);
        CHECK(s.z_component(g.bracket_basis(w->i, w->j)) == w->z_component);
    }
}
