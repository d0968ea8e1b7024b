#include "doctest.h"

#include <algorithm>

#include "superloop/repkit.hpp"
#include "weyl_oracle.hpp"

using namespace superloop;
using namespace superloop::oracle;

namespace {

std::vector<Scalar> sorted(std::vector<Scalar> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("defining representations")
{
    auto sl = build_sl(2, 1);
    Representation d = defining_rep(sl);
    CHECK(d.dim() == 3);
    CHECK(d.parity == std::vector<Parity>{Parity::Even, Parity::Even, Parity::Odd});
    CHECK(check_representation(d).pass());
    CHECK(d.weights()[0] == sl.realization->functional({1, 0, 0}));

    auto c = build_C(3);
    Representation dc = defining_rep(c);
    CHECK(dc.dim() == 6);
    CHECK(std::count(dc.parity.begin(), dc.parity.end(), Parity::Odd) == 4);
    CHECK(dc.parity[0] == Parity::Even);
    CHECK(dc.parity[1] == Parity::Even);
    CHECK(check_representation(dc).pass());

    Representation bad = d;
    bad.action[0].set(0, 0, 5);
    CHECK_FALSE(check_representation(bad).pass());
}

TEST_CASE("super tensor products")
{
    auto sl = build_sl(2, 1);
    Representation d = defining_rep(sl);
    Representation t = tensor(d, trivial_rep(sl.algebra));
    CHECK(t.action == d.action);
    CHECK(t.parity == d.parity);

    Representation dd = tensor(d, d);
    CHECK(dd.dim() == 9);
    CHECK(check_representation(dd).pass());
    // Weights add, as multisets.
    auto w = d.weights();
    std::vector<Root> expect;
    for (const auto& a : w)
        for (const auto& b : w)
            expect.push_back(a + b);
    auto got = dd.weights();
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    CHECK(got == expect);

    // Without the sign on the pass-through factor the axiom fails.
    Representation unsigned_dd = dd;
    for (std::size_t x = 0; x < sl.algebra->dim(); ++x) {
        Mat m(9, 9);
        for (std::size_t v = 0; v < 3; ++v)
            for (std::size_t u = 0; u < 3; ++u) {
                for (const auto& e : d.action[x].col(v).entries())
                    m.set(e.index * 3 + u, v * 3 + u, m.at(e.index * 3 + u, v * 3 + u) + e.value);
                for (const auto& e : d.action[x].col(u).entries())
                    m.set(v * 3 + e.index, v * 3 + u, m.at(v * 3 + e.index, v * 3 + u) + e.value);
            }
        unsigned_dd.action[x] = m;
    }
    CHECK_FALSE(check_representation(unsigned_dd).pass());
}

TEST_CASE("sl(2) defining squared")
{
    auto sl = build_sl(2, 1);
    SemisimpleModel ss = semisimple_model(sl);
    REQUIRE(ss.rank() == 1);
    REQUIRE(ss.natural_blocks.size() == 1);
    const Representation& v = ss.natural_blocks[0];
    CHECK(v.dim() == 2);
    Representation vv = tensor(v, v);
    std::vector<Scalar> coords;
    for (const auto& w : vv.weights())
        coords.push_back(ss.fundamental_coordinates(w)[0]);
    CHECK(sorted(coords) == std::vector<Scalar>{-2, 0, 0, 2});
    auto hw = highest_weight_vectors(vv, ss.algebra->positive());
    REQUIRE(hw.size() == 2);
    std::vector<Scalar> hws;
    for (const auto& h : hw)
        hws.push_back(ss.fundamental_coordinates(h.weight)[0]);
    CHECK(sorted(hws) == std::vector<Scalar>{0, 2});

    CHECK(is_irreducible(trivial_rep(ss.algebra)));
    CHECK(is_irreducible(v));
    CHECK_FALSE(is_irreducible(direct_sum(v, v)));
    Representation adj = irreducible_hw_module(ss, {2});
    CHECK(adj.dim() == 3);
    CHECK(is_irreducible(adj));
    CHECK(highest_weight_vectors(adj, ss.algebra->positive()).size() == 1);
    const auto& pos = ss.algebra->positive();
    CHECK(singular_vector_test(adj, pos) == Irreducibility::irreducible);
    CHECK(singular_vector_test(vv, pos) == Irreducibility::reducible);
    CHECK(singular_vector_test(direct_sum(v, v), pos) == Irreducibility::reducible);
    CHECK(highest_weight_vectors(trivial_rep(ss.algebra), ss.algebra->positive()).size() == 1);

    CHECK_THROWS_AS(irreducible_hw_module(ss, {-1}), PreconditionError);
    CHECK_THROWS_AS(irreducible_hw_module(ss, {7}), PreconditionError);
    CHECK_THROWS_AS(irreducible_hw_module(ss, {1, 1}), PreconditionError);
}

// Singular-vector test on every module, Burnside as a second route when cheap.
static bool irreducible_both_ways(const SemisimpleModel& ss, const Representation& v)
{
    Irreducibility s = singular_vector_test(v, triangular(*ss.algebra).pos);
    if (v.dim() <= 30 && is_irreducible(v) != (s == Irreducibility::irreducible))
        return false;
    return s == Irreducibility::irreducible;
}

TEST_CASE("highest weight modules match the Weyl dimension formula")
{
    {
        SemisimpleModel ss = semisimple_model(build_sl(2, 1));
        for (const auto& l : dominant_up_to(1, 4)) {
            CAPTURE(l[0]);
            Representation v = irreducible_hw_module(ss, l);
            CHECK(mpq_class(static_cast<long>(v.dim())) == weyl_dim(A1, l));
            CHECK(irreducible_both_ways(ss, v));
            CHECK(check_representation(v).pass());
        }
    }
    {
        SemisimpleModel ss = semisimple_model(build_sl(3, 1));
        REQUIRE(ss.rank() == 2);
        for (const auto& l : dominant_up_to(2, 4)) {
            CAPTURE(l[0]);
            CAPTURE(l[1]);
            Representation v = irreducible_hw_module(ss, l);
            CHECK(mpq_class(static_cast<long>(v.dim())) == weyl_dim(A2, l));
            CHECK(irreducible_both_ways(ss, v));
        }
    }
    {
        auto c = build_C(3);
        SemisimpleModel ss = semisimple_model(c);
        REQUIRE(ss.rank() == 2);
        // Locate omega = delta_1 among the model's fundamental weights.
        Root delta1 = restrict_root(c.realization->functional({0, 1, 0}), *c.algebra, ss);
        std::size_t first = ss.fundamental[0] == delta1 ? 0 : 1;
        REQUIRE(ss.fundamental[first] == delta1);
        for (const auto& l : dominant_up_to(2, 4)) {
            std::vector<long> model(2);
            model[first] = l[0];
            model[1 - first] = l[1];
            CAPTURE(l[0]);
            CAPTURE(l[1]);
            Representation v = irreducible_hw_module(ss, model);
            CHECK(mpq_class(static_cast<long>(v.dim())) == weyl_dim(C2, l));
            CHECK(irreducible_both_ways(ss, v));
        }
        CHECK(irreducible_hw_module(ss, std::vector<long>{first == 0 ? 1L : 0L, first == 0 ? 0L : 1L}).dim() == 4);
    }
}

TEST_CASE("evaluation modules")
{
    auto sl = build_sl(2, 1);
    SemisimpleModel ss = semisimple_model(sl);
    const Representation& v = ss.natural_blocks[0];

    {
        CofiniteIdeal i({{{Scalar(1), 1}}});
        auto a = std::make_shared<const QuotientAlgebra>(i);
        LoopAlgebra loop = build_loop(ss.algebra, a);
        Representation triv = evaluation_module(loop, EvaluationGrid(i), {trivial_rep(ss.algebra)});
        CHECK(triv.dim() == 1);
        for (const auto& m : triv.action)
            CHECK(m.is_zero());
    }
    {
        // N = 1 at root 1 is the underlying module, for every power of t.
        CofiniteIdeal i({{{Scalar(1), 3}}});
        auto a = std::make_shared<const QuotientAlgebra>(i);
        LoopAlgebra loop = build_loop(ss.algebra, a);
        Representation e = evaluation_module(loop, EvaluationGrid(i.squarefree()), {v});
        for (std::size_t x = 0; x < ss.algebra->dim(); ++x)
            for (std::size_t k = 0; k < a->dim(); ++k)
                CHECK(e.action[loop.index(x, k)] == v.action[x]);
        CHECK(check_representation(e).pass());
    }
    {
        CofiniteIdeal i({{{Scalar(1), 1}, {Scalar(2), 1}}});
        auto a = std::make_shared<const QuotientAlgebra>(i);
        LoopAlgebra loop = build_loop(ss.algebra, a);
        EvaluationGrid grid(i);
        Representation e = evaluation_module(loop, grid, {v, v});
        CHECK(e.dim() == 4);
        CHECK(check_representation(e).pass());
        CHECK(is_irreducible(e));
        Representation one = trivial_rep(ss.algebra);
        Representation slot1 = tensor(v, restrict_to(trivial_rep(ss.algebra), ss.algebra, {0, 1, 2}));
        for (std::size_t x = 0; x < 3; ++x) {
            // X (x) t = X in slot 1 + 2 X in slot 2.
            Mat expect(4, 4);
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t q = 0; q < 2; ++q) {
                    for (const auto& en : v.action[x].col(p).entries())
                        expect.set(en.index * 2 + q, p * 2 + q, expect.at(en.index * 2 + q, p * 2 + q) + en.value);
                    for (const auto& en : v.action[x].col(q).entries())
                        expect.set(p * 2 + en.index, p * 2 + q,
                                   expect.at(p * 2 + en.index, p * 2 + q) + Scalar(2) * en.value);
                }
            CHECK(e.action[loop.index(x, 1)] == expect);
        }
        (void)one;
        (void)slot1;

        Root omega = ss.fundamental[0];
        PsiFunctional psi = psi_of({omega, omega}, grid, *a);
        // psi(h (x) t) at the coroot is 1 + 2.
        Scalar at_coroot;
        const auto& cartan = ss.algebra->cartan();
        for (std::size_t k = 0; k < cartan.size(); ++k)
            at_coroot += ss.coroots[0].get(cartan[k]) * psi.values[k][1];
        CHECK(at_coroot == Scalar(3));
        CHECK(psi_of({Root{{0}}, Root{{0}}}, grid, *a).is_zero());

        // psi read off the highest weight vector agrees.
        auto hw = highest_weight_vectors(e, loop.algebra->positive());
        REQUIRE(hw.size() == 1);
        for (std::size_t c = 0; c < cartan.size(); ++c)
            for (std::size_t k = 0; k < a->dim(); ++k) {
                SparseVec img = e.action[loop.index(cartan[c], k)].apply(hw[0].vector);
                CHECK(img == hw[0].vector.scaled(psi.values[c][k]));
            }
    }
    {
        // Full superalgebra modules: defining rep at two points.
        CofiniteIdeal i({{{Scalar(1), 1}, {Scalar(-2), 1}}});
        auto a = std::make_shared<const QuotientAlgebra>(i);
        LoopAlgebra loop = build_loop(sl.algebra, a);
        Representation d = defining_rep(sl);
        Representation e = evaluation_module(loop, EvaluationGrid(i), {d, d});
        CHECK(e.dim() == 9);
        CHECK(check_representation(e).pass());
        CHECK(is_irreducible(e));
    }
}

TEST_CASE("subrepresentations and quotients")
{
    auto sl = build_sl(2, 1);
    SemisimpleModel ss = semisimple_model(sl);
    const Representation& v = ss.natural_blocks[0];
    Representation vv = tensor(v, v);
    auto hw = highest_weight_vectors(vv, ss.algebra->positive());
    for (const auto& h : hw) {
        Subspace s = cyclic_closure(vv, Subspace::span(4, std::vector<SparseVec>{h.vector}));
        Representation sub = subrepresentation(vv, s);
        Representation q = quotient(vv, s);
        CHECK(sub.dim() + q.dim() == 4);
        CHECK(check_representation(sub).pass());
        CHECK(check_representation(q).pass());
        CHECK(is_irreducible(sub));
        CHECK(is_irreducible(q));
    }
}
