#include "doctest.h"

#include <algorithm>

#include "superloop/induce.hpp"

using namespace superloop;

namespace {

CofiniteIdeal ideal1(std::vector<std::pair<long long, int>> roots)
{
    std::vector<IdealRoot> r;
    for (auto [a, b] : roots)
        r.push_back({Scalar(a), b});
    return CofiniteIdeal({r});
}

LambdaFunctional lam(std::vector<Scalar> v) { return LambdaFunctional{std::move(v)}; }

// Action of z (x) t^e on W, assembled from the D_0 basis.
Mat z_on_W(const InductionSetup& s, const WModule& w, std::size_t e)
{
    Mat out(w.rep.dim(), w.rep.dim());
    for (const auto& c : s.ss.split.z.entries()) {
        std::size_t li = s.loop.index(c.index, e);
        auto it = std::find(w.loop_index.begin(), w.loop_index.end(), li);
        REQUIRE(it != w.loop_index.end());
        out.axpy(c.value, w.rep.action[static_cast<std::size_t>(it - w.loop_index.begin())]);
    }
    return out;
}

bool is_intertwiner(const Mat& t, const Representation& from, const Representation& to)
{
    if (t.rows() != to.dim() || t.cols() != from.dim() || rank(t) != to.dim())
        return false;
    for (std::size_t x = 0; x < from.action.size(); ++x)
        if (!(t * from.action[x] == to.action[x] * t))
            return false;
    return true;
}

} // namespace

TEST_CASE("W for psi = 0 and lambda = 0 is the trivial module")
{
    auto s = induction_setup(build_sl(2, 1), ideal1({{1, 1}}));
    WModule w = build_W(s, {{0}}, lam({0}));
    CHECK(w.rep.dim() == 1);
    for (const auto& a : w.rep.action)
        CHECK(a.is_zero());
}

TEST_CASE("z acts on W through lambda")
{
    auto s = induction_setup(build_sl(2, 1), ideal1({{1, 2}}));
    REQUIRE(s.a->dim() == 2);
    for (long long c0 : {0LL, 2LL, -3LL}) {
        WModule w = build_W(s, {{1}}, lam({c0, c0}));
        const std::size_t n = w.rep.dim();
        CHECK(z_on_W(s, w, 0) == Mat::identity(n).scaled(Scalar(c0)));
        CHECK(z_on_W(s, w, 1) == Mat::identity(n).scaled(Scalar(c0)));

        // lambda(z (x) (t - 1)) = 1 is allowed: only z (x) I must vanish.
        WModule w1 = build_W(s, {{1}}, lam({c0, c0 + 1}));
        CHECK(z_on_W(s, w1, 1) == Mat::identity(n).scaled(Scalar(c0 + 1)));
    }
    CHECK_THROWS_AS(build_W(s, {{1}}, lam({1})), PreconditionError);
    CHECK_THROWS_AS(build_W(s, {{1}, {1}}, lam({1, 1})), PreconditionError);
    CHECK_THROWS_AS(build_W(s, {{-1}}, lam({1, 1})), PreconditionError);
}

TEST_CASE("lambda descends only when it vanishes on z (x) I")
{
    QuotientAlgebra model(ideal1({{1, 3}}));
    QuotientAlgebra target(ideal1({{1, 2}}));
    // lambda(t^k) = 1 + 2k vanishes on (t - 1)^2 A.
    LambdaFunctional l = descend_lambda(model, {Scalar(1), Scalar(3), Scalar(5)}, target);
    CHECK(l.values == std::vector<Scalar>{1, 3});
    CHECK_THROWS_AS(descend_lambda(model, {Scalar(1), Scalar(3), Scalar(6)}, target), PreconditionError);
    CHECK_THROWS_AS(descend_lambda(target, {Scalar(1), Scalar(3)}, model), PreconditionError);
}

TEST_CASE("M has the PBW dimension and is a representation")
{
    struct Case {
        Realized g;
        CofiniteIdeal ideal;
        WeightList weights;
        std::vector<Scalar> lambda;
    };
    std::vector<Case> cases{
        {build_sl(2, 1), ideal1({{1, 1}}), {{1}}, {0}},
        {build_sl(2, 1), ideal1({{1, 2}}), {{1}}, {2, 1}},
        {build_sl(2, 1), ideal1({{1, 1}, {2, 1}}), {{1}, {0}}, {1, 2}},
        {build_sl(2, 1), CofiniteIdeal({{{Scalar(1), 1}}, {{Scalar(-1), 1}}}), {{2}}, {Scalar(1, 2)}},
        {build_C(3), ideal1({{1, 1}}), {{0, 0}}, {1}},
        {build_C(3), ideal1({{1, 1}}), {{1, 0}}, {2}},
    };
    for (const auto& c : cases) {
        auto s = induction_setup(c.g, c.ideal);
        WModule w = build_W(s, c.weights, lam(c.lambda));
        InducedModule m = build_M(s, w);
        std::size_t r = c.g.algebra->indices_of_degree(-1).size() * s.a->dim();
        CHECK(m.r == r);
        CHECK(m.rep.dim() == (std::size_t{1} << r) * w.rep.dim());
        CHECK(check_representation(m.rep).pass());

        // The top: killed by the positive part, h (x) A acts by scalars.
        for (std::size_t x : s.loop.algebra->positive())
            CHECK(m.rep.action[x].apply(m.hw_vector).is_zero());
        for (std::size_t h : c.g.algebra->cartan())
            for (std::size_t e = 0; e < s.a->dim(); ++e) {
                SparseVec u = m.rep.action[s.loop.index(h, e)].apply(m.hw_vector);
                CHECK(u == m.hw_vector.scaled(u.get(m.hw_index)));
            }
        Subspace seed(m.rep.dim());
        seed.insert(m.hw_vector);
        CHECK(cyclic_closure(m.rep, seed).is_full());
    }
    auto s = induction_setup(build_sl(2, 1), ideal1({{1, 1}}));
    CHECK(build_M(s, build_W(s, {{1}}, lam({0}))).rep.dim() == 8);
}

TEST_CASE("weights of Lambda(g_-1) (x) trivial are subset sums of the odd negative roots")
{
    Realized g = build_sl(2, 1);
    auto s = induction_setup(g, ideal1({{1, 1}}));
    InducedModule m = build_M(s, build_W(s, {{0}}, lam({0})));
    std::vector<Root> minus;
    for (std::size_t i : g.algebra->indices_of_degree(-1))
        minus.push_back(g.algebra->root_of(i));
    std::vector<Root> expected;
    for (std::size_t mask = 0; mask < (std::size_t{1} << minus.size()); ++mask) {
        Root r{std::vector<Scalar>(g.algebra->cartan().size())};
        for (std::size_t k = 0; k < minus.size(); ++k)
            if (mask >> k & 1)
                r = r + minus[k];
        expected.push_back(r);
    }
    std::vector<Root> got = m.rep.weights();
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
}

TEST_CASE("irreducible quotient: examples and the covector oracle")
{
    {
        auto s = induction_setup(build_sl(2, 1), ideal1({{1, 1}}));
        InducedPipeline p = build_V(s, {{0}}, lam({0}));
        CHECK(p.q.v.dim() == 1);
        CHECK(p.q.radical_module.dim() == p.m.rep.dim() - 1);
        CHECK(p.q.radical_module == maximal_submodule(p.m));
    }
    {
        // Typical top: M is already irreducible.
        auto s = induction_setup(build_sl(2, 1), ideal1({{1, 1}}));
        InducedPipeline p = build_V(s, {{1}}, lam({0}));
        CHECK(is_irreducible(p.m.rep));
        CHECK(p.q.radical_dim == 0);
        CHECK(p.q.v.dim() == p.m.rep.dim());
    }
    struct Case {
        Realized g;
        CofiniteIdeal ideal;
        WeightList weights;
        std::vector<Scalar> lambda;
    };
    std::vector<Case> cases{
        {build_sl(2, 1), ideal1({{1, 1}}), {{0}}, {1}},
        {build_sl(2, 1), ideal1({{1, 1}}), {{1}}, {-1}},
        {build_sl(2, 1), ideal1({{1, 1}}), {{2}}, {-2}},
        {build_sl(2, 1), ideal1({{1, 2}}), {{0}}, {0, 0}},
        {build_sl(2, 1), ideal1({{1, 2}}), {{1}}, {-1, -1}},
        {build_sl(2, 1), ideal1({{1, 1}, {-1, 1}}), {{1}, {0}}, {-1, 0}},
        {build_C(3), ideal1({{1, 1}}), {{0, 0}}, {0}},
    };
    for (const auto& c : cases) {
        auto s = induction_setup(c.g, c.ideal);
        InducedPipeline p = build_V(s, c.weights, lam(c.lambda));
        CHECK(p.m.rep.dim() <= 64);
        CHECK(p.q.radical_module == maximal_submodule(p.m));
        CHECK(is_irreducible(p.q.v));
        CHECK(check_representation(p.q.v).pass());
    }
}

TEST_CASE("evaluation criterion")
{
    auto s = induction_setup(build_sl(2, 1), ideal1({{1, 2}}));
    // lambda(z (x) (t - 1)) = c1 - c0.
    for (long long c0 = -1; c0 <= 1; ++c0)
        for (long long c1 = -1; c1 <= 1; ++c1) {
            CAPTURE(c0);
            CAPTURE(c1);
            InducedPipeline p = build_V(s, {{1}}, lam({c0, c1}));
            EvaluationCheck ev = is_evaluation(p.q.v, s.loop);
            CHECK(ev.evaluation == (c0 == c1));
            if (!ev.evaluation) {
                REQUIRE(ev.witness);
                CHECK(ev.witness->label == "1-t1");
                Mat act(p.q.v.dim(), p.q.v.dim());
                for (const auto& e : ev.witness->p.entries())
                    act.axpy(e.value, p.q.v.action[s.loop.index(ev.witness->base_index, e.index)]);
                CHECK_FALSE(act.is_zero());
            }
        }
    CHECK(is_evaluation(trivial_rep(s.loop.algebra), s.loop).evaluation);
}

TEST_CASE("classification round trip")
{
    struct Case {
        Realized g;
        CofiniteIdeal ideal;
        WeightList weights;
        std::vector<Scalar> lambda;
    };
    std::vector<Case> cases{
        {build_sl(2, 1), ideal1({{1, 1}}), {{0}}, {0}},
        {build_sl(2, 1), ideal1({{1, 1}}), {{2}}, {Scalar(1, 3)}},
        {build_sl(2, 1), ideal1({{1, 2}}), {{1}}, {3, 1}},
        {build_sl(2, 1), ideal1({{2, 1}, {1, 1}}), {{1}, {0}}, {1, 2}},
        {build_sl(2, 1), ideal1({{2, 1}, {1, 1}}), {{0}, {1}}, {-1, -1}},
        {build_sl(2, 1), CofiniteIdeal({{{Scalar(1), 1}, {Scalar(2), 1}}, {{Scalar(-1), 1}}}), {{1}, {0}},
         {0, 1}},
        {build_C(3), ideal1({{1, 1}}), {{0, 1}}, {0}},
    };
    for (const auto& c : cases) {
        auto s = induction_setup(c.g, c.ideal);
        InducedPipeline p = build_V(s, c.weights, lam(c.lambda));
        Classification cl = classify(s, p.q.v);
        CHECK(cl.data == normalize(s, c.weights, lam(c.lambda)));
        std::vector<Root> mus;
        for (const auto& w : c.weights) {
            std::vector<Scalar> f;
            for (long x : w)
                f.emplace_back(static_cast<long long>(x));
            mus.push_back(s.ss.weight(f));
        }
        CHECK(cl.psi == psi_of(mus, s.grid, *s.a));
        CHECK(is_intertwiner(cl.intertwiner, cl.rebuilt, p.q.v));
        CHECK(cl.claim_irreducible);
    }
}

TEST_CASE("classify an evaluation module and the trivial module")
{
    Realized g = build_sl(2, 1);
    auto s = induction_setup(g, ideal1({{1, 2}}));
    Representation ev = evaluation_module(s.loop, s.grid, {defining_rep(g)});
    REQUIRE(is_irreducible(ev));
    Classification cl = classify(s, ev);
    CHECK(is_intertwiner(cl.intertwiner, build_V(s, expand(s, cl.data), cl.data.lambda).q.v, ev));
    // lambda(z (x) (t - 1)) = 0
    CHECK(cl.data.lambda.values[1] == cl.data.lambda.values[0]);
    CHECK(is_evaluation(ev, s.loop).evaluation);

    Classification tr = classify(s, trivial_rep(s.loop.algebra));
    CHECK(tr.psi.is_zero());
    CHECK(tr.data.lambda.is_zero());
    CHECK(tr.data.points.empty());

    InducedModule m = build_M(s, build_W(s, {{0}}, lam({0, 0})));
    CHECK_THROWS_AS(classify(s, m.rep), PreconditionError);
}

TEST_CASE("normalization drops zero weights and sorts points")
{
    auto s = induction_setup(build_sl(2, 1), ideal1({{3, 1}, {-1, 1}, {2, 1}}));
    InductionData d = normalize(s, {{1}, {0}, {2}}, lam({0, 0, 0}));
    CHECK(d.points == std::vector<std::vector<Scalar>>{{2}, {3}});
    CHECK(d.weights == WeightList{{2}, {1}});
    CHECK(expand(s, d) == WeightList{{1}, {0}, {2}});
}
