#include "superloop/induce.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "superloop/errors.hpp"

namespace superloop {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

Scalar power(const Scalar& x, long k)
{
    Scalar base = k < 0 ? x.inverse() : x;
    Scalar out(1);
    for (long i = 0; i < (k < 0 ? -k : k); ++i)
        out *= base;
    return out;
}

Scalar point_monomial(const std::vector<Scalar>& pt, const std::vector<long>& e)
{
    Scalar out(1);
    for (std::size_t j = 0; j < pt.size(); ++j)
        out *= power(pt[j], e[j]);
    return out;
}

/// Scalar by which a acts on v, or nullopt if v is not an eigenvector.
std::optional<Scalar> eigenvalue(const Mat& a, const SparseVec& v)
{
    SparseVec u = a.apply(v);
    Scalar c = u.get(v.leading()) / v.get(v.leading());
    if (!(u == v.scaled(c)))
        return std::nullopt;
    return c;
}

} // namespace

std::string element_label(const QuotientAlgebra& a, const SparseVec& p)
{
    std::string out;
    for (const auto& e : p.entries()) {
        std::string c = e.value.str();
        if (!out.empty())
            out += c.front() == '-' ? "" : "+";
        std::string m = a.monomial_label(e.index);
        if (m == "1")
            out += c;
        else if (e.value == Scalar(1))
            out += m;
        else if (e.value == Scalar(-1))
            out += "-" + m;
        else
            out += c + "*" + m;
    }
    return out.empty() ? "0" : out;
}

bool LambdaFunctional::is_zero() const
{
    return std::all_of(values.begin(), values.end(), [](const Scalar& x) { return x.is_zero(); });
}

InductionSetup induction_setup(const Realized& g, const CofiniteIdeal& ideal)
{
    const LieSuperalgebra& G = *g.algebra;
    if (!G.has_zdeg())
        throw PreconditionError("induction: algebra carries no Z-grading");
    SemisimpleModel ss = semisimple_model(g);
    const CenterSplit& split = ss.split;

    std::vector<std::size_t> plus = G.indices_of_degree(1);
    std::vector<std::size_t> minus = G.indices_of_degree(-1);
    for (std::size_t i : minus)
        for (std::size_t j : minus)
            if (!G.bracket_basis(i, j).is_zero())
                throw PreconditionError("induction: [g_-1, g_-1] is not zero");
    Triangular t = triangular(G);
    for (std::size_t i : plus)
        if (std::find(t.pos.begin(), t.pos.end(), i) == t.pos.end())
            throw PreconditionError("induction: g_+1 is not inside the positive part");
    for (std::size_t i : minus)
        if (std::find(t.neg.begin(), t.neg.end(), i) == t.neg.end())
            throw PreconditionError("induction: g_-1 is not inside the negative part");
    if (G.indices_of_degree(0).size() != split.ss_indices.size() + 1)
        throw PreconditionError("induction: even part is not g_ss plus a line");

    auto a = std::make_shared<const QuotientAlgebra>(ideal);
    LoopAlgebra loop = build_loop(g.algebra, a);
    LoopAlgebra loop_ss = build_loop(ss.algebra, a);
    const std::size_t da = a->dim();

    auto spread = [&](const std::vector<std::size_t>& base) {
        std::vector<std::size_t> out;
        for (std::size_t x : base)
            for (std::size_t e = 0; e < da; ++e)
                out.push_back(loop.index(x, e));
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<std::size_t> ss_loop;
    for (std::size_t i = 0; i < loop_ss.algebra->dim(); ++i)
        ss_loop.push_back(loop.index(split.ss_indices[loop_ss.base_index(i)], loop_ss.monomial_index(i)));

    // e_{z_index} - c z lies in g_ss.
    Scalar c = split.z_component(G.basis_vector(split.z_index));
    SparseVec y = G.basis_vector(split.z_index) - split.z.scaled(c);
    SparseVec y_ss(split.ss_indices.size());
    for (std::size_t k = 0; k < split.ss_indices.size(); ++k)
        y_ss.set(k, y.get(split.ss_indices[k]));
    SparseVec back(G.dim());
    for (const auto& e : y_ss.entries())
        back.set(split.ss_indices[e.index], e.value);
    if (!(back == y))
        throw InvariantError("induction: center split does not decompose the even basis");

    std::vector<std::size_t> d_zero = spread(G.indices_of_degree(0));
    std::vector<std::size_t> d_plus = spread(plus);
    std::vector<std::size_t> d_minus = spread(minus);
    CofiniteIdeal sq = ideal.squarefree();
    EvaluationGrid grid(sq);
    return InductionSetup{g,
                          std::move(ss),
                          ideal,
                          sq,
                          a,
                          std::move(grid),
                          std::move(loop),
                          std::move(loop_ss),
                          std::move(d_zero),
                          std::move(d_plus),
                          std::move(d_minus),
                          std::move(ss_loop),
                          std::move(y_ss),
                          c};
}

LambdaFunctional descend_lambda(const QuotientAlgebra& model, const std::vector<Scalar>& values,
                                const QuotientAlgebra& target)
{
    if (values.size() != model.dim())
        throw PreconditionError("lambda: expected " + std::to_string(model.dim()) + " values");
    if (model.vars() != target.vars())
        throw PreconditionError("lambda: variable count mismatch");
    const std::size_t vars = model.vars();
    for (std::size_t j = 0; j < vars; ++j)
        if (!target.reduce(LaurentPoly::univariate(vars, j, model.ideal().generator(j))).is_zero())
            throw PreconditionError("lambda: model ideal is not inside the target ideal");
    for (std::size_t j = 0; j < vars; ++j) {
        SparseVec pj = model.reduce(LaurentPoly::univariate(vars, j, target.ideal().generator(j)));
        for (std::size_t m = 0; m < model.dim(); ++m) {
            SparseVec p = model.multiply(pj, SparseVec::unit(model.dim(), m));
            Scalar v;
            for (const auto& e : p.entries())
                v += e.value * values[e.index];
            if (!v.is_zero())
                throw PreconditionError("lambda does not vanish on z (x) I: value " + v.str() + " at " +
                                        element_label(model, p));
        }
    }
    LambdaFunctional out;
    for (std::size_t e = 0; e < target.dim(); ++e)
        out.values.push_back(values[model.index(target.exponent(e))]);
    return out;
}

WModule build_W(const InductionSetup& s, const WeightList& weights, const LambdaFunctional& lambda)
{
    const QuotientAlgebra& a = *s.a;
    const std::size_t da = a.dim();
    const LieSuperalgebra& G = *s.g.algebra;
    if (weights.size() != s.grid.size())
        throw PreconditionError("W: expected " + std::to_string(s.grid.size()) + " weights, one per point of I'");
    if (lambda.values.size() != da)
        throw PreconditionError("W: expected " + std::to_string(da) + " lambda values, one per monomial of A/I");

    std::vector<Representation> modules;
    for (const auto& w : weights)
        modules.push_back(irreducible_hw_module(s.ss, w));
    Representation wss = evaluation_module(s.loop_ss, s.grid, modules);
    const std::size_t n = wss.dim();

    std::vector<std::size_t> ss_pos(G.dim(), npos);
    for (std::size_t k = 0; k < s.ss.split.ss_indices.size(); ++k)
        ss_pos[s.ss.split.ss_indices[k]] = k;

    WModule out;
    out.loop_index = s.d_zero;
    out.loop_index.insert(out.loop_index.end(), s.d_plus.begin(), s.d_plus.end());
    std::sort(out.loop_index.begin(), out.loop_index.end());
    out.rep.algebra = std::make_shared<const LieSuperalgebra>(subalgebra(*s.loop.algebra, out.loop_index, "D0+D+"));
    out.rep.parity = wss.parity;
    for (std::size_t i : out.loop_index) {
        std::size_t x = s.loop.base_index(i);
        std::size_t e = s.loop.monomial_index(i);
        if (G.zdeg(x) == 1) {
            out.rep.action.emplace_back(n, n);
        } else if (ss_pos[x] != npos) {
            out.rep.action.push_back(wss.action[s.loop_ss.index(ss_pos[x], e)]);
        } else {
            Mat m = Mat::identity(n).scaled(s.z_index_c * lambda.values[e]);
            for (const auto& y : s.z_index_ss.entries())
                m.axpy(y.value, wss.action[s.loop_ss.index(y.index, e)]);
            out.rep.action.push_back(std::move(m));
        }
    }
    if (!check_representation(out.rep).pass())
        throw InvariantError("W: action of D_0 + D_+ fails the representation check");

    auto hw = highest_weight_vectors(wss, s.loop_ss.algebra->positive());
    if (hw.size() != 1)
        throw InvariantError("W: expected a unique highest weight line, found " + std::to_string(hw.size()));
    out.hw_vector = hw.front().vector;
    return out;
}

InducedModule build_M(const InductionSetup& s, const WModule& w)
{
    const LieSuperalgebra& L = *s.loop.algebra;
    const std::size_t nw = w.rep.dim();
    const std::size_t r = s.d_minus.size();
    if (r > 20)
        throw PreconditionError("M: dim D_- = " + std::to_string(r) + " is beyond reach");
    const std::size_t masks = std::size_t{1} << r;
    const std::size_t n = masks * nw;

    std::vector<std::size_t> minus_pos(L.dim(), npos);
    for (std::size_t k = 0; k < r; ++k)
        minus_pos[s.d_minus[k]] = k;
    std::vector<std::size_t> w_pos(L.dim(), npos);
    for (std::size_t k = 0; k < w.loop_index.size(); ++k)
        w_pos[w.loop_index[k]] = k;

    std::vector<std::vector<SparseVec>> cols(L.dim(), std::vector<SparseVec>(n));
    for (std::size_t mask = 0; mask < masks; ++mask) {
        for (std::size_t x = 0; x < L.dim(); ++x) {
            for (std::size_t wv = 0; wv < nw; ++wv) {
                const std::size_t u = mask * nw + wv;
                if (mask == 0) {
                    if (minus_pos[x] != npos) {
                        cols[x][u] = SparseVec::unit(n, (std::size_t{1} << minus_pos[x]) * nw + wv);
                    } else {
                        std::vector<SparseVec::Entry> col = w.rep.action[w_pos[x]].col(wv).entries();
                        cols[x][u] = SparseVec::from_entries(n, std::move(col));
                    }
                    continue;
                }
                // x xi_s R w = [x, xi_s] R w + (-1)^{|x|} xi_s (x R w)
                const std::size_t s1 = static_cast<std::size_t>(std::countr_zero(mask));
                const std::size_t rest = mask & ~(std::size_t{1} << s1);
                const std::size_t ru = rest * nw + wv;
                SparseVec out(n);
                for (const auto& y : L.bracket_basis(x, s.d_minus[s1]).entries())
                    out.axpy(y.value, cols[y.index][ru]);
                const int sx = L.parity(x) == Parity::Odd ? -1 : 1;
                std::vector<SparseVec::Entry> moved;
                for (const auto& e : cols[x][ru].entries()) {
                    std::size_t m2 = e.index / nw;
                    if (m2 >> s1 & 1)
                        continue;
                    int below = std::popcount(m2 & ((std::size_t{1} << s1) - 1));
                    int sign = sx * (below % 2 ? -1 : 1);
                    moved.push_back({(m2 | std::size_t{1} << s1) * nw + e.index % nw, e.value * Scalar(sign)});
                }
                out += SparseVec::from_entries(n, std::move(moved));
                cols[x][u] = std::move(out);
            }
        }
    }

    InducedModule m;
    m.dim_W = nw;
    m.r = r;
    m.rep.algebra = s.loop.algebra;
    for (std::size_t mask = 0; mask < masks; ++mask)
        for (std::size_t wv = 0; wv < nw; ++wv)
            m.rep.parity.push_back(w.rep.parity[wv] + (std::popcount(mask) % 2 ? Parity::Odd : Parity::Even));
    for (std::size_t x = 0; x < L.dim(); ++x)
        m.rep.action.push_back(Mat::from_columns(n, std::move(cols[x])));
    if (w.hw_vector.nnz() != 1)
        throw InvariantError("M: highest weight vector of W is not a basis vector");
    m.hw_index = w.hw_vector.leading();
    m.hw_vector = SparseVec::unit(n, m.hw_index);
    return m;
}

QuotientResult irreducible_quotient(const InducedModule& m)
{
    const std::size_t n = m.rep.dim();
    std::vector<Root> w = m.rep.weights();
    Subspace b = algebra_span(m.rep.action, n);

    // B is graded by weight differences and its echelon basis is homogeneous;
    // the trace form pairs degree beta with -beta only.
    std::map<Root, std::vector<std::size_t>> by_degree;
    for (std::size_t k = 0; k < b.dim(); ++k) {
        const SparseVec& v = b.basis()[k];
        auto degree = [&](std::size_t idx) { return w[idx / n] + -w[idx % n]; };
        Root d = degree(v.leading());
        for (const auto& e : v.entries())
            if (degree(e.index) != d)
                throw InvariantError("quotient: action algebra basis is not weight-homogeneous");
        by_degree[d].push_back(k);
    }
    std::vector<SparseVec> transposed(b.dim());
    for (std::size_t k = 0; k < b.dim(); ++k) {
        std::vector<SparseVec::Entry> t;
        for (const auto& e : b.basis()[k].entries())
            t.push_back({(e.index % n) * n + e.index / n, e.value});
        transposed[k] = SparseVec::from_entries(n * n, std::move(t));
    }

    std::vector<SparseVec> radical;
    for (const auto& [d, ids] : by_degree) {
        auto partner = by_degree.find(-d);
        if (partner == by_degree.end()) {
            for (std::size_t i : ids)
                radical.push_back(b.basis()[i]);
            continue;
        }
        const auto& pj = partner->second;
        Mat gram(pj.size(), ids.size());
        for (std::size_t c = 0; c < ids.size(); ++c) {
            std::vector<SparseVec::Entry> col;
            for (std::size_t r = 0; r < pj.size(); ++r) {
                Scalar t = b.basis()[ids[c]].dot(transposed[pj[r]]);
                if (!t.is_zero())
                    col.push_back({r, t});
            }
            gram.set_col(c, SparseVec::from_entries(pj.size(), std::move(col)));
        }
        Subspace ker = kernel_basis(gram);
        for (const auto& kv : ker.basis()) {
            SparseVec x(n * n);
            for (const auto& e : kv.entries())
                x.axpy(e.value, b.basis()[ids[e.index]]);
            radical.push_back(std::move(x));
        }
    }

    QuotientResult out;
    out.algebra_dim = b.dim();
    out.radical_dim = radical.size();
    out.radical_module = Subspace(n);
    for (const auto& x : radical) {
        Mat xm = Mat::from_vector(n, n, x);
        for (std::size_t c = 0; c < n; ++c)
            if (!xm.col(c).is_zero())
                out.radical_module.insert(xm.col(c));
    }
    if (!(cyclic_closure(m.rep, out.radical_module) == out.radical_module))
        throw InvariantError("quotient: rad(B) M is not a submodule");
    if (out.radical_module.contains(m.hw_vector))
        throw InvariantError("quotient: rad(B) M contains the highest weight vector");

    out.v = quotient(m.rep, out.radical_module);
    std::vector<std::size_t> free = out.radical_module.free_columns();
    SparseVec h = out.radical_module.reduce(m.hw_vector);
    out.hw_image = SparseVec(free.size());
    for (std::size_t k = 0; k < free.size(); ++k)
        out.hw_image.set(k, h.get(free[k]));

    // With rad(B) = 0 the quotient is M and B was already spanned.
    bool burnside = radical.empty() ? b.dim() == n * n : is_irreducible(out.v);
    if (!burnside)
        throw InvariantError("quotient: M / rad(B) M fails the Burnside test");
    Subspace seed(out.v.dim());
    seed.insert(out.hw_image);
    if (!cyclic_closure(out.v, seed).is_full())
        throw InvariantError("quotient: image of the highest weight vector is not a generator");
    return out;
}

Subspace maximal_submodule(const InducedModule& m)
{
    std::vector<Mat> dual;
    for (const auto& a : m.rep.action)
        dual.push_back(a.transpose());
    Subspace seed(m.rep.dim());
    seed.insert(m.hw_vector);
    return closure_under(dual, seed).annihilator();
}

std::vector<SparseVec> squarefree_image(const QuotientAlgebra& a)
{
    const std::size_t vars = a.vars();
    Subspace image(a.dim());
    for (std::size_t j = 0; j < vars; ++j) {
        SparseVec pj = a.reduce(LaurentPoly::univariate(vars, j, a.ideal().squarefree_generator(j)));
        for (std::size_t m = 0; m < a.dim(); ++m)
            image.insert(a.multiply(pj, SparseVec::unit(a.dim(), m)));
    }
    return image.basis();
}

std::optional<std::pair<SparseVec, Scalar>> lambda_on_squarefree(const InductionSetup& s, const LambdaFunctional& lambda)
{
    for (const auto& p : squarefree_image(*s.a)) {
        Scalar v;
        for (const auto& e : p.entries())
            v += e.value * lambda.values.at(e.index);
        if (!v.is_zero())
            return std::pair{p, v};
    }
    return std::nullopt;
}

EvaluationCheck is_evaluation(const Representation& v, const LoopAlgebra& loop)
{
    const QuotientAlgebra& a = *loop.coefficients;
    const std::vector<SparseVec> image = squarefree_image(a);
    EvaluationCheck out;
    for (std::size_t x = 0; x < loop.base->dim(); ++x)
        for (const auto& p : image) {
            ++out.pairs_checked;
            Mat act(v.dim(), v.dim());
            for (const auto& e : p.entries())
                act.axpy(e.value, v.action[loop.index(x, e.index)]);
            if (!act.is_zero() && !out.witness) {
                out.evaluation = false;
                out.witness = EvaluationWitness{x, p, element_label(a, p)};
            }
        }
    return out;
}

InductionData normalize(const InductionSetup& s, const WeightList& weights, const LambdaFunctional& lambda)
{
    if (weights.size() != s.grid.size())
        throw PreconditionError("normalize: one weight per point of I' required");
    std::vector<std::pair<std::vector<Scalar>, std::vector<long>>> support;
    for (std::size_t k = 0; k < weights.size(); ++k)
        if (std::any_of(weights[k].begin(), weights[k].end(), [](long c) { return c != 0; }))
            support.emplace_back(s.grid.point(k), weights[k]);
    std::sort(support.begin(), support.end());
    InductionData d;
    for (auto& [p, w] : support) {
        d.points.push_back(p);
        d.weights.push_back(w);
    }
    d.lambda = lambda;
    return d;
}

WeightList expand(const InductionSetup& s, const InductionData& d)
{
    WeightList out(s.grid.size(), std::vector<long>(s.ss.rank(), 0));
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        auto it = std::find(s.grid.points().begin(), s.grid.points().end(), d.points[i]);
        if (it == s.grid.points().end())
            throw PreconditionError("expand: support point is not a point of I'");
        out[static_cast<std::size_t>(it - s.grid.points().begin())] = d.weights[i];
    }
    return out;
}

InducedPipeline build_V(const InductionSetup& s, const WeightList& weights, const LambdaFunctional& lambda)
{
    WModule w = build_W(s, weights, lambda);
    InducedModule m = build_M(s, w);
    QuotientResult q = irreducible_quotient(m);
    return {std::move(w), std::move(m), std::move(q)};
}

Classification classify(const InductionSetup& s, const Representation& v)
{
    const QuotientAlgebra& a = *s.a;
    const std::size_t da = a.dim();
    if (v.algebra->dim() != s.loop.algebra->dim())
        throw PreconditionError("classify: module of a different algebra");
    // A unique singular line generating v already forces End(v) to be spanned.
    Irreducibility irr = singular_vector_test(v, s.loop.algebra->positive());
    if (irr == Irreducibility::reducible || (irr == Irreducibility::unknown && !is_irreducible(v)))
        throw PreconditionError("classify: module is not irreducible");

    auto top = highest_weight_vectors(v, s.loop.algebra->positive());
    if (top.size() != 1)
        throw PreconditionError("classify: expected a unique highest weight line, found " +
                                std::to_string(top.size()));
    const SparseVec hv = top.front().vector;

    Classification out;
    out.hw_index = hv.leading();
    const auto& h_ss = s.ss.algebra->cartan();
    out.psi.values.assign(h_ss.size(), std::vector<Scalar>(da));
    for (std::size_t c = 0; c < h_ss.size(); ++c)
        for (std::size_t e = 0; e < da; ++e) {
            auto val = eigenvalue(v.action[s.ss_loop[s.loop_ss.index(h_ss[c], e)]], hv);
            if (!val)
                throw PreconditionError("classify: h (x) A does not act by scalars on the top");
            out.psi.values[c][e] = *val;
        }
    for (std::size_t e = 0; e < da; ++e) {
        Mat z(v.dim(), v.dim());
        for (const auto& c : s.ss.split.z.entries())
            z.axpy(c.value, v.action[s.loop.index(c.index, e)]);
        auto val = eigenvalue(z, hv);
        if (!val)
            throw PreconditionError("classify: z (x) A does not act by scalars on the top");
        out.data.lambda.values.push_back(*val);
    }

    {
        Representation rs = restrict_to(v, s.loop_ss.algebra, s.ss_loop);
        Subspace seed(v.dim());
        seed.insert(hv);
        out.claim_irreducible = is_irreducible(subrepresentation(rs, cyclic_closure(rs, seed)));
    }

    // Support of psi: the annihilator of the forms (p, q) -> psi_c(pq) is the
    // ideal of the support; its points are joint eigenvalues of the t_j.
    const std::size_t rank = h_ss.size();
    Mat hankel(rank * da, da);
    for (std::size_t p = 0; p < da; ++p) {
        std::vector<SparseVec::Entry> col;
        for (std::size_t c = 0; c < rank; ++c)
            for (std::size_t q = 0; q < da; ++q) {
                Scalar t;
                for (const auto& e : a.product(p, q).entries())
                    t += e.value * out.psi.values[c][e.index];
                if (!t.is_zero())
                    col.push_back({c * da + q, t});
            }
        hankel.set_col(p, SparseVec::from_entries(rank * da, std::move(col)));
    }
    Subspace ann = kernel_basis(hankel);
    std::vector<std::size_t> free = ann.free_columns();
    const std::size_t qd = free.size();
    std::vector<Mat> mult; // transposed multiplication by t_j on A/ann
    for (std::size_t j = 0; j < a.vars(); ++j) {
        Mat mj(qd, qd);
        for (std::size_t k = 0; k < qd; ++k) {
            SparseVec y = ann.reduce(a.multiply(a.variable(j), SparseVec::unit(da, free[k])));
            for (std::size_t i = 0; i < qd; ++i)
                if (Scalar c = y.get(free[i]); !c.is_zero())
                    mj.set(k, i, c);
        }
        mult.push_back(std::move(mj));
    }
    std::vector<std::vector<Scalar>> support;
    std::size_t found = 0;
    for (const auto& pt : s.grid.points()) {
        Mat stacked(a.vars() * qd, qd);
        for (std::size_t c = 0; c < qd; ++c) {
            std::vector<SparseVec::Entry> col;
            for (std::size_t j = 0; j < a.vars(); ++j) {
                SparseVec x = mult[j].col(c);
                x.axpy(-pt[j], SparseVec::unit(qd, c));
                for (const auto& e : x.entries())
                    col.push_back({j * qd + e.index, e.value});
            }
            stacked.set_col(c, SparseVec::from_entries(a.vars() * qd, std::move(col)));
        }
        std::size_t k = qd == 0 ? 0 : kernel_basis(stacked).dim();
        if (k > 0)
            support.push_back(pt);
        found += k;
    }
    if (found != qd || support.size() != qd)
        throw PreconditionError("classify: psi is not supported on points of I' (irrational or non-reduced support)");
    std::sort(support.begin(), support.end());

    // psi_c(t^e) = sum_k mu_k(h_c) a_k^e
    Mat vander(da, support.size());
    for (std::size_t k = 0; k < support.size(); ++k) {
        std::vector<SparseVec::Entry> col;
        for (std::size_t e = 0; e < da; ++e)
            if (Scalar x = point_monomial(support[k], a.exponent(e)); !x.is_zero())
                col.push_back({e, x});
        vander.set_col(k, SparseVec::from_entries(da, std::move(col)));
    }
    std::vector<Root> mu(support.size(), Root{std::vector<Scalar>(rank)});
    for (std::size_t c = 0; c < rank; ++c) {
        auto sol = solve(vander, SparseVec::from_dense(out.psi.values[c]));
        if (!sol)
            throw PreconditionError("classify: psi is not a combination of point evaluations");
        for (const auto& e : sol->entries())
            mu[e.index].values[c] = e.value;
    }
    for (std::size_t k = 0; k < support.size(); ++k) {
        std::vector<long> f;
        for (const Scalar& x : s.ss.fundamental_coordinates(mu[k])) {
            if (!x.is_integer() || x.sign() < 0)
                throw PreconditionError("classify: weight " + mu[k].str() + " is not dominant integral");
            f.push_back(static_cast<long>(x.to_int64()));
        }
        out.data.points.push_back(support[k]);
        out.data.weights.push_back(std::move(f));
    }

    // Rebuild and match tops.
    InducedPipeline rebuilt = build_V(s, expand(s, out.data), out.data.lambda);
    const Representation& vr = rebuilt.q.v;
    if (vr.dim() != v.dim())
        throw InvariantError("classify: rebuilt module has dimension " + std::to_string(vr.dim()) + ", expected " +
                             std::to_string(v.dim()));
    Subspace src(vr.dim());
    std::vector<SparseVec> srcs, imgs;
    auto add = [&](const SparseVec& from, const SparseVec& to) {
        if (src.insert(from)) {
            srcs.push_back(from);
            imgs.push_back(to);
        }
    };
    add(rebuilt.q.hw_image, hv);
    for (std::size_t i = 0; i < srcs.size() && srcs.size() < vr.dim(); ++i)
        for (std::size_t x = 0; x < vr.action.size(); ++x)
            add(vr.action[x].apply(srcs[i]), v.action[x].apply(imgs[i]));
    if (srcs.size() != vr.dim())
        throw InvariantError("classify: rebuilt module is not generated by its top");
    out.intertwiner = Mat::from_columns(v.dim(), imgs) * inverse(Mat::from_columns(vr.dim(), srcs));
    if (superloop::rank(out.intertwiner) != v.dim())
        throw InvariantError("classify: intertwiner is singular");
    for (std::size_t x = 0; x < vr.action.size(); ++x)
        if (!(out.intertwiner * vr.action[x] == v.action[x] * out.intertwiner))
            throw InvariantError("classify: intertwiner fails to commute with basis element " + std::to_string(x));
    out.rebuilt = vr;
    return out;
}

} // namespace superloop
