#include "superloop/repkit.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

namespace superloop {

Mat Representation::act(const SparseVec& x) const
{
    Mat m(dim(), dim());
    for (const auto& e : x.entries())
        m.axpy(e.value, action[e.index]);
    return m;
}

std::vector<Root> Representation::weights() const
{
    std::vector<Root> w(dim());
    for (std::size_t c : algebra->cartan()) {
        const Mat& h = action[c];
        if (!h.is_diagonal())
            throw PreconditionError("weights: Cartan element " + std::to_string(c) + " is not diagonal on the module basis");
        for (std::size_t k = 0; k < dim(); ++k)
            w[k].values.push_back(h.at(k, k));
    }
    return w;
}

RepresentationReport check_representation(const Representation& r)
{
    const auto& g = *r.algebra;
    RepresentationReport rep;
    if (r.action.size() != g.dim())
        throw PreconditionError("check_representation: one action matrix per basis element required");
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t c = 0; c < r.dim(); ++c)
            for (const auto& e : r.action[i].col(c).entries())
                if (r.parity[e.index] != r.parity[c] + g.parity(i)) {
                    rep.violations.push_back({i, i});
                    c = r.dim() - 1;
                    break;
                }
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i; j < g.dim(); ++j) {
            ++rep.pairs_checked;
            Mat lhs = r.act(g.bracket_basis(i, j));
            Mat rhs = r.action[i] * r.action[j];
            rhs.axpy(Scalar(-koszul_sign(g.parity(i), g.parity(j))), r.action[j] * r.action[i]);
            if (!(lhs == rhs))
                rep.violations.push_back({i, j});
        }
    std::sort(rep.violations.begin(), rep.violations.end());
    return rep;
}

Representation trivial_rep(std::shared_ptr<const LieSuperalgebra> g)
{
    Representation r;
    r.action.assign(g->dim(), Mat(1, 1));
    r.parity = {Parity::Even};
    r.algebra = std::move(g);
    return r;
}

Representation defining_rep(const Realized& g)
{
    Representation r;
    r.algebra = g.algebra;
    r.action = g.realization->basis;
    for (std::size_t i = 0; i < g.realization->size; ++i)
        r.parity.push_back(g.realization->row_parity(i));
    return r;
}

Representation tensor(const Representation& a, const Representation& b)
{
    if (a.algebra->dim() != b.algebra->dim() || a.algebra->parities() != b.algebra->parities())
        throw PreconditionError("tensor: modules of different algebras");
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    const std::size_t n = da * db;
    Representation r;
    r.algebra = a.algebra;
    for (std::size_t v = 0; v < da; ++v)
        for (std::size_t w = 0; w < db; ++w)
            r.parity.push_back(a.parity[v] + b.parity[w]);
    for (std::size_t x = 0; x < a.algebra->dim(); ++x) {
        Parity px = a.algebra->parity(x);
        Mat m(n, n);
        for (std::size_t v = 0; v < da; ++v)
            for (std::size_t w = 0; w < db; ++w) {
                std::vector<SparseVec::Entry> col;
                for (const auto& e : a.action[x].col(v).entries())
                    col.push_back({e.index * db + w, e.value});
                Scalar s(koszul_sign(px, a.parity[v]));
                for (const auto& e : b.action[x].col(w).entries())
                    col.push_back({v * db + e.index, s * e.value});
                m.set_col(v * db + w, SparseVec::from_entries(n, std::move(col)));
            }
        r.action.push_back(std::move(m));
    }
    return r;
}

Representation direct_sum(const Representation& a, const Representation& b)
{
    if (a.algebra->dim() != b.algebra->dim())
        throw PreconditionError("direct_sum: modules of different algebras");
    const std::size_t da = a.dim();
    const std::size_t n = da + b.dim();
    Representation r;
    r.algebra = a.algebra;
    r.parity = a.parity;
    r.parity.insert(r.parity.end(), b.parity.begin(), b.parity.end());
    for (std::size_t x = 0; x < a.algebra->dim(); ++x) {
        Mat m(n, n);
        for (std::size_t c = 0; c < da; ++c)
            m.set_col(c, SparseVec::from_entries(n, a.action[x].col(c).entries()));
        for (std::size_t c = 0; c < b.dim(); ++c) {
            std::vector<SparseVec::Entry> col;
            for (const auto& e : b.action[x].col(c).entries())
                col.push_back({da + e.index, e.value});
            m.set_col(da + c, SparseVec::from_entries(n, std::move(col)));
        }
        r.action.push_back(std::move(m));
    }
    return r;
}

Representation restrict_to(const Representation& r, std::shared_ptr<const LieSuperalgebra> sub,
                           const std::vector<std::size_t>& indices)
{
    if (sub->dim() != indices.size())
        throw PreconditionError("restrict_to: index list does not match the subalgebra");
    Representation out;
    out.algebra = std::move(sub);
    out.parity = r.parity;
    for (std::size_t i : indices)
        out.action.push_back(r.action.at(i));
    return out;
}

namespace {

Parity support_parity(const Representation& r, const SparseVec& v)
{
    Parity p = r.parity[v.leading()];
    for (const auto& e : v.entries())
        if (r.parity[e.index] != p)
            throw InvariantError("subspace basis vector is not parity-homogeneous");
    return p;
}

} // namespace

Representation subrepresentation(const Representation& r, const Subspace& s)
{
    const std::size_t k = s.dim();
    Representation out;
    out.algebra = r.algebra;
    for (const auto& b : s.basis())
        out.parity.push_back(support_parity(r, b));
    for (const auto& a : r.action) {
        Mat m(k, k);
        for (std::size_t c = 0; c < k; ++c) {
            SparseVec v = a.apply(s.basis()[c]);
            // Fully reduced echelon basis: coordinates are the pivot entries.
            std::vector<SparseVec::Entry> col;
            for (std::size_t p = 0; p < k; ++p) {
                Scalar x = v.get(s.pivots()[p]);
                if (!x.is_zero())
                    col.push_back({p, x});
            }
            SparseVec coords = SparseVec::from_entries(k, std::move(col));
            SparseVec back(r.dim());
            for (const auto& e : coords.entries())
                back.axpy(e.value, s.basis()[e.index]);
            if (!(back == v))
                throw PreconditionError("subrepresentation: subspace is not invariant");
            m.set_col(c, std::move(coords));
        }
        out.action.push_back(std::move(m));
    }
    return out;
}

Representation quotient(const Representation& r, const Subspace& s)
{
    std::vector<std::size_t> free = s.free_columns();
    std::vector<long> where(r.dim(), -1);
    for (std::size_t k = 0; k < free.size(); ++k)
        where[free[k]] = static_cast<long>(k);
    const std::size_t q = free.size();
    Representation out;
    out.algebra = r.algebra;
    for (std::size_t c : free)
        out.parity.push_back(r.parity[c]);
    for (const auto& a : r.action) {
        Mat m(q, q);
        for (std::size_t k = 0; k < q; ++k) {
            SparseVec v = s.reduce(a.col(free[k]));
            std::vector<SparseVec::Entry> col;
            for (const auto& e : v.entries()) {
                if (where[e.index] < 0)
                    throw InvariantError("quotient: reduced vector has a pivot entry");
                col.push_back({static_cast<std::size_t>(where[e.index]), e.value});
            }
            m.set_col(k, SparseVec::from_entries(q, std::move(col)));
        }
        out.action.push_back(std::move(m));
    }
    return out;
}

Subspace cyclic_closure(const Representation& r, const Subspace& seed) { return closure_under(r.action, seed); }

std::vector<WeightVector> highest_weight_vectors(const Representation& r, const std::vector<std::size_t>& pos)
{
    const std::size_t n = r.dim();
    Mat stacked(pos.size() * n, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<SparseVec::Entry> col;
        for (std::size_t k = 0; k < pos.size(); ++k)
            for (const auto& e : r.action[pos[k]].col(c).entries())
                col.push_back({k * n + e.index, e.value});
        stacked.set_col(c, SparseVec::from_entries(pos.size() * n, std::move(col)));
    }
    std::vector<Root> w = r.weights();
    std::vector<WeightVector> out;
    Subspace ker = kernel_basis(stacked);
    for (const auto& v : ker.basis()) {
        const Root& mu = w[v.leading()];
        for (const auto& e : v.entries())
            if (w[e.index] != mu)
                throw InvariantError("highest_weight_vectors: kernel basis vector is not a weight vector");
        out.push_back({mu, v});
    }
    return out;
}

bool is_irreducible(const Representation& r)
{
    if (r.dim() == 0)
        return false;
    return algebra_span(r.action, r.dim()).dim() == r.dim() * r.dim();
}

bool is_irreducible(const Representation& r, const std::vector<std::size_t>& indices)
{
    if (r.dim() == 0)
        return false;
    std::vector<Mat> gens;
    for (std::size_t i : indices)
        gens.push_back(r.action.at(i));
    return algebra_span(gens, r.dim()).dim() == r.dim() * r.dim();
}

Irreducibility singular_vector_test(const Representation& r, const std::vector<std::size_t>& pos)
{
    const std::size_t n = r.dim();
    if (n == 0)
        return Irreducibility::reducible;
    Mat stacked(pos.size() * n, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<SparseVec::Entry> col;
        for (std::size_t k = 0; k < pos.size(); ++k)
            for (const auto& e : r.action[pos[k]].col(c).entries())
                col.push_back({k * n + e.index, e.value});
        stacked.set_col(c, SparseVec::from_entries(pos.size() * n, std::move(col)));
    }
    Subspace sing = kernel_basis(stacked);
    for (const auto& v : sing.basis()) {
        Subspace seed(n);
        seed.insert(v);
        if (!cyclic_closure(r, seed).is_full())
            return Irreducibility::reducible;
    }
    return sing.dim() == 1 ? Irreducibility::irreducible : Irreducibility::unknown;
}

// ------------------------------------------------------- semisimple model

Root SemisimpleModel::weight(const std::vector<Scalar>& c) const
{
    if (c.size() != rank())
        throw PreconditionError("weight: expected " + std::to_string(rank()) + " fundamental coordinates");
    Root r{std::vector<Scalar>(algebra->cartan().size())};
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t k = 0; k < r.values.size(); ++k)
            r.values[k] += c[i] * fundamental[i].values[k];
    return r;
}

std::vector<Scalar> SemisimpleModel::fundamental_coordinates(const Root& mu) const
{
    std::vector<Scalar> out;
    const auto& cartan = algebra->cartan();
    for (const auto& h : coroots) {
        Scalar v;
        for (std::size_t k = 0; k < cartan.size(); ++k)
            v += h.get(cartan[k]) * mu.values[k];
        out.push_back(v);
    }
    return out;
}

SemisimpleModel semisimple_model(const Realized& g)
{
    SemisimpleModel m;
    m.split = center_split(*g.algebra);
    m.algebra = semisimple_part(*g.algebra, m.split);
    const auto& ss = *m.algebra;
    const auto& cartan = ss.cartan();

    std::vector<std::size_t> pos = ss.positive();
    std::sort(pos.begin(), pos.end());
    std::vector<Root> pos_roots;
    for (std::size_t i : pos)
        pos_roots.push_back(ss.root_of(i));
    for (std::size_t a = 0; a < pos.size(); ++a) {
        bool decomposable = false;
        for (std::size_t b = 0; b < pos.size() && !decomposable; ++b)
            for (std::size_t c = 0; c < pos.size() && !decomposable; ++c)
                decomposable = pos_roots[b] + pos_roots[c] == pos_roots[a];
        if (!decomposable) {
            m.simple_root_vectors.push_back(pos[a]);
            m.simple_roots.push_back(pos_roots[a]);
        }
    }
    for (std::size_t s = 0; s < m.simple_roots.size(); ++s) {
        const Root& alpha = m.simple_roots[s];
        std::optional<std::size_t> f;
        for (std::size_t j : ss.negative())
            if (ss.root_of(j) == -alpha)
                f = j;
        if (!f)
            throw InvariantError("semisimple_model: no root vector for -" + alpha.str());
        SparseVec h = ss.bracket_basis(m.simple_root_vectors[s], *f);
        Scalar ah;
        for (std::size_t k = 0; k < cartan.size(); ++k)
            ah += h.get(cartan[k]) * alpha.values[k];
        if (ah.is_zero())
            throw InvariantError("semisimple_model: degenerate coroot");
        m.coroots.push_back(h.scaled(Scalar(2) / ah));
    }
    const std::size_t r = m.simple_roots.size();
    if (r != cartan.size())
        throw PreconditionError("semisimple_model: rank does not match the Cartan of g_ss");
    Mat hmat(r, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k)
            hmat.set(j, k, m.coroots[j].get(cartan[k]));
    Mat inv = inverse(hmat);
    for (std::size_t i = 0; i < r; ++i)
        m.fundamental.push_back(Root{inv.col(i).to_dense()});

    // Connected components of the natural module under g_ss.
    Representation nat = restrict_to(defining_rep(g), m.algebra, m.split.ss_indices);
    const std::size_t n = nat.dim();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<bool> active(n, false);
    for (const auto& a : nat.action)
        for (std::size_t c = 0; c < n; ++c)
            for (const auto& e : a.col(c).entries()) {
                active[c] = active[e.index] = true;
                parent[find(c)] = find(e.index);
            }
    std::map<std::size_t, std::vector<SparseVec>> components;
    for (std::size_t i = 0; i < n; ++i)
        if (active[i])
            components[find(i)].push_back(SparseVec::unit(n, i));
    std::vector<std::pair<std::size_t, Subspace>> ordered;
    for (auto& [root, vecs] : components)
        ordered.emplace_back(vecs.front().leading(), Subspace::span(n, vecs));
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [first, sub] : ordered) {
        Representation block = subrepresentation(nat, sub);
        block.parity.assign(block.dim(), Parity::Even);
        m.natural_blocks.push_back(std::move(block));
    }
    return m;
}

namespace {

Representation hw_closure(const Representation& t, const std::vector<std::size_t>& pos, const Root& mu)
{
    for (const auto& hw : highest_weight_vectors(t, pos))
        if (hw.weight == mu)
            return subrepresentation(t, cyclic_closure(t, Subspace::span(t.dim(), std::vector<SparseVec>{hw.vector})));
    throw PreconditionError("irreducible_hw_module: no highest weight vector of weight " + mu.str());
}

std::vector<Scalar> as_scalars(const std::vector<long>& v)
{
    std::vector<Scalar> out;
    for (long x : v)
        out.emplace_back(static_cast<long long>(x));
    return out;
}

} // namespace

Representation irreducible_hw_module(const SemisimpleModel& ss, const std::vector<long>& lambda)
{
    if (lambda.size() != ss.rank())
        throw PreconditionError("irreducible_hw_module: expected " + std::to_string(ss.rank()) + " coordinates");
    long total = 0;
    for (long x : lambda) {
        if (x < 0)
            throw PreconditionError("irreducible_hw_module: weight is not dominant");
        total += x;
    }
    if (total > 6)
        throw PreconditionError("irreducible_hw_module: |lambda|_1 > 6 is beyond the construction cap");
    const auto& pos = ss.algebra->positive();

    std::map<std::vector<long>, Representation> memo;
    memo.emplace(std::vector<long>(ss.rank(), 0), trivial_rep(ss.algebra));

    // Fundamental modules inside tensor powers of one natural block.
    std::vector<std::optional<Representation>> fundamental(ss.rank());
    auto fundamental_module = [&](std::size_t i) -> const Representation& {
        if (fundamental[i])
            return *fundamental[i];
        Root omega = ss.fundamental[i];
        for (const auto& block : ss.natural_blocks) {
            Representation power = block;
            for (int k = 1; k <= 6 && power.dim() <= 4096; ++k) {
                for (const auto& hw : highest_weight_vectors(power, pos))
                    if (hw.weight == omega) {
                        fundamental[i] = subrepresentation(
                            power, cyclic_closure(power, Subspace::span(power.dim(), std::vector<SparseVec>{hw.vector})));
                        return *fundamental[i];
                    }
                power = tensor(power, block);
            }
        }
        throw PreconditionError("irreducible_hw_module: fundamental weight " + std::to_string(i + 1) +
                                " not found in tensor powers of the natural blocks");
    };

    std::function<const Representation&(const std::vector<long>&)> build = [&](const std::vector<long>& l)
        -> const Representation& {
        if (auto it = memo.find(l); it != memo.end())
            return it->second;
        std::size_t i = 0;
        while (l[i] == 0)
            ++i;
        std::vector<long> rest = l;
        --rest[i];
        Representation t = tensor(build(rest), fundamental_module(i));
        return memo.emplace(l, hw_closure(t, pos, ss.weight(as_scalars(l)))).first->second;
    };
    return build(lambda);
}

// ---------------------------------------------------- evaluation modules

bool PsiFunctional::is_zero() const
{
    for (const auto& row : values)
        for (const auto& v : row)
            if (!v.is_zero())
                return false;
    return true;
}

PsiFunctional psi_of(const std::vector<Root>& weights, const EvaluationGrid& grid, const QuotientAlgebra& a)
{
    if (weights.size() != grid.size())
        throw PreconditionError("psi_of: one weight per grid point required");
    PsiFunctional psi;
    const std::size_t rank = weights.empty() ? 0 : weights.front().values.size();
    psi.values.assign(rank, std::vector<Scalar>(a.dim()));
    for (std::size_t e = 0; e < a.dim(); ++e) {
        auto ex = a.exponent(e);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            Scalar am = grid.monomial_value(k, ex);
            for (std::size_t c = 0; c < rank; ++c)
                psi.values[c][e] += am * weights[k].values[c];
        }
    }
    return psi;
}

Representation evaluation_module(const LoopAlgebra& loop, const EvaluationGrid& grid,
                                 const std::vector<Representation>& modules)
{
    const auto& g = *loop.base;
    const auto& a = *loop.coefficients;
    if (modules.size() != grid.size())
        throw PreconditionError("evaluation_module: one module per grid point required");
    for (const auto& m : modules)
        if (m.algebra->dim() != g.dim())
            throw PreconditionError("evaluation_module: module of a different algebra");

    // Mixed radix over the slots, last slot fastest.
    std::vector<std::size_t> dims;
    std::size_t total = 1;
    for (const auto& m : modules) {
        dims.push_back(m.dim());
        total *= m.dim();
    }
    std::vector<std::size_t> stride(modules.size(), 1);
    for (std::size_t k = modules.size(); k-- > 1;)
        stride[k - 1] = stride[k] * dims[k];
    auto component = [&](std::size_t u, std::size_t k) { return (u / stride[k]) % dims[k]; };

    Representation r;
    r.algebra = loop.algebra;
    for (std::size_t u = 0; u < total; ++u) {
        Parity p = Parity::Even;
        for (std::size_t k = 0; k < modules.size(); ++k)
            p = p + modules[k].parity[component(u, k)];
        r.parity.push_back(p);
    }
    r.action.assign(loop.algebra->dim(), Mat(total, total));
    for (std::size_t x = 0; x < g.dim(); ++x) {
        Parity px = g.parity(x);
        // Slot matrices X_k with the sign of passing the earlier slots.
        std::vector<Mat> slot;
        for (std::size_t k = 0; k < modules.size(); ++k) {
            Mat m(total, total);
            for (std::size_t u = 0; u < total; ++u) {
                Parity before = Parity::Even;
                for (std::size_t j = 0; j < k; ++j)
                    before = before + modules[j].parity[component(u, j)];
                Scalar s(koszul_sign(px, before));
                std::size_t v = component(u, k);
                std::vector<SparseVec::Entry> col;
                for (const auto& e : modules[k].action[x].col(v).entries())
                    col.push_back({u - v * stride[k] + e.index * stride[k], s * e.value});
                m.set_col(u, SparseVec::from_entries(total, std::move(col)));
            }
            slot.push_back(std::move(m));
        }
        for (std::size_t e = 0; e < a.dim(); ++e) {
            Mat m(total, total);
            auto ex = a.exponent(e);
            for (std::size_t k = 0; k < modules.size(); ++k)
                m.axpy(grid.monomial_value(k, ex), slot[k]);
            r.action[loop.index(x, e)] = std::move(m);
        }
    }
    return r;
}

} // namespace superloop
