#include "superloop/laurent.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace superloop {

// --------------------------------------------------------------------- Poly

Poly Poly::monomial(std::size_t k, Scalar c)
{
    Poly p;
    p.coeffs.assign(k + 1, Scalar());
    p.coeffs[k] = c;
    p.trim();
    return p;
}

Poly Poly::from_roots(const std::vector<std::pair<Scalar, int>>& roots)
{
    Poly p = monomial(0);
    for (const auto& [a, b] : roots) {
        Poly f{{-a, Scalar(1)}};
        for (int i = 0; i < b; ++i)
            p = p * f;
    }
    return p;
}

Scalar Poly::eval(const Scalar& x) const
{
    Scalar v;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        v = v * x + *it;
    return v;
}

void Poly::trim()
{
    while (!coeffs.empty() && coeffs.back().is_zero())
        coeffs.pop_back();
}

Poly operator+(const Poly& a, const Poly& b)
{
    Poly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        r.coeffs[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i)
        r.coeffs[i] += b.coeffs[i];
    r.trim();
    return r;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    Poly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Scalar());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    r.trim();
    return r;
}

Poly poly_mod(const Poly& a, const Poly& p)
{
    if (p.is_zero() || !p.coeffs.back().is_one())
        throw std::invalid_argument("poly_mod: modulus must be monic");
    Poly r = a;
    const int dp = p.degree();
    for (int k = r.degree(); k >= dp; --k) {
        Scalar c = r.coeffs[k];
        if (c.is_zero())
            continue;
        for (int i = 0; i <= dp; ++i)
            r.coeffs[k - dp + i] -= c * p.coeffs[i];
    }
    r.trim();
    return r;
}

// -------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::monomial(std::size_t vars, Exponent e, Scalar c)
{
    if (e.size() != vars)
        throw std::invalid_argument("LaurentPoly: exponent length mismatch");
    LaurentPoly p(vars);
    p.add_term(e, c);
    return p;
}

LaurentPoly LaurentPoly::constant(std::size_t vars, Scalar c) { return monomial(vars, Exponent(vars, 0), c); }

LaurentPoly LaurentPoly::univariate(std::size_t vars, std::size_t j, const Poly& q)
{
    LaurentPoly p(vars);
    for (std::size_t k = 0; k < q.coeffs.size(); ++k) {
        Exponent e(vars, 0);
        e[j] = static_cast<long>(k);
        p.add_term(e, q.coeffs[k]);
    }
    return p;
}

void LaurentPoly::add_term(const Exponent& e, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b)
{
    if (a.vars_ != b.vars_)
        throw std::invalid_argument("LaurentPoly: variable count mismatch");
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms_)
        r.add_term(e, c);
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
{
    if (a.vars_ != b.vars_)
        throw std::invalid_argument("LaurentPoly: variable count mismatch");
    LaurentPoly r(a.vars_);
    for (const auto& [e, c] : a.terms_)
        for (const auto& [f, d] : b.terms_) {
            LaurentPoly::Exponent s(e.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                s[i] = e[i] + f[i];
            r.add_term(s, c * d);
        }
    return r;
}

// ------------------------------------------------------------ CofiniteIdeal

CofiniteIdeal::CofiniteIdeal(std::vector<std::vector<IdealRoot>> roots) : roots_(std::move(roots))
{
    if (roots_.empty())
        throw PreconditionError("ideal: need at least one variable");
    for (std::size_t j = 0; j < roots_.size(); ++j) {
        if (roots_[j].empty())
            throw PreconditionError("ideal: variable t" + std::to_string(j + 1) + " has no roots");
        std::set<Scalar> seen;
        for (const auto& r : roots_[j]) {
            if (r.root.is_zero())
                throw PreconditionError("ideal: roots must be nonzero (t" + std::to_string(j + 1) + ")");
            if (r.multiplicity < 1)
                throw PreconditionError("ideal: multiplicities must be positive");
            if (!seen.insert(r.root).second)
                throw PreconditionError("ideal: repeated root " + r.root.str() + " for t" + std::to_string(j + 1));
        }
    }
}

Poly CofiniteIdeal::generator(std::size_t j) const
{
    std::vector<std::pair<Scalar, int>> r;
    for (const auto& x : roots_[j])
        r.emplace_back(x.root, x.multiplicity);
    return Poly::from_roots(r);
}

Poly CofiniteIdeal::squarefree_generator(std::size_t j) const { return squarefree().generator(j); }

CofiniteIdeal CofiniteIdeal::squarefree() const
{
    auto r = roots_;
    for (auto& v : r)
        for (auto& x : v)
            x.multiplicity = 1;
    return CofiniteIdeal(std::move(r));
}

CofiniteIdeal CofiniteIdeal::enlarged(int extra) const
{
    auto r = roots_;
    for (auto& v : r)
        for (auto& x : v)
            x.multiplicity += extra;
    return CofiniteIdeal(std::move(r));
}

bool CofiniteIdeal::is_squarefree() const
{
    for (const auto& v : roots_)
        for (const auto& x : v)
            if (x.multiplicity != 1)
                return false;
    return true;
}

std::string CofiniteIdeal::str() const
{
    std::ostringstream os;
    for (std::size_t j = 0; j < roots_.size(); ++j) {
        os << (j ? ";" : "") << 't' << j + 1 << ':';
        for (const auto& x : roots_[j])
            os << '(' << x.root << ',' << x.multiplicity << ')';
    }
    return os.str();
}

// ---------------------------------------------------------- QuotientAlgebra

QuotientAlgebra::QuotientAlgebra(CofiniteIdeal ideal) : ideal_(std::move(ideal))
{
    for (std::size_t j = 0; j < ideal_.vars(); ++j) {
        Poly p = ideal_.generator(j);
        degrees_.push_back(static_cast<std::size_t>(p.degree()));
        dim_ *= degrees_.back();
        // P = t Q + P(0), so t^{-1} = -Q / P(0).
        Poly q;
        q.coeffs.assign(p.coeffs.begin() + 1, p.coeffs.end());
        Scalar c0 = p.coeffs[0];
        for (auto& c : q.coeffs)
            c = -c / c0;
        q.trim();
        inverses_.push_back(poly_mod(q, p));
        generators_.push_back(std::move(p));
    }
    table_.assign(dim_, std::vector<SparseVec>(dim_));
    for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t b = 0; b < dim_; ++b) {
            auto e = exponent(a);
            auto f = exponent(b);
            for (std::size_t j = 0; j < e.size(); ++j)
                e[j] += f[j];
            table_[a][b] = reduce(LaurentPoly::monomial(vars(), e));
        }
}

std::vector<long> QuotientAlgebra::exponent(std::size_t index) const
{
    std::vector<long> e(vars());
    for (std::size_t j = vars(); j-- > 0;) {
        e[j] = static_cast<long>(index % degrees_[j]);
        index /= degrees_[j];
    }
    return e;
}

std::size_t QuotientAlgebra::index(const std::vector<long>& e) const
{
    std::size_t idx = 0;
    for (std::size_t j = 0; j < vars(); ++j) {
        if (e[j] < 0 || static_cast<std::size_t>(e[j]) >= degrees_[j])
            throw std::out_of_range("QuotientAlgebra::index: exponent outside the monomial basis");
        idx = idx * degrees_[j] + static_cast<std::size_t>(e[j]);
    }
    return idx;
}

std::string QuotientAlgebra::monomial_label(std::size_t index) const
{
    auto e = exponent(index);
    std::string s;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += "t" + std::to_string(j + 1);
        if (e[j] > 1)
            s += "^" + std::to_string(e[j]);
    }
    return s.empty() ? "1" : s;
}

Poly QuotientAlgebra::power_mod(std::size_t j, long k) const
{
    const Poly& p = generators_[j];
    Poly base = k >= 0 ? poly_mod(Poly::monomial(1), p) : inverses_[j];
    unsigned long n = k >= 0 ? static_cast<unsigned long>(k) : static_cast<unsigned long>(-k);
    Poly r = poly_mod(Poly::monomial(0), p);
    while (n) {
        if (n & 1)
            r = poly_mod(r * base, p);
        base = poly_mod(base * base, p);
        n >>= 1;
    }
    return r;
}

SparseVec QuotientAlgebra::reduce(const LaurentPoly& p) const
{
    if (p.vars() != vars())
        throw std::invalid_argument("reduce: variable count mismatch");
    std::vector<Scalar> acc(dim_);
    for (const auto& [e, c] : p.terms()) {
        // Tensor product of the univariate normal forms.
        std::vector<Scalar> v{c};
        for (std::size_t j = 0; j < vars(); ++j) {
            Poly f = power_mod(j, e[j]);
            std::vector<Scalar> next(v.size() * degrees_[j]);
            for (std::size_t a = 0; a < v.size(); ++a)
                for (std::size_t k = 0; k < f.coeffs.size(); ++k)
                    next[a * degrees_[j] + k] = v[a] * f.coeffs[k];
            v = std::move(next);
        }
        for (std::size_t i = 0; i < dim_; ++i)
            acc[i] += v[i];
    }
    return SparseVec::from_dense(acc);
}

SparseVec QuotientAlgebra::multiply(const SparseVec& x, const SparseVec& y) const
{
    SparseVec r(dim_);
    for (const auto& a : x.entries())
        for (const auto& b : y.entries())
            r.axpy(a.value * b.value, table_[a.index][b.index]);
    return r;
}

SparseVec QuotientAlgebra::variable(std::size_t j) const
{
    std::vector<long> e(vars(), 0);
    e[j] = 1;
    return reduce(LaurentPoly::monomial(vars(), e));
}

SparseVec QuotientAlgebra::variable_inverse(std::size_t j) const
{
    std::vector<long> e(vars(), 0);
    e[j] = -1;
    return reduce(LaurentPoly::monomial(vars(), e));
}

Mat QuotientAlgebra::multiplication_matrix(const SparseVec& x) const
{
    Mat m(dim_, dim_);
    for (std::size_t b = 0; b < dim_; ++b)
        m.set_col(b, multiply(x, SparseVec::unit(dim_, b)));
    return m;
}

Scalar QuotientAlgebra::evaluate(const SparseVec& x, const std::vector<Scalar>& point) const
{
    if (point.size() != vars())
        throw std::invalid_argument("evaluate: point has the wrong number of coordinates");
    Scalar v;
    for (const auto& e : x.entries()) {
        Scalar m = e.value;
        auto ex = exponent(e.index);
        for (std::size_t j = 0; j < vars(); ++j)
            for (long k = 0; k < ex[j]; ++k)
                m *= point[j];
        v += m;
    }
    return v;
}

// ----------------------------------------------------------- EvaluationGrid

EvaluationGrid::EvaluationGrid(const CofiniteIdeal& ideal) : vars_(ideal.vars())
{
    points_.push_back({});
    for (std::size_t j = 0; j < vars_; ++j) {
        std::vector<std::vector<Scalar>> next;
        for (const auto& p : points_)
            for (const auto& r : ideal.roots(j)) {
                auto q = p;
                q.push_back(r.root);
                next.push_back(std::move(q));
            }
        points_ = std::move(next);
    }
}

Scalar EvaluationGrid::monomial_value(std::size_t k, const std::vector<long>& m) const
{
    Scalar v = 1;
    for (std::size_t j = 0; j < vars_; ++j) {
        Scalar a = m[j] >= 0 ? points_[k][j] : points_[k][j].inverse();
        for (long i = 0; i < std::abs(m[j]); ++i)
            v *= a;
    }
    return v;
}

Mat evaluation_matrix(const QuotientAlgebra& a, const EvaluationGrid& grid)
{
    Mat m(grid.size(), a.dim());
    for (std::size_t e = 0; e < a.dim(); ++e)
        for (std::size_t k = 0; k < grid.size(); ++k)
            m.set(k, e, grid.monomial_value(k, a.exponent(e)));
    return m;
}

// ------------------------------------------------------------- LoopAlgebra

SparseVec LoopAlgebra::tensor(const SparseVec& x, const SparseVec& p) const
{
    std::vector<SparseVec::Entry> out;
    for (const auto& a : x.entries())
        for (const auto& e : p.entries())
            out.push_back({index(a.index, e.index), a.value * e.value});
    return SparseVec::from_entries(algebra->dim(), std::move(out));
}

LoopAlgebra build_loop(std::shared_ptr<const LieSuperalgebra> g, std::shared_ptr<const QuotientAlgebra> a)
{
    const std::size_t n = g->dim();
    const std::size_t d = a->dim();
    std::vector<Parity> parity;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t e = 0; e < d; ++e)
            parity.push_back(g->parity(i));
    LieSuperalgebra l(g->name() + "(x)A/I", std::move(parity));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const SparseVec& c = g->bracket_basis(i, j);
            if (c.is_zero())
                continue;
            for (std::size_t e = 0; e < d; ++e)
                for (std::size_t f = 0; f < d; ++f) {
                    std::vector<SparseVec::Entry> out;
                    for (const auto& x : c.entries())
                        for (const auto& y : a->product(e, f).entries())
                            out.push_back({x.index * d + y.index, x.value * y.value});
                    l.set_bracket(i * d + e, j * d + f, SparseVec::from_entries(n * d, std::move(out)));
                }
        }
    if (g->has_zdeg()) {
        std::vector<int> z;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t e = 0; e < d; ++e)
                z.push_back(g->zdeg(i));
        l.set_zdeg(std::move(z));
    }
    std::vector<std::size_t> cartan;
    for (std::size_t c : g->cartan())
        cartan.push_back(c * d);
    l.set_cartan(std::move(cartan));
    l.set_regular(g->regular());
    auto spread = [&](const std::vector<std::size_t>& src) {
        std::vector<std::size_t> out;
        for (std::size_t i : src)
            for (std::size_t e = 0; e < d; ++e)
                out.push_back(i * d + e);
        return out;
    };
    l.set_triangular(spread(g->negative()), spread(g->positive()));
    LoopAlgebra loop;
    loop.base = std::move(g);
    loop.coefficients = std::move(a);
    loop.algebra = std::make_shared<const LieSuperalgebra>(std::move(l));
    return loop;
}

Mat build_phi(const LieSuperalgebra& g, const QuotientAlgebra& a, const EvaluationGrid& grid)
{
    const std::size_t n = g.dim();
    Mat phi(grid.size() * n, n * a.dim());
    for (std::size_t e = 0; e < a.dim(); ++e) {
        auto ex = a.exponent(e);
        std::vector<Scalar> values;
        for (std::size_t k = 0; k < grid.size(); ++k)
            values.push_back(grid.monomial_value(k, ex));
        for (std::size_t x = 0; x < n; ++x) {
            std::vector<SparseVec::Entry> col;
            for (std::size_t k = 0; k < grid.size(); ++k)
                if (!values[k].is_zero())
                    col.push_back({k * n + x, values[k]});
            phi.set_col(x * a.dim() + e, SparseVec::from_entries(grid.size() * n, std::move(col)));
        }
    }
    return phi;
}

namespace {

// Componentwise bracket on G^N.
SparseVec bracket_power(const LieSuperalgebra& g, std::size_t copies, const SparseVec& x, const SparseVec& y)
{
    const std::size_t n = g.dim();
    std::vector<std::vector<SparseVec::Entry>> xs(copies);
    std::vector<std::vector<SparseVec::Entry>> ys(copies);
    for (const auto& e : x.entries())
        xs[e.index / n].push_back({e.index % n, e.value});
    for (const auto& e : y.entries())
        ys[e.index / n].push_back({e.index % n, e.value});
    std::vector<SparseVec::Entry> out;
    for (std::size_t k = 0; k < copies; ++k) {
        if (xs[k].empty() || ys[k].empty())
            continue;
        SparseVec b = g.bracket(SparseVec::from_entries(n, xs[k]), SparseVec::from_entries(n, ys[k]));
        for (const auto& e : b.entries())
            out.push_back({k * n + e.index, e.value});
    }
    return SparseVec::from_entries(copies * n, std::move(out));
}

} // namespace

EvaluationMapReport check_evaluation_map(std::shared_ptr<const LieSuperalgebra> g, const CofiniteIdeal& ideal)
{
    EvaluationMapReport rep;
    CofiniteIdeal sq = ideal.squarefree();
    EvaluationGrid grid(sq);
    const std::size_t n = g->dim();
    rep.grid_size = grid.size();

    auto a = std::make_shared<const QuotientAlgebra>(sq);
    Mat phi = build_phi(*g, *a, grid);
    rep.rank = rank(phi);
    rep.expected_rank = grid.size() * n;

    // Kernel on the model with every multiplicity raised by one.
    QuotientAlgebra model(sq.enlarged(1));
    rep.model_dim = model.dim();
    Subspace ker = kernel_basis(build_phi(*g, model, grid));
    rep.kernel_dim = ker.dim();
    rep.expected_kernel_dim = n * (model.dim() - grid.size());
    Subspace expected(n * model.dim());
    for (std::size_t j = 0; j < sq.vars(); ++j) {
        LaurentPoly pj = LaurentPoly::univariate(sq.vars(), j, sq.generator(j));
        for (std::size_t e = 0; e < model.dim(); ++e) {
            SparseVec r = model.reduce(pj * LaurentPoly::monomial(sq.vars(), model.exponent(e)));
            for (std::size_t x = 0; x < n; ++x) {
                std::vector<SparseVec::Entry> v;
                for (const auto& c : r.entries())
                    v.push_back({x * model.dim() + c.index, c.value});
                expected.insert(SparseVec::from_entries(n * model.dim(), std::move(v)));
            }
        }
    }
    rep.kernel_matches = ker == expected && ker.dim() == rep.expected_kernel_dim;

    LoopAlgebra loop = build_loop(g, a);
    const auto& l = *loop.algebra;
    for (std::size_t i = 0; i < l.dim(); ++i)
        for (std::size_t j = 0; j < l.dim(); ++j) {
            ++rep.bracket_pairs_checked;
            SparseVec lhs = phi.apply(l.bracket_basis(i, j));
            SparseVec rhs = bracket_power(*g, grid.size(), phi.col(i), phi.col(j));
            if (!(lhs == rhs))
                rep.bracket_violations.emplace_back(i, j);
        }
    return rep;
}

} // namespace superloop
