#include "superloop/superalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace superloop {

// --------------------------------------------------------------------- Root

bool Root::is_zero() const
{
    return std::all_of(values.begin(), values.end(), [](const Scalar& s) { return s.is_zero(); });
}

Root Root::operator-() const
{
    Root r;
    for (const auto& v : values)
        r.values.push_back(-v);
    return r;
}

Root operator+(const Root& a, const Root& b)
{
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("Root addition: length mismatch");
    Root r;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        r.values.push_back(a.values[i] + b.values[i]);
    return r;
}

std::strong_ordering operator<=>(const Root& a, const Root& b)
{
    return std::lexicographical_compare_three_way(a.values.begin(), a.values.end(), b.values.begin(),
                                                  b.values.end());
}

std::string Root::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < values.size(); ++i)
        os << (i ? "," : "") << values[i];
    os << ')';
    return os.str();
}

// ---------------------------------------------------------- LieSuperalgebra

LieSuperalgebra::LieSuperalgebra(std::string name, std::vector<Parity> parity)
    : name_(std::move(name)), parity_(std::move(parity))
{
    std::size_t n = parity_.size();
    table_.assign(n, std::vector<SparseVec>(n, SparseVec(n)));
}

std::vector<std::size_t> LieSuperalgebra::indices_of(Parity p) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
        if (parity_[i] == p)
            out.push_back(i);
    return out;
}

void LieSuperalgebra::set_bracket(std::size_t i, std::size_t j, SparseVec value)
{
    if (value.dim() != dim())
        throw std::invalid_argument("set_bracket: dimension mismatch");
    table_.at(i).at(j) = std::move(value);
}

SparseVec LieSuperalgebra::bracket(const SparseVec& x, const SparseVec& y) const
{
    if (x.dim() != dim() || y.dim() != dim())
        throw std::invalid_argument("bracket: dimension mismatch");
    SparseVec out(dim());
    for (const auto& a : x.entries())
        for (const auto& b : y.entries()) {
            const SparseVec& c = table_[a.index][b.index];
            if (!c.is_zero())
                out.axpy(a.value * b.value, c);
        }
    return out;
}

Mat LieSuperalgebra::ad(const SparseVec& x) const
{
    Mat m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j)
        m.set_col(j, bracket(x, basis_vector(j)));
    return m;
}

void LieSuperalgebra::set_zdeg(std::vector<int> zdeg)
{
    if (zdeg.size() != dim())
        throw std::invalid_argument("set_zdeg: length mismatch");
    zdeg_ = std::move(zdeg);
}

std::vector<std::size_t> LieSuperalgebra::indices_of_degree(int d) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
        if (zdeg(i) == d)
            out.push_back(i);
    return out;
}

void LieSuperalgebra::set_cartan(std::vector<std::size_t> cartan)
{
    for (std::size_t c : cartan)
        if (c >= dim() || parity_[c] != Parity::Even)
            throw PreconditionError("set_cartan: Cartan elements must be even basis vectors");
    cartan_ = std::move(cartan);
}

void LieSuperalgebra::set_triangular(std::vector<std::size_t> neg, std::vector<std::size_t> pos)
{
    neg_ = std::move(neg);
    pos_ = std::move(pos);
}

Root LieSuperalgebra::root_of(std::size_t i) const
{
    Root r;
    r.values.reserve(cartan_.size());
    for (std::size_t c : cartan_) {
        const SparseVec& v = table_[c][i];
        if (v.is_zero()) {
            r.values.emplace_back();
            continue;
        }
        if (v.nnz() != 1 || v.leading() != i)
            throw PreconditionError("Cartan element " + std::to_string(c) +
                                    " does not act diagonally on basis vector " + std::to_string(i));
        r.values.push_back(v.entries().front().value);
    }
    return r;
}

// ------------------------------------------------------------------- checks

std::string to_string(AxiomViolation::Kind kind)
{
    switch (kind) {
    case AxiomViolation::Kind::Parity:
        return "parity";
    case AxiomViolation::Kind::SkewSymmetry:
        return "skew-symmetry";
    case AxiomViolation::Kind::Jacobi:
        return "jacobi";
    }
    return "?";
}

AxiomReport check_axioms(const LieSuperalgebra& g)
{
    AxiomReport report;
    const std::size_t n = g.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const SparseVec& c = g.bracket_basis(i, j);
            Parity expect = g.parity(i) + g.parity(j);
            for (const auto& e : c.entries())
                if (g.parity(e.index) != expect) {
                    report.violations.push_back({AxiomViolation::Kind::Parity, i, j, 0});
                    break;
                }
            if (j < i)
                continue;
            SparseVec s = c;
            s.axpy(Scalar(koszul_sign(g.parity(i), g.parity(j))), g.bracket_basis(j, i));
            if (!s.is_zero())
                report.violations.push_back({AxiomViolation::Kind::SkewSymmetry, i, j, 0});
        }

    // [[X,Y],Z] - [X,[Y,Z]] + (-1)^{|X||Y|} [Y,[X,Z]] = 0
    std::vector<Mat> ad_rows(n);
    for (std::size_t i = 0; i < n; ++i)
        ad_rows[i] = g.ad(g.basis_vector(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const SparseVec& xy = g.bracket_basis(i, j);
            Scalar sign(koszul_sign(g.parity(i), g.parity(j)));
            for (std::size_t k = 0; k < n; ++k) {
                ++report.triples_checked;
                SparseVec lhs(n);
                for (const auto& e : xy.entries())
                    lhs.axpy(e.value, g.bracket_basis(e.index, k));
                lhs.axpy(-1, ad_rows[i].apply(g.bracket_basis(j, k)));
                lhs.axpy(sign, ad_rows[j].apply(g.bracket_basis(i, k)));
                if (!lhs.is_zero())
                    report.violations.push_back({AxiomViolation::Kind::Jacobi, i, j, k});
            }
        }
    std::sort(report.violations.begin(), report.violations.end());
    return report;
}

GradingReport check_z_grading(const LieSuperalgebra& g)
{
    if (!g.has_zdeg())
        throw PreconditionError("check_z_grading: algebra '" + g.name() + "' has no Z-degree tags");
    GradingReport report;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        int d = g.zdeg(i);
        if (d < -1 || d > 1)
            throw PreconditionError("check_z_grading: degree outside {-1,0,1}");
        (d < 0 ? report.dim_minus : d == 0 ? report.dim_zero : report.dim_plus)++;
    }
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j) {
            const SparseVec& c = g.bracket_basis(i, j);
            if (c.is_zero())
                continue;
            int target = g.zdeg(i) + g.zdeg(j);
            if (target == 2)
                report.plus_plus_zero = false;
            if (target == -2)
                report.minus_minus_zero = false;
            bool ok = target >= -1 && target <= 1;
            for (const auto& e : c.entries())
                ok = ok && g.zdeg(e.index) == target;
            if (!ok)
                report.violations.push_back({i, j});
        }
    return report;
}

std::vector<RootSpace> root_decomposition(const LieSuperalgebra& g)
{
    std::map<Root, RootSpace> spaces;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        Root r = g.root_of(i);
        auto [it, inserted] = spaces.try_emplace(r, RootSpace{r, {}, g.parity(i)});
        if (!inserted && !r.is_zero() && it->second.parity != g.parity(i))
            throw InvariantError("root space " + r.str() + " mixes parities");
        it->second.indices.push_back(i);
    }
    std::vector<RootSpace> out;
    Root zero{std::vector<Scalar>(g.cartan().size())};
    if (auto it = spaces.find(zero); it != spaces.end())
        out.push_back(it->second);
    for (auto& [r, s] : spaces)
        if (!r.is_zero())
            out.push_back(std::move(s));
    return out;
}

Triangular triangular(const LieSuperalgebra& g)
{
    Triangular t;
    if (g.regular().size() != g.cartan().size()) {
        // No regular element in h (sl(n,n)): use the stored split.
        if (g.positive().empty())
            throw PreconditionError("triangular: algebra '" + g.name() + "' has no regular weights");
        t.neg = g.negative();
        t.pos = g.positive();
        for (const auto& space : root_decomposition(g))
            if (space.root.is_zero())
                t.cartan = space.indices;
        std::sort(t.neg.begin(), t.neg.end());
        std::sort(t.pos.begin(), t.pos.end());
        return t;
    }
    for (const auto& space : root_decomposition(g)) {
        if (space.root.is_zero()) {
            t.cartan = space.indices;
            continue;
        }
        Scalar height;
        for (std::size_t c = 0; c < g.regular().size(); ++c)
            height += space.root.values[c] * g.regular()[c];
        if (height.is_zero())
            throw PreconditionError("triangular: root " + space.root.str() + " is not regular");
        auto& side = height.sign() > 0 ? t.pos : t.neg;
        side.insert(side.end(), space.indices.begin(), space.indices.end());
    }
    std::sort(t.neg.begin(), t.neg.end());
    std::sort(t.pos.begin(), t.pos.end());
    std::sort(t.cartan.begin(), t.cartan.end());
    return t;
}

LieSuperalgebra subalgebra(const LieSuperalgebra& g, const std::vector<std::size_t>& indices, std::string name)
{
    std::vector<long> where(g.dim(), -1);
    std::vector<Parity> parity;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        where[indices[k]] = static_cast<long>(k);
        parity.push_back(g.parity(indices[k]));
    }
    LieSuperalgebra s(std::move(name), std::move(parity));
    const std::size_t n = indices.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<SparseVec::Entry> entries;
            for (const auto& e : g.bracket_basis(indices[a], indices[b]).entries()) {
                if (where[e.index] < 0)
                    throw PreconditionError("subalgebra: span of the chosen basis vectors is not closed");
                entries.push_back({static_cast<std::size_t>(where[e.index]), e.value});
            }
            s.set_bracket(a, b, SparseVec::from_entries(n, std::move(entries)));
        }
    auto restrict = [&](const std::vector<std::size_t>& src) {
        std::vector<std::size_t> out;
        for (std::size_t i : src)
            if (where[i] >= 0)
                out.push_back(static_cast<std::size_t>(where[i]));
        return out;
    };
    if (g.has_zdeg()) {
        std::vector<int> z;
        for (std::size_t i : indices)
            z.push_back(g.zdeg(i));
        s.set_zdeg(std::move(z));
    }
    std::vector<std::size_t> cartan;
    std::vector<Scalar> regular;
    for (std::size_t c = 0; c < g.cartan().size(); ++c)
        if (where[g.cartan()[c]] >= 0) {
            cartan.push_back(static_cast<std::size_t>(where[g.cartan()[c]]));
            if (!g.regular().empty())
                regular.push_back(g.regular()[c]);
        }
    s.set_cartan(std::move(cartan));
    s.set_regular(std::move(regular));
    s.set_triangular(restrict(g.negative()), restrict(g.positive()));
    return s;
}

Mat killing_form(const LieSuperalgebra& g)
{
    const std::size_t n = g.dim();
    std::vector<Mat> ads(n);
    for (std::size_t i = 0; i < n; ++i)
        ads[i] = g.ad(g.basis_vector(i));
    Mat k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Scalar t = (ads[i] * ads[j]).trace();
            k.set(i, j, t);
            k.set(j, i, t);
        }
    return k;
}

} // namespace superloop
