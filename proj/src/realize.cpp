#include "superloop/realize.hpp"

#include <algorithm>
#include <numeric>

namespace superloop {

namespace {

Mat unit(std::size_t size, std::size_t r, std::size_t c, Scalar v = 1)
{
    Mat m(size, size);
    m.set(r, c, v);
    return m;
}

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

// Fills pivot_entries / pivot_inverse so that coordinates() is a small solve.
void prepare_solver(MatrixRealization& r)
{
    const std::size_t dim = r.basis.size();
    const std::size_t entries = r.size * r.size;
    std::vector<SparseVec> cols;
    for (const auto& b : r.basis)
        cols.push_back(b.vectorize());
    Mat v = Mat::from_columns(entries, cols);
    RrefResult rr = rref(v.transpose());
    if (rr.rank != dim)
        throw InvariantError("realization basis matrices are linearly dependent");
    r.pivot_entries = rr.pivot_columns;
    Mat sub(dim, dim);
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t c = 0; c < dim; ++c) {
            Scalar x = cols[c].get(r.pivot_entries[k]);
            if (!x.is_zero())
                sub.set(k, c, x);
        }
    r.pivot_inverse = inverse(sub);
}

// Structure constants from the matrices, one supercommutator per pair.
LieSuperalgebra table_from_matrices(const MatrixRealization& r, std::string name, std::vector<Parity> parity)
{
    LieSuperalgebra g(std::move(name), std::move(parity));
    for (std::size_t i = 0; i < r.basis.size(); ++i)
        for (std::size_t j = 0; j < r.basis.size(); ++j)
            g.set_bracket(i, j, r.coordinates(r.supercommutator(r.basis[i], r.basis[j])));
    return g;
}

std::vector<Scalar> diagonal_coordinates(const MatrixRealization& r, const LieSuperalgebra& g,
                                         const std::vector<Scalar>& diag)
{
    Mat h(r.size, r.size);
    for (std::size_t i = 0; i < r.size; ++i)
        if (!diag[i].is_zero())
            h.set(i, i, diag[i]);
    SparseVec coords = r.coordinates(h);
    std::vector<Scalar> w;
    for (std::size_t c : g.cartan())
        w.push_back(coords.get(c));
    return w;
}

// Positive / negative basis vectors read off the shape of the basis matrices:
// strictly upper triangular entries are positive.
void set_triangular_from_shape(const MatrixRealization& r, LieSuperalgebra& g)
{
    std::vector<std::size_t> neg;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < r.basis.size(); ++i) {
        if (std::find(r.cartan.begin(), r.cartan.end(), i) != r.cartan.end())
            continue;
        const Mat& b = r.basis[i];
        bool upper = false;
        for (std::size_t c = 0; c < b.cols() && !upper; ++c)
            for (const auto& e : b.col(c).entries())
                if (e.index < c) {
                    upper = true;
                    break;
                }
        (upper ? pos : neg).push_back(i);
    }
    g.set_triangular(std::move(neg), std::move(pos));
}

} // namespace

// -------------------------------------------------------- MatrixRealization

SparseVec MatrixRealization::coordinates(const Mat& x) const
{
    if (x.rows() != size || x.cols() != size)
        throw PreconditionError("coordinates: matrix has the wrong size");
    SparseVec vx = x.vectorize();
    std::vector<SparseVec::Entry> rhs;
    for (std::size_t k = 0; k < pivot_entries.size(); ++k) {
        Scalar v = vx.get(pivot_entries[k]);
        if (!v.is_zero())
            rhs.push_back({k, v});
    }
    SparseVec c = pivot_inverse.apply(SparseVec::from_entries(basis.size(), std::move(rhs)));
    Mat back(size, size);
    for (const auto& e : c.entries())
        back.axpy(e.value, basis[e.index]);
    if (!(back == x))
        throw PreconditionError("coordinates: matrix is not in the span of the basis");
    return c;
}

Root MatrixRealization::functional(const std::vector<Scalar>& coeffs) const
{
    if (coeffs.size() != coordinate_positions.size())
        throw std::invalid_argument("functional: wrong number of coefficients");
    Root r;
    for (std::size_t c : cartan) {
        Scalar v;
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            v += coeffs[k] * basis[c].at(coordinate_positions[k], coordinate_positions[k]);
        r.values.push_back(v);
    }
    return r;
}

std::string MatrixRealization::root_label(const Root& root) const
{
    const std::size_t k = coordinate_positions.size();
    auto try_coeffs = [&](const std::vector<Scalar>& c) { return functional(c) == root; };
    auto name = [&](const std::vector<Scalar>& c) {
        std::string s;
        for (std::size_t i = 0; i < k; ++i) {
            if (c[i].is_zero())
                continue;
            if (c[i].sign() < 0)
                s += "-";
            else if (!s.empty())
                s += "+";
            if (c[i].abs() != Scalar(1))
                s += c[i].abs().str();
            s += coordinate_names[i];
        }
        return s.empty() ? std::string("0") : s;
    };
    if (root.is_zero())
        return "0";
    std::vector<Scalar> c(k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            if (a == b)
                continue;
            c.assign(k, Scalar());
            c[a] = 1;
            c[b] = -1;
            if (try_coeffs(c))
                return name(c);
        }
    for (int sign : {1, -1})
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b) {
                c.assign(k, Scalar());
                c[a] = sign;
                c[b] = sign;
                if (try_coeffs(c))
                    return name(c);
            }
    for (int sign : {2, -2, 1, -1})
        for (std::size_t a = 0; a < k; ++a) {
            c.assign(k, Scalar());
            c[a] = sign;
            if (try_coeffs(c))
                return name(c);
        }
    return root.str();
}

Parity MatrixRealization::matrix_parity(const Mat& x) const
{
    bool even_blocks = false;
    bool odd_blocks = false;
    for (std::size_t c = 0; c < x.cols(); ++c)
        for (const auto& e : x.col(c).entries())
            (row_parity(e.index) == row_parity(c) ? even_blocks : odd_blocks) = true;
    if (even_blocks && odd_blocks)
        throw PreconditionError("matrix is not homogeneous");
    return odd_blocks ? Parity::Odd : Parity::Even;
}

Mat MatrixRealization::supercommutator(const Mat& x, const Mat& y) const
{
    Mat r = x * y;
    r.axpy(Scalar(-koszul_sign(matrix_parity(x), matrix_parity(y))), y * x);
    return r;
}

Scalar supertrace(const Mat& x, std::size_t m, std::size_t n)
{
    if (x.rows() != m + n || x.cols() != m + n)
        throw PreconditionError("supertrace: matrix size does not match the block split");
    Scalar s;
    for (std::size_t i = 0; i < m + n; ++i)
        s += i < m ? x.at(i, i) : -x.at(i, i);
    return s;
}

// ----------------------------------------------------------------- sl(m, n)

Realized build_sl(std::size_t m, std::size_t n)
{
    if (m < 1 || n < 1 || m + n < 3)
        throw PreconditionError("build_sl: need block sizes m, n >= 1 with m + n >= 3");
    auto r = std::make_shared<MatrixRealization>();
    r->family = Family::SL;
    r->m = m;
    r->n = n;
    r->size = m + n;
    r->even_rows = m;
    const std::size_t s = m + n;
    for (std::size_t i = 0; i < s; ++i) {
        r->coordinate_positions.push_back(i);
        r->coordinate_names.push_back(i < m ? "eps" + one_based(i) : "delta" + one_based(i - m));
    }

    std::vector<Parity> parity;
    std::vector<int> zdeg;
    auto add = [&](Mat b, std::string label, Parity p, int d) {
        r->basis.push_back(std::move(b));
        r->labels.push_back(std::move(label));
        parity.push_back(p);
        zdeg.push_back(d);
    };
    auto eu = [&](std::size_t i, std::size_t j) { return "E" + one_based(i) + "," + one_based(j); };

    // g_0: off-diagonal units inside the diagonal blocks, then the Cartan basis.
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            if (i != j && (i < m) == (j < m))
                add(unit(s, i, j), eu(i, j), Parity::Even, 0);
    for (std::size_t k = 0; k + 1 < s; ++k) {
        Mat h(s, s);
        h.set(k, k, 1);
        // Across the block boundary the supertraceless combination is a sum.
        h.set(k + 1, k + 1, k + 1 == m ? 1 : -1);
        r->cartan.push_back(r->basis.size());
        add(std::move(h), "h" + one_based(k), Parity::Even, 0);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = m; j < s; ++j)
            add(unit(s, i, j), eu(i, j), Parity::Odd, 1);
    for (std::size_t i = m; i < s; ++i)
        for (std::size_t j = 0; j < m; ++j)
            add(unit(s, i, j), eu(i, j), Parity::Odd, -1);

    prepare_solver(*r);
    LieSuperalgebra g = table_from_matrices(*r, "sl(" + std::to_string(m) + "," + std::to_string(n) + ")", parity);
    g.set_zdeg(zdeg);
    g.set_cartan(r->cartan);
    set_triangular_from_shape(*r, g);
    if (m != n) {
        // Decreasing diagonal, shifted by the identity to be supertraceless.
        std::vector<Scalar> diag;
        Scalar str;
        for (std::size_t i = 0; i < s; ++i) {
            diag.emplace_back(static_cast<long long>(s - i));
            str += i < m ? diag.back() : -diag.back();
        }
        Scalar shift = -str / Scalar(static_cast<long long>(m) - static_cast<long long>(n));
        for (auto& d : diag)
            d += shift;
        g.set_regular(diagonal_coordinates(*r, g, diag));
    } else {
        g.set_center(r->coordinates(Mat::identity(s)));
    }
    return {std::make_shared<const LieSuperalgebra>(std::move(g)), std::move(r)};
}

// --------------------------------------------------------------------- C(m)

Realized build_C(std::size_t m)
{
    if (m < 3)
        throw PreconditionError("build_C: need m >= 3");
    const std::size_t k = m - 1;
    const std::size_t s = 2 * m;
    auto r = std::make_shared<MatrixRealization>();
    r->family = Family::C;
    r->m = m;
    r->size = s;
    r->even_rows = 2;
    r->coordinate_positions.push_back(0);
    r->coordinate_names.push_back("eps1");
    for (std::size_t i = 0; i < k; ++i) {
        r->coordinate_positions.push_back(2 + i);
        r->coordinate_names.push_back("delta" + one_based(i));
    }

    std::vector<Parity> parity;
    std::vector<int> zdeg;
    auto add = [&](Mat b, std::string label, Parity p, int d) {
        r->basis.push_back(std::move(b));
        r->labels.push_back(std::move(label));
        parity.push_back(p);
        zdeg.push_back(d);
    };
    // Odd-part rows: 2..m carry +delta_i, m+1..2m-1 carry -delta_i.
    auto up = [&](std::size_t i) { return 2 + i; };
    auto dn = [&](std::size_t i) { return 2 + k + i; };

    Mat alpha(s, s);
    alpha.set(0, 0, 1);
    alpha.set(1, 1, -1);
    r->cartan.push_back(0);
    add(std::move(alpha), "z", Parity::Even, 0);
    // sp(2m-2) = [[A, B], [C, -A^T]] with B, C symmetric.
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Mat a = unit(s, up(i), up(j));
            a.set(dn(j), dn(i), -1);
            if (i == j)
                r->cartan.push_back(r->basis.size());
            add(std::move(a), "A" + one_based(i) + one_based(j), Parity::Even, 0);
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            Mat b = unit(s, up(i), dn(j));
            b.set(up(j), dn(i), 1);
            add(std::move(b), "B" + one_based(i) + one_based(j), Parity::Even, 0);
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            Mat c = unit(s, dn(i), up(j));
            c.set(dn(j), up(i), 1);
            add(std::move(c), "C" + one_based(i) + one_based(j), Parity::Even, 0);
        }
    // g_{+1}: first row (a^T, b^T) with first-column partner (-b; a).
    for (std::size_t i = 0; i < k; ++i) {
        Mat a = unit(s, 0, up(i));
        a.set(dn(i), 1, 1);
        add(std::move(a), "P" + one_based(i), Parity::Odd, 1);
        Mat b = unit(s, 0, dn(i));
        b.set(up(i), 1, -1);
        add(std::move(b), "Q" + one_based(i), Parity::Odd, 1);
    }
    // g_{-1}: second row (a^T, b^T) with zeroth-column partner (-b; a).
    for (std::size_t i = 0; i < k; ++i) {
        Mat a = unit(s, 1, up(i));
        a.set(dn(i), 0, 1);
        add(std::move(a), "R" + one_based(i), Parity::Odd, -1);
        Mat b = unit(s, 1, dn(i));
        b.set(up(i), 0, -1);
        add(std::move(b), "S" + one_based(i), Parity::Odd, -1);
    }

    prepare_solver(*r);
    LieSuperalgebra g = table_from_matrices(*r, "C(" + std::to_string(m) + ")", parity);
    g.set_zdeg(zdeg);
    g.set_cartan(r->cartan);
    // eps1 dominates every delta so that g_{+1} is positive.
    std::vector<Scalar> diag(s);
    diag[0] = static_cast<long long>(k + 1);
    diag[1] = -diag[0];
    for (std::size_t i = 0; i < k; ++i) {
        diag[up(i)] = static_cast<long long>(k - i);
        diag[dn(i)] = -diag[up(i)];
    }
    g.set_regular(diagonal_coordinates(*r, g, diag));
    Triangular t = triangular(g);
    g.set_triangular(t.neg, t.pos);
    return {std::make_shared<const LieSuperalgebra>(std::move(g)), std::move(r)};
}

// ------------------------------------------------------------- center split

Scalar CenterSplit::z_component(const SparseVec& x) const { return x.get(z_index) / z.get(z_index); }

std::optional<CenterWitness> odd_bracket_center_witness(const LieSuperalgebra& g, const CenterSplit& split)
{
    for (std::size_t i : g.indices_of(Parity::Odd))
        for (std::size_t j : g.indices_of(Parity::Odd))
            if (Scalar c = split.z_component(g.bracket_basis(i, j)); !c.is_zero())
                return CenterWitness{i, j, c};
    return std::nullopt;
}

CenterSplit center_split(const LieSuperalgebra& g)
{
    std::vector<std::size_t> even = g.indices_of(Parity::Even);
    const std::size_t n = g.dim();
    // Rows: coordinates of [x, e_j] stacked over even j; columns: even x.
    Mat commutators(n * even.size(), even.size());
    for (std::size_t a = 0; a < even.size(); ++a) {
        std::vector<SparseVec::Entry> col;
        for (std::size_t b = 0; b < even.size(); ++b)
            for (const auto& e : g.bracket_basis(even[a], even[b]).entries())
                col.push_back({b * n + e.index, e.value});
        commutators.set_col(a, SparseVec::from_entries(n * even.size(), std::move(col)));
    }
    Subspace center = kernel_basis(commutators);
    if (center.dim() != 1)
        throw PreconditionError("center_split: center of the even part has dimension " +
                                std::to_string(center.dim()));

    // Primitive integer normalization.
    const SparseVec& c = center.basis().front();
    mpz_class lcm = 1;
    for (const auto& e : c.entries())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.value.denominator().get_mpz_t());
    mpz_class gcd = 0;
    for (const auto& e : c.entries()) {
        mpz_class v = (e.value * Scalar(mpq_class(lcm))).numerator();
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), v.get_mpz_t());
    }
    Scalar scale = Scalar(mpq_class(lcm)) / Scalar(mpq_class(gcd));
    if (c.entries().front().value.sign() < 0)
        scale = -scale;
    std::vector<SparseVec::Entry> z;
    for (const auto& e : c.entries())
        z.push_back({even[e.index], e.value * scale});

    CenterSplit split;
    split.z = SparseVec::from_entries(n, std::move(z));

    Subspace derived(n);
    for (std::size_t a : even)
        for (std::size_t b : even)
            derived.insert(g.bracket_basis(a, b));
    std::vector<std::size_t> outside;
    for (std::size_t a : even)
        (derived.contains(g.basis_vector(a)) ? split.ss_indices : outside).push_back(a);
    if (split.ss_indices.size() != derived.dim() || outside.size() != 1)
        throw PreconditionError("center_split: [g_even, g_even] is not spanned by basis vectors of codimension one");
    split.z_index = outside.front();
    if (split.z.get(split.z_index).is_zero())
        throw PreconditionError("center_split: center lies inside [g_even, g_even]");
    for (std::size_t c2 : g.cartan())
        if (std::find(split.ss_indices.begin(), split.ss_indices.end(), c2) != split.ss_indices.end())
            split.h_ss.push_back(c2);
    return split;
}

std::shared_ptr<const LieSuperalgebra> semisimple_part(const LieSuperalgebra& g, const CenterSplit& split)
{
    return std::make_shared<const LieSuperalgebra>(subalgebra(g, split.ss_indices, g.name() + "_ss"));
}

} // namespace superloop
