#include "superloop/exactla.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace superloop {

namespace {

// Dense scratch space for sparse linear combinations. Only touched slots are
// cleared, so a large buffer costs nothing per use.
class Accumulator {
public:
    void reset(std::size_t dim)
    {
        if (values_.size() < dim) {
            values_.resize(dim);
            used_.resize(dim, 0);
        }
        dim_ = dim;
    }

    void add(std::size_t i, const Scalar& v)
    {
        if (!used_[i]) {
            used_[i] = 1;
            touched_.push_back(i);
            values_[i] = v;
        } else {
            values_[i] += v;
        }
    }

    void add_scaled(const Scalar& c, const SparseVec& v)
    {
        if (c.is_one()) {
            for (const auto& e : v.entries())
                add(e.index, e.value);
            return;
        }
        for (const auto& e : v.entries())
            add(e.index, c * e.value);
    }

    SparseVec take()
    {
        std::sort(touched_.begin(), touched_.end());
        std::vector<SparseVec::Entry> out;
        out.reserve(touched_.size());
        for (std::size_t i : touched_) {
            if (!values_[i].is_zero())
                out.push_back({i, std::move(values_[i])});
            values_[i] = Scalar();
            used_[i] = 0;
        }
        touched_.clear();
        return SparseVec::from_entries(dim_, std::move(out));
    }

private:
    std::size_t dim_ = 0;
    std::vector<Scalar> values_;
    std::vector<char> used_;
    std::vector<std::size_t> touched_;
};

Accumulator& scratch()
{
    thread_local Accumulator acc;
    return acc;
}

void check_dim(std::size_t a, std::size_t b, const char* what)
{
    if (a != b)
        throw std::invalid_argument(std::string("dimension mismatch in ") + what);
}

} // namespace

// ---------------------------------------------------------------- SparseVec

SparseVec SparseVec::unit(std::size_t dim, std::size_t i, Scalar value)
{
    SparseVec v(dim);
    if (!value.is_zero())
        v.entries_.push_back({i, std::move(value)});
    return v;
}

SparseVec SparseVec::from_dense(std::span<const Scalar> values)
{
    SparseVec v(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!values[i].is_zero())
            v.entries_.push_back({i, values[i]});
    return v;
}

SparseVec SparseVec::from_entries(std::size_t dim, std::vector<Entry> entries)
{
    SparseVec v(dim);
    bool sorted = true;
    for (std::size_t k = 1; k < entries.size() && sorted; ++k)
        sorted = entries[k - 1].index < entries[k].index;
    if (!sorted) {
        std::stable_sort(entries.begin(), entries.end(),
                         [](const Entry& a, const Entry& b) { return a.index < b.index; });
        std::vector<Entry> merged;
        for (auto& e : entries) {
            if (!merged.empty() && merged.back().index == e.index)
                merged.back().value += e.value;
            else
                merged.push_back(std::move(e));
        }
        entries = std::move(merged);
    }
    for (auto& e : entries) {
        if (e.index >= dim)
            throw std::out_of_range("SparseVec index out of range");
        if (!e.value.is_zero())
            v.entries_.push_back(std::move(e));
    }
    return v;
}

Scalar SparseVec::get(std::size_t i) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.index < k; });
    if (it != entries_.end() && it->index == i)
        return it->value;
    return {};
}

void SparseVec::set(std::size_t i, const Scalar& v)
{
    if (i >= dim_)
        throw std::out_of_range("SparseVec::set index out of range");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.index < k; });
    bool present = it != entries_.end() && it->index == i;
    if (v.is_zero()) {
        if (present)
            entries_.erase(it);
        return;
    }
    if (present)
        it->value = v;
    else
        entries_.insert(it, {i, v});
}

std::vector<Scalar> SparseVec::to_dense() const
{
    std::vector<Scalar> out(dim_);
    for (const auto& e : entries_)
        out[e.index] = e.value;
    return out;
}

void SparseVec::axpy(const Scalar& c, const SparseVec& other)
{
    check_dim(dim_, other.dim_, "SparseVec::axpy");
    if (c.is_zero() || other.entries_.empty())
        return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
            out.push_back(std::move(*a++));
        } else if (a == entries_.end() || b->index < a->index) {
            out.push_back({b->index, c * b->value});
            ++b;
        } else {
            Scalar s = a->value + c * b->value;
            if (!s.is_zero())
                out.push_back({a->index, std::move(s)});
            ++a;
            ++b;
        }
    }
    entries_ = std::move(out);
}

SparseVec SparseVec::scaled(const Scalar& c) const
{
    SparseVec r(dim_);
    if (c.is_zero())
        return r;
    r.entries_.reserve(entries_.size());
    for (const auto& e : entries_)
        r.entries_.push_back({e.index, e.value * c});
    return r;
}

Scalar SparseVec::dot(const SparseVec& other) const
{
    check_dim(dim_, other.dim_, "SparseVec::dot");
    Scalar s;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() && b != other.entries_.end()) {
        if (a->index < b->index)
            ++a;
        else if (b->index < a->index)
            ++b;
        else {
            s += a->value * b->value;
            ++a;
            ++b;
        }
    }
    return s;
}

// ---------------------------------------------------------------------- Mat

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols, SparseVec(rows)) {}

Mat Mat::identity(std::size_t n)
{
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.cols_[i] = SparseVec::unit(n, i);
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Scalar>>& rows)
{
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.front().size();
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        check_dim(rows[i].size(), c, "Mat::from_rows");
        for (std::size_t j = 0; j < c; ++j)
            if (!rows[i][j].is_zero())
                m.cols_[j].set(i, rows[i][j]);
    }
    return m;
}

Mat Mat::from_columns(std::size_t rows, std::vector<SparseVec> cols)
{
    Mat m;
    m.rows_ = rows;
    for (const auto& c : cols)
        check_dim(c.dim(), rows, "Mat::from_columns");
    m.cols_ = std::move(cols);
    return m;
}

Mat Mat::from_vector(std::size_t rows, std::size_t cols, const SparseVec& v)
{
    check_dim(v.dim(), rows * cols, "Mat::from_vector");
    std::vector<std::vector<SparseVec::Entry>> per_col(cols);
    for (const auto& e : v.entries())
        per_col[e.index % cols].push_back({e.index / cols, e.value});
    Mat m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
        m.cols_[c] = SparseVec::from_entries(rows, std::move(per_col[c]));
    return m;
}

void Mat::set_col(std::size_t c, SparseVec v)
{
    check_dim(v.dim(), rows_, "Mat::set_col");
    cols_[c] = std::move(v);
}

SparseVec Mat::row(std::size_t r) const
{
    SparseVec out(cols_.size());
    std::vector<SparseVec::Entry> entries;
    for (std::size_t c = 0; c < cols_.size(); ++c) {
        Scalar v = cols_[c].get(r);
        if (!v.is_zero())
            entries.push_back({c, std::move(v)});
    }
    return SparseVec::from_entries(cols_.size(), std::move(entries));
}

SparseVec Mat::apply(const SparseVec& v) const
{
    check_dim(v.dim(), cols_.size(), "Mat::apply");
    if (v.nnz() == 1) {
        const auto& e = v.entries().front();
        return cols_[e.index].scaled(e.value);
    }
    Accumulator& acc = scratch();
    acc.reset(rows_);
    for (const auto& e : v.entries())
        acc.add_scaled(e.value, cols_[e.index]);
    return acc.take();
}

Mat Mat::transpose() const
{
    std::vector<std::vector<SparseVec::Entry>> per_row(rows_);
    for (std::size_t c = 0; c < cols_.size(); ++c)
        for (const auto& e : cols_[c].entries())
            per_row[e.index].push_back({c, e.value});
    Mat t(cols_.size(), rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        t.cols_[r] = SparseVec::from_entries(cols_.size(), std::move(per_row[r]));
    return t;
}

Scalar Mat::trace() const
{
    Scalar s;
    for (std::size_t c = 0; c < cols_.size() && c < rows_; ++c)
        s += cols_[c].get(c);
    return s;
}

bool Mat::is_zero() const
{
    return std::all_of(cols_.begin(), cols_.end(), [](const SparseVec& c) { return c.is_zero(); });
}

bool Mat::is_diagonal() const
{
    for (std::size_t c = 0; c < cols_.size(); ++c)
        for (const auto& e : cols_[c].entries())
            if (e.index != c)
                return false;
    return true;
}

std::size_t Mat::nnz() const
{
    std::size_t n = 0;
    for (const auto& c : cols_)
        n += c.nnz();
    return n;
}

SparseVec Mat::vectorize() const
{
    std::vector<SparseVec::Entry> entries;
    entries.reserve(nnz());
    for (std::size_t c = 0; c < cols_.size(); ++c)
        for (const auto& e : cols_[c].entries())
            entries.push_back({e.index * cols_.size() + c, e.value});
    return SparseVec::from_entries(rows_ * cols_.size(), std::move(entries));
}

std::vector<std::vector<Scalar>> Mat::to_dense() const
{
    std::vector<std::vector<Scalar>> out(rows_, std::vector<Scalar>(cols_.size()));
    for (std::size_t c = 0; c < cols_.size(); ++c)
        for (const auto& e : cols_[c].entries())
            out[e.index][c] = e.value;
    return out;
}

Mat Mat::scaled(const Scalar& c) const
{
    Mat m(rows_, cols_.size());
    for (std::size_t j = 0; j < cols_.size(); ++j)
        m.cols_[j] = cols_[j].scaled(c);
    return m;
}

Mat& Mat::operator+=(const Mat& o)
{
    axpy(1, o);
    return *this;
}

Mat& Mat::operator-=(const Mat& o)
{
    axpy(-1, o);
    return *this;
}

void Mat::axpy(const Scalar& c, const Mat& o)
{
    check_dim(rows_, o.rows_, "Mat::axpy");
    check_dim(cols_.size(), o.cols_.size(), "Mat::axpy");
    for (std::size_t j = 0; j < cols_.size(); ++j)
        cols_[j].axpy(c, o.cols_[j]);
}

Mat operator*(const Mat& a, const Mat& b)
{
    check_dim(a.cols(), b.rows(), "Mat::operator*");
    Mat m(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j)
        m.cols_[j] = a.apply(b.cols_[j]);
    return m;
}

// ----------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

Subspace Subspace::full(std::size_t ambient_dim)
{
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        s.basis_.push_back(SparseVec::unit(ambient_dim, i));
        s.pivots_.push_back(i);
    }
    return s;
}

Subspace Subspace::span(std::size_t ambient_dim, std::span<const SparseVec> vectors)
{
    Subspace s(ambient_dim);
    for (const auto& v : vectors)
        s.insert(v);
    return s;
}

std::vector<std::size_t> Subspace::free_columns() const
{
    std::vector<std::size_t> out;
    out.reserve(ambient_ - pivots_.size());
    std::size_t k = 0;
    for (std::size_t c = 0; c < ambient_; ++c) {
        if (k < pivots_.size() && pivots_[k] == c)
            ++k;
        else
            out.push_back(c);
    }
    return out;
}

SparseVec Subspace::reduce(const SparseVec& v) const
{
    check_dim(v.dim(), ambient_, "Subspace::reduce");
    if (basis_.empty() || v.is_zero())
        return v;
    // Rows are fully reduced, so the coefficient on each row is v's entry at
    // that row's pivot and one combined pass suffices.
    Accumulator& acc = scratch();
    acc.reset(ambient_);
    bool touched = false;
    std::size_t k = 0;
    for (const auto& e : v.entries()) {
        acc.add(e.index, e.value);
        while (k < pivots_.size() && pivots_[k] < e.index)
            ++k;
        if (k < pivots_.size() && pivots_[k] == e.index) {
            acc.add_scaled(-e.value, basis_[k]);
            touched = true;
        }
    }
    SparseVec r = acc.take();
    if (!touched)
        return v;
    return r;
}

bool Subspace::insert(const SparseVec& v)
{
    SparseVec r = reduce(v);
    if (r.is_zero())
        return false;
    Scalar lead = r.entries().front().value;
    if (!lead.is_one())
        r = r.scaled(lead.inverse());
    std::size_t p = r.leading();
    for (auto& row : basis_) {
        Scalar c = row.get(p);
        if (!c.is_zero())
            row.axpy(-c, r);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    auto offset = pos - pivots_.begin();
    pivots_.insert(pos, p);
    basis_.insert(basis_.begin() + offset, std::move(r));
    return true;
}

bool Subspace::contains(const Subspace& other) const
{
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [this](const SparseVec& v) { return contains(v); });
}

std::optional<std::vector<Scalar>> Subspace::coordinates(const SparseVec& v) const
{
    if (!contains(v))
        return std::nullopt;
    std::vector<Scalar> out(basis_.size());
    for (std::size_t k = 0; k < pivots_.size(); ++k)
        out[k] = v.get(pivots_[k]);
    return out;
}

Subspace Subspace::sum(const Subspace& other) const
{
    check_dim(ambient_, other.ambient_, "Subspace::sum");
    Subspace s = *this;
    for (const auto& v : other.basis_)
        s.insert(v);
    return s;
}

Subspace Subspace::annihilator() const
{
    Subspace s(ambient_);
    for (std::size_t f : free_columns()) {
        std::vector<SparseVec::Entry> entries{{f, Scalar(1)}};
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            Scalar c = basis_[k].get(f);
            if (!c.is_zero())
                entries.push_back({pivots_[k], -c});
        }
        s.insert(SparseVec::from_entries(ambient_, std::move(entries)));
    }
    return s;
}

Subspace Subspace::intersect(const Subspace& other) const
{
    check_dim(ambient_, other.ambient_, "Subspace::intersect");
    return annihilator().sum(other.annihilator()).annihilator();
}

// --------------------------------------------------------------- operations

RrefResult rref(const Mat& m)
{
    Mat t = m.transpose();
    Subspace s(m.cols());
    for (std::size_t r = 0; r < t.cols(); ++r)
        s.insert(t.col(r));
    RrefResult out;
    out.rank = s.dim();
    out.pivot_columns = s.pivots();
    std::vector<SparseVec> rows(m.rows(), SparseVec(m.cols()));
    for (std::size_t k = 0; k < s.dim(); ++k)
        rows[k] = s.basis()[k];
    out.form = Mat::from_columns(m.cols(), std::move(rows)).transpose();
    return out;
}

std::size_t rank(const Mat& m)
{
    Subspace s(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c)
        s.insert(m.col(c));
    return s.dim();
}

Subspace kernel_basis(const Mat& m)
{
    Mat t = m.transpose();
    Subspace rowspace(m.cols());
    for (std::size_t r = 0; r < t.cols(); ++r)
        rowspace.insert(t.col(r));
    return rowspace.annihilator();
}

Subspace column_space(const Mat& m)
{
    Subspace s(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c)
        s.insert(m.col(c));
    return s;
}

Subspace closure_under(std::span<const Mat> maps, const Subspace& seed)
{
    for (const auto& m : maps)
        if (m.rows() != seed.ambient_dim() || m.cols() != seed.ambient_dim())
            throw std::invalid_argument("closure_under: map is not square of ambient dimension");
    Subspace s(seed.ambient_dim());
    std::deque<SparseVec> queue;
    auto push = [&](const SparseVec& v) {
        SparseVec r = s.reduce(v);
        if (r.is_zero())
            return;
        s.insert(r);
        queue.push_back(std::move(r));
    };
    for (const auto& v : seed.basis())
        push(v);
    while (!queue.empty() && !s.is_full()) {
        SparseVec u = std::move(queue.front());
        queue.pop_front();
        for (const auto& m : maps)
            push(m.apply(u));
    }
    return s;
}

Subspace algebra_span(std::span<const Mat> gens, std::size_t n)
{
    for (const auto& g : gens)
        if (g.rows() != n || g.cols() != n)
            throw std::invalid_argument("algebra_span: generator of wrong size");
    Subspace s(n * n);
    std::deque<Mat> queue;
    auto push = [&](const Mat& m) {
        SparseVec r = s.reduce(m.vectorize());
        if (r.is_zero())
            return;
        s.insert(r);
        queue.push_back(Mat::from_vector(n, n, r));
    };
    push(Mat::identity(n));
    while (!queue.empty() && !s.is_full()) {
        Mat u = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : gens)
            push(g * u);
    }
    return s;
}

std::optional<SparseVec> solve(const Mat& a, const SparseVec& b)
{
    check_dim(b.dim(), a.rows(), "solve");
    std::size_t n = a.cols();
    Mat t = a.transpose();
    Subspace s(n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::vector<SparseVec::Entry> entries = t.col(r).entries();
        Scalar br = b.get(r);
        if (!br.is_zero())
            entries.push_back({n, br});
        s.insert(SparseVec::from_entries(n + 1, std::move(entries)));
    }
    if (!s.pivots().empty() && s.pivots().back() == n)
        return std::nullopt;
    std::vector<SparseVec::Entry> x;
    for (std::size_t k = 0; k < s.dim(); ++k) {
        Scalar v = s.basis()[k].get(n);
        if (!v.is_zero())
            x.push_back({s.pivots()[k], v});
    }
    return SparseVec::from_entries(n, std::move(x));
}

Mat inverse(const Mat& a)
{
    if (!a.is_square())
        throw std::domain_error("inverse: matrix is not square");
    std::size_t n = a.rows();
    Mat t = a.transpose();
    Subspace s(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<SparseVec::Entry> entries = t.col(r).entries();
        entries.push_back({n + r, Scalar(1)});
        s.insert(SparseVec::from_entries(2 * n, std::move(entries)));
    }
    for (std::size_t k = 0; k < n; ++k)
        if (k >= s.dim() || s.pivots()[k] != k)
            throw std::domain_error("inverse: matrix is singular");
    Mat inv(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& e : s.basis()[k].entries())
            if (e.index >= n)
                inv.set(k, e.index - n, e.value);
    return inv;
}

} // namespace superloop
