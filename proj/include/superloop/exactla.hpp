#pragma once

// Exact sparse linear algebra over the rationals.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "superloop/scalar.hpp"

namespace superloop {

/// Sparse vector with entries sorted by index and no stored zeros.
class SparseVec {
public:
    struct Entry {
        std::size_t index;
        Scalar value;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    SparseVec() = default;
    explicit SparseVec(std::size_t dim) : dim_(dim) {}

    static SparseVec unit(std::size_t dim, std::size_t i, Scalar value = 1);
    static SparseVec from_dense(std::span<const Scalar> values);
    /// Entries may be unsorted and repeated; repeated indices are summed.
    static SparseVec from_entries(std::size_t dim, std::vector<Entry> entries);

    std::size_t dim() const { return dim_; }
    std::size_t nnz() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const { return entries_; }

    Scalar get(std::size_t i) const;
    void set(std::size_t i, const Scalar& v);
    /// Index of the first nonzero entry; requires !is_zero().
    std::size_t leading() const { return entries_.front().index; }

    std::vector<Scalar> to_dense() const;

    /// this += c * other
    void axpy(const Scalar& c, const SparseVec& other);
    SparseVec scaled(const Scalar& c) const;
    Scalar dot(const SparseVec& other) const;

    SparseVec& operator+=(const SparseVec& o)
    {
        axpy(1, o);
        return *this;
    }
    SparseVec& operator-=(const SparseVec& o)
    {
        axpy(-1, o);
        return *this;
    }
    friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
    friend bool operator==(const SparseVec& a, const SparseVec& b) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Entry> entries_;
};

/// Sparse rows x cols matrix, stored by column.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols);

    static Mat identity(std::size_t n);
    /// Row-major dense input.
    static Mat from_rows(const std::vector<std::vector<Scalar>>& rows);
    static Mat from_columns(std::size_t rows, std::vector<SparseVec> cols);
    /// Inverse of vectorize().
    static Mat from_vector(std::size_t rows, std::size_t cols, const SparseVec& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }
    bool is_square() const { return rows_ == cols_.size(); }

    Scalar at(std::size_t r, std::size_t c) const { return cols_[c].get(r); }
    void set(std::size_t r, std::size_t c, const Scalar& v) { cols_[c].set(r, v); }
    const SparseVec& col(std::size_t c) const { return cols_[c]; }
    void set_col(std::size_t c, SparseVec v);
    /// Row r gathered into a sparse vector of length cols().
    SparseVec row(std::size_t r) const;

    SparseVec apply(const SparseVec& v) const;
    Mat transpose() const;
    Scalar trace() const;
    bool is_zero() const;
    bool is_diagonal() const;
    std::size_t nnz() const;
    /// Row-major vectorization: entry (r, c) lands at r * cols() + c.
    SparseVec vectorize() const;
    std::vector<std::vector<Scalar>> to_dense() const;

    Mat scaled(const Scalar& c) const;
    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    /// this += c * o
    void axpy(const Scalar& c, const Mat& o);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const Mat& a, const Mat& b);
    friend bool operator==(const Mat& a, const Mat& b) = default;

private:
    std::size_t rows_ = 0;
    std::vector<SparseVec> cols_;
};

/// A subspace of Q^n held by its reduced row echelon basis. Two subspaces are
/// equal exactly when their bases are identical.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim);

    static Subspace full(std::size_t ambient_dim);
    static Subspace span(std::size_t ambient_dim, std::span<const SparseVec> vectors);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    bool is_zero() const { return basis_.empty(); }
    bool is_full() const { return basis_.size() == ambient_; }
    const std::vector<SparseVec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    /// Sorted ambient coordinates not used as pivots.
    std::vector<std::size_t> free_columns() const;

    /// Adds v to the span. Returns false when v was already contained.
    bool insert(const SparseVec& v);
    /// v minus its projection along the basis; zero iff v is contained.
    SparseVec reduce(const SparseVec& v) const;
    bool contains(const SparseVec& v) const { return reduce(v).is_zero(); }
    bool contains(const Subspace& other) const;
    /// Coefficients of v on basis(); nullopt when v is not contained.
    std::optional<std::vector<Scalar>> coordinates(const SparseVec& v) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    /// Orthogonal complement with respect to the standard dot product.
    Subspace annihilator() const;

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_ = 0;
    std::vector<SparseVec> basis_;
    std::vector<std::size_t> pivots_;
};

struct RrefResult {
    Mat form;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);
Subspace kernel_basis(const Mat& m);
Subspace column_space(const Mat& m);
/// Smallest subspace containing seed and stable under every map.
Subspace closure_under(std::span<const Mat> maps, const Subspace& seed);
/// Span of all words in gens, the empty word included, inside the n^2-dimensional
/// space of matrices (vectorized row-major).
Subspace algebra_span(std::span<const Mat> gens, std::size_t n);
/// Some x with a x = b, or nullopt.
std::optional<SparseVec> solve(const Mat& a, const SparseVec& b);
/// Throws std::domain_error if singular.
Mat inverse(const Mat& a);

} // namespace superloop
