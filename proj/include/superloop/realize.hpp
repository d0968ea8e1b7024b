#pragma once

// Matrix realizations of sl(m,n) and C(m).
//
// Block sizes are the actual sizes of the even and odd parts of the natural
// module: build_sl(m, n) is the algebra of supertraceless (m+n)x(m+n)
// matrices. C(m) lives in sl(2, 2m-2).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "superloop/superalg.hpp"

namespace superloop {

enum class Family { SL, C };

struct MatrixRealization {
    Family family = Family::SL;
    /// sl: (m, n) block sizes. C: (m, 0).
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t size = 0;       // matrix size
    std::size_t even_rows = 0;  // rows spanning the even part of the natural module
    std::vector<Mat> basis;     // aligned with the algebra basis
    std::vector<std::string> labels;
    /// Diagonal positions carrying the coordinate functionals eps_i / delta_j.
    std::vector<std::size_t> coordinate_positions;
    std::vector<std::string> coordinate_names;
    std::vector<std::size_t> cartan; // algebra indices of the diagonal basis

    /// Coordinates of x in the basis; throws PreconditionError if x is not in the span.
    SparseVec coordinates(const Mat& x) const;
    /// The functional sum_k coeffs[k] * (diagonal entry at coordinate_positions[k]),
    /// evaluated on the Cartan basis.
    Root functional(const std::vector<Scalar>& coeffs) const;
    /// Reads a root back as a short eps/delta expression, e.g. "eps1-delta1".
    std::string root_label(const Root& r) const;
    /// Parity of the natural-module basis vector at row r.
    Parity row_parity(std::size_t r) const { return r < even_rows ? Parity::Even : Parity::Odd; }
    /// Supercommutator of two homogeneous block matrices.
    Mat supercommutator(const Mat& x, const Mat& y) const;
    Parity matrix_parity(const Mat& x) const;

    // Left inverse of the vectorized basis restricted to pivot entries.
    std::vector<std::size_t> pivot_entries;
    Mat pivot_inverse;
};

struct Realized {
    std::shared_ptr<const LieSuperalgebra> algebra;
    std::shared_ptr<const MatrixRealization> realization;
};

/// sl(m, n) for block sizes m, n >= 1 with m + n >= 3. For m == n the
/// identity is central and flagged through LieSuperalgebra::center().
Realized build_sl(std::size_t m, std::size_t n);

/// C(m) for m >= 3, of dimension 1 + (m-1)(2m-1) + 4(m-1).
Realized build_C(std::size_t m);

/// trace of the upper-left m x m block minus trace of the lower-right n x n block.
Scalar supertrace(const Mat& x, std::size_t m, std::size_t n);

struct CenterSplit {
    SparseVec z;                         // spans the center of the even part
    std::vector<std::size_t> ss_indices; // basis vectors spanning g_ss = [g_even, g_even]
    std::vector<std::size_t> h_ss;       // Cartan indices inside g_ss
    std::size_t z_index = 0;             // the even basis index outside g_ss

    /// Splits an even vector x as x_ss + c z; returns c.
    Scalar z_component(const SparseVec& x) const;
};

/// Center z of the even part (normalized to a primitive integer vector with
/// first nonzero coordinate positive) and the semisimple part [g_even, g_even].
/// Throws PreconditionError if the center is not one-dimensional or g_ss is not
/// spanned by basis vectors.
CenterSplit center_split(const LieSuperalgebra& g);

struct CenterWitness {
    std::size_t i;
    std::size_t j;
    Scalar z_component;
};

/// First odd pair (in basis order) whose bracket has a nonzero z-component,
/// i.e. a witness that [g_odd, g_odd] is not inside [g_even, g_even].
std::optional<CenterWitness> odd_bracket_center_witness(const LieSuperalgebra& g, const CenterSplit& split);

/// g_ss as a standalone algebra (basis in the order of CenterSplit::ss_indices).
std::shared_ptr<const LieSuperalgebra> semisimple_part(const LieSuperalgebra& g, const CenterSplit& split);

} // namespace superloop
