#pragma once

// Lie superalgebras given by structure constants on a parity-homogeneous basis.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "superloop/errors.hpp"
#include "superloop/exactla.hpp"

namespace superloop {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b)
{
    return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

/// (-1)^{|a||b|}
inline int koszul_sign(Parity a, Parity b) { return (a == Parity::Odd && b == Parity::Odd) ? -1 : 1; }

/// A functional on the Cartan subalgebra, recorded by its values on the Cartan basis.
struct Root {
    std::vector<Scalar> values;

    bool is_zero() const;
    Root operator-() const;
    friend Root operator+(const Root& a, const Root& b);
    friend bool operator==(const Root&, const Root&) = default;
    friend std::strong_ordering operator<=>(const Root& a, const Root& b);
    std::string str() const;
};

class LieSuperalgebra {
public:
    LieSuperalgebra() = default;
    /// Zero bracket on a basis with the given parities.
    LieSuperalgebra(std::string name, std::vector<Parity> parity);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return parity_.size(); }
    Parity parity(std::size_t i) const { return parity_[i]; }
    const std::vector<Parity>& parities() const { return parity_; }
    std::vector<std::size_t> indices_of(Parity p) const;

    /// [e_i, e_j] in coordinates.
    const SparseVec& bracket_basis(std::size_t i, std::size_t j) const { return table_[i][j]; }
    void set_bracket(std::size_t i, std::size_t j, SparseVec value);
    /// Bilinear extension of the table. Throws std::invalid_argument on a
    /// dimension mismatch.
    SparseVec bracket(const SparseVec& x, const SparseVec& y) const;
    /// Matrix of ad(x) on the basis (column j holds [x, e_j]).
    Mat ad(const SparseVec& x) const;
    SparseVec basis_vector(std::size_t i) const { return SparseVec::unit(dim(), i); }

    bool has_zdeg() const { return zdeg_.has_value(); }
    int zdeg(std::size_t i) const { return zdeg_.value()[i]; }
    void set_zdeg(std::vector<int> zdeg);
    void clear_zdeg() { zdeg_.reset(); }
    std::vector<std::size_t> indices_of_degree(int d) const;

    const std::vector<std::size_t>& cartan() const { return cartan_; }
    void set_cartan(std::vector<std::size_t> cartan);
    /// Weights on the Cartan basis defining positivity: a root is positive when
    /// its pairing with these weights is positive.
    const std::vector<Scalar>& regular() const { return regular_; }
    void set_regular(std::vector<Scalar> regular) { regular_ = std::move(regular); }
    const std::vector<std::size_t>& positive() const { return pos_; }
    const std::vector<std::size_t>& negative() const { return neg_; }
    void set_triangular(std::vector<std::size_t> neg, std::vector<std::size_t> pos);

    /// Central element of the whole algebra, flagged for sl(n,n).
    const std::optional<SparseVec>& center() const { return center_; }
    void set_center(std::optional<SparseVec> z) { center_ = std::move(z); }

    /// Root of basis vector i (eigenvalues of ad on the Cartan basis). Throws
    /// PreconditionError when e_i is not a common eigenvector.
    Root root_of(std::size_t i) const;

private:
    std::string name_;
    std::vector<Parity> parity_;
    std::vector<std::vector<SparseVec>> table_;
    std::optional<std::vector<int>> zdeg_;
    std::vector<std::size_t> cartan_;
    std::vector<Scalar> regular_;
    std::vector<std::size_t> pos_;
    std::vector<std::size_t> neg_;
    std::optional<SparseVec> center_;
};

// ------------------------------------------------------------------ checks

struct AxiomViolation {
    enum class Kind { Parity, SkewSymmetry, Jacobi };
    Kind kind;
    std::size_t i;
    std::size_t j;
    std::size_t k; // unused for Parity and SkewSymmetry
    friend auto operator<=>(const AxiomViolation&, const AxiomViolation&) = default;
};

std::string to_string(AxiomViolation::Kind kind);

struct AxiomReport {
    std::size_t triples_checked = 0;
    std::vector<AxiomViolation> violations; // sorted
    bool pass() const { return violations.empty(); }
};

/// Exhaustive parity, super skew-symmetry and super Jacobi checks over basis
/// pairs and triples.
AxiomReport check_axioms(const LieSuperalgebra& g);

struct GradingViolation {
    std::size_t i;
    std::size_t j;
    friend auto operator<=>(const GradingViolation&, const GradingViolation&) = default;
};

struct GradingReport {
    std::vector<GradingViolation> violations; // sorted
    bool plus_plus_zero = true;
    bool minus_minus_zero = true;
    std::size_t dim_minus = 0;
    std::size_t dim_zero = 0;
    std::size_t dim_plus = 0;
    bool pass() const { return violations.empty() && plus_plus_zero && minus_minus_zero; }
};

/// [g_a, g_b] inside g_{a+b} for all degree tags, with g_{+-2} = 0. Throws
/// PreconditionError if the algebra carries no degree tags.
GradingReport check_z_grading(const LieSuperalgebra& g);

struct RootSpace {
    Root root;
    std::vector<std::size_t> indices;
    Parity parity;
};

/// Simultaneous eigenspaces of ad(h) on the basis, sorted by root; the zero
/// root (centralizer of h) comes first. Throws PreconditionError when some
/// Cartan element does not act diagonally on the basis.
std::vector<RootSpace> root_decomposition(const LieSuperalgebra& g);

struct Triangular {
    std::vector<std::size_t> neg;
    std::vector<std::size_t> cartan;
    std::vector<std::size_t> pos;
};

/// Splits the basis by the sign of each root against regular(). Without
/// regular weights the stored positive()/negative() split is returned. Throws
/// PreconditionError if some nonzero root pairs to zero or neither is present.
Triangular triangular(const LieSuperalgebra& g);

/// The subalgebra spanned by a set of basis vectors, re-indexed in the given
/// order. Cartan, degree and triangular data are restricted. Throws
/// PreconditionError if the span is not closed.
LieSuperalgebra subalgebra(const LieSuperalgebra& g, const std::vector<std::size_t>& indices,
                           std::string name);

/// Trace form (x, y) -> tr(ad x ad y) on the basis of an even algebra.
Mat killing_form(const LieSuperalgebra& g);

} // namespace superloop
