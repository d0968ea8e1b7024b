#pragma once

// Laurent polynomials, cofinite ideals generated by one univariate polynomial
// per variable, the finite quotients A/I, loop algebras G (x) A/I and the
// evaluation map onto G^N.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "superloop/superalg.hpp"

namespace superloop {

/// Univariate polynomial, coefficients from degree 0 upwards, no trailing zeros.
struct Poly {
    std::vector<Scalar> coeffs;

    static Poly monomial(std::size_t k, Scalar c = 1);
    /// prod_k (t - roots[k])^{mult[k]}
    static Poly from_roots(const std::vector<std::pair<Scalar, int>>& roots);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    Scalar eval(const Scalar& x) const;
    void trim();

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly&, const Poly&) = default;
};

/// Remainder of a modulo the monic polynomial p.
Poly poly_mod(const Poly& a, const Poly& p);

class LaurentPoly {
public:
    using Exponent = std::vector<long>;

    LaurentPoly() = default;
    explicit LaurentPoly(std::size_t vars) : vars_(vars) {}
    static LaurentPoly monomial(std::size_t vars, Exponent e, Scalar c = 1);
    static LaurentPoly constant(std::size_t vars, Scalar c);
    /// p(t_j) embedded as a Laurent polynomial in `vars` variables.
    static LaurentPoly univariate(std::size_t vars, std::size_t j, const Poly& p);

    std::size_t vars() const { return vars_; }
    const std::map<Exponent, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Exponent& e, const Scalar& c);

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    std::size_t vars_ = 0;
    std::map<Exponent, Scalar> terms_;
};

struct IdealRoot {
    Scalar root;
    int multiplicity = 1;
    friend bool operator==(const IdealRoot&, const IdealRoot&) = default;
};

/// I = (P_1(t_1), ..., P_d(t_d)) with P_j = prod_k (t_j - a_jk)^{b_jk}.
class CofiniteIdeal {
public:
    CofiniteIdeal() = default;
    /// Throws PreconditionError on zero or repeated roots, multiplicities < 1,
    /// or a variable without roots.
    explicit CofiniteIdeal(std::vector<std::vector<IdealRoot>> roots);

    std::size_t vars() const { return roots_.size(); }
    const std::vector<IdealRoot>& roots(std::size_t j) const { return roots_[j]; }
    const std::vector<std::vector<IdealRoot>>& all_roots() const { return roots_; }
    Poly generator(std::size_t j) const;           // P_j
    Poly squarefree_generator(std::size_t j) const; // P'_j
    /// I' (all multiplicities one).
    CofiniteIdeal squarefree() const;
    /// Every multiplicity raised by `extra`; a strictly smaller ideal for extra > 0.
    CofiniteIdeal enlarged(int extra) const;
    bool is_squarefree() const;
    /// "t1:(1,2)(2,1);t2:(-1,1)" style description.
    std::string str() const;

    friend bool operator==(const CofiniteIdeal&, const CofiniteIdeal&) = default;

private:
    std::vector<std::vector<IdealRoot>> roots_;
};

/// A/I with monomial basis t^e, 0 <= e_j < deg P_j, indexed in mixed radix with
/// the last variable fastest.
class QuotientAlgebra {
public:
    explicit QuotientAlgebra(CofiniteIdeal ideal);

    const CofiniteIdeal& ideal() const { return ideal_; }
    std::size_t vars() const { return ideal_.vars(); }
    std::size_t dim() const { return dim_; }
    std::size_t degree(std::size_t j) const { return degrees_[j]; }
    std::vector<long> exponent(std::size_t index) const;
    std::size_t index(const std::vector<long>& e) const;
    std::string monomial_label(std::size_t index) const;

    /// Product of two basis monomials in normal form.
    const SparseVec& product(std::size_t a, std::size_t b) const { return table_[a][b]; }
    SparseVec multiply(const SparseVec& x, const SparseVec& y) const;
    SparseVec one() const { return SparseVec::unit(dim_, 0); }
    SparseVec variable(std::size_t j) const;
    SparseVec variable_inverse(std::size_t j) const;
    /// Matrix of multiplication by x on the monomial basis.
    Mat multiplication_matrix(const SparseVec& x) const;

    /// Normal form of a Laurent polynomial.
    SparseVec reduce(const LaurentPoly& p) const;
    /// Value of an element at a point whose coordinates are roots of the P_j.
    Scalar evaluate(const SparseVec& x, const std::vector<Scalar>& point) const;

private:
    Poly power_mod(std::size_t j, long k) const;

    CofiniteIdeal ideal_;
    std::vector<std::size_t> degrees_;
    std::vector<Poly> generators_;
    std::vector<Poly> inverses_; // t_j^{-1} mod P_j
    std::size_t dim_ = 1;
    std::vector<std::vector<SparseVec>> table_;
};

/// The points a_{I_1}, ..., a_{I_N}: all choices of one root per variable,
/// lexicographic in (i_1, ..., i_d).
class EvaluationGrid {
public:
    explicit EvaluationGrid(const CofiniteIdeal& ideal);

    std::size_t size() const { return points_.size(); }
    std::size_t vars() const { return vars_; }
    const std::vector<Scalar>& point(std::size_t k) const { return points_[k]; }
    const std::vector<std::vector<Scalar>>& points() const { return points_; }
    /// a^m_{I_k}; negative exponents allowed.
    Scalar monomial_value(std::size_t k, const std::vector<long>& m) const;

private:
    std::size_t vars_ = 0;
    std::vector<std::vector<Scalar>> points_;
};

/// Row k holds p -> p(a_{I_k}) on the monomial basis. For squarefree I this is
/// the Chinese-remainder isomorphism A/I -> Q^N.
Mat evaluation_matrix(const QuotientAlgebra& a, const EvaluationGrid& grid);

/// G (x) A/I with basis index a * dim(A/I) + e.
struct LoopAlgebra {
    std::shared_ptr<const LieSuperalgebra> base;
    std::shared_ptr<const QuotientAlgebra> coefficients;
    std::shared_ptr<const LieSuperalgebra> algebra;

    std::size_t index(std::size_t a, std::size_t e) const { return a * coefficients->dim() + e; }
    std::size_t base_index(std::size_t i) const { return i / coefficients->dim(); }
    std::size_t monomial_index(std::size_t i) const { return i % coefficients->dim(); }
    /// x (x) p for x in G and p in A/I.
    SparseVec tensor(const SparseVec& x, const SparseVec& p) const;
};

/// Cartan h (x) 1, triangular data N+- (x) A/I and degree tags inherited from G.
LoopAlgebra build_loop(std::shared_ptr<const LieSuperalgebra> g, std::shared_ptr<const QuotientAlgebra> a);

/// Matrix of phi : G (x) A/I -> G^N, X (x) t^e -> (a^e_{I_k} X)_k. Row block k
/// holds the k-th copy of G. The grid points must be roots of the ideal of A.
Mat build_phi(const LieSuperalgebra& g, const QuotientAlgebra& a, const EvaluationGrid& grid);

struct EvaluationMapReport {
    std::size_t grid_size = 0;
    std::size_t rank = 0;
    std::size_t expected_rank = 0;
    std::size_t model_dim = 0; // dim A/I~
    std::size_t kernel_dim = 0;
    std::size_t expected_kernel_dim = 0;
    bool kernel_matches = false;
    std::size_t bracket_pairs_checked = 0;
    std::vector<std::pair<std::size_t, std::size_t>> bracket_violations;

    bool surjective() const { return rank == expected_rank; }
    bool pass() const { return surjective() && kernel_matches && bracket_violations.empty(); }
};

/// (a) phi on G (x) A/I' has rank N dim G; (b) on the model A/I~ (every
/// multiplicity of I' raised by one) the kernel of phi equals G (x) (I'/I~);
/// (c) phi([x,y]) = [phi(x), phi(y)] for all basis pairs of G (x) A/I'.
EvaluationMapReport check_evaluation_map(std::shared_ptr<const LieSuperalgebra> g, const CofiniteIdeal& ideal);

} // namespace superloop
