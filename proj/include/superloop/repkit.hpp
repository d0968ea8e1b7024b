#pragma once

// Finite-dimensional representations given by one action matrix per basis
// element of the acting algebra.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "superloop/laurent.hpp"
#include "superloop/realize.hpp"

namespace superloop {

struct Representation {
    std::shared_ptr<const LieSuperalgebra> algebra;
    std::vector<Mat> action; // indexed by algebra basis
    std::vector<Parity> parity;

    std::size_t dim() const { return parity.size(); }
    /// Action of an arbitrary algebra element.
    Mat act(const SparseVec& x) const;
    /// Weight of every basis vector read off the Cartan diagonals. Throws
    /// PreconditionError when some Cartan element is not diagonal.
    std::vector<Root> weights() const;
};

struct RepresentationViolation {
    std::size_t i;
    std::size_t j; // j == i marks a parity violation of x_i alone
    friend auto operator<=>(const RepresentationViolation&, const RepresentationViolation&) = default;
};

struct RepresentationReport {
    std::size_t pairs_checked = 0;
    std::vector<RepresentationViolation> violations; // sorted
    bool pass() const { return violations.empty(); }
};

/// rho([x,y]) = rho(x)rho(y) - (-1)^{|x||y|} rho(y)rho(x) on all basis pairs,
/// and rho(x) shifts parity by |x|.
RepresentationReport check_representation(const Representation& r);

Representation trivial_rep(std::shared_ptr<const LieSuperalgebra> g);
/// The realization matrices acting on the natural module.
Representation defining_rep(const Realized& g);
/// x(v (x) w) = xv (x) w + (-1)^{|x||v|} v (x) xw, basis index v * dim2 + w.
Representation tensor(const Representation& a, const Representation& b);
Representation direct_sum(const Representation& a, const Representation& b);
/// Pullback to the subalgebra spanned by the given basis vectors of r.algebra,
/// re-indexed in that order.
Representation restrict_to(const Representation& r, std::shared_ptr<const LieSuperalgebra> sub,
                           const std::vector<std::size_t>& indices);
/// Action on an invariant subspace, in its canonical (RREF) basis.
Representation subrepresentation(const Representation& r, const Subspace& s);
/// Action on R/S in the basis of free (non-pivot) coordinates of S.
Representation quotient(const Representation& r, const Subspace& s);
/// Closure of a set of vectors under all action matrices.
Subspace cyclic_closure(const Representation& r, const Subspace& seed);

struct WeightVector {
    Root weight;
    SparseVec vector;
};

/// Basis of the joint kernel of the action of the given algebra indices,
/// as weight vectors. The Cartan must act diagonally on the module basis.
std::vector<WeightVector> highest_weight_vectors(const Representation& r, const std::vector<std::size_t>& pos);

/// Burnside: the action matrices span all of End(R).
bool is_irreducible(const Representation& r);
/// Same test restricted to a subset of algebra indices.
bool is_irreducible(const Representation& r, const std::vector<std::size_t>& indices);

enum class Irreducibility { irreducible, reducible, unknown };

/// Any nonzero submodule meets the joint kernel S of the given nilpotent,
/// weight-raising part. dim S == 1 with a generating singular vector proves
/// irreducibility; a singular vector generating a proper submodule proves
/// reducibility. Anything else is unknown.
Irreducibility singular_vector_test(const Representation& r, const std::vector<std::size_t>& pos);

// ------------------------------------------------------- semisimple part

/// g_ss with its simple roots, coroots and fundamental weights, plus the
/// nontrivial blocks of the natural module restricted to g_ss.
struct SemisimpleModel {
    std::shared_ptr<const LieSuperalgebra> algebra; // g_ss, indexed like CenterSplit::ss_indices
    CenterSplit split;
    std::vector<std::size_t> simple_root_vectors; // g_ss indices of e_alpha_i
    std::vector<Root> simple_roots;
    std::vector<SparseVec> coroots;      // in g_ss coordinates, alpha_i(h_i) = 2
    std::vector<Root> fundamental;       // omega_i on the Cartan basis of g_ss
    std::vector<Representation> natural_blocks;

    std::size_t rank() const { return simple_roots.size(); }
    /// sum_i c_i omega_i
    Root weight(const std::vector<Scalar>& fundamental_coords) const;
    /// (mu(h_1), ..., mu(h_r))
    std::vector<Scalar> fundamental_coordinates(const Root& mu) const;
};

SemisimpleModel semisimple_model(const Realized& g);

/// The irreducible g_ss-module of highest weight lambda (fundamental
/// coordinates), built inside tensor products of the natural blocks. Throws
/// PreconditionError unless lambda is dominant integral with |lambda|_1 <= 6.
Representation irreducible_hw_module(const SemisimpleModel& ss, const std::vector<long>& lambda);

// ---------------------------------------------------- evaluation modules

/// psi on the basis h_c (x) t^e of h (x) A/I: values[c][e].
struct PsiFunctional {
    std::vector<std::vector<Scalar>> values;
    bool is_zero() const;
    friend bool operator==(const PsiFunctional&, const PsiFunctional&) = default;
};

/// psi(h (x) t^e) = sum_k a^e_{I_k} mu_k(h), mu_k given on the Cartan basis.
PsiFunctional psi_of(const std::vector<Root>& weights, const EvaluationGrid& grid, const QuotientAlgebra& a);

/// Pullback through the evaluation map of the outer tensor product of the
/// given modules of G: X (x) t^e acts by sum_k a^e_{I_k} X in slot k. The
/// loop's coefficient ideal must have the grid points as roots.
Representation evaluation_module(const LoopAlgebra& loop, const EvaluationGrid& grid,
                                 const std::vector<Representation>& modules);

} // namespace superloop
