#pragma once

// Induced modules for g (x) A/I with g = g_{-1} + g_0 + g_{+1}:
//   D_0 = g_0 (x) A/I, D_+ = g_{+1} (x) A/I, D_- = g_{-1} (x) A/I,
//   W(psi) a D_0-module (g_ss through evaluation, z through lambda), D_+ acting
//   by zero, M(psi, lambda) = Lambda(D_-) (x) W and V(psi, lambda) its top.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "superloop/repkit.hpp"

namespace superloop {

/// lambda(z (x) t^e) on the monomial basis of A/I.
struct LambdaFunctional {
    std::vector<Scalar> values;
    bool is_zero() const;
    friend bool operator==(const LambdaFunctional&, const LambdaFunctional&) = default;
};

/// Everything fixed by g and I.
struct InductionSetup {
    Realized g;
    SemisimpleModel ss;
    CofiniteIdeal ideal;
    CofiniteIdeal squarefree;
    std::shared_ptr<const QuotientAlgebra> a;
    EvaluationGrid grid; // points of I'
    LoopAlgebra loop;    // g (x) A/I
    LoopAlgebra loop_ss; // g_ss (x) A/I
    std::vector<std::size_t> d_zero;  // loop indices, ascending
    std::vector<std::size_t> d_plus;
    std::vector<std::size_t> d_minus;
    std::vector<std::size_t> ss_loop; // loop index of g_ss (x) A/I basis element i
    /// y with e_{z_index} = y + c z, in g_ss coordinates, and c.
    SparseVec z_index_ss;
    Scalar z_index_c;
};

/// Throws PreconditionError unless g carries a Z-grading with
/// [g_{-1}, g_{-1}] = 0 and a one-dimensional even center.
InductionSetup induction_setup(const Realized& g, const CofiniteIdeal& ideal);

/// Restricts lambda given on A/J (J inside I) to A/I. Throws
/// PreconditionError if lambda does not vanish on z (x) I/J.
LambdaFunctional descend_lambda(const QuotientAlgebra& model, const std::vector<Scalar>& values,
                                const QuotientAlgebra& target);

/// Per grid point of I', the highest weight on g_ss in fundamental coordinates.
using WeightList = std::vector<std::vector<long>>;

struct WModule {
    Representation rep;                  // of the subalgebra D_0 + D_+
    std::vector<std::size_t> loop_index; // rep.algebra basis i is loop basis loop_index[i]
    SparseVec hw_vector;
};

/// Throws PreconditionError for a wrong number of weights or values, weights
/// that are not dominant integral, and InvariantError if the action fails the
/// representation check.
WModule build_W(const InductionSetup& s, const WeightList& weights, const LambdaFunctional& lambda);

struct InducedModule {
    Representation rep;   // of the loop algebra, basis index mask * dim W + w
    std::size_t dim_W = 0;
    std::size_t r = 0;    // dim D_-; bit s of mask is s-th element of d_minus
    SparseVec hw_vector;  // 1 (x) w_psi
    std::size_t hw_index = 0;
};

/// Straightening on wedge monomials xi_{s1} ... xi_{sk} w with s1 < ... < sk.
InducedModule build_M(const InductionSetup& s, const WModule& w);

struct QuotientResult {
    Representation v;
    Subspace radical_module; // rad(B) M
    std::size_t algebra_dim = 0;
    std::size_t radical_dim = 0;
    SparseVec hw_image;
};

/// M / rad(B) M where rad(B) is the kernel of (a, b) -> tr(ab) on the action
/// algebra B. Throws InvariantError if the quotient is not absolutely
/// irreducible or not generated by the image of the highest weight vector.
QuotientResult irreducible_quotient(const InducedModule& m);

/// Largest submodule not containing the highest weight vector: the common
/// kernel of all translates of its coordinate functional.
Subspace maximal_submodule(const InducedModule& m);

struct EvaluationWitness {
    std::size_t base_index; // x in g
    SparseVec p;            // element of I' in A/I
    std::string label;
};

struct EvaluationCheck {
    bool evaluation = true;
    std::size_t pairs_checked = 0;
    std::optional<EvaluationWitness> witness;
};

/// "c*t1^2+t2" style description of an element of A/I.
std::string element_label(const QuotientAlgebra& a, const SparseVec& p);

/// Echelon spanning set of the image of I' = sqrt(I) in A/I.
std::vector<SparseVec> squarefree_image(const QuotientAlgebra& a);

/// lambda(z (x) p) for the first p in squarefree_image with a nonzero value.
std::optional<std::pair<SparseVec, Scalar>> lambda_on_squarefree(const InductionSetup& s, const LambdaFunctional& lambda);

/// Whether g (x) I' acts by zero on v, for v a module of loop.
EvaluationCheck is_evaluation(const Representation& v, const LoopAlgebra& loop);

/// Normal form of (psi, lambda): support points sorted ascending with their
/// nonzero weights.
struct InductionData {
    std::vector<std::vector<Scalar>> points;
    WeightList weights;
    LambdaFunctional lambda;
    friend bool operator==(const InductionData&, const InductionData&) = default;
};

InductionData normalize(const InductionSetup& s, const WeightList& weights, const LambdaFunctional& lambda);
/// Weights per grid point of I' for normalized data.
WeightList expand(const InductionSetup& s, const InductionData& d);

struct Classification {
    InductionData data;
    PsiFunctional psi;
    Representation rebuilt; // V(psi, lambda) from the recovered data
    Mat intertwiner;        // rebuilt -> input
    bool claim_irreducible = false; // g_ss (x) A/I closure of the top
    std::size_t hw_index = 0;
};

/// Reads (psi, lambda) off the highest weight line of an irreducible module of
/// s.loop, rebuilds V(psi, lambda) and an explicit isomorphism onto v. Throws
/// PreconditionError if there is no unique highest weight line, psi has
/// support outside the roots of I' or non-integral weights.
Classification classify(const InductionSetup& s, const Representation& v);

/// V(psi, lambda) end to end.
struct InducedPipeline {
    WModule w;
    InducedModule m;
    QuotientResult q;
};
InducedPipeline build_V(const InductionSetup& s, const WeightList& weights, const LambdaFunctional& lambda);

} // namespace superloop
