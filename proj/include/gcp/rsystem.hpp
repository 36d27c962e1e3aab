#ifndef GCP_RSYSTEM_HPP
#define GCP_RSYSTEM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcp/graded.hpp"

namespace gcp {

// Finite-dimensional ring presented by structure constants over its own basis.
struct CoeffRing {
  Field field;
  std::vector<std::string> names;
  std::vector<std::vector<SVec>> mul;  // mul[i][j] = coords of b_i * b_j

  int dim() const { return static_cast<int>(names.size()); }
};

SVec ring_mul(const CoeffRing& R, const SVec& x, const SVec& y);

// R-bimodule with finite basis and dense action tables.
struct Bimodule {
  std::vector<std::string> names;
  std::vector<std::vector<SVec>> lact;  // lact[r][m] = r . m in module coords
  std::vector<std::vector<SVec>> ract;  // ract[m][r] = m . r

  int dim() const { return static_cast<int>(names.size()); }
};

SVec lact_apply(const Bimodule& M, const SVec& r, const SVec& m);
SVec ract_apply(const Bimodule& M, const SVec& m, const SVec& r);

// R-system (P, Q, psi) with psi : P (x)_R Q -> R given on basis pairs.
struct RSystem {
  CoeffRing R;
  Bimodule P, Q;
  std::vector<std::vector<SVec>> psi;  // psi[p][q] in R coords
};

SVec psi_eval(const RSystem& sys, const SVec& p, const SVec& q);

struct SystemReport {
  bool pass = true;
  std::string witness;
};

// Bimodule axioms and the bimodule/balancedness properties of psi, checked
// exhaustively on basis triples.
SystemReport check_system(const RSystem& sys);

// Tensor powers.  P-powers nest on the left, Q-powers on the right, and each
// balanced tensor product is realized as the quotient of the free pair space
// by the span of the balancing relations.
struct TensorPowerSystem {
  RSystem sys;  // the level-n system
  struct QuotientInfo {
    int dim_outer = 0, dim_inner = 0;
    // decoded free pair for each quotient basis label; (p, prev) on the P
    // side, (prev, q) on the Q side
    std::vector<std::pair<int, int>> coset_pairs;
  };
  std::vector<QuotientInfo> p_info, q_info;  // levels 2..n
};

TensorPowerSystem tensor_power_system(const RSystem& base, int n, int size_cap = 65536);

// Covariant representation: additive maps S on P, T on Q and a ring
// homomorphism sigma on R, with values in a graded algebra B.
struct CovariantRep {
  const RSystem* sys = nullptr;
  const GradedAlgebra* B = nullptr;
  std::vector<Element> S, T, sigma;
};

Element rep_S(const CovariantRep& rep, const SVec& p);
Element rep_T(const CovariantRep& rep, const SVec& q);
Element rep_sigma(const CovariantRep& rep, const SVec& r);

// Conditions (i)-(v) on all basis elements.
SystemReport check_covariant_rep(const CovariantRep& rep);

// The induced representation (S^n, T^n, sigma) on the tensor power system;
// the result points at tps.sys, which must outlive it.
CovariantRep rep_tensor_power(const CovariantRep& rep, const TensorPowerSystem& tps, int n);

// Finite-rank operator: a formal sum of rank-one terms theta_{q,p} together
// with its materialized action on Q (matQ) and the adjoint action on P
// (matP), both as column lists.
struct FiniteRankOp {
  struct Term {
    SVec q, p;  // scalar weight folded into q
  };
  std::vector<Term> terms;
  std::vector<SVec> matQ, matP;
};

FiniteRankOp op_zero(const RSystem& sys);
FiniteRankOp rank_one(const RSystem& sys, const SVec& q, const SVec& p);
FiniteRankOp op_sum(const RSystem& sys, const std::vector<FiniteRankOp>& ops);
bool matrix_is_zero(const std::vector<SVec>& cols);
SVec apply_matrix(const std::vector<SVec>& cols, const SVec& v);

// Search Theta in F_P(Q) and Phi in F_Q(P) fixing the given finite sets, by
// an exact linear solve over the rank-one operators of the full basis grid.
std::optional<std::pair<FiniteRankOp, FiniteRankOp>> check_fs(const RSystem& sys, const std::vector<SVec>& Qs,
                                                              const std::vector<SVec>& Ps);

// (Delta(r), Gamma(r)); Gamma(r) is verified adjoint to Delta(r) on bases.
std::pair<std::vector<SVec>, std::vector<SVec>> delta_gamma(const RSystem& sys, const SVec& r);
std::vector<SVec> delta_matrix(const RSystem& sys, const SVec& r);
std::vector<SVec> gamma_matrix(const RSystem& sys, const SVec& r);
// basis of ker Delta inside R
std::vector<SVec> delta_kernel(const RSystem& sys);

// sum of T(q)S(p) over the formal terms.  Raises InconsistencyError when the
// operator matrix is zero but the image is not (covariance or (FS) broken).
Element pi_map(const CovariantRep& rep, const FiniteRankOp& op);

struct IdealCheck {
  bool is_ideal = true;
  bool compatible = true;
  bool faithful = true;
  std::string witness;
  std::vector<FiniteRankOp> delta_ops;  // finite-rank expression per J basis vector
  std::vector<SVec> ker_delta;
};

IdealCheck compatible_ideal_check(const RSystem& sys, const std::vector<SVec>& Jbasis);

struct CanonicalIdeal {
  std::vector<SVec> basis;  // J = Delta^{-1}(F_P(Q)) meet (ker Delta)^perp
  bool hypothesis_ok = true;  // J meet ker Delta = 0
  std::vector<SVec> ker_delta;
  std::vector<SVec> delta_preimage;  // Delta^{-1}(F_P(Q))
  std::vector<SVec> ker_perp;
};

CanonicalIdeal canonical_max_ideal(const RSystem& sys);

// pi_{T,S}(Delta(x)) = sigma(x) on a basis of J.
SystemReport check_cp_invariant(const CovariantRep& rep, const std::vector<SVec>& Jbasis);

// Basis of the degree-t graded piece of R<S,T,sigma>: products
// T^m(q) S^n(p) with m - n = t and m, n <= cap.
std::vector<Element> toeplitz_graded_span(const CovariantRep& rep, int t, int cap);

// Grid of rank-one operators theta_{q_a, p_b} over basis pairs.
std::vector<std::vector<FiniteRankOp>> rank_one_grid(const RSystem& sys);

}  // namespace gcp

#endif
