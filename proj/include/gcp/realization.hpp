#ifndef GCP_REALIZATION_HPP
#define GCP_REALIZATION_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcp/graded.hpp"
#include "gcp/rsystem.hpp"

namespace gcp {

// A graded algebra together with a subring R of A_0 and additive subgroups
// I of A_1 and J of A_{-1}.
struct RealizationData {
  std::shared_ptr<const GradedAlgebra> A;
  SubspaceSpec Rspec, Ispec, Jspec;
};

struct Verdict {
  bool pass = false;
  std::string detail;
  std::vector<Element> witness;  // concrete elements that replay the claim
};

Verdict check_condition_1(const GradedAlgebra& A, const Subspace& R, const Subspace& I, const Subspace& J);
// witnesses: the fixing elements a (for I) and b (for J) inside span(IJ)
Verdict check_condition_2(const GradedAlgebra& A, const Subspace& I, const Subspace& J);
Verdict check_condition_3(const GradedAlgebra& A, const Subspace& R, const Subspace& I, const Subspace& J);
Verdict check_condition_4(const GradedAlgebra& A, const Subspace& R, const Subspace& I);

// a in span W with a x = x for every basis x of X
std::optional<Element> find_left_unit_in(const GradedAlgebra& A, const Subspace& W, const Subspace& X);
std::optional<Element> find_right_unit_in(const GradedAlgebra& A, const Subspace& W, const Subspace& X);

// The coordinate image of (R, I, J) as an R-system (P = J, Q = I,
// psi(j (x) i) = j i) together with the inclusion representation.
struct BuiltSystem {
  std::shared_ptr<RSystem> sys;
  CovariantRep rep;
  bool ok = false;
  std::string err;
};

BuiltSystem build_system_from_data(const GradedAlgebra& A, const Subspace& R, const Subspace& I, const Subspace& J);

// map a vector in R coordinates back to an element of A
Element from_R_coords(const Subspace& R, const SVec& coords);

enum class Certificate { windowed_certified, refuted, inconclusive_window };

std::string certificate_name(Certificate c);

struct RealizationReport {
  Verdict housing;      // R, I, J live in degrees 0, 1, -1
  Verdict cond1, cond2, cond3, cond4;
  Verdict mmnnbb;       // identity Delta^{-1}(F_J(I)) meet ann^perp = IJ meet R
  Verdict system_ok;    // bimodule and psi axioms of the built system
  Verdict fs;           // condition (FS) on the full windowed bases
  Verdict covariant;    // inclusion representation conditions (i)-(v)
  Verdict ideal;        // canonical maximal faithful compatible ideal exists
  Verdict cp_invariant; // pi(Delta(x)) = sigma(x) on the canonical ideal
  Verdict pi_sampled;   // sampled well-definedness of pi
  Verdict generation;   // generated subring saturated in the window
  Verdict injectivity;  // sigma = inclusion is injective (graded uniqueness)
  std::vector<Element> canonical_ideal;  // as elements of A
  int generated_dim = 0;
  bool generates_ambient = false;
  bool all_saturated = true;
  Certificate certificate = Certificate::refuted;
};

RealizationReport verify_realization(const RealizationData& data, uint64_t seed = 20240901);

struct Grcp1Report {
  Verdict powers;      // A_n = A_1^n and A_{-n} = A_{-1}^n in the window
  Verdict local_pair;  // r, s in A_1 A_{-1} fixing A_1 / A_{-1}
  Verdict ann_meet;    // ann(A_1) meet ann(A_1)^perp = 0 inside A_0
  bool applicable = false;
  RealizationReport realization;
  Certificate certificate = Certificate::refuted;
};

Grcp1Report check_grcp1(const GradedAlgebra& A, uint64_t seed = 20240901);

// Graded homomorphism presented by images of basis labels.
struct GradedHom {
  const GradedAlgebra* domain = nullptr;
  const GradedAlgebra* target = nullptr;
  std::vector<Element> images;
};

enum class Grcp2Status { injective_everywhere, not_applicable, refuted };

struct Grcp2Report {
  Grcp2Status status = Grcp2Status::not_applicable;
  std::string detail;
};

Grcp2Report check_grcp2(const GradedAlgebra& A, const GradedHom& phi);

// Sampled well-definedness of pi: random formal sums with zero operator
// matrix must map to zero under pi.
SystemReport pi_null_sample_check(const CovariantRep& rep, uint64_t seed, int trials);

}  // namespace gcp

#endif
