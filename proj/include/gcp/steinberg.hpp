#ifndef GCP_STEINBERG_HPP
#define GCP_STEINBERG_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcp/graded.hpp"
#include "gcp/groupoid.hpp"
#include "gcp/realization.hpp"

namespace gcp {

// Functions on arrows; keys are arrow ids.
using SteinbergElement = SVec;

SteinbergElement convolve(const FiniteGroupoid& G, const SteinbergElement& f, const SteinbergElement& g);
bool check_bisection(const FiniteGroupoid& G, const ArrowSet& B);
SteinbergElement cocycle_component(const FiniteGroupoid& G, const SteinbergElement& f, int n);
SVec indicator(const FiniteGroupoid& G, const ArrowSet& B, const Field& f);

// The convolution algebra on singleton-arrow indicators, graded by the
// cocycle.
std::shared_ptr<GradedAlgebra> steinberg_algebra(const FiniteGroupoid& G, const Field& f, int max_word_len = 8);

struct HTriple {
  ArrowSet h0, h1, hm1;
};

// degree membership of the three sets
std::optional<std::string> validate_htriple(const FiniteGroupoid& G, const HTriple& H);

// products: H0 H0 <= H0, H0 H1 u H1 H0 <= H1, H0 H-1 u H-1 H0 <= H-1,
// H-1 H1 <= H0, r(H1) u s(H-1) <= H1 H-1
Verdict check_htriple_products(const FiniteGroupoid& G, const HTriple& H);

struct HypothesisVerdict {
  bool pass = true;
  std::string detail;
  bool unit_space_fast_path = false;  // G^(0) <= H0
  bool subgroupoid_fast_path = false; // H0 inverse- and multiplication-closed
  ArrowSet witness;                   // a bisection violating the hypothesis
};

HypothesisVerdict check_htriple_hypothesis(const FiniteGroupoid& G, const HTriple& H);

struct GenerationVerdict {
  bool pass = true;
  std::string detail;
  int unreached = -1;
  // factor lists (arrows of H0 u H1 u H-1) per reached arrow
  std::map<int, std::vector<int>> factorization;
};

GenerationVerdict check_htriple_generation(const FiniteGroupoid& G, const HTriple& H);

// One summand of the indicator decomposition: an ordered product of
// bisection indicators, each tagged with the D it lies in.
struct IndicatorDecomposition {
  struct Term {
    std::vector<ArrowSet> factors;
    std::vector<int> d_index;
  };
  std::vector<Term> terms;
};

// Constructive decomposition of 1_C through the sets Ds.  With ordered =
// true the factorization must take exactly one factor from each D_i in
// order.  Throws NotGeneratedError when some arrow of C does not factor.
IndicatorDecomposition decompose_indicator(const FiniteGroupoid& G, const ArrowSet& C, const std::vector<ArrowSet>& Ds,
                                           bool ordered = false);

SVec evaluate_decomposition(const FiniteGroupoid& G, const IndicatorDecomposition& dec, const Field& f);

struct AnnihilatorResult {
  std::vector<SVec> formula_span;  // span{1_B : B <= H0 bisection, s(B) meet r(H1) empty}
  std::vector<SVec> brute_force;   // kernel of left multiplication against A_K(H1)
  bool agree = false;
};

AnnihilatorResult steinberg_annihilator(const FiniteGroupoid& G, const ArrowSet& h0, const ArrowSet& h1,
                                        const Field& f);

struct UnperforatedVerdict {
  bool pass = true;
  std::string detail;
  int fail_degree = 0;
  int fail_arrow = -1;
  std::map<int, std::vector<int>> witness;  // arrow -> factorization into degree-1 arrows
};

UnperforatedVerdict check_unperforated(const FiniteGroupoid& G, int maxN);

struct SteinbergRealization {
  Verdict products;
  HypothesisVerdict hypothesis;
  GenerationVerdict generation;
  bool h1_inverse_inside_hm1 = true;
  int inverse_witness = -1;       // an arrow of (H1)^-1 outside H-1
  bool remark_applicable = false; // H0 closed under inverses and products
  bool remark_holds = true;       // then H-1 = (H1)^-1
  std::shared_ptr<GradedAlgebra> A;
  RealizationReport realization;
  Certificate certificate = Certificate::refuted;
};

SteinbergRealization steinberg_realization_data(const FiniteGroupoid& G, const HTriple& H, const Field& f,
                                                uint64_t seed = 20240901, int max_word_len = 8);

}  // namespace gcp

#endif
