#ifndef GCP_GRADED_HPP
#define GCP_GRADED_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcp/linalg.hpp"

namespace gcp {

struct Window {
  int min_deg = -4;
  int max_deg = 4;
  int max_word_len = 8;
  bool contains(int d) const { return min_deg <= d && d <= max_deg; }
};

// An element is a finite combination of basis labels of the ambient algebra.
using Element = SVec;

// Z-graded algebra presented on an explicit windowed basis: every label has
// a degree inside the window, and the product of two labels is either a
// normal-formed combination of labels or "not representable in the window".
class GradedAlgebra {
 public:
  using ProductFn = std::function<std::optional<Element>(int, int)>;

  GradedAlgebra(const Field& f, const Window& w, std::string name = "A") : f_(f), w_(w), name_(std::move(name)) {}

  int add_label(const std::string& name, int degree);
  void set_product(ProductFn fn) { product_ = std::move(fn); }

  const std::string& name() const { return name_; }
  const Field& field() const { return f_; }
  const Window& window() const { return w_; }
  int dim() const { return static_cast<int>(names_.size()); }
  int degree(int label) const { return degrees_.at(label); }
  const std::string& label_name(int label) const { return names_.at(label); }
  int label_id(const std::string& name) const;  // -1 when absent

  // basis labels of degree n inside the window
  std::vector<int> degree_component(int n) const;

  std::optional<Element> mul_labels(int a, int b) const;
  std::optional<Element> mul(const Element& x, const Element& y) const;

  Element basis_elem(int label) const { return SVec::unit(label, Scalar::one(f_)); }
  Scalar scalar(long n) const { return Scalar(f_, n); }

  bool is_homogeneous(const Element& x, int* deg = nullptr) const;
  std::map<int, Element> degree_split(const Element& x) const;
  std::string format(const Element& x) const { return format_svec(x, names_); }

 private:
  Field f_;
  Window w_;
  std::string name_;
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::map<std::string, int> ids_;
  std::map<int, std::vector<int>> by_degree_;
  ProductFn product_;
  mutable std::map<std::pair<int, int>, std::optional<Element>> memo_;
};

struct GradingReport {
  bool pass = true;
  std::string witness;
  int wa = -1, wb = -1, wc = -1;  // offending labels when pass == false
  long pairs_checked = 0, pairs_skipped = 0;
  long triples_checked = 0, triples_skipped = 0;
};

// Graded multiplicativity and associativity on every windowed pair/triple.
GradingReport check_grading(const GradedAlgebra& A);

struct StronglyGradedResult {
  bool strongly = true;
  int m = 0, n = 0;
  int unreached_label = -1;
  long pairs_skipped = 0;  // pairs with a product outside the window
  std::string detail;
};

StronglyGradedResult check_strongly_graded(const GradedAlgebra& A);

// Search a degree-0 idempotent e with e*x = x = x*e (hence e x e = x) for all
// inputs, over sums of an orthogonal family of idempotent basis labels with a
// linear-solve fallback.  Absent when the search fails.
std::optional<Element> check_graded_local_units(const GradedAlgebra& A, const std::vector<Element>& xs);

enum class Closure { none, left_ideal, right_ideal, two_sided, subring };

struct SubspaceSpec {
  std::vector<Element> generators;
  Closure closure = Closure::none;
  std::string name;
};

// Materialized windowed subspace.  saturated: the closure iteration reached a
// fixed point.  window_truncated: some closure product left the window, so
// the true subspace may be larger than what the window shows.
struct Subspace {
  std::vector<Element> basis;
  bool saturated = true;
  bool window_truncated = false;
  std::string name;

  int dim() const { return static_cast<int>(basis.size()); }
};

Subspace materialize(const GradedAlgebra& A, const SubspaceSpec& spec);

Subspace component_subspace(const GradedAlgebra& A, int deg);

// span of all products x*y, x in X, y in Y
Subspace product_span(const GradedAlgebra& A, const Subspace& X, const Subspace& Y);

// { r in span R : r x = 0 for all x in I }
Subspace left_annihilator(const GradedAlgebra& A, const Subspace& R, const Subspace& I);

// J^perp = { r in span R : r y = y r = 0 for all y in J }; J must be a
// two-sided ideal of R.
Subspace perp_ideal(const GradedAlgebra& A, const Subspace& R, const Subspace& J);

// Span of all products of generator-basis elements of word length up to the
// window's max_word_len, intersected with the window.
Subspace subring_generated(const GradedAlgebra& A, const std::vector<Subspace>& gens);

bool subspace_contains(const Subspace& S, const Element& x, const Field& f);
bool same_subspace(const Subspace& a, const Subspace& b, const Field& f);
Subspace intersect_subspaces(const Subspace& a, const Subspace& b, const Field& f);
bool is_two_sided_ideal_of(const GradedAlgebra& A, const Subspace& R, const Subspace& J);

}  // namespace gcp

#endif
