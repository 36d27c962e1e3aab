#ifndef GCP_GROUPOID_HPP
#define GCP_GROUPOID_HPP

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gcp {

// Finite discrete groupoid with an integer cocycle.  Arrows are indices;
// r, s and inv map arrows to arrows (r and s land in the unit set), and the
// composition table lists exactly the composable pairs.
struct FiniteGroupoid {
  std::vector<std::string> names;
  std::vector<int> r, s, inv;
  std::vector<int> cocycle;
  std::vector<int> units;  // sorted
  std::map<std::pair<int, int>, int> comp;

  int n() const { return static_cast<int>(names.size()); }
  bool is_unit(int a) const;
  bool composable(int a, int b) const { return comp.count({a, b}) != 0; }
  int compose(int a, int b) const { return comp.at({a, b}); }
  int arrow_id(const std::string& name) const;

  // groupoid and cocycle axioms; nullopt when everything holds
  std::optional<std::string> validate() const;

  std::vector<int> degree_arrows(int n) const;
  int min_degree() const;
  int max_degree() const;
};

using ArrowSet = std::vector<int>;  // sorted, unique

ArrowSet sorted_unique(ArrowSet v);
ArrowSet set_product(const FiniteGroupoid& G, const ArrowSet& X, const ArrowSet& Y);
ArrowSet set_union(const ArrowSet& a, const ArrowSet& b);
bool set_subset(const ArrowSet& a, const ArrowSet& b);
ArrowSet set_minus(const ArrowSet& a, const ArrowSet& b);
ArrowSet set_inverse(const FiniteGroupoid& G, const ArrowSet& X);
ArrowSet range_set(const FiniteGroupoid& G, const ArrowSet& X);
ArrowSet source_set(const FiniteGroupoid& G, const ArrowSet& X);

// Fuzzing generator: a disjoint union of pair groupoids on <= max_points
// points with cocycle c(x -> y) = w(x) - w(y) for random integer weights,
// which satisfies the cocycle law by construction.
FiniteGroupoid random_groupoid(std::mt19937_64& rng, int max_points, int max_weight);

// Random subset of the arrows on which r and s stay injective.
ArrowSet random_bisection(const FiniteGroupoid& G, std::mt19937_64& rng);

}  // namespace gcp

#endif
