#ifndef GCP_TEST_FIXTURES_HPP
#define GCP_TEST_FIXTURES_HPP

#include <string>

#include "gcp/instances.hpp"

namespace gcptest {

using namespace gcp;

// E^0 = {u, v, w}, E^1 = {e, f, g}, r(e) = u, s(e) = r(f) = r(g) = w,
// s(f) = s(g) = v.  v receives no edge.
inline Graph estar_graph() {
  Graph g;
  g.vertices = {"u", "v", "w"};
  g.edges.push_back({"e", 0, 2});
  g.edges.push_back({"f", 2, 1});
  g.edges.push_back({"g", 2, 1});
  return g;
}

// acyclic graph with two receiving-nothing vertices b and c
inline Graph twosink_graph() {
  Graph g;
  g.vertices = {"a", "b", "c"};
  g.edges.push_back({"m", 0, 1});
  g.edges.push_back({"n", 0, 2});
  return g;
}

inline CoeffRing k2_ring(const Field& f) { return split_ring(f, 2); }

inline CrossedProductSpec crossed_swap_spec(const Field& f, int halfwin = 3) {
  CrossedProductSpec spec;
  spec.base = k2_ring(f);
  spec.phi = {SVec::unit(1, Scalar::one(f)), SVec::unit(0, Scalar::one(f))};
  spec.window = Window{-halfwin, halfwin, 8};
  spec.name = "k2-swap";
  return spec;
}

inline CrossedProductSpec laurent_crossed_spec(const Field& f, int halfwin = 3) {
  CrossedProductSpec spec;
  spec.base = split_ring(f, 1);
  spec.phi = {SVec::unit(0, Scalar::one(f))};
  spec.window = Window{-halfwin, halfwin, 8};
  spec.name = "laurent";
  return spec;
}

inline CornerSkewSpec laurent_corner_spec(const Field& f, int halfwin = 4) {
  CornerSkewSpec spec;
  spec.base = split_ring(f, 1);
  spec.unit = SVec::unit(0, Scalar::one(f));
  spec.idem = spec.unit;
  spec.alpha = {spec.unit};
  spec.window = Window{-halfwin, halfwin, 8};
  spec.name = "laurent";
  return spec;
}

// K^2 with p = 1 and alpha = coordinate swap: a skew Laurent instance that
// exercises a nontrivial alpha
inline CornerSkewSpec k2_corner_spec(const Field& f, int halfwin = 3) {
  CornerSkewSpec spec;
  spec.base = split_ring(f, 2);
  spec.unit = SVec::unit(0, Scalar::one(f));
  spec.unit.add_term(1, Scalar::one(f));
  spec.idem = spec.unit;
  spec.alpha = {SVec::unit(1, Scalar::one(f)), SVec::unit(0, Scalar::one(f))};
  spec.window = Window{-halfwin, halfwin, 8};
  spec.name = "k2-skew";
  return spec;
}

inline std::string data_path(const std::string& name) { return std::string(GCP_DATA_DIR) + "/" + name; }

}  // namespace gcptest

#endif
