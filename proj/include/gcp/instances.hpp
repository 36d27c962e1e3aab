#ifndef GCP_INSTANCES_HPP
#define GCP_INSTANCES_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcp/graded.hpp"
#include "gcp/groupoid.hpp"
#include "gcp/realization.hpp"
#include "gcp/rsystem.hpp"

namespace gcp {

struct Graph {
  std::vector<std::string> vertices;
  struct Edge {
    std::string name;
    int range, source;
  };
  std::vector<Edge> edges;

  int vertex_id(const std::string& name) const;
  int edge_id(const std::string& name) const;
  bool acyclic() const;
  // edges with range v ("v E^1")
  std::vector<int> incoming(int v) const;
};

// Directed path under the composition convention s(e_i) = r(e_{i+1}).
// Empty paths are vertices; rv is the range vertex.
struct Path {
  int rv = -1;
  std::vector<int> edges;

  int len() const { return static_cast<int>(edges.size()); }
  int source(const Graph& g) const { return edges.empty() ? rv : g.edges[edges.back()].source; }
  bool operator<(const Path& o) const { return std::tie(rv, edges) < std::tie(o.rv, o.edges); }
  bool operator==(const Path& o) const { return rv == o.rv && edges == o.edges; }
};

std::string path_str(const Graph& g, const Path& p);
std::optional<Path> parse_path(const Graph& g, const std::string& text);

struct LpaOptions {
  Window window;
  // turning relation (5) off yields the Toeplitz-style path algebra on all
  // monomial pairs
  bool impose_ck2 = true;
};

struct LpaAlgebra {
  std::shared_ptr<GradedAlgebra> A;
  Graph graph;
  LpaOptions options;
  RealizationData data;  // R = span E^0, I = span E^1, J = span (E^1)*

  // monomial alpha beta^*; nullopt when it falls outside the window
  std::optional<Element> monomial(const Path& alpha, const Path& beta) const;
  Element generator(const std::string& name, bool ghost) const;

  std::shared_ptr<const void> impl;  // builder state kept alive for closures
};

LpaAlgebra build_lpa(const Graph& g, const LpaOptions& opt = {});

// Signed sums of generator words, e.g. "ee* + ff* - u".  Unknown generator
// names raise ParseError.
Element parse_lpa_expression(const LpaAlgebra& lpa, const std::string& text);

struct CrossedProductSpec {
  CoeffRing base;
  std::vector<SVec> phi;  // automorphism, images of base basis vectors
  Window window;
  std::string name = "crossed";
};

std::shared_ptr<GradedAlgebra> build_crossed_product(const CrossedProductSpec& spec);

struct CornerSkewSpec {
  CoeffRing base;
  SVec unit;                // coordinates of 1
  SVec idem;                // idempotent p
  std::vector<SVec> alpha;  // isomorphism R -> pRp, images of basis vectors
  Window window;
  std::string name = "cornerskew";
};

// One canonical summand t_-^m phi(payload) t_+^n with min(m, n) = 0.
struct CsTriple {
  int m = 0, n = 0;
  SVec payload;
};

struct CsSymbol {
  enum Kind { tplus, tminus, phi } kind;
  SVec r;  // only for phi
};

struct CornerSkewAlgebra {
  std::shared_ptr<GradedAlgebra> A;
  CornerSkewSpec spec;
  std::shared_ptr<const void> impl;

  Element label_for(const CsTriple& t) const;  // throws WindowError outside the window
};

CornerSkewAlgebra build_corner_skew(const CornerSkewSpec& spec);

// Reduce an arbitrary word over {t_+, t_-, phi(r)} to its canonical triples.
std::vector<CsTriple> corner_skew_reduce(const CornerSkewAlgebra& cs, const std::vector<CsSymbol>& word);
Element corner_skew_element(const CornerSkewAlgebra& cs, const std::vector<CsTriple>& triples);

// Arrows (x, m, y) over boundary paths with m = |x| - |y|; requires a finite
// acyclic graph.
FiniteGroupoid boundary_path_groupoid(const Graph& g);

// Trivial one-dimensional algebra K in degree zero.
std::shared_ptr<GradedAlgebra> scalar_algebra(const Field& f, const Window& w);

// K or K^2-style split base ring on n orthogonal idempotents.
CoeffRing split_ring(const Field& f, int n);

}  // namespace gcp

#endif
