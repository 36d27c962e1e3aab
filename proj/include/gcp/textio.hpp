#ifndef GCP_TEXTIO_HPP
#define GCP_TEXTIO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcp/groupoid.hpp"
#include "gcp/instances.hpp"
#include "gcp/steinberg.hpp"

namespace gcp {

// Section-based plain-text input documents:
//
//   kind: graph
//   name: estar
//   [vertices]
//   u v w
//   [edges]
//   e: u w
//
// '#' starts a comment; header keys appear before the first section; section
// lines are token lists with an optional "key:" prefix.
struct DocLine {
  std::string key;  // empty for bare token lists
  std::vector<std::string> tokens;
  int line = 0;
};

struct Section {
  std::string name;
  std::vector<DocLine> lines;
  int line = 0;
};

struct InputDocument {
  std::string kind;
  std::map<std::string, std::string> header;
  std::vector<Section> sections;

  const Section* find(const std::string& name) const;
  const Section& need(const std::string& name) const;  // ParseError when absent
  std::string header_or(const std::string& key, const std::string& dflt) const;
};

InputDocument parse_document(const std::string& text);
std::string serialize_document(const InputDocument& doc);

Graph graph_from_doc(const InputDocument& doc);
InputDocument graph_to_doc(const Graph& g, const std::string& name);

FiniteGroupoid groupoid_from_doc(const InputDocument& doc);
InputDocument groupoid_to_doc(const FiniteGroupoid& G, const std::string& name);

// arrow names listed in [h0], [h1], [h-1]
HTriple htriple_from_doc(const InputDocument& doc, const FiniteGroupoid& G);

CoeffRing ring_from_doc(const InputDocument& doc, const Field& f);
CrossedProductSpec crossed_from_doc(const InputDocument& doc, const Field& f, const Window& w);
CornerSkewSpec corner_from_doc(const InputDocument& doc, const Field& f, const Window& w);

SVec coeff_list_from_tokens(const CoeffRing& R, const std::vector<std::string>& tokens, int line, size_t from = 0);

}  // namespace gcp

#endif
