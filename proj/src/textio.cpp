#include "gcp/textio.hpp"

#include <sstream>

#include "gcp/error.hpp"

namespace gcp {

const Section* InputDocument::find(const std::string& name) const {
  for (const Section& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

const Section& InputDocument::need(const std::string& name) const {
  const Section* s = find(name);
  if (!s) throw ParseError("missing section [" + name + "]", 0);
  return *s;
}

std::string InputDocument::header_or(const std::string& key, const std::string& dflt) const {
  auto it = header.find(key);
  return it == header.end() ? dflt : it->second;
}

static std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

InputDocument parse_document(const std::string& text) {
  InputDocument doc;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  Section* cur = nullptr;
  bool any = false;
  while (std::getline(in, raw)) {
    ++lineno;
    size_t hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    any = true;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", lineno);
      doc.sections.push_back(Section{line.substr(1, line.size() - 2), {}, lineno});
      cur = &doc.sections.back();
      continue;
    }
    size_t colon = line.find(':');
    if (!cur) {
      if (colon == std::string::npos) throw ParseError("expected 'key: value' in document header", lineno);
      std::string key = line.substr(0, colon);
      key.erase(key.find_last_not_of(" \t") + 1);
      std::string val = line.substr(colon + 1);
      size_t vb = val.find_first_not_of(" \t");
      val = vb == std::string::npos ? "" : val.substr(vb);
      doc.header[key] = val;
      if (key == "kind") doc.kind = val;
      continue;
    }
    DocLine dl;
    dl.line = lineno;
    if (colon != std::string::npos) {
      dl.key = line.substr(0, colon);
      dl.key.erase(dl.key.find_last_not_of(" \t") + 1);
      dl.tokens = tokenize(line.substr(colon + 1));
    } else {
      dl.tokens = tokenize(line);
    }
    cur->lines.push_back(std::move(dl));
  }
  if (!any) throw ParseError("empty document", 0);
  if (doc.kind.empty()) throw ParseError("document has no 'kind:' header", 0);
  return doc;
}

std::string serialize_document(const InputDocument& doc) {
  std::ostringstream out;
  out << "kind: " << doc.kind << "\n";
  for (const auto& [k, v] : doc.header)
    if (k != "kind") out << k << ": " << v << "\n";
  for (const Section& s : doc.sections) {
    out << "[" << s.name << "]\n";
    for (const DocLine& l : s.lines) {
      if (!l.key.empty()) out << l.key << ":";
      for (size_t i = 0; i < l.tokens.size(); ++i) out << (i || !l.key.empty() ? " " : "") << l.tokens[i];
      out << "\n";
    }
  }
  return out.str();
}

Graph graph_from_doc(const InputDocument& doc) {
  Graph g;
  for (const DocLine& l : doc.need("vertices").lines)
    for (const std::string& t : l.tokens) {
      if (g.vertex_id(t) >= 0) throw ParseError("duplicate vertex '" + t + "'", l.line);
      g.vertices.push_back(t);
    }
  if (g.vertices.empty()) throw ParseError("graph has no vertices", 0);
  if (const Section* es = doc.find("edges")) {
    for (const DocLine& l : es->lines) {
      if (l.key.empty() || l.tokens.size() != 2)
        throw ParseError("edge line must be 'name: range source'", l.line);
      int r = g.vertex_id(l.tokens[0]);
      int s = g.vertex_id(l.tokens[1]);
      if (r < 0) throw ParseError("unknown vertex '" + l.tokens[0] + "'", l.line);
      if (s < 0) throw ParseError("unknown vertex '" + l.tokens[1] + "'", l.line);
      if (g.edge_id(l.key) >= 0) throw ParseError("duplicate edge '" + l.key + "'", l.line);
      g.edges.push_back(Graph::Edge{l.key, r, s});
    }
  }
  return g;
}

InputDocument graph_to_doc(const Graph& g, const std::string& name) {
  InputDocument doc;
  doc.kind = "graph";
  if (!name.empty()) doc.header["name"] = name;
  Section vs{"vertices", {}, 0};
  vs.lines.push_back(DocLine{"", g.vertices, 0});
  doc.sections.push_back(vs);
  Section es{"edges", {}, 0};
  for (const auto& e : g.edges) es.lines.push_back(DocLine{e.name, {g.vertices[e.range], g.vertices[e.source]}, 0});
  doc.sections.push_back(es);
  return doc;
}

FiniteGroupoid groupoid_from_doc(const InputDocument& doc) {
  FiniteGroupoid G;
  std::map<std::string, int> id;
  for (const DocLine& l : doc.need("arrows").lines) {
    if (l.key.empty() || l.tokens.size() != 3)
      throw ParseError("arrow line must be 'name: range source cocycle'", l.line);
    if (id.count(l.key)) throw ParseError("duplicate arrow '" + l.key + "'", l.line);
    id[l.key] = G.n();
    G.names.push_back(l.key);
    G.r.push_back(0);
    G.s.push_back(0);
    G.inv.push_back(0);
    G.cocycle.push_back(std::stoi(l.tokens[2]));
  }
  auto lookup = [&](const std::string& name, int line) {
    auto it = id.find(name);
    if (it == id.end()) throw ParseError("unknown arrow '" + name + "'", line);
    return it->second;
  };
  for (const DocLine& l : doc.need("arrows").lines) {
    int a = lookup(l.key, l.line);
    G.r[a] = lookup(l.tokens[0], l.line);
    G.s[a] = lookup(l.tokens[1], l.line);
  }
  for (const DocLine& l : doc.need("units").lines)
    for (const std::string& t : l.tokens) G.units.push_back(lookup(t, l.line));
  G.units = sorted_unique(std::move(G.units));
  for (const DocLine& l : doc.need("inverse").lines) {
    if (l.key.empty() || l.tokens.size() != 1) throw ParseError("inverse line must be 'a: b'", l.line);
    G.inv[lookup(l.key, l.line)] = lookup(l.tokens[0], l.line);
  }
  for (const DocLine& l : doc.need("compose").lines) {
    std::vector<std::string> lhs = tokenize(l.key);
    if (lhs.size() != 2 || l.tokens.size() != 1) throw ParseError("compose line must be 'a b: c'", l.line);
    G.comp[{lookup(lhs[0], l.line), lookup(lhs[1], l.line)}] = lookup(l.tokens[0], l.line);
  }
  return G;
}

InputDocument groupoid_to_doc(const FiniteGroupoid& G, const std::string& name) {
  InputDocument doc;
  doc.kind = "groupoid";
  if (!name.empty()) doc.header["name"] = name;
  Section arrows{"arrows", {}, 0};
  for (int a = 0; a < G.n(); ++a)
    arrows.lines.push_back(
        DocLine{G.names[a], {G.names[G.r[a]], G.names[G.s[a]], std::to_string(G.cocycle[a])}, 0});
  doc.sections.push_back(arrows);
  Section units{"units", {}, 0};
  std::vector<std::string> unames;
  for (int u : G.units) unames.push_back(G.names[u]);
  units.lines.push_back(DocLine{"", unames, 0});
  doc.sections.push_back(units);
  Section inv{"inverse", {}, 0};
  for (int a = 0; a < G.n(); ++a) inv.lines.push_back(DocLine{G.names[a], {G.names[G.inv[a]]}, 0});
  doc.sections.push_back(inv);
  Section comp{"compose", {}, 0};
  for (const auto& [ab, c] : G.comp)
    comp.lines.push_back(DocLine{G.names[ab.first] + " " + G.names[ab.second], {G.names[c]}, 0});
  doc.sections.push_back(comp);
  return doc;
}

HTriple htriple_from_doc(const InputDocument& doc, const FiniteGroupoid& G) {
  HTriple H;
  auto read = [&](const std::string& sec, ArrowSet* out) {
    for (const DocLine& l : doc.need(sec).lines)
      for (const std::string& t : l.tokens) {
        int a = G.arrow_id(t);
        if (a < 0) throw ParseError("unknown arrow '" + t + "' in [" + sec + "]", l.line);
        out->push_back(a);
      }
    *out = sorted_unique(std::move(*out));
  };
  read("h0", &H.h0);
  read("h1", &H.h1);
  read("h-1", &H.hm1);
  return H;
}

SVec coeff_list_from_tokens(const CoeffRing& R, const std::vector<std::string>& tokens, int line, size_t from) {
  SVec out;
  if (tokens.size() == from + 1 && tokens[from] == "0") return out;
  if ((tokens.size() - from) % 2 != 0) throw ParseError("expected 'coeff name' pairs or '0'", line);
  for (size_t i = from; i < tokens.size(); i += 2) {
    Scalar c = Scalar::parse(R.field, tokens[i]);
    int k = -1;
    for (int j = 0; j < R.dim(); ++j)
      if (R.names[j] == tokens[i + 1]) k = j;
    if (k < 0) throw ParseError("unknown basis name '" + tokens[i + 1] + "'", line);
    out.add_term(k, c);
  }
  return out;
}

CoeffRing ring_from_doc(const InputDocument& doc, const Field& f) {
  CoeffRing R;
  R.field = f;
  for (const DocLine& l : doc.need("basis").lines)
    for (const std::string& t : l.tokens) R.names.push_back(t);
  if (R.names.empty()) throw ParseError("ring has an empty basis", 0);
  R.mul.assign(R.dim(), std::vector<SVec>(R.dim()));
  for (const DocLine& l : doc.need("product").lines) {
    // 'a b: coeff name ...' where key = "a b"
    std::vector<std::string> lhs = tokenize(l.key);
    if (lhs.size() != 2) throw ParseError("product line must be 'a b: ...'", l.line);
    int i = -1, j = -1;
    for (int k = 0; k < R.dim(); ++k) {
      if (R.names[k] == lhs[0]) i = k;
      if (R.names[k] == lhs[1]) j = k;
    }
    if (i < 0 || j < 0) throw ParseError("unknown basis name in product line", l.line);
    R.mul[i][j] = coeff_list_from_tokens(R, l.tokens, l.line);
  }
  return R;
}

CrossedProductSpec crossed_from_doc(const InputDocument& doc, const Field& f, const Window& w) {
  CrossedProductSpec spec;
  spec.base = ring_from_doc(doc, f);
  spec.window = w;
  spec.name = doc.header_or("name", "crossed");
  spec.phi.assign(spec.base.dim(), SVec{});
  for (const DocLine& l : doc.need("phi").lines) {
    int k = -1;
    for (int j = 0; j < spec.base.dim(); ++j)
      if (spec.base.names[j] == l.key) k = j;
    if (k < 0) throw ParseError("unknown basis name '" + l.key + "' in [phi]", l.line);
    spec.phi[k] = coeff_list_from_tokens(spec.base, l.tokens, l.line);
  }
  return spec;
}

CornerSkewSpec corner_from_doc(const InputDocument& doc, const Field& f, const Window& w) {
  CornerSkewSpec spec;
  spec.base = ring_from_doc(doc, f);
  spec.window = w;
  spec.name = doc.header_or("name", "cornerskew");
  const Section& un = doc.need("unit");
  if (un.lines.size() != 1) throw ParseError("[unit] must hold one coefficient list", un.line);
  spec.unit = coeff_list_from_tokens(spec.base, un.lines[0].tokens, un.lines[0].line);
  const Section& ip = doc.need("idempotent");
  if (ip.lines.size() != 1) throw ParseError("[idempotent] must hold one coefficient list", ip.line);
  spec.idem = coeff_list_from_tokens(spec.base, ip.lines[0].tokens, ip.lines[0].line);
  spec.alpha.assign(spec.base.dim(), SVec{});
  for (const DocLine& l : doc.need("alpha").lines) {
    int k = -1;
    for (int j = 0; j < spec.base.dim(); ++j)
      if (spec.base.names[j] == l.key) k = j;
    if (k < 0) throw ParseError("unknown basis name '" + l.key + "' in [alpha]", l.line);
    spec.alpha[k] = coeff_list_from_tokens(spec.base, l.tokens, l.line);
  }
  return spec;
}

}  // namespace gcp
