#include "gcp/instances.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gcp/error.hpp"

namespace gcp {

int Graph::vertex_id(const std::string& name) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  return -1;
}

int Graph::edge_id(const std::string& name) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<int> Graph::incoming(int v) const {
  std::vector<int> out;
  for (size_t e = 0; e < edges.size(); ++e)
    if (edges[e].range == v) out.push_back(static_cast<int>(e));
  return out;
}

bool Graph::acyclic() const {
  // follow edges from range to source
  int n = static_cast<int>(vertices.size());
  std::vector<int> state(n, 0);
  std::vector<std::vector<int>> next(n);
  for (const Edge& e : edges) next[e.range].push_back(e.source);
  std::function<bool(int)> dfs = [&](int v) {
    state[v] = 1;
    for (int w : next[v]) {
      if (state[w] == 1) return false;
      if (state[w] == 0 && !dfs(w)) return false;
    }
    state[v] = 2;
    return true;
  };
  for (int v = 0; v < n; ++v)
    if (state[v] == 0 && !dfs(v)) return false;
  return true;
}

static bool single_char_names(const Graph& g) {
  for (const auto& e : g.edges)
    if (e.name.size() != 1) return false;
  return true;
}

std::string path_str(const Graph& g, const Path& p) {
  if (p.edges.empty()) return g.vertices[p.rv];
  std::string sep = single_char_names(g) ? "" : ".";
  std::string out;
  for (size_t i = 0; i < p.edges.size(); ++i) {
    if (i) out += sep;
    out += g.edges[p.edges[i]].name;
  }
  return out;
}

std::optional<Path> parse_path(const Graph& g, const std::string& text) {
  int v = g.vertex_id(text);
  if (v >= 0) return Path{v, {}};
  std::vector<std::string> parts;
  if (text.find('.') != std::string::npos) {
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t dot = text.find('.', pos);
      if (dot == std::string::npos) dot = text.size();
      parts.push_back(text.substr(pos, dot - pos));
      pos = dot + 1;
    }
  } else {
    for (char c : text) parts.emplace_back(1, c);
  }
  Path p;
  for (size_t i = 0; i < parts.size(); ++i) {
    int e = g.edge_id(parts[i]);
    if (e < 0) return std::nullopt;
    if (i == 0)
      p.rv = g.edges[e].range;
    else if (g.edges[p.edges.back()].source != g.edges[e].range)
      return std::nullopt;
    p.edges.push_back(e);
  }
  return p;
}

// ---- Leavitt path algebra ----

namespace {

struct LpaData {
  Graph g;
  LpaOptions opt;
  Field field;
  std::vector<Path> paths;
  std::map<Path, int> path_id;
  std::vector<int> special;                 // per vertex, edge id or -1
  std::vector<std::pair<int, int>> monos;   // (alpha path, beta path)
  std::map<std::pair<int, int>, int> mono_id;

  bool prefix(const Path& p, const Path& q) const {
    if (p.rv != q.rv || p.len() > q.len()) return false;
    return std::equal(p.edges.begin(), p.edges.end(), q.edges.begin());
  }

  std::optional<int> label_of(const Path& a, const Path& b) const {
    auto ia = path_id.find(a);
    auto ib = path_id.find(b);
    if (ia == path_id.end() || ib == path_id.end()) return std::nullopt;
    auto it = mono_id.find({ia->second, ib->second});
    if (it == mono_id.end()) return std::nullopt;
    return it->second;
  }

  bool ck2_junction(const Path& a, const Path& b) const {
    if (!opt.impose_ck2 || a.edges.empty() || b.edges.empty()) return false;
    int e = a.edges.back();
    return b.edges.back() == e && special[g.edges[e].range] == e;
  }

  std::optional<Element> normalize(const Path& a, const Path& b) const {
    if (ck2_junction(a, b)) {
      Path a2 = a, b2 = b;
      int e = a2.edges.back();
      a2.edges.pop_back();
      b2.edges.pop_back();
      auto res = normalize(a2, b2);
      if (!res) return std::nullopt;
      for (int f : g.incoming(g.edges[e].range)) {
        if (f == e) continue;
        Path af = a2, bf = b2;
        af.edges.push_back(f);
        bf.edges.push_back(f);
        auto lab = label_of(af, bf);
        if (!lab) return std::nullopt;
        res->add_term(*lab, -Scalar::one(field));
      }
      return res;
    }
    auto lab = label_of(a, b);
    if (!lab) return std::nullopt;
    return SVec::unit(*lab, Scalar::one(field));
  }

  std::optional<Element> mul(int la, int lb) const {
    const auto& [a1i, b1i] = monos[la];
    const auto& [a2i, b2i] = monos[lb];
    const Path &a1 = paths[a1i], &b1 = paths[b1i], &a2 = paths[a2i], &b2 = paths[b2i];
    Path alpha, beta;
    if (prefix(b1, a2)) {
      alpha = a1;
      alpha.edges.insert(alpha.edges.end(), a2.edges.begin() + b1.len(), a2.edges.end());
      beta = b2;
    } else if (prefix(a2, b1)) {
      alpha = a1;
      beta = b2;
      beta.edges.insert(beta.edges.end(), b1.edges.begin() + a2.len(), b1.edges.end());
    } else {
      return Element{};
    }
    return normalize(alpha, beta);
  }
};

std::string mono_name(const Graph& g, const Path& a, const Path& b) {
  if (a.edges.empty() && b.edges.empty()) return g.vertices[a.rv];
  std::string sep = single_char_names(g) ? "" : ".";
  std::string out;
  for (size_t i = 0; i < a.edges.size(); ++i) {
    if (i) out += sep;
    out += g.edges[a.edges[i]].name;
  }
  for (size_t i = b.edges.size(); i-- > 0;) {
    if (!out.empty() && !sep.empty()) out += sep;
    out += g.edges[b.edges[i]].name + "*";
  }
  return out;
}

}  // namespace

LpaAlgebra build_lpa(const Graph& g, const LpaOptions& opt) {
  if (g.vertices.empty()) throw PreconditionError("graph has no vertices");
  for (const auto& e : g.edges)
    if (e.range < 0 || e.source < 0 || e.range >= static_cast<int>(g.vertices.size()) ||
        e.source >= static_cast<int>(g.vertices.size()))
      throw PreconditionError("edge '" + e.name + "' has an undefined endpoint");

  auto data = std::make_shared<LpaData>();
  data->g = g;
  data->opt = opt;
  data->field = Field::rationals();

  int cap = g.acyclic() ? static_cast<int>(g.vertices.size()) : opt.window.max_word_len;
  // all paths up to the cap
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    Path p{static_cast<int>(v), {}};
    data->path_id[p] = static_cast<int>(data->paths.size());
    data->paths.push_back(p);
  }
  for (size_t head = 0; head < data->paths.size(); ++head) {
    Path p = data->paths[head];
    if (p.len() >= cap) continue;
    int sv = p.source(g);
    for (size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].range != sv) continue;
      Path q = p;
      q.edges.push_back(static_cast<int>(e));
      if (!data->path_id.count(q)) {
        data->path_id[q] = static_cast<int>(data->paths.size());
        data->paths.push_back(q);
      }
    }
  }

  data->special.assign(g.vertices.size(), -1);
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    std::vector<int> in = g.incoming(static_cast<int>(v));
    if (in.empty()) continue;
    int best = in[0];
    for (int e : in)
      if (g.edges[e].name < g.edges[best].name) best = e;
    data->special[v] = best;
  }

  auto A = std::make_shared<GradedAlgebra>(Field::rationals(), opt.window, "L(" + std::to_string(g.vertices.size()) + "v)");
  for (int ai = 0; ai < static_cast<int>(data->paths.size()); ++ai) {
    for (int bi = 0; bi < static_cast<int>(data->paths.size()); ++bi) {
      const Path &a = data->paths[ai], &b = data->paths[bi];
      if (a.source(g) != b.source(g)) continue;
      int deg = a.len() - b.len();
      if (!opt.window.contains(deg)) continue;
      if (data->ck2_junction(a, b)) continue;
      int label = A->add_label(mono_name(g, a, b), deg);
      data->mono_id[{ai, bi}] = label;
      data->monos.emplace_back(ai, bi);
      (void)label;
    }
  }
  A->set_product([keep = std::shared_ptr<const LpaData>(data)](int a, int b) { return keep->mul(a, b); });

  LpaAlgebra out;
  out.A = A;
  out.graph = g;
  out.options = opt;
  out.impl = data;
  out.data.A = A;
  out.data.Rspec.name = "R";
  out.data.Rspec.closure = Closure::subring;
  out.data.Ispec.name = "I";
  out.data.Jspec.name = "J";
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    Path p{static_cast<int>(v), {}};
    auto lv = data->label_of(p, p);
    if (lv) out.data.Rspec.generators.push_back(A->basis_elem(*lv));
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    Path pe{g.edges[e].range, {static_cast<int>(e)}};
    Path pv{g.edges[e].source, {}};
    auto le = data->label_of(pe, pv);
    auto lg = data->label_of(pv, pe);
    if (le) out.data.Ispec.generators.push_back(A->basis_elem(*le));
    if (lg) out.data.Jspec.generators.push_back(A->basis_elem(*lg));
  }
  return out;
}

std::optional<Element> LpaAlgebra::monomial(const Path& alpha, const Path& beta) const {
  auto d = std::static_pointer_cast<const LpaData>(impl);
  return d->normalize(alpha, beta);
}

Element LpaAlgebra::generator(const std::string& name, bool ghost) const {
  auto d = std::static_pointer_cast<const LpaData>(impl);
  int v = graph.vertex_id(name);
  if (v >= 0 && !ghost) {
    Path p{v, {}};
    return A->basis_elem(*d->label_of(p, p));
  }
  int e = graph.edge_id(name);
  if (e < 0) throw ParseError("unknown generator '" + name + "'", 0);
  Path pe{graph.edges[e].range, {e}};
  Path pv{graph.edges[e].source, {}};
  auto lab = ghost ? d->label_of(pv, pe) : d->label_of(pe, pv);
  if (!lab) throw WindowError("generator '" + name + "' falls outside the window");
  return A->basis_elem(*lab);
}

Element parse_lpa_expression(const LpaAlgebra& lpa, const std::string& text) {
  const Field f = lpa.A->field();
  Element acc;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  bool first = true;
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    Scalar sign = Scalar::one(f);
    if (text[pos] == '+') {
      ++pos;
    } else if (text[pos] == '-') {
      sign = -sign;
      ++pos;
    } else if (!first) {
      throw ParseError("expected '+' or '-' in expression", 0);
    }
    first = false;
    skip_ws();
    // optional rational coefficient terminated by '*'
    size_t start = pos;
    while (pos < text.size() && (isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
    Scalar coeff = Scalar::one(f);
    if (pos > start && pos < text.size() && text[pos] == '*') {
      coeff = Scalar::parse(f, text.substr(start, pos - start));
      ++pos;
    } else {
      pos = start;
    }
    // generator word, greedy longest-name match
    Element term;
    bool have = false;
    while (pos < text.size() && text[pos] != '+' && text[pos] != '-') {
      if (isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        continue;
      }
      size_t best = 0;
      std::string match;
      for (const auto& vname : lpa.graph.vertices)
        if (text.compare(pos, vname.size(), vname) == 0 && vname.size() > best) {
          best = vname.size();
          match = vname;
        }
      for (const auto& e : lpa.graph.edges)
        if (text.compare(pos, e.name.size(), e.name) == 0 && e.name.size() > best) {
          best = e.name.size();
          match = e.name;
        }
      if (best == 0) throw ParseError("unknown generator at '" + text.substr(pos) + "'", 0);
      pos += best;
      bool ghost = pos < text.size() && text[pos] == '*';
      if (ghost) ++pos;
      Element gen = lpa.generator(match, ghost);
      if (!have) {
        term = gen;
        have = true;
      } else {
        auto p = lpa.A->mul(term, gen);
        if (!p) throw WindowError("expression product leaves the window");
        term = *p;
      }
    }
    if (!have) throw ParseError("empty term in expression", 0);
    term.scale(sign * coeff);
    acc.add(term);
  }
  return acc;
}

// ---- crossed product ----

namespace {

struct CrossedData {
  CrossedProductSpec spec;
  std::map<int, std::vector<SVec>> phi_pow;  // m -> images of basis vectors
  std::map<std::pair<int, int>, int> label;  // (base index, degree) -> label

  SVec apply_pow(int m, const SVec& x) const {
    SVec out;
    const auto& imgs = phi_pow.at(m);
    for (const auto& [k, c] : x.terms()) out.add_scaled(imgs[k], c);
    return out;
  }

  std::optional<Element> mul(int la, int lb) const {
    int d = spec.base.dim();
    int i = la % d, m = la / d + spec.window.min_deg;
    int j = lb % d, n = lb / d + spec.window.min_deg;
    if (!spec.window.contains(m + n)) return std::nullopt;
    SVec prod = ring_mul(spec.base, SVec::unit(i, Scalar::one(spec.base.field)), apply_pow(m, SVec::unit(j, Scalar::one(spec.base.field))));
    Element out;
    for (const auto& [k, c] : prod.terms()) out.add_term(label.at({k, m + n}), c);
    return out;
  }
};

void check_ring_automorphism(const CoeffRing& R, const std::vector<SVec>& phi) {
  const Field& f = R.field;
  if (static_cast<int>(phi.size()) != R.dim()) throw PreconditionError("automorphism image count mismatch");
  auto apply = [&](const SVec& x) {
    SVec out;
    for (const auto& [k, c] : x.terms()) out.add_scaled(phi[k], c);
    return out;
  };
  for (int i = 0; i < R.dim(); ++i)
    for (int j = 0; j < R.dim(); ++j) {
      SVec lhs = apply(R.mul[i][j]);
      SVec rhs = ring_mul(R, phi[i], phi[j]);
      if (lhs != rhs) throw PreconditionError("phi is not multiplicative at (" + R.names[i] + "," + R.names[j] + ")");
    }
  if (span_rank(phi, f) != R.dim()) throw PreconditionError("phi is not invertible");
}

}  // namespace

std::shared_ptr<GradedAlgebra> build_crossed_product(const CrossedProductSpec& spec) {
  const Field& f = spec.base.field;
  check_ring_automorphism(spec.base, spec.phi);
  auto data = std::make_shared<CrossedData>();
  data->spec = spec;
  int d = spec.base.dim();

  // phi inverse by solving against the images
  std::vector<SVec> inv(d);
  for (int k = 0; k < d; ++k) {
    auto coeffs = in_span(SVec::unit(k, Scalar::one(f)), spec.phi, f);
    if (!coeffs) throw PreconditionError("phi is not invertible");
    for (const auto& [pos, c] : *coeffs) inv[k].add_term(pos, c);
  }
  data->phi_pow[0] = {};
  for (int k = 0; k < d; ++k) data->phi_pow[0].push_back(SVec::unit(k, Scalar::one(f)));
  for (int m = 1; m <= spec.window.max_deg; ++m) {
    std::vector<SVec> prev = data->phi_pow[m - 1], next(d);
    for (int k = 0; k < d; ++k) {
      for (const auto& [j, c] : prev[k].terms()) next[k].add_scaled(spec.phi[j], c);
    }
    data->phi_pow[m] = next;
  }
  for (int m = -1; m >= spec.window.min_deg; --m) {
    std::vector<SVec> prev = data->phi_pow[m + 1], next(d);
    for (int k = 0; k < d; ++k) {
      for (const auto& [j, c] : prev[k].terms()) next[k].add_scaled(inv[j], c);
    }
    data->phi_pow[m] = next;
  }

  auto A = std::make_shared<GradedAlgebra>(f, spec.window, spec.name);
  for (int n = spec.window.min_deg; n <= spec.window.max_deg; ++n)
    for (int k = 0; k < d; ++k)
      data->label[{k, n}] = A->add_label("[" + spec.base.names[k] + "," + std::to_string(n) + "]", n);
  A->set_product([keep = std::shared_ptr<const CrossedData>(data)](int a, int b) { return keep->mul(a, b); });
  return A;
}

// ---- corner skew Laurent polynomial ring ----

namespace {

struct CsData {
  CornerSkewSpec spec;
  std::map<int, std::vector<SVec>> payload_basis;  // degree -> basis of S_deg (base ring coords)
  std::map<std::pair<int, int>, int> label;        // (degree, basis idx) -> algebra label
  std::vector<CsTriple> triple_of_label;

  SVec alpha_apply(const SVec& x) const {
    SVec out;
    for (const auto& [k, c] : x.terms()) out.add_scaled(spec.alpha[k], c);
    return out;
  }
  SVec alpha_pow(int k, SVec x) const {
    for (int i = 0; i < k; ++i) x = alpha_apply(x);
    return x;
  }
  SVec alpha_inv(const SVec& x) const {
    auto coeffs = in_span(x, spec.alpha, spec.base.field);
    if (!coeffs) throw InconsistencyError("alpha^{-1} applied outside pRp");
    SVec out;
    for (const auto& [pos, c] : *coeffs) out.add_term(pos, c);
    return out;
  }
  Field base_field() const { return spec.base.field; }

  // q_m = alpha^{m-1}(p) for m >= 1
  SVec corner_idem(int m) const { return alpha_pow(m - 1, spec.idem); }

  SVec project_payload(int mdeg, const SVec& z) const {
    if (mdeg > 0) return ring_mul(spec.base, corner_idem(mdeg), z);
    if (mdeg < 0) return ring_mul(spec.base, z, corner_idem(-mdeg));
    return z;
  }

  // t_-^m phi(x) t_+^n with both exponents positive reduces stepwise
  CsTriple canonicalize(int m, SVec z, int n) const {
    while (m > 0 && n > 0) {
      z = alpha_inv(ring_mul(spec.base, ring_mul(spec.base, spec.idem, z), spec.idem));
      --m;
      --n;
    }
    CsTriple t;
    t.m = m;
    t.n = n;
    t.payload = project_payload(m - n, z);
    return t;
  }

  // (m1, x, n1) * (m2, y, n2) before canonicalization
  CsTriple raw_mul(const CsTriple& a, const CsTriple& b) const {
    int m1 = a.m, n1 = a.n, m2 = b.m, n2 = b.n;
    const SVec &x = a.payload, &y = b.payload;
    if (n1 == 0 && m2 == 0) return canonicalize(m1, ring_mul(spec.base, x, y), n2);
    if (n1 == 0) {  // t_-^{m1} phi(x) t_-^{m2} phi(y) t_+^{n2}
      SVec z = ring_mul(spec.base, alpha_pow(m2, x), y);
      return canonicalize(m1 + m2, z, n2);
    }
    if (m2 == 0) {  // t_-^{m1} phi(x) t_+^{n1} phi(y) t_+^{n2}
      SVec z = ring_mul(spec.base, x, alpha_pow(n1, y));
      return canonicalize(m1, z, n1 + n2);
    }
    int k = std::min(n1, m2);
    SVec qk = corner_idem(k);
    if (n1 <= m2) {
      int j = m2 - n1;
      SVec z = ring_mul(spec.base, alpha_pow(j, ring_mul(spec.base, x, qk)), y);
      return canonicalize(m1 + j, z, n2);
    }
    int j = n1 - m2;
    SVec z = ring_mul(spec.base, x, alpha_pow(j, ring_mul(spec.base, qk, y)));
    return canonicalize(m1, z, j + n2);
  }

  std::optional<Element> mul(int la, int lb) const {
    CsTriple prod = raw_mul(triple_of_label[la], triple_of_label[lb]);
    return triple_element(prod);
  }

  std::optional<Element> triple_element(const CsTriple& t) const {
    int deg = t.m - t.n;
    SVec payload = project_payload(deg, t.payload);
    if (payload.is_zero()) return Element{};
    if (!spec.window.contains(deg)) return std::nullopt;
    auto coeffs = in_span(payload, payload_basis.at(deg), base_field());
    if (!coeffs) throw InconsistencyError("payload escapes its degree space");
    Element out;
    for (const auto& [pos, c] : *coeffs) out.add_term(label.at({deg, pos}), c);
    return out;
  }
};

}  // namespace

CornerSkewAlgebra build_corner_skew(const CornerSkewSpec& spec) {
  const Field& f = spec.base.field;
  const CoeffRing& R = spec.base;
  int d = R.dim();
  // spec invariants
  for (int k = 0; k < d; ++k) {
    SVec e = SVec::unit(k, Scalar::one(f));
    if (ring_mul(R, spec.unit, e) != e || ring_mul(R, e, spec.unit) != e)
      throw PreconditionError("unit coordinates do not act as identity");
  }
  if (ring_mul(R, spec.idem, spec.idem) != spec.idem) throw PreconditionError("p is not idempotent");
  if (static_cast<int>(spec.alpha.size()) != d) throw PreconditionError("alpha image count mismatch");
  auto apply = [&](const SVec& x) {
    SVec out;
    for (const auto& [k, c] : x.terms()) out.add_scaled(spec.alpha[k], c);
    return out;
  };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (apply(R.mul[i][j]) != ring_mul(R, spec.alpha[i], spec.alpha[j]))
        throw PreconditionError("alpha is not multiplicative");
  if (span_rank(spec.alpha, f) != d) throw PreconditionError("alpha is not injective");
  std::vector<SVec> corner;
  for (int k = 0; k < d; ++k)
    corner.push_back(ring_mul(R, ring_mul(R, spec.idem, SVec::unit(k, Scalar::one(f))), spec.idem));
  if (!same_span(spec.alpha, corner, f)) throw PreconditionError("alpha image is not pRp");

  auto data = std::make_shared<CsData>();
  data->spec = spec;
  for (int deg = spec.window.min_deg; deg <= spec.window.max_deg; ++deg) {
    std::vector<SVec> gens;
    for (int k = 0; k < d; ++k) gens.push_back(data->project_payload(deg, SVec::unit(k, Scalar::one(f))));
    data->payload_basis[deg] = span_basis(gens, f);
  }
  auto A = std::make_shared<GradedAlgebra>(f, spec.window, spec.name);
  auto fmt = [&](const SVec& v) { return format_svec(v, R.names); };
  for (int deg = spec.window.min_deg; deg <= spec.window.max_deg; ++deg) {
    const auto& basis = data->payload_basis[deg];
    for (size_t i = 0; i < basis.size(); ++i) {
      std::string nm;
      if (deg > 0)
        nm = "t-^" + std::to_string(deg) + " phi(" + fmt(basis[i]) + ")";
      else if (deg < 0)
        nm = "phi(" + fmt(basis[i]) + ") t+^" + std::to_string(-deg);
      else
        nm = "phi(" + fmt(basis[i]) + ")";
      int lab = A->add_label(nm, deg);
      data->label[{deg, static_cast<int>(i)}] = lab;
      CsTriple t;
      t.payload = basis[i];
      if (deg > 0)
        t.m = deg;
      else
        t.n = -deg;
      if (static_cast<int>(data->triple_of_label.size()) <= lab) data->triple_of_label.resize(lab + 1);
      data->triple_of_label[lab] = t;
    }
  }
  A->set_product([keep = std::shared_ptr<const CsData>(data)](int a, int b) { return keep->mul(a, b); });

  CornerSkewAlgebra out;
  out.A = A;
  out.spec = spec;
  out.impl = data;
  return out;
}

Element CornerSkewAlgebra::label_for(const CsTriple& t) const {
  auto d = std::static_pointer_cast<const CsData>(impl);
  auto e = d->triple_element(t);
  if (!e) throw WindowError("triple degree outside the window");
  return *e;
}

std::vector<CsTriple> corner_skew_reduce(const CornerSkewAlgebra& cs, const std::vector<CsSymbol>& word) {
  auto d = std::static_pointer_cast<const CsData>(cs.impl);
  const Field& f = d->base_field();
  // element = combination of canonical triples, keyed by (m, n)
  std::map<std::pair<int, int>, SVec> acc;
  acc[{0, 0}] = cs.spec.unit;
  for (const CsSymbol& sym : word) {
    CsTriple s;
    switch (sym.kind) {
      case CsSymbol::tminus:
        s.m = 1;
        s.payload = cs.spec.unit;
        break;
      case CsSymbol::tplus:
        s.n = 1;
        s.payload = cs.spec.unit;
        break;
      case CsSymbol::phi:
        s.payload = sym.r;
        break;
    }
    s = d->canonicalize(s.m, s.payload, s.n);
    std::map<std::pair<int, int>, SVec> next;
    for (const auto& [mn, payload] : acc) {
      CsTriple t{mn.first, mn.second, payload};
      CsTriple prod = d->raw_mul(t, s);
      if (prod.payload.is_zero()) continue;
      auto& slot = next[{prod.m, prod.n}];
      slot.add(prod.payload);
      if (slot.is_zero()) next.erase({prod.m, prod.n});
    }
    acc = std::move(next);
  }
  (void)f;
  std::vector<CsTriple> out;
  for (const auto& [mn, payload] : acc) {
    if (payload.is_zero()) continue;
    out.push_back(CsTriple{mn.first, mn.second, payload});
  }
  return out;
}

Element corner_skew_element(const CornerSkewAlgebra& cs, const std::vector<CsTriple>& triples) {
  auto d = std::static_pointer_cast<const CsData>(cs.impl);
  Element out;
  for (const CsTriple& t : triples) {
    auto e = d->triple_element(t);
    if (!e) throw WindowError("triple degree outside the window");
    out.add(*e);
  }
  return out;
}

// ---- boundary path groupoid ----

FiniteGroupoid boundary_path_groupoid(const Graph& g) {
  if (!g.acyclic()) throw UnsupportedInstanceError("boundary path groupoid requires a finite acyclic graph");
  // all paths, then boundary = paths whose source emits nothing
  std::vector<Path> paths;
  std::map<Path, int> seen;
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    Path p{static_cast<int>(v), {}};
    seen[p] = static_cast<int>(paths.size());
    paths.push_back(p);
  }
  for (size_t head = 0; head < paths.size(); ++head) {
    Path p = paths[head];
    int sv = p.source(g);
    for (size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].range != sv) continue;
      Path q = p;
      q.edges.push_back(static_cast<int>(e));
      if (!seen.count(q)) {
        seen[q] = static_cast<int>(paths.size());
        paths.push_back(q);
      }
    }
  }
  std::vector<Path> boundary;
  for (const Path& p : paths)
    if (g.incoming(p.source(g)).empty()) boundary.push_back(p);
  std::sort(boundary.begin(), boundary.end(), [&](const Path& a, const Path& b) {
    return std::make_pair(a.len(), path_str(g, a)) < std::make_pair(b.len(), path_str(g, b));
  });

  FiniteGroupoid G;
  std::map<std::pair<int, int>, int> id;  // (x idx, y idx) -> arrow
  int nb = static_cast<int>(boundary.size());
  for (int x = 0; x < nb; ++x)
    for (int y = 0; y < nb; ++y) {
      if (boundary[x].source(g) != boundary[y].source(g)) continue;
      int a = G.n();
      id[{x, y}] = a;
      int m = boundary[x].len() - boundary[y].len();
      G.names.push_back("(" + path_str(g, boundary[x]) + "," + std::to_string(m) + "," + path_str(g, boundary[y]) + ")");
      G.cocycle.push_back(m);
      G.r.push_back(0);
      G.s.push_back(0);
      G.inv.push_back(0);
      if (x == y) G.units.push_back(a);
    }
  for (const auto& [xy, a] : id) {
    auto [x, y] = xy;
    G.r[a] = id.at({x, x});
    G.s[a] = id.at({y, y});
    G.inv[a] = id.at({y, x});
    for (int z = 0; z < nb; ++z) {
      auto it = id.find({y, z});
      if (it != id.end()) G.comp[{a, it->second}] = id.at({x, z});
    }
  }
  G.units = sorted_unique(std::move(G.units));
  return G;
}

std::shared_ptr<GradedAlgebra> scalar_algebra(const Field& f, const Window& w) {
  auto A = std::make_shared<GradedAlgebra>(f, w, "K");
  int one = A->add_label("1", 0);
  A->set_product([one, f](int, int) -> std::optional<Element> { return SVec::unit(one, Scalar::one(f)); });
  return A;
}

CoeffRing split_ring(const Field& f, int n) {
  CoeffRing R;
  R.field = f;
  for (int i = 0; i < n; ++i) R.names.push_back("e" + std::to_string(i + 1));
  R.mul.assign(n, std::vector<SVec>(n));
  for (int i = 0; i < n; ++i) R.mul[i][i] = SVec::unit(i, Scalar::one(f));
  return R;
}

}  // namespace gcp
