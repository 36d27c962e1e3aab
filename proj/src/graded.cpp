#include "gcp/graded.hpp"

#include "gcp/error.hpp"

namespace gcp {

int GradedAlgebra::add_label(const std::string& name, int degree) {
  if (!w_.contains(degree))
    throw WindowError("label '" + name + "' has degree " + std::to_string(degree) + " outside the window");
  if (ids_.count(name)) throw PreconditionError("duplicate label '" + name + "'");
  int id = dim();
  names_.push_back(name);
  degrees_.push_back(degree);
  ids_[name] = id;
  by_degree_[degree].push_back(id);
  return id;
}

int GradedAlgebra::label_id(const std::string& name) const {
  auto it = ids_.find(name);
  return it == ids_.end() ? -1 : it->second;
}

std::vector<int> GradedAlgebra::degree_component(int n) const {
  if (!w_.contains(n)) throw WindowError("degree " + std::to_string(n) + " outside the window of " + name_);
  auto it = by_degree_.find(n);
  return it == by_degree_.end() ? std::vector<int>{} : it->second;
}

std::optional<Element> GradedAlgebra::mul_labels(int a, int b) const {
  auto key = std::make_pair(a, b);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  if (!product_) throw PreconditionError("algebra '" + name_ + "' has no product");
  std::optional<Element> r = product_(a, b);
  memo_.emplace(key, r);
  return r;
}

std::optional<Element> GradedAlgebra::mul(const Element& x, const Element& y) const {
  Element acc;
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) {
      std::optional<Element> p = mul_labels(a, b);
      if (!p) return std::nullopt;
      acc.add_scaled(*p, ca * cb);
    }
  }
  return acc;
}

bool GradedAlgebra::is_homogeneous(const Element& x, int* deg) const {
  if (x.is_zero()) {
    if (deg) *deg = 0;
    return true;
  }
  int d = degree(x.terms().begin()->first);
  for (const auto& [l, c] : x.terms()) {
    (void)c;
    if (degree(l) != d) return false;
  }
  if (deg) *deg = d;
  return true;
}

std::map<int, Element> GradedAlgebra::degree_split(const Element& x) const {
  std::map<int, Element> parts;
  for (const auto& [l, c] : x.terms()) parts[degree(l)].add_term(l, c);
  return parts;
}

GradingReport check_grading(const GradedAlgebra& A) {
  GradingReport rep;
  int n = A.dim();
  for (int a = 0; a < n && rep.pass; ++a) {
    for (int b = 0; b < n && rep.pass; ++b) {
      int d = A.degree(a) + A.degree(b);
      if (!A.window().contains(d)) continue;
      std::optional<Element> p = A.mul_labels(a, b);
      if (!p) {
        ++rep.pairs_skipped;
        continue;
      }
      ++rep.pairs_checked;
      for (const auto& [l, c] : p->terms()) {
        (void)c;
        if (A.degree(l) != d) {
          rep.pass = false;
          rep.wa = a;
          rep.wb = b;
          rep.witness = "product " + A.label_name(a) + " * " + A.label_name(b) + " = " + A.format(*p) +
                        " contains label of degree " + std::to_string(A.degree(l)) + ", expected " + std::to_string(d);
          break;
        }
      }
    }
  }
  if (!rep.pass) return rep;
  for (int a = 0; a < n && rep.pass; ++a) {
    for (int b = 0; b < n && rep.pass; ++b) {
      std::optional<Element> ab = A.mul_labels(a, b);
      for (int c = 0; c < n && rep.pass; ++c) {
        if (!A.window().contains(A.degree(a) + A.degree(b) + A.degree(c))) continue;
        std::optional<Element> bc = A.mul_labels(b, c);
        if (!ab || !bc) {
          ++rep.triples_skipped;
          continue;
        }
        std::optional<Element> l = A.mul(*ab, A.basis_elem(c));
        std::optional<Element> r = A.mul(A.basis_elem(a), *bc);
        if (!l || !r) {
          ++rep.triples_skipped;
          continue;
        }
        ++rep.triples_checked;
        if (*l != *r) {
          rep.pass = false;
          rep.wa = a;
          rep.wb = b;
          rep.wc = c;
          rep.witness = "associativity fails on (" + A.label_name(a) + ", " + A.label_name(b) + ", " +
                        A.label_name(c) + "): " + A.format(*l) + " vs " + A.format(*r);
        }
      }
    }
  }
  return rep;
}

StronglyGradedResult check_strongly_graded(const GradedAlgebra& A) {
  StronglyGradedResult res;
  const Window& w = A.window();
  for (int m = w.min_deg; m <= w.max_deg; ++m) {
    for (int n = w.min_deg; n <= w.max_deg; ++n) {
      if (!w.contains(m + n)) continue;
      std::vector<int> target = A.degree_component(m + n);
      if (target.empty()) continue;
      std::vector<SVec> prods;
      for (int a : A.degree_component(m)) {
        for (int b : A.degree_component(n)) {
          std::optional<Element> p = A.mul_labels(a, b);
          if (!p) {
            ++res.pairs_skipped;
            continue;
          }
          if (!p->is_zero()) prods.push_back(*p);
        }
      }
      Echelon e(A.field());
      for (const auto& p : prods) e.insert(p);
      for (int l : target) {
        if (!e.contains(A.basis_elem(l))) {
          res.strongly = false;
          res.m = m;
          res.n = n;
          res.unreached_label = l;
          res.detail = "A_" + std::to_string(m) + " * A_" + std::to_string(n) + " misses " + A.label_name(l);
          return res;
        }
      }
    }
  }
  return res;
}

std::optional<Element> check_graded_local_units(const GradedAlgebra& A, const std::vector<Element>& xs) {
  const Field& f = A.field();
  if (xs.empty()) return Element{};
  auto absorbs = [&](const Element& e) -> bool {
    std::optional<Element> ee = A.mul(e, e);
    if (!ee || *ee != e) return false;
    for (const Element& x : xs) {
      std::optional<Element> ex = A.mul(e, x);
      std::optional<Element> xe = A.mul(x, e);
      if (!ex || !xe || *ex != x || *xe != x) return false;
      std::optional<Element> exe = A.mul(*ex, e);
      if (!exe || *exe != x) return false;
    }
    return true;
  };

  // orthogonal family of idempotent degree-0 labels
  std::vector<int> family;
  for (int l : A.degree_component(0)) {
    std::optional<Element> ll = A.mul_labels(l, l);
    if (!ll || *ll != A.basis_elem(l)) continue;
    bool orth = true;
    for (int m : family) {
      std::optional<Element> lm = A.mul_labels(l, m);
      std::optional<Element> ml = A.mul_labels(m, l);
      if (!lm || !ml || !lm->is_zero() || !ml->is_zero()) {
        orth = false;
        break;
      }
    }
    if (orth) family.push_back(l);
  }
  Element cand;
  for (int l : family) {
    bool needed = false;
    for (const Element& x : xs) {
      std::optional<Element> lx = A.mul(A.basis_elem(l), x);
      std::optional<Element> xl = A.mul(x, A.basis_elem(l));
      if ((lx && !lx->is_zero()) || (xl && !xl->is_zero())) {
        needed = true;
        break;
      }
    }
    if (needed) cand.add_term(l, Scalar::one(f));
  }
  if (absorbs(cand)) return cand;

  // fallback: solve e*x = x and x*e = x linearly over the degree-0 component
  // and test the particular solution for idempotency
  std::vector<int> comp0 = A.degree_component(0);
  int stride = A.dim();
  std::vector<SVec> cols;
  SVec target;
  for (int l : comp0) {
    std::vector<SVec> parts;
    for (const Element& x : xs) {
      std::optional<Element> lx = A.mul(A.basis_elem(l), x);
      std::optional<Element> xl = A.mul(x, A.basis_elem(l));
      if (!lx || !xl) return std::nullopt;
      parts.push_back(*lx);
      parts.push_back(*xl);
    }
    cols.push_back(stack_vecs(parts, stride));
  }
  {
    std::vector<SVec> parts;
    for (const Element& x : xs) {
      parts.push_back(x);
      parts.push_back(x);
    }
    target = stack_vecs(parts, stride);
  }
  auto coeffs = in_span(target, cols, f);
  if (!coeffs) return std::nullopt;
  Element e;
  for (const auto& [pos, c] : *coeffs) e.add_term(comp0[pos], c);
  if (absorbs(e)) return e;
  return std::nullopt;
}

Subspace materialize(const GradedAlgebra& A, const SubspaceSpec& spec) {
  Subspace out;
  out.name = spec.name;
  Echelon e(A.field());
  for (const Element& g : spec.generators) e.insert(g);
  if (spec.closure == Closure::none) {
    out.basis = e.basis();
    return out;
  }
  std::vector<Element> gen_basis = e.basis();
  bool truncated = false;
  bool fixed = false;
  for (int step = 0; step < A.window().max_word_len && !fixed; ++step) {
    int rank_before = e.rank();
    std::vector<Element> cur = e.basis();
    auto push = [&](const std::optional<Element>& p) {
      if (!p) {
        truncated = true;
        return;
      }
      e.insert(*p);
    };
    for (const Element& b : cur) {
      switch (spec.closure) {
        case Closure::left_ideal:
          for (int l = 0; l < A.dim(); ++l) push(A.mul(A.basis_elem(l), b));
          break;
        case Closure::right_ideal:
          for (int l = 0; l < A.dim(); ++l) push(A.mul(b, A.basis_elem(l)));
          break;
        case Closure::two_sided:
          for (int l = 0; l < A.dim(); ++l) {
            push(A.mul(A.basis_elem(l), b));
            push(A.mul(b, A.basis_elem(l)));
          }
          break;
        case Closure::subring:
          for (const Element& g : gen_basis) push(A.mul(b, g));
          break;
        case Closure::none:
          break;
      }
    }
    fixed = e.rank() == rank_before;
  }
  out.basis = e.basis();
  out.saturated = fixed;
  out.window_truncated = truncated;
  return out;
}

Subspace component_subspace(const GradedAlgebra& A, int deg) {
  Subspace s;
  s.name = "A_" + std::to_string(deg);
  for (int l : A.degree_component(deg)) s.basis.push_back(A.basis_elem(l));
  return s;
}

Subspace product_span(const GradedAlgebra& A, const Subspace& X, const Subspace& Y) {
  Subspace out;
  out.window_truncated = X.window_truncated || Y.window_truncated;
  Echelon e(A.field());
  for (const Element& x : X.basis) {
    for (const Element& y : Y.basis) {
      std::optional<Element> p = A.mul(x, y);
      if (!p) {
        out.window_truncated = true;
        continue;
      }
      e.insert(*p);
    }
  }
  out.basis = e.basis();
  return out;
}

Subspace left_annihilator(const GradedAlgebra& A, const Subspace& R, const Subspace& I) {
  int stride = A.dim();
  std::vector<SVec> cols;
  for (const Element& r : R.basis) {
    std::vector<SVec> parts;
    for (const Element& x : I.basis) {
      std::optional<Element> p = A.mul(r, x);
      if (!p) throw WindowError("annihilator product leaves the window");
      parts.push_back(*p);
    }
    cols.push_back(stack_vecs(parts, stride));
  }
  Subspace out;
  out.name = "ann(" + I.name + ")";
  out.window_truncated = R.window_truncated || I.window_truncated;
  std::vector<Element> found;
  for (const SVec& k : kernel(cols, A.field())) {
    Element v;
    for (const auto& [pos, c] : k.terms()) v.add_scaled(R.basis[pos], c);
    if (!v.is_zero()) found.push_back(std::move(v));
  }
  out.basis = span_basis(found, A.field());
  return out;
}

bool is_two_sided_ideal_of(const GradedAlgebra& A, const Subspace& R, const Subspace& J) {
  Echelon e(A.field());
  for (const Element& y : J.basis) e.insert(y);
  Echelon inR(A.field());
  for (const Element& r : R.basis) inR.insert(r);
  for (const Element& y : J.basis)
    if (!inR.contains(y)) return false;
  for (const Element& r : R.basis) {
    for (const Element& y : J.basis) {
      std::optional<Element> ry = A.mul(r, y);
      std::optional<Element> yr = A.mul(y, r);
      if (!ry || !yr || !e.contains(*ry) || !e.contains(*yr)) return false;
    }
  }
  return true;
}

Subspace perp_ideal(const GradedAlgebra& A, const Subspace& R, const Subspace& J) {
  if (!is_two_sided_ideal_of(A, R, J))
    throw PreconditionError("perp_ideal: '" + J.name + "' is not a two-sided ideal of '" + R.name + "'");
  int stride = A.dim();
  std::vector<SVec> cols;
  for (const Element& r : R.basis) {
    std::vector<SVec> parts;
    for (const Element& y : J.basis) {
      std::optional<Element> ry = A.mul(r, y);
      std::optional<Element> yr = A.mul(y, r);
      if (!ry || !yr) throw WindowError("perp product leaves the window");
      parts.push_back(*ry);
      parts.push_back(*yr);
    }
    cols.push_back(stack_vecs(parts, stride));
  }
  Subspace out;
  out.name = J.name + "^perp";
  out.window_truncated = R.window_truncated || J.window_truncated;
  std::vector<Element> found;
  for (const SVec& k : kernel(cols, A.field())) {
    Element v;
    for (const auto& [pos, c] : k.terms()) v.add_scaled(R.basis[pos], c);
    if (!v.is_zero()) found.push_back(std::move(v));
  }
  out.basis = span_basis(found, A.field());
  return out;
}

Subspace subring_generated(const GradedAlgebra& A, const std::vector<Subspace>& gens) {
  Subspace out;
  out.name = "generated";
  Echelon e(A.field());
  std::vector<Element> gen_basis;
  for (const Subspace& g : gens) {
    out.window_truncated = out.window_truncated || g.window_truncated;
    for (const Element& v : g.basis) e.insert(v);
  }
  gen_basis = e.basis();
  bool fixed = gen_basis.empty();
  for (int len = 2; len <= A.window().max_word_len && !fixed; ++len) {
    int rank_before = e.rank();
    std::vector<Element> cur = e.basis();
    for (const Element& b : cur) {
      for (const Element& g : gen_basis) {
        std::optional<Element> p = A.mul(b, g);
        if (!p) {
          out.window_truncated = true;
          continue;
        }
        e.insert(*p);
      }
    }
    fixed = e.rank() == rank_before;
  }
  out.basis = e.basis();
  out.saturated = fixed;
  return out;
}

bool subspace_contains(const Subspace& S, const Element& x, const Field& f) {
  Echelon e(f);
  for (const Element& b : S.basis) e.insert(b);
  return e.contains(x);
}

bool same_subspace(const Subspace& a, const Subspace& b, const Field& f) { return same_span(a.basis, b.basis, f); }

Subspace intersect_subspaces(const Subspace& a, const Subspace& b, const Field& f) {
  Subspace out;
  out.basis = span_intersect(a.basis, b.basis, f);
  out.window_truncated = a.window_truncated || b.window_truncated;
  out.saturated = a.saturated && b.saturated;
  return out;
}

}  // namespace gcp
