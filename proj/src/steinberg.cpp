#include "gcp/steinberg.hpp"

#include <algorithm>

#include "gcp/error.hpp"

namespace gcp {

SteinbergElement convolve(const FiniteGroupoid& G, const SteinbergElement& f, const SteinbergElement& g) {
  SteinbergElement out;
  for (const auto& [a, ca] : f.terms())
    for (const auto& [b, cb] : g.terms())
      if (G.composable(a, b)) out.add_term(G.compose(a, b), ca * cb);
  return out;
}

bool check_bisection(const FiniteGroupoid& G, const ArrowSet& B) {
  std::vector<int> seen_r, seen_s;
  for (int a : B) {
    seen_r.push_back(G.r[a]);
    seen_s.push_back(G.s[a]);
  }
  std::sort(seen_r.begin(), seen_r.end());
  std::sort(seen_s.begin(), seen_s.end());
  return std::adjacent_find(seen_r.begin(), seen_r.end()) == seen_r.end() &&
         std::adjacent_find(seen_s.begin(), seen_s.end()) == seen_s.end();
}

SteinbergElement cocycle_component(const FiniteGroupoid& G, const SteinbergElement& f, int n) {
  SteinbergElement out;
  for (const auto& [a, c] : f.terms())
    if (G.cocycle[a] == n) out.add_term(a, c);
  return out;
}

SVec indicator(const FiniteGroupoid& G, const ArrowSet& B, const Field& f) {
  (void)G;
  SVec out;
  for (int a : B) out.add_term(a, Scalar::one(f));
  return out;
}

std::shared_ptr<GradedAlgebra> steinberg_algebra(const FiniteGroupoid& G, const Field& f, int max_word_len) {
  Window w;
  w.min_deg = G.min_degree();
  w.max_deg = G.max_degree();
  w.max_word_len = max_word_len;
  auto A = std::make_shared<GradedAlgebra>(f, w, "A_K(G)");
  for (int a = 0; a < G.n(); ++a) A->add_label(G.names[a], G.cocycle[a]);
  // copy the needed tables so the algebra does not dangle on the groupoid
  auto comp = std::make_shared<std::map<std::pair<int, int>, int>>(G.comp);
  A->set_product([comp, f](int a, int b) -> std::optional<Element> {
    auto it = comp->find({a, b});
    if (it == comp->end()) return Element{};
    return SVec::unit(it->second, Scalar::one(f));
  });
  return A;
}

std::optional<std::string> validate_htriple(const FiniteGroupoid& G, const HTriple& H) {
  for (int a : H.h0)
    if (G.cocycle[a] != 0) return "H0 contains " + G.names[a] + " of nonzero degree";
  for (int a : H.h1)
    if (G.cocycle[a] != 1) return "H1 contains " + G.names[a] + " of degree != 1";
  for (int a : H.hm1)
    if (G.cocycle[a] != -1) return "H-1 contains " + G.names[a] + " of degree != -1";
  return std::nullopt;
}

namespace {

Element arrows_elem(const std::vector<int>& arrows) {
  Element e;
  Field f;
  for (int a : arrows) e.add_term(a, Scalar::one(f));
  return e;
}

}  // namespace

Verdict check_htriple_products(const FiniteGroupoid& G, const HTriple& H) {
  Verdict v;
  v.pass = true;
  auto contain = [&](const ArrowSet& X, const ArrowSet& Y, const ArrowSet& target, const std::string& what) {
    if (!v.pass) return;
    for (int a : X)
      for (int b : Y) {
        if (!G.composable(a, b)) continue;
        int c = G.compose(a, b);
        if (!std::binary_search(target.begin(), target.end(), c)) {
          v.pass = false;
          v.detail = what + " fails: " + G.names[a] + " " + G.names[b] + " = " + G.names[c];
          v.witness = {arrows_elem({a}), arrows_elem({b}), arrows_elem({c})};
          return;
        }
      }
  };
  contain(H.h0, H.h0, H.h0, "H0 H0 <= H0");
  contain(H.h0, H.h1, H.h1, "H0 H1 <= H1");
  contain(H.h1, H.h0, H.h1, "H1 H0 <= H1");
  contain(H.h0, H.hm1, H.hm1, "H0 H-1 <= H-1");
  contain(H.hm1, H.h0, H.hm1, "H-1 H0 <= H-1");
  contain(H.hm1, H.h1, H.h0, "H-1 H1 <= H0");
  if (!v.pass) return v;
  ArrowSet needed = set_union(range_set(G, H.h1), source_set(G, H.hm1));
  ArrowSet prod = set_product(G, H.h1, H.hm1);
  for (int u : needed)
    if (!std::binary_search(prod.begin(), prod.end(), u)) {
      v.pass = false;
      v.detail = "r(H1) u s(H-1) <= H1 H-1 fails at unit " + G.names[u];
      v.witness = {arrows_elem({u})};
      return v;
    }
  v.detail = "all product containments hold";
  return v;
}

HypothesisVerdict check_htriple_hypothesis(const FiniteGroupoid& G, const HTriple& H) {
  HypothesisVerdict v;
  ArrowSet unit_space;
  for (int u : G.units) unit_space.push_back(u);
  v.unit_space_fast_path = set_subset(unit_space, H.h0);
  ArrowSet h0h0 = set_product(G, H.h0, H.h0);
  v.subgroupoid_fast_path = set_subset(set_inverse(G, H.h0), H.h0) && set_subset(h0h0, H.h0);
  ArrowSet rh1 = range_set(G, H.h1);
  // singletons suffice: a bisection B <= H0 with s(B) disjoint from r(H1)
  // decomposes into such singletons
  for (int a : H.h0) {
    int sa = G.s[a];
    if (std::binary_search(rh1.begin(), rh1.end(), sa)) continue;
    if (!std::binary_search(H.h0.begin(), H.h0.end(), sa)) {
      v.pass = false;
      v.witness = {a};
      v.detail = "B = {" + G.names[a] + "} has s(B) = {" + G.names[sa] + "} disjoint from r(H1) but s(B) is not in H0";
      return v;
    }
  }
  v.detail = "hypothesis holds on all bisections inside H0";
  if (v.unit_space_fast_path) v.detail += " (fast path: unit space inside H0)";
  if (v.subgroupoid_fast_path) v.detail += " (fast path: H0 is a subgroupoid)";
  return v;
}

GenerationVerdict check_htriple_generation(const FiniteGroupoid& G, const HTriple& H) {
  GenerationVerdict v;
  ArrowSet gens = set_union(set_union(H.h0, H.h1), H.hm1);
  for (int a : gens) v.factorization[a] = {a};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<int, std::vector<int>>> found;
    for (const auto& [a, fa] : v.factorization)
      for (int g : gens) {
        if (!G.composable(a, g)) continue;
        int c = G.compose(a, g);
        if (v.factorization.count(c)) continue;
        std::vector<int> fc = fa;
        fc.push_back(g);
        found.emplace_back(c, fc);
      }
    for (auto& [c, fc] : found)
      if (!v.factorization.count(c)) {
        v.factorization[c] = fc;
        grew = true;
      }
  }
  for (int a = 0; a < G.n(); ++a)
    if (!v.factorization.count(a)) {
      v.pass = false;
      v.unreached = a;
      v.detail = "arrow " + G.names[a] + " is not a product of elements of H0 u H1 u H-1";
      return v;
    }
  v.detail = "all " + std::to_string(G.n()) + " arrows reached";
  return v;
}

IndicatorDecomposition decompose_indicator(const FiniteGroupoid& G, const ArrowSet& C, const std::vector<ArrowSet>& Ds,
                                           bool ordered) {
  if (!check_bisection(G, C)) throw PreconditionError("C is not a bisection");
  struct Fact {
    std::vector<int> mus;
    std::vector<int> dtag;
  };
  auto which_d = [&](int a) -> int {
    for (size_t i = 0; i < Ds.size(); ++i)
      if (std::binary_search(Ds[i].begin(), Ds[i].end(), a)) return static_cast<int>(i);
    return -1;
  };
  auto factor_ordered = [&](int gamma) -> std::optional<Fact> {
    // exactly one factor from each D_i, in order
    struct State {
      int head;  // partial product of the first k factors
      std::vector<int> mus;
    };
    std::vector<State> frontier;
    for (int m : Ds.empty() ? ArrowSet{} : Ds[0]) frontier.push_back({m, {m}});
    for (size_t k = 1; k < Ds.size(); ++k) {
      std::vector<State> next;
      for (const State& st : frontier)
        for (int m : Ds[k]) {
          if (!G.composable(st.head, m)) continue;
          State n2{G.compose(st.head, m), st.mus};
          n2.mus.push_back(m);
          next.push_back(std::move(n2));
        }
      frontier = std::move(next);
    }
    for (const State& st : frontier)
      if (st.head == gamma) {
        Fact f;
        f.mus = st.mus;
        for (size_t i = 0; i < st.mus.size(); ++i) f.dtag.push_back(static_cast<int>(i));
        return f;
      }
    return std::nullopt;
  };
  auto factor_general = [&](int gamma) -> std::optional<Fact> {
    // shortest factorization over the union of the Ds
    std::map<int, Fact> best;
    for (size_t i = 0; i < Ds.size(); ++i)
      for (int m : Ds[i])
        if (!best.count(m)) best[m] = Fact{{m}, {static_cast<int>(i)}};
    if (best.count(gamma)) return best[gamma];
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::pair<int, Fact>> found;
      for (const auto& [a, fa] : best)
        for (size_t i = 0; i < Ds.size(); ++i)
          for (int m : Ds[i]) {
            if (!G.composable(a, m)) continue;
            int c = G.compose(a, m);
            if (best.count(c)) continue;
            Fact fc = fa;
            fc.mus.push_back(m);
            fc.dtag.push_back(static_cast<int>(i));
            found.emplace_back(c, fc);
          }
      for (auto& [c, fc] : found)
        if (!best.count(c)) {
          best[c] = fc;
          grew = true;
        }
      if (best.count(gamma)) return best[gamma];
    }
    return std::nullopt;
  };

  std::vector<Fact> facts;
  for (int gamma : C) {
    auto f = ordered ? factor_ordered(gamma) : factor_general(gamma);
    if (!f) throw NotGeneratedError("arrow " + G.names[gamma] + " does not factor through the given sets");
    facts.push_back(*f);
  }

  // full products (singleton bisections, so each term's product is {gamma_j})
  std::vector<ArrowSet> full_products;
  for (size_t j = 0; j < facts.size(); ++j) {
    ArrowSet prod = {C[j]};
    full_products.push_back(prod);
  }

  IndicatorDecomposition out;
  for (size_t j = 0; j < facts.size(); ++j) {
    const Fact& f = facts[j];
    ArrowSet later;
    for (size_t i = j + 1; i < facts.size(); ++i) later = set_union(later, full_products[i]);
    IndicatorDecomposition::Term term;
    size_t n = f.mus.size();
    ArrowSet prefix;  // product B_1 ... B_{n-1}
    for (size_t i = 0; i + 1 < n; ++i) {
      term.factors.push_back({f.mus[i]});
      term.d_index.push_back(f.dtag[i]);
      prefix = prefix.empty() && i == 0 ? ArrowSet{f.mus[i]} : set_product(G, prefix, {f.mus[i]});
    }
    ArrowSet last = {f.mus[n - 1]};
    ArrowSet cut = n > 1 ? set_product(G, set_inverse(G, prefix), later) : later;
    ArrowSet tilde = set_minus(last, cut);
    term.factors.push_back(tilde);
    term.d_index.push_back(f.dtag[n - 1]);
    out.terms.push_back(std::move(term));
  }
  return out;
}

SVec evaluate_decomposition(const FiniteGroupoid& G, const IndicatorDecomposition& dec, const Field& f) {
  SVec out;
  for (const auto& term : dec.terms) {
    SVec acc;
    bool first = true;
    for (const ArrowSet& B : term.factors) {
      SVec ind = indicator(G, B, f);
      acc = first ? ind : convolve(G, acc, ind);
      first = false;
    }
    if (!first) out.add(acc);
  }
  return out;
}

AnnihilatorResult steinberg_annihilator(const FiniteGroupoid& G, const ArrowSet& h0, const ArrowSet& h1,
                                        const Field& f) {
  AnnihilatorResult out;
  ArrowSet rh1 = range_set(G, h1);
  for (int a : h0)
    if (!std::binary_search(rh1.begin(), rh1.end(), G.s[a])) out.formula_span.push_back(SVec::unit(a, Scalar::one(f)));
  // brute force: kernel of x -> (x * 1_d)_{d in h1} over span{1_a : a in h0}
  int stride = std::max(1, G.n());
  std::vector<SVec> cols;
  for (int a : h0) {
    std::vector<SVec> parts;
    for (int d : h1) parts.push_back(convolve(G, SVec::unit(a, Scalar::one(f)), SVec::unit(d, Scalar::one(f))));
    cols.push_back(stack_vecs(parts, stride));
  }
  for (const SVec& k : kernel(cols, f)) {
    SVec v;
    for (const auto& [pos, c] : k.terms()) v.add_term(h0[pos], c);
    out.brute_force.push_back(v);
  }
  out.brute_force = span_basis(out.brute_force, f);
  out.agree = same_span(out.formula_span, out.brute_force, f);
  return out;
}

UnperforatedVerdict check_unperforated(const FiniteGroupoid& G, int maxN) {
  UnperforatedVerdict v;
  std::vector<int> ones = G.degree_arrows(1);
  std::map<int, std::vector<int>> fact;
  for (int a : ones) fact[a] = {a};
  std::map<int, std::vector<int>> layer = fact;  // arrows reachable with exactly `n` factors
  for (int n = 1; n <= maxN; ++n) {
    if (n > 1) {
      std::map<int, std::vector<int>> next;
      for (const auto& [a, fa] : layer)
        for (int g : ones) {
          if (!G.composable(a, g)) continue;
          int c = G.compose(a, g);
          if (next.count(c)) continue;
          std::vector<int> fc = fa;
          fc.push_back(g);
          next[c] = fc;
        }
      layer = std::move(next);
    }
    for (int a : G.degree_arrows(n)) {
      auto it = layer.find(a);
      if (it == layer.end()) {
        v.pass = false;
        v.fail_degree = n;
        v.fail_arrow = a;
        v.detail = "arrow " + G.names[a] + " of degree " + std::to_string(n) + " is not a product of " +
                   std::to_string(n) + " degree-1 arrows";
        return v;
      }
      v.witness[a] = it->second;
    }
  }
  v.detail = "every positive-degree arrow factors through degree-1 arrows";
  return v;
}

SteinbergRealization steinberg_realization_data(const FiniteGroupoid& G, const HTriple& H, const Field& f,
                                                uint64_t seed, int max_word_len) {
  SteinbergRealization out;
  if (auto err = G.validate()) throw PreconditionError("groupoid axioms fail: " + *err);
  if (auto err = validate_htriple(G, H)) throw PreconditionError(*err);

  out.products = check_htriple_products(G, H);
  out.hypothesis = check_htriple_hypothesis(G, H);
  out.generation = check_htriple_generation(G, H);

  ArrowSet h1inv = set_inverse(G, H.h1);
  for (int a : h1inv)
    if (!std::binary_search(H.hm1.begin(), H.hm1.end(), a)) {
      out.h1_inverse_inside_hm1 = false;
      out.inverse_witness = a;
      break;
    }
  out.remark_applicable =
      set_subset(set_inverse(G, H.h0), H.h0) && set_subset(set_product(G, H.h0, H.h0), H.h0);
  if (out.remark_applicable && out.products.pass) {
    ArrowSet hm1inv = set_inverse(G, H.hm1);
    out.remark_holds = set_subset(h1inv, H.hm1) && set_subset(hm1inv, H.h1);
  }

  out.A = steinberg_algebra(G, f, max_word_len);
  if (out.products.pass && out.hypothesis.pass && out.generation.pass) {
    RealizationData data;
    data.A = out.A;
    data.Rspec.name = "A_K(H0)";
    data.Rspec.closure = Closure::subring;
    for (int a : H.h0) data.Rspec.generators.push_back(out.A->basis_elem(a));
    data.Ispec.name = "A_K(H1)";
    for (int a : H.h1) data.Ispec.generators.push_back(out.A->basis_elem(a));
    data.Jspec.name = "A_K(H-1)";
    for (int a : H.hm1) data.Jspec.generators.push_back(out.A->basis_elem(a));
    out.realization = verify_realization(data, seed);
    out.certificate = out.realization.certificate;
  } else {
    out.certificate = Certificate::refuted;
  }
  return out;
}

}  // namespace gcp
