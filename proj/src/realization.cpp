#include "gcp/realization.hpp"

#include <random>

#include "gcp/error.hpp"

namespace gcp {

std::string certificate_name(Certificate c) {
  switch (c) {
    case Certificate::windowed_certified: return "windowed-certified";
    case Certificate::refuted: return "refuted";
    case Certificate::inconclusive_window: return "inconclusive-window";
  }
  return "?";
}

Verdict check_condition_1(const GradedAlgebra& A, const Subspace& R, const Subspace& I, const Subspace& J) {
  Verdict v;
  const Field& f = A.field();
  Echelon eR(f), eI(f), eJ(f);
  for (const Element& x : R.basis) eR.insert(x);
  for (const Element& x : I.basis) eI.insert(x);
  for (const Element& x : J.basis) eJ.insert(x);
  auto check = [&](const Subspace& X, const Subspace& Y, Echelon& target, const std::string& what) -> bool {
    for (const Element& x : X.basis)
      for (const Element& y : Y.basis) {
        auto p = A.mul(x, y);
        if (!p) throw WindowError("condition (1) product leaves the window");
        if (!target.contains(*p)) {
          v.pass = false;
          v.detail = what + " fails: " + A.format(x) + " * " + A.format(y) + " = " + A.format(*p);
          v.witness = {x, y, *p};
          return false;
        }
      }
    return true;
  };
  v.pass = true;
  if (!check(R, I, eI, "R I <= I")) return v;
  if (!check(I, R, eI, "I R <= I")) return v;
  if (!check(R, J, eJ, "R J <= J")) return v;
  if (!check(J, R, eJ, "J R <= J")) return v;
  if (!check(J, I, eR, "J I <= R")) return v;
  v.detail = "RI, IR <= I; RJ, JR <= J; JI <= R";
  return v;
}

std::optional<Element> find_left_unit_in(const GradedAlgebra& A, const Subspace& W, const Subspace& X) {
  const Field& f = A.field();
  int stride = A.dim();
  std::vector<SVec> cols;
  for (const Element& w : W.basis) {
    std::vector<SVec> parts;
    for (const Element& x : X.basis) {
      auto p = A.mul(w, x);
      if (!p) throw WindowError("unit search product leaves the window");
      parts.push_back(*p);
    }
    cols.push_back(stack_vecs(parts, stride));
  }
  SVec target = stack_vecs(X.basis, stride);
  auto coeffs = in_span(target, cols, f);
  if (!coeffs) return std::nullopt;
  Element a;
  for (const auto& [pos, c] : *coeffs) a.add_scaled(W.basis[pos], c);
  return a;
}

std::optional<Element> find_right_unit_in(const GradedAlgebra& A, const Subspace& W, const Subspace& X) {
  const Field& f = A.field();
  int stride = A.dim();
  std::vector<SVec> cols;
  for (const Element& w : W.basis) {
    std::vector<SVec> parts;
    for (const Element& x : X.basis) {
      auto p = A.mul(x, w);
      if (!p) throw WindowError("unit search product leaves the window");
      parts.push_back(*p);
    }
    cols.push_back(stack_vecs(parts, stride));
  }
  SVec target = stack_vecs(X.basis, stride);
  auto coeffs = in_span(target, cols, f);
  if (!coeffs) return std::nullopt;
  Element a;
  for (const auto& [pos, c] : *coeffs) a.add_scaled(W.basis[pos], c);
  return a;
}

Verdict check_condition_2(const GradedAlgebra& A, const Subspace& I, const Subspace& J) {
  Verdict v;
  Subspace IJ = product_span(A, I, J);
  auto a = find_left_unit_in(A, IJ, I);
  if (!a) {
    v.detail = "no a in span(IJ) with a i = i for the windowed basis of I";
    return v;
  }
  auto b = find_right_unit_in(A, IJ, J);
  if (!b) {
    v.detail = "no b in span(IJ) with j b = j for the windowed basis of J";
    return v;
  }
  v.pass = true;
  v.detail = "a = " + A.format(*a) + "; b = " + A.format(*b);
  v.witness = {*a, *b};
  return v;
}

Verdict check_condition_3(const GradedAlgebra& A, const Subspace& R, const Subspace& I, const Subspace& J) {
  Verdict v;
  const Field& f = A.field();
  Subspace IJ = product_span(A, I, J);
  // footnote: IJ <= R makes the condition trivial
  bool inside = true;
  for (const Element& w : IJ.basis)
    if (!subspace_contains(R, w, f)) {
      inside = false;
      break;
    }
  if (inside) {
    v.pass = true;
    v.detail = "IJ <= R, condition (3) trivially satisfied";
    return v;
  }
  Subspace ann = left_annihilator(A, R, I);
  Subspace annA0 = left_annihilator(A, component_subspace(A, 0), I);
  Subspace perp = perp_ideal(A, R, ann);
  // pairs (r, a) in ann^perp x span(IJ) with r - a annihilating I
  int stride = A.dim();
  std::vector<SVec> cols;
  int nu = perp.dim();
  auto stacked_action = [&](const Element& w, const Scalar& sign) {
    std::vector<SVec> parts;
    for (const Element& x : I.basis) {
      auto p = A.mul(w, x);
      if (!p) throw WindowError("condition (3) product leaves the window");
      parts.push_back(p->scaled(sign));
    }
    return stack_vecs(parts, stride);
  };
  for (const Element& u : perp.basis) cols.push_back(stacked_action(u, Scalar::one(f)));
  for (const Element& w : IJ.basis) cols.push_back(stacked_action(w, -Scalar::one(f)));
  (void)annA0;
  for (const SVec& k : kernel(cols, f)) {
    Element r, a;
    for (const auto& [pos, c] : k.terms()) {
      if (pos < nu)
        r.add_scaled(perp.basis[pos], c);
      else
        a.add_scaled(IJ.basis[pos - nu], c);
    }
    if (!subspace_contains(R, a, f)) {
      v.pass = false;
      v.detail = "counterexample: r = " + A.format(r) + ", a = " + A.format(a) + " with r - a in ann_{A_0}(I) but a not in R";
      v.witness = {r, a};
      return v;
    }
  }
  v.pass = true;
  v.detail = "every compatible a lies in R";
  return v;
}

Verdict check_condition_4(const GradedAlgebra& A, const Subspace& R, const Subspace& I) {
  Verdict v;
  const Field& f = A.field();
  Subspace ann = left_annihilator(A, R, I);
  Subspace perp = perp_ideal(A, R, ann);
  Subspace meet = intersect_subspaces(ann, perp, f);
  if (meet.dim() == 0) {
    v.pass = true;
    v.detail = "ann_R(I) meet ann_R(I)^perp = 0 (ann dim " + std::to_string(ann.dim()) + ", perp dim " +
               std::to_string(perp.dim()) + ")";
    return v;
  }
  v.pass = false;
  v.detail = "nonzero intersection, e.g. " + A.format(meet.basis[0]);
  v.witness = {meet.basis[0]};
  return v;
}

Element from_R_coords(const Subspace& R, const SVec& coords) {
  Element out;
  for (const auto& [pos, c] : coords.terms()) out.add_scaled(R.basis[pos], c);
  return out;
}

BuiltSystem build_system_from_data(const GradedAlgebra& A, const Subspace& R, const Subspace& I, const Subspace& J) {
  BuiltSystem bs;
  const Field& f = A.field();
  auto coords_in = [&](const std::vector<Element>& basis, const Element& x, SVec* out) -> bool {
    auto c = in_span(x, basis, f);
    if (!c) return false;
    SVec v;
    for (const auto& [pos, s] : *c) v.set(pos, s);
    *out = v;
    return true;
  };
  auto sys = std::make_shared<RSystem>();
  sys->R.field = f;
  int rd = R.dim(), pd = J.dim(), qd = I.dim();
  for (const Element& r : R.basis) sys->R.names.push_back(A.format(r));
  for (const Element& j : J.basis) sys->P.names.push_back(A.format(j));
  for (const Element& i : I.basis) sys->Q.names.push_back(A.format(i));
  sys->R.mul.assign(rd, std::vector<SVec>(rd));
  sys->P.lact.assign(rd, std::vector<SVec>(pd));
  sys->P.ract.assign(pd, std::vector<SVec>(rd));
  sys->Q.lact.assign(rd, std::vector<SVec>(qd));
  sys->Q.ract.assign(qd, std::vector<SVec>(rd));
  sys->psi.assign(pd, std::vector<SVec>(qd));
  auto mulAB = [&](const Element& x, const Element& y) -> Element {
    auto p = A.mul(x, y);
    if (!p) throw WindowError("system coordinatization product leaves the window");
    return *p;
  };
  for (int i = 0; i < rd; ++i)
    for (int j = 0; j < rd; ++j)
      if (!coords_in(R.basis, mulAB(R.basis[i], R.basis[j]), &sys->R.mul[i][j])) {
        bs.err = "R is not closed under multiplication";
        return bs;
      }
  for (int r = 0; r < rd; ++r) {
    for (int p = 0; p < pd; ++p)
      if (!coords_in(J.basis, mulAB(R.basis[r], J.basis[p]), &sys->P.lact[r][p]) ||
          !coords_in(J.basis, mulAB(J.basis[p], R.basis[r]), &sys->P.ract[p][r])) {
        bs.err = "J is not an R-bimodule inside the window";
        return bs;
      }
    for (int q = 0; q < qd; ++q)
      if (!coords_in(I.basis, mulAB(R.basis[r], I.basis[q]), &sys->Q.lact[r][q]) ||
          !coords_in(I.basis, mulAB(I.basis[q], R.basis[r]), &sys->Q.ract[q][r])) {
        bs.err = "I is not an R-bimodule inside the window";
        return bs;
      }
  }
  for (int p = 0; p < pd; ++p)
    for (int q = 0; q < qd; ++q)
      if (!coords_in(R.basis, mulAB(J.basis[p], I.basis[q]), &sys->psi[p][q])) {
        bs.err = "JI is not contained in R";
        return bs;
      }
  bs.sys = sys;
  bs.rep.sys = sys.get();
  bs.rep.B = &A;
  bs.rep.S = J.basis;
  bs.rep.T = I.basis;
  bs.rep.sigma = R.basis;
  bs.ok = true;
  return bs;
}

SystemReport pi_null_sample_check(const CovariantRep& rep, uint64_t seed, int trials) {
  SystemReport out;
  const RSystem& sys = *rep.sys;
  const Field& f = sys.R.field;
  auto grid = rank_one_grid(sys);
  int stride = sys.Q.dim() == 0 ? 1 : sys.Q.dim();
  std::vector<SVec> cols;
  std::vector<std::pair<int, int>> idx;
  for (int a = 0; a < sys.Q.dim(); ++a)
    for (int b = 0; b < sys.P.dim(); ++b) {
      cols.push_back(stack_vecs(grid[a][b].matQ, stride));
      idx.emplace_back(a, b);
    }
  std::vector<SVec> null_combos = kernel(cols, f);
  if (null_combos.empty()) {
    out.witness = "rank-one grid is linearly independent; only the trivial null sum exists";
    return out;
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    SVec combo;
    for (const SVec& k : null_combos) {
      long c = static_cast<long>(rng() % 7) - 3;
      combo.add_scaled(k, Scalar(f, c));
    }
    std::vector<FiniteRankOp> parts;
    for (const auto& [pos, c] : combo.terms()) {
      auto [a, b] = idx[pos];
      parts.push_back(rank_one(sys, SVec::unit(a, c), SVec::unit(b, Scalar::one(f))));
    }
    FiniteRankOp op = op_sum(sys, parts);
    if (!matrix_is_zero(op.matQ)) throw InconsistencyError("null sample does not have zero matrix");
    Element img;
    try {
      img = pi_map(rep, op);
    } catch (const InconsistencyError& e) {
      out.pass = false;
      out.witness = e.what();
      return out;
    }
    if (!img.is_zero()) {
      out.pass = false;
      out.witness = "zero operator mapped to nonzero element";
      return out;
    }
  }
  out.witness = std::to_string(trials) + " null sums mapped to zero";
  return out;
}

RealizationReport verify_realization(const RealizationData& data, uint64_t seed) {
  RealizationReport rep;
  const GradedAlgebra& A = *data.A;
  const Field& f = A.field();

  Subspace R = materialize(A, data.Rspec);
  Subspace I = materialize(A, data.Ispec);
  Subspace J = materialize(A, data.Jspec);
  R.name = data.Rspec.name.empty() ? "R" : data.Rspec.name;
  I.name = data.Ispec.name.empty() ? "I" : data.Ispec.name;
  J.name = data.Jspec.name.empty() ? "J" : data.Jspec.name;
  rep.all_saturated = R.saturated && I.saturated && J.saturated && !R.window_truncated && !I.window_truncated &&
                      !J.window_truncated;

  // housing: degrees 0 / 1 / -1
  rep.housing.pass = true;
  auto house = [&](const Subspace& S, int want) {
    for (const Element& x : S.basis) {
      int d = 0;
      if (!A.is_homogeneous(x, &d) || (!x.is_zero() && d != want)) {
        rep.housing.pass = false;
        rep.housing.detail = S.name + " contains " + A.format(x) + " outside degree " + std::to_string(want);
        rep.housing.witness = {x};
      }
    }
  };
  house(R, 0);
  house(I, 1);
  house(J, -1);
  if (rep.housing.pass) rep.housing.detail = "R in A_0, I in A_1, J in A_-1";

  rep.cond1 = check_condition_1(A, R, I, J);
  rep.cond2 = check_condition_2(A, I, J);
  if (rep.cond1.pass) {
    rep.cond3 = check_condition_3(A, R, I, J);
    rep.cond4 = check_condition_4(A, R, I);
  } else {
    rep.cond3.detail = rep.cond4.detail = "skipped: condition (1) failed";
  }

  bool conds = rep.housing.pass && rep.cond1.pass && rep.cond2.pass && rep.cond3.pass && rep.cond4.pass;

  if (conds) {
    BuiltSystem bs = build_system_from_data(A, R, I, J);
    if (!bs.ok) {
      rep.system_ok.pass = false;
      rep.system_ok.detail = bs.err;
    } else {
      SystemReport sr = check_system(*bs.sys);
      rep.system_ok.pass = sr.pass;
      rep.system_ok.detail = sr.pass ? "bimodule and psi axioms hold" : sr.witness;

      std::vector<SVec> fullQ, fullP;
      for (int i = 0; i < bs.sys->Q.dim(); ++i) fullQ.push_back(SVec::unit(i, Scalar::one(f)));
      for (int i = 0; i < bs.sys->P.dim(); ++i) fullP.push_back(SVec::unit(i, Scalar::one(f)));
      auto fs = check_fs(*bs.sys, fullQ, fullP);
      rep.fs.pass = fs.has_value();
      rep.fs.detail = fs ? "Theta and Phi found over the full windowed bases" : "no finite-rank pair fixes the windowed bases";

      SystemReport cr = check_covariant_rep(bs.rep);
      rep.covariant.pass = cr.pass;
      rep.covariant.detail = cr.pass ? "inclusion representation satisfies (i)-(v)" : cr.witness;

      CanonicalIdeal ci = canonical_max_ideal(*bs.sys);
      rep.ideal.pass = ci.hypothesis_ok;
      rep.ideal.detail = ci.hypothesis_ok
                             ? "canonical ideal exists, dim " + std::to_string(ci.basis.size())
                             : "J meet ker Delta != 0; uniquely maximal faithful ideal not certified";
      for (const SVec& c : ci.basis) rep.canonical_ideal.push_back(from_R_coords(R, c));

      // identity: Delta^{-1}(F_J(I)) meet ann^perp = IJ meet R, both sides
      // computed independently
      if (rep.cond3.pass && rep.cond4.pass) {
        std::vector<Element> lhs;
        for (const SVec& c : ci.basis) lhs.push_back(from_R_coords(R, c));
        Subspace IJ = product_span(A, I, J);
        Subspace Rsp = R;
        Subspace rhs = intersect_subspaces(IJ, Rsp, f);
        rep.mmnnbb.pass = same_span(lhs, rhs.basis, f);
        rep.mmnnbb.detail = rep.mmnnbb.pass
                                ? "both sides agree, dim " + std::to_string(rhs.dim())
                                : "left side (dim " + std::to_string(lhs.size()) + ") != right side (dim " +
                                      std::to_string(rhs.dim()) + ")";
        rep.mmnnbb.witness = rhs.basis;
      } else {
        rep.mmnnbb.detail = "skipped: conditions (1)-(4) not all verified";
      }

      if (fs) {
        SystemReport cp = check_cp_invariant(bs.rep, ci.basis);
        rep.cp_invariant.pass = cp.pass;
        rep.cp_invariant.detail = cp.pass ? "pi(Delta(x)) = sigma(x) on the canonical ideal" : cp.witness;
        SystemReport pn = pi_null_sample_check(bs.rep, seed, 20);
        rep.pi_sampled.pass = pn.pass;
        rep.pi_sampled.detail = pn.witness;
      } else {
        rep.cp_invariant.detail = rep.pi_sampled.detail = "skipped: (FS) failed";
      }
    }
  } else {
    rep.system_ok.detail = rep.fs.detail = rep.covariant.detail = rep.ideal.detail = rep.cp_invariant.detail =
        rep.pi_sampled.detail = rep.mmnnbb.detail = "skipped: a theorem condition failed";
  }

  Subspace S = subring_generated(A, {R, I, J});
  rep.generated_dim = S.dim();
  rep.generation.pass = S.saturated && !S.window_truncated;
  rep.generation.detail = "generated subring dim " + std::to_string(S.dim()) +
                          (S.saturated ? ", saturated" : ", not saturated") +
                          (S.window_truncated ? ", window-truncated" : "");
  rep.generates_ambient = S.dim() == A.dim();

  // sigma is the inclusion r -> r, so it kills no nonzero element of R; by
  // the graded uniqueness theorem the induced graded map is injective.
  rep.injectivity.pass = true;
  rep.injectivity.detail = "sigma = inclusion is injective on R; graded uniqueness applies";

  bool all_pass = rep.housing.pass && rep.cond1.pass && rep.cond2.pass && rep.cond3.pass && rep.cond4.pass &&
                  rep.mmnnbb.pass && rep.system_ok.pass && rep.fs.pass && rep.covariant.pass && rep.ideal.pass &&
                  rep.cp_invariant.pass && rep.pi_sampled.pass && rep.injectivity.pass;
  bool saturated = rep.all_saturated && rep.generation.pass;
  if (all_pass && saturated)
    rep.certificate = Certificate::windowed_certified;
  else if (!all_pass)
    rep.certificate = Certificate::refuted;
  else
    rep.certificate = Certificate::inconclusive_window;
  return rep;
}

Grcp1Report check_grcp1(const GradedAlgebra& A, uint64_t seed) {
  Grcp1Report out;
  const Field& f = A.field();
  const Window& w = A.window();
  Subspace A1 = component_subspace(A, 1);
  Subspace Am1 = component_subspace(A, -1);
  Subspace A0 = component_subspace(A, 0);

  out.powers.pass = true;
  {
    Subspace power = A1;
    for (int n = 2; n <= w.max_deg && out.powers.pass; ++n) {
      power = product_span(A, power, A1);
      if (!same_subspace(power, component_subspace(A, n), f)) {
        out.powers.pass = false;
        out.powers.detail = "A_" + std::to_string(n) + " != A_1^" + std::to_string(n);
      }
    }
    power = Am1;
    for (int n = 2; n <= -w.min_deg && out.powers.pass; ++n) {
      power = product_span(A, power, Am1);
      if (!same_subspace(power, component_subspace(A, -n), f)) {
        out.powers.pass = false;
        out.powers.detail = "A_-" + std::to_string(n) + " != A_-1^" + std::to_string(n);
      }
    }
    if (out.powers.pass) out.powers.detail = "components are powers of A_1 and A_-1 in the window";
  }

  {
    Subspace IJ = product_span(A, A1, Am1);
    auto r = find_left_unit_in(A, IJ, A1);
    auto s = find_right_unit_in(A, IJ, Am1);
    out.local_pair.pass = r && s;
    if (out.local_pair.pass) {
      out.local_pair.detail = "r = " + A.format(*r) + "; s = " + A.format(*s);
      out.local_pair.witness = {*r, *s};
    } else {
      out.local_pair.detail = "no fixing pair inside A_1 A_-1";
    }
  }

  {
    Subspace ann = left_annihilator(A, A0, A1);
    Subspace perp = perp_ideal(A, A0, ann);
    Subspace meet = intersect_subspaces(ann, perp, f);
    out.ann_meet.pass = meet.dim() == 0;
    out.ann_meet.detail = out.ann_meet.pass ? "ann meet perp = 0"
                                            : "nonzero element " + A.format(meet.basis[0]);
    if (!out.ann_meet.pass) out.ann_meet.witness = {meet.basis[0]};
  }

  out.applicable = out.powers.pass && out.local_pair.pass && out.ann_meet.pass;
  if (out.applicable) {
    RealizationData data;
    // the report only borrows A for the duration of the call
    data.A = std::shared_ptr<const GradedAlgebra>(&A, [](const GradedAlgebra*) {});
    data.Rspec.generators = A0.basis;
    data.Rspec.closure = Closure::subring;
    data.Rspec.name = "A_0";
    data.Ispec.generators = A1.basis;
    data.Ispec.name = "A_1";
    data.Jspec.generators = Am1.basis;
    data.Jspec.name = "A_-1";
    out.realization = verify_realization(data, seed);
    out.certificate = out.realization.certificate;
  } else {
    out.certificate = Certificate::refuted;
  }
  return out;
}

Grcp2Report check_grcp2(const GradedAlgebra& A, const GradedHom& phi) {
  Grcp2Report out;
  const Field& f = A.field();
  if (phi.domain != &A || !phi.target || static_cast<int>(phi.images.size()) != A.dim())
    throw PreconditionError("homomorphism images do not match the algebra basis");
  const GradedAlgebra& B = *phi.target;

  // phi must be graded: images homogeneous of the label's degree
  for (int l = 0; l < A.dim(); ++l) {
    int d = 0;
    if (!B.is_homogeneous(phi.images[l], &d) || (!phi.images[l].is_zero() && d != A.degree(l)))
      throw PreconditionError("map is not graded at label " + A.label_name(l));
  }
  auto apply = [&](const Element& x) {
    Element out_el;
    for (const auto& [l, c] : x.terms()) out_el.add_scaled(phi.images[l], c);
    return out_el;
  };
  // and multiplicative on windowed pairs
  for (int a = 0; a < A.dim(); ++a)
    for (int b = 0; b < A.dim(); ++b) {
      auto p = A.mul_labels(a, b);
      if (!p) continue;
      auto q = B.mul(phi.images[a], phi.images[b]);
      if (!q) continue;
      if (apply(*p) != *q) throw PreconditionError("map is not multiplicative at (" + A.label_name(a) + "," + A.label_name(b) + ")");
    }

  StronglyGradedResult sg = check_strongly_graded(A);
  if (!sg.strongly) {
    out.status = Grcp2Status::not_applicable;
    out.detail = "algebra is not strongly graded in the window: " + sg.detail;
    return out;
  }
  std::vector<Element> all_basis;
  for (int l = 0; l < A.dim(); ++l) all_basis.push_back(A.basis_elem(l));
  auto unit = check_graded_local_units(A, all_basis);
  if (!unit) {
    out.status = Grcp2Status::not_applicable;
    out.detail = "no graded local units found in the window";
    return out;
  }

  // injectivity on A_0
  auto degree_kernel_dim = [&](int n) {
    std::vector<SVec> cols;
    for (int l : A.degree_component(n)) cols.push_back(phi.images[l]);
    return static_cast<int>(kernel(cols, f).size());
  };
  if (degree_kernel_dim(0) != 0) {
    out.status = Grcp2Status::not_applicable;
    out.detail = "phi is not injective on the windowed A_0; the corollary does not apply";
    return out;
  }
  for (int n = A.window().min_deg; n <= A.window().max_deg; ++n) {
    if (degree_kernel_dim(n) != 0) {
      out.status = Grcp2Status::refuted;
      out.detail = "nonzero kernel in degree " + std::to_string(n) +
                   " despite injectivity on A_0; the instance contradicts the corollary";
      return out;
    }
  }
  out.status = Grcp2Status::injective_everywhere;
  out.detail = "windowed kernel is zero in every degree";
  return out;
}

}  // namespace gcp
