#include "gcp/rsystem.hpp"

#include "gcp/error.hpp"

namespace gcp {

SVec ring_mul(const CoeffRing& R, const SVec& x, const SVec& y) {
  SVec out;
  for (const auto& [i, ci] : x.terms())
    for (const auto& [j, cj] : y.terms()) out.add_scaled(R.mul[i][j], ci * cj);
  return out;
}

SVec lact_apply(const Bimodule& M, const SVec& r, const SVec& m) {
  SVec out;
  for (const auto& [i, ci] : r.terms())
    for (const auto& [j, cj] : m.terms()) out.add_scaled(M.lact[i][j], ci * cj);
  return out;
}

SVec ract_apply(const Bimodule& M, const SVec& m, const SVec& r) {
  SVec out;
  for (const auto& [j, cj] : m.terms())
    for (const auto& [i, ci] : r.terms()) out.add_scaled(M.ract[j][i], ci * cj);
  return out;
}

SVec psi_eval(const RSystem& sys, const SVec& p, const SVec& q) {
  SVec out;
  for (const auto& [i, ci] : p.terms())
    for (const auto& [j, cj] : q.terms()) out.add_scaled(sys.psi[i][j], ci * cj);
  return out;
}

static SVec unit_vec(const Field& f, int k) { return SVec::unit(k, Scalar::one(f)); }

SystemReport check_system(const RSystem& sys) {
  SystemReport rep;
  const Field& f = sys.R.field;
  const CoeffRing& R = sys.R;
  int d = R.dim();
  auto fail = [&](const std::string& w) {
    rep.pass = false;
    rep.witness = w;
  };
  for (int i = 0; i < d && rep.pass; ++i)
    for (int j = 0; j < d && rep.pass; ++j)
      for (int k = 0; k < d && rep.pass; ++k) {
        SVec a = ring_mul(R, R.mul[i][j], unit_vec(f, k));
        SVec b = ring_mul(R, unit_vec(f, i), R.mul[j][k]);
        if (a != b) fail("ring associativity fails at (" + R.names[i] + "," + R.names[j] + "," + R.names[k] + ")");
      }
  auto check_module = [&](const Bimodule& M, const std::string& nm) {
    int md = M.dim();
    for (int i = 0; i < d && rep.pass; ++i)
      for (int j = 0; j < d && rep.pass; ++j)
        for (int m = 0; m < md && rep.pass; ++m) {
          SVec a = lact_apply(M, R.mul[i][j], unit_vec(f, m));
          SVec b = lact_apply(M, unit_vec(f, i), M.lact[j][m]);
          if (a != b) fail(nm + ": (r r') m != r (r' m) at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(m) + ")");
          SVec c = ract_apply(M, unit_vec(f, m), R.mul[i][j]);
          SVec e = ract_apply(M, M.ract[m][i], unit_vec(f, j));
          if (c != e) fail(nm + ": m (r r') != (m r) r' at (" + std::to_string(m) + "," + std::to_string(i) + "," + std::to_string(j) + ")");
          SVec g = ract_apply(M, M.lact[i][m], unit_vec(f, j));
          SVec h = lact_apply(M, unit_vec(f, i), M.ract[m][j]);
          if (g != h) fail(nm + ": (r m) r' != r (m r') at (" + std::to_string(i) + "," + std::to_string(m) + "," + std::to_string(j) + ")");
        }
  };
  check_module(sys.P, "P");
  check_module(sys.Q, "Q");
  int pd = sys.P.dim(), qd = sys.Q.dim();
  for (int r = 0; r < d && rep.pass; ++r)
    for (int i = 0; i < pd && rep.pass; ++i)
      for (int j = 0; j < qd && rep.pass; ++j) {
        SVec lhs = psi_eval(sys, sys.P.lact[r][i], unit_vec(f, j));
        SVec rhs = ring_mul(R, unit_vec(f, r), sys.psi[i][j]);
        if (lhs != rhs) {
          rep.pass = false;
          rep.witness = "psi(r p (x) q) != r psi(p (x) q) at (" + R.names[r] + "," + sys.P.names[i] + "," + sys.Q.names[j] + ")";
          break;
        }
        lhs = psi_eval(sys, unit_vec(f, i), sys.Q.ract[j][r]);
        rhs = ring_mul(R, sys.psi[i][j], unit_vec(f, r));
        if (lhs != rhs) {
          rep.pass = false;
          rep.witness = "psi(p (x) q r) != psi(p (x) q) r at (" + sys.P.names[i] + "," + sys.Q.names[j] + "," + R.names[r] + ")";
          break;
        }
        lhs = psi_eval(sys, sys.P.ract[i][r], unit_vec(f, j));
        rhs = psi_eval(sys, unit_vec(f, i), sys.Q.lact[r][j]);
        if (lhs != rhs) {
          rep.pass = false;
          rep.witness = "psi(p r (x) q) != psi(p (x) r q) at (" + sys.P.names[i] + "," + R.names[r] + "," + sys.Q.names[j] + ")";
          break;
        }
      }
  return rep;
}

// ---- tensor powers ----

namespace {

struct Quotient {
  int dim_outer = 0, dim_inner = 0;
  Echelon relations;
  std::vector<int> coset_keys;
  std::map<int, int> coord;

  Quotient(const Field& f) : relations(f) {}

  int key(int outer, int inner) const { return outer * dim_inner + inner; }
  std::pair<int, int> decode(int k) const { return {k / dim_inner, k % dim_inner}; }

  SVec reduce(const SVec& free_vec) const {
    SVec res = relations.reduce(free_vec);
    SVec out;
    for (const auto& [k, c] : res.terms()) out.set(coord.at(k), c);
    return out;
  }

  void finish() {
    for (int k = 0; k < dim_outer * dim_inner; ++k)
      if (!relations.is_pivot(k)) {
        coord[k] = static_cast<int>(coset_keys.size());
        coset_keys.push_back(k);
      }
  }
};

// quotient of P (x) prev by balancing (p r (x) m) - (p (x) r m)
Quotient build_p_quotient(const RSystem& base, const Bimodule& prev, int cap) {
  const Field& f = base.R.field;
  Quotient q(f);
  q.dim_outer = base.P.dim();
  q.dim_inner = prev.dim();
  if (q.dim_outer * q.dim_inner > cap) throw CapacityError("tensor power free basis exceeds the size cap");
  for (int p = 0; p < base.P.dim(); ++p)
    for (int r = 0; r < base.R.dim(); ++r)
      for (int m = 0; m < prev.dim(); ++m) {
        SVec rel;
        for (const auto& [pp, c] : base.P.ract[p][r].terms()) rel.add_term(q.key(pp, m), c);
        for (const auto& [mm, c] : prev.lact[r][m].terms()) rel.add_term(q.key(p, mm), -c);
        q.relations.insert(rel);
      }
  q.finish();
  return q;
}

// quotient of prev (x) Q by balancing (m r (x) q) - (m (x) r q)
Quotient build_q_quotient(const RSystem& base, const Bimodule& prev, int cap) {
  const Field& f = base.R.field;
  Quotient q(f);
  q.dim_outer = prev.dim();
  q.dim_inner = base.Q.dim();
  if (q.dim_outer * q.dim_inner > cap) throw CapacityError("tensor power free basis exceeds the size cap");
  for (int m = 0; m < prev.dim(); ++m)
    for (int r = 0; r < base.R.dim(); ++r)
      for (int qq = 0; qq < base.Q.dim(); ++qq) {
        SVec rel;
        for (const auto& [mm, c] : prev.ract[m][r].terms()) rel.add_term(q.key(mm, qq), c);
        for (const auto& [q2, c] : base.Q.lact[r][qq].terms()) rel.add_term(q.key(m, q2), -c);
        q.relations.insert(rel);
      }
  q.finish();
  return q;
}

Bimodule ring_as_bimodule(const CoeffRing& R) {
  Bimodule M;
  M.names = R.names;
  M.lact = R.mul;
  M.ract.assign(R.dim(), std::vector<SVec>(R.dim()));
  for (int m = 0; m < R.dim(); ++m)
    for (int r = 0; r < R.dim(); ++r) M.ract[m][r] = R.mul[m][r];
  return M;
}

}  // namespace

TensorPowerSystem tensor_power_system(const RSystem& base, int n, int size_cap) {
  if (n < 0) throw PreconditionError("tensor power must be nonnegative");
  TensorPowerSystem out;
  if (n == 0) {
    out.sys.R = base.R;
    out.sys.P = ring_as_bimodule(base.R);
    out.sys.Q = out.sys.P;
    out.sys.psi.assign(base.R.dim(), std::vector<SVec>(base.R.dim()));
    for (int i = 0; i < base.R.dim(); ++i)
      for (int j = 0; j < base.R.dim(); ++j) out.sys.psi[i][j] = base.R.mul[i][j];
    return out;
  }
  out.sys = base;
  const Field& f = base.R.field;
  for (int level = 2; level <= n; ++level) {
    const RSystem prev = out.sys;
    Quotient pq = build_p_quotient(base, prev.P, size_cap);
    Quotient qq = build_q_quotient(base, prev.Q, size_cap);

    RSystem next;
    next.R = base.R;

    auto pair_name = [](const std::string& a, const std::string& b) { return a + "(x)" + b; };

    next.P.names.reserve(pq.coset_keys.size());
    for (int k : pq.coset_keys) {
      auto [p, m] = pq.decode(k);
      next.P.names.push_back(pair_name(base.P.names[p], prev.P.names[m]));
    }
    next.Q.names.reserve(qq.coset_keys.size());
    for (int k : qq.coset_keys) {
      auto [m, q] = qq.decode(k);
      next.Q.names.push_back(pair_name(prev.Q.names[m], base.Q.names[q]));
    }

    int rd = base.R.dim();
    int npd = static_cast<int>(pq.coset_keys.size());
    int nqd = static_cast<int>(qq.coset_keys.size());
    next.P.lact.assign(rd, std::vector<SVec>(npd));
    next.P.ract.assign(npd, std::vector<SVec>(rd));
    next.Q.lact.assign(rd, std::vector<SVec>(nqd));
    next.Q.ract.assign(nqd, std::vector<SVec>(rd));

    for (int j = 0; j < npd; ++j) {
      auto [p, m] = pq.decode(pq.coset_keys[j]);
      for (int r = 0; r < rd; ++r) {
        SVec fl;  // (r p) (x) m
        for (const auto& [pp, c] : base.P.lact[r][p].terms()) fl.add_term(pq.key(pp, m), c);
        next.P.lact[r][j] = pq.reduce(fl);
        SVec fr;  // p (x) (m r)
        for (const auto& [mm, c] : prev.P.ract[m][r].terms()) fr.add_term(pq.key(p, mm), c);
        next.P.ract[j][r] = pq.reduce(fr);
      }
    }
    for (int j = 0; j < nqd; ++j) {
      auto [m, q] = qq.decode(qq.coset_keys[j]);
      for (int r = 0; r < rd; ++r) {
        SVec fl;  // (r m) (x) q
        for (const auto& [mm, c] : prev.Q.lact[r][m].terms()) fl.add_term(qq.key(mm, q), c);
        next.Q.lact[r][j] = qq.reduce(fl);
        SVec fr;  // m (x) (q r)
        for (const auto& [q2, c] : base.Q.ract[q][r].terms()) fr.add_term(qq.key(m, q2), c);
        next.Q.ract[j][r] = qq.reduce(fr);
      }
    }

    // psi_n((p (x) p') (x) (q' (x) q)) = psi(p . psi_{n-1}(p' (x) q') (x) q)
    next.psi.assign(npd, std::vector<SVec>(nqd));
    for (int i = 0; i < npd; ++i) {
      auto [p, pm] = pq.decode(pq.coset_keys[i]);
      for (int j = 0; j < nqd; ++j) {
        auto [qm, q] = qq.decode(qq.coset_keys[j]);
        const SVec& r1 = prev.psi[pm][qm];
        SVec x = ract_apply(base.P, unit_vec(f, p), r1);
        next.psi[i][j] = psi_eval(base, x, unit_vec(f, q));
      }
    }

    TensorPowerSystem::QuotientInfo pinfo, qinfo;
    pinfo.dim_outer = pq.dim_outer;
    pinfo.dim_inner = pq.dim_inner;
    for (int k : pq.coset_keys) pinfo.coset_pairs.push_back(pq.decode(k));
    qinfo.dim_outer = qq.dim_outer;
    qinfo.dim_inner = qq.dim_inner;
    for (int k : qq.coset_keys) qinfo.coset_pairs.push_back(qq.decode(k));
    out.p_info.push_back(std::move(pinfo));
    out.q_info.push_back(std::move(qinfo));
    out.sys = std::move(next);
  }
  return out;
}

// ---- representations ----

Element rep_S(const CovariantRep& rep, const SVec& p) {
  Element out;
  for (const auto& [i, c] : p.terms()) out.add_scaled(rep.S[i], c);
  return out;
}

Element rep_T(const CovariantRep& rep, const SVec& q) {
  Element out;
  for (const auto& [i, c] : q.terms()) out.add_scaled(rep.T[i], c);
  return out;
}

Element rep_sigma(const CovariantRep& rep, const SVec& r) {
  Element out;
  for (const auto& [i, c] : r.terms()) out.add_scaled(rep.sigma[i], c);
  return out;
}

SystemReport check_covariant_rep(const CovariantRep& rep) {
  SystemReport out;
  const RSystem& sys = *rep.sys;
  const GradedAlgebra& B = *rep.B;
  const Field& f = sys.R.field;
  auto fail = [&](const std::string& w) {
    out.pass = false;
    out.witness = w;
  };
  auto mul = [&](const Element& x, const Element& y) -> std::optional<Element> { return B.mul(x, y); };
  int rd = sys.R.dim(), pd = sys.P.dim(), qd = sys.Q.dim();
  // (iii) sigma multiplicative
  for (int i = 0; i < rd && out.pass; ++i)
    for (int j = 0; j < rd && out.pass; ++j) {
      auto prod = mul(rep.sigma[i], rep.sigma[j]);
      if (!prod || *prod != rep_sigma(rep, sys.R.mul[i][j]))
        fail("(iii) sigma(r r') != sigma(r)sigma(r') at (" + sys.R.names[i] + "," + sys.R.names[j] + ")");
    }
  // (iv) module compatibility
  for (int r = 0; r < rd && out.pass; ++r) {
    for (int i = 0; i < pd && out.pass; ++i) {
      auto a = mul(rep.S[i], rep.sigma[r]);
      if (!a || *a != rep_S(rep, sys.P.ract[i][r])) fail("(iv) S(p r) != S(p)sigma(r)");
      auto b = mul(rep.sigma[r], rep.S[i]);
      if (!b || *b != rep_S(rep, sys.P.lact[r][i])) fail("(iv) S(r p) != sigma(r)S(p)");
    }
    for (int j = 0; j < qd && out.pass; ++j) {
      auto a = mul(rep.T[j], rep.sigma[r]);
      if (!a || *a != rep_T(rep, sys.Q.ract[j][r])) fail("(iv) T(q r) != T(q)sigma(r)");
      auto b = mul(rep.sigma[r], rep.T[j]);
      if (!b || *b != rep_T(rep, sys.Q.lact[r][j])) fail("(iv) T(r q) != sigma(r)T(q)");
    }
  }
  // (v) sigma(psi(p (x) q)) = S(p) T(q)
  for (int i = 0; i < pd && out.pass; ++i)
    for (int j = 0; j < qd && out.pass; ++j) {
      auto prod = mul(rep.S[i], rep.T[j]);
      if (!prod || *prod != rep_sigma(rep, sys.psi[i][j]))
        fail("(v) sigma(psi(p (x) q)) != S(p)T(q) at (" + sys.P.names[i] + "," + sys.Q.names[j] + ")");
    }
  (void)f;
  return out;
}

CovariantRep rep_tensor_power(const CovariantRep& rep, const TensorPowerSystem& tps, int n) {
  CovariantRep out;
  out.sys = &tps.sys;
  out.B = rep.B;
  out.sigma = rep.sigma;
  if (n == 0) {
    out.S = rep.sigma;
    out.T = rep.sigma;
    return out;
  }
  std::vector<Element> S = rep.S, T = rep.T;
  for (int level = 2; level <= n; ++level) {
    const auto& pinfo = tps.p_info[level - 2];
    const auto& qinfo = tps.q_info[level - 2];
    std::vector<Element> S2(pinfo.coset_pairs.size()), T2(qinfo.coset_pairs.size());
    for (size_t j = 0; j < pinfo.coset_pairs.size(); ++j) {
      auto [p, m] = pinfo.coset_pairs[j];
      auto prod = rep.B->mul(rep.S[p], S[m]);
      if (!prod) throw WindowError("tensor representation image leaves the window");
      S2[j] = *prod;
    }
    for (size_t j = 0; j < qinfo.coset_pairs.size(); ++j) {
      auto [m, q] = qinfo.coset_pairs[j];
      auto prod = rep.B->mul(T[m], rep.T[q]);
      if (!prod) throw WindowError("tensor representation image leaves the window");
      T2[j] = *prod;
    }
    S = std::move(S2);
    T = std::move(T2);
  }
  out.S = std::move(S);
  out.T = std::move(T);
  return out;
}

// ---- finite-rank operators ----

FiniteRankOp op_zero(const RSystem& sys) {
  FiniteRankOp op;
  op.matQ.assign(sys.Q.dim(), SVec{});
  op.matP.assign(sys.P.dim(), SVec{});
  return op;
}

FiniteRankOp rank_one(const RSystem& sys, const SVec& q, const SVec& p) {
  const Field& f = sys.R.field;
  FiniteRankOp op = op_zero(sys);
  op.terms.push_back({q, p});
  for (int x = 0; x < sys.Q.dim(); ++x) {
    SVec r = psi_eval(sys, p, unit_vec(f, x));
    op.matQ[x] = ract_apply(sys.Q, q, r);
  }
  for (int y = 0; y < sys.P.dim(); ++y) {
    SVec r = psi_eval(sys, unit_vec(f, y), q);
    op.matP[y] = lact_apply(sys.P, r, p);
  }
  return op;
}

FiniteRankOp op_sum(const RSystem& sys, const std::vector<FiniteRankOp>& ops) {
  FiniteRankOp out = op_zero(sys);
  for (const FiniteRankOp& op : ops) {
    out.terms.insert(out.terms.end(), op.terms.begin(), op.terms.end());
    for (size_t i = 0; i < out.matQ.size(); ++i) out.matQ[i].add(op.matQ[i]);
    for (size_t i = 0; i < out.matP.size(); ++i) out.matP[i].add(op.matP[i]);
  }
  return out;
}

bool matrix_is_zero(const std::vector<SVec>& cols) {
  for (const SVec& c : cols)
    if (!c.is_zero()) return false;
  return true;
}

SVec apply_matrix(const std::vector<SVec>& cols, const SVec& v) {
  SVec out;
  for (const auto& [i, c] : v.terms()) out.add_scaled(cols[i], c);
  return out;
}

std::vector<std::vector<FiniteRankOp>> rank_one_grid(const RSystem& sys) {
  const Field& f = sys.R.field;
  std::vector<std::vector<FiniteRankOp>> grid(sys.Q.dim());
  for (int a = 0; a < sys.Q.dim(); ++a) {
    grid[a].reserve(sys.P.dim());
    for (int b = 0; b < sys.P.dim(); ++b) grid[a].push_back(rank_one(sys, unit_vec(f, a), unit_vec(f, b)));
  }
  return grid;
}

std::optional<std::pair<FiniteRankOp, FiniteRankOp>> check_fs(const RSystem& sys, const std::vector<SVec>& Qs,
                                                              const std::vector<SVec>& Ps) {
  const Field& f = sys.R.field;
  auto grid = rank_one_grid(sys);
  int qd = sys.Q.dim(), pd = sys.P.dim();

  auto solve = [&](const std::vector<SVec>& inputs, bool on_q) -> std::optional<FiniteRankOp> {
    std::vector<SVec> cols;
    std::vector<std::pair<int, int>> idx;
    int stride = on_q ? qd : pd;
    for (int a = 0; a < qd; ++a)
      for (int b = 0; b < pd; ++b) {
        std::vector<SVec> parts;
        parts.reserve(inputs.size());
        for (const SVec& v : inputs) parts.push_back(apply_matrix(on_q ? grid[a][b].matQ : grid[a][b].matP, v));
        cols.push_back(stack_vecs(parts, stride));
        idx.emplace_back(a, b);
      }
    SVec target = stack_vecs(inputs, stride);
    auto coeffs = in_span(target, cols, f);
    if (!coeffs) return std::nullopt;
    std::vector<FiniteRankOp> picked;
    for (const auto& [pos, c] : *coeffs) {
      auto [a, b] = idx[pos];
      picked.push_back(rank_one(sys, unit_vec(f, a).scaled(c), unit_vec(f, b)));
    }
    return op_sum(sys, picked);
  };

  auto theta = solve(Qs, true);
  if (!theta) return std::nullopt;
  auto phi = solve(Ps, false);
  if (!phi) return std::nullopt;
  return std::make_pair(*theta, *phi);
}

std::vector<SVec> delta_matrix(const RSystem& sys, const SVec& r) {
  const Field& f = sys.R.field;
  std::vector<SVec> cols(sys.Q.dim());
  for (int x = 0; x < sys.Q.dim(); ++x) cols[x] = lact_apply(sys.Q, r, unit_vec(f, x));
  return cols;
}

std::vector<SVec> gamma_matrix(const RSystem& sys, const SVec& r) {
  const Field& f = sys.R.field;
  std::vector<SVec> cols(sys.P.dim());
  for (int y = 0; y < sys.P.dim(); ++y) cols[y] = ract_apply(sys.P, unit_vec(f, y), r);
  return cols;
}

std::pair<std::vector<SVec>, std::vector<SVec>> delta_gamma(const RSystem& sys, const SVec& r) {
  const Field& f = sys.R.field;
  auto dm = delta_matrix(sys, r);
  auto gm = gamma_matrix(sys, r);
  for (int y = 0; y < sys.P.dim(); ++y)
    for (int x = 0; x < sys.Q.dim(); ++x) {
      SVec lhs = psi_eval(sys, unit_vec(f, y), dm[x]);
      SVec rhs = psi_eval(sys, gm[y], unit_vec(f, x));
      if (lhs != rhs) throw InconsistencyError("Gamma(r) is not adjoint to Delta(r); the system data is inconsistent");
    }
  return {dm, gm};
}

std::vector<SVec> delta_kernel(const RSystem& sys) {
  const Field& f = sys.R.field;
  int stride = sys.Q.dim() == 0 ? 1 : sys.Q.dim();
  std::vector<SVec> cols;
  for (int k = 0; k < sys.R.dim(); ++k) cols.push_back(stack_vecs(delta_matrix(sys, unit_vec(f, k)), stride));
  std::vector<SVec> ker;
  for (const SVec& kv : kernel(cols, f)) ker.push_back(kv);
  return span_basis(ker, f);
}

Element pi_map(const CovariantRep& rep, const FiniteRankOp& op) {
  Element out;
  for (const auto& term : op.terms) {
    auto prod = rep.B->mul(rep_T(rep, term.q), rep_S(rep, term.p));
    if (!prod) throw WindowError("pi image leaves the window");
    out.add(*prod);
  }
  if (matrix_is_zero(op.matQ) && !out.is_zero())
    throw InconsistencyError("pi is not well defined: a zero operator has nonzero image (covariance or (FS) fails)");
  return out;
}

IdealCheck compatible_ideal_check(const RSystem& sys, const std::vector<SVec>& Jbasis) {
  const Field& f = sys.R.field;
  IdealCheck out;
  // two-sided ideal precondition
  Echelon span(f);
  for (const SVec& x : Jbasis) span.insert(x);
  for (int r = 0; r < sys.R.dim(); ++r)
    for (const SVec& x : Jbasis) {
      if (!span.contains(ring_mul(sys.R, unit_vec(f, r), x)) || !span.contains(ring_mul(sys.R, x, unit_vec(f, r)))) {
        out.is_ideal = false;
        out.witness = "input is not a two-sided ideal of R (violated by " + sys.R.names[r] + ")";
        throw PreconditionError(out.witness);
      }
    }

  auto grid = rank_one_grid(sys);
  int stride = sys.Q.dim() == 0 ? 1 : sys.Q.dim();
  std::vector<SVec> cols;
  std::vector<std::pair<int, int>> idx;
  for (int a = 0; a < sys.Q.dim(); ++a)
    for (int b = 0; b < sys.P.dim(); ++b) {
      cols.push_back(stack_vecs(grid[a][b].matQ, stride));
      idx.emplace_back(a, b);
    }
  for (const SVec& x : Jbasis) {
    SVec target = stack_vecs(delta_matrix(sys, x), stride);
    auto coeffs = in_span(target, cols, f);
    if (!coeffs) {
      out.compatible = false;
      out.witness = "Delta(x) is not a finite-rank operator for some x in the ideal";
      out.delta_ops.push_back(op_zero(sys));
      continue;
    }
    std::vector<FiniteRankOp> picked;
    for (const auto& [pos, c] : *coeffs) {
      auto [a, b] = idx[pos];
      picked.push_back(rank_one(sys, unit_vec(f, a).scaled(c), unit_vec(f, b)));
    }
    out.delta_ops.push_back(op_sum(sys, picked));
  }
  out.ker_delta = delta_kernel(sys);
  out.faithful = span_intersect(Jbasis, out.ker_delta, f).empty();
  if (!out.faithful && out.witness.empty()) out.witness = "ideal meets ker Delta";
  return out;
}

CanonicalIdeal canonical_max_ideal(const RSystem& sys) {
  const Field& f = sys.R.field;
  CanonicalIdeal out;
  auto grid = rank_one_grid(sys);
  int stride = sys.Q.dim() == 0 ? 1 : sys.Q.dim();
  int rd = sys.R.dim();
  // kernel of (r, c) -> Delta(r) - sum c_ab theta_ab, projected to the r part
  std::vector<SVec> cols;
  for (int k = 0; k < rd; ++k) cols.push_back(stack_vecs(delta_matrix(sys, unit_vec(f, k)), stride));
  for (int a = 0; a < sys.Q.dim(); ++a)
    for (int b = 0; b < sys.P.dim(); ++b)
      cols.push_back(stack_vecs(grid[a][b].matQ, stride).scaled(-Scalar::one(f)));
  std::vector<SVec> pre;
  for (const SVec& k : kernel(cols, f)) {
    SVec r;
    for (const auto& [pos, c] : k.terms())
      if (pos < rd) r.add_term(pos, c);
    if (!r.is_zero()) pre.push_back(std::move(r));
  }
  out.delta_preimage = span_basis(pre, f);
  out.ker_delta = delta_kernel(sys);
  // (ker Delta)^perp inside R
  std::vector<SVec> perp_cols;
  int rstride = rd == 0 ? 1 : rd;
  for (int k = 0; k < rd; ++k) {
    std::vector<SVec> parts;
    for (const SVec& y : out.ker_delta) {
      parts.push_back(ring_mul(sys.R, unit_vec(f, k), y));
      parts.push_back(ring_mul(sys.R, y, unit_vec(f, k)));
    }
    perp_cols.push_back(stack_vecs(parts, rstride));
  }
  std::vector<SVec> perp;
  for (const SVec& k : kernel(perp_cols, f)) {
    SVec r;
    for (const auto& [pos, c] : k.terms()) r.add_term(pos, c);
    if (!r.is_zero()) perp.push_back(std::move(r));
  }
  out.ker_perp = span_basis(perp, f);
  out.basis = span_intersect(out.delta_preimage, out.ker_perp, f);
  out.hypothesis_ok = span_intersect(out.basis, out.ker_delta, f).empty();
  return out;
}

SystemReport check_cp_invariant(const CovariantRep& rep, const std::vector<SVec>& Jbasis) {
  SystemReport out;
  const RSystem& sys = *rep.sys;
  IdealCheck ic = compatible_ideal_check(sys, Jbasis);
  if (!ic.compatible) {
    out.pass = false;
    out.witness = "ideal is not psi-compatible: " + ic.witness;
    return out;
  }
  for (size_t i = 0; i < Jbasis.size(); ++i) {
    Element lhs = pi_map(rep, ic.delta_ops[i]);
    Element rhs = rep_sigma(rep, Jbasis[i]);
    if (lhs != rhs) {
      out.pass = false;
      out.witness = "pi(Delta(x)) != sigma(x) for a basis vector of the ideal";
      return out;
    }
  }
  return out;
}

std::vector<Element> toeplitz_graded_span(const CovariantRep& rep, int t, int cap) {
  const Field& f = rep.sys->R.field;
  std::vector<Element> prods;
  TensorPowerSystem tps = tensor_power_system(*rep.sys, cap);
  // level maps: images of the tensor basis under T^m and S^n
  std::vector<std::vector<Element>> Tlv(cap + 1), Slv(cap + 1);
  Tlv[0] = rep.sigma;
  Slv[0] = rep.sigma;
  if (cap >= 1) {
    Tlv[1] = rep.T;
    Slv[1] = rep.S;
  }
  for (int level = 2; level <= cap; ++level) {
    const auto& pinfo = tps.p_info[level - 2];
    const auto& qinfo = tps.q_info[level - 2];
    Slv[level].resize(pinfo.coset_pairs.size());
    for (size_t j = 0; j < pinfo.coset_pairs.size(); ++j) {
      auto [p, m] = pinfo.coset_pairs[j];
      auto prod = rep.B->mul(rep.S[p], Slv[level - 1][m]);
      if (!prod) throw WindowError("graded span product leaves the window");
      Slv[level][j] = *prod;
    }
    Tlv[level].resize(qinfo.coset_pairs.size());
    for (size_t j = 0; j < qinfo.coset_pairs.size(); ++j) {
      auto [m, q] = qinfo.coset_pairs[j];
      auto prod = rep.B->mul(Tlv[level - 1][m], rep.T[q]);
      if (!prod) throw WindowError("graded span product leaves the window");
      Tlv[level][j] = *prod;
    }
  }
  for (int m = 0; m <= cap; ++m) {
    int n = m - t;
    if (n < 0 || n > cap) continue;
    for (const Element& tq : Tlv[m])
      for (const Element& sp : Slv[n]) {
        auto prod = rep.B->mul(tq, sp);
        if (!prod) throw WindowError("graded span product leaves the window");
        prods.push_back(*prod);
      }
  }
  return span_basis(prods, f);
}

}  // namespace gcp
