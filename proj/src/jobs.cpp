#include "gcp/jobs.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "gcp/error.hpp"
#include "gcp/realization.hpp"

namespace gcp {

int Report::exit_code() const {
  if (status == "certified" || status == "ok") return 0;
  if (status == "refuted" || status == "failed") return 1;
  if (status == "inconclusive") return 2;
  return 5;
}

Window window_from_flags(const RunFlags& flags) {
  Window w;
  if (flags.window) w = *flags.window;
  if (flags.wordlen) w.max_word_len = *flags.wordlen;
  return w;
}

namespace {

std::string pf(bool pass) { return pass ? "pass" : "fail"; }

void put_verdict(Report& rep, const std::string& key, const Verdict& v) {
  rep.put(key, pf(v.pass));
  if (!v.detail.empty()) rep.put(key + ".detail", v.detail);
}

void put_realization(Report& rep, const RealizationReport& rr) {
  put_verdict(rep, "check.housing", rr.housing);
  put_verdict(rep, "check.condition1", rr.cond1);
  put_verdict(rep, "check.condition2", rr.cond2);
  put_verdict(rep, "check.condition3", rr.cond3);
  put_verdict(rep, "check.condition4", rr.cond4);
  put_verdict(rep, "check.identity-ij-meet-r", rr.mmnnbb);
  put_verdict(rep, "check.system", rr.system_ok);
  put_verdict(rep, "check.fs", rr.fs);
  put_verdict(rep, "check.covariant", rr.covariant);
  put_verdict(rep, "check.canonical-ideal", rr.ideal);
  put_verdict(rep, "check.cp-invariant", rr.cp_invariant);
  put_verdict(rep, "check.pi-sampled", rr.pi_sampled);
  put_verdict(rep, "check.generation", rr.generation);
  put_verdict(rep, "check.injectivity-on-R", rr.injectivity);
  rep.put("subring.dim", std::to_string(rr.generated_dim));
  rep.put("subring.generates-ambient", rr.generates_ambient ? "yes" : "no");
  rep.put("certificate", certificate_name(rr.certificate));
}

std::string status_of(Certificate c) {
  switch (c) {
    case Certificate::windowed_certified: return "certified";
    case Certificate::refuted: return "refuted";
    case Certificate::inconclusive_window: return "inconclusive";
  }
  return "failed";
}

void put_grcp1(Report& rep, const Grcp1Report& g) {
  put_verdict(rep, "check.powers", g.powers);
  put_verdict(rep, "check.local-pair", g.local_pair);
  put_verdict(rep, "check.ann-meet", g.ann_meet);
  rep.put("corollary.applicable", g.applicable ? "yes" : "no");
  if (g.applicable)
    put_realization(rep, g.realization);
  else
    rep.put("certificate", certificate_name(Certificate::refuted));
}

void lpa_dims(Report& rep, const GradedAlgebra& A) {
  const Window& w = A.window();
  std::ostringstream dims;
  for (int n = w.min_deg; n <= w.max_deg; ++n) {
    if (n > w.min_deg) dims << " ";
    dims << A.degree_component(n).size();
  }
  rep.put("algebra.dim", std::to_string(A.dim()));
  rep.put("algebra.dims-by-degree", dims.str());
  rep.put("algebra.window", std::to_string(w.min_deg) + ".." + std::to_string(w.max_deg));
}

FiniteGroupoid groupoid_of_doc(const InputDocument& doc) {
  if (doc.find("arrows")) return groupoid_from_doc(doc);
  Graph g = graph_from_doc(doc);
  return boundary_path_groupoid(g);
}

Report job_check_realization(const InputDocument& doc, const RunFlags& flags);

Report job_check_steinberg(const InputDocument& doc, const RunFlags& flags) {
  Report rep;
  rep.job = "check-steinberg";
  FiniteGroupoid G = groupoid_of_doc(doc);
  HTriple H = htriple_from_doc(doc, G);
  SteinbergRealization sr =
      steinberg_realization_data(G, H, flags.field, flags.seed, flags.wordlen.value_or(Window{}.max_word_len));
  rep.put("groupoid.arrows", std::to_string(G.n()));
  rep.put("groupoid.units", std::to_string(static_cast<int>(G.units.size())));
  put_verdict(rep, "check.htriple-products", sr.products);
  rep.put("check.htriple-hypothesis", pf(sr.hypothesis.pass));
  rep.put("check.htriple-hypothesis.detail", sr.hypothesis.detail);
  rep.put("check.htriple-generation", pf(sr.generation.pass));
  rep.put("check.htriple-generation.detail", sr.generation.detail);
  rep.put("fact.h1-inverse-inside-h-1", sr.h1_inverse_inside_hm1 ? "yes" : "no");
  if (!sr.h1_inverse_inside_hm1) rep.put("fact.h1-inverse-witness", G.names[sr.inverse_witness]);
  rep.put("remark.h0-subgroupoid", sr.remark_applicable ? "yes" : "no");
  if (sr.remark_applicable) rep.put("remark.h-1-equals-h1-inverse", sr.remark_holds ? "yes" : "no");
  if (sr.products.pass && sr.hypothesis.pass && sr.generation.pass) {
    put_realization(rep, sr.realization);
    rep.status = status_of(sr.certificate);
  } else {
    rep.put("certificate", certificate_name(Certificate::refuted));
    rep.status = "refuted";
  }
  return rep;
}

Report job_check_grcp1(const InputDocument& doc, const RunFlags& flags) {
  Report rep;
  rep.job = "check-grcp1";
  Window w = window_from_flags(flags);
  std::shared_ptr<GradedAlgebra> A;
  if (doc.kind == "crossed-product") {
    A = build_crossed_product(crossed_from_doc(doc, flags.field, w));
  } else if (doc.kind == "corner-skew") {
    A = build_corner_skew(corner_from_doc(doc, flags.field, w)).A;
  } else if (doc.kind == "graph") {
    LpaOptions opt;
    opt.window = w;
    A = build_lpa(graph_from_doc(doc), opt).A;
  } else {
    throw ParseError("check-grcp1 expects a crossed-product, corner-skew or graph document", 0);
  }
  lpa_dims(rep, *A);
  Grcp1Report g = check_grcp1(*A, flags.seed);
  put_grcp1(rep, g);
  rep.status = status_of(g.certificate);
  return rep;
}

Report job_build_lpa(const InputDocument& doc, const RunFlags& flags) {
  Report rep;
  rep.job = "build-lpa";
  LpaOptions opt;
  opt.window = window_from_flags(flags);
  LpaAlgebra lpa = build_lpa(graph_from_doc(doc), opt);
  lpa_dims(rep, *lpa.A);
  GradingReport gr = check_grading(*lpa.A);
  rep.put("check.grading", pf(gr.pass));
  if (!gr.pass) rep.put("check.grading.detail", gr.witness);
  if (const Section* nf = doc.find("normal-form")) {
    int i = 0;
    for (const DocLine& l : nf->lines) {
      std::string expr;
      for (const std::string& t : l.tokens) expr += (expr.empty() ? "" : " ") + t;
      Element e = parse_lpa_expression(lpa, expr);
      rep.put("normal-form." + std::to_string(i++), expr + " -> " + lpa.A->format(e));
    }
  }
  rep.status = gr.pass ? "ok" : "failed";
  return rep;
}

Report job_build_groupoid(const InputDocument& doc, const RunFlags& flags) {
  (void)flags;
  Report rep;
  rep.job = "build-groupoid";
  Graph g = graph_from_doc(doc);
  FiniteGroupoid G = boundary_path_groupoid(g);
  if (auto err = G.validate()) throw InconsistencyError("constructed groupoid fails validation: " + *err);
  rep.put("groupoid.arrows", std::to_string(G.n()));
  rep.put("groupoid.units", std::to_string(static_cast<int>(G.units.size())));
  std::ostringstream dims;
  for (int n = G.min_degree(); n <= G.max_degree(); ++n) {
    if (n > G.min_degree()) dims << " ";
    dims << G.degree_arrows(n).size();
  }
  rep.put("groupoid.arrows-by-degree", dims.str());
  rep.payload = serialize_document(groupoid_to_doc(G, doc.header_or("name", "")));
  rep.status = "ok";
  return rep;
}

Report job_decompose(const InputDocument& doc, const RunFlags& flags) {
  Report rep;
  rep.job = "decompose";
  FiniteGroupoid G = groupoid_of_doc(doc);
  auto read_set = [&](const Section& sec) {
    ArrowSet out;
    for (const DocLine& l : sec.lines)
      for (const std::string& t : l.tokens) {
        int a = G.arrow_id(t);
        if (a < 0) throw ParseError("unknown arrow '" + t + "'", l.line);
        out.push_back(a);
      }
    return sorted_unique(std::move(out));
  };
  ArrowSet C = read_set(doc.need("c"));
  std::vector<ArrowSet> Ds;
  for (int i = 1;; ++i) {
    const Section* s = doc.find("d" + std::to_string(i));
    if (!s) break;
    Ds.push_back(read_set(*s));
  }
  if (Ds.empty()) throw ParseError("no [d1] section", 0);
  bool ordered = doc.header_or("ordered", "false") == "true";
  IndicatorDecomposition dec = decompose_indicator(G, C, Ds, ordered);
  SVec back = evaluate_decomposition(G, dec, flags.field);
  SVec target = indicator(G, C, flags.field);
  rep.put("decompose.terms", std::to_string(static_cast<int>(dec.terms.size())));
  rep.put("decompose.reconvolves", back == target ? "yes" : "no");
  std::ostringstream expr;
  for (size_t t = 0; t < dec.terms.size(); ++t) {
    if (t) expr << " + ";
    for (size_t i = 0; i < dec.terms[t].factors.size(); ++i) {
      if (i) expr << " * ";
      expr << "1_{";
      const ArrowSet& B = dec.terms[t].factors[i];
      for (size_t k = 0; k < B.size(); ++k) expr << (k ? "," : "") << G.names[B[k]];
      expr << "}";
    }
  }
  rep.payload = expr.str() + "\n";
  rep.status = back == target ? "ok" : "failed";
  return rep;
}

Report job_check_realization(const InputDocument& doc, const RunFlags& flags) {
  Report rep;
  rep.job = "check-realization";
  if (doc.kind == "graph") {
    LpaOptions opt;
    opt.window = window_from_flags(flags);
    LpaAlgebra lpa = build_lpa(graph_from_doc(doc), opt);
    lpa_dims(rep, *lpa.A);
    RealizationReport rr = verify_realization(lpa.data, flags.seed);
    put_realization(rep, rr);
    rep.status = status_of(rr.certificate);
    return rep;
  }
  if (doc.kind == "htriple" || doc.kind == "groupoid") {
    Report inner = job_check_steinberg(doc, flags);
    inner.job = "check-realization";
    return inner;
  }
  if (doc.kind == "crossed-product" || doc.kind == "corner-skew") {
    Report inner = job_check_grcp1(doc, flags);
    inner.job = "check-realization";
    return inner;
  }
  if (doc.kind == "realization-job") {
    InputDocument inner = doc;
    inner.kind = doc.header_or("instance", "");
    if (inner.kind.empty()) throw ParseError("realization-job requires an 'instance:' header", 0);
    return job_check_realization(inner, flags);
  }
  throw ParseError("unsupported document kind '" + doc.kind + "' for check-realization", 0);
}

}  // namespace

Report run_job(const std::string& command, const InputDocument& doc, const RunFlags& flags) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  if (command == "check-realization")
    rep = job_check_realization(doc, flags);
  else if (command == "check-grcp1")
    rep = job_check_grcp1(doc, flags);
  else if (command == "check-steinberg")
    rep = job_check_steinberg(doc, flags);
  else if (command == "build-lpa")
    rep = job_build_lpa(doc, flags);
  else if (command == "build-groupoid")
    rep = job_build_groupoid(doc, flags);
  else if (command == "decompose")
    rep = job_decompose(doc, flags);
  else
    throw Error("unknown command '" + command + "'");
  rep.kind = doc.kind;
  rep.name = doc.header_or("name", "");
  rep.timing_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

Report run_fuzz(const RunFlags& flags) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.job = "fuzz";
  rep.kind = "fuzz";
  const Field& f = flags.field;
  std::mt19937_64 rng(flags.seed);
  int failures = 0;

  // dimension law: dim span(V u W) + dim(V meet W) = dim V + dim W
  int trials = flags.count;
  for (int t = 0; t < trials; ++t) {
    int dim = 1 + static_cast<int>(rng() % 8);
    auto rand_vecs = [&](int count) {
      std::vector<SVec> out;
      for (int i = 0; i < count; ++i) {
        SVec v;
        for (int k = 0; k < dim; ++k) {
          long c = static_cast<long>(rng() % 5) - 2;
          if (c) v.add_term(k, Scalar(f, c));
        }
        out.push_back(v);
      }
      return out;
    };
    std::vector<SVec> V = rand_vecs(1 + static_cast<int>(rng() % 4));
    std::vector<SVec> W = rand_vecs(1 + static_cast<int>(rng() % 4));
    std::vector<SVec> both = V;
    both.insert(both.end(), W.begin(), W.end());
    int lhs = span_rank(both, f) + static_cast<int>(span_intersect(V, W, f).size());
    int rhs = span_rank(V, f) + span_rank(W, f);
    if (lhs != rhs) ++failures;
  }
  rep.put("fuzz.dimension-law.trials", std::to_string(trials));
  rep.put("fuzz.dimension-law.failures", std::to_string(failures));

  // annihilator formula on random groupoids
  int ann_fail = 0;
  for (int t = 0; t < trials; ++t) {
    FiniteGroupoid G = random_groupoid(rng, 6, 2);
    ArrowSet h0, h1;
    for (int a : G.degree_arrows(0))
      if (rng() % 2) h0.push_back(a);
    for (int a : G.degree_arrows(1))
      if (rng() % 2) h1.push_back(a);
    AnnihilatorResult ar = steinberg_annihilator(G, sorted_unique(std::move(h0)), sorted_unique(std::move(h1)), f);
    if (!ar.agree) ++ann_fail;
  }
  rep.put("fuzz.annihilator.trials", std::to_string(trials));
  rep.put("fuzz.annihilator.failures", std::to_string(ann_fail));
  failures += ann_fail;

  // indicator decomposition on random bisections
  int dec_fail = 0;
  for (int t = 0; t < trials; ++t) {
    FiniteGroupoid G = random_groupoid(rng, 6, 2);
    std::vector<ArrowSet> Ds;
    for (int n = G.min_degree(); n <= G.max_degree(); ++n) {
      ArrowSet dn;
      for (int a : G.degree_arrows(n)) dn.push_back(a);
      if (!dn.empty()) Ds.push_back(sorted_unique(std::move(dn)));
    }
    ArrowSet C = random_bisection(G, rng);
    IndicatorDecomposition dec = decompose_indicator(G, C, Ds);
    if (evaluate_decomposition(G, dec, f) != indicator(G, C, f)) ++dec_fail;
  }
  rep.put("fuzz.decomposition.trials", std::to_string(trials));
  rep.put("fuzz.decomposition.failures", std::to_string(dec_fail));
  failures += dec_fail;

  rep.status = failures == 0 ? "ok" : "failed";
  rep.timing_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string emit_report(const Report& rep, const std::string& format) {
  std::ostringstream out;
  if (format == "structured") {
    out << "job = " << rep.job << "\n";
    out << "kind = " << rep.kind << "\n";
    if (!rep.name.empty()) out << "name = " << rep.name << "\n";
    for (const auto& l : rep.lines) out << l.key << " = " << l.value << "\n";
    out << "status = " << rep.status << "\n";
    out << "timing.ms = " << rep.timing_ms << "\n";
    if (!rep.payload.empty()) out << rep.payload;
    return out.str();
  }
  out << rep.job << (rep.name.empty() ? "" : " '" + rep.name + "'") << " (" << rep.kind << ")\n";
  for (const auto& l : rep.lines) out << "  " << l.key << ": " << l.value << "\n";
  out << "  status: " << rep.status << "  [" << rep.timing_ms << " ms]\n";
  if (!rep.payload.empty()) out << "\n" << rep.payload;
  return out.str();
}

}  // namespace gcp
