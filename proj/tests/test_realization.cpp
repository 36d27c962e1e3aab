#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "gcp/error.hpp"
#include "gcp/realization.hpp"

using namespace gcp;
using namespace gcptest;

namespace {

struct Ctx {
  LpaAlgebra lpa;
  Subspace R, I, J;
};

Ctx estar_ctx(bool ck2 = true) {
  Ctx c;
  LpaOptions opt;
  opt.impose_ck2 = ck2;
  c.lpa = build_lpa(estar_graph(), opt);
  c.R = materialize(*c.lpa.A, c.lpa.data.Rspec);
  c.I = materialize(*c.lpa.A, c.lpa.data.Ispec);
  c.J = materialize(*c.lpa.A, c.lpa.data.Jspec);
  return c;
}

// labels one, x of degree 0 with x^2 = 0, and i of degree 1 killed by x:
// ann_R(I) and its perp both contain x
std::shared_ptr<GradedAlgebra> square_zero_algebra() {
  Field q = Field::rationals();
  auto A = std::make_shared<GradedAlgebra>(q, Window{-1, 1, 4}, "sqzero");
  int one = A->add_label("one", 0);
  A->add_label("x", 0);
  A->add_label("i", 1);
  A->set_product([=](int a, int b) -> std::optional<Element> {
    if (a == one) return SVec::unit(b, Scalar(Field::rationals(), 1));
    if (b == one) return SVec::unit(a, Scalar(Field::rationals(), 1));
    return Element{};  // x*x = x*i = i*x = i*i = 0
  });
  return A;
}

RealizationData crossed_data(std::shared_ptr<GradedAlgebra> A) {
  RealizationData data;
  data.A = A;
  data.Rspec.name = "A_0";
  data.Rspec.closure = Closure::subring;
  for (int l : A->degree_component(0)) data.Rspec.generators.push_back(A->basis_elem(l));
  data.Ispec.name = "A_1";
  for (int l : A->degree_component(1)) data.Ispec.generators.push_back(A->basis_elem(l));
  data.Jspec.name = "A_-1";
  for (int l : A->degree_component(-1)) data.Jspec.generators.push_back(A->basis_elem(l));
  return data;
}

// same labels and products, all degrees collapsed to zero
std::shared_ptr<GradedAlgebra> trivially_graded_copy(std::shared_ptr<GradedAlgebra> A) {
  auto B = std::make_shared<GradedAlgebra>(A->field(), Window{0, 0, A->window().max_word_len}, A->name() + "-deg0");
  for (int l = 0; l < A->dim(); ++l) B->add_label(A->label_name(l), 0);
  B->set_product([A](int a, int b) { return A->mul_labels(a, b); });
  return B;
}

}  // namespace

TEST_CASE("condition (1) on the graph instance, with fault injection") {
  Ctx c = estar_ctx();
  Verdict v = check_condition_1(*c.lpa.A, c.R, c.I, c.J);
  CHECK(v.pass);

  // enlarge J by the degree-0 label u: J I <= R breaks
  Subspace badJ = c.J;
  badJ.basis.push_back(c.lpa.generator("u", false));
  Verdict bad = check_condition_1(*c.lpa.A, c.R, c.I, badJ);
  CHECK(!bad.pass);
  REQUIRE(bad.witness.size() == 3);
  // the witness replays: x * y lands outside the span it should be in
  auto prod = c.lpa.A->mul(bad.witness[0], bad.witness[1]);
  REQUIRE(prod.has_value());
  CHECK(*prod == bad.witness[2]);
}

TEST_CASE("condition (2): witness a = ee* + ff* + gg*") {
  Ctx c = estar_ctx();
  Verdict v = check_condition_2(*c.lpa.A, c.I, c.J);
  REQUIRE(v.pass);
  REQUIRE(v.witness.size() == 2);
  Element a = v.witness[0];
  CHECK(a == parse_lpa_expression(c.lpa, "ee* + ff* + gg*"));
  for (const Element& i : c.I.basis) CHECK(*c.lpa.A->mul(a, i) == i);
  Element b = v.witness[1];
  for (const Element& j : c.J.basis) CHECK(*c.lpa.A->mul(j, b) == j);

  // zero I and J: a = b = 0 works
  Subspace zero;
  CHECK(check_condition_2(*c.lpa.A, zero, zero).pass);

  // I J = 0 with I nonzero: no fixing element
  Field q = Field::rationals();
  auto Z = std::make_shared<GradedAlgebra>(q, Window{-1, 1, 4}, "zeroprod");
  Z->add_label("r", 0);
  int zi = Z->add_label("i", 1);
  int zj = Z->add_label("j", -1);
  Z->set_product([](int, int) -> std::optional<Element> { return Element{}; });
  Subspace ZI{{Z->basis_elem(zi)}, true, false, "I"};
  Subspace ZJ{{Z->basis_elem(zj)}, true, false, "J"};
  CHECK(!check_condition_2(*Z, ZI, ZJ).pass);
}

TEST_CASE("condition (3): pass with relation (5), fail without it") {
  Ctx c = estar_ctx();
  CHECK(check_condition_3(*c.lpa.A, c.R, c.I, c.J).pass);

  // the Toeplitz-style path algebra drops relation (5): a = ff* + gg* pairs
  // with r = w but lies outside R
  Ctx t = estar_ctx(false);
  CHECK(t.lpa.A->dim() == 30);
  Verdict v = check_condition_3(*t.lpa.A, t.R, t.I, t.J);
  CHECK(!v.pass);
  REQUIRE(v.witness.size() == 2);
  const Element& r = v.witness[0];
  const Element& a = v.witness[1];
  // replay: r - a annihilates I but a is not in R
  for (const Element& x : t.I.basis) {
    Element diff = r;
    diff.add_scaled(a, -Scalar::one(t.lpa.A->field()));
    CHECK(t.lpa.A->mul(diff, x)->is_zero());
  }
  CHECK(!subspace_contains(t.R, a, t.lpa.A->field()));
}

TEST_CASE("condition (3) short-circuits when IJ <= R") {
  Field q = Field::rationals();
  auto cp = build_crossed_product(crossed_swap_spec(q));
  RealizationData data = crossed_data(cp);
  Subspace R = materialize(*cp, data.Rspec);
  Subspace I = materialize(*cp, data.Ispec);
  Subspace J = materialize(*cp, data.Jspec);
  Verdict v = check_condition_3(*cp, R, I, J);
  CHECK(v.pass);
  CHECK(v.detail.find("trivially") != std::string::npos);
}

TEST_CASE("condition (4): pass on the graph instance, fail on the square-zero ring") {
  Ctx c = estar_ctx();
  CHECK(check_condition_4(*c.lpa.A, c.R, c.I).pass);

  auto A = square_zero_algebra();
  Subspace R{{A->basis_elem(0), A->basis_elem(1)}, true, false, "R"};
  Subspace I{{A->basis_elem(2)}, true, false, "I"};
  Verdict v = check_condition_4(*A, R, I);
  CHECK(!v.pass);
  REQUIRE(v.witness.size() == 1);
  // witness x kills I and is killed by everything in R on both sides
  const Element& x = v.witness[0];
  CHECK(x == A->basis_elem(1));
  CHECK(A->mul(x, A->basis_elem(2))->is_zero());
  CHECK(A->mul(x, x)->is_zero());
}

TEST_CASE("identity (IJ meet R) on three instances") {
  // 1. graph E*: both sides span{u, w}
  Ctx c = estar_ctx();
  RealizationReport r1 = verify_realization(c.lpa.data);
  CHECK(r1.mmnnbb.pass);
  std::vector<Element> expect = {c.lpa.generator("u", false), c.lpa.generator("w", false)};
  CHECK(same_span(r1.canonical_ideal, expect, c.lpa.A->field()));
  CHECK(same_span(r1.mmnnbb.witness, expect, c.lpa.A->field()));

  // 2. two-sink acyclic graph
  LpaAlgebra two = build_lpa(twosink_graph());
  RealizationReport r2 = verify_realization(two.data);
  CHECK(r2.mmnnbb.pass);
  // the only receiving vertex is a, so both sides are span{a}
  std::vector<Element> expect2 = {two.generator("a", false)};
  CHECK(same_span(r2.canonical_ideal, expect2, two.A->field()));

  // 3. strongly graded crossed product with a unit: both sides are all of R
  Field q = Field::rationals();
  auto cp = build_crossed_product(crossed_swap_spec(q));
  RealizationReport r3 = verify_realization(crossed_data(cp));
  CHECK(r3.mmnnbb.pass);
  CHECK(static_cast<int>(r3.canonical_ideal.size()) == 2);
}

TEST_CASE("verify_realization end to end on the graph instance") {
  Ctx c = estar_ctx();
  RealizationReport rep = verify_realization(c.lpa.data);
  CHECK(rep.cond1.pass);
  CHECK(rep.cond2.pass);
  CHECK(rep.cond3.pass);
  CHECK(rep.cond4.pass);
  CHECK(rep.system_ok.pass);
  CHECK(rep.fs.pass);
  CHECK(rep.covariant.pass);
  CHECK(rep.ideal.pass);
  CHECK(rep.cp_invariant.pass);
  CHECK(rep.pi_sampled.pass);
  CHECK(rep.generation.pass);
  CHECK(rep.generated_dim == 25);
  CHECK(rep.generates_ambient);
  CHECK(rep.certificate == Certificate::windowed_certified);
}

TEST_CASE("trivial system R = A, I = J = 0 certifies for desk instances") {
  // trivially graded copies: any ring is graded in degree zero, which is the
  // honest home for the trivial realization
  // finite-dimensional instances: a windowed infinite-dimensional algebra
  // cannot host R = A inside its window
  std::vector<std::shared_ptr<GradedAlgebra>> algebras;
  LpaAlgebra keep1 = build_lpa(estar_graph());
  LpaAlgebra keep2 = build_lpa(twosink_graph());
  algebras.push_back(trivially_graded_copy(keep1.A));
  algebras.push_back(trivially_graded_copy(keep2.A));
  for (const auto& A : algebras) {
    RealizationData data;
    data.A = A;
    data.Rspec.name = "A";
    data.Rspec.closure = Closure::subring;
    for (int l = 0; l < A->dim(); ++l) data.Rspec.generators.push_back(A->basis_elem(l));
    data.Ispec.name = "0";
    data.Jspec.name = "0";
    RealizationReport rep = verify_realization(data);
    CHECK(rep.certificate == Certificate::windowed_certified);
    CHECK(rep.generated_dim == A->dim());
  }
}

TEST_CASE("refutation soundness: failed verdicts replay through the primitives") {
  Ctx c = estar_ctx();
  RealizationData data = c.lpa.data;
  data.Jspec.generators.push_back(c.lpa.generator("u", false));
  RealizationReport rep = verify_realization(data);
  CHECK(rep.certificate == Certificate::refuted);
  CHECK(!rep.housing.pass);  // u has degree 0, not -1
  CHECK(!rep.cond1.pass);
}

TEST_CASE("check_grcp1 on the crossed product") {
  Field q = Field::rationals();
  auto cp = build_crossed_product(crossed_swap_spec(q));
  Grcp1Report g = check_grcp1(*cp);
  CHECK(g.powers.pass);
  CHECK(g.local_pair.pass);
  CHECK(g.ann_meet.pass);
  CHECK(g.applicable);
  // every theorem condition holds; the window keeps the infinite-dimensional
  // instance honest, so the certificate is inconclusive rather than certified
  CHECK(g.realization.cond1.pass);
  CHECK(g.realization.cond2.pass);
  CHECK(g.realization.cond3.pass);
  CHECK(g.realization.cond4.pass);
  CHECK(g.realization.mmnnbb.pass);
  CHECK(g.realization.fs.pass);
  CHECK(g.realization.cp_invariant.pass);
  CHECK(g.certificate == Certificate::inconclusive_window);
}

TEST_CASE("check_grcp1 on the Laurent corner-skew instance") {
  Field q = Field::rationals();
  CornerSkewAlgebra cs = build_corner_skew(laurent_corner_spec(q));
  Grcp1Report g = check_grcp1(*cs.A);
  CHECK(g.powers.pass);
  CHECK(g.local_pair.pass);
  CHECK(g.ann_meet.pass);
  CHECK(g.applicable);
  // 1 = t_- t_+ lies in A_1 A_-1
  REQUIRE(g.local_pair.witness.size() == 2);
  Element unit = cs.label_for(CsTriple{0, 0, SVec::unit(0, Scalar::one(q))});
  CHECK(g.local_pair.witness[0] == unit);
}

TEST_CASE("check_grcp1 on the sink graph applies with the full zero component") {
  // with R = A_0 (not just the vertex span) the corollary conditions hold:
  // ann_{A_0}(A_1) = span{v}, its perp misses v, and u + w = ee* + ff* + gg*
  // fixes A_1 and A_-1 from inside A_1 A_-1
  Ctx c = estar_ctx();
  Grcp1Report g = check_grcp1(*c.lpa.A);
  CHECK(g.powers.pass);
  CHECK(g.local_pair.pass);
  CHECK(g.ann_meet.pass);
  REQUIRE(g.applicable);
  Element uw = parse_lpa_expression(c.lpa, "ee* + ff* + gg*");
  REQUIRE(g.local_pair.witness.size() == 2);
  CHECK(g.local_pair.witness[0] == uw);
  CHECK(g.realization.certificate == Certificate::windowed_certified);
  // the canonical ideal is the 8-dimensional complement of the sink line
  CHECK(static_cast<int>(g.realization.canonical_ideal.size()) == 8);
}

namespace {

GradedHom conjugation_hom(const std::shared_ptr<GradedAlgebra>& A, const Scalar& a, const Scalar& b) {
  Element u, uinv;
  u.add_term(A->label_id("[e1,0]"), a);
  u.add_term(A->label_id("[e2,0]"), b);
  uinv.add_term(A->label_id("[e1,0]"), a.inv());
  uinv.add_term(A->label_id("[e2,0]"), b.inv());
  GradedHom phi;
  phi.domain = A.get();
  phi.target = A.get();
  for (int l = 0; l < A->dim(); ++l) {
    auto x = A->mul(u, A->basis_elem(l));
    auto y = A->mul(*x, uinv);
    phi.images.push_back(*y);
  }
  return phi;
}

}  // namespace

TEST_CASE("check_grcp2: conjugations are injective in every degree") {
  Field q = Field::rationals();
  auto cp = build_crossed_product(crossed_swap_spec(q));

  // identity map
  GradedHom id;
  id.domain = cp.get();
  id.target = cp.get();
  for (int l = 0; l < cp->dim(); ++l) id.images.push_back(cp->basis_elem(l));
  CHECK(check_grcp2(*cp, id).status == Grcp2Status::injective_everywhere);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    Scalar a(q, 1 + static_cast<long>(rng() % 9));
    Scalar b(q, 1 + static_cast<long>(rng() % 9));
    GradedHom phi = conjugation_hom(cp, a, b);
    CHECK(check_grcp2(*cp, phi).status == Grcp2Status::injective_everywhere);
  }

  // the zero map kills A_0, so the corollary's precondition fails
  GradedHom zero;
  zero.domain = cp.get();
  zero.target = cp.get();
  zero.images.assign(cp->dim(), Element{});
  CHECK(check_grcp2(*cp, zero).status == Grcp2Status::not_applicable);

  // a non-graded map is rejected up front
  GradedHom skew = id;
  skew.images[cp->label_id("[e1,1]")] = cp->basis_elem(cp->label_id("[e1,0]"));
  CHECK_THROWS_AS(check_grcp2(*cp, skew), PreconditionError);
}

TEST_CASE("check_grcp2 is not applicable without strong grading") {
  Ctx c = estar_ctx();
  GradedHom id;
  id.domain = c.lpa.A.get();
  id.target = c.lpa.A.get();
  for (int l = 0; l < c.lpa.A->dim(); ++l) id.images.push_back(c.lpa.A->basis_elem(l));
  CHECK(check_grcp2(*c.lpa.A, id).status == Grcp2Status::not_applicable);
}
