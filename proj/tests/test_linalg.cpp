#include <random>

#include "doctest.h"
#include "gcp/error.hpp"
#include "gcp/linalg.hpp"

using namespace gcp;

namespace {

SVec vec2(const Field& f, long a, long b) {
  SVec v;
  v.add_term(0, Scalar(f, a));
  v.add_term(1, Scalar(f, b));
  return v;
}

}  // namespace

TEST_CASE("scalar arithmetic is exact and canonical") {
  Field q = Field::rationals();
  Scalar a = Scalar::parse(q, "2/4");
  CHECK(a == Scalar::parse(q, "1/2"));
  CHECK((a + (-a)).is_zero());
  CHECK((a * a.inv()).is_one());
  Scalar big = Scalar::parse(q, "123456789123456789123456789");
  CHECK((big * big.inv()).is_one());

  Field f7 = Field::prime(7);
  CHECK(Scalar::parse(f7, "3/2") == Scalar(f7, 5));  // 3 * 2^{-1} = 3 * 4 = 12 = 5
  CHECK((Scalar(f7, 6) + Scalar(f7, 1)).is_zero());
  for (long x = 1; x < 7; ++x) CHECK((Scalar(f7, x) * Scalar(f7, x).inv()).is_one());
  CHECK_THROWS_AS(Field::prime(6), PreconditionError);
  CHECK_THROWS_AS(Scalar(q, 1) + Scalar(f7, 1), FieldMismatchError);
}

TEST_CASE("span_basis on small inputs") {
  Field q = Field::rationals();
  CHECK(span_basis({}, q).empty());
  CHECK(span_basis({SVec{}, SVec{}}, q).empty());

  auto collinear = span_basis({vec2(q, 1, 0), vec2(q, 2, 0)}, q);
  REQUIRE(collinear.size() == 1);
  CHECK(collinear[0] == vec2(q, 1, 0));

  // (1,1), (1,-1): 2x2 determinant = 1*(-1) - 1*1 = -2 != 0, so dimension 2
  Scalar det = Scalar(q, 1) * Scalar(q, -1) - Scalar(q, 1) * Scalar(q, 1);
  CHECK(det == Scalar(q, -2));
  CHECK(span_basis({vec2(q, 1, 1), vec2(q, 1, -1)}, q).size() == 2);
}

TEST_CASE("in_span coefficients") {
  Field q = Field::rationals();
  std::vector<SVec> basis = {vec2(q, 1, 0)};
  auto zero = in_span(SVec{}, basis, q);
  REQUIRE(zero.has_value());
  CHECK(zero->empty());

  auto three = in_span(vec2(q, 3, 0), basis, q);
  REQUIRE(three.has_value());
  REQUIRE(three->size() == 1);
  CHECK(three->at(0) == Scalar(q, 3));

  CHECK(!in_span(vec2(q, 1, 1), basis, q).has_value());
}

TEST_CASE("span_intersect") {
  Field q = Field::rationals();
  std::vector<SVec> A = {vec2(q, 1, 0), vec2(q, 0, 1)};
  CHECK(same_span(span_intersect(A, A, q), A, q));

  std::vector<SVec> X = {vec2(q, 1, 0)};
  std::vector<SVec> Y = {vec2(q, 0, 1)};
  CHECK(span_intersect(X, Y, q).empty());

  std::vector<SVec> diag = {vec2(q, 1, 1)};
  auto meet = span_intersect(A, diag, q);
  REQUIRE(meet.size() == 1);
  CHECK(meet[0] == vec2(q, 1, 1));
}

TEST_CASE("dimension law and membership, 100 random trials") {
  for (const Field& f : {Field::rationals(), Field::prime(7)}) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
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
      CHECK(span_rank(both, f) + static_cast<int>(span_intersect(V, W, f).size()) ==
            span_rank(V, f) + span_rank(W, f));

      // membership iff adding does not increase rank
      std::vector<SVec> basis = span_basis(V, f);
      SVec probe = rand_vecs(1)[0];
      std::vector<SVec> extended = V;
      extended.push_back(probe);
      bool member = in_span(probe, basis, f).has_value();
      CHECK(member == (span_rank(extended, f) == span_rank(V, f)));
    }
  }
}

TEST_CASE("kernel finds exact null combinations") {
  Field q = Field::rationals();
  std::vector<SVec> cols = {vec2(q, 1, 0), vec2(q, 0, 1), vec2(q, 1, 1)};
  auto ker = kernel(cols, q);
  REQUIRE(ker.size() == 1);
  SVec combo;
  for (const auto& [pos, c] : ker[0].terms()) combo.add_scaled(cols[pos], c);
  CHECK(combo.is_zero());
}
