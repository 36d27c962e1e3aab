#include "gcp/scalar.hpp"

namespace gcp {

static bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Field Field::prime(unsigned long p) {
  if (!is_prime(p)) throw PreconditionError("field characteristic must be prime, got " + std::to_string(p));
  Field f;
  f.p_ = p;
  return f;
}

std::string Field::str() const {
  return p_ == 0 ? "rational" : "F_" + std::to_string(p_);
}

Scalar::Scalar(const Field& f, long n) : f_(f), v_(n) { canon(); }

Scalar Scalar::from_mpq(const Field& f, const mpq_class& q) {
  Scalar s(f, q);
  s.v_.canonicalize();
  s.canon();
  return s;
}

Scalar Scalar::parse(const Field& f, const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw Error("bad scalar literal '" + text + "'");
  q.canonicalize();
  if (f.is_rational()) return from_mpq(f, q);
  // n/d mod p: n * d^{-1}
  Scalar num = from_mpq(f, mpq_class(q.get_num()));
  Scalar den = from_mpq(f, mpq_class(q.get_den()));
  return num / den;
}

void Scalar::canon() {
  if (f_.is_rational()) return;
  mpz_class p(static_cast<unsigned long>(f_.characteristic()));
  mpz_class n = v_.get_num();
  // fractions never reach here with nontrivial denominator except via
  // from_mpq; clear it by modular inverse
  if (v_.get_den() != 1) {
    mpz_class d = v_.get_den();
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()) == 0)
      throw Error("denominator not invertible mod " + p.get_str());
    n *= dinv;
  }
  mpz_class r;
  mpz_mod(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  v_ = mpq_class(r);
}

void Scalar::match(const Scalar& o) const {
  if (f_ != o.f_) throw FieldMismatchError("scalar fields differ: " + f_.str() + " vs " + o.f_.str());
}

Scalar Scalar::operator+(const Scalar& o) const {
  match(o);
  Scalar r(f_, mpq_class(v_ + o.v_));
  r.canon();
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  match(o);
  Scalar r(f_, mpq_class(v_ - o.v_));
  r.canon();
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  match(o);
  Scalar r(f_, mpq_class(v_ * o.v_));
  r.canon();
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::operator-() const {
  Scalar r(f_, mpq_class(-v_));
  r.canon();
  return r;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error("division by zero");
  if (f_.is_rational()) return Scalar(f_, mpq_class(1 / v_));
  mpz_class p(f_.characteristic()), n = v_.get_num(), r;
  if (mpz_invert(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()) == 0)
    throw Error("not invertible mod " + p.get_str());
  return Scalar(f_, mpq_class(r));
}

bool Scalar::operator==(const Scalar& o) const {
  match(o);
  return v_ == o.v_;
}

std::string Scalar::str() const { return v_.get_str(); }

}  // namespace gcp
