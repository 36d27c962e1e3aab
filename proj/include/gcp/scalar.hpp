#ifndef GCP_SCALAR_HPP
#define GCP_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "gcp/error.hpp"

namespace gcp {

// Coefficient field of a run: the rationals (characteristic 0) or a prime
// field F_p.
class Field {
 public:
  Field() : p_(0) {}
  static Field rationals() { return Field(); }
  static Field prime(unsigned long p);

  bool is_rational() const { return p_ == 0; }
  unsigned long characteristic() const { return p_; }

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

  std::string str() const;

 private:
  unsigned long p_;
};

// Exact field element.  Canonical form: reduced fraction over Q, least
// nonnegative residue (denominator 1) over F_p.
class Scalar {
 public:
  Scalar() : f_(), v_(0) {}
  Scalar(const Field& f, long n);
  static Scalar zero(const Field& f) { return Scalar(f, 0); }
  static Scalar one(const Field& f) { return Scalar(f, 1); }
  static Scalar from_mpq(const Field& f, const mpq_class& q);
  // Literals: "-3", "5/7".  Over F_p the denominator is inverted mod p.
  static Scalar parse(const Field& f, const std::string& text);

  const Field& field() const { return f_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inv() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  const mpq_class& value() const { return v_; }
  std::string str() const;

 private:
  Scalar(const Field& f, mpq_class v) : f_(f), v_(std::move(v)) {}
  void canon();
  void match(const Scalar& o) const;

  Field f_;
  mpq_class v_;
};

}  // namespace gcp

#endif
