#ifndef GCP_LINALG_HPP
#define GCP_LINALG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcp/scalar.hpp"

namespace gcp {

// Sparse vector over interned basis labels.  No zero coordinate is ever
// stored, so emptiness == being the zero vector.
class SVec {
 public:
  SVec() = default;

  static SVec unit(int key, const Scalar& one) {
    SVec v;
    v.set(key, one);
    return v;
  }

  bool is_zero() const { return c_.empty(); }
  size_t nterms() const { return c_.size(); }

  void set(int key, const Scalar& s) {
    if (s.is_zero())
      c_.erase(key);
    else
      c_[key] = s;
  }

  // coefficient at key, zero of `f` when absent
  Scalar get(int key, const Field& f) const {
    auto it = c_.find(key);
    return it == c_.end() ? Scalar::zero(f) : it->second;
  }

  bool has(int key) const { return c_.count(key) != 0; }

  void add_term(int key, const Scalar& s) {
    auto it = c_.find(key);
    if (it == c_.end()) {
      if (!s.is_zero()) c_.emplace(key, s);
      return;
    }
    Scalar r = it->second + s;
    if (r.is_zero())
      c_.erase(it);
    else
      it->second = r;
  }

  // this += k * o
  void add_scaled(const SVec& o, const Scalar& k) {
    if (k.is_zero()) return;
    for (const auto& [key, val] : o.c_) add_term(key, val * k);
  }

  void add(const SVec& o) {
    for (const auto& [key, val] : o.c_) add_term(key, val);
  }

  void scale(const Scalar& k) {
    if (k.is_zero()) {
      c_.clear();
      return;
    }
    for (auto& [key, val] : c_) val = val * k;
  }

  SVec scaled(const Scalar& k) const {
    SVec r = *this;
    r.scale(k);
    return r;
  }

  SVec minus(const SVec& o, const Field& f) const {
    SVec r = *this;
    r.add_scaled(o, -Scalar::one(f));
    return r;
  }

  // smallest stored key; only valid when nonzero
  int lead() const { return c_.begin()->first; }
  const Scalar& lead_coeff() const { return c_.begin()->second; }

  // remap keys through fn (must be injective on the support)
  SVec remapped(const std::map<int, int>& fn) const;
  SVec shifted(int offset) const;

  bool operator==(const SVec& o) const;
  bool operator!=(const SVec& o) const { return !(*this == o); }

  const std::map<int, Scalar>& terms() const { return c_; }

 private:
  std::map<int, Scalar> c_;
};

// Reduced row echelon span with optional bookkeeping of how each row was
// obtained from the inserted vectors.  Pivot = smallest key of a row; pivot
// coefficient normalized to one and eliminated from every other row.
class Echelon {
 public:
  explicit Echelon(const Field& f, bool track = false) : f_(f), track_(track) {}

  // Reduce v against the current rows.  If the residue is nonzero it becomes
  // a new row.  Returns the residue; when tracking, *combo receives the
  // combination of previously inserted vectors with v = combo + residue.
  SVec insert(const SVec& v, SVec* combo = nullptr);

  // Reduction without insertion.
  SVec reduce(const SVec& v, SVec* combo = nullptr) const;

  bool contains(const SVec& v) const { return reduce(v).is_zero(); }

  int rank() const { return static_cast<int>(rows_.size()); }
  std::vector<SVec> basis() const;
  const Field& field() const { return f_; }
  // keys that are pivots of some row
  std::vector<int> pivots() const;
  bool is_pivot(int key) const { return by_pivot_.count(key) != 0; }

 private:
  struct Row {
    SVec v;
    SVec combo;  // expression of v in the inserted vectors (when tracking)
  };
  Field f_;
  bool track_;
  int n_inserted_ = 0;
  std::vector<Row> rows_;
  std::map<int, int> by_pivot_;  // pivot key -> index into rows_
};

// Reduced echelon basis of the span; empty for all-zero input.
std::vector<SVec> span_basis(const std::vector<SVec>& vecs, const Field& f);

// Coefficients expressing v in the given (arbitrary) list of vectors, as a
// sparse map position -> coefficient; nullopt when v is outside the span.
std::optional<std::map<int, Scalar>> in_span(const SVec& v, const std::vector<SVec>& gens, const Field& f);

// Basis of the intersection of two spans over a shared index set.
std::vector<SVec> span_intersect(const std::vector<SVec>& a, const std::vector<SVec>& b, const Field& f);

// Basis of { c : sum_i c_i cols[i] = 0 }, keys = column positions.
std::vector<SVec> kernel(const std::vector<SVec>& cols, const Field& f);

int span_rank(const std::vector<SVec>& vecs, const Field& f);
bool same_span(const std::vector<SVec>& a, const std::vector<SVec>& b, const Field& f);

// Stack a list of vectors into one by shifting vector i's keys by i*stride.
// stride must exceed every key in use.
SVec stack_vecs(const std::vector<SVec>& parts, int stride);

std::string format_svec(const SVec& v, const std::vector<std::string>& names);

}  // namespace gcp

#endif
