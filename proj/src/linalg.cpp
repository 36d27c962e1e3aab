#include "gcp/linalg.hpp"

namespace gcp {

SVec SVec::remapped(const std::map<int, int>& fn) const {
  SVec r;
  for (const auto& [key, val] : c_) r.set(fn.at(key), val);
  return r;
}

SVec SVec::shifted(int offset) const {
  SVec r;
  for (const auto& [key, val] : c_) r.set(key + offset, val);
  return r;
}

bool SVec::operator==(const SVec& o) const {
  if (c_.size() != o.c_.size()) return false;
  auto it = c_.begin(), jt = o.c_.begin();
  for (; it != c_.end(); ++it, ++jt)
    if (it->first != jt->first || it->second != jt->second) return false;
  return true;
}

SVec Echelon::reduce(const SVec& v, SVec* combo) const {
  SVec r = v;
  SVec acc;
  while (!r.is_zero()) {
    auto it = by_pivot_.find(r.lead());
    if (it == by_pivot_.end()) {
      // eliminate any further pivot keys deeper in the support
      bool hit = false;
      for (const auto& [key, val] : r.terms()) {
        auto jt = by_pivot_.find(key);
        if (jt == by_pivot_.end()) continue;
        const Row& row = rows_[jt->second];
        if (track_) acc.add_scaled(row.combo, val);
        r.add_scaled(row.v, -val);
        hit = true;
        break;
      }
      if (!hit) break;
      continue;
    }
    const Row& row = rows_[it->second];
    Scalar c = r.lead_coeff();
    if (track_) acc.add_scaled(row.combo, c);
    r.add_scaled(row.v, -c);
  }
  if (combo) *combo = acc;
  return r;
}

SVec Echelon::insert(const SVec& v, SVec* combo) {
  SVec acc;
  SVec r = reduce(v, track_ ? &acc : nullptr);
  int idx = n_inserted_++;
  if (r.is_zero()) {
    if (combo) *combo = acc;
    return r;
  }
  Scalar lc = r.lead_coeff();
  SVec row_combo;
  if (track_) {
    // row = (v - acc)/lc as a combination of inserted vectors
    row_combo = acc.scaled(-Scalar::one(f_));
    row_combo.add_term(idx, Scalar::one(f_));
    row_combo.scale(lc.inv());
  }
  r.scale(lc.inv());
  int pivot = r.lead();
  // eliminate the new pivot from existing rows
  for (auto& [pk, ri] : by_pivot_) {
    (void)pk;
    Row& row = rows_[ri];
    Scalar c = row.v.get(pivot, f_);
    if (c.is_zero()) continue;
    row.v.add_scaled(r, -c);
    if (track_) row.combo.add_scaled(row_combo, -c);
  }
  by_pivot_[pivot] = static_cast<int>(rows_.size());
  rows_.push_back(Row{std::move(r), std::move(row_combo)});
  if (combo) *combo = acc;
  return rows_.back().v;
}

std::vector<SVec> Echelon::basis() const {
  std::vector<SVec> out;
  out.reserve(rows_.size());
  for (const auto& [pk, ri] : by_pivot_) {
    (void)pk;
    out.push_back(rows_[ri].v);
  }
  return out;
}

std::vector<int> Echelon::pivots() const {
  std::vector<int> out;
  out.reserve(by_pivot_.size());
  for (const auto& [pk, ri] : by_pivot_) {
    (void)ri;
    out.push_back(pk);
  }
  return out;
}

std::vector<SVec> span_basis(const std::vector<SVec>& vecs, const Field& f) {
  Echelon e(f);
  for (const auto& v : vecs) e.insert(v);
  return e.basis();
}

std::optional<std::map<int, Scalar>> in_span(const SVec& v, const std::vector<SVec>& gens, const Field& f) {
  Echelon e(f, /*track=*/true);
  for (const auto& g : gens) e.insert(g);
  SVec combo;
  SVec residue = e.reduce(v, &combo);
  if (!residue.is_zero()) return std::nullopt;
  return combo.terms();
}

std::vector<SVec> kernel(const std::vector<SVec>& cols, const Field& f) {
  Echelon e(f, /*track=*/true);
  std::vector<SVec> out;
  for (size_t j = 0; j < cols.size(); ++j) {
    SVec combo;
    SVec residue = e.insert(cols[j], &combo);
    if (residue.is_zero()) {
      // col_j - combo = 0
      SVec k = combo.scaled(-Scalar::one(f));
      k.add_term(static_cast<int>(j), Scalar::one(f));
      out.push_back(std::move(k));
    }
  }
  return out;
}

std::vector<SVec> span_intersect(const std::vector<SVec>& a, const std::vector<SVec>& b, const Field& f) {
  // kernel of [a | -b]; the a-part of each kernel vector spans the intersection
  std::vector<SVec> cols;
  cols.reserve(a.size() + b.size());
  for (const auto& v : a) cols.push_back(v);
  for (const auto& v : b) cols.push_back(v.scaled(-Scalar::one(f)));
  std::vector<SVec> ker = kernel(cols, f);
  std::vector<SVec> meet;
  for (const auto& k : ker) {
    SVec w;
    for (const auto& [pos, c] : k.terms()) {
      if (pos < static_cast<int>(a.size())) w.add_scaled(a[pos], c);
    }
    if (!w.is_zero()) meet.push_back(std::move(w));
  }
  return span_basis(meet, f);
}

int span_rank(const std::vector<SVec>& vecs, const Field& f) {
  Echelon e(f);
  for (const auto& v : vecs) e.insert(v);
  return e.rank();
}

bool same_span(const std::vector<SVec>& a, const std::vector<SVec>& b, const Field& f) {
  Echelon ea(f), eb(f);
  for (const auto& v : a) ea.insert(v);
  for (const auto& v : b) eb.insert(v);
  if (ea.rank() != eb.rank()) return false;
  for (const auto& v : b)
    if (!ea.contains(v)) return false;
  return true;
}

SVec stack_vecs(const std::vector<SVec>& parts, int stride) {
  SVec out;
  for (size_t i = 0; i < parts.size(); ++i) out.add(parts[i].shifted(static_cast<int>(i) * stride));
  return out;
}

std::string format_svec(const SVec& v, const std::vector<std::string>& names) {
  if (v.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : v.terms()) {
    std::string cs = c.str();
    if (!first) out += " + ";
    first = false;
    const std::string& nm = key >= 0 && key < static_cast<int>(names.size()) ? names[key] : "#" + std::to_string(key);
    if (cs == "1")
      out += nm;
    else
      out += cs + "*" + nm;
  }
  return out;
}

}  // namespace gcp
