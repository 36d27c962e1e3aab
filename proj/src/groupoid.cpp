#include "gcp/groupoid.hpp"

#include <algorithm>
#include <set>

namespace gcp {

bool FiniteGroupoid::is_unit(int a) const { return std::binary_search(units.begin(), units.end(), a); }

int FiniteGroupoid::arrow_id(const std::string& name) const {
  for (int i = 0; i < n(); ++i)
    if (names[i] == name) return i;
  return -1;
}

std::optional<std::string> FiniteGroupoid::validate() const {
  int N = n();
  auto bad = [&](const std::string& m) { return std::optional<std::string>(m); };
  if (static_cast<int>(r.size()) != N || static_cast<int>(s.size()) != N || static_cast<int>(inv.size()) != N ||
      static_cast<int>(cocycle.size()) != N)
    return bad("map sizes do not match the arrow count");
  for (int u : units) {
    if (r[u] != u || s[u] != u) return bad("unit " + names[u] + " has r or s not equal to itself");
    if (cocycle[u] != 0) return bad("unit " + names[u] + " has nonzero cocycle");
  }
  for (int a = 0; a < N; ++a) {
    if (!is_unit(r[a]) || !is_unit(s[a])) return bad("r or s of " + names[a] + " is not a unit");
    if (inv[inv[a]] != a) return bad("inverse is not an involution at " + names[a]);
    if (r[inv[a]] != s[a] || s[inv[a]] != r[a]) return bad("inverse of " + names[a] + " has wrong range/source");
    if (cocycle[inv[a]] != -cocycle[a]) return bad("cocycle not antisymmetric at " + names[a]);
    if (!composable(a, inv[a]) || compose(a, inv[a]) != r[a]) return bad("a a^{-1} != r(a) at " + names[a]);
    if (!composable(inv[a], a) || compose(inv[a], a) != s[a]) return bad("a^{-1} a != s(a) at " + names[a]);
    if (!composable(r[a], a) || compose(r[a], a) != a) return bad("r(a) a != a at " + names[a]);
    if (!composable(a, s[a]) || compose(a, s[a]) != a) return bad("a s(a) != a at " + names[a]);
  }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      bool should = s[a] == r[b];
      if (should != composable(a, b))
        return bad("composability of (" + names[a] + "," + names[b] + ") disagrees with s/r");
      if (!should) continue;
      int c = compose(a, b);
      if (r[c] != r[a] || s[c] != s[b]) return bad("composite of (" + names[a] + "," + names[b] + ") has wrong ends");
      if (cocycle[c] != cocycle[a] + cocycle[b])
        return bad("cocycle not additive on (" + names[a] + "," + names[b] + ")");
    }
  for (const auto& [ab, c] : comp) {
    auto [a, b] = ab;
    (void)c;
    for (int d = 0; d < N; ++d) {
      if (!composable(b, d)) continue;
      // (a b) d == a (b d)
      if (compose(compose(a, b), d) != compose(a, compose(b, d)))
        return bad("associativity fails at (" + names[a] + "," + names[b] + "," + names[d] + ")");
    }
  }
  return std::nullopt;
}

std::vector<int> FiniteGroupoid::degree_arrows(int deg) const {
  std::vector<int> out;
  for (int a = 0; a < n(); ++a)
    if (cocycle[a] == deg) out.push_back(a);
  return out;
}

int FiniteGroupoid::min_degree() const {
  int m = 0;
  for (int c : cocycle) m = std::min(m, c);
  return m;
}

int FiniteGroupoid::max_degree() const {
  int m = 0;
  for (int c : cocycle) m = std::max(m, c);
  return m;
}

ArrowSet sorted_unique(ArrowSet v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

ArrowSet set_product(const FiniteGroupoid& G, const ArrowSet& X, const ArrowSet& Y) {
  ArrowSet out;
  for (int a : X)
    for (int b : Y)
      if (G.composable(a, b)) out.push_back(G.compose(a, b));
  return sorted_unique(std::move(out));
}

ArrowSet set_union(const ArrowSet& a, const ArrowSet& b) {
  ArrowSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_subset(const ArrowSet& a, const ArrowSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ArrowSet set_minus(const ArrowSet& a, const ArrowSet& b) {
  ArrowSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ArrowSet set_inverse(const FiniteGroupoid& G, const ArrowSet& X) {
  ArrowSet out;
  for (int a : X) out.push_back(G.inv[a]);
  return sorted_unique(std::move(out));
}

ArrowSet range_set(const FiniteGroupoid& G, const ArrowSet& X) {
  ArrowSet out;
  for (int a : X) out.push_back(G.r[a]);
  return sorted_unique(std::move(out));
}

ArrowSet source_set(const FiniteGroupoid& G, const ArrowSet& X) {
  ArrowSet out;
  for (int a : X) out.push_back(G.s[a]);
  return sorted_unique(std::move(out));
}

FiniteGroupoid random_groupoid(std::mt19937_64& rng, int max_points, int max_weight) {
  int npoints = 2 + static_cast<int>(rng() % static_cast<uint64_t>(std::max(1, max_points - 1)));
  std::vector<int> cls(npoints), w(npoints);
  int nclasses = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < npoints; ++i) {
    cls[i] = static_cast<int>(rng() % static_cast<uint64_t>(nclasses));
    w[i] = static_cast<int>(rng() % static_cast<uint64_t>(max_weight + 1));
  }
  FiniteGroupoid G;
  std::map<std::pair<int, int>, int> id;  // (x, y) -> arrow
  for (int x = 0; x < npoints; ++x)
    for (int y = 0; y < npoints; ++y) {
      if (cls[x] != cls[y]) continue;
      int a = G.n();
      id[{x, y}] = a;
      G.names.push_back("p" + std::to_string(x) + "q" + std::to_string(y));
      G.cocycle.push_back(w[x] - w[y]);
      G.r.push_back(0);
      G.s.push_back(0);
      G.inv.push_back(0);
    }
  for (const auto& [xy, a] : id) {
    auto [x, y] = xy;
    G.r[a] = id.at({x, x});
    G.s[a] = id.at({y, y});
    G.inv[a] = id.at({y, x});
    if (x == y) G.units.push_back(a);
    for (int z = 0; z < npoints; ++z) {
      if (cls[z] != cls[x]) continue;
      G.comp[{a, id.at({y, z})}] = id.at({x, z});
    }
  }
  G.units = sorted_unique(std::move(G.units));
  return G;
}

ArrowSet random_bisection(const FiniteGroupoid& G, std::mt19937_64& rng) {
  std::vector<int> arrows(G.n());
  for (int i = 0; i < G.n(); ++i) arrows[i] = i;
  // seeded shuffle
  for (int i = G.n() - 1; i > 0; --i) std::swap(arrows[i], arrows[rng() % static_cast<uint64_t>(i + 1)]);
  size_t want = 1 + rng() % static_cast<uint64_t>(std::max(1, G.n()));
  ArrowSet out;
  std::set<int> used_r, used_s;
  for (int a : arrows) {
    if (out.size() >= want) break;
    if (used_r.count(G.r[a]) || used_s.count(G.s[a])) continue;
    used_r.insert(G.r[a]);
    used_s.insert(G.s[a]);
    out.push_back(a);
  }
  return sorted_unique(std::move(out));
}

}  // namespace gcp
