// Brute-force oracles used only by the test suites. Each one recomputes a
// quantity along the most literal route available, independent of the
// library's implementation choices.
#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "grpd/finite_group.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/involution.hpp"

namespace oracle {

// Conjugacy classes via the full quadratic orbit scan.
inline std::vector<std::vector<int>> conjugacy_classes(
    const grpd::FiniteGroup& g) {
  const int n = g.order();
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    std::vector<int> block;
    for (int h = 0; h < n; ++h) {
      int y = g.mul(g.mul(h, x), g.inv(h));
      if (cls[y] < 0) {
        cls[y] = static_cast<int>(out.size());
        block.push_back(y);
      }
    }
    std::sort(block.begin(), block.end());
    out.push_back(std::move(block));
  }
  return out;
}

// All bijections fixing the identity, filtered to multiplicative involutions.
// Only usable for small orders (factorial search).
inline std::vector<std::vector<int>> involutive_automorphisms(
    const grpd::FiniteGroup& g) {
  const int n = g.order();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      if (perm[perm[x]] != x) ok = false;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if (perm[g.mul(a, b)] != g.mul(perm[a], perm[b])) ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

// Existence of an isomorphism by scanning all identity-fixing bijections.
inline bool isomorphic(const grpd::FiniteGroup& a,
                       const grpd::FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  const int n = a.order();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        if (perm[a.mul(x, y)] != b.mul(perm[x], perm[y])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

// Twisted-conjugacy orbits by the full move set (every β, not a generating
// set), via naive label propagation.
inline std::vector<std::vector<int>> twisted_orbits(
    const grpd::FiniteGroup& g, const grpd::GroupInvolution& s,
    const std::vector<int>& domain) {
  std::vector<int> pos(g.order(), -1);
  for (std::size_t i = 0; i < domain.size(); ++i) pos[domain[i]] = i;
  std::vector<int> cls(domain.size());
  std::iota(cls.begin(), cls.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < domain.size(); ++i)
      for (int beta = 0; beta < g.order(); ++beta) {
        int moved = g.mul(g.mul(beta, domain[i]), g.inv(s(beta)));
        int j = pos[moved];
        int lo = std::min(cls[i], cls[j]), hi = std::max(cls[i], cls[j]);
        if (lo != hi) {
          for (auto& c : cls)
            if (c == hi) c = lo;
          changed = true;
        }
      }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> remap(domain.size(), -1);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (remap[cls[i]] < 0) {
      remap[cls[i]] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[remap[cls[i]]].push_back(domain[i]);
  }
  return out;
}

// Coarse class count of the fixed-point groupoid via the direct quotient:
// enumerate the cocycle pairs and identify (x,φ) with (y,ψ) whenever some
// arrow f: x → y satisfies ψ∘f = σ(f)∘φ.
inline int fixed_coarse_count(const grpd::FiniteGroupoid& x,
                              const grpd::GroupoidInvolution& s) {
  std::vector<std::pair<int, int>> z1;
  for (int o = 0; o < x.object_count(); ++o)
    for (int phi : x.arrows_from(o)) {
      if (x.target(phi) != s.object_map[o]) continue;
      if (x.compose(s.arrow_map[phi], phi) != x.identity_arrow(o)) continue;
      z1.emplace_back(o, phi);
    }
  std::vector<int> cls(z1.size());
  std::iota(cls.begin(), cls.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < z1.size(); ++i)
      for (std::size_t j = 0; j < z1.size(); ++j) {
        if (cls[i] == cls[j]) continue;
        auto [xo, phi] = z1[i];
        auto [yo, psi] = z1[j];
        bool related = false;
        for (int f : x.hom(xo, yo))
          if (x.compose(psi, f) == x.compose(s.arrow_map[f], phi)) {
            related = true;
            break;
          }
        if (related) {
          int lo = std::min(cls[i], cls[j]), hi = std::max(cls[i], cls[j]);
          for (auto& c : cls)
            if (c == hi) c = lo;
          changed = true;
        }
      }
  }
  std::vector<int> uniq(cls);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  return static_cast<int>(uniq.size());
}

// Index of a permutation of {0..n-1} inside symmetric_group(n).
inline int perm_index(int n, const std::vector<int>& images) {
  std::vector<long> fact(n, 1);
  for (int i = 1; i < n; ++i) fact[i] = fact[i - 1] * i;
  long rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (images[j] < images[i]) ++smaller;
    rank += smaller * fact[n - 1 - i];
  }
  return static_cast<int>(rank);
}

}  // namespace oracle
