#include "grpd/nonabelian_h1.hpp"

#include <algorithm>

#include "grpd/errors.hpp"

namespace grpd {

namespace {

// Union-find over the twisted action restricted to `domain`. Moves by a
// generating set suffice: the twisted action is a group action, so orbits
// are the connected components of the generator-move graph.
std::vector<std::vector<int>> twisted_orbits(const FiniteGroup& g,
                                             const GroupInvolution& s,
                                             const std::vector<int>& domain) {
  std::vector<int> pos(g.order(), -1);
  for (std::size_t i = 0; i < domain.size(); ++i) pos[domain[i]] = i;

  std::vector<int> parent(domain.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  std::vector<int> gens = g.generating_set();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    int gamma = domain[i];
    for (int beta : gens) {
      int moved = g.mul(g.mul(beta, gamma), g.inv(s(beta)));
      unite(static_cast<int>(i), pos[moved]);
    }
  }

  std::vector<std::vector<int>> classes;
  std::vector<int> cls(domain.size(), -1);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    int r = find(static_cast<int>(i));
    if (cls[r] < 0) {
      cls[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[cls[r]].push_back(domain[i]);
  }
  // domain is scanned ascending, so blocks are sorted and ordered by min.
  return classes;
}

void require_involution_arity(const FiniteGroup& g, const GroupInvolution& s) {
  if (static_cast<int>(s.map().size()) != g.order())
    throw PreconditionError("involution arity does not match group order");
}

}  // namespace

std::vector<int> z1(const FiniteGroup& g, const GroupInvolution& s) {
  require_involution_arity(g, s);
  std::vector<int> out;
  for (int gamma = 0; gamma < g.order(); ++gamma)
    if (g.mul(gamma, s(gamma)) == 0) out.push_back(gamma);
  return out;
}

H1ClassSet h1(const FiniteGroup& g, const GroupInvolution& s) {
  H1ClassSet res;
  res.cocycles = z1(g, s);
  res.classes = twisted_orbits(g, s, res.cocycles);
  for (const auto& c : res.classes) res.representatives.push_back(c.front());
  return res;
}

std::vector<std::vector<int>> sigma_conjugacy_orbits(const FiniteGroup& g,
                                                     const GroupInvolution& s) {
  require_involution_arity(g, s);
  std::vector<int> all(g.order());
  for (int i = 0; i < g.order(); ++i) all[i] = i;
  return twisted_orbits(g, s, all);
}

GroupInvolution twisted_involution(const FiniteGroup& g,
                                   const GroupInvolution& s, int gamma) {
  require_involution_arity(g, s);
  if (gamma < 0 || gamma >= g.order() || g.mul(gamma, s(gamma)) != 0)
    throw PreconditionError("twisted involution requires gamma in Z1");
  std::vector<int> map(g.order());
  for (int x = 0; x < g.order(); ++x)
    map[x] = g.mul(g.mul(gamma, s(x)), g.inv(gamma));
  return make_group_involution(g, std::move(map));
}

Subgroup fixed_subgroup(const FiniteGroup& g, const GroupInvolution& s,
                        int gamma) {
  GroupInvolution tw = twisted_involution(g, s, gamma);
  std::vector<int> elems;
  for (int x = 0; x < g.order(); ++x)
    if (tw(x) == x) elems.push_back(x);
  return subgroup_of(g, std::move(elems),
                     g.label() + "^s[" + std::to_string(gamma) + "]");
}

SawinReport sawin_report(const FiniteGroup& g, const GroupInvolution& s) {
  SawinReport r;
  r.h1_count = h1(g, s).count();
  r.sigma_conjugacy_count =
      static_cast<int>(sigma_conjugacy_orbits(g, s).size());

  auto classes = conjugacy_classes(g);
  r.conjugacy_count = static_cast<int>(classes.size());
  std::vector<int> class_of(g.order());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int x : classes[c]) class_of[x] = static_cast<int>(c);
  for (const auto& c : classes)
    if (class_of[s(c.front())] == class_of[c.front()]) ++r.stable_class_count;

  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < g.order(); ++h)
      if (g.mul(g.mul(h, x), g.inv(s(h))) == x) ++r.stab_sigma_sum;

  const long long n = g.order();
  r.orbit_identity_holds = (r.stab_sigma_sum == n * r.sigma_conjugacy_count);
  r.class_identity_holds = (r.stab_sigma_sum == n * r.stable_class_count);
  r.chain_holds = r.h1_count <= r.sigma_conjugacy_count &&
                  r.sigma_conjugacy_count == r.stable_class_count &&
                  r.stable_class_count <= r.conjugacy_count;
  return r;
}

}  // namespace grpd
