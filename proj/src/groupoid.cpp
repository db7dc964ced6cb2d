#include "grpd/groupoid.hpp"

#include <algorithm>
#include <numeric>

#include "grpd/errors.hpp"
#include "grpd/rng.hpp"

namespace grpd {

FiniteGroupoid::FiniteGroupoid(Data d)
    : d_(std::move(d)), hom_cache_(std::make_shared<HomCache>()) {
  if (static_cast<long>(d_.source.size()) > caps().arrow_cap)
    throw CapError("arrow pool of size " + std::to_string(d_.source.size()) +
                   " exceeds cap " + std::to_string(caps().arrow_cap));
  out_.resize(d_.object_count);
  in_.resize(d_.object_count);
  for (int f = 0; f < arrow_count(); ++f) {
    if (d_.source[f] < 0 || d_.source[f] >= d_.object_count ||
        d_.target[f] < 0 || d_.target[f] >= d_.object_count)
      throw ValidationError("arrow " + std::to_string(f) +
                            " has out-of-range endpoints");
    out_[d_.source[f]].push_back(f);
    in_[d_.target[f]].push_back(f);
  }
}

int FiniteGroupoid::compose(int g, int f) const {
  if (!composable(g, f))
    throw PreconditionError("compose: arrows " + std::to_string(g) + "∘" +
                            std::to_string(f) + " are not composable");
  auto it = d_.compose.find(key(g, f));
  if (it == d_.compose.end())
    throw ValidationError("compose: missing entry for composable pair (" +
                          std::to_string(g) + "," + std::to_string(f) + ")");
  return it->second;
}

const std::vector<int>& FiniteGroupoid::hom(int x, int y) const {
  std::lock_guard<std::mutex> lock(hom_cache_->mutex);
  auto it = hom_cache_->entries.find({x, y});
  if (it != hom_cache_->entries.end()) return it->second;
  std::vector<int> arrows;
  for (int f : out_[x])
    if (d_.target[f] == y) arrows.push_back(f);
  return hom_cache_->entries.emplace(std::make_pair(x, y), std::move(arrows))
      .first->second;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

std::vector<Violation> validate(const FiniteGroupoid& x, long triple_budget) {
  std::vector<Violation> v;
  auto add = [&](const std::string& axiom, const std::string& witness) {
    if (v.size() < 32) v.push_back({axiom, witness});
  };
  const auto& d = x.data();
  const int m = x.arrow_count();

  if (static_cast<int>(d.identity_arrow.size()) != d.object_count)
    add("arity", "identity_arrow size != object count");
  if (static_cast<int>(d.inverse_arrow.size()) != m)
    add("arity", "inverse_arrow size != arrow count");
  if (d.target.size() != d.source.size())
    add("arity", "target size != source size");
  if (!v.empty()) return v;

  for (int o = 0; o < d.object_count; ++o) {
    int e = d.identity_arrow[o];
    if (e < 0 || e >= m) {
      add("identity endpoint", "object " + std::to_string(o) + ": bad index");
      continue;
    }
    if (d.source[e] != o || d.target[e] != o)
      add("identity endpoint", "object " + std::to_string(o));
  }

  for (int f = 0; f < m; ++f) {
    int g = d.inverse_arrow[f];
    if (g < 0 || g >= m) {
      add("inverse", "arrow " + std::to_string(f) + ": bad index");
      continue;
    }
    if (d.source[g] != d.target[f] || d.target[g] != d.source[f])
      add("inverse endpoints", "arrow " + std::to_string(f));
  }
  if (!v.empty()) return v;

  // Composition domain: the map must contain exactly the composable pairs.
  long expected = 0;
  for (int o = 0; o < d.object_count; ++o)
    expected += static_cast<long>(x.arrows_into(o).size()) *
                static_cast<long>(x.arrows_from(o).size());
  if (static_cast<long>(d.compose.size()) != expected)
    add("composition domain",
        "have " + std::to_string(d.compose.size()) + " entries, expected " +
            std::to_string(expected));
  for (const auto& [k, gf] : d.compose) {
    int g = static_cast<int>(k / std::max(m, 1));
    int f = static_cast<int>(k % std::max(m, 1));
    if (g >= m || f >= m || d.target[f] != d.source[g]) {
      add("composition domain", "entry (" + std::to_string(g) + "," +
                                    std::to_string(f) + ") not composable");
      continue;
    }
    if (gf < 0 || gf >= m) {
      add("composition range", "(" + std::to_string(g) + "," +
                                   std::to_string(f) + ")");
      continue;
    }
    if (d.source[gf] != d.source[f] || d.target[gf] != d.target[g])
      add("composition endpoints",
          "(" + std::to_string(g) + "," + std::to_string(f) + ")");
  }
  if (!v.empty()) return v;

  // Unit and inverse laws.
  for (int f = 0; f < m; ++f) {
    int es = d.identity_arrow[d.source[f]];
    int et = d.identity_arrow[d.target[f]];
    if (x.compose(f, es) != f)
      add("identity unit", "f∘e != f at arrow " + std::to_string(f));
    if (x.compose(et, f) != f)
      add("identity unit", "e∘f != f at arrow " + std::to_string(f));
    int g = d.inverse_arrow[f];
    if (x.compose(g, f) != es)
      add("inverse law", "f⁻¹∘f at arrow " + std::to_string(f));
    if (x.compose(f, g) != et)
      add("inverse law", "f∘f⁻¹ at arrow " + std::to_string(f));
    if (v.size() >= 32) return v;
  }
  if (!v.empty()) return v;

  // Associativity over composable triples (h, g, f): exhaustive within the
  // budget, deterministically sampled beyond.
  long triple_count = 0;
  for (int o = 0; o < d.object_count; ++o) {
    long ins = static_cast<long>(x.arrows_into(o).size());
    for (int g : x.arrows_from(o))
      triple_count += ins * static_cast<long>(x.arrows_from(d.target[g]).size());
  }
  auto check_triple = [&](int h, int g, int f) {
    int left = x.compose(h, x.compose(g, f));
    int right = x.compose(x.compose(h, g), f);
    if (left != right)
      add("associativity", "(" + std::to_string(h) + "," + std::to_string(g) +
                               "," + std::to_string(f) + ")");
  };
  if (triple_count <= triple_budget) {
    for (int f = 0; f < m && v.empty(); ++f)
      for (int g : x.arrows_from(d.target[f])) {
        for (int h : x.arrows_from(d.target[g])) {
          check_triple(h, g, f);
          if (!v.empty()) break;
        }
        if (!v.empty()) break;
      }
  } else if (m > 0) {
    SplitMix64 rng(0x617373ull);
    for (long i = 0; i < triple_budget && v.empty(); ++i) {
      int f = static_cast<int>(rng.below(m));
      const auto& outs_g = x.arrows_from(d.target[f]);
      if (outs_g.empty()) continue;
      int g = outs_g[rng.below(outs_g.size())];
      const auto& outs_h = x.arrows_from(d.target[g]);
      if (outs_h.empty()) continue;
      int h = outs_h[rng.below(outs_h.size())];
      check_triple(h, g, f);
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Coarse space
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> coarse_space(const FiniteGroupoid& x) {
  const int n = x.object_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int f = 0; f < x.arrow_count(); ++f) {
    int a = find(x.source(f)), b = find(x.target(f));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<int>> classes;
  std::vector<int> cls(n, -1);
  for (int o = 0; o < n; ++o) {
    int r = find(o);
    if (cls[r] < 0) {
      cls[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[cls[r]].push_back(o);
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

FiniteGroupoid classifying_groupoid(const FiniteGroup& g) {
  FiniteGroupoid::Data d;
  d.object_count = 1;
  const int n = g.order();
  d.source.assign(n, 0);
  d.target.assign(n, 0);
  d.identity_arrow = {0};
  d.inverse_arrow.resize(n);
  for (int a = 0; a < n; ++a) d.inverse_arrow[a] = g.inv(a);
  d.compose.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      d.compose[static_cast<std::uint64_t>(a) * n + b] = g.mul(a, b);
  return FiniteGroupoid(std::move(d));
}

FiniteGroupoid discrete_groupoid(int n) {
  FiniteGroupoid::Data d;
  d.object_count = n;
  d.source.resize(n);
  d.target.resize(n);
  d.identity_arrow.resize(n);
  d.inverse_arrow.resize(n);
  for (int o = 0; o < n; ++o) {
    d.source[o] = d.target[o] = o;
    d.identity_arrow[o] = o;
    d.inverse_arrow[o] = o;
    d.compose[static_cast<std::uint64_t>(o) * n + o] = o;
  }
  return FiniteGroupoid(std::move(d));
}

FiniteGroupoid action_groupoid(int set_size, const FiniteGroup& g,
                               const std::vector<int>& action) {
  const int n = g.order();
  if (static_cast<long>(action.size()) !=
      static_cast<long>(n) * set_size)
    throw ValidationError("action table has wrong arity");
  auto act = [&](int e, int x) { return action[e * set_size + x]; };
  for (int x = 0; x < set_size; ++x) {
    if (act(0, x) != x)
      throw ValidationError("action: identity moves point " +
                            std::to_string(x));
  }
  for (int e = 0; e < n; ++e)
    for (int x = 0; x < set_size; ++x) {
      int y = act(e, x);
      if (y < 0 || y >= set_size)
        throw ValidationError("action: out of range at (" +
                              std::to_string(e) + "," + std::to_string(x) +
                              ")");
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int x = 0; x < set_size; ++x)
        if (act(a, act(b, x)) != act(g.mul(a, b), x))
          throw ValidationError("action: incompatible at (g=" +
                                std::to_string(a) + ",h=" + std::to_string(b) +
                                ",x=" + std::to_string(x) + ")");

  // Arrow (e, x) gets index e*set_size + x.
  FiniteGroupoid::Data d;
  d.object_count = set_size;
  const long m = static_cast<long>(n) * set_size;
  d.source.resize(m);
  d.target.resize(m);
  d.inverse_arrow.resize(m);
  d.identity_arrow.resize(set_size);
  for (int e = 0; e < n; ++e)
    for (int x = 0; x < set_size; ++x) {
      long f = static_cast<long>(e) * set_size + x;
      d.source[f] = x;
      d.target[f] = act(e, x);
      d.inverse_arrow[f] = static_cast<long>(g.inv(e)) * set_size + act(e, x);
    }
  for (int x = 0; x < set_size; ++x) d.identity_arrow[x] = x;  // (0, x)
  d.compose.reserve(static_cast<std::size_t>(n) * m);
  for (int e = 0; e < n; ++e)
    for (int x = 0; x < set_size; ++x) {
      long f = static_cast<long>(e) * set_size + x;
      int y = act(e, x);
      for (int h = 0; h < n; ++h) {
        long hf = static_cast<long>(h) * set_size + y;
        d.compose[static_cast<std::uint64_t>(hf) * m + f] =
            static_cast<int>(static_cast<long>(g.mul(h, e)) * set_size + x);
      }
    }
  return FiniteGroupoid(std::move(d));
}

LoopGroup automorphism_group_with_loops(const FiniteGroupoid& x, int obj) {
  if (obj < 0 || obj >= x.object_count())
    throw PreconditionError("automorphism group: object out of range");
  std::vector<int> loops = x.loops_at(obj);
  std::sort(loops.begin(), loops.end());
  // identity loop becomes element 0
  int e = x.identity_arrow(obj);
  auto it = std::find(loops.begin(), loops.end(), e);
  loops.erase(it);
  loops.insert(loops.begin(), e);
  const int k = static_cast<int>(loops.size());
  std::vector<int> pos_of(x.arrow_count(), -1);
  for (int i = 0; i < k; ++i) pos_of[loops[i]] = i;
  std::vector<int> t(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      t[i * k + j] = pos_of[x.compose(loops[i], loops[j])];
  LoopGroup lg;
  lg.group = FiniteGroup::from_table(k, std::move(t),
                                     "Aut@" + std::to_string(obj));
  lg.loops = std::move(loops);
  return lg;
}

FiniteGroup automorphism_group_at(const FiniteGroupoid& x, int obj) {
  return automorphism_group_with_loops(x, obj).group;
}

FiniteGroupoid disjoint_union(const std::vector<FiniteGroupoid>& xs) {
  FiniteGroupoid::Data d;
  long obj_off = 0, arr_off = 0;
  long total_arrows = 0;
  for (const auto& x : xs) total_arrows += x.arrow_count();
  for (const auto& x : xs) {
    const auto& s = x.data();
    for (int f = 0; f < x.arrow_count(); ++f) {
      d.source.push_back(s.source[f] + static_cast<int>(obj_off));
      d.target.push_back(s.target[f] + static_cast<int>(obj_off));
      d.inverse_arrow.push_back(s.inverse_arrow[f] + static_cast<int>(arr_off));
    }
    for (int o = 0; o < x.object_count(); ++o)
      d.identity_arrow.push_back(s.identity_arrow[o] +
                                 static_cast<int>(arr_off));
    for (const auto& [k, gf] : s.compose) {
      int g = static_cast<int>(k / std::max(x.arrow_count(), 1));
      int f = static_cast<int>(k % std::max(x.arrow_count(), 1));
      d.compose[static_cast<std::uint64_t>(g + arr_off) * total_arrows +
                (f + arr_off)] = gf + static_cast<int>(arr_off);
    }
    obj_off += x.object_count();
    arr_off += x.arrow_count();
  }
  d.object_count = static_cast<int>(obj_off);
  return FiniteGroupoid(std::move(d));
}

// ---------------------------------------------------------------------------
// Functors and equivalence
// ---------------------------------------------------------------------------

std::vector<Violation> check_functor(const FiniteGroupoid& src,
                                     const FiniteGroupoid& dst,
                                     const GroupoidFunctor& f) {
  std::vector<Violation> v;
  auto add = [&](const std::string& axiom, const std::string& witness) {
    if (v.size() < 16) v.push_back({axiom, witness});
  };
  if (static_cast<int>(f.object_map.size()) != src.object_count())
    add("arity", "object_map size");
  if (static_cast<int>(f.arrow_map.size()) != src.arrow_count())
    add("arity", "arrow_map size");
  if (!v.empty()) return v;
  for (int o : f.object_map)
    if (o < 0 || o >= dst.object_count()) add("range", "object image");
  for (int a : f.arrow_map)
    if (a < 0 || a >= dst.arrow_count()) add("range", "arrow image");
  if (!v.empty()) return v;

  for (int a = 0; a < src.arrow_count(); ++a) {
    if (dst.source(f.arrow_map[a]) != f.object_map[src.source(a)])
      add("s-compatibility", "arrow " + std::to_string(a));
    if (dst.target(f.arrow_map[a]) != f.object_map[src.target(a)])
      add("t-compatibility", "arrow " + std::to_string(a));
    if (f.arrow_map[src.inverse(a)] != dst.inverse(f.arrow_map[a]))
      add("i-compatibility", "arrow " + std::to_string(a));
    if (v.size() >= 16) return v;
  }
  for (int o = 0; o < src.object_count(); ++o)
    if (f.arrow_map[src.identity_arrow(o)] !=
        dst.identity_arrow(f.object_map[o]))
      add("e-compatibility", "object " + std::to_string(o));
  if (!v.empty()) return v;

  for (const auto& [k, gf] : src.data().compose) {
    int g = static_cast<int>(k / std::max(src.arrow_count(), 1));
    int ar = static_cast<int>(k % std::max(src.arrow_count(), 1));
    if (f.arrow_map[gf] != dst.compose(f.arrow_map[g], f.arrow_map[ar])) {
      add("c-compatibility",
          "(" + std::to_string(g) + "," + std::to_string(ar) + ")");
      if (v.size() >= 16) return v;
    }
  }
  return v;
}

GroupoidFunctor make_functor(const FiniteGroupoid& src,
                             const FiniteGroupoid& dst,
                             std::vector<int> object_map,
                             std::vector<int> arrow_map) {
  GroupoidFunctor f{std::move(object_map), std::move(arrow_map)};
  auto v = check_functor(src, dst, f);
  if (!v.empty())
    throw ValidationError("functor: " + v.front().axiom + " at " +
                          v.front().witness);
  return f;
}

GroupoidFunctor identity_functor(const FiniteGroupoid& x) {
  GroupoidFunctor f;
  f.object_map.resize(x.object_count());
  f.arrow_map.resize(x.arrow_count());
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  std::iota(f.arrow_map.begin(), f.arrow_map.end(), 0);
  return f;
}

EquivalenceCheck is_equivalence(const FiniteGroupoid& src,
                                const FiniteGroupoid& dst,
                                const GroupoidFunctor& f) {
  {
    auto v = check_functor(src, dst, f);
    if (!v.empty())
      throw PreconditionError("is_equivalence: invalid functor (" +
                              v.front().axiom + " at " + v.front().witness +
                              ")");
  }
  // Fully faithful: Hom(x,y) -> Hom(Fx,Fy) bijective for every source pair.
  for (int x = 0; x < src.object_count(); ++x)
    for (int y = 0; y < src.object_count(); ++y) {
      const auto& h = src.hom(x, y);
      const auto& h_img = dst.hom(f.object_map[x], f.object_map[y]);
      if (h.size() != h_img.size())
        return {false, "hom (" + std::to_string(x) + "," + std::to_string(y) +
                           ") has size " + std::to_string(h.size()) +
                           " vs image hom size " +
                           std::to_string(h_img.size())};
      std::vector<int> images;
      images.reserve(h.size());
      for (int a : h) images.push_back(f.arrow_map[a]);
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end())
        return {false, "hom (" + std::to_string(x) + "," + std::to_string(y) +
                           ") maps non-injectively"};
    }
  // Essentially surjective: every target object connected to the image.
  auto classes = coarse_space(dst);
  std::vector<int> class_of(dst.object_count());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int o : classes[c]) class_of[o] = static_cast<int>(c);
  std::vector<char> hit(classes.size(), 0);
  for (int o : f.object_map) hit[class_of[o]] = 1;
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (!hit[c])
      return {false, "target class of object " +
                         std::to_string(classes[c].front()) +
                         " misses the image"};
  return {true, ""};
}

bool are_equivalent(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  auto ca = coarse_space(a), cb = coarse_space(b);
  if (ca.size() != cb.size()) return false;
  std::vector<FiniteGroup> ga, gb;
  for (const auto& c : ca) ga.push_back(automorphism_group_at(a, c.front()));
  for (const auto& c : cb) gb.push_back(automorphism_group_at(b, c.front()));
  std::vector<char> used(gb.size(), 0);
  for (const auto& x : ga) {
    bool matched = false;
    for (std::size_t j = 0; j < gb.size(); ++j) {
      if (used[j] || gb[j].order() != x.order()) continue;
      if (is_isomorphic(x, gb[j])) {
        used[j] = 1;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

SkeletonResult skeleton(const FiniteGroupoid& x) {
  auto classes = coarse_space(x);
  SkeletonResult res;
  std::vector<int> obj_new(x.object_count(), -1);
  for (const auto& c : classes) {
    obj_new[c.front()] = static_cast<int>(res.object_reps.size());
    res.object_reps.push_back(c.front());
  }
  // Arrows between representatives form a full subgroupoid.
  std::vector<int> arr_new(x.arrow_count(), -1);
  std::vector<int> kept;
  for (int f = 0; f < x.arrow_count(); ++f)
    if (obj_new[x.source(f)] >= 0 && obj_new[x.target(f)] >= 0) {
      arr_new[f] = static_cast<int>(kept.size());
      kept.push_back(f);
    }
  FiniteGroupoid::Data d;
  d.object_count = static_cast<int>(res.object_reps.size());
  for (int f : kept) {
    d.source.push_back(obj_new[x.source(f)]);
    d.target.push_back(obj_new[x.target(f)]);
    d.inverse_arrow.push_back(arr_new[x.inverse(f)]);
  }
  for (int rep : res.object_reps)
    d.identity_arrow.push_back(arr_new[x.identity_arrow(rep)]);
  const long m = static_cast<long>(kept.size());
  for (long i = 0; i < m; ++i) {
    int f = kept[i];
    for (int g : x.arrows_from(x.target(f)))
      if (arr_new[g] >= 0)
        d.compose[static_cast<std::uint64_t>(arr_new[g]) * m + i] =
            arr_new[x.compose(g, f)];
  }
  res.groupoid = FiniteGroupoid(std::move(d));
  GroupoidFunctor inc;
  inc.object_map = res.object_reps;
  inc.arrow_map = kept;
  res.inclusion = std::move(inc);
  return res;
}

}  // namespace grpd
