#include "grpd/involution.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "grpd/errors.hpp"

namespace grpd {

// ---------------------------------------------------------------------------
// Involutions
// ---------------------------------------------------------------------------

std::vector<Violation> check_involution(const FiniteGroupoid& x,
                                        const std::vector<int>& object_map,
                                        const std::vector<int>& arrow_map) {
  std::vector<Violation> v;
  auto add = [&](const std::string& axiom, const std::string& witness) {
    if (v.size() < 16) v.push_back({axiom, witness});
  };
  if (static_cast<int>(object_map.size()) != x.object_count())
    add("arity", "object map size");
  if (static_cast<int>(arrow_map.size()) != x.arrow_count())
    add("arity", "arrow map size");
  if (!v.empty()) return v;

  for (int o = 0; o < x.object_count(); ++o) {
    if (object_map[o] < 0 || object_map[o] >= x.object_count()) {
      add("range", "object " + std::to_string(o));
      return v;
    }
    if (object_map[object_map[o]] != o)
      add("involutive", "object " + std::to_string(o));
  }
  for (int f = 0; f < x.arrow_count(); ++f) {
    if (arrow_map[f] < 0 || arrow_map[f] >= x.arrow_count()) {
      add("range", "arrow " + std::to_string(f));
      return v;
    }
    if (arrow_map[arrow_map[f]] != f) add("involutive", "arrow " + std::to_string(f));
  }
  if (!v.empty()) return v;

  GroupoidFunctor f{object_map, arrow_map};
  for (auto& viol : check_functor(x, x, f)) v.push_back(std::move(viol));
  return v;
}

GroupoidInvolution make_involution(const FiniteGroupoid& x,
                                   std::vector<int> object_map,
                                   std::vector<int> arrow_map) {
  auto v = check_involution(x, object_map, arrow_map);
  if (!v.empty())
    throw ValidationError("involution: " + v.front().axiom + " at " +
                          v.front().witness);
  return GroupoidInvolution{std::move(object_map), std::move(arrow_map)};
}

GroupoidInvolution trivial_groupoid_involution(const FiniteGroupoid& x) {
  GroupoidInvolution s;
  s.object_map.resize(x.object_count());
  s.arrow_map.resize(x.arrow_count());
  std::iota(s.object_map.begin(), s.object_map.end(), 0);
  std::iota(s.arrow_map.begin(), s.arrow_map.end(), 0);
  return s;
}

GroupoidInvolution equivariant_action_involution(
    int set_size, const FiniteGroup& g, const std::vector<int>& action,
    const std::vector<int>& sigma_x, const GroupInvolution& sigma_g) {
  if (static_cast<int>(sigma_x.size()) != set_size)
    throw ValidationError("point involution has wrong arity");
  if (static_cast<int>(sigma_g.map().size()) != g.order())
    throw ValidationError("group involution has wrong arity");
  auto act = [&](int e, int p) { return action[e * set_size + p]; };
  for (int p = 0; p < set_size; ++p) {
    if (sigma_x[p] < 0 || sigma_x[p] >= set_size ||
        sigma_x[sigma_x[p]] != p)
      throw ValidationError("point map is not an involution at " +
                            std::to_string(p));
  }
  for (int e = 0; e < g.order(); ++e)
    for (int p = 0; p < set_size; ++p)
      if (sigma_x[act(e, p)] != act(sigma_g(e), sigma_x[p]))
        throw ValidationError("equivariance fails at (g=" + std::to_string(e) +
                              ",x=" + std::to_string(p) + ")");

  GroupoidInvolution s;
  s.object_map = sigma_x;
  s.arrow_map.resize(static_cast<std::size_t>(g.order()) * set_size);
  for (int e = 0; e < g.order(); ++e)
    for (int p = 0; p < set_size; ++p)
      s.arrow_map[e * set_size + p] = sigma_g(e) * set_size + sigma_x[p];
  return s;
}

// ---------------------------------------------------------------------------
// Overlay construction shared by the fixed-point and inertia groupoids:
// objects are arrows of the base decorated with a carrier object, and the
// morphisms out of a decorated object are exactly the base arrows out of its
// carrier, landing where the transport says.
// ---------------------------------------------------------------------------

namespace {

struct Overlay {
  FiniteGroupoid groupoid;
  std::vector<int> arrow_underlying;  // new arrow -> base arrow
};

// carrier[z]   = base object of decorated object z
// transport(f, z) = index of the decorated object reached by f ∈ out(carrier)
Overlay build_overlay(const FiniteGroupoid& base,
                      const std::vector<int>& carrier,
                      const std::function<int(int, int)>& transport) {
  const int nz = static_cast<int>(carrier.size());

  // position of f within arrows_from(source(f))
  std::vector<int> pos_in_out(base.arrow_count(), -1);
  for (int o = 0; o < base.object_count(); ++o) {
    const auto& outs = base.arrows_from(o);
    for (std::size_t i = 0; i < outs.size(); ++i)
      pos_in_out[outs[i]] = static_cast<int>(i);
  }

  std::vector<long> offset(nz + 1, 0);
  for (int z = 0; z < nz; ++z)
    offset[z + 1] = offset[z] +
                    static_cast<long>(base.arrows_from(carrier[z]).size());

  FiniteGroupoid::Data d;
  d.object_count = nz;
  const long m = offset[nz];
  d.source.resize(m);
  d.target.resize(m);
  d.inverse_arrow.resize(m);
  d.identity_arrow.resize(nz);
  std::vector<int> arrow_underlying(m);
  std::vector<int> arrow_target_z(m);

  auto arrow_index = [&](int f, int z) {
    return offset[z] + pos_in_out[f];
  };

  for (int z = 0; z < nz; ++z) {
    const auto& outs = base.arrows_from(carrier[z]);
    for (std::size_t i = 0; i < outs.size(); ++i) {
      long a = offset[z] + static_cast<long>(i);
      int f = outs[i];
      int zt = transport(f, z);
      arrow_underlying[a] = f;
      arrow_target_z[a] = zt;
      d.source[a] = z;
      d.target[a] = zt;
    }
    d.identity_arrow[z] =
        static_cast<int>(arrow_index(base.identity_arrow(carrier[z]), z));
  }
  for (long a = 0; a < m; ++a)
    d.inverse_arrow[a] = static_cast<int>(
        arrow_index(base.inverse(arrow_underlying[a]), arrow_target_z[a]));

  for (long a = 0; a < m; ++a) {
    int f = arrow_underlying[a];
    int z1 = d.source[a];
    int z2 = arrow_target_z[a];
    for (int gb : base.arrows_from(carrier[z2])) {
      long b = arrow_index(gb, z2);
      d.compose[static_cast<std::uint64_t>(b) * m + a] =
          static_cast<int>(arrow_index(base.compose(gb, f), z1));
    }
  }

  Overlay out{FiniteGroupoid(std::move(d)), std::move(arrow_underlying)};
  auto violations = validate(out.groupoid);
  if (!violations.empty())
    throw std::logic_error("overlay groupoid failed validation: " +
                           violations.front().axiom + " at " +
                           violations.front().witness);
  return out;
}

}  // namespace

FixedGroupoidResult fixed_groupoid(const FiniteGroupoid& x,
                                   const GroupoidInvolution& s) {
  {
    auto v = check_involution(x, s.object_map, s.arrow_map);
    if (!v.empty())
      throw PreconditionError("fixed_groupoid: invalid involution (" +
                              v.front().axiom + " at " + v.front().witness +
                              ")");
  }
  FixedGroupoidResult res;
  std::map<std::pair<int, int>, int> index_of;
  for (int o = 0; o < x.object_count(); ++o)
    for (int phi : x.arrows_from(o)) {
      if (x.target(phi) != s.object_map[o]) continue;
      if (x.compose(s.arrow_map[phi], phi) != x.identity_arrow(o)) continue;
      index_of[{o, phi}] = static_cast<int>(res.z1_objects.size());
      res.z1_objects.emplace_back(o, phi);
    }

  std::vector<int> carrier(res.z1_objects.size());
  for (std::size_t z = 0; z < res.z1_objects.size(); ++z)
    carrier[z] = res.z1_objects[z].first;

  auto transport = [&](int f, int z) {
    int phi = res.z1_objects[z].second;
    // σ(f)∘φ∘f⁻¹ : t(f) → σ(t(f))
    int psi = x.compose(s.arrow_map[f], x.compose(phi, x.inverse(f)));
    auto it = index_of.find({x.target(f), psi});
    if (it == index_of.end())
      throw std::logic_error("fixed groupoid transport left Z1");
    return it->second;
  };

  Overlay ov = build_overlay(x, carrier, transport);
  res.groupoid = std::move(ov.groupoid);
  res.arrow_underlying = std::move(ov.arrow_underlying);
  return res;
}

InertiaResult inertia_groupoid(const FiniteGroupoid& x) {
  InertiaResult res;
  std::vector<int> loop_index(x.arrow_count(), -1);
  for (int f = 0; f < x.arrow_count(); ++f)
    if (x.source(f) == x.target(f)) {
      loop_index[f] = static_cast<int>(res.loops.size());
      res.loops.push_back(f);
    }

  std::vector<int> carrier(res.loops.size());
  for (std::size_t z = 0; z < res.loops.size(); ++z)
    carrier[z] = x.source(res.loops[z]);

  auto transport = [&](int f, int z) {
    int phi = res.loops[z];
    int psi = x.compose(f, x.compose(phi, x.inverse(f)));
    return loop_index[psi];
  };

  Overlay ov = build_overlay(x, carrier, transport);
  res.groupoid = std::move(ov.groupoid);
  res.arrow_underlying = std::move(ov.arrow_underlying);
  return res;
}

// ---------------------------------------------------------------------------
// Decomposition of the fixed groupoid of a classifying groupoid
// ---------------------------------------------------------------------------

DecompositionReport fixed_decomposition_check(const FiniteGroup& g,
                                              const GroupInvolution& s) {
  FiniteGroupoid bg = classifying_groupoid(g);
  GroupoidInvolution si;
  si.object_map = {0};
  si.arrow_map = s.map();
  FixedGroupoidResult fixed = fixed_groupoid(bg, si);

  DecompositionReport rep;
  for (const auto& cls : coarse_space(fixed.groupoid))
    rep.fixed_aut_orders.push_back(
        automorphism_group_at(fixed.groupoid, cls.front()).order());

  H1ClassSet h = h1(g, s);
  std::vector<FiniteGroupoid> pieces;
  for (int gamma : h.representatives) {
    Subgroup sub = fixed_subgroup(g, s, gamma);
    rep.piece_aut_orders.push_back(sub.group.order());
    pieces.push_back(classifying_groupoid(sub.group));
  }
  FiniteGroupoid un = disjoint_union(pieces);
  rep.equivalent = are_equivalent(fixed.groupoid, un);
  return rep;
}

// ---------------------------------------------------------------------------
// Fiber formulas
// ---------------------------------------------------------------------------

InertiaFiberReport inertia_fiber(int set_size, const FiniteGroup& g,
                                 const std::vector<int>& action,
                                 const std::vector<int>& orbit) {
  FiniteGroupoid ag = action_groupoid(set_size, g, action);
  if (orbit.empty())
    throw PreconditionError("inertia_fiber: empty orbit");
  auto act = [&](int e, int p) { return action[e * set_size + p]; };
  {
    // `orbit` must be exactly the orbit of its first point.
    std::vector<char> in_orbit(set_size, 0);
    for (int p : orbit) in_orbit[p] = 1;
    std::vector<char> reach(set_size, 0);
    int count = 0;
    for (int e = 0; e < g.order(); ++e) {
      int q = act(e, orbit.front());
      if (!reach[q]) {
        reach[q] = 1;
        ++count;
      }
      if (!in_orbit[q])
        throw PreconditionError("inertia_fiber: set is not an orbit");
    }
    if (count != static_cast<int>(orbit.size()))
      throw PreconditionError("inertia_fiber: set is not a single orbit");
  }

  InertiaFiberReport rep;

  // Brute force: inertia coarse classes whose carrier lies in the orbit.
  InertiaResult in = inertia_groupoid(ag);
  std::vector<char> in_orbit(set_size, 0);
  for (int p : orbit) in_orbit[p] = 1;
  for (const auto& cls : coarse_space(in.groupoid)) {
    int base_obj = ag.source(in.loops[cls.front()]);
    if (in_orbit[base_obj]) ++rep.brute_force_count;
  }

  // Formula: conjugacy classes of the stabilizer of the minimal point;
  // independence of that choice is checked across the whole orbit.
  auto stab_class_count = [&](int p) {
    std::vector<int> elems;
    for (int e = 0; e < g.order(); ++e)
      if (act(e, p) == p) elems.push_back(e);
    Subgroup st = subgroup_of(g, std::move(elems),
                              g.label() + ".stab(" + std::to_string(p) + ")");
    return static_cast<int>(conjugacy_classes(st.group).size());
  };
  int y0 = *std::min_element(orbit.begin(), orbit.end());
  rep.formula_count = stab_class_count(y0);
  rep.base_point_independent = true;
  for (int p : orbit)
    if (stab_class_count(p) != rep.formula_count) {
      rep.base_point_independent = false;
      break;
    }

  if (rep.brute_force_count != rep.formula_count ||
      !rep.base_point_independent)
    throw std::logic_error(
        "inertia fiber mismatch: brute=" +
        std::to_string(rep.brute_force_count) +
        " formula=" + std::to_string(rep.formula_count));
  return rep;
}

H1FiberReport h1_fiber(const FiniteGroupoid& x, const GroupoidInvolution& s,
                       const std::vector<int>& fixed_class) {
  if (fixed_class.empty())
    throw PreconditionError("h1_fiber: empty coarse class");
  std::vector<char> in_class(x.object_count(), 0);
  for (int o : fixed_class) in_class[o] = 1;
  for (int o : fixed_class)
    if (!in_class[s.object_map[o]])
      throw PreconditionError("h1_fiber: class is not preserved by the involution");

  H1FiberReport rep;
  FixedGroupoidResult fixed = fixed_groupoid(x, s);

  for (const auto& cls : coarse_space(fixed.groupoid)) {
    int base_obj = fixed.z1_objects[cls.front()].first;
    if (in_class[base_obj]) ++rep.brute_force_count;
  }

  // Witness: first cocycle pair over the class, in Z¹ order.
  int wx = -1, wphi = -1;
  for (const auto& [obj, phi] : fixed.z1_objects)
    if (in_class[obj]) {
      wx = obj;
      wphi = phi;
      break;
    }
  if (wx < 0) return rep;  // empty fiber; comparison skipped
  rep.has_witness = true;

  LoopGroup aut = automorphism_group_with_loops(x, wx);
  std::vector<int> arrow_to_elem(x.arrow_count(), -1);
  for (std::size_t i = 0; i < aut.loops.size(); ++i)
    arrow_to_elem[aut.loops[i]] = static_cast<int>(i);

  // τ(a) = φ⁻¹ ∘ σ(a) ∘ φ on Aut(wx)
  std::vector<int> tau(aut.group.order());
  int phi_inv = x.inverse(wphi);
  for (int i = 0; i < aut.group.order(); ++i) {
    int a = aut.loops[i];
    int image = x.compose(phi_inv, x.compose(s.arrow_map[a], wphi));
    tau[i] = arrow_to_elem[image];
  }
  GroupInvolution tw = make_group_involution(aut.group, std::move(tau));
  rep.h1_count = h1(aut.group, tw).count();

  if (rep.brute_force_count != rep.h1_count)
    throw std::logic_error("h1 fiber mismatch: brute=" +
                           std::to_string(rep.brute_force_count) +
                           " h1=" + std::to_string(rep.h1_count));
  return rep;
}

// ---------------------------------------------------------------------------
// Families of finite groups
// ---------------------------------------------------------------------------

FiniteGroupFamily make_family(int base_size, std::vector<int> base_involution,
                              std::vector<FiniteGroup> fibers,
                              std::vector<std::vector<int>> fiber_transport) {
  if (static_cast<int>(base_involution.size()) != base_size ||
      static_cast<int>(fibers.size()) != base_size ||
      static_cast<int>(fiber_transport.size()) != base_size)
    throw ValidationError("family: arity mismatch");
  for (int u = 0; u < base_size; ++u) {
    int v = base_involution[u];
    if (v < 0 || v >= base_size || base_involution[v] != u)
      throw ValidationError("family: base involution fails at point " +
                            std::to_string(u));
  }
  for (int u = 0; u < base_size; ++u) {
    int v = base_involution[u];
    const auto& t = fiber_transport[u];
    if (static_cast<int>(t.size()) != fibers[u].order() ||
        fibers[u].order() != fibers[v].order())
      throw ValidationError("family: transport arity fails at point " +
                            std::to_string(u));
    // multiplicative bijection H_u -> H_v
    std::vector<char> seen(t.size(), 0);
    for (int a : t) {
      if (a < 0 || a >= static_cast<int>(t.size()) || seen[a])
        throw ValidationError("family: transport not bijective at point " +
                              std::to_string(u));
      seen[a] = 1;
    }
    if (t[0] != 0)
      throw ValidationError("family: transport must preserve identity");
    for (int a = 0; a < fibers[u].order(); ++a)
      for (int b = 0; b < fibers[u].order(); ++b)
        if (t[fibers[u].mul(a, b)] != fibers[v].mul(t[a], t[b]))
          throw ValidationError("family: transport not multiplicative at " +
                                std::to_string(u));
    for (int a = 0; a < fibers[u].order(); ++a)
      if (fiber_transport[v][t[a]] != a)
        throw ValidationError("family: transport round trip fails at point " +
                              std::to_string(u));
  }
  return FiniteGroupFamily{base_size, std::move(base_involution),
                           std::move(fibers), std::move(fiber_transport)};
}

FamilyH1 family_h1(const FiniteGroupFamily& fam) {
  FamilyH1 out;
  for (int u = 0; u < fam.base_size; ++u) {
    if (fam.base_involution[u] != u) continue;
    GroupInvolution tw =
        make_group_involution(fam.fibers[u], fam.fiber_transport[u]);
    out.fixed_base_points.push_back(u);
    out.fiber_classes.push_back(h1(fam.fibers[u], tw));
  }

  // Independent route: partition the global cocycle pairs (u, g) by the
  // full quadratic move set, then compare per-fiber counts.
  std::vector<int> check(out.fixed_base_points.size(), 0);
  for (std::size_t i = 0; i < out.fixed_base_points.size(); ++i) {
    int u = out.fixed_base_points[i];
    const FiniteGroup& H = fam.fibers[u];
    const auto& t = fam.fiber_transport[u];
    std::vector<int> zu;
    for (int g = 0; g < H.order(); ++g)
      if (H.mul(g, t[g]) == 0) zu.push_back(g);
    std::vector<int> cls(zu.size());
    std::iota(cls.begin(), cls.end(), 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < zu.size(); ++a)
        for (int hh = 0; hh < H.order(); ++hh) {
          int moved = H.mul(H.mul(hh, zu[a]), H.inv(t[hh]));
          auto it = std::lower_bound(zu.begin(), zu.end(), moved);
          std::size_t b = static_cast<std::size_t>(it - zu.begin());
          int lo = std::min(cls[a], cls[b]), hi = std::max(cls[a], cls[b]);
          if (lo != hi) {
            for (auto& c : cls)
              if (c == hi) c = lo;
            changed = true;
          }
        }
    }
    std::vector<int> uniq(cls);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    check[i] = static_cast<int>(uniq.size());
  }
  for (std::size_t i = 0; i < check.size(); ++i)
    if (check[i] != out.fiber_classes[i].count())
      throw std::logic_error("family H1 fiber mismatch at base point " +
                             std::to_string(out.fixed_base_points[i]));

  for (const auto& c : out.fiber_classes) out.total_classes += c.count();
  return out;
}

// ---------------------------------------------------------------------------
// Induced functor on fixed groupoids
// ---------------------------------------------------------------------------

FixedFunctorResult fixed_functor(const FiniteGroupoid& src,
                                 const GroupoidInvolution& s_src,
                                 const FiniteGroupoid& dst,
                                 const GroupoidInvolution& s_dst,
                                 const GroupoidFunctor& f) {
  {
    auto v = check_functor(src, dst, f);
    if (!v.empty())
      throw PreconditionError("fixed_functor: invalid functor (" +
                              v.front().axiom + ")");
  }
  for (int o = 0; o < src.object_count(); ++o)
    if (f.object_map[s_src.object_map[o]] != s_dst.object_map[f.object_map[o]])
      throw ValidationError("fixed_functor: not equivariant at object " +
                            std::to_string(o));
  for (int a = 0; a < src.arrow_count(); ++a)
    if (f.arrow_map[s_src.arrow_map[a]] != s_dst.arrow_map[f.arrow_map[a]])
      throw ValidationError("fixed_functor: not equivariant at arrow " +
                            std::to_string(a));

  FixedFunctorResult res;
  res.source_fixed = fixed_groupoid(src, s_src);
  res.target_fixed = fixed_groupoid(dst, s_dst);

  std::map<std::pair<int, int>, int> dst_index;
  for (std::size_t z = 0; z < res.target_fixed.z1_objects.size(); ++z)
    dst_index[res.target_fixed.z1_objects[z]] = static_cast<int>(z);

  GroupoidFunctor fg;
  fg.object_map.resize(res.source_fixed.z1_objects.size());
  for (std::size_t z = 0; z < res.source_fixed.z1_objects.size(); ++z) {
    auto [obj, phi] = res.source_fixed.z1_objects[z];
    auto it = dst_index.find({f.object_map[obj], f.arrow_map[phi]});
    if (it == dst_index.end())
      throw std::logic_error("fixed functor image left Z1");
    fg.object_map[z] = it->second;
  }
  // Arrow (g, z) ↦ (F g, F z): locate by position within the image hom data.
  const FiniteGroupoid& sf = res.source_fixed.groupoid;
  const FiniteGroupoid& tf = res.target_fixed.groupoid;
  // map (target z-object, base arrow) -> fixed arrow index, for the target
  std::map<std::pair<int, int>, int> tf_arrow;
  for (int a = 0; a < tf.arrow_count(); ++a)
    tf_arrow[{tf.source(a), res.target_fixed.arrow_underlying[a]}] = a;
  fg.arrow_map.resize(sf.arrow_count());
  for (int a = 0; a < sf.arrow_count(); ++a) {
    int z = sf.source(a);
    int base = res.source_fixed.arrow_underlying[a];
    auto it = tf_arrow.find({fg.object_map[z], f.arrow_map[base]});
    if (it == tf_arrow.end())
      throw std::logic_error("fixed functor arrow image missing");
    fg.arrow_map[a] = it->second;
  }
  {
    auto v = check_functor(sf, tf, fg);
    if (!v.empty())
      throw std::logic_error("induced fixed functor invalid: " +
                             v.front().axiom);
  }
  res.functor = std::move(fg);

  res.input_was_equivalence = is_equivalence(src, dst, f).equivalence;
  if (res.input_was_equivalence) {
    res.equivalence_preserved =
        is_equivalence(sf, tf, res.functor).equivalence;
    // induced map on fixed coarse classes must be a bijection
    auto src_classes = coarse_space(sf);
    auto dst_classes = coarse_space(tf);
    std::vector<int> dst_class_of(tf.object_count());
    for (std::size_t c = 0; c < dst_classes.size(); ++c)
      for (int o : dst_classes[c]) dst_class_of[o] = static_cast<int>(c);
    std::vector<int> image;
    for (const auto& cls : src_classes)
      image.push_back(dst_class_of[res.functor.object_map[cls.front()]]);
    std::sort(image.begin(), image.end());
    res.class_bijection =
        src_classes.size() == dst_classes.size() &&
        std::adjacent_find(image.begin(), image.end()) == image.end();
    if (!res.equivalence_preserved || !res.class_bijection)
      throw std::logic_error("fixed functor failed to preserve equivalence");
  }
  return res;
}

SmithThomRecord smith_thom_check(const FiniteGroupoid& x,
                                 const GroupoidInvolution& s) {
  SmithThomRecord r;
  r.fixed_classes =
      static_cast<int>(coarse_space(fixed_groupoid(x, s).groupoid).size());
  r.inertia_classes =
      static_cast<int>(coarse_space(inertia_groupoid(x).groupoid).size());
  r.holds = r.fixed_classes <= r.inertia_classes;
  return r;
}

}  // namespace grpd
