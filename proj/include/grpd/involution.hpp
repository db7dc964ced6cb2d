#pragma once

#include <utility>
#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/nonabelian_h1.hpp"

namespace grpd {

// An involution of a groupoid: involutive bijections on objects and arrows
// commuting with all structure maps.
struct GroupoidInvolution {
  std::vector<int> object_map;
  std::vector<int> arrow_map;
};

std::vector<Violation> check_involution(const FiniteGroupoid& x,
                                        const std::vector<int>& object_map,
                                        const std::vector<int>& arrow_map);
GroupoidInvolution make_involution(const FiniteGroupoid& x,
                                   std::vector<int> object_map,
                                   std::vector<int> arrow_map);
GroupoidInvolution trivial_groupoid_involution(const FiniteGroupoid& x);

// Involution on action_groupoid(set_size, g, action) induced by a point
// involution σ_X and a group involution σ_Γ satisfying
// σ_X(g·x) = σ_Γ(g)·σ_X(x); the compatibility is verified.
GroupoidInvolution equivariant_action_involution(int set_size,
                                                 const FiniteGroup& g,
                                                 const std::vector<int>& action,
                                                 const std::vector<int>& sigma_x,
                                                 const GroupInvolution& sigma_g);

// The fixed-point groupoid. Objects are the cocycle pairs
// Z¹ = {(x, φ) : φ: x → σ(x), σ(φ)∘φ = id}, ordered by (object, arrow);
// an arrow from (x, φ) is any base arrow f with s(f) = x, landing on
// (t(f), σ(f)∘φ∘f⁻¹).
struct FixedGroupoidResult {
  FiniteGroupoid groupoid;
  std::vector<std::pair<int, int>> z1_objects;  // fixed object -> (x, φ)
  std::vector<int> arrow_underlying;            // fixed arrow -> base arrow
};
FixedGroupoidResult fixed_groupoid(const FiniteGroupoid& x,
                                   const GroupoidInvolution& s);

// The inertia groupoid: objects are loops, arrows (f, φ) with
// s(f) = s(φ) conjugate φ to f∘φ∘f⁻¹.
struct InertiaResult {
  FiniteGroupoid groupoid;
  std::vector<int> loops;            // inertia object -> base loop arrow
  std::vector<int> arrow_underlying; // inertia arrow -> base arrow
};
InertiaResult inertia_groupoid(const FiniteGroupoid& x);

// Checks that the fixed groupoid of B(Γ) is equivalent to the disjoint
// union of classifying groupoids of the twisted fixed subgroups, one per
// H¹ class.
struct DecompositionReport {
  bool equivalent = false;
  std::vector<int> fixed_aut_orders;  // per fixed coarse class, by class rep
  std::vector<int> piece_aut_orders;  // per H¹ representative, ascending rep
};
DecompositionReport fixed_decomposition_check(const FiniteGroup& g,
                                              const GroupInvolution& s);

// Inertia fiber over one orbit of a group action: brute-force count of
// inertia coarse classes sitting over the orbit versus the conjugacy-class
// count of a point stabilizer. The two must agree and be independent of the
// chosen base point; a mismatch throws (it would be an implementation bug).
struct InertiaFiberReport {
  int brute_force_count = 0;
  int formula_count = 0;
  bool base_point_independent = false;
};
InertiaFiberReport inertia_fiber(int set_size, const FiniteGroup& g,
                                 const std::vector<int>& action,
                                 const std::vector<int>& orbit);

// Fiber of |X^G| -> |X| over one coarse class: brute-force count of fixed
// coarse classes over it versus #H¹(G, Aut(x), τ) with τ(a) = φ⁻¹∘σ(a)∘φ for
// a witness (x, φ). With no witness the fiber is empty and the comparison is
// skipped.
struct H1FiberReport {
  int brute_force_count = 0;
  int h1_count = 0;
  bool has_witness = false;
};
H1FiberReport h1_fiber(const FiniteGroupoid& x, const GroupoidInvolution& s,
                       const std::vector<int>& fixed_class);

// A family of finite groups over a finite base with involution: fiber
// transports H_u -> H_{σ(u)} whose round trips are the identity. Fibers over
// fixed base points then carry a group involution.
struct FiniteGroupFamily {
  int base_size = 0;
  std::vector<int> base_involution;
  std::vector<FiniteGroup> fibers;
  std::vector<std::vector<int>> fiber_transport;
};
FiniteGroupFamily make_family(int base_size, std::vector<int> base_involution,
                              std::vector<FiniteGroup> fibers,
                              std::vector<std::vector<int>> fiber_transport);

struct FamilyH1 {
  std::vector<int> fixed_base_points;
  std::vector<H1ClassSet> fiber_classes;  // parallel to fixed_base_points
  int total_classes = 0;
};
FamilyH1 family_h1(const FiniteGroupFamily& fam);

// Functor induced on fixed groupoids by an involution-equivariant functor.
// When the input is an equivalence the induced functor is asserted to be one
// too, with a bijection on fixed coarse classes.
struct FixedFunctorResult {
  FixedGroupoidResult source_fixed;
  FixedGroupoidResult target_fixed;
  GroupoidFunctor functor;
  bool input_was_equivalence = false;
  bool equivalence_preserved = false;
  bool class_bijection = false;
};
FixedFunctorResult fixed_functor(const FiniteGroupoid& src,
                                 const GroupoidInvolution& s_src,
                                 const FiniteGroupoid& dst,
                                 const GroupoidInvolution& s_dst,
                                 const GroupoidFunctor& f);

// Degree-zero fixed-classes-versus-inertia-classes comparison.
struct SmithThomRecord {
  int fixed_classes = 0;
  int inertia_classes = 0;
  bool holds = false;
};
SmithThomRecord smith_thom_check(const FiniteGroupoid& x,
                                 const GroupoidInvolution& s);

}  // namespace grpd
