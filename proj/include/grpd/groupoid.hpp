#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grpd/finite_group.hpp"

namespace grpd {

// A finite groupoid: a flat arrow pool with source/target/identity/inverse
// tables and composition as a sparse map keyed by composable pairs.
// Immutable after construction; the hom-set cache is internally synchronized,
// so shared read access from parallel sweeps is safe.
class FiniteGroupoid {
 public:
  struct Data {
    int object_count = 0;
    std::vector<int> source;          // per arrow
    std::vector<int> target;          // per arrow
    std::vector<int> identity_arrow;  // per object
    std::vector<int> inverse_arrow;   // per arrow
    // key(g, f) -> g∘f, defined exactly when target(f) == source(g)
    std::unordered_map<std::uint64_t, int> compose;
  };

  FiniteGroupoid() : FiniteGroupoid(Data{}) {}
  explicit FiniteGroupoid(Data d);

  int object_count() const { return d_.object_count; }
  int arrow_count() const { return static_cast<int>(d_.source.size()); }
  int source(int f) const { return d_.source[f]; }
  int target(int f) const { return d_.target[f]; }
  int identity_arrow(int x) const { return d_.identity_arrow[x]; }
  int inverse(int f) const { return d_.inverse_arrow[f]; }

  bool composable(int g, int f) const { return target(f) == source(g); }
  int compose(int g, int f) const;  // g∘f; throws PreconditionError

  const std::vector<int>& arrows_from(int x) const { return out_[x]; }
  const std::vector<int>& arrows_into(int x) const { return in_[x]; }

  // Hom(x, y), materialized lazily and memoized.
  const std::vector<int>& hom(int x, int y) const;
  std::vector<int> loops_at(int x) const { return hom(x, x); }

  std::uint64_t key(int g, int f) const {
    return static_cast<std::uint64_t>(g) * arrow_count() + f;
  }
  const Data& data() const { return d_; }

 private:
  struct HomCache {
    std::mutex mutex;
    std::map<std::pair<int, int>, std::vector<int>> entries;
  };
  Data d_;
  std::vector<std::vector<int>> out_, in_;
  std::shared_ptr<HomCache> hom_cache_;
};

struct Violation {
  std::string axiom;
  std::string witness;
};

// Exhaustive axiom check up to `triple_budget` composable triples for
// associativity, deterministically sampled beyond. Violations are data.
std::vector<Violation> validate(const FiniteGroupoid& x,
                                long triple_budget = 10000);

// Partition of objects by "connected by at least one arrow", blocks sorted
// with minimal-index representatives, ordered by representative.
std::vector<std::vector<int>> coarse_space(const FiniteGroupoid& x);

FiniteGroupoid classifying_groupoid(const FiniteGroup& g);
FiniteGroupoid discrete_groupoid(int n);

// Objects 0..set_size-1, arrows Γ × X with (g,x): x → g·x, composition
// (h, g·x)∘(g, x) = (hg, x). `action` is element-major: action[g*set_size+x].
// The action is verified (identity acts trivially, compatible with
// multiplication); violations throw with a witness.
FiniteGroupoid action_groupoid(int set_size, const FiniteGroup& g,
                               const std::vector<int>& action);

// Loop group at an object, with the loop arrows (identity loop first, then
// ascending) giving the element numbering.
struct LoopGroup {
  FiniteGroup group;
  std::vector<int> loops;  // element index -> arrow index in the groupoid
};
LoopGroup automorphism_group_with_loops(const FiniteGroupoid& x, int obj);
FiniteGroup automorphism_group_at(const FiniteGroupoid& x, int obj);

FiniteGroupoid disjoint_union(const std::vector<FiniteGroupoid>& xs);

struct GroupoidFunctor {
  std::vector<int> object_map;
  std::vector<int> arrow_map;
};

// Checks the functor commutes with s, t, c, e, i; returns violations.
std::vector<Violation> check_functor(const FiniteGroupoid& src,
                                     const FiniteGroupoid& dst,
                                     const GroupoidFunctor& f);
GroupoidFunctor make_functor(const FiniteGroupoid& src,
                             const FiniteGroupoid& dst,
                             std::vector<int> object_map,
                             std::vector<int> arrow_map);
GroupoidFunctor identity_functor(const FiniteGroupoid& x);

// Equivalence in the discrete sense: hom-set bijectivity on every source
// pair (fully faithful) plus every target object isomorphic to an image
// object (essentially surjective).
struct EquivalenceCheck {
  bool equivalence = false;
  std::string reason;
};
EquivalenceCheck is_equivalence(const FiniteGroupoid& src,
                                const FiniteGroupoid& dst,
                                const GroupoidFunctor& f);

// Finite-groupoid equivalence criterion: a bijection of coarse classes
// matching automorphism groups up to isomorphism.
bool are_equivalent(const FiniteGroupoid& a, const FiniteGroupoid& b);

// Full subgroupoid on one minimal object per coarse class, with its
// inclusion functor.
struct SkeletonResult {
  FiniteGroupoid groupoid;
  GroupoidFunctor inclusion;
  std::vector<int> object_reps;  // skeleton object -> original object
};
SkeletonResult skeleton(const FiniteGroupoid& x);

}  // namespace grpd
