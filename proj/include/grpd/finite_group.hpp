#pragma once

#include <string>
#include <vector>

namespace grpd {

// Size caps, overridable through the environment:
//   GRPD_ORDER_CAP  largest group order make_group will build   (default 10000)
//   GRPD_ENUM_CAP   largest order for automorphism enumeration
//                   and equal-order isomorphism search           (default 24)
//   GRPD_ARROW_CAP  largest arrow pool for a groupoid            (default 100000)
struct Caps {
  int order_cap = 10000;
  int enum_cap = 24;
  long arrow_cap = 100000;
};
const Caps& caps();

// A finite group given by its full multiplication table. Elements are dense
// indices 0..n-1 with the identity pinned at index 0.
class FiniteGroup {
 public:
  FiniteGroup() = default;  // trivial group

  // Validates the table (closure, identity at 0, inverses, associativity;
  // associativity is exhaustive for n <= 64 and sampled above that).
  static FiniteGroup from_table(int order, std::vector<int> table,
                                std::string label);

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[a * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::string& label() const { return label_; }
  const std::vector<int>& table() const { return table_; }

  int element_order(int a) const;
  bool is_abelian() const;
  int exponent() const;
  std::vector<int> order_census() const;  // element orders, sorted ascending

  // Subgroup generated by `seed`, as a sorted element list.
  std::vector<int> closure(const std::vector<int>& seed) const;

  // Greedy generating set: scan elements by descending order (ties by index)
  // and keep those that enlarge the generated subgroup.
  std::vector<int> generating_set() const;

 private:
  int order_ = 1;
  std::vector<int> table_{0};
  std::vector<int> inverse_{0};
  std::string label_ = "C1";
};

// Axiom check used by from_table; returns human-readable violations.
std::vector<std::string> check_group_axioms(int order,
                                            const std::vector<int>& table);

FiniteGroup trivial_group();
FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int n);   // permutations in lexicographic order
FiniteGroup dihedral_group(int order);  // order = 2n; elements r^k then r^k s
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

// Group spec grammar (the CLI's public contract):
//   atom := "C<n>" | "S<n>" (n <= 7) | "D<2n>"
//   expr := atom ("x" atom)*
// or "table:<path>" for an explicit Cayley table file (first line n, then n
// rows of n whitespace-separated indices; identity must be index 0).
FiniteGroup make_group(const std::string& spec);

// Conjugacy classes as sorted blocks with minimal-index representatives,
// ordered by representative.
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);

// A subgroup re-indexed as a FiniteGroup, plus its embedding into the parent
// (embedding[i] = parent index of subgroup element i; embedding[0] == 0).
struct Subgroup {
  FiniteGroup group;
  std::vector<int> embedding;
};

// `elements` must be closed under multiplication and contain the identity.
Subgroup subgroup_of(const FiniteGroup& g, std::vector<int> elements,
                     std::string label);

Subgroup centralizer(const FiniteGroup& g, int x);

struct GroupAutomorphism {
  std::vector<int> map;
  int operator()(int a) const { return map[a]; }
};

struct GroupInvolution {
  GroupAutomorphism underlying;
  int operator()(int a) const { return underlying.map[a]; }
  const std::vector<int>& map() const { return underlying.map; }
};

GroupAutomorphism make_automorphism(const FiniteGroup& g, std::vector<int> map);
GroupInvolution make_group_involution(const FiniteGroup& g,
                                      std::vector<int> map);
GroupInvolution trivial_group_involution(const FiniteGroup& g);
// Conjugation by g; requires it to be involutive (g^2 central).
GroupInvolution inner_involution(const FiniteGroup& group, int g);

// All automorphisms s with s∘s = id, in lexicographic order of the map.
// Always contains the identity. Requires order() <= caps().enum_cap.
std::vector<GroupInvolution> enumerate_involutive_automorphisms(
    const FiniteGroup& g);

// Invariant pre-screen (order, abelianness, order census, class sizes), then
// generator-image backtracking. Equal orders above caps().enum_cap throw.
bool is_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace grpd
