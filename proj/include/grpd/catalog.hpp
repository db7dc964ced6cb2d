#pragma once

#include <memory>
#include <string>
#include <vector>

#include "grpd/finite_group.hpp"
#include "grpd/poincare.hpp"

namespace grpd {

// Catalog of Poincaré series keyed by group up to isomorphism. The catalog
// is data: one entry per line,
//   label | num: c0 c1 ... | den: c0 c1 ...
// with integer or p/q coefficient tokens. The label must be a group spec the
// grammar accepts; it names the group the entry belongs to.
class PoincareCatalog {
 public:
  static PoincareCatalog builtin();
  static PoincareCatalog parse(const std::string& text);
  static PoincareCatalog load(const std::string& path);
  static const char* builtin_text();

  void merge(const PoincareCatalog& other);  // other's entries take priority

  struct Entry {
    std::string label;
    RationalFunction series;
  };
  const std::vector<Entry>& entries() const { return entries_; }

  // Finds the entry whose key group is isomorphic to g.
  const RationalFunction& lookup(const FiniteGroup& g) const;

 private:
  std::vector<Entry> entries_;
  // key groups built lazily from the labels
  mutable std::vector<std::unique_ptr<FiniteGroup>> key_groups_;
};

// Σ over H¹ representatives γ of (catalog series of the twisted fixed
// subgroup) / (catalog series of g), evaluated at t = 1.
struct H1RatioSum {
  Rat total = Rat(0);
  struct Row {
    int representative;
    std::string subgroup_label;
    int subgroup_order;
    Rat ratio;
  };
  std::vector<Row> rows;
};
H1RatioSum sum_h1_ratios(const FiniteGroup& g, const GroupInvolution& s,
                         const PoincareCatalog& catalog);

}  // namespace grpd
