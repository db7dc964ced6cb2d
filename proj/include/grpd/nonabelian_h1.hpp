#pragma once

#include <vector>

#include "grpd/finite_group.hpp"

namespace grpd {

// Cocycles and their twisted-conjugacy classes for a group with involution:
// Z¹ = {γ : γ·σ(γ) = e}, acted on by β·γ = β γ σ(β)⁻¹.
struct H1ClassSet {
  std::vector<int> cocycles;               // Z¹, sorted ascending
  std::vector<std::vector<int>> classes;   // partition of Z¹, blocks sorted,
                                           // ordered by representative
  std::vector<int> representatives;        // minimum of each class
  int count() const { return static_cast<int>(classes.size()); }
};

std::vector<int> z1(const FiniteGroup& g, const GroupInvolution& s);

H1ClassSet h1(const FiniteGroup& g, const GroupInvolution& s);

// Twisted-conjugacy orbits of the whole group (not just Z¹).
std::vector<std::vector<int>> sigma_conjugacy_orbits(const FiniteGroup& g,
                                                     const GroupInvolution& s);

// x ↦ γ·σ(x)·γ⁻¹; requires γ ∈ Z¹ (which makes it an involution).
GroupInvolution twisted_involution(const FiniteGroup& g,
                                   const GroupInvolution& s, int gamma);

// Fixed points of the twisted involution: {x : γ·σ(x) = x·γ}.
Subgroup fixed_subgroup(const FiniteGroup& g, const GroupInvolution& s,
                        int gamma);

// The counting chain #H¹ <= #(Γ/σ-conj) = #(Γ/Γ)^G <= #(Γ/Γ) together with
// the two orbit-stabilizer sum identities behind the middle equality.
struct SawinReport {
  int h1_count = 0;
  int sigma_conjugacy_count = 0;  // σ-twisted orbits over all of Γ
  int stable_class_count = 0;     // conjugacy classes with [σ(h)] = [h]
  int conjugacy_count = 0;
  long long stab_sigma_sum = 0;   // Σ_g #Stab_σ(g)
  bool orbit_identity_holds = false;  // sum = #Γ · #(Γ/σ-conj)
  bool class_identity_holds = false;  // sum = #(Γ/Γ)^G · #Γ
  bool chain_holds = false;
};
SawinReport sawin_report(const FiniteGroup& g, const GroupInvolution& s);

}  // namespace grpd
