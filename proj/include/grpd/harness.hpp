#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grpd/catalog.hpp"
#include "grpd/involution.hpp"
#include "grpd/nonabelian_h1.hpp"

namespace grpd {

inline constexpr const char* kToolVersion = "grpd 0.1.0";

struct SweepConfig {
  std::uint64_t seed = 0;
  int instance_count = 100;
  int max_group_order = 16;
  int max_set_size = 20;
  std::vector<std::string> group_family;  // empty -> built-in default
  std::string output_path;                // empty -> stdout
  enum class Format { json, csv };
  Format format = Format::json;
  std::string catalog_path;  // empty -> built-in catalog
};

struct InstanceRecord {
  int index = 0;
  std::string name;       // instance identifier (group/involution or seed)
  std::string dump_hash;  // hash of the replay dump
  std::vector<std::pair<std::string, std::string>> measured;
  bool holds = false;
  bool skipped = false;
  std::string detail;  // skip reason, or replay dump on failure
};

struct VerificationReport {
  std::string tool_version = kToolVersion;
  std::string check;
  SweepConfig config;
  std::vector<InstanceRecord> records;
  int pass = 0, fail = 0, skip = 0;
  std::int64_t wall_time_ms = 0;
  bool any_failure() const { return fail > 0; }
};

// Groups the spec grammar can build with order <= max_order, deduplicated up
// to the obvious label identities; the exhaustive sweeps iterate this list.
std::vector<std::string> builtin_group_family(int max_order);

// Seeded Γ-set instance: a group from the family acting on a disjoint union
// of coset spaces, with a compatible involution chosen by strategy
//   (a) trivial, (b) doubling X ⊔ X with the swap (group side twisted by a
//   chosen σ_Γ), (c) exhaustive point-involution search for |X| <= 8.
struct RandomInstance {
  FiniteGroupoid groupoid;
  GroupoidInvolution involution;
  std::string dump;
  std::string group_label;
  int set_size = 0;
  int strategy = 0;  // 0 = trivial, 1 = doubling, 2 = searched
  // action data, for fiber checks
  FiniteGroup group;
  std::vector<int> action;
};
RandomInstance random_instance(std::uint64_t seed, const SweepConfig& cfg);

// checks: sawin | smith-thom | decomposition | fibers | series
VerificationReport run_verify(const std::string& check,
                              const SweepConfig& cfg);

std::string report_json(const VerificationReport& rep);
std::string report_csv(const VerificationReport& rep);
// Writes in the configured format; returns the serialized report.
std::string write_report(const VerificationReport& rep);

// involution specs: "trivial" | "inner:<element>" | "index:<k>"
GroupInvolution parse_involution_spec(const FiniteGroup& g,
                                      const std::string& spec);

struct H1Report {
  std::string group_label;
  std::string involution_spec;
  int z1_count = 0;
  int h1_count = 0;
  std::vector<int> representatives;
  std::vector<int> fixed_subgroup_orders;
  SawinReport sawin;
};
H1Report cmd_h1(const std::string& group_spec,
                const std::string& involution_spec);
std::string h1_report_text(const H1Report& rep);
std::string h1_report_json(const H1Report& rep);

}  // namespace grpd
