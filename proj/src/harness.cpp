#include "grpd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "grpd/dump.hpp"
#include "grpd/errors.hpp"
#include "grpd/rng.hpp"

namespace grpd {

namespace {

struct FamilyEntry {
  const char* label;
  int order;
};

// Spec-grammar groups with order <= 24, one label per listed entry. Labels
// that would duplicate an earlier isomorphism type (C2xS3 ~ D12, ...) are
// left out.
constexpr FamilyEntry kFamily[] = {
    {"C1", 1},          {"C2", 2},          {"C3", 3},
    {"C4", 4},          {"C2xC2", 4},       {"C5", 5},
    {"C6", 6},          {"S3", 6},          {"C7", 7},
    {"C8", 8},          {"C2xC4", 8},       {"C2xC2xC2", 8},
    {"D8", 8},          {"C9", 9},          {"C3xC3", 9},
    {"C10", 10},        {"D10", 10},        {"C11", 11},
    {"C12", 12},        {"C2xC6", 12},      {"D12", 12},
    {"C13", 13},        {"C14", 14},        {"D14", 14},
    {"C15", 15},        {"C16", 16},        {"C2xC8", 16},
    {"C4xC4", 16},      {"C2xC2xC4", 16},   {"C2xC2xC2xC2", 16},
    {"D16", 16},        {"C2xD8", 16},      {"S4", 24},
};

void validate_config(const SweepConfig& cfg) {
  if (cfg.instance_count <= 0)
    throw PreconditionError("instance count must be positive");
  if (cfg.max_group_order <= 0 || cfg.max_set_size <= 0)
    throw PreconditionError("caps must be positive");
}

}  // namespace

std::vector<std::string> builtin_group_family(int max_order) {
  std::vector<std::string> out;
  for (const auto& e : kFamily)
    if (e.order <= max_order) out.push_back(e.label);
  return out;
}

// ---------------------------------------------------------------------------
// Random Γ-set instances
// ---------------------------------------------------------------------------

namespace {

struct GammaSet {
  int set_size = 0;
  std::vector<int> action;  // element-major
};

// Disjoint union of coset spaces Γ/H for subgroups generated by random
// element picks; always yields at least one piece (Γ/Γ as a last resort).
GammaSet random_gamma_set(const FiniteGroup& g, SplitMix64& rng,
                          int max_set_size) {
  const int n = g.order();
  struct Piece {
    std::vector<int> coset_of;   // element -> coset index within the piece
    std::vector<int> coset_rep;  // coset index -> minimal element
  };
  std::vector<Piece> pieces;
  int total = 0;
  int want = 1 + static_cast<int>(rng.below(3));
  for (int p = 0; p < want; ++p) {
    int picks = 1 + static_cast<int>(rng.below(2));
    std::vector<int> seed;
    for (int t = 0; t < picks; ++t)
      seed.push_back(static_cast<int>(rng.below(n)));
    std::vector<int> sub = g.closure(seed);
    int size = n / static_cast<int>(sub.size());
    if (total + size > max_set_size) continue;
    Piece piece;
    piece.coset_of.assign(n, -1);
    for (int x = 0; x < n; ++x) {
      if (piece.coset_of[x] >= 0) continue;
      int id = static_cast<int>(piece.coset_rep.size());
      piece.coset_rep.push_back(x);  // x is minimal in its coset
      for (int h : sub) piece.coset_of[g.mul(x, h)] = id;
    }
    total += size;
    pieces.push_back(std::move(piece));
  }
  if (pieces.empty()) {
    Piece piece;  // one point, full stabilizer
    piece.coset_of.assign(n, 0);
    piece.coset_rep.push_back(0);
    pieces.push_back(std::move(piece));
    total = 1;
  }

  GammaSet out;
  out.set_size = total;
  out.action.assign(static_cast<std::size_t>(n) * total, 0);
  int offset = 0;
  for (const auto& piece : pieces) {
    int k = static_cast<int>(piece.coset_rep.size());
    for (int e = 0; e < n; ++e)
      for (int c = 0; c < k; ++c)
        out.action[e * total + offset + c] =
            offset + piece.coset_of[g.mul(e, piece.coset_rep[c])];
    offset += k;
  }
  return out;
}

// All involutive self-maps of {0..k-1}, in lexicographic order of the map.
void enumerate_point_involutions(int k, std::vector<int>& cur,
                                 std::vector<std::vector<int>>& out) {
  int i = 0;
  while (i < k && cur[i] >= 0) ++i;
  if (i == k) {
    out.push_back(cur);
    return;
  }
  cur[i] = i;
  enumerate_point_involutions(k, cur, out);
  cur[i] = -1;
  for (int j = i + 1; j < k; ++j) {
    if (cur[j] >= 0) continue;
    cur[i] = j;
    cur[j] = i;
    enumerate_point_involutions(k, cur, out);
    cur[i] = -1;
    cur[j] = -1;
  }
}

}  // namespace

RandomInstance random_instance(std::uint64_t seed, const SweepConfig& cfg) {
  validate_config(cfg);
  SplitMix64 rng(seed);
  std::vector<std::string> family = cfg.group_family.empty()
                                        ? builtin_group_family(cfg.max_group_order)
                                        : cfg.group_family;
  std::vector<FiniteGroup> groups;
  for (const auto& label : family) {
    FiniteGroup g = make_group(label);
    if (g.order() <= cfg.max_group_order) groups.push_back(std::move(g));
  }
  if (groups.empty())
    throw CapError("no group in the family fits max_group_order");

  FiniteGroup g = groups[rng.below(groups.size())];
  GammaSet gs = random_gamma_set(g, rng, cfg.max_set_size);

  int strategy = static_cast<int>(rng.below(3));
  GroupInvolution sigma_g = trivial_group_involution(g);
  if (strategy != 0 && g.order() <= caps().enum_cap) {
    auto autos = enumerate_involutive_automorphisms(g);
    sigma_g = autos[rng.below(autos.size())];
  }

  int set_size = gs.set_size;
  std::vector<int> action = gs.action;
  std::vector<int> sigma_x(set_size);
  std::iota(sigma_x.begin(), sigma_x.end(), 0);

  if (strategy == 1) {
    if (2 * gs.set_size <= cfg.max_set_size) {
      // X ⊔ X with the swap; the second copy carries the σ_Γ-twisted action.
      set_size = 2 * gs.set_size;
      action.assign(static_cast<std::size_t>(g.order()) * set_size, 0);
      for (int e = 0; e < g.order(); ++e)
        for (int x = 0; x < gs.set_size; ++x) {
          action[e * set_size + x] = gs.action[e * gs.set_size + x];
          action[e * set_size + gs.set_size + x] =
              gs.set_size + gs.action[sigma_g(e) * gs.set_size + x];
        }
      sigma_x.resize(set_size);
      for (int x = 0; x < gs.set_size; ++x) {
        sigma_x[x] = gs.set_size + x;
        sigma_x[gs.set_size + x] = x;
      }
    } else {
      strategy = 0;
      sigma_g = trivial_group_involution(g);
    }
  } else if (strategy == 2) {
    bool found = false;
    if (gs.set_size <= 8) {
      std::vector<int> cur(gs.set_size, -1);
      std::vector<std::vector<int>> all;
      enumerate_point_involutions(gs.set_size, cur, all);
      std::vector<std::vector<int>> compatible;
      for (const auto& cand : all) {
        bool ok = true;
        for (int e = 0; e < g.order() && ok; ++e)
          for (int x = 0; x < gs.set_size; ++x)
            if (cand[gs.action[e * gs.set_size + x]] !=
                gs.action[sigma_g(e) * gs.set_size + cand[x]]) {
              ok = false;
              break;
            }
        if (ok) compatible.push_back(cand);
      }
      if (!compatible.empty()) {
        sigma_x = compatible[rng.below(compatible.size())];
        found = true;
      }
    }
    if (!found) {
      strategy = 0;
      sigma_g = trivial_group_involution(g);
    }
  }

  RandomInstance inst;
  inst.groupoid = action_groupoid(set_size, g, action);
  inst.involution =
      equivariant_action_involution(set_size, g, action, sigma_x, sigma_g);
  inst.dump = dump_instance(inst.groupoid, inst.involution);
  inst.group_label = g.label();
  inst.set_size = set_size;
  inst.strategy = strategy;
  inst.group = std::move(g);
  inst.action = std::move(action);
  return inst;
}

// ---------------------------------------------------------------------------
// Verification sweeps
// ---------------------------------------------------------------------------

namespace {

std::string group_sigma_dump(const FiniteGroup& g, int sigma_index,
                             const GroupInvolution& s) {
  std::ostringstream out;
  out << "group " << g.label() << "\norder " << g.order() << "\nsigma_index "
      << sigma_index << "\nsigma";
  for (int x = 0; x < g.order(); ++x) out << " " << s(x);
  out << "\n";
  return out.str();
}

using RecordFn = void (*)(const FiniteGroup&, const GroupInvolution&,
                          InstanceRecord&);

// Exhaustive (group, involutive automorphism) sweep shared by the sawin and
// decomposition checks.
void family_sweep(const SweepConfig& cfg, VerificationReport& rep,
                  RecordFn fn) {
  std::vector<std::string> family = cfg.group_family.empty()
                                        ? builtin_group_family(cfg.max_group_order)
                                        : cfg.group_family;
  int index = 0;
  for (const auto& label : family) {
    FiniteGroup g = make_group(label);
    if (g.order() > cfg.max_group_order) continue;
    if (g.order() > caps().enum_cap) {
      InstanceRecord r;
      r.index = index++;
      r.name = label;
      r.dump_hash = hash_hex(label);
      r.skipped = true;
      r.detail = "order above enumeration cap";
      rep.records.push_back(std::move(r));
      continue;
    }
    auto autos = enumerate_involutive_automorphisms(g);
    for (std::size_t k = 0; k < autos.size(); ++k) {
      InstanceRecord r;
      r.index = index++;
      r.name = label + "#" + std::to_string(k);
      std::string dump = group_sigma_dump(g, static_cast<int>(k), autos[k]);
      r.dump_hash = hash_hex(dump);
      fn(g, autos[k], r);
      if (!r.holds && !r.skipped) r.detail = dump;
      rep.records.push_back(std::move(r));
    }
  }
}

void record_sawin(const FiniteGroup& g, const GroupInvolution& s,
                  InstanceRecord& r) {
  SawinReport sr = sawin_report(g, s);
  r.measured = {
      {"h1", std::to_string(sr.h1_count)},
      {"sigma_conj", std::to_string(sr.sigma_conjugacy_count)},
      {"stable_classes", std::to_string(sr.stable_class_count)},
      {"classes", std::to_string(sr.conjugacy_count)},
      {"stab_sum", std::to_string(sr.stab_sigma_sum)},
  };
  r.holds = sr.chain_holds && sr.orbit_identity_holds &&
            sr.class_identity_holds;
}

void record_decomposition(const FiniteGroup& g, const GroupInvolution& s,
                          InstanceRecord& r) {
  DecompositionReport dr = fixed_decomposition_check(g, s);
  std::ostringstream fixed_orders, piece_orders;
  for (int o : dr.fixed_aut_orders) fixed_orders << o << " ";
  for (int o : dr.piece_aut_orders) piece_orders << o << " ";
  r.measured = {
      {"classes", std::to_string(dr.fixed_aut_orders.size())},
      {"fixed_aut_orders", fixed_orders.str()},
      {"piece_aut_orders", piece_orders.str()},
  };
  r.holds = dr.equivalent;
}

void run_smith_thom(const SweepConfig& cfg, VerificationReport& rep) {
  for (int i = 0; i < cfg.instance_count; ++i) {
    InstanceRecord r;
    r.index = i;
    try {
      RandomInstance inst = random_instance(instance_seed(cfg.seed, i), cfg);
      r.name = inst.group_label + "/X" + std::to_string(inst.set_size) +
               "/s" + std::to_string(inst.strategy);
      r.dump_hash = hash_hex(inst.dump);
      SmithThomRecord st = smith_thom_check(inst.groupoid, inst.involution);
      r.measured = {
          {"fixed_classes", std::to_string(st.fixed_classes)},
          {"inertia_classes", std::to_string(st.inertia_classes)},
      };
      r.holds = st.holds;
      if (!r.holds) r.detail = inst.dump;
    } catch (const CapError& e) {
      r.skipped = true;
      r.detail = e.what();
    }
    rep.records.push_back(std::move(r));
  }
}

void run_fibers(const SweepConfig& cfg, VerificationReport& rep) {
  for (int i = 0; i < cfg.instance_count; ++i) {
    InstanceRecord r;
    r.index = i;
    try {
      RandomInstance inst = random_instance(instance_seed(cfg.seed, i), cfg);
      r.name = inst.group_label + "/X" + std::to_string(inst.set_size) +
               "/s" + std::to_string(inst.strategy);
      r.dump_hash = hash_hex(inst.dump);

      auto orbits = coarse_space(inst.groupoid);
      int inertia_checked = 0, h1_checked = 0, h1_empty = 0;
      for (const auto& orbit : orbits) {
        inertia_fiber(inst.set_size, inst.group, inst.action, orbit);
        ++inertia_checked;
      }
      // coarse classes preserved by the involution carry an H¹ fiber
      for (const auto& cls : orbits) {
        std::vector<char> in_class(inst.groupoid.object_count(), 0);
        for (int o : cls) in_class[o] = 1;
        bool preserved = true;
        for (int o : cls)
          if (!in_class[inst.involution.object_map[o]]) {
            preserved = false;
            break;
          }
        if (!preserved) continue;
        H1FiberReport hr = h1_fiber(inst.groupoid, inst.involution, cls);
        if (hr.has_witness)
          ++h1_checked;
        else
          ++h1_empty;
      }
      r.measured = {
          {"orbits", std::to_string(orbits.size())},
          {"inertia_fibers", std::to_string(inertia_checked)},
          {"h1_fibers", std::to_string(h1_checked)},
          {"h1_empty_fibers", std::to_string(h1_empty)},
      };
      r.holds = true;  // the fiber oracles throw on any mismatch
    } catch (const CapError& e) {
      r.skipped = true;
      r.detail = e.what();
    } catch (const std::logic_error& e) {
      r.holds = false;
      r.detail = e.what();
    }
    rep.records.push_back(std::move(r));
  }
}

void run_series(const SweepConfig& cfg, VerificationReport& rep) {
  PoincareCatalog catalog = PoincareCatalog::builtin();
  if (!cfg.catalog_path.empty())
    catalog.merge(PoincareCatalog::load(cfg.catalog_path));
  // The series check walks catalog-sized groups; the default family is the
  // set of built-in catalog keys rather than the order-capped sweep family.
  std::vector<std::string> family =
      cfg.group_family.empty()
          ? std::vector<std::string>{"C1", "C2", "C2xC2", "D8", "S4"}
          : cfg.group_family;
  int index = 0;
  for (const auto& label : family) {
    FiniteGroup g = make_group(label);
    if (g.order() > caps().enum_cap) {
      InstanceRecord r;
      r.index = index++;
      r.name = label;
      r.dump_hash = hash_hex(label);
      r.skipped = true;
      r.detail = "order above enumeration cap";
      rep.records.push_back(std::move(r));
      continue;
    }
    auto autos = enumerate_involutive_automorphisms(g);
    for (std::size_t k = 0; k < autos.size(); ++k) {
      InstanceRecord r;
      r.index = index++;
      r.name = label + "#" + std::to_string(k);
      std::string dump = group_sigma_dump(g, static_cast<int>(k), autos[k]);
      r.dump_hash = hash_hex(dump);
      try {
        H1RatioSum sum = sum_h1_ratios(g, autos[k], catalog);
        std::ostringstream ratios;
        for (const auto& row : sum.rows)
          ratios << rat_str(row.ratio) << " ";
        r.measured = {
            {"sum", rat_str(sum.total)},
            {"ratios", ratios.str()},
            {"h1", std::to_string(sum.rows.size())},
        };
        r.holds = true;
      } catch (const NotInCatalogError& e) {
        r.skipped = true;
        r.detail = e.what();
      } catch (const PoleError& e) {
        r.holds = false;  // contradicts the catalog data
        r.detail = std::string("unexpected pole: ") + e.what() + "\n" + dump;
      }
      rep.records.push_back(std::move(r));
    }
  }
}

}  // namespace

VerificationReport run_verify(const std::string& check,
                              const SweepConfig& cfg) {
  validate_config(cfg);
  VerificationReport rep;
  rep.check = check;
  rep.config = cfg;
  auto t0 = std::chrono::steady_clock::now();

  if (check == "sawin") {
    family_sweep(cfg, rep, record_sawin);
  } else if (check == "decomposition") {
    family_sweep(cfg, rep, record_decomposition);
  } else if (check == "smith-thom") {
    run_smith_thom(cfg, rep);
  } else if (check == "fibers") {
    run_fibers(cfg, rep);
  } else if (check == "series") {
    run_series(cfg, rep);
  } else {
    throw PreconditionError(
        "unknown check '" + check +
        "' (expected sawin|smith-thom|decomposition|fibers|series)");
  }

  std::sort(rep.records.begin(), rep.records.end(),
            [](const InstanceRecord& a, const InstanceRecord& b) {
              return a.index < b.index;
            });
  for (const auto& r : rep.records) {
    if (r.skipped)
      ++rep.skip;
    else if (r.holds)
      ++rep.pass;
    else
      ++rep.fail;
  }
  rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string report_json(const VerificationReport& rep) {
  nlohmann::json j;
  j["schema"] = 1;
  j["tool_version"] = rep.tool_version;
  j["check"] = rep.check;
  j["config"] = {
      {"seed", rep.config.seed},
      {"instance_count", rep.config.instance_count},
      {"max_group_order", rep.config.max_group_order},
      {"max_set_size", rep.config.max_set_size},
      {"group_family", rep.config.group_family},
      {"output_path", rep.config.output_path},
      {"format",
       rep.config.format == SweepConfig::Format::json ? "json" : "csv"},
      {"catalog_path", rep.config.catalog_path},
  };
  j["records"] = nlohmann::json::array();
  for (const auto& r : rep.records) {
    nlohmann::json jr;
    jr["index"] = r.index;
    jr["name"] = r.name;
    jr["dump_hash"] = r.dump_hash;
    jr["holds"] = r.holds;
    jr["skipped"] = r.skipped;
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, v] : r.measured) m[k] = v;
    jr["measured"] = m;
    jr["detail"] = r.detail;
    j["records"].push_back(jr);
  }
  j["summary"] = {{"pass", rep.pass}, {"fail", rep.fail}, {"skip", rep.skip}};
  j["wall_time_ms"] = rep.wall_time_ms;
  return j.dump(2) + "\n";
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else if (c == '\n') out += "\\n";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string report_csv(const VerificationReport& rep) {
  std::ostringstream out;
  out << "index,check,name,dump_hash,holds,skipped,measured,detail\n";
  for (const auto& r : rep.records) {
    std::ostringstream m;
    for (const auto& [k, v] : r.measured) m << k << "=" << v << ";";
    out << r.index << "," << rep.check << "," << csv_quote(r.name) << ","
        << r.dump_hash << "," << (r.holds ? 1 : 0) << ","
        << (r.skipped ? 1 : 0) << "," << csv_quote(m.str()) << ","
        << csv_quote(r.detail) << "\n";
  }
  return out.str();
}

std::string write_report(const VerificationReport& rep) {
  return rep.config.format == SweepConfig::Format::json ? report_json(rep)
                                                        : report_csv(rep);
}

// ---------------------------------------------------------------------------
// h1 command
// ---------------------------------------------------------------------------

GroupInvolution parse_involution_spec(const FiniteGroup& g,
                                      const std::string& spec) {
  if (spec == "trivial") return trivial_group_involution(g);
  if (spec.rfind("inner:", 0) == 0) {
    int elem = std::stoi(spec.substr(6));
    return inner_involution(g, elem);
  }
  if (spec.rfind("index:", 0) == 0) {
    int k = std::stoi(spec.substr(6));
    auto autos = enumerate_involutive_automorphisms(g);
    if (k < 0 || k >= static_cast<int>(autos.size()))
      throw PreconditionError("unknown involution index " + std::to_string(k) +
                              " (group has " + std::to_string(autos.size()) +
                              " involutive automorphisms)");
    return autos[k];
  }
  throw ParseError("bad involution spec '" + spec +
                   "' (expected trivial|inner:<element>|index:<k>)");
}

H1Report cmd_h1(const std::string& group_spec,
                const std::string& involution_spec) {
  H1Report rep;
  FiniteGroup g = make_group(group_spec);
  GroupInvolution s = parse_involution_spec(g, involution_spec);
  rep.group_label = g.label();
  rep.involution_spec = involution_spec;
  H1ClassSet h = h1(g, s);
  rep.z1_count = static_cast<int>(h.cocycles.size());
  rep.h1_count = h.count();
  rep.representatives = h.representatives;
  for (int gamma : h.representatives)
    rep.fixed_subgroup_orders.push_back(
        fixed_subgroup(g, s, gamma).group.order());
  rep.sawin = sawin_report(g, s);
  return rep;
}

std::string h1_report_text(const H1Report& rep) {
  std::ostringstream out;
  out << "group " << rep.group_label << ", involution " << rep.involution_spec
      << "\n";
  out << "#Z1 = " << rep.z1_count << "\n";
  out << "#H1 = " << rep.h1_count << "\n";
  for (std::size_t i = 0; i < rep.representatives.size(); ++i)
    out << "class " << i << ": representative " << rep.representatives[i]
        << ", fixed subgroup order " << rep.fixed_subgroup_orders[i] << "\n";
  out << "chain: #H1=" << rep.sawin.h1_count
      << " <= #(sigma-conj)=" << rep.sawin.sigma_conjugacy_count
      << " = #(stable classes)=" << rep.sawin.stable_class_count
      << " <= #(classes)=" << rep.sawin.conjugacy_count << "  ["
      << (rep.sawin.chain_holds && rep.sawin.orbit_identity_holds &&
                  rep.sawin.class_identity_holds
              ? "ok"
              : "VIOLATED")
      << "]\n";
  return out.str();
}

std::string h1_report_json(const H1Report& rep) {
  nlohmann::json j;
  j["schema"] = 1;
  j["tool_version"] = kToolVersion;
  j["group"] = rep.group_label;
  j["involution"] = rep.involution_spec;
  j["z1"] = rep.z1_count;
  j["h1"] = rep.h1_count;
  j["representatives"] = rep.representatives;
  j["fixed_subgroup_orders"] = rep.fixed_subgroup_orders;
  j["sawin"] = {
      {"h1", rep.sawin.h1_count},
      {"sigma_conj", rep.sawin.sigma_conjugacy_count},
      {"stable_classes", rep.sawin.stable_class_count},
      {"classes", rep.sawin.conjugacy_count},
      {"stab_sum", rep.sawin.stab_sigma_sum},
      {"chain_holds", rep.sawin.chain_holds},
      {"orbit_identity_holds", rep.sawin.orbit_identity_holds},
      {"class_identity_holds", rep.sawin.class_identity_holds},
  };
  return j.dump(2) + "\n";
}

}  // namespace grpd
