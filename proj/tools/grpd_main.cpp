// Command-line surface: H1 reports, batch verification sweeps, and seeded
// instance dumps.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "grpd/dump.hpp"
#include "grpd/errors.hpp"
#include "grpd/harness.hpp"
#include "grpd/rng.hpp"

namespace {

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw grpd::IoError("cannot open output file '" + path + "'");
  out << text;
}

constexpr const char* kGrammarHelp =
    "Group specs: atoms C<n> (cyclic), S<n> with n <= 7 (symmetric,\n"
    "permutations in lexicographic order), D<2n> (dihedral, even order);\n"
    "atoms joined with 'x' form direct products, e.g. C2xC2xS3.\n"
    "'table:<path>' loads an explicit Cayley table: first line n, then n\n"
    "rows of n indices; the identity must be element 0.\n"
    "Involution specs: trivial | inner:<element> | index:<k> where k picks\n"
    "from the lexicographic enumeration of involutive automorphisms.\n"
    "Cap overrides: GRPD_ORDER_CAP, GRPD_ENUM_CAP, GRPD_ARROW_CAP.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(grpd::kToolVersion) +
               " — finite groupoids with involution: fixed-point groupoids, "
               "twisted-conjugacy H1, inertia, and exact Poincare-series "
               "ratios"};
  app.footer(kGrammarHelp);
  app.set_version_flag("--version", grpd::kToolVersion);
  app.require_subcommand(1);

  // h1 ------------------------------------------------------------------
  std::string h1_group, h1_involution = "trivial";
  bool h1_json = false;
  auto* h1_cmd = app.add_subcommand("h1", "Z1/H1 report for a group with involution");
  h1_cmd->add_option("group", h1_group, "group spec (see footer)")->required();
  h1_cmd->add_option("involution", h1_involution,
                     "trivial | inner:<element> | index:<k>");
  h1_cmd->add_flag("--json", h1_json, "emit JSON instead of text");

  // verify ----------------------------------------------------------------
  std::string v_check;
  grpd::SweepConfig cfg;
  std::string v_format = "json";
  auto* v_cmd = app.add_subcommand(
      "verify", "batch verification sweep; exit status is nonzero iff a "
                "check fails");
  v_cmd->add_option("check", v_check,
                    "sawin | smith-thom | decomposition | fibers | series")
      ->required();
  v_cmd->add_option("--seed", cfg.seed, "sweep seed (default 0)");
  v_cmd->add_option("--count", cfg.instance_count,
                    "instances for randomized checks (default 100)");
  v_cmd->add_option("--max-order", cfg.max_group_order,
                    "largest group order in the sweep family (default 16)");
  v_cmd->add_option("--max-set-size", cfg.max_set_size,
                    "largest Γ-set size (default 20)");
  v_cmd->add_option("--family", cfg.group_family,
                    "comma-separated group specs overriding the built-in family")
      ->delimiter(',');
  v_cmd->add_option("--out", cfg.output_path, "report file (default stdout)");
  v_cmd->add_option("--format", v_format, "json | csv");
  v_cmd->add_option("--catalog", cfg.catalog_path,
                    "extra Poincare-series catalog file (series check)");

  // instance ----------------------------------------------------------------
  std::uint64_t i_seed = 0;
  std::string i_out;
  grpd::SweepConfig i_cfg;
  auto* i_cmd = app.add_subcommand("instance",
                                   "emit one seeded groupoid-with-involution "
                                   "instance dump");
  i_cmd->add_option("--seed", i_seed, "instance seed (default 0)");
  i_cmd->add_option("--max-order", i_cfg.max_group_order,
                    "largest group order (default 16)");
  i_cmd->add_option("--max-set-size", i_cfg.max_set_size,
                    "largest Γ-set size (default 20)");
  i_cmd->add_option("--out", i_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (h1_cmd->parsed()) {
      grpd::H1Report rep = grpd::cmd_h1(h1_group, h1_involution);
      std::cout << (h1_json ? grpd::h1_report_json(rep)
                            : grpd::h1_report_text(rep));
      return 0;
    }
    if (v_cmd->parsed()) {
      if (v_format == "csv")
        cfg.format = grpd::SweepConfig::Format::csv;
      else if (v_format != "json")
        throw grpd::ParseError("bad format '" + v_format + "'");
      grpd::VerificationReport rep = grpd::run_verify(v_check, cfg);
      write_output(cfg.output_path, grpd::write_report(rep));
      std::cerr << rep.check << ": " << rep.pass << " pass, " << rep.fail
                << " fail, " << rep.skip << " skip (" << rep.wall_time_ms
                << " ms)\n";
      return rep.any_failure() ? 1 : 0;
    }
    if (i_cmd->parsed()) {
      grpd::RandomInstance inst = grpd::random_instance(i_seed, i_cfg);
      write_output(i_out, inst.dump);
      std::cerr << "instance " << inst.group_label << " on "
                << inst.set_size << " points, strategy " << inst.strategy
                << ", hash " << grpd::hash_hex(inst.dump) << "\n";
      return 0;
    }
  } catch (const grpd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
