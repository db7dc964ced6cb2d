#include "grpd/harness.hpp"

#include <doctest.h>

#include <json.hpp>

#include "grpd/dump.hpp"
#include "grpd/errors.hpp"
#include "grpd/rng.hpp"

using namespace grpd;

TEST_CASE("splitmix64 reference values") {
  // first outputs for seed 1234567, from the published reference sequence
  SplitMix64 r(1234567);
  CHECK(r.next() == 6457827717110365317ull);
  CHECK(r.next() == 3203168211198807973ull);
}

TEST_CASE("builtin family respects the order cap") {
  auto fam16 = builtin_group_family(16);
  CHECK(!fam16.empty());
  for (const auto& label : fam16)
    CHECK(make_group(label).order() <= 16);
  auto fam24 = builtin_group_family(24);
  CHECK(fam24.size() == fam16.size() + 1);  // S4 joins at 24
  CHECK(builtin_group_family(1) == std::vector<std::string>{"C1"});
}

TEST_CASE("random instances are valid and deterministic") {
  SweepConfig cfg;
  cfg.max_group_order = 12;
  cfg.max_set_size = 16;

  SUBCASE("contract: every seed yields a validated instance") {
    for (std::uint64_t seed : {0ull, 1ull, 2ull, 3ull, 17ull, 991ull}) {
      RandomInstance inst = random_instance(seed, cfg);
      CHECK(validate(inst.groupoid).empty());
      CHECK(check_involution(inst.groupoid, inst.involution.object_map,
                             inst.involution.arrow_map)
                .empty());
      CHECK(inst.set_size <= cfg.max_set_size);
    }
  }
  SUBCASE("same seed, same dump") {
    RandomInstance a = random_instance(42, cfg);
    RandomInstance b = random_instance(42, cfg);
    CHECK(a.dump == b.dump);
    CHECK(hash_hex(a.dump) == hash_hex(b.dump));
    RandomInstance c = random_instance(43, cfg);
    CHECK(a.dump != c.dump);  // different stream
  }
  SUBCASE("every strategy appears across a seed range") {
    bool seen[3] = {false, false, false};
    for (std::uint64_t seed = 0; seed < 60; ++seed)
      seen[random_instance(seed, cfg).strategy] = true;
    CHECK(seen[0]);
    CHECK(seen[1]);
    CHECK(seen[2]);
  }
  SUBCASE("doubled instances swap the copies freely: empty fixed locus") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      RandomInstance inst = random_instance(seed, cfg);
      if (inst.strategy != 1) continue;
      FixedGroupoidResult fx =
          fixed_groupoid(inst.groupoid, inst.involution);
      CHECK(fx.groupoid.object_count() == 0);
      CHECK(smith_thom_check(inst.groupoid, inst.involution).holds);
    }
  }
}

TEST_CASE("instance dumps replay bit-exactly") {
  FiniteGroupoid b2 = classifying_groupoid(cyclic_group(2));
  GroupoidInvolution s = trivial_groupoid_involution(b2);
  std::string d = dump_instance(b2, s);
  CHECK(d ==
        "objects 1 arrows 2\n"
        "0 0 0 0\n"
        "1 0 0 1\n"
        "0 0 0\n"
        "0 1 1\n"
        "1 0 1\n"
        "1 1 0\n"
        "sigma_obj 0\n"
        "sigma_arr 0 1\n");
  CHECK(hash_hex(d) == hash_hex(d));
  CHECK(fnv1a64("") == 0xCBF29CE484222325ull);
}

TEST_CASE("verification sweeps") {
  SUBCASE("sawin sweep over a small family has zero violations") {
    SweepConfig cfg;
    cfg.max_group_order = 8;
    VerificationReport rep = run_verify("sawin", cfg);
    CHECK(rep.fail == 0);
    CHECK(rep.pass > 0);
    CHECK(!rep.any_failure());
    for (const auto& r : rep.records) CHECK(!r.dump_hash.empty());
  }
  SUBCASE("decomposition sweep over a small family") {
    SweepConfig cfg;
    cfg.max_group_order = 8;
    VerificationReport rep = run_verify("decomposition", cfg);
    CHECK(rep.fail == 0);
    CHECK(rep.pass > 0);
  }
  SUBCASE("smith-thom on a handful of instances") {
    SweepConfig cfg;
    cfg.instance_count = 12;
    cfg.max_group_order = 8;
    cfg.max_set_size = 10;
    VerificationReport rep = run_verify("smith-thom", cfg);
    CHECK(rep.fail == 0);
    CHECK(rep.pass + rep.skip == 12);
  }
  SUBCASE("fibers on a handful of instances") {
    SweepConfig cfg;
    cfg.instance_count = 8;
    cfg.max_group_order = 8;
    cfg.max_set_size = 10;
    VerificationReport rep = run_verify("fibers", cfg);
    CHECK(rep.fail == 0);
    CHECK(rep.pass > 0);
  }
  SUBCASE("series on the catalog family") {
    SweepConfig cfg;
    VerificationReport rep = run_verify("series", cfg);
    CHECK(rep.fail == 0);
    CHECK(rep.pass > 0);
    // the identity map is lexicographically least, so S4#0 is trivial σ
    bool found_s4 = false;
    for (const auto& r : rep.records) {
      if (r.name == "S4#0") {
        for (const auto& [k, v] : r.measured)
          if (k == "sum") {
            found_s4 = true;
            CHECK(v == "4");
          }
      }
    }
    CHECK(found_s4);
  }
  SUBCASE("series respects an explicit family and skips unknown groups") {
    SweepConfig cfg;
    cfg.group_family = {"C6"};
    VerificationReport rep = run_verify("series", cfg);
    CHECK(rep.fail == 0);
    CHECK(rep.pass == 0);
    CHECK(rep.skip > 0);
  }
  SUBCASE("unknown checks are rejected") {
    SweepConfig cfg;
    CHECK_THROWS_AS(run_verify("bogus", cfg), PreconditionError);
  }
  SUBCASE("bad configs are rejected") {
    SweepConfig cfg;
    cfg.instance_count = 0;
    CHECK_THROWS_AS(run_verify("smith-thom", cfg), PreconditionError);
  }
}

TEST_CASE("reports") {
  SweepConfig cfg;
  cfg.max_group_order = 4;
  VerificationReport rep = run_verify("sawin", cfg);

  SUBCASE("summary counts tally the records") {
    int pass = 0, fail = 0, skip = 0;
    for (const auto& r : rep.records) {
      if (r.skipped)
        ++skip;
      else if (r.holds)
        ++pass;
      else
        ++fail;
    }
    CHECK(rep.pass == pass);
    CHECK(rep.fail == fail);
    CHECK(rep.skip == skip);
  }
  SUBCASE("JSON is schema-1 and reproducible modulo wall time") {
    std::string text = report_json(rep);
    auto j = nlohmann::json::parse(text);
    CHECK(j["schema"] == 1);
    CHECK(j["check"] == "sawin");
    CHECK(j["records"].size() == rep.records.size());
    CHECK(j["summary"]["fail"] == rep.fail);

    VerificationReport rep2 = run_verify("sawin", cfg);
    auto j2 = nlohmann::json::parse(report_json(rep2));
    j.erase("wall_time_ms");
    j2.erase("wall_time_ms");
    CHECK(j.dump() == j2.dump());
  }
  SUBCASE("CSV has one line per record plus the header") {
    std::string text = report_csv(rep);
    std::size_t lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == rep.records.size() + 1);
    CHECK(text.rfind("index,check,", 0) == 0);
    // CSV carries no wall time, so two runs are byte-identical
    CHECK(report_csv(run_verify("sawin", cfg)) == text);
  }
}

TEST_CASE("involution specs") {
  FiniteGroup s4 = make_group("S4");
  CHECK(parse_involution_spec(s4, "trivial").map() ==
        trivial_group_involution(s4).map());
  SUBCASE("inner:<element> conjugates, and requires an involutive result") {
    GroupInvolution s = parse_involution_spec(s4, "inner:1");
    for (int x = 0; x < s4.order(); ++x)
      CHECK(s(x) == s4.mul(s4.mul(1, x), s4.inv(1)));
    // conjugation by a 4-cycle is not involutive
    FiniteGroup c4 = make_group("C4");
    CHECK_NOTHROW(parse_involution_spec(c4, "inner:1"));  // abelian: identity
    FiniteGroup s3 = make_group("S3");
    bool threw = false;
    try {
      // element of order 3: conjugation has order 3
      for (int x = 0; x < s3.order(); ++x)
        if (s3.element_order(x) == 3) {
          parse_involution_spec(s3, "inner:" + std::to_string(x));
          break;
        }
    } catch (const ValidationError&) {
      threw = true;
    }
    CHECK(threw);
  }
  SUBCASE("index:<k> picks from the enumeration") {
    FiniteGroup c3 = make_group("C3");
    GroupInvolution s = parse_involution_spec(c3, "index:1");
    CHECK(s.map() == std::vector<int>{0, 2, 1});  // inversion
    CHECK_THROWS_AS(parse_involution_spec(c3, "index:5"), PreconditionError);
  }
  SUBCASE("garbage specs are parse errors") {
    CHECK_THROWS_AS(parse_involution_spec(s4, "sideways"), ParseError);
  }
}

TEST_CASE("h1 command") {
  H1Report rep = cmd_h1("S4", "trivial");
  CHECK(rep.z1_count == 10);
  CHECK(rep.h1_count == 3);
  CHECK(rep.fixed_subgroup_orders == std::vector<int>{24, 4, 8});
  CHECK(rep.sawin.chain_holds);

  std::string text = h1_report_text(rep);
  CHECK(text.find("#H1 = 3") != std::string::npos);
  CHECK(text.find("[ok]") != std::string::npos);

  auto j = nlohmann::json::parse(h1_report_json(rep));
  CHECK(j["h1"] == 3);
  CHECK(j["sawin"]["classes"] == 5);

  CHECK(cmd_h1("C2", "trivial").h1_count == 2);
  CHECK(cmd_h1("C3", "index:1").h1_count == 1);
  CHECK_THROWS_AS(cmd_h1("Q8", "trivial"), ParseError);
}
