#include <set>

#include "doctest.h"
#include "pcalc/functors.hpp"
#include "pcalc/verifier.hpp"

using namespace pcalc;

namespace {

VerifierConfig small_config() {
  VerifierConfig cfg;
  cfg.seed = 987654321;
  cfg.trials = 25;
  return cfg;
}

}  // namespace

TEST_CASE("random stream is deterministic and in range") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  Rng r(7);
  for (int i = 0; i < 200; ++i) {
    long v = r.range(-3, 5);
    CHECK(v >= -3);
    CHECK(v <= 5);
    Rat w = r.weight(8);
    CHECK(w >= 0);
    CHECK(w < 1);
    Rat nz = r.nonzero_weight(8);
    CHECK(nz > 0);
    CHECK(nz < 1);
  }
}

TEST_CASE("generated coverings are valid with complete fibers") {
  VerifierConfig cfg = small_config();
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    CoveringMap f = gen::random_covering(rng, cfg);
    CHECK(validate_covering(f).ok);
    for (const auto& z : f.target.points) {
      long sum = 0;
      for (const auto& [y, fib] : f.point_map)
        if (fib.target == z) sum += fib.multiplicity;
      CHECK(sum == f.degree);
    }
  }
  for (int i = 0; i < 50; ++i) {
    CoveringMap f = gen::random_constant_mult_covering(rng, cfg, true);
    CHECK(validate_covering(f).ok);
    CHECK(is_galois_profile(f));
    std::set<long> mults;
    for (const auto& [y, fib] : f.point_map) mults.insert(fib.multiplicity);
    for (long m : mults) CHECK((m == 1 || m == f.degree));
  }
}

TEST_CASE("generated matrices satisfy their advertised shapes") {
  VerifierConfig cfg = small_config();
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    Flag flag = gen::random_flag(rng, cfg, 4);
    CHECK(flag.rank() <= 4);
    std::vector<Rat> w = flag.position_weights();
    CHECK(std::is_sorted(w.begin(), w.end()));
    CHECK(check_parabolic(gen::random_parabolic(rng, flag), flag));
    CHECK(check_strongly_parabolic(gen::random_strongly_parabolic(rng, flag), flag));
    CHECK(check_residual(gen::random_residual(rng, flag), flag));
  }
}

TEST_CASE("property suite passes and reports deterministically") {
  VerifierConfig cfg = small_config();
  cfg.parallel = true;
  VerifyReport parallel_rep = run_verifier(cfg);
  CHECK(parallel_rep.all_passed());

  cfg.parallel = false;
  VerifyReport serial_rep = run_verifier(cfg);
  CHECK(serial_rep.all_passed());

  // Byte-identical text and JSON regardless of the trial driver.
  CHECK(parallel_rep.to_text() == serial_rep.to_text());
  CHECK(parallel_rep.to_json().dump() == serial_rep.to_json().dump());
  CHECK(parallel_rep.to_text().find("result: all properties passed") != std::string::npos);
}

TEST_CASE("suite names are unique and addressable") {
  std::set<std::string> names;
  for (const auto& p : property_suite()) names.insert(p.name);
  CHECK(names.size() == property_suite().size());
  CHECK(property_suite().size() == 20);
  CHECK(find_property("composition algebra").name == "composition algebra");
  CHECK_THROWS_AS(find_property("no such property"), error);
}

TEST_CASE("failures surface the smallest trial index and replay data") {
  PropertySpec failing{
      "always fails late",
      [](Rng& rng, const VerifierConfig& cfg) -> std::optional<Counterexample> {
        // Deterministic failure on every trial; exercises slot collection.
        Scenario s;
        s.coverings["f"] = gen::random_covering(rng, cfg);
        s.curves["upstairs"] = s.coverings["f"].source;
        s.curves["downstairs"] = s.coverings["f"].target;
        return Counterexample{scenario_to_text(s), "validate", "forced failure"};
      }};
  VerifierConfig cfg = small_config();
  PropertyResult res = run_property(failing, cfg, 10);
  CHECK(!res.passed);
  CHECK(res.failed_trial == 0);
  CHECK(res.counterexample.detail == "forced failure");

  // The emitted scenario is replayable as-is.
  Scenario replay = scenario_from_json(nlohmann::json::parse(res.counterexample.scenario_json));
  CHECK(replay.coverings.count("f") == 1);

  PropertySpec throwing{
      "throws on some trials",
      [](Rng& rng, const VerifierConfig&) -> std::optional<Counterexample> {
        if (rng.next() % 2 == 0) throw std::runtime_error("boom");
        return std::nullopt;
      }};
  PropertyResult thrown = run_property(throwing, cfg, 50);
  CHECK(!thrown.passed);
  CHECK(thrown.counterexample.detail.find("unexpected exception") != std::string::npos);

  VerifyReport rep;
  rep.seed = cfg.seed;
  rep.properties.push_back(res);
  CHECK(!rep.all_passed());
  CHECK(rep.to_text().find("FAILED") != std::string::npos);
  CHECK(rep.to_text().find("replay: pcalc validate") != std::string::npos);
  CHECK(rep.to_json().at("all_passed") == false);
}

TEST_CASE("the suite flags deliberately skewed arithmetic") {
  // A mutant of the correspondence that truncates the raw jump toward zero
  // instead of flooring it. On points with a negative raw jump the round
  // trip breaks, and the randomized trials must find one.
  PropertySpec mutant{
      "mutant truncating correspondence",
      [](Rng& rng, const VerifierConfig& cfg) -> std::optional<Counterexample> {
        for (const auto& p : gen::random_spectrum(rng, cfg, FieldKind::higgs)) {
          Rat raw_jump = p.jump - 2 * p.eigenvalue.re;
          long k = long(mpz_class(raw_jump.get_num() / raw_jump.get_den()).get_si());
          SpectralPoint q;
          q.kind = FieldKind::connection;
          q.jump = raw_jump - k;
          q.eigenvalue = GaussRat(p.jump - k, 2 * p.eigenvalue.im);
          q.multiplicity = p.multiplicity;
          bool in_range = q.jump >= 0 && q.jump < 1;
          if (!in_range || !(q == higgs_to_conn(p)))
            return Counterexample{"", "naht", "truncated jump left the normalized range"};
        }
        return std::nullopt;
      }};
  VerifierConfig cfg = small_config();
  cfg.trials = 200;
  PropertyResult res = run_property(mutant, cfg, cfg.trials);
  CHECK(!res.passed);

  // The honest correspondence passes the same stream.
  PropertyResult honest =
      run_property(find_property("spectral correspondence round trip"), cfg, cfg.trials);
  CHECK(honest.passed);
}
