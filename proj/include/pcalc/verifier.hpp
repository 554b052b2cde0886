#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcalc/scenario.hpp"

namespace pcalc {

// Deterministic generator; raw splitmix64 steps, no std distributions, so a
// seed means the same stream on every platform and thread count.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  long range(long lo, long hi);  // inclusive bounds
  bool chance(long num, long den);
  Rat weight(long max_den);          // random element of [0,1)
  Rat nonzero_weight(long max_den);  // random element of (0,1)
  GaussRat small_scalar();
};

struct VerifierConfig {
  std::uint64_t seed = 1;
  long trials = 200;
  long max_rank = 4;
  long max_degree = 6;
  long max_multiplicity = 5;
  long max_weight_denominator = 8;
  bool parallel = true;
};

// A failed trial, serialized so it can be replayed through the CLI.
struct Counterexample {
  std::string scenario_json;
  std::string command;
  std::string detail;
};

struct PropertyResult {
  std::string name;
  long trials = 0;
  bool passed = true;
  long failed_trial = -1;
  Counterexample counterexample;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool all_passed() const;
  // Text and JSON forms are functions of seed and outcomes only (no timing),
  // so identical seeds give byte-identical reports.
  std::string to_text() const;
  nlohmann::json to_json() const;
};

struct PropertySpec {
  std::string name;
  std::function<std::optional<Counterexample>(Rng&, const VerifierConfig&)> run_trial;
};

const std::vector<PropertySpec>& property_suite();
const PropertySpec& find_property(const std::string& name);

// Runs `trials` independent trials of one property. Trials are distributed
// over OpenMP threads when cfg.parallel is set; each trial reseeds from
// (seed, property, index) and results land in per-trial slots, so the
// outcome does not depend on scheduling. The reported failure is the one
// with the smallest trial index.
PropertyResult run_property(const PropertySpec& p, const VerifierConfig& cfg, long trials);

VerifyReport run_verifier(const VerifierConfig& cfg);

// Shared random instance builders, exposed for tests and the acceptance
// runner.
namespace gen {

MarkedCurve random_curve(Rng& rng, const std::string& prefix);

// Complete listings over every target point: degree, per-point partitions,
// then the source genus that the ramification count forces; resampled until
// that genus is a nonnegative integer.
CoveringMap random_covering_over(Rng& rng, const VerifierConfig& cfg, const MarkedCurve& target);
CoveringMap random_covering(Rng& rng, const VerifierConfig& cfg);

// Fiberwise-constant multiplicities (each fiber n/m points of multiplicity
// m); cyclic_type restricts to m in {1, n}.
CoveringMap random_constant_mult_covering(Rng& rng, const VerifierConfig& cfg, bool cyclic_type);

SplitParabolicBundle random_split_bundle(Rng& rng, const VerifierConfig& cfg,
                                         const MarkedCurve& curve);
ParabolicChar random_char(Rng& rng, const VerifierConfig& cfg, const MarkedCurve& curve);

Flag random_flag(Rng& rng, const VerifierConfig& cfg, long max_rank);
Matrix random_matrix(Rng& rng, int rows, int cols);
Matrix random_parabolic(Rng& rng, const Flag& flag);
Matrix random_strongly_parabolic(Rng& rng, const Flag& flag);
Matrix random_residual(Rng& rng, const Flag& flag);
LocalSpectralField random_field(Rng& rng, const VerifierConfig& cfg);

std::vector<SpectralPoint> random_spectrum(Rng& rng, const VerifierConfig& cfg, FieldKind kind);

}  // namespace gen

}  // namespace pcalc
