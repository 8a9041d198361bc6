#pragma once

#include <array>
#include <string>
#include <vector>

#include "trilinpa/analytic.hpp"
#include "trilinpa/models.hpp"

namespace trilinpa::app {

enum class ModelKind { Full, Effective, Linear };

const char* model_name(ModelKind kind);

// Sampling grid: either a uniform [0, t_end] grid including both endpoints
// or an explicit strictly increasing list of non-negative times.
struct TimesSpec {
  double t_end = 10.0;
  int samples = 101;
  std::vector<double> list;  // non-empty wins over t_end/samples

  std::vector<double> resolve() const;
  double horizon() const;  // last sample
};

// A fully resolved scenario: parse_config applies every default so that
// downstream code never needs to know what was omitted in the file.
struct ScenarioConfig {
  ModelKind model = ModelKind::Full;
  ModelParams params;
  PulseSchedule schedule;  // constant amplitude omega0 unless configured
  InputSpec input;         // light + atoms; molecules always start in vacuum
  std::array<int, kNumModes> caps{};
  TimesSpec times;
  std::vector<std::string> observables;
  bool include_mu_term = false;  // effective model only
  long long seed = 0;            // reserved
  std::string output_dir = "out";
};

inline const std::vector<std::string>& observable_names() {
  static const std::vector<std::string> names = {"numbers", "mandel_q",
                                                 "squeezing", "g2_ag",
                                                 "charges"};
  return names;
}

// Strict parse of the JSON scenario text. Unknown keys anywhere are
// rejected, kind-specific input fields are enforced, and the documented
// defaults are applied. Malformed JSON raises ParseError with the byte
// position; schema violations raise ValidationError (or the sharper
// NonGaussianInput / ZeroDetuning where those apply).
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

// Default caps from the conserved charges: with molecules starting empty,
// n_b can never exceed its own initial support (C1) and n_a its own (C2),
// while both molecular modes are bounded by min(C2, floor(C1/2)). Coherent
// and squeezed tails are cut at the state builders' default tolerance.
std::array<int, kNumModes> default_caps(ModelKind model,
                                        const InputSpec& input);

// Canonical key-ordered JSON echo of a resolved config; embedded in
// run.meta and reused by the reproducibility checks.
std::string resolved_config_json(const ScenarioConfig& cfg);

}  // namespace trilinpa::app
