#include "trilinpa/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "trilinpa/errors.hpp"
#include "trilinpa/states.hpp"

namespace trilinpa::app {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ValidationError(msg); }

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) bad("unknown key '" + item.key() + "' in " + where);
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_num(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(where + " must be finite");
  return x;
}

long long as_int(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15)
      return static_cast<long long>(x);
  }
  bad(where + " must be an integer");
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) bad(where + " must be true or false");
  return v.get<bool>();
}

std::string as_str(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where + " must be a string");
  return v.get<std::string>();
}

cplx as_amp(const json& v, const std::string& where) {
  if (v.is_number()) return cplx(as_num(v, where), 0.0);
  if (v.is_array() && v.size() == 2)
    return cplx(as_num(v[0], where + "[0]"), as_num(v[1], where + "[1]"));
  bad(where + " must be a number or an [re, im] pair");
}

ModelKind parse_model(const json& v) {
  const std::string name = as_str(v, "model");
  if (name == "full") return ModelKind::Full;
  if (name == "effective") return ModelKind::Effective;
  if (name == "linear") return ModelKind::Linear;
  bad("model must be one of full, effective, linear");
}

ModelParams parse_params(const json& v) {
  if (!v.is_object()) bad("params must be an object");
  check_keys(v, "params", {"epsilon", "omega0", "delta", "n0"});
  ModelParams p;
  const json* field = find(v, "epsilon");
  if (!field) bad("params.epsilon is required");
  p.epsilon = as_num(*field, "params.epsilon");
  field = find(v, "omega0");
  if (!field) bad("params.omega0 is required");
  p.omega0 = as_num(*field, "params.omega0");
  field = find(v, "delta");
  if (!field) bad("params.delta is required");
  p.delta = as_num(*field, "params.delta");
  field = find(v, "n0");
  if (!field) bad("params.n0 is required");
  p.n0 = static_cast<long>(as_int(*field, "params.n0"));
  p.validate();
  return p;
}

TimesSpec parse_times(const json* v) {
  TimesSpec spec;
  if (!v) return spec;
  if (!v->is_object()) bad("times must be an object");
  check_keys(*v, "times", {"t_end", "samples", "list"});
  const json* list = find(*v, "list");
  if (list) {
    if (find(*v, "t_end") || find(*v, "samples"))
      bad("times takes either t_end/samples or list, not both");
    if (!list->is_array() || list->empty())
      bad("times.list must be a non-empty array");
    for (const auto& item : *list)
      spec.list.push_back(as_num(item, "times.list entry"));
    if (spec.list.front() < 0.0) bad("times.list must start at t >= 0");
    for (std::size_t k = 1; k < spec.list.size(); ++k)
      if (spec.list[k] <= spec.list[k - 1])
        bad("times.list must be strictly increasing");
    return spec;
  }
  if (const json* f = find(*v, "t_end")) spec.t_end = as_num(*f, "times.t_end");
  if (!(spec.t_end > 0.0)) bad("times.t_end must be positive");
  if (const json* f = find(*v, "samples"))
    spec.samples = static_cast<int>(as_int(*f, "times.samples"));
  if (spec.samples < 2) bad("times.samples must be at least 2");
  return spec;
}

PulseShape parse_shape(const json& v) {
  const std::string name = as_str(v, "schedule.shape");
  if (name == "constant") return PulseShape::Constant;
  if (name == "gaussian") return PulseShape::Gaussian;
  if (name == "stirap_pair") return PulseShape::StirapPair;
  bad("schedule.shape must be one of constant, gaussian, stirap_pair");
}

PulseSchedule parse_schedule(const json* v, const ModelParams& params,
                             double horizon) {
  PulseSchedule s;
  s.amplitude = params.omega0;
  s.t_start = 0.0;
  s.t_end = horizon;
  if (!v) return s;
  if (!v->is_object()) bad("schedule must be an object");
  check_keys(*v, "schedule",
             {"shape", "amplitude", "center", "width", "delay", "t_window"});
  if (const json* f = find(*v, "shape")) s.shape = parse_shape(*f);
  if (const json* f = find(*v, "amplitude"))
    s.amplitude = as_num(*f, "schedule.amplitude");
  const bool pulsed = s.shape != PulseShape::Constant;
  if (!pulsed) {
    if (find(*v, "center") || find(*v, "width") || find(*v, "delay"))
      bad("center/width/delay only apply to pulsed schedule shapes");
  } else {
    const json* center = find(*v, "center");
    const json* width = find(*v, "width");
    if (!center || !width)
      bad("pulsed schedules require schedule.center and schedule.width");
    s.center = as_num(*center, "schedule.center");
    s.width = as_num(*width, "schedule.width");
    const json* delay = find(*v, "delay");
    if (s.shape == PulseShape::StirapPair) {
      if (!delay) bad("stirap_pair requires schedule.delay");
      s.delay = as_num(*delay, "schedule.delay");
    } else if (delay) {
      bad("schedule.delay only applies to stirap_pair");
    }
  }
  if (const json* f = find(*v, "t_window")) {
    if (!f->is_array() || f->size() != 2)
      bad("schedule.t_window must be [start, end]");
    s.t_start = as_num((*f)[0], "schedule.t_window[0]");
    s.t_end = as_num((*f)[1], "schedule.t_window[1]");
  }
  s.validate();
  return s;
}

ModeSpec parse_mode(const json& v, const std::string& where) {
  if (!v.is_object()) bad(where + " must be an object");
  check_keys(v, where, {"kind", "n", "amp", "r", "phi"});
  const json* kind = find(v, "kind");
  if (!kind) bad(where + ".kind is required");
  const std::string name = as_str(*kind, where + ".kind");

  ModeSpec spec;
  bool wants_n = false, wants_amp = false, wants_r = false;
  if (name == "vacuum") {
    spec.kind = ModeSpec::Kind::Vacuum;
  } else if (name == "fock") {
    spec.kind = ModeSpec::Kind::Fock;
    wants_n = true;
  } else if (name == "coherent") {
    spec.kind = ModeSpec::Kind::Coherent;
    wants_amp = true;
  } else if (name == "squeezed_coherent") {
    spec.kind = ModeSpec::Kind::SqueezedCoherent;
    wants_amp = wants_r = true;
  } else if (name == "squeezed_vacuum") {
    spec.kind = ModeSpec::Kind::SqueezedVacuum;
    wants_r = true;
  } else {
    bad(where + ".kind '" + name + "' is not recognized");
  }

  const json* n = find(v, "n");
  const json* amp = find(v, "amp");
  const json* r = find(v, "r");
  const json* phi = find(v, "phi");
  if (wants_n) {
    if (!n) bad(where + " of kind fock requires n");
    spec.n = static_cast<long>(as_int(*n, where + ".n"));
    if (spec.n < 0) bad(where + ".n must be non-negative");
  } else if (n) {
    bad(where + ".n only applies to kind fock");
  }
  if (wants_amp) {
    if (!amp) bad(where + " of kind " + name + " requires amp");
    spec.amp = as_amp(*amp, where + ".amp");
  } else if (amp) {
    bad(where + ".amp does not apply to kind " + name);
  }
  if (wants_r) {
    if (!r) bad(where + " of kind " + name + " requires r");
    spec.r = as_num(*r, where + ".r");
    if (spec.r < 0.0) bad(where + ".r must be non-negative");
    if (phi) spec.phi = as_num(*phi, where + ".phi");
  } else {
    if (r) bad(where + ".r only applies to squeezed kinds");
    if (phi) bad(where + ".phi only applies to squeezed kinds");
  }
  return spec;
}

InputSpec parse_input(const json* v, const ModelParams& params) {
  InputSpec input;
  input.light.kind = ModeSpec::Kind::Vacuum;
  input.atoms.kind = ModeSpec::Kind::Fock;
  input.atoms.n = params.n0;
  if (!v) return input;
  if (!v->is_object()) bad("input must be an object");
  check_keys(*v, "input", {"light", "atoms"});
  if (const json* f = find(*v, "light"))
    input.light = parse_mode(*f, "input.light");
  if (const json* f = find(*v, "atoms"))
    input.atoms = parse_mode(*f, "input.atoms");
  return input;
}

// Smallest cap whose truncated tail stays below the default state tolerance.
int tail_cap(const ModeSpec& spec) {
  switch (spec.kind) {
    case ModeSpec::Kind::Vacuum:
      return 0;
    case ModeSpec::Kind::Fock:
      return static_cast<int>(spec.n);
    default:
      break;
  }
  const int hard_limit = 4096;
  for (int cap = 0; cap <= hard_limit; ++cap) {
    double loss = 0.0;
    if (spec.kind == ModeSpec::Kind::Coherent)
      coherent_profile(cap, spec.amp, &loss);
    else
      squeezed_coherent_profile(
          cap, spec.r, spec.phi,
          spec.kind == ModeSpec::Kind::SqueezedVacuum ? cplx(0.0) : spec.amp,
          &loss);
    if (loss < kDefaultTruncationTol) return cap;
  }
  throw TruncationTooSevere("input tail does not converge below cap 4096");
}

std::array<int, kNumModes> parse_caps(const json* v, ModelKind model,
                                      const InputSpec& input) {
  std::array<int, kNumModes> caps = default_caps(model, input);
  if (!v) return caps;
  if (model == ModelKind::Linear)
    bad("caps apply to the Fock-space models only");
  if (v->is_array()) {
    if (v->size() != kNumModes) bad("caps array must have four entries");
    for (int m = 0; m < kNumModes; ++m)
      caps[static_cast<std::size_t>(m)] =
          static_cast<int>(as_int((*v)[static_cast<std::size_t>(m)], "caps"));
  } else if (v->is_object()) {
    check_keys(*v, "caps", {"a", "b", "e", "g"});
    const char* names[kNumModes] = {"a", "b", "e", "g"};
    for (int m = 0; m < kNumModes; ++m)
      if (const json* f = find(*v, names[m]))
        caps[static_cast<std::size_t>(m)] = static_cast<int>(
            as_int(*f, std::string("caps.") + names[m]));
  } else {
    bad("caps must be an object {a, b, e, g} or a four-entry array");
  }
  for (int m = 0; m < kNumModes; ++m)
    if (caps[static_cast<std::size_t>(m)] < 0)
      bad("caps must be non-negative");
  return caps;
}

std::vector<std::string> parse_observables(const json* v, ModelKind model) {
  std::vector<std::string> obs;
  if (!v) {
    obs.push_back("numbers");
  } else {
    if (!v->is_array() || v->empty())
      bad("observables must be a non-empty array of names");
    for (const auto& item : *v) {
      const std::string name = as_str(item, "observables entry");
      bool known = false;
      for (const auto& candidate : observable_names())
        if (candidate == name) {
          known = true;
          break;
        }
      if (!known) bad("observable '" + name + "' is not recognized");
      for (const auto& seen : obs)
        if (seen == name) bad("observable '" + name + "' listed twice");
      obs.push_back(name);
    }
  }
  if (model == ModelKind::Linear)
    for (const auto& name : obs)
      if (name == "charges")
        bad("charges are Fock-space diagnostics; the linear model has none");
  return obs;
}

void cross_validate(const ScenarioConfig& cfg) {
  if (cfg.model == ModelKind::Effective && cfg.params.delta == 0.0)
    throw ZeroDetuning("the effective model requires delta != 0");
  if (cfg.model == ModelKind::Linear && !gaussian_input(cfg.input.light))
    throw NonGaussianInput("the linear model cannot take Fock light");
  if (cfg.model == ModelKind::Effective &&
      cfg.caps[static_cast<std::size_t>(Mode::ExcMol_e)] != 0)
    bad("mode e is eliminated in the effective model; cap e must be 0");
  if (cfg.model != ModelKind::Linear) {
    if (cfg.input.light.kind == ModeSpec::Kind::Fock &&
        cfg.input.light.n > cfg.caps[static_cast<std::size_t>(Mode::Light_a)])
      bad("cap a is below the initial light occupation");
    if (cfg.input.atoms.kind == ModeSpec::Kind::Fock &&
        cfg.input.atoms.n > cfg.caps[static_cast<std::size_t>(Mode::Atom_b)])
      bad("cap b is below the initial atom occupation");
  }
  const std::vector<double> grid = cfg.times.resolve();
  if (grid.front() < cfg.schedule.t_start ||
      grid.back() > cfg.schedule.t_end)
    throw OutOfWindow("sample times leave the schedule window");
}

ordered_json mode_json(const ModeSpec& spec) {
  ordered_json j;
  switch (spec.kind) {
    case ModeSpec::Kind::Vacuum:
      j["kind"] = "vacuum";
      break;
    case ModeSpec::Kind::Fock:
      j["kind"] = "fock";
      j["n"] = spec.n;
      break;
    case ModeSpec::Kind::Coherent:
      j["kind"] = "coherent";
      j["amp"] = {spec.amp.real(), spec.amp.imag()};
      break;
    case ModeSpec::Kind::SqueezedCoherent:
      j["kind"] = "squeezed_coherent";
      j["amp"] = {spec.amp.real(), spec.amp.imag()};
      j["r"] = spec.r;
      j["phi"] = spec.phi;
      break;
    case ModeSpec::Kind::SqueezedVacuum:
      j["kind"] = "squeezed_vacuum";
      j["r"] = spec.r;
      j["phi"] = spec.phi;
      break;
  }
  return j;
}

}  // namespace

const char* model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Full:
      return "full";
    case ModelKind::Effective:
      return "effective";
    case ModelKind::Linear:
      return "linear";
  }
  return "?";
}

std::vector<double> TimesSpec::resolve() const {
  if (!list.empty()) return list;
  std::vector<double> grid(static_cast<std::size_t>(samples));
  const double dt = t_end / static_cast<double>(samples - 1);
  for (int k = 0; k < samples; ++k)
    grid[static_cast<std::size_t>(k)] = dt * static_cast<double>(k);
  grid.back() = t_end;
  return grid;
}

double TimesSpec::horizon() const {
  return list.empty() ? t_end : list.back();
}

std::array<int, kNumModes> default_caps(ModelKind model,
                                        const InputSpec& input) {
  std::array<int, kNumModes> caps{0, 0, 0, 0};
  if (model == ModelKind::Linear) return caps;
  const int base_a = tail_cap(input.light);
  const int base_b = tail_cap(input.atoms);
  const int mol = std::min(base_a, base_b / 2);
  caps[static_cast<std::size_t>(Mode::Light_a)] = base_a;
  caps[static_cast<std::size_t>(Mode::Atom_b)] = base_b;
  caps[static_cast<std::size_t>(Mode::ExcMol_e)] =
      model == ModelKind::Full ? mol : 0;
  caps[static_cast<std::size_t>(Mode::GndMol_g)] = mol;
  return caps;
}

ScenarioConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!root.is_object()) bad("config root must be an object");
  check_keys(root, "config",
             {"model", "params", "schedule", "input", "caps", "times",
              "observables", "include_mu_term", "seed", "output_dir"});

  ScenarioConfig cfg;
  const json* model = find(root, "model");
  if (!model) bad("model is required");
  cfg.model = parse_model(*model);
  const json* params = find(root, "params");
  if (!params) bad("params is required");
  cfg.params = parse_params(*params);
  cfg.times = parse_times(find(root, "times"));

  const json* schedule = find(root, "schedule");
  if (schedule && cfg.model != ModelKind::Full)
    bad("schedule is only configurable for the full model");
  cfg.schedule = parse_schedule(schedule, cfg.params, cfg.times.horizon());

  cfg.input = parse_input(find(root, "input"), cfg.params);
  cfg.caps = parse_caps(find(root, "caps"), cfg.model, cfg.input);
  cfg.observables = parse_observables(find(root, "observables"), cfg.model);

  if (const json* f = find(root, "include_mu_term")) {
    cfg.include_mu_term = as_bool(*f, "include_mu_term");
    if (cfg.include_mu_term && cfg.model != ModelKind::Effective)
      bad("include_mu_term applies to the effective model only");
  }
  if (const json* f = find(root, "seed")) {
    cfg.seed = as_int(*f, "seed");
    if (cfg.seed < 0) bad("seed must be non-negative");
  }
  if (const json* f = find(root, "output_dir")) {
    cfg.output_dir = as_str(*f, "output_dir");
    if (cfg.output_dir.empty()) bad("output_dir must not be empty");
  }

  cross_validate(cfg);
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file '" + path + "'");
  return parse_config(text.str());
}

std::string resolved_config_json(const ScenarioConfig& cfg) {
  ordered_json j;
  j["model"] = model_name(cfg.model);
  j["params"] = {{"epsilon", cfg.params.epsilon},
                 {"omega0", cfg.params.omega0},
                 {"delta", cfg.params.delta},
                 {"n0", cfg.params.n0}};
  ordered_json sched;
  switch (cfg.schedule.shape) {
    case PulseShape::Constant:
      sched["shape"] = "constant";
      break;
    case PulseShape::Gaussian:
      sched["shape"] = "gaussian";
      break;
    case PulseShape::StirapPair:
      sched["shape"] = "stirap_pair";
      break;
  }
  sched["amplitude"] = cfg.schedule.amplitude;
  if (cfg.schedule.shape != PulseShape::Constant) {
    sched["center"] = cfg.schedule.center;
    sched["width"] = cfg.schedule.width;
  }
  if (cfg.schedule.shape == PulseShape::StirapPair)
    sched["delay"] = cfg.schedule.delay;
  sched["t_window"] = {cfg.schedule.t_start, cfg.schedule.t_end};
  j["schedule"] = sched;
  j["input"] = {{"light", mode_json(cfg.input.light)},
                {"atoms", mode_json(cfg.input.atoms)}};
  if (cfg.model != ModelKind::Linear)
    j["caps"] = {{"a", cfg.caps[0]}, {"b", cfg.caps[1]}, {"e", cfg.caps[2]},
                 {"g", cfg.caps[3]}};
  if (!cfg.times.list.empty())
    j["times"] = {{"list", cfg.times.list}};
  else
    j["times"] = {{"t_end", cfg.times.t_end}, {"samples", cfg.times.samples}};
  j["observables"] = cfg.observables;
  if (cfg.model == ModelKind::Effective)
    j["include_mu_term"] = cfg.include_mu_term;
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  return j.dump(2);
}

}  // namespace trilinpa::app
