#include "sgf/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "sgf/integrator.hpp"

namespace sgf {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config " + where + ": " + what);
}

// Converts a byte offset from the JSON parser into line:column.
std::string line_anchor(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) fail(where + "/" + it.key(), "unknown key");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_double(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  const auto x = v.get<int64_t>();
  if (x < INT32_MIN || x > INT32_MAX) fail(where, "integer out of range");
  return static_cast<int>(x);
}

uint64_t get_u64(const json& v, const std::string& where) {
  if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<int64_t>() >= 0))) {
    fail(where, "expected an unsigned integer");
  }
  return v.get<uint64_t>();
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_double_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_double(v[i], where + "/" + std::to_string(i)));
  }
  return out;
}

Complex get_complex(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where, "expected [re, im]");
  return {get_double(v[0], where + "/0"), get_double(v[1], where + "/1")};
}

// Forcing entries carry the modulation alongside the mode fields, so the
// caller widens the allowed key set there.
ForcingMode get_mode(const json& v, const std::string& where,
                     std::initializer_list<const char*> allowed = {"j", "amp"}) {
  if (!v.is_object()) fail(where, "expected a mode object");
  check_keys(v, where, allowed);
  const json* j = find(v, "j");
  const json* amp = find(v, "amp");
  if (!j) fail(where, "missing key j");
  if (!amp) fail(where, "missing key amp");
  if (!j->is_array() || j->size() != 2) fail(where + "/j", "expected [j1, j2]");
  if (!amp->is_array() || amp->size() != 2) {
    fail(where + "/amp", "expected [[re, im], [re, im]]");
  }
  ForcingMode m;
  m.j1 = get_int((*j)[0], where + "/j/0");
  m.j2 = get_int((*j)[1], where + "/j/1");
  m.amp0 = get_complex((*amp)[0], where + "/amp/0");
  m.amp1 = get_complex((*amp)[1], where + "/amp/1");
  return m;
}

Modulation get_modulation(const json& v, const std::string& where) {
  if (!v.is_object()) fail(where, "expected a modulation object");
  check_keys(v, where, {"kind", "period"});
  const json* kind = find(v, "kind");
  if (!kind) fail(where, "missing key kind");
  const std::string k = get_string(*kind, where + "/kind");
  if (k == "constant") {
    if (find(v, "period")) fail(where + "/period", "constant modulation takes no period");
    return Modulation::constant();
  }
  if (k == "cosine") {
    const json* period = find(v, "period");
    if (!period) fail(where, "missing key period");
    const double p = get_double(*period, where + "/period");
    if (!(p > 0.0)) fail(where + "/period", "modulation period must be > 0");
    return Modulation::cosine(p);
  }
  fail(where + "/kind", "unknown modulation kind (want constant or cosine)");
}

json mode_json(const ForcingMode& m) {
  return {{"j", {m.j1, m.j2}},
          {"amp",
           {{m.amp0.real(), m.amp0.imag()}, {m.amp1.real(), m.amp1.imag()}}}};
}

json modulation_json(const Modulation& m) {
  if (m.kind == Modulation::Kind::kCosine) {
    return {{"kind", "cosine"}, {"period", m.period}};
  }
  return {{"kind", "constant"}};
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON (" + line_anchor(text, e.byte) +
                      "): " + e.what());
  }
  if (!doc.is_object()) fail("/", "top level must be an object");
  check_keys(doc, "", {"experiment", "grid", "physics", "time", "initial",
                       "forcing", "noise", "ensemble", "output"});

  RunConfig cfg;

  if (const json* v = find(doc, "experiment")) {
    cfg.experiment = get_string(*v, "/experiment");
    const bool known = cfg.experiment == "simulate" || cfg.experiment == "sweep" ||
                       cfg.experiment == "ensemble" || cfg.experiment == "diagnose" ||
                       cfg.experiment == "selftest";
    if (!known) fail("/experiment", "unknown experiment selector");
  }

  if (const json* g = find(doc, "grid")) {
    if (!g->is_object()) fail("/grid", "expected an object");
    check_keys(*g, "/grid", {"n", "length"});
    int n = cfg.grid.n;
    double length = cfg.grid.length;
    if (const json* v = find(*g, "n")) n = get_int(*v, "/grid/n");
    if (const json* v = find(*g, "length")) length = get_double(*v, "/grid/length");
    if (n % 2 != 0 || n < 8) fail("/grid/n", "grid size must be even and >= 8");
    if (!(length > 0.0)) fail("/grid/length", "grid length must be > 0");
    cfg.grid = TorusGrid(length, n);
  }

  if (const json* p = find(doc, "physics")) {
    if (!p->is_object()) fail("/physics", "expected an object");
    check_keys(*p, "/physics", {"alpha", "alpha_list", "nu"});
    if (const json* v = find(*p, "alpha")) {
      cfg.alpha = get_double(*v, "/physics/alpha");
      if (!(cfg.alpha >= 0.0)) fail("/physics/alpha", "alpha must be >= 0");
    }
    if (const json* v = find(*p, "alpha_list")) {
      cfg.alpha_list = get_double_array(*v, "/physics/alpha_list");
      for (size_t i = 0; i < cfg.alpha_list.size(); ++i) {
        if (!(cfg.alpha_list[i] >= 0.0)) {
          fail("/physics/alpha_list/" + std::to_string(i), "alpha must be >= 0");
        }
      }
    }
    if (const json* v = find(*p, "nu")) {
      cfg.nu = get_double(*v, "/physics/nu");
    }
  }
  if (!(cfg.nu > 0.0)) fail("/physics/nu", "viscosity must be strictly positive");

  if (const json* t = find(doc, "time")) {
    if (!t->is_object()) fail("/time", "expected an object");
    check_keys(*t, "/time", {"T", "dt"});
    if (const json* v = find(*t, "T")) cfg.T = get_double(*v, "/time/T");
    if (const json* v = find(*t, "dt")) cfg.dt = get_double(*v, "/time/dt");
    if (!(cfg.T >= 0.0)) fail("/time/T", "horizon must be >= 0");
    if (!(cfg.dt > 0.0)) fail("/time/dt", "time step must be > 0");
    try {
      step_count(cfg.T, cfg.dt);
    } catch (const InvalidArgument& e) {
      fail("/time/dt", e.what());
    }
  }

  if (const json* ic = find(doc, "initial")) {
    if (!ic->is_object()) fail("/initial", "expected an object");
    check_keys(*ic, "/initial", {"kind", "amplitude", "modes"});
    const json* kind = find(*ic, "kind");
    if (!kind) fail("/initial", "missing key kind");
    const std::string k = get_string(*kind, "/initial/kind");
    if (k == "rest") {
      if (ic->size() != 1) fail("/initial", "rest takes no other keys");
      cfg.initial.kind = InitialCondition::Kind::kRest;
    } else if (k == "taylor_green") {
      check_keys(*ic, "/initial", {"kind", "amplitude"});
      cfg.initial.kind = InitialCondition::Kind::kTaylorGreen;
      if (const json* v = find(*ic, "amplitude")) {
        cfg.initial.amplitude = get_double(*v, "/initial/amplitude");
      }
      if (!std::isfinite(cfg.initial.amplitude)) {
        fail("/initial/amplitude", "expected a finite number");
      }
      if (std::abs(cfg.grid.length - 2.0 * std::numbers::pi) > 1e-12) {
        fail("/initial/kind", "taylor_green requires the 2*pi box");
      }
    } else if (k == "modes") {
      check_keys(*ic, "/initial", {"kind", "modes"});
      cfg.initial.kind = InitialCondition::Kind::kModes;
      const json* modes = find(*ic, "modes");
      if (!modes || !modes->is_array() || modes->empty()) {
        fail("/initial/modes", "expected a nonempty array of modes");
      }
      for (size_t i = 0; i < modes->size(); ++i) {
        const std::string where = "/initial/modes/" + std::to_string(i);
        const ForcingMode m = get_mode((*modes)[i], where);
        try {
          validate_mode(m, cfg.grid);
        } catch (const InvalidArgument& e) {
          fail(where, e.what());
        }
        cfg.initial.modes.push_back(m);
      }
    } else {
      fail("/initial/kind", "unknown kind (want rest, taylor_green, or modes)");
    }
  }

  if (const json* f = find(doc, "forcing")) {
    if (!f->is_array()) fail("/forcing", "expected an array");
    for (size_t i = 0; i < f->size(); ++i) {
      const std::string where = "/forcing/" + std::to_string(i);
      const json& e = (*f)[i];
      if (!e.is_object()) fail(where, "expected an object");
      ForcingEntry entry;
      entry.mode = get_mode(e, where, {"j", "amp", "modulation"});
      if (const json* m = find(e, "modulation")) {
        entry.mod = get_modulation(*m, where + "/modulation");
      }
      cfg.forcing.entries.push_back(entry);
    }
    try {
      validate_forcing(cfg.forcing, cfg.grid);
    } catch (const InvalidArgument& e) {
      fail("/forcing", e.what());
    }
  }

  if (const json* g = find(doc, "noise")) {
    if (!g->is_array()) fail("/noise", "expected an array");
    for (size_t i = 0; i < g->size(); ++i) {
      const std::string where = "/noise/" + std::to_string(i);
      const json& e = (*g)[i];
      if (!e.is_object()) fail(where, "expected an object");
      check_keys(e, where, {"modes", "modulation"});
      NoiseComponent comp;
      const json* modes = find(e, "modes");
      if (!modes || !modes->is_array() || modes->empty()) {
        fail(where + "/modes", "expected a nonempty array of modes");
      }
      for (size_t m = 0; m < modes->size(); ++m) {
        comp.modes.push_back(get_mode((*modes)[m], where + "/modes/" + std::to_string(m)));
      }
      if (const json* m = find(e, "modulation")) {
        comp.mod = get_modulation(*m, where + "/modulation");
      }
      cfg.noise.components.push_back(comp);
    }
    try {
      validate_noise(cfg.noise, cfg.grid);
    } catch (const InvalidArgument& e) {
      fail("/noise", e.what());
    }
  }

  if (const json* e = find(doc, "ensemble")) {
    if (!e->is_object()) fail("/ensemble", "expected an object");
    check_keys(*e, "/ensemble", {"paths", "seed", "epsilons", "deltas"});
    if (const json* v = find(*e, "paths")) {
      cfg.paths = get_int(*v, "/ensemble/paths");
      if (cfg.paths < 1) fail("/ensemble/paths", "path count must be >= 1");
    }
    if (const json* v = find(*e, "seed")) cfg.seed = get_u64(*v, "/ensemble/seed");
    if (const json* v = find(*e, "epsilons")) {
      cfg.epsilons = get_double_array(*v, "/ensemble/epsilons");
      for (size_t i = 0; i < cfg.epsilons.size(); ++i) {
        if (!(cfg.epsilons[i] > 0.0)) {
          fail("/ensemble/epsilons/" + std::to_string(i), "threshold must be > 0");
        }
      }
    }
    if (const json* v = find(*e, "deltas")) {
      cfg.deltas = get_double_array(*v, "/ensemble/deltas");
      for (size_t i = 0; i < cfg.deltas.size(); ++i) {
        const double d = cfg.deltas[i];
        const long m = std::llround(d / cfg.dt);
        if (!(d > 0.0) || m < 1 ||
            std::abs(m * cfg.dt - d) > 1e-12 * std::max(1.0, d) ||
            m * cfg.dt > cfg.T + 1e-12 * std::max(1.0, cfg.T)) {
          fail("/ensemble/deltas/" + std::to_string(i),
               "lag must be a multiple of dt inside (0, T]");
        }
      }
    }
  }

  if (const json* o = find(doc, "output")) {
    if (!o->is_object()) fail("/output", "expected an object");
    check_keys(*o, "/output", {"directory", "snapshot_stride"});
    if (const json* v = find(*o, "directory")) {
      cfg.output.directory = get_string(*v, "/output/directory");
      if (cfg.output.directory.empty()) {
        fail("/output/directory", "directory must not be empty");
      }
    }
    if (const json* v = find(*o, "snapshot_stride")) {
      cfg.output.snapshot_stride = get_int(*v, "/output/snapshot_stride");
      if (cfg.output.snapshot_stride < 0) {
        fail("/output/snapshot_stride", "stride must be >= 0");
      }
    }
  }

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file: " + path);
  return parse_config(buf.str());
}

namespace {

json canonical_json(const RunConfig& cfg) {
  json doc;
  doc["experiment"] = cfg.experiment;
  doc["grid"] = {{"n", cfg.grid.n}, {"length", cfg.grid.length}};
  doc["physics"] = {{"alpha", cfg.alpha},
                    {"alpha_list", cfg.alpha_list},
                    {"nu", cfg.nu}};
  doc["time"] = {{"T", cfg.T}, {"dt", cfg.dt}};

  json initial;
  switch (cfg.initial.kind) {
    case InitialCondition::Kind::kRest:
      initial = {{"kind", "rest"}};
      break;
    case InitialCondition::Kind::kTaylorGreen:
      initial = {{"kind", "taylor_green"}, {"amplitude", cfg.initial.amplitude}};
      break;
    case InitialCondition::Kind::kModes: {
      json modes = json::array();
      for (const ForcingMode& m : cfg.initial.modes) modes.push_back(mode_json(m));
      initial = {{"kind", "modes"}, {"modes", modes}};
      break;
    }
  }
  doc["initial"] = initial;

  json forcing = json::array();
  for (const ForcingEntry& e : cfg.forcing.entries) {
    json entry = mode_json(e.mode);
    entry["modulation"] = modulation_json(e.mod);
    forcing.push_back(entry);
  }
  doc["forcing"] = forcing;

  json noise = json::array();
  for (const NoiseComponent& c : cfg.noise.components) {
    json modes = json::array();
    for (const ForcingMode& m : c.modes) modes.push_back(mode_json(m));
    noise.push_back({{"modes", modes}, {"modulation", modulation_json(c.mod)}});
  }
  doc["noise"] = noise;

  doc["ensemble"] = {{"paths", cfg.paths},
                     {"seed", cfg.seed},
                     {"epsilons", cfg.epsilons},
                     {"deltas", cfg.deltas}};
  doc["output"] = {{"directory", cfg.output.directory},
                   {"snapshot_stride", cfg.output.snapshot_stride}};
  return doc;
}

}  // namespace

std::string canonical_config(const RunConfig& cfg) {
  return canonical_json(cfg).dump(2) + "\n";
}

uint64_t config_hash(const RunConfig& cfg) {
  // The hash identifies the experiment, so the output block (where the
  // files land, how often fields are dumped) does not contribute: reruns
  // into different directories stamp identical provenance.
  json doc = canonical_json(cfg);
  doc.erase("output");
  const std::string s = doc.dump(2);
  uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

SpectralVectorField initial_field(const InitialCondition& ic, const TorusGrid& g) {
  switch (ic.kind) {
    case InitialCondition::Kind::kRest: {
      SpectralVectorField u(g);
      u.set_divergence_free(true);
      return u;
    }
    case InitialCondition::Kind::kTaylorGreen:
      return taylor_green(g, ic.amplitude);
    case InitialCondition::Kind::kModes: {
      ForcingSpec f;
      for (const ForcingMode& m : ic.modes) f.entries.push_back({m, Modulation::constant()});
      validate_forcing(f, g);
      return eval_forcing(f, g, 0.0, 1.0);
    }
  }
  throw InvalidArgument("unreachable initial condition kind");
}

ModelParams model_params(const RunConfig& cfg) {
  ModelParams p;
  p.grid = cfg.grid;
  p.alpha = cfg.alpha;
  p.nu = cfg.nu;
  p.T = cfg.T;
  p.dt = cfg.dt;
  p.forcing = cfg.forcing;
  p.noise = cfg.noise;
  p.u0 = initial_field(cfg.initial, cfg.grid);
  return p;
}

std::vector<double> default_alpha_ladder() {
  std::vector<double> a;
  for (int k = 1; k <= 8; ++k) a.push_back(std::ldexp(1.0, -k));
  a.push_back(0.0);
  return a;
}

SweepConfig sweep_config(const RunConfig& cfg) {
  SweepConfig s;
  s.base = model_params(cfg);
  s.base.alpha = 0.0;
  s.alphas = cfg.alpha_list.empty() ? default_alpha_ladder() : cfg.alpha_list;
  s.paths = cfg.paths;
  s.seed = cfg.seed;
  s.epsilons = cfg.epsilons;
  s.deltas = cfg.deltas;
  return s;
}

}  // namespace sgf
