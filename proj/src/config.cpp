#include "lagbound/config.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lagbound/errors.hpp"
#include "lagbound/lemma_suite.hpp"

namespace lagbound {

using nlohmann::json;

BaseCurve base_of(const PatchSpec& spec) {
  const double L = spec.length > 0 ? spec.length : 2 * std::numbers::pi;
  switch (spec.kind) {
    case PatchKind::flat_cylinder: return flat_cylinder_base(L);
    case PatchKind::plane_circle: return plane_circle_base(spec.radius);
    case PatchKind::sphere_equator: return sphere_equator_base();
    case PatchKind::hyperbolic_band: return hyperbolic_band_base(L);
    default: throw InvalidInput("custom patches cannot be built from a spec");
  }
}

PatchPtr build_patch(const PatchSpec& spec, GridResolution grid) { return solve_warp(base_of(spec), spec.halfwidth, grid); }

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.patches["cylinder"] = {PatchKind::flat_cylinder, 0.0, 2.0, 1.0};
  c.patches["plane"] = {PatchKind::plane_circle, 0.0, 2.0, 1.0};
  c.patches["sphere"] = {PatchKind::sphere_equator, 0.0, 2.0, 1.0};
  c.patches["hyperbolic"] = {PatchKind::hyperbolic_band, 0.0, 2.0, 1.0};
  for (const auto& n : lemma_names()) c.lemmas[n] = {};
  return c;
}

GridResolution parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw ConfigError("grid '" + s + "' is not of the form <n_s>x<n_t>");
  try {
    size_t p1 = 0, p2 = 0;
    const int ns = std::stoi(s.substr(0, x), &p1);
    const int nt = std::stoi(s.substr(x + 1), &p2);
    if (p1 != x || p2 != s.size() - x - 1) throw std::invalid_argument("trailing");
    if (ns < 16 || nt < 5 || nt % 2 == 0) throw ConfigError("grid '" + s + "' needs n_s >= 16 and odd n_t >= 5");
    return {ns, nt};
  } catch (const std::invalid_argument&) {
    throw ConfigError("grid '" + s + "' is not of the form <n_s>x<n_t>");
  } catch (const std::out_of_range&) {
    throw ConfigError("grid '" + s + "' is out of range");
  }
}

namespace {

struct Ctx {
  std::string origin;
  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    throw ConfigError(origin + ":" + (where.empty() ? "/" : where) + ": " + what);
  }
  void keys(const json& j, const std::string& where, const std::set<std::string>& allowed) const {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& [k, v] : j.items())
      if (!allowed.count(k)) fail(where + "/" + k, "unknown key");
  }
  double number(const json& j, const std::string& where) const {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
  }
  double positive(const json& j, const std::string& where) const {
    const double v = number(j, where);
    if (!(v > 0)) fail(where, "must be positive");
    return v;
  }
  int integer(const json& j, const std::string& where) const {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<int>();
  }
  std::string string(const json& j, const std::string& where) const {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
  }
  std::vector<double> numbers(const json& j, const std::string& where) const {
    if (!j.is_array()) fail(where, "expected an array");
    std::vector<double> v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], where + "/" + std::to_string(i)));
    return v;
  }
};

PatchSpec parse_patch(const Ctx& c, const json& j, const std::string& where) {
  c.keys(j, where, {"kind", "length", "radius", "halfwidth"});
  PatchSpec p;
  if (!j.contains("kind")) c.fail(where, "missing 'kind'");
  try {
    p.kind = patch_kind_from_string(c.string(j["kind"], where + "/kind"));
  } catch (const InvalidInput& e) {
    c.fail(where + "/kind", e.what());
  }
  if (p.kind == PatchKind::custom) c.fail(where + "/kind", "custom patches need code, not configuration");
  if (j.contains("length")) p.length = c.positive(j["length"], where + "/length");
  if (j.contains("radius")) p.radius = c.positive(j["radius"], where + "/radius");
  if (j.contains("halfwidth")) p.halfwidth = c.positive(j["halfwidth"], where + "/halfwidth");
  return p;
}

FamilySpec parse_family(const Ctx& c, const json& j, const std::string& where) {
  c.keys(j, where, {"family", "amplitude", "modes", "s_values", "alpha", "levels", "samples", "halfwidth"});
  FamilySpec f;
  if (!j.contains("family")) c.fail(where, "missing 'family'");
  try {
    f.id = family_id_from_string(c.string(j["family"], where + "/family"));
  } catch (const InvalidInput& e) {
    c.fail(where + "/family", e.what());
  }
  if (j.contains("amplitude")) f.amplitude = c.number(j["amplitude"], where + "/amplitude");
  if (j.contains("modes")) {
    const json& m = j["modes"];
    if (!m.is_array() || m.size() != 2) c.fail(where + "/modes", "expected [min, max]");
    f.mode_min = c.integer(m[0], where + "/modes/0");
    f.mode_max = c.integer(m[1], where + "/modes/1");
  }
  if (j.contains("s_values")) f.s_values = c.numbers(j["s_values"], where + "/s_values");
  if (j.contains("alpha")) f.alpha = c.number(j["alpha"], where + "/alpha");
  if (j.contains("levels")) f.levels = c.numbers(j["levels"], where + "/levels");
  if (j.contains("samples")) f.samples = c.integer(j["samples"], where + "/samples");
  if (j.contains("halfwidth")) f.halfwidth = c.number(j["halfwidth"], where + "/halfwidth");
  try {
    validate(f);
  } catch (const ParamOutOfRange& e) {
    c.fail(where, e.what());
  }
  return f;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  const Ctx c{origin};
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
  c.keys(j, "", {"seed", "out", "grid", "tol", "patches", "families", "lemmas"});
  ExperimentConfig cfg = default_config();
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) c.fail("/seed", "expected a nonnegative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out")) cfg.out_dir = c.string(j["out"], "/out");
  if (j.contains("grid")) {
    try {
      cfg.grid = parse_grid(c.string(j["grid"], "/grid"));
    } catch (const ConfigError& e) {
      c.fail("/grid", e.what());
    }
  }
  if (j.contains("tol")) {
    const double t = c.number(j["tol"], "/tol");
    if (!(t >= 0)) c.fail("/tol", "must be nonnegative");
    cfg.tol_override = t;
  }
  if (j.contains("patches")) {
    if (!j["patches"].is_object()) c.fail("/patches", "expected an object");
    for (const auto& [name, v] : j["patches"].items()) cfg.patches[name] = parse_patch(c, v, "/patches/" + name);
  }
  if (j.contains("families")) {
    const json& fs = j["families"];
    if (!fs.is_array()) c.fail("/families", "expected an array");
    for (size_t i = 0; i < fs.size(); ++i) cfg.families.push_back(parse_family(c, fs[i], "/families/" + std::to_string(i)));
  }
  if (j.contains("lemmas")) {
    const json& ls = j["lemmas"];
    if (!ls.is_object()) c.fail("/lemmas", "expected an object");
    auto toggle = [&](const json& v, const std::string& where, LemmaToggle t) {
      c.keys(v, where, {"enabled", "tol"});
      if (v.contains("enabled")) {
        if (!v["enabled"].is_boolean()) c.fail(where + "/enabled", "expected a boolean");
        t.enabled = v["enabled"].get<bool>();
      }
      if (v.contains("tol")) {
        const double tol = c.number(v["tol"], where + "/tol");
        if (!(tol >= 0)) c.fail(where + "/tol", "must be nonnegative");
        t.tol = tol;
      }
      return t;
    };
    if (ls.contains("default")) {
      const LemmaToggle d = toggle(ls["default"], "/lemmas/default", {});
      for (auto& [n, t] : cfg.lemmas) t = d;
    }
    for (const auto& [name, v] : ls.items()) {
      if (name == "default") continue;
      if (!cfg.lemmas.count(name)) c.fail("/lemmas/" + name, "unknown lemma check");
      cfg.lemmas[name] = toggle(v, "/lemmas/" + name, cfg.lemmas[name]);
    }
  }
  const std::pair<const char*, PatchKind> fixed[] = {{"cylinder", PatchKind::flat_cylinder},
                                                     {"plane", PatchKind::plane_circle},
                                                     {"sphere", PatchKind::sphere_equator},
                                                     {"hyperbolic", PatchKind::hyperbolic_band}};
  for (const auto& [name, kind] : fixed)
    if (cfg.patches[name].kind != kind) c.fail(std::string("/patches/") + name + "/kind", "must be " + to_string(kind));
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace lagbound
