#pragma once

// Batch front end: JSON experiment specs in, CSV/JSON results plus a run
// manifest out. Exit codes: 0 success, 2 invalid input, 3 computation error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <boost/version.hpp>
#include <json.hpp>

#include "alr/dichotomy.hpp"
#include "alr/error.hpp"
#include "alr/fields.hpp"
#include "alr/np_spectrum.hpp"
#include "alr/parallel.hpp"
#include "alr/resonance.hpp"
#include "alr/scatter.hpp"
#include "alr/sweep.hpp"

namespace alr::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* tool_version = "1.0.0";

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_computation = 3;

/// Spec validation failure; `path` locates the offending field.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"solve",     "energy-curve", "find-resonance", "sweep-condition",
                                          "dichotomy", "np-spectrum",  "np-crosscheck"};
  return c;
}

inline bool is_command(const std::string& s) {
  for (const auto& c : commands())
    if (c == s) return true;
  return false;
}

/// Module whose operation raised the error, for the error record.
inline const char* module_of(ErrorKind kind, const std::string& command) {
  switch (kind) {
    case ErrorKind::hankel_singular:
    case ErrorKind::branch_violation:
    case ErrorKind::non_finite_argument: return "specfun";
    case ErrorKind::exact_modal_resonance: return "scatter_core";
    case ErrorKind::outside_representation:
    case ErrorKind::quadrature_failure: return "fields_energy";
    case ErrorKind::below_asymptotic_regime:
    case ErrorKind::no_root_found:
    case ErrorKind::unphysical_root:
    case ErrorKind::no_core: return "resonance_search";
    case ErrorKind::assumption_violated:
    case ErrorKind::formulation_mismatch: return "np_spectrum";
    case ErrorKind::invalid_argument: break;
  }
  if (command == "solve") return "scatter_core";
  if (command == "np-spectrum" || command == "np-crosscheck") return "np_spectrum";
  return "resonance_search";
}

// ---------------------------------------------------------------------------
// Validation. Each reader checks one field and writes its normalized value
// into `out`, so a normalized spec re-validates to itself.

namespace detail {

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "must be an object");
}

inline void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ValidationError(join(path, it.key()), "unknown field");
  }
}

inline double number(const json& obj, const std::string& key, const std::string& path, std::optional<double> def = {}) {
  const json* v = find(obj, key);
  if (!v) {
    if (def) return *def;
    throw ValidationError(join(path, key), "required");
  }
  if (!v->is_number()) throw ValidationError(join(path, key), "must be a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) throw ValidationError(join(path, key), "must be finite");
  return x;
}

inline int integer(const json& obj, const std::string& key, const std::string& path, std::optional<int> def = {}) {
  const json* v = find(obj, key);
  if (!v) {
    if (def) return *def;
    throw ValidationError(join(path, key), "required");
  }
  if (!v->is_number_integer()) throw ValidationError(join(path, key), "must be an integer");
  return v->get<int>();
}

inline bool boolean(const json& obj, const std::string& key, const std::string& path, bool def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_boolean()) throw ValidationError(join(path, key), "must be a boolean");
  return v->get<bool>();
}

inline std::string choice(const json& obj, const std::string& key, const std::string& path,
                          const std::vector<std::string>& allowed, std::optional<std::string> def = {}) {
  const json* v = find(obj, key);
  if (!v) {
    if (def) return *def;
    throw ValidationError(join(path, key), "required");
  }
  if (!v->is_string()) throw ValidationError(join(path, key), "must be a string");
  const auto s = v->get<std::string>();
  for (const auto& a : allowed)
    if (a == s) return s;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  throw ValidationError(join(path, key), "must be one of: " + list);
}

inline void check(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ValidationError(path, what);
}

inline cdouble complex_value(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  require_object(v, path);
  reject_unknown(v, path, {"re", "im"});
  return {number(v, "re", path, 0.0), number(v, "im", path, 0.0)};
}

inline json complex_json(cdouble z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json validate_config(const json& spec, const std::string& path) {
  const json* c = find(spec, "config");
  if (!c) throw ValidationError(path, "required");
  require_object(*c, path);
  reject_unknown(*c, path, {"dim", "r_i", "r_e", "eps_c", "eps_s", "delta", "k"});
  json out;
  out["dim"] = integer(*c, "dim", path, 3);
  check(out["dim"] == 2 || out["dim"] == 3, join(path, "dim"), "must be 2 or 3");
  out["r_i"] = number(*c, "r_i", path, 0.0);
  out["r_e"] = number(*c, "r_e", path, 1.0);
  out["eps_c"] = number(*c, "eps_c", path, 1.0);
  out["eps_s"] = number(*c, "eps_s", path);
  out["delta"] = number(*c, "delta", path, 0.0);
  out["k"] = number(*c, "k", path, 1.0);
  check(out["r_i"].get<double>() >= 0.0, join(path, "r_i"), "must be non-negative");
  check(out["r_e"].get<double>() > out["r_i"].get<double>(), join(path, "r_e"), "must exceed r_i");
  check(out["k"].get<double>() > 0.0, join(path, "k"), "must be positive");
  check(out["delta"].get<double>() >= 0.0, join(path, "delta"), "must be non-negative");
  check(out["r_i"].get<double>() == 0.0 || out["eps_c"].get<double>() > 0.0, join(path, "eps_c"),
        "must be positive when a core is present");
  return out;
}

inline PlasmonConfig to_config(const json& c) {
  PlasmonConfig p;
  p.dim = c["dim"];
  p.r_i = c["r_i"];
  p.r_e = c["r_e"];
  p.eps_c = c["eps_c"];
  p.eps_s = c["eps_s"];
  p.delta = c["delta"];
  p.k = c["k"];
  return p;
}

inline json validate_source(const json& spec, const std::string& path, const json& config) {
  const json* s = find(spec, "source");
  if (!s) throw ValidationError(path, "required");
  require_object(*s, path);
  const auto type = choice(*s, "type", path, {"point", "coefficients"});
  const double r_e = config["r_e"];
  const int dim = config["dim"];
  json out;
  out["type"] = type;
  if (type == "point") {
    reject_unknown(*s, path, {"type", "radius", "strength", "n_max", "n_min"});
    out["radius"] = number(*s, "radius", path);
    check(out["radius"].get<double>() > r_e, join(path, "radius"), "must exceed r_e");
    const json* st = find(*s, "strength");
    out["strength"] = complex_json(st ? complex_value(*st, join(path, "strength")) : cdouble(1.0));
    out["n_max"] = integer(*s, "n_max", path, 40);
    out["n_min"] = integer(*s, "n_min", path, 0);
    check(out["n_max"].get<int>() >= 1, join(path, "n_max"), "must be at least 1");
    check(out["n_min"].get<int>() >= 0 && out["n_min"].get<int>() <= out["n_max"].get<int>(), join(path, "n_min"),
          "must lie in [0, n_max]");
  } else {
    reject_unknown(*s, path, {"type", "support_radius", "beta"});
    out["support_radius"] = number(*s, "support_radius", path);
    check(out["support_radius"].get<double>() > r_e, join(path, "support_radius"), "must exceed r_e");
    const json* b = find(*s, "beta");
    check(b && b->is_array() && !b->empty(), join(path, "beta"), "must be a nonempty array");
    json list = json::array();
    std::map<int, bool> seen;
    for (std::size_t i = 0; i < b->size(); ++i) {
      const auto p = join(path, "beta[" + std::to_string(i) + "]");
      const json& e = (*b)[i];
      require_object(e, p);
      reject_unknown(e, p, {"n", "re", "im"});
      const int n = integer(e, "n", p);
      check(dim == 2 || n >= 0, join(p, "n"), "must be non-negative in 3D");
      check(!seen[n], join(p, "n"), "duplicate index");
      seen[n] = true;
      list.push_back(json{{"n", n}, {"re", number(e, "re", p, 0.0)}, {"im", number(e, "im", p, 0.0)}});
    }
    out["beta"] = list;
  }
  return out;
}

inline SourceCoefficients to_source(const json& s, const PlasmonConfig& cfg) {
  if (s["type"] == "point") {
    const cdouble strength(s["strength"]["re"].get<double>(), s["strength"]["im"].get<double>());
    return point_source_coefficients(cfg.dim, cfg.k, s["radius"], strength, s["n_max"], s["n_min"]);
  }
  SourceCoefficients src;
  src.dim = cfg.dim;
  src.support_radius = s["support_radius"];
  for (const auto& e : s["beta"])
    src.coeffs[e["n"].get<int>()] = ScaledComplex::from_complex({e["re"].get<double>(), e["im"].get<double>()});
  return src;
}

/// Grid descriptor: explicit "values", or "spacing" (linear | log) with min, max, count.
inline json validate_grid(const json& g, const std::string& path, std::vector<std::string> params,
                          std::optional<std::string> default_param) {
  require_object(g, path);
  json out;
  if (!params.empty()) out["parameter"] = choice(g, "parameter", path, params, default_param);
  if (find(g, "values")) {
    reject_unknown(g, path, {"parameter", "values"});
    const json& v = g["values"];
    check(v.is_array() && !v.empty(), join(path, "values"), "must be a nonempty array");
    json vals = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) {
      check(v[i].is_number() && std::isfinite(v[i].get<double>()), join(path, "values"), "entries must be numbers");
      check(i == 0 || v[i].get<double>() > v[i - 1].get<double>(), join(path, "values"), "must be strictly increasing");
      vals.push_back(v[i].get<double>());
    }
    out["values"] = vals;
    return out;
  }
  reject_unknown(g, path, {"parameter", "spacing", "min", "max", "count"});
  out["spacing"] = choice(g, "spacing", path, {"linear", "log"}, "linear");
  out["min"] = number(g, "min", path);
  out["max"] = number(g, "max", path);
  out["count"] = integer(g, "count", path);
  const double lo = out["min"], hi = out["max"];
  const int n = out["count"];
  check(n >= 1, join(path, "count"), "must be at least 1");
  check(n == 1 ? hi >= lo : hi > lo, join(path, "max"), "must exceed min");
  check(out["spacing"] == "linear" || lo > 0.0, join(path, "min"), "must be positive for log spacing");
  return out;
}

inline std::vector<double> expand_grid(const json& g) {
  if (g.contains("values")) return g["values"].get<std::vector<double>>();
  const double lo = g["min"], hi = g["max"];
  const int n = g["count"];
  if (n == 1) return {lo};
  return g["spacing"] == "log" ? log_grid(lo, hi, n) : linear_grid(lo, hi, n);
}

inline json validate_points(const json& spec, const std::string& path, int dim) {
  const json& p = spec[path];
  check(p.is_array() && !p.empty(), path, "must be a nonempty array of coordinate arrays");
  json out = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto q = path + "[" + std::to_string(i) + "]";
    check(p[i].is_array() && (p[i].size() == 3 || (dim == 2 && p[i].size() == 2)), q,
          dim == 3 ? "must have 3 coordinates" : "must have 2 or 3 coordinates");
    json pt = json::array();
    for (const auto& x : p[i]) {
      check(x.is_number() && std::isfinite(x.get<double>()), q, "coordinates must be numbers");
      pt.push_back(x.get<double>());
    }
    if (pt.size() == 2) pt.push_back(0.0);
    out.push_back(pt);
  }
  return out;
}

/// Deterministic sample points: radii times directions spread over the sphere/circle.
inline json default_points(int dim, const std::vector<double>& radii, int per_radius) {
  json out = json::array();
  const double pi = num::pi<double>();
  for (double r : radii)
    for (int i = 0; i < per_radius; ++i) {
      if (dim == 3) {
        const double c = 1.0 - 2.0 * (i + 0.5) / per_radius;
        const double s = std::sqrt(1.0 - c * c), ph = 2.399963229728653 * i;
        out.push_back(json::array({r * s * std::cos(ph), r * s * std::sin(ph), r * c}));
      } else {
        const double th = 2.0 * pi * (i + 0.25) / per_radius;
        out.push_back(json::array({r * std::cos(th), r * std::sin(th), 0.0}));
      }
    }
  return out;
}

}  // namespace detail

/// Validates a spec for `command` and returns its normalized form (defaults
/// filled in). Throws ValidationError.
inline json validate_spec(const std::string& command, const json& spec) {
  using namespace detail;
  if (!is_command(command)) throw ValidationError("command", "unknown command \"" + command + "\"");
  require_object(spec, "");
  json out;
  if (const json* c = find(spec, "command")) {
    check(c->is_string() && c->get<std::string>() == command, "command", "does not match the requested command");
  }
  out["command"] = command;

  if (command == "solve") {
    reject_unknown(spec, "", {"command", "config", "source", "points", "crosscheck", "output"});
    out["config"] = validate_config(spec, "config");
    out["source"] = validate_source(spec, "source", out["config"]);
    const int dim = out["config"]["dim"];
    const double r_e = out["config"]["r_e"];
    out["points"] = find(spec, "points") ? validate_points(spec, "points", dim)
                                         : default_points(dim, {0.25 * r_e, 0.5 * r_e, 0.9 * r_e, 1.1 * r_e}, 4);
    out["crosscheck"] = boolean(spec, "crosscheck", "", true);
  } else if (command == "energy-curve") {
    reject_unknown(spec, "", {"command", "config", "source", "grid", "crosscheck", "output"});
    out["config"] = validate_config(spec, "config");
    out["source"] = validate_source(spec, "source", out["config"]);
    check(find(spec, "grid") != nullptr, "grid", "required");
    out["grid"] = validate_grid(spec["grid"], "grid", {"k", "delta"}, "delta");
    out["crosscheck"] = boolean(spec, "crosscheck", "", false);
  } else if (command == "find-resonance") {
    reject_unknown(spec, "", {"command", "dim", "k", "r_e", "n0", "n0_list", "initial", "max_iter", "tolerance",
                              "output"});
    out["dim"] = integer(spec, "dim", "", 3);
    check(out["dim"] == 2 || out["dim"] == 3, "dim", "must be 2 or 3");
    out["k"] = number(spec, "k", "", 1.0);
    out["r_e"] = number(spec, "r_e", "", 1.0);
    check(out["k"].get<double>() > 0.0, "k", "must be positive");
    check(out["r_e"].get<double>() > 0.0, "r_e", "must be positive");
    json list = json::array();
    if (find(spec, "n0_list")) {
      check(!find(spec, "n0"), "n0", "give either n0 or n0_list");
      const json& l = spec["n0_list"];
      check(l.is_array() && !l.empty(), "n0_list", "must be a nonempty array");
      for (const auto& n : l) {
        check(n.is_number_integer() && n.get<int>() >= 0, "n0_list", "entries must be non-negative integers");
        list.push_back(n.get<int>());
      }
    } else {
      const int n0 = integer(spec, "n0", "");
      check(n0 >= 0, "n0", "must be non-negative");
      list.push_back(n0);
    }
    out["n0_list"] = list;
    if (const json* init = find(spec, "initial")) {
      require_object(*init, "initial");
      reject_unknown(*init, "initial", {"eps_s", "delta"});
      check(list.size() == 1, "initial", "only allowed with a single n0");
      out["initial"] = json{{"eps_s", number(*init, "eps_s", "initial")}, {"delta", number(*init, "delta", "initial")}};
    }
    out["max_iter"] = integer(spec, "max_iter", "", 200);
    out["tolerance"] = number(spec, "tolerance", "", 1e-10);
    check(out["max_iter"].get<int>() >= 1, "max_iter", "must be positive");
    check(out["tolerance"].get<double>() > 0.0, "tolerance", "must be positive");
  } else if (command == "sweep-condition") {
    reject_unknown(spec, "", {"command", "condition", "n0", "config", "grid", "extended_precision", "noise_floor",
                              "near_zero", "refine", "output"});
    out["condition"] = choice(spec, "condition", "", {"nocore", "coreshell", "denominator"});
    out["n0"] = integer(spec, "n0", "");
    const int n0 = out["n0"];
    check(out["condition"] == "denominator" ? n0 >= 0 : n0 >= asymptotic_threshold, "n0",
          out["condition"] == "denominator" ? "must be non-negative" : "must be at least 20 (asymptotic regime)");
    out["config"] = validate_config(spec, "config");
    check(out["condition"] != "coreshell" || out["config"]["r_i"].get<double>() > 0.0, "config.r_i",
          "coreshell condition needs a core");
    check(find(spec, "grid") != nullptr, "grid", "required");
    out["grid"] = validate_grid(spec["grid"], "grid", {"k", "delta"}, "k");
    out["extended_precision"] = boolean(spec, "extended_precision", "", false);
    if (find(spec, "noise_floor")) {
      out["noise_floor"] = number(spec, "noise_floor", "");
      check(out["noise_floor"].get<double>() >= 0.0, "noise_floor", "must be non-negative");
    }
    out["near_zero"] = number(spec, "near_zero", "", 1e-3);
    out["refine"] = boolean(spec, "refine", "", true);
  } else if (command == "dichotomy") {
    reject_unknown(spec, "", {"command", "dim", "r_i", "r_e", "n0_list", "inside_radius", "outside_radius", "k",
                              "k_grid", "n_min", "window", "probe_factor", "near_probe_factor", "probe_samples",
                              "crosscheck", "output"});
    DichotomyRequest d;
    out["dim"] = integer(spec, "dim", "", d.dim);
    check(out["dim"] == 2 || out["dim"] == 3, "dim", "must be 2 or 3");
    out["r_i"] = number(spec, "r_i", "", d.r_i);
    out["r_e"] = number(spec, "r_e", "", d.r_e);
    const double ri = out["r_i"], re = out["r_e"];
    check(ri > 0.0 && re > ri, "r_i", "need 0 < r_i < r_e");
    json list = json::array();
    const json* l = find(spec, "n0_list");
    if (l) {
      check(l->is_array() && !l->empty(), "n0_list", "must be a nonempty array");
      for (std::size_t i = 0; i < l->size(); ++i) {
        const json& n = (*l)[i];
        check(n.is_number_integer() && n.get<int>() >= asymptotic_threshold, "n0_list",
              "entries must be integers >= 20");
        check(i == 0 || n.get<int>() > (*l)[i - 1].get<int>(), "n0_list", "must be strictly increasing");
        list.push_back(n.get<int>());
      }
    } else {
      for (int n : d.n0_list) list.push_back(n);
    }
    out["n0_list"] = list;
    const double r_star = critical_radius(ri, re);
    out["inside_radius"] = number(spec, "inside_radius", "", d.inside_radius);
    out["outside_radius"] = number(spec, "outside_radius", "", d.outside_radius);
    check(out["inside_radius"].get<double>() > re && out["inside_radius"].get<double>() < r_star, "inside_radius",
          "must lie strictly between r_e and the critical radius");
    check(out["outside_radius"].get<double>() > r_star, "outside_radius", "must exceed the critical radius");
    if (find(spec, "k")) {
      out["k"] = number(spec, "k", "");
      check(out["k"].get<double>() > 0.0, "k", "must be positive");
    }
    if (find(spec, "k_grid")) {
      out["k_grid"] = validate_grid(spec["k_grid"], "k_grid", {}, {});
      for (double x : expand_grid(out["k_grid"])) check(x > 0.0, "k_grid", "values must be positive");
    }
    out["n_min"] = integer(spec, "n_min", "", d.n_min);
    out["window"] = integer(spec, "window", "", d.window);
    out["probe_factor"] = number(spec, "probe_factor", "", d.probe_factor);
    out["near_probe_factor"] = number(spec, "near_probe_factor", "", d.near_probe_factor);
    out["probe_samples"] = integer(spec, "probe_samples", "", d.probe_samples);
    out["crosscheck"] = boolean(spec, "crosscheck", "", d.crosscheck);
    check(out["n_min"].get<int>() >= 0, "n_min", "must be non-negative");
    check(out["window"].get<int>() >= 1, "window", "must be positive");
    check(out["probe_factor"].get<double>() * re * re / ri > re, "probe_factor", "probe must lie outside r_e");
    check(out["near_probe_factor"].get<double>() > 1.0, "near_probe_factor", "must exceed 1");
    check(out["probe_samples"].get<int>() >= 1, "probe_samples", "must be positive");
  } else if (command == "np-spectrum") {
    reject_unknown(spec, "", {"command", "k", "R", "m_max", "quadrature", "output"});
    out["k"] = number(spec, "k", "");
    out["R"] = number(spec, "R", "", 1.0);
    out["m_max"] = integer(spec, "m_max", "");
    out["quadrature"] = boolean(spec, "quadrature", "", true);
    check(out["k"].get<double>() > 0.0, "k", "must be positive");
    check(out["R"].get<double>() > 0.0, "R", "must be positive");
    check(out["m_max"].get<int>() >= 0, "m_max", "must be non-negative");
  } else if (command == "np-crosscheck") {
    reject_unknown(spec, "", {"command", "config", "source", "points", "output"});
    out["config"] = validate_config(spec, "config");
    check(out["config"]["dim"] == 3, "config.dim", "np-crosscheck is 3D only");
    check(out["config"]["r_i"].get<double>() == 0.0, "config.r_i", "np-crosscheck needs r_i = 0");
    out["source"] = validate_source(spec, "source", out["config"]);
    const double r_e = out["config"]["r_e"];
    out["points"] = find(spec, "points") ? validate_points(spec, "points", 3)
                                         : default_points(3, {0.3 * r_e, 0.7 * r_e, 1.1 * r_e, 1.2 * r_e}, 5);
  }

  json output;
  const json* o = find(spec, "output");
  if (o) {
    require_object(*o, "output");
    reject_unknown(*o, "output", {"format", "name"});
  }
  const json empty = json::object();
  output["format"] = choice(o ? *o : empty, "format", "output", {"csv", "json"}, "csv");
  std::string name = command;
  if (o && find(*o, "name")) {
    check((*o)["name"].is_string(), "output.name", "must be a string");
    name = (*o)["name"].get<std::string>();
    check(std::regex_match(name, std::regex("[A-Za-z0-9_.-]+")) && name != "manifest" && name != "error",
          "output.name", "must be a plain file stem (letters, digits, '_', '-', '.'), not manifest or error");
  }
  output["name"] = name;
  out["output"] = output;
  return out;
}

// ---------------------------------------------------------------------------
// CSV emission: 17 significant digits, fixed column contract.

class CsvWriter {
 public:
  void header(const std::vector<std::string>& cols) { line(cols); }

  void section(const std::string& name) {
    out_ << "\n# " << name << "\n";
  }

  void row(const std::vector<std::string>& cells) { line(cells); }

  static std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
  static std::string num(int x) { return std::to_string(x); }
  static std::string num(std::size_t x) { return std::to_string(x); }
  static std::string flag(bool b) { return b ? "true" : "false"; }
  static std::string text(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c == '\n' ? ' ' : c;
    }
    return q + "\"";
  }

  std::string str() const { return out_.str(); }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }
  std::ostringstream out_;
};

struct Output {
  json result;   // JSON form of the result
  std::string csv;
  bool failed = false;  // a computation error that should exit 3 after writing
  std::optional<Error> error;
};

namespace detail {

inline std::string region_name(Region r) {
  switch (r) {
    case Region::core: return "core";
    case Region::shell: return "shell";
    case Region::exterior: return "exterior";
  }
  return "unknown";
}

inline json energy_json(const EnergyReport& e) {
  return json{{"total", e.total},
              {"crosscheck_residual", e.crosscheck_residual},
              {"volume_total", e.volume_total},
              {"truncation_order", e.truncation_order},
              {"trusted", e.trusted},
              {"per_mode", e.per_mode}};
}

inline json nan_safe(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline Output run_solve(const json& spec) {
  const PlasmonConfig cfg = to_config(spec["config"]);
  const SourceCoefficients src = to_source(spec["source"], cfg);
  auto sol = solve(cfg, src);
  EnergyOptions opt;
  opt.crosscheck = spec["crosscheck"];
  auto energy = dissipation_energy(sol, opt);
  Output out;
  CsvWriter csv;
  csv.header({"x", "y", "z", "region", "u_re", "u_im", "source_re", "source_im", "error"});
  json samples = json::array();
  for (const auto& p : spec["points"]) {
    const Point pt{p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
    try {
      auto f = eval_field_full(sol, pt);
      const cdouble F = eval_source(sol, pt);
      csv.row({CsvWriter::num(pt.x), CsvWriter::num(pt.y), CsvWriter::num(pt.z), region_name(f.region),
               CsvWriter::num(f.value.real()), CsvWriter::num(f.value.imag()), CsvWriter::num(F.real()),
               CsvWriter::num(F.imag()), ""});
      samples.push_back(json{{"point", p}, {"region", region_name(f.region)}, {"u", complex_json(f.value)},
                             {"source", complex_json(F)}});
    } catch (const Error& e) {
      csv.row({CsvWriter::num(pt.x), CsvWriter::num(pt.y), CsvWriter::num(pt.z), "", "nan", "nan", "nan", "nan",
               CsvWriter::text(to_string(e.kind()))});
      samples.push_back(json{{"point", p}, {"error", to_string(e.kind())}});
    }
  }
  csv.section("energy");
  csv.header({"energy", "crosscheck_residual", "volume_total", "truncation_order", "trusted"});
  csv.row({CsvWriter::num(energy.total), CsvWriter::num(energy.crosscheck_residual),
           CsvWriter::num(energy.volume_total), CsvWriter::num(energy.truncation_order),
           CsvWriter::flag(energy.trusted)});
  out.csv = csv.str();
  json ej = energy_json(energy);
  ej["crosscheck_residual"] = nan_safe(energy.crosscheck_residual);
  out.result = json{{"samples", samples}, {"energy", ej}};
  return out;
}

inline Output run_energy_curve(const json& spec, int jobs) {
  SweepRequest req;
  req.target = SweepTarget::energy;
  req.parameter = spec["grid"]["parameter"];
  req.grid = expand_grid(spec["grid"]);
  req.config = to_config(spec["config"]);
  req.source = to_source(spec["source"], req.config);
  req.energy_crosscheck = spec["crosscheck"];
  req.jobs = jobs;
  auto curve = sweep(req);
  Output out;
  CsvWriter csv;
  csv.header({req.parameter, "energy", "error"});
  json rows = json::array();
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const bool ok = curve.ok(i);
    csv.row({CsvWriter::num(curve.grid[i]), ok ? CsvWriter::num(curve.energies[i]) : "nan",
             CsvWriter::text(curve.errors[i])});
    json r{{req.parameter, curve.grid[i]}, {"energy", ok ? json(curve.energies[i]) : json(nullptr)}};
    if (!ok) r["error"] = curve.errors[i];
    rows.push_back(r);
  }
  csv.section("argmax");
  csv.header({req.parameter, "energy"});
  json argmax = nullptr;
  if (curve.argmax) {
    csv.row({CsvWriter::num(curve.grid[*curve.argmax]), CsvWriter::num(curve.energies[*curve.argmax])});
    argmax = json{{req.parameter, curve.grid[*curve.argmax]}, {"energy", curve.energies[*curve.argmax]}};
  }
  out.csv = csv.str();
  out.result = json{{"parameter", req.parameter}, {"rows", rows}, {"argmax", argmax}};
  return out;
}

inline Output run_find_resonance(const json& spec) {
  Output out;
  CsvWriter csv;
  csv.header({"n0", "eps_s", "delta", "residual_norm", "iterations", "error"});
  json rows = json::array();
  const int dim = spec["dim"];
  const double k = spec["k"], r_e = spec["r_e"];
  RootOptions opt{spec["max_iter"].get<int>(), spec["tolerance"].get<double>()};
  for (const auto& nj : spec["n0_list"]) {
    const int n0 = nj;
    std::optional<std::pair<double, double>> init;
    if (spec.contains("initial")) init = std::make_pair(spec["initial"]["eps_s"].get<double>(),
                                                        spec["initial"]["delta"].get<double>());
    try {
      auto p = find_resonant_pair(dim, n0, k, r_e, init, opt);
      csv.row({CsvWriter::num(n0), CsvWriter::num(p.eps_s), CsvWriter::num(p.delta), CsvWriter::num(p.residual_norm),
               CsvWriter::num(p.iterations), ""});
      rows.push_back(json{{"n0", n0},
                          {"eps_s", p.eps_s},
                          {"delta", p.delta},
                          {"residual_norm", p.residual_norm},
                          {"iterations", p.iterations}});
    } catch (const Error& e) {
      csv.row({CsvWriter::num(n0), "nan", "nan", "nan", "", CsvWriter::text(to_string(e.kind()))});
      rows.push_back(json{{"n0", n0}, {"error", to_string(e.kind())}, {"message", e.what()}});
      if (!out.failed) {
        out.failed = true;
        out.error = e;
      }
    }
  }
  out.csv = csv.str();
  out.result = json{{"results", rows}};
  return out;
}

inline Output run_sweep_condition(const json& spec, int jobs) {
  SweepRequest req;
  const std::string cond = spec["condition"];
  req.target = cond == "nocore"      ? SweepTarget::condition_nocore
               : cond == "coreshell" ? SweepTarget::condition_coreshell
                                     : SweepTarget::denominator;
  req.parameter = spec["grid"]["parameter"];
  req.grid = expand_grid(spec["grid"]);
  req.config = to_config(spec["config"]);
  req.n0 = spec["n0"];
  req.extended_precision = spec["extended_precision"];
  if (spec.contains("noise_floor")) req.noise_floor = spec["noise_floor"].get<double>();
  req.near_zero = spec["near_zero"];
  req.jobs = jobs;
  auto curve = sweep(req);
  const std::string v = cond == "denominator" ? "denominator" : "lhs";
  Output out;
  CsvWriter csv;
  csv.header({req.parameter, v + "_re", v + "_im", v + "_abs", "raw_log10_abs", "error"});
  json rows = json::array();
  const double log10e = 1.0 / std::log(10.0);
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    if (curve.ok(i)) {
      const cdouble z = curve.values[i];
      csv.row({CsvWriter::num(curve.grid[i]), CsvWriter::num(z.real()), CsvWriter::num(z.imag()),
               CsvWriter::num(std::abs(z)), CsvWriter::num(curve.raw_log_magnitude[i] * log10e), ""});
      rows.push_back(json{{req.parameter, curve.grid[i]},
                          {v, complex_json(z)},
                          {"raw_log10_abs", nan_safe(curve.raw_log_magnitude[i] * log10e)}});
    } else {
      csv.row({CsvWriter::num(curve.grid[i]), "nan", "nan", "nan", "nan", CsvWriter::text(curve.errors[i])});
      rows.push_back(json{{req.parameter, curve.grid[i]}, {"error", curve.errors[i]}});
    }
  }
  csv.section("brackets");
  csv.header({"lo", "hi", "part", "root", "root_" + v + "_re", "root_" + v + "_im", "error"});
  json brackets = json::array();
  for (const auto& b : curve.brackets) {
    const std::string part = b.imaginary ? "im" : "re";
    json bj{{"lo", b.lo}, {"hi", b.hi}, {"part", part}};
    if (spec["refine"]) {
      try {
        auto r = refine_bracket(req, b);
        csv.row({CsvWriter::num(b.lo), CsvWriter::num(b.hi), part, CsvWriter::num(r.x),
                 CsvWriter::num(r.value.real()), CsvWriter::num(r.value.imag()), ""});
        bj["root"] = r.x;
        bj["root_value"] = complex_json(r.value);
      } catch (const Error& e) {
        csv.row({CsvWriter::num(b.lo), CsvWriter::num(b.hi), part, "nan", "nan", "nan",
                 CsvWriter::text(to_string(e.kind()))});
        bj["error"] = to_string(e.kind());
      }
    } else {
      csv.row({CsvWriter::num(b.lo), CsvWriter::num(b.hi), part, "", "", "", ""});
    }
    brackets.push_back(bj);
  }
  csv.section("joint_near_zeros");
  csv.header({req.parameter, v + "_abs"});
  json near = json::array();
  for (std::size_t i : curve.joint_near_zeros) {
    csv.row({CsvWriter::num(curve.grid[i]), CsvWriter::num(std::abs(curve.values[i]))});
    near.push_back(curve.grid[i]);
  }
  csv.section("argmin");
  csv.header({req.parameter, v + "_abs"});
  json argmin = nullptr;
  if (curve.argmin_abs) {
    const std::size_t i = *curve.argmin_abs;
    csv.row({CsvWriter::num(curve.grid[i]), CsvWriter::num(std::abs(curve.values[i]))});
    argmin = json{{req.parameter, curve.grid[i]}, {v + "_abs", std::abs(curve.values[i])}};
  }
  out.csv = csv.str();
  out.result = json{{"parameter", req.parameter},
                    {"normalized", cond != "denominator"},
                    {"rows", rows},
                    {"brackets", brackets},
                    {"joint_near_zeros", near},
                    {"argmin", argmin}};
  return out;
}

inline Output run_dichotomy(const json& spec, int jobs) {
  DichotomyRequest req;
  req.dim = spec["dim"];
  req.r_i = spec["r_i"];
  req.r_e = spec["r_e"];
  req.n0_list = spec["n0_list"].get<std::vector<int>>();
  req.inside_radius = spec["inside_radius"];
  req.outside_radius = spec["outside_radius"];
  if (spec.contains("k")) req.k = spec["k"].get<double>();
  if (spec.contains("k_grid")) req.k_grid = expand_grid(spec["k_grid"]);
  req.n_min = spec["n_min"];
  req.window = spec["window"];
  req.probe_factor = spec["probe_factor"];
  req.near_probe_factor = spec["near_probe_factor"];
  req.probe_samples = spec["probe_samples"];
  req.crosscheck = spec["crosscheck"];
  req.jobs = jobs;
  auto rep = dichotomy_experiment(req);
  Output out;
  CsvWriter csv;
  csv.header({"n0", "k", "condition_abs", "energy_inside", "energy_outside", "crosscheck_inside",
              "crosscheck_outside", "probe_inside", "probe_outside", "near_probe_inside"});
  json rows = json::array();
  for (const auto& r : rep.rows) {
    csv.row({CsvWriter::num(r.n0), CsvWriter::num(r.k), CsvWriter::num(r.condition_abs),
             CsvWriter::num(r.energy_inside), CsvWriter::num(r.energy_outside), CsvWriter::num(r.crosscheck_inside),
             CsvWriter::num(r.crosscheck_outside), CsvWriter::num(r.probe_inside.sup_estimate),
             CsvWriter::num(r.probe_outside.sup_estimate), CsvWriter::num(r.near_probe_inside.sup_estimate)});
    rows.push_back(json{{"n0", r.n0},
                        {"k", r.k},
                        {"condition_abs", r.condition_abs},
                        {"n_max", r.n_max},
                        {"energy_inside", r.energy_inside},
                        {"energy_outside", r.energy_outside},
                        {"crosscheck_inside", nan_safe(r.crosscheck_inside)},
                        {"crosscheck_outside", nan_safe(r.crosscheck_outside)},
                        {"probe_inside", r.probe_inside.sup_estimate},
                        {"probe_outside", r.probe_outside.sup_estimate},
                        {"near_probe_inside", r.near_probe_inside.sup_estimate}});
  }
  csv.section("summary");
  csv.header({"r_star", "inside_increasing", "outside_bounded", "probe_bounded", "near_probe_growing"});
  csv.row({CsvWriter::num(rep.r_star), CsvWriter::flag(rep.inside_increasing), CsvWriter::flag(rep.outside_bounded),
           CsvWriter::flag(rep.probe_bounded), CsvWriter::flag(rep.near_probe_growing)});
  out.csv = csv.str();
  out.result = json{{"r_star", rep.r_star},
                    {"rows", rows},
                    {"inside_increasing", rep.inside_increasing},
                    {"outside_bounded", rep.outside_bounded},
                    {"probe_bounded", rep.probe_bounded},
                    {"near_probe_growing", rep.near_probe_growing}};
  return out;
}

inline Output run_np_spectrum(const json& spec) {
  const double k = spec["k"], R = spec["R"];
  const int m_max = spec["m_max"];
  const bool quad = spec["quadrature"];
  const auto assumption = check_assumption(k, R, m_max);
  Output out;
  CsvWriter csv;
  csv.header({"m", "lambda_re", "lambda_im", "lambda_outer_re", "lambda_outer_im", "chi_re", "chi_im",
              "funk_hecke_re", "funk_hecke_im", "funk_hecke_quadrature_re", "funk_hecke_quadrature_im", "gamma_re",
              "gamma_im", "alpha_re", "alpha_im", "assumption", "error"});
  json rows = json::array();
  for (int m = 0; m <= m_max; ++m) {
    try {
      auto p = np_eigenpair(m, k, R);
      const cdouble q = quad ? funk_hecke_quadrature(m, k, R) : cdouble(NAN, NAN);
      const cdouble g = p.gamma.to_complex(), a = p.alpha.to_complex();
      csv.row({CsvWriter::num(m), CsvWriter::num(p.lambda.real()), CsvWriter::num(p.lambda.imag()),
               CsvWriter::num(p.lambda_outer.real()), CsvWriter::num(p.lambda_outer.imag()),
               CsvWriter::num(p.chi.real()), CsvWriter::num(p.chi.imag()), CsvWriter::num(p.funk_hecke.real()),
               CsvWriter::num(p.funk_hecke.imag()), CsvWriter::num(q.real()), CsvWriter::num(q.imag()),
               CsvWriter::num(g.real()), CsvWriter::num(g.imag()), CsvWriter::num(a.real()), CsvWriter::num(a.imag()),
               CsvWriter::flag(assumption.holds[m]), ""});
      json r{{"m", m},
             {"lambda", complex_json(p.lambda)},
             {"lambda_outer", complex_json(p.lambda_outer)},
             {"chi", complex_json(p.chi)},
             {"funk_hecke", complex_json(p.funk_hecke)},
             {"gamma", json{{"re", nan_safe(g.real())}, {"im", nan_safe(g.imag())}}},
             {"alpha", json{{"re", nan_safe(a.real())}, {"im", nan_safe(a.imag())}}},
             {"assumption", static_cast<bool>(assumption.holds[m])}};
      if (quad) r["funk_hecke_quadrature"] = complex_json(q);
      rows.push_back(r);
    } catch (const Error& e) {
      std::vector<std::string> cells{CsvWriter::num(m)};
      for (int i = 0; i < 14; ++i) cells.push_back("nan");
      cells.push_back(CsvWriter::flag(assumption.holds[m]));
      cells.push_back(CsvWriter::text(to_string(e.kind())));
      csv.row(cells);
      rows.push_back(json{{"m", m}, {"assumption", static_cast<bool>(assumption.holds[m])},
                          {"error", to_string(e.kind())}});
    }
  }
  out.csv = csv.str();
  out.result = json{{"k", k}, {"R", R}, {"rows", rows}};
  return out;
}

inline Output run_np_crosscheck(const json& spec) {
  const PlasmonConfig cfg = to_config(spec["config"]);
  const SourceCoefficients src = to_source(spec["source"], cfg);
  auto np = solve_nocore_via_np(cfg, src);
  auto mie = solve_nocore(cfg, src);
  Output out;
  CsvWriter csv;
  csv.header({"x", "y", "z", "u_np_re", "u_np_im", "u_series_re", "u_series_im", "rel_diff", "error"});
  json samples = json::array();
  double worst = 0.0;
  for (const auto& p : spec["points"]) {
    const Point pt{p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
    try {
      const cdouble a = eval_field(np.solution, pt), b = eval_field(mie, pt);
      const double d = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
      worst = std::max(worst, d);
      csv.row({CsvWriter::num(pt.x), CsvWriter::num(pt.y), CsvWriter::num(pt.z), CsvWriter::num(a.real()),
               CsvWriter::num(a.imag()), CsvWriter::num(b.real()), CsvWriter::num(b.imag()), CsvWriter::num(d), ""});
      samples.push_back(json{{"point", p}, {"u_np", complex_json(a)}, {"u_series", complex_json(b)}, {"rel_diff", d}});
    } catch (const Error& e) {
      csv.row({CsvWriter::num(pt.x), CsvWriter::num(pt.y), CsvWriter::num(pt.z), "nan", "nan", "nan", "nan", "nan",
               CsvWriter::text(to_string(e.kind()))});
      samples.push_back(json{{"point", p}, {"error", to_string(e.kind())}});
    }
  }
  csv.section("energy");
  csv.header({"energy_np", "energy_series", "route_residual", "max_field_rel_diff"});
  csv.row({CsvWriter::num(np.energy.total), CsvWriter::num(np.mie_energy), CsvWriter::num(np.route_residual),
           CsvWriter::num(worst)});
  csv.section("phi_hat");
  csv.header({"n", "phi_hat_re", "phi_hat_im"});
  json phi = json::array();
  for (const auto& [n, v] : np.phi_hat) {
    const cdouble z = v.to_complex();
    csv.row({CsvWriter::num(n), CsvWriter::num(z.real()), CsvWriter::num(z.imag())});
    phi.push_back(json{{"n", n}, {"re", nan_safe(z.real())}, {"im", nan_safe(z.imag())}});
  }
  out.csv = csv.str();
  out.result = json{{"energy_np", np.energy.total},
                    {"energy_series", np.mie_energy},
                    {"route_residual", np.route_residual},
                    {"max_field_rel_diff", worst},
                    {"samples", samples},
                    {"phi_hat", phi}};
  return out;
}

inline std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline json build_info() {
  return json{{"compiler", __VERSION__},
              {"cplusplus", static_cast<long>(__cplusplus)},
              {"boost", BOOST_LIB_VERSION},
              {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
              {"extended_precision_digits", 80}};
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

}  // namespace detail

struct RunResult {
  int exit_code = exit_ok;
  json error;                              // null on success
  std::vector<std::string> outputs;        // files written, relative to out_dir
};

/// Validates and runs one experiment, writing <name>.<format>, manifest.json
/// and, on failure, error.json into out_dir.
inline RunResult run(const std::string& command, const json& raw_spec, const std::filesystem::path& out_dir,
                     int jobs, const std::string& spec_path = "") {
  namespace fs = std::filesystem;
  const auto t0 = std::chrono::steady_clock::now();
  const std::string started = detail::utc_now();
  RunResult res;
  json spec;
  auto fail = [&](int code, const std::string& kind, const std::string& message, std::optional<int> mode,
                  const std::string& module) {
    res.exit_code = code;
    res.error = json{{"status", "error"},
                     {"exit_code", code},
                     {"command", command},
                     {"kind", kind},
                     {"module", module},
                     {"message", message},
                     {"mode", mode ? json(*mode) : json(nullptr)}};
  };

  Output out;
  try {
    spec = validate_spec(command, raw_spec);
  } catch (const ValidationError& e) {
    fail(exit_invalid, "validation", e.what(), std::nullopt, "cli");
  } catch (const Error& e) {
    fail(exit_invalid, "validation", e.what(), e.mode(), "cli");
  }

  if (res.exit_code == exit_ok) {
    try {
      if (command == "solve") out = detail::run_solve(spec);
      else if (command == "energy-curve") out = detail::run_energy_curve(spec, jobs);
      else if (command == "find-resonance") out = detail::run_find_resonance(spec);
      else if (command == "sweep-condition") out = detail::run_sweep_condition(spec, jobs);
      else if (command == "dichotomy") out = detail::run_dichotomy(spec, jobs);
      else if (command == "np-spectrum") out = detail::run_np_spectrum(spec);
      else out = detail::run_np_crosscheck(spec);
      if (out.failed && out.error)
        fail(exit_computation, to_string(out.error->kind()), out.error->what(), out.error->mode(),
             module_of(out.error->kind(), command));
    } catch (const Error& e) {
      fail(exit_computation, to_string(e.kind()), e.what(), e.mode(), module_of(e.kind(), command));
    } catch (const std::exception& e) {
      fail(exit_computation, "internal", e.what(), std::nullopt, "cli");
    }
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const bool have_result = !out.csv.empty() || !out.result.is_null();
  if (have_result) {
    const std::string format = spec["output"]["format"];
    const std::string file = spec["output"]["name"].get<std::string>() + "." + format;
    if (format == "csv") {
      detail::write_file(out_dir / file, out.csv);
    } else {
      json doc{{"command", command}, {"spec", spec}, {"result", out.result}};
      detail::write_file(out_dir / file, doc.dump(2) + "\n");
    }
    res.outputs.push_back(file);
  }
  if (!res.error.is_null()) {
    detail::write_file(out_dir / "error.json", res.error.dump(2) + "\n");
    res.outputs.push_back("error.json");
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json manifest{{"tool", "alr"},
                {"version", tool_version},
                {"command", command},
                {"spec_path", spec_path},
                {"spec", spec.is_null() ? raw_spec : spec},
                {"jobs", jobs},
                {"started_utc", started},
                {"wall_time_s", wall},
                {"status", res.exit_code == exit_ok ? "ok" : "error"},
                {"exit_code", res.exit_code},
                {"outputs", res.outputs},
                {"build", detail::build_info()}};
  detail::write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return res;
}

}  // namespace alr::cli
