#pragma once

// Configuration-driven front end: config parsing, the six commands, and the
// error-line convention shared by the `qprop` executable and the tests.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qprop/eom.hpp"
#include "qprop/errors.hpp"
#include "qprop/grid_io.hpp"
#include "qprop/model.hpp"
#include "qprop/oracle.hpp"
#include "qprop/ordering.hpp"
#include "qprop/phasegrid.hpp"
#include "qprop/states.hpp"
#include "qprop/weinorman.hpp"

namespace qprop::cli {

using json = nlohmann::json;

struct TimeConfig {
  double T = 0.0;
  double dt = 0.0;  ///< <= 0: integrator default
  int slices = 1;
  long record_every = 0;  ///< 0: about 1000 trajectory rows
  int samples = 101;      ///< time mesh size for `coeffs`
  double blowup_threshold = 1e8;
};

struct OracleConfig {
  int cutoff = kDefaultFockCutoff;
  double dt = 1e-3;
  double eps = 0.3;
  double delta = 0.1;
};

struct RunConfig {
  std::optional<QuadraticModel> model;
  std::optional<OrderingParams> ordering;
  std::optional<StateSpec> state;
  std::optional<GridGeometry> grid;
  std::optional<TimeConfig> time;
  std::optional<OrderingParams> ordering_from;
  std::optional<OrderingParams> ordering_to;
  std::optional<std::string> input;
  std::string output_path = "qprop-out";
  double stability_cap = kDefaultStabilityCap;
  OracleConfig oracle{};
};

// ---------------------------------------------------------------------------
// Parsing helpers. Every failure names the offending key.

inline ConfigError key_error(const std::string& key, const std::string& msg) {
  return ConfigError("config key '" + key + "': " + msg);
}

inline std::string join_key(const std::string& parent, const std::string& child) {
  return parent.empty() ? child : parent + "." + child;
}

inline void require_object(const json& j, const std::string& key) {
  if (!j.is_object()) throw key_error(key, "expected an object");
}

inline void reject_unknown(const json& j, const std::string& key,
                           std::initializer_list<std::string_view> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw key_error(join_key(key, it.key()), "unknown key");
}

inline const json& member(const json& j, const std::string& parent, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw key_error(join_key(parent, name), "missing");
  return *it;
}

inline double as_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw key_error(key, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw key_error(key, "must be finite");
  return x;
}

inline long as_integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw key_error(key, "expected an integer");
  return j.get<long>();
}

inline cplx as_complex(const json& j, const std::string& key) {
  if (j.is_number()) return as_number(j, key);
  if (!j.is_array() || j.size() != 2)
    throw key_error(key, "expected a number or a [re, im] pair");
  return {as_number(j[0], key + "[0]"), as_number(j[1], key + "[1]")};
}

inline double number_or(const json& j, const std::string& parent, const char* name,
                        double fallback) {
  const auto it = j.find(name);
  return it == j.end() ? fallback : as_number(*it, join_key(parent, name));
}

/// A number (constant) or a list of [amplitude, rate] pairs.
inline CoefficientFn as_coefficient(const json& j, const std::string& key) {
  if (j.is_number()) return CoefficientFn(as_number(j, key));
  if (!j.is_array()) throw key_error(key, "expected a number or a list of [amplitude, rate]");
  std::vector<CoefficientFn::Term> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string k = key + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) throw key_error(k, "expected [amplitude, rate]");
    terms.push_back({as_number(j[i][0], k + "[0]"), as_number(j[i][1], k + "[1]")});
  }
  return CoefficientFn(std::move(terms));
}

inline OrderingParams parse_ordering(const json& j, const std::string& key) {
  try {
    if (j.is_string()) return named_ordering(j.get<std::string>());
    require_object(j, key);
    if (j.contains("name")) {
      reject_unknown(j, key, {"name", "s"});
      const json& name = j["name"];
      if (!name.is_string()) throw key_error(key + ".name", "expected a string");
      std::optional<double> s;
      if (j.contains("s")) s = as_number(j["s"], key + ".s");
      return named_ordering(name.get<std::string>(), s);
    }
    reject_unknown(j, key, {"g1", "g2", "g3"});
    OrderingParams g{as_number(member(j, key, "g1"), key + ".g1"),
                     as_number(member(j, key, "g2"), key + ".g2"),
                     as_number(member(j, key, "g3"), key + ".g3")};
    return g;
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind("config key", 0) == 0) throw;
    throw key_error(key, what);
  }
}

inline QuadraticModel parse_model(const json& j, const std::string& key) {
  require_object(j, key);
  reject_unknown(j, key, {"hamiltonian", "damping"});
  const std::string hkey = key + ".hamiltonian";
  const json& h = member(j, key, "hamiltonian");
  require_object(h, hkey);
  if (h.size() != 1 || !(h.contains("coherent") || h.contains("qp")))
    throw key_error(hkey, "expected exactly one of 'coherent' or 'qp'");

  std::optional<DampingSpec> damping;
  if (j.contains("damping")) {
    const std::string dkey = key + ".damping";
    const json& d = j["damping"];
    require_object(d, dkey);
    reject_unknown(d, dkey, {"gamma", "N", "M"});
    DampingSpec spec{as_number(member(d, dkey, "gamma"), dkey + ".gamma"),
                     number_or(d, dkey, "N", 0.0),
                     d.contains("M") ? as_complex(d["M"], dkey + ".M") : cplx{}};
    if (spec.gamma < 0.0) throw key_error(dkey + ".gamma", "must be >= 0");
    if (spec.N < 0.0) throw key_error(dkey + ".N", "must be >= 0");
    damping = spec;
  }

  try {
    if (h.contains("coherent")) {
      const std::string ckey = hkey + ".coherent";
      const json& c = h["coherent"];
      require_object(c, ckey);
      reject_unknown(c, ckey, {"omega", "V", "A"});
      CoherentHamiltonian ch{as_number(member(c, ckey, "omega"), ckey + ".omega"),
                             c.contains("V") ? as_complex(c["V"], ckey + ".V") : cplx{},
                             c.contains("A") ? as_complex(c["A"], ckey + ".A") : cplx{}};
      return QuadraticModel::from_coherent(ch, damping);
    }
    const std::string qkey = hkey + ".qp";
    const json& q = h["qp"];
    require_object(q, qkey);
    reject_unknown(q, qkey, {"k1", "k2", "k3", "k4", "k5"});
    QPHamiltonian qp;
    CoefficientFn* slots[] = {&qp.k1, &qp.k2, &qp.k3, &qp.k4, &qp.k5};
    const char* names[] = {"k1", "k2", "k3", "k4", "k5"};
    for (int i = 0; i < 5; ++i)
      if (q.contains(names[i])) *slots[i] = as_coefficient(q[names[i]], qkey + "." + names[i]);
    return QuadraticModel::from_qp(qp, damping);
  } catch (const Error& e) {
    const std::string what = e.what();
    if (what.rfind("config key", 0) == 0) throw;
    throw key_error(key, what);
  }
}

inline StateSpec parse_state(const json& j, const std::string& key) {
  require_object(j, key);
  reject_unknown(j, key, {"kind", "alpha"});
  const json& kind = member(j, key, "kind");
  if (!kind.is_string()) throw key_error(key + ".kind", "expected a string");
  const std::string k = kind.get<std::string>();
  auto alpha = [&] { return as_complex(member(j, key, "alpha"), key + ".alpha"); };
  if (k == "ground") return StateSpec::ground();
  if (k == "coherent") return StateSpec::coherent(alpha());
  if (k == "cat") return StateSpec::cat(alpha());
  if (k == "superposition01") return StateSpec::superposition01();
  throw key_error(key + ".kind",
                  "unknown state '" + k + "' (ground, coherent, cat, superposition01)");
}

inline GridGeometry parse_grid(const json& j, const std::string& key) {
  require_object(j, key);
  reject_unknown(j, key, {"nq", "np", "qmin", "qmax", "pmin", "pmax"});
  GridGeometry g{static_cast<int>(as_integer(member(j, key, "nq"), key + ".nq")),
                 static_cast<int>(as_integer(member(j, key, "np"), key + ".np")),
                 as_number(member(j, key, "qmin"), key + ".qmin"),
                 as_number(member(j, key, "qmax"), key + ".qmax"),
                 as_number(member(j, key, "pmin"), key + ".pmin"),
                 as_number(member(j, key, "pmax"), key + ".pmax")};
  auto pow2 = [](int n) { return n >= 8 && (n & (n - 1)) == 0; };
  if (!pow2(g.nq)) throw key_error(key + ".nq", "must be a power of two >= 8");
  if (!pow2(g.np)) throw key_error(key + ".np", "must be a power of two >= 8");
  if (!(g.q_max > g.q_min)) throw key_error(key + ".qmax", "must exceed qmin");
  if (!(g.p_max > g.p_min)) throw key_error(key + ".pmax", "must exceed pmin");
  g.validate();
  return g;
}

inline TimeConfig parse_time(const json& j, const std::string& key) {
  require_object(j, key);
  reject_unknown(j, key, {"T", "dt", "slices", "record_every", "samples", "blowup_threshold"});
  TimeConfig t;
  t.T = as_number(member(j, key, "T"), key + ".T");
  if (t.T < 0.0) throw key_error(key + ".T", "must be >= 0");
  t.dt = number_or(j, key, "dt", 0.0);
  if (j.contains("dt") && !(t.dt > 0.0)) throw key_error(key + ".dt", "must be > 0");
  if (j.contains("slices")) {
    const long s = as_integer(j["slices"], key + ".slices");
    if (s < 1 || s > 100000) throw key_error(key + ".slices", "must be in [1, 100000]");
    t.slices = static_cast<int>(s);
  }
  if (j.contains("record_every")) {
    t.record_every = as_integer(j["record_every"], key + ".record_every");
    if (t.record_every < 1) throw key_error(key + ".record_every", "must be >= 1");
  }
  if (j.contains("samples")) {
    const long s = as_integer(j["samples"], key + ".samples");
    if (s < 2 || s > 10'000'000) throw key_error(key + ".samples", "must be in [2, 1e7]");
    t.samples = static_cast<int>(s);
  }
  t.blowup_threshold = number_or(j, key, "blowup_threshold", t.blowup_threshold);
  if (!(t.blowup_threshold > 0.0)) throw key_error(key + ".blowup_threshold", "must be > 0");
  return t;
}

inline OracleConfig parse_oracle(const json& j, const std::string& key) {
  require_object(j, key);
  reject_unknown(j, key, {"cutoff", "dt", "eps", "delta"});
  OracleConfig o;
  if (j.contains("cutoff")) {
    const long c = as_integer(j["cutoff"], key + ".cutoff");
    if (c < 2 || c > 400) throw key_error(key + ".cutoff", "must be in [2, 400]");
    o.cutoff = static_cast<int>(c);
  }
  o.dt = number_or(j, key, "dt", o.dt);
  if (!(o.dt > 0.0)) throw key_error(key + ".dt", "must be > 0");
  o.eps = number_or(j, key, "eps", o.eps);
  o.delta = number_or(j, key, "delta", o.delta);
  return o;
}

/// Parses and validates every section that is present. Commands check for
/// the sections they need with `require`.
inline RunConfig parse_config(const json& j) {
  require_object(j, "<root>");
  reject_unknown(j, "", {"model", "ordering", "state", "grid", "time", "output",
                         "ordering_from", "ordering_to", "input", "stability_cap",
                         "oracle"});
  RunConfig c;
  if (j.contains("model")) c.model = parse_model(j["model"], "model");
  if (j.contains("ordering")) c.ordering = parse_ordering(j["ordering"], "ordering");
  if (j.contains("state")) c.state = parse_state(j["state"], "state");
  if (j.contains("grid")) c.grid = parse_grid(j["grid"], "grid");
  if (j.contains("time")) c.time = parse_time(j["time"], "time");
  if (j.contains("ordering_from"))
    c.ordering_from = parse_ordering(j["ordering_from"], "ordering_from");
  if (j.contains("ordering_to")) c.ordering_to = parse_ordering(j["ordering_to"], "ordering_to");
  if (j.contains("input")) {
    if (!j["input"].is_string()) throw key_error("input", "expected a file path string");
    c.input = j["input"].get<std::string>();
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    require_object(o, "output");
    reject_unknown(o, "output", {"path", "format"});
    if (o.contains("path")) {
      if (!o["path"].is_string() || o["path"].get<std::string>().empty())
        throw key_error("output.path", "expected a non-empty directory path");
      c.output_path = o["path"].get<std::string>();
    }
    if (o.contains("format")) {
      if (!o["format"].is_string() || o["format"].get<std::string>() != "csv")
        throw key_error("output.format", "only \"csv\" is supported");
    }
  }
  if (j.contains("stability_cap")) {
    c.stability_cap = as_number(j["stability_cap"], "stability_cap");
    if (!(c.stability_cap > 1.0)) throw key_error("stability_cap", "must be > 1");
  }
  if (j.contains("oracle")) c.oracle = parse_oracle(j["oracle"], "oracle");
  return c;
}

inline json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

template <class T>
const T& require(const std::optional<T>& x, const char* key) {
  if (!x) throw key_error(key, "missing (required by this command)");
  return *x;
}

// ---------------------------------------------------------------------------
// Output helpers

inline std::filesystem::path prepare_output(const RunConfig& c) {
  std::filesystem::path dir(c.output_path);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw key_error("output.path", "cannot create directory: " + ec.message());
  return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path.string() + "' for writing");
  os << text;
  if (!os) throw ConfigError("write to '" + path.string() + "' failed");
}

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json ordering_json(const OrderingParams& g) { return json::array({g.g1, g.g2, g.g3}); }

inline std::string wn_header(bool with_slice) {
  std::string h = with_slice ? "slice,t" : "t";
  for (int i = 1; i <= 9; ++i)
    h += ",re_w" + std::to_string(i) + ",im_w" + std::to_string(i);
  return h + "\n";
}

inline void append_wn_row(std::string& out, const WeiNormanState& s, double t,
                          std::optional<int> slice) {
  if (slice) out += std::to_string(*slice) + ",";
  out += format_double(t);
  for (const cplx& w : s.w) out += "," + format_double(w.real()) + "," + format_double(w.imag());
  out += "\n";
}

inline IntegratorConfig integrator_for(const TimeConfig& t, double span) {
  IntegratorConfig cfg;
  cfg.dt = t.dt;
  cfg.blowup_threshold = t.blowup_threshold;
  if (t.record_every > 0) {
    cfg.record_every = t.record_every;
  } else {
    const double dt = t.dt > 0.0 ? t.dt : default_step(span);
    cfg.record_every = std::max(1L, static_cast<long>(std::ceil(span / dt / 1000.0)));
  }
  return cfg;
}

inline BlowUpError blowup_hint(const BlowUpError& e, double t0, int slices) {
  return BlowUpError(std::string(e.what()) + " [global t = " + format_double(t0 + e.time()) +
                         "; time.slices = " + std::to_string(slices) +
                         " is too small, no slice may reach the pole]",
                     t0 + e.time());
}

struct PipelineResult {
  PhaseGrid initial;
  PhaseGrid final;
  std::string trajectory_csv;
  json slice_endpoints = json::array();
};

/// Initial state in the configured ordering, propagated slice by slice.
inline PipelineResult run_pipeline(const RunConfig& c) {
  const QuadraticModel& model = require(c.model, "model");
  const OrderingParams& g = require(c.ordering, "ordering");
  const StateSpec& st = require(c.state, "state");
  const GridGeometry& geom = require(c.grid, "grid");
  const TimeConfig& tc = require(c.time, "time");

  PipelineResult r{make_state(st, g, geom, c.stability_cap), {}, wn_header(true), {}};
  r.initial.ordering = g;
  const LieCoefficients a = assemble(model, g);
  PhaseGrid F = r.initial;
  for (int s = 0; s < tc.slices; ++s) {
    const double t0 = tc.T * s / tc.slices, t1 = tc.T * (s + 1) / tc.slices;
    std::vector<WeiNormanState> traj;
    try {
      traj = integrate(a.shifted(t0), t1 - t0, integrator_for(tc, t1 - t0));
    } catch (const BlowUpError& e) {
      throw blowup_hint(e, t0, tc.slices);
    }
    for (const WeiNormanState& w : traj) append_wn_row(r.trajectory_csv, w, t0 + w.t, s);
    F = propagate(F, traj.back(), c.stability_cap);
    json ends = json::array();
    for (const cplx& w : traj.back().w) ends.push_back(complex_json(w));
    r.slice_endpoints.push_back({{"t0", t0}, {"t1", t1}, {"w", ends}});
  }
  F.t = r.initial.t + tc.T;
  F.ordering = g;
  r.final = std::move(F);
  return r;
}

// ---------------------------------------------------------------------------
// Commands. Each returns the process exit code; errors propagate as qprop::Error.

inline int cmd_propagate(const RunConfig& c, const json& raw, std::ostream& out) {
  PipelineResult r = run_pipeline(c);
  const auto dir = prepare_output(c);
  write_grid((dir / "initial.csv").string(), r.initial);
  write_grid((dir / "final.csv").string(), r.final);
  write_text(dir / "wn.csv", r.trajectory_csv);
  nlohmann::ordered_json meta;
  meta["command"] = "propagate";
  meta["config"] = raw;
  meta["ordering"] = ordering_json(r.final.ordering);
  meta["T"] = require(c.time, "time").T;
  meta["slices"] = require(c.time, "time").slices;
  meta["normalization_initial"] = complex_json(normalization(r.initial));
  meta["normalization_final"] = complex_json(normalization(r.final));
  meta["slice_endpoints"] = r.slice_endpoints;
  write_text(dir / "metadata.json", meta.dump(2) + "\n");
  out << "wrote " << (dir / "final.csv").string() << "\n";
  return 0;
}

inline int cmd_convert(const RunConfig& c, std::ostream& out) {
  const OrderingParams& to = require(c.ordering_to, "ordering_to");
  PhaseGrid F;
  OrderingParams from;
  if (c.input) {
    F = read_grid(*c.input);
    from = c.ordering_from.value_or(F.ordering);
  } else {
    if (!c.ordering_from && !c.ordering)
      throw key_error("ordering_from", "missing (or give 'ordering' or 'input')");
    from = c.ordering_from ? *c.ordering_from : *c.ordering;
    F = make_state(require(c.state, "state"), from, require(c.grid, "grid"), c.stability_cap);
  }
  F.ordering = from;
  const PhaseGrid G = convert_ordering(F, from, to, c.stability_cap);
  const auto dir = prepare_output(c);
  write_grid((dir / "source.csv").string(), F);
  write_grid((dir / "converted.csv").string(), G);
  out << "wrote " << (dir / "converted.csv").string() << "\n";
  return 0;
}

inline int cmd_wn(const RunConfig& c, std::ostream& out) {
  const TimeConfig& tc = require(c.time, "time");
  const LieCoefficients a =
      assemble(require(c.model, "model"), require(c.ordering, "ordering"));
  std::vector<WeiNormanState> traj;
  try {
    traj = integrate(a, tc.T, integrator_for(tc, tc.T));
  } catch (const BlowUpError& e) {
    throw blowup_hint(e, 0.0, 1);
  }
  std::string csv = wn_header(false);
  for (const WeiNormanState& w : traj) append_wn_row(csv, w, w.t, std::nullopt);
  const auto dir = prepare_output(c);
  write_text(dir / "wn.csv", csv);
  out << "wrote " << (dir / "wn.csv").string() << "\n";
  return 0;
}

inline int cmd_coeffs(const RunConfig& c, std::ostream& out) {
  const TimeConfig& tc = require(c.time, "time");
  const LieCoefficients a =
      assemble(require(c.model, "model"), require(c.ordering, "ordering"));
  std::string csv = "t";
  for (int i = 1; i <= 9; ++i)
    csv += ",re_a" + std::to_string(i) + ",im_a" + std::to_string(i);
  csv += "\n";
  for (int k = 0; k < tc.samples; ++k) {
    const double t = tc.T * k / (tc.samples - 1);
    csv += format_double(t);
    for (const cplx& x : a.at(t)) csv += "," + format_double(x.real()) + "," + format_double(x.imag());
    csv += "\n";
  }
  const auto dir = prepare_output(c);
  write_text(dir / "coeffs.csv", csv);
  out << "wrote " << (dir / "coeffs.csv").string() << "\n";
  return 0;
}

inline std::vector<std::string> oracle_ids() {
  std::vector<std::string> ids = analytic_cases();
  ids.insert(ids.begin(), "fock");
  return ids;
}

/// Ordering in which each closed-form fixture is stated.
inline OrderingParams analytic_ordering(std::string_view id) {
  if (id == "free-wigner" || id == "ho-wigner-map") return orderings::wigner;
  if (id == "free-Q-ground" || id == "ho-NAN-map") return orderings::antinormal;
  return orderings::standard;
}

inline PhaseGrid oracle_grid(const RunConfig& c, std::string_view id) {
  const GridGeometry& geom = require(c.grid, "grid");
  const OrderingParams& g = require(c.ordering, "ordering");
  const StateSpec& st = require(c.state, "state");
  const double T = require(c.time, "time").T;
  if (id == "fock") {
    const FockDensityMatrix rho = evolve_rho(fock_state(st, c.oracle.cutoff),
                                             require(c.model, "model"), T, c.oracle.dt);
    PhaseGrid F = rho_to_qdf(rho, g, geom);
    F.t = T;
    return F;
  }
  const auto ids = analytic_cases();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw ConfigError("unknown oracle id '" + std::string(id) + "'");
  if (!(analytic_ordering(id) == g))
    throw key_error("ordering", "oracle '" + std::string(id) +
                                    "' is stated in ordering (" +
                                    format_double(analytic_ordering(id).g1) + "," +
                                    format_double(analytic_ordering(id).g2) + "," +
                                    format_double(analytic_ordering(id).g3) + ")");
  return analytic_solution(id, {st.alpha, c.oracle.eps, c.oracle.delta}, geom, T);
}

inline int cmd_compare(const RunConfig& c, std::string_view oracle_id, std::ostream& out) {
  const PhaseGrid B = oracle_grid(c, oracle_id);
  const PipelineResult r = run_pipeline(c);
  const PhaseGrid& A = r.final;
  nlohmann::ordered_json report;
  report["l2"] = l2_distance(A, B);
  report["linf"] = linf_distance(A, B);
  report["normalization_a"] = normalization(A).real();
  report["normalization_b"] = normalization(B).real();
  const auto dir = prepare_output(c);
  write_grid((dir / "pipeline.csv").string(), A);
  write_grid((dir / "oracle.csv").string(), B);
  write_text(dir / "report.json", report.dump(2) + "\n");
  out << report.dump() << "\n";
  return 0;
}

inline int cmd_orderings(std::ostream& out) {
  out << "name,g1,g2,g3\n";
  for (const std::string& n : ordering_names()) {
    if (n == "s-ordered") {
      out << "s-ordered,s/4,s/4,0\n";
      continue;
    }
    const OrderingParams g = named_ordering(n);
    out << n << ',' << format_double(g.g1) << ',' << format_double(g.g2) << ','
        << format_double(g.g3) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Entry point

inline std::string usage() {
  return "usage: qprop <command> [args]\n"
         "  propagate <cfg>             propagate the configured state, write grids and trajectory\n"
         "  convert <cfg>               change the ordering of a grid\n"
         "  wn <cfg>                    integrate the factor coefficients only\n"
         "  coeffs <cfg>                tabulate the equation-of-motion coefficients\n"
         "  compare <cfg> --oracle <id> pipeline versus an oracle, write report.json\n"
         "  orderings                   list ordering names\n";
}

/// Single-line error format: `qprop-error <exit code> <kind>: <message>`.
inline std::string error_line(int code, std::string_view kind, std::string_view msg) {
  std::string m(msg);
  std::replace(m.begin(), m.end(), '\n', ' ');
  return "qprop-error " + std::to_string(code) + " " + std::string(kind) + ": " + m;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.empty()) throw ConfigError("no command given\n" + usage());
    const std::string& cmd = args[0];
    if (cmd == "-h" || cmd == "--help" || cmd == "help") {
      out << usage();
      return 0;
    }
    if (cmd == "orderings") {
      if (args.size() != 1) throw ConfigError("'orderings' takes no arguments");
      return cmd_orderings(out);
    }
    static const std::set<std::string> known{"propagate", "convert", "wn", "coeffs", "compare"};
    if (!known.count(cmd)) throw ConfigError("unknown command '" + cmd + "'");

    std::optional<std::string> cfg_path, oracle;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i] == "--oracle") {
        if (cmd != "compare") throw ConfigError("--oracle is only valid for 'compare'");
        if (i + 1 >= args.size()) throw ConfigError("--oracle requires an id");
        oracle = args[++i];
      } else if (args[i].rfind("--oracle=", 0) == 0 && cmd == "compare") {
        oracle = args[i].substr(9);
      } else if (!cfg_path && args[i].rfind("--", 0) != 0) {
        cfg_path = args[i];
      } else {
        throw ConfigError("unexpected argument '" + args[i] + "'");
      }
    }
    if (!cfg_path) throw ConfigError("'" + cmd + "' requires a config file path");
    const json raw = load_json(*cfg_path);
    const RunConfig c = parse_config(raw);
    if (cmd == "propagate") return cmd_propagate(c, raw, out);
    if (cmd == "convert") return cmd_convert(c, out);
    if (cmd == "wn") return cmd_wn(c, out);
    if (cmd == "coeffs") return cmd_coeffs(c, out);
    if (!oracle) throw ConfigError("'compare' requires --oracle <id>");
    return cmd_compare(c, *oracle, out);
  } catch (const Error& e) {
    err << error_line(e.code(), e.kind(), e.what()) << '\n';
    return e.code();
  } catch (const std::exception& e) {
    err << error_line(1, "internal", e.what()) << '\n';
    return 1;
  }
}

}  // namespace qprop::cli
