#pragma once

// Grid files:
//   # qprop-grid v1
//   # nq=<n> np=<n> qmin=<x> qmax=<x> pmin=<x> pmax=<x> ordering=g1,g2,g3 t=<x>
//   q,p,re,im            (one row per node, q outer, p inner)
// plus a JSON sidecar <path>.json with the same metadata and the
// normalization sum.

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qprop/errors.hpp"
#include "qprop/phasegrid.hpp"

namespace qprop {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline nlohmann::ordered_json grid_metadata(const PhaseGrid& F) {
  const cplx norm = normalization(F);
  nlohmann::ordered_json j;
  j["format"] = "qprop-grid v1";
  j["nq"] = F.geom.nq;
  j["np"] = F.geom.np;
  j["qmin"] = F.geom.q_min;
  j["qmax"] = F.geom.q_max;
  j["pmin"] = F.geom.p_min;
  j["pmax"] = F.geom.p_max;
  j["ordering"] = {F.ordering.g1, F.ordering.g2, F.ordering.g3};
  j["t"] = F.t;
  j["normalization"] = {norm.real(), norm.imag()};
  return j;
}

inline void write_grid(const std::string& path, const PhaseGrid& F) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  const GridGeometry& g = F.geom;
  os << "# qprop-grid v1\n";
  os << "# nq=" << g.nq << " np=" << g.np << " qmin=" << format_double(g.q_min)
     << " qmax=" << format_double(g.q_max) << " pmin=" << format_double(g.p_min)
     << " pmax=" << format_double(g.p_max) << " ordering=" << format_double(F.ordering.g1)
     << ',' << format_double(F.ordering.g2) << ',' << format_double(F.ordering.g3)
     << " t=" << format_double(F.t) << '\n';
  for (int j = 0; j < g.nq; ++j)
    for (int k = 0; k < g.np; ++k) {
      const cplx x = F.at(j, k);
      os << format_double(g.q(j)) << ',' << format_double(g.p(k)) << ','
         << format_double(x.real()) << ',' << format_double(x.imag()) << '\n';
    }
  if (!os) throw ConfigError("write to '" + path + "' failed");
  std::ofstream js(path + ".json");
  if (!js) throw ConfigError("cannot open '" + path + ".json' for writing");
  js << grid_metadata(F).dump(2) << '\n';
}

inline PhaseGrid read_grid(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open grid file '" + path + "'");
  std::string line;
  if (!std::getline(is, line) || line != "# qprop-grid v1")
    throw ConfigError("'" + path + "' is not a qprop-grid v1 file");
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0)
    throw ConfigError("'" + path + "': missing metadata line");

  std::map<std::string, std::string> kv;
  std::istringstream meta(line.substr(2));
  for (std::string tok; meta >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ConfigError("'" + path + "': bad metadata token " + tok);
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto num = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("'" + path + "': metadata lacks " + key);
    return std::stod(it->second);
  };
  GridGeometry g{static_cast<int>(num("nq")), static_cast<int>(num("np")), num("qmin"),
                 num("qmax"), num("pmin"), num("pmax")};
  OrderingParams ord{};
  if (auto it = kv.find("ordering"); it != kv.end()) {
    std::istringstream os(it->second);
    char c1 = 0, c2 = 0;
    if (!(os >> ord.g1 >> c1 >> ord.g2 >> c2 >> ord.g3) || c1 != ',' || c2 != ',')
      throw ConfigError("'" + path + "': bad ordering metadata");
  }
  PhaseGrid F(g, ord, kv.count("t") ? num("t") : 0.0);
  for (std::size_t i = 0; i < F.values.size(); ++i) {
    if (!std::getline(is, line)) throw ConfigError("'" + path + "': truncated data");
    double q, p, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &q, &p, &re, &im) != 4)
      throw ConfigError("'" + path + "': malformed row " + std::to_string(i + 3));
    F.values[i] = {re, im};
  }
  return F;
}

}  // namespace qprop
