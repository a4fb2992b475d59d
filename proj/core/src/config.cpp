#include "epm/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace epm {

Geometry GridConfig::make() const {
  if (kind == "radial") return RadialGrid(extent, n);
  if (kind == "box") return BoxGrid(extent, n);
  throw std::invalid_argument("grid: kind must be 'radial' or 'box', got '" +
                              kind + "'");
}

void RunConfig::validate() const {
  if (!(eos.gamma > 1.0 && eos.gamma < 5.0 / 3.0))
    throw std::invalid_argument("eos: gamma must lie in (1, 5/3), got " +
                                std::to_string(eos.gamma));
  eos.validate();
  if (!(a > 0.0)) throw std::invalid_argument("eos: a must be > 0");
  (void)GridConfig(grid).make();
  scheme.validate();
  norms.validate();

  double beta = 2.0 / (eos.gamma - 1.0);
  // snap to the nearest integer: gamma = 1.2 must give beta = 10 exactly
  if (std::abs(beta - std::round(beta)) < 1e-9) beta = std::round(beta);
  double nbeta = std::floor(beta);
  double frac = beta - nbeta;
  double dlo = -1.5 + 2.0 / (nbeta - 1.0);
  if (!(norms.delta >= dlo && norms.delta < -0.5)) {
    std::ostringstream os;
    os << "norms: delta must satisfy -3/2 + 2/([2/(gamma-1)]-1) <= delta < "
          "-1/2; bound is "
       << dlo << " <= delta < -0.5, got " << norms.delta;
    throw std::invalid_argument(os.str());
  }
  if (frac == 0.0) {
    if (!(norms.s > 2.5))
      throw std::invalid_argument(
          "norms: s must satisfy 5/2 < s (2/(gamma-1) is an integer), got " +
          std::to_string(norms.s));
  } else if (!(norms.s > 2.5 && norms.s < 2.5 + frac)) {
    std::ostringstream os;
    os << "norms: s must satisfy 5/2 < s < 5/2 + 2/(gamma-1) - [2/(gamma-1)]"
          "; bound is 2.5 < s < "
       << 2.5 + frac << ", got " << norms.s;
    throw std::invalid_argument(os.str());
  }
  if (picard_enabled) {
    PicardConfig pc = picard;
    pc.norms = norms;
    pc.scheme = scheme;
    pc.validate();
  }
}

namespace {

struct IniData {
  std::map<std::string, std::map<std::string, std::string>> sections;
};

IniData parse_ini(const std::string& text) {
  IniData data;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      data.sections[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    if (section.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": key outside any section");
    data.sections[section][trim(line.substr(0, eq))] =
        trim(line.substr(eq + 1));
  }
  return data;
}

double to_real(const std::string& section, const std::string& key,
               const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (...) {
    throw std::invalid_argument("[" + section + "] " + key +
                                ": expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& section, const std::string& key,
           const std::string& v) {
  double x = to_real(section, key, v);
  if (x != std::floor(x))
    throw std::invalid_argument("[" + section + "] " + key +
                                ": expected an integer, got '" + v + "'");
  return int(x);
}

bool to_bool(const std::string& section, const std::string& key,
             const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("[" + section + "] " + key +
                              ": expected true/false, got '" + v + "'");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  IniData ini = parse_ini(text);

  static const std::map<std::string, std::set<std::string>> known = {
      {"eos", {"gamma", "K", "a"}},
      {"grid", {"kind", "n", "extent"}},
      {"scheme", {"cfl", "eps_hv", "t_end", "cadence", "tail_exponent"}},
      {"norms", {"s", "delta", "jmax", "shell_n"}},
      {"picard", {"enabled", "T", "tol", "max_iter", "M0"}},
      {"output", {"csv", "dump_dir"}},
  };
  for (const auto& [sec, keys] : ini.sections) {
    auto it = known.find(sec);
    if (it == known.end())
      throw std::invalid_argument("config: unknown section [" + sec + "]");
    for (const auto& [k, v] : keys)
      if (!it->second.count(k))
        throw std::invalid_argument("config: unknown key '" + k +
                                    "' in section [" + sec + "]");
  }

  RunConfig cfg;
  auto get = [&](const std::string& sec,
                 const std::string& key) -> const std::string* {
    auto s = ini.sections.find(sec);
    if (s == ini.sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };

  if (auto* v = get("eos", "gamma")) cfg.eos.gamma = to_real("eos", "gamma", *v);
  if (auto* v = get("eos", "K")) {
    if (*v == "static") {
      cfg.k_static = true;
      cfg.eos.K = 2.0 * M_PI / 9.0;
    } else {
      cfg.eos.K = to_real("eos", "K", *v);
    }
  }
  if (auto* v = get("eos", "a")) cfg.a = to_real("eos", "a", *v);
  if (auto* v = get("grid", "kind")) cfg.grid.kind = *v;
  if (auto* v = get("grid", "n")) cfg.grid.n = to_int("grid", "n", *v);
  if (auto* v = get("grid", "extent"))
    cfg.grid.extent = to_real("grid", "extent", *v);
  if (auto* v = get("scheme", "cfl")) cfg.scheme.cfl = to_real("scheme", "cfl", *v);
  if (auto* v = get("scheme", "eps_hv"))
    cfg.scheme.eps_hv = to_real("scheme", "eps_hv", *v);
  if (auto* v = get("scheme", "t_end"))
    cfg.scheme.t_end = to_real("scheme", "t_end", *v);
  if (auto* v = get("scheme", "cadence"))
    cfg.scheme.cadence = to_real("scheme", "cadence", *v);
  if (auto* v = get("scheme", "tail_exponent"))
    cfg.scheme.poisson.tail_exponent = to_real("scheme", "tail_exponent", *v);
  if (auto* v = get("norms", "s")) cfg.norms.s = to_real("norms", "s", *v);
  if (auto* v = get("norms", "delta"))
    cfg.norms.delta = to_real("norms", "delta", *v);
  if (auto* v = get("norms", "jmax")) cfg.norms.j_max = to_int("norms", "jmax", *v);
  if (auto* v = get("norms", "shell_n"))
    cfg.norms.shell_n = to_int("norms", "shell_n", *v);
  if (auto* v = get("picard", "enabled"))
    cfg.picard_enabled = to_bool("picard", "enabled", *v);
  if (auto* v = get("picard", "T")) cfg.picard.T = to_real("picard", "T", *v);
  if (auto* v = get("picard", "tol"))
    cfg.picard.tol = to_real("picard", "tol", *v);
  if (auto* v = get("picard", "max_iter"))
    cfg.picard.max_iter = to_int("picard", "max_iter", *v);
  if (auto* v = get("picard", "M0")) cfg.picard.M0 = to_real("picard", "M0", *v);
  if (auto* v = get("output", "csv")) cfg.csv_path = *v;
  if (auto* v = get("output", "dump_dir")) cfg.dump_dir = *v;

  cfg.picard.norms = cfg.norms;
  cfg.picard.scheme = cfg.scheme;
  cfg.validate();
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string run_manifest_json(const RunConfig& cfg,
                              const std::string& version) {
  nlohmann::json j;
  j["version"] = version;
  j["eos"] = {{"gamma", cfg.eos.gamma},
              {"K", cfg.eos.K},
              {"K_static", cfg.k_static},
              {"a", cfg.a}};
  j["grid"] = {{"kind", cfg.grid.kind},
               {"n", cfg.grid.n},
               {"extent", cfg.grid.extent}};
  j["scheme"] = {{"cfl", cfg.scheme.cfl},
                 {"eps_hv", cfg.scheme.eps_hv},
                 {"t_end", cfg.scheme.t_end},
                 {"cadence", cfg.scheme.cadence},
                 {"tail_exponent", cfg.scheme.poisson.tail_exponent}};
  j["norms"] = {{"s", cfg.norms.s},
                {"delta", cfg.norms.delta},
                {"jmax", cfg.norms.j_max},
                {"shell_n", cfg.norms.shell_n}};
  j["picard"] = {{"enabled", cfg.picard_enabled},
                 {"T", cfg.picard.T},
                 {"tol", cfg.picard.tol},
                 {"max_iter", cfg.picard.max_iter},
                 {"M0", cfg.picard.M0}};
  j["output"] = {{"csv", cfg.csv_path}, {"dump_dir", cfg.dump_dir}};
  std::ostringstream gh;
  gh << cfg.grid.kind << ':' << cfg.grid.n << ':' << cfg.grid.extent;
  j["grid_hash"] = fnv1a(gh.str());
  return j.dump(2);
}

}  // namespace epm
