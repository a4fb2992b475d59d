#pragma once

#include <string>

#include "epm/evolution.hpp"
#include "epm/fluid.hpp"
#include "epm/picard.hpp"
#include "epm/wsobolev.hpp"

namespace epm {

struct GridConfig {
  std::string kind = "radial";  // radial | box
  int n = 1024;
  double extent = 64.0;  // r_max or half-width

  Geometry make() const;
};

struct RunConfig {
  EosParams eos;
  bool k_static = false;  // K resolved from the hydrostatic profile
  double a = 1.0;         // static-profile length scale
  GridConfig grid;
  SchemeConfig scheme;
  WeightedNormSpec norms;
  PicardConfig picard;
  bool picard_enabled = false;
  std::string csv_path = "series.csv";
  std::string dump_dir = ".";

  // Rejects values outside the admissible windows, quoting the violated
  // bound: gamma in (1, 5/3); -3/2 + 2/([2/(gamma-1)]-1) <= delta < -1/2;
  // s > 5/2 (and s < 5/2 + frac(2/(gamma-1)) when 2/(gamma-1) is not an
  // integer).
  void validate() const;
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// JSON manifest with every resolved key, the tool version, and grid hashes;
// meant to be written before any compute.
std::string run_manifest_json(const RunConfig& cfg, const std::string& version);

}  // namespace epm
