#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "epm/config.hpp"
#include "epm/diagnostics.hpp"
#include "epm/evolution.hpp"
#include "epm/field_io.hpp"
#include "epm/fluid.hpp"
#include "epm/ineq_lab.hpp"
#include "epm/picard.hpp"
#include "epm/poisson.hpp"
#include "epm/wsobolev.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitNoContraction = 4;

std::filesystem::path resolve(const std::string& workdir,
                              const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || workdir.empty()) return p;
  return std::filesystem::path(workdir) / p;
}

int cmd_simulate(const std::string& workdir, const std::string& config_path) {
  epm::RunConfig cfg;
  try {
    cfg = epm::parse_config(resolve(workdir, config_path).string());
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  auto dump_dir = resolve(workdir, cfg.dump_dir);
  std::filesystem::create_directories(dump_dir);
  {
    std::ofstream mf(dump_dir / "manifest.json");
    mf << epm::run_manifest_json(cfg, kVersion) << "\n";
  }

  epm::Geometry geom = cfg.grid.make();
  epm::FluidState init = epm::zero_state(geom);
  if (cfg.grid.kind == "radial") {
    epm::RadialGrid g = std::get<epm::RadialGrid>(geom);
    epm::StaticSolution st = epm::static_profile(g, cfg.a);
    if (cfg.k_static) {
      init.w = st.w;
    } else {
      epm::EosParams eos = cfg.eos;
      init.w = epm::makino_from_density(st.rho, eos);
    }
  } else {
    epm::RadialGrid rg(2.0 * cfg.grid.extent, 4 * cfg.grid.n);
    epm::StaticSolution st = epm::static_profile(rg, cfg.a);
    init.w = epm::lift_radial_to_box(st.w, std::get<epm::BoxGrid>(geom));
  }

  epm::EosParams eos = cfg.eos;
  if (cfg.k_static) eos.K = 2.0 * M_PI / 9.0;

  if (cfg.picard_enabled) {
    epm::PicardConfig pc = cfg.picard;
    pc.norms = cfg.norms;
    pc.scheme = cfg.scheme;
    epm::PicardResult pr = epm::picard_solve(init, eos, pc);
    std::cout << "picard: iterations=" << pr.trace.gaps.size()
              << " lambda=" << pr.trace.lambda
              << " halvings=" << pr.trace.halvings
              << " T=" << pr.trace.T_used
              << " converged=" << (pr.trace.converged ? "yes" : "no") << "\n";
    if (!pr.trace.converged) return kExitNoContraction;
    epm::write_field((dump_dir / "picard_final_w.mkgf").string(),
                     pr.traj.slices.back().w);
    return 0;
  }

  epm::MonitorConfig mon;
  mon.norms = cfg.norms;
  mon.tail_exponent = cfg.scheme.poisson.tail_exponent;
  epm::SimulationResult res = epm::run_simulation(init, eos, cfg.scheme, mon);
  {
    std::ofstream csv(resolve(workdir, cfg.csv_path));
    csv << res.series.to_csv();
  }
  epm::write_field((dump_dir / "final_w.mkgf").string(), res.final_state.w);
  epm::write_field((dump_dir / "final_v.mkgf").string(), res.final_state.v);
  if (res.aborted) {
    std::cerr << "aborted: " << res.message << "\n";
    return kExitNumerical;
  }
  return 0;
}

int cmd_norm(const std::string& workdir, const std::string& field_path,
             double s, double delta, int jmax, int shell_n) {
  epm::GridFunction u = epm::read_field(resolve(workdir, field_path).string());
  epm::WeightedNormSpec spec;
  spec.s = s;
  spec.delta = delta;
  spec.j_max = jmax;
  spec.shell_n = shell_n;
  epm::DyadicPartition part(jmax);
  epm::NormBreakdown nb = epm::weighted_norm(u, spec, part);
  std::cout << "j,contribution,cumulative\n";
  std::cout.precision(17);
  double cum = 0.0;
  for (std::size_t j = 0; j < nb.shells.size(); ++j) {
    cum += nb.shells[j];
    std::cout << j << ',' << nb.shells[j] << ',' << cum << "\n";
  }
  std::cout << "# norm=" << nb.norm()
            << " truncated=" << (nb.truncated ? "yes" : "no") << "\n";
  return 0;
}

int cmd_check_ineq(const std::string& workdir, const std::string& kind_name,
                   double s, double delta, double beta, double gamma,
                   const std::string& corpus_spec) {
  epm::InequalityKind kind;
  epm::IneqParams p;
  p.s = s;
  p.delta = delta;
  if (gamma > 0.0) p.beta = 2.0 / (gamma - 1.0);
  if (beta > 0.0) p.beta = beta;
  try {
    kind = epm::kind_from_name(kind_name);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  std::vector<epm::GridFunction> corpus;
  if (corpus_spec == "builtin") {
    corpus = epm::builtin_corpus();
  } else {
    for (const auto& ent :
         std::filesystem::directory_iterator(resolve(workdir, corpus_spec)))
      if (ent.path().extension() == ".mkgf")
        corpus.push_back(epm::read_field(ent.path().string()));
  }
  try {
    epm::RatioReport rep = epm::check_inequality(kind, corpus, p);
    std::cout << rep.to_csv();
    std::cout << "# max_ratio=" << rep.max_ratio
              << " skipped=" << rep.skipped << "\n";
  } catch (const std::exception& e) {
    std::cerr << "hypothesis error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}

int cmd_poisson(const std::string& workdir, const std::string& density_path,
                const std::string& out_path) {
  epm::GridFunction rho =
      epm::read_field(resolve(workdir, density_path).string());
  epm::PotentialField f = rho.on_radial() ? epm::solve_poisson_radial(rho)
                                          : epm::solve_poisson_box(rho);
  auto out = resolve(workdir, out_path);
  epm::write_field(out.string(), f.phi);
  epm::write_field(out.string() + ".grad", f.grad);
  std::cout << "residual=" << f.residual
            << " flagged=" << (f.flagged ? "yes" : "no") << "\n";
  return 0;
}

int cmd_static_test(const std::string& workdir, double a,
                    std::vector<int> resolutions, double t_end) {
  (void)workdir;
  if (resolutions.empty()) resolutions = {512, 1024, 2048};
  std::cout << "n,drift,order\n";
  double prev_drift = 0.0;
  bool first = true;
  for (int n : resolutions) {
    epm::RadialGrid g(64.0, n);
    epm::StaticSolution st = epm::static_profile(g, a);
    epm::FluidState init = epm::zero_state(g);
    init.w = st.w;
    epm::SchemeConfig scheme;
    scheme.t_end = t_end;
    scheme.cadence = t_end / 10.0;
    epm::MonitorConfig mon;
    mon.track_energy = false;
    mon.track_weighted_norms = false;
    mon.reference_w = st.w;
    mon.reference_v = init.v;
    epm::SimulationResult res =
        epm::run_simulation(init, st.eos, scheme, mon);
    if (res.aborted) {
      std::cerr << "aborted at n=" << n << ": " << res.message << "\n";
      return kExitNumerical;
    }
    double drift = 0.0;
    double base = epm::l2_delta_norm(st.w, mon.norms.delta);
    for (const auto& r : res.series.records)
      drift = std::max(drift, r.static_drift_l2delta);
    drift /= base;
    std::cout.precision(6);
    if (first) {
      std::cout << n << ',' << drift << ",\n";
      first = false;
    } else {
      std::cout << n << ',' << drift << ','
                << std::log2(prev_drift / drift) << "\n";
    }
    prev_drift = drift;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler-Poisson-Makino laboratory"};
  app.set_version_flag("--version", kVersion);
  std::string workdir;
  app.add_option("--workdir", workdir, "base directory for relative paths");

  std::string config_path;
  auto* sim = app.add_subcommand("simulate", "advance the system in time");
  sim->add_option("--config", config_path, "INI configuration")->required();

  std::string field_path;
  double s = 2.6, delta = -1.2;
  int jmax = 12, shell_n = 32;
  auto* norm = app.add_subcommand("norm", "weighted-norm breakdown of a dump");
  norm->add_option("--field", field_path)->required();
  norm->add_option("--s", s);
  norm->add_option("--delta", delta);
  norm->add_option("--jmax", jmax);
  norm->add_option("--shell-n", shell_n);

  std::string kind, corpus = "builtin";
  double beta = 0.0, gamma = 0.0;
  auto* ineq = app.add_subcommand("check-ineq", "inequality ratio report");
  ineq->add_option("--kind", kind)->required();
  ineq->add_option("--s", s);
  ineq->add_option("--delta", delta);
  ineq->add_option("--beta", beta);
  ineq->add_option("--gamma", gamma);
  ineq->add_option("--corpus", corpus, "builtin or a directory of dumps");

  std::string density_path, out_path;
  auto* poi = app.add_subcommand("poisson", "solve the free-space potential");
  poi->add_option("--density", density_path)->required();
  poi->add_option("--out", out_path)->required();

  double a = 1.0, t_end = 0.5;
  std::vector<int> resolutions;
  auto* st = app.add_subcommand("static-test", "steady-profile convergence");
  st->add_option("--a", a);
  st->add_option("--t-end", t_end);
  st->add_option("--resolutions", resolutions)->delimiter(',');

  app.require_subcommand(1);
  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return cmd_simulate(workdir, config_path);
    if (*norm) return cmd_norm(workdir, field_path, s, delta, jmax, shell_n);
    if (*ineq)
      return cmd_check_ineq(workdir, kind, s, delta, beta, gamma, corpus);
    if (*poi) return cmd_poisson(workdir, density_path, out_path);
    if (*st) return cmd_static_test(workdir, a, resolutions, t_end);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
