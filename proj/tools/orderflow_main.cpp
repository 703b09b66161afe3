#include <CLI11.hpp>
#include <json.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orderflow/config.hpp"
#include "orderflow/estimators.hpp"
#include "orderflow/hawkes.hpp"
#include "orderflow/impact.hpp"
#include "orderflow/ingest.hpp"
#include "orderflow/io.hpp"
#include "orderflow/kernels.hpp"
#include "orderflow/limits.hpp"
#include "orderflow/rng.hpp"
#include "orderflow/scaling.hpp"
#include "orderflow/specialfn.hpp"

namespace fs = std::filesystem;
using orderflow::PathGrid;
using orderflow::config::RunConfig;

namespace {

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

orderflow::kernels::KernelSpec kernel_from(const RunConfig& cfg, const std::string& prefix,
                                           double alpha_fallback) {
  using orderflow::kernels::KernelSpec;
  const std::string family = cfg.get_string(prefix + "_family", "shifted_pareto");
  if (family == "shifted_pareto") {
    const double a = prefix == "core" ? cfg.get_double("alpha0", alpha_fallback)
                                      : cfg.get_double("alpha1", alpha_fallback);
    return KernelSpec::shifted_pareto(a);
  }
  if (family == "exp_mixture") {
    auto parse_list = [&cfg](const std::string& key) {
      std::vector<double> out;
      std::string s = cfg.get_string(key);
      std::size_t pos = 0;
      while (pos < s.size()) {
        auto comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stod(s.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      return out;
    };
    return KernelSpec::exp_mixture(parse_list(prefix + "_exp_weights"),
                                   parse_list(prefix + "_exp_rates"));
  }
  throw std::runtime_error("unknown kernel family: " + family);
}

orderflow::scaling::LimitParams limit_params_from(const RunConfig& cfg) {
  const double alpha0 = cfg.get_double("alpha0");
  const double K0 = cfg.get_double("K0", alpha0);
  orderflow::scaling::LimitParams lp(alpha0, cfg.get_double("lambda0", 1.0),
                                     cfg.get_double("mu0", 1.0), cfg.get_double("lambda1", 1.0),
                                     K0);
  if (cfg.has("mu1"))
    return orderflow::scaling::LimitParams(lp.alpha0, lp.lambda0, lp.mu0, lp.lambda1, lp.K0,
                                           cfg.get_double("mu1"));
  return lp;
}

orderflow::hawkes::TwoLayerParams two_layer_from(const RunConfig& cfg, double T) {
  const auto lp = limit_params_from(cfg);
  const auto fh = orderflow::scaling::finite_horizon_params(lp, T);
  const double m1 = cfg.get_double("phi1_mass", 0.75);
  const double m2 = cfg.get_double("phi2_mass", 0.25);
  orderflow::kernels::KernelMatrixSpec matrix(
      kernel_from(cfg, "reaction", lp.alpha1()), m1,
      kernel_from(cfg, "reaction", lp.alpha1()), m2);
  return orderflow::hawkes::TwoLayerParams(fh.nu_T, fh.a0_T, kernel_from(cfg, "core", lp.alpha0),
                                           fh.a1_T, std::move(matrix));
}

void echo_config(const RunConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  orderflow::io::write_text((fs::path(out_dir) / "resolved_config.txt").string(), cfg.echo());
}

// simple '*' wildcard match on a filename
bool glob_match(const std::string& pat, const std::string& name) {
  std::size_t p = 0, n = 0, star = std::string::npos, mark = 0;
  while (n < name.size()) {
    if (p < pat.size() && (pat[p] == name[n])) {
      ++p;
      ++n;
    } else if (p < pat.size() && pat[p] == '*') {
      star = p++;
      mark = n;
    } else if (star != std::string::npos) {
      p = star + 1;
      n = ++mark;
    } else {
      return false;
    }
  }
  while (p < pat.size() && pat[p] == '*') ++p;
  return p == pat.size();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-layer order-flow simulation and estimation toolkit"};
  app.require_subcommand(1);

  // shared options
  std::string config_path, out_path, input_path;
  std::int64_t seed_override = -1;
  int threads = 0;

  // ml eval
  auto* ml_cmd = app.add_subcommand("ml", "Mittag-Leffler function evaluation");
  auto* ml_eval = ml_cmd->add_subcommand("eval", "print E_{alpha,beta}(x)");
  double ml_alpha = 0.5, ml_beta = 1.0, ml_x = 0.0;
  ml_eval->add_option("--alpha", ml_alpha)->required();
  ml_eval->add_option("--beta", ml_beta)->required();
  ml_eval->add_option("--x", ml_x)->required();

  // kernel resolvent
  auto* kernel_cmd = app.add_subcommand("kernel", "excitation kernel utilities");
  auto* resolvent_cmd = kernel_cmd->add_subcommand("resolvent", "emit t,psi(t) on a grid");
  double rk_alpha = 0.375, rk_a = 0.9, rk_h = 0.05, rk_T = 100.0;
  resolvent_cmd->add_option("--alpha", rk_alpha)->required();
  resolvent_cmd->add_option("--a", rk_a)->required();
  resolvent_cmd->add_option("--h", rk_h)->required();
  resolvent_cmd->add_option("--horizon", rk_T)->required();
  resolvent_cmd->add_option("--out", out_path)->required();

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "two-layer event simulation");
  int sim_paths = 1;
  sim_cmd->add_option("--config", config_path)->required();
  sim_cmd->add_option("--paths", sim_paths);
  sim_cmd->add_option("--out", out_path)->required();
  sim_cmd->add_option("--seed", seed_override);
  sim_cmd->add_option("--threads", threads);

  // limit simulate
  auto* limit_cmd = app.add_subcommand("limit", "limit-process simulation");
  auto* limit_sim = limit_cmd->add_subcommand("simulate", "simulate a limit process");
  std::string limit_process = "core";
  limit_sim->add_option("--process", limit_process)
      ->check(CLI::IsMember({"core", "reaction", "signed", "fbm", "mixed"}));
  limit_sim->add_option("--config", config_path)->required();
  limit_sim->add_option("--out", out_path)->required();
  limit_sim->add_option("--seed", seed_override);

  // rescale
  auto* rescale_cmd = app.add_subcommand("rescale", "rescale a simulated event stream");
  std::string rescale_mode = "core";
  rescale_cmd->add_option("--input", input_path)->required();
  rescale_cmd->add_option("--config", config_path)->required();
  rescale_cmd->add_option("--mode", rescale_mode)
      ->check(CLI::IsMember({"core", "unsigned", "signed"}));
  rescale_cmd->add_option("--out", out_path)->required();

  // estimate
  auto* est_cmd = app.add_subcommand("estimate", "Hurst estimation");
  std::string est_method = "mixed";
  std::int64_t est_delta = 16, est_max_lag = 20;
  est_cmd->add_option("--method", est_method)->check(CLI::IsMember({"fbm", "mixed", "volume"}));
  est_cmd->add_option("--input", input_path)->required();
  est_cmd->add_option("--delta", est_delta);
  est_cmd->add_option("--max-lag", est_max_lag);
  est_cmd->add_option("--out", out_path)->required();

  // impact
  auto* impact_cmd = app.add_subcommand("impact", "propagator prices and market impact");
  auto* curve_cmd = impact_cmd->add_subcommand("curve", "analytic impact curve");
  double curve_h0 = 0.75, curve_tmax = 3.0;
  std::int64_t curve_points = 300;
  curve_cmd->add_option("--h0", curve_h0)->required();
  curve_cmd->add_option("--tmax", curve_tmax);
  curve_cmd->add_option("--points", curve_points);
  curve_cmd->add_option("--out", out_path)->required();
  auto* mo_cmd = impact_cmd->add_subcommand("metaorder", "constant-rate metaorder experiment");
  double mo_rate = 0.1, mo_duration = 0.0;
  int mo_paths = 500;
  mo_cmd->add_option("--config", config_path)->required();
  mo_cmd->add_option("--rate", mo_rate)->required();
  mo_cmd->add_option("--duration", mo_duration)->required();
  mo_cmd->add_option("--paths", mo_paths);
  mo_cmd->add_option("--out", out_path)->required();
  mo_cmd->add_option("--seed", seed_override);
  mo_cmd->add_option("--threads", threads);

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "load trade files and bin flows");
  std::string session_str = "09:30-16:00";
  double ingest_delta = 60.0;
  ingest_cmd->add_option("--input", input_path)->required();
  ingest_cmd->add_option("--session", session_str);
  ingest_cmd->add_option("--delta", ingest_delta);
  ingest_cmd->add_option("--out", out_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (ml_eval->parsed()) {
      std::printf("%.16g\n", orderflow::ml::mittag_leffler(ml_alpha, ml_beta, ml_x));
      return 0;
    }

    if (resolvent_cmd->parsed()) {
      const auto spec = orderflow::kernels::KernelSpec::shifted_pareto(rk_alpha);
      const auto n = Eigen::Index(std::llround(rk_T / rk_h));
      const auto psi = orderflow::kernels::resolvent(spec.sample(rk_h, n), rk_a);
      PathGrid g(0.0, rk_h, psi.v);
      orderflow::io::write_series_csv(out_path, {"psi"}, {&g});
      return 0;
    }

    if (sim_cmd->parsed()) {
      set_threads(threads);
      auto cfg = RunConfig::from_file(config_path, orderflow::config::model_keys());
      if (seed_override >= 0) cfg.set("seed", std::to_string(seed_override));
      const double T = cfg.get_double("T");
      const auto params = two_layer_from(cfg, T);
      const std::uint64_t seed = std::uint64_t(cfg.get_int("seed", 1));
      echo_config(cfg, out_path);
      std::vector<orderflow::hawkes::EventStream> streams(sim_paths);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
      for (int p = 0; p < sim_paths; ++p)
        streams[p] = orderflow::hawkes::simulate_two_layer(params, T,
                                                           orderflow::Rng(seed, 0x11, p)());
      for (int p = 0; p < sim_paths; ++p) {
        char name[32];
        std::snprintf(name, sizeof name, "events_%04d.csv", p);
        orderflow::io::write_events_csv(streams[p], (fs::path(out_path) / name).string());
      }
      return 0;
    }

    if (limit_sim->parsed()) {
      auto cfg = RunConfig::from_file(config_path, orderflow::config::model_keys());
      if (seed_override >= 0) cfg.set("seed", std::to_string(seed_override));
      const std::uint64_t seed = std::uint64_t(cfg.get_int("seed", 1));
      const auto n = Eigen::Index(cfg.get_int("grid_n", 4096));
      if (limit_process == "fbm" || limit_process == "mixed") {
        const double dt = cfg.get_double("dt", 1.0 / double(n));
        PathGrid path;
        if (limit_process == "fbm") {
          path = orderflow::limits::simulate_fbm(cfg.get_double("H"), n, dt, seed);
        } else {
          orderflow::limits::MixedFbmParams mp(cfg.get_double("H"),
                                               cfg.get_double("sigma_w", 1.0),
                                               cfg.get_double("sigma_h", 1.0));
          path = orderflow::limits::simulate_mixed_fbm(mp, n, dt, seed);
        }
        orderflow::io::write_series_csv(out_path, {"value"}, {&path});
        return 0;
      }
      const auto lp = limit_params_from(cfg);
      orderflow::limits::VolterraGrid grid0(lp.alpha0, lp.lambda0, n);
      const auto core = orderflow::limits::simulate_core_limit(lp.alpha0, lp.lambda0, lp.mu0,
                                                               grid0, seed);
      if (limit_process == "core") {
        orderflow::io::write_series_csv(out_path, {"F", "V"}, {&core.F, &core.V});
        return 0;
      }
      orderflow::limits::VolterraGrid grid1(lp.alpha1(), lp.lambda1, n);
      const auto reaction = orderflow::limits::simulate_reaction_limit(
          lp.alpha1(), lp.lambda1, lp.mu1(), core.F, grid1, seed);
      if (limit_process == "reaction") {
        orderflow::io::write_series_csv(out_path, {"value"}, {&reaction.X});
        return 0;
      }
      orderflow::kernels::KernelMatrixSpec matrix(
          kernel_from(cfg, "reaction", lp.alpha1()), cfg.get_double("phi1_mass", 0.75),
          kernel_from(cfg, "reaction", lp.alpha1()), cfg.get_double("phi2_mass", 0.25));
      const PathGrid s =
          orderflow::limits::simulate_signed_limit(lp, matrix, core.V, reaction.Zdiff);
      orderflow::io::write_series_csv(out_path, {"value"}, {&s});
      return 0;
    }

    if (rescale_cmd->parsed()) {
      auto cfg = RunConfig::from_file(config_path, orderflow::config::model_keys());
      const double T = cfg.get_double("T");
      const auto lp = limit_params_from(cfg);
      const auto fh = orderflow::scaling::finite_horizon_params(lp, T);
      const auto stream = orderflow::io::read_events_csv(input_path, T);
      const auto n = Eigen::Index(cfg.get_int("grid_n", 1024));
      const auto flows = orderflow::hawkes::aggregate_flows(stream, T / double(n), n);
      PathGrid out;
      if (rescale_mode == "core")
        out = orderflow::scaling::rescale_core(flows.F, fh);
      else if (rescale_mode == "unsigned")
        out = orderflow::scaling::rescale_unsigned(flows.U, fh);
      else
        out = orderflow::scaling::rescale_signed(flows.S, fh);
      orderflow::io::write_series_csv(out_path, {"value"}, {&out});
      return 0;
    }

    if (est_cmd->parsed()) {
      const Eigen::ArrayXd series = orderflow::io::read_series_csv(input_path);
      orderflow::estimators::EstimateReport rep;
      if (est_method == "fbm")
        rep = orderflow::estimators::hurst_fbm(
            series, {est_delta, 2 * est_delta, 4 * est_delta});
      else if (est_method == "mixed")
        rep = orderflow::estimators::hurst_mixed(series, est_delta);
      else
        rep = orderflow::estimators::hurst_volume(series, est_max_lag);
      orderflow::io::write_report_json(rep, out_path);
      return 0;
    }

    if (curve_cmd->parsed()) {
      const double dt = curve_tmax / double(curve_points);
      const PathGrid c = orderflow::impact::mi_curve(curve_h0, dt, curve_points);
      orderflow::io::write_series_csv(out_path, {"mi"}, {&c});
      return 0;
    }

    if (mo_cmd->parsed()) {
      set_threads(threads);
      auto cfg = RunConfig::from_file(config_path, orderflow::config::model_keys());
      if (seed_override >= 0) cfg.set("seed", std::to_string(seed_override));
      const double T = cfg.get_double("T");
      const auto params = two_layer_from(cfg, T);
      orderflow::impact::MetaorderConfig mc;
      mc.rate = mo_rate;
      mc.duration = mo_duration;
      mc.horizon = cfg.get_double("horizon", 0.0);
      mc.paths = mo_paths;
      mc.seed = std::uint64_t(cfg.get_int("seed", 1));
      mc.kappa = cfg.get_double("kappa", 1.0);
      mc.lambda_bar = cfg.get_double("lambda_bar", 0.5);
      const auto res = orderflow::impact::metaorder_experiment(params, mc);
      fs::create_directories(out_path);
      echo_config(cfg, out_path);
      orderflow::io::write_series_csv((fs::path(out_path) / "curve.csv").string(), {"mi"},
                                      {&res.curve});
      nlohmann::ordered_json j;
      j["schema_version"] = 1;
      j["fitted_exponent"] = res.fitted_exponent;
      j["peak"] = res.peak;
      j["max_se"] = res.max_se;
      j["pair_a"] = res.pair_a;
      j["pair_tail_alpha"] = res.pair_tail_alpha;
      orderflow::io::write_text((fs::path(out_path) / "metaorder.json").string(), j.dump(2) + "\n");
      return 0;
    }

    if (ingest_cmd->parsed()) {
      const auto session = orderflow::ingest::parse_session(session_str);
      const fs::path pattern(input_path);
      const fs::path dir = pattern.parent_path().empty() ? "." : pattern.parent_path();
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && glob_match(pattern.filename().string(), e.path().filename().string()))
          files.push_back(e.path());
      std::sort(files.begin(), files.end());
      if (files.empty()) throw std::runtime_error("ingest: no files match " + input_path);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      out << "date,bin,signed,unsigned\n";
      for (const auto& f : files) {
        const auto loaded = orderflow::ingest::load_trades(f.string(), session);
        const auto bins = orderflow::ingest::bin_flows(loaded.records, ingest_delta, session);
        for (Eigen::Index b = 0; b < bins.signed_flow.size(); ++b) {
          char line[128];
          std::snprintf(line, sizeof line, "%s,%lld,%.12g,%.12g\n", f.stem().string().c_str(),
                        static_cast<long long>(b), bins.signed_flow[b], bins.unsigned_flow[b]);
          out << line;
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand executed\n";
  return 1;
}
