#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "flashpolar/complexity.hpp"
#include "flashpolar/ldpc.hpp"
#include "flashpolar/llr_engine.hpp"
#include "flashpolar/math_util.hpp"
#include "flashpolar/simulator.hpp"

namespace fp = flashpolar;

namespace {

fp::SimConfig resolve_config(const std::string& config_path,
                             const std::vector<std::string>& overrides) {
  fp::SimConfig cfg = config_path.empty() ? fp::SimConfig{} : fp::load_config_file(config_path);
  for (const auto& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    fp::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

int run_simulate(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::string& out_path, bool no_wall) {
  fp::SimConfig cfg = resolve_config(config_path, overrides);
  fp::SimResult result = fp::run_sweep(cfg);
  if (out_path.empty()) {
    fp::write_csv(result, std::cout, !no_wall);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    fp::write_csv(result, out, !no_wall);
    std::cerr << "wrote " << result.points.size() << " sweep points to " << out_path << "\n";
  }
  return 0;
}

int run_construct(const std::string& config_path, const std::vector<std::string>& overrides,
                  double sigma, const std::string& out_path) {
  fp::SimConfig cfg = resolve_config(config_path, overrides);
  cfg.validate();
  if (sigma > 0.0) cfg.design_sigma = sigma;
  double design = cfg.design_sigma > 0.0 ? cfg.design_sigma
                                         : cfg.sigma_sweep[cfg.sigma_sweep.size() / 2];
  fp::PolarCode code =
      fp::construct_code(cfg.n, cfg.k, fp::model_for_sigma(cfg, design), fp::mapping_for(cfg),
                         cfg.construct_trials, cfg.master_seed);
  fp::save_frozen_set(code, out_path);
  std::cout << "froze " << code.frozen_positions().size() << " of " << cfg.n
            << " positions (design sigma " << design << ") -> " << out_path << "\n";
  return 0;
}

int run_boundaries(const std::string& config_path, const std::vector<std::string>& overrides,
                   double sigma, const std::string& llr_out) {
  fp::SimConfig cfg = resolve_config(config_path, overrides);
  cfg.validate();
  double s = sigma > 0.0 ? sigma : cfg.sigma_sweep[cfg.sigma_sweep.size() / 2];
  fp::FlashModel model = fp::model_for_sigma(cfg, s);
  fp::MappingScheme mapping = fp::mapping_for(cfg);
  fp::Boundaries bounds = fp::boundaries_for(cfg, model);

  std::cout << std::setprecision(10);
  std::cout << "sigma " << s << ", scheme " << cfg.boundary_scheme << ", mapping "
            << mapping.name() << "\n";
  std::cout << "hard refs:";
  for (double r : bounds.hard_refs) std::cout << ' ' << r;
  std::cout << "\nsoft refs:";
  for (double r : bounds.soft_refs) std::cout << ' ' << r;
  std::cout << "\n";

  double hard_mi_lsb = fp::mutual_information(fp::hard_lsb_channel(model, mapping));
  double hard_mi_msb = fp::mutual_information(fp::hard_msb_channel(model, mapping));
  std::cout << "hard-decision MI: msb " << hard_mi_msb << ", lsb " << hard_mi_lsb << "\n";
  if (bounds.soft_refs.size() == 6) {
    auto q = bounds.soft_refs;
    std::sort(q.begin(), q.end());
    double mi_lsb = fp::mutual_information(
        fp::practical_lsb_channel(model, mapping, bounds.hard_refs[1], q[2], q[3]));
    double mi_msb = fp::mutual_information(fp::practical_msb_channel(
        model, mapping, bounds.hard_refs[0], bounds.hard_refs[2], q[0], q[1], q[4], q[5]));
    std::cout << "soft-layout MI:   msb " << mi_msb << ", lsb " << mi_lsb << "\n";
  }
  if (!llr_out.empty()) {
    std::ofstream out(llr_out);
    if (!out) throw std::runtime_error("cannot open " + llr_out);
    out << std::setprecision(12);
    fp::quantized_llr_table(bounds, model, mapping).write_csv(out);
    std::cerr << "wrote region LLR table to " << llr_out << "\n";
  }
  return 0;
}

int run_mapping_analysis(const std::string& config_path,
                         const std::vector<std::string>& overrides, double sigma) {
  fp::SimConfig cfg = resolve_config(config_path, overrides);
  cfg.validate();
  double s = sigma > 0.0 ? sigma : cfg.sigma_sweep[cfg.sigma_sweep.size() / 2];
  fp::FlashModel model = fp::model_for_sigma(cfg, s);
  auto per_state = fp::raw_error_probability(model).per_state;
  // Adjacent-pair crossing probability per overlap region, equiprobable states.
  auto refs = fp::hard_boundaries(model);
  auto tail = [&](int state, double ref) {
    const auto& st = model.states[state];
    return fp::q_func(std::abs(ref - st.mean) / st.sigma);
  };
  fp::RegionErrorProfile profile{0.25 * (tail(0, refs[0]) + tail(1, refs[0])),
                                 0.25 * (tail(1, refs[1]) + tail(2, refs[1])),
                                 0.25 * (tail(2, refs[2]) + tail(3, refs[2]))};
  (void)per_state;

  std::cout << std::setprecision(6);
  std::cout << "sigma " << s << ": region crossing probabilities " << profile.p1 << " "
            << profile.p2 << " " << profile.p3 << "\n";
  std::cout << "scheme  gray  changes  expected_bit_errors_per_cell\n";
  for (const auto& [scheme, changes] : fp::enumerate_schemes()) {
    std::cout << scheme.name() << "    " << (scheme.is_gray() ? "yes " : "no  ") << "  " << changes
              << "        " << fp::expected_raw_bit_errors(scheme, profile) << "\n";
  }
  auto gray = fp::raw_error_probability(model, fp::gray_scheme());
  auto direct = fp::raw_error_probability(model, fp::direct_scheme());
  std::cout << "exact raw BER: gray " << *gray.bit_error_rate << ", direct "
            << *direct.bit_error_rate << "\n";
  return 0;
}

int run_precheck_demo(const std::string& config_path, const std::vector<std::string>& overrides,
                      long max_kcycles, long step_kcycles) {
  fp::SimConfig cfg = resolve_config(config_path, overrides);
  cfg.validate();
  double base = cfg.sigma_sweep.front();
  fp::FlashModel model = fp::model_for_sigma(cfg, base);
  fp::PrecheckThresholds thr{cfg.t_binary_max, cfg.t_quantized_max};
  thr.validate();
  std::cout << std::setprecision(6);
  std::cout << "base sigma " << base << ", thresholds binary<=" << thr.t_binary_max
            << " quantized<=" << thr.t_quantized_max << "\n";
  std::cout << "kcycles  raw_error  decoder\n";
  for (long kc = 0; kc <= max_kcycles; kc += step_kcycles) {
    fp::WearState wear{kc * 1000, 0.13};
    double pe = fp::estimate_pe(model, wear);
    std::cout << kc << "      " << pe << "   " << fp::to_string(fp::select_decoder(pe, thr))
              << "\n";
  }
  return 0;
}

int run_complexity(int n, int k, int dv, int dc, int lbp_iters, int flip_iters) {
  auto row = [](const fp::OpCount& c) {
    std::cout << c.label << ": additions " << c.additions << ", xors " << c.xors;
    if (c.per_iteration) std::cout << " (" << *c.per_iteration << " per iteration)";
    std::cout << "\n";
  };
  row(fp::sc_ops(n));
  row(fp::binary_sc_ops(n));
  row(fp::lbp_ops(n, k, dv, dc, lbp_iters));
  row(fp::bitflip_ops(n, flip_iters));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar-coded FEC stack for four-level flash channels"};
  app.require_subcommand(1);

  std::string config_path, out_path, llr_out;
  std::vector<std::string> overrides;
  double sigma = 0.0;
  bool no_wall = false;
  long max_kcycles = 30, step_kcycles = 2;
  int cx_n = 8192, cx_k = 7372, cx_dv = 4, cx_dc = 30, cx_lbp = 20, cx_flip = 20;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value config file");
    cmd->add_option("--set", overrides, "override, e.g. --set n=1024")->take_all();
  };

  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo FER/BER sweep");
  add_common(sim);
  sim->add_option("--out", out_path, "CSV output path (default stdout)");
  sim->add_flag("--no-wall", no_wall, "omit the wall-time comment");

  auto* con = app.add_subcommand("construct", "build and save a frozen set");
  add_common(con);
  con->add_option("--sigma", sigma, "design sigma (default: middle of the sweep)");
  con->add_option("--out", out_path, "frozen set output path")->required();

  auto* bnd = app.add_subcommand("boundaries", "print read references and per-bit MI");
  add_common(bnd);
  bnd->add_option("--sigma", sigma, "sigma (default: middle of the sweep)");
  bnd->add_option("--llr-out", llr_out, "also write the region LLR table CSV");

  auto* map = app.add_subcommand("mapping-analysis", "rank all 24 symbol mappings");
  add_common(map);
  map->add_option("--sigma", sigma, "sigma (default: middle of the sweep)");

  auto* pre = app.add_subcommand("precheck-demo", "decoder choice vs wear");
  add_common(pre);
  pre->add_option("--max-kcycles", max_kcycles, "sweep end in kilocycles");
  pre->add_option("--step-kcycles", step_kcycles, "sweep step in kilocycles");

  auto* cx = app.add_subcommand("complexity", "analytic per-frame operation counts");
  cx->add_option("--n", cx_n, "block length");
  cx->add_option("--k", cx_k, "message length (lbp row count n-k)");
  cx->add_option("--dv", cx_dv, "variable degree");
  cx->add_option("--dc", cx_dc, "check degree");
  cx->add_option("--lbp-iters", cx_lbp, "lbp iteration count");
  cx->add_option("--flip-iters", cx_flip, "bit-flip iteration count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return run_simulate(config_path, overrides, out_path, no_wall);
    if (con->parsed()) return run_construct(config_path, overrides, sigma, out_path);
    if (bnd->parsed()) return run_boundaries(config_path, overrides, sigma, llr_out);
    if (map->parsed()) return run_mapping_analysis(config_path, overrides, sigma);
    if (pre->parsed()) return run_precheck_demo(config_path, overrides, max_kcycles, step_kcycles);
    if (cx->parsed()) return run_complexity(cx_n, cx_k, cx_dv, cx_dc, cx_lbp, cx_flip);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
