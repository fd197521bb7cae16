#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include "flashpolar/simulator.hpp"

using namespace flashpolar;

namespace {

std::string csv_without_mode_echo(const SimResult& res) {
  std::ostringstream out;
  write_csv(res, out, false);
  std::istringstream in(out.str());
  std::ostringstream kept;
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("# parallel", 0) != 0) kept << line << '\n';
  return kept.str();
}

double run_timed(SimConfig cfg, bool parallel, SimResult& out) {
  cfg.parallel = parallel;
  auto t0 = std::chrono::steady_clock::now();
  out = run_sweep(cfg);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

// Times the OpenMP frame loop against the serial reference on the same sweep
// and verifies that both produce identical results.
int main(int argc, char** argv) {
  SimConfig cfg;
  cfg.n = 1024;
  cfg.k = 896;
  cfg.sigma_sweep = {0.40, 0.44};
  cfg.decoder = "binary";
  cfg.boundary_scheme = "hard";
  cfg.trials = argc > 1 ? std::atol(argv[1]) : 4000;
  cfg.max_frame_errors = cfg.trials;  // no early stop: fixed workload
  cfg.construct_trials = 20000;
  cfg.master_seed = 20250815;
  if (cfg.trials <= 0) {
    std::fprintf(stderr, "usage: %s [trials_per_point > 0]\n", argv[0]);
    return 2;
  }

  SimResult serial_res, parallel_res;
  double t_serial = run_timed(cfg, false, serial_res);
  double t_parallel = run_timed(cfg, true, parallel_res);

  std::printf("frames per point: %ld, sweep points: %zu\n", cfg.trials, cfg.sigma_sweep.size());
  std::printf("serial reference: %8.3f s\n", t_serial);
  std::printf("openmp frame loop: %7.3f s\n", t_parallel);
  std::printf("speedup: %.2fx\n", t_serial / t_parallel);

  if (csv_without_mode_echo(serial_res) != csv_without_mode_echo(parallel_res)) {
    std::fprintf(stderr, "FAIL: serial and parallel sweeps disagree\n");
    return 1;
  }
  std::printf("outputs identical: yes\n");
  return 0;
}
