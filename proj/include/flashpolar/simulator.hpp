#pragma once
#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "flashpolar/flash_model.hpp"
#include "flashpolar/precheck.hpp"

namespace flashpolar {

// Monte Carlo sweep configuration. Loadable from a key=value file with
// command-line overrides; every run echoes the resolved values back into the
// output header.
struct SimConfig {
  int n = 1024;
  int k = 896;
  std::array<double, 4> means{0.0, 3.25, 4.55, 6.5};
  std::array<double, 4> sigma_multipliers{2.0, 1.0, 1.0, 1.4};
  std::vector<double> sigma_sweep{0.50, 0.55, 0.60};
  std::string mapping = "gray";           // gray | direct
  std::string decoder = "binary";         // binary | quantized | pure | precheck | ldpc-bf
  std::string boundary_scheme = "smmi";   // smmi | ratio | hard
  double ratio = 4.0;                     // constant-ratio R
  long trials = 10000;                    // frames per sweep point, upper bound
  long max_frame_errors = 100;            // early stop once a batch ends past this
  long batch_size = 512;                  // frames between stop checks (fixed, not thread-dependent)
  std::uint64_t master_seed = 1;
  double design_sigma = 0.0;              // 0 = middle of the sweep
  long construct_trials = 100000;
  std::string frozen_file;                // load the frozen set instead of constructing
  double t_binary_max = 2.0e-3;           // precheck defaults, see README
  double t_quantized_max = 1.2e-2;
  int ldpc_circulant = 16;
  int ldpc_dv = 4;
  int ldpc_max_iter = 15;
  std::uint64_t ldpc_seed = 7;
  bool parallel = true;

  void validate() const;
};

struct SweepPoint {
  double sigma = 0.0;
  double raw_error_prob = 0.0;
  std::string decoder;
  long frames = 0;
  long frame_errors = 0;
  double fer = 0.0;
  double ber = 0.0;
  double mean_sense_ops = 0.0;  // per cell
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

struct SimResult {
  SimConfig config;
  std::vector<SweepPoint> points;
};

// Raw state-error probability used as the x axis of sweep plots.
double raw_error_axis(const FlashModel& model);

FlashModel model_for_sigma(const SimConfig& cfg, double sigma);
MappingScheme mapping_for(const SimConfig& cfg);
Boundaries boundaries_for(const SimConfig& cfg, const FlashModel& model);

// Runs the configured sweep. cfg.parallel selects the OpenMP frame loop; the
// serial path is kept as a reference and produces identical results.
SimResult run_sweep(const SimConfig& cfg);

// CSV with a config-echo header. Wall time is emitted as a comment line only
// when include_wall is set, so two runs of the same config compare equal
// without it.
void write_csv(const SimResult& result, std::ostream& out, bool include_wall = true);

SimConfig load_config_file(const std::string& path);
// "key=value" override; throws on unknown keys.
void apply_override(SimConfig& cfg, const std::string& key, const std::string& value);

}  // namespace flashpolar
