#include "flashpolar/simulator.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "flashpolar/ldpc.hpp"
#include "flashpolar/llr_engine.hpp"
#include "flashpolar/rng.hpp"

namespace flashpolar {

namespace {

const char* kMappings[] = {"gray", "direct"};
const char* kDecoders[] = {"binary", "quantized", "pure", "precheck", "ldpc-bf"};
const char* kSchemes[] = {"smmi", "ratio", "hard"};

bool one_of(const std::string& v, const auto& options) {
  for (const char* o : options)
    if (v == o) return true;
  return false;
}

struct FrameOutcome {
  long frame_error = 0;
  long bit_errors = 0;
  long sense_ops = 0;
};

// Shared batch loop: fixed-size batches with a stop check between them, so
// the processed frame count never depends on thread scheduling. Frame seeds
// hash (master, sweep index, frame index); accumulators are integers. The
// OpenMP and serial paths therefore produce identical results.
template <typename F>
SweepPoint run_point(const SimConfig& cfg, std::size_t sweep_idx, long bits_per_frame,
                     long cells_per_frame, F&& frame_fn) {
  long done = 0, frame_errors = 0, bit_errors = 0, sense_ops = 0;
  while (done < cfg.trials) {
    const long batch = std::min(cfg.batch_size, cfg.trials - done);
    if (cfg.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : frame_errors, bit_errors, sense_ops)
#endif
      for (long f = 0; f < batch; ++f) {
        FrameOutcome out = frame_fn(derive_seed(cfg.master_seed, sweep_idx, done + f));
        frame_errors += out.frame_error;
        bit_errors += out.bit_errors;
        sense_ops += out.sense_ops;
      }
    } else {
      for (long f = 0; f < batch; ++f) {
        FrameOutcome out = frame_fn(derive_seed(cfg.master_seed, sweep_idx, done + f));
        frame_errors += out.frame_error;
        bit_errors += out.bit_errors;
        sense_ops += out.sense_ops;
      }
    }
    done += batch;
    if (frame_errors >= cfg.max_frame_errors) break;
  }
  SweepPoint pt;
  pt.frames = done;
  pt.frame_errors = frame_errors;
  pt.fer = static_cast<double>(frame_errors) / static_cast<double>(done);
  pt.ber = static_cast<double>(bit_errors) / (static_cast<double>(done) * bits_per_frame);
  pt.mean_sense_ops = static_cast<double>(sense_ops) / (static_cast<double>(done) * cells_per_frame);
  pt.seed = derive_seed(cfg.master_seed, sweep_idx, 0);
  return pt;
}

DecoderKind parse_kind(const std::string& name) {
  if (name == "binary") return DecoderKind::BinaryInput;
  if (name == "quantized") return DecoderKind::QuantizedSoft;
  if (name == "pure") return DecoderKind::PureSoft;
  throw std::invalid_argument("unknown decoder: " + name);
}

// --- config parsing ---------------------------------------------------------

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

long to_long(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  long v;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config " + key + ": not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("config " + key + ": trailing junk in '" + s + "'");
  return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  std::uint64_t v;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config " + key + ": not an unsigned integer: '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("config " + key + ": trailing junk in '" + s + "'");
  return v;
}

double to_double(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config " + key + ": not a number: '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("config " + key + ": trailing junk in '" + s + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("config " + key + ": expected true/false, got '" + s + "'");
}

std::vector<double> to_double_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw std::invalid_argument("config " + key + ": empty list");
  return out;
}

std::array<double, 4> to_double4(const std::string& key, const std::string& s) {
  auto list = to_double_list(key, s);
  if (list.size() != 4) throw std::invalid_argument("config " + key + ": expected 4 values");
  return {list[0], list[1], list[2], list[3]};
}

template <typename T>
std::string join(const T& values) {
  std::ostringstream out;
  out << std::setprecision(12);
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << v;
    first = false;
  }
  return out.str();
}

}  // namespace

void SimConfig::validate() const {
  if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n)))
    throw std::invalid_argument("config: n must be a power of two >= 2");
  if (k <= 0 || k > n) throw std::invalid_argument("config: need 0 < k <= n");
  for (int i = 0; i < 3; ++i)
    if (!(means[i] < means[i + 1]))
      throw std::invalid_argument("config: means must be strictly increasing");
  for (double m : sigma_multipliers)
    if (!(m > 0.0)) throw std::invalid_argument("config: sigma multipliers must be > 0");
  if (sigma_sweep.empty()) throw std::invalid_argument("config: empty sigma sweep");
  for (double s : sigma_sweep)
    if (!(s > 0.0)) throw std::invalid_argument("config: sweep sigmas must be > 0");
  if (!one_of(mapping, kMappings)) throw std::invalid_argument("config: unknown mapping " + mapping);
  if (!one_of(decoder, kDecoders)) throw std::invalid_argument("config: unknown decoder " + decoder);
  if (!one_of(boundary_scheme, kSchemes))
    throw std::invalid_argument("config: unknown boundary scheme " + boundary_scheme);
  if (!(ratio > 0.0)) throw std::invalid_argument("config: ratio must be > 0");
  if (trials <= 0 || batch_size <= 0 || max_frame_errors <= 0)
    throw std::invalid_argument("config: trials, batch_size, max_frame_errors must be > 0");
  if (construct_trials <= 0) throw std::invalid_argument("config: construct_trials must be > 0");
  if (!(design_sigma >= 0.0)) throw std::invalid_argument("config: design_sigma must be >= 0");
  if (decoder == "precheck") PrecheckThresholds{t_binary_max, t_quantized_max}.validate();
  if (decoder == "ldpc-bf") {
    if (ldpc_circulant <= 0 || ldpc_dv <= 0 || ldpc_max_iter < 0)
      throw std::invalid_argument("config: bad ldpc parameters");
  }
}

double raw_error_axis(const FlashModel& model) {
  return raw_error_probability(model).state_error_rate;
}

FlashModel model_for_sigma(const SimConfig& cfg, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("model_for_sigma: sigma must be > 0");
  return scaled_model(cfg.means, cfg.sigma_multipliers, sigma);
}

MappingScheme mapping_for(const SimConfig& cfg) {
  if (cfg.mapping == "gray") return gray_scheme();
  if (cfg.mapping == "direct") return direct_scheme();
  throw std::invalid_argument("unknown mapping: " + cfg.mapping);
}

Boundaries boundaries_for(const SimConfig& cfg, const FlashModel& model) {
  if (cfg.boundary_scheme == "hard") return hard_only_boundaries(model);
  if (cfg.boundary_scheme == "ratio") return constant_ratio_layout(model, cfg.ratio);
  if (cfg.boundary_scheme == "smmi") return practical_smmi(model, mapping_for(cfg));
  throw std::invalid_argument("unknown boundary scheme: " + cfg.boundary_scheme);
}

SimResult run_sweep(const SimConfig& cfg) {
  cfg.validate();
  SimResult result;
  result.config = cfg;
  const MappingScheme mapping = mapping_for(cfg);
  const bool is_ldpc = cfg.decoder == "ldpc-bf";
  const long cells = cfg.n / 2;

  PolarCode code;
  QcLdpcCode qc;
  std::vector<int> info_pos;
  if (is_ldpc) {
    qc = construct_qc(cfg.n, cfg.k, cfg.ldpc_circulant, cfg.ldpc_dv, cfg.ldpc_seed);
  } else if (!cfg.frozen_file.empty()) {
    code = load_frozen_set(cfg.n, cfg.frozen_file);
    if (code.info_length != cfg.k)
      throw std::invalid_argument("frozen file does not match configured k");
    info_pos = code.info_positions();
  } else {
    double design = cfg.design_sigma > 0.0 ? cfg.design_sigma
                                           : cfg.sigma_sweep[cfg.sigma_sweep.size() / 2];
    code = construct_code(cfg.n, cfg.k, model_for_sigma(cfg, design), mapping,
                          cfg.construct_trials, cfg.master_seed);
    info_pos = code.info_positions();
  }

  for (std::size_t i = 0; i < cfg.sigma_sweep.size(); ++i) {
    const double sigma = cfg.sigma_sweep[i];
    const FlashModel model = model_for_sigma(cfg, sigma);
    const Boundaries boundaries = boundaries_for(cfg, model);
    const auto t0 = std::chrono::steady_clock::now();

    SweepPoint pt;
    if (is_ldpc) {
      auto frame = [&](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::vector<std::uint8_t> msg(cfg.k);
        for (auto& b : msg) b = static_cast<std::uint8_t>(rng() & 1);
        auto x = encode_ldpc(msg, qc);
        std::vector<double> volts(cells);
        for (long j = 0; j < cells; ++j) {
          int sym = (x[2 * j] << 1) | x[2 * j + 1];
          volts[j] = program_cell(mapping.state_of(sym), model, rng);
        }
        FrameOutcome out;
        std::vector<std::uint8_t> received(cfg.n);
        for (long j = 0; j < cells; ++j) {
          auto [msb, lsb] = binary_llrs(volts[j], boundaries.hard_refs, mapping, &out.sense_ops);
          received[2 * j] = msb == Tc2::minus_one();
          received[2 * j + 1] = lsb == Tc2::minus_one();
        }
        auto dec = bitflip_decode(received, qc, cfg.ldpc_max_iter);
        for (int m = 0; m < cfg.k; ++m)
          out.bit_errors += dec.codeword[qc.message_positions[m]] != msg[m];
        out.frame_error = out.bit_errors > 0;
        return out;
      };
      pt = run_point(cfg, i, cfg.k, cells, frame);
      pt.decoder = cfg.decoder;
    } else {
      DecoderKind kind;
      std::string label = cfg.decoder;
      if (cfg.decoder == "precheck") {
        PrecheckThresholds thr{cfg.t_binary_max, cfg.t_quantized_max};
        kind = select_decoder(raw_error_probability(model).state_error_rate, thr);
        label += "(" + to_string(kind) + ")";
      } else {
        kind = parse_kind(cfg.decoder);
      }
      auto frame = [&](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::vector<std::uint8_t> u(cfg.n, 0);
        for (int p : info_pos) u[p] = static_cast<std::uint8_t>(rng() & 1);
        auto x = encode(u, code);
        std::vector<double> volts(cells);
        for (long j = 0; j < cells; ++j) {
          int sym = (x[2 * j] << 1) | x[2 * j + 1];
          volts[j] = program_cell(mapping.state_of(sym), model, rng);
        }
        auto dec = decode_page_with(kind, volts, model, code, boundaries, mapping);
        FrameOutcome out;
        out.sense_ops = dec.sense_ops;
        for (int p : info_pos) out.bit_errors += dec.u_hat[p] != u[p];
        out.frame_error = out.bit_errors > 0;
        return out;
      };
      pt = run_point(cfg, i, static_cast<long>(info_pos.size()), cells, frame);
      pt.decoder = label;
    }

    pt.sigma = sigma;
    pt.raw_error_prob = raw_error_axis(model);
    pt.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.points.push_back(std::move(pt));
  }
  return result;
}

void write_csv(const SimResult& result, std::ostream& out, bool include_wall) {
  const SimConfig& c = result.config;
  out << std::setprecision(12);
  out << "# n = " << c.n << "\n# k = " << c.k << "\n";
  out << "# means = " << join(c.means) << "\n";
  out << "# sigma_multipliers = " << join(c.sigma_multipliers) << "\n";
  out << "# sigma_sweep = " << join(c.sigma_sweep) << "\n";
  out << "# mapping = " << c.mapping << "\n# decoder = " << c.decoder << "\n";
  out << "# boundary_scheme = " << c.boundary_scheme << "\n# ratio = " << c.ratio << "\n";
  out << "# trials = " << c.trials << "\n# max_frame_errors = " << c.max_frame_errors << "\n";
  out << "# batch_size = " << c.batch_size << "\n# master_seed = " << c.master_seed << "\n";
  out << "# design_sigma = " << c.design_sigma << "\n";
  out << "# construct_trials = " << c.construct_trials << "\n";
  out << "# frozen_file = " << c.frozen_file << "\n";
  out << "# t_binary_max = " << c.t_binary_max << "\n";
  out << "# t_quantized_max = " << c.t_quantized_max << "\n";
  out << "# ldpc_circulant = " << c.ldpc_circulant << "\n# ldpc_dv = " << c.ldpc_dv << "\n";
  out << "# ldpc_max_iter = " << c.ldpc_max_iter << "\n# ldpc_seed = " << c.ldpc_seed << "\n";
  out << "# parallel = " << (c.parallel ? "true" : "false") << "\n";
  out << "sigma,raw_error_prob,decoder,frames,frame_errors,fer,ber,mean_sense_ops,seed\n";
  for (const auto& pt : result.points) {
    out << pt.sigma << ',' << pt.raw_error_prob << ',' << pt.decoder << ',' << pt.frames << ','
        << pt.frame_errors << ',' << pt.fer << ',' << pt.ber << ',' << pt.mean_sense_ops << ','
        << pt.seed << '\n';
  }
  if (include_wall) {
    out << "# wall_seconds =";
    for (const auto& pt : result.points) out << ' ' << pt.wall_seconds;
    out << '\n';
  }
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  SimConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void apply_override(SimConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n")
    cfg.n = static_cast<int>(to_long(key, value));
  else if (key == "k")
    cfg.k = static_cast<int>(to_long(key, value));
  else if (key == "means")
    cfg.means = to_double4(key, value);
  else if (key == "sigma_multipliers")
    cfg.sigma_multipliers = to_double4(key, value);
  else if (key == "sigma_sweep")
    cfg.sigma_sweep = to_double_list(key, value);
  else if (key == "mapping")
    cfg.mapping = value;
  else if (key == "decoder")
    cfg.decoder = value;
  else if (key == "boundary_scheme")
    cfg.boundary_scheme = value;
  else if (key == "ratio")
    cfg.ratio = to_double(key, value);
  else if (key == "trials")
    cfg.trials = to_long(key, value);
  else if (key == "max_frame_errors")
    cfg.max_frame_errors = to_long(key, value);
  else if (key == "batch_size")
    cfg.batch_size = to_long(key, value);
  else if (key == "master_seed")
    cfg.master_seed = to_u64(key, value);
  else if (key == "design_sigma")
    cfg.design_sigma = to_double(key, value);
  else if (key == "construct_trials")
    cfg.construct_trials = to_long(key, value);
  else if (key == "frozen_file")
    cfg.frozen_file = value;
  else if (key == "t_binary_max")
    cfg.t_binary_max = to_double(key, value);
  else if (key == "t_quantized_max")
    cfg.t_quantized_max = to_double(key, value);
  else if (key == "ldpc_circulant")
    cfg.ldpc_circulant = static_cast<int>(to_long(key, value));
  else if (key == "ldpc_dv")
    cfg.ldpc_dv = static_cast<int>(to_long(key, value));
  else if (key == "ldpc_max_iter")
    cfg.ldpc_max_iter = static_cast<int>(to_long(key, value));
  else if (key == "ldpc_seed")
    cfg.ldpc_seed = to_u64(key, value);
  else if (key == "parallel")
    cfg.parallel = to_bool(key, value);
  else
    throw std::invalid_argument("unknown config key: " + key);
}

}  // namespace flashpolar
