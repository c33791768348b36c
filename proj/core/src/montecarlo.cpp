#include "lgfdm/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "lgfdm/oracle.hpp"

namespace lgfdm {

std::string to_token(ChannelModel m) {
  return m == ChannelModel::awgn ? "awgn" : "rayleigh";
}

std::string to_token(ReceiverMode m) {
  return m == ReceiverMode::combined ? "combined" : "genie";
}

std::vector<double> SweepRange::values() const {
  validate();
  std::vector<double> v;
  for (double x = start; x <= stop + 1e-9; x += step) v.push_back(x);
  return v;
}

void SweepRange::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("ebn0 sweep: step must be > 0");
  if (start > stop) throw std::invalid_argument("ebn0 sweep: start exceeds stop");
}

void SimulationConfig::validate() const {
  waveform.validate();
  ebn0.validate();
  if (taus.empty()) throw std::invalid_argument("config: tau list is empty");
  for (int t : taus)
    if (t < 1) throw std::invalid_argument("config: tau values must be >= 1");
  if (min_bit_errors < 1) throw std::invalid_argument("config: min_bit_errors must be >= 1");
  if (max_frames < 1) throw std::invalid_argument("config: max_frames must be >= 1");
  if (threads < 0) throw std::invalid_argument("config: negative thread count");
}

namespace {

struct PointContext {
  const SimulationConfig* config;
  int tau = 1;
  int point_index = 0;
  double sigma2 = 0.0;
  SymbolAlphabet alphabet;
  ModulationMatrix a_i, a_q;
};

struct FrameOutcome {
  long bit_errors = 0;
  std::uint64_t multiplications = 0;
};

FrameOutcome simulate_frame(const PointContext& ctx, long frame_index) {
  const SimulationConfig& cfg = *ctx.config;
  Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(ctx.point_index),
                           static_cast<std::uint64_t>(frame_index));

  const std::vector<int> bits = rng.bits(cfg.waveform.frame_bits());
  const DataFrame frame = map_bits(bits, ctx.alphabet, cfg.waveform);
  const TransmitSignal x = modulate_linear_gfdm(frame, ctx.a_i, ctx.a_q);

  ChannelRealization ch = cfg.channel == ChannelModel::rayleigh
                              ? draw_flat_rayleigh(rng, x.samples.size())
                              : awgn_channel(x.samples.size());
  ch.noise_variance = ctx.sigma2;

  const EquivalentMatrices eq = equivalent_matrices(ch.h, ctx.a_i, ctx.a_q);

  SpaResult res;
  if (cfg.mode == ReceiverMode::combined) {
    const ReceivedSignal y = apply_channel(x, ch, rng);
    res = run_spa(y, eq, ctx.alphabet, ctx.tau);
  } else {
    const ReceivedSignal y_i = apply_channel(std::span<const cplx>(x.in_phase), ch, rng);
    const ReceivedSignal y_q = apply_channel(std::span<const cplx>(x.quadrature), ch, rng);
    res = run_spa_separated(y_i, y_q, eq, ctx.alphabet, ctx.tau);
  }

  const DataFrame decided = map_decide(res.in_phase, res.quadrature, ctx.alphabet);

  FrameOutcome out;
  out.multiplications = res.multiplications;
  for (std::size_t b = 0; b < bits.size(); ++b)
    out.bit_errors += bits[b] != decided.source_bits[b];
  return out;
}

PointContext make_context(const SimulationConfig& cfg, double ebn0_db, int tau,
                          int point_index) {
  PointContext ctx;
  ctx.config = &cfg;
  ctx.tau = tau;
  ctx.point_index = point_index;
  ctx.sigma2 = ebn0_db_to_sigma2(ebn0_db, cfg.waveform);
  ctx.alphabet = make_qam_alphabet(cfg.waveform.mod_order);
  auto [a_i, a_q] = linear_gfdm_matrices(cfg.waveform);
  ctx.a_i = std::move(a_i);
  ctx.a_q = std::move(a_q);
  return ctx;
}

// Fixed batch size keeps the stopping decision independent of thread count.
constexpr long kBatchFrames = 256;

void run_batch(const PointContext& ctx, long first_frame, long count, int threads,
               std::vector<long>& errors_out) {
  errors_out.assign(count, 0);
  const int workers = static_cast<int>(std::max<long>(1, std::min<long>(threads, count)));
  if (workers == 1) {
    for (long j = 0; j < count; ++j)
      errors_out[j] = simulate_frame(ctx, first_frame + j).bit_errors;
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (long j = w; j < count; j += workers)
        errors_out[j] = simulate_frame(ctx, first_frame + j).bit_errors;
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

BerRecord run_point(const SimulationConfig& config, double ebn0_db, int tau,
                    int point_index) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const PointContext ctx = make_context(config, ebn0_db, tau, point_index);
  const int threads = config.threads > 0
                          ? config.threads
                          : std::max(1u, std::thread::hardware_concurrency());

  long frames = 0;
  long errors = 0;
  std::vector<long> batch_errors;
  while (frames < config.max_frames && errors < config.min_bit_errors) {
    const long todo = std::min(kBatchFrames, config.max_frames - frames);
    run_batch(ctx, frames, todo, threads, batch_errors);
    for (long j = 0; j < todo; ++j) {
      errors += batch_errors[j];
      ++frames;
      if (errors >= config.min_bit_errors) break;
    }
  }

  BerRecord rec;
  rec.channel = config.channel;
  rec.ebn0_db = ebn0_db;
  rec.tau = tau;
  rec.mode = config.mode;
  rec.frames = frames;
  rec.bit_errors = errors;
  rec.ber = static_cast<double>(errors) /
            (static_cast<double>(frames) * config.waveform.frame_bits());
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::vector<BerRecord> run_sweep(const SimulationConfig& config) {
  config.validate();
  std::vector<BerRecord> records;
  int point_index = 0;
  for (double ebn0 : config.ebn0.values())
    for (int tau : config.taus)
      records.push_back(run_point(config, ebn0, tau, point_index++));
  return records;
}

namespace {

void atomic_write(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open output file: " + tmp);
    os << body;
    if (!os) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename output into place: " + path);
}

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

void write_ber_csv(const std::string& path, std::span<const BerRecord> records) {
  std::string body = "channel,ebn0_db,tau,mode,frames,bit_errors,ber,wall_seconds\n";
  for (const BerRecord& r : records) {
    body += to_token(r.channel);
    body += ',' + format_double(r.ebn0_db, "%g");
    body += ',' + std::to_string(r.tau);
    body += ',' + to_token(r.mode);
    body += ',' + std::to_string(r.frames);
    body += ',' + std::to_string(r.bit_errors);
    body += ',' + format_double(r.ber, "%.9e");
    body += ',' + format_double(r.wall_seconds, "%.3f");
    body += '\n';
  }
  atomic_write(path, body);
}

void write_theory_csv(const std::string& path, ChannelModel channel,
                      const SweepRange& ebn0) {
  const TheoryChannel tc = channel == ChannelModel::awgn
                               ? TheoryChannel::awgn_qpsk
                               : TheoryChannel::rayleigh_qpsk;
  const std::vector<double> grid = ebn0.values();
  const TheoryCurve curve = theory_curve(tc, grid);
  std::string body = "channel,ebn0_db,pb\n";
  for (const auto& [db, pb] : curve.points) {
    body += to_token(channel);
    body += ',' + format_double(db, "%g");
    body += ',' + format_double(pb, "%.9e");
    body += '\n';
  }
  atomic_write(path, body);
}

void write_complexity_csv(const std::string& path, const SimulationConfig& config) {
  config.validate();
  std::string body = "K,M,J,tau,formula_count,measured_multiplications\n";
  for (int tau : config.taus) {
    const std::int64_t formula = complexity_estimate(config.waveform, tau);
    // One deterministic probe frame supplies the measured count.
    PointContext ctx = make_context(config, 10.0, tau, 0x7fffffff);
    const FrameOutcome probe = simulate_frame(ctx, 0);
    body += std::to_string(config.waveform.subcarriers);
    body += ',' + std::to_string(config.waveform.subsymbols);
    body += ',' + std::to_string(config.waveform.mod_order);
    body += ',' + std::to_string(tau);
    body += ',' + std::to_string(formula);
    body += ',' + std::to_string(probe.multiplications);
    body += '\n';
  }
  atomic_write(path, body);
}

}  // namespace lgfdm
