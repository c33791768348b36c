#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lgfdm/channel.hpp"
#include "lgfdm/spa.hpp"
#include "lgfdm/waveform.hpp"

namespace lgfdm {

enum class ChannelModel { awgn, rayleigh };
enum class ReceiverMode { combined, genie_separated };

std::string to_token(ChannelModel m);
std::string to_token(ReceiverMode m);

struct SweepRange {
  double start = 0.0;
  double step = 1.0;
  double stop = 0.0;

  std::vector<double> values() const;
  void validate() const;
};

struct SimulationConfig {
  WaveformParams waveform{};
  ChannelModel channel = ChannelModel::awgn;
  SweepRange ebn0{};
  std::vector<int> taus{1};
  ReceiverMode mode = ReceiverMode::combined;
  long min_bit_errors = 200;
  long max_frames = 10'000'000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct BerRecord {
  ChannelModel channel = ChannelModel::awgn;
  double ebn0_db = 0.0;
  int tau = 1;
  ReceiverMode mode = ReceiverMode::combined;
  long frames = 0;
  long bit_errors = 0;
  double ber = 0.0;
  double wall_seconds = 0.0;
};

/// One Monte Carlo point. Frames draw RNG substreams from
/// (seed, point_index, frame_index), so results do not depend on thread
/// count; the run stops at the first frame where the cumulative error
/// count reaches min_bit_errors, or at max_frames.
BerRecord run_point(const SimulationConfig& config, double ebn0_db, int tau,
                    int point_index);

/// One record per (Eb/N0 value, tau); point_index counts in that order.
std::vector<BerRecord> run_sweep(const SimulationConfig& config);

/// CSV emission; files are written to a temporary path and renamed.
void write_ber_csv(const std::string& path, std::span<const BerRecord> records);
void write_theory_csv(const std::string& path, ChannelModel channel,
                      const SweepRange& ebn0);
void write_complexity_csv(const std::string& path, const SimulationConfig& config);

}  // namespace lgfdm
