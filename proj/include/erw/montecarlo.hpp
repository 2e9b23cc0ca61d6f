#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "erw/walk.hpp"

namespace erw {

/// Empirical statistics of S at one checkpoint. stderr_mean is always
/// sqrt(sample_var_s / trials); the histogram (position -> count) is filled
/// only when requested.
struct SimulationSummary {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  double sample_mean_s = 0.0;
  double sample_var_s = 0.0;
  double stderr_mean = 0.0;
  std::map<std::int64_t, std::uint64_t> histogram;
  std::uint64_t seed = 0;
  WalkParams params{Rational(1, 2), Rational(1, 2)};
};

struct SimulationOptions {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> checkpoints;  // strictly increasing, within [1, n]
  unsigned threads = 0;                  // 0 = hardware concurrency
  bool histogram = false;
  std::uint64_t block_size = 4096;
};

namespace detail {

// Online (count, mean, M2) accumulator with Chan's pairwise merge. Trials are
// accumulated in fixed blocks and blocks are merged in index order, so the
// floating-point result is independent of the number of worker threads.
struct Welford {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Welford& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double delta = other.mean - mean;
    const std::uint64_t total = count + other.count;
    mean += delta * (static_cast<double>(other.count) / static_cast<double>(total));
    m2 += other.m2 + delta * delta *
                         (static_cast<double>(count) * static_cast<double>(other.count) /
                          static_cast<double>(total));
    count = total;
  }
};

struct BlockAccumulator {
  std::vector<Welford> stats;                                // per checkpoint
  std::vector<std::map<std::int64_t, std::uint64_t>> hist;   // per checkpoint (optional)
};

}  // namespace detail

inline std::vector<SimulationSummary> run_simulation(const WalkParams& params, std::size_t n,
                                                     const SimulationOptions& options) {
  if (options.trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (options.checkpoints.empty()) throw std::invalid_argument("checkpoints must be nonempty");
  for (std::size_t i = 0; i < options.checkpoints.size(); ++i) {
    const std::size_t c = options.checkpoints[i];
    if (c < 1 || c > n) throw std::invalid_argument("checkpoints must lie in [1, n]");
    if (i > 0 && options.checkpoints[i] <= options.checkpoints[i - 1])
      throw std::invalid_argument("checkpoints must be strictly increasing");
  }
  if (options.block_size == 0) throw std::invalid_argument("block size must be >= 1");

  const std::size_t horizon = options.checkpoints.back();
  const std::size_t num_checkpoints = options.checkpoints.size();
  const std::uint64_t block_size = options.block_size;
  const std::uint64_t num_blocks = (options.trials + block_size - 1) / block_size;

  std::vector<detail::BlockAccumulator> blocks(num_blocks);
  auto run_block = [&](std::uint64_t block) {
    detail::BlockAccumulator& acc = blocks[block];
    acc.stats.resize(num_checkpoints);
    if (options.histogram) acc.hist.resize(num_checkpoints);
    const std::uint64_t first = block * block_size;
    const std::uint64_t last = std::min(options.trials, first + block_size);
    for (std::uint64_t trial = first; trial < last; ++trial) {
      TrajectorySampler sampler(params, options.seed, trial);
      std::size_t next_checkpoint = 0;
      for (std::size_t step = 1; step <= horizon; ++step) {
        sampler.advance();
        if (step == options.checkpoints[next_checkpoint]) {
          const auto s = sampler.position();
          acc.stats[next_checkpoint].add(static_cast<double>(s));
          if (options.histogram) ++acc.hist[next_checkpoint][s];
          ++next_checkpoint;
        }
      }
    }
  };

  unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, num_blocks));
  if (workers <= 1) {
    for (std::uint64_t block = 0; block < num_blocks; ++block) run_block(block);
  } else {
    std::atomic<std::uint64_t> next_block{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t block; (block = next_block.fetch_add(1)) < num_blocks;)
          run_block(block);
      });
    }
    for (auto& t : pool) t.join();
  }

  // deterministic merge in block order
  std::vector<SimulationSummary> summaries(num_checkpoints);
  for (std::size_t c = 0; c < num_checkpoints; ++c) {
    detail::Welford total;
    std::map<std::int64_t, std::uint64_t> hist;
    for (std::uint64_t block = 0; block < num_blocks; ++block) {
      total.merge(blocks[block].stats[c]);
      if (options.histogram)
        for (const auto& [pos, count] : blocks[block].hist[c]) hist[pos] += count;
    }
    SimulationSummary& out = summaries[c];
    out.n = options.checkpoints[c];
    out.trials = total.count;
    out.sample_mean_s = total.mean;
    out.sample_var_s = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
    out.stderr_mean = std::sqrt(out.sample_var_s / static_cast<double>(total.count));
    out.histogram = std::move(hist);
    out.seed = options.seed;
    out.params = params;
  }
  return summaries;
}

inline std::vector<SimulationSummary> run_simulation(const WalkParams& params, std::size_t n,
                                                     std::uint64_t trials, std::uint64_t seed,
                                                     std::vector<std::size_t> checkpoints,
                                                     unsigned threads = 0) {
  SimulationOptions options;
  options.trials = trials;
  options.seed = seed;
  options.checkpoints = std::move(checkpoints);
  options.threads = threads;
  return run_simulation(params, n, options);
}

}  // namespace erw
