#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace plenoptic {

using Engine = std::mt19937_64;

/// Seed splitting rule used by every simulator in the library.
///
/// A (master, stream, index) triple is folded through the SplitMix64
/// finalizer, so each trial or chunk owns an independent engine and the
/// result of a run does not depend on how work is scheduled.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index = 0) {
  return splitmix64(splitmix64(splitmix64(master) ^ stream) + index);
}

inline Engine make_engine(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0) {
  return Engine(derive_seed(master, stream, index));
}

// Stream identifiers. Keeping them in one place avoids accidental reuse.
namespace streams {
inline constexpr std::uint64_t walk = 0x57414c4bULL;
inline constexpr std::uint64_t wall = 0x57414c4cULL;
inline constexpr std::uint64_t field = 0x4649454cULL;
inline constexpr std::uint64_t detect = 0x44455445ULL;
inline constexpr std::uint64_t codec = 0x434f4445ULL;
inline constexpr std::uint64_t calibration = 0x43414c49ULL;
}  // namespace streams

/// Integer threshold such that `engine() < threshold` has probability p.
inline std::uint64_t bernoulli_threshold(double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(std::ldexp(p, 64));
}

/// Fixed-size chunking of `count` trials. Chunk c always covers the same
/// trial indices, so per-chunk engines make results thread-count independent.
inline constexpr std::uint64_t kTrialsPerChunk = 1u << 14;

inline std::uint64_t chunk_count(std::uint64_t trials) {
  return (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
}

/// Runs `fn(chunk_index, first_trial, n_trials)` for every chunk and returns
/// the per-chunk results in chunk order.
template <typename Result, typename Fn>
std::vector<Result> run_chunks(std::uint64_t trials, unsigned threads, Fn&& fn) {
  const std::uint64_t chunks = chunk_count(trials);
  std::vector<Result> out(chunks);
  auto body = [&](std::uint64_t c) {
    const std::uint64_t first = c * kTrialsPerChunk;
    const std::uint64_t n = std::min<std::uint64_t>(kTrialsPerChunk, trials - first);
    out[c] = fn(c, first, n);
  };
  threads = std::max(1u, threads);
  if (threads == 1 || chunks <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) body(c);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::uint64_t>(threads, chunks); ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t c = next++; c < chunks; c = next++) body(c);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

/// Runs `fn(i)` for i in [0, n) over a small thread pool; each index owns its output.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace plenoptic
