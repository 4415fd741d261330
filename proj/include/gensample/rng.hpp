#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>

namespace gensample {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream for one replica; depends only on (seed, replica).
Rng replica_stream(std::uint64_t seed, std::uint64_t replica);

/// 53-bit uniform in [0,1).
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Index drawn with probability proportional to weights (which sum to ~1).
int draw_categorical(Rng& rng, std::span<const double> weights);

/// Runs body(replica) for replica in [0, count) over `threads` workers.
/// body must only write to per-replica state; callers reduce afterwards.
void for_each_replica(std::uint64_t count, unsigned threads,
                      const std::function<void(std::uint64_t)>& body);

/// Samples are drawn in blocks of this size; block b uses replica_stream(seed, b).
inline constexpr std::uint64_t kSampleBlock = 1024;

/// Calls body(i, rng) for i in [0, samples) with rng positioned for sample i; the draws for a
/// sample depend only on (seed, i), never on the thread count.
void for_each_sample(std::uint64_t samples, std::uint64_t seed, unsigned threads,
                     const std::function<void(std::uint64_t, Rng&)>& body);

}  // namespace gensample
