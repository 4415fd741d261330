#include "gensample/rng.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace gensample {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng replica_stream(std::uint64_t seed, std::uint64_t replica) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(replica + 0x5851f42d4c957f2dULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

int draw_categorical(Rng& rng, std::span<const double> weights) {
  const double u = uniform01(rng);
  double acc = 0.0;
  int last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last = static_cast<int>(i);
    if (u < acc) return last;
  }
  return last;  // rounding: u landed past the accumulated total
}

void for_each_replica(std::uint64_t count, unsigned threads,
                      const std::function<void(std::uint64_t)>& body) {
  threads = std::max(1U, threads);
  if (threads == 1 || count < 2) {
    for (std::uint64_t r = 0; r < count; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = t * chunk;
    const std::uint64_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] {
      for (std::uint64_t r = lo; r < hi; ++r) body(r);
    });
  }
  for (auto& th : pool) th.join();
}

void for_each_sample(std::uint64_t samples, std::uint64_t seed, unsigned threads,
                     const std::function<void(std::uint64_t, Rng&)>& body) {
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  for_each_replica(blocks, threads, [&](std::uint64_t b) {
    Rng rng = replica_stream(seed, b);
    const std::uint64_t hi = std::min(samples, (b + 1) * kSampleBlock);
    for (std::uint64_t i = b * kSampleBlock; i < hi; ++i) body(i, rng);
  });
}

}  // namespace gensample
