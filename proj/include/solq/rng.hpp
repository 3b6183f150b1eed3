#pragma once

#include <cstdint>
#include <random>

namespace solq {

// Deterministic substream derivation: every Monte-Carlo entity (trial, path,
// sample block) gets its own generator seeded from (seed, domain tag, index).
// Results are then independent of scheduling and worker count.
namespace stream_tag {
inline constexpr std::uint64_t trial = 0x74726961ull;      // ensemble trials
inline constexpr std::uint64_t brownian = 0x62726f77ull;   // wiener paths
inline constexpr std::uint64_t phase = 0x70686173ull;      // global soliton phases
inline constexpr std::uint64_t dichotomic = 0x64696368ull; // qubit sample blocks
inline constexpr std::uint64_t signal = 0x7369676eull;     // register init signal
} // namespace stream_tag

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index)
        : gen_(splitmix64(splitmix64(seed ^ tag) + index)) {}

    explicit RngStream(std::uint64_t raw_seed) : gen_(raw_seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double normal() { return normal_(gen_); }
    std::uint64_t bits() { return gen_(); }

    std::mt19937_64& engine() { return gen_; }

  private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace solq
