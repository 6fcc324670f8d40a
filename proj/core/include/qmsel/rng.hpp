#pragma once

#include <cstdint>
#include <random>

namespace qmsel {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Named sub-streams of one replication.
enum class Stream : std::uint64_t {
  train_design = 1,
  train_noise = 2,
  test_design = 3,
  test_noise = 4,
  screen_permutation = 5,
  diagnostic_noise = 6,
  diagnostic_design = 7,
};

/// Seed for (master, replication, stream, column). Each argument passes
/// through the mixer so neighbouring inputs give unrelated seeds.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t rep, Stream stream,
                                    std::uint64_t column = 0) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ rep);
  h = mix64(h ^ static_cast<std::uint64_t>(stream));
  h = mix64(h ^ column);
  return h;
}

using Engine = std::mt19937_64;

}  // namespace qmsel
