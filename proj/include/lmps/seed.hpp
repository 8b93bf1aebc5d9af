#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lmps {

/// splitmix64 step; advances state.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for a named sub-stream of a root seed, e.g. ("scenario", t).
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream, std::uint64_t index = 0);

inline std::mt19937_64 make_rng(std::uint64_t root, std::string_view stream, std::uint64_t index = 0) {
  return std::mt19937_64(derive_seed(root, stream, index));
}

}  // namespace lmps
