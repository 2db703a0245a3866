#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace netevo {

using Rng = std::mt19937_64;

// Independent streams per seed. Placement and evolution never share a stream.
enum class Stream : std::uint32_t { Placement = 0, Evolution = 1 };

inline Rng make_rng(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return Rng(seq);
}

inline bool coin(Rng& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return std::bernoulli_distribution(p)(rng);
}

template <class Int>
Int uniform_index(Rng& rng, Int n) {
    return std::uniform_int_distribution<Int>(0, n - 1)(rng);
}

std::string save_rng(const Rng& rng);
Rng load_rng(const std::string& text);

}  // namespace netevo
