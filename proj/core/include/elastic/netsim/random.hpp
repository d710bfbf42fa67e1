#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace elastic::netsim {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// FNV-1a, used to turn stream labels into stream ids.
std::uint64_t fnv1a64(std::string_view text) noexcept;

// Seed for an independent sub-stream: splitmix64(base ^ splitmix64(stream)).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

// mt19937_64 with a hand-rolled uniform mapping. The engine's output is
// fixed by the standard; the library distributions are not, so they are
// avoided to keep traces identical across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

// True (drop) with probability `per`. Always draws once so that per=0 and
// per>0 runs consume their streams identically.
bool maybe_drop_error(RandomStream& rng, double per) noexcept;

}  // namespace elastic::netsim
