#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace elastic::netsim {

// Simulated time in integer nanoseconds. Integer ticks keep event ordering
// exact; seconds appear only at the edges.
class SimTime {
 public:
  constexpr SimTime() = default;
  constexpr explicit SimTime(std::int64_t ns) : ns_(ns) {}

  static SimTime from_seconds(double s) { return SimTime(std::llround(s * 1e9)); }

  constexpr std::int64_t ns() const noexcept { return ns_; }
  constexpr double seconds() const noexcept { return static_cast<double>(ns_) * 1e-9; }

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime& operator+=(SimTime other) noexcept {
    ns_ += other.ns_;
    return *this;
  }
  friend constexpr SimTime operator+(SimTime a, SimTime b) noexcept { return SimTime(a.ns_ + b.ns_); }
  friend constexpr SimTime operator-(SimTime a, SimTime b) noexcept { return SimTime(a.ns_ - b.ns_); }

 private:
  std::int64_t ns_ = 0;
};

}  // namespace elastic::netsim
