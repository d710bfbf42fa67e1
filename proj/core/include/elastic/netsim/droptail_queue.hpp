#pragma once

#include <cstddef>
#include <deque>
#include <optional>

#include "elastic/netsim/packet.hpp"

namespace elastic::netsim {

enum class EnqueueResult : std::uint8_t { Accepted, Dropped };

// FIFO buffer that discards arrivals once `capacity` packets are waiting.
// The packet currently being serialized is not counted.
class DropTailQueue {
 public:
  explicit DropTailQueue(std::size_t capacity);

  EnqueueResult enqueue(const Packet& packet);
  std::optional<Packet> dequeue();

  std::size_t occupancy() const noexcept { return packets_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t max_occupancy() const noexcept { return max_occupancy_; }
  std::uint64_t drops() const noexcept { return drops_; }
  bool empty() const noexcept { return packets_.empty(); }

  auto begin() const { return packets_.begin(); }
  auto end() const { return packets_.end(); }

 private:
  std::size_t capacity_;
  std::size_t max_occupancy_ = 0;
  std::uint64_t drops_ = 0;
  std::deque<Packet> packets_;
};

}  // namespace elastic::netsim
