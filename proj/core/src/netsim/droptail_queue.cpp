#include "elastic/netsim/droptail_queue.hpp"

#include <algorithm>
#include <stdexcept>

namespace elastic::netsim {

DropTailQueue::DropTailQueue(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("droptail queue capacity must be >= 1");
}

EnqueueResult DropTailQueue::enqueue(const Packet& packet) {
  if (packets_.size() >= capacity_) {
    ++drops_;
    return EnqueueResult::Dropped;
  }
  packets_.push_back(packet);
  max_occupancy_ = std::max(max_occupancy_, packets_.size());
  return EnqueueResult::Accepted;
}

std::optional<Packet> DropTailQueue::dequeue() {
  if (packets_.empty()) return std::nullopt;
  Packet p = packets_.front();
  packets_.pop_front();
  return p;
}

}  // namespace elastic::netsim
