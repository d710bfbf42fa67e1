#include "elastic/netsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>

#include "elastic/errors.hpp"
#include "elastic/netsim/droptail_queue.hpp"
#include "elastic/netsim/event_queue.hpp"
#include "elastic/netsim/link.hpp"
#include "elastic/netsim/random.hpp"

namespace elastic::netsim {

const FlowTrace& RunTrace::flow(FlowId id) const {
  for (const auto& f : flows) {
    if (f.schedule.id == id) return f;
  }
  throw std::out_of_range("no flow with id " + std::to_string(id));
}

namespace {

constexpr double kInitialRtoS = 1.0;
constexpr double kMinRtoS = 0.2;
constexpr double kMaxRtoS = 60.0;
constexpr int kMaxBackoff = 16;

// Packet::flow holds the sender index inside the simulation; schedule ids
// are only used in the emitted trace.
struct EvFlowStart { std::size_t flow; };
struct EvFlowStop { std::size_t flow; };
struct EvPortArrival { std::size_t port; Packet packet; };
struct EvTxDone { std::size_t port; };
struct EvReceive { Packet packet; };
struct EvAckArrival { Packet ack; };
struct EvRto { std::size_t flow; std::uint64_t token; };
struct EvTrace {};

using Event = std::variant<EvFlowStart, EvFlowStop, EvPortArrival, EvTxDone, EvReceive,
                           EvAckArrival, EvRto, EvTrace>;

struct Port {
  Port(const LinkConfig& cfg, bool bottleneck)
      : config(cfg), tx(cfg.rate_bps, cfg.prop_delay_s), queue(cfg.queue_capacity),
        is_bottleneck(bottleneck) {}

  LinkConfig config;
  Transmitter tx;
  DropTailQueue queue;
  std::optional<Packet> in_service;
  bool is_bottleneck;
};

struct Receiver {
  std::int64_t rcv_nxt = 0;
  std::set<std::int64_t> out_of_order;
};

struct Sender {
  FlowSchedule schedule;
  std::unique_ptr<cca::CongestionControl> cca;
  cca::CcaState state;
  bool active = false;

  std::int64_t snd_una = 0;
  std::int64_t snd_nxt = 0;
  std::int64_t high_tx = 0;  // one past the highest sequence ever sent

  int dup_acks = 0;
  bool in_recovery = false;
  std::int64_t recover = 0;
  // Segments known to have left the network (one per duplicate ACK); the
  // send permit counts outstanding minus these.
  std::int64_t left_network = 0;
  // After a timeout, duplicates below this point come from go-back-N
  // resends and do not start a new fast retransmit.
  std::int64_t fr_guard = 0;

  bool have_srtt = false;
  double srtt = 0.0;
  double rttvar = 0.0;
  double rto_s = kInitialRtoS;
  int backoff = 0;

  bool timer_armed = false;
  SimTime rto_deadline{};
  bool timer_live = false;
  SimTime timer_live_at{};
  std::uint64_t timer_token = 0;

  std::int64_t rounds = 0;
  std::int64_t round_end = 0;
  double first_send_s = -1.0;

  FlowCounters counters;
};

class Simulation {
 public:
  Simulation(const ScenarioConfig& config, const cca::CcaRegistry& registry)
      : config_(config),
        end_(SimTime::from_seconds(config.duration_s)),
        error_rng_(derive_seed(config.seed, fnv1a64("bottleneck/per"))) {
    const std::size_t n = config.flows.size();
    ports_.reserve(2 * n + 1);
    for (std::size_t i = 0; i < n; ++i) ports_.emplace_back(config.access_link, false);
    ports_.emplace_back(config.bottleneck, true);
    for (std::size_t i = 0; i < n; ++i) ports_.emplace_back(config.access_link, false);

    receivers_.resize(n);
    senders_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      senders_[i].schedule = config.flows[i];
      senders_[i].cca = registry.create(config.flows[i].cca, config.cca_options);
      senders_[i].state = senders_[i].cca->initial_state();
    }

    const auto& a = config.access_link;
    const auto& b = config.bottleneck;
    path_prop_ = SimTime::from_seconds(a.prop_delay_s) + SimTime::from_seconds(b.prop_delay_s) +
                 SimTime::from_seconds(a.prop_delay_s);
    // Reverse path: propagation plus ACK serialization, no queueing.
    ack_delay_ = path_prop_ + serialization_time(a.rate_bps, config.ack_size_bytes) +
                 serialization_time(b.rate_bps, config.ack_size_bytes) +
                 serialization_time(a.rate_bps, config.ack_size_bytes);
    trace_interval_ = SimTime::from_seconds(config.trace_interval_s);
  }

  RunTrace run() {
    for (std::size_t i = 0; i < senders_.size(); ++i) {
      events_.push(SimTime::from_seconds(senders_[i].schedule.start_s), EvFlowStart{i});
      events_.push(SimTime::from_seconds(senders_[i].schedule.stop_s), EvFlowStop{i});
    }
    events_.push(SimTime(0), EvTrace{});

    while (!events_.empty() && events_.top().time <= end_) {
      auto entry = events_.pop();
      now_ = entry.time;
      ++events_processed_;
      std::visit([this](auto& ev) { handle(ev); }, entry.payload);
    }
    return finish();
  }

 private:
  std::size_t flow_count() const noexcept { return senders_.size(); }
  std::size_t bottleneck_port() const noexcept { return flow_count(); }

  // ---- links -------------------------------------------------------------

  void arrive_at_port(std::size_t port_index, const Packet& packet) {
    Port& port = ports_[port_index];
    if (!port.in_service) {
      start_service(port_index, packet);
      return;
    }
    if (port.queue.enqueue(packet) == EnqueueResult::Dropped) {
      ++senders_[packet.flow].counters.qdrop_pkts;
    }
  }

  void start_service(std::size_t port_index, const Packet& packet) {
    Port& port = ports_[port_index];
    port.in_service = packet;
    const auto slot = port.tx.transmit(packet.size_bytes, now_);
    events_.push(slot.finish, EvTxDone{port_index});
  }

  void handle(const EvTxDone& ev) {
    Port& port = ports_[ev.port];
    const Packet packet = *port.in_service;
    port.in_service.reset();
    const SimTime delivery = now_ + port.tx.propagation();

    bool lost = false;
    if (port.is_bottleneck) {
      bottleneck_bits_ += static_cast<std::uint64_t>(packet.size_bytes) * 8U;
      // Corruption is decided once the packet has used the link.
      if (packet.kind == PacketKind::Data &&
          maybe_drop_error(error_rng_, port.config.per)) {
        ++senders_[packet.flow].counters.edrop_pkts;
        lost = true;
      }
    }
    if (!lost) {
      if (ev.port < flow_count()) {
        events_.push(delivery, EvPortArrival{bottleneck_port(), packet});
      } else if (ev.port == bottleneck_port()) {
        events_.push(delivery, EvPortArrival{bottleneck_port() + 1 + packet.flow, packet});
      } else {
        events_.push(delivery, EvReceive{packet});
      }
    }
    if (auto next = port.queue.dequeue()) start_service(ev.port, *next);
  }

  void handle(const EvPortArrival& ev) { arrive_at_port(ev.port, ev.packet); }

  // ---- receiver ----------------------------------------------------------

  void handle(const EvReceive& ev) {
    const Packet& data = ev.packet;
    Sender& s = senders_[data.flow];
    Receiver& r = receivers_[data.flow];
    ++s.counters.recv_pkts;
    min_slack_ = std::min(min_slack_, (now_ - data.sent_at - path_prop_).ns());

    if (data.seq == r.rcv_nxt) {
      ++s.counters.goodput_pkts;
      ++r.rcv_nxt;
      auto it = r.out_of_order.begin();
      while (it != r.out_of_order.end() && *it == r.rcv_nxt) {
        it = r.out_of_order.erase(it);
        ++r.rcv_nxt;
      }
    } else if (data.seq > r.rcv_nxt) {
      if (r.out_of_order.insert(data.seq).second) ++s.counters.goodput_pkts;
    }

    Packet ack;
    ack.id = next_packet_id_++;
    ack.flow = data.flow;
    ack.kind = PacketKind::Ack;
    ack.seq = r.rcv_nxt;
    ack.size_bytes = config_.ack_size_bytes;
    ack.sent_at = data.sent_at;
    ack.retransmission = data.retransmission;
    events_.push(now_ + ack_delay_, EvAckArrival{ack});
  }

  // ---- sender ------------------------------------------------------------

  void deliver(Sender& s, const cca::CcaEvent& event) { s.state = s.cca->on_event(s.state, event); }

  double effective_rto(const Sender& s) const {
    return std::min(s.rto_s * std::ldexp(1.0, s.backoff), kMaxRtoS);
  }

  void arm_timer(Sender& s, std::size_t index) {
    s.timer_armed = true;
    s.rto_deadline = now_ + SimTime::from_seconds(effective_rto(s));
    // A live wake-up that is due no later than the deadline re-arms itself;
    // only schedule when the deadline moved earlier.
    if (!s.timer_live || s.timer_live_at > s.rto_deadline) {
      ++s.timer_token;
      s.timer_live = true;
      s.timer_live_at = s.rto_deadline;
      events_.push(s.rto_deadline, EvRto{index, s.timer_token});
    }
  }

  void send_segment(Sender& s, std::size_t index, std::int64_t seq) {
    Packet p;
    p.id = next_packet_id_++;
    p.flow = static_cast<FlowId>(index);
    p.kind = PacketKind::Data;
    p.seq = seq;
    p.size_bytes = config_.packet_size_bytes;
    p.sent_at = now_;
    p.retransmission = seq < s.high_tx;
    if (s.counters.sent_pkts == 0) s.first_send_s = now_.seconds();
    ++s.counters.sent_pkts;
    if (p.retransmission) ++s.counters.retransmissions;
    s.high_tx = std::max(s.high_tx, seq + 1);
    if (!s.timer_armed) arm_timer(s, index);
    arrive_at_port(index, p);
  }

  void try_send(Sender& s, std::size_t index) {
    if (!s.active) return;
    std::int64_t allowed = cca::allowed_in_flight(s.state);
    if (config_.max_window > 0) allowed = std::min(allowed, config_.max_window);
    while (true) {
      const std::int64_t pipe = std::max<std::int64_t>(0, (s.snd_nxt - s.snd_una) - s.left_network);
      if (pipe >= allowed) break;
      send_segment(s, index, s.snd_nxt);
      ++s.snd_nxt;
    }
  }

  void sample_rtt(Sender& s, double sample) {
    s.counters.rtt_sum_s += sample;
    ++s.counters.rtt_samples;
    if (!s.have_srtt) {
      s.have_srtt = true;
      s.srtt = sample;
      s.rttvar = sample / 2.0;
    } else {
      s.rttvar = 0.75 * s.rttvar + 0.25 * std::abs(s.srtt - sample);
      s.srtt = 0.875 * s.srtt + 0.125 * sample;
    }
    // The floor bounds the variance term, so a queue-inflated RTT alone
    // cannot push the deadline onto the next ACK.
    s.rto_s = std::min(s.srtt + std::max(4.0 * s.rttvar, kMinRtoS), kMaxRtoS);
  }

  void record_loss(const Sender& s, cca::LossSignal signal, double before) {
    losses_.push_back(LossRecord{now_.seconds(), s.schedule.id, signal, before, s.state.cwnd,
                                 s.rounds});
  }

  void on_new_ack(Sender& s, std::size_t index, const Packet& ack) {
    const std::int64_t acked = ack.seq - s.snd_una;
    s.snd_una = ack.seq;
    s.snd_nxt = std::max(s.snd_nxt, s.snd_una);
    s.high_tx = std::max(s.high_tx, s.snd_una);

    if (!ack.retransmission) sample_rtt(s, (now_ - ack.sent_at).seconds());
    if (s.snd_una >= s.round_end) {
      ++s.rounds;
      s.round_end = s.snd_nxt;
    }

    s.dup_acks = 0;
    if (s.in_recovery && s.snd_una < s.recover) {
      // Partial ACK: the next hole is lost too.
      s.left_network = std::max<std::int64_t>(0, s.left_network - (acked - 1));
      send_segment(s, index, s.snd_una);
    } else {
      s.in_recovery = false;
      s.left_network = 0;
    }

    s.backoff = 0;
    if (s.snd_una < s.snd_nxt) {
      arm_timer(s, index);
    } else {
      s.timer_armed = false;
    }

    deliver(s, cca::AckNew{.send_time = ack.sent_at.seconds(),
                           .now = now_.seconds(),
                           .acked = static_cast<int>(std::min<std::int64_t>(acked, 1 << 30)),
                           .rtt_sample = !ack.retransmission});
  }

  void on_dup_ack(Sender& s, std::size_t index) {
    ++s.dup_acks;
    const std::int64_t outstanding = s.snd_nxt - s.snd_una;
    s.left_network = std::min<std::int64_t>(s.left_network + 1, outstanding);
    if (s.in_recovery || s.snd_una < s.fr_guard) return;

    const double before = s.state.cwnd;
    deliver(s, cca::AckDup{s.dup_acks});
    if (s.dup_acks == cca::kDupAckThreshold) {
      s.in_recovery = true;
      s.recover = s.snd_nxt;
      ++s.counters.fast_retransmits;
      record_loss(s, cca::LossSignal::TripleDupAck, before);
      send_segment(s, index, s.snd_una);
      // The timer now covers the retransmitted head segment.
      arm_timer(s, index);
    }
  }

  void handle(const EvAckArrival& ev) {
    const std::size_t index = ev.ack.flow;
    Sender& s = senders_[index];
    if (!s.active) return;
    if (ev.ack.seq > s.snd_una) {
      on_new_ack(s, index, ev.ack);
    } else if (ev.ack.seq == s.snd_una && s.snd_nxt > s.snd_una) {
      on_dup_ack(s, index);
    }
    try_send(s, index);
  }

  void handle(const EvRto& ev) {
    Sender& s = senders_[ev.flow];
    if (ev.token != s.timer_token || !s.timer_live) return;
    s.timer_live = false;
    if (!s.active || !s.timer_armed) return;
    if (now_ < s.rto_deadline) {
      ++s.timer_token;
      s.timer_live = true;
      s.timer_live_at = s.rto_deadline;
      events_.push(s.rto_deadline, EvRto{ev.flow, s.timer_token});
      return;
    }
    s.timer_armed = false;
    if (s.snd_una >= s.snd_nxt) return;

    ++s.counters.timeouts;
    const double before = s.state.cwnd;
    deliver(s, cca::LossTimeout{});
    record_loss(s, cca::LossSignal::Timeout, before);
    s.in_recovery = false;
    s.dup_acks = 0;
    s.left_network = 0;
    s.fr_guard = s.high_tx;
    s.snd_nxt = s.snd_una;  // go back N
    s.backoff = std::min(s.backoff + 1, kMaxBackoff);
    try_send(s, ev.flow);
  }

  void handle(const EvFlowStart& ev) {
    Sender& s = senders_[ev.flow];
    s.active = true;
    try_send(s, ev.flow);
  }

  void handle(const EvFlowStop& ev) {
    Sender& s = senders_[ev.flow];
    s.active = false;
    s.timer_armed = false;
  }

  void handle(const EvTrace&) {
    for (const auto& s : senders_) {
      if (!s.active) continue;
      cwnd_.push_back(CwndSample{now_.seconds(), s.schedule.id, s.state.cwnd, s.state.phase});
    }
    events_.push(now_ + trace_interval_, EvTrace{});
  }

  // ---- wrap-up -----------------------------------------------------------

  RunTrace finish() {
    std::vector<std::uint64_t> in_flight(flow_count(), 0);
    auto count = [&](const Packet& p) {
      if (p.kind == PacketKind::Data) ++in_flight[p.flow];
    };
    for (const auto& port : ports_) {
      if (port.in_service) count(*port.in_service);
      for (const auto& p : port.queue) count(p);
    }
    for (const auto& entry : events_) {
      if (const auto* a = std::get_if<EvPortArrival>(&entry.payload)) count(a->packet);
      if (const auto* r = std::get_if<EvReceive>(&entry.payload)) count(r->packet);
    }

    RunTrace trace;
    trace.duration_s = config_.duration_s;
    trace.packet_size_bytes = config_.packet_size_bytes;
    trace.events_processed = events_processed_;
    trace.bottleneck_bits_sent = bottleneck_bits_;
    trace.bottleneck_max_occupancy = ports_[bottleneck_port()].queue.max_occupancy();
    trace.min_delivery_slack_ns =
        min_slack_ == std::numeric_limits<std::int64_t>::max() ? 0 : min_slack_;
    trace.cwnd = std::move(cwnd_);
    trace.losses = std::move(losses_);
    for (std::size_t i = 0; i < flow_count(); ++i) {
      Sender& s = senders_[i];
      s.counters.in_flight_pkts = in_flight[i];
      const auto& c = s.counters;
      if (c.sent_pkts != c.recv_pkts + c.qdrop_pkts + c.edrop_pkts + c.in_flight_pkts) {
        throw AccountingError("packet conservation violated for flow " +
                              std::to_string(s.schedule.id));
      }
      trace.flows.push_back(FlowTrace{s.schedule, s.counters, s.rounds, s.first_send_s});
    }
    return trace;
  }

  const ScenarioConfig& config_;
  SimTime end_;
  SimTime now_{};
  SimTime path_prop_{};
  SimTime ack_delay_{};
  SimTime trace_interval_{};
  RandomStream error_rng_;
  EventQueue<Event> events_;
  std::vector<Port> ports_;
  std::vector<Receiver> receivers_;
  std::vector<Sender> senders_;
  std::vector<CwndSample> cwnd_;
  std::vector<LossRecord> losses_;
  std::uint64_t next_packet_id_ = 0;
  std::uint64_t events_processed_ = 0;
  std::uint64_t bottleneck_bits_ = 0;
  std::int64_t min_slack_ = std::numeric_limits<std::int64_t>::max();
};

}  // namespace

RunTrace run_scenario(const ScenarioConfig& config, const cca::CcaRegistry& registry) {
  config.validate(registry);
  Simulation sim(config, registry);
  return sim.run();
}

}  // namespace elastic::netsim
