#include <gtest/gtest.h>

#include <random>

#include "elastic/cca/core.hpp"
#include "elastic/cca/registry.hpp"
#include "elastic/errors.hpp"

using namespace elastic;
using namespace elastic::cca;

namespace {

const Algorithm kAll[] = {Algorithm::NewReno, Algorithm::Elastic, Algorithm::Cubic,
                          Algorithm::Ctcp, Algorithm::Agile};

CcaState ca_state(Algorithm a, double cwnd) {
  CcaState s = make_initial_state(a);
  s.cwnd = cwnd;
  s.ssthresh = cwnd;
  s.phase = Phase::CongestionAvoidance;
  if (auto* p = std::get_if<CtcpParams>(&s.params)) p->reno_wnd = cwnd;
  return s;
}

}  // namespace

TEST(InitialState, MatchesDefaults) {
  const auto s = make_initial_state(Algorithm::Elastic);
  EXPECT_DOUBLE_EQ(s.cwnd, 2.0);
  EXPECT_TRUE(std::isinf(s.ssthresh));
  EXPECT_EQ(s.phase, Phase::SlowStart);
  EXPECT_DOUBLE_EQ(s.rtt.base, 2147483647.0);
  EXPECT_DOUBLE_EQ(s.rtt.max, 0.0);
  EXPECT_DOUBLE_EQ(s.beta, 0.5);
  EXPECT_DOUBLE_EQ(make_initial_state(Algorithm::Cubic).beta, 0.7);
  CcaOptions o;
  o.beta = 0.8;
  EXPECT_DOUBLE_EQ(make_initial_state(Algorithm::Elastic, o).beta, 0.8);
}

TEST(InitialState, RejectsBadOptions) {
  CcaOptions o;
  o.beta = 1.0;
  EXPECT_THROW(make_initial_state(Algorithm::Elastic, o), DomainError);
  o = {};
  o.initial_cwnd = 0.5;
  EXPECT_THROW(make_initial_state(Algorithm::NewReno, o), DomainError);
  o = {};
  o.cubic_c = 0.0;
  EXPECT_THROW(make_initial_state(Algorithm::Cubic, o), DomainError);
  o = {};
  o.agile_lambda_max = 0.5;
  EXPECT_THROW(make_initial_state(Algorithm::Agile, o), DomainError);
}

TEST(SlowStart, TwoBecomesThree) {
  EXPECT_DOUBLE_EQ(slow_start_step(make_initial_state(Algorithm::Elastic)).cwnd, 3.0);
}

TEST(SlowStart, ReachingSsthreshEntersCongestionAvoidance) {
  CcaState s = make_initial_state(Algorithm::NewReno);
  s.ssthresh = 40;
  s.cwnd = 39;
  s = slow_start_step(s);
  EXPECT_DOUBLE_EQ(s.cwnd, 40.0);
  EXPECT_EQ(s.phase, Phase::CongestionAvoidance);
}

TEST(SlowStart, TenAcksFromTwo) {
  CcaState s = make_initial_state(Algorithm::Elastic);
  double expected = s.cwnd;
  for (int i = 0; i < 10; ++i) {
    s = dispatch(s, AckNew{.send_time = 0.0, .now = 0.1});
    expected += 1.0;
  }
  EXPECT_DOUBLE_EQ(s.cwnd, expected);
  EXPECT_DOUBLE_EQ(s.cwnd, 12.0);
}

TEST(Dispatch, SlowStartAckAddsOne) {
  for (auto a : kAll) {
    const auto s = dispatch(make_initial_state(a), AckNew{.send_time = 1.0, .now = 1.1});
    EXPECT_DOUBLE_EQ(s.cwnd, 3.0) << to_string(a);
    EXPECT_EQ(s.phase, Phase::SlowStart);
  }
}

TEST(Dispatch, TripleDuplicateAppliesDecrease) {
  for (auto a : kAll) {
    CcaState s = ca_state(a, 100);
    s = dispatch(s, AckDup{1});
    s = dispatch(s, AckDup{2});
    EXPECT_DOUBLE_EQ(s.cwnd, 100.0);
    s = dispatch(s, AckDup{3});
    EXPECT_DOUBLE_EQ(s.cwnd, std::max(2.0, s.beta * 100.0)) << to_string(a);
    EXPECT_DOUBLE_EQ(s.ssthresh, s.cwnd);
    EXPECT_EQ(s.phase, Phase::FastRecovery);
  }
}

TEST(Dispatch, SingleDuplicateOnlyCounts) {
  const CcaState before = ca_state(Algorithm::Elastic, 100);
  CcaState after = dispatch(before, AckDup{1});
  EXPECT_EQ(after.dup_acks, 1);
  after.dup_acks = before.dup_acks;
  EXPECT_EQ(after, before);
}

TEST(Dispatch, RejectsAckBeforeSend) {
  EXPECT_THROW(dispatch(make_initial_state(Algorithm::NewReno), AckNew{.send_time = 2.0, .now = 1.0}),
               MalformedEvent);
}

TEST(Dispatch, FurtherDuplicatesInRecoveryDoNotDecreaseAgain) {
  CcaState s = dispatch(ca_state(Algorithm::NewReno, 100), AckDup{3});
  const double w = s.cwnd;
  s = dispatch(s, AckDup{4});
  s = dispatch(s, AckDup{7});
  EXPECT_DOUBLE_EQ(s.cwnd, w);
  EXPECT_EQ(s.phase, Phase::FastRecovery);
}

TEST(Dispatch, NewAckEndsRecoveryWithoutGrowth) {
  CcaState s = dispatch(ca_state(Algorithm::Elastic, 100), AckDup{3});
  s = dispatch(s, AckNew{.send_time = 1.0, .now = 1.1});
  EXPECT_EQ(s.phase, Phase::CongestionAvoidance);
  EXPECT_DOUBLE_EQ(s.cwnd, 50.0);
  EXPECT_EQ(s.dup_acks, 0);
}

TEST(Dispatch, TimeoutFromAnyPhaseRestartsSlowStart) {
  for (auto a : kAll) {
    for (auto phase : {Phase::SlowStart, Phase::CongestionAvoidance, Phase::FastRecovery}) {
      CcaState s = ca_state(a, 64);
      s.phase = phase;
      s = dispatch(s, LossTimeout{});
      EXPECT_EQ(s.phase, Phase::SlowStart);
      EXPECT_DOUBLE_EQ(s.cwnd, 2.0);
      EXPECT_DOUBLE_EQ(s.ssthresh, std::max(2.0, s.beta * 64));
    }
  }
}

TEST(Dispatch, ElasticSamplesRttOnlyInCongestionAvoidance) {
  CcaState s = dispatch(make_initial_state(Algorithm::Elastic), AckNew{.send_time = 0.0, .now = 0.1});
  EXPECT_FALSE(s.rtt.has_sample());
  s.phase = Phase::CongestionAvoidance;
  s = dispatch(s, AckNew{.send_time = 0.0, .now = 0.1});
  EXPECT_DOUBLE_EQ(s.rtt.current, 0.1);
}

TEST(Dispatch, RetransmissionAckIsNotAnRttSample) {
  CcaState s = ca_state(Algorithm::Elastic, 10);
  s = dispatch(s, AckNew{.send_time = 0.0, .now = 0.3, .rtt_sample = false});
  EXPECT_FALSE(s.rtt.has_sample());
}

TEST(MultiplicativeDecrease, HalvesTheWorkedExample) {
  CcaState s = ca_state(Algorithm::Elastic, 12500);
  s = multiplicative_decrease(s, LossSignal::TripleDupAck);
  EXPECT_DOUBLE_EQ(s.cwnd, 6250.0);
  EXPECT_DOUBLE_EQ(s.ssthresh, 6250.0);
  EXPECT_EQ(s.phase, Phase::FastRecovery);
}

TEST(MultiplicativeDecrease, FloorsAtTwo) {
  CcaState s = ca_state(Algorithm::Elastic, 2);
  EXPECT_DOUBLE_EQ(multiplicative_decrease(s, LossSignal::TripleDupAck).cwnd, 2.0);
}

TEST(MultiplicativeDecrease, TimeoutExample) {
  CcaState s = ca_state(Algorithm::Elastic, 100);
  s = multiplicative_decrease(s, LossSignal::Timeout);
  EXPECT_DOUBLE_EQ(s.cwnd, 2.0);
  EXPECT_EQ(s.phase, Phase::SlowStart);
  EXPECT_DOUBLE_EQ(s.ssthresh, 50.0);
}

TEST(MultiplicativeDecrease, RepeatedApplicationStaysBounded) {
  for (auto a : kAll) {
    CcaState s = ca_state(a, 1e6);
    for (int i = 0; i < 100; ++i) {
      s = multiplicative_decrease(s, i % 5 ? LossSignal::TripleDupAck : LossSignal::Timeout);
      ASSERT_GE(s.cwnd, 2.0);
      validate(s);
    }
  }
}

TEST(AllowedInFlight, Floors) {
  CcaState s;
  s.cwnd = 100.9;
  EXPECT_EQ(allowed_in_flight(s), 100);
  s.cwnd = 2.0;
  EXPECT_EQ(allowed_in_flight(s), 2);
  s.cwnd = 6250.5;
  EXPECT_EQ(allowed_in_flight(s), 6250);
}

// Random, well-formed event streams: ACK times advance, RTTs wander
// between 100 and 300 ms, duplicates arrive in runs and timeouts are rare.
TEST(Property, RandomEventStreamsKeepStateValid) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto a : kAll) {
    CcaState s = make_initial_state(a);
    double now = 0.0;
    int dups = 0;
    for (int i = 0; i < 20000; ++i) {
      const double r = u(rng);
      CcaEvent ev;
      if (r < 0.9) {
        now += 0.001;
        dups = 0;
        ev = AckNew{.send_time = now - (0.1 + 0.2 * u(rng)), .now = now};
      } else if (r < 0.999) {
        ev = AckDup{++dups};
      } else {
        dups = 0;
        ev = LossTimeout{};
      }
      const CcaState again = dispatch(s, ev);
      s = dispatch(s, ev);
      ASSERT_EQ(s, again) << "dispatch must be deterministic";
      ASSERT_GE(s.cwnd, 1.0);
      ASSERT_TRUE(s.phase == Phase::SlowStart || s.phase == Phase::CongestionAvoidance ||
                  s.phase == Phase::FastRecovery);
      validate(s);
    }
  }
}

// C-TCP's delay component may shrink when queueing is detected, so it is
// exercised here on a queue-free RTT trace.
TEST(Property, CongestionAvoidanceIsMonotoneBetweenLosses) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> jitter(0.0, 0.05);
  for (auto a : kAll) {
    CcaState s = ca_state(a, 10);
    double now = 0.0;
    double prev = s.cwnd;
    for (int i = 0; i < 50000; ++i) {
      now += 0.0005;
      const double rtt = a == Algorithm::Ctcp ? 0.1 : 0.1 + jitter(rng);
      s = dispatch(s, AckNew{.send_time = now - rtt, .now = now});
      ASSERT_GE(s.cwnd, prev) << to_string(a) << " at ack " << i;
      prev = s.cwnd;
    }
  }
}

TEST(Registry, BuiltinsAndUnknownNames) {
  const auto& reg = CcaRegistry::builtin();
  for (auto a : kAll) EXPECT_TRUE(reg.contains(to_string(a)));
  EXPECT_FALSE(reg.contains("bbr"));
  try {
    reg.create("bbr");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "cca");
  }
  auto cca = reg.create("elastic");
  EXPECT_EQ(cca->name(), "elastic");
  EXPECT_EQ(cca->initial_state(), make_initial_state(Algorithm::Elastic));
}

TEST(Registry, AcceptsPlugins) {
  CcaRegistry reg;
  reg.add("reno2", [](const CcaOptions& o) {
    CcaOptions copy = o;
    copy.reno_alpha = 2.0;
    return std::make_unique<BuiltinCca>(Algorithm::NewReno, copy);
  });
  auto cca = reg.create("reno2");
  CcaState s = cca->initial_state();
  s.cwnd = 10;
  s.phase = Phase::CongestionAvoidance;
  s = cca->on_event(s, AckNew{.send_time = 0, .now = 0.1});
  EXPECT_DOUBLE_EQ(s.cwnd, 10.2);
}

TEST(Names, RoundTrip) {
  for (auto a : kAll) EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_FALSE(parse_algorithm("vegas").has_value());
  EXPECT_EQ(to_string(Phase::FastRecovery), "fast_recovery");
}
