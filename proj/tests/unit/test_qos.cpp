#include <gtest/gtest.h>

#include <cmath>

#include "avslice/qos.hpp"

namespace avslice {
namespace {

TEST(Qos, SensitiveFloorMatchesTableParameters) {
  EXPECT_NEAR(min_rate_sensitive(TrafficSpec{}) / 1e3, 140.37, 0.01);
}

TEST(Qos, TolerantFloorIsArrivalTimesSize) {
  EXPECT_DOUBLE_EQ(min_rate_tolerant(TrafficSpec{}), 180000.0);
  TrafficSpec t;
  t.tolerant_arrival_per_s = 40.0;
  EXPECT_DOUBLE_EQ(min_rate_tolerant(t), 360000.0);
}

TEST(Qos, ZeroTolerantArrivalGivesZeroFloor) {
  TrafficSpec t;
  t.tolerant_arrival_per_s = 0.0;
  EXPECT_EQ(min_rate_tolerant(t), 0.0);
}

TEST(Qos, SensitiveFloorIsLinearInPacketSize) {
  TrafficSpec t;
  const double base = min_rate_sensitive(t);
  t.sensitive_packet_bits *= 2.0;
  EXPECT_NEAR(min_rate_sensitive(t), 2.0 * base, 1e-9 * base);
}

// As the violation probability approaches 1 the bound degenerates to a 0/0
// form whose limit is the mean arrival rate L * lambda, not zero.
TEST(Qos, SensitiveFloorFallsToMeanArrivalRateAsViolationProbabilityApproachesOne) {
  TrafficSpec t;
  double prev = min_rate_sensitive(t);
  for (double rho : {0.01, 0.1, 0.5, 0.9, 0.999, 0.999999}) {
    t.violation_prob = rho;
    const double r = min_rate_sensitive(t);
    EXPECT_LT(r, prev);
    prev = r;
  }
  const double mean_rate = t.sensitive_packet_bits * t.sensitive_arrival_per_s;
  EXPECT_NEAR(prev, mean_rate, 1e-3 * mean_rate);
}

TEST(Qos, SensitiveFloorDecreasesWithDelayBudget) {
  TrafficSpec t;
  double prev = min_rate_sensitive(t);
  for (double d : {0.012, 0.02, 0.05, 0.1}) {
    t.max_delay_s = d;
    const double r = min_rate_sensitive(t);
    EXPECT_LT(r, prev);
    prev = r;
  }
}

TEST(Qos, TolerantFloorExceedsSensitiveFloorWithDefaults) {
  EXPECT_GT(min_rate_tolerant(TrafficSpec{}), min_rate_sensitive(TrafficSpec{}));
  EXPECT_EQ(min_rate(TrafficSpec{}, TrafficClass::DelayTolerant), 180000.0);
}

TEST(Qos, ValidateRejectsBadParameters) {
  TrafficSpec t;
  t.violation_prob = 1.0;
  EXPECT_THROW(t.validate(), std::invalid_argument);
  t = TrafficSpec{};
  t.max_delay_s = 0.0;
  EXPECT_THROW(t.validate(), std::invalid_argument);
  t = TrafficSpec{};
  t.sensitive_packet_bits = -1.0;
  EXPECT_THROW(t.validate(), std::invalid_argument);
  EXPECT_NO_THROW(TrafficSpec{}.validate());
}

}  // namespace
}  // namespace avslice
