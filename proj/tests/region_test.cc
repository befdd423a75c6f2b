#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <doctest.h>

#include "icgame/error.h"
#include "icgame/region.h"
#include "test_util.h"

namespace icgame {
namespace {

const ChannelGains kNoiseLimited = ChannelGains::TwoUser(2, 0.2, 1, 0.1);
const ChannelGains kInterferenceLimited = ChannelGains::TwoUser(1, 10, 1, 10);
const ChannelGains kMixed = ChannelGains::TwoUser(20, 2, 1, 1);

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kConfig;
}

ChannelGains Symmetric(double interference) {
  return ChannelGains::TwoUser(1, interference, 1, interference);
}

TEST_CASE("corner enumeration order and count") {
  const CornerSet two = EnumerateCorners(kNoiseLimited);
  REQUIRE(two.corners.size() == 3);
  CHECK(two.corners[0].profile.BitString() == "10");
  CHECK(two.corners[1].profile.BitString() == "01");
  CHECK(two.corners[2].profile.BitString() == "11");
  CHECK(two.at_index(1).rates[0] == doctest::Approx(1.5850).epsilon(1e-4));
  CHECK(two.at_index(1).rates[1] == 0.0);
  CHECK(two.at_index(2).rates[0] == 0.0);
  CHECK(two.at_index(2).rates[1] == doctest::Approx(1.0));
  CHECK(two.at_index(3).rates[0] == doctest::Approx(1.4150).epsilon(1e-4));
  CHECK(two.at_index(3).rates[1] == doctest::Approx(0.9328).epsilon(1e-4));

  std::mt19937_64 rng(3);
  for (std::size_t n = 2; n <= 10; ++n) {
    const CornerSet set = EnumerateCorners(testing::RandomGains(rng, n));
    REQUIRE(set.corners.size() == (std::size_t{1} << n) - 1);
    for (std::size_t k = 0; k < set.corners.size(); ++k) {
      const ActionProfile& p = set.corners[k].profile;
      CHECK(p.index() == k + 1);
      std::uint32_t rebuilt = 0;
      for (std::size_t i = 0; i < n; ++i) rebuilt += p.bits()[i] << i;
      CHECK(rebuilt == p.index());
    }
  }
}

TEST_CASE("corner enumeration refuses more than 16 users") {
  std::vector<std::vector<double>> g(17, std::vector<double>(17, 0.1));
  for (std::size_t i = 0; i < 17; ++i) g[i][i] = 1.0;
  CHECK(KindOf([&] { EnumerateCorners(ChannelGains(g, 1.0)); }) ==
        ErrorKind::kCapacity);
}

TEST_CASE("crystallized rates") {
  const CornerSet corners = EnumerateCorners(kMixed);
  CHECK(CrystallizedRates(corners, {{0, 0, 1}}).r == corners.at_index(3).rates.r);

  const RatePoint r = CrystallizedRates(corners, {{0, 0.92, 0.08}});
  CHECK(r[1] == doctest::Approx(0.92 + 0.08 * std::log2(1.5)).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(0.9668).epsilon(1e-4));
  CHECK(r[0] == doctest::Approx(0.08 * std::log2(1.0 + 20.0 / 3.0)).epsilon(1e-14));

  const double third = 1.0 / 3.0;
  const RatePoint mean = CrystallizedRates(corners, {{third, third, third}});
  for (std::size_t i = 0; i < 2; ++i) {
    double expect = 0.0;
    for (const Corner& c : corners.corners) expect += c.rates[i] / 3.0;
    CHECK(mean[i] == doctest::Approx(expect).epsilon(1e-14));
  }

  CHECK(KindOf([&] { CrystallizedRates(corners, {{0.5, 0.5, 0.1}}); }) ==
        ErrorKind::kInvalidInput);
  CHECK(KindOf([&] { CrystallizedRates(corners, {{1.1, -0.1, 0.0}}); }) ==
        ErrorKind::kInvalidInput);
  CHECK(KindOf([&] { CrystallizedRates(corners, {{1.0}}); }) ==
        ErrorKind::kInvalidInput);
}

TEST_CASE("crystallized rates are affine in theta") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_theta = [&](std::size_t m) {
    ThetaVector t{std::vector<double>(m)};
    double sum = 0.0;
    for (double& v : t.theta) sum += (v = unit(rng));
    for (double& v : t.theta) v /= sum;
    return t;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const CornerSet corners = EnumerateCorners(testing::RandomGains(rng, n));
    const ThetaVector a = random_theta(corners.corners.size());
    const ThetaVector b = random_theta(corners.corners.size());
    const double lambda = unit(rng);
    ThetaVector mix{std::vector<double>(a.theta.size())};
    for (std::size_t k = 0; k < mix.theta.size(); ++k) {
      mix.theta[k] = lambda * a.theta[k] + (1 - lambda) * b.theta[k];
    }
    const RatePoint fa = CrystallizedRates(corners, a);
    const RatePoint fb = CrystallizedRates(corners, b);
    const RatePoint fm = CrystallizedRates(corners, mix);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(fm[i] - (lambda * fa[i] + (1 - lambda) * fb[i])) < 1e-12);
    }
  }
}

TEST_CASE("frontier samples and endpoints") {
  const CornerSet corners = EnumerateCorners(kNoiseLimited);
  const FrontierSample ab = SampleFrontier(kNoiseLimited, 1, 3);
  REQUIRE(ab.rates.size() == 3);
  CHECK(ab.powers[0].p == std::vector<double>{0.0, 1.0});
  CHECK(ab.powers[1].p == std::vector<double>{0.5, 1.0});
  CHECK(ab.powers[2].p == std::vector<double>{1.0, 1.0});
  CHECK(ab.rates.front().r == corners.at_index(2).rates.r);  // A
  CHECK(ab.rates.back().r == corners.at_index(3).rates.r);   // B

  const FrontierSample bc = SampleFrontier(kNoiseLimited, 0, 17);
  CHECK(bc.rates.front().r == corners.at_index(1).rates.r);  // C
  CHECK(bc.rates.back().r == corners.at_index(3).rates.r);   // B
  for (const RatePoint& r : bc.rates) {
    CHECK(r[0] >= 0.0);
    CHECK(r[1] >= 0.0);
  }

  CHECK(KindOf([&] { SampleFrontier(kNoiseLimited, 1, 1); }) ==
        ErrorKind::kInvalidInput);
  std::mt19937_64 rng(1);
  CHECK(KindOf([&] { SampleFrontier(testing::RandomGains(rng, 3), 0, 5); }) ==
        ErrorKind::kUnsupportedDimension);
}

TEST_CASE("frontier curvature for the four canonical regimes") {
  auto label = [](const ChannelGains& g, std::size_t fixed) {
    return ClassifyFrontier(SampleFrontier(g, fixed, 65));
  };
  CHECK(label(kNoiseLimited, 1) == Curvature::kConcave);
  CHECK(label(kNoiseLimited, 0) == Curvature::kConcave);
  CHECK(label(kInterferenceLimited, 1) == Curvature::kConvex);
  CHECK(label(kInterferenceLimited, 0) == Curvature::kConvex);

  const Curvature ab = label(kMixed, 1), bc = label(kMixed, 0);
  CHECK(ab != Curvature::kInflected);
  CHECK(bc != Curvature::kInflected);
  CHECK(ab != bc);
}

// Independent check: turning direction of consecutive chords, walking the
// frontier with R1 increasing. Left turns bend the curve upward (convex).
int TurnSigns(const FrontierSample& s, int& lefts, int& rights) {
  std::vector<RatePoint> pts = s.rates;
  if (pts.front()[0] > pts.back()[0]) std::reverse(pts.begin(), pts.end());
  lefts = rights = 0;
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const double cross = (pts[k][0] - pts[k - 1][0]) * (pts[k + 1][1] - pts[k][1]) -
                         (pts[k][1] - pts[k - 1][1]) * (pts[k + 1][0] - pts[k][0]);
    (cross > 0 ? lefts : rights)++;
  }
  return lefts + rights;
}

TEST_CASE("inflected frontier agrees with the turn-direction oracle") {
  const ChannelGains g = ChannelGains::TwoUser(1, 0.1, 1, 0.5);
  const FrontierSample s = SampleFrontier(g, 1, 65);
  int lefts = 0, rights = 0;
  TurnSigns(s, lefts, rights);
  REQUIRE(lefts > 0);
  REQUIRE(rights > 0);
  CHECK(ClassifyFrontier(s) == Curvature::kInflected);

  for (const ChannelGains& other : {kNoiseLimited, kInterferenceLimited}) {
    const FrontierSample f = SampleFrontier(other, 0, 65);
    TurnSigns(f, lefts, rights);
    CHECK(ClassifyFrontier(f) ==
          (lefts == 0 ? Curvature::kConcave : Curvature::kConvex));
  }
}

TEST_CASE("curvature input errors") {
  CHECK(KindOf([] { ClassifyFrontier(SampleFrontier(kNoiseLimited, 1, 4)); }) ==
        ErrorKind::kInvalidInput);
  // No cross gain into receiver 1: R1 is constant along Phi_BC.
  const ChannelGains flat = ChannelGains::TwoUser(1, 0, 1, 0.5);
  CHECK(KindOf([&] { ClassifyFrontier(SampleFrontier(flat, 0, 9)); }) ==
        ErrorKind::kDegenerateInput);
}

TEST_CASE("region areas") {
  const ChannelGains clean = ChannelGains::TwoUser(1, 0, 1, 0);
  CHECK(AreaPowerControl(clean, 64) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(AreaTimeshareViaB(clean) == doctest::Approx(1.0).epsilon(1e-14));

  const ChannelGains weak = Symmetric(0.01);  // SIR 20 dB
  CHECK(AreaPowerControl(weak, 1024) > AreaTimeshareAC(weak));

  // Grid refinement oracle for the strongly interfered case.
  const ChannelGains strong = Symmetric(100);
  const double coarse = AreaPowerControl(strong, 1024);
  const double dense = AreaPowerControl(strong, 8192);
  CHECK(std::abs(coarse - dense) / dense < 0.01);

  const double x = std::log2(12.0 / 11.0);
  CHECK(AreaTimeshareViaB(kInterferenceLimited) ==
        doctest::Approx(x).epsilon(1e-14));
  CHECK(x == doctest::Approx(0.1255).epsilon(1e-3));

  CHECK(AreaTimeshareAC(Symmetric(1)) == 0.5);
  CHECK(AreaTimeshareAC(kNoiseLimited) ==
        doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-15));
  CHECK(AreaTimeshareAC(kNoiseLimited) ==
        AreaTimeshareAC(ChannelGains::TwoUser(2, 7, 1, 0.003)));

  CHECK(KindOf([] {
          std::mt19937_64 rng(1);
          AreaPowerControl(testing::RandomGains(rng, 3), 64);
        }) == ErrorKind::kUnsupportedDimension);
}

TEST_CASE("via-B area contains both triangles and tracks B's side of A-C") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const ChannelGains g = testing::RandomGains(rng, 2);
    const CornerSet c = EnumerateCorners(g);
    const RatePoint& a = c.at_index(2).rates;
    const RatePoint& b = c.at_index(3).rates;
    const RatePoint& cc = c.at_index(1).rates;
    const RatePoint o{{0.0, 0.0}};
    const double quad = AreaTimeshareViaB(g);
    CHECK(quad >= PolygonArea({o, a, b}) - 1e-15);
    CHECK(quad >= PolygonArea({o, b, cc}) - 1e-15);

    // Orientation of A -> C -> B: positive when B is above segment A-C.
    const double orient = (cc[0] - a[0]) * (b[1] - a[1]) -
                          (cc[1] - a[1]) * (b[0] - a[0]);
    CHECK((quad >= AreaTimeshareAC(g)) == (orient >= 0));
  }
}

TEST_CASE("time-sharing gain percent") {
  CHECK(std::abs(TimeshareGainPercent(Symmetric(1.0), 1024)) < 10.0);
  for (double db = -20; db <= 0; db += 1) {
    CHECK(TimeshareGainPercent(Symmetric(std::pow(10, db / 10)), 1024) >= -1.0);
  }
  const double high = TimeshareGainPercent(Symmetric(100), 1024);
  CHECK(high > 500.0);
  CHECK(high < 1100.0);

  int flips = 0;
  double prev = TimeshareGainPercent(Symmetric(0.01), 1024);
  for (int k = 1; k <= 40; ++k) {
    const double cur =
        TimeshareGainPercent(Symmetric(std::pow(10, (-20 + k) / 10.0)), 1024);
    if ((prev < 0) != (cur < 0)) ++flips;
    prev = cur;
  }
  CHECK(flips == 1);
}

}  // namespace
}  // namespace icgame
