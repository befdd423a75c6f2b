#include "icgame/region.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "icgame/error.h"

namespace icgame {
namespace {

void RequireTwoUsers(const ChannelGains& gains, const char* op) {
  if (gains.users() != 2) {
    throw Error(ErrorKind::kUnsupportedDimension,
                std::string(op) + " is defined for two users only");
  }
}

struct TwoUserCorners {
  RatePoint a;  // only user 2 transmits
  RatePoint b;  // both transmit
  RatePoint c;  // only user 1 transmits
};

TwoUserCorners CornersOf(const ChannelGains& gains) {
  return {RatesForProfile(gains, ActionProfile(2, 2)),
          RatesForProfile(gains, ActionProfile(2, 3)),
          RatesForProfile(gains, ActionProfile(2, 1))};
}

}  // namespace

std::size_t ThetaVector::nonzero_count(double tol) const {
  return static_cast<std::size_t>(std::count_if(
      theta.begin(), theta.end(), [tol](double t) { return t > tol; }));
}

void CheckSimplex(std::span<const double> p, const char* what) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= -kSimplexTolerance)) {
      throw Error(ErrorKind::kInvalidInput,
                  std::string(what) + " has a negative entry");
    }
    sum += v;
  }
  if (!(std::abs(sum - 1.0) <= kSimplexTolerance)) {
    throw Error(ErrorKind::kInvalidInput,
                std::string(what) + " does not sum to 1");
  }
}

CornerSet EnumerateCorners(const ChannelGains& gains) {
  const std::size_t n = gains.users();
  if (n > kMaxEnumeratedUsers) {
    throw Error(ErrorKind::kCapacity,
                "corner enumeration limited to " +
                    std::to_string(kMaxEnumeratedUsers) + " users");
  }
  CornerSet set;
  set.users = n;
  const auto count = static_cast<std::uint32_t>(ProfileCount(n));
  set.corners.reserve(count - 1);
  for (std::uint32_t k = 1; k < count; ++k) {
    ActionProfile profile(n, k);
    set.corners.push_back({profile, RatesForProfile(gains, profile)});
  }
  return set;
}

RatePoint CrystallizedRates(const CornerSet& corners,
                            const ThetaVector& theta) {
  if (theta.theta.size() != corners.corners.size()) {
    throw Error(ErrorKind::kInvalidInput,
                "theta length must equal the number of corners");
  }
  CheckSimplex(theta.theta, "theta");
  RatePoint out{std::vector<double>(corners.users, 0.0)};
  for (std::size_t k = 0; k < theta.theta.size(); ++k) {
    const double w = theta.theta[k];
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < corners.users; ++i) {
      out.r[i] += w * corners.corners[k].rates[i];
    }
  }
  return out;
}

FrontierSample SampleFrontier(const ChannelGains& gains, std::size_t fixed_user,
                              std::size_t grid) {
  RequireTwoUsers(gains, "frontier sampling");
  if (fixed_user > 1) {
    throw Error(ErrorKind::kInvalidInput, "fixed_user must be 0 or 1");
  }
  if (grid < 2) {
    throw Error(ErrorKind::kInvalidInput, "frontier grid needs >= 2 points");
  }
  const std::size_t swept = 1 - fixed_user;
  const double p_max = gains.p_max();

  FrontierSample sample;
  sample.fixed_user = fixed_user;
  sample.grid_size = grid;
  sample.powers.reserve(grid);
  sample.rates.reserve(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    PowerVector pv{std::vector<double>(2, 0.0)};
    pv.p[fixed_user] = p_max;
    pv.p[swept] = p_max * (static_cast<double>(k) /
                           static_cast<double>(grid - 1));
    sample.rates.push_back(Rates(gains, pv));
    sample.powers.push_back(std::move(pv));
  }
  return sample;
}

const char* CurvatureName(Curvature c) {
  switch (c) {
    case Curvature::kConcave: return "concave";
    case Curvature::kConvex: return "convex";
    case Curvature::kInflected: return "inflected";
  }
  return "unknown";
}

Curvature ClassifyFrontier(const FrontierSample& sample, double relative_tol) {
  const std::size_t m = sample.rates.size();
  if (m < 5) {
    throw Error(ErrorKind::kInvalidInput,
                "curvature classification needs >= 5 samples");
  }
  std::vector<double> x(m), y(m);
  for (std::size_t k = 0; k < m; ++k) {
    x[k] = sample.rates[k][0];
    y[k] = sample.rates[k][1];
  }
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  if (*xmin == *xmax || *ymin == *ymax) {
    throw Error(ErrorKind::kDegenerateInput,
                "frontier has a constant rate coordinate");
  }
  if (x.front() > x.back()) {
    std::reverse(x.begin(), x.end());
    std::reverse(y.begin(), y.end());
  }

  std::vector<double> second(m - 2);
  double scale = 0.0;
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const double h0 = x[k] - x[k - 1];
    const double h1 = x[k + 1] - x[k];
    if (!(h0 > 0.0 && h1 > 0.0)) {
      throw Error(ErrorKind::kDegenerateInput,
                  "frontier is not strictly monotone in R1");
    }
    const double dd =
        ((y[k + 1] - y[k]) / h1 - (y[k] - y[k - 1]) / h0) / (h0 + h1);
    second[k - 1] = dd;
    scale = std::max(scale, std::abs(dd));
  }
  const double tol = relative_tol * scale;
  const bool concave = std::all_of(second.begin(), second.end(),
                                   [tol](double v) { return v <= tol; });
  const bool convex = std::all_of(second.begin(), second.end(),
                                  [tol](double v) { return v >= -tol; });
  if (concave) return Curvature::kConcave;
  if (convex) return Curvature::kConvex;
  return Curvature::kInflected;
}

double PolygonArea(const std::vector<RatePoint>& vertices) {
  const std::size_t m = vertices.size();
  double twice = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const RatePoint& p = vertices[k];
    const RatePoint& q = vertices[(k + 1) % m];
    twice += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * std::abs(twice);
}

double AreaPowerControl(const ChannelGains& gains, std::size_t grid) {
  RequireTwoUsers(gains, "power-control area");
  // O -> A along Phi_AB (user 2 pinned) to B, then back along Phi_BC
  // (user 1 pinned) from B to C.
  const FrontierSample ab = SampleFrontier(gains, 1, grid);
  const FrontierSample bc = SampleFrontier(gains, 0, grid);
  std::vector<RatePoint> boundary;
  boundary.reserve(2 * grid + 1);
  boundary.push_back(RatePoint{{0.0, 0.0}});
  boundary.insert(boundary.end(), ab.rates.begin(), ab.rates.end());
  for (std::size_t k = grid - 1; k-- > 0;) boundary.push_back(bc.rates[k]);
  return PolygonArea(boundary);
}

double AreaTimeshareViaB(const ChannelGains& gains) {
  RequireTwoUsers(gains, "time-sharing area");
  const TwoUserCorners k = CornersOf(gains);
  return PolygonArea({RatePoint{{0.0, 0.0}}, k.c, k.b, k.a});
}

double AreaTimeshareAC(const ChannelGains& gains) {
  RequireTwoUsers(gains, "time-sharing area");
  const double ra = std::log2(1.0 + gains.gain(0, 0) * gains.p_max());
  const double rc = std::log2(1.0 + gains.gain(1, 1) * gains.p_max());
  return 0.5 * ra * rc;
}

double TimeshareGainPercent(const ChannelGains& gains, std::size_t grid) {
  const double pc = AreaPowerControl(gains, grid);
  if (!(pc > 0.0)) {
    throw Error(ErrorKind::kDegenerateInput, "power-control area is zero");
  }
  return 100.0 * (AreaTimeshareViaB(gains) - pc) / pc;
}

}  // namespace icgame
