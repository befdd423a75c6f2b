#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "icgame/channel.h"
#include "icgame/profile.h"

namespace icgame {

inline constexpr double kSimplexTolerance = 1e-9;
inline constexpr std::size_t kDefaultAreaGrid = 1024;

struct Corner {
  ActionProfile profile;
  RatePoint rates;
};

// All 2^n - 1 non-silent binary power corners, corners[k - 1] holding
// profile index k.
struct CornerSet {
  std::size_t users = 0;
  std::vector<Corner> corners;

  const Corner& at_index(std::uint32_t index) const {
    return corners.at(index - 1);
  }
};

// Time share of each corner; theta[k - 1] belongs to profile index k.
struct ThetaVector {
  std::vector<double> theta;

  std::size_t nonzero_count(double tol = 0.0) const;
};

// Throws kInvalidInput when an entry is below -kSimplexTolerance or the
// sum is off by more than kSimplexTolerance. `what` names the vector.
void CheckSimplex(std::span<const double> p, const char* what);

CornerSet EnumerateCorners(const ChannelGains& gains);

// Throws kInvalidInput when theta leaves the simplex by more than
// kSimplexTolerance or has the wrong length.
RatePoint CrystallizedRates(const CornerSet& corners, const ThetaVector& theta);

// Two-user potential line: `fixed_user` (0 or 1) is pinned at p_max while
// the other user's power is swept uniformly over [0, p_max].
struct FrontierSample {
  std::size_t fixed_user = 0;
  std::size_t grid_size = 0;
  std::vector<PowerVector> powers;
  std::vector<RatePoint> rates;
};

FrontierSample SampleFrontier(const ChannelGains& gains, std::size_t fixed_user,
                              std::size_t grid);

enum class Curvature { kConcave, kConvex, kInflected };

const char* CurvatureName(Curvature c);

// Sign pattern of the divided second differences of R2 as a function of
// R1. `relative_tol` is scaled by the largest magnitude second difference.
Curvature ClassifyFrontier(const FrontierSample& sample,
                           double relative_tol = 1e-9);

// Area enclosed by the origin, the axes and both sampled potential lines.
double AreaPowerControl(const ChannelGains& gains,
                        std::size_t grid = kDefaultAreaGrid);

// Quadrilateral O-A-B-C with A = only user 2 on, B = both on, C = only
// user 1 on.
double AreaTimeshareViaB(const ChannelGains& gains);

// Triangle O-A-C; independent of the cross gains.
double AreaTimeshareAC(const ChannelGains& gains);

// 100 * (via-B area - power-control area) / power-control area.
double TimeshareGainPercent(const ChannelGains& gains,
                            std::size_t grid = kDefaultAreaGrid);

// Shoelace area of a simple polygon, vertices in either orientation.
double PolygonArea(const std::vector<RatePoint>& vertices);

}  // namespace icgame
