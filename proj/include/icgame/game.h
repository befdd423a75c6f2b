#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icgame/channel.h"
#include "icgame/profile.h"
#include "icgame/region.h"

namespace icgame {

enum class Mechanism { kRawRates, kVcg };

const char* MechanismName(Mechanism m);
Mechanism ParseMechanism(const std::string& name);

// Utilities of every user for all 2^n binary profiles.
class UtilityTable {
 public:
  UtilityTable(std::size_t users, Mechanism mechanism,
               std::vector<double> values);

  std::size_t users() const { return users_; }
  std::size_t profiles() const { return ProfileCount(users_); }
  Mechanism mechanism() const { return mechanism_; }

  double utility(std::uint32_t profile, std::size_t user) const {
    return values_[profile * users_ + user];
  }
  std::span<const double> row(std::uint32_t profile) const {
    return {values_.data() + profile * users_, users_};
  }
  double max_abs() const;

 private:
  std::size_t users_;
  Mechanism mechanism_;
  std::vector<double> values_;
};

// Raw rates: U = R. VCG: U_i = R_i - zeta_i, where zeta_i is the rate the
// other users lose because user i transmits (user i silenced in the same
// profile as the counterfactual).
UtilityTable BuildUtilityTable(const ChannelGains& gains, Mechanism mechanism);

// Weak inequalities: ties count as equilibria.
std::vector<ActionProfile> PureNash(const UtilityTable& table);

struct JointDistribution {
  std::vector<double> p;

  static JointDistribution PointMass(std::size_t users, std::uint32_t index);
};

struct CeWitness {
  std::size_t user = 0;
  int recommended = 0;
  int deviation = 0;
  double residual = 0.0;
};

struct CeVerdict {
  bool holds = true;
  // Smallest residual over all inequalities (0 for a degenerate pmf).
  double min_residual = 0.0;
  // First violated inequality in (user, recommended, deviation) order.
  std::optional<CeWitness> witness;
};

// For every user i and recommended action a*, checks
//   sum_{a_-i} p(a*, a_-i) [U_i(a*, a_-i) - U_i(a, a_-i)] >= -eps
// against the other action a. Throws kInvalidInput for a pmf of the wrong
// length or off the simplex.
CeVerdict IsCorrelatedEquilibrium(const UtilityTable& table,
                                  const JointDistribution& dist,
                                  double eps = 1e-9);

// Drops the all-silent entry. Throws kNonzeroSilence when p[0] > eps.
ThetaVector ThetaFromDistribution(const JointDistribution& dist,
                                  double eps = 1e-9);

JointDistribution DistributionFromTheta(const ThetaVector& theta);

}  // namespace icgame
