#include "icgame/game.h"

#include <algorithm>
#include <cmath>

#include "icgame/error.h"

namespace icgame {

const char* MechanismName(Mechanism m) {
  return m == Mechanism::kVcg ? "vcg" : "raw_rates";
}

Mechanism ParseMechanism(const std::string& name) {
  if (name == "vcg") return Mechanism::kVcg;
  if (name == "raw_rates" || name == "raw") return Mechanism::kRawRates;
  throw Error(ErrorKind::kConfig, "unknown mechanism '" + name + "'");
}

UtilityTable::UtilityTable(std::size_t users, Mechanism mechanism,
                           std::vector<double> values)
    : users_(users), mechanism_(mechanism), values_(std::move(values)) {
  if (users == 0 || users > kMaxEnumeratedUsers) {
    throw Error(ErrorKind::kCapacity, "utility table user count out of range");
  }
  if (values_.size() != ProfileCount(users) * users) {
    throw Error(ErrorKind::kInvalidInput, "utility table is incomplete");
  }
}

double UtilityTable::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

UtilityTable BuildUtilityTable(const ChannelGains& gains, Mechanism mechanism) {
  const std::size_t n = gains.users();
  if (n > kMaxEnumeratedUsers) {
    throw Error(ErrorKind::kCapacity, "utility table limited to 16 users");
  }
  const std::size_t count = ProfileCount(n);
  std::vector<RatePoint> rates;
  rates.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    rates.push_back(RatesForProfile(gains, ActionProfile(n, k)));
  }

  std::vector<double> values(count * n, 0.0);
  for (std::uint32_t k = 0; k < count; ++k) {
    const ActionProfile profile(n, k);
    for (std::size_t i = 0; i < n; ++i) {
      double u = rates[k][i];
      if (mechanism == Mechanism::kVcg && profile.on(i)) {
        // Payment: what the others would gain if user i fell silent.
        const RatePoint& without = rates[profile.with(i, false).index()];
        double payment = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) payment += without[j] - rates[k][j];
        }
        u -= payment;
      }
      values[k * n + i] = u;
    }
  }
  return UtilityTable(n, mechanism, std::move(values));
}

std::vector<ActionProfile> PureNash(const UtilityTable& table) {
  const std::size_t n = table.users();
  std::vector<ActionProfile> out;
  for (std::uint32_t k = 0; k < table.profiles(); ++k) {
    const ActionProfile profile(n, k);
    bool stable = true;
    for (std::size_t i = 0; i < n && stable; ++i) {
      const std::uint32_t dev = profile.with(i, !profile.on(i)).index();
      stable = table.utility(k, i) >= table.utility(dev, i);
    }
    if (stable) out.push_back(profile);
  }
  return out;
}

JointDistribution JointDistribution::PointMass(std::size_t users,
                                               std::uint32_t index) {
  JointDistribution d{std::vector<double>(ProfileCount(users), 0.0)};
  d.p.at(index) = 1.0;
  return d;
}

CeVerdict IsCorrelatedEquilibrium(const UtilityTable& table,
                                  const JointDistribution& dist, double eps) {
  const std::size_t n = table.users();
  if (dist.p.size() != table.profiles()) {
    throw Error(ErrorKind::kInvalidInput, "pmf length must be 2^n");
  }
  CheckSimplex(dist.p, "pmf");

  CeVerdict verdict;
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (int rec = 0; rec <= 1; ++rec) {
      const int dev = 1 - rec;
      // Sum over the 2^(n-1) profiles in which user i is told `rec`.
      double residual = 0.0;
      for (std::uint32_t k = 0; k < table.profiles(); ++k) {
        const ActionProfile profile(n, k);
        if (static_cast<int>(profile.on(i)) != rec) continue;
        const double mass = dist.p[k];
        if (mass == 0.0) continue;
        const std::uint32_t alt = profile.with(i, dev == 1).index();
        residual += mass * (table.utility(k, i) - table.utility(alt, i));
      }
      if (first || residual < verdict.min_residual) {
        verdict.min_residual = residual;
      }
      first = false;
      if (residual < -eps && !verdict.witness) {
        verdict.holds = false;
        verdict.witness = CeWitness{i, rec, dev, residual};
      }
    }
  }
  return verdict;
}

ThetaVector ThetaFromDistribution(const JointDistribution& dist, double eps) {
  CheckSimplex(dist.p, "pmf");
  if (dist.p.size() < 2) {
    throw Error(ErrorKind::kInvalidInput, "pmf too short");
  }
  const double silent = dist.p[0];
  if (silent > eps) {
    throw Error(ErrorKind::kNonzeroSilence,
                "pmf puts mass on the all-silent profile");
  }
  ThetaVector theta{std::vector<double>(dist.p.begin() + 1, dist.p.end())};
  if (silent > 0.0) {
    for (double& t : theta.theta) t /= 1.0 - silent;
  }
  return theta;
}

JointDistribution DistributionFromTheta(const ThetaVector& theta) {
  JointDistribution d;
  d.p.reserve(theta.theta.size() + 1);
  d.p.push_back(0.0);
  d.p.insert(d.p.end(), theta.theta.begin(), theta.theta.end());
  return d;
}

}  // namespace icgame
