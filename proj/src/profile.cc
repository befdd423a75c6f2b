#include "icgame/profile.h"

#include "icgame/error.h"

namespace icgame {

ActionProfile::ActionProfile(std::size_t users, std::uint32_t index)
    : users_(users), index_(index) {
  if (users == 0 || users > 31) {
    throw Error(ErrorKind::kInvalidInput, "profile user count out of range");
  }
  if (index >> users) {
    throw Error(ErrorKind::kInvalidInput, "profile index exceeds 2^n - 1");
  }
}

ActionProfile ActionProfile::FromBits(const std::vector<int>& bits) {
  std::uint32_t index = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) {
      throw Error(ErrorKind::kInvalidInput, "profile bits must be 0 or 1");
    }
    index |= static_cast<std::uint32_t>(bits[i]) << i;
  }
  return ActionProfile(bits.size(), index);
}

std::vector<int> ActionProfile::bits() const {
  std::vector<int> out(users_);
  for (std::size_t i = 0; i < users_; ++i) out[i] = on(i) ? 1 : 0;
  return out;
}

ActionProfile ActionProfile::with(std::size_t user, bool on) const {
  const std::uint32_t mask = 1u << user;
  return ActionProfile(users_, on ? (index_ | mask) : (index_ & ~mask));
}

std::string ActionProfile::BitString() const {
  std::string s(users_, '0');
  for (std::size_t i = 0; i < users_; ++i) {
    if (on(i)) s[i] = '1';
  }
  return s;
}

}  // namespace icgame
