#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace icgame {

// Largest user count for which 2^n profiles are enumerated.
inline constexpr std::size_t kMaxEnumeratedUsers = 16;

// Binary on/off action vector. Index is sum bits[i] * 2^i, so user 1
// (i = 0) is the least significant bit and index 0 is all-silent.
class ActionProfile {
 public:
  ActionProfile(std::size_t users, std::uint32_t index);
  static ActionProfile FromBits(const std::vector<int>& bits);

  std::size_t users() const { return users_; }
  std::uint32_t index() const { return index_; }
  bool on(std::size_t user) const { return (index_ >> user) & 1u; }
  std::vector<int> bits() const;

  ActionProfile with(std::size_t user, bool on) const;

  // "10" for index 1 with two users: user 1 first.
  std::string BitString() const;

  bool operator==(const ActionProfile&) const = default;

 private:
  std::size_t users_;
  std::uint32_t index_;
};

inline std::size_t ProfileCount(std::size_t users) {
  return std::size_t{1} << users;
}

}  // namespace icgame
