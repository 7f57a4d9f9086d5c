#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mcgs {

using ActionId = std::int32_t;
using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = 0xffffffffu;

inline constexpr double kValueMin = -1.0;
inline constexpr double kValueMax = 1.0;

// Base of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (terminal state passed where a
// live one was required, illegal action, re-expansion, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// The graph store hit its configured node capacity.
class OutOfMemory : public Error {
 public:
  using Error::Error;
};

// Configuration text that could not be parsed or names an unknown key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Outcome : std::int8_t { kLoss = -1, kDraw = 0, kWin = 1 };

constexpr double outcome_value(Outcome o) noexcept {
  return static_cast<double>(static_cast<std::int8_t>(o));
}

constexpr Outcome negate(Outcome o) noexcept {
  return static_cast<Outcome>(-static_cast<std::int8_t>(o));
}

std::string_view to_string(Outcome o) noexcept;

// Transposition key. The step counter is part of the key, so two occurrences
// of the same key can never lie on one trajectory.
struct StateKey {
  std::uint64_t hash = 0;
  std::uint32_t ply = 0;

  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    return static_cast<std::size_t>(k.hash);
  }
};

// splitmix64 finalizer; used for Zobrist tables and key mixing.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t kZobristSeed = 0x4d434753'5a4f4252ull;  // "MCGSZOBR"

constexpr double clip_value(double v) noexcept {
  return v < kValueMin ? kValueMin : (v > kValueMax ? kValueMax : v);
}

}  // namespace mcgs
