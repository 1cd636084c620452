#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ramsey {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Values and tuple entries are natural numbers.
using Nat = std::uint64_t;

// Malformed input: bad flags, dimension mismatches, broken witnesses.
// Distinguished from a negative answer, which is a plain `false`.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A lazily consulted sequence or witness stream ran out of data.
// Carries the first index that would have been needed.
class NeedPrefixError : public std::runtime_error {
 public:
  NeedPrefixError(const std::string& what, std::size_t required)
      : std::runtime_error(what), required_index(required) {}
  std::size_t required_index;
};

// Arithmetic left the representable range (e.g. powers rule at large index).
class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A classification search could not settle within its bound; never silently
// coerced to an answer.
class UnclassifiableError : public std::runtime_error {
 public:
  UnclassifiableError(const std::string& what, Nat bound)
      : std::runtime_error(what), bound(bound) {}
  Nat bound;
};

// Three-valued answer for questions that finite prefix data cannot always
// settle. `bound` records how far the search looked before giving up.
struct Tristate {
  enum Value { No = 0, Yes = 1, Unknown = 2 };
  Value value = Unknown;
  Nat bound = 0;

  static Tristate yes() { return {Yes, 0}; }
  static Tristate no() { return {No, 0}; }
  static Tristate unknown(Nat bound) { return {Unknown, bound}; }

  bool is_yes() const { return value == Yes; }
  bool is_no() const { return value == No; }
  bool is_unknown() const { return value == Unknown; }
  bool decided() const { return value != Unknown; }
};

inline Nat checked_add(Nat a, Nat b) {
  Nat r = a + b;
  if (r < a) throw OverflowError("addition overflow");
  return r;
}

inline Nat checked_mul(Nat a, Nat b) {
  if (a != 0 && b > UINT64_MAX / a) throw OverflowError("multiplication overflow");
  return a * b;
}

inline Nat checked_pow(Nat base, Nat exp) {
  Nat r = 1;
  for (Nat i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// FNV-1a, used for content hashes in run manifests.
inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ramsey
