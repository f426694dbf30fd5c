#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wag {

// Base class for all library errors.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A configured enumeration or table budget was exhausted.  Callers that can
// treat overflow as a result (Todd-Coxeter) use a status value instead; this
// exception is for situations where the computation cannot continue.
struct cap_exceeded : error {
  explicit cap_exceeded(const std::string& what) : error(what) {}
};

// Invalid input data (bad Coxeter matrix, unsupported family, ...).
struct invalid_argument : error {
  explicit invalid_argument(const std::string& what) : error(what) {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw error("int64 overflow in add");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw error("int64 overflow in sub");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw error("int64 overflow in mul");
  return r;
}

// FNV-1a 64-bit digest used for artifact fingerprints.  Not cryptographic;
// used only to compare run outputs for byte-identity.
class Digest {
 public:
  void update(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
  }
  void update(const std::string& s) { update(s.data(), s.size()); }
  std::uint64_t value() const { return state_; }
  std::string hex() const {
    static const char* d = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t v = state_;
    for (int i = 15; i >= 0; --i) {
      out[static_cast<std::size_t>(i)] = d[v & 0xf];
      v >>= 4;
    }
    return out;
  }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::string digest_of(const std::string& s) {
  Digest d;
  d.update(s);
  return d.hex();
}

}  // namespace wag
