#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json_fwd.hpp>

namespace knotint {

using BigInt = boost::multiprecision::cpp_int;

// Integer Laurent polynomial in t, stored sparsely (no zero coefficients).
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<int, BigInt> terms);
  // Coefficients of t^low, t^(low+1), ...
  static LaurentPoly from_coefficients(std::initializer_list<long long> coeffs, int low = 0);
  static LaurentPoly constant(long long c) { return from_coefficients({c}); }

  const std::map<int, BigInt>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int min_exponent() const;
  int max_exponent() const;
  BigInt coefficient(int exponent) const;
  BigInt evaluate(long long t) const;  // requires non-negative exponents or |t| == 1
  // Value at t modulo 2^61 - 1; negative exponents use the modular inverse.
  std::uint64_t evaluate_mod(std::uint64_t t) const;

  // Unit normalization: multiply by +-t^k so exponents are centred (symmetric
  // span around 0 when possible) and the top coefficient is positive.
  LaurentPoly normalized() const;
  bool is_symmetric() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
  friend auto operator<=>(const LaurentPoly& a, const LaurentPoly& b) {
    return a.to_string() <=> b.to_string();
  }

  // e.g. "t^-1 - 1 + t"
  std::string to_string() const;

 private:
  std::map<int, BigInt> terms_;
};

void to_json(nlohmann::json& j, const LaurentPoly& p);
void from_json(const nlohmann::json& j, LaurentPoly& p);

namespace modp {

inline constexpr std::uint64_t kPrime = (1ULL << 61) - 1;

inline std::uint64_t reduce(unsigned __int128 x) noexcept {
  std::uint64_t lo = static_cast<std::uint64_t>(x & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t r = lo + hi;
  if (r >= kPrime) r -= kPrime;
  return r;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) noexcept {
  return reduce(static_cast<unsigned __int128>(a) * b);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) noexcept {
  return a >= b ? a - b : a + kPrime - b;
}
inline std::uint64_t neg(std::uint64_t a) noexcept { return a == 0 ? 0 : kPrime - a; }
inline std::uint64_t from_signed(long long v) noexcept {
  return v >= 0 ? static_cast<std::uint64_t>(v) % kPrime
                : neg(static_cast<std::uint64_t>(-(v + 1)) % kPrime + 1);
}
std::uint64_t pow(std::uint64_t base, std::uint64_t exp) noexcept;
inline std::uint64_t inverse(std::uint64_t a) noexcept { return pow(a, kPrime - 2); }

}  // namespace modp

}  // namespace knotint
