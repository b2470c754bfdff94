#include "knotint/polynomial.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace knotint {

namespace modp {

std::uint64_t pow(std::uint64_t base, std::uint64_t exp) noexcept {
  std::uint64_t r = 1;
  base %= kPrime;
  while (exp) {
    if (exp & 1) r = mul(r, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return r;
}

}  // namespace modp

LaurentPoly::LaurentPoly(std::map<int, BigInt> terms) {
  for (auto& [e, c] : terms) {
    if (c != 0) terms_.emplace(e, std::move(c));
  }
}

LaurentPoly LaurentPoly::from_coefficients(std::initializer_list<long long> coeffs, int low) {
  std::map<int, BigInt> t;
  int e = low;
  for (long long c : coeffs) {
    if (c != 0) t[e] = c;
    ++e;
  }
  return LaurentPoly(std::move(t));
}

int LaurentPoly::min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentPoly::max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

BigInt LaurentPoly::coefficient(int exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt LaurentPoly::evaluate(long long t) const {
  BigInt sum = 0;
  for (const auto& [e, c] : terms_) {
    if (e < 0 && t != 1 && t != -1) throw std::domain_error("integer evaluation with negative exponent");
    BigInt p = 1;
    const long long base = t;
    for (int k = 0; k < std::abs(e); ++k) p *= base;  // |t| == 1 when e < 0
    sum += c * p;
  }
  return sum;
}

std::uint64_t LaurentPoly::evaluate_mod(std::uint64_t t) const {
  std::uint64_t sum = 0;
  const std::uint64_t tinv = modp::inverse(t);
  for (const auto& [e, c] : terms_) {
    const BigInt r = ((c % modp::kPrime) + modp::kPrime) % modp::kPrime;
    const std::uint64_t cm = static_cast<std::uint64_t>(r);
    const std::uint64_t pe = e >= 0 ? modp::pow(t, static_cast<std::uint64_t>(e))
                                    : modp::pow(tinv, static_cast<std::uint64_t>(-e));
    sum = modp::add(sum, modp::mul(cm, pe));
  }
  return sum;
}

LaurentPoly LaurentPoly::normalized() const {
  if (terms_.empty()) return {};
  const int lo = min_exponent();
  const int hi = max_exponent();
  // Shift so the exponent span is centred; odd spans lean to the negative side.
  const int shift = -lo - (hi - lo) / 2 - (hi - lo) % 2;
  const bool flip = terms_.rbegin()->second < 0;
  std::map<int, BigInt> t;
  for (const auto& [e, c] : terms_) t.emplace(e + shift, flip ? BigInt(-c) : c);
  return LaurentPoly(std::move(t));
}

bool LaurentPoly::is_symmetric() const {
  for (const auto& [e, c] : terms_) {
    if (coefficient(-e) != c) return false;
  }
  return true;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  std::map<int, BigInt> t = terms_;
  for (const auto& [e, c] : o.terms_) t[e] += c;
  return LaurentPoly(std::move(t));
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator-() const {
  std::map<int, BigInt> t;
  for (const auto& [e, c] : terms_) t.emplace(e, -c);
  return LaurentPoly(std::move(t));
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  std::map<int, BigInt> t;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) t[e1 + e2] += c1 * c2;
  }
  return LaurentPoly(std::move(t));
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (e == 0) {
      out << mag;
    } else {
      if (!unit) out << mag << "*";
      out << "t";
      if (e != 1) out << "^" << e;
    }
  }
  return out.str();
}

void to_json(nlohmann::json& j, const LaurentPoly& p) {
  j = nlohmann::json::object();
  for (const auto& [e, c] : p.terms()) {
    if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max()) {
      j[std::to_string(e)] = static_cast<long long>(c);
    } else {
      j[std::to_string(e)] = c.str();
    }
  }
}

void from_json(const nlohmann::json& j, LaurentPoly& p) {
  std::map<int, BigInt> t;
  for (const auto& [k, v] : j.items()) {
    t[std::stoi(k)] = v.is_string() ? BigInt(v.get<std::string>()) : BigInt(v.get<long long>());
  }
  p = LaurentPoly(std::move(t));
}

}  // namespace knotint
