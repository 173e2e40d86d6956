#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geo3ap {

// Exact arithmetic carrier for all coordinates and distances. mpq_class keeps
// values in lowest terms with a positive denominator as long as every value is
// built through make_rational / parse_rational (raw mpq_class(num, den) does
// not canonicalize).
using Rational = mpq_class;
using Integer = mpz_class;

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct VerificationError : std::runtime_error {
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

// Violations of guarantees the construction itself is supposed to provide.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline Rational make_rational(Integer num, Integer den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(std::move(num), std::move(den));
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

// Accepts "123", "-4", "7/2", "-7/2". No whitespace, no floating point.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { throw DomainError("malformed rational '" + std::string(text) + "'"); };
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) bad();
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) bad();
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') bad();
    return Integer(std::string(s), 10);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den <= 0) bad();
  return make_rational(std::move(num), std::move(den));
}

// Emits "n" for integers and "n/d" otherwise.
inline std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline Integer floor_to_integer(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline Integer ceil_to_integer(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline Integer lcm_integer(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool fits_int64(const Integer& v) {
  static const Integer lo(INT64_MIN), hi(INT64_MAX);
  return v >= lo && v <= hi;
}

inline std::int64_t to_int64(const Integer& v) {
  // mpz_get_si saturates at long range; callers check fits_int64 first.
  return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
}

inline Integer pow_integer(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Integer isqrt_floor(const Integer& v) {
  if (v < 0) throw DomainError("isqrt of negative value");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

// Largest multiple of 2^-bits whose square does not exceed r (r >= 0).
inline Rational sqrt_lower_bound(const Rational& r, unsigned bits = 60) {
  if (r < 0) throw DomainError("sqrt of negative value");
  Integer scale = pow_integer(Integer(2), bits);
  Integer scaled_num = r.get_num() * scale * scale;
  Integer root = isqrt_floor(scaled_num / r.get_den());
  return make_rational(root, scale);
}

}  // namespace geo3ap
