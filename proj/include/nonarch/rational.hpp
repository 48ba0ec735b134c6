#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "nonarch/errors.hpp"

namespace nonarch {

/// Exact rational number. Magnitudes in this library stay desk-scale
/// (exponent-sequence values, slack bounds), well inside long long.
using Rational = boost::rational<long long>;

/// floor(r) for a rational with positive denominator (boost invariant).
inline long long rational_floor(const Rational& r) {
  long long n = r.numerator();
  long long d = r.denominator();
  long long q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

/// Parses "3/2", "-1/3" or "2".
inline Rational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      return Rational(std::stoll(text));
    }
    long long num = std::stoll(text.substr(0, slash));
    long long den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw UsageError("rational with zero denominator: " + text);
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw UsageError("cannot parse rational: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw UsageError("rational out of range: '" + text + "'");
  }
}

inline std::string rational_str(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// An exact value of the form q^e (e rational) or 0, kept in the log_q domain
/// so that products and comparisons stay exact. Independent of the actual q,
/// which only matters for rendering (any q > 1 orders the values the same way).
class QExp {
 public:
  static QExp zero() { return QExp(); }
  static QExp pow(const Rational& e) {
    QExp v;
    v.zero_ = false;
    v.log_ = e;
    return v;
  }

  bool is_zero() const { return zero_; }
  const Rational& log() const {
    if (zero_) throw UsageError("log of zero QExp");
    return log_;
  }

  friend QExp operator*(const QExp& a, const QExp& b) {
    if (a.zero_ || b.zero_) return zero();
    return pow(a.log_ + b.log_);
  }

  /// q^e raised to an integer power k (zero stays zero for k > 0).
  QExp powi(long long k) const {
    if (zero_) {
      if (k <= 0) throw UsageError("0 raised to non-positive power");
      return zero();
    }
    return pow(log_ * k);
  }

  friend bool operator==(const QExp& a, const QExp& b) {
    if (a.zero_ != b.zero_) return false;
    return a.zero_ || a.log_ == b.log_;
  }
  friend bool operator<(const QExp& a, const QExp& b) {
    if (a.zero_) return !b.zero_;
    if (b.zero_) return false;
    return a.log_ < b.log_;
  }
  friend bool operator<=(const QExp& a, const QExp& b) { return a < b || a == b; }
  friend bool operator>(const QExp& a, const QExp& b) { return b < a; }
  friend bool operator>=(const QExp& a, const QExp& b) { return b <= a; }
  friend bool operator!=(const QExp& a, const QExp& b) { return !(a == b); }

 private:
  bool zero_ = true;
  Rational log_{0};
};

/// Renders q^e: exact decimal when e is a non-negative integer, "1/q^k" style
/// rational when negative integer, otherwise "q^(e)".
inline std::string qexp_str(const QExp& v, uint64_t q) {
  if (v.is_zero()) return "0";
  const Rational& e = v.log();
  if (is_integer(e)) {
    long long k = e.numerator();
    unsigned long long pw = 1;
    bool overflow = false;
    for (long long i = 0; i < (k < 0 ? -k : k); ++i) {
      if (pw > (~0ULL) / q) {
        overflow = true;
        break;
      }
      pw *= q;
    }
    if (!overflow) {
      if (k >= 0) return std::to_string(pw);
      return "1/" + std::to_string(pw);
    }
  }
  return "q^(" + rational_str(e) + ")";
}

}  // namespace nonarch
