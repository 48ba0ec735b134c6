#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nonarch/errors.hpp"
#include "nonarch/rational.hpp"

namespace nonarch {

/// (theta, K) with the certified two-sided bound j*theta - K <= l_j <= j*theta + K.
struct SlackCertificate {
  Rational theta;
  Rational K;
};

struct SlackViolation {
  size_t j;
  int64_t ell;
  Rational lower, upper;
};

struct SlackCheckResult {
  bool pass;
  std::optional<SlackViolation> first_violation;
};

/// Strictly increasing sequence of positive integers l_0 < l_1 < ... that
/// parametrizes the coefficient-moving automorphisms. The shipped families
/// evaluate in closed form, so values are pure functions of the index; the
/// configured cap bounds how far any computation may walk the sequence.
class ExponentSeq {
 public:
  enum class Kind { Gauss, Square, Table };

  static constexpr size_t kDefaultCap = size_t{1} << 20;

  /// l_j = 1 + floor(j*theta) for a non-integer rational theta > 1.
  /// Carries the slack certificate (theta, 1): j*theta <= l_j <= j*theta + 1.
  static ExponentSeq gauss(const Rational& theta) {
    if (theta <= Rational(1)) throw UsageError("gauss sequence needs theta > 1");
    if (is_integer(theta)) throw UsageError("gauss sequence needs a non-integer theta");
    ExponentSeq s;
    s.kind_ = Kind::Gauss;
    s.theta_ = theta;
    s.slack_ = SlackCertificate{theta, Rational(1)};
    return s;
  }

  /// l_j = j^2 + 1: the shipped superlinear family (l_j / j unbounded).
  static ExponentSeq square() {
    ExponentSeq s;
    s.kind_ = Kind::Square;
    return s;
  }

  /// Explicit finite table, for tests. Values must be positive and strictly increasing.
  static ExponentSeq table(std::vector<int64_t> values) {
    if (values.empty()) throw UsageError("table sequence must be nonempty");
    if (values.front() < 1) throw UsageError("sequence values must be positive");
    for (size_t j = 1; j < values.size(); ++j)
      if (values[j] <= values[j - 1]) throw UsageError("sequence must be strictly increasing");
    ExponentSeq s;
    s.kind_ = Kind::Table;
    s.table_ = std::move(values);
    return s;
  }

  /// Table with an attached slack certificate, verified over the whole table.
  static ExponentSeq table(std::vector<int64_t> values, const SlackCertificate& cert) {
    ExponentSeq s = table(std::move(values));
    auto res = s.check_slack(cert.theta, cert.K, s.table_.size() - 1);
    if (!res.pass) throw UsageError("slack certificate does not hold on the table");
    s.slack_ = cert;
    return s;
  }

  Kind kind() const { return kind_; }
  const std::optional<SlackCertificate>& slack() const { return slack_; }
  bool superlinear() const { return kind_ == Kind::Square; }
  size_t cap() const { return kind_ == Kind::Table ? table_.size() - 1 : cap_; }

  const Rational& theta() const {
    if (kind_ != Kind::Gauss) throw UsageError("theta is only defined for gauss sequences");
    return theta_;
  }

  int64_t at(size_t j) const {
    if (j > cap()) throw UsageError("sequence index beyond configured cap");
    switch (kind_) {
      case Kind::Gauss: {
        // floor(j * num/den) in 128-bit to keep the bracket bit-exact
        __int128 t = static_cast<__int128>(j) * theta_.numerator();
        __int128 f = t / theta_.denominator();  // t >= 0, den > 0
        return 1 + static_cast<int64_t>(f);
      }
      case Kind::Square:
        return static_cast<int64_t>(j) * static_cast<int64_t>(j) + 1;
      case Kind::Table:
        return table_[j];
    }
    throw UsageError("unreachable");
  }

  /// The j with l_j = i, if i is attained. Binary search; the sequence is
  /// strictly increasing with l_j >= j + 1, so j < i bounds the search.
  /// A Table must cover i (otherwise attainment is unknown, a usage error).
  std::optional<size_t> preimage(int64_t i) const {
    if (i < 1) return std::nullopt;
    if (kind_ == Kind::Table && table_.back() < i)
      throw UsageError("table sequence too short to decide preimage");
    size_t lo = 0, hi = std::min<size_t>(cap(), static_cast<size_t>(i - 1)) + 1;
    // invariant: l_j < i for j < lo; l_j >= i for j >= hi (within [0, hi])
    while (lo < hi) {
      size_t mid = lo + (hi - lo) / 2;
      if (at(mid) < i)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo <= cap() && at(lo) == i) return lo;
    return std::nullopt;
  }

  /// Exact check of j*theta - K <= l_j <= j*theta + K for 0 <= j <= J.
  SlackCheckResult check_slack(const Rational& theta, const Rational& K, size_t J) const {
    for (size_t j = 0; j <= J; ++j) {
      Rational mid = theta * Rational(static_cast<long long>(j));
      Rational lower = mid - K, upper = mid + K;
      Rational ell(at(j));
      if (ell < lower || ell > upper)
        return {false, SlackViolation{j, at(j), lower, upper}};
    }
    return {true, std::nullopt};
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Gauss:
        return "gauss:" + rational_str(theta_);
      case Kind::Square:
        return "square";
      case Kind::Table:
        return "table[" + std::to_string(table_.size()) + "]";
    }
    return "?";
  }

 private:
  ExponentSeq() = default;

  Kind kind_ = Kind::Square;
  Rational theta_{0};
  std::vector<int64_t> table_;
  std::optional<SlackCertificate> slack_;
  size_t cap_ = kDefaultCap;
};

/// Smallest k such that l_j >= n*j for every j in [k, J] (scanned exactly).
/// For the square family with J >= n the answer is global: j^2 + 1 >= n*j
/// holds for all j >= n, so no violation can occur beyond the scan.
inline int64_t threshold_index(const ExponentSeq& seq, int64_t n, size_t J) {
  size_t k = 0;
  for (size_t j = 0; j <= J; ++j)
    if (seq.at(j) < n * static_cast<int64_t>(j)) k = j + 1;
  return static_cast<int64_t>(k);
}

}  // namespace nonarch
