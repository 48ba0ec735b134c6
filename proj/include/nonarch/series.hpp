#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nonarch/errors.hpp"
#include "nonarch/fq.hpp"
#include "nonarch/rational.hpp"

namespace nonarch {

/// |z| as an exact power of q. `exact` is false when the value is only an
/// upper bound (the input was indistinguishable from 0 at its precision).
struct AbsValue {
  QExp value;
  bool exact;
};

/// Truncated formal Laurent series over F_q: an element of K = F_q((X))
/// known modulo X^prec. Canonical form: the stored window starts at the
/// valuation (leading coefficient nonzero), carries no trailing zeros, and a
/// series with no nonzero known coefficient is zero-flagged (meaning:
/// indistinguishable from 0 modulo X^prec). Values are immutable.
class Series {
 public:
  /// Precision sentinel for exactly-known (polynomial) zero.
  static constexpr int64_t kPrecInf = int64_t{1} << 60;

  Series(FieldDesc field, int64_t val, std::vector<FqElem> coeffs, int64_t prec)
      : field_(std::move(field)), zero_(false), val_(val), coeffs_(std::move(coeffs)), prec_(prec) {
    canonicalize();
  }

  static Series zero(FieldDesc field, int64_t prec) {
    return Series(std::move(field), prec, {}, prec);
  }

  static Series exact_zero(FieldDesc field) { return zero(std::move(field), kPrecInf); }

  static Series one(const FieldDesc& field, int64_t prec) { return monomial(field, 0, prec); }

  static Series monomial(const FieldDesc& field, int64_t exp, int64_t prec) {
    return Series(field, exp, {field.one()}, prec);
  }

  static Series from_terms(const FieldDesc& field,
                           const std::vector<std::pair<int64_t, FqElem>>& terms, int64_t prec) {
    if (terms.empty()) return zero(field, prec);
    int64_t lo = terms.front().first;
    int64_t hi = lo;
    for (const auto& [e, c] : terms) {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    std::vector<FqElem> w(static_cast<size_t>(hi - lo + 1), field.zero());
    for (const auto& [e, c] : terms) w[static_cast<size_t>(e - lo)] = field.add(w[static_cast<size_t>(e - lo)], c);
    return Series(field, lo, std::move(w), prec);
  }

  const FieldDesc& field() const { return field_; }

  /// True when the series is indistinguishable from 0 modulo X^prec.
  bool is_zero() const { return zero_; }
  bool exactly_zero() const { return zero_ && prec_ == kPrecInf; }

  /// Valuation (lowest exponent with nonzero coefficient). Undetermined for a
  /// zero-flagged series.
  int64_t val() const {
    if (zero_) throw PrecisionError("valuation undetermined: series is zero-flagged");
    return val_;
  }

  /// Exact valuation when known, otherwise the precision (a certified lower bound).
  int64_t val_lower_bound() const { return zero_ ? prec_ : val_; }

  int64_t prec() const { return prec_; }
  const std::vector<FqElem>& coeffs() const { return coeffs_; }

  /// Coefficient at exponent e; requires e < prec (it is not known beyond).
  FqElem coeff(int64_t e) const {
    if (e >= prec_) throw UsageError("coefficient beyond known precision");
    if (zero_ || e < val_ || e >= val_ + static_cast<int64_t>(coeffs_.size())) return field_.zero();
    return coeffs_[static_cast<size_t>(e - val_)];
  }

  AbsValue abs() const {
    if (exactly_zero()) return {QExp::zero(), true};
    if (zero_) return {QExp::pow(Rational(-prec_)), false};
    return {QExp::pow(Rational(-val_)), true};
  }

  /// Forgets information: lowers the precision (never raises it).
  Series truncated(int64_t new_prec) const {
    if (new_prec > prec_) throw UsageError("cannot raise precision by truncation");
    if (zero_) return zero(field_, new_prec);
    return Series(field_, val_, coeffs_, new_prec);
  }

  /// Multiplication by X^k; valuation and precision both shift by k.
  Series shifted(int64_t k) const {
    if (zero_) return zero(field_, sat_add(prec_, k));
    return Series(field_, val_ + k, coeffs_, sat_add(prec_, k));
  }

  /// z = z' + z'' with z' purely principal (exponents < 0) and z'' integral.
  /// Both parts inherit the precision of z.
  std::pair<Series, Series> split() const {
    if (zero_) return {zero(field_, prec_), zero(field_, prec_)};
    std::vector<FqElem> principal, integral;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      if (val_ + static_cast<int64_t>(i) < 0)
        principal.push_back(coeffs_[i]);
      else
        integral.push_back(coeffs_[i]);
    }
    int64_t int_start = std::max<int64_t>(val_, 0);
    return {Series(field_, val_, std::move(principal), prec_),
            Series(field_, int_start, std::move(integral), prec_)};
  }

  friend Series operator+(const Series& a, const Series& b) {
    a.require_same_field(b);
    int64_t prec = std::min(a.prec_, b.prec_);
    if (a.zero_ && b.zero_) return zero(a.field_, prec);
    int64_t lo = std::min(a.val_lower_bound(), b.val_lower_bound());
    if (lo >= prec) return zero(a.field_, prec);
    std::vector<FqElem> w(static_cast<size_t>(prec - lo), a.field_.zero());
    auto acc = [&](const Series& s) {
      if (s.zero_) return;
      for (size_t i = 0; i < s.coeffs_.size(); ++i) {
        int64_t e = s.val_ + static_cast<int64_t>(i);
        if (e >= prec) break;
        w[static_cast<size_t>(e - lo)] = a.field_.add(w[static_cast<size_t>(e - lo)], s.coeffs_[i]);
      }
    };
    acc(a);
    acc(b);
    return Series(a.field_, lo, std::move(w), prec);
  }

  friend Series operator-(const Series& a) {
    if (a.zero_) return a;
    std::vector<FqElem> w = a.coeffs_;
    for (auto& c : w) c = a.field_.neg(c);
    return Series(a.field_, a.val_, std::move(w), a.prec_);
  }

  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  friend Series operator*(const Series& a, const Series& b) {
    a.require_same_field(b);
    int64_t prec = std::min(sat_add(a.prec_, b.val_lower_bound()),
                            sat_add(b.prec_, a.val_lower_bound()));
    if (a.zero_ || b.zero_) return zero(a.field_, prec);
    int64_t lo = a.val_ + b.val_;
    if (lo >= prec) return zero(a.field_, prec);
    std::vector<FqElem> w(static_cast<size_t>(prec - lo), a.field_.zero());
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (size_t j = 0; j < b.coeffs_.size(); ++j) {
        int64_t e = a.val_ + static_cast<int64_t>(i) + b.val_ + static_cast<int64_t>(j);
        if (e >= prec) break;
        w[static_cast<size_t>(e - lo)] =
            a.field_.add(w[static_cast<size_t>(e - lo)], a.field_.mul(a.coeffs_[i], b.coeffs_[j]));
      }
    }
    return Series(a.field_, lo, std::move(w), prec);
  }

  /// Multiplicative inverse, computed by the unit-part coefficient recursion.
  /// Output precision: prec - 2*val (the standard propagation for inversion).
  Series inverse() const {
    if (zero_) throw CannotInvertError("cannot invert a series indistinguishable from zero");
    int64_t n = prec_ - val_;  // number of known coefficients, >= 1
    std::vector<FqElem> s(static_cast<size_t>(n), field_.zero());
    for (size_t i = 0; i < coeffs_.size(); ++i) s[i] = coeffs_[i];
    std::vector<FqElem> t(static_cast<size_t>(n), field_.zero());
    FqElem lead_inv = field_.inv(s[0]);
    t[0] = lead_inv;
    for (int64_t k = 1; k < n; ++k) {
      FqElem acc = field_.zero();
      for (int64_t i = 1; i <= k; ++i)
        acc = field_.add(acc, field_.mul(s[static_cast<size_t>(i)], t[static_cast<size_t>(k - i)]));
      t[static_cast<size_t>(k)] = field_.neg(field_.mul(lead_inv, acc));
    }
    return Series(field_, -val_, std::move(t), prec_ - 2 * val_);
  }

  /// Structural equality of canonical forms (field, precision, window).
  friend bool operator==(const Series& a, const Series& b) {
    if (!(a.field_ == b.field_) || a.zero_ != b.zero_ || a.prec_ != b.prec_) return false;
    if (a.zero_) return true;
    return a.val_ == b.val_ && a.coeffs_ == b.coeffs_;
  }

  static int64_t sat_add(int64_t a, int64_t b) {
    if (a >= kPrecInf || b >= kPrecInf) return kPrecInf;
    int64_t s = a + b;
    return s >= kPrecInf ? kPrecInf : s;
  }

 private:
  void canonicalize() {
    if (prec_ > kPrecInf) prec_ = kPrecInf;
    for (const auto& c : coeffs_)
      if (c.c.size() != field_.m()) throw UsageError("coefficient does not belong to the field");
    // drop unknown territory
    if (val_ + static_cast<int64_t>(coeffs_.size()) > prec_) {
      int64_t keep = prec_ - val_;
      coeffs_.resize(keep > 0 ? static_cast<size_t>(keep) : 0);
    }
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead == coeffs_.size()) {
      zero_ = true;
      coeffs_.clear();
      val_ = prec_;
      return;
    }
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    val_ += static_cast<int64_t>(lead);
    while (coeffs_.back().is_zero()) coeffs_.pop_back();
    if (prec_ >= kPrecInf)
      throw UsageError("only the zero series may carry infinite precision");
  }

  void require_same_field(const Series& other) const {
    if (!(field_ == other.field_)) throw UsageError("operands belong to different fields");
  }

  FieldDesc field_;
  bool zero_;
  int64_t val_;
  std::vector<FqElem> coeffs_;
  int64_t prec_;
};

/// Number of residues in X^{v_min}·O modulo X^P; guarded by the enumeration budget.
inline uint64_t enumeration_count(const FieldDesc& field, int64_t v_min, int64_t prec,
                                  uint64_t budget) {
  if (v_min >= prec) throw UsageError("enumeration window is empty (v_min >= prec)");
  uint64_t n = 1;
  for (int64_t k = v_min; k < prec; ++k) {
    if (n > budget / field.q()) throw UsageError("enumeration budget exceeded");
    n *= field.q();
  }
  if (n > budget) throw UsageError("enumeration budget exceeded");
  return n;
}

/// Residue number `index` (base-q digits = coefficients, low exponent first).
/// A stateless bijection, so scans can be partitioned and restarted freely.
inline Series series_from_index(const FieldDesc& field, int64_t v_min, int64_t prec,
                                uint64_t index) {
  if (v_min > prec) throw UsageError("enumeration window is empty (v_min > prec)");
  std::vector<FqElem> w;
  w.reserve(static_cast<size_t>(prec - v_min));
  for (int64_t k = v_min; k < prec; ++k) {
    w.push_back(field.from_index(index % field.q()));
    index /= field.q();
  }
  if (index != 0) throw UsageError("series index out of range");
  return Series(field, v_min, std::move(w), prec);
}

template <typename Fn>
void for_each_series(const FieldDesc& field, int64_t v_min, int64_t prec, uint64_t budget,
                     Fn&& fn) {
  uint64_t n = enumeration_count(field, v_min, prec, budget);
  for (uint64_t i = 0; i < n; ++i) fn(series_from_index(field, v_min, prec, i));
}

inline std::vector<Series> enumerate_series(const FieldDesc& field, int64_t v_min, int64_t prec,
                                            uint64_t budget = uint64_t{1} << 20) {
  std::vector<Series> out;
  out.reserve(enumeration_count(field, v_min, prec, budget));
  for_each_series(field, v_min, prec, budget, [&](Series s) { out.push_back(std::move(s)); });
  return out;
}

}  // namespace nonarch
