#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonarch/errors.hpp"
#include "nonarch/exponent_seq.hpp"
#include "nonarch/series.hpp"

namespace nonarch {

/// floor division / non-negative remainder for series exponents.
inline int64_t floordiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  if (a % b != 0 && (a < 0) != (b < 0)) --q;
  return q;
}
inline int64_t floormod(int64_t a, int64_t b) { return a - b * floordiv(a, b); }

enum class MapTag {
  Identity,
  Beta,
  Alpha,
  AlphaInv,
  BarBeta,
  BarAlpha,
  BarAlphaInv,
  Tau,
  TauInv,
  ScalarMul,
  Sum,
  Compose,
};

/// A self-map of (a ball in) K as an evaluable descriptor. Every shipped
/// descriptor is additive: f(a+b) = f(a) + f(b) bit-exactly. Evaluation never
/// loses precision beyond the documented per-descriptor rule (0 for all
/// descriptors except the tau/tau_inv shifts, which move the window).
class SeriesMap {
 public:
  static SeriesMap identity() { return SeriesMap(MapTag::Identity); }

  /// beta(sum a_j X^j) = sum a_j X^{l_j}, defined on O (valuation >= 0).
  static SeriesMap beta(ExponentSeq seq) { return SeriesMap(MapTag::Beta, std::move(seq)); }
  /// alpha = id + beta on O.
  static SeriesMap alpha(ExponentSeq seq) { return SeriesMap(MapTag::Alpha, std::move(seq)); }
  /// Inverse of alpha on O, by the forward coefficient recursion.
  static SeriesMap alpha_inv(ExponentSeq seq) { return SeriesMap(MapTag::AlphaInv, std::move(seq)); }
  /// Extensions to K fixing the principal part.
  static SeriesMap bar_beta(ExponentSeq seq) { return SeriesMap(MapTag::BarBeta, std::move(seq)); }
  static SeriesMap bar_alpha(ExponentSeq seq) { return SeriesMap(MapTag::BarAlpha, std::move(seq)); }
  static SeriesMap bar_alpha_inv(ExponentSeq seq) {
    return SeriesMap(MapTag::BarAlphaInv, std::move(seq));
  }
  /// tau(z) = X*z and its inverse.
  static SeriesMap tau() { return SeriesMap(MapTag::Tau); }
  static SeriesMap tau_inv() { return SeriesMap(MapTag::TauInv); }

  static SeriesMap scalar_mul(Series c) {
    SeriesMap m(MapTag::ScalarMul);
    m.scalar_ = std::move(c);
    return m;
  }

  static SeriesMap sum(std::vector<SeriesMap> terms) {
    SeriesMap m(MapTag::Sum);
    m.children_ = std::move(terms);
    return m;
  }

  /// Composition, outermost first: compose({f, g}) evaluates f(g(z)).
  static SeriesMap compose(std::vector<SeriesMap> chain) {
    SeriesMap m(MapTag::Compose);
    m.children_ = std::move(chain);
    return m;
  }

  MapTag tag() const { return tag_; }
  const ExponentSeq* seq() const { return seq_ ? &*seq_ : nullptr; }
  const std::vector<SeriesMap>& children() const { return children_; }

  /// All shipped descriptors are additive group endomorphisms of (K, +).
  bool additive() const { return true; }

  Series apply(const Series& z) const {
    switch (tag_) {
      case MapTag::Identity:
        return z;
      case MapTag::Beta:
        return apply_beta(z);
      case MapTag::Alpha:
        return z + apply_beta(z);
      case MapTag::AlphaInv:
        return apply_alpha_inv(z);
      case MapTag::BarBeta: {
        auto [zp, zi] = z.split();
        return apply_beta(zi);
      }
      case MapTag::BarAlpha: {
        auto [zp, zi] = z.split();
        return zp + (zi + apply_beta(zi));
      }
      case MapTag::BarAlphaInv: {
        auto [zp, zi] = z.split();
        return zp + apply_alpha_inv(zi);
      }
      case MapTag::Tau:
        return z.shifted(1);
      case MapTag::TauInv:
        return z.shifted(-1);
      case MapTag::ScalarMul:
        return *scalar_ * z;
      case MapTag::Sum: {
        if (children_.empty()) throw UsageError("empty sum descriptor");
        Series acc = children_.front().apply(z);
        for (size_t i = 1; i < children_.size(); ++i) acc = acc + children_[i].apply(z);
        return acc;
      }
      case MapTag::Compose: {
        if (children_.empty()) throw UsageError("empty compose descriptor");
        Series acc = z;
        for (size_t i = children_.size(); i-- > 0;) acc = children_[i].apply(acc);
        return acc;
      }
    }
    throw UsageError("unreachable");
  }

  Series operator()(const Series& z) const { return apply(z); }

  std::string describe() const {
    switch (tag_) {
      case MapTag::Identity: return "id";
      case MapTag::Beta: return "beta(" + seq_->describe() + ")";
      case MapTag::Alpha: return "alpha(" + seq_->describe() + ")";
      case MapTag::AlphaInv: return "alpha_inv(" + seq_->describe() + ")";
      case MapTag::BarBeta: return "bar_beta(" + seq_->describe() + ")";
      case MapTag::BarAlpha: return "bar_alpha(" + seq_->describe() + ")";
      case MapTag::BarAlphaInv: return "bar_alpha_inv(" + seq_->describe() + ")";
      case MapTag::Tau: return "tau";
      case MapTag::TauInv: return "tau_inv";
      case MapTag::ScalarMul: return "scalar_mul";
      case MapTag::Sum: {
        std::string s = "sum(";
        for (size_t i = 0; i < children_.size(); ++i)
          s += (i ? "," : "") + children_[i].describe();
        return s + ")";
      }
      case MapTag::Compose: {
        std::string s = "compose(";
        for (size_t i = 0; i < children_.size(); ++i)
          s += (i ? "," : "") + children_[i].describe();
        return s + ")";
      }
    }
    return "?";
  }

 private:
  explicit SeriesMap(MapTag tag) : tag_(tag) {}
  SeriesMap(MapTag tag, ExponentSeq seq) : tag_(tag), seq_(std::move(seq)) {}

  void require_integral(const Series& z) const {
    // z in O must be certain: known valuation >= 0, or zero-flagged with prec >= 0
    if (z.is_zero()) {
      if (z.prec() < 0)
        throw PrecisionError("membership in O undecidable at this precision");
      return;
    }
    if (z.val() < 0) throw DomainError("map is defined on O only (valuation >= 0)");
  }

  Series apply_beta(const Series& z) const {
    require_integral(z);
    if (z.is_zero()) return z;  // beta(X^P O) is contained in X^P O since l_j >= j
    std::vector<std::pair<int64_t, FqElem>> terms;
    const auto& w = z.coeffs();
    for (size_t i = 0; i < w.size(); ++i) {
      if (w[i].is_zero()) continue;
      int64_t target = seq_->at(static_cast<size_t>(z.val()) + i);
      if (target < z.prec()) terms.emplace_back(target, w[i]);
    }
    return Series::from_terms(z.field(), terms, z.prec());
  }

  /// Solves alpha(a) = w coefficient by coefficient: a_i = w_i off the image
  /// of l, and a_{l_j} = w_{l_j} - a_j (well-founded since j < l_j).
  Series apply_alpha_inv(const Series& w) const {
    require_integral(w);
    if (w.is_zero()) return w;
    const FieldDesc& F = w.field();
    int64_t prec = w.prec();
    std::vector<FqElem> a(static_cast<size_t>(prec), F.zero());
    for (int64_t i = 0; i < prec; ++i) {
      FqElem v = w.coeff(i);
      if (auto j = seq_->preimage(i)) v = F.sub(v, a[*j]);
      a[static_cast<size_t>(i)] = v;
    }
    return Series(F, 0, std::move(a), prec);
  }

  MapTag tag_;
  std::optional<ExponentSeq> seq_;
  std::optional<Series> scalar_;
  std::vector<SeriesMap> children_;
};

/// Element of K^d: a tuple of series over one field. Components may carry
/// different precisions; normalize_prec() levels them when needed.
struct VectorSeries {
  std::vector<Series> entries;

  int dim() const { return static_cast<int>(entries.size()); }

  const FieldDesc& field() const {
    if (entries.empty()) throw UsageError("empty vector");
    return entries.front().field();
  }

  VectorSeries normalized_prec() const {
    int64_t p = entries.front().prec();
    for (const auto& e : entries) p = std::min(p, e.prec());
    VectorSeries out;
    for (const auto& e : entries) out.entries.push_back(e.truncated(p));
    return out;
  }

  friend VectorSeries operator+(const VectorSeries& a, const VectorSeries& b) {
    if (a.dim() != b.dim()) throw UsageError("vector dimension mismatch");
    VectorSeries out;
    for (int i = 0; i < a.dim(); ++i) out.entries.push_back(a.entries[i] + b.entries[i]);
    return out;
  }

  friend bool operator==(const VectorSeries& a, const VectorSeries& b) {
    return a.entries == b.entries;
  }

  /// Max-norm as an exact power of q. Needs every component decidable: a
  /// zero-flagged component only passes if its bound cannot affect the max.
  QExp max_abs() const {
    QExp best = QExp::zero();
    bool all_exact = true;
    QExp flagged_bound = QExp::zero();
    for (const auto& e : entries) {
      AbsValue a = e.abs();
      if (a.exact) {
        if (best < a.value) best = a.value;
      } else {
        all_exact = false;
        if (flagged_bound < a.value) flagged_bound = a.value;
      }
    }
    if (!all_exact && !(flagged_bound <= best))
      throw PrecisionError("max-norm undecidable: a zero-flagged component could dominate");
    return best;
  }
};

/// Coefficient-interleaving chart phi*: K -> K^{d*}. Component r collects the
/// coefficients a_{d*j + r} (Euclidean residues, so negative exponents work).
inline VectorSeries interleave(int dstar, const Series& z) {
  if (dstar < 1) throw UsageError("interleave needs dstar >= 1");
  const FieldDesc& F = z.field();
  int64_t d = dstar;
  // component r of z mod X^P is known mod X^{ceil((P - r)/d)}
  auto comp_prec = [&](int64_t r) {
    if (z.prec() >= Series::kPrecInf) return Series::kPrecInf;
    return -floordiv(-(z.prec() - r), d);
  };
  VectorSeries out;
  if (z.is_zero()) {
    for (int64_t r = 0; r < d; ++r) out.entries.push_back(Series::zero(F, comp_prec(r)));
    return out;
  }
  std::vector<std::vector<std::pair<int64_t, FqElem>>> terms(static_cast<size_t>(d));
  const auto& w = z.coeffs();
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i].is_zero()) continue;
    int64_t e = z.val() + static_cast<int64_t>(i);
    terms[static_cast<size_t>(floormod(e, d))].emplace_back(floordiv(e, d), w[i]);
  }
  for (int64_t r = 0; r < d; ++r)
    out.entries.push_back(Series::from_terms(F, terms[static_cast<size_t>(r)], comp_prec(r)));
  return out;
}

/// Inverse of the interleaving chart.
inline Series deinterleave(int dstar, const VectorSeries& v) {
  if (dstar < 1) throw UsageError("deinterleave needs dstar >= 1");
  if (v.dim() != dstar) throw UsageError("vector has wrong dimension for this chart");
  const FieldDesc& F = v.field();
  int64_t d = dstar;
  int64_t prec = Series::kPrecInf;
  for (int64_t r = 0; r < d; ++r) {
    int64_t pr = v.entries[static_cast<size_t>(r)].prec();
    int64_t contrib =
        (pr >= Series::kPrecInf / (2 * d)) ? Series::kPrecInf : d * pr + r;
    prec = std::min(prec, contrib);
  }
  std::vector<std::pair<int64_t, FqElem>> terms;
  for (int64_t r = 0; r < d; ++r) {
    const Series& c = v.entries[static_cast<size_t>(r)];
    if (c.is_zero()) continue;
    const auto& w = c.coeffs();
    for (size_t i = 0; i < w.size(); ++i) {
      if (w[i].is_zero()) continue;
      int64_t e = d * (c.val() + static_cast<int64_t>(i)) + r;
      if (e < prec) terms.emplace_back(e, w[i]);
    }
  }
  return Series::from_terms(F, terms, prec);
}

/// The K-linear map phi* . tau . (phi*)^{-1} on K^{d*}: the conjugation
/// identity interleave(tau(z)) = cyclic_shift(interleave(z)) forces
/// (u_0, ..., u_{d-1}) |-> (X*u_{d-1}, u_0, ..., u_{d-2}).
inline VectorSeries cyclic_shift_apply(int dstar, const VectorSeries& v) {
  if (v.dim() != dstar) throw UsageError("vector has wrong dimension for this map");
  VectorSeries out;
  out.entries.push_back(v.entries.back().shifted(1));
  for (int i = 0; i + 1 < dstar; ++i) out.entries.push_back(v.entries[static_cast<size_t>(i)]);
  return out;
}

inline VectorSeries cyclic_shift_inv_apply(int dstar, const VectorSeries& v) {
  if (v.dim() != dstar) throw UsageError("vector has wrong dimension for this map");
  VectorSeries out;
  for (int i = 1; i < dstar; ++i) out.entries.push_back(v.entries[static_cast<size_t>(i)]);
  out.entries.push_back(v.entries.front().shifted(-1));
  return out;
}

}  // namespace nonarch
