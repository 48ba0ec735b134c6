#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "nonarch/errors.hpp"

namespace nonarch {

/// Element of F_q = F_p[Y]/(m(Y)): coefficients of 1, Y, ..., Y^{m-1},
/// each reduced mod p. Plain storage; arithmetic lives on FieldDesc.
struct FqElem {
  std::vector<uint32_t> c;

  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](uint32_t x) { return x == 0; });
  }
  friend bool operator==(const FqElem&, const FqElem&) = default;
};

/// Description of F_q, q = p^m, as F_p[Y]/(m(Y)) with m(Y) monic irreducible.
/// Validates primality and irreducibility eagerly; all operations are pure.
class FieldDesc {
 public:
  FieldDesc(uint32_t p, uint32_t m, std::vector<uint32_t> modulus)
      : p_(p), m_(m), modulus_(std::move(modulus)) {
    if (p_ < 2 || !is_prime(p_)) throw UsageError("p = " + std::to_string(p_) + " is not prime");
    if (m_ < 1) throw UsageError("extension degree must be >= 1");
    if (modulus_.size() != static_cast<size_t>(m_) + 1)
      throw UsageError("modulus must have m+1 coefficients");
    for (auto& x : modulus_) x %= p_;
    if (modulus_.back() != 1) throw UsageError("modulus must be monic");
    q_ = 1;
    for (uint32_t i = 0; i < m_; ++i) {
      q_ *= p_;
      if (q_ > kMaxQ) throw UsageError("q exceeds the desk-scale cap 2^16");
    }
    if (!poly_irreducible(modulus_)) throw UsageError("modulus is reducible over F_p");
  }

  /// Field with the shipped default modulus for q in {2,3,4,5,7,8,9}, any prime q,
  /// and (by lexicographic search) any other prime power up to the cap.
  static FieldDesc gf(uint64_t q) {
    uint64_t p = smallest_prime_factor(q);
    uint32_t m = 0;
    uint64_t t = q;
    while (t % p == 0) {
      t /= p;
      ++m;
    }
    if (t != 1) throw UsageError(std::to_string(q) + " is not a prime power");
    if (m == 1) return FieldDesc(static_cast<uint32_t>(p), 1, {0, 1});
    if (q == 4) return FieldDesc(2, 2, {1, 1, 1});
    if (q == 8) return FieldDesc(2, 3, {1, 1, 0, 1});
    if (q == 9) return FieldDesc(3, 2, {1, 0, 1});
    return FieldDesc(static_cast<uint32_t>(p), m,
                     find_irreducible(static_cast<uint32_t>(p), m));
  }

  uint32_t p() const { return p_; }
  uint32_t m() const { return m_; }
  uint64_t q() const { return q_; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;

  FqElem zero() const { return FqElem{std::vector<uint32_t>(m_, 0)}; }
  FqElem one() const {
    FqElem e = zero();
    e.c[0] = 1;
    return e;
  }

  /// Builds an element from arbitrary integers, reduced mod p.
  FqElem make(const std::vector<long long>& ints) const {
    if (ints.size() != m_) throw UsageError("element needs exactly m coefficients");
    FqElem e = zero();
    for (uint32_t i = 0; i < m_; ++i) {
      long long r = ints[i] % static_cast<long long>(p_);
      if (r < 0) r += p_;
      e.c[i] = static_cast<uint32_t>(r);
    }
    return e;
  }

  /// Mixed-radix decode: bijection [0, q) -> F_q used by enumeration drivers.
  FqElem from_index(uint64_t idx) const {
    if (idx >= q_) throw UsageError("element index out of range");
    FqElem e = zero();
    for (uint32_t i = 0; i < m_; ++i) {
      e.c[i] = static_cast<uint32_t>(idx % p_);
      idx /= p_;
    }
    return e;
  }

  uint64_t index_of(const FqElem& a) const {
    check(a);
    uint64_t idx = 0;
    for (uint32_t i = m_; i-- > 0;) idx = idx * p_ + a.c[i];
    return idx;
  }

  FqElem add(const FqElem& a, const FqElem& b) const {
    check(a);
    check(b);
    FqElem r = zero();
    for (uint32_t i = 0; i < m_; ++i) r.c[i] = (a.c[i] + b.c[i]) % p_;
    return r;
  }

  FqElem sub(const FqElem& a, const FqElem& b) const {
    check(a);
    check(b);
    FqElem r = zero();
    for (uint32_t i = 0; i < m_; ++i) r.c[i] = (a.c[i] + p_ - b.c[i]) % p_;
    return r;
  }

  FqElem neg(const FqElem& a) const { return sub(zero(), a); }

  FqElem mul(const FqElem& a, const FqElem& b) const {
    check(a);
    check(b);
    // schoolbook product, then reduction by the monic modulus
    std::vector<uint32_t> prod(2 * m_ - 1, 0);
    for (uint32_t i = 0; i < m_; ++i)
      for (uint32_t j = 0; j < m_; ++j)
        prod[i + j] = static_cast<uint32_t>(
            (prod[i + j] + static_cast<uint64_t>(a.c[i]) * b.c[j]) % p_);
    poly_reduce(prod);
    prod.resize(m_, 0);
    return FqElem{std::move(prod)};
  }

  FqElem inv(const FqElem& a) const {
    check(a);
    if (a.is_zero()) throw DivisionByZeroError("inverse of zero in F_q");
    // extended Euclid in F_p[Y] against the modulus
    std::vector<uint32_t> r0 = modulus_, r1 = trimmed(a.c);
    std::vector<uint32_t> t0 = {}, t1 = {1};
    while (!r1.empty()) {
      auto [quot, rem] = poly_divmod(r0, r1);
      std::vector<uint32_t> t2 = poly_sub(t0, poly_mul(quot, t1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    // r0 = gcd, a nonzero constant since the modulus is irreducible
    uint32_t scale = scalar_inv(r0.front());
    std::vector<uint32_t> out(m_, 0);
    for (size_t i = 0; i < t0.size(); ++i)
      out[i] = static_cast<uint32_t>(static_cast<uint64_t>(t0[i]) * scale % p_);
    return FqElem{std::move(out)};
  }

  FqElem pow(FqElem base, uint64_t e) const {
    FqElem acc = one();
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  std::string str(const FqElem& a) const {
    if (m_ == 1) return std::to_string(a.c[0]);
    std::string s = "[";
    for (uint32_t i = 0; i < m_; ++i) {
      if (i) s += ",";
      s += std::to_string(a.c[i]);
    }
    return s + "]";
  }

 private:
  static constexpr uint64_t kMaxQ = 1u << 16;

  uint32_t p_, m_;
  std::vector<uint32_t> modulus_;
  uint64_t q_;

  void check(const FqElem& a) const {
    if (a.c.size() != m_) throw UsageError("element does not belong to this field");
  }

  static bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  static uint64_t smallest_prime_factor(uint64_t n) {
    if (n < 2) throw UsageError("q must be at least 2");
    for (uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return d;
    return n;
  }

  // --- dense F_p[Y] helpers (coefficients low-to-high, no trailing zeros) ---

  static std::vector<uint32_t> trimmed(std::vector<uint32_t> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
  }

  uint32_t scalar_inv(uint32_t a) const {
    // Fermat: a^(p-2) mod p
    uint64_t acc = 1, base = a % p_, e = p_ - 2;
    while (e > 0) {
      if (e & 1) acc = acc * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<uint32_t>(acc);
  }

  std::vector<uint32_t> poly_mul(const std::vector<uint32_t>& a,
                                 const std::vector<uint32_t>& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j)
        r[i + j] = static_cast<uint32_t>((r[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p_);
    return trimmed(std::move(r));
  }

  std::vector<uint32_t> poly_sub(const std::vector<uint32_t>& a,
                                 const std::vector<uint32_t>& b) const {
    std::vector<uint32_t> r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
      uint32_t ai = i < a.size() ? a[i] : 0;
      uint32_t bi = i < b.size() ? b[i] : 0;
      r[i] = (ai + p_ - bi) % p_;
    }
    return trimmed(std::move(r));
  }

  std::pair<std::vector<uint32_t>, std::vector<uint32_t>> poly_divmod(
      std::vector<uint32_t> num, const std::vector<uint32_t>& den) const {
    if (den.empty()) throw DivisionByZeroError("polynomial division by zero");
    std::vector<uint32_t> quot(num.size() > den.size() - 1 ? num.size() - den.size() + 1 : 0, 0);
    uint32_t lead_inv = scalar_inv(den.back());
    while (num.size() >= den.size()) {
      size_t shift = num.size() - den.size();
      uint32_t f = static_cast<uint32_t>(static_cast<uint64_t>(num.back()) * lead_inv % p_);
      quot[shift] = f;
      for (size_t i = 0; i < den.size(); ++i) {
        uint64_t s = static_cast<uint64_t>(f) * den[i] % p_;
        num[shift + i] = static_cast<uint32_t>((num[shift + i] + p_ - s) % p_);
      }
      num = trimmed(std::move(num));
    }
    return {trimmed(std::move(quot)), std::move(num)};
  }

  // in-place reduction mod modulus_ of a product of degree <= 2m-2
  void poly_reduce(std::vector<uint32_t>& v) const {
    for (size_t i = v.size(); i-- > m_;) {
      uint32_t f = v[i];
      if (f == 0) continue;
      v[i] = 0;
      for (uint32_t j = 0; j < m_; ++j) {
        uint64_t s = static_cast<uint64_t>(f) * modulus_[j] % p_;
        v[i - m_ + j] = static_cast<uint32_t>((v[i - m_ + j] + p_ - s) % p_);
      }
    }
  }

  /// Trial factorization over F_p; feasible for the desk-scale cap p^m <= 2^16.
  bool poly_irreducible(const std::vector<uint32_t>& f) const {
    uint32_t deg = static_cast<uint32_t>(f.size()) - 1;
    if (deg == 1) return true;
    for (uint32_t k = 1; 2 * k <= deg; ++k) {
      // monic candidates of degree k, enumerated by base-p index over low coefficients
      uint64_t count = 1;
      for (uint32_t i = 0; i < k; ++i) count *= p_;
      for (uint64_t idx = 0; idx < count; ++idx) {
        std::vector<uint32_t> g(k + 1, 0);
        uint64_t t = idx;
        for (uint32_t i = 0; i < k; ++i) {
          g[i] = static_cast<uint32_t>(t % p_);
          t /= p_;
        }
        g[k] = 1;
        if (poly_divmod(f, g).second.empty()) return false;
      }
    }
    return true;
  }

  static std::vector<uint32_t> find_irreducible(uint32_t p, uint32_t m) {
    // smallest monic irreducible of degree m in lexicographic (base-p) order
    FieldDesc probe(p, 1, {0, 1});
    uint64_t count = 1;
    for (uint32_t i = 0; i < m; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
      std::vector<uint32_t> g(m + 1, 0);
      uint64_t t = idx;
      for (uint32_t i = 0; i < m; ++i) {
        g[i] = static_cast<uint32_t>(t % p);
        t /= p;
      }
      g[m] = 1;
      if (probe.poly_irreducible(g)) return g;
    }
    throw UsageError("no irreducible modulus found");  // unreachable for prime p
  }
};

}  // namespace nonarch
