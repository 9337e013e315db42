#pragma once

// Exact arithmetic in GF(p^n).
//
// Elements are coefficient vectors (constant term first) of polynomials of
// degree < n over F_p, reduced modulo a fixed monic irreducible modulus. The
// modulus is the lexicographically smallest irreducible (coefficients compared
// low degree first) and the multiplicative generator gamma is the
// lexicographically smallest primitive element, so every canonical form built
// on top of this module is reproducible.
//
// A GaloisField also keeps exp/log tables with respect to gamma. Those are
// derived from the polynomial product and serve the hot paths (products,
// discrete logs, "g^k" notation).

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aglmu/error.hpp"
#include "aglmu/numtheory.hpp"

namespace aglmu {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

inline constexpr u64 kDefaultSizeCap = u64{1} << 20;

struct FieldSpec {
  u32 p = 2;
  u32 n = 1;
  u64 q = 2;
  /// Monic modulus, constant term first; size n + 1.
  std::vector<u32> modulus{0, 1};

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(std::vector<u32> coeffs) : coeffs_(std::move(coeffs)) {}

  const std::vector<u32>& coeffs() const noexcept { return coeffs_; }
  u32 operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](u32 c) { return c == 0; });
  }

  // Lexicographic on the coefficient vector, constant term first.
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  std::vector<u32> coeffs_;
};

struct GeneratorCertificate {
  FieldElement gamma;
  u64 order = 1;
  /// (prime l | q-1, gamma^((q-1)/l)), each witness != 1.
  std::vector<std::pair<u64, FieldElement>> prime_checks;
};

namespace detail {

using Poly = std::vector<u32>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline u64 inv_mod_prime(u64 a, u64 p) { return nt::powmod(a, p - 2, p); }

/// Remainder of f modulo g over F_p; g nonzero with trimmed leading coefficient.
inline Poly poly_rem(Poly f, const Poly& g, u64 p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const u64 lead_inv = inv_mod_prime(g.back(), p);
  while (f.size() >= g.size()) {
    const u64 factor = nt::mulmod(f.back(), lead_inv, p);
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      const u64 sub = nt::mulmod(factor, g[i], p);
      f[shift + i] = static_cast<u32>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, u64 p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return deg == 1;
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    const u64 count = *nt::checked_pow(p, k);
    for (u64 idx = 0; idx < count; ++idx) {
      Poly g(k + 1, 0);
      g[k] = 1;
      u64 rest = idx;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = static_cast<u32>(rest % p);
        rest /= p;
      }
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

/// Product of two reduced elements modulo the field modulus.
inline Poly poly_mulmod(const Poly& a, const Poly& b, const FieldSpec& spec) {
  const u64 p = spec.p;
  const std::size_t n = spec.n;
  std::vector<u64> prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      prod[i + j] = (prod[i + j] + nt::mulmod(a[i], b[j], p)) % p;
  }
  // The modulus is monic: x^n = -(m_0 + ... + m_{n-1} x^{n-1}).
  for (std::size_t k = prod.size(); k-- > n;) {
    const u64 c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const u64 sub = nt::mulmod(c, spec.modulus[i], p);
      prod[k - n + i] = (prod[k - n + i] + p - sub) % p;
    }
  }
  Poly out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<u32>(prod[i]);
  return out;
}

inline Poly poly_powmod(Poly base, u64 exp, const FieldSpec& spec) {
  Poly result(spec.n, 0);
  result[0] = 1;
  while (exp > 0) {
    if (exp & 1U) result = poly_mulmod(result, base, spec);
    exp >>= 1U;
    if (exp > 0) base = poly_mulmod(base, base, spec);
  }
  return result;
}

/// Decode a lexicographic rank (constant coefficient most significant).
inline Poly from_lex_rank(u64 rank, u64 p, std::size_t n) {
  Poly c(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    c[i] = static_cast<u32>(rank % p);
    rank /= p;
  }
  return c;
}

inline bool is_one(const Poly& c) {
  if (c.empty() || c[0] != 1) return false;
  return std::all_of(c.begin() + 1, c.end(), [](u32 x) { return x == 0; });
}

}  // namespace detail

/// GF(p^n) with the lexicographically smallest monic irreducible modulus.
inline FieldSpec build_field(u64 p, u64 n, u64 size_cap = kDefaultSizeCap) {
  if (!nt::is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (n < 1) throw Error(ErrorKind::SizeCap, "extension degree must be positive");
  const auto q = nt::checked_pow(p, n);
  if (!q || *q > size_cap)
    throw Error(ErrorKind::SizeCap, std::to_string(p) + "^" + std::to_string(n) +
                                        " exceeds the field size cap " + std::to_string(size_cap));
  FieldSpec spec;
  spec.p = static_cast<u32>(p);
  spec.n = static_cast<u32>(n);
  spec.q = *q;
  for (u64 rank = 0; rank < *q; ++rank) {
    detail::Poly f = detail::from_lex_rank(rank, p, n);
    f.push_back(1);
    if (detail::is_irreducible(f, p)) {
      spec.modulus = std::move(f);
      return spec;
    }
  }
  throw Error(ErrorKind::NotPrime, "no irreducible polynomial found");  // unreachable
}

/// The lexicographically smallest element of multiplicative order q-1.
inline GeneratorCertificate find_generator(const FieldSpec& spec) {
  const u64 order = spec.q - 1;
  const auto primes = nt::prime_divisors(order);
  for (u64 rank = 1; rank < spec.q; ++rank) {
    detail::Poly cand = detail::from_lex_rank(rank, spec.p, spec.n);
    if (std::all_of(cand.begin(), cand.end(), [](u32 c) { return c == 0; })) continue;
    if (!detail::is_one(detail::poly_powmod(cand, order, spec))) continue;
    GeneratorCertificate cert;
    bool primitive = true;
    for (u64 l : primes) {
      auto w = detail::poly_powmod(cand, order / l, spec);
      if (detail::is_one(w)) {
        primitive = false;
        break;
      }
      cert.prime_checks.emplace_back(l, FieldElement(std::move(w)));
    }
    if (!primitive) continue;
    cert.gamma = FieldElement(std::move(cand));
    cert.order = order;
    return cert;
  }
  throw Error(ErrorKind::NotPrime, "multiplicative group has no generator; modulus reducible?");
}

class GaloisField {
 public:
  explicit GaloisField(FieldSpec spec) : spec_(std::move(spec)) {
    if (!nt::is_prime(spec_.p)) throw Error(ErrorKind::NotPrime, std::to_string(spec_.p));
    if (spec_.modulus.size() != spec_.n + 1U || spec_.modulus.back() != 1)
      throw Error(ErrorKind::FieldMismatch, "modulus must be monic of degree n");
    if (nt::checked_pow(spec_.p, spec_.n) != spec_.q)
      throw Error(ErrorKind::FieldMismatch, "q must equal p^n");
    if (!detail::is_irreducible(spec_.modulus, spec_.p))
      throw Error(ErrorKind::FieldMismatch, "modulus is not irreducible");
    cert_ = find_generator(spec_);
    build_tables();
  }

  GaloisField(u64 p, u64 n, u64 size_cap = kDefaultSizeCap) : GaloisField(build_field(p, n, size_cap)) {}

  const FieldSpec& spec() const noexcept { return spec_; }
  u64 p() const noexcept { return spec_.p; }
  u32 n() const noexcept { return spec_.n; }
  u64 q() const noexcept { return spec_.q; }

  FieldElement zero() const { return FieldElement(std::vector<u32>(spec_.n, 0)); }
  FieldElement one() const { return constant(1); }
  FieldElement constant(u64 c) const {
    std::vector<u32> v(spec_.n, 0);
    v[0] = static_cast<u32>(c % spec_.p);
    return FieldElement(std::move(v));
  }

  /// Builds an element, reducing every coefficient mod p.
  FieldElement element(std::vector<u64> coeffs) const {
    if (coeffs.size() != spec_.n)
      throw Error(ErrorKind::FieldMismatch, "expected " + std::to_string(spec_.n) + " coefficients");
    std::vector<u32> v(spec_.n);
    for (std::size_t i = 0; i < spec_.n; ++i) v[i] = static_cast<u32>(coeffs[i] % spec_.p);
    return FieldElement(std::move(v));
  }

  /// Throws FieldMismatch unless e is a reduced element of this field.
  void check(const FieldElement& e) const {
    if (e.size() != spec_.n)
      throw Error(ErrorKind::FieldMismatch, "element has wrong length for GF(" + std::to_string(spec_.q) + ")");
    for (u32 c : e.coeffs())
      if (c >= spec_.p) throw Error(ErrorKind::FieldMismatch, "coefficient not reduced mod p");
  }

  /// Base-p integer with the constant coefficient as least significant digit.
  u64 index(const FieldElement& e) const {
    u64 idx = 0;
    for (std::size_t i = spec_.n; i-- > 0;) idx = idx * spec_.p + e[i];
    return idx;
  }
  FieldElement from_index(u64 idx) const {
    std::vector<u32> v(spec_.n);
    for (std::size_t i = 0; i < spec_.n; ++i) {
      v[i] = static_cast<u32>(idx % spec_.p);
      idx /= spec_.p;
    }
    return FieldElement(std::move(v));
  }

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    std::vector<u32> v(spec_.n);
    for (std::size_t i = 0; i < spec_.n; ++i) v[i] = static_cast<u32>((u64{a[i]} + b[i]) % spec_.p);
    return FieldElement(std::move(v));
  }
  FieldElement neg(const FieldElement& a) const {
    check(a);
    std::vector<u32> v(spec_.n);
    for (std::size_t i = 0; i < spec_.n; ++i) v[i] = static_cast<u32>((spec_.p - a[i]) % spec_.p);
    return FieldElement(std::move(v));
  }
  FieldElement sub(const FieldElement& a, const FieldElement& b) const { return add(a, neg(b)); }

  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    if (a.is_zero() || b.is_zero()) return zero();
    return gamma_pow(log_unchecked(a) + log_unchecked(b));
  }
  /// Scalar multiple by an integer (an element of the prime field).
  FieldElement scale(const FieldElement& a, u64 c) const {
    check(a);
    std::vector<u32> v(spec_.n);
    for (std::size_t i = 0; i < spec_.n; ++i) v[i] = static_cast<u32>(nt::mulmod(a[i], c % spec_.p, spec_.p));
    return FieldElement(std::move(v));
  }
  FieldElement inv(const FieldElement& a) const {
    check(a);
    if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return gamma_pow((spec_.q - 1) - log_unchecked(a));
  }
  FieldElement div(const FieldElement& a, const FieldElement& b) const { return mul(a, inv(b)); }
  FieldElement pow(const FieldElement& a, u64 k) const {
    check(a);
    if (a.is_zero()) return k == 0 ? one() : zero();
    return gamma_pow(nt::mulmod(log_unchecked(a), k, spec_.q - 1));
  }

  /// Reference product by schoolbook multiplication and reduction.
  FieldElement poly_mul(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    return FieldElement(detail::poly_mulmod(a.coeffs(), b.coeffs(), spec_));
  }

  const GeneratorCertificate& generator() const noexcept { return cert_; }
  const FieldElement& gamma() const noexcept { return cert_.gamma; }
  FieldElement gamma_pow(u64 k) const { return from_index(exp_[k % (spec_.q - 1)]); }

  /// Discrete log with respect to gamma, in [0, q-1).
  u64 log(const FieldElement& a) const {
    check(a);
    if (a.is_zero()) throw Error(ErrorKind::ZeroElement, "log of zero");
    return log_unchecked(a);
  }

  u64 element_order(const FieldElement& a) const {
    check(a);
    if (a.is_zero()) throw Error(ErrorKind::ZeroElement, "order of zero");
    const u64 m = spec_.q - 1;
    return m / std::gcd(m, log_unchecked(a));
  }

  FieldElement frobenius(const FieldElement& a) const { return pow(a, spec_.p); }

  /// Fixed points of x -> x^(p^m): the unique subfield of order p^m, sorted.
  std::vector<FieldElement> subfield_elements(u32 m) const {
    if (m == 0 || spec_.n % m != 0)
      throw Error(ErrorKind::NotDivisor, std::to_string(m) + " does not divide " + std::to_string(spec_.n));
    const u64 pm = *nt::checked_pow(spec_.p, m);
    std::vector<FieldElement> out;
    for (u64 idx = 0; idx < spec_.q; ++idx) {
      auto x = from_index(idx);
      if (pow(x, pm) == x) out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// A generator of the multiplicative group of the subfield of order r.
  FieldElement subfield_generator(u64 r) const { return gamma_pow((spec_.q - 1) / (r - 1)); }

  /// All q elements in lexicographic order.
  std::vector<FieldElement> all_elements() const {
    std::vector<FieldElement> out;
    out.reserve(spec_.q);
    for (u64 idx = 0; idx < spec_.q; ++idx) out.push_back(from_index(idx));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  u64 log_unchecked(const FieldElement& a) const { return log_[index(a)]; }

  void build_tables() {
    const u64 m = spec_.q - 1;
    exp_.assign(m, 0);
    log_.assign(spec_.q, 0);
    detail::Poly x(spec_.n, 0);
    x[0] = 1;
    for (u64 k = 0; k < m; ++k) {
      const u64 idx = index(FieldElement(x));
      exp_[k] = static_cast<u32>(idx);
      log_[idx] = static_cast<u32>(k);
      x = detail::poly_mulmod(x, cert_.gamma.coeffs(), spec_);
    }
  }

  FieldSpec spec_;
  GeneratorCertificate cert_;
  std::vector<u32> exp_;
  std::vector<u32> log_;
};

/// "0" for zero, "g^k" otherwise (g the fixed generator).
inline std::string format_element(const GaloisField& field, const FieldElement& e) {
  if (e.is_zero()) return "0";
  return "g^" + std::to_string(field.log(e));
}

/// "[c0,c1,...]" with the constant term first.
inline std::string format_coeffs(const FieldElement& e) {
  std::string s = "[";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e[i]);
  }
  return s + "]";
}

namespace detail {

inline std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline u64 parse_u64(std::string_view s, std::string_view what) {
  s = strip(s);
  u64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::ParseError, "bad integer in " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Accepts "0", "1", "g", "g^k" and coefficient form "[c0,...,c_{n-1}]".
inline FieldElement parse_element(const GaloisField& field, std::string_view text) {
  const auto s = detail::strip(text);
  if (s == "0") return field.zero();
  if (s == "1") return field.one();
  if (s == "g") return field.gamma();
  if (s.starts_with("g^")) return field.gamma_pow(detail::parse_u64(s.substr(2), "power form"));
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    std::vector<u64> coeffs;
    auto body = s.substr(1, s.size() - 2);
    while (!body.empty()) {
      auto comma = body.find(',');
      coeffs.push_back(detail::parse_u64(body.substr(0, comma), "coefficient form"));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    for (u64 c : coeffs)
      if (c >= field.p()) throw Error(ErrorKind::ParseError, "coefficient out of range in '" + std::string(s) + "'");
    if (coeffs.size() != field.n())
      throw Error(ErrorKind::ParseError, "expected " + std::to_string(field.n()) + " coefficients in '" + std::string(s) + "'");
    return field.element(std::move(coeffs));
  }
  throw Error(ErrorKind::ParseError, "unrecognized element '" + std::string(s) + "'");
}

}  // namespace aglmu
