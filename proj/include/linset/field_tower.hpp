#ifndef LINSET_FIELD_TOWER_HPP
#define LINSET_FIELD_TOWER_HPP

// Exact arithmetic in F_{q^n}, q = p^m, with the subfield chain
// F_p < F_q < F_{q^n} realised inside one degree-mn extension of F_p.
//
// Elements are packed base-p integers: the coordinate vector
// (c_0, ..., c_{mn-1}) in the power basis of the modulus root theta is
// stored as c_0 + c_1 p + ... + c_{mn-1} p^{mn-1}. This is also the
// serialised form used by the CLI and the JSON reports.
//
// Multiplication, division and Frobenius powers go through discrete
// log tables; addition is XOR in characteristic 2 and goes through a
// Zech logarithm table otherwise. Inversion uses the extended Euclidean
// algorithm on the polynomial representatives.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "linset/errors.hpp"
#include "linset/fp_linalg.hpp"

namespace linset {

/// Default bound on p^{mn} for field construction.
inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t(1) << 20;

/// Element of F_{q^n}, packed base-p.
struct Elt {
  std::uint32_t v = 0;

  constexpr Elt() = default;
  constexpr explicit Elt(std::uint32_t value) : v(value) {}

  constexpr std::uint32_t value() const noexcept { return v; }
  constexpr bool is_zero() const noexcept { return v == 0; }
  friend constexpr bool operator==(Elt, Elt) = default;
  friend constexpr auto operator<=>(Elt, Elt) = default;
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

namespace detail {

// Polynomials over F_p, low degree first, no trailing zeros (zero = {}).
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr) {
    const std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return std::uint32_t(t < 0 ? t + p : t);
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod_p(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint32_t f = std::uint32_t((std::uint64_t(a.back()) * lead_inv) % p);
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint32_t t = std::uint32_t((std::uint64_t(f) * m[i]) % p);
      a[i + shift] = (a[i + shift] + p - t) % p;
    }
    trim(a);
  }
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = std::uint32_t((c[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  trim(c);
  return c;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  return poly_mod(poly_mul(a, b, p), m, p);
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

/// Ben-Or test: f of degree N is irreducible iff gcd(x^{p^i} - x, f) = 1
/// for 1 <= i <= N/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t N = f.size() - 1;
  if (N == 0) return false;
  if (N == 1) return true;
  const Poly x{0, 1};
  Poly xp = x;
  for (std::size_t i = 1; i <= N / 2; ++i) {
    xp = poly_powmod(xp, p, f, p);  // one p-th power per step
    const Poly g = poly_gcd(f, poly_sub(xp, x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

/// Least monic irreducible of degree N in the packed order: the integer
/// a_0 + a_1 p + ... + a_{N-1} p^{N-1} is minimal. Over F_2 in degree 3
/// this is x^3 + x + 1.
inline Poly smallest_irreducible(std::uint32_t p, unsigned N) {
  const std::uint64_t total = ipow(p, N);
  Poly f(N + 1, 0);
  f[N] = 1;
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rest = t;
    for (unsigned i = 0; i < N; ++i) {
      f[i] = std::uint32_t(rest % p);
      rest /= p;
    }
    if (N >= 2 && f[0] == 0) continue;
    if (is_irreducible(f, p)) return f;
  }
  throw error("no irreducible polynomial found");  // unreachable
}

/// Extended Euclid: s with s*a = 1 mod m, for a nonzero mod irreducible m.
inline Poly poly_inverse(const Poly& a, const Poly& m, std::uint32_t p) {
  Poly r0 = m, r1 = poly_mod(a, m, p);
  Poly s0{}, s1{1};
  while (!r1.empty()) {
    // quotient r0 / r1
    Poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    Poly rem = r0;
    const std::uint32_t li = inv_mod_p(r1.back(), p);
    while (rem.size() >= r1.size() && !rem.empty()) {
      const std::size_t shift = rem.size() - r1.size();
      const std::uint32_t f = std::uint32_t((std::uint64_t(rem.back()) * li) % p);
      q[shift] = f;
      for (std::size_t i = 0; i < r1.size(); ++i) {
        const std::uint32_t t = std::uint32_t((std::uint64_t(f) * r1[i]) % p);
        rem[i + shift] = (rem[i + shift] + p - t) % p;
      }
      trim(rem);
    }
    trim(q);
    Poly s2 = poly_sub(s0, poly_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant
  const std::uint32_t c = inv_mod_p(r0.at(0), p);
  for (auto& x : s0) x = std::uint32_t((std::uint64_t(x) * c) % p);
  return poly_mod(s0, m, p);
}

}  // namespace detail

/// The prime-field extension F_{p^N} with its deterministic modulus and
/// arithmetic tables. Immutable once built.
class GaloisField {
 public:
  GaloisField(std::uint32_t p, unsigned N) : p_(p), N_(N) {
    order_ = std::uint32_t(ipow(p, N));
    pw_.resize(N + 1);
    for (unsigned i = 0; i <= N; ++i) pw_[i] = std::uint32_t(ipow(p, i));
    modulus_ = detail::smallest_irreducible(p, N);
    build_tables();
  }

  std::uint32_t p() const noexcept { return p_; }
  unsigned degree() const noexcept { return N_; }
  std::uint32_t order() const noexcept { return order_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Elt primitive() const noexcept { return Elt(exp_[1 % (order_ - 1)]); }

  Elt add(Elt a, Elt b) const noexcept {
    if (p_ == 2) return Elt(a.v ^ b.v);
    if (a.v == 0) return b;
    if (b.v == 0) return a;
    const std::uint32_t la = log_[a.v];
    const std::uint32_t z = zech_[sub_mod(log_[b.v], la)];
    if (z == kNoLog) return Elt(0);
    return Elt(exp_[add_mod(la, z)]);
  }
  Elt neg(Elt a) const noexcept {
    if (p_ == 2 || a.v == 0) return a;
    return Elt(exp_[add_mod(log_[a.v], (order_ - 1) / 2)]);
  }
  Elt sub(Elt a, Elt b) const noexcept { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const noexcept {
    if (a.v == 0 || b.v == 0) return Elt(0);
    return Elt(exp_[add_mod(log_[a.v], log_[b.v])]);
  }
  /// a / b; b must be nonzero.
  Elt div(Elt a, Elt b) const noexcept {
    if (a.v == 0) return Elt(0);
    return Elt(exp_[sub_mod(log_[a.v], log_[b.v])]);
  }
  /// Multiplicative inverse via the extended Euclidean algorithm.
  Elt inv(Elt a) const {
    if (a.v == 0) throw precondition_violated("inverse of zero");
    return from_poly(detail::poly_inverse(to_poly(a), modulus_, p_));
  }
  /// a^e for e taken modulo the group order (0^0 = 1).
  Elt pow(Elt a, std::uint64_t e) const noexcept {
    if (e == 0) return Elt(1);
    if (a.v == 0) return Elt(0);
    const std::uint64_t g = order_ - 1;
    return Elt(exp_[std::uint32_t((std::uint64_t(log_[a.v]) * (e % g)) % g)]);
  }
  /// Multiplies the discrete log of a by `mult` (mod |F^*|).
  Elt pow_log(Elt a, std::uint64_t mult) const noexcept {
    if (a.v == 0) return Elt(0);
    const std::uint64_t g = order_ - 1;
    return Elt(exp_[std::uint32_t((std::uint64_t(log_[a.v]) * mult) % g)]);
  }
  std::uint32_t log(Elt a) const noexcept { return log_[a.v]; }
  Elt exp(std::uint64_t i) const noexcept { return Elt(exp_[i % (order_ - 1)]); }

  std::uint32_t digit(Elt a, unsigned i) const noexcept { return (a.v / pw_[i]) % p_; }
  std::vector<std::uint32_t> digits(Elt a) const {
    std::vector<std::uint32_t> d(N_);
    for (unsigned i = 0; i < N_; ++i) d[i] = digit(a, i);
    return d;
  }
  Elt from_digits(const std::vector<std::uint32_t>& d) const {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < N_ && i < d.size(); ++i) v += (d[i] % p_) * pw_[i];
    return Elt(v);
  }
  /// Schoolbook product of the polynomial representatives, reduced.
  /// Independent of the log tables; used to build and to audit them.
  Elt mul_slow(Elt a, Elt b) const {
    return from_poly(detail::poly_mulmod(to_poly(a), to_poly(b), modulus_, p_));
  }

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  std::uint32_t add_mod(std::uint32_t a, std::uint32_t b) const noexcept {
    const std::uint32_t g = order_ - 1;
    std::uint32_t s = a + b;
    if (s >= g) s -= g;
    return s;
  }
  std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b) const noexcept {
    const std::uint32_t g = order_ - 1;
    return a >= b ? a - b : a + g - b;
  }

  detail::Poly to_poly(Elt a) const {
    detail::Poly r = digits(a);
    detail::trim(r);
    return r;
  }
  Elt from_poly(const detail::Poly& r) const { return from_digits(r); }

  bool is_primitive_slow(Elt g) const {
    const std::uint64_t gm = order_ - 1;
    if (g.v == 0) return false;
    for (std::uint64_t r : prime_factors(gm)) {
      const detail::Poly t = detail::poly_powmod(to_poly(g), gm / r, modulus_, p_);
      if (t.size() == 1 && t[0] == 1) return false;
    }
    return true;
  }

  // Multiplication by theta: shift coordinates up, fold the top digit.
  Elt mul_theta(Elt a) const {
    std::vector<std::uint32_t> d = digits(a);
    const std::uint32_t top = d[N_ - 1];
    for (unsigned i = N_ - 1; i > 0; --i) d[i] = d[i - 1];
    d[0] = 0;
    if (top)
      for (unsigned i = 0; i < N_; ++i)
        d[i] = std::uint32_t((d[i] + std::uint64_t(p_ - top) * modulus_[i]) % p_);
    return from_digits(d);
  }

  void build_tables() {
    const std::uint32_t g_order = order_ - 1;
    Elt gen(0);
    const Elt theta(N_ >= 2 ? p_ : 0);
    if (N_ >= 2 && is_primitive_slow(theta)) {
      gen = theta;
    } else {
      for (std::uint32_t c = 1; c < order_; ++c)
        if (is_primitive_slow(Elt(c))) {
          gen = Elt(c);
          break;
        }
    }
    exp_.assign(g_order, 0);
    log_.assign(order_, kNoLog);
    Elt cur(1);
    for (std::uint32_t i = 0; i < g_order; ++i) {
      exp_[i] = cur.v;
      log_[cur.v] = i;
      cur = (gen == theta) ? mul_theta(cur) : mul_slow(cur, gen);
    }
    if (p_ != 2) {
      zech_.assign(g_order, kNoLog);
      for (std::uint32_t i = 0; i < g_order; ++i) {
        const std::uint32_t v = exp_[i];
        const std::uint32_t one_plus = (v % p_ == p_ - 1) ? v - (p_ - 1) : v + 1;
        zech_[i] = one_plus == 0 ? kNoLog : log_[one_plus];
      }
    }
  }

  std::uint32_t p_;
  unsigned N_;
  std::uint32_t order_ = 0;
  std::vector<std::uint32_t> pw_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_, log_, zech_;
};

namespace detail {

struct Tower {
  std::shared_ptr<const GaloisField> gf;
  unsigned m = 1, n = 1;
  std::uint64_t q = 0;
  // frob_mult[r] = q^r mod (|F| - 1), built by repeated multiplication by p.
  std::vector<std::uint64_t> frob_mult;
};

inline std::shared_ptr<const GaloisField> cached_galois_field(std::uint32_t p, unsigned N) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const GaloisField>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, N}];
  if (!slot) slot = std::make_shared<const GaloisField>(p, N);
  return slot;
}

}  // namespace detail

/// Handle to the tower F_p < F_q < F_{q^n}. Cheap to copy; immutable.
class Field {
 public:
  Field() = default;

  std::uint32_t p() const noexcept { return gf().p(); }
  unsigned m() const noexcept { return t_->m; }
  unsigned n() const noexcept { return t_->n; }
  std::uint64_t q() const noexcept { return t_->q; }
  /// q^n, the number of elements.
  std::uint32_t order() const noexcept { return gf().order(); }
  unsigned degree() const noexcept { return gf().degree(); }
  const std::vector<std::uint32_t>& modulus() const noexcept { return gf().modulus(); }
  const GaloisField& gf() const noexcept { return *t_->gf; }
  bool valid() const noexcept { return t_ != nullptr; }

  Elt zero() const noexcept { return Elt(0); }
  Elt one() const noexcept { return Elt(1); }
  Elt elt(std::uint32_t v) const {
    if (v >= order()) throw precondition_violated("element value out of range");
    return Elt(v);
  }
  Elt minus_one() const noexcept { return gf().neg(Elt(1)); }

  Elt add(Elt a, Elt b) const noexcept { return gf().add(a, b); }
  Elt sub(Elt a, Elt b) const noexcept { return gf().sub(a, b); }
  Elt neg(Elt a) const noexcept { return gf().neg(a); }
  Elt mul(Elt a, Elt b) const noexcept { return gf().mul(a, b); }
  Elt div(Elt a, Elt b) const noexcept { return gf().div(a, b); }
  Elt inv(Elt a) const { return gf().inv(a); }
  Elt pow(Elt a, std::uint64_t e) const noexcept { return gf().pow(a, e); }

  /// x^{q^r}.
  Elt frobenius(Elt x, unsigned r) const noexcept {
    return gf().pow_log(x, t_->frob_mult[r % t_->n]);
  }

  /// Tr_{q^n/q^r}(x) = sum_{i < n/r} x^{q^{ir}}.
  Elt rel_trace(Elt x, unsigned r) const {
    require_divisor(r);
    Elt s(0);
    for (unsigned i = 0; i < n() / r; ++i) s = add(s, frobenius(x, i * r));
    return s;
  }

  /// N_{q^n/q^r}(x) = x^{(q^n-1)/(q^r-1)}.
  Elt rel_norm(Elt x, unsigned r) const {
    require_divisor(r);
    const std::uint64_t e = (std::uint64_t(order()) - 1) / (ipow(q(), r) - 1);
    return pow(x, e);
  }

  /// x lies in F_{q^r}.
  bool in_subfield(Elt x, unsigned r) const noexcept { return frobenius(x, r) == x; }

  std::vector<std::uint32_t> digits(Elt x) const { return gf().digits(x); }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    if (a.t_ == b.t_) return true;
    if (!a.t_ || !b.t_) return false;
    return a.p() == b.p() && a.m() == b.m() && a.n() == b.n();
  }

  void require_divisor(unsigned r) const {
    if (r == 0 || n() % r != 0) throw not_a_divisor(r, n());
  }

 private:
  friend Field make_field(std::uint64_t, unsigned, unsigned, std::uint64_t);
  explicit Field(std::shared_ptr<const detail::Tower> t) : t_(std::move(t)) {}
  std::shared_ptr<const detail::Tower> t_;
};

/// Builds (or fetches from the process-wide cache) the tower
/// F_p < F_{p^m} < F_{p^{mn}}.
inline Field make_field(std::uint64_t p, unsigned m, unsigned n,
                        std::uint64_t cap = kDefaultFieldCap) {
  if (!is_prime(p)) throw not_prime(p);
  if (m == 0 || n == 0) throw precondition_violated("m and n must be positive");
  std::uint64_t size = 1;
  for (unsigned i = 0; i < m * n; ++i) {
    size *= p;
    if (size > cap) throw size_cap_exceeded("field p^{mn}", size, cap);
  }
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, unsigned, unsigned>, std::shared_ptr<const detail::Tower>>
      cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({p, m, n});
    if (it != cache.end()) return Field(it->second);
  }
  auto t = std::make_shared<detail::Tower>();
  t->gf = detail::cached_galois_field(std::uint32_t(p), m * n);
  t->m = m;
  t->n = n;
  t->q = ipow(p, m);
  const std::uint64_t g = size - 1;
  t->frob_mult.resize(n);
  std::uint64_t mult = 1 % (g ? g : 1);
  for (unsigned r = 0; r < n; ++r) {
    t->frob_mult[r] = g ? mult : 0;
    for (unsigned s = 0; s < m && g; ++s) mult = (mult * p) % g;
  }
  std::lock_guard lock(mu);
  auto& slot = cache[{p, m, n}];
  if (!slot) slot = t;
  return Field(slot);
}

/// Matrix over F_p of the F_p-linear map x -> map(x), in the power basis.
template <class Map>
FpMatrix fp_matrix_of(const Field& F, Map&& map) {
  const unsigned N = F.degree();
  FpMatrix A(N, N, F.p());
  std::uint32_t basis = 1;
  for (unsigned j = 0; j < N; ++j, basis *= F.p()) A.set_column(j, F.digits(map(Elt(basis))));
  return A;
}

/// Some w with w^{q^r} - w = gamma, or nullopt when Tr_{q^n/q^r}(gamma) != 0.
/// When solvable the solution set is the coset w + F_{q^r}.
inline std::optional<Elt> hilbert90_solve(const Field& F, Elt gamma, unsigned r) {
  F.require_divisor(r);
  if (!F.rel_trace(gamma, r).is_zero()) return std::nullopt;
  const FpMatrix A = fp_matrix_of(F, [&](Elt w) { return F.sub(F.frobenius(w, r), w); });
  auto sol = A.solve(F.digits(gamma));
  if (!sol) return std::nullopt;
  return F.gf().from_digits(*sol);
}

}  // namespace linset

template <>
struct std::hash<linset::Elt> {
  std::size_t operator()(linset::Elt e) const noexcept { return std::hash<std::uint32_t>{}(e.v); }
};

#endif  // LINSET_FIELD_TOWER_HPP
