#ifndef LINSET_SEMIFIELD_HPP
#define LINSET_SEMIFIELD_HPP

// BEL-rank-two products x o y = L1(x) L2(y) - x y on F_{q^n} and the
// necessary conditions for them to define a presemifield.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linset/caps.hpp"
#include "linset/criteria.hpp"
#include "linset/errors.hpp"
#include "linset/field_tower.hpp"
#include "linset/linear_set.hpp"
#include "linset/qpoly.hpp"

namespace linset {

struct BelPair {
  QPoly L1, L2;

  const Field& field() const { return L1.field(); }
  Elt product(Elt x, Elt y) const {
    const Field& F = field();
    return F.sub(F.mul(L1.evaluate(x), L2.evaluate(y)), F.mul(x, y));
  }
};

namespace detail {

inline void require_pair_cap(const Field& F, std::uint64_t cap) {
  const std::uint64_t cost = std::uint64_t(F.order()) * F.order();
  if (cost > cap) throw size_cap_exceeded("zero-divisor scan q^{2n}", cost, cap);
}

}  // namespace detail

/// Lexicographically least (x, y), x, y != 0, with x o y = 0.
/// L1(x) L2(y) = x y with both sides nonzero means x / L1(x) = L2(y) / y,
/// so one pass over y and one over x suffice.
inline std::optional<Witness> zero_divisor_scan(const BelPair& s,
                                                std::uint64_t cap = cap_or_env(kDefaultPairCap)) {
  const Field& F = s.field();
  require_same_field(F, s.L2.field());
  detail::require_pair_cap(F, cap);
  std::vector<std::uint32_t> least_y(F.order(), 0);
  for (std::uint32_t y = F.order() - 1; y >= 1; --y) {
    const Elt v = s.L2.evaluate(Elt(y));
    if (!v.is_zero()) least_y[F.div(v, Elt(y)).v] = y;
  }
  for (std::uint32_t x = 1; x < F.order(); ++x) {
    const Elt u = s.L1.evaluate(Elt(x));
    if (u.is_zero()) continue;
    const std::uint32_t y = least_y[F.div(Elt(x), u).v];
    if (y) return Witness{Elt(x), Elt(y)};
  }
  return std::nullopt;
}

/// The literal double loop; reference for tests.
inline std::optional<Witness> zero_divisor_scan_naive(const BelPair& s) {
  const Field& F = s.field();
  for (std::uint32_t x = 1; x < F.order(); ++x)
    for (std::uint32_t y = 1; y < F.order(); ++y)
      if (s.product(Elt(x), Elt(y)).is_zero()) return Witness{Elt(x), Elt(y)};
  return std::nullopt;
}

/// Least x != 0 for which y -> x o y is singular over F_p, if any.
inline std::optional<Elt> singular_left_factor(const BelPair& s,
                                               std::uint64_t cap = cap_or_env(kDefaultPairCap)) {
  const Field& F = s.field();
  require_same_field(F, s.L2.field());
  detail::require_pair_cap(F, cap);
  for (std::uint32_t x = 1; x < F.order(); ++x) {
    const Elt l1 = s.L1.evaluate(Elt(x));
    const FpMatrix A = fp_matrix_of(F, [&](Elt y) {
      return F.sub(F.mul(l1, s.L2.evaluate(y)), F.mul(Elt(x), y));
    });
    if (A.rank() < F.degree()) return Elt(x);
  }
  return std::nullopt;
}

/// Some e with e o x = x o e = x for all x, if the product has one. Both
/// sides are linear in x, so checking the F_p-basis suffices.
inline std::optional<Elt> two_sided_identity(const BelPair& s) {
  const Field& F = s.field();
  for (std::uint32_t e = 1; e < F.order(); ++e) {
    bool ok = true;
    std::uint32_t basis = 1;
    for (unsigned j = 0; j < F.degree() && ok; ++j, basis *= F.p()) {
      const Elt x(basis);
      ok = s.product(Elt(e), x) == x && s.product(x, Elt(e)) == x;
    }
    if (ok) return Elt(e);
  }
  return std::nullopt;
}

struct SemifieldReport {
  bool is_presemifield = false;
  std::optional<Witness> witness_zero_divisor;
  bool dual_oracle_agrees = true;
  bool distributive = true;
};

/// Spot check of both distributive laws on a fixed set of triples.
inline bool distributive_spot_check(const BelPair& s) {
  const Field& F = s.field();
  const std::uint32_t Q = F.order();
  for (std::uint32_t i = 0; i < 8; ++i) {
    const Elt x((i * 2654435761u) % Q), y((i * 40503u + 7) % Q), z((i * 69069u + 3) % Q);
    if (s.product(x, F.add(y, z)) != F.add(s.product(x, y), s.product(x, z))) return false;
    if (s.product(F.add(x, y), z) != F.add(s.product(x, z), s.product(y, z))) return false;
  }
  return true;
}

inline SemifieldReport is_presemifield(const BelPair& s,
                                       std::uint64_t cap = cap_or_env(kDefaultPairCap)) {
  SemifieldReport r;
  r.witness_zero_divisor = zero_divisor_scan(s, cap);
  r.is_presemifield = !r.witness_zero_divisor;
  r.dual_oracle_agrees = singular_left_factor(s, cap).has_value() == !r.is_presemifield;
  r.distributive = distributive_spot_check(s);
  return r;
}

// ---------------------------------------------------------------------------
// Necessary conditions

struct ConsistencyCheck {
  bool antecedent = false;  // the hypothesis forcing a zero divisor holds
  bool presemifield = false;
  bool consistent = true;   // no counterexample observed
  std::optional<Witness> witness;
};

/// L1 = Tr_{q^n/q}: a presemifield must have deg L2 >= q^{n/2 - 1}.
/// Tests the contrapositive: 2 qdeg(L2) < n - 2 forces a zero divisor.
inline ConsistencyCheck check_thm41(const BelPair& s,
                                    std::uint64_t cap = cap_or_env(kDefaultPairCap)) {
  const Field& F = s.field();
  if (!(s.L1 == QPoly::trace(F))) throw precondition_violated("L1 = Tr_{q^n/q}");
  if (s.L2.is_zero()) throw zero_polynomial();
  ConsistencyCheck c;
  const unsigned d = indices(s.L2).d;
  c.antecedent = 2 * d + 2 < F.n();
  c.witness = zero_divisor_scan(s, cap);
  c.presemifield = !c.witness;
  c.consistent = !(c.antecedent && c.presemifield);
  return c;
}

/// L1 = Tr_{q^n/q^{r1}}, L2 = alpha Tr_{q^n/q^{r2}}: a presemifield must have
/// r1 + r2 > n/2 - 1.
inline ConsistencyCheck check_cor42(const Field& F, unsigned r1, unsigned r2, Elt alpha,
                                    std::uint64_t cap = cap_or_env(kDefaultPairCap)) {
  F.require_divisor(r1);
  F.require_divisor(r2);
  if (alpha.is_zero()) throw precondition_violated("alpha != 0");
  const BelPair s{trace_poly(F, r1), trace_poly(F, r2, alpha)};
  ConsistencyCheck c;
  c.antecedent = 2 * (r1 + r2) + 2 <= F.n();
  c.witness = zero_divisor_scan(s, cap);
  c.presemifield = !c.witness;
  c.consistent = !(c.antecedent && c.presemifield);
  return c;
}

/// Conditions every presemifield x o y = f(x) g(y) - x y with
/// g = alpha y^{q^k} + beta y must satisfy. Only applicable bullets are
/// listed. The m_0 entry for beta != 0, beta a_0 != 1 is read as 0.
inline std::vector<Hypothesis> check_cor43(const QPoly& f, Elt alpha, Elt beta, unsigned k) {
  const Field& F = f.field();
  const unsigned n = F.n();
  if (alpha.is_zero()) throw precondition_violated("alpha != 0");
  if (k < 1 || k >= n) throw precondition_violated("1 <= k < n");
  const QPolyIndices ix = indices(f);
  const unsigned d = ix.d, ell = ix.ell, ell2 = ix.ell2;
  const Elt ad = f.coeff(d), a0 = f.coeff(0);
  const bool beta0 = beta.is_zero();
  const bool ba01 = F.mul(beta, a0) == F.one();
  std::vector<Hypothesis> out;
  if (ix.is_monomial) {
    if (d == 0 || beta0) {
      const unsigned e = gcd3(n, k, d);
      const Elt x = F.div(F.sub(F.one(), F.mul(beta, ad)), F.mul(alpha, ad));
      out.push_back({"N_{q^n/q^" + std::to_string(e) + "}((1 - beta a_d)/(alpha a_d)) != 1",
                     F.rel_norm(x, e) != F.one()});
    } else {
      out.push_back({"2(k+d) > n", 2 * (k + d) > n});
    }
    return out;
  }
  const unsigned m0 = ba01 ? ell2 : (!beta0 ? 0 : d);
  out.push_back({"2(k+d-min{m_0,ell}+1) > n (m_0 = " + std::to_string(m0) + ")",
                 2 * (k + d - std::min(m0, ell) + 1) > n});
  if (ell == 0) {
    const unsigned mh0 = beta0 ? 0 : (ba01 ? d - ell2 : n - ell2);
    out.push_back({"2(k+max{m^_0,n-ell2}+1) > n (m^_0 = " + std::to_string(mh0) + ")",
                   2 * (k + std::max(mh0, n - ell2) + 1) > n});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Open cases S_{Tr_{q^n/q}, Tr_{q^n/q^r}}

struct OpenCase {
  unsigned n, r;
};

/// The listed pairs plus (n, n/2) for even n from 8 up to `max_even_n`.
inline std::vector<OpenCase> open_case_registry(unsigned max_even_n = 16) {
  std::vector<OpenCase> cs = {{2, 2}, {4, 1}, {4, 2}, {6, 2}, {6, 3}, {3, 1}, {5, 1}, {9, 3}};
  for (unsigned n = 8; n <= max_even_n; n += 2) cs.push_back({n, n / 2});
  return cs;
}

struct OpenCaseResult {
  std::uint64_t p = 0;
  unsigned m = 0, n = 0, r = 0;
  std::vector<std::uint32_t> modulus;
  bool attempted = false;
  std::uint64_t cost = 0;  // q^{2n}
  std::uint64_t cap = 0;
  SemifieldReport report;
};

inline OpenCaseResult resolve_open_case(std::uint64_t p, unsigned m, OpenCase oc,
                                        std::uint64_t cap = cap_or_env(kDefaultPairCap)) {
  OpenCaseResult res;
  res.p = p;
  res.m = m;
  res.n = oc.n;
  res.r = oc.r;
  res.cap = cap;
  if (oc.r == 0 || oc.n % oc.r) throw not_a_divisor(oc.r, oc.n);
  // q^{2n}, saturating at 2^64 - 1
  std::uint64_t cost = 1;
  for (unsigned i = 0; i < 2 * m * oc.n; ++i)
    cost = cost > std::uint64_t(-1) / p ? std::uint64_t(-1) : cost * p;
  res.cost = cost;
  // the modulus is recorded even for cases beyond the cap
  if (cost != std::uint64_t(-1)) res.modulus = detail::smallest_irreducible(std::uint32_t(p), m * oc.n);
  if (cost > cap) return res;
  const Field F = make_field(p, m, oc.n, std::uint64_t(-1));
  res.modulus = F.modulus();
  res.attempted = true;
  res.report = is_presemifield(BelPair{QPoly::trace(F), trace_poly(F, oc.r)}, cap);
  return res;
}

}  // namespace linset

#endif  // LINSET_SEMIFIELD_HPP
