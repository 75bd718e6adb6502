#ifndef LINSET_CRITERIA_HPP
#define LINSET_CRITERIA_HPP

// Intersection criteria for linear sets on PG(1, q^n).
//
// Two settings are covered:
//   * clubs  L_{r1} = {<(x, Tr_{q^n/q^{r1}}(x))>},  L_{r2} = {<(x, alpha Tr_{q^n/q^{r2}}(x))>};
//   * L_g with g = alpha x^{q^k} + beta x against L_f = {<(y^{q^h}, f(y))>}
//     or its swap sigma(L_f) = {<(f(y), y^{q^h})>}.
//
// Exact ("iff") criteria return Decided; one-directional bounds return
// GuaranteedNonEmpty or Inconclusive and never claim emptiness.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linset/caps.hpp"
#include "linset/errors.hpp"
#include "linset/field_tower.hpp"
#include "linset/linear_set.hpp"
#include "linset/qpoly.hpp"

namespace linset {

enum class Criterion {
  CLUB_PRIMO,
  CLUB_SECONDO,
  CLUB_SIGMA_BOUND,
  CLUB_SAME_FIELD,
  MON_H_EQ_D,
  MON_BETA0,
  BINOMIAL_SPECIAL,
  SIGMA_MON_SPECIAL,
  MON_GENERAL,
  H_LE_ELL,
  H_GT_ELL,
  SIGMA_MON,
  SIGMA_H_LE_ELL,
  SIGMA_H_GT_ELL,
  ADJ_H_LE_ELL,
  ADJ_H_GT_ELL,
  ADJ_SIGMA_H_LE_ELL,
  ADJ_SIGMA_H_GT_ELL,
  PSEUDOREGULUS,
};

inline const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::CLUB_PRIMO: return "CLUB_PRIMO";
    case Criterion::CLUB_SECONDO: return "CLUB_SECONDO";
    case Criterion::CLUB_SIGMA_BOUND: return "CLUB_SIGMA_BOUND";
    case Criterion::CLUB_SAME_FIELD: return "CLUB_SAME_FIELD";
    case Criterion::MON_H_EQ_D: return "MON_H_EQ_D";
    case Criterion::MON_BETA0: return "MON_BETA0";
    case Criterion::BINOMIAL_SPECIAL: return "BINOMIAL_SPECIAL";
    case Criterion::SIGMA_MON_SPECIAL: return "SIGMA_MON_SPECIAL";
    case Criterion::MON_GENERAL: return "MON_GENERAL";
    case Criterion::H_LE_ELL: return "H_LE_ELL";
    case Criterion::H_GT_ELL: return "H_GT_ELL";
    case Criterion::SIGMA_MON: return "SIGMA_MON";
    case Criterion::SIGMA_H_LE_ELL: return "SIGMA_H_LE_ELL";
    case Criterion::SIGMA_H_GT_ELL: return "SIGMA_H_GT_ELL";
    case Criterion::ADJ_H_LE_ELL: return "ADJ_H_LE_ELL";
    case Criterion::ADJ_H_GT_ELL: return "ADJ_H_GT_ELL";
    case Criterion::ADJ_SIGMA_H_LE_ELL: return "ADJ_SIGMA_H_LE_ELL";
    case Criterion::ADJ_SIGMA_H_GT_ELL: return "ADJ_SIGMA_H_GT_ELL";
    case Criterion::PSEUDOREGULUS: return "PSEUDOREGULUS";
  }
  return "?";
}

inline std::optional<Criterion> criterion_from_string(const std::string& s) {
  for (int i = 0; i <= int(Criterion::PSEUDOREGULUS); ++i)
    if (s == to_string(Criterion(i))) return Criterion(i);
  return std::nullopt;
}

inline constexpr Criterion kIffFamilies[] = {Criterion::MON_H_EQ_D, Criterion::MON_BETA0,
                                             Criterion::BINOMIAL_SPECIAL,
                                             Criterion::SIGMA_MON_SPECIAL};
inline constexpr Criterion kSufficientFamilies[] = {
    Criterion::MON_GENERAL,        Criterion::H_LE_ELL,          Criterion::H_GT_ELL,
    Criterion::SIGMA_MON,          Criterion::SIGMA_H_LE_ELL,    Criterion::SIGMA_H_GT_ELL,
    Criterion::ADJ_H_LE_ELL,       Criterion::ADJ_H_GT_ELL,      Criterion::ADJ_SIGMA_H_LE_ELL,
    Criterion::ADJ_SIGMA_H_GT_ELL};

/// Whether the family speaks about L_g and sigma(L_f) rather than L_f.
inline bool is_swapped(Criterion c) {
  switch (c) {
    case Criterion::SIGMA_MON_SPECIAL:
    case Criterion::SIGMA_MON:
    case Criterion::SIGMA_H_LE_ELL:
    case Criterion::SIGMA_H_GT_ELL:
    case Criterion::ADJ_SIGMA_H_LE_ELL:
    case Criterion::ADJ_SIGMA_H_GT_ELL:
      return true;
    default:
      return false;
  }
}

inline bool is_iff(Criterion c) {
  return std::find(std::begin(kIffFamilies), std::end(kIffFamilies), c) != std::end(kIffFamilies);
}

enum class VerdictKind { Decided, GuaranteedNonEmpty, Inconclusive };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Decided: return "decided";
    case VerdictKind::GuaranteedNonEmpty: return "guaranteed_nonempty";
    default: return "inconclusive";
  }
}

struct Hypothesis {
  std::string condition;
  bool satisfied = false;
};

struct CriterionVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  bool nonempty = false;  // meaningful for Decided only
  Criterion id = Criterion::PSEUDOREGULUS;
  std::vector<Hypothesis> hypotheses;
  bool applicable = true;  // every shape hypothesis held

  /// The criterion asserts a nonempty intersection.
  bool asserts_nonempty() const {
    return kind == VerdictKind::GuaranteedNonEmpty || (kind == VerdictKind::Decided && nonempty);
  }
  void note(std::string cond, bool ok) { hypotheses.push_back({std::move(cond), ok}); }
  /// Records a shape hypothesis; a failure makes the criterion inapplicable.
  bool require(std::string cond, bool ok) {
    note(std::move(cond), ok);
    if (!ok) applicable = false;
    return ok;
  }
  std::optional<std::string> first_failure() const {
    for (const auto& h : hypotheses)
      if (!h.satisfied) return h.condition;
    return std::nullopt;
  }
};

inline unsigned gcd3(unsigned a, unsigned b, unsigned c) { return std::gcd(std::gcd(a, b), c); }
inline unsigned absdiff(unsigned a, unsigned b) { return a > b ? a - b : b - a; }

/// Tr_{q^n/q^r} as a q-polynomial.
inline QPoly trace_poly(const Field& F, unsigned r, Elt scale = Elt(1)) {
  F.require_divisor(r);
  QPoly t(F);
  for (unsigned i = 0; i < F.n(); i += r) t.set_coeff(i, scale);
  return t;
}

// ---------------------------------------------------------------------------
// Clubs

struct ClubParams {
  Field F;
  unsigned r1 = 1, r2 = 1;
  Elt alpha{1};
};

inline void validate(const ClubParams& c) {
  c.F.require_divisor(c.r1);
  c.F.require_divisor(c.r2);
  if (c.alpha.is_zero()) throw precondition_violated("alpha must be nonzero");
}

/// Divides r1, r2 and n by d = (r1, r2) and views the same field over F_{q^d}.
inline ClubParams normalize_club(const ClubParams& c) {
  validate(c);
  const unsigned d = std::gcd(c.r1, c.r2);
  if (d == 1) return c;
  ClubParams r = c;
  r.F = make_field(c.F.p(), c.F.m() * d, c.F.n() / d, std::uint64_t(-1));
  r.r1 /= d;
  r.r2 /= d;
  return r;
}

inline void require_coprime(const ClubParams& c) {
  validate(c);
  if (std::gcd(c.r1, c.r2) != 1) throw precondition_violated("(r1, r2) = 1");
}

inline LinearSet club_set(const ClubParams& c, unsigned which) {
  return which == 1 ? build(trace_poly(c.F, c.r1), 0, false)
                    : build(trace_poly(c.F, c.r2, c.alpha), 0, false);
}

/// sigma(L_{r2}) = {<(alpha Tr_{q^n/q^{r2}}(y), y)>}.
inline LinearSet club_sigma_set(const ClubParams& c) {
  return build(trace_poly(c.F, c.r2, c.alpha), 0, true);
}

/// Existence of a with Tr_{q^n/q^{r1}}(a) = -1 and Tr_{q^n/q^{r2}}(alpha a) = -1,
/// or Tr_{q^n/q^{r2}}(a) = -1 and Tr_{q^n/q^{r1}}(a/alpha) = -1.
/// Either gives u = -a (resp. -a/alpha) with Tr_{r1}(u) = Tr_{r2}(alpha u) = 1,
/// which is a common non-head point of L_{r1} and L_{r2}. The variant with
/// "= 1" in the second trace is recorded in the report as well.
inline CriterionVerdict club_primo(const ClubParams& c,
                                   std::uint64_t cap = cap_or_env(kDefaultEnumCap)) {
  require_coprime(c);
  const Field& F = c.F;
  if (F.order() > cap) throw size_cap_exceeded("club search q^n", F.order(), cap);
  const Elt m1 = F.minus_one(), one = F.one();
  bool found = false, found_literal = false;
  for (std::uint32_t v = 0; v < F.order() && !(found && found_literal); ++v) {
    const Elt a(v);
    const Elt t1 = F.rel_trace(a, c.r1), t2 = F.rel_trace(a, c.r2);
    if (t1 == m1) {
      const Elt s = F.rel_trace(F.mul(c.alpha, a), c.r2);
      found |= s == m1;
      found_literal |= s == one;
    }
    if (t2 == m1) {
      const Elt s = F.rel_trace(F.div(a, c.alpha), c.r1);
      found |= s == m1;
      found_literal |= s == one;
    }
  }
  CriterionVerdict v;
  v.id = Criterion::CLUB_PRIMO;
  v.note("(r1,r2) = 1", true);
  v.note("exists a: Tr_r1(a) = -1, Tr_r2(alpha a) = -1 (or the symmetric pair)", found);
  v.note("variant with second trace = +1 satisfiable", found_literal);
  v.kind = found ? VerdictKind::GuaranteedNonEmpty : VerdictKind::Inconclusive;
  return v;
}

namespace detail {

/// Some element with Tr_{q^n/q^r} equal to 1.
inline Elt unit_trace_element(const Field& F, unsigned r) {
  for (std::uint32_t v = 1; v < F.order(); ++v) {
    const Elt t = F.rel_trace(Elt(v), r);
    if (!t.is_zero()) return F.div(Elt(v), t);
  }
  throw error("trace map is zero");  // unreachable
}

}  // namespace detail

/// alpha = a b with a in F_{q^{r1}}^*, b in F_{q^{r2}}^*. Decides whether
/// some gamma1, gamma2 with unit relative traces satisfy
/// Tr_{q^n/q}(a gamma1 - gamma2 / b) = 0. The solution sets of the trace
/// conditions are gamma* + {w^{q^r} - w}; the condition is affine over F_p
/// in (w1, w2) and is solved by elimination.
inline CriterionVerdict club_secondo(const ClubParams& c, Elt a, Elt b) {
  require_coprime(c);
  const Field& F = c.F;
  if (a.is_zero() || b.is_zero()) throw precondition_violated("a and b must be nonzero");
  if (!F.in_subfield(a, c.r1)) throw precondition_violated("a in F_{q^r1}");
  if (!F.in_subfield(b, c.r2)) throw precondition_violated("b in F_{q^r2}");
  if (F.mul(a, b) != c.alpha) throw precondition_violated("alpha = a b");

  const Elt g1 = detail::unit_trace_element(F, c.r1);
  const Elt g2 = detail::unit_trace_element(F, c.r2);
  auto tr = [&](Elt x) { return F.rel_trace(x, 1); };
  const Elt c0 = tr(F.sub(F.mul(a, g1), F.div(g2, b)));

  const unsigned N = F.degree();
  FpMatrix A(N, 2 * N, F.p());
  std::uint32_t basis = 1;
  for (unsigned j = 0; j < N; ++j, basis *= F.p()) {
    const Elt e(basis);
    const Elt d1 = F.sub(F.frobenius(e, c.r1), e);
    const Elt d2 = F.sub(F.frobenius(e, c.r2), e);
    A.set_column(j, F.digits(tr(F.mul(a, d1))));
    A.set_column(N + j, F.digits(F.neg(tr(F.div(d2, b)))));
  }
  const bool solvable = A.solve(F.digits(F.neg(c0))).has_value();

  CriterionVerdict v;
  v.id = Criterion::CLUB_SECONDO;
  v.note("(r1,r2) = 1", true);
  v.note("alpha = a b, a in F_{q^r1}, b in F_{q^r2}", true);
  v.note("Tr(a g1* - g2*/b) = 0 at the base solutions", c0.is_zero());
  v.note("exists g1, g2 with unit traces and Tr(a g1 - g2/b) = 0", solvable);
  v.kind = VerdictKind::Decided;
  v.nonempty = solvable;
  return v;
}

/// GuaranteedNonEmpty for L_{r1} and sigma(L_{r2}) when r1 + r2 + 1 <= n/2.
inline CriterionVerdict club_sigma_bound(const ClubParams& c) {
  require_coprime(c);
  CriterionVerdict v;
  v.id = Criterion::CLUB_SIGMA_BOUND;
  v.note("(r1,r2) = 1", true);
  const bool ok = 2 * (c.r1 + c.r2 + 1) <= c.F.n();
  v.note("2(r1+r2+1) <= n", ok);
  v.kind = ok ? VerdictKind::GuaranteedNonEmpty : VerdictKind::Inconclusive;
  return v;
}

struct SameFieldResult {
  CriterionVerdict verdict;
  std::size_t t_size = 0;  // |T|
};

/// r1 = r2 = r: L_r meets sigma(L_r) iff alpha is in
/// T = {x y : Tr_{q^n/q^r}(x) = Tr_{q^n/q^r}(y) = 1}.
inline SameFieldResult club_same_field(const ClubParams& c,
                                       std::uint64_t cap = cap_or_env(kDefaultPairCap)) {
  validate(c);
  if (c.r1 != c.r2) throw precondition_violated("r1 = r2");
  const Field& F = c.F;
  std::vector<Elt> S;
  for (std::uint32_t v = 1; v < F.order(); ++v)
    if (F.rel_trace(Elt(v), c.r1) == F.one()) S.push_back(Elt(v));
  const std::uint64_t cost = std::uint64_t(S.size()) * S.size();
  if (cost > cap) throw size_cap_exceeded("trace-one products", cost, cap);
  std::vector<bool> inT(F.order(), false);
  for (Elt x : S)
    for (Elt y : S) inT[F.mul(x, y).v] = true;
  SameFieldResult r;
  r.t_size = std::size_t(std::count(inT.begin(), inT.end(), true));
  r.verdict.id = Criterion::CLUB_SAME_FIELD;
  r.verdict.note("r1 = r2", true);
  r.verdict.note("alpha in T", inT[c.alpha.v]);
  r.verdict.kind = VerdictKind::Decided;
  r.verdict.nonempty = inT[c.alpha.v];
  return r;
}

// ---------------------------------------------------------------------------
// g = alpha x^{q^k} + beta x against f in shape h

struct BinomialParams {
  Elt alpha{1};
  Elt beta{0};
  unsigned k = 1;
  QPoly f;
  unsigned h = 0;

  const Field& field() const { return f.field(); }
  QPoly g() const {
    QPoly r = QPoly::monomial(field(), alpha, k);
    r.set_coeff(0, field().add(r.coeff(0), beta));
    return r;
  }
};

inline void validate(const BinomialParams& P) {
  const Field& F = P.field();
  if (!F.valid()) throw precondition_violated("f has no field");
  if (P.alpha.is_zero()) throw precondition_violated("alpha != 0");
  if (P.k < 1 || P.k >= F.n()) throw precondition_violated("1 <= k < n");
  if (P.h >= F.n()) throw precondition_violated("0 <= h < n");
  if (P.f.is_zero()) throw zero_polynomial();
}

/// Replaces g by its adjoint alpha^{q^{n-k}} x^{q^{n-k}} + beta x when k > n/2.
/// L_g is unchanged.
inline BinomialParams normalized(const BinomialParams& P) {
  validate(P);
  const Field& F = P.field();
  if (2 * P.k <= F.n()) return P;
  BinomialParams r = P;
  r.k = F.n() - P.k;
  r.alpha = F.frobenius(P.alpha, r.k);
  return r;
}

namespace detail {

inline bool norm_is_one(const Field& F, Elt x, unsigned e) { return F.rel_norm(x, e) == F.one(); }

inline CriterionVerdict decided(CriterionVerdict v, bool value) {
  v.kind = VerdictKind::Decided;
  v.nonempty = value;
  return v;
}

inline CriterionVerdict bounded(CriterionVerdict v, std::string what, bool holds) {
  v.note(std::move(what), holds);
  v.kind = holds ? VerdictKind::GuaranteedNonEmpty : VerdictKind::Inconclusive;
  return v;
}

inline std::string str(unsigned v) { return std::to_string(v); }

}  // namespace detail

/// The integer m_h of each sufficient family (the selection itself is
/// reported in the verdict). Exposed for the genus profiles.
struct FamilyIndices {
  QPolyIndices ix;
  unsigned m_h = 0;
  std::string m_h_case;
};

inline FamilyIndices family_indices(const BinomialParams& P, Criterion family) {
  const Field& F = P.field();
  FamilyIndices r;
  r.ix = indices(P.f);
  const auto& ix = r.ix;
  const Elt ah = P.f.coeff(P.h);
  const bool beta0 = P.beta.is_zero();
  const bool bah1 = F.mul(P.beta, ah) == F.one();
  switch (family) {
    case Criterion::H_LE_ELL:
      if (ah != P.beta) r.m_h = 0, r.m_h_case = "a_h != beta";
      else if (beta0) r.m_h = ix.ell - P.h, r.m_h_case = "a_h = beta = 0";
      else r.m_h = ix.ell2 - P.h, r.m_h_case = "a_h = beta != 0";
      break;
    case Criterion::H_GT_ELL:
      if (P.f.coeff(ix.d) != P.beta || ix.d != P.h)
        r.m_h = std::max(ix.d, P.h), r.m_h_case = "a_d != beta or d != h";
      else
        r.m_h = ix.ell3.value_or(ix.ell), r.m_h_case = "a_d = beta and d = h";
      break;
    case Criterion::SIGMA_H_LE_ELL:
      if (bah1) r.m_h = ix.ell2, r.m_h_case = "beta a_h = 1";
      else if (!beta0) r.m_h = P.h, r.m_h_case = "beta != 0, beta a_h != 1";
      else r.m_h = ix.d, r.m_h_case = "beta = 0";
      break;
    case Criterion::SIGMA_H_GT_ELL:
      if (beta0) r.m_h = ix.ell, r.m_h_case = "beta = 0";
      else if (P.h != ix.d || !bah1)
        r.m_h = std::max(ix.d, P.h), r.m_h_case = "beta != 0, h != d or beta a_h != 1";
      else
        r.m_h = ix.ell3.value_or(ix.ell), r.m_h_case = "h = d, beta a_h = 1";
      break;
    default:
      break;
  }
  return r;
}

namespace detail {

inline CriterionVerdict evaluate_base(const BinomialParams& P, Criterion family) {
  const Field& F = P.field();
  const unsigned n = F.n(), k = P.k, h = P.h;
  const QPolyIndices ix = indices(P.f);
  const unsigned d = ix.d, ell = ix.ell;
  const bool mono = ix.is_monomial;
  const bool binom = P.f.support_size() == 2;
  const Elt ad = P.f.coeff(d), ah = P.f.coeff(h);
  CriterionVerdict v;
  v.id = family;

  switch (family) {
    case Criterion::MON_H_EQ_D: {
      if (!v.require("f monomial", mono) | !v.require("h = d", h == d)) return v;
      const unsigned e = std::gcd(n, k);
      const bool r = norm_is_one(F, F.div(F.sub(ad, P.beta), P.alpha), e);
      v.note("N_{q^n/q^" + str(e) + "}((a_d - beta)/alpha) = 1", r);
      return decided(v, r);
    }
    case Criterion::MON_BETA0: {
      if (!v.require("f monomial", mono) | !v.require("beta = 0", P.beta.is_zero())) return v;
      const unsigned e = gcd3(n, k, absdiff(d, h));
      const bool r = norm_is_one(F, F.div(ad, P.alpha), e);
      v.note("N_{q^n/q^" + str(e) + "}(a_d/alpha) = 1", r);
      return decided(v, r);
    }
    case Criterion::BINOMIAL_SPECIAL: {
      const bool shape = (h == d && ad == P.beta) || (h == ell && P.f.coeff(ell) == P.beta);
      if (!v.require("f binomial", binom) |
          !v.require("(h = d and a_d = beta) or (h = ell and a_ell = beta)", binom && shape))
        return v;
      const unsigned t = (h == d) ? ell : d;
      const unsigned e = gcd3(n, k, absdiff(t, h));
      const bool r = norm_is_one(F, F.div(P.f.coeff(t), P.alpha), e);
      v.note("t = " + str(t), true);
      v.note("N_{q^n/q^" + str(e) + "}(a_t/alpha) = 1", r);
      return decided(v, r);
    }
    case Criterion::SIGMA_MON_SPECIAL: {
      if (!v.require("f monomial", mono) |
          !v.require("d = h or beta = 0", d == h || P.beta.is_zero()))
        return v;
      const unsigned e = gcd3(n, k, absdiff(d, h));
      const Elt num = F.sub(F.one(), F.mul(P.beta, ad));
      const bool r = norm_is_one(F, F.div(num, F.mul(P.alpha, ad)), e);
      v.note("N_{q^n/q^" + str(e) + "}((1 - beta a_d)/(alpha a_d)) = 1", r);
      return decided(v, r);
    }
    case Criterion::MON_GENERAL:
    case Criterion::SIGMA_MON: {
      if (!v.require("f monomial", mono) | !v.require("h != d", h != d) |
          !v.require("beta != 0", !P.beta.is_zero()))
        return v;
      return bounded(v, "2(k+|d-h|) <= n", 2 * (k + absdiff(d, h)) <= n);
    }
    case Criterion::H_LE_ELL: {
      if (!v.require("f not monomial", !mono) | !v.require("h <= ell", h <= ell)) return v;
      if (!v.require("not (binomial, h = ell, a_h = beta)", !(binom && h == ell && ah == P.beta)))
        return v;
      const FamilyIndices fi = family_indices(P, family);
      const unsigned mh = fi.m_h, dh = d - h;
      v.note("m_h = " + str(mh) + " (" + fi.m_h_case + ")", true);
      const unsigned lhs = std::max(2 * (k + dh - mh), dh);
      const bool small = 2 * mh <= dh;
      const unsigned rhs = small ? n : (n >= 2 ? n - 2 : 0);
      if (!small && n < 2) return bounded(v, "bound", false);
      return bounded(v,
                     "max{2(k+d-h-m_h), d-h} = " + str(lhs) + " <= " + str(rhs) +
                         (small ? " (2m_h <= d-h)" : " (2m_h > d-h)"),
                     lhs <= rhs);
    }
    case Criterion::H_GT_ELL: {
      if (!v.require("f not monomial", !mono) | !v.require("h > ell", h > ell)) return v;
      if (!v.require("not (binomial, h = d, a_h = beta)", !(binom && h == d && ah == P.beta)))
        return v;
      const FamilyIndices fi = family_indices(P, family);
      v.note("m_h = " + str(fi.m_h) + " (" + fi.m_h_case + ")", true);
      return bounded(v, "2(k+m_h-ell) <= n", 2 * (k + fi.m_h - ell) <= n);
    }
    case Criterion::SIGMA_H_LE_ELL: {
      if (!v.require("f not monomial", !mono) | !v.require("h <= ell", h <= ell)) return v;
      const FamilyIndices fi = family_indices(P, family);
      v.note("m_h = " + str(fi.m_h) + " (" + fi.m_h_case + ")", true);
      const unsigned mn = std::min(fi.m_h, ell);
      return bounded(v, "2(k+d-min{m_h,ell}+1) <= n", 2 * (k + d - mn + 1) <= n);
    }
    case Criterion::SIGMA_H_GT_ELL: {
      if (!v.require("f not monomial", !mono) | !v.require("h > ell", h > ell)) return v;
      const FamilyIndices fi = family_indices(P, family);
      v.note("m_h = " + str(fi.m_h) + " (" + fi.m_h_case + ")", true);
      return bounded(v, "2(k+max{m_h,d}-ell+1) <= n",
                     2 * (k + std::max(fi.m_h, d) - ell + 1) <= n);
    }
    default:
      throw precondition_violated(std::string("not a binomial-setting family: ") + to_string(family));
  }
}

inline Criterion adjoint_base(Criterion c) {
  switch (c) {
    case Criterion::ADJ_H_LE_ELL: return Criterion::H_LE_ELL;
    case Criterion::ADJ_H_GT_ELL: return Criterion::H_GT_ELL;
    case Criterion::ADJ_SIGMA_H_LE_ELL: return Criterion::SIGMA_H_LE_ELL;
    case Criterion::ADJ_SIGMA_H_GT_ELL: return Criterion::SIGMA_H_GT_ELL;
    default: return c;
  }
}

}  // namespace detail

/// The parameters with f replaced by its adjoint form (shape exponent h').
inline BinomialParams adjoint_params(const BinomialParams& P) {
  BinomialParams r = P;
  auto [fbb, hp] = adjoint_form(P.f, P.h);
  r.f = std::move(fbb);
  r.h = hp;
  return r;
}

/// Evaluates any binomial-setting family without throwing on failed shape
/// hypotheses; `applicable` reports them.
inline CriterionVerdict evaluate(const BinomialParams& params, Criterion family) {
  const BinomialParams P = normalized(params);
  const Criterion base = detail::adjoint_base(family);
  if (base == family) return detail::evaluate_base(P, family);
  CriterionVerdict inner = detail::evaluate_base(adjoint_params(P), base);
  CriterionVerdict v;
  v.id = family;
  v.applicable = inner.applicable;
  v.kind = inner.kind;
  v.nonempty = inner.nonempty;
  for (auto& h : inner.hypotheses) v.note("adjoint form: " + h.condition, h.satisfied);
  return v;
}

inline CriterionVerdict iff_criterion(const BinomialParams& P, Criterion family) {
  if (!is_iff(family)) throw precondition_violated(std::string("not an iff family: ") + to_string(family));
  CriterionVerdict v = evaluate(P, family);
  if (!v.applicable) throw precondition_violated(*v.first_failure());
  return v;
}

inline CriterionVerdict sufficient_bound(const BinomialParams& P, Criterion family) {
  if (std::find(std::begin(kSufficientFamilies), std::end(kSufficientFamilies), family) ==
      std::end(kSufficientFamilies))
    throw precondition_violated(std::string("not a sufficient family: ") + to_string(family));
  CriterionVerdict v = evaluate(P, family);
  if (!v.applicable) throw precondition_violated(*v.first_failure());
  return v;
}

/// Every family of the given orientation whose hypotheses hold.
inline std::vector<CriterionVerdict> applicable_verdicts(const BinomialParams& P, bool swapped) {
  std::vector<CriterionVerdict> out;
  for (Criterion c : kIffFamilies)
    if (is_swapped(c) == swapped)
      if (auto v = evaluate(P, c); v.applicable) out.push_back(std::move(v));
  for (Criterion c : kSufficientFamilies)
    if (is_swapped(c) == swapped)
      if (auto v = evaluate(P, c); v.applicable) out.push_back(std::move(v));
  return out;
}

/// Strongest statement available: a Decided verdict if any exact family
/// applies, else GuaranteedNonEmpty if any bound fires, else Inconclusive.
inline CriterionVerdict combined_verdict(const BinomialParams& P, bool swapped) {
  const auto all = applicable_verdicts(P, swapped);
  for (const auto& v : all)
    if (v.kind == VerdictKind::Decided) return v;
  for (const auto& v : all)
    if (v.kind == VerdictKind::GuaranteedNonEmpty) return v;
  CriterionVerdict none;
  none.id = swapped ? Criterion::SIGMA_H_LE_ELL : Criterion::H_LE_ELL;
  none.kind = VerdictKind::Inconclusive;
  for (const auto& v : all) none.note(std::string(to_string(v.id)) + " inconclusive", true);
  return none;
}

/// Conditions for g = x^q (alpha = 1, beta = 0, k = 1).
inline CriterionVerdict pseudoregulus_conditions(const QPoly& f, unsigned h, bool swapped) {
  const Field& F = f.field();
  const unsigned n = F.n();
  if (h >= n) throw precondition_violated("0 <= h < n");
  const QPolyIndices ix = indices(f);
  const unsigned d = ix.d, ell = ix.ell, ell2 = ix.ell2;
  CriterionVerdict v;
  v.id = Criterion::PSEUDOREGULUS;
  if (ix.is_monomial) {
    const bool r = F.rel_norm(f.coeff(d), 1) == F.one();
    v.note("f monomial", true);
    v.note("N_{q^n/q}(a_d) = 1", r);
    return detail::decided(v, r);
  }
  v.note("f not monomial", true);
  bool any = false;
  auto cond = [&](std::string name, bool ok) {
    v.note(std::move(name), ok);
    any |= ok;
  };
  if (swapped) {
    cond("2(d-ell+2) <= n", 2 * (d - ell + 2) <= n);
    cond("ell = 0 and 2(n-ell2+2) <= n", ell == 0 && 2 * (n - ell2 + 2) <= n);
  } else if (h <= ell) {
    const unsigned mh = f.coeff(h).is_zero() ? ell - h : 0;
    const unsigned dh = d - h;
    const bool small = 2 * mh <= dh;
    const unsigned lhs = std::max(2 * (dh + 1 - mh), dh);
    cond("(I.1) max{2(d-h+1-m_h), d-h} <= " + std::string(small ? "n" : "n-2"),
         small ? lhs <= n : lhs + 2 <= n);
    cond("(I.2) h = ell = 0 and 2(ell2-1) >= n", h == 0 && ell == 0 && 2 * (ell2 - 1) >= n);
  } else {
    cond("(II.1) 2(max{d,h}-ell+1) <= n", 2 * (std::max(d, h) - ell + 1) <= n);
    bool ii2 = false;
    if (ell != 0 && h >= d) {
      const unsigned mh = f.coeff(h).is_zero() ? h - d : 0;
      const unsigned hl = h - ell;
      const bool small = 2 * mh <= hl;
      const unsigned lhs = std::max(2 * (hl + 1 - mh), hl);
      ii2 = small ? lhs <= n : lhs + 2 <= n;
    }
    cond("(II.2) ell != 0, h >= d, max{2(h-ell+1-m^_h), h-ell} within bound", ii2);
    cond("(II.3) ell = 0 and 2(min{h,ell2}-1) >= n",
         ell == 0 && 2 * (std::min(h, ell2) - 1) >= n);
  }
  v.kind = any ? VerdictKind::GuaranteedNonEmpty : VerdictKind::Inconclusive;
  return v;
}

}  // namespace linset

#endif  // LINSET_CRITERIA_HPP
