#ifndef LINSET_CURVE_BOUNDS_HPP
#define LINSET_CURVE_BOUNDS_HPP

// Genus evaluators for Kummer and generalized Artin-Schreier extensions of
// a rational function field, the Hasse-Weil interval, and the per-family
// valuation tables of the curves behind the sufficient criteria.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linset/criteria.hpp"
#include "linset/errors.hpp"

namespace linset {

struct ValuationEntry {
  std::string place;
  std::int64_t valuation = 0;  // v_P(u) for Kummer; m_P for Artin-Schreier
  std::int64_t count = 1;      // number of places of this kind
  std::int64_t degree = 1;
};

struct ValuationProfile {
  std::int64_t base_genus = 0;
  std::int64_t m = 0;         // Kummer degree
  std::int64_t p_degree = 0;  // Artin-Schreier degree q-bar
  std::vector<ValuationEntry> entries;
};

inline std::int64_t gcd_with(std::int64_t m, std::int64_t v) {
  return v == 0 ? m : std::gcd(m, v < 0 ? -v : v);
}

/// g' = 1 + m(g - 1) + (1/2) sum (m - (m, v_P)) deg P.
inline std::int64_t genus_kummer(const ValuationProfile& pr) {
  const std::int64_t m = pr.m;
  if (m < 1) throw profile_invalid("Kummer degree must be positive");
  bool ramified_coprime = (m == 1);
  std::int64_t twice = 0;
  for (const auto& e : pr.entries) {
    if (e.count < 0 || e.degree < 1) throw profile_invalid("bad place count or degree");
    const std::int64_t r = gcd_with(m, e.valuation);
    if (e.count > 0 && r == 1) ramified_coprime = true;
    twice += e.count * e.degree * (m - r);
  }
  if (!ramified_coprime) throw irreducibility_unverified("no place with (m, v) = 1");
  if (twice % 2) throw profile_invalid("odd ramification sum");
  const std::int64_t g = 1 + m * (pr.base_genus - 1) + twice / 2;
  if (g < 0) throw profile_invalid("negative genus");
  return g;
}

/// g' = qbar g + ((qbar - 1)/2)(-2 + sum (m_P + 1) deg P), with m_P = -1
/// for unramified places and m_P > 0 prime to p otherwise.
inline std::int64_t genus_artin_schreier(const ValuationProfile& pr, std::int64_t p) {
  const std::int64_t qb = pr.p_degree;
  if (qb < 2) throw profile_invalid("Artin-Schreier degree must be at least 2");
  bool has_pole = false;
  std::int64_t s = -2;
  for (const auto& e : pr.entries) {
    if (e.valuation == -1) continue;
    if (e.valuation <= 0 || e.valuation % p == 0)
      throw profile_invalid("m_P must be -1 or a positive integer prime to p");
    if (e.count > 0) has_pole = true;
    s += (e.valuation + 1) * e.degree * e.count;
  }
  if (!has_pole) throw profile_invalid("no totally ramified place");
  const std::int64_t num = (qb - 1) * s;
  if (num % 2) throw profile_invalid("odd Artin-Schreier sum");
  return qb * pr.base_genus + num / 2;
}

namespace detail {

inline unsigned __int128 isqrt128(unsigned __int128 x) {
  if (x == 0) return 0;
  unsigned __int128 r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace detail

/// (Q + 1 - ceil(2g sqrt Q), Q + 1 + floor(2g sqrt Q)), exact. The lower
/// end rounds 2g sqrt Q up, so it can sit one below the tightest integer.
inline std::pair<std::int64_t, std::int64_t> hasse_weil_interval(std::int64_t genus,
                                                                 std::int64_t field_size) {
  if (genus < 0) throw precondition_violated("genus >= 0");
  const unsigned __int128 x =
      static_cast<unsigned __int128>(4) * genus * genus * static_cast<unsigned __int128>(field_size);
  const unsigned __int128 r = detail::isqrt128(x);
  const std::int64_t fl = static_cast<std::int64_t>(r);  // floor(2g sqrt Q)
  const std::int64_t ce = fl + (r * r == x ? 0 : 1);
  return {field_size + 1 - ce, field_size + 1 + fl};
}

enum class GenusFamily {
  CLUBS_SIGMA,
  MON,
  H_LE_ELL,
  H_GT_ELL,
  SIGMA_H_LE_ELL,
  SIGMA_H_GT_ELL,
  GENERIC_KUMMER,
  GENERIC_AS
};

inline const char* to_string(GenusFamily f) {
  switch (f) {
    case GenusFamily::CLUBS_SIGMA: return "CLUBS_SIGMA";
    case GenusFamily::MON: return "MON";
    case GenusFamily::H_LE_ELL: return "H_LE_ELL";
    case GenusFamily::H_GT_ELL: return "H_GT_ELL";
    case GenusFamily::SIGMA_H_LE_ELL: return "SIGMA_H_LE_ELL";
    case GenusFamily::SIGMA_H_GT_ELL: return "SIGMA_H_GT_ELL";
    case GenusFamily::GENERIC_KUMMER: return "GENERIC_KUMMER";
    case GenusFamily::GENERIC_AS: return "GENERIC_AS";
  }
  return "?";
}

struct GenusReport {
  GenusFamily family = GenusFamily::GENERIC_KUMMER;
  Criterion source = Criterion::MON_GENERAL;
  std::int64_t genus = 0;          // closed form
  std::int64_t profile_genus = 0;  // from the valuation table
  std::int64_t hw_low = 0, hw_high = 0;
  std::int64_t excluded = 0;
  std::vector<std::pair<std::string, std::int64_t>> excluded_items;
  bool implies_point = false;
  std::optional<std::int64_t> epsilon_h;
  ValuationProfile profile;
};

namespace detail {

inline std::int64_t qpow(std::int64_t q, std::int64_t e) {
  if (e < 0) throw profile_invalid("negative exponent");
  return std::int64_t(ipow(std::uint64_t(q), unsigned(e)));
}

inline std::int64_t halve(std::int64_t twice) {
  if (twice % 2) throw profile_invalid("closed-form genus is not an integer");
  return twice / 2;
}

inline void finish(GenusReport& r, std::int64_t field_size) {
  if (r.genus < 0) throw profile_invalid("negative genus");
  std::tie(r.hw_low, r.hw_high) = hasse_weil_interval(r.genus, field_size);
  r.excluded = 0;
  for (auto& [name, c] : r.excluded_items) r.excluded += c;
  r.implies_point = r.hw_low > r.excluded;
}

}  // namespace detail

inline GenusFamily genus_family_of(Criterion c) {
  switch (detail::adjoint_base(c)) {
    case Criterion::MON_GENERAL:
    case Criterion::SIGMA_MON: return GenusFamily::MON;
    case Criterion::H_LE_ELL: return GenusFamily::H_LE_ELL;
    case Criterion::H_GT_ELL: return GenusFamily::H_GT_ELL;
    case Criterion::SIGMA_H_LE_ELL: return GenusFamily::SIGMA_H_LE_ELL;
    case Criterion::SIGMA_H_GT_ELL: return GenusFamily::SIGMA_H_GT_ELL;
    default: throw precondition_violated(std::string("no curve family for ") + to_string(c));
  }
}

/// Genus, Hasse-Weil interval and excluded-point count of the curve used
/// for a sufficient family, at the given parameters.
inline GenusReport genus_family(Criterion family, const BinomialParams& params) {
  const CriterionVerdict hv = evaluate(params, family);
  if (!hv.applicable) throw precondition_violated(*hv.first_failure());
  const Criterion base = detail::adjoint_base(family);
  BinomialParams P = normalized(params);
  if (base != family) P = adjoint_params(P);

  const Field& F = P.field();
  const std::int64_t q = std::int64_t(F.q());
  const std::int64_t k = P.k;
  const std::int64_t m = detail::qpow(q, k) - 1;
  const QPolyIndices ix = indices(P.f);
  const std::int64_t d = ix.d, h = P.h, ell = ix.ell, ell2 = ix.ell2;
  auto Q = [&](std::int64_t e) { return detail::qpow(q, e); };
  auto qg = [&](std::int64_t e) { return Q(std::gcd(k, e < 0 ? -e : e)); };  // q^{(k,e)}

  GenusReport r;
  r.family = genus_family_of(family);
  r.source = family;
  r.profile.m = m;
  auto& E = r.profile.entries;

  switch (base) {
    case Criterion::MON_GENERAL:
    case Criterion::SIGMA_MON: {
      const std::int64_t D = d > h ? d - h : h - d;
      r.genus = detail::halve((Q(k) - 2) * (Q(D) - 3) + Q(k) - qg(D));
      E.push_back({"pole of y", -(Q(D) - 1), 1, 1});
      E.push_back({"zeros of F", 1, Q(D) - 1, 1});
      r.excluded_items = {{"poles of x or y", qg(D) - 1},
                          {"zeros of y", Q(k) - 1},
                          {"zeros of x", Q(D) - 1}};
      break;
    }
    case Criterion::H_LE_ELL: {
      const std::int64_t mh = family_indices(P, base).m_h, dh = d - h;
      r.genus = detail::halve((Q(k) - 2) * (Q(dh - mh) - 3) + 2 * Q(k) - qg(dh) - qg(mh));
      E.push_back({"eta", Q(mh), Q(dh - mh) - 1, 1});
      E.push_back({"pole of y", -(Q(dh) - 1), 1, 1});
      E.push_back({"zero of y", Q(mh) - 1, 1, 1});
      r.excluded_items = {{"poles of x or y", qg(dh) - 1},
                          {"zeros of y", qg(mh) - 1},
                          {"zeros of x", Q(dh) - 1}};
      break;
    }
    case Criterion::H_GT_ELL: {
      const std::int64_t mh = family_indices(P, base).m_h, hl = h - ell, ml = mh - ell;
      r.genus = detail::halve((Q(k) - 2) * (Q(ml) - 3) + 2 * Q(k) - qg(hl) - qg(mh - h));
      E.push_back({"eta", 1, Q(ml) - 1, 1});
      E.push_back({"pole of y", Q(hl) - Q(ml), 1, 1});
      E.push_back({"zero of y", -(Q(hl) - 1), 1, 1});
      r.excluded_items = {{"poles of y", qg(mh - h) - 1},
                          {"zeros of y", qg(hl) - 1},
                          {"zeros of x, not poles of y", Q(ml) - 1}};
      break;
    }
    case Criterion::SIGMA_H_LE_ELL: {
      const std::int64_t mh = family_indices(P, base).m_h;
      const bool beta0 = P.beta.is_zero();
      const bool bah1 = F.mul(P.beta, P.f.coeff(unsigned(h))) == F.one();
      const std::int64_t v0 = bah1 ? Q(ell2 - h) - Q(ell - h) : 1 - Q(ell - h);
      const std::int64_t vinf = beta0 ? Q(d - h) - 1 : 0;
      const std::int64_t g0 = gcd_with(m, v0), ginf = gcd_with(m, vinf);
      const std::int64_t eps = 2 * Q(k) - 2 - ginf - g0;
      r.epsilon_h = eps;
      r.genus = detail::halve((Q(k) - 2) * (Q(d - mh) + Q(d - ell) - 4) + eps);
      E.push_back({"P0", v0, 1, 1});
      E.push_back({"Pinf", vinf, 1, 1});
      E.push_back({"eta", bah1 ? Q(ell2 - h) : 1, Q(d - mh) - 1, 1});
      E.push_back({"xi", -Q(ell - h), Q(d - ell) - 1, 1});
      r.excluded_items = {{"poles of y", ginf},
                          {"zeros of y", g0},
                          {"poles of x", Q(d - ell) - 1},
                          {"zeros of x, not poles of y", Q(d - mh) - 1}};
      break;
    }
    case Criterion::SIGMA_H_GT_ELL: {
      const std::int64_t mh = family_indices(P, base).m_h;
      const bool beta0 = P.beta.is_zero();
      const bool bad1 = F.mul(P.beta, P.f.coeff(unsigned(d))) == F.one();
      const std::int64_t v0 = beta0 ? Q(h - ell) - 1 : 0;
      std::int64_t vinf;
      if (!beta0 && h < d) vinf = 0;
      else if (!beta0 && h == d && !bad1) vinf = 0;
      else if (h == d && bad1) vinf = Q(ix.ell3.value_or(ix.ell) - ell) * (Q(d - ix.ell3.value_or(ix.ell)) - 1);
      else vinf = Q(d - ell) - Q(h - ell);  // -q^{d-ell}(q^{h-d}-1)
      const std::int64_t g0 = gcd_with(m, v0), ginf = gcd_with(m, vinf);
      const std::int64_t eps = 2 * Q(k) - 2 - ginf - g0;
      r.epsilon_h = eps;
      r.genus = detail::halve((Q(k) - 2) * (Q(mh - ell) + Q(d - ell) - 4) + eps);
      E.push_back({"P0", v0, 1, 1});
      E.push_back({"Pinf", vinf, 1, 1});
      E.push_back({"eta", 1, Q(mh - ell) - 1, 1});
      E.push_back({"xi", -1, Q(d - ell) - 1, 1});
      r.excluded_items = {{"zeros of y", g0},
                          {"poles of y", ginf},
                          {"poles of x, not poles of y", Q(d - ell) - 1},
                          {"zeros of x", Q(mh - ell) - 1}};
      break;
    }
    default:
      throw precondition_violated(std::string("no curve family for ") + to_string(family));
  }
  r.profile_genus = genus_kummer(r.profile);
  detail::finish(r, std::int64_t(F.order()));
  return r;
}

/// The Artin-Schreier curve behind the club/sigma bound.
inline GenusReport genus_clubs_sigma(const ClubParams& c) {
  require_coprime(c);
  const std::int64_t q = std::int64_t(c.F.q());
  const std::int64_t a = detail::qpow(q, c.r1), b = detail::qpow(q, c.r2);
  GenusReport r;
  r.family = GenusFamily::CLUBS_SIGMA;
  r.source = Criterion::CLUB_SIGMA_BOUND;
  r.genus = (a - 1) * (b - 1);
  r.profile.p_degree = a;
  r.profile.entries.push_back({"zeros of v^{q^r2} - v + gamma2", 1, b, 1});
  r.profile_genus = genus_artin_schreier(r.profile, c.F.p());
  // The poles of u and v are not rational, so nothing is excluded.
  r.excluded_items = {{"rational poles of u or v", 0}};
  detail::finish(r, std::int64_t(c.F.order()));
  return r;
}

}  // namespace linset

#endif  // LINSET_CURVE_BOUNDS_HPP
