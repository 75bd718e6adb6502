#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "linset/criteria.hpp"
#include "linset/rng.hpp"
#include "linset/verify.hpp"

using namespace linset;

namespace {

Elt unit(const Field& F, XorShift64Star& rng) { return Elt(std::uint32_t(1 + rng.below(F.order() - 1))); }
Elt any(const Field& F, XorShift64Star& rng) { return Elt(std::uint32_t(rng.below(F.order()))); }

// Common points of two sets other than <(1,0)>, straight from the keys.
std::size_t affine_common(const LinearSet& A, const LinearSet& B) {
  std::size_t c = 0;
  for (const ProjPoint& P : intersect(A, B)) c += !P.infinite;
  return c;
}

// Exhaustive search for gamma1, gamma2 with unit relative traces and
// Tr(a gamma1 - gamma2 / b) = 0.
bool gamma_search(const Field& F, unsigned r1, unsigned r2, Elt a, Elt b) {
  std::vector<Elt> G1, G2;
  for (std::uint32_t v = 0; v < F.order(); ++v) {
    if (F.rel_trace(Elt(v), r1) == F.one()) G1.push_back(Elt(v));
    if (F.rel_trace(Elt(v), r2) == F.one()) G2.push_back(Elt(v));
  }
  for (Elt g1 : G1)
    for (Elt g2 : G2)
      if (F.rel_trace(F.sub(F.mul(a, g1), F.div(g2, b)), 1).is_zero()) return true;
  return false;
}

BinomialParams random_params(const Field& F, XorShift64Star& rng) {
  BinomialParams P;
  P.f = QPoly(F);
  while (P.f.is_zero() || P.f.support_size() == 1)
    for (unsigned i = 0; i < F.n(); ++i)
      P.f.set_coeff(i, rng.below(2) ? any(F, rng) : Elt(0));
  P.h = unsigned(rng.below(F.n()));
  P.k = 1 + unsigned(rng.below(F.n() - 1));
  P.alpha = unit(F, rng);
  const Elt ah = P.f.coeff(P.h);
  switch (rng.below(4)) {
    case 0: P.beta = Elt(0); break;
    case 1: P.beta = ah; break;
    case 2: P.beta = ah.is_zero() ? unit(F, rng) : F.inv(ah); break;
    default: P.beta = any(F, rng); break;
  }
  return P;
}

// The four adjoint corollaries written out with their own m^_h tables.
// nullopt: hypotheses fail (or, for one case of the second, the table has
// no entry). Returns whether the bound fires. k is already <= n/2.
std::optional<bool> adj_explicit(Criterion fam, const BinomialParams& P) {
  const Field& F = P.field();
  const unsigned n = F.n(), h = P.h, k = P.k;
  const QPolyIndices ix = indices(P.f);
  if (ix.is_monomial) return std::nullopt;
  const unsigned d = ix.d, l = ix.ell, l2 = ix.ell2, l3 = *ix.ell3;
  const bool binom = P.f.support_size() == 2;
  const Elt ah = P.f.coeff(h);
  const bool b0 = P.beta.is_zero(), bah1 = F.mul(P.beta, ah) == F.one();
  switch (fam) {
    case Criterion::ADJ_H_LE_ELL: {
      if (l != 0 ? h < d : h != 0) return std::nullopt;
      if (binom && ah == P.beta) return std::nullopt;  // both listed cases are h = d or h = 0 here
      unsigned mh;
      if (ah != P.beta) mh = 0;
      else if (b0) mh = h - d;
      else mh = l != 0 ? h - l3 : n - d;
      const unsigned D = l != 0 ? h - l : n - l2;
      const unsigned lhs = std::max(2 * (k + D - mh), D);
      return 2 * mh <= D ? lhs <= n : lhs + 2 <= n;
    }
    case Criterion::ADJ_H_GT_ELL: {
      if (h == 0 || (l != 0 && h >= d)) return std::nullopt;
      if (binom && ((l != 0 && h == l) || (l == 0 && h == d)) && ah == P.beta) return std::nullopt;
      unsigned mh;
      if (l != 0) mh = (ah != P.beta || l != h) ? n - std::min(h, l) : n - l2;
      else if (ah != P.beta || l2 != h) mh = n - std::min(h, l2);
      else return std::nullopt;
      return l != 0 ? 2 * (k + mh + d) <= 3 * n : 2 * (k + mh) <= n;
    }
    case Criterion::ADJ_SIGMA_H_LE_ELL: {
      if (l != 0 ? h < d : h != 0) return std::nullopt;
      unsigned mh;
      if (b0) mh = 0;
      else if (!bah1) mh = l != 0 ? h - l : n - l2;
      else mh = l != 0 ? l3 - l : d - l2;
      return l != 0 ? 2 * (k + std::max(mh, d - l) + 1) <= n : 2 * (k + std::max(mh, n - l2) + 1) <= n;
    }
    case Criterion::ADJ_SIGMA_H_GT_ELL: {
      if (h == 0 || (l != 0 && h >= d)) return std::nullopt;
      unsigned t = n;
      if (!binom)
        for (unsigned i = l2 + 1; i < n; ++i)
          if (!P.f.coeff(i).is_zero()) {
            t = i;
            break;
          }
      unsigned mh;
      if (l != 0) mh = b0 ? d : ((h != l || !bah1) ? std::min(l, h) : l2);
      else mh = b0 ? n : ((h != l2 || !bah1) ? std::min(l2, h) : t);
      return l != 0 ? 2 * (k + d - std::min(mh, l) + 1) <= n : 2 * (k + n - std::min(mh, l2) + 1) <= n;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Clubs

TEST(Clubs, NormalizeDividesByGcd) {
  const Field F = make_field(2, 1, 8);
  const ClubParams c = normalize_club(ClubParams{F, 2, 4, F.one()});
  EXPECT_EQ(c.r1, 1u);
  EXPECT_EQ(c.r2, 2u);
  EXPECT_EQ(c.F.n(), 4u);
  EXPECT_EQ(c.F.q(), 4u);
  EXPECT_EQ(c.F.order(), 256u);

  const Field G = make_field(2, 1, 3);
  const ClubParams u = normalize_club(ClubParams{G, 1, 3, G.one()});
  EXPECT_EQ(u.r1, 1u);
  EXPECT_EQ(u.r2, 3u);
  EXPECT_EQ(u.F.q(), 2u);
  EXPECT_THROW(normalize_club(ClubParams{G, 2, 1, G.one()}), not_a_divisor);
}

TEST(Clubs, NormalizationKeepsThePoints) {
  // (2,2) over F_16 with q = 2 becomes (1,1) with q = 4; same points, weights
  // now counted over F_4.
  const Field F = make_field(2, 1, 4);
  for (std::uint32_t a = 1; a < 16; ++a) {
    const ClubParams c{F, 2, 2, Elt(a)};
    const ClubParams nc = normalize_club(c);
    for (unsigned w : {1u, 2u}) {
      const auto a = club_set(c, w).keyed(), b = club_set(nc, w).keyed();
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].first, b[i].first);
        EXPECT_EQ(a[i].second, 2 * b[i].second);
      }
    }
    const CriterionVerdict v = club_primo(nc);
    if (v.kind == VerdictKind::GuaranteedNonEmpty) {
      EXPECT_GE(affine_common(club_set(c, 1), club_set(c, 2)), 1u);
    }
  }
}

TEST(Clubs, PrimoCharacteristicTwoOddDegree) {
  // -1 = 1 and Tr(1) = 1 for odd n, so a = 1 works at alpha = 1.
  for (unsigned n : {3u, 5u}) {
    const Field F = make_field(2, 1, n);
    const ClubParams c{F, 1, 1, F.one()};
    EXPECT_EQ(club_primo(c).kind, VerdictKind::GuaranteedNonEmpty);
    const std::size_t common = intersect(club_set(c, 1), club_set(c, 2)).size();
    EXPECT_GE(common, 2u);  // head and one more
  }
}

TEST(Clubs, PrimoNeedsMinusOneInBothTraces) {
  // q = 3, n = 2, r1 = r2 = 1, alpha = -1: a with Tr(a) = -1 and Tr(-a) = 1
  // exists, yet the clubs share only their head.
  const Field F = make_field(3, 1, 2);
  const ClubParams c{F, 1, 1, F.minus_one()};
  const CriterionVerdict v = club_primo(c);
  EXPECT_EQ(v.kind, VerdictKind::Inconclusive);
  ASSERT_EQ(v.hypotheses.size(), 3u);
  EXPECT_TRUE(v.hypotheses[2].satisfied);
  EXPECT_EQ(affine_common(club_set(c, 1), club_set(c, 2)), 0u);
}

TEST(Clubs, PrimoSoundOnSmallFields) {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 4}, {2, 6}, {3, 3}, {5, 2}}) {
    const Field F = make_field(p, 1, n);
    for (unsigned r1 = 1; r1 <= n; ++r1)
      for (unsigned r2 = 1; r2 <= n; ++r2) {
        if (n % r1 || n % r2 || std::gcd(r1, r2) != 1) continue;
        for (std::uint32_t a = 1; a < F.order(); ++a) {
          const ClubParams c{F, r1, r2, Elt(a)};
          if (club_primo(c).kind == VerdictKind::GuaranteedNonEmpty) {
            EXPECT_GE(affine_common(club_set(c, 1), club_set(c, 2)), 1u) << p << " " << n << " " << a;
          }
        }
      }
  }
  const Field F = make_field(2, 1, 4);
  EXPECT_THROW(club_primo(ClubParams{F, 2, 2, F.one()}), precondition_violated);
}

TEST(Clubs, SecondoMatchesGammaSearchAndIntersection) {
  for (auto [p, n, r1, r2] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned, unsigned>>{
           {2, 6, 2, 3}, {2, 6, 3, 2}, {2, 6, 1, 1}, {3, 2, 1, 2}, {2, 4, 1, 4}, {3, 3, 1, 1}}) {
    const Field F = make_field(p, 1, n);
    for (std::uint32_t a = 1; a < F.order(); ++a) {
      if (!F.in_subfield(Elt(a), r1)) continue;
      for (std::uint32_t b = 1; b < F.order(); ++b) {
        if (!F.in_subfield(Elt(b), r2)) continue;
        const ClubParams c{F, r1, r2, F.mul(Elt(a), Elt(b))};
        const CriterionVerdict v = club_secondo(c, Elt(a), Elt(b));
        ASSERT_EQ(v.kind, VerdictKind::Decided);
        EXPECT_EQ(v.nonempty, gamma_search(F, r1, r2, Elt(a), Elt(b)));
        EXPECT_EQ(v.nonempty, affine_common(club_set(c, 1), club_set(c, 2)) > 0);
      }
    }
  }
}

TEST(Clubs, SecondoPreconditions) {
  const Field F = make_field(2, 1, 6);
  const Elt w(2);  // not in F_4 or F_8
  ASSERT_FALSE(F.in_subfield(w, 2));
  EXPECT_THROW(club_secondo(ClubParams{F, 2, 3, F.one()}, F.one(), w), precondition_violated);
  EXPECT_THROW(club_secondo(ClubParams{F, 2, 3, w}, F.one(), F.one()), precondition_violated);
  EXPECT_THROW(club_secondo(ClubParams{F, 2, 2, F.one()}, F.one(), F.one()), precondition_violated);
}

TEST(Clubs, SigmaBoundExamples) {
  const Field F = make_field(2, 1, 6);
  EXPECT_EQ(club_sigma_bound(ClubParams{F, 1, 1, F.one()}).kind, VerdictKind::GuaranteedNonEmpty);
  EXPECT_EQ(club_sigma_bound(ClubParams{F, 1, 2, F.one()}).kind, VerdictKind::Inconclusive);
  const LinearSet L1 = club_set(ClubParams{F, 1, 1, F.one()}, 1);
  for (std::uint32_t a = 1; a < 64; ++a)
    EXPECT_FALSE(intersect(L1, club_sigma_set(ClubParams{F, 1, 1, Elt(a)})).empty()) << a;
}

TEST(Clubs, SameFieldMatchesSigmaIntersection) {
  for (auto [p, n, r] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 4, 1}, {2, 4, 2}, {3, 2, 1}, {2, 3, 1}, {2, 6, 2}}) {
    const Field F = make_field(p, 1, n);
    for (std::uint32_t a = 1; a < F.order(); ++a) {
      const ClubParams c{F, r, r, Elt(a)};
      const SameFieldResult s = club_same_field(c);
      EXPECT_LE(s.t_size, F.order());
      EXPECT_EQ(s.verdict.nonempty, !intersect(club_set(c, 1), club_sigma_set(c)).empty());
    }
  }
  const Field F = make_field(2, 1, 4);
  EXPECT_THROW(club_same_field(ClubParams{F, 1, 2, F.one()}), precondition_violated);
}

// ---------------------------------------------------------------------------
// g = alpha x^{q^k} + beta x

TEST(Binomial, MonomialHEqualsDExample) {
  const Field F = make_field(2, 1, 3);
  BinomialParams P{F.one(), Elt(0), 1, QPoly::monomial(F, F.one(), 1), 1};
  const CriterionVerdict v = iff_criterion(P, Criterion::MON_H_EQ_D);
  EXPECT_EQ(v.kind, VerdictKind::Decided);
  EXPECT_TRUE(v.nonempty);
  EXPECT_TRUE(build(P.g()).contains(ProjPoint::affine(F.one())));
  EXPECT_TRUE(meets(P.g(), P.f, P.h, false));
}

TEST(Binomial, MonomialBetaZeroNonNorm) {
  const Field F = make_field(3, 1, 2);
  unsigned tried = 0;
  for (std::uint32_t a = 1; a < 9; ++a) {
    if (F.rel_norm(Elt(a), 1) == F.one()) continue;
    BinomialParams P{F.one(), Elt(0), 1, QPoly::monomial(F, Elt(a), 1), 0};
    const CriterionVerdict v = iff_criterion(P, Criterion::MON_BETA0);
    EXPECT_EQ(v.kind, VerdictKind::Decided);
    EXPECT_FALSE(v.nonempty);
    EXPECT_FALSE(curve_affine_witness(P.g(), P.f, P.h, false).has_value());
    ++tried;
  }
  EXPECT_EQ(tried, 4u);
}

TEST(Binomial, IffShapeFailuresAreNamed) {
  const Field F = make_field(2, 1, 4);
  BinomialParams P{F.one(), Elt(0), 1, QPoly::monomial(F, F.one(), 2), 1};
  try {
    iff_criterion(P, Criterion::MON_H_EQ_D);
    FAIL();
  } catch (const precondition_violated& e) {
    EXPECT_NE(std::string(e.what()).find("h = d"), std::string::npos);
  }
  EXPECT_THROW(iff_criterion(P, Criterion::H_LE_ELL), precondition_violated);
  EXPECT_THROW(sufficient_bound(P, Criterion::MON_BETA0), precondition_violated);
  P.alpha = Elt(0);
  EXPECT_THROW(evaluate(P, Criterion::MON_BETA0), precondition_violated);
}

TEST(Binomial, IffAgreesWithOracleOnRandomTuples) {
  XorShift64Star rng(17);
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 5}, {2, 1, 6}, {5, 1, 3}, {2, 2, 3}, {7, 1, 2}}) {
    const Field F = make_field(p, m, n);
    for (Criterion fam : kIffFamilies)
      for (int rep = 0; rep < 60; ++rep) {
        const BinomialParams P = verify::detail::iff_random_tuple(F, fam, rng);
        const CriterionVerdict v = iff_criterion(P, fam);
        EXPECT_EQ(v.nonempty, meets(P.g(), P.f, P.h, is_swapped(fam))) << to_string(fam);
      }
  }
}

TEST(Binomial, HLeEllMhTable) {
  const Field F = make_field(2, 1, 6);
  QPoly f(F);
  f.set_coeff(1, Elt(3));
  f.set_coeff(3, Elt(5));
  f.set_coeff(4, Elt(7));
  // a_h != beta
  EXPECT_EQ(family_indices(BinomialParams{F.one(), Elt(9), 1, f, 1}, Criterion::H_LE_ELL).m_h, 0u);
  // a_h = beta = 0: ell - h
  EXPECT_EQ(family_indices(BinomialParams{F.one(), Elt(0), 1, f, 0}, Criterion::H_LE_ELL).m_h, 1u);
  // a_h = beta != 0: ell2 - h
  EXPECT_EQ(family_indices(BinomialParams{F.one(), Elt(3), 1, f, 1}, Criterion::H_LE_ELL).m_h, 2u);
  // a_d = beta and d = h: ell3
  EXPECT_EQ(family_indices(BinomialParams{F.one(), Elt(7), 1, f, 4}, Criterion::H_GT_ELL).m_h, 3u);
}

TEST(Binomial, MonomialGeneralExample) {
  // q = 2, n = 8, k = 1, d = 2, h = 0, beta != 0: 1 + 2 <= 4.
  const Field F = make_field(2, 1, 8);
  XorShift64Star rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    BinomialParams P{unit(F, rng), unit(F, rng), 1, QPoly::monomial(F, unit(F, rng), 2), 0};
    const CriterionVerdict v = sufficient_bound(P, Criterion::MON_GENERAL);
    EXPECT_EQ(v.kind, VerdictKind::GuaranteedNonEmpty);
    EXPECT_TRUE(curve_affine_witness(P.g(), P.f, 0, false).has_value());
  }
}

TEST(Binomial, NormalizationKeepsLg) {
  const Field F = make_field(3, 1, 4);
  XorShift64Star rng(29);
  for (int rep = 0; rep < 20; ++rep) {
    BinomialParams P{unit(F, rng), any(F, rng), 3, QPoly::identity(F), 0};
    const BinomialParams N = normalized(P);
    EXPECT_EQ(N.k, 1u);
    EXPECT_EQ(build(P.g()).keyed(), build(N.g()).keyed());
  }
}

TEST(Binomial, AdjointCorollariesMatchExplicitTables) {
  XorShift64Star rng(31);
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 6}, {2, 1, 8}, {2, 1, 10}, {3, 1, 6}, {2, 2, 7}}) {
    const Field F = make_field(p, m, n);
    std::set<Criterion> fired_seen;
    for (int rep = 0; rep < 3000; ++rep) {
      const BinomialParams P = normalized(random_params(F, rng));
      for (Criterion fam : {Criterion::ADJ_H_LE_ELL, Criterion::ADJ_H_GT_ELL, Criterion::ADJ_SIGMA_H_LE_ELL,
                            Criterion::ADJ_SIGMA_H_GT_ELL}) {
        const std::optional<bool> expl = adj_explicit(fam, P);
        const CriterionVerdict v = evaluate(P, fam);
        if (!expl) continue;
        ASSERT_TRUE(v.applicable) << to_string(fam);
        EXPECT_EQ(*expl, v.kind == VerdictKind::GuaranteedNonEmpty) << to_string(fam);
        if (*expl) fired_seen.insert(fam);
      }
    }
    if (n >= 8) {
      EXPECT_GE(fired_seen.size(), 3u);
    }
  }
}

TEST(Binomial, AdjointFamiliesDelegate) {
  XorShift64Star rng(37);
  const Field F = make_field(2, 1, 8);
  for (int rep = 0; rep < 500; ++rep) {
    const BinomialParams P = normalized(random_params(F, rng));
    for (Criterion fam : kSufficientFamilies) {
      const Criterion base = detail::adjoint_base(fam);
      if (base == fam) continue;
      const CriterionVerdict a = evaluate(P, fam), b = evaluate(adjoint_params(P), base);
      EXPECT_EQ(a.applicable, b.applicable);
      EXPECT_EQ(a.kind, b.kind);
    }
  }
}

TEST(Binomial, SignatureDeterminesSufficientVerdicts) {
  XorShift64Star rng(41);
  for (auto [p, m, n] :
       std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{{2, 1, 6}, {3, 1, 4}, {2, 2, 5}}) {
    const Field F = make_field(p, m, n);
    std::map<std::uint64_t, std::uint32_t> seen;
    for (int rep = 0; rep < 4000; ++rep) {
      BinomialParams P = random_params(F, rng);
      const auto [fa, ha] = adjoint_form(P.f, P.h);
      const std::uint64_t sig = verify::sufficient_signature(P.f, P.h, P.k, P.beta, fa, ha);
      const std::uint32_t masks = verify::sufficient_masks(P);
      auto [it, fresh] = seen.emplace(sig, masks);
      if (!fresh) {
        EXPECT_EQ(it->second, masks);
      }
    }
  }
}

TEST(Binomial, CombinedVerdictPrefersDecided) {
  const Field F = make_field(2, 1, 4);
  BinomialParams P{F.one(), Elt(0), 1, QPoly::monomial(F, F.one(), 1), 1};
  EXPECT_EQ(combined_verdict(P, false).kind, VerdictKind::Decided);
  QPoly f(F);
  f.set_coeff(0, Elt(1));
  f.set_coeff(3, Elt(1));
  EXPECT_NE(combined_verdict(BinomialParams{F.one(), Elt(5), 1, f, 2}, true).kind, VerdictKind::Decided);
}

// ---------------------------------------------------------------------------
// Pseudoregulus

TEST(Pseudoregulus, MonomialIsNormTest) {
  const Field F = make_field(2, 1, 4);
  const QPoly g = QPoly::monomial(F, F.one(), 1);
  for (std::uint32_t a = 1; a < 16; ++a)
    for (unsigned d = 0; d < 4; ++d)
      for (bool sw : {false, true}) {
        const QPoly f = QPoly::monomial(F, Elt(a), d);
        const CriterionVerdict v = pseudoregulus_conditions(f, 0, sw);
        EXPECT_EQ(v.kind, VerdictKind::Decided);
        EXPECT_EQ(v.nonempty, F.rel_norm(Elt(a), 1) == F.one());
        EXPECT_EQ(v.nonempty, meets(g, f, 0, sw));
      }
}

TEST(Pseudoregulus, ConditionII1Example) {
  // d = 2, h = 1, ell = 0, n = 8: max{d,h} - ell + 1 = 3 <= 4.
  const Field F = make_field(2, 1, 8);
  QPoly f(F);
  f.set_coeff(0, Elt(7));
  f.set_coeff(2, Elt(11));
  const CriterionVerdict v = pseudoregulus_conditions(f, 1, false);
  EXPECT_EQ(v.kind, VerdictKind::GuaranteedNonEmpty);
  EXPECT_TRUE(meets(QPoly::monomial(F, F.one(), 1), f, 1, false));
}

TEST(Pseudoregulus, SweepLowDegree) {
  for (unsigned n : {6u, 8u}) {
    const Field F = make_field(2, 1, n);
    const QPoly g = QPoly::monomial(F, F.one(), 1);
    XorShift64Star rng(43 + n);
    for (int rep = 0; rep < 150; ++rep) {
      QPoly f(F);
      while (f.is_zero())
        for (unsigned i = 0; i <= 3; ++i) f.set_coeff(i, rng.below(2) ? unit(F, rng) : Elt(0));
      for (unsigned h = 0; h < n; ++h)
        for (bool sw : {false, true}) {
          const CriterionVerdict v = pseudoregulus_conditions(f, h, sw);
          if (v.kind == VerdictKind::Inconclusive) continue;
          EXPECT_EQ(v.asserts_nonempty(), meets(g, f, h, sw));
        }
    }
  }
}
