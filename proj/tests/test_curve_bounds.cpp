#include <gtest/gtest.h>

#include <tuple>
#include <vector>

#include "linset/curve_bounds.hpp"
#include "linset/rng.hpp"

using namespace linset;

namespace {

Elt unit(const Field& F, XorShift64Star& rng) { return Elt(std::uint32_t(1 + rng.below(F.order() - 1))); }

}  // namespace

TEST(Kummer, UnramifiedOverRationalBase) {
  ValuationProfile pr;
  pr.base_genus = 3;
  pr.m = 1;
  pr.entries = {{"P", 0, 4, 1}};
  EXPECT_EQ(genus_kummer(pr), 3);
}

TEST(Kummer, UnramifiedNeedsACoprimePlace) {
  ValuationProfile pr;
  pr.base_genus = 2;
  pr.m = 3;
  pr.entries = {{"P", 3, 2, 1}, {"Q", 0, 1, 1}};
  EXPECT_THROW(genus_kummer(pr), irreducibility_unverified);
  pr.entries.push_back({"R", 1, 2, 1});
  pr.entries.push_back({"S", -1, 2, 1});
  // 1 + 3 (2 - 1) + (4 * 2) / 2
  EXPECT_EQ(genus_kummer(pr), 8);
}

TEST(Kummer, RejectsBadProfiles) {
  ValuationProfile pr;
  pr.m = 0;
  EXPECT_THROW(genus_kummer(pr), profile_invalid);
  pr.m = 2;
  pr.entries = {{"P", 1, 1, 1}};  // odd ramification sum
  EXPECT_THROW(genus_kummer(pr), profile_invalid);
  pr.entries = {{"P", 1, 1, 0}};
  EXPECT_THROW(genus_kummer(pr), profile_invalid);
}

TEST(ArtinSchreier, TraceCurveOverF2) {
  ValuationProfile pr;
  pr.p_degree = 2;
  pr.entries = {{"zeros", 1, 2, 1}};
  EXPECT_EQ(genus_artin_schreier(pr, 2), 1);
  pr.entries = {{"unramified", -1, 5, 1}};
  EXPECT_THROW(genus_artin_schreier(pr, 2), profile_invalid);
  pr.entries = {{"wild", 2, 1, 1}};
  EXPECT_THROW(genus_artin_schreier(pr, 2), profile_invalid);
  pr.p_degree = 1;
  EXPECT_THROW(genus_artin_schreier(pr, 2), profile_invalid);
}

TEST(HasseWeil, Intervals) {
  EXPECT_EQ(hasse_weil_interval(0, 64), std::make_pair(std::int64_t(65), std::int64_t(65)));
  EXPECT_EQ(hasse_weil_interval(1, 64), std::make_pair(std::int64_t(49), std::int64_t(81)));
  EXPECT_EQ(hasse_weil_interval(2, 8), std::make_pair(std::int64_t(-3), std::int64_t(20)));
  EXPECT_EQ(hasse_weil_interval(3, 1), std::make_pair(std::int64_t(-4), std::int64_t(8)));
  EXPECT_THROW(hasse_weil_interval(-1, 4), precondition_violated);
  // exact at a large square
  const std::int64_t Q = std::int64_t(1) << 40;
  EXPECT_EQ(hasse_weil_interval(5, Q).first, Q + 1 - 10 * (std::int64_t(1) << 20));
}

TEST(Genus, ClubsSigmaAtSixtyFour) {
  const Field F = make_field(2, 1, 6);
  const GenusReport r = genus_clubs_sigma(ClubParams{F, 1, 1, F.one()});
  EXPECT_EQ(r.genus, 1);
  EXPECT_EQ(r.profile_genus, 1);
  EXPECT_EQ(r.hw_low, 49);
  EXPECT_EQ(r.excluded, 0);
  EXPECT_TRUE(r.implies_point);
  const GenusReport s = genus_clubs_sigma(ClubParams{F, 1, 2, F.one()});
  EXPECT_EQ(s.genus, 3);
  EXPECT_EQ(s.profile_genus, 3);
  EXPECT_THROW(genus_clubs_sigma(ClubParams{F, 2, 2, F.one()}), precondition_violated);
}

TEST(Genus, MonomialRationalCases) {
  // k = 1, |d - h| = 1: ((q-2)(q-3) + q - q) / 2, zero for q = 2, 3.
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 6}, {3, 4}}) {
    const Field F = make_field(p, 1, n);
    const BinomialParams P{F.one(), F.one(), 1, QPoly::monomial(F, F.one(), 1), 0};
    const GenusReport r = genus_family(Criterion::MON_GENERAL, P);
    EXPECT_EQ(r.genus, 0);
    EXPECT_EQ(r.profile_genus, 0);
    EXPECT_EQ(r.hw_low, std::int64_t(F.order()) + 1);
  }
  const Field F = make_field(5, 1, 4);
  const BinomialParams P{F.one(), F.one(), 1, QPoly::monomial(F, F.one(), 1), 0};
  EXPECT_EQ(genus_family(Criterion::MON_GENERAL, P).genus, 3);
}

TEST(Genus, MonomialRejectsDEqualsH) {
  const Field F = make_field(2, 1, 6);
  const BinomialParams P{F.one(), F.one(), 1, QPoly::monomial(F, F.one(), 2), 2};
  EXPECT_THROW(genus_family(Criterion::MON_GENERAL, P), precondition_violated);
  EXPECT_THROW(genus_family(Criterion::MON_H_EQ_D, P), precondition_violated);
}

TEST(Genus, ClosedFormsMatchProfiles) {
  XorShift64Star rng(211);
  std::size_t checked = 0;
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 8}, {2, 1, 10}, {3, 1, 6}, {2, 2, 6}}) {
    const Field F = make_field(p, m, n);
    for (int rep = 0; rep < 400; ++rep) {
      QPoly f(F);
      while (f.is_zero())
        for (unsigned i = 0; i < n; ++i)
          if (rng.below(3) == 0) f.set_coeff(i, unit(F, rng));
      const unsigned h = unsigned(rng.below(n));
      const Elt ah = f.coeff(h);
      Elt beta;
      switch (rng.below(3)) {
        case 0: beta = Elt(0); break;
        case 1: beta = ah; break;
        default: beta = ah.is_zero() ? unit(F, rng) : F.inv(ah); break;
      }
      const BinomialParams P{unit(F, rng), beta, 1 + unsigned(rng.below(n / 2)), f, h};
      for (Criterion fam : kSufficientFamilies) {
        if (!evaluate(P, fam).applicable) continue;
        const GenusReport r = genus_family(fam, P);
        EXPECT_EQ(r.genus, r.profile_genus) << to_string(fam);
        EXPECT_GE(r.genus, 0);
        EXPECT_LE(r.hw_low, r.hw_high);
        if (r.implies_point) {
          EXPECT_TRUE(meets(P.g(), P.f, P.h, is_swapped(fam))) << to_string(fam);
        }
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 500u);
}
