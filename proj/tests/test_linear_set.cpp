#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "linset/linear_set.hpp"
#include "linset/rng.hpp"

using namespace linset;

namespace {

QPoly random_qpoly(const Field& F, XorShift64Star& rng, unsigned max_deg) {
  QPoly f(F);
  for (unsigned i = 0; i <= max_deg && i < F.n(); ++i)
    f.set_coeff(i, Elt(std::uint32_t(rng.below(F.order()))));
  return f;
}

QPoly scaled(const QPoly& f, Elt c) {
  const Field& F = f.field();
  QPoly r(F);
  for (unsigned i = 0; i < F.n(); ++i) r.set_coeff(i, F.mul(c, f.coeff(i)));
  return r;
}

// Weight of a point by linear algebra: dim ker of the map y -> (first(y) - u second(y)).
unsigned weight_by_rank(const QPoly& f, unsigned h, bool swapped, std::uint32_t key) {
  const Field& F = f.field();
  const QPoly yh = QPoly::monomial(F, F.one(), h);
  const QPoly& first = swapped ? f : yh;
  const QPoly& second = swapped ? yh : f;
  if (key == F.order()) return kernel_dim(second);
  return kernel_dim(add(first, scaled(second, F.neg(Elt(key)))));
}

// Keys of the whole set, weights by rank; Q+1 candidate points scanned.
std::vector<std::pair<std::uint32_t, unsigned>> set_by_rank(const QPoly& f, unsigned h, bool swapped) {
  const Field& F = f.field();
  std::vector<std::pair<std::uint32_t, unsigned>> out;
  for (std::uint32_t k = 0; k <= F.order(); ++k) {
    const unsigned w = weight_by_rank(f, h, swapped, k);
    if (w) out.emplace_back(k, w);
  }
  return out;
}

std::vector<std::uint32_t> keys_of(const std::vector<ProjPoint>& pts, const Field& F) {
  std::vector<std::uint32_t> k;
  for (const auto& P : pts) k.push_back(P.key(F));
  return k;
}

}  // namespace

TEST(LinearSet, IdentityIsOnePointOfFullWeight) {
  const Field F = make_field(2, 1, 3);
  const LinearSet L = build(QPoly::identity(F), 0, false);
  ASSERT_EQ(L.size(), 1u);
  EXPECT_EQ(L.points()[0], ProjPoint::affine(F.one()));
  EXPECT_EQ(L.weight(ProjPoint::affine(F.one())), 3u);
  EXPECT_EQ(classify(L).kind, SetKind::Other);
}

TEST(LinearSet, TraceIsClubWithHeadAtInfinity) {
  const Field F = make_field(2, 1, 3);
  const LinearSet L = build(QPoly::trace(F), 0, false);
  EXPECT_EQ(L.size(), 5u);
  EXPECT_EQ(L.weight(ProjPoint::at_infinity()), 2u);
  const Classification c = classify(L);
  EXPECT_EQ(c.kind, SetKind::Club);
  ASSERT_TRUE(c.head);
  EXPECT_EQ(*c.head, ProjPoint::at_infinity());
  EXPECT_EQ(c.weight_histogram, (std::map<unsigned, std::size_t>{{1, 4}, {2, 1}}));
}

TEST(LinearSet, PseudoregulusIsScattered) {
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 3}, {2, 1, 4}, {2, 1, 7}, {3, 1, 3}, {3, 1, 4}, {2, 2, 3}, {5, 1, 3}, {3, 2, 2}}) {
    const Field F = make_field(p, m, n);
    const LinearSet L = build(QPoly::monomial(F, F.one(), 1), 0, false);
    EXPECT_EQ(L.size(), (F.order() - 1) / (F.q() - 1));
    EXPECT_EQ(classify(L).kind, SetKind::Scattered);
  }
}

TEST(LinearSet, WeightsMatchRankOracle) {
  XorShift64Star rng(101);
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 4}, {3, 1, 3}, {2, 2, 3}, {2, 1, 5}}) {
    const Field F = make_field(p, m, n);
    for (int rep = 0; rep < 10; ++rep) {
      QPoly f = random_qpoly(F, rng, unsigned(rng.below(n)));
      if (rep == 0) f = QPoly::trace(F);
      const unsigned h = unsigned(rng.below(n));
      const bool sw = rng.below(2);
      if (f.is_zero() && !sw) continue;
      const LinearSet L = build(f, h, sw);
      EXPECT_EQ(L.keyed(), set_by_rank(f, h, sw)) << "rep " << rep;
    }
  }
}

TEST(LinearSet, VectorCountBalance) {
  XorShift64Star rng(103);
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 6}, {3, 1, 4}, {2, 2, 4}, {5, 1, 3}}) {
    const Field F = make_field(p, m, n);
    for (int rep = 0; rep < 10; ++rep) {
      const QPoly f = random_qpoly(F, rng, unsigned(rng.below(n)));
      const LinearSet L = build(f, unsigned(rng.below(n)), rng.below(2));
      std::uint64_t total = 0;
      for (auto [k, w] : L.keyed()) total += ipow(F.q(), w) - 1;
      EXPECT_EQ(total, F.order() - 1);
      const bool all_one = L.weight_histogram().size() == 1 && L.weight_histogram().begin()->first == 1;
      EXPECT_EQ(all_one, L.size() == (F.order() - 1) / (F.q() - 1));
    }
  }
}

TEST(LinearSet, AdjointHasSamePoints) {
  XorShift64Star rng(107);
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 4}, {2, 1, 7}, {3, 1, 3}, {3, 1, 5}, {2, 2, 4}, {31, 1, 2}}) {
    const Field F = make_field(p, m, n);
    for (int rep = 0; rep < 20; ++rep) {
      const QPoly f = random_qpoly(F, rng, n - 1);
      EXPECT_EQ(build(f).keyed(), build(adjoint(f)).keyed());
    }
  }
}

TEST(LinearSet, SigmaSwapsCoordinates) {
  XorShift64Star rng(109);
  const Field F = make_field(3, 1, 3);
  for (int rep = 0; rep < 20; ++rep) {
    const QPoly f = random_qpoly(F, rng, 2);
    const unsigned h = unsigned(rng.below(3));
    const LinearSet A = build(f, h, false), B = build(f, h, true);
    ASSERT_EQ(A.size(), B.size());
    for (auto [k, w] : A.keyed()) {
      // <(u,1)> -> <(1,u)> = <(1/u,1)>, <(0,1)> <-> <(1,0)>
      std::uint32_t s;
      if (k == F.order()) s = 0;
      else if (k == 0) s = F.order();
      else s = F.inv(Elt(k)).v;
      EXPECT_EQ(B.weight(ProjPoint::from_key(F, s)), w);
    }
  }
}

TEST(LinearSet, IntersectBasics) {
  const Field F = make_field(2, 1, 4);
  const LinearSet T = build(QPoly::trace(F));
  EXPECT_EQ(keys_of(intersect(T, T), F), keys_of(T.points(), F));
  for (std::uint32_t a = 1; a < F.order(); ++a) {
    const LinearSet Ta = build(scaled(QPoly::trace(F), Elt(a)));
    const auto I = intersect(T, Ta);
    EXPECT_NE(std::find(I.begin(), I.end(), ProjPoint::at_infinity()), I.end());
  }
  EXPECT_THROW(intersect(T, build(QPoly::identity(make_field(3, 1, 2)))), context_mismatch);
}

TEST(LinearSet, ClubMeetsSwappedClubForTraceProducts) {
  // q = 2, n = 6: alpha = xy with Tr(x) = Tr(y) = 1 covers F_64^*, and each
  // such alpha gives a common point of L_Tr and sigma(L_{alpha Tr}).
  const Field F = make_field(2, 1, 6);
  const LinearSet T = build(QPoly::trace(F));
  std::set<std::uint32_t> products;
  for (std::uint32_t x = 1; x < 64; ++x)
    for (std::uint32_t y = 1; y < 64; ++y)
      if (F.rel_trace(Elt(x), 1) == F.one() && F.rel_trace(Elt(y), 1) == F.one())
        products.insert(F.mul(Elt(x), Elt(y)).v);
  for (std::uint32_t a : products) {
    const LinearSet Ta = build(scaled(QPoly::trace(F), Elt(a)), 0, true);
    EXPECT_GE(intersect(T, Ta).size(), 1u) << a;
  }
  EXPECT_EQ(products.size(), 63u);
}

TEST(LinearSet, WitnessExamples) {
  const Field F = make_field(2, 1, 4);
  const QPoly t = QPoly::trace(F);
  auto w = curve_affine_witness(t, t, 0, false);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (Witness{Elt(1), Elt(1)}));
  w = curve_affine_witness(QPoly::identity(F), QPoly::identity(F), 0, false);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (Witness{Elt(1), Elt(1)}));

  // g = x^q, f = a y^q at q = 3, n = 2: witness iff N(a) = 1
  const Field G = make_field(3, 1, 2);
  const QPoly g = QPoly::monomial(G, G.one(), 1);
  unsigned non_norms = 0;
  for (std::uint32_t a = 1; a < 9; ++a) {
    const bool norm_one = G.rel_norm(Elt(a), 1) == G.one();
    const auto wit = curve_affine_witness(g, QPoly::monomial(G, Elt(a), 1), 0, false);
    EXPECT_EQ(wit.has_value(), norm_one) << a;
    non_norms += !norm_one;
  }
  EXPECT_EQ(non_norms, 4u);  // kernel of N onto F_3^* has 4 elements
}

TEST(LinearSet, WitnessAgreesWithNaiveAndIntersect) {
  XorShift64Star rng(113);
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 4}, {3, 1, 2}, {2, 1, 3}}) {
    const Field F = make_field(p, m, n);
    for (int rep = 0; rep < 100; ++rep) {
      // sparse polynomials make empty intersections likely enough to matter
      QPoly g(F), f(F);
      g.set_coeff(unsigned(rng.below(n)), Elt(std::uint32_t(1 + rng.below(F.order() - 1))));
      if (rng.below(2)) g.set_coeff(0, Elt(std::uint32_t(rng.below(F.order()))));
      f.set_coeff(unsigned(rng.below(n)), Elt(std::uint32_t(1 + rng.below(F.order() - 1))));
      if (rng.below(3) == 0) f.set_coeff(unsigned(rng.below(n)), Elt(std::uint32_t(rng.below(F.order()))));
      const unsigned h = unsigned(rng.below(n));
      const bool sw = rng.below(2);
      const auto fast = curve_affine_witness(g, f, h, sw);
      EXPECT_EQ(fast, curve_affine_witness_naive(g, f, h, sw));
      const bool nonempty = !intersect(build(g), build(f, h, sw)).empty();
      EXPECT_EQ(fast.has_value(), nonempty);
      EXPECT_EQ(meets(g, f, h, sw), nonempty);
    }
  }
}

TEST(LinearSet, Errors) {
  const Field F = make_field(2, 1, 4);
  EXPECT_THROW(build(QPoly::identity(F), 4, false), precondition_violated);
  EXPECT_THROW(build(QPoly::identity(F), 0, false, 8), size_cap_exceeded);
  EXPECT_THROW(curve_affine_witness(QPoly::identity(F), QPoly::identity(make_field(3, 1, 2)), 0, false),
               context_mismatch);
}
