#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "linset/qpoly.hpp"
#include "linset/rng.hpp"

using namespace linset;

namespace {

QPoly random_qpoly(const Field& F, XorShift64Star& rng) {
  std::vector<Elt> a(F.n());
  for (auto& c : a) c = Elt(std::uint32_t(rng.below(F.order())));
  return QPoly(F, a);
}

// x^{q^i} by i*m plain p-th powers, no tables involved beyond mul.
Elt qpow_naive(const Field& F, Elt x, unsigned i) {
  for (unsigned s = 0; s < i * F.m(); ++s) {
    Elt y = F.one();
    for (unsigned t = 0; t < F.p(); ++t) y = F.mul(y, x);
    x = y;
  }
  return x;
}

Elt eval_naive(const QPoly& f, Elt x) {
  const Field& F = f.field();
  Elt s(0);
  for (unsigned i = 0; i < F.n(); ++i) s = F.add(s, F.mul(f.coeff(i), qpow_naive(F, x, i)));
  return s;
}

// Projective points {<(y^{q^h}, f(y))>} as ratios first/second; Q stands for (1,0).
std::set<std::uint32_t> shape_points(const QPoly& f, unsigned h) {
  const Field& F = f.field();
  std::set<std::uint32_t> pts;
  for (std::uint32_t y = 1; y < F.order(); ++y) {
    const Elt a = qpow_naive(F, Elt(y), h), b = eval_naive(f, Elt(y));
    pts.insert(b.is_zero() ? F.order() : F.div(a, b).v);
  }
  return pts;
}

}  // namespace

TEST(QPoly, IdentityEvaluatesToX) {
  const Field F = make_field(2, 1, 4);
  const QPoly f = QPoly::identity(F);
  for (std::uint32_t x = 0; x < F.order(); ++x) EXPECT_EQ(f(Elt(x)), Elt(x));
}

TEST(QPoly, TraceEvaluationMatchesRelTrace) {
  const Field F = make_field(2, 1, 4);
  const QPoly t = QPoly::trace(F);
  for (std::uint32_t x = 0; x < F.order(); ++x) EXPECT_EQ(t(Elt(x)), F.rel_trace(Elt(x), 1));
}

TEST(QPoly, EvaluationMatchesNaivePowers) {
  XorShift64Star rng(11);
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 5}, {3, 1, 3}, {2, 2, 3}, {5, 1, 2}}) {
    const Field F = make_field(p, m, n);
    for (int rep = 0; rep < 5; ++rep) {
      const QPoly f = random_qpoly(F, rng);
      for (std::uint32_t x = 0; x < F.order(); ++x) EXPECT_EQ(f(Elt(x)), eval_naive(f, Elt(x)));
    }
  }
}

TEST(QPoly, FqLinearity) {
  XorShift64Star rng(5);
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 4}, {3, 1, 3}, {2, 2, 2}, {2, 2, 4}}) {
    const Field F = make_field(p, m, n);
    ASSERT_LE(F.order(), 256u);
    std::vector<Elt> Fq;
    for (std::uint32_t v = 0; v < F.order(); ++v)
      if (F.in_subfield(Elt(v), 1)) Fq.push_back(Elt(v));
    ASSERT_EQ(Fq.size(), F.q());
    const QPoly f = random_qpoly(F, rng);
    for (Elt lam : Fq)
      for (std::uint32_t x = 0; x < F.order(); ++x)
        for (std::uint32_t y = 0; y < F.order(); y += 3)
          EXPECT_EQ(f(F.add(F.mul(lam, Elt(x)), Elt(y))), F.add(F.mul(lam, f(Elt(x))), f(Elt(y))));
  }
}

TEST(QPoly, ContextMismatch) {
  const Field F = make_field(2, 1, 4), G = make_field(3, 1, 2);
  EXPECT_THROW(evaluate(QPoly::identity(F), G, Elt(1)), context_mismatch);
  EXPECT_THROW(compose(QPoly::identity(F), QPoly::identity(G)), context_mismatch);
  EXPECT_THROW(QPoly(F, std::vector<Elt>(3, Elt(0))), precondition_violated);
}

TEST(QPoly, AdjointExamples) {
  const Field F = make_field(2, 1, 5);
  const Elt a(7);
  EXPECT_EQ(adjoint(QPoly::monomial(F, a, 0)), QPoly::monomial(F, a, 0));
  for (unsigned i = 1; i < 5; ++i)
    EXPECT_EQ(adjoint(QPoly::monomial(F, a, i)), QPoly::monomial(F, F.frobenius(a, 5 - i), 5 - i));
  XorShift64Star rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const QPoly f = random_qpoly(F, rng);
    EXPECT_EQ(adjoint(adjoint(f)), f);
  }
}

TEST(QPoly, AdjointDuality) {
  XorShift64Star rng(17);
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 3}, {2, 1, 4}, {3, 1, 2}, {3, 1, 3}, {2, 2, 2}, {2, 1, 8}, {2, 2, 4}, {5, 1, 2}}) {
    const Field F = make_field(p, m, n);
    ASSERT_LE(F.order(), 256u);
    const QPoly f = random_qpoly(F, rng), fh = adjoint(f);
    for (std::uint32_t x = 0; x < F.order(); ++x)
      for (std::uint32_t y = 0; y < F.order(); ++y)
        ASSERT_EQ(F.rel_trace(F.mul(Elt(x), f(Elt(y))), 1), F.rel_trace(F.mul(Elt(y), fh(Elt(x))), 1));
  }
}

TEST(QPoly, ComposeBasics) {
  const Field F = make_field(2, 1, 3);
  XorShift64Star rng(23);
  const QPoly id = QPoly::identity(F);
  const QPoly xq = QPoly::monomial(F, F.one(), 1);
  EXPECT_EQ(compose(xq, xq), QPoly::monomial(F, F.one(), 2));
  EXPECT_EQ(compose(xq, compose(xq, xq)), id);  // x^{q^3} = x
  for (int rep = 0; rep < 50; ++rep) {
    const QPoly f = random_qpoly(F, rng), g = random_qpoly(F, rng);
    EXPECT_EQ(compose(f, id), f);
    EXPECT_EQ(compose(id, f), f);
    const QPoly fg = compose(f, g);
    for (std::uint32_t x = 0; x < 8; ++x) EXPECT_EQ(fg(Elt(x)), f(g(Elt(x))));
  }
}

TEST(QPoly, ComposeAssociative) {
  const Field F = make_field(3, 1, 3);
  XorShift64Star rng(29);
  for (int rep = 0; rep < 20; ++rep) {
    const QPoly f = random_qpoly(F, rng), g = random_qpoly(F, rng), h = random_qpoly(F, rng);
    const QPoly l = compose(compose(f, g), h), r = compose(f, compose(g, h));
    EXPECT_EQ(l, r);
    for (std::uint32_t x = 0; x < F.order(); ++x) EXPECT_EQ(l(Elt(x)), f(g(h(Elt(x)))));
  }
}

TEST(QPoly, KernelDimExamples) {
  const Field F = make_field(2, 1, 3);
  EXPECT_EQ(kernel_dim(QPoly::identity(F)), 0u);
  EXPECT_EQ(kernel_dim(QPoly::trace(F)), 2u);
  EXPECT_EQ(kernel_dim(QPoly::zero(F)), 3u);
}

TEST(QPoly, KernelDimMatchesEnumeration) {
  XorShift64Star rng(31);
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 4}, {2, 1, 9}, {3, 1, 4}, {2, 2, 4}, {2, 3, 3}, {3, 2, 2}, {7, 1, 3}}) {
    const Field F = make_field(p, m, n);
    ASSERT_LE(F.order(), 512u);
    for (int rep = 0; rep < 20; ++rep) {
      // sparse polynomials have interesting kernels
      QPoly f(F);
      for (unsigned i = 0; i < n; ++i)
        if (rng.below(3) == 0) f.set_coeff(i, Elt(std::uint32_t(rng.below(F.order()))));
      if (rep == 0) f = QPoly::trace(F);
      if (rep == 1) f = add(QPoly::monomial(F, F.one(), 1), QPoly::monomial(F, F.minus_one(), 0));
      std::uint64_t zeros = 0;
      for (std::uint32_t x = 0; x < F.order(); ++x) zeros += f(Elt(x)).is_zero();
      const unsigned k = kernel_dim(f);
      EXPECT_EQ(ipow(F.q(), k), zeros);
    }
  }
}

TEST(QPoly, IndicesExamples) {
  const Field F = make_field(2, 1, 6);
  const Elt a(5);
  auto ix = indices(QPoly::monomial(F, a, 2));
  EXPECT_EQ(ix.d, 2u);
  EXPECT_EQ(ix.ell, 2u);
  EXPECT_EQ(ix.ell2, 2u);
  EXPECT_FALSE(ix.ell3.has_value());
  EXPECT_TRUE(ix.is_monomial);

  ix = indices(add(QPoly::monomial(F, F.one(), 3), QPoly::monomial(F, F.one(), 1)));
  EXPECT_EQ(ix.d, 3u);
  EXPECT_EQ(ix.ell, 1u);
  EXPECT_EQ(ix.ell2, 3u);
  EXPECT_EQ(ix.ell3, 1u);
  EXPECT_FALSE(ix.is_monomial);

  QPoly f(F);
  f.set_coeff(4, F.one());
  f.set_coeff(2, F.one());
  f.set_coeff(0, F.one());
  ix = indices(f);
  EXPECT_EQ(ix.d, 4u);
  EXPECT_EQ(ix.ell, 0u);
  EXPECT_EQ(ix.ell2, 2u);
  EXPECT_EQ(ix.ell3, 2u);

  EXPECT_THROW(indices(QPoly::zero(F)), zero_polynomial);
}

TEST(QPoly, ShiftForms) {
  const Field F = make_field(2, 1, 5);
  const Elt a1(3), a2(6), a3(9);
  QPoly f(F);
  f.set_coeff(2, a2);
  f.set_coeff(1, a1);
  EXPECT_EQ(shift_form(f, 0, ShiftMode::bar), f);
  QPoly want(F);
  want.set_coeff(1, a2);
  want.set_coeff(0, a1);
  EXPECT_EQ(shift_form(f, 1, ShiftMode::bar), want);
  EXPECT_THROW(shift_form(f, 2, ShiftMode::bar), precondition_violated);

  QPoly g(F);
  g.set_coeff(3, a3);
  g.set_coeff(2, a2);
  QPoly gt(F);
  gt.set_coeff(1, a3);
  gt.set_coeff(0, a2);
  EXPECT_EQ(shift_form(g, 4, ShiftMode::tilde), gt);
}

TEST(QPoly, BarFormPreservesPointSet) {
  // (y^{q^h}, f(y)) with ell >= h equals (z, fbar(z)) after z = y^{q^h}
  const Field F = make_field(2, 1, 5);
  XorShift64Star rng(37);
  for (int rep = 0; rep < 30; ++rep) {
    QPoly f(F);
    for (unsigned i = 2; i < 5; ++i) f.set_coeff(i, Elt(std::uint32_t(rng.below(F.order()))));
    if (f.is_zero()) continue;
    const unsigned h = unsigned(rng.below(indices(f).ell + 1));
    EXPECT_EQ(shape_points(f, h), shape_points(shift_form(f, h, ShiftMode::bar), 0));
  }
}

TEST(QPoly, AdjointFormMonomial) {
  const Field F = make_field(3, 1, 4);
  const Elt a(10);
  for (unsigned d = 1; d < 4; ++d) {
    auto [g, h2] = adjoint_form(QPoly::monomial(F, a, d), 0);
    EXPECT_EQ(h2, 0u);
    EXPECT_EQ(g, QPoly::monomial(F, F.frobenius(a, 4 - d), 4 - d));
  }
}

TEST(QPoly, AdjointFormPreservesPointSet) {
  XorShift64Star rng(41);
  for (auto [p, m, n] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 1, 4}, {3, 1, 3}, {2, 1, 5}, {2, 2, 3}}) {
    const Field F = make_field(p, m, n);
    for (int rep = 0; rep < 12; ++rep) {
      const QPoly f = random_qpoly(F, rng);
      for (unsigned h = 0; h < n; ++h) {
        auto [g, h2] = adjoint_form(f, h);
        EXPECT_EQ(h2, h ? n - h : 0u);
        const auto pts = shape_points(f, h);
        EXPECT_EQ(pts, shape_points(g, h2)) << "h=" << h;
        auto [g2, h3] = adjoint_form(g, h2);
        EXPECT_EQ(h3, h);
        EXPECT_EQ(pts, shape_points(g2, h3));
      }
    }
  }
}
