#ifndef LINSET_QPOLY_HPP
#define LINSET_QPOLY_HPP

// Reduced q-polynomials sum_{i<n} a_i x^{q^i} over F_{q^n}, i.e. the
// quotient of the linearized polynomials by x^{q^n} - x.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "linset/errors.hpp"
#include "linset/field_tower.hpp"

namespace linset {

struct QPolyIndices {
  unsigned d = 0;     // q-degree
  unsigned ell = 0;   // lowest index with a_i != 0
  unsigned ell2 = 0;  // next index above ell; equals d for monomials
  std::optional<unsigned> ell3;  // highest index below d; absent for monomials
  bool is_monomial = false;
};

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(const Field& F) : F_(F), a_(F.n(), Elt(0)) {}
  QPoly(const Field& F, std::vector<Elt> coeffs) : F_(F), a_(std::move(coeffs)) {
    if (a_.size() != F.n()) throw precondition_violated("q-polynomial needs exactly n coefficients");
    for (Elt c : a_)
      if (c.v >= F.order()) throw precondition_violated("coefficient out of range");
  }

  static QPoly zero(const Field& F) { return QPoly(F); }
  static QPoly identity(const Field& F) { return monomial(F, F.one(), 0); }
  /// c x^{q^i}, i taken mod n.
  static QPoly monomial(const Field& F, Elt c, unsigned i) {
    QPoly f(F);
    f.a_[i % F.n()] = c;
    return f;
  }
  /// Tr_{q^n/q}: all coefficients 1.
  static QPoly trace(const Field& F) { return QPoly(F, std::vector<Elt>(F.n(), F.one())); }

  const Field& field() const noexcept { return F_; }
  unsigned n() const noexcept { return unsigned(a_.size()); }
  const std::vector<Elt>& coeffs() const noexcept { return a_; }
  Elt coeff(unsigned i) const noexcept { return a_[i]; }
  void set_coeff(unsigned i, Elt c) { a_[i % n()] = c; }

  bool is_zero() const noexcept {
    for (Elt c : a_)
      if (!c.is_zero()) return false;
    return true;
  }
  std::size_t support_size() const noexcept {
    std::size_t s = 0;
    for (Elt c : a_) s += !c.is_zero();
    return s;
  }

  Elt operator()(Elt x) const noexcept { return evaluate(x); }
  Elt evaluate(Elt x) const noexcept {
    if (x.is_zero()) return x;
    Elt s(0);
    for (unsigned i = 0; i < n(); ++i)
      if (!a_[i].is_zero()) s = F_.add(s, F_.mul(a_[i], F_.frobenius(x, i)));
    return s;
  }

  friend bool operator==(const QPoly& f, const QPoly& g) { return f.F_ == g.F_ && f.a_ == g.a_; }

 private:
  Field F_;
  std::vector<Elt> a_;
};

inline void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw context_mismatch();
}

/// f(x) with an explicit context check.
inline Elt evaluate(const QPoly& f, const Field& F, Elt x) {
  require_same_field(f.field(), F);
  if (x.v >= F.order()) throw context_mismatch();
  return f.evaluate(x);
}

inline QPoly add(const QPoly& f, const QPoly& g) {
  require_same_field(f.field(), g.field());
  const Field& F = f.field();
  QPoly r(F);
  for (unsigned i = 0; i < F.n(); ++i) r.set_coeff(i, F.add(f.coeff(i), g.coeff(i)));
  return r;
}

/// Reduced representative of f o g.
inline QPoly compose(const QPoly& f, const QPoly& g) {
  require_same_field(f.field(), g.field());
  const Field& F = f.field();
  const unsigned n = F.n();
  QPoly r(F);
  // a_i (sum_j b_j x^{q^j})^{q^i} = sum_j a_i b_j^{q^i} x^{q^{i+j}}
  for (unsigned i = 0; i < n; ++i) {
    if (f.coeff(i).is_zero()) continue;
    for (unsigned j = 0; j < n; ++j) {
      if (g.coeff(j).is_zero()) continue;
      const unsigned k = (i + j) % n;
      r.set_coeff(k, F.add(r.coeff(k), F.mul(f.coeff(i), F.frobenius(g.coeff(j), i))));
    }
  }
  return r;
}

/// f^(x) = sum a_i^{q^{n-i}} x^{q^{n-i}}.
inline QPoly adjoint(const QPoly& f) {
  const Field& F = f.field();
  const unsigned n = F.n();
  QPoly r(F);
  for (unsigned i = 0; i < n; ++i) {
    const unsigned k = (n - i) % n;
    r.set_coeff(k, F.frobenius(f.coeff(i), k));
  }
  return r;
}

/// Matrix of f over F_p in the power basis.
inline FpMatrix fp_matrix(const QPoly& f) {
  return fp_matrix_of(f.field(), [&](Elt x) { return f.evaluate(x); });
}

/// dim_{F_q} ker f. The kernel is an F_q-space, so its F_p-dimension
/// (from the rank over F_p) is m times this value.
inline unsigned kernel_dim(const QPoly& f) {
  const Field& F = f.field();
  const unsigned N = F.degree();
  return (N - fp_matrix(f).rank()) / F.m();
}

inline QPolyIndices indices(const QPoly& f) {
  if (f.is_zero()) throw zero_polynomial();
  QPolyIndices ix;
  std::vector<unsigned> supp;
  for (unsigned i = 0; i < f.n(); ++i)
    if (!f.coeff(i).is_zero()) supp.push_back(i);
  ix.ell = supp.front();
  ix.d = supp.back();
  ix.is_monomial = supp.size() == 1;
  ix.ell2 = ix.is_monomial ? ix.d : supp[1];
  if (!ix.is_monomial) ix.ell3 = supp[supp.size() - 2];
  return ix;
}

enum class ShiftMode { bar, tilde };

/// bar: sum a_i y^{q^{i-h}} (needs ell >= h). tilde: sum a_i y^{q^{i-ell}}.
inline QPoly shift_form(const QPoly& f, unsigned h, ShiftMode mode) {
  const Field& F = f.field();
  if (f.is_zero()) {
    if (mode == ShiftMode::bar) return f;
    throw zero_polynomial();
  }
  const QPolyIndices ix = indices(f);
  unsigned s = 0;
  if (mode == ShiftMode::bar) {
    if (ix.ell < h) throw precondition_violated("bar form needs ell >= h");
    s = h;
  } else {
    s = ix.ell;
  }
  QPoly r(F);
  for (unsigned i = s; i < f.n(); ++i) r.set_coeff(i - s, f.coeff(i));
  return r;
}

/// Rewrites the shape (y^{q^h}, f(y)) as (y^{q^{h'}}, fbb(y)) through the
/// substitution y -> y^{q^{n-i}} applied termwise:
/// fbb(y) = sum a_i^{q^{n+h-i}} y^{q^{n-i}}, h' = (n - h) mod n.
inline std::pair<QPoly, unsigned> adjoint_form(const QPoly& f, unsigned h) {
  const Field& F = f.field();
  const unsigned n = F.n();
  if (h >= n) throw precondition_violated("h must be below n");
  QPoly r(F);
  for (unsigned i = 0; i < n; ++i) {
    if (f.coeff(i).is_zero()) continue;
    const unsigned k = (n - i) % n;
    r.set_coeff(k, F.frobenius(f.coeff(i), (n + h - i) % n));
  }
  return {r, (n - h) % n};
}

}  // namespace linset

#endif  // LINSET_QPOLY_HPP
