#ifndef LINSET_LINEAR_SET_HPP
#define LINSET_LINEAR_SET_HPP

// F_q-linear sets of rank n on PG(1, q^n).
//
// A point <(u, v)> is normalised by dividing by the second coordinate, so
// it is either <(u, 1)> or the point at infinity <(1, 0)>. Points are
// keyed by u in [0, q^n), with the key q^n reserved for <(1, 0)>.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "linset/caps.hpp"
#include "linset/errors.hpp"
#include "linset/field_tower.hpp"
#include "linset/qpoly.hpp"

namespace linset {

struct ProjPoint {
  Elt u;               // ratio X0/X1 when finite
  bool infinite = false;

  static ProjPoint at_infinity() { return {Elt(1), true}; }
  static ProjPoint affine(Elt u) { return {u, false}; }

  /// Normalises <(x0, x1)>; the pair must be nonzero.
  static ProjPoint from(const Field& F, Elt x0, Elt x1) {
    if (x1.is_zero()) return at_infinity();
    return affine(F.div(x0, x1));
  }

  std::uint32_t key(const Field& F) const noexcept { return infinite ? F.order() : u.v; }
  static ProjPoint from_key(const Field& F, std::uint32_t k) {
    return k == F.order() ? at_infinity() : affine(Elt(k));
  }
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

/// The defining shape: {<(y^{q^h}, f(y))>} or, swapped, {<(f(y), y^{q^h})>}.
struct LinearSetSource {
  QPoly f;
  unsigned h = 0;
  bool swapped = false;
};

class LinearSet {
 public:
  LinearSet() = default;
  LinearSet(Field F, std::vector<std::pair<std::uint32_t, unsigned>> keyed, LinearSetSource src)
      : F_(std::move(F)), pts_(std::move(keyed)), src_(std::move(src)) {
    std::sort(pts_.begin(), pts_.end());
  }

  const Field& field() const noexcept { return F_; }
  unsigned rank() const noexcept { return F_.n(); }
  std::size_t size() const noexcept { return pts_.size(); }
  const LinearSetSource& source() const noexcept { return src_; }

  /// (key, weight) pairs sorted by key.
  const std::vector<std::pair<std::uint32_t, unsigned>>& keyed() const noexcept { return pts_; }
  std::vector<ProjPoint> points() const {
    std::vector<ProjPoint> out;
    out.reserve(pts_.size());
    for (auto [k, w] : pts_) out.push_back(ProjPoint::from_key(F_, k));
    return out;
  }
  bool contains(const ProjPoint& P) const { return weight(P) > 0; }
  /// 0 when P is not in the set.
  unsigned weight(const ProjPoint& P) const {
    const std::uint32_t k = P.key(F_);
    auto it = std::lower_bound(pts_.begin(), pts_.end(), std::make_pair(k, 0u));
    return (it != pts_.end() && it->first == k) ? it->second : 0;
  }
  std::map<unsigned, std::size_t> weight_histogram() const {
    std::map<unsigned, std::size_t> h;
    for (auto [k, w] : pts_) ++h[w];
    return h;
  }

 private:
  Field F_;
  std::vector<std::pair<std::uint32_t, unsigned>> pts_;
  LinearSetSource src_;
};

namespace detail {

inline unsigned log_q_exact(std::uint64_t v, std::uint64_t q) {
  unsigned e = 0;
  while (v > 1) {
    if (v % q) throw error("fiber size is not a power of q");
    v /= q;
    ++e;
  }
  return e;
}

/// Key of the point defined by y in the given shape.
inline std::uint32_t shape_key(const Field& F, const QPoly& f, unsigned h, bool swapped, Elt y) {
  const Elt a = F.frobenius(y, h);
  const Elt b = f.evaluate(y);
  const ProjPoint P = swapped ? ProjPoint::from(F, b, a) : ProjPoint::from(F, a, b);
  return P.key(F);
}

inline void require_enum_cap(const Field& F, std::uint64_t cap) {
  if (F.order() > cap) throw size_cap_exceeded("linear set enumeration q^n", F.order(), cap);
}

}  // namespace detail

/// Enumerates y in F_{q^n}^*; weight(P) = log_q(1 + #{y : point(y) = P}).
inline LinearSet build(const QPoly& f, unsigned h, bool swapped,
                       std::uint64_t cap = cap_or_env(kDefaultEnumCap)) {
  const Field& F = f.field();
  if (h >= F.n()) throw precondition_violated("h must be below n");
  detail::require_enum_cap(F, cap);
  std::vector<std::uint32_t> fiber(std::size_t(F.order()) + 1, 0);
  for (std::uint32_t y = 1; y < F.order(); ++y) ++fiber[detail::shape_key(F, f, h, swapped, Elt(y))];
  std::vector<std::pair<std::uint32_t, unsigned>> keyed;
  for (std::uint32_t k = 0; k < fiber.size(); ++k)
    if (fiber[k]) keyed.emplace_back(k, detail::log_q_exact(std::uint64_t(fiber[k]) + 1, F.q()));
  return LinearSet(F, std::move(keyed), LinearSetSource{f, h, swapped});
}

/// L_g = {<(x, g(x))>}.
inline LinearSet build(const QPoly& g) { return build(g, 0, false); }

enum class SetKind { Scattered, Club, Other };

struct Classification {
  SetKind kind = SetKind::Other;
  std::optional<ProjPoint> head;
  std::map<unsigned, std::size_t> weight_histogram;
};

inline const char* to_string(SetKind k) {
  switch (k) {
    case SetKind::Scattered: return "scattered";
    case SetKind::Club: return "club";
    default: return "other";
  }
}

inline Classification classify(const LinearSet& L) {
  Classification c;
  c.weight_histogram = L.weight_histogram();
  const unsigned r = L.rank();
  const auto& H = c.weight_histogram;
  if (H.size() == 1 && H.begin()->first == 1) {
    c.kind = SetKind::Scattered;
  } else if (r >= 3 && H.count(r - 1) && H.at(r - 1) == 1 &&
             H.size() == 2 && H.count(1)) {
    c.kind = SetKind::Club;
    for (auto [k, w] : L.keyed())
      if (w == r - 1) c.head = ProjPoint::from_key(L.field(), k);
  } else {
    c.kind = SetKind::Other;
  }
  return c;
}

inline std::vector<ProjPoint> intersect(const LinearSet& A, const LinearSet& B) {
  require_same_field(A.field(), B.field());
  std::vector<ProjPoint> out;
  auto i = A.keyed().begin(), j = B.keyed().begin();
  while (i != A.keyed().end() && j != B.keyed().end()) {
    if (i->first < j->first) ++i;
    else if (j->first < i->first) ++j;
    else {
      out.push_back(ProjPoint::from_key(A.field(), i->first));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Whether L_g meets the set of shape (f, h, swapped), with early exit.
/// Cheaper than building both sets.
inline bool meets(const QPoly& g, const QPoly& f, unsigned h, bool swapped,
                  std::uint64_t cap = cap_or_env(kDefaultEnumCap)) {
  const Field& F = g.field();
  require_same_field(F, f.field());
  detail::require_enum_cap(F, cap);
  std::vector<bool> in_g(std::size_t(F.order()) + 1, false);
  for (std::uint32_t x = 1; x < F.order(); ++x)
    in_g[ProjPoint::from(F, Elt(x), g.evaluate(Elt(x))).key(F)] = true;
  for (std::uint32_t y = 1; y < F.order(); ++y)
    if (in_g[detail::shape_key(F, f, h, swapped, Elt(y))]) return true;
  return false;
}

struct Witness {
  Elt x, y;
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Least (x, y) in element order with x, y != 0 and
/// x f(y) = y^{q^h} g(x)  (unswapped) or  x y^{q^h} = f(y) g(x)  (swapped).
/// In the swapped shape, y with f(y) = 0 is skipped.
inline std::optional<Witness> curve_affine_witness(const QPoly& g, const QPoly& f, unsigned h,
                                                   bool swapped,
                                                   std::uint64_t cap = cap_or_env(kDefaultEnumCap)) {
  const Field& F = g.field();
  require_same_field(F, f.field());
  if (h >= F.n()) throw precondition_violated("h must be below n");
  detail::require_enum_cap(F, cap);
  // Both equations say <(x, g(x))> equals the point of y; map key -> least y.
  constexpr std::uint32_t none = 0;
  std::vector<std::uint32_t> least_y(std::size_t(F.order()) + 1, none);
  for (std::uint32_t y = F.order() - 1; y >= 1; --y) {
    if (swapped && f.evaluate(Elt(y)).is_zero()) continue;
    least_y[detail::shape_key(F, f, h, swapped, Elt(y))] = y;
  }
  for (std::uint32_t x = 1; x < F.order(); ++x) {
    const std::uint32_t k = ProjPoint::from(F, Elt(x), g.evaluate(Elt(x))).key(F);
    if (least_y[k] != none) return Witness{Elt(x), Elt(least_y[k])};
  }
  return std::nullopt;
}

/// The literal double loop over (x, y); reference for tests.
inline std::optional<Witness> curve_affine_witness_naive(const QPoly& g, const QPoly& f, unsigned h,
                                                         bool swapped) {
  const Field& F = g.field();
  for (std::uint32_t x = 1; x < F.order(); ++x) {
    const Elt gx = g.evaluate(Elt(x));
    for (std::uint32_t y = 1; y < F.order(); ++y) {
      const Elt fy = f.evaluate(Elt(y));
      const Elt yh = F.frobenius(Elt(y), h);
      if (swapped) {
        if (fy.is_zero()) continue;
        if (F.mul(Elt(x), yh) == F.mul(fy, gx)) return Witness{Elt(x), Elt(y)};
      } else if (F.mul(Elt(x), fy) == F.mul(yh, gx)) {
        return Witness{Elt(x), Elt(y)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace linset

#endif  // LINSET_LINEAR_SET_HPP
