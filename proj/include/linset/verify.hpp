#ifndef LINSET_VERIFY_HPP
#define LINSET_VERIFY_HPP

// Acceptance sweeps. Every claim made by the criteria, genus and semifield
// modules is checked against an enumeration oracle written here from
// scratch (point keys are recomputed directly from the defining maps).
//
// Reports are JSON with insertion-ordered keys and no timing data, so a
// fixed Config produces identical bytes for any number of jobs.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "linset/caps.hpp"
#include "linset/criteria.hpp"
#include "linset/curve_bounds.hpp"
#include "linset/field_tower.hpp"
#include "linset/linear_set.hpp"
#include "linset/qpoly.hpp"
#include "linset/rng.hpp"
#include "linset/semifield.hpp"

namespace linset::verify {

using json = nlohmann::ordered_json;

struct Config {
  std::uint64_t seed = 1;
  std::uint32_t max_field = 1024;
  std::uint32_t sigma_max_field = 4096;  // club/sigma bound and its curve
  std::uint32_t club_max_field = 256;    // club intersections, Cor-style semifield sweep
  unsigned random_tuples = 10000;        // per field, where not exhaustive
  unsigned adjoint_samples = 1000;       // per field
  unsigned pseudoregulus_samples = 2000; // per field, where not exhaustive
  unsigned genus_samples = 2000;         // per field, where index patterns are not exhaustive
  unsigned semifield_samples = 2000;     // per field
  std::uint64_t exhaustive_budget = std::uint64_t(1) << 30;
  std::uint64_t max_pairs = kDefaultPairCap;
  unsigned jobs = 1;

  /// Defaults scaled to a field-size limit: sigma sweeps go four times
  /// further, club sweeps stop four times earlier.
  static Config for_max_field(std::uint32_t max_field) {
    Config c;
    c.max_field = max_field;
    c.sigma_max_field = std::min<std::uint32_t>(4096, 4 * max_field);
    c.club_max_field = std::max<std::uint32_t>(16, max_field / 4);
    return c;
  }

  json to_json() const {
    return json{{"seed", seed},
                {"max_field", max_field},
                {"sigma_max_field", sigma_max_field},
                {"club_max_field", club_max_field},
                {"random_tuples", random_tuples},
                {"adjoint_samples", adjoint_samples},
                {"pseudoregulus_samples", pseudoregulus_samples},
                {"genus_samples", genus_samples},
                {"semifield_samples", semifield_samples},
                {"exhaustive_budget", exhaustive_budget},
                {"max_pairs", max_pairs},
                {"rng", "xorshift64*"}};
  }
};

inline constexpr std::size_t kMaxExamples = 5;

/// checked: claims examined; asserted: claims that something exists;
/// violations: claims the oracle refutes.
struct Tally {
  std::uint64_t checked = 0, asserted = 0, oracle_checks = 0, violations = 0;
  json examples = json::array();

  void fail(json ex) {
    ++violations;
    if (examples.size() < kMaxExamples) examples.push_back(std::move(ex));
  }
  void merge(const Tally& o) {
    checked += o.checked;
    asserted += o.asserted;
    oracle_checks += o.oracle_checks;
    violations += o.violations;
    for (const auto& e : o.examples)
      if (examples.size() < kMaxExamples) examples.push_back(e);
  }
  json to_json() const {
    return json{{"checked", checked},
                {"asserted", asserted},
                {"oracle_checks", oracle_checks},
                {"violations", violations},
                {"examples", examples}};
  }
};

using TallyMap = std::map<std::string, Tally>;

inline void merge_into(TallyMap& into, const TallyMap& from) {
  for (const auto& [k, t] : from) into[k].merge(t);
}

inline std::uint64_t total_violations(const TallyMap& m) {
  std::uint64_t v = 0;
  for (const auto& [k, t] : m) v += t.violations;
  return v;
}

inline json to_json(const TallyMap& m) {
  json j = json::object();
  for (const auto& [k, t] : m) j[k] = t.to_json();
  return j;
}

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  json detail = json::object();

  json to_json() const {
    return json{{"criterion", index}, {"name", name}, {"pass", pass}, {"detail", detail}};
  }
};

// ---------------------------------------------------------------------------
// Plumbing

/// fn(0..count-1) on up to `jobs` threads; results in index order.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t count, unsigned jobs, Fn fn) {
  std::vector<R> out(count);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errs(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::min<std::size_t>(jobs, count); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

using Task = std::function<TallyMap()>;

inline TallyMap run_tasks(const std::vector<Task>& tasks, unsigned jobs) {
  const auto parts = parallel_map<TallyMap>(tasks.size(), jobs, [&](std::size_t i) { return tasks[i](); });
  TallyMap all;
  for (const auto& p : parts) merge_into(all, p);
  return all;
}

/// Independent stream per (seed, tag, index).
inline XorShift64Star stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  return XorShift64Star(seed * 0x9E3779B97F4A7C15ull + tag * 0xD1B54A32D192ED03ull + index);
}

inline std::uint64_t field_tag(const Field& F) { return std::uint64_t(F.order()) * 64 + F.n(); }

/// Every F_{q^n}, n >= min_n, with q^n <= max_order, by (q^n, q).
inline std::vector<Field> fields_up_to(std::uint32_t max_order, unsigned min_n = 2) {
  std::vector<Field> out;
  for (std::uint32_t p = 2; p <= max_order; ++p) {
    if (!is_prime(p)) continue;
    for (unsigned m = 1; ipow(p, m) <= max_order; ++m)
      for (unsigned n = min_n; ipow(p, m * n) <= max_order; ++n) out.push_back(make_field(p, m, n));
  }
  std::sort(out.begin(), out.end(), [](const Field& a, const Field& b) {
    return std::make_pair(a.order(), a.q()) < std::make_pair(b.order(), b.q());
  });
  return out;
}

inline json field_json(const Field& F) { return json{{"q", F.q()}, {"n", F.n()}}; }

inline json poly_json(const QPoly& f) {
  json a = json::array();
  for (Elt c : f.coeffs()) a.push_back(c.v);
  return a;
}

inline std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> d;
  for (unsigned r = 1; r <= n; ++r)
    if (n % r == 0) d.push_back(r);
  return d;
}

inline Elt random_elt(const Field& F, XorShift64Star& rng) { return Elt(std::uint32_t(rng.below(F.order()))); }
inline Elt random_unit(const Field& F, XorShift64Star& rng) {
  return Elt(std::uint32_t(1 + rng.below(F.order() - 1)));
}

/// A random element of norm 1 down to F_{q^e}: z^{q^e - 1}.
inline Elt random_norm_one(const Field& F, XorShift64Star& rng, unsigned e) {
  return F.pow(random_unit(F, rng), ipow(F.q(), e) - 1);
}

/// alpha with x / alpha of norm 1 half of the time, uniform otherwise.
inline Elt biased_alpha(const Field& F, XorShift64Star& rng, Elt x, unsigned e) {
  if (!x.is_zero() && rng.below(2)) return F.div(x, random_norm_one(F, rng, e));
  return random_unit(F, rng);
}

inline QPoly poly_from_index(const Field& F, std::uint64_t t) {
  QPoly f(F);
  for (unsigned i = 0; i < F.n(); ++i, t /= F.order()) f.set_coeff(i, Elt(std::uint32_t(t % F.order())));
  return f;
}

/// Sparse, low-degree polynomials most of the time; these are the ones the
/// bounds speak about.
inline QPoly random_low_degree(const Field& F, XorShift64Star& rng) {
  const unsigned n = F.n();
  QPoly f(F);
  if (rng.below(4) == 0) {
    while (f.is_zero())
      for (unsigned i = 0; i < n; ++i) f.set_coeff(i, random_elt(F, rng));
    return f;
  }
  const unsigned top = 1 + unsigned(rng.below(std::min(n, 5u)));
  const unsigned terms = 1 + unsigned(rng.below(std::min(top, 3u)));
  for (unsigned t = 0; t < terms; ++t) f.set_coeff(unsigned(rng.below(top)), random_unit(F, rng));
  f.set_coeff(top - 1, random_unit(F, rng));
  return f;
}

/// beta drawn from {0, a_h, 1/a_h, a_d, random}, so the coincidences the
/// criteria branch on occur often.
inline Elt special_beta(const QPoly& f, unsigned h, XorShift64Star& rng) {
  const Field& F = f.field();
  const Elt ah = f.coeff(h), ad = f.coeff(indices(f).d);
  switch (rng.below(5)) {
    case 0: return Elt(0);
    case 1: return ah;
    case 2: return ah.is_zero() ? random_elt(F, rng) : F.inv(ah);
    case 3: return ad;
    default: return random_elt(F, rng);
  }
}

// ---------------------------------------------------------------------------
// Enumeration oracle

/// Subset of the keys 0..q^n of PG(1, q^n); q^n is the point <(1, 0)>.
class KeySet {
 public:
  KeySet() = default;
  explicit KeySet(std::uint32_t order) : words_((std::size_t(order) + 64) / 64, 0) {}

  void set(std::uint32_t k) { words_[k >> 6] |= std::uint64_t(1) << (k & 63); }
  bool test(std::uint32_t k) const { return (words_[k >> 6] >> (k & 63)) & 1; }
  bool intersects(const KeySet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::size_t(__builtin_popcountll(w));
    return c;
  }
  friend bool operator==(const KeySet&, const KeySet&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

/// Key of <(a, b)>: a/b, or q^n when b = 0.
inline std::uint32_t key_of(const Field& F, Elt a, Elt b) {
  return b.is_zero() ? F.order() : F.div(a, b).v;
}

/// L_g for g = alpha x^{q^k} + beta x.
inline KeySet g_keys(const Field& F, unsigned k, Elt alpha, Elt beta) {
  KeySet s(F.order());
  for (std::uint32_t x = 1; x < F.order(); ++x) {
    const Elt X(x);
    s.set(key_of(F, X, F.add(F.mul(alpha, F.frobenius(X, k)), F.mul(beta, X))));
  }
  return s;
}

/// {<(y^{q^h}, f(y))>} or {<(f(y), y^{q^h})>}.
inline KeySet shape_keys(const QPoly& f, unsigned h, bool swapped) {
  const Field& F = f.field();
  KeySet s(F.order());
  for (std::uint32_t y = 1; y < F.order(); ++y) {
    const Elt a = F.frobenius(Elt(y), h), b = f.evaluate(Elt(y));
    s.set(swapped ? key_of(F, b, a) : key_of(F, a, b));
  }
  return s;
}

/// Fibre sizes of y -> <(y^{q^h}, f(y))>; index q^n is <(1, 0)>.
inline std::vector<std::uint32_t> fibres(const QPoly& f) {
  const Field& F = f.field();
  std::vector<std::uint32_t> fib(std::size_t(F.order()) + 1, 0);
  for (std::uint32_t y = 1; y < F.order(); ++y) ++fib[key_of(F, Elt(y), f.evaluate(Elt(y)))];
  return fib;
}

inline json tuple_json(const BinomialParams& P, bool swapped) {
  return json{{"field", field_json(P.field())}, {"alpha", P.alpha.v}, {"beta", P.beta.v},
              {"k", P.k},                       {"f", poly_json(P.f)},  {"h", P.h},
              {"swapped", swapped}};
}

namespace detail {

inline std::uint64_t side_signature(const QPoly& f, unsigned h, Elt beta) {
  const Field& F = f.field();
  std::uint64_t mask = 0;
  unsigned d = 0;
  for (unsigned i = 0; i < f.n(); ++i)
    if (!f.coeff(i).is_zero()) mask |= std::uint64_t(1) << i, d = i;
  const Elt ah = f.coeff(h), ad = f.coeff(d);
  const std::uint64_t flags = std::uint64_t(beta.is_zero()) | std::uint64_t(ah == beta) << 1 |
                              std::uint64_t(F.mul(beta, ah) == F.one()) << 2 |
                              std::uint64_t(ad == beta) << 3 |
                              std::uint64_t(F.mul(beta, ad) == F.one()) << 4;
  return mask | std::uint64_t(h) << 20 | flags << 25;
}

}  // namespace detail

/// Everything the sufficient families read besides alpha: the supports,
/// shape exponents and beta-coincidences of f and of its adjoint form, and
/// min(k, n - k). Equal signatures give equal verdicts.
inline std::uint64_t sufficient_signature(const QPoly& f, unsigned h, unsigned k, Elt beta,
                                          const QPoly& fa, unsigned ha) {
  const unsigned n = f.field().n();
  const std::uint64_t kn = std::min(k, n - k);
  return detail::side_signature(f, h, beta) | detail::side_signature(fa, ha, beta) << 30 | kn << 60;
}

/// Bits j and 16 + j: family kSufficientFamilies[j] fires / applies.
inline std::uint32_t sufficient_masks(const BinomialParams& P) {
  std::uint32_t m = 0;
  for (unsigned j = 0; j < std::size(kSufficientFamilies); ++j) {
    const CriterionVerdict v = evaluate(P, kSufficientFamilies[j]);
    if (!v.applicable) continue;
    m |= 1u << (16 + j);
    if (v.kind == VerdictKind::GuaranteedNonEmpty) m |= 1u << j;
  }
  return m;
}

// ---------------------------------------------------------------------------
// 1. Exact criteria

namespace detail {

inline bool exhaustive_iff_field(const Field& F) { return (F.q() == 2 || F.q() == 3) && F.n() <= 4; }

struct IffCheck {
  Tally t;
  void operator()(const BinomialParams& P, Criterion fam, bool sw, const KeySet& g, const KeySet& fk) {
    const CriterionVerdict v = iff_criterion(P, fam);
    const bool oracle = g.intersects(fk);
    ++t.checked;
    ++t.oracle_checks;
    t.asserted += v.nonempty;
    if (v.nonempty != oracle) {
      json ex = tuple_json(P, sw);
      ex["verdict"] = v.nonempty;
      ex["oracle"] = oracle;
      t.fail(std::move(ex));
    }
  }
};

/// All alpha, beta, coefficients for one family and one k.
inline Tally iff_exhaustive(const Field& F, Criterion fam, unsigned k) {
  const std::uint32_t Q = F.order();
  const unsigned n = F.n();
  std::vector<KeySet> G(std::size_t(Q - 1) * Q);
  for (std::uint32_t a = 1; a < Q; ++a)
    for (std::uint32_t b = 0; b < Q; ++b) G[(a - 1) * Q + b] = g_keys(F, k, Elt(a), Elt(b));
  auto gk = [&](Elt a, Elt b) -> const KeySet& { return G[(a.v - 1) * Q + b.v]; };

  IffCheck chk;
  BinomialParams P;
  P.k = k;
  const bool sw = is_swapped(fam);
  auto all_alpha = [&](const KeySet& fk) {
    for (std::uint32_t a = 1; a < Q; ++a) {
      P.alpha = Elt(a);
      chk(P, fam, sw, gk(P.alpha, P.beta), fk);
    }
  };
  if (fam == Criterion::BINOMIAL_SPECIAL) {
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j)
        for (std::uint32_t ai = 1; ai < Q; ++ai)
          for (std::uint32_t aj = 1; aj < Q; ++aj) {
            P.f = QPoly(F);
            P.f.set_coeff(i, Elt(ai));
            P.f.set_coeff(j, Elt(aj));
            for (unsigned h : {i, j}) {
              P.h = h;
              P.beta = P.f.coeff(h);
              all_alpha(shape_keys(P.f, h, false));
            }
          }
    return chk.t;
  }
  for (unsigned d = 0; d < n; ++d)
    for (std::uint32_t ad = 1; ad < Q; ++ad) {
      P.f = QPoly::monomial(F, Elt(ad), d);
      for (unsigned h = 0; h < n; ++h) {
        const bool all_beta = (fam == Criterion::MON_H_EQ_D || fam == Criterion::SIGMA_MON_SPECIAL) && h == d;
        const bool beta0 = fam == Criterion::MON_BETA0 || fam == Criterion::SIGMA_MON_SPECIAL;
        if (!all_beta && !beta0) continue;
        P.h = h;
        const KeySet fk = shape_keys(P.f, h, sw);
        for (std::uint32_t b = 0; b < (all_beta ? Q : 1); ++b) {
          P.beta = Elt(b);
          all_alpha(fk);
        }
      }
    }
  return chk.t;
}

/// One random in-hypothesis tuple of the family, alpha biased towards the
/// norm-1 coset of the criterion.
inline BinomialParams iff_random_tuple(const Field& F, Criterion fam, XorShift64Star& rng) {
  const unsigned n = F.n();
  BinomialParams P;
  P.k = 1 + unsigned(rng.below(n - 1));
  switch (fam) {
    case Criterion::MON_H_EQ_D: {
      const unsigned d = unsigned(rng.below(n));
      P.f = QPoly::monomial(F, random_unit(F, rng), d);
      P.h = d;
      P.beta = rng.below(4) == 0 ? P.f.coeff(d) : random_elt(F, rng);
      P.alpha = biased_alpha(F, rng, F.sub(P.f.coeff(d), P.beta), std::gcd(n, P.k));
      break;
    }
    case Criterion::MON_BETA0: {
      const unsigned d = unsigned(rng.below(n));
      P.f = QPoly::monomial(F, random_unit(F, rng), d);
      P.h = unsigned(rng.below(n));
      P.alpha = biased_alpha(F, rng, P.f.coeff(d), gcd3(n, P.k, absdiff(d, P.h)));
      break;
    }
    case Criterion::BINOMIAL_SPECIAL: {
      unsigned i = unsigned(rng.below(n)), j = unsigned(rng.below(n - 1));
      if (j >= i) ++j;
      if (i > j) std::swap(i, j);
      P.f = QPoly(F);
      P.f.set_coeff(i, random_unit(F, rng));
      P.f.set_coeff(j, random_unit(F, rng));
      P.h = rng.below(2) ? i : j;
      P.beta = P.f.coeff(P.h);
      const unsigned t = P.h == j ? i : j;
      P.alpha = biased_alpha(F, rng, P.f.coeff(t), gcd3(n, P.k, absdiff(t, P.h)));
      break;
    }
    case Criterion::SIGMA_MON_SPECIAL: {
      const unsigned d = unsigned(rng.below(n));
      const Elt ad = random_unit(F, rng);
      P.f = QPoly::monomial(F, ad, d);
      if (rng.below(2)) {
        P.h = d;
        P.beta = rng.below(4) == 0 ? F.inv(ad) : random_elt(F, rng);
      } else {
        P.h = unsigned(rng.below(n));
        P.beta = Elt(0);
      }
      const Elt x = F.div(F.sub(F.one(), F.mul(P.beta, ad)), ad);
      P.alpha = biased_alpha(F, rng, x, gcd3(n, P.k, absdiff(d, P.h)));
      break;
    }
    default:
      throw precondition_violated("not an iff family");
  }
  return P;
}

inline Tally iff_random(const Field& F, Criterion fam, unsigned count, XorShift64Star rng) {
  IffCheck chk;
  const bool sw = is_swapped(fam);
  for (unsigned i = 0; i < count; ++i) {
    const BinomialParams P = iff_random_tuple(F, fam, rng);
    chk(P, fam, sw, g_keys(F, P.k, P.alpha, P.beta), shape_keys(P.f, P.h, sw));
  }
  return chk.t;
}

}  // namespace detail

inline CriterionResult check_iff(const Config& cfg) {
  std::vector<Task> tasks;
  json exhaustive = json::array(), sampled = json::array();
  for (const Field& F : fields_up_to(cfg.max_field)) {
    if (detail::exhaustive_iff_field(F)) {
      exhaustive.push_back(field_json(F));
      for (Criterion fam : kIffFamilies)
        for (unsigned k = 1; k < F.n(); ++k)
          tasks.push_back([F, fam, k] { return TallyMap{{to_string(fam), detail::iff_exhaustive(F, fam, k)}}; });
      continue;
    }
    sampled.push_back(field_json(F));
    const unsigned per_family = cfg.random_tuples / unsigned(std::size(kIffFamilies));
    constexpr unsigned kChunk = 500;
    for (Criterion fam : kIffFamilies)
      for (unsigned c = 0; c * kChunk < per_family; ++c) {
        const unsigned cnt = std::min(kChunk, per_family - c * kChunk);
        const XorShift64Star rng = stream(cfg.seed, 100 + unsigned(fam), field_tag(F) * 1024 + c);
        tasks.push_back([F, fam, cnt, rng] { return TallyMap{{to_string(fam), detail::iff_random(F, fam, cnt, rng)}}; });
      }
  }
  const TallyMap t = run_tasks(tasks, cfg.jobs);
  CriterionResult r{1, "iff_soundness", total_violations(t) == 0, json::object()};
  r.detail["exhaustive_fields"] = exhaustive;
  r.detail["sampled_fields"] = sampled;
  r.detail["families"] = to_json(t);
  return r;
}

// ---------------------------------------------------------------------------
// 2. One-directional criteria

namespace detail {

inline bool exhaustive_sufficient_field(const Field& F, std::uint64_t budget) {
  const double Q = F.order(), n = F.n();
  return std::pow(Q, n) * n * 2 * (n - 1) * Q * (Q - 1) <= double(budget);
}

struct SufficientShared {
  Field F;
  std::vector<KeySet> G;  // [(k-1)][alpha-1][beta]
  const KeySet& g(unsigned k, std::uint32_t a, std::uint32_t b) const {
    const std::size_t Q = F.order();
    return G[((k - 1) * (Q - 1) + (a - 1)) * Q + b];
  }
};

inline std::shared_ptr<const SufficientShared> sufficient_shared(const Field& F) {
  auto s = std::make_shared<SufficientShared>();
  s->F = F;
  const std::uint32_t Q = F.order();
  s->G.reserve(std::size_t(F.n() - 1) * (Q - 1) * Q);
  for (unsigned k = 1; k < F.n(); ++k)
    for (std::uint32_t a = 1; a < Q; ++a)
      for (std::uint32_t b = 0; b < Q; ++b) s->G.push_back(g_keys(F, k, Elt(a), Elt(b)));
  return s;
}

/// All nonzero f with index in [lo, hi), all h, k, beta; every alpha for
/// families that fire.
inline TallyMap sufficient_exhaustive(const SufficientShared& S, std::uint64_t lo, std::uint64_t hi) {
  const Field& F = S.F;
  const std::uint32_t Q = F.order();
  const unsigned n = F.n();
  constexpr unsigned NF = unsigned(std::size(kSufficientFamilies));
  Tally t[NF];
  std::unordered_map<std::uint64_t, std::uint32_t> memo;
  BinomialParams P;
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    P.f = poly_from_index(F, idx);
    for (unsigned h = 0; h < n; ++h) {
      P.h = h;
      const KeySet fk[2] = {shape_keys(P.f, h, false), shape_keys(P.f, h, true)};
      const auto [fa, ha] = adjoint_form(P.f, h);
      for (unsigned k = 1; k < n; ++k) {
        P.k = k;
        for (std::uint32_t b = 0; b < Q; ++b) {
          P.beta = Elt(b);
          const std::uint64_t sig = sufficient_signature(P.f, h, k, P.beta, fa, ha);
          auto it = memo.find(sig);
          if (it == memo.end()) {
            P.alpha = F.one();
            it = memo.emplace(sig, sufficient_masks(P)).first;
          }
          const std::uint32_t m = it->second;
          for (unsigned j = 0; j < NF; ++j) {
            if (!(m >> (16 + j) & 1)) continue;
            ++t[j].checked;
            if (!(m >> j & 1)) continue;
            ++t[j].asserted;
            const KeySet& f_side = fk[is_swapped(kSufficientFamilies[j])];
            for (std::uint32_t a = 1; a < Q; ++a) {
              ++t[j].oracle_checks;
              if (!S.g(k, a, b).intersects(f_side)) {
                P.alpha = Elt(a);
                t[j].fail(tuple_json(P, is_swapped(kSufficientFamilies[j])));
                break;
              }
            }
          }
        }
      }
    }
  }
  TallyMap out;
  for (unsigned j = 0; j < NF; ++j) out[to_string(kSufficientFamilies[j])] = t[j];
  return out;
}

/// Random tuples; a firing family is checked at the tuple's alpha and at
/// three more, since its verdict does not depend on alpha.
inline TallyMap sufficient_random(const Field& F, unsigned count, XorShift64Star rng) {
  const unsigned n = F.n();
  constexpr unsigned NF = unsigned(std::size(kSufficientFamilies));
  Tally t[NF];
  for (unsigned i = 0; i < count; ++i) {
    BinomialParams P;
    P.f = random_low_degree(F, rng);
    P.h = unsigned(rng.below(n));
    P.k = rng.below(2) ? 1 : 1 + unsigned(rng.below(n - 1));
    P.beta = special_beta(P.f, P.h, rng);
    P.alpha = random_unit(F, rng);
    const std::uint32_t m = sufficient_masks(P);
    if (!(m & 0xFFFFu)) {
      for (unsigned j = 0; j < NF; ++j) t[j].checked += m >> (16 + j) & 1;
      continue;
    }
    std::optional<KeySet> fk[2];
    for (unsigned j = 0; j < NF; ++j) {
      if (!(m >> (16 + j) & 1)) continue;
      ++t[j].checked;
      if (!(m >> j & 1)) continue;
      ++t[j].asserted;
      const bool sw = is_swapped(kSufficientFamilies[j]);
      if (!fk[sw]) fk[sw] = shape_keys(P.f, P.h, sw);
      for (int rep = 0; rep < 4; ++rep) {
        const Elt a = rep == 0 ? P.alpha : random_unit(F, rng);
        ++t[j].oracle_checks;
        if (!g_keys(F, P.k, a, P.beta).intersects(*fk[sw])) {
          BinomialParams bad = P;
          bad.alpha = a;
          t[j].fail(tuple_json(bad, sw));
          break;
        }
      }
    }
  }
  TallyMap out;
  for (unsigned j = 0; j < NF; ++j) out[to_string(kSufficientFamilies[j])] = t[j];
  return out;
}

/// Affine keys x / Tr_{q^n/q^r}(x) and whether some trace vanishes.
struct ClubKeys {
  KeySet affine;
  std::vector<std::uint32_t> list;  // distinct affine keys
};

inline ClubKeys club_keys(const Field& F, unsigned r) {
  ClubKeys c{KeySet(F.order()), {}};
  for (std::uint32_t x = 1; x < F.order(); ++x) {
    const Elt t = F.rel_trace(Elt(x), r);
    if (t.is_zero()) continue;
    const std::uint32_t k = F.div(Elt(x), t).v;
    if (!c.affine.test(k)) c.affine.set(k), c.list.push_back(k);
  }
  return c;
}

/// L_{r1} and L_{r2} (the latter scaled by alpha) share a point other than
/// <(1, 0)>, for every alpha: index alpha.v.
inline std::vector<bool> club_oracle(const Field& F, unsigned r1, unsigned r2) {
  const ClubKeys A = club_keys(F, r1), B = club_keys(F, r2);
  std::vector<bool> out(F.order(), false);
  for (std::uint32_t a = 1; a < F.order(); ++a)
    for (std::uint32_t k : B.list)
      if (A.affine.test(F.div(Elt(k), Elt(a)).v)) {
        out[a] = true;
        break;
      }
  return out;
}

/// L_{r1} meets sigma(L_{r2}) = {<(alpha Tr_{r2}(y), y)>}, for every alpha.
inline std::vector<bool> club_sigma_oracle(const Field& F, unsigned r1, unsigned r2) {
  const ClubKeys A = club_keys(F, r1);
  std::vector<std::uint32_t> ts;
  {
    KeySet seen(F.order());
    for (std::uint32_t y = 1; y < F.order(); ++y) {
      const std::uint32_t t = F.div(F.rel_trace(Elt(y), r2), Elt(y)).v;
      if (!seen.test(t)) seen.set(t), ts.push_back(t);
    }
  }
  std::vector<bool> out(F.order(), false);
  for (std::uint32_t a = 1; a < F.order(); ++a)
    for (std::uint32_t t : ts)
      if (t && A.affine.test(F.mul(Elt(a), Elt(t)).v)) {
        out[a] = true;
        break;
      }
  return out;
}

inline json club_json(const Field& F, unsigned r1, unsigned r2, Elt alpha) {
  return json{{"field", field_json(F)}, {"r1", r1}, {"r2", r2}, {"alpha", alpha.v}};
}

struct ClubPrimoOut {
  TallyMap gated;
  Tally literal;  // the "+1" variant; informational
};

inline ClubPrimoOut club_primo_field(const Field& F) {
  ClubPrimoOut out;
  Tally& t = out.gated["CLUB_PRIMO"];
  for (unsigned r1 : divisors(F.n()))
    for (unsigned r2 : divisors(F.n())) {
      const std::vector<bool> oracle = club_oracle(F, r1, r2);
      for (std::uint32_t a = 1; a < F.order(); ++a) {
        const ClubParams c = normalize_club(ClubParams{F, r1, r2, Elt(a)});
        const CriterionVerdict v = club_primo(c, std::uint64_t(-1));
        ++t.checked;
        const bool literal = v.hypotheses.at(2).satisfied;
        if (literal) {
          ++out.literal.asserted;
          if (!oracle[a]) out.literal.fail(club_json(F, r1, r2, Elt(a)));
        }
        ++out.literal.checked;
        if (v.kind != VerdictKind::GuaranteedNonEmpty) continue;
        ++t.asserted;
        ++t.oracle_checks;
        if (!oracle[a]) t.fail(club_json(F, r1, r2, Elt(a)));
      }
    }
  return out;
}

inline Tally club_sigma_field(const Field& F) {
  Tally t;
  for (unsigned r1 : divisors(F.n()))
    for (unsigned r2 : divisors(F.n())) {
      const ClubParams c = normalize_club(ClubParams{F, r1, r2, F.one()});
      const CriterionVerdict v = club_sigma_bound(c);
      ++t.checked;
      if (v.kind != VerdictKind::GuaranteedNonEmpty) continue;
      ++t.asserted;
      const std::vector<bool> oracle = club_sigma_oracle(F, r1, r2);
      for (std::uint32_t a = 1; a < F.order(); ++a) {
        ++t.oracle_checks;
        if (!oracle[a]) {
          t.fail(club_json(F, r1, r2, Elt(a)));
          break;
        }
      }
    }
  return t;
}

inline bool exhaustive_pseudoregulus_field(const Field& F) {
  return std::pow(double(F.order()), double(F.n())) * F.n() * 2 <= double(1 << 21);
}

/// g = x^q against f in both shapes: exact verdicts must match, bounds
/// must be witnessed.
inline TallyMap pseudoregulus_check(const Field& F, const std::vector<QPoly>& polys) {
  TallyMap out;
  Tally& dec = out["PSEUDOREGULUS_DECIDED"];
  Tally& bnd = out["PSEUDOREGULUS"];
  const KeySet G = g_keys(F, 1, F.one(), Elt(0));
  for (const QPoly& f : polys)
    for (unsigned h = 0; h < F.n(); ++h)
      for (bool sw : {false, true}) {
        const CriterionVerdict v = pseudoregulus_conditions(f, h, sw);
        if (v.kind == VerdictKind::Inconclusive) {
          ++bnd.checked;
          continue;
        }
        Tally& t = v.kind == VerdictKind::Decided ? dec : bnd;
        ++t.checked;
        t.asserted += v.asserts_nonempty();
        ++t.oracle_checks;
        const bool oracle = G.intersects(shape_keys(f, h, sw));
        if (v.asserts_nonempty() != oracle)
          t.fail(json{{"field", field_json(F)}, {"f", poly_json(f)}, {"h", h}, {"swapped", sw},
                      {"verdict", v.asserts_nonempty()}, {"oracle", oracle}});
      }
  return out;
}

}  // namespace detail

inline CriterionResult check_sufficient(const Config& cfg) {
  std::vector<Task> tasks;
  json exhaustive = json::array();
  for (const Field& F : fields_up_to(cfg.max_field)) {
    if (detail::exhaustive_sufficient_field(F, cfg.exhaustive_budget)) {
      exhaustive.push_back(field_json(F));
      const auto shared = detail::sufficient_shared(F);
      const std::uint64_t total = ipow(F.order(), F.n());
      const std::uint64_t step = std::max<std::uint64_t>(1, total / 16);
      for (std::uint64_t lo = 1; lo < total; lo += step) {
        const std::uint64_t hi = std::min(total, lo + step);
        tasks.push_back([shared, lo, hi] { return detail::sufficient_exhaustive(*shared, lo, hi); });
      }
    } else {
      constexpr unsigned kChunk = 1000;
      for (unsigned c = 0; c * kChunk < cfg.random_tuples; ++c) {
        const unsigned cnt = std::min(kChunk, cfg.random_tuples - c * kChunk);
        const XorShift64Star rng = stream(cfg.seed, 200, field_tag(F) * 1024 + c);
        tasks.push_back([F, cnt, rng] { return detail::sufficient_random(F, cnt, rng); });
      }
    }
    // pseudoregulus
    if (detail::exhaustive_pseudoregulus_field(F)) {
      tasks.push_back([F] {
        std::vector<QPoly> polys;
        for (std::uint64_t i = 1; i < ipow(F.order(), F.n()); ++i) polys.push_back(poly_from_index(F, i));
        return detail::pseudoregulus_check(F, polys);
      });
    } else {
      const unsigned cnt = std::max(1u, cfg.pseudoregulus_samples / (2 * F.n()));
      XorShift64Star rng = stream(cfg.seed, 210, field_tag(F));
      tasks.push_back([F, cnt, rng]() mutable {
        std::vector<QPoly> polys;
        for (unsigned i = 0; i < cnt; ++i) polys.push_back(random_low_degree(F, rng));
        return detail::pseudoregulus_check(F, polys);
      });
    }
  }
  TallyMap t = run_tasks(tasks, cfg.jobs);

  Tally literal;
  for (const Field& F : fields_up_to(cfg.club_max_field)) {
    const auto out = detail::club_primo_field(F);
    merge_into(t, out.gated);
    literal.merge(out.literal);
  }
  const auto sigma_fields = fields_up_to(cfg.sigma_max_field);
  const auto sig = parallel_map<Tally>(sigma_fields.size(), cfg.jobs,
                                       [&](std::size_t i) { return detail::club_sigma_field(sigma_fields[i]); });
  for (const auto& s : sig) t["CLUB_SIGMA_BOUND"].merge(s);

  CriterionResult r{2, "sufficient_soundness", total_violations(t) == 0, json::object()};
  r.detail["exhaustive_fields"] = exhaustive;
  r.detail["families"] = to_json(t);
  r.detail["club_primo_plus_one_variant"] = literal.to_json();
  return r;
}

// ---------------------------------------------------------------------------
// 3. Club characterizations

inline CriterionResult check_clubs(const Config& cfg) {
  TallyMap t;
  Tally& sec = t["CLUB_SECONDO"];
  Tally& same = t["CLUB_SAME_FIELD"];
  for (const Field& F : fields_up_to(std::min<std::uint32_t>(256, cfg.club_max_field))) {
    if (F.q() != 2 && F.q() != 3) continue;
    for (unsigned r1 : divisors(F.n()))
      for (unsigned r2 : divisors(F.n())) {
        const std::vector<bool> oracle = detail::club_oracle(F, r1, r2);
        for (std::uint32_t a = 1; a < F.order(); ++a) {
          if (!F.in_subfield(Elt(a), r1)) continue;
          for (std::uint32_t b = 1; b < F.order(); ++b) {
            if (!F.in_subfield(Elt(b), r2)) continue;
            const Elt alpha = F.mul(Elt(a), Elt(b));
            const ClubParams c = normalize_club(ClubParams{F, r1, r2, alpha});
            const CriterionVerdict v = club_secondo(c, Elt(a), Elt(b));
            ++sec.checked;
            ++sec.oracle_checks;
            sec.asserted += v.nonempty;
            if (v.nonempty != oracle[alpha.v]) {
              json ex = detail::club_json(F, r1, r2, alpha);
              ex["a"] = a;
              ex["b"] = b;
              ex["verdict"] = v.nonempty;
              ex["oracle"] = bool(oracle[alpha.v]);
              sec.fail(std::move(ex));
            }
          }
        }
        if (r1 != r2) continue;
        const std::vector<bool> sigma = detail::club_sigma_oracle(F, r1, r2);
        for (std::uint32_t a = 1; a < F.order(); ++a) {
          const SameFieldResult s = club_same_field(ClubParams{F, r1, r2, Elt(a)}, std::uint64_t(-1));
          ++same.checked;
          ++same.oracle_checks;
          same.asserted += s.verdict.nonempty;
          if (s.verdict.nonempty != sigma[a]) same.fail(detail::club_json(F, r1, r2, Elt(a)));
        }
      }
  }
  CriterionResult r{3, "club_characterization", total_violations(t) == 0, json::object()};
  r.detail["families"] = to_json(t);
  return r;
}

// ---------------------------------------------------------------------------
// 4. L_f = L_{f^}

inline CriterionResult check_adjoint(const Config& cfg) {
  std::vector<Task> tasks;
  for (const Field& F : fields_up_to(cfg.max_field)) {
    const XorShift64Star rng0 = stream(cfg.seed, 400, field_tag(F));
    const unsigned cnt = cfg.adjoint_samples;
    tasks.push_back([F, cnt, rng0] {
      XorShift64Star rng = rng0;
      TallyMap out;
      Tally& pts = out["ADJOINT_POINTS"];
      Tally& wts = out["ADJOINT_WEIGHTS"];
      for (unsigned i = 0; i < cnt; ++i) {
        QPoly f(F);
        while (f.is_zero())
          for (unsigned j = 0; j < F.n(); ++j) f.set_coeff(j, random_elt(F, rng));
        const QPoly fa = adjoint(f);
        const auto A = fibres(f), B = fibres(fa);
        bool same_points = true;
        for (std::size_t k = 0; k < A.size(); ++k) same_points &= bool(A[k]) == bool(B[k]);
        ++pts.checked;
        ++wts.checked;
        if (!same_points) pts.fail(json{{"field", field_json(F)}, {"f", poly_json(f)}});
        if (A != B) wts.fail(json{{"field", field_json(F)}, {"f", poly_json(f)}});
      }
      return out;
    });
  }
  const TallyMap t = run_tasks(tasks, cfg.jobs);
  CriterionResult r{4, "adjoint_identity", t.at("ADJOINT_POINTS").violations == 0, json::object()};
  r.detail["families"] = to_json(t);
  return r;
}

// ---------------------------------------------------------------------------
// 5. Structure of L_Tr and L_{x^q}

inline CriterionResult check_structure(const Config& cfg) {
  TallyMap t;
  Tally& tr = t["TRACE_CLUB"];
  Tally& ps = t["PSEUDOREGULUS_SCATTERED"];
  for (const Field& F : fields_up_to(cfg.max_field)) {
    const std::uint64_t q = F.q(), Q = F.order();
    const unsigned n = F.n();
    {
      const QPoly T = QPoly::trace(F);
      const auto fib = fibres(T);
      std::size_t pts = 0;
      bool head_ok = fib[Q] + 1 == ipow(q, n - 1), rest_ok = true;
      for (std::size_t k = 0; k < fib.size(); ++k) {
        if (!fib[k]) continue;
        ++pts;
        if (k != Q) rest_ok &= fib[k] + 1 == q;
      }
      const LinearSet L = build(T);
      const Classification c = classify(L);
      const bool closed = pts == ipow(q, n - 1) + 1 && head_ok && rest_ok;
      const bool lib = L.size() == pts && L.weight(ProjPoint::at_infinity()) == n - 1 &&
                       c.kind == (n >= 3 ? SetKind::Club : SetKind::Scattered);
      ++tr.checked;
      if (!closed || !lib)
        tr.fail(json{{"field", field_json(F)}, {"points", pts}, {"library_points", L.size()},
                     {"kind", to_string(c.kind)}});
    }
    {
      const QPoly P = QPoly::monomial(F, F.one(), 1);
      const auto fib = fibres(P);
      std::size_t pts = 0;
      bool all_one = true;
      for (auto c : fib)
        if (c) ++pts, all_one &= c + 1 == q;
      const LinearSet L = build(P);
      const bool closed = pts == (Q - 1) / (q - 1) && all_one;
      const bool lib = L.size() == pts && classify(L).kind == SetKind::Scattered;
      ++ps.checked;
      if (!closed || !lib)
        ps.fail(json{{"field", field_json(F)}, {"points", pts}, {"library_points", L.size()}});
    }
  }
  CriterionResult r{5, "structure_counts", total_violations(t) == 0, json::object()};
  r.detail["families"] = to_json(t);
  return r;
}

// ---------------------------------------------------------------------------
// 6. Genus and Hasse-Weil machinery

namespace detail {

inline bool exhaustive_genus_field(const Field& F) {
  const std::uint64_t n = F.n();
  return (std::uint64_t(1) << n) * n * (n - 1) * 5 <= (std::uint64_t(1) << 16);
}

struct GenusCheck {
  TallyMap out;
  std::uint64_t fired_without_point = 0, point_without_fired = 0;

  void operator()(const BinomialParams& P, XorShift64Star& rng) {
    const Field& F = P.field();
    Tally& prof = out["GENUS_PROFILE"];
    Tally& pt = out["GENUS_IMPLIES_POINT"];
    std::optional<KeySet> fk[2];
    for (Criterion fam : kSufficientFamilies) {
      const CriterionVerdict v = evaluate(P, fam);
      if (!v.applicable) continue;
      const bool sw = is_swapped(fam);
      ++prof.checked;
      GenusReport g;
      try {
        g = genus_family(fam, P);
      } catch (const error& e) {
        json ex = tuple_json(P, sw);
        ex["family"] = to_string(fam);
        ex["error"] = e.what();
        prof.fail(std::move(ex));
        continue;
      }
      if (g.genus != g.profile_genus || g.genus < 0 || g.hw_low > g.hw_high || g.excluded < 0) {
        json ex = tuple_json(P, sw);
        ex["family"] = to_string(fam);
        ex["genus"] = g.genus;
        ex["profile_genus"] = g.profile_genus;
        prof.fail(std::move(ex));
      }
      const bool fired = v.kind == VerdictKind::GuaranteedNonEmpty;
      fired_without_point += fired && !g.implies_point;
      point_without_fired += g.implies_point && !fired;
      ++pt.checked;
      if (!g.implies_point) continue;
      ++pt.asserted;
      if (!fk[sw]) fk[sw] = shape_keys(P.f, P.h, sw);
      const bool all = F.order() <= 64;
      const std::uint32_t reps = all ? F.order() - 1 : 8;
      for (std::uint32_t i = 0; i < reps; ++i) {
        const Elt a = all ? Elt(i + 1) : (i == 0 ? P.alpha : random_unit(F, rng));
        ++pt.oracle_checks;
        if (!g_keys(F, P.k, a, P.beta).intersects(*fk[sw])) {
          BinomialParams bad = P;
          bad.alpha = a;
          json ex = tuple_json(bad, sw);
          ex["family"] = to_string(fam);
          ex["genus"] = g.genus;
          pt.fail(std::move(ex));
          break;
        }
      }
    }
  }
};

inline void merge_genus(GenusCheck& into, const GenusCheck& from) {
  merge_into(into.out, from.out);
  into.fired_without_point += from.fired_without_point;
  into.point_without_fired += from.point_without_fired;
}

/// Every support pattern, h, k and beta-coincidence, with random nonzero
/// coefficient values.
inline GenusCheck genus_exhaustive(const Field& F, XorShift64Star rng) {
  GenusCheck chk;
  const unsigned n = F.n();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
    for (unsigned h = 0; h < n; ++h)
      for (unsigned k = 1; k < n; ++k)
        for (unsigned choice = 0; choice < 5; ++choice) {
          BinomialParams P;
          P.f = QPoly(F);
          for (unsigned i = 0; i < n; ++i)
            if (mask >> i & 1) P.f.set_coeff(i, random_unit(F, rng));
          P.h = h;
          P.k = k;
          P.alpha = random_unit(F, rng);
          const Elt ah = P.f.coeff(h), ad = P.f.coeff(indices(P.f).d);
          switch (choice) {
            case 0: P.beta = Elt(0); break;
            case 1: P.beta = ah; break;
            case 2: P.beta = ah.is_zero() ? random_unit(F, rng) : F.inv(ah); break;
            case 3: P.beta = ad; break;
            default: P.beta = random_elt(F, rng); break;
          }
          chk(P, rng);
        }
  return chk;
}

inline GenusCheck genus_random(const Field& F, unsigned count, XorShift64Star rng) {
  GenusCheck chk;
  for (unsigned i = 0; i < count; ++i) {
    BinomialParams P;
    P.f = random_low_degree(F, rng);
    P.h = unsigned(rng.below(F.n()));
    P.k = rng.below(2) ? 1 : 1 + unsigned(rng.below(F.n() - 1));
    P.beta = special_beta(P.f, P.h, rng);
    P.alpha = random_unit(F, rng);
    chk(P, rng);
  }
  return chk;
}

inline Tally genus_clubs_field(const Field& F) {
  Tally t;
  const std::int64_t q = std::int64_t(F.q());
  for (unsigned r1 : divisors(F.n()))
    for (unsigned r2 : divisors(F.n())) {
      const ClubParams c = normalize_club(ClubParams{F, r1, r2, F.one()});
      const GenusReport g = genus_clubs_sigma(c);
      const std::int64_t expect = (std::int64_t(ipow(q, r1)) - 1) * (std::int64_t(ipow(q, r2)) - 1);
      ++t.checked;
      json ex = club_json(F, r1, r2, F.one());
      if (g.genus != expect || g.profile_genus != expect) {
        ex["genus"] = g.genus;
        ex["profile_genus"] = g.profile_genus;
        ex["expected"] = expect;
        t.fail(std::move(ex));
        continue;
      }
      if (!g.implies_point) continue;
      ++t.asserted;
      const std::vector<bool> oracle = club_sigma_oracle(F, r1, r2);
      for (std::uint32_t a = 1; a < F.order(); ++a) {
        ++t.oracle_checks;
        if (!oracle[a]) {
          ex["alpha"] = a;
          t.fail(std::move(ex));
          break;
        }
      }
    }
  return t;
}

}  // namespace detail

inline CriterionResult check_genus(const Config& cfg) {
  const auto fields = fields_up_to(cfg.max_field);
  const auto parts = parallel_map<detail::GenusCheck>(fields.size(), cfg.jobs, [&](std::size_t i) {
    const Field& F = fields[i];
    const XorShift64Star rng = stream(cfg.seed, 600, field_tag(F));
    return detail::exhaustive_genus_field(F) ? detail::genus_exhaustive(F, rng)
                                             : detail::genus_random(F, cfg.genus_samples, rng);
  });
  detail::GenusCheck all;
  for (const auto& p : parts) detail::merge_genus(all, p);

  const auto sigma_fields = fields_up_to(cfg.sigma_max_field);
  const auto clubs = parallel_map<Tally>(sigma_fields.size(), cfg.jobs,
                                         [&](std::size_t i) { return detail::genus_clubs_field(sigma_fields[i]); });
  for (const auto& c : clubs) all.out["CLUBS_SIGMA"].merge(c);

  CriterionResult r{6, "genus_bounds", total_violations(all.out) == 0, json::object()};
  r.detail["families"] = to_json(all.out);
  r.detail["bound_fires_without_curve_point"] = all.fired_without_point;
  r.detail["curve_point_without_bound"] = all.point_without_fired;
  return r;
}

// ---------------------------------------------------------------------------
// 7. Semifields

inline json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return json::array({w->x.v, w->y.v});
}

inline json open_case_json(const OpenCaseResult& r) {
  json j{{"p", r.p}, {"m", r.m}, {"n", r.n}, {"r", r.r}, {"modulus", r.modulus}};
  j["attempted"] = r.attempted;
  j["cost"] = r.cost;
  j["cap"] = r.cap;
  if (r.attempted) {
    j["is_presemifield"] = r.report.is_presemifield;
    j["witness"] = witness_json(r.report.witness_zero_divisor);
    j["dual_oracle_agrees"] = r.report.dual_oracle_agrees;
  }
  return j;
}

/// Every registry case at q = 2 within the pair cap.
inline std::vector<OpenCaseResult> open_cases_q2(std::uint64_t cap) {
  std::vector<OpenCaseResult> out;
  for (const OpenCase& oc : open_case_registry()) out.push_back(resolve_open_case(2, 1, oc, cap));
  return out;
}

namespace detail {

inline void dual_check(Tally& dual, const BelPair& s, std::uint64_t cap) {
  const SemifieldReport rep = is_presemifield(s, cap);
  ++dual.checked;
  ++dual.oracle_checks;
  if (!rep.dual_oracle_agrees || !rep.distributive)
    dual.fail(json{{"field", field_json(s.field())}, {"L1", poly_json(s.L1)}, {"L2", poly_json(s.L2)}});
}

/// Presemifields from the random sweep must satisfy every listed condition.
inline Tally necessary_conditions_field(const Field& F, unsigned count, XorShift64Star rng, std::uint64_t cap,
                         std::uint64_t& presemifields) {
  Tally t;
  for (unsigned i = 0; i < count; ++i) {
    const QPoly f = random_low_degree(F, rng);
    const unsigned k = 1 + unsigned(rng.below(F.n() - 1));
    const Elt alpha = random_unit(F, rng);
    const Elt beta = rng.below(3) == 0 ? Elt(0) : random_elt(F, rng);
    QPoly g = QPoly::monomial(F, alpha, k);
    g.set_coeff(0, beta);
    const auto hyps = check_cor43(f, alpha, beta, k);
    const bool semi = !zero_divisor_scan(BelPair{f, g}, cap);
    ++t.checked;
    presemifields += semi;
    if (!semi) continue;
    ++t.asserted;
    for (const auto& h : hyps)
      if (!h.satisfied) {
        t.fail(json{{"field", field_json(F)}, {"f", poly_json(f)}, {"alpha", alpha.v}, {"beta", beta.v},
                    {"k", k}, {"condition", h.condition}});
        break;
      }
  }
  return t;
}

}  // namespace detail

inline CriterionResult check_semifield(const Config& cfg) {
  const std::uint64_t cap = cfg.max_pairs;
  TallyMap t;
  json gates = json::object();

  // Trace against L2 of q-degree at most 1, q = 2, n in {4, 6}.
  Tally& thm = t["DEGREE_BOUND"];
  Tally& dual = t["DUAL_ORACLE"];
  std::uint64_t thm_identity = 0, thm_scalar = 0;
  for (unsigned n : {4u, 6u}) {
    if (ipow(2, n) > cfg.max_field) continue;
    const Field F = make_field(2, 1, n);
    for (std::uint32_t a0 = 0; a0 < F.order(); ++a0)
      for (std::uint32_t a1 = 0; a1 < F.order(); ++a1) {
        if (!a0 && !a1) continue;
        QPoly L2(F);
        L2.set_coeff(0, Elt(a0));
        L2.set_coeff(1, Elt(a1));
        const BelPair s{QPoly::trace(F), L2};
        const ConsistencyCheck c = check_thm41(s, cap);
        detail::dual_check(dual, s, cap);
        ++thm.checked;
        thm.asserted += c.antecedent;
        if (c.consistent) continue;
        const bool has_identity = two_sided_identity(s).has_value();
        thm_identity += has_identity;
        thm_scalar += a1 == 0;
        thm.fail(json{{"field", field_json(F)}, {"L2", poly_json(L2)}, {"two_sided_identity", has_identity}});
      }
  }

  // Both traces, q = 2, n = 6, r1 = r2 = 1, every alpha.
  Tally& cor = t["DIVISOR_PAIR_BOUND"];
  if (64 <= cfg.max_field) {
    const Field F = make_field(2, 1, 6);
    for (std::uint32_t a = 1; a < F.order(); ++a) {
      const ConsistencyCheck c = check_cor42(F, 1, 1, Elt(a), cap);
      ++cor.checked;
      cor.asserted += c.antecedent;
      if (!c.consistent) cor.fail(detail::club_json(F, 1, 1, Elt(a)));
    }
  }
  // Every divisor pair and alpha for q^n up to the club limit.
  Tally cor_wide;
  for (const Field& F : fields_up_to(cfg.club_max_field))
    for (unsigned r1 : divisors(F.n()))
      for (unsigned r2 : divisors(F.n()))
        for (std::uint32_t a = 1; a < F.order(); ++a) {
          const ConsistencyCheck c = check_cor42(F, r1, r2, Elt(a), cap);
          ++cor_wide.checked;
          cor_wide.asserted += c.antecedent;
          if (!c.consistent) cor_wide.fail(detail::club_json(F, r1, r2, Elt(a)));
        }

  // 200 random pairs at q = 2, n = 3.
  {
    const Field F = make_field(2, 1, 3);
    XorShift64Star rng = stream(cfg.seed, 700, 0);
    for (int i = 0; i < 200; ++i) {
      QPoly L1(F), L2(F);
      for (unsigned j = 0; j < 3; ++j) L1.set_coeff(j, random_elt(F, rng)), L2.set_coeff(j, random_elt(F, rng));
      detail::dual_check(dual, BelPair{L1, L2}, cap);
    }
  }

  // Open cases.
  json cases = json::array();
  bool cases_ok = true;
  for (const OpenCaseResult& r : open_cases_q2(cap)) {
    cases.push_back(open_case_json(r));
    const bool within = r.cost <= cap;
    cases_ok &= r.attempted == within;
    if (r.attempted) cases_ok &= r.report.dual_oracle_agrees;
    if (r.n == 2 && r.r == 2) cases_ok &= r.attempted && r.report.is_presemifield;
  }

  // Necessary conditions for g = alpha y^{q^k} + beta y on random pairs.
  Tally necessary;
  std::uint64_t presemifields = 0;
  for (const Field& F : fields_up_to(cfg.club_max_field))
    necessary.merge(detail::necessary_conditions_field(F, cfg.semifield_samples, stream(cfg.seed, 710, field_tag(F)), cap,
                                    presemifields));

  gates["degree_bound"] = thm.violations == 0;
  gates["divisor_pair_bound"] = cor.violations == 0;
  gates["dual_oracle"] = dual.violations == 0;
  gates["open_cases"] = cases_ok;
  gates["divisor_pair_bound_all"] = cor_wide.violations == 0;
  gates["necessary"] = necessary.violations == 0;
  bool pass = true;
  for (auto& [k, v] : gates.items()) pass &= v.get<bool>();

  CriterionResult r{7, "semifield_consistency", pass, json::object()};
  r.detail["gates"] = gates;
  r.detail["families"] = to_json(t);
  r.detail["degree_bound_violations_with_identity"] = thm_identity;
  r.detail["degree_bound_violations_with_scalar_L2"] = thm_scalar;
  r.detail["divisor_pair_bound_all"] = cor_wide.to_json();
  r.detail["necessary_conditions_sweep"] = necessary.to_json();
  r.detail["necessary_conditions_presemifields"] = presemifields;
  r.detail["open_cases"] = cases;
  return r;
}

// ---------------------------------------------------------------------------
// Suite

inline const char* criterion_name(int i) {
  static const char* names[] = {"",
                                "iff_soundness",
                                "sufficient_soundness",
                                "club_characterization",
                                "adjoint_identity",
                                "structure_counts",
                                "genus_bounds",
                                "semifield_consistency",
                                "determinism"};
  return (i >= 1 && i <= 8) ? names[i] : "?";
}

/// Criteria 1..7; an exception becomes a failed result carrying its message.
inline CriterionResult run_criterion(int i, const Config& cfg) {
  try {
    switch (i) {
      case 1: return check_iff(cfg);
      case 2: return check_sufficient(cfg);
      case 3: return check_clubs(cfg);
      case 4: return check_adjoint(cfg);
      case 5: return check_structure(cfg);
      case 6: return check_genus(cfg);
      case 7: return check_semifield(cfg);
      default: throw precondition_violated("criterion index 1..7");
    }
  } catch (const std::exception& e) {
    return CriterionResult{i, criterion_name(i), false, json{{"error", e.what()}}};
  }
}

inline std::vector<CriterionResult> run_suite(const Config& cfg) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= 7; ++i) out.push_back(run_criterion(i, cfg));
  return out;
}

inline std::string serialize(const std::vector<CriterionResult>& rs) {
  std::string s;
  for (const auto& r : rs) s += r.to_json().dump() + "\n";
  return s;
}

/// First line of every report: generator, seed and sweep sizes.
inline json report_header(const Config& cfg) {
  return json{{"report", "linset-verify"}, {"version", 1}, {"config", cfg.to_json()}};
}

/// Header line followed by one line per criterion.
inline std::string serialize_report(const Config& cfg, const std::vector<CriterionResult>& rs) {
  return report_header(cfg).dump() + "\n" + serialize(rs);
}

/// Totals over the tallies of a result (families and top-level tallies).
inline std::pair<std::uint64_t, std::uint64_t> checked_and_violations(const CriterionResult& r) {
  std::uint64_t c = 0, v = 0;
  if (r.detail.contains("families"))
    for (const auto& [k, t] : r.detail["families"].items()) {
      c += t.value("checked", std::uint64_t(0));
      v += t.value("violations", std::uint64_t(0));
    }
  return {c, v};
}

/// "PASS 3 club_characterization checked=... violations=..."
inline std::string summary_line(const CriterionResult& r) {
  std::string s = std::string(r.pass ? "PASS" : "FAIL") + " " + std::to_string(r.index) + " " + r.name;
  if (r.detail.contains("error")) return s + " error=" + r.detail["error"].get<std::string>();
  if (r.index == 8) return s + " bytes=" + std::to_string(r.detail.value("bytes", std::uint64_t(0)));
  const auto [c, v] = checked_and_violations(r);
  s += " checked=" + std::to_string(c) + " violations=" + std::to_string(v);
  if (r.detail.contains("gates"))
    for (const auto& [k, g] : r.detail["gates"].items())
      if (!g.get<bool>()) s += " failed_gate=" + k;
  return s;
}

/// Criterion 8 from two serialized runs.
inline CriterionResult determinism_result(const std::string& a, const std::string& b) {
  CriterionResult r{8, "determinism", a == b, json::object()};
  r.detail["bytes"] = a.size();
  if (a != b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    r.detail["first_difference"] = i;
  }
  return r;
}

}  // namespace linset::verify

#endif  // LINSET_VERIFY_HPP
