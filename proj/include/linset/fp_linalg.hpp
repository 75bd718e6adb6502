#ifndef LINSET_FP_LINALG_HPP
#define LINSET_FP_LINALG_HPP

// Dense linear algebra over a prime field F_p, sized for the
// coordinate spaces of the fields in this library (dimension <= 32).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace linset {

class FpMatrix {
 public:
  FpMatrix(unsigned rows, unsigned cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), a_(std::size_t(rows) * cols, 0) {}

  unsigned rows() const noexcept { return rows_; }
  unsigned cols() const noexcept { return cols_; }
  std::uint32_t prime() const noexcept { return p_; }

  std::uint32_t& operator()(unsigned r, unsigned c) { return a_[std::size_t(r) * cols_ + c]; }
  std::uint32_t operator()(unsigned r, unsigned c) const { return a_[std::size_t(r) * cols_ + c]; }

  void set_column(unsigned c, const std::vector<std::uint32_t>& v) {
    for (unsigned r = 0; r < rows_; ++r) (*this)(r, c) = v[r] % p_;
  }

  /// Row echelon form in place; returns the rank. First-nonzero pivoting.
  unsigned eliminate() {
    unsigned rank = 0;
    for (unsigned c = 0; c < cols_ && rank < rows_; ++c) {
      unsigned piv = rank;
      while (piv < rows_ && (*this)(piv, c) == 0) ++piv;
      if (piv == rows_) continue;
      swap_rows(piv, rank);
      const std::uint32_t s = inv((*this)(rank, c));
      for (unsigned j = c; j < cols_; ++j) (*this)(rank, j) = mulmod((*this)(rank, j), s);
      for (unsigned r = 0; r < rows_; ++r) {
        if (r == rank) continue;
        const std::uint32_t f = (*this)(r, c);
        if (f == 0) continue;
        for (unsigned j = c; j < cols_; ++j) {
          const std::uint32_t t = mulmod(f, (*this)(rank, j));
          (*this)(r, j) = ((*this)(r, j) + p_ - t) % p_;
        }
      }
      ++rank;
    }
    return rank;
  }

  unsigned rank() const {
    FpMatrix copy = *this;
    return copy.eliminate();
  }

  /// Some solution of A x = b, or nullopt when the system is inconsistent.
  std::optional<std::vector<std::uint32_t>> solve(const std::vector<std::uint32_t>& b) const {
    FpMatrix aug(rows_, cols_ + 1, p_);
    for (unsigned r = 0; r < rows_; ++r) {
      for (unsigned c = 0; c < cols_; ++c) aug(r, c) = (*this)(r, c);
      aug(r, cols_) = b[r] % p_;
    }
    const unsigned rk = aug.eliminate();
    std::vector<std::uint32_t> x(cols_, 0);
    for (unsigned r = 0; r < rk; ++r) {
      unsigned lead = 0;
      while (lead < cols_ && aug(r, lead) == 0) ++lead;
      if (lead == cols_) return std::nullopt;  // 0 = nonzero
      x[lead] = aug(r, cols_);
    }
    return x;
  }

 private:
  std::uint32_t mulmod(std::uint32_t a, std::uint32_t b) const {
    return std::uint32_t((std::uint64_t(a) * b) % p_);
  }
  std::uint32_t inv(std::uint32_t a) const {
    // p is tiny; Fermat is fine here.
    std::uint64_t r = 1, base = a, e = p_ - 2;
    while (e) {
      if (e & 1) r = (r * base) % p_;
      base = (base * base) % p_;
      e >>= 1;
    }
    return std::uint32_t(r);
  }
  void swap_rows(unsigned i, unsigned j) {
    if (i == j) return;
    for (unsigned c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  unsigned rows_, cols_;
  std::uint32_t p_;
  std::vector<std::uint32_t> a_;
};

}  // namespace linset

#endif  // LINSET_FP_LINALG_HPP
