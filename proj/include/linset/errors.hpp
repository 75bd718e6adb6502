#ifndef LINSET_ERRORS_HPP
#define LINSET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace linset {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class not_prime : public error {
 public:
  explicit not_prime(unsigned long long p)
      : error("not a prime: " + std::to_string(p)) {}
};

/// Raised before any enumeration whose cost exceeds the configured cap.
class size_cap_exceeded : public error {
 public:
  size_cap_exceeded(const std::string& what, unsigned long long cost,
                    unsigned long long cap)
      : error(what + ": cost " + std::to_string(cost) + " exceeds cap " +
              std::to_string(cap)),
        cost_(cost),
        cap_(cap) {}
  unsigned long long cost() const noexcept { return cost_; }
  unsigned long long cap() const noexcept { return cap_; }

 private:
  unsigned long long cost_;
  unsigned long long cap_;
};

class not_a_divisor : public error {
 public:
  not_a_divisor(unsigned r, unsigned n)
      : error(std::to_string(r) + " does not divide " + std::to_string(n)) {}
};

class context_mismatch : public error {
 public:
  context_mismatch() : error("operands live in different fields") {}
};

class precondition_violated : public error {
 public:
  explicit precondition_violated(const std::string& what)
      : error("precondition violated: " + what) {}
};

class zero_polynomial : public error {
 public:
  zero_polynomial() : error("operation undefined for the zero polynomial") {}
};

class profile_invalid : public error {
 public:
  explicit profile_invalid(const std::string& what)
      : error("invalid valuation profile: " + what) {}
};

class irreducibility_unverified : public error {
 public:
  explicit irreducibility_unverified(const std::string& what)
      : error("Kummer irreducibility not verified: " + what) {}
};

}  // namespace linset

#endif  // LINSET_ERRORS_HPP
