#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tplab::primes {

inline constexpr std::uint64_t kMaxSieveLimit = 100'000'000;

// Sorted list of all primes <= limit.
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::vector<std::uint64_t> primes, std::uint64_t limit)
      : primes_(std::move(primes)), limit_(limit) {}

  std::uint64_t limit() const { return limit_; }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return primes_[i]; }
  std::span<const std::uint64_t> values() const { return primes_; }
  auto begin() const { return primes_.begin(); }
  auto end() const { return primes_.end(); }

  bool contains(std::uint64_t n) const;
  // Number of primes <= x (x may exceed the limit only up to limit()).
  std::size_t count_up_to(std::uint64_t x) const;

 private:
  std::vector<std::uint64_t> primes_;
  std::uint64_t limit_ = 0;
};

// Segmented sieve of Eratosthenes. Throws std::invalid_argument for
// limit < 2 or limit > kMaxSieveLimit.
PrimeTable primes_up_to(std::uint64_t limit);

// Plain trial division, used as an independent check.
bool is_prime(std::uint64_t n);

struct MertensResult {
  double sum = 0.0;          // sum_{p <= X} 1/p
  double fitted_constant = 0.0;
  double approximation = 0.0;  // log log X + fitted_constant
};

MertensResult mertens_sum(std::uint64_t limit);

// Constant M with sum_{p<=X} 1/p ~ log log X + M, least-squares fitted once on
// X = 10^4 .. 10^7 and cached.
double mertens_fitted_constant();

}  // namespace tplab::primes
