#include "tplab/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tplab/parallel.hpp"

namespace tplab::primes {

bool PrimeTable::contains(std::uint64_t n) const {
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::count_up_to(std::uint64_t x) const {
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

namespace {

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

constexpr std::uint64_t kSegment = 1u << 18;

}  // namespace

PrimeTable primes_up_to(std::uint64_t limit) {
  if (limit < 2)
    throw std::invalid_argument("primes_up_to: limit must be >= 2");
  if (limit > kMaxSieveLimit)
    throw std::invalid_argument("primes_up_to: limit " + std::to_string(limit) +
                                " exceeds " + std::to_string(kMaxSieveLimit));

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  const std::vector<std::uint64_t> base = simple_sieve(root);

  std::vector<std::uint64_t> primes;
  if (limit > 1000)
    primes.reserve(static_cast<std::size_t>(1.1 * limit / std::log(static_cast<double>(limit))));

  std::vector<unsigned char> seg(kSegment);
  for (std::uint64_t lo = 2; lo <= limit; lo += kSegment) {
    const std::uint64_t hi = std::min(lo + kSegment - 1, limit);
    std::fill(seg.begin(), seg.begin() + (hi - lo + 1), 1);
    for (std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = 0;
    }
    for (std::uint64_t i = lo; i <= hi; ++i)
      if (seg[i - lo]) primes.push_back(i);
  }
  return PrimeTable(std::move(primes), limit);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

double mertens_fitted_constant() {
  static const double constant = [] {
    const PrimeTable table = primes_up_to(10'000'000);
    // residuals at X = 10^4, 10^4.25, ..., 10^7
    CompensatedSum acc;
    std::size_t idx = 0;
    int count = 0;
    CompensatedSum partial;
    for (int e = 0; e <= 12; ++e) {
      const auto X = static_cast<std::uint64_t>(std::pow(10.0, 4.0 + 0.25 * e));
      while (idx < table.size() && table[idx] <= X) {
        partial.add(1.0 / static_cast<double>(table[idx]));
        ++idx;
      }
      acc.add(partial.value() - std::log(std::log(static_cast<double>(X))));
      ++count;
    }
    return acc.value() / count;
  }();
  return constant;
}

MertensResult mertens_sum(std::uint64_t limit) {
  if (limit < 2) throw std::invalid_argument("mertens_sum: limit must be >= 2");
  const PrimeTable table = primes_up_to(limit);
  CompensatedSum acc;
  for (std::uint64_t p : table) acc.add(1.0 / static_cast<double>(p));
  MertensResult r;
  r.sum = acc.value();
  r.fitted_constant = mertens_fitted_constant();
  r.approximation = std::log(std::log(static_cast<double>(limit))) + r.fitted_constant;
  return r;
}

}  // namespace tplab::primes
