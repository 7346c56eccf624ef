#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace magball {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<std::int64_t>;

/// Precondition on a value or on the relationship between arguments failed.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed one of the configured desk-scale limits.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Desk-scale resource bounds. Every exhaustive routine checks the relevant
/// bound before allocating or iterating.
struct Limits {
  std::uint64_t group_order = std::uint64_t{1} << 24;
  std::uint64_t field_size = std::uint64_t{1} << 20;
  std::uint64_t enumeration = 50'000'000;
  std::uint64_t coset_volume = 10'000'000;
  std::uint64_t syndrome_table = std::uint64_t{1} << 20;
  std::uint64_t codewords = 1'000'000;
};

/// Process-wide limits. Initialized from MAGBALL_LIMITS on first use.
const Limits& limits();
void set_limits(const Limits& l);

/// Parses "group=N,field=N,enum=N,volume=N,syndromes=N,codewords=N" on top
/// of `base`. Unknown keys or malformed numbers throw DomainError.
Limits parse_limits(std::string_view text, Limits base = {});

/// Throws ResourceError naming `what` if `value > bound`.
void require_within(const BigInt& value, std::uint64_t bound, std::string_view what);

BigInt binomial(unsigned n, unsigned k);
BigInt ipow(const BigInt& base, unsigned exp);

std::string to_string(const BigInt& v);
/// Exact "num/den" in lowest terms.
std::string to_string(const Rational& r);
double to_double(const Rational& r);

bool is_prime(std::uint64_t n);
/// Returns (p, m) with q = p^m, or throws DomainError if q is not a prime power.
std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t gcd(std::int64_t a, std::int64_t b);

}  // namespace magball
