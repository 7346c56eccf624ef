#include "magball/common.hpp"

#include <charconv>
#include <cstdlib>
#include <numeric>

namespace magball {

namespace {

Limits& mutable_limits() {
  static Limits instance = [] {
    const char* env = std::getenv("MAGBALL_LIMITS");
    return env ? parse_limits(env) : Limits{};
  }();
  return instance;
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw DomainError("malformed limit value '" + std::string(s) + "'");
  return out;
}

}  // namespace

const Limits& limits() { return mutable_limits(); }

void set_limits(const Limits& l) { mutable_limits() = l; }

Limits parse_limits(std::string_view text, Limits base) {
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw DomainError("limit entry '" + std::string(item) + "' is not key=value");
    auto key = item.substr(0, eq);
    auto value = parse_u64(item.substr(eq + 1));
    if (key == "group") base.group_order = value;
    else if (key == "field") base.field_size = value;
    else if (key == "enum") base.enumeration = value;
    else if (key == "volume") base.coset_volume = value;
    else if (key == "syndromes") base.syndrome_table = value;
    else if (key == "codewords") base.codewords = value;
    else throw DomainError("unknown limit '" + std::string(key) + "'");
  }
  return base;
}

void require_within(const BigInt& value, std::uint64_t bound, std::string_view what) {
  if (value > bound)
    throw ResourceError(std::string(what) + " " + to_string(value) + " exceeds limit " +
                        std::to_string(bound));
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt ipow(const BigInt& base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {q, 1};
  unsigned m = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
  return {p, m};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  auto r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

}  // namespace magball
