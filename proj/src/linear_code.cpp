#include "magball/linear_code.hpp"

#include <algorithm>
#include <set>

#include "magball/enumerate.hpp"

namespace magball {

namespace modp {

std::int64_t inverse(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) throw DomainError("zero has no inverse mod p");
  // Fermat; p is prime and small
  std::int64_t r = 1, b = a, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

Echelon rref(ModpMatrix a, std::int64_t p) {
  Echelon out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (auto& row : a)
    for (auto& x : row) x = mod(x, p);
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t piv = pr;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[pr], a[piv]);
    auto inv = inverse(a[pr][c], p);
    for (auto& x : a[pr]) x = x * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr || a[i][c] == 0) continue;
      auto f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod(a[i][j] - f * a[pr][j], p);
    }
    out.pivots.push_back(static_cast<int>(c));
    ++pr;
  }
  a.resize(pr);
  out.rows = std::move(a);
  return out;
}

ModpMatrix nullspace(const ModpMatrix& a, int cols, std::int64_t p) {
  auto e = rref(a, p);
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivots) is_pivot[c] = true;
  ModpMatrix basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    IntVector v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = mod(-e.rows[r][free], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace modp

LinearCode::LinearCode(std::uint32_t p, ModpMatrix generator, int claimed_distance, std::string label)
    : p_(p), n_(0), claimed_distance_(claimed_distance), label_(std::move(label)) {
  if (!is_prime(p)) throw DomainError("code alphabet size " + std::to_string(p) + " is not prime");
  if (generator.empty()) throw DomainError("generator matrix has no rows");
  n_ = static_cast<int>(generator[0].size());
  if (n_ < 1) throw DomainError("code length must be >= 1");
  for (const auto& row : generator)
    if (static_cast<int>(row.size()) != n_) throw DomainError("ragged generator matrix");
  generator_ = modp::rref(std::move(generator), p_).rows;
  if (generator_.empty()) throw DomainError("generator matrix has rank 0");
  parity_check_ = modp::nullspace(generator_, n_, p_);
}

IntVector LinearCode::syndrome(std::span<const std::int64_t> y) const {
  if (static_cast<int>(y.size()) != n_) throw DomainError("word length does not match the code");
  IntVector s(parity_check_.size(), 0);
  for (std::size_t r = 0; r < parity_check_.size(); ++r) {
    std::int64_t acc = 0;
    for (int j = 0; j < n_; ++j) acc = (acc + parity_check_[r][j] * mod(y[j], p_)) % p_;
    s[r] = acc;
  }
  return s;
}

bool LinearCode::contains(std::span<const std::int64_t> word) const {
  auto s = syndrome(word);
  return std::all_of(s.begin(), s.end(), [](auto x) { return x == 0; });
}

IntVector LinearCode::encode(std::span<const std::int64_t> message) const {
  if (static_cast<int>(message.size()) != k()) throw DomainError("message length does not match k");
  IntVector w(n_, 0);
  for (int i = 0; i < k(); ++i) {
    auto c = mod(message[i], p_);
    if (c == 0) continue;
    for (int j = 0; j < n_; ++j) w[j] = (w[j] + c * generator_[i][j]) % p_;
  }
  return w;
}

int minimum_distance(const LinearCode& c) {
  require_within(ipow(BigInt(c.p()), c.k()), limits().codewords, "codeword count");
  int best = c.n() + 1;
  IntVector msg(c.k());
  for_each_tuple(static_cast<int>(c.p()), c.k(), [&](std::span<const int> d) {
    bool zero = true;
    for (int i = 0; i < c.k(); ++i) {
      msg[i] = d[i];
      zero = zero && d[i] == 0;
    }
    if (zero) return true;
    auto w = c.encode(msg);
    int weight = static_cast<int>(std::count_if(w.begin(), w.end(), [](auto x) { return x != 0; }));
    best = std::min(best, weight);
    return true;
  });
  return best;
}

int bch_formula_dimension(std::uint32_t p, unsigned m, int d) {
  const std::int64_t n = ipow(BigInt(p), m).convert_to<std::int64_t>() - 1;
  // ceil((d-1)(p-1)/p)
  const std::int64_t num = static_cast<std::int64_t>(d - 1) * (p - 1);
  const std::int64_t ceil = (num + p - 1) / p;
  return static_cast<int>(n - ceil * static_cast<std::int64_t>(m));
}

BchCode bch_code(std::uint32_t p, unsigned m, int d) {
  if (!is_prime(p)) throw DomainError("BCH alphabet " + std::to_string(p) + " is not prime");
  if (m < 1) throw DomainError("BCH extension degree must be >= 1");
  const auto field = find_primitive_polynomial(p, m);
  const int n = static_cast<int>(field.size()) - 1;
  if (d < 2 || d > n) throw DomainError("BCH designed distance must lie in [2, n]");

  std::set<std::int64_t> roots;
  for (int j = 1; j < d; ++j) {
    std::int64_t e = j % n;
    do {
      roots.insert(e);
      e = e * p % n;
    } while (e != j % n);
  }

  // prod (x - xi^i), coefficients ascending
  std::vector<FieldElement> g{field.one()};
  for (auto i : roots) {
    auto r = field.exp(i);
    std::vector<FieldElement> next(g.size() + 1, field.zero());
    for (std::size_t j = 0; j < g.size(); ++j) {
      next[j + 1] = field.add(next[j + 1], g[j]);
      next[j] = field.sub(next[j], field.mul(r, g[j]));
    }
    g = std::move(next);
  }
  IntVector gpoly;
  for (auto c : g) {
    if (c.value >= p) throw std::logic_error("BCH generator coefficient outside the prime field");
    gpoly.push_back(c.value);
  }

  const int deg = static_cast<int>(gpoly.size()) - 1;
  const int k_ns = n - deg;
  ModpMatrix gen;
  for (int i = 0; i < k_ns; ++i) {
    IntVector row(n, 0);
    for (int j = 0; j <= deg; ++j) row[i + j] = gpoly[j];
    gen.push_back(std::move(row));
  }

  const int k_formula = bch_formula_dimension(p, m, d);
  bool expurgated = false;
  if (k_ns > k_formula && k_formula >= 1) {
    gen = modp::rref(gen, p).rows;
    gen.resize(k_formula);
    expurgated = true;
  }
  const auto limit = ipow(BigInt(p), (m + 1) / 2) - 1;

  std::string label = "bch(p=" + std::to_string(p) + ",m=" + std::to_string(m) +
                      ",d=" + std::to_string(d) + ")";
  return BchCode{LinearCode(p, std::move(gen), d, std::move(label)),
                 std::move(gpoly),
                 d,
                 k_ns,
                 k_formula,
                 expurgated,
                 BigInt(d) <= limit};
}

}  // namespace magball
