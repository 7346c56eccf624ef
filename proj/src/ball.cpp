#include "magball/ball.hpp"

#include "magball/enumerate.hpp"

namespace magball {

std::vector<std::vector<int>> combinations(int n, int w) {
  std::vector<std::vector<int>> out;
  for_each_combination(n, w, [&](std::span<const int> c) {
    out.emplace_back(c.begin(), c.end());
    return true;
  });
  return out;
}

std::vector<std::int64_t> magnitude_values(std::int64_t kplus, std::int64_t kminus) {
  std::vector<std::int64_t> v;
  for (auto c = -kminus; c <= kplus; ++c)
    if (c != 0) v.push_back(c);
  return v;
}

void BallSpec::validate() const {
  if (kminus < 0 || kminus > kplus) throw DomainError("ball requires 0 <= kminus <= kplus");
  if (kplus + kminus < 1) throw DomainError("ball requires kplus + kminus >= 1");
  if (t < 0 || t > n) throw DomainError("ball requires 0 <= t <= n");
}

BigInt ball_size(const BallSpec& spec) {
  spec.validate();
  BigInt total = 0;
  const BigInt k = spec.kplus + spec.kminus;
  for (int i = 0; i <= spec.t; ++i) total += binomial(spec.n, i) * ipow(k, i);
  return total;
}

void for_each_ball_vector(const BallSpec& spec,
                          const std::function<bool(std::span<const std::int64_t>)>& visit) {
  require_within(ball_size(spec), limits().enumeration, "ball size");
  const auto values = magnitude_values(spec.kplus, spec.kminus);
  const int nv = static_cast<int>(values.size());
  IntVector v(spec.n, 0);
  for (int w = 0; w <= spec.t; ++w) {
    bool go = for_each_combination(spec.n, w, [&](std::span<const int> support) {
      bool inner = for_each_tuple(nv, w, [&](std::span<const int> digits) {
        for (int j = 0; j < w; ++j) v[support[j]] = values[digits[j]];
        return visit(v);
      });
      for (int pos : support) v[pos] = 0;
      return inner;
    });
    if (!go) return;
  }
}

std::vector<IntVector> enumerate_ball(const BallSpec& spec) {
  std::vector<IntVector> out;
  for_each_ball_vector(spec, [&](std::span<const std::int64_t> v) {
    out.emplace_back(v.begin(), v.end());
    return true;
  });
  return out;
}

bool ball_contains(const BallSpec& spec, std::span<const std::int64_t> v) {
  spec.validate();
  if (static_cast<int>(v.size()) != spec.n)
    throw DomainError("vector length " + std::to_string(v.size()) + " != ball dimension " +
                      std::to_string(spec.n));
  int weight = 0;
  for (auto x : v) {
    if (x < -spec.kminus || x > spec.kplus) return false;
    if (x != 0) ++weight;
  }
  return weight <= spec.t;
}

}  // namespace magball
