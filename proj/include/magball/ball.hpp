#pragma once

// The limited-magnitude error ball: integer vectors of length n with at most
// t nonzero entries, each entry in [-kminus, kplus].

#include <functional>
#include <span>
#include <vector>

#include "magball/common.hpp"

namespace magball {

struct BallSpec {
  int n = 0;
  int t = 0;
  std::int64_t kplus = 0;
  std::int64_t kminus = 0;

  /// Throws DomainError unless 0 <= kminus <= kplus, kplus + kminus >= 1,
  /// 0 <= t <= n.
  void validate() const;

  friend bool operator==(const BallSpec&, const BallSpec&) = default;
};

/// sum_{i=0}^{t} C(n,i) (kplus + kminus)^i
BigInt ball_size(const BallSpec& spec);

/// Visits every ball vector in weight-major order (weight, then support
/// lexicographic, then values lexicographic). The visitor may return false
/// to stop. Throws ResourceError if the ball exceeds the enumeration limit.
void for_each_ball_vector(const BallSpec& spec,
                          const std::function<bool(std::span<const std::int64_t>)>& visit);

std::vector<IntVector> enumerate_ball(const BallSpec& spec);

bool ball_contains(const BallSpec& spec, std::span<const std::int64_t> v);

}  // namespace magball
