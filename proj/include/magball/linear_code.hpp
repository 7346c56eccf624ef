#pragma once

// Linear codes over F_p (p prime) given by generator and parity-check
// matrices, plus the small amount of mod-p linear algebra they need.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "magball/algebra.hpp"

namespace magball {

using ModpMatrix = std::vector<IntVector>;

namespace modp {

struct Echelon {
  ModpMatrix rows;          // nonzero rows of the reduced row echelon form
  std::vector<int> pivots;  // pivot column of each row
};

Echelon rref(ModpMatrix a, std::int64_t p);
/// Basis of {x : A x^T = 0} as rows.
ModpMatrix nullspace(const ModpMatrix& a, int cols, std::int64_t p);
std::int64_t inverse(std::int64_t a, std::int64_t p);

}  // namespace modp

class LinearCode {
 public:
  /// Row-reduces `generator` (any spanning set) and derives a parity-check
  /// matrix. `claimed_distance` is recorded, not verified here.
  LinearCode(std::uint32_t p, ModpMatrix generator, int claimed_distance, std::string label = {});

  std::uint32_t p() const { return p_; }
  int n() const { return n_; }
  int k() const { return static_cast<int>(generator_.size()); }
  int claimed_distance() const { return claimed_distance_; }
  const std::string& label() const { return label_; }
  const ModpMatrix& generator() const { return generator_; }
  const ModpMatrix& parity_check() const { return parity_check_; }

  /// H y^T mod p.
  IntVector syndrome(std::span<const std::int64_t> y) const;
  bool contains(std::span<const std::int64_t> word) const;
  /// message (length k) times the generator, mod p.
  IntVector encode(std::span<const std::int64_t> message) const;

 private:
  std::uint32_t p_;
  int n_;
  ModpMatrix generator_;
  ModpMatrix parity_check_;
  int claimed_distance_;
  std::string label_;
};

/// Minimum Hamming weight over all nonzero codewords; ResourceError if p^k
/// exceeds the codeword limit.
int minimum_distance(const LinearCode& c);

struct BchCode {
  LinearCode code;
  /// Coefficients of the narrow-sense generator polynomial, ascending.
  IntVector generator_polynomial;
  int designed_distance = 0;
  int narrow_sense_dimension = 0;
  /// n - ceil((d-1)(1-1/p)) m
  int formula_dimension = 0;
  /// true when the generator matrix was cut down to formula_dimension rows
  bool expurgated = false;
  /// 2 <= d <= p^ceil(m/2) - 1
  bool in_guaranteed_range = false;
};

/// Primitive narrow-sense BCH code of length p^m - 1 and designed distance d.
/// If the narrow-sense code is larger than the dimension formula, the first
/// formula_dimension rows of its reduced generator matrix are kept.
BchCode bch_code(std::uint32_t p, unsigned m, int d);

int bch_formula_dimension(std::uint32_t p, unsigned m, int d);

}  // namespace magball
