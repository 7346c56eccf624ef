#pragma once

// Integer lattices in Z^n: kernel lattices of splitting homomorphisms, exact
// Hermite/Smith normal forms, membership, and the geometric packing/covering
// oracles. All arithmetic is exact; nothing here uses floating point.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "magball/ball.hpp"
#include "magball/splitting.hpp"

namespace magball {

using IntMatrix = std::vector<std::vector<BigInt>>;

IntMatrix to_big(const std::vector<IntVector>& m);
BigInt determinant(const IntMatrix& square);

/// Row-style Hermite normal form: nonzero rows of the echelon form, positive
/// pivots, entries above each pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(IntMatrix a);

struct SmithForm {
  IntMatrix u;      // m x m unimodular
  IntMatrix d;      // m x n diagonal, d_i | d_{i+1}, nonnegative
  IntMatrix v;      // n x n unimodular
  IntMatrix v_inv;  // inverse of v
  std::vector<BigInt> diagonal() const;
};

/// U * A * V = D.
SmithForm smith_normal_form(const IntMatrix& a);

/// Full-rank lattice in Z^n stored as its n x n upper-triangular HNF.
class LatticeBasis {
 public:
  /// HNF of the row span of `generators`; DomainError unless rank = n.
  static LatticeBasis from_generators(const IntMatrix& generators, int n, std::string source = {});

  int n() const { return static_cast<int>(rows_.size()); }
  const IntMatrix& rows() const { return rows_; }
  const BigInt& volume() const { return volume_; }
  const std::string& source() const { return source_; }

 private:
  IntMatrix rows_;
  BigInt volume_;
  std::string source_;
};

/// Basis of {x in Z^n : sum x_i s_i = 0 in G}.
LatticeBasis kernel_lattice(const SplitterSet& s);

bool lattice_contains(const LatticeBasis& l, std::span<const std::int64_t> v);

/// Maps x in Z^n to its coset of Z^n / L via the Smith invariants of L.
class CosetMap {
 public:
  explicit CosetMap(const LatticeBasis& l);

  /// Nontrivial invariant factors d_i > 1 of Z^n / L.
  const std::vector<std::int64_t>& invariants() const { return invariants_; }
  std::uint64_t volume() const { return volume_; }
  /// Mixed-radix coset id in [0, volume).
  std::uint64_t coset_of(std::span<const std::int64_t> x) const;
  /// A vector lying in coset `id`.
  IntVector representative(std::uint64_t id) const;

 private:
  int n_ = 0;
  std::vector<std::int64_t> invariants_;
  std::vector<int> columns_;                 // which SNF columns are nontrivial
  std::vector<std::vector<std::int64_t>> v_mod_;  // v_mod_[k][j] = V[k][columns_[j]] mod d_j
  IntMatrix v_inv_;
  std::uint64_t volume_ = 1;
};

struct GeometricReport {
  Verdict verdict = Verdict::verified;
  /// packing: two distinct ball vectors in one coset; covering: one vector
  /// from an uncovered coset.
  std::vector<IntVector> witness;
  /// max number of ball vectors in one coset (lambda_geometric only)
  std::optional<std::uint64_t> lambda;
  std::uint64_t cosets_hit = 0;

  bool verified() const { return verdict == Verdict::verified; }
};

/// Verified iff distinct ball vectors never differ by a lattice vector.
GeometricReport verify_packing_geometric(const LatticeBasis& l, const BallSpec& ball, int jobs = 0);
/// Verified iff every coset of Z^n / L contains a ball vector.
GeometricReport verify_covering_geometric(const LatticeBasis& l, const BallSpec& ball, int jobs = 0);
/// Largest number of lattice translates of the ball containing one point.
GeometricReport lambda_geometric(const LatticeBasis& l, const BallSpec& ball, int jobs = 0);

/// |B| / vol(L), exact.
Rational density(const LatticeBasis& l, const BallSpec& ball);

namespace reference {

/// Pairwise check b - b' not in L over all distinct ball vectors.
GeometricReport verify_packing_pairwise(const LatticeBasis& l, const BallSpec& ball);

}  // namespace reference

}  // namespace magball
