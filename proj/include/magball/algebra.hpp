#pragma once

// Finite Abelian groups Z_{m1} x ... x Z_{mr} and prime-power fields F_{p^m}.

#include <cstdint>
#include <span>
#include <vector>

#include "magball/common.hpp"

namespace magball {

/// Residue vector of a group element; residues[i] lies in [0, moduli[i]).
struct GroupElement {
  IntVector residues;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// The group Z_{m1} x ... x Z_{mr}. Immutable.
class GroupSpec {
 public:
  explicit GroupSpec(IntVector moduli);

  const IntVector& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  const BigInt& order() const { return order_; }

  /// Order as a machine integer; throws ResourceError above the group limit.
  std::uint64_t checked_order() const;

  GroupElement identity() const;
  /// Reduces arbitrary integers into canonical residues.
  GroupElement make(const IntVector& values) const;
  bool contains(const GroupElement& g) const;

  /// Mixed-radix index in [0, |G|), first coordinate most significant.
  std::uint64_t index_of(const GroupElement& g) const;
  GroupElement element_at(std::uint64_t index) const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.moduli_ == b.moduli_; }

 private:
  IntVector moduli_;
  BigInt order_;
};

GroupElement group_add(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement group_neg(const GroupSpec& g, const GroupElement& a);
/// c * a for any integer c, including c <= 0.
GroupElement scalar_mul(const GroupSpec& g, std::int64_t c, const GroupElement& a);

/// Order of the subgroup generated by `gens`, by breadth-first closure.
std::uint64_t subgroup_order(const GroupSpec& g, std::span<const GroupElement> gens);

/// G1 x G2 with moduli concatenated.
GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b);

/// Element of F_{p^m} packed as sum(c_i p^i) over its coefficient vector.
struct FieldElement {
  std::uint32_t value = 0;

  friend bool operator==(FieldElement, FieldElement) = default;
  friend auto operator<=>(FieldElement, FieldElement) = default;
};

/// F_{p^m} = F_p[x]/(f) for a monic primitive f; the class of x is the
/// primitive element. Exp/log tables are built once at construction.
class FieldSpec {
 public:
  /// `modulus` holds c_0..c_m in ascending degree, c_m = 1. Throws
  /// DomainError unless p is prime and the modulus is primitive.
  FieldSpec(std::uint32_t p, IntVector modulus);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint32_t size() const { return q_; }
  const IntVector& modulus() const { return modulus_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  /// The primitive element (class of x); equals the constant for m = 1.
  FieldElement generator() const { return exp_[1 % (q_ - 1)]; }
  FieldElement constant(std::int64_t c) const;
  FieldElement from_coefficients(const IntVector& coeffs) const;
  IntVector coefficients(FieldElement e) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const;
  /// generator^k for any integer k.
  FieldElement exp(std::int64_t k) const;
  FieldElement pow(FieldElement a, std::int64_t k) const;

  /// d in [0, q-2] with generator^d = e; DomainError for e = 0.
  std::uint32_t log(FieldElement e) const;

  bool contains(FieldElement e) const { return e.value < q_; }

 private:
  std::uint32_t p_;
  unsigned m_;
  std::uint32_t q_;
  IntVector modulus_;
  std::vector<FieldElement> exp_;
  std::vector<std::uint32_t> log_;
};

/// Lexicographically smallest monic primitive polynomial of degree m over
/// F_p, comparing coefficient lists from the leading term down to the
/// constant term.
FieldSpec find_primitive_polynomial(std::uint32_t p, unsigned m);

std::uint32_t discrete_log(const FieldSpec& field, FieldElement e);

/// Multiplicative order of the class of x modulo `modulus` over F_p, or 0 if
/// x is not a unit. Brute force; used to validate moduli.
std::uint64_t order_of_x(std::uint32_t p, const IntVector& modulus, std::uint64_t bound);

}  // namespace magball
