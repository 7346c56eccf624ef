#pragma once

// Exhaustive checkers for partial t-splitting (packing), complete t-splitting
// (covering) and representation multiplicity (lambda-packing) of a finite
// Abelian group by a splitter set S with magnitude set M = [-kminus, kplus]*.
//
// The OpenMP kernels shard the coefficient-vector space by support subset and
// accumulate into one atomic count table indexed by group element. Witnesses
// are extracted by a serial ordered rescan, so every report is independent of
// the number of workers. The `reference` namespace holds a brute-force serial
// implementation kept for testing.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "magball/algebra.hpp"

namespace magball {

struct MagnitudeSet {
  std::int64_t kplus = 1;
  std::int64_t kminus = 0;

  void validate() const;
  /// [-kminus, kplus] \ {0}, ascending.
  std::vector<std::int64_t> values() const;
  std::int64_t size() const { return kplus + kminus; }

  friend bool operator==(const MagnitudeSet&, const MagnitudeSet&) = default;
};

/// Ordered splitter elements s_1..s_n of a group together with M and t.
class SplitterSet {
 public:
  /// Throws DomainError if elements repeat, leave the group, n < 1, or t is
  /// outside [1, n].
  SplitterSet(GroupSpec group, std::vector<GroupElement> elements, MagnitudeSet magnitudes, int t);

  const GroupSpec& group() const { return group_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const MagnitudeSet& magnitudes() const { return magnitudes_; }
  int t() const { return t_; }
  int n() const { return static_cast<int>(elements_.size()); }

  /// sum_{i=1}^{t} C(n,i) |M|^i
  BigInt nonzero_combinations() const;

 private:
  GroupSpec group_;
  std::vector<GroupElement> elements_;
  MagnitudeSet magnitudes_;
  int t_;
};

enum class Verdict { verified, refuted };

struct SplitWitness {
  enum class Kind { zero_image, collision, uncovered };
  Kind kind;
  /// zero_image: first = e with phi(e) = 0. collision: phi(first) = phi(second),
  /// first precedes second in enumeration order. uncovered: both empty.
  IntVector first;
  IntVector second;
  /// The shared image, or the uncovered element.
  GroupElement element;
};

struct SplitReport {
  Verdict verdict = Verdict::verified;
  std::optional<SplitWitness> witness;
  /// Number of distinct group elements phi(e), wt(e) <= t.
  std::uint64_t image_size = 0;
  /// Present for multiplicity_histogram only.
  std::optional<std::uint64_t> lambda;
  /// multiplicity -> number of group elements with that many representations.
  std::map<std::uint64_t, std::uint64_t> histogram;

  bool verified() const { return verdict == Verdict::verified; }
};

/// e . (s_1, ..., s_n) in G.
GroupElement phi(const SplitterSet& s, std::span<const std::int64_t> e);

/// jobs <= 0 uses the OpenMP default.
SplitReport check_partial_split(const SplitterSet& s, int jobs = 0);
SplitReport check_complete_split(const SplitterSet& s, int jobs = 0);
SplitReport multiplicity_histogram(const SplitterSet& s, int jobs = 0);

/// Number of representations e in (M u {0})^n, wt(e) <= t, of every group
/// element (indexed by GroupSpec::index_of). The zero vector counts once for
/// the identity.
std::vector<std::uint32_t> representation_counts(const SplitterSet& s, int jobs = 0);

namespace reference {

/// Serial brute force over all of (M u {0})^n. Verdicts, lambda, histogram
/// and image size only; no witness ordering guarantees.
SplitReport check_partial_split(const SplitterSet& s);
SplitReport check_complete_split(const SplitterSet& s);
SplitReport multiplicity_histogram(const SplitterSet& s);

}  // namespace reference

}  // namespace magball
