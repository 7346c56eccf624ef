#pragma once

// Construction families for packings, lambda-packings and coverings of Z^n by
// the limited-magnitude error ball. Each family returns a splitter set (or a
// code / lattice input); nothing produced here is trusted until the splitting
// or lattice oracles confirm it.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "magball/ball.hpp"
#include "magball/lattice.hpp"
#include "magball/linear_code.hpp"
#include "magball/splitting.hpp"

namespace magball {

// ---------------------------------------------------------------------------
// B_t[N;1] sets

struct BtSet {
  enum class Provenance { s1, s2, search, shifted, given };

  std::int64_t modulus = 0;  // N
  IntVector elements;        // ascending residues in [0, N)
  int t = 0;
  Provenance provenance = Provenance::given;
};

std::string to_string(BtSet::Provenance p);

struct BtCheck {
  bool ok = true;
  /// Two distinct t-multisets (as ascending element lists) with equal sums.
  std::optional<std::pair<IntVector, IntVector>> witness;
};

/// Exhaustive: all t-multisets of A have distinct sums mod N.
BtCheck is_bt_set(const IntVector& a, std::int64_t modulus, int t);

/// {d_i : xi^{d_i} = xi + alpha_i} in Z_{q^t - 1}, xi primitive in F_{q^t}.
BtSet bose_chowla_s1(std::uint64_t q, int t);

struct S2Data {
  BtSet set;
  std::uint64_t q = 0;
  int t = 0;
  /// F_{q^{t+1}} built over the prime field; eta is its generator and F_q is
  /// the subfield {0} u <eta^N>.
  FieldSpec field;
  /// alpha_0 = 0, alpha_i = gamma^{i-1} with gamma = eta^N.
  std::vector<FieldElement> alpha;
  /// beta_i in F_q with beta_i eta^{s_i} = eta + alpha_i
  std::vector<FieldElement> beta;
  IntVector s;
};

/// {s_i} u {0} in Z_{(q^{t+1}-1)/(q-1)} with the per-index tables.
S2Data bose_chowla_s2(std::uint64_t q, int t);

/// Shifts A by its smallest element, drops 0, and returns the {1}-splitter of
/// Z_N with strength min(t, n).
SplitterSet bt_shift_to_splitter(const BtSet& a);

/// {(a, 1) : a in A} in Z_N x Z_{2t+1} with M = {-1, 1}.
SplitterSet bt_pm1_splitter(const BtSet& a, int t);

/// Backtracking search for a B_t[N;1] set containing 0, in increasing order.
struct BtSearchResult {
  BtSet best;
  bool reached = false;
  bool exhaustive = true;
};
BtSearchResult search_bt_set(std::int64_t modulus, int t, int target_size,
                             std::uint64_t node_budget = 10'000'000);

// ---------------------------------------------------------------------------
// k-fold Sidon sets

struct SidonParams {
  std::int64_t modulus = 0;  // N, gcd(N, k!) = 1
  int k = 1;
  IntVector elements;
};

struct SidonCheck {
  bool ok = true;
  std::array<std::int64_t, 4> coefficients{};
  std::array<std::int64_t, 4> solution{};
};

/// Every solution in A^4 of c.x = 0 (mod N), c in [-k,k]^4 with zero sum, is
/// trivial. DomainError unless gcd(N, k!) = 1.
SidonCheck is_kfold_sidon(const IntVector& a, std::int64_t modulus, int k);

struct SidonSearchResult {
  SidonParams best;
  bool reached = false;
  bool exhaustive = true;
};
SidonSearchResult search_kfold_sidon(std::int64_t modulus, int k, int target_size,
                                     std::uint64_t node_budget = 10'000'000);

/// {(1, x) : x in A} in Z_{2(kplus+kminus)+1} x Z_N, t = 2.
SplitterSet kfold_sidon_splitter(const SidonParams& a, std::int64_t kplus, std::int64_t kminus);

// ---------------------------------------------------------------------------
// Sphere sets (t = 2, kplus <= 3)

struct SphereClass {
  std::int64_t m = 0;      // squared norm
  IntVector encodings;     // sum x_i (alpha K + 1)^i, ascending
};

/// Nonempty classes C_m, m in [0, D K^2], partitioning all (K+1)^D digit vectors.
std::vector<SphereClass> behrend_sphere_sets(int dim, int max_digit, std::int64_t alpha);

std::int64_t behrend_alpha(std::int64_t kplus);

/// S_m = {(1, x, x^2)} in Z_{3kplus+2kminus+1} x Z_p x Z_p for the largest
/// class (smallest m on ties).
struct SphereSplitter {
  SplitterSet splitter;
  std::int64_t m;
};
SphereSplitter behrend_ruzsa_splitter(std::int64_t kplus, std::int64_t kminus, int dim,
                                      int max_digit, std::int64_t p);

// ---------------------------------------------------------------------------
// Codes

/// Lattice {x : x mod p in C}; requires kplus + kminus < p.
LatticeBasis code_lattice(const LinearCode& c, std::int64_t kplus, std::int64_t kminus);

/// The splitter of Z_p^{n-k} formed by the columns of H; its kernel lattice
/// equals code_lattice(c, ...).
SplitterSet code_splitter(const LinearCode& c, std::int64_t kplus, std::int64_t kminus, int t);

struct NonlinearPacking {
  std::uint64_t q = 0;
  std::vector<IntVector> codewords;
  BallSpec ball;
  Verdict verdict = Verdict::verified;
  /// refuted: indices of two codewords closer than 2t+1, or one ball
  /// translate overlap on the torus (codeword indices, then the two ball
  /// vectors).
  std::vector<IntVector> witness;
  std::string reason;
  /// M |B| / q^n
  Rational density;
};

/// Translate set {v : v mod q in C}. DomainError for empty C, ragged words or
/// kplus + kminus >= q.
NonlinearPacking nonlinear_code_pack(const std::vector<IntVector>& codewords, std::uint64_t q,
                                     std::int64_t kplus, std::int64_t kminus, int t);

// ---------------------------------------------------------------------------
// Coverings

/// A = {a in Z_{p^m} : least significant nonzero base-p digit is 1} with
/// M = [-kminus, p-1-kminus]*, t = 1. When p-1-kminus < kminus the set and
/// the magnitudes are negated so that M keeps kminus <= kplus.
SplitterSet covering_base_split(std::uint32_t p, unsigned m, std::int64_t kplus, std::int64_t kminus);

/// S^(t) in G^t: t coordinate-embedded copies of a complete 1-splitter.
SplitterSet product_splitter(const SplitterSet& base, int t);

/// Same group and elements with different magnitudes / t.
SplitterSet with_magnitudes(const SplitterSet& s, MagnitudeSet m, int t);

struct CoveringBaseline {
  BigInt code_size;
  Rational ln_upper;  // rational upper bound on ln(ell)
  Rational density;
};

/// ceil(n ell^n ln ell / |B|) |B| / ell^n with ln ell rounded up.
CoveringBaseline hamming_covering_baseline(const BallSpec& ball, std::int64_t ell);

// ---------------------------------------------------------------------------
// Random lambda-packings

struct LambdaSample {
  std::optional<SplitterSet> splitter;
  std::uint64_t lambda = 0;
  bool size_in_range = false;
  double window_low = 0;
  double window_high = 0;
  double inclusion_probability = 0;
  int attempts = 0;
  SplitReport histogram;
};

/// Includes each residue of Z_N independently with probability
/// N^{1/t - 1 - eps}, redrawing (next stream) while the sample is empty.
/// The splitter strength is min(t, |S|).
LambdaSample sample_lambda_splitter(std::int64_t modulus, int t, std::int64_t kplus,
                                    std::int64_t kminus, double epsilon, std::uint64_t seed,
                                    int jobs = 0);

/// The ball B(n, t, kplus, kminus) matching a splitter set.
BallSpec ball_of(const SplitterSet& s);
/// |B| / |G|
Rational split_density(const SplitterSet& s);

}  // namespace magball
