#pragma once

// Decoders for two lattice families: the Bose-Chowla S2 lattice (error
// locator via x^s mod the minimal polynomial of eta) and code lattices
// {x : x mod p in C} decoded through a coset-leader table for C.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "magball/constructions.hpp"
#include "magball/linear_code.hpp"

namespace magball {

/// Field multiplications and additions performed by one decode.
struct OpCount {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;
  std::uint64_t total() const { return mul + add; }
};

struct DecodeResult {
  enum class Status { ok, fail };
  Status status = Status::ok;
  IntVector decoded;
  IntVector error;
  /// Set on failure, and on success beyond the guaranteed radius.
  std::string note;
  bool beyond_guarantee = false;
  OpCount ops;

  bool ok() const { return status == Status::ok; }
};

class S2DecoderContext {
 public:
  S2DecoderContext(std::uint64_t q, int t);

  const S2Data& data() const { return data_; }
  const FieldSpec& field() const { return data_.field; }
  std::uint64_t q() const { return data_.q; }
  int t() const { return data_.t; }
  std::int64_t modulus() const { return data_.set.modulus; }
  /// Monic minimal polynomial of eta over F_q, ascending, degree t+1.
  const std::vector<FieldElement>& minimal_polynomial() const { return min_poly_; }
  /// {s_0, ..., s_{q-1}} in Z_N with M = {1}; position i carries alpha_i.
  const SplitterSet& splitter() const { return splitter_; }

 private:
  S2Data data_;
  std::vector<FieldElement> min_poly_;
  SplitterSet splitter_;
};

/// Corrects up to t unit increases (B(q, t, 1, 0)). `locator`, if given,
/// receives r(x) = x^s mod P(x).
DecodeResult decode_s2(const S2DecoderContext& ctx, std::span<const std::int64_t> y,
                       std::vector<FieldElement>* locator = nullptr);

/// The monic normalization of r equals prod_{i in positions} (x + alpha_i).
bool s2_locator_matches(const S2DecoderContext& ctx, const std::vector<FieldElement>& r,
                        std::span<const int> positions);

/// Coset-leader table of a linear code, filled in weight-major order.
class SyndromeDecoder {
 public:
  explicit SyndromeDecoder(const LinearCode& code);

  /// floor((d-1)/2) for the claimed distance d.
  int guaranteed_radius() const { return radius_; }
  std::uint64_t table_size() const { return leaders_.size(); }
  /// Lightest error pattern (entries in [0, p)) with this syndrome.
  const IntVector& leader(std::span<const std::int64_t> syndrome) const;

 private:
  std::uint64_t index(std::span<const std::int64_t> syndrome) const;

  std::uint32_t p_;
  int radius_;
  std::vector<IntVector> leaders_;
};

SyndromeDecoder build_syndrome_decoder(const LinearCode& c);

class ModPDecoderContext {
 public:
  ModPDecoderContext(LinearCode code, std::int64_t kplus, std::int64_t kminus);

  const LinearCode& code() const { return code_; }
  std::int64_t kplus() const { return kplus_; }
  std::int64_t kminus() const { return kminus_; }
  const SyndromeDecoder& inner() const { return inner_; }
  /// B(n, radius, kplus, kminus)
  BallSpec ball() const;

 private:
  LinearCode code_;
  std::int64_t kplus_;
  std::int64_t kminus_;
  SyndromeDecoder inner_;
};

/// Reduces y mod p, finds the coset leader eps, lifts e_i = eps_i when
/// eps_i <= kplus and eps_i - p otherwise, returns y - e. A lifted error
/// outside the ball is reported as a failure.
DecodeResult decode_mod_p(const ModPDecoderContext& ctx, std::span<const std::int64_t> y);

}  // namespace magball
