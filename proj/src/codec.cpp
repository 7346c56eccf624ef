#include "magball/codec.hpp"

#include <algorithm>

#include "magball/enumerate.hpp"

namespace magball {

namespace {

using Poly = std::vector<FieldElement>;  // ascending coefficients

SplitterSet s2_splitter(const S2Data& d) {
  GroupSpec g({d.set.modulus});
  std::vector<GroupElement> s;
  for (auto si : d.s) s.push_back(g.make({si}));
  const int t = std::min<int>(d.t, static_cast<int>(s.size()));
  return SplitterSet(std::move(g), std::move(s), MagnitudeSet{1, 0}, t);
}

Poly eta_minimal_polynomial(const S2Data& d) {
  const auto& f = d.field;
  const std::int64_t order = f.size() - 1;
  Poly p{f.one()};
  std::int64_t e = 1;  // q^j mod (Q - 1)
  for (int j = 0; j <= d.t; ++j) {
    const auto root = f.exp(e);
    Poly next(p.size() + 1, f.zero());
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], p[i]);
      next[i] = f.sub(next[i], f.mul(root, p[i]));
    }
    p = std::move(next);
    e = static_cast<std::int64_t>((static_cast<__int128>(e) * static_cast<__int128>(d.q)) % order);
  }
  const auto n_mod = order / static_cast<std::int64_t>(d.q - 1);
  for (auto c : p)
    if (c.value != 0 && f.log(c) % n_mod != 0) throw std::logic_error("minimal polynomial coefficient outside F_q");
  return p;
}

// Polynomial arithmetic modulo the monic P (degree t+1) with counted ops.
struct Ring {
  const FieldSpec& f;
  const Poly& modulus;
  OpCount& ops;

  int deg() const { return static_cast<int>(modulus.size()) - 1; }

  void reduce(Poly& a) const {
    const int d = deg();
    for (int k = static_cast<int>(a.size()) - 1; k >= d; --k) {
      const auto c = a[k];
      for (int j = 0; j < d; ++j) {
        a[k - d + j] = f.sub(a[k - d + j], f.mul(c, modulus[j]));
        ++ops.mul;
        ++ops.add;
      }
      a[k] = f.zero();
    }
    a.resize(d);
  }

  Poly square(const Poly& a) const {
    Poly out(2 * a.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) {
        out[i + j] = f.add(out[i + j], f.mul(a[i], a[j]));
        ++ops.mul;
        ++ops.add;
      }
    reduce(out);
    return out;
  }

  Poly times_x(const Poly& a) const {
    Poly out(a.size() + 1, f.zero());
    std::copy(a.begin(), a.end(), out.begin() + 1);
    reduce(out);
    return out;
  }
};

int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i].value != 0) return i;
  return -1;
}

}  // namespace

S2DecoderContext::S2DecoderContext(std::uint64_t q, int t)
    : data_(bose_chowla_s2(q, t)), min_poly_(eta_minimal_polynomial(data_)), splitter_(s2_splitter(data_)) {}

DecodeResult decode_s2(const S2DecoderContext& ctx, std::span<const std::int64_t> y,
                       std::vector<FieldElement>* locator) {
  const auto& d = ctx.data();
  const auto& f = ctx.field();
  const auto q = static_cast<int>(ctx.q());
  if (static_cast<int>(y.size()) != q)
    throw DomainError("S2 decoder expects a vector of length " + std::to_string(q));
  const std::int64_t n_mod = ctx.modulus();

  DecodeResult out;
  std::int64_t s = 0;
  for (int i = 0; i < q; ++i)
    s = mod(s + static_cast<std::int64_t>(static_cast<__int128>(mod(y[i], n_mod)) * d.s[i] % n_mod), n_mod);

  // r(x) = x^s mod P(x), square-and-multiply from the top bit
  Ring ring{f, ctx.minimal_polynomial(), out.ops};
  Poly r(ring.deg(), f.zero());
  if (s == 0) {
    r[0] = f.one();
  } else {
    r[1] = f.one();  // deg P = t + 1 >= 3
    for (int bit = 62 - __builtin_clzll(static_cast<unsigned long long>(s)); bit >= 0; --bit) {
      r = ring.square(r);
      if ((s >> bit) & 1) r = ring.times_x(r);
    }
  }
  if (locator) *locator = r;

  const int deg = degree(r);
  std::vector<int> positions;
  for (int i = 0; i < q; ++i) {
    // Horner at -alpha_i
    const auto x = f.neg(d.alpha[i]);
    auto acc = r[deg];
    for (int k = deg - 1; k >= 0; --k) {
      acc = f.add(f.mul(acc, x), r[k]);
      ++out.ops.mul;
      ++out.ops.add;
    }
    if (acc.value == 0) positions.push_back(i);
  }

  if (static_cast<int>(positions.size()) != deg) {
    out.status = DecodeResult::Status::fail;
    out.note = "locator of degree " + std::to_string(deg) + " has " + std::to_string(positions.size()) +
               " roots among -alpha_i";
    return out;
  }
  out.error.assign(q, 0);
  for (int i : positions) out.error[i] = 1;
  out.decoded.assign(y.begin(), y.end());
  for (int i = 0; i < q; ++i) out.decoded[i] -= out.error[i];

  std::int64_t check = 0;
  for (int i = 0; i < q; ++i)
    check = mod(check + static_cast<std::int64_t>(static_cast<__int128>(mod(out.decoded[i], n_mod)) * d.s[i] % n_mod),
                n_mod);
  if (check != 0) {
    out.status = DecodeResult::Status::fail;
    out.note = "corrected word is not in the lattice";
  }
  return out;
}

bool s2_locator_matches(const S2DecoderContext& ctx, const std::vector<FieldElement>& r,
                        std::span<const int> positions) {
  const auto& f = ctx.field();
  const int deg = degree(r);
  if (deg < 0) return false;
  const auto lead = f.inv(r[deg]);
  Poly monic(r.begin(), r.begin() + deg + 1);
  for (auto& c : monic) c = f.mul(c, lead);

  Poly prod{f.one()};
  for (int i : positions) {
    Poly next(prod.size() + 1, f.zero());
    for (std::size_t k = 0; k < prod.size(); ++k) {
      next[k + 1] = f.add(next[k + 1], prod[k]);
      next[k] = f.add(next[k], f.mul(ctx.data().alpha[i], prod[k]));
    }
    prod = std::move(next);
  }
  return prod == monic;
}

// ---------------------------------------------------------------------------

SyndromeDecoder::SyndromeDecoder(const LinearCode& code) : p_(code.p()) {
  const int n = code.n();
  const int r = n - code.k();
  const auto size = ipow(BigInt(p_), r);
  require_within(size, limits().syndrome_table, "syndrome table");
  const int d = std::max(code.claimed_distance(), 1);
  radius_ = (d - 1) / 2;
  leaders_.assign(size.convert_to<std::uint64_t>(), {});

  std::uint64_t filled = 0, visited = 0;
  const auto total = leaders_.size();
  IntVector e(n, 0);
  for (int w = 0; w <= n && filled < total; ++w) {
    for_each_combination(n, w, [&](std::span<const int> support) {
      return for_each_tuple(static_cast<int>(p_) - 1, w, [&](std::span<const int> digits) {
        if (++visited > limits().enumeration) throw ResourceError("syndrome table fill exceeds enumeration limit");
        std::fill(e.begin(), e.end(), 0);
        for (int j = 0; j < w; ++j) e[support[j]] = digits[j] + 1;
        auto& slot = leaders_[index(code.syndrome(e))];
        if (slot.empty()) {
          slot = e;
          ++filled;
        }
        return filled < total;
      });
    });
  }
}

std::uint64_t SyndromeDecoder::index(std::span<const std::int64_t> syndrome) const {
  std::uint64_t idx = 0;
  for (auto v : syndrome) idx = idx * p_ + static_cast<std::uint64_t>(mod(v, p_));
  return idx;
}

const IntVector& SyndromeDecoder::leader(std::span<const std::int64_t> syndrome) const {
  return leaders_.at(index(syndrome));
}

SyndromeDecoder build_syndrome_decoder(const LinearCode& c) { return SyndromeDecoder(c); }

ModPDecoderContext::ModPDecoderContext(LinearCode code, std::int64_t kplus, std::int64_t kminus)
    : code_(std::move(code)), kplus_(kplus), kminus_(kminus), inner_(code_) {
  MagnitudeSet{kplus, kminus}.validate();
  if (kplus + kminus >= static_cast<std::int64_t>(code_.p()))
    throw DomainError("mod-p decoding requires kplus + kminus < p");
}

BallSpec ModPDecoderContext::ball() const {
  return BallSpec{code_.n(), std::min(inner_.guaranteed_radius(), code_.n()), kplus_, kminus_};
}

DecodeResult decode_mod_p(const ModPDecoderContext& ctx, std::span<const std::int64_t> y) {
  const auto& c = ctx.code();
  if (static_cast<int>(y.size()) != c.n())
    throw DomainError("mod-p decoder expects a vector of length " + std::to_string(c.n()));
  const auto p = static_cast<std::int64_t>(c.p());
  DecodeResult out;
  const auto& eps = ctx.inner().leader(c.syndrome(y));
  const auto weight = std::count_if(eps.begin(), eps.end(), [](auto v) { return v != 0; });
  out.beyond_guarantee = weight > ctx.inner().guaranteed_radius();

  out.error.resize(c.n());
  for (int i = 0; i < c.n(); ++i) out.error[i] = eps[i] <= ctx.kplus() ? eps[i] : eps[i] - p;
  out.decoded.assign(y.begin(), y.end());
  for (int i = 0; i < c.n(); ++i) out.decoded[i] -= out.error[i];

  if (!ball_contains(ctx.ball(), out.error)) {
    out.status = DecodeResult::Status::fail;
    out.note = out.beyond_guarantee ? "coset leader beyond the guaranteed radius"
                                    : "lifted error outside the magnitude range";
  } else if (!c.contains(out.decoded)) {
    out.status = DecodeResult::Status::fail;
    out.note = "corrected word is not in the lattice";
  }
  return out;
}

}  // namespace magball
