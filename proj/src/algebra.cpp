#include "magball/algebra.hpp"

#include <algorithm>
#include <deque>

namespace magball {

// ---------------------------------------------------------------------------
// Groups

GroupSpec::GroupSpec(IntVector moduli) : moduli_(std::move(moduli)), order_(1) {
  if (moduli_.empty()) throw DomainError("group needs at least one modulus");
  for (auto m : moduli_) {
    if (m < 1) throw DomainError("group modulus " + std::to_string(m) + " < 1");
    order_ *= m;
  }
}

std::uint64_t GroupSpec::checked_order() const {
  require_within(order_, limits().group_order, "group order");
  return order_.convert_to<std::uint64_t>();
}

GroupElement GroupSpec::identity() const { return {IntVector(moduli_.size(), 0)}; }

GroupElement GroupSpec::make(const IntVector& values) const {
  if (values.size() != moduli_.size())
    throw DomainError("element has " + std::to_string(values.size()) + " residues, group rank is " +
                      std::to_string(moduli_.size()));
  GroupElement g{values};
  for (std::size_t i = 0; i < values.size(); ++i) g.residues[i] = mod(values[i], moduli_[i]);
  return g;
}

bool GroupSpec::contains(const GroupElement& g) const {
  if (g.residues.size() != moduli_.size()) return false;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    if (g.residues[i] < 0 || g.residues[i] >= moduli_[i]) return false;
  return true;
}

std::uint64_t GroupSpec::index_of(const GroupElement& g) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    idx = idx * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(g.residues[i]);
  return idx;
}

GroupElement GroupSpec::element_at(std::uint64_t index) const {
  GroupElement g = identity();
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    auto m = static_cast<std::uint64_t>(moduli_[i]);
    g.residues[i] = static_cast<std::int64_t>(index % m);
    index /= m;
  }
  return g;
}

namespace {

void require_member(const GroupSpec& g, const GroupElement& a) {
  if (!g.contains(a)) throw DomainError("element does not belong to the group");
}

}  // namespace

GroupElement group_add(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  require_member(g, a);
  require_member(g, b);
  GroupElement r = a;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    r.residues[i] += b.residues[i];
    if (r.residues[i] >= g.moduli()[i]) r.residues[i] -= g.moduli()[i];
  }
  return r;
}

GroupElement group_neg(const GroupSpec& g, const GroupElement& a) { return scalar_mul(g, -1, a); }

GroupElement scalar_mul(const GroupSpec& g, std::int64_t c, const GroupElement& a) {
  require_member(g, a);
  GroupElement r = a;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    // residues < 2^31 in practice; the product is reduced in 128 bits anyway
    auto prod = static_cast<__int128>(c) * a.residues[i];
    auto m = g.moduli()[i];
    auto red = static_cast<std::int64_t>(prod % m);
    r.residues[i] = red < 0 ? red + m : red;
  }
  return r;
}

std::uint64_t subgroup_order(const GroupSpec& g, std::span<const GroupElement> gens) {
  const auto order = g.checked_order();
  for (const auto& s : gens) require_member(g, s);
  std::vector<bool> seen(order, false);
  std::deque<std::uint64_t> frontier{g.index_of(g.identity())};
  seen[frontier.front()] = true;
  std::uint64_t count = 1;
  while (!frontier.empty()) {
    auto cur = g.element_at(frontier.front());
    frontier.pop_front();
    for (const auto& s : gens) {
      auto idx = g.index_of(group_add(g, cur, s));
      if (!seen[idx]) {
        seen[idx] = true;
        ++count;
        frontier.push_back(idx);
      }
    }
  }
  return count;
}

GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b) {
  IntVector m = a.moduli();
  m.insert(m.end(), b.moduli().begin(), b.moduli().end());
  return GroupSpec(std::move(m));
}

// ---------------------------------------------------------------------------
// Fields

namespace {

// Multiplies the polynomial `digits` (degree < m) by x modulo the monic
// `modulus` over F_p, in place.
void times_x(IntVector& digits, const IntVector& modulus, std::int64_t p) {
  const auto m = digits.size();
  const auto top = digits[m - 1];
  for (std::size_t i = m - 1; i > 0; --i) digits[i] = digits[i - 1];
  digits[0] = 0;
  if (top != 0)
    for (std::size_t i = 0; i < m; ++i) digits[i] = mod(digits[i] - top * modulus[i], p);
}

std::uint32_t pack(const IntVector& digits, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) v = v * p + static_cast<std::uint32_t>(digits[i]);
  return v;
}

void validate_modulus(std::uint32_t p, const IntVector& modulus) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2) throw DomainError("field modulus must have degree >= 1");
  if (modulus.back() != 1) throw DomainError("field modulus must be monic");
  for (auto c : modulus)
    if (c < 0 || c >= static_cast<std::int64_t>(p))
      throw DomainError("field modulus coefficient out of range");
}

}  // namespace

std::uint64_t order_of_x(std::uint32_t p, const IntVector& modulus, std::uint64_t bound) {
  validate_modulus(p, modulus);
  const auto m = modulus.size() - 1;
  IntVector digits(m, 0);
  if (m == 1) digits[0] = mod(-modulus[0], p);
  else digits[1] = 1;
  IntVector one(m, 0);
  one[0] = 1;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    if (digits == one) return k;
    if (std::all_of(digits.begin(), digits.end(), [](auto d) { return d == 0; })) return 0;
    times_x(digits, modulus, p);
  }
  return 0;
}

FieldSpec::FieldSpec(std::uint32_t p, IntVector modulus)
    : p_(p), m_(0), q_(0), modulus_(std::move(modulus)) {
  validate_modulus(p_, modulus_);
  m_ = static_cast<unsigned>(modulus_.size() - 1);
  BigInt q = ipow(BigInt(p_), m_);
  require_within(q, limits().field_size, "field size");
  q_ = q.convert_to<std::uint32_t>();

  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  std::vector<bool> hit(q_, false);
  IntVector digits(m_, 0);
  digits[0] = 1;
  for (std::uint32_t k = 0; k + 1 < q_; ++k) {
    auto v = pack(digits, p_);
    if (v == 0 || hit[v]) throw DomainError("field modulus is not primitive");
    hit[v] = true;
    exp_[k] = FieldElement{v};
    log_[v] = k;
    times_x(digits, modulus_, p_);
  }
  if (pack(digits, p_) != 1) throw DomainError("field modulus is not primitive");
}

FieldElement FieldSpec::constant(std::int64_t c) const {
  return FieldElement{static_cast<std::uint32_t>(mod(c, p_))};
}

FieldElement FieldSpec::from_coefficients(const IntVector& coeffs) const {
  if (coeffs.size() > m_) throw DomainError("field element has too many coefficients");
  IntVector d(m_, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) d[i] = mod(coeffs[i], p_);
  return FieldElement{pack(d, p_)};
}

IntVector FieldSpec::coefficients(FieldElement e) const {
  IntVector d(m_, 0);
  auto v = e.value;
  for (unsigned i = 0; i < m_; ++i) {
    d[i] = v % p_;
    v /= p_;
  }
  return d;
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
  if (p_ == 2) return {a.value ^ b.value};
  std::uint32_t out = 0, scale = 1;
  auto x = a.value, y = b.value;
  for (unsigned i = 0; i < m_; ++i) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return {out};
}

FieldElement FieldSpec::neg(FieldElement a) const {
  if (p_ == 2) return a;
  std::uint32_t out = 0, scale = 1;
  auto x = a.value;
  for (unsigned i = 0; i < m_; ++i) {
    out += ((p_ - x % p_) % p_) * scale;
    x /= p_;
    scale *= p_;
  }
  return {out};
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
  if (a.value == 0 || b.value == 0) return zero();
  return exp_[(log_[a.value] + log_[b.value]) % (q_ - 1)];
}

FieldElement FieldSpec::inv(FieldElement a) const {
  if (a.value == 0) throw DomainError("inverse of zero");
  return exp_[(q_ - 1 - log_[a.value]) % (q_ - 1)];
}

FieldElement FieldSpec::div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

FieldElement FieldSpec::exp(std::int64_t k) const { return exp_[mod(k, q_ - 1)]; }

FieldElement FieldSpec::pow(FieldElement a, std::int64_t k) const {
  if (a.value == 0) {
    if (k == 0) return one();
    if (k < 0) throw DomainError("negative power of zero");
    return zero();
  }
  return exp(static_cast<std::int64_t>(log_[a.value]) * mod(k, q_ - 1));
}

std::uint32_t FieldSpec::log(FieldElement e) const {
  if (e.value == 0) throw DomainError("discrete log of zero");
  if (e.value >= q_) throw DomainError("element outside the field");
  return log_[e.value];
}

FieldSpec find_primitive_polynomial(std::uint32_t p, unsigned m) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (m < 1) throw DomainError("field degree must be >= 1");
  BigInt q = ipow(BigInt(p), m);
  require_within(q, limits().field_size, "field size");
  const auto qq = q.convert_to<std::uint64_t>();
  // candidate index v enumerates (c_{m-1}, ..., c_0) lexicographically
  for (std::uint64_t v = 0; v < qq; ++v) {
    IntVector modulus(m + 1, 0);
    modulus[m] = 1;
    auto rest = v;
    for (unsigned i = 0; i < m; ++i) {
      modulus[i] = static_cast<std::int64_t>(rest % p);
      rest /= p;
    }
    if (modulus[0] == 0) continue;  // x divides the modulus
    if (order_of_x(p, modulus, qq - 1) == qq - 1) return FieldSpec(p, modulus);
  }
  throw DomainError("no primitive polynomial found");  // unreachable for prime p
}

std::uint32_t discrete_log(const FieldSpec& field, FieldElement e) { return field.log(e); }

}  // namespace magball
