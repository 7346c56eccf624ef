#include "magball/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "magball/enumerate.hpp"

namespace magball {

std::string to_string(BtSet::Provenance p) {
  switch (p) {
    case BtSet::Provenance::s1: return "S1";
    case BtSet::Provenance::s2: return "S2";
    case BtSet::Provenance::search: return "search";
    case BtSet::Provenance::shifted: return "shifted";
    case BtSet::Provenance::given: return "given";
  }
  return "given";
}

namespace {

IntVector reduced_distinct(const IntVector& a, std::int64_t modulus, const char* what) {
  if (modulus < 1) throw DomainError(std::string(what) + ": modulus must be >= 1");
  IntVector out;
  out.reserve(a.size());
  for (auto x : a) out.push_back(mod(x, modulus));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw DomainError(std::string(what) + ": repeated element");
  return out;
}

// Visits every nondecreasing index tuple of length t over [0, n) in lex order.
template <typename Fn>
bool for_each_multiset(int n, int t, Fn&& fn) {
  if (n == 0) return t == 0 ? fn(std::span<const int>()) : true;
  std::vector<int> idx(t, 0);
  while (true) {
    if (!fn(std::span<const int>(idx))) return false;
    int i = t - 1;
    while (i >= 0 && idx[i] == n - 1) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < t; ++j) idx[j] = idx[i];
  }
}

std::int64_t factorial_gcd(std::int64_t n, std::int64_t k) {
  std::int64_t g = 1;
  for (std::int64_t i = 2; i <= k; ++i) g = std::max(g, gcd(n, i));
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// B_t sets

BtCheck is_bt_set(const IntVector& a, std::int64_t modulus, int t) {
  if (t < 1) throw DomainError("B_t check requires t >= 1");
  auto elems = reduced_distinct(a, modulus, "B_t set");
  const int n = static_cast<int>(elems.size());
  require_within(binomial(n + t - 1, t), limits().enumeration, "multiset count");

  std::vector<IntVector> first(static_cast<std::size_t>(modulus));
  std::vector<bool> seen(static_cast<std::size_t>(modulus), false);
  BtCheck out;
  for_each_multiset(n, t, [&](std::span<const int> idx) {
    std::int64_t sum = 0;
    IntVector ms;
    for (int i : idx) {
      sum = (sum + elems[i]) % modulus;
      ms.push_back(elems[i]);
    }
    if (seen[sum]) {
      out.ok = false;
      out.witness = std::make_pair(first[sum], ms);
      return false;
    }
    seen[sum] = true;
    first[sum] = std::move(ms);
    return true;
  });
  return out;
}

BtSet bose_chowla_s1(std::uint64_t q, int t) {
  if (t < 2) throw DomainError("Bose-Chowla S1 requires t >= 2");
  const auto [p, m] = prime_power(q);
  const auto field = find_primitive_polynomial(static_cast<std::uint32_t>(p), m * t);
  const std::uint64_t big = field.size() - 1;
  const auto xi = field.generator();
  const auto gamma = field.exp(static_cast<std::int64_t>(big / (q - 1)));

  BtSet out{static_cast<std::int64_t>(big), {}, t, BtSet::Provenance::s1};
  out.elements.push_back(field.log(xi));  // alpha_0 = 0
  for (std::uint64_t i = 1; i < q; ++i) {
    auto alpha = field.pow(gamma, static_cast<std::int64_t>(i - 1));
    out.elements.push_back(field.log(field.add(xi, alpha)));
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

S2Data bose_chowla_s2(std::uint64_t q, int t) {
  if (t < 2) throw DomainError("Bose-Chowla S2 requires t >= 2");
  const auto [p, m] = prime_power(q);
  auto field = find_primitive_polynomial(static_cast<std::uint32_t>(p), m * (t + 1));
  const std::uint64_t big = field.size() - 1;
  const auto n_mod = static_cast<std::int64_t>(big / (q - 1));
  const auto eta = field.generator();
  const auto gamma = field.exp(n_mod);

  std::vector<FieldElement> alpha{field.zero()};
  for (std::uint64_t i = 1; i < q; ++i) alpha.push_back(field.pow(gamma, static_cast<std::int64_t>(i - 1)));

  std::vector<FieldElement> beta;
  IntVector s;
  for (auto a : alpha) {
    auto v = field.add(eta, a);
    auto si = static_cast<std::int64_t>(field.log(v)) % n_mod;
    s.push_back(si);
    beta.push_back(field.div(v, field.exp(si)));
  }
  BtSet set{n_mod, s, t, BtSet::Provenance::s2};
  set.elements.push_back(0);
  std::sort(set.elements.begin(), set.elements.end());
  return S2Data{std::move(set), q, t, std::move(field), std::move(alpha), std::move(beta), std::move(s)};
}

SplitterSet bt_shift_to_splitter(const BtSet& a) {
  if (a.elements.empty()) throw DomainError("B_t set is empty");
  auto elems = reduced_distinct(a.elements, a.modulus, "B_t set");
  const auto base = elems.front();
  GroupSpec g({a.modulus});
  std::vector<GroupElement> s;
  for (auto x : elems)
    if (x != base) s.push_back(g.make({x - base}));
  if (s.empty()) throw DomainError("shifted B_t set has no nonzero element");
  std::sort(s.begin(), s.end());
  const int t = std::min<int>(a.t, static_cast<int>(s.size()));
  return SplitterSet(std::move(g), std::move(s), MagnitudeSet{1, 0}, t);
}

SplitterSet bt_pm1_splitter(const BtSet& a, int t) {
  if (t < 1) throw DomainError("splitting strength must be >= 1");
  auto elems = reduced_distinct(a.elements, a.modulus, "B_t set");
  if (elems.empty()) throw DomainError("B_t set is empty");
  GroupSpec g({a.modulus, 2 * static_cast<std::int64_t>(t) + 1});
  std::vector<GroupElement> s;
  for (auto x : elems) s.push_back(g.make({x, 1}));
  const int eff = std::min<int>(t, static_cast<int>(s.size()));
  return SplitterSet(std::move(g), std::move(s), MagnitudeSet{1, 1}, eff);
}

BtSearchResult search_bt_set(std::int64_t modulus, int t, int target_size, std::uint64_t node_budget) {
  if (modulus < 1 || t < 1 || target_size < 1) throw DomainError("B_t search needs N, t, size >= 1");
  require_within(modulus, limits().group_order, "B_t search modulus");
  BtSearchResult out;
  out.best = BtSet{modulus, {0}, t, BtSet::Provenance::search};

  std::vector<char> used(static_cast<std::size_t>(modulus), 0);
  used[0] = 1;  // 0 + ... + 0
  IntVector current{0};
  std::uint64_t nodes = 0;

  // Sums of every multiset of size r over `current`.
  auto sums_of_size = [&](int r) {
    IntVector sums;
    for_each_multiset(static_cast<int>(current.size()), r, [&](std::span<const int> idx) {
      std::int64_t acc = 0;
      for (int i : idx) acc += current[i];
      sums.push_back(acc % modulus);
      return true;
    });
    return sums;
  };

  std::function<bool()> extend = [&]() -> bool {
    if (static_cast<int>(current.size()) > static_cast<int>(out.best.elements.size()))
      out.best.elements = current;
    if (static_cast<int>(current.size()) >= target_size) return true;
    for (std::int64_t a = current.back() + 1; a < modulus; ++a) {
      if (++nodes > node_budget) {
        out.exhaustive = false;
        return false;
      }
      IntVector added;
      bool ok = true;
      for (int j = 1; j <= t && ok; ++j)
        for (auto rest : sums_of_size(t - j)) {
          auto v = (rest + static_cast<std::int64_t>(j) * a) % modulus;
          if (used[v]) {
            ok = false;
            break;
          }
          used[v] = 1;
          added.push_back(v);
        }
      if (ok) {
        current.push_back(a);
        if (extend()) return true;
        current.pop_back();
      }
      for (auto v : added) used[v] = 0;
      if (!out.exhaustive) return false;
    }
    return false;
  };
  out.reached = extend();
  return out;
}

// ---------------------------------------------------------------------------
// k-fold Sidon sets

namespace {

bool is_trivial(const std::array<std::int64_t, 4>& c, const std::array<std::int64_t, 4>& x) {
  std::vector<int> support;
  for (int i = 0; i < 4; ++i)
    if (c[i] != 0) support.push_back(i);
  const int s = static_cast<int>(support.size());
  for (int mask = 0; mask < (1 << s); ++mask) {
    std::int64_t sum = 0;
    std::optional<std::int64_t> in, out;
    bool ok = true;
    for (int j = 0; j < s && ok; ++j) {
      const int i = support[j];
      auto& part = (mask >> j & 1) ? in : out;
      if (mask >> j & 1) sum += c[i];
      if (part && *part != x[i]) ok = false;
      part = x[i];
    }
    if (ok && sum == 0) return true;
  }
  return false;
}

// First nontrivial solution, optionally restricted to tuples that use
// `required` (an element of a) at least once.
std::optional<SidonCheck> find_nontrivial(const IntVector& a, std::int64_t modulus, int k,
                                          std::optional<std::int64_t> required) {
  const int n = static_cast<int>(a.size());
  std::vector<char> member(static_cast<std::size_t>(modulus), 0);
  std::vector<int> where(static_cast<std::size_t>(modulus), -1);
  for (int i = 0; i < n; ++i) {
    member[a[i]] = 1;
    where[a[i]] = i;
  }
  std::vector<std::int64_t> inverse(2 * k + 1, 0);
  for (int c = 1; c <= k; ++c) {
    // c is a unit because gcd(N, k!) = 1
    std::int64_t inv = 0;
    for (std::int64_t y = 1; y < modulus; ++y)
      if ((c * y) % modulus == 1 % modulus) {
        inv = y;
        break;
      }
    if (modulus == 1) inv = 0;
    inverse[k + c] = inv;
    inverse[k - c] = mod(-inv, modulus);
  }

  std::array<std::int64_t, 4> c{};
  std::optional<SidonCheck> found;
  for_each_tuple(2 * k + 1, 3, [&](std::span<const int> d) {
    for (int i = 0; i < 3; ++i) c[i] = d[i] - k;
    c[3] = -(c[0] + c[1] + c[2]);
    if (c[3] < -k || c[3] > k) return true;
    int solve = -1;
    for (int i = 3; i >= 0; --i)
      if (c[i] != 0) {
        solve = i;
        break;
      }
    if (solve < 0) return true;  // all-zero relation: only the empty partition
    std::vector<int> free;
    for (int i = 0; i < 4; ++i)
      if (i != solve && c[i] != 0) free.push_back(i);
    const int nf = static_cast<int>(free.size());
    return for_each_tuple(n, nf, [&](std::span<const int> pick) {
      std::array<std::int64_t, 4> x{};
      x.fill(a[0]);
      std::int64_t acc = 0;
      for (int j = 0; j < nf; ++j) {
        x[free[j]] = a[pick[j]];
        acc = (acc + c[free[j]] * a[pick[j]]) % modulus;
      }
      const auto v = mod(-acc * inverse[k + c[solve]], modulus);
      if (!member[v]) return true;
      x[solve] = v;
      if (required) {
        bool uses = false;
        for (int i = 0; i < 4; ++i) uses = uses || (c[i] != 0 && x[i] == *required);
        if (!uses) return true;
      }
      if (is_trivial(c, x)) return true;
      found = SidonCheck{false, c, x};
      return false;
    });
  });
  return found;
}

void require_sidon_modulus(std::int64_t modulus, int k) {
  if (k < 1) throw DomainError("k-fold Sidon requires k >= 1");
  if (modulus < 1) throw DomainError("k-fold Sidon requires N >= 1");
  if (factorial_gcd(modulus, k) != 1)
    throw DomainError("k-fold Sidon requires gcd(N, k!) = 1 (N = " + std::to_string(modulus) +
                      ", k = " + std::to_string(k) + ")");
}

}  // namespace

SidonCheck is_kfold_sidon(const IntVector& a, std::int64_t modulus, int k) {
  require_sidon_modulus(modulus, k);
  auto elems = reduced_distinct(a, modulus, "Sidon set");
  if (elems.empty()) return SidonCheck{};
  const auto n = static_cast<std::uint64_t>(elems.size());
  require_within(BigInt(n) * n * n * (2 * k + 1) * (2 * k + 1) * (2 * k + 1), limits().enumeration,
                 "Sidon relation count");
  auto bad = find_nontrivial(elems, modulus, k, std::nullopt);
  return bad ? *bad : SidonCheck{};
}

SidonSearchResult search_kfold_sidon(std::int64_t modulus, int k, int target_size, std::uint64_t node_budget) {
  require_sidon_modulus(modulus, k);
  if (target_size < 1) throw DomainError("target size must be >= 1");
  require_within(modulus, limits().group_order, "Sidon search modulus");
  SidonSearchResult out;
  out.best = SidonParams{modulus, k, {0}};
  IntVector current{0};
  std::uint64_t nodes = 0;

  std::function<bool()> extend = [&]() -> bool {
    if (current.size() > out.best.elements.size()) out.best.elements = current;
    if (static_cast<int>(current.size()) >= target_size) return true;
    for (std::int64_t a = current.back() + 1; a < modulus; ++a) {
      if (++nodes > node_budget) {
        out.exhaustive = false;
        return false;
      }
      current.push_back(a);
      if (!find_nontrivial(current, modulus, k, a) && extend()) return true;
      current.pop_back();
      if (!out.exhaustive) return false;
    }
    return false;
  };
  out.reached = extend();
  return out;
}

SplitterSet kfold_sidon_splitter(const SidonParams& a, std::int64_t kplus, std::int64_t kminus) {
  MagnitudeSet m{kplus, kminus};
  m.validate();
  if (kplus > a.k)
    throw DomainError("k-fold Sidon splitter requires kplus <= k (kplus = " + std::to_string(kplus) +
                      ", k = " + std::to_string(a.k) + ")");
  auto elems = reduced_distinct(a.elements, a.modulus, "Sidon set");
  if (elems.empty()) throw DomainError("Sidon set is empty");
  GroupSpec g({2 * (kplus + kminus) + 1, a.modulus});
  std::vector<GroupElement> s;
  for (auto x : elems) s.push_back(g.make({1, x}));
  const int t = std::min<int>(2, static_cast<int>(s.size()));
  return SplitterSet(std::move(g), std::move(s), m, t);
}

// ---------------------------------------------------------------------------
// Sphere sets

std::int64_t behrend_alpha(std::int64_t kplus) { return std::max<std::int64_t>(2 * kplus * kplus, 3); }

std::vector<SphereClass> behrend_sphere_sets(int dim, int max_digit, std::int64_t alpha) {
  if (dim < 2) throw DomainError("sphere sets require D >= 2");
  if (max_digit < 1) throw DomainError("sphere sets require K >= 1");
  if (alpha < 1) throw DomainError("sphere sets require alpha >= 1");
  require_within(ipow(BigInt(max_digit + 1), dim), limits().enumeration, "digit vector count");
  const BigInt base = BigInt(alpha) * max_digit + 1;
  require_within(ipow(base, dim), std::numeric_limits<std::int64_t>::max(), "sphere encoding");
  const auto b = base.convert_to<std::int64_t>();

  std::map<std::int64_t, IntVector> classes;
  for_each_tuple(max_digit + 1, dim, [&](std::span<const int> digits) {
    std::int64_t x = 0, norm = 0, place = 1;
    for (int i = 0; i < dim; ++i) {  // digit i has weight base^i
      x += digits[i] * place;
      norm += static_cast<std::int64_t>(digits[i]) * digits[i];
      place *= b;
    }
    classes[norm].push_back(x);
    return true;
  });
  std::vector<SphereClass> out;
  for (auto& [m, xs] : classes) {
    std::sort(xs.begin(), xs.end());
    out.push_back(SphereClass{m, std::move(xs)});
  }
  return out;
}

SphereSplitter behrend_ruzsa_splitter(std::int64_t kplus, std::int64_t kminus, int dim, int max_digit,
                                      std::int64_t p) {
  MagnitudeSet m{kplus, kminus};
  m.validate();
  if (kplus > 3)
    throw DomainError("sphere construction requires kplus <= 3; the residue condition on p cannot hold "
                      "for kplus >= 4");
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw DomainError("p must be prime");
  if (p % 12 != 5 && p % 12 != 7) throw DomainError("p must be congruent to 5 or 7 mod 12");
  const auto alpha = behrend_alpha(kplus);
  if (ipow(BigInt(alpha) * max_digit + 1, dim) > p)
    throw DomainError("sphere construction requires (alpha K + 1)^D <= p");

  auto classes = behrend_sphere_sets(dim, max_digit, alpha);
  const SphereClass* best = &classes.front();
  for (const auto& c : classes)
    if (c.encodings.size() > best->encodings.size()) best = &c;

  GroupSpec g({3 * kplus + 2 * kminus + 1, p, p});
  std::vector<GroupElement> s;
  for (auto x : best->encodings) s.push_back(g.make({1, x % p, (x % p) * (x % p) % p}));
  const int t = std::min<int>(2, static_cast<int>(s.size()));
  return SphereSplitter{SplitterSet(std::move(g), std::move(s), m, t), best->m};
}

// ---------------------------------------------------------------------------
// Codes

LatticeBasis code_lattice(const LinearCode& c, std::int64_t kplus, std::int64_t kminus) {
  MagnitudeSet{kplus, kminus}.validate();
  if (kplus + kminus >= static_cast<std::int64_t>(c.p()))
    throw DomainError("code lattice requires kplus + kminus < p");
  IntMatrix gens = to_big(c.generator());
  for (int i = 0; i < c.n(); ++i) {
    std::vector<BigInt> row(c.n(), 0);
    row[i] = c.p();
    gens.push_back(std::move(row));
  }
  auto label = c.label().empty() ? std::string("linear code") : c.label();
  return LatticeBasis::from_generators(gens, c.n(), label);
}

SplitterSet code_splitter(const LinearCode& c, std::int64_t kplus, std::int64_t kminus, int t) {
  const auto& h = c.parity_check();
  if (h.empty()) throw DomainError("code has no parity checks (C = F_p^n)");
  GroupSpec g(IntVector(h.size(), c.p()));
  std::vector<GroupElement> s;
  for (int j = 0; j < c.n(); ++j) {
    IntVector col;
    for (const auto& row : h) col.push_back(row[j]);
    s.push_back(g.make(col));
  }
  return SplitterSet(std::move(g), std::move(s), MagnitudeSet{kplus, kminus}, t);
}

NonlinearPacking nonlinear_code_pack(const std::vector<IntVector>& codewords, std::uint64_t q,
                                     std::int64_t kplus, std::int64_t kminus, int t) {
  if (codewords.empty()) throw DomainError("code is empty");
  if (q < 2) throw DomainError("alphabet size must be >= 2");
  const int n = static_cast<int>(codewords.front().size());
  BallSpec ball{n, t, kplus, kminus};
  ball.validate();
  if (kplus + kminus >= static_cast<std::int64_t>(q)) throw DomainError("packing requires kplus + kminus < q");

  NonlinearPacking out;
  out.q = q;
  out.ball = ball;
  std::set<IntVector> distinct;
  for (const auto& w : codewords) {
    if (static_cast<int>(w.size()) != n) throw DomainError("codewords have different lengths");
    IntVector r;
    for (auto x : w) r.push_back(mod(x, static_cast<std::int64_t>(q)));
    if (!distinct.insert(r).second) throw DomainError("repeated codeword");
    out.codewords.push_back(std::move(r));
  }
  const BigInt size = ball_size(ball);
  const BigInt torus = ipow(BigInt(q), n);
  out.density = Rational(BigInt(out.codewords.size()) * size, torus);

  const auto m = out.codewords.size();
  require_within(BigInt(m) * m, limits().enumeration, "codeword pairs");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      int dist = 0;
      for (int k = 0; k < n; ++k) dist += out.codewords[i][k] != out.codewords[j][k];
      if (dist < 2 * t + 1) {
        out.verdict = Verdict::refuted;
        out.witness = {{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)}};
        out.reason = "minimum distance " + std::to_string(dist) + " < 2t+1";
        return out;
      }
    }

  require_within(torus, limits().group_order, "torus size");
  require_within(BigInt(m) * size, limits().enumeration, "torus translate count");
  const auto cells = torus.convert_to<std::uint64_t>();
  std::vector<std::int64_t> owner(cells, -1);
  std::vector<IntVector> owner_vec(cells);
  const auto balls = enumerate_ball(ball);
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& b : balls) {
      std::uint64_t idx = 0;
      for (int k = 0; k < n; ++k) idx = idx * q + static_cast<std::uint64_t>(mod(out.codewords[i][k] + b[k], q));
      if (owner[idx] >= 0) {
        out.verdict = Verdict::refuted;
        out.witness = {{owner[idx], static_cast<std::int64_t>(i)}, owner_vec[idx], b};
        out.reason = "ball translates overlap on the torus";
        return out;
      }
      owner[idx] = static_cast<std::int64_t>(i);
      owner_vec[idx] = b;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Coverings

SplitterSet covering_base_split(std::uint32_t p, unsigned m, std::int64_t kplus, std::int64_t kminus) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (m < 1) throw DomainError("m must be >= 1");
  MagnitudeSet{kplus, kminus}.validate();
  if (static_cast<std::int64_t>(p) > kplus + kminus + 1)
    throw DomainError("base split requires p <= kplus + kminus + 1");
  if (kminus > static_cast<std::int64_t>(p) - 1)
    throw DomainError("base split requires kminus <= p - 1");
  const BigInt order = ipow(BigInt(p), m);
  require_within(order, limits().group_order, "group order");
  const auto n = order.convert_to<std::int64_t>();

  const std::int64_t up = static_cast<std::int64_t>(p) - 1 - kminus;
  const bool flip = up < kminus;
  GroupSpec g({n});
  std::vector<GroupElement> s;
  for (std::int64_t a = 1; a < n; ++a) {
    auto x = a;
    while (x % p == 0) x /= p;
    if (x % p == 1) s.push_back(g.make({flip ? -a : a}));
  }
  std::sort(s.begin(), s.end());
  MagnitudeSet mags = flip ? MagnitudeSet{kminus, up} : MagnitudeSet{up, kminus};
  return SplitterSet(std::move(g), std::move(s), mags, 1);
}

SplitterSet product_splitter(const SplitterSet& base, int t) {
  if (t < 1) throw DomainError("product strength must be >= 1");
  if (base.t() != 1) throw DomainError("product construction needs a 1-splitter");
  if (t == 1) return base;
  const auto& bm = base.group().moduli();
  IntVector moduli;
  for (int b = 0; b < t; ++b) moduli.insert(moduli.end(), bm.begin(), bm.end());
  GroupSpec g(moduli);
  std::vector<GroupElement> s;
  for (int b = 0; b < t; ++b)
    for (const auto& e : base.elements()) {
      IntVector r(moduli.size(), 0);
      std::copy(e.residues.begin(), e.residues.end(), r.begin() + static_cast<std::ptrdiff_t>(b * bm.size()));
      s.push_back(GroupElement{std::move(r)});
    }
  return SplitterSet(std::move(g), std::move(s), base.magnitudes(), t);
}

SplitterSet with_magnitudes(const SplitterSet& s, MagnitudeSet m, int t) {
  return SplitterSet(s.group(), s.elements(), m, t);
}

CoveringBaseline hamming_covering_baseline(const BallSpec& ball, std::int64_t ell) {
  ball.validate();
  if (ell < 2) throw DomainError("baseline alphabet must be >= 2");
  // ln(ell) rounded up to a multiple of 1e-12, plus one unit of slack
  const BigInt scale = BigInt(1'000'000'000'000LL);
  const auto ticks = static_cast<long long>(std::ceil(std::log(static_cast<long double>(ell)) * 1e12L)) + 1;
  CoveringBaseline out;
  out.ln_upper = Rational(BigInt(ticks), scale);
  const BigInt size = ball_size(ball);
  const BigInt space = ipow(BigInt(ell), ball.n);
  const Rational raw = Rational(BigInt(ball.n) * space) * out.ln_upper / Rational(size);
  BigInt c = numerator(raw) / denominator(raw);
  if (Rational(c) < raw) c += 1;
  out.code_size = c;
  out.density = Rational(c * size, space);
  return out;
}

// ---------------------------------------------------------------------------
// Random lambda-packings

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) for residue i of draw `attempt`; independent of order.
double counter_uniform(std::uint64_t seed, std::uint64_t attempt, std::uint64_t i) {
  auto stream = splitmix64(seed ^ splitmix64(attempt));
  return static_cast<double>(splitmix64(stream + i) >> 11) * 0x1.0p-53;
}

}  // namespace

LambdaSample sample_lambda_splitter(std::int64_t modulus, int t, std::int64_t kplus, std::int64_t kminus,
                                    double epsilon, std::uint64_t seed, int jobs) {
  MagnitudeSet mags{kplus, kminus};
  mags.validate();
  if (modulus < 2) throw DomainError("sampler requires N >= 2");
  if (t < 1) throw DomainError("sampler requires t >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0 / t)) throw DomainError("sampler requires 0 < epsilon < 1/t");
  if (factorial_gcd(modulus, kplus) != 1) throw DomainError("sampler requires gcd(N, kplus!) = 1");
  require_within(modulus, limits().group_order, "group order");

  LambdaSample out;
  out.inclusion_probability = std::pow(static_cast<double>(modulus), 1.0 / t - 1.0 - epsilon);
  const double mean = std::pow(static_cast<double>(modulus), 1.0 / t - epsilon);
  out.window_low = 0.5 * mean;
  out.window_high = 1.5 * mean;

  GroupSpec g({modulus});
  std::vector<GroupElement> s;
  constexpr int max_attempts = 1000;
  for (int a = 0; a < max_attempts && s.empty(); ++a) {
    out.attempts = a + 1;
    for (std::int64_t i = 0; i < modulus; ++i)
      if (counter_uniform(seed, static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(i)) <
          out.inclusion_probability)
        s.push_back(g.make({i}));
  }
  if (s.empty()) throw ResourceError("sampler drew only empty sets");

  const auto n = static_cast<double>(s.size());
  out.size_in_range = n >= out.window_low && n <= out.window_high;
  const int eff = std::min<int>(t, static_cast<int>(s.size()));
  SplitterSet splitter(std::move(g), std::move(s), mags, eff);
  out.histogram = multiplicity_histogram(splitter, jobs);
  out.lambda = *out.histogram.lambda;
  out.splitter = std::move(splitter);
  return out;
}

BallSpec ball_of(const SplitterSet& s) {
  return BallSpec{s.n(), s.t(), s.magnitudes().kplus, s.magnitudes().kminus};
}

Rational split_density(const SplitterSet& s) { return Rational(ball_size(ball_of(s)), s.group().order()); }

}  // namespace magball
