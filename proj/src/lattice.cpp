#include "magball/lattice.hpp"

#include <algorithm>
#include <unordered_map>

#include <omp.h>

namespace magball {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) --q;
  return q;
}

void row_axpy(std::vector<BigInt>& dst, const std::vector<BigInt>& src, const BigInt& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < dst.size(); ++j)
    if (src[j] != 0) dst[j] -= q * src[j];
}

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::int64_t to_i64(const BigInt& v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw ResourceError(std::string(what) + " does not fit in 64 bits");
  return v.convert_to<std::int64_t>();
}

}  // namespace

IntMatrix to_big(const std::vector<IntVector>& m) {
  IntMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

BigInt determinant(const IntMatrix& square) {
  // Bareiss fraction-free elimination
  const auto n = square.size();
  if (n == 0) return 1;
  IntMatrix a = square;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntMatrix hermite_normal_form(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    bool has_pivot = false;
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = pr; i < rows; ++i)
        if (a[i][c] != 0 && (best == rows || abs(a[i][c]) < abs(a[best][c]))) best = i;
      if (best == rows) break;
      has_pivot = true;
      std::swap(a[pr], a[best]);
      bool clean = true;
      for (std::size_t i = pr + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        row_axpy(a[i], a[pr], a[i][c] / a[pr][c]);
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (!has_pivot) continue;
    if (a[pr][c] < 0)
      for (auto& x : a[pr]) x = -x;
    for (std::size_t i = 0; i < pr; ++i) row_axpy(a[i], a[pr], floor_div(a[i][c], a[pr][c]));
    ++pr;
  }
  a.resize(pr);
  return a;
}

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < d.size() && i < (d.empty() ? 0 : d[0].size()); ++i) out.push_back(d[i][i]);
  return out;
}

SmithForm smith_normal_form(const IntMatrix& input) {
  SmithForm f;
  f.d = input;
  auto& a = f.d;
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  f.u = identity(m);
  f.v = identity(n);
  f.v_inv = identity(n);

  auto col_axpy = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    // column dst -= q * column src, on A and V; row src of V^{-1} += q * row dst
    if (q == 0) return;
    for (std::size_t i = 0; i < m; ++i) a[i][dst] -= q * a[i][src];
    for (std::size_t i = 0; i < n; ++i) f.v[i][dst] -= q * f.v[i][src];
    for (std::size_t j = 0; j < n; ++j) f.v_inv[src][j] += q * f.v_inv[dst][j];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(a[i][x], a[i][y]);
    for (std::size_t i = 0; i < n; ++i) std::swap(f.v[i][x], f.v[i][y]);
    std::swap(f.v_inv[x], f.v_inv[y]);
  };
  auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    row_axpy(a[dst], a[src], q);
    row_axpy(f.u[dst], f.u[src], q);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    std::swap(a[x], a[y]);
    std::swap(f.u[x], f.u[y]);
  };

  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    while (true) {
      // smallest nonzero entry of the trailing block moves to (k, k)
      std::size_t bi = m, bj = n;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (a[i][j] != 0 && (bi == m || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == m) break;
      row_swap(k, bi);
      col_swap(k, bj);

      bool clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (a[i][k] == 0) continue;
        row_op(i, k, a[i][k] / a[k][k]);
        if (a[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a[k][j] == 0) continue;
        col_axpy(j, k, a[k][j] / a[k][k]);
        if (a[k][j] != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility chain: fold in any row whose entries the pivot misses
      std::size_t bad = m;
      for (std::size_t i = k + 1; i < m && bad == m; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (a[i][j] % a[k][k] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_op(k, bad, BigInt(-1));
    }
    if (k < m && k < n && a[k][k] < 0) {
      for (auto& x : a[k]) x = -x;
      for (auto& x : f.u[k]) x = -x;
    }
  }
  return f;
}

LatticeBasis LatticeBasis::from_generators(const IntMatrix& generators, int n, std::string source) {
  for (const auto& row : generators)
    if (static_cast<int>(row.size()) != n) throw DomainError("generator row has wrong length");
  auto h = hermite_normal_form(generators);
  if (static_cast<int>(h.size()) != n)
    throw DomainError("generators span a lattice of rank " + std::to_string(h.size()) + " < " +
                      std::to_string(n));
  LatticeBasis l;
  l.volume_ = 1;
  for (int i = 0; i < n; ++i) {
    if (h[i][i] == 0) throw std::logic_error("HNF of a full-rank lattice is not square");
    l.volume_ *= h[i][i];
  }
  l.rows_ = std::move(h);
  l.source_ = std::move(source);
  return l;
}

LatticeBasis kernel_lattice(const SplitterSet& s) {
  const auto& g = s.group();
  const std::size_t r = g.rank();
  const std::size_t n = static_cast<std::size_t>(s.n());
  // rows (s_i | e_i) and (m_j e_j | 0); the echelon block below the first r
  // pivots spans the kernel
  IntMatrix rel;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BigInt> row(r + n, 0);
    for (std::size_t j = 0; j < r; ++j) row[j] = s.elements()[i].residues[j];
    row[r + i] = 1;
    rel.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<BigInt> row(r + n, 0);
    row[j] = g.moduli()[j];
    rel.push_back(std::move(row));
  }
  auto h = hermite_normal_form(std::move(rel));
  if (h.size() != r + n) throw std::logic_error("relation matrix is not of full rank");
  IntMatrix kernel;
  for (std::size_t i = r; i < r + n; ++i) kernel.emplace_back(h[i].begin() + static_cast<std::ptrdiff_t>(r), h[i].end());
  return LatticeBasis::from_generators(kernel, static_cast<int>(n), "splitter");
}

bool lattice_contains(const LatticeBasis& l, std::span<const std::int64_t> v) {
  if (static_cast<int>(v.size()) != l.n())
    throw DomainError("vector length " + std::to_string(v.size()) + " != lattice dimension " +
                      std::to_string(l.n()));
  std::vector<BigInt> w(v.begin(), v.end());
  for (int j = 0; j < l.n(); ++j) {
    const auto& pivot = l.rows()[j][j];
    if (w[j] % pivot != 0) return false;
    row_axpy(w, l.rows()[j], w[j] / pivot);
  }
  return true;
}

CosetMap::CosetMap(const LatticeBasis& l) : n_(l.n()) {
  auto snf = smith_normal_form(l.rows());
  BigInt volume = 1;
  for (int i = 0; i < n_; ++i) {
    const auto& d = snf.d[i][i];
    if (d > 1) {
      invariants_.push_back(to_i64(d, "invariant factor"));
      columns_.push_back(i);
      volume *= d;
    }
  }
  if (volume > std::numeric_limits<std::uint64_t>::max() / 2)
    throw ResourceError("lattice volume does not fit in 64 bits");
  volume_ = volume.convert_to<std::uint64_t>();
  v_mod_.assign(n_, std::vector<std::int64_t>(columns_.size()));
  for (int k = 0; k < n_; ++k)
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      BigInt x = snf.v[k][columns_[j]] % invariants_[j];
      if (x < 0) x += invariants_[j];
      v_mod_[k][j] = x.convert_to<std::int64_t>();
    }
  v_inv_ = std::move(snf.v_inv);
}

std::uint64_t CosetMap::coset_of(std::span<const std::int64_t> x) const {
  std::uint64_t id = 0;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const auto d = invariants_[j];
    __int128 acc = 0;
    for (int k = 0; k < n_; ++k)
      if (x[k] != 0) acc = (acc + static_cast<__int128>(x[k]) * v_mod_[k][j]) % d;
    auto r = static_cast<std::int64_t>(acc);
    if (r < 0) r += d;
    id = id * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(r);
  }
  return id;
}

IntVector CosetMap::representative(std::uint64_t id) const {
  std::vector<BigInt> c(n_, 0);
  for (std::size_t j = columns_.size(); j-- > 0;) {
    auto d = static_cast<std::uint64_t>(invariants_[j]);
    c[columns_[j]] = id % d;
    id /= d;
  }
  IntVector x(n_, 0);
  for (int j = 0; j < n_; ++j) {
    BigInt acc = 0;
    for (int k = 0; k < n_; ++k)
      if (c[k] != 0) acc += c[k] * v_inv_[k][j];
    x[j] = to_i64(acc, "coset representative");
  }
  return x;
}

namespace {

struct BallCosets {
  std::vector<IntVector> vectors;
  std::vector<std::uint64_t> ids;
};

BallCosets ball_cosets(const CosetMap& map, const BallSpec& ball, int jobs) {
  BallCosets bc;
  bc.vectors = enumerate_ball(ball);
  bc.ids.resize(bc.vectors.size());
  const auto count = static_cast<std::int64_t>(bc.vectors.size());
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) bc.ids[i] = map.coset_of(bc.vectors[i]);
  return bc;
}

void require_dimension(const LatticeBasis& l, const BallSpec& ball) {
  ball.validate();
  if (ball.n != l.n())
    throw DomainError("ball dimension " + std::to_string(ball.n) + " != lattice dimension " +
                      std::to_string(l.n()));
}

}  // namespace

GeometricReport verify_packing_geometric(const LatticeBasis& l, const BallSpec& ball, int jobs) {
  require_dimension(l, ball);
  const CosetMap map(l);
  auto bc = ball_cosets(map, ball, jobs);
  GeometricReport r;
  std::unordered_map<std::uint64_t, std::size_t> first;
  first.reserve(bc.ids.size());
  for (std::size_t i = 0; i < bc.ids.size(); ++i) {
    auto [it, fresh] = first.emplace(bc.ids[i], i);
    if (!fresh) {
      r.verdict = Verdict::refuted;
      r.witness = {bc.vectors[it->second], bc.vectors[i]};
      break;
    }
  }
  r.cosets_hit = first.size();
  return r;
}

GeometricReport verify_covering_geometric(const LatticeBasis& l, const BallSpec& ball, int jobs) {
  require_dimension(l, ball);
  require_within(l.volume(), limits().coset_volume, "lattice volume");
  const CosetMap map(l);
  auto bc = ball_cosets(map, ball, jobs);
  std::vector<bool> hit(map.volume(), false);
  GeometricReport r;
  for (auto id : bc.ids) {
    if (!hit[id]) ++r.cosets_hit;
    hit[id] = true;
  }
  for (std::uint64_t id = 0; id < map.volume(); ++id) {
    if (!hit[id]) {
      r.verdict = Verdict::refuted;
      r.witness = {map.representative(id)};
      break;
    }
  }
  return r;
}

GeometricReport lambda_geometric(const LatticeBasis& l, const BallSpec& ball, int jobs) {
  require_dimension(l, ball);
  const CosetMap map(l);
  auto bc = ball_cosets(map, ball, jobs);
  auto ids = bc.ids;
  std::sort(ids.begin(), ids.end());
  GeometricReport r;
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < ids.size();) {
    std::size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    best = std::max<std::uint64_t>(best, j - i);
    ++r.cosets_hit;
    i = j;
  }
  r.lambda = best;
  r.verdict = best <= 1 ? Verdict::verified : Verdict::refuted;
  return r;
}

Rational density(const LatticeBasis& l, const BallSpec& ball) {
  require_dimension(l, ball);
  if (l.volume() == 0) throw DomainError("lattice has zero volume");
  return Rational(ball_size(ball), l.volume());
}

namespace reference {

GeometricReport verify_packing_pairwise(const LatticeBasis& l, const BallSpec& ball) {
  require_dimension(l, ball);
  auto size = ball_size(ball);
  require_within(size * size, limits().enumeration, "ball pair count");
  auto vectors = enumerate_ball(ball);
  GeometricReport r;
  IntVector diff(ball.n);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      for (int k = 0; k < ball.n; ++k) diff[k] = vectors[j][k] - vectors[i][k];
      if (lattice_contains(l, diff)) {
        r.verdict = Verdict::refuted;
        r.witness = {vectors[i], vectors[j]};
        return r;
      }
    }
  return r;
}

}  // namespace reference

}  // namespace magball
