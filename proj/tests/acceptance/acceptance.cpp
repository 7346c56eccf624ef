// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "magball/codec.hpp"
#include "magball/constructions.hpp"
#include "magball/io.hpp"

using namespace magball;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects failed conditions; the first few messages end up in the detail.
struct Check {
  Outcome out;
  void operator()(bool cond, const std::string& what) {
    if (cond) return;
    if (out.ok) out.detail.clear();
    out.ok = false;
    if (out.detail.size() < 300) out.detail += (out.detail.empty() ? "" : "; ") + what;
  }
};

std::string str(const Rational& r) { return to_string(r); }

IntVector random_lattice_point(const LatticeBasis& l, std::mt19937_64& rng) {
  IntVector x(l.n(), 0);
  for (const auto& row : l.rows()) {
    const auto c = std::uniform_int_distribution<int>(-5, 5)(rng);
    for (int j = 0; j < l.n(); ++j) x[j] += c * row[j].convert_to<std::int64_t>();
  }
  return x;
}

Outcome ball_arithmetic() {
  Check c;
  c(ball_size({3, 2, 2, 1}) == 37, "|B(3,2,2,1)| != 37");
  c(enumerate_ball({3, 2, 2, 1}).size() == 37, "enumeration of B(3,2,2,1) != 37");
  int cases = 0;
  for (int n = 1; n <= 8; ++n)
    for (int t = 0; t <= std::min(n, 3); ++t)
      for (int kp = 1; kp <= 4; ++kp)
        for (int km = 0; km <= kp && kp + km <= 4; ++km) {
          ++cases;
          BallSpec b{n, t, kp, km};
          const auto count = enumerate_ball(b).size();
          c(BigInt(count) == ball_size(b), "mismatch at " + std::to_string(n) + "," + std::to_string(t));
          if (n <= 6) c(count == oracle::ball(n, t, kp, km).size(), "box oracle mismatch");
        }
  c.out.detail = c.out.ok ? std::to_string(cases) + " parameter sets agree" : c.out.detail;
  return c.out;
}

Outcome bose_chowla_10() {
  Check c;
  auto a = bose_chowla_s1(4, 2);
  auto s = bt_shift_to_splitter(a);
  c(s.group().order() == 15, "group is not Z_15");
  c(s.n() == 3, "|S| = " + std::to_string(s.n()));
  c(check_partial_split(s).verified(), "partial 2-split refuted");
  const auto d = split_density(s);
  // sum_{i<=2} C(3,i) / ((n+1)^2 - 1), n = 3
  const Rational closed(static_cast<long long>(oracle::binom(3, 0) + oracle::binom(3, 1) + oracle::binom(3, 2)), 15);
  c(d == closed && d == Rational(7, 15), "density " + str(d));
  if (c.out.ok) c.out.detail = "S = shifted S1(4,2) in Z_15, density " + str(d);
  return c.out;
}

Outcome bose_chowla_11() {
  Check c;
  BtSet a{8, {0, 1, 3}, 2, BtSet::Provenance::given};
  c(oracle::bt_by_tuples(a.elements, 8, 2), "{0,1,3} is not B_2[8;1]");
  auto s = bt_pm1_splitter(a, 2);
  c(s.group().moduli() == IntVector({8, 5}), "group is not Z_8 x Z_5");
  c(check_partial_split(s).verified(), "partial 2-split refuted");
  std::int64_t num = 0;
  for (int i = 0; i <= 2; ++i) num += static_cast<std::int64_t>(oracle::binom(3, i)) << i;
  const auto d = split_density(s);
  c(d == Rational(num, 40) && d == Rational(19, 40), "density " + str(d));
  if (c.out.ok) c.out.detail = "density " + str(d);
  return c.out;
}

Outcome bch_chain() {
  Check c;
  auto b = bch_code(3, 2, 5);
  c(b.code.k() == 2 && b.formula_dimension == 2, "dimension " + std::to_string(b.code.k()));
  // all 9 codewords by brute force
  int dmin = 99;
  oracle::Vec m(2, 0);
  while (oracle::next_box(m, 0, 2)) dmin = std::min(dmin, oracle::weight(b.code.encode(m)));
  c(dmin >= 5, "minimum distance " + std::to_string(dmin));
  auto l = code_lattice(b.code, 1, 1);
  c(l.volume() == 729, "volume " + to_string(l.volume()));
  BallSpec ball{8, 2, 1, 1};
  c(verify_packing_geometric(l, ball).verified(), "geometric packing refuted");
  c(density(l, ball) == Rational(129, 729), "density " + str(density(l, ball)));
  if (c.out.ok) c.out.detail = "[8,2," + std::to_string(dmin) + "]_3, vol 729, density 129/729";
  return c.out;
}

Outcome behrend() {
  Check c;
  auto r = behrend_ruzsa_splitter(1, 0, 2, 1, 17);
  c(r.splitter.n() == 2, "|S| = " + std::to_string(r.splitter.n()));
  c(r.splitter.group().moduli() == IntVector({4, 17, 17}), "group is not Z_4 x Z_17 x Z_17");
  c(r.m == 1, "m = " + std::to_string(r.m));
  c(check_partial_split(r.splitter).verified(), "partial 2-split refuted");
  bool rejected = false;
  try {
    behrend_ruzsa_splitter(4, 0, 2, 1, 17);
  } catch (const DomainError&) {
    rejected = true;
  }
  c(rejected, "kplus = 4 accepted");
  if (c.out.ok) c.out.detail = "S_1 of size 2 verified, kplus = 4 rejected";
  return c.out;
}

Outcome coverings() {
  Check c;
  auto base = covering_base_split(2, 2, 1, 0);
  IntVector el;
  for (const auto& e : base.elements()) el.push_back(e.residues[0]);
  c(el == IntVector({1, 2, 3}), "base set differs from {1,2,3}");
  c(check_complete_split(base).verified(), "base complete 1-split refuted");
  auto prod = product_splitter(base, 2);
  c(prod.n() == 6 && prod.group().order() == 16, "product shape");
  c(check_complete_split(prod).verified(), "product complete 2-split refuted");
  auto lat = kernel_lattice(prod);
  c(verify_covering_geometric(lat, ball_of(prod)).verified() && lat.volume() == 16, "geometric covering refuted");
  // (n(p-1)/t + 1)^t at n = 6, p = 2, t = 2
  const std::int64_t denom = (6 * 1 / 2 + 1) * (6 * 1 / 2 + 1);
  const auto d = split_density(prod);
  c(denom == 16 && d == Rational(22, 16), "density " + str(d));
  if (c.out.ok) c.out.detail = "density 22/16";
  return c.out;
}

Outcome decoders() {
  Check c;
  std::mt19937_64 rng(2024);
  S2DecoderContext s2(4, 2);
  auto l2 = kernel_lattice(s2.splitter());
  auto patterns = oracle::ball(4, 2, 1, 0);
  c(patterns.size() == 11, "pattern count");
  int s2_ok = 0, s2_total = 0;
  for (int i = 0; i < 100; ++i) {
    auto x = random_lattice_point(l2, rng);
    for (const auto& e : patterns) {
      IntVector y(x);
      for (int j = 0; j < 4; ++j) y[j] += e[j];
      auto r = decode_s2(s2, y);
      ++s2_total;
      s2_ok += r.ok() && r.decoded == x;
    }
  }
  c(s2_ok == s2_total, "S2 " + std::to_string(s2_ok) + "/" + std::to_string(s2_total));

  ModPDecoderContext mp(bch_code(3, 2, 5).code, 1, 1);
  auto lp = code_lattice(mp.code(), 1, 1);
  auto errors = enumerate_ball({8, 2, 1, 1});
  c(errors.size() == 129, "error count");
  int mp_ok = 0, mp_total = 0;
  for (int i = 0; i < 100; ++i) {
    auto x = random_lattice_point(lp, rng);
    for (const auto& e : errors) {
      IntVector y(x);
      for (int j = 0; j < 8; ++j) y[j] += e[j];
      auto r = decode_mod_p(mp, y);
      ++mp_total;
      mp_ok += r.ok() && r.decoded == x;
    }
  }
  c(mp_ok == mp_total, "mod-p " + std::to_string(mp_ok) + "/" + std::to_string(mp_total));
  if (c.out.ok)
    c.out.detail = "S2 " + std::to_string(s2_ok) + "/" + std::to_string(s2_total) + ", mod-p " +
                   std::to_string(mp_ok) + "/" + std::to_string(mp_total);
  return c.out;
}

Outcome decoder_complexity() {
  Check c;
  std::mt19937_64 rng(8);
  std::vector<double> ns, ops;
  for (int q : {4, 8, 16}) {
    S2DecoderContext ctx(q, 2);
    auto l = kernel_lattice(ctx.splitter());
    auto patterns = oracle::ball(q, 2, 1, 0);
    double total = 0;
    int count = 0;
    for (int i = 0; i < 50; ++i) {
      auto x = random_lattice_point(l, rng);
      for (const auto& e : patterns) {
        IntVector y(x);
        for (int j = 0; j < q; ++j) y[j] += e[j];
        auto r = decode_s2(ctx, y);
        c(r.ok(), "decode failure at q = " + std::to_string(q));
        total += static_cast<double>(r.ops.total());
        ++count;
      }
    }
    ns.push_back(q);
    ops.push_back(total / count);
  }
  // least squares ops = c1 n + c2
  const double k = static_cast<double>(ns.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sx += ns[i];
    sy += ops[i];
    sxx += ns[i] * ns[i];
    sxy += ns[i] * ops[i];
  }
  const double c1 = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const double c2 = (sy - c1 * sx) / k;
  std::ostringstream d;
  d.precision(4);
  d << "c1=" << c1 << " c2=" << c2 << ";";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double fit = c1 * ns[i] + c2;
    const double rel = std::abs(ops[i] - fit) / fit;
    d << " n=" << ns[i] << ":" << ops[i] << "(" << static_cast<int>(rel * 100 + 0.5) << "%)";
    c(rel <= 0.20, "n = " + std::to_string(static_cast<int>(ns[i])) + " deviates " +
                       std::to_string(static_cast<int>(rel * 100)) + "%");
  }
  c(c1 > 0, "non-increasing cost");
  c.out.detail = c.out.ok ? d.str() : c.out.detail + " [" + d.str() + "]";
  return c.out;
}

Outcome oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(31337);
  int instances = 0, disagreements = 0, partials = 0, completes = 0;
  while (instances < 200) {
    IntVector moduli;
    const bool tiny = rng() % 3 == 0;
    const int rank = 1 + static_cast<int>(rng() % 3);
    std::int64_t order = 1;
    for (int i = 0; i < rank; ++i) {
      const std::int64_t cap = tiny ? 6 : std::min<std::int64_t>(5000 / order, 60);
      if (cap < 2) break;
      moduli.push_back(std::uniform_int_distribution<std::int64_t>(2, cap)(rng));
      order *= moduli.back();
    }
    if (order < 3) continue;
    GroupSpec g(moduli);
    const int n = std::uniform_int_distribution<int>(1, static_cast<int>(std::min<std::int64_t>(6, order - 1)))(rng);
    std::set<GroupElement> pick;
    while (static_cast<int>(pick.size()) < n)
      pick.insert(g.element_at(std::uniform_int_distribution<std::uint64_t>(1, order - 1)(rng)));
    const std::int64_t kp = 1 + static_cast<std::int64_t>(rng() % 2);
    const std::int64_t km = static_cast<std::int64_t>(rng() % (kp + 1));
    const int t = std::uniform_int_distribution<int>(1, std::min(2, n))(rng);
    SplitterSet s(g, {pick.begin(), pick.end()}, {kp, km}, t);
    ++instances;

    const auto ball = ball_of(s);
    auto lat = kernel_lattice(s);
    const bool p = check_partial_split(s).verified();
    const bool cs = check_complete_split(s).verified();
    const auto lambda = *multiplicity_histogram(s).lambda;
    const bool gp = verify_packing_geometric(lat, ball).verified();
    const bool gc = verify_covering_geometric(lat, ball).verified() && lat.volume() == g.order();
    partials += p;
    completes += cs;
    disagreements += (p != gp) + (cs != gc) + (p != (lambda == 1));
  }
  c(disagreements == 0, std::to_string(disagreements) + " disagreements");
  c(partials > 0 && completes > 0, "generator never produced both outcomes");
  if (c.out.ok)
    c.out.detail = std::to_string(instances) + " instances, " + std::to_string(partials) + " packings, " +
                   std::to_string(completes) + " coverings, 0 disagreements";
  return c.out;
}

Outcome lambda_sampler() {
  Check c;
  std::string detail;
  for (std::int64_t n : {53, 101, 211}) {
    detail += (detail.empty() ? "" : ", ") + std::string("N=") + std::to_string(n) + " |S|/lambda";
    for (std::uint64_t seed : {1, 2, 3}) {
      auto a = sample_lambda_splitter(n, 2, 1, 0, 0.25, seed, 1);
      auto b = sample_lambda_splitter(n, 2, 1, 0, 0.25, seed, 1);
      auto d = sample_lambda_splitter(n, 2, 1, 0, 0.25, seed, 4);
      const auto tag = " at N = " + std::to_string(n) + " seed " + std::to_string(seed);
      c(a.splitter.has_value(), "no sample" + tag);
      if (!a.splitter) continue;
      std::uint64_t hmax = 0;
      for (const auto& [mult, count] : a.histogram.histogram)
        if (count > 0) hmax = std::max(hmax, mult);
      c(a.lambda == hmax, "lambda != histogram max" + tag);
      auto bytes = [](const LambdaSample& s) {
        return io::to_json(*s.splitter).dump() + io::to_json(s.histogram).dump() + std::to_string(s.lambda);
      };
      c(bytes(a) == bytes(b), "rerun differs" + tag);
      c(bytes(a) == bytes(d), "jobs changes output" + tag);
      detail += " " + std::to_string(a.splitter->n()) + "/" + std::to_string(a.lambda);
    }
  }
  if (c.out.ok) c.out.detail = detail;
  return c.out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"ball arithmetic", 1, ball_arithmetic},
      {"B_t {1}-splitter in Z_15", 1, bose_chowla_10},
      {"B_t {-1,1}-splitter in Z_8 x Z_5", 1, bose_chowla_11},
      {"BCH code lattice chain", 10, bch_chain},
      {"sphere-set splitter", 1, behrend},
      {"covering product", 1, coverings},
      {"decoder round trips", 30, decoders},
      {"decoder operation counts", 30, decoder_complexity},
      {"oracle equivalence", 60, oracle_equivalence},
      {"lambda sampler", 30, lambda_sampler},
  };
  int failures = 0;
  int index = 0;
  for (const auto& cr : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_s) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(cr.limit_s)) + " s budget)";
    }
    failures += !o.ok;
    std::printf("%s %2d %-34s %8.3f s  %s\n", o.ok ? "PASS" : "FAIL", index, cr.name, secs, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
