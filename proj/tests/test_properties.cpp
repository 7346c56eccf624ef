#include <gtest/gtest.h>

#include <random>

#include "magball/constructions.hpp"
#include "magball/lattice.hpp"
#include "oracles.hpp"

using namespace magball;

namespace {

struct Instance {
  SplitterSet s;
  oracle::Vec moduli;
  std::vector<oracle::Vec> residues;
};

// |G| <= 5000, n <= 6, t <= 2
Instance draw(std::mt19937_64& rng) {
  oracle::Vec moduli;
  const int rank = std::uniform_int_distribution<int>(1, 3)(rng);
  // a third of the draws use tiny groups so coverings actually occur
  const bool tiny = std::uniform_int_distribution<int>(0, 2)(rng) == 0;
  std::int64_t order = 1;
  for (int i = 0; i < rank; ++i) {
    const std::int64_t cap = tiny ? 6 : std::min<std::int64_t>(5000 / order, rank == 1 ? 5000 : 40);
    if (cap < 2) break;
    moduli.push_back(std::uniform_int_distribution<std::int64_t>(2, cap)(rng));
    order *= moduli.back();
  }
  GroupSpec g(moduli);
  const int n = std::uniform_int_distribution<int>(1, static_cast<int>(std::min<std::int64_t>(6, order - 1)))(rng);
  std::set<GroupElement> pick;
  while (static_cast<int>(pick.size()) < n)
    pick.insert(g.element_at(std::uniform_int_distribution<std::uint64_t>(1, order - 1)(rng)));
  const std::int64_t kp = std::uniform_int_distribution<int>(1, 2)(rng);
  const std::int64_t km = std::uniform_int_distribution<int>(0, static_cast<int>(kp))(rng);
  const int t = std::uniform_int_distribution<int>(1, std::min(2, n))(rng);
  SplitterSet s(g, {pick.begin(), pick.end()}, {kp, km}, t);
  std::vector<oracle::Vec> res;
  for (const auto& e : s.elements()) res.push_back(e.residues);
  return {s, moduli, res};
}

}  // namespace

TEST(Properties, OraclesAgreeOnRandomInstances) {
  std::mt19937_64 rng(424242);
  int partial = 0, complete = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto [s, moduli, res] = draw(rng);
    const auto ball = ball_of(s);
    auto lat = kernel_lattice(s);
    auto img = oracle::images(moduli, res, ball.kplus, ball.kminus, ball.t);
    int max_mult = 0;
    for (const auto& [g, c] : img) max_mult = std::max(max_mult, c);
    const bool brute_partial = max_mult == 1;
    const bool brute_complete = static_cast<std::int64_t>(img.size()) == oracle::group_order(moduli);

    const bool p = check_partial_split(s).verified();
    const bool c = check_complete_split(s).verified();
    auto h = multiplicity_histogram(s);
    partial += p;
    complete += c;

    ASSERT_EQ(p, brute_partial) << trial;
    ASSERT_EQ(c, brute_complete) << trial;
    ASSERT_EQ(*h.lambda, static_cast<std::uint64_t>(max_mult));
    ASSERT_EQ(p, *h.lambda == 1);

    ASSERT_EQ(verify_packing_geometric(lat, ball).verified(), p) << trial;
    const bool onto = lat.volume() == s.group().order();
    ASSERT_EQ(onto, BigInt(subgroup_order(s.group(), s.elements())) == s.group().order());
    ASSERT_EQ(verify_covering_geometric(lat, ball).verified() && onto, c) << trial;
    ASSERT_EQ(lambda_geometric(lat, ball).lambda, h.lambda);
    ASSERT_EQ(density(lat, ball) <= 1 || !p, true);
  }
  // the generator has to reach both outcomes for the comparison to mean anything
  EXPECT_GT(partial, 10);
  EXPECT_GT(complete, 3);
}

TEST(Properties, PackingDensityAtMostOneCoveringAtLeastOne) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    auto inst = draw(rng);
    const auto& s = inst.s;
    auto lat = kernel_lattice(s);
    const auto d = density(lat, ball_of(s));
    if (check_partial_split(s).verified()) ASSERT_LE(d, 1);
    if (check_complete_split(s).verified()) ASSERT_GE(split_density(s), 1);
  }
}
