#include <gtest/gtest.h>

#include <random>

#include "magball/splitting.hpp"
#include "oracles.hpp"

using namespace magball;

namespace {

SplitterSet cyclic(std::int64_t n, IntVector s, std::int64_t kp, std::int64_t km, int t) {
  GroupSpec g({n});
  std::vector<GroupElement> e;
  for (auto x : s) e.push_back(g.make({x}));
  return SplitterSet(g, e, {kp, km}, t);
}

SplitterSet z8z5_example() {
  GroupSpec g({8, 5});
  return SplitterSet(g, {g.make({0, 1}), g.make({1, 1}), g.make({3, 1})}, {1, 1}, 2);
}

std::vector<oracle::Vec> residues(const SplitterSet& s) {
  std::vector<oracle::Vec> out;
  for (const auto& e : s.elements()) out.push_back(e.residues);
  return out;
}

// Random splitter set in a random small group.
SplitterSet random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rank_d(1, 2);
  IntVector moduli;
  const int rank = rank_d(rng);
  for (int i = 0; i < rank; ++i) moduli.push_back(std::uniform_int_distribution<int>(2, rank == 1 ? 60 : 12)(rng));
  GroupSpec g(moduli);
  const auto order = g.order().convert_to<std::uint64_t>();
  const int n = std::uniform_int_distribution<int>(1, std::min<int>(5, static_cast<int>(order)))(rng);
  std::set<GroupElement> picked;
  while (static_cast<int>(picked.size()) < n)
    picked.insert(g.element_at(std::uniform_int_distribution<std::uint64_t>(0, order - 1)(rng)));
  const std::int64_t kp = std::uniform_int_distribution<int>(1, 2)(rng);
  const std::int64_t km = std::uniform_int_distribution<int>(0, static_cast<int>(kp))(rng);
  const int t = std::uniform_int_distribution<int>(1, std::min(2, n))(rng);
  return SplitterSet(g, {picked.begin(), picked.end()}, {kp, km}, t);
}

}  // namespace

TEST(Phi, Examples) {
  auto s = cyclic(8, {1, 3}, 1, 0, 2);
  EXPECT_EQ(phi(s, IntVector{1, 1}), GroupElement{{4}});
  EXPECT_EQ(phi(s, IntVector{0, 0}), GroupElement{{0}});
  EXPECT_EQ(phi(z8z5_example(), IntVector{1, -1, 1}), (GroupElement{{2, 1}}));
  EXPECT_THROW(phi(s, IntVector{1}), DomainError);
}

TEST(SplitterSetType, Invariants) {
  GroupSpec g({8});
  EXPECT_THROW(SplitterSet(g, {g.make({1}), g.make({1})}, {1, 0}, 1), DomainError);
  EXPECT_THROW(SplitterSet(g, {g.make({1})}, {1, 0}, 2), DomainError);
  EXPECT_THROW(SplitterSet(g, {}, {1, 0}, 1), DomainError);
  EXPECT_THROW(SplitterSet(g, {GroupElement{{9}}}, {1, 0}, 1), DomainError);
  EXPECT_THROW(SplitterSet(g, {g.make({1})}, {0, 1}, 1), DomainError);
}

TEST(PartialSplit, VerifiedExample) {
  auto r = check_partial_split(cyclic(8, {1, 3}, 1, 0, 2));
  EXPECT_TRUE(r.verified());
  EXPECT_FALSE(r.witness);
  EXPECT_EQ(r.image_size, 4u);  // {0, 1, 3, 4}
}

TEST(PartialSplit, ZeroImageWitness) {
  auto r = check_partial_split(cyclic(8, {1, 7}, 1, 0, 2));
  ASSERT_FALSE(r.verified());
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->kind, SplitWitness::Kind::zero_image);
  EXPECT_EQ(r.witness->first, (IntVector{1, 1}));
  EXPECT_EQ(r.witness->element, GroupElement{{0}});
}

TEST(PartialSplit, CollisionWitnessIsFirstInOrder) {
  // 1*2 = 2*1 in Z_16 with M = {1, 2}: first colliding pair in weight-major order
  auto r = check_partial_split(cyclic(16, {1, 2}, 2, 0, 1));
  ASSERT_FALSE(r.verified());
  EXPECT_EQ(r.witness->kind, SplitWitness::Kind::collision);
  EXPECT_EQ(r.witness->first, (IntVector{2, 0}));
  EXPECT_EQ(r.witness->second, (IntVector{0, 1}));
  EXPECT_EQ(r.witness->element, GroupElement{{2}});
}

TEST(PartialSplit, PlusMinusOneExample) {
  auto s = z8z5_example();
  EXPECT_TRUE(check_partial_split(s).verified());
  // independent image count: 1 + 3*2 + 3*4 = 19 distinct images
  auto img = oracle::images({8, 5}, residues(s), 1, 1, 2);
  EXPECT_EQ(img.size(), 19u);
  for (const auto& [g, c] : img) EXPECT_EQ(c, 1);
}

TEST(CompleteSplit, Examples) {
  EXPECT_TRUE(check_complete_split(cyclic(4, {1, 2, 3}, 1, 0, 1)).verified());
  GroupSpec g({4, 4});
  std::vector<GroupElement> s;
  for (int b = 0; b < 2; ++b)
    for (int a = 1; a <= 3; ++a) s.push_back(b == 0 ? g.make({a, 0}) : g.make({0, a}));
  EXPECT_TRUE(check_complete_split(SplitterSet(g, s, {1, 0}, 2)).verified());
}

TEST(CompleteSplit, UncoveredWitness) {
  auto r = check_complete_split(cyclic(8, {1, 3}, 1, 0, 2));
  ASSERT_FALSE(r.verified());
  EXPECT_EQ(r.witness->kind, SplitWitness::Kind::uncovered);
  EXPECT_EQ(r.witness->element, GroupElement{{7}});
}

TEST(Histogram, Examples) {
  auto r = multiplicity_histogram(cyclic(8, {1, 7}, 1, 0, 2));
  EXPECT_EQ(r.lambda, 2u);
  std::uint64_t total = 0;
  for (auto [m, c] : r.histogram) total += c;
  EXPECT_EQ(total, 8u);
  EXPECT_EQ(multiplicity_histogram(cyclic(8, {1, 3}, 1, 0, 2)).lambda, 1u);
}

TEST(Histogram, MatchesImageOracle) {
  auto s = cyclic(13, {1, 5, 6}, 2, 1, 2);
  auto r = multiplicity_histogram(s);
  auto img = oracle::images({13}, residues(s), 2, 1, 2);
  std::map<std::uint64_t, std::uint64_t> hist;
  int max = 0;
  for (const auto& [g, c] : img) {
    ++hist[c];
    max = std::max(max, c);
  }
  if (img.size() < 13) hist[0] += 13 - img.size();
  EXPECT_EQ(r.histogram, hist);
  EXPECT_EQ(r.lambda, static_cast<std::uint64_t>(max));
}

TEST(SplitProperties, RandomInstancesAgreeAcrossImplementations) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 150; ++trial) {
    auto s = random_instance(rng);
    auto p1 = check_partial_split(s, 1);
    auto p3 = check_partial_split(s, 3);
    auto c1 = check_complete_split(s, 1);
    auto c3 = check_complete_split(s, 3);
    auto h1 = multiplicity_histogram(s, 1);
    auto h3 = multiplicity_histogram(s, 3);

    // worker count never changes a report
    ASSERT_EQ(p1.verdict, p3.verdict);
    ASSERT_EQ(p1.witness.has_value(), p3.witness.has_value());
    if (p1.witness) {
      ASSERT_EQ(p1.witness->first, p3.witness->first);
      ASSERT_EQ(p1.witness->second, p3.witness->second);
    }
    ASSERT_EQ(c1.verdict, c3.verdict);
    if (c1.witness) ASSERT_EQ(c1.witness->element, c3.witness->element);
    ASSERT_EQ(h1.histogram, h3.histogram);

    // kernel vs serial reference
    ASSERT_EQ(p1.verdict, reference::check_partial_split(s).verdict);
    ASSERT_EQ(c1.verdict, reference::check_complete_split(s).verdict);
    auto hr = reference::multiplicity_histogram(s);
    ASSERT_EQ(h1.histogram, hr.histogram);
    ASSERT_EQ(h1.lambda, hr.lambda);

    // partial <=> lambda = 1
    ASSERT_EQ(p1.verified(), *h1.lambda == 1);

    // tiling count
    const auto order = s.group().order();
    if (p1.verified() && c1.verified()) ASSERT_EQ(BigInt(p1.image_size), order);
    if (p1.verified()) ASSERT_EQ(BigInt(p1.image_size), s.nonzero_combinations() + 1);

    // witness validity
    if (p1.witness) {
      const auto& w = *p1.witness;
      ASSERT_EQ(phi(s, w.first), w.element);
      if (w.kind == SplitWitness::Kind::collision) {
        ASSERT_EQ(phi(s, w.second), w.element);
        ASSERT_NE(w.first, w.second);
      } else {
        ASSERT_EQ(w.element, s.group().identity());
      }
    }
  }
}

TEST(SplitProperties, PermutationAndNegationInvariance) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = random_instance(rng);
    auto elems = s.elements();
    std::shuffle(elems.begin(), elems.end(), rng);
    SplitterSet perm(s.group(), elems, s.magnitudes(), s.t());
    EXPECT_EQ(check_partial_split(s).verdict, check_partial_split(perm).verdict);
    if (s.magnitudes().kplus == s.magnitudes().kminus) {
      std::vector<GroupElement> neg;
      for (const auto& e : s.elements()) neg.push_back(group_neg(s.group(), e));
      SplitterSet ns(s.group(), neg, s.magnitudes(), s.t());
      EXPECT_EQ(check_partial_split(s).verdict, check_partial_split(ns).verdict);
    }
  }
}

TEST(SplitLimits, EnumerationBudget) {
  auto saved = limits();
  auto l = saved;
  l.enumeration = 10;
  set_limits(l);
  EXPECT_THROW(check_partial_split(cyclic(101, {1, 2, 3, 4, 5}, 1, 1, 2)), ResourceError);
  set_limits(saved);
}
