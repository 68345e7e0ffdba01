#include <random>

#include <gtest/gtest.h>

#include "basisorder/bounds.hpp"
#include "basisorder/error.hpp"
#include "basisorder/invariants.hpp"
#include "oracle.hpp"

namespace basisorder {
namespace {

using EPS = EventuallyPeriodicSet;

TEST(Delta, FiniteSets) {
  EXPECT_EQ(delta(FiniteSet{0, 2, 4}), 2u);
  EXPECT_EQ(delta(FiniteSet{0, 3, 6, 9}), 3u);
  EXPECT_EQ(delta(FiniteSet{4, 10, 25}), 3u);
  EXPECT_THROW(delta(FiniteSet{5}), TooFewElements);
}

TEST(Delta, PeriodicSets) {
  EXPECT_EQ(delta(EPS::periodic(8, {1, 4})), 1u);
  EXPECT_EQ(delta(EPS::periodic(6, {2, 4})), 2u);
  EXPECT_EQ(delta(EPS::periodic(6, {3})), 6u);
  EXPECT_EQ(delta(EPS({1}, 2, 4, {3})), 2u);
  EXPECT_THROW(delta(EPS::from_finite(FiniteSet{3})), TooFewElements);
  EXPECT_THROW(delta(EPS()), TooFewElements);
}

TEST(Diam, Examples) {
  EXPECT_EQ(diam(FiniteSet{5}), 0u);
  EXPECT_EQ(diam(FiniteSet{0, 2}), 2u);
  EXPECT_EQ(diam(FiniteSet{0, 3, 6, 9}), 9u);
}

TEST(DOf, Examples) {
  EXPECT_EQ(d_of(FiniteSet{0, 4, 8, 12}), Rational(3));
  EXPECT_EQ(d_of(FiniteSet{0, 3, 6}), Rational(2));
  EXPECT_EQ(d_of(FiniteSet{0, 1, 5}), Rational(5));
  EXPECT_EQ(d_of(FiniteSet{0, 4, 6}), Rational(3));
  EXPECT_THROW(d_of(FiniteSet{1}), TooFewElements);
}

TEST(Eta, Examples) {
  const auto prop = prop41_instance(2, 2);
  const EtaResult e = eta(prop.a, prop.x);
  EXPECT_EQ(e.value, 2u);
  EXPECT_EQ(e.witness, std::make_pair(std::uint64_t{2}, std::uint64_t{4}));

  const EPS evens = EPS::periodic(2, {0});
  EXPECT_EQ(eta(evens, FiniteSet{0, 2}).value, 2u);

  const auto sec = section2_instance(1, 2);
  const EtaResult s = eta(sec.a, sec.x);
  EXPECT_EQ(s.value, 3u);
  EXPECT_EQ(s.witness, std::make_pair(std::uint64_t{1}, std::uint64_t{4}));
}

TEST(Eta, Errors) {
  EXPECT_THROW(eta(EPS::from_finite(FiniteSet{0, 1, 5}), FiniteSet{0, 1}), NoQualifyingPair);
  EXPECT_THROW(eta(EPS::periodic(2, {0}), FiniteSet{1}), NotASubset);
}

TEST(Mu, Examples) {
  const auto prop = prop41_instance(2, 2);
  const MuResult m = mu(prop.a, prop.x);
  EXPECT_EQ(m.value, 2u);
  EXPECT_EQ(m.witness, 2u);

  EXPECT_EQ(mu(EPS::naturals(), FiniteSet{0}).value, 1u);

  const auto sec = section2_instance(1, 2);
  const MuResult s = mu(sec.a, sec.x);
  EXPECT_EQ(s.value, 2u);
  EXPECT_EQ(s.witness, 1u);
}

TEST(Mu, Errors) {
  EXPECT_THROW(mu(EPS::from_finite(FiniteSet{0, 1}), FiniteSet{0, 1}), EmptyComplement);
  EXPECT_THROW(mu(EPS::periodic(2, {0}), FiniteSet{3}), NotASubset);
}

TEST(Mu, FarElementBeyondThreshold) {
  // The nearest y sits past a large threshold and above max(X).
  const EPS a({0, 1}, 50, 7, {3});
  const MuResult m = mu(a, FiniteSet{0, 1});
  EXPECT_EQ(m.witness, 52u);
  EXPECT_EQ(m.value, 52u);
}

TEST(Invariants, Bundle) {
  const auto sec = section2_instance(2, 3);
  const InstanceInvariants inv = compute_invariants(sec.a, sec.x);
  ASSERT_TRUE(inv.delta_x.has_value());
  EXPECT_EQ(*inv.delta_x, 3u);
  EXPECT_EQ(inv.diam_x, 6u);
  EXPECT_EQ(inv.d_x, Rational(2));

  const InstanceInvariants single = compute_invariants(EPS::naturals(), FiniteSet{0});
  EXPECT_FALSE(single.delta_x.has_value());
  EXPECT_FALSE(single.d_x.has_value());
  EXPECT_EQ(single.diam_x, 0u);
  EXPECT_EQ(single.eta.value, 1u);
}

TEST(Invariants, RandomAgainstBruteForce) {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 200; ++i) {
    const auto [a, xs] = oracle::random_instance(rng);
    const FiniteSet x(xs);
    const std::uint64_t window = 10 * (a.threshold() + a.modulus() + x.max() + diam(x) + 1);
    const auto rest = oracle::elements_below(a, window, xs);
    const auto eta_ref = oracle::eta_brute(rest, diam(x));
    const auto mu_ref = oracle::mu_brute(rest, x.min(), x.max());
    ASSERT_TRUE(eta_ref && mu_ref);
    EXPECT_EQ(eta(a, x).value, *eta_ref) << a;
    EXPECT_EQ(mu(a, x).value, *mu_ref) << a;
  }
}

}  // namespace
}  // namespace basisorder
