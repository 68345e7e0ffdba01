#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "basisorder/bitset.hpp"
#include "basisorder/error.hpp"
#include "basisorder/periodic_set.hpp"
#include "oracle.hpp"

namespace basisorder {
namespace {

using EPS = EventuallyPeriodicSet;
using V = std::vector<std::uint64_t>;

EPS tail(std::uint64_t n, V r) { return EPS::periodic(n, std::move(r)); }

TEST(Bitset, OrShiftedCrossesWords) {
  Bitset src(130), dst(200);
  src.set(0);
  src.set(63);
  src.set(129);
  dst.or_shifted(src, 65);
  EXPECT_TRUE(dst.test(65));
  EXPECT_TRUE(dst.test(128));
  EXPECT_TRUE(dst.test(194));
  EXPECT_EQ(dst.count(), 3u);
  Bitset small(70);
  small.or_shifted(src, 65);  // bits past the end are dropped
  EXPECT_EQ(small.count(), 1u);
  EXPECT_EQ(small.find_next(0), 65u);
  EXPECT_EQ(small.find_next(66), small.size());
}

TEST(FiniteSet, SortsAndDedups) {
  const FiniteSet x{5, 0, 5, 2};
  EXPECT_EQ(std::vector<std::uint64_t>(x.elements().begin(), x.elements().end()), (V{0, 2, 5}));
  EXPECT_EQ(x.min(), 0u);
  EXPECT_EQ(x.max(), 5u);
  EXPECT_TRUE(x.contains(2));
  EXPECT_FALSE(x.contains(3));
  EXPECT_THROW(FiniteSet(V{}), InvalidArgument);
}

TEST(EventuallyPeriodicSet, ConstructorValidates) {
  EXPECT_THROW(EPS({}, 0, 0, {}), InvalidArgument);
  EXPECT_THROW(EPS({}, 0, 4, {4}), InvalidArgument);
  EXPECT_THROW(EPS({3}, 3, 1, {0}), InvalidArgument);
}

TEST(Normalize, MinimalPeriod) {
  EXPECT_EQ(normalize(EPS({}, 0, 4, {0, 2})), EPS({}, 0, 2, {0}));
  EXPECT_TRUE(normalize(EPS({}, 0, 4, {0, 2})).is_canonical());
}

TEST(Normalize, LowersThreshold) { EXPECT_EQ(normalize(EPS({3}, 4, 1, {0})), EPS({}, 3, 1, {0})); }

TEST(Normalize, EmptySet) {
  EXPECT_EQ(normalize(EPS({}, 5, 3, {})), EPS());
  EXPECT_EQ(EPS(), EPS({}, 0, 1, {}));
}

TEST(Normalize, PreservesMembership) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const EPS s = oracle::random_set(rng);
    const EPS c = normalize(s);
    for (std::uint64_t x = 0; x < 80; ++x) ASSERT_EQ(oracle::member(s, x), oracle::member(c, x)) << s << " x=" << x;
    ASSERT_EQ(normalize(c), c);
    ASSERT_LE(c.threshold(), s.threshold());
  }
}

TEST(Normalize, EqualSetsHaveEqualForms) {
  // Same subset written with different periods and thresholds.
  EXPECT_EQ(normalize(EPS({0, 1}, 2, 3, {0, 1, 2})), EPS::naturals());
  EXPECT_EQ(normalize(EPS({1, 3, 5}, 6, 6, {1, 3, 5})), EPS::periodic(2, {1}));
}

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(tail(8, {1, 4}), 12));
  EXPECT_FALSE(contains(tail(8, {1, 4}), 2));
  EXPECT_TRUE(contains(EPS({0, 2}, 3, 8, {1, 4}), 2));
  EXPECT_FALSE(contains(EPS({0, 2}, 3, 8, {1, 4}), 1));
}

TEST(Sumset, EvensPlusEvens) {
  EXPECT_EQ(sumset(tail(2, {0}), tail(2, {0})), tail(2, {0}));
}

TEST(Sumset, ZeroIsIdentity) {
  const EPS s = normalize(EPS({0, 2}, 3, 8, {1, 4}));
  EXPECT_EQ(sumset(EPS::from_finite(FiniteSet{0}), s), s);
}

TEST(Sumset, MatchesPairwiseOracle) {
  const EPS s({0, 2}, 3, 8, {1, 4});
  const auto expected = oracle::sum_prefix(oracle::indicator(s, 65), oracle::indicator(s, 65));
  const EPS ss = sumset(s, s);
  for (std::uint64_t x = 0; x <= 64; ++x) EXPECT_EQ(oracle::member(ss, x), expected[x] != 0) << x;
}

TEST(Sumset, EmptyOperandThrows) { EXPECT_THROW(sumset(EPS(), EPS::naturals()), EmptyOperand); }

TEST(Sumset, FiniteOperands) {
  const EPS s = sumset(EPS::from_finite(FiniteSet{1, 3}), EPS::from_finite(FiniteSet{0, 10}));
  EXPECT_TRUE(s.is_finite());
  EXPECT_EQ(prefix(s, 100), (V{1, 3, 11, 13}));
}

TEST(Sumset, RandomAgainstOracle) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const EPS a = oracle::random_set(rng), b = oracle::random_set(rng);
    const EPS s = sumset(a, b);
    ASSERT_TRUE(s.is_canonical());
    const std::uint64_t w = 200;
    const auto expected = oracle::sum_prefix(oracle::indicator(a, w), oracle::indicator(b, w));
    for (std::uint64_t x = 0; x < w; ++x) ASSERT_EQ(oracle::member(s, x), expected[x] != 0) << a << " + " << b << " x=" << x;
  }
}

TEST(HFold, OneIsIdentity) {
  const EPS s = normalize(EPS({0, 2}, 3, 8, {1, 4}));
  EXPECT_EQ(h_fold(s, 1), s);
  EXPECT_THROW(h_fold(s, 0), InvalidArgument);
}

TEST(HFold, Examples) {
  EXPECT_TRUE(is_cofinite(h_fold(tail(5, {2, 4}), 4)));
  EXPECT_FALSE(is_cofinite(h_fold(tail(8, {1, 4}), 6)));
  EXPECT_TRUE(is_cofinite(h_fold(tail(8, {1, 4}), 7)));
}

TEST(HFold, ExactlyHSummands) {
  // Without 0 in the set, 2A and 3A of {1} are disjoint singletons.
  EXPECT_EQ(prefix(h_fold(EPS::from_finite(FiniteSet{1}), 3), 10), (V{3}));
  EXPECT_FALSE(contains(h_fold(tail(3, {1}), 2), 1));
}

TEST(HFold, RandomAgainstOracle) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const EPS a = oracle::random_set(rng, {8, 8, false});
    const std::uint64_t h = std::uniform_int_distribution<std::uint64_t>(1, 5)(rng);
    const EPS s = h_fold(a, h);
    const std::uint64_t w = 150;
    const auto expected = oracle::h_fold_prefix(a, h, w);
    for (std::uint64_t x = 0; x < w; ++x) ASSERT_EQ(oracle::member(s, x), expected[x] != 0) << a << " h=" << h << " x=" << x;
  }
}

TEST(IsCofinite, Examples) {
  EXPECT_TRUE(is_cofinite(EPS::naturals()));
  EXPECT_FALSE(is_cofinite(tail(2, {0})));
  EXPECT_TRUE(is_cofinite(EPS({}, 100, 1, {0})));
  EXPECT_TRUE(is_cofinite(EPS({}, 0, 3, {0, 1, 2})));
  EXPECT_FALSE(is_cofinite(EPS()));
}

TEST(EqualUpToFinite, Examples) {
  const EPS s = tail(8, {1, 4});
  EXPECT_TRUE(equal_up_to_finite(s, insert_finite(s, FiniteSet{2})));
  EXPECT_FALSE(equal_up_to_finite(tail(2, {0}), tail(2, {1})));
  EXPECT_TRUE(equal_up_to_finite(EPS({}, 0, 4, {0, 1, 2}), EPS({3}, 4, 4, {0, 1, 2})));
  EXPECT_TRUE(equal_up_to_finite(EPS(), EPS::from_finite(FiniteSet{4, 9})));
}

TEST(Saturate, Examples) {
  EXPECT_EQ(saturate(EPS::from_finite(FiniteSet{0}), 3), tail(3, {0}));
  EXPECT_EQ(saturate(tail(8, {1, 4}), 4), tail(4, {0, 1}));
  EXPECT_THROW(saturate(EPS(), 3), EmptyOperand);
  EXPECT_THROW(saturate(EPS::naturals(), 0), InvalidArgument);
}

TEST(Saturate, ModulusCoprimeToPeriod) {
  // {x = 1 mod 4} meets every class mod 3.
  EXPECT_EQ(saturate(tail(4, {1}), 3), EPS::naturals());
}

TEST(KneserPeriod, Examples) {
  const EPS two_a = h_fold(tail(4, {0, 1}), 2);
  EXPECT_EQ(two_a, tail(4, {0, 1, 2}));
  EXPECT_EQ(kneser_period(two_a, 16), 4u);
  EXPECT_EQ(kneser_period(EPS({}, 7, 1, {0}), 4), 1u);
  EXPECT_EQ(kneser_period(EPS({0}, 1, 2, {1}), 2), std::nullopt);
  EXPECT_EQ(kneser_period(EPS::naturals(), 0), std::nullopt);
}

TEST(KneserPeriod, RandomAgainstScan) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const EPS s = normalize(oracle::random_set(rng, {6, 10, true}));
    const std::uint64_t cap = 2 * s.modulus();
    ASSERT_EQ(kneser_period(s, cap), oracle::kneser_scan(s, cap)) << s;
  }
}

TEST(LowerDensity, Examples) {
  EXPECT_EQ(lower_density(tail(5, {2, 4})), Density(2, 5));
  EXPECT_TRUE(lower_density(EPS::from_finite(FiniteSet{1, 2, 3})).is_zero());
  EXPECT_EQ(lower_density(EPS::naturals()), Density(1, 1));
  EXPECT_EQ(lower_density(EPS({}, 0, 4, {0, 2})), Density(1, 2));
}

TEST(RemoveFinite, Examples) {
  const EPS a = insert_finite(tail(8, {1, 4}), FiniteSet{0, 2});
  EXPECT_EQ(remove_finite(a, FiniteSet{0, 2}), tail(8, {1, 4}));
  // Here 1 lies below the threshold and outside the finite part.
  EXPECT_EQ(remove_finite(EPS({0, 2}, 3, 8, {1, 4}), FiniteSet{0, 2}), normalize(EPS({}, 3, 8, {1, 4})));
  const EPS evens_minus_zero = remove_finite(tail(2, {0}), FiniteSet{0});
  EXPECT_EQ(evens_minus_zero, normalize(EPS({}, 2, 2, {0})));
  EXPECT_FALSE(contains(evens_minus_zero, 0));
  EXPECT_TRUE(contains(evens_minus_zero, 2));
  EXPECT_THROW(remove_finite(tail(2, {0}), FiniteSet{1}), NotASubset);
}

TEST(InsertFinite, RoundTrip) {
  const EPS s = tail(8, {1, 4});
  EXPECT_EQ(remove_finite(insert_finite(s, FiniteSet{0, 2}), FiniteSet{0, 2}), s);
  EXPECT_EQ(insert_finite(s, FiniteSet{9}), s);
}

TEST(Prefix, Examples) {
  EXPECT_EQ(prefix(tail(8, {1, 4}), 12), (V{1, 4, 9, 12}));
  EXPECT_TRUE(prefix(EPS(), 50).empty());
  EXPECT_EQ(prefix(EPS({0, 2}, 3, 8, {1, 4}), 9), (V{0, 2, 4, 9}));
  EXPECT_EQ(prefix(EPS::naturals(), 0), (V{0}));
}

TEST(PrefixBitset, MatchesContains) {
  const EPS s({0, 2}, 3, 8, {1, 4});
  const Bitset b = prefix_bitset(s, 100);
  for (std::uint64_t x = 0; x < 100; ++x) EXPECT_EQ(b.test(x), contains(s, x));
}

TEST(MinElement, Basic) {
  EXPECT_EQ(EPS().min_element(), std::nullopt);
  EXPECT_EQ(tail(8, {1, 4}).min_element(), 1u);
  EXPECT_EQ(EPS({}, 10, 3, {2}).min_element(), 11u);
}

}  // namespace
}  // namespace basisorder
