#include <chrono>
#include <random>

#include <gtest/gtest.h>

#include "gsc/ncgb.hpp"
#include "oracles.hpp"

using namespace gsc;

namespace {

const Field Q = Field::rationals();
const auto X2 = indexed_names("x", 2);
const auto X3 = indexed_names("x", 3);

Scalar q(const char* s) { return parse_scalar(s, Q); }
FreePoly px(const char* s, const std::vector<std::string>& names = X2) {
  return parse_free_poly(s, names, Q);
}

Presentation one_relation(const char* rel) { return Presentation::standard(Q, 2, {px(rel)}); }

// x2^2 - lambda*x1^2
FreePoly square_relation(const Scalar& lambda) { return px("x2^2") - px("x1^2") * lambda; }

FreePoly random_poly(std::mt19937_64& rng, int n, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, n - 1), coef(-3, 3);
  FreePoly f(Q, n);
  for (int t = 0; t < 4; ++t) {
    Word w(static_cast<std::size_t>(len(rng)));
    for (auto& x : w) x = letter(rng);
    f.add_term(w, Scalar(Q, static_cast<long>(coef(rng))));
  }
  return f;
}

Word random_word(std::mt19937_64& rng, int n, int len) {
  std::uniform_int_distribution<int> letter(0, n - 1);
  Word w(static_cast<std::size_t>(len));
  for (auto& x : w) x = letter(rng);
  return w;
}

}  // namespace

TEST(NormalForm, SkewRelationStraightens) {
  const auto g = complete(one_relation("x2*x1 - 3*x1*x2"), 6);
  EXPECT_EQ(g.normal_form(px("x2*x1")), px("3*x1*x2"));
  for (const auto& e : g.elements()) EXPECT_TRUE(g.normal_form(e).is_zero());
}

TEST(NormalForm, CommutatorStraightensTwice) {
  const auto g = complete(commutative_polynomial_ring(Q, 2), 6);
  EXPECT_EQ(g.normal_form(px("x1*x2*x1")), px("x1*x1*x2"));
  EXPECT_EQ(g.normal_form(px("x2*x2*x1")), px("x1*x2*x2"));
}

TEST(NormalForm, DegreeAboveTruncationRejected) {
  const auto g = complete(commutative_polynomial_ring(Q, 2), 3);
  try {
    g.normal_form(px("x1*x1*x1*x1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeExceedsTruncation);
  }
}

TEST(Complete, SkewRelationIsAlreadyABasis) {
  const auto g = complete(one_relation("x2*x1 - 5/2*x1*x2"), 6);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.elements()[0], px("x2*x1 - 5/2*x1*x2"));
  EXPECT_EQ(g.overlaps_checked(), 0u);
  EXPECT_EQ(g.overlaps_added(), 0u);
}

TEST(Complete, ThreeCommutatorsResolve) {
  const auto g = complete(commutative_polynomial_ring(Q, 3), 5);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.overlaps_added(), 0u);
}

TEST(Complete, SquareRelationGainsCubicElement) {
  // x2^2 - lambda x1^2: the self-overlap x2 x2 x2 yields x2 x1^2 - x1^2 x2
  for (const char* lambda : {"1", "2", "-1", "1/3"}) {
    const FreePoly r = square_relation(q(lambda));
    const auto g = complete(Presentation::standard(Q, 2, {r}), 5);
    const auto elems = g.elements();
    ASSERT_EQ(elems.size(), 2u) << lambda;
    EXPECT_EQ(elems[1], px("x2*x1^2 - x1^2*x2"));
    // hand check of the S-polynomial
    const FreePoly s = r * px("x2") - px("x2") * r;
    EXPECT_EQ(s, px("x2*x1^2 - x1^2*x2") * q(lambda));
  }
}

TEST(Complete, RejectsInhomogeneousAndHigherDegreeGenerators) {
  try {
    complete(one_relation("x1*x1 - x2"), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InhomogeneousInput);
  }
  Presentation p{Q, {"x", "y"}, {1, 2}, {}};
  EXPECT_THROW(complete(p, 4), Error);
}

TEST(Complete, PrecedenceChangesBasisNotQuotient) {
  const Presentation p = one_relation("x2^2 - 3*x1^2");
  const auto natural = complete(p, 6);
  const auto swapped = complete(p, 6, TermOrder({1, 0}));
  EXPECT_EQ(swapped.leading_words()[0], (Word{0, 0}));
  EXPECT_EQ(hilbert_function(natural).dims, hilbert_function(swapped).dims);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const FreePoly f = random_poly(rng, 2, 4);
    // both bases describe the same ideal: f - NF(f) reduces to zero in the other
    EXPECT_TRUE(swapped.normal_form(f - natural.normal_form(f)).is_zero());
  }
}

TEST(Hilbert, PolynomialRingInTwoVariables) {
  EXPECT_EQ(hilbert_function(commutative_polynomial_ring(Q, 2), 6).dims,
            (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7}));
}

TEST(Hilbert, FreeAlgebra) {
  EXPECT_EQ(hilbert_function(Presentation::standard(Q, 2, {}), 4).dims,
            (std::vector<std::uint64_t>{1, 2, 4, 8, 16}));
}

TEST(Hilbert, BinomialDimensionsForPolynomialRings) {
  for (int d = 1; d <= 3; ++d) {
    const auto dims = hilbert_function(commutative_polynomial_ring(Q, d), 6).dims;
    for (int i = 0; i <= 6; ++i) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(i + d - 1), static_cast<unsigned long>(d - 1));
      EXPECT_EQ(dims[static_cast<std::size_t>(i)], binom.get_ui()) << "d=" << d << " i=" << i;
    }
  }
}

TEST(Hilbert, SquareRelationMatchesRankOracle) {
  // frozen from oracle::hilbert_by_rank
  for (const char* lambda : {"1", "2", "-1"}) {
    const Presentation p = Presentation::standard(Q, 2, {square_relation(q(lambda))});
    EXPECT_EQ(hilbert_function(p, 5).dims, (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(oracle::hilbert_by_rank(p.relations, 2, 5, Q), hilbert_function(p, 5).dims);
  }
}

TEST(Hilbert, AgreesWithRankOracleOnAssortedPresentations) {
  const Field f5 = Field::prime(5);
  std::vector<Presentation> cases;
  cases.push_back(Presentation::standard(Q, 2, {px("x2^2")}));
  cases.push_back(Presentation::standard(Q, 2, {px("x1*x2 + x2*x1")}));
  cases.push_back(Presentation::standard(Q, 2, {px("x1*x2"), px("x2*x1 - x1^2")}));
  cases.push_back(Presentation::standard(Q, 2, {px("x1^3 - x2*x1*x2")}));
  cases.push_back(Presentation::standard(Q, 3, {px("x1*x2 - x2*x1", X3), px("x3^2 - x1*x2", X3)}));
  cases.push_back(Presentation::standard(Q, 3,
                                         {px("x2*x1 - 2*x1*x2", X3), px("x3*x1 - x1*x3", X3), px("x3*x2 + x2*x3", X3)}));
  cases.push_back(Presentation::standard(f5, 2, {parse_free_poly("x2^2 - 2*x1^2", X2, f5)}));
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int t = 0; t < 6; ++t) {
    FreePoly r(Q, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.add_term({i, j}, Scalar(Q, coef(rng)));
    FreePoly s(Q, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s.add_term({i, j}, Scalar(Q, coef(rng)));
    cases.push_back(Presentation::standard(Q, 3, {r, s}));
  }
  for (const auto& p : cases) {
    const int n = p.num_gens();
    const int top = n == 3 ? 5 : 6;
    EXPECT_EQ(hilbert_function(p, top).dims, oracle::hilbert_by_rank(p.relations, n, top, p.field));
  }
}

TEST(Confluence, StrategiesAgreeOnRandomInputs) {
  const std::vector<Presentation> cases{
      commutative_polynomial_ring(Q, 3),
      one_relation("x2^2 - 2*x1^2"),
      Presentation::standard(Q, 3, {px("x2*x1 - 3*x1*x2", X3), px("x3*x1 - x1*x3", X3), px("x3*x2 - 1/3*x2*x3", X3)}),
      Presentation::standard(Q, 2, {px("x1*x2 + x2*x1"), px("x1^2 - x2^2")}),
  };
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (const auto& p : cases) {
    const auto g = complete(p, 6);
    for (int t = 0; t < 60; ++t) {
      const FreePoly f = random_poly(rng, p.num_gens(), 6);
      const FreePoly left = g.normal_form(f, ReductionStrategy::Leftmost);
      EXPECT_EQ(g.normal_form(f, ReductionStrategy::Rightmost), left);
      EXPECT_EQ(g.normal_form(f, ReductionStrategy::Random, &rng), left);
      ++checked;
    }
  }
  EXPECT_GE(checked, 200);
}

TEST(IdealMembership, SandwichedBasisElementsReduceToZero) {
  const auto g = complete(one_relation("x2^2 - 3*x1^2"), 6);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> len(0, 2);
  for (int t = 0; t < 200; ++t) {
    for (const auto& e : g.elements()) {
      const int room = 6 - e.degree();
      const int a = std::min(len(rng), room);
      const int b = std::min(len(rng), room - a);
      EXPECT_TRUE(g.normal_form(e.sandwich(random_word(rng, 2, a), random_word(rng, 2, b))).is_zero());
    }
  }
}

TEST(Serialize, HeaderAndElements) {
  const auto g = complete(one_relation("x2^2 - x1^2"), 4, TermOrder({0, 1}));
  EXPECT_EQ(serialize(g, X2),
            "# order=deglex precedence=x1 < x2 truncation=4 complete_up_to=4\n"
            "x2^2 - x1^2\n"
            "x2*x1^2 - x1^2*x2\n");
}

TEST(Growth, Examples) {
  auto e = growth_estimate({{1, 2, 3, 4, 5, 6, 7}});
  EXPECT_EQ(e.kind, GrowthEstimate::Kind::Polynomial);
  EXPECT_EQ(e.delta, 1);
  EXPECT_EQ(growth_estimate({{1, 2, 4, 8, 16, 32}}).kind, GrowthEstimate::Kind::Exponential);
  auto c = growth_estimate({{1, 1, 1, 1, 1, 1}});
  EXPECT_EQ(c.label(), "polynomial(0)");
  EXPECT_EQ(growth_estimate({{1, 3, 6, 10, 15, 21, 28}}).label(), "polynomial(2)");
  EXPECT_EQ(growth_estimate({{1, 2, 3, 5, 8, 13, 21}}).label(), "exponential");
  EXPECT_EQ(growth_estimate({{1, 2, 3, 3, 6, 6, 12}}).label(), "inconclusive");
}

TEST(Growth, WindowTooShort) {
  try {
    growth_estimate({{1, 2, 3, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WindowTooShort);
  }
}
