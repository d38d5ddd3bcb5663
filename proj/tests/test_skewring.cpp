#include <random>

#include <gtest/gtest.h>

#include "gsc/skewring.hpp"
#include "oracles.hpp"

using namespace gsc;

namespace {

const Field Q = Field::rationals();

Scalar q(const char* s) { return parse_scalar(s, Q); }
Scalar q(int v) { return Scalar(Q, static_cast<long>(v)); }

Matrix mat(const Field& f, std::vector<Vector> rows) { return Matrix::from_rows(f, rows, rows.size()); }

// Example data on two generators: M1 = [[0,1],[mu21,0]], M2 = diag(1, lambda) scaled by 2.
struct Pair {
  SkewRing ring;
  SkewPoly q1, q2;
};

Pair pair_data(const Scalar& mu12, const Scalar& lambda) {
  const Field& f = mu12.field();
  const MuMatrix mu = MuMatrix::two(mu12);
  const Scalar one = Scalar::one(f), zero = Scalar::zero(f), two = one + one;
  const Matrix m1 = mat(f, {{zero, one}, {mu(1, 0), zero}});
  const Matrix m2 = mat(f, {{two, zero}, {zero, two * lambda}});
  return {SkewRing(mu), quadric(m1, mu), quadric(m2, mu)};
}

SkewPoly sp(const char* text, int n, const Field& f = Q) { return parse_skew_poly(text, n, f); }

MuMatrix random_mu(std::mt19937_64& rng, int n, const Field& f = Q) {
  std::uniform_int_distribution<long> val(1, 4), sign(0, 1);
  Matrix m(f, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = Scalar::one(f);
    for (int j = i + 1; j < n; ++j) {
      Scalar a(f, val(rng));
      if (sign(rng)) a = -a;
      if (val(rng) > 2) a = a.inverse();
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = a;
      m(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = a.inverse();
    }
  }
  return MuMatrix(m);
}

Matrix random_mu_symmetric(std::mt19937_64& rng, const MuMatrix& mu) {
  std::uniform_int_distribution<long> val(-3, 3);
  const auto n = static_cast<std::size_t>(mu.n());
  Matrix m(mu.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = Scalar(mu.field(), val(rng));
      m(j, i) = i == j ? m(i, j) : m(i, j) * mu(static_cast<int>(j), static_cast<int>(i));
    }
  return m;
}

}  // namespace

TEST(MuMatrix, Validation) {
  EXPECT_NO_THROW(MuMatrix::two(q("2")));
  try {
    MuMatrix(mat(Q, {{q(1), q(2)}, {q(1), q(1)}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidMu);
    EXPECT_NE(std::string(e.what()).find("mu_12 * mu_21 = 2"), std::string::npos);
  }
  try {
    MuMatrix(mat(Q, {{q(-1), q(1)}, {q(1), q(1)}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("mu_11 = -1"), std::string::npos);
  }
}

TEST(MuSymmetric, Examples) {
  for (const char* m12 : {"2", "-1", "1/3"}) {
    const MuMatrix mu = MuMatrix::two(q(m12));
    EXPECT_TRUE(is_mu_symmetric(mat(Q, {{q(0), q(1)}, {mu(1, 0), q(0)}}), mu));
    EXPECT_TRUE(is_mu_symmetric(Matrix::identity(Q, 2), mu));
    EXPECT_FALSE(is_mu_symmetric(mat(Q, {{q(0), q(1)}, {q(0), q(0)}}), mu));
  }
  EXPECT_THROW(is_mu_symmetric(Matrix::identity(Q, 3), MuMatrix::two(q(2))), Error);
}

TEST(Straighten, Examples) {
  const MuMatrix mu2 = MuMatrix::two(q(3));
  EXPECT_EQ(straighten({1, 0}, mu2), std::make_pair(Exponent{1, 1}, q(3)));
  EXPECT_EQ(straighten({1, 0, 1}, mu2), std::make_pair(Exponent{1, 2}, q(3)));
  std::mt19937_64 rng(3);
  const MuMatrix mu3 = random_mu(rng, 3);
  const auto [e, c] = straighten({2, 1, 0}, mu3);
  EXPECT_EQ(e, (Exponent{1, 1, 1}));
  EXPECT_EQ(c, mu3(0, 2) * mu3(1, 2) * mu3(0, 1));
  // two explicit straightening orders of z3z2z1
  const Scalar via_front = mu3(1, 2) * mu3(0, 2) * mu3(0, 1);  // z3z2 first
  const Scalar via_back = mu3(0, 1) * mu3(0, 2) * mu3(1, 2);   // z2z1 first
  EXPECT_EQ(c, via_front);
  EXPECT_EQ(c, via_back);
}

TEST(Straighten, OrderIndependentUnderRandomSwaps) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> n_dist(2, 4), len(0, 7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = n_dist(rng);
    const MuMatrix mu = random_mu(rng, n);
    Word w(static_cast<std::size_t>(len(rng)));
    std::uniform_int_distribution<int> letter(0, n - 1);
    for (auto& x : w) x = letter(rng);
    const auto expected = straighten(w, mu);
    EXPECT_EQ(oracle::straighten_by_swaps(w, mu, rng), expected);
    EXPECT_EQ(oracle::straighten_by_swaps(w, mu, rng), expected);
  }
}

TEST(SkewRing, MultiplicationIsAssociativeAndMatchesStraightening) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> len(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const SkewRing ring(random_mu(rng, 3));
    auto rnd = [&] {
      FreePoly f(Q, 3);
      std::uniform_int_distribution<int> letter(0, 2);
      std::uniform_int_distribution<long> c(-2, 2);
      for (int t = 0; t < 3; ++t) {
        Word w(static_cast<std::size_t>(len(rng)));
        for (auto& x : w) x = letter(rng);
        f.add_term(w, Scalar(Q, c(rng)));
      }
      return f;
    };
    const FreePoly a = rnd(), b = rnd(), c = rnd();
    const SkewPoly sa = ring.from_free(a), sb = ring.from_free(b), sc = ring.from_free(c);
    EXPECT_EQ(ring.mul(ring.mul(sa, sb), sc), ring.mul(sa, ring.mul(sb, sc)));
    EXPECT_EQ(ring.mul(sa, sb), ring.from_free(a * b));
  }
}

TEST(Quadric, Examples) {
  for (const char* l : {"1", "2", "-1", "0"}) {
    const Scalar lambda = q(l);
    for (const char* m : {"2", "3", "-1", "1/2"}) {
      const Pair p = pair_data(q(m), lambda);
      EXPECT_EQ(p.q1, sp("2*z1*z2", 2));
      SkewPoly expected = sp("2*z1^2", 2);
      expected.add_term({0, 2}, q(2) * lambda);
      EXPECT_EQ(p.q2, expected);
    }
  }
  EXPECT_TRUE(quadric(Matrix(Q, 2, 2), MuMatrix::two(q(2))).is_zero());
  try {
    quadric(mat(Q, {{q(0), q(1)}, {q(0), q(0)}}), MuMatrix::two(q(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMuSymmetric);
  }
  EXPECT_EQ(format(pair_data(q(2), q(-1)).q2), "2*z1^2 - 2*z2^2");
  EXPECT_EQ(format(pair_data(q(2), q(-1)).q2.monic()), "z1^2 - z2^2");
}

TEST(Quadric, LinearAndRelationRedundancy) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    const MuMatrix mu = random_mu(rng, n);
    const Matrix a = random_mu_symmetric(rng, mu), b = random_mu_symmetric(rng, mu);
    Matrix s(Q, a.rows(), a.cols());
    const Scalar t = q(-3);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j) + t * b(i, j);
    EXPECT_EQ(quadric(s, mu), quadric(a, mu) + quadric(b, mu) * t);
    // expand word by word then straighten
    const SkewRing ring(mu);
    FreePoly expanded(Q, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) expanded.add_term({i, j}, a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    EXPECT_EQ(ring.from_free(expanded), quadric(a, mu));
    // (j,i) relation = mu_ji * (i,j) relation: x_j x_i + mu_ji x_i x_j vs x_i x_j + mu_ij x_j x_i
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        FreePoly rij(Q, n), rji(Q, n);
        rij.add_term({i, j}, q(1));
        rij.add_term({j, i}, mu(i, j));
        rji.add_term({j, i}, q(1));
        rji.add_term({i, j}, mu(j, i));
        EXPECT_EQ(rji, rij * mu(j, i));
        EXPECT_EQ(a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)),
                  mu(j, i) * a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      }
  }
}

TEST(Normality, GeneratorsAreNormal) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const SkewRing ring(random_mu(rng, 3));
    for (int i = 0; i < 3; ++i) {
      const auto cert = is_normal(ring.var(i), {}, ring);
      EXPECT_TRUE(cert.verdict);
      EXPECT_TRUE(verify_certificate(cert, ring));
    }
  }
}

TEST(Normality, FirstQuadricWitnesses) {
  for (const char* m : {"2", "3", "-1"}) {
    const Scalar mu12 = q(m), mu21 = mu12.inverse();
    const Pair p = pair_data(mu12, q(1));
    const auto cert = is_normal(p.q1.monic(), {}, p.ring);
    ASSERT_TRUE(cert.verdict);
    EXPECT_FALSE(cert.degenerate);
    EXPECT_EQ(cert.degree_checked, 3);
    // q1 z1 = mu12 z1 q1 and q1 z2 = mu21 z2 q1
    EXPECT_EQ(cert.right_witness, mat(Q, {{mu12, q(0)}, {q(0), mu21}}));
    EXPECT_EQ(cert.left_witness, mat(Q, {{mu21, q(0)}, {q(0), mu12}}));
    EXPECT_TRUE(verify_certificate(cert, p.ring));
    const std::string text = format_certificate(cert);
    const std::string coef = mu12 == q(-1) ? "-" : mu12.str() + "*";
    EXPECT_NE(text.find("r*z1 = " + coef + "z1*r mod ideal"), std::string::npos) << text;
  }
}

TEST(Normality, SecondQuadricInS) {
  for (const char* l : {"1", "2", "-1", "1/3"})
    for (const char* m : {"2", "3", "1/2", "-2"}) {
      const Pair p = pair_data(q(m), q(l));
      const auto cert = is_normal(p.q2, {}, p.ring);
      EXPECT_FALSE(cert.verdict) << l << " " << m;
      EXPECT_TRUE(verify_certificate(cert, p.ring));
      EXPECT_FALSE(oracle::normal_by_linear_algebra(p.q2, {}, p.ring));
    }
  for (const char* m : {"1", "-1"}) {
    const Pair p = pair_data(q(m), q(2));
    EXPECT_TRUE(is_normal(p.q2, {}, p.ring).verdict);
  }
  const Pair p0 = pair_data(q(3), q(0));
  EXPECT_TRUE(is_normal(p0.q2, {}, p0.ring).verdict);
}

TEST(Normality, SecondQuadricModuloFirst) {
  for (const char* l : {"0", "1", "2", "-1"})
    for (const char* m : {"1", "-1", "2", "3"}) {
      const Pair p = pair_data(q(m), q(l));
      const std::vector<SkewPoly> ideal{p.q1};
      const auto cert = is_normal(p.q2, ideal, p.ring);
      EXPECT_TRUE(cert.verdict) << l << " " << m;
      EXPECT_TRUE(verify_certificate(cert, p.ring));
      EXPECT_EQ(cert.verdict, oracle::normal_by_linear_algebra(p.q2, ideal, p.ring));
    }
}

TEST(Normality, AgreesWithOracleOnRandomElements) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> c(-1, 1);
  int normal = 0, total = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 2;
    const SkewRing ring(random_mu(rng, n));
    auto rnd2 = [&] {
      SkewPoly f = ring.zero();
      for (const auto& e : ring.monomials(2)) f.add_term(e, Scalar(Q, c(rng)));
      return f;
    };
    const SkewPoly r = rnd2();
    if (r.is_zero()) continue;
    std::vector<SkewPoly> ideal;
    if (trial % 3 == 0) ideal.push_back(rnd2());
    const auto cert = is_normal(r, ideal, ring);
    EXPECT_EQ(cert.verdict, oracle::normal_by_linear_algebra(r, ideal, ring));
    EXPECT_TRUE(verify_certificate(cert, ring));
    normal += cert.verdict;
    ++total;
  }
  EXPECT_GT(normal, 0);
  EXPECT_LT(normal, total);
}

TEST(Normality, ScalingAndIdealBasisInvariance) {
  const Pair p = pair_data(q(2), q(3));
  const std::vector<SkewPoly> ideal{p.q1};
  const std::vector<SkewPoly> ideal_scaled{p.q1 * q("-5/7")};
  for (const auto& r : {p.q2, p.q1 + p.q2, p.q2 - p.q1 * q(4)}) {
    const bool base = is_normal(r, {}, p.ring).verdict;
    EXPECT_EQ(is_normal(r * q("3/2"), {}, p.ring).verdict, base);
    EXPECT_EQ(is_normal(r * q(-1), {}, p.ring).verdict, base);
    EXPECT_EQ(is_normal(r, ideal, p.ring).verdict, is_normal(r * q(7), ideal_scaled, p.ring).verdict);
  }
  const SkewRing ring3(MuMatrix::ones(Q, 3));
  const SkewPoly a = sp("z1^2", 3), b = sp("z2*z3", 3);
  const std::vector<SkewPoly> j1{a, b}, j2{a + b, a - b * q(2)};
  const SkewPoly r = sp("z1*z2 + z3^2", 3);
  EXPECT_EQ(is_normal(r, j1, ring3).verdict, is_normal(r, j2, ring3).verdict);
}

TEST(Normality, DegenerateAndErrors) {
  const Pair p = pair_data(q(2), q(1));
  const std::vector<SkewPoly> ideal{p.q1};
  const auto cert = is_normal(p.q1 * q(3), ideal, p.ring);
  EXPECT_TRUE(cert.verdict);
  EXPECT_TRUE(cert.degenerate);
  try {
    is_normal(p.q1 + p.ring.var(0), {}, p.ring);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InhomogeneousElement);
  }
  try {
    is_normal(p.ring.one(), {}, p.ring);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeZeroElement);
  }
}

TEST(NormalizingSequence, Examples) {
  const Pair p0 = pair_data(q(2), q(0));
  const std::vector<SkewPoly> gens{p0.ring.var(0), p0.ring.var(1)};
  EXPECT_TRUE(is_normalizing_sequence(gens, {}, p0.ring).verdict);
  const std::vector<SkewPoly> s12{p0.q1, p0.q2};
  const auto r0 = is_normalizing_sequence(s12, {}, p0.ring);
  EXPECT_TRUE(r0.verdict);
  EXPECT_TRUE(r0.proper_by_grading);
  for (const auto& c : r0.steps) EXPECT_TRUE(verify_certificate(c, p0.ring));

  const Pair p = pair_data(q(2), q(1));
  const std::vector<SkewPoly> s21{p.q2, p.q1};
  const auto r = is_normalizing_sequence(s21, {}, p.ring);
  EXPECT_FALSE(r.verdict);
  ASSERT_TRUE(r.failed_step.has_value());
  EXPECT_EQ(*r.failed_step, 0u);
}

TEST(Spanning, Examples) {
  const Pair p = pair_data(q(2), q(1));
  const std::vector<SkewPoly> v{p.q1, p.q2};
  EXPECT_TRUE(spanning_check(std::vector<SkewPoly>{p.q1, p.q2}, v));
  EXPECT_FALSE(spanning_check(std::vector<SkewPoly>{p.q1, p.q1}, v));
  EXPECT_TRUE(spanning_check(std::vector<SkewPoly>{p.q1 + p.q2, p.q2}, v));
  EXPECT_THROW(spanning_check(std::vector<SkewPoly>{p.ring.var(0)}, v), Error);
}

TEST(Search, Examples) {
  const Pair p0 = pair_data(q(2), q(0));
  const std::vector<SkewPoly> v0{p0.q1, p0.q2};
  auto found = find_normalizing_sequence(v0, {}, p0.ring);
  EXPECT_EQ(found.status, SearchResult::Status::Found);
  ASSERT_EQ(found.sequence.size(), 2u);
  EXPECT_TRUE(spanning_check(found.sequence, v0));
  for (const auto& c : found.certificates) EXPECT_TRUE(verify_certificate(c, p0.ring));

  const std::vector<SkewPoly> squares{sp("z1^2", 2), sp("z2^2", 2)};
  auto sq = find_normalizing_sequence(squares, {}, p0.ring);
  EXPECT_EQ(sq.status, SearchResult::Status::Found);
  EXPECT_EQ(sq.sequence, squares);
}

TEST(Search, PrimeFieldEnumeration) {
  // frozen: q1 = z1 z2 is normal in S and q2 is normal modulo q1, so the
  // enumeration finds (q1, q2) even though q2 alone is not normal.
  const Field f5 = Field::prime(5);
  const Pair p = pair_data(Scalar(f5, 2L), Scalar(f5, 1L));
  const std::vector<SkewPoly> v{p.q1, p.q2};
  const auto res = find_normalizing_sequence(v, {}, p.ring);
  EXPECT_EQ(res.status, SearchResult::Status::Found);
  ASSERT_EQ(res.sequence.size(), 2u);
  EXPECT_EQ(res.sequence[0].monic(), p.q1.monic());
  EXPECT_TRUE(spanning_check(res.sequence, v));
  for (const auto& c : res.certificates) EXPECT_TRUE(verify_certificate(c, p.ring));
}

TEST(Search, PrimeFieldCertifiedNegative) {
  // span{z1^2 + z2^2, z1^2 + 2 z2^2} = span{z1^2, z2^2} is fine, so use a
  // space with no normal element: over F_5 with mu12 = 2, span{z1^2 + z2^2}.
  const Field f5 = Field::prime(5);
  const SkewRing ring(MuMatrix::two(Scalar(f5, 2L)));
  const std::vector<SkewPoly> v{sp("z1^2 + z2^2", 2, f5)};
  const auto res = find_normalizing_sequence(v, {}, ring);
  EXPECT_EQ(res.status, SearchResult::Status::NotFoundExhaustive);
  EXPECT_GE(res.checks, 1u);
}

TEST(Search, RationalFailureIsUnknown) {
  const SkewRing ring(MuMatrix::two(q(2)));
  const std::vector<SkewPoly> v{sp("z1^2 + z2^2", 2)};
  const auto res = find_normalizing_sequence(v, {}, ring);
  EXPECT_EQ(res.status, SearchResult::Status::Unknown);
}
