#include <random>

#include <gtest/gtest.h>

#include "gsc/gsca.hpp"
#include "oracles.hpp"

using namespace gsc;

namespace {

const Field Q = Field::rationals();

Scalar q(const char* s) { return parse_scalar(s, Q); }

Matrix mat(const Field& f, std::vector<Vector> rows) { return Matrix::from_rows(f, rows, rows.size()); }

std::pair<MuMatrix, std::vector<Matrix>> pair_data(const Scalar& mu12, const Scalar& lambda) {
  const Field& f = mu12.field();
  const MuMatrix mu = MuMatrix::two(mu12);
  const Scalar one = Scalar::one(f), zero = Scalar::zero(f), two = one + one;
  return {mu, {mat(f, {{zero, one}, {mu(1, 0), zero}}), mat(f, {{two, zero}, {zero, two * lambda}})}};
}

MuMatrix random_mu(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> val(1, 3), sign(0, 1);
  Matrix m = Matrix::identity(Q, static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.rows(); ++j) {
      Scalar a(Q, val(rng));
      if (sign(rng)) a = -a.inverse();
      m(i, j) = a;
      m(j, i) = a.inverse();
    }
  return MuMatrix(m);
}

std::vector<Matrix> random_matrices(std::mt19937_64& rng, const MuMatrix& mu) {
  std::uniform_int_distribution<long> val(-2, 2);
  const auto n = static_cast<std::size_t>(mu.n());
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < n; ++k) {
    Matrix m(Q, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        m(i, j) = Scalar(Q, val(rng));
        m(j, i) = i == j ? m(i, j) : m(i, j) * mu(static_cast<int>(j), static_cast<int>(i));
      }
    out.push_back(std::move(m));
  }
  return out;
}

bool independent(const std::vector<Matrix>& ms) {
  const std::size_t n = ms.size();
  Matrix m(Q, n, n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t e = 0; e < n * n; ++e) m(k, e) = ms[k](e / n, e % n);
  return rank(m) == n;
}

}  // namespace

TEST(BuildGsca, ExampleRelations) {
  const auto [mu, ms] = pair_data(q("3"), q("5"));
  const auto p = build_gsca(mu, ms);
  ASSERT_EQ(p.relations.size(), 4u);
  EXPECT_EQ(p.relation_str(1), "3*x2*x1 + x1*x2 = y1");
  EXPECT_EQ(p.relation_str(0), "2*x1^2 = 2*y2");
  EXPECT_EQ(p.relation_str(3), "2*x2^2 = 10*y2");
  const auto report = validate_presentation(p.presentation);
  EXPECT_TRUE(report.graded);
  EXPECT_FALSE(report.generated_in_degree_one);
}

TEST(BuildGsca, TrivialCases) {
  const MuMatrix one = MuMatrix::ones(Q, 1);
  const auto p = build_gsca(one, {mat(Q, {{q("2")}})});
  ASSERT_EQ(p.relations.size(), 1u);
  EXPECT_EQ(p.relation_str(0), "2*x1^2 = 2*y1");
  const MuMatrix mu = MuMatrix::two(q("2"));
  const auto z = build_gsca(mu, {Matrix(Q, 2, 2), Matrix(Q, 2, 2)});
  EXPECT_EQ(z.relation_str(1), "2*x2*x1 + x1*x2 = 0");
}

TEST(BuildGsca, Errors) {
  const MuMatrix mu = MuMatrix::two(q("2"));
  try {
    build_gsca(mu, {mat(Q, {{q("0"), q("1")}, {q("0"), q("0")}}), Matrix::identity(Q, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMuSymmetric);
  }
  try {
    build_gsca(mu, {Matrix::identity(Q, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeMismatch);
  }
}

TEST(EliminateY, Example) {
  for (const char* l : {"0", "1", "2", "-1"})
    for (const char* m : {"1", "-1", "2", "3"}) {
      const auto [mu, ms] = pair_data(q(m), q(l));
      const auto e = eliminate_y(build_gsca(mu, ms));
      const auto x = indexed_names("x", 2);
      ASSERT_EQ(e.y_definitions.size(), 2u);
      FreePoly y1 = parse_free_poly("x1*x2", x, Q);
      y1.add_term({1, 0}, q(m));
      EXPECT_EQ(e.y_definitions[0], y1);
      EXPECT_EQ(e.y_definitions[1], parse_free_poly("x1^2", x, Q));
      ASSERT_EQ(e.x_relations.size(), 1u);
      EXPECT_EQ(e.x_relations[0], parse_free_poly("x2^2", x, Q) - parse_free_poly("x1^2", x, Q) * q(l));
      EXPECT_TRUE(validate_presentation(e.presentation).quadratic);
    }
}

TEST(EliminateY, TrivialAndDependent) {
  const auto e = eliminate_y(build_gsca(MuMatrix::ones(Q, 1), {mat(Q, {{q("2")}})}));
  EXPECT_EQ(format(e.y_definitions[0], indexed_names("x", 1)), "x1^2");
  EXPECT_TRUE(e.x_relations.empty());
  const auto [mu, ms] = pair_data(q("2"), q("1"));
  try {
    eliminate_y(build_gsca(mu, {ms[0], ms[0]}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::MatricesLinearlyDependent);
    EXPECT_NE(std::string(err.what()).find("M_2"), std::string::npos);
  }
}

TEST(EliminateY, SubstitutionAndRelationCount) {
  std::mt19937_64 rng(12);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 200; ++trial) {
    const int n = 2 + trial % 2;
    const MuMatrix mu = random_mu(rng, n);
    const auto ms = random_matrices(rng, mu);
    if (!independent(ms)) continue;
    const auto p = build_gsca(mu, ms);
    const auto e = eliminate_y(p);
    ASSERT_EQ(e.x_relations.size(), static_cast<std::size_t>(n * (n - 1) / 2));
    // lhs - sum M_ij y_k with y substituted lies in span(x_relations)
    for (const auto& r : p.relations) {
      FreePoly sub(Q, n);
      sub.add_term({r.i, r.j}, Scalar::one(Q));
      sub.add_term({r.j, r.i}, mu(r.i, r.j));
      for (int k = 0; k < n; ++k)
        sub -= e.y_definitions[static_cast<std::size_t>(k)] *
               ms[static_cast<std::size_t>(k)](static_cast<std::size_t>(r.i), static_cast<std::size_t>(r.j));
      std::vector<Vector> span, with;
      std::vector<Word> words = oracle::all_words(n, 2);
      auto coords = [&](const FreePoly& f) {
        Vector v;
        for (const auto& w : words) v.push_back(f.coefficient(w));
        return v;
      };
      for (const auto& x : e.x_relations) span.push_back(coords(x));
      with = span;
      with.push_back(coords(sub));
      EXPECT_TRUE(subspace_equal(span, with, Q, words.size()));
    }
    ++checked;
  }
  EXPECT_GE(checked, 200);
}

TEST(Analyze, ExampleVerdicts) {
  for (const char* m : {"1", "-1"}) {
    const auto [mu, ms] = pair_data(q(m), q("1"));
    const auto r = analyze(mu.matrix(), ms);
    ASSERT_TRUE(r.normalizing.has_value());
    EXPECT_EQ(r.normalizing->status, SearchResult::Status::Found);
    ASSERT_TRUE(r.bpf.has_value());
    EXPECT_TRUE(r.bpf->base_point_free);
    ASSERT_TRUE(r.hilbert.has_value());
    EXPECT_EQ(r.hilbert->dims, (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7}));
    EXPECT_EQ(r.growth->label(), "polynomial(1)");
  }
  const auto [mu, ms] = pair_data(q("2"), q("0"));
  const auto r = analyze(mu.matrix(), ms);
  EXPECT_EQ(r.normalizing->status, SearchResult::Status::Found);
  EXPECT_FALSE(r.bpf->base_point_free);
  EXPECT_EQ(r.bpf->witness->str(), "((0,1),(0,1))");
}

TEST(Analyze, ZeroMatricesAndInvalidInput) {
  const MuMatrix mu = MuMatrix::two(q("2"));
  const auto r = analyze(mu.matrix(), {Matrix(Q, 2, 2), Matrix(Q, 2, 2)});
  EXPECT_FALSE(r.bpf->base_point_free);
  EXPECT_TRUE(r.bpf->witness.has_value());
  EXPECT_FALSE(r.eliminated.has_value());
  EXPECT_FALSE(r.elimination_error.empty());

  const auto bad = analyze(mat(Q, {{q("1"), q("2")}, {q("1"), q("1")}}), {});
  EXPECT_FALSE(bad.mu_valid);
  EXPECT_NE(bad.mu_error.find("(1,2)"), std::string::npos);
  const auto asym = analyze(mu.matrix(), {mat(Q, {{q("0"), q("1")}, {q("0"), q("0")}}), Matrix::identity(Q, 2)});
  EXPECT_TRUE(asym.mu_valid);
  EXPECT_FALSE(asym.matrices_mu_symmetric);
}

TEST(Analyze, Deterministic) {
  const auto [mu, ms] = pair_data(q("3"), q("2"));
  const auto a = analyze(mu.matrix(), ms), b = analyze(mu.matrix(), ms);
  EXPECT_EQ(a.hilbert->dims, b.hilbert->dims);
  EXPECT_EQ(a.normalizing->sequence, b.normalizing->sequence);
  EXPECT_EQ(a.bpf->base_point_free, b.bpf->base_point_free);
}
