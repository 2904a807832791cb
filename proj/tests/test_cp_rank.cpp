#include <gtest/gtest.h>

#include "commutant/cp_rank.hpp"
#include "commutant/random.hpp"
#include "oracles.hpp"

using namespace commutant;

namespace {

VectorXd v2(double a, double b) { return (VectorXd(2) << a, b).finished(); }

}  // namespace

TEST(Rank1, Examples) {
  MatrixXd E = MatrixXd::Zero(2, 2);
  E(0, 0) = 1;
  EXPECT_EQ(rank1<double>({v2(1, 0), v2(1, 0)}).to_matrix(), E);

  MatrixXd want(2, 2);
  want << 3, 4, 6, 8;
  EXPECT_EQ(rank1<double>({v2(1, 2), v2(3, 4)}).to_matrix(), want);

  EXPECT_EQ(rank1<double>({v2(1, 1), v2(1, 1), v2(1, 1)}),
            Tensor::constant(Shape::cubical(3, 2), 1.0));
  EXPECT_THROW(rank1<double>({v2(1, 1), v2(0, 0)}), DomainError);
  EXPECT_THROW(rank1<double>({}), ArgumentError);
}

TEST(SymPower, Examples) {
  const Tensor T = sym_power(v2(1, 0), 3);
  EXPECT_EQ(T.at({0, 0, 0}), 1.0);
  EXPECT_EQ(T.values().sum(), 1.0);

  MatrixXd want(2, 2);
  want << 1, 2, 2, 4;
  EXPECT_EQ(sym_power(v2(1, 2), 2).to_matrix(), want);

  const Tensor C = sym_power(v2(1, 2), 3);
  for (const auto& tau : all_permutations(3)) EXPECT_EQ(permute_modes(C, tau), C);
}

TEST(CpForm, RankOneEqualsRank1) {
  const CpForm<double> cp({MatrixXd(v2(1, 2)), MatrixXd(v2(3, 4))});
  EXPECT_EQ(materialize(cp), rank1<double>({v2(1, 2), v2(3, 4)}));
}

TEST(CpForm, IdentityFactorsGiveIdentityTensor) {
  const CpForm<double> cp(std::vector<MatrixXd>(3, MatrixXd::Identity(3, 3)));
  const Tensor T = materialize(cp);
  oracle::for_each_index(3, 3, [&](const std::vector<Index>& ix) {
    EXPECT_EQ(T.at(ix), (ix[0] == ix[1] && ix[1] == ix[2]) ? 1.0 : 0.0);
  });
}

TEST(CpForm, RandomMatchesTermSum) {
  Rng rng(1);
  std::vector<MatrixXd> F{rng.matrix(2, 2), rng.matrix(2, 2), rng.matrix(2, 2)};
  const Tensor got = materialize(CpForm<double>(F));
  Tensor want = Tensor::zeros(Shape::cubical(3, 2));
  for (Index r = 0; r < 2; ++r)
    want = want + rank1<double>({F[0].col(r), F[1].col(r), F[2].col(r)});
  EXPECT_LE(max_abs_diff(got, want), 1e-12);
}

TEST(CpForm, Validation) {
  EXPECT_THROW(CpForm<double>({}), ArgumentError);
  EXPECT_THROW(CpForm<double>({MatrixXd::Ones(2, 2), MatrixXd::Ones(3, 2)}), DimensionError);
  MatrixXd Z = MatrixXd::Ones(2, 2);
  Z.col(1).setZero();
  EXPECT_THROW(CpForm<double>({Z}), DomainError);
}

TEST(PermuteCpFactors, IdentityAndTranspose) {
  Rng rng(2);
  const CpForm<double> cp({rng.matrix(2, 1), rng.matrix(2, 1)});
  EXPECT_EQ(permute_cp_factors(cp, Permutation::identity(2)), cp);
  EXPECT_EQ(materialize(permute_cp_factors(cp, Permutation::swap(2, 0, 1))).to_matrix(),
            MatrixXd(materialize(cp).to_matrix().transpose()));
}

TEST(PermuteCpFactors, CommutesWithPermuteModes) {
  Rng rng(3);
  const CpForm<double> cp({rng.matrix(2, 2), rng.matrix(2, 2), rng.matrix(2, 2)});
  for (const auto& sigma : all_permutations(3))
    EXPECT_LE(max_abs_diff(materialize(permute_cp_factors(cp, sigma)),
                           permute_modes(materialize(cp), sigma)),
              1e-12);
  EXPECT_THROW(permute_cp_factors(cp, Permutation::identity(2)), DimensionError);
}

TEST(SymCpForm, MaterializesWeightedPowers) {
  const SymCpForm<double> cp(2, {v2(1, 0), v2(0, 1)}, {2.0, -1.0});
  MatrixXd want(2, 2);
  want << 2, 0, 0, -1;
  EXPECT_EQ(materialize(cp).to_matrix(), want);
  EXPECT_THROW(SymCpForm<double>(2, {v2(1, 0)}, {}), DimensionError);
}

TEST(ModeUnfold, RowsFollowMode) {
  Rng rng(4);
  const Tensor A = rng.tensor(Shape{2, 3, 4});
  const MatrixXd U1 = mode_unfold(A, 1);
  ASSERT_EQ(U1.rows(), 3);
  ASSERT_EQ(U1.cols(), 8);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 4; ++k) EXPECT_EQ(U1(j, i + 2 * k), A.at({i, j, k}));
  EXPECT_THROW(mode_unfold(A, 3), ModeError);
}

TEST(IsRank1, DetectsRank) {
  Rng rng(5);
  EXPECT_TRUE(is_rank1(rank1<double>({rng.vector(3), rng.vector(3), rng.vector(3)})));
  EXPECT_FALSE(is_rank1(rng.tensor(Shape::cubical(3, 3))));
  EXPECT_FALSE(is_rank1(Tensor::zeros(Shape::cubical(2, 2))));
}

TEST(MatrixRank, Examples) {
  EXPECT_EQ(matrix_rank(MatrixXd::Identity(3, 3), 1e-12), 3);
  const VectorXd a = (VectorXd(3) << 1, 2, 3).finished(), b = (VectorXd(3) << 4, 5, 6).finished();
  EXPECT_EQ(matrix_rank(MatrixXd(a * b.transpose()), 1e-12), 1);
  MatrixXd M(2, 2);
  M << 1, 2, 2, 4.0000001;
  EXPECT_EQ(matrix_rank(M, 1e-3), 1);
  EXPECT_EQ(matrix_rank(M, 1e-9), 2);
  EXPECT_THROW(matrix_rank(M, 0.0), ArgumentError);
}

TEST(ExtractSymRank1, Examples) {
  const auto a = extract_sym_rank1(sym_power(v2(3, 4), 2));
  EXPECT_NEAR(a.lambda, 25.0, 1e-12);
  EXPECT_LE((a.y - v2(0.6, 0.8)).cwiseAbs().maxCoeff(), 1e-12);

  const auto b = extract_sym_rank1(sym_power(v2(0, 2), 3));
  EXPECT_NEAR(b.lambda, 8.0, 1e-12);
  EXPECT_LE((b.y - v2(0, 1)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ExtractSymRank1, CollinearFactors) {
  // (1,2) and (2,4) are proportional, so the outer product is 2 (1,2)^2.
  const auto r = extract_sym_rank1(rank1<double>({v2(1, 2), v2(2, 4)}));
  EXPECT_NEAR(r.lambda, 10.0, 1e-12);
  EXPECT_NEAR(r.y(1) / r.y(0), 2.0, 1e-12);
}

TEST(ExtractSymRank1, SignConventions) {
  const auto even = extract_sym_rank1(-1.0 * sym_power(v2(-3, 4), 2));
  EXPECT_NEAR(even.lambda, -25.0, 1e-12);
  EXPECT_GT(even.y(0), 0);

  const auto odd = extract_sym_rank1(-1.0 * sym_power(v2(3, 4), 3));
  EXPECT_NEAR(odd.lambda, 125.0, 1e-12);
  EXPECT_LT(odd.y(0), 0);
}

TEST(ExtractSymRank1, Errors) {
  EXPECT_THROW(extract_sym_rank1(Tensor::zeros(Shape::cubical(2, 2))), RankError);
  EXPECT_THROW(extract_sym_rank1(rank1<double>({v2(1, 0), v2(0, 1)})), SymmetryError);
  EXPECT_THROW(extract_sym_rank1(Tensor::from_matrix(MatrixXd(MatrixXd::Identity(2, 2)))),
               RankError);
  EXPECT_THROW(extract_sym_rank1(Tensor::zeros(Shape{2, 3})), SymmetryError);
}

TEST(ExtractSymRank1, RoundTripRandom) {
  Rng rng(6);
  int checked = 0;
  for (Index m : {2, 3, 4})
    for (Index n : {2, 3})
      for (int t = 0; t < 17; ++t) {
        const double scale = rng.uniform(-3.0, 3.0);
        const Tensor T = scale * sym_power(rng.vector(n), m);
        const auto r = extract_sym_rank1(T);
        EXPECT_NEAR(r.y.norm(), 1.0, 1e-12);
        const Tensor back = r.lambda * sym_power(r.y, m);
        EXPECT_LE(max_abs_diff(back, T), 1e-9 * std::max(1.0, T.values().cwiseAbs().maxCoeff()));
        ++checked;
      }
  EXPECT_GE(checked, 100);
}
