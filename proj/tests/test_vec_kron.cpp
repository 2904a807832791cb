#include <gtest/gtest.h>

#include "commutant/random.hpp"
#include "commutant/vec_kron.hpp"
#include "oracles.hpp"

using namespace commutant;

namespace {

MatrixXd mat2(double a, double b, double c, double d) {
  MatrixXd M(2, 2);
  M << a, b, c, d;
  return M;
}

}  // namespace

TEST(Vec, StacksColumns) {
  VectorXd want(4);
  want << 1, 3, 2, 4;
  EXPECT_EQ(vec(mat2(1, 2, 3, 4)), want);
}

TEST(Vec, BasisPlacement) {
  MatrixXd X = MatrixXd::Zero(2, 3);
  X(0, 1) = 1;
  EXPECT_EQ(vec(X), VectorXd::Unit(6, 2));
}

TEST(Unvec, BothLayouts) {
  VectorXd x(6);
  x << 1, 2, 3, 4, 5, 6;
  MatrixXd col(2, 3), row(2, 3);
  col << 1, 3, 5, 2, 4, 6;
  row << 1, 2, 3, 4, 5, 6;
  EXPECT_EQ(unvec(x, 2, 3), col);
  EXPECT_EQ(unvec(x, 2, 3, VecLayout::RowMajor), row);
}

TEST(Unvec, RoundTripAndErrors) {
  Rng rng(1);
  const MatrixXd X = rng.matrix(4, 4);
  EXPECT_EQ(unvec(vec(X), 4, 4), X);
  EXPECT_THROW(unvec(vec(X), 3, 4), DimensionError);
  EXPECT_THROW(unvec(vec(X), 0, 16), ArgumentError);
}

TEST(Kron, IdentityBlocks) {
  const MatrixXd B = mat2(1, 2, 3, 4);
  MatrixXd want = MatrixXd::Zero(4, 4);
  want.topLeftCorner(2, 2) = B;
  want.bottomRightCorner(2, 2) = B;
  EXPECT_EQ(kron(MatrixXd(MatrixXd::Identity(2, 2)), B), want);
}

TEST(Kron, Scalar) {
  EXPECT_EQ(kron(MatrixXd::Constant(1, 1, 2.0), MatrixXd::Constant(1, 1, 3.0)),
            MatrixXd::Constant(1, 1, 6.0));
}

TEST(Kron, MatchesDefinition) {
  Rng rng(2);
  const MatrixXd A = rng.matrix(2, 3);
  const MatrixXd B = rng.matrix(4, 2);
  EXPECT_EQ(kron(A, B), oracle::kron(A, B));
}

TEST(Kron, MixedProduct) {
  Rng rng(3);
  const MatrixXd A = rng.matrix(2, 2), B = rng.matrix(2, 2), C = rng.matrix(2, 2),
                 D = rng.matrix(2, 2);
  EXPECT_LE((kron(A, B) * kron(C, D) - kron(MatrixXd(A * C), MatrixXd(B * D))).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(VecSandwich, IdentityAndZero) {
  Rng rng(4);
  const MatrixXd I = MatrixXd::Identity(2, 2);
  const MatrixXd B = rng.matrix(2, 2);
  EXPECT_LE((vec_sandwich(I, B, I) - vec(B)).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_TRUE(vec_sandwich(MatrixXd(MatrixXd::Zero(2, 2)), B, I).isZero(0));
}

TEST(VecSandwich, EqualsVecOfProduct) {
  Rng rng(5);
  const MatrixXd A = rng.matrix(2, 3), B = rng.matrix(3, 4), C = rng.matrix(4, 2);
  EXPECT_LE((vec_sandwich(A, B, C) - vec(MatrixXd(A * B * C))).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(vec_sandwich(A, C, B), DimensionError);
}

TEST(TraceViaVec, Examples) {
  const MatrixXd I = MatrixXd::Identity(3, 3);
  EXPECT_EQ(trace_via_vec(I, I), 3.0);
  const MatrixXd A = mat2(1, 2, 3, 4), B = mat2(5, 6, 7, 8);
  EXPECT_EQ((A * B).trace(), 69.0);
  EXPECT_EQ(trace_via_vec(A, B), 69.0);
}

TEST(TraceViaVec, RectangularMatchesDirectTrace) {
  Rng rng(6);
  const MatrixXd A = rng.matrix(3, 2), B = rng.matrix(2, 3);
  EXPECT_NEAR(trace_via_vec(A, B), (A * B).trace(), 1e-12);
  EXPECT_THROW(trace_via_vec(A, A), DimensionError);
}
