#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kn/errors.hpp"
#include "kn/rational.hpp"

namespace kn {

using Cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using IVec = Eigen::VectorXi;
using IMat = Eigen::MatrixXi;

inline constexpr double kDefaultRankTol = 1e-9;

// Hermitian scalar product, conjugate-linear in the SECOND argument:
// (u,v) = sum_i u_i * conj(v_i).
Cplx hermitian_inner(const Vec& u, const Vec& v);

// Imaginary part of the hermitian product; the symplectic form on V.
double symplectic_form(const Vec& u, const Vec& v);

// Scaling-and-squaring matrix exponential.
Mat matrix_exp(const Mat& a);

// Entrywise check of A^dagger = -A.
bool is_skew_hermitian(const Mat& a, double tol = 1e-12);

// Rank of the span of the given vectors via SVD; threshold is
// tol * (largest singular value). Empty list has rank 0.
int subspace_dimension(const std::vector<Vec>& vectors, double tol = kDefaultRankTol);
int subspace_dimension_real(const std::vector<RVec>& vectors, double tol = kDefaultRankTol);

int rank_floating(const Mat& m, double tol = kDefaultRankTol);
int rank_floating_real(const RMat& m, double tol = kDefaultRankTol);

// Exact rank by fraction-free Gaussian elimination.
int subspace_dimension_exact(const std::vector<ExactVector>& vectors);

// Orthonormal basis of the (right) kernel of m, columns of the result.
Mat kernel_basis(const Mat& m, double tol = kDefaultRankTol);
RMat kernel_basis_real(const RMat& m, double tol = kDefaultRankTol);

Vec exact_to_floating(const ExactVector& v);

} // namespace kn
