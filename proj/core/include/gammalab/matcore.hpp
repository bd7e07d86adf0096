#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gammalab/error.hpp"

namespace gammalab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

struct Tolerances {
  double eq_tol = 1e-8;
  double rank_tol = 1e-10;
  double cert_tol = 1e-6;

  // Throws InvalidArgument unless 0 < rank_tol < eq_tol < 1 and cert_tol > 0.
  void validate() const;
};

// Orthonormal columns spanning a subspace of C^ambient.
struct Subspace {
  CMatrix basis;

  Subspace() = default;
  explicit Subspace(CMatrix b) : basis(std::move(b)) {}

  Index ambient_dim() const { return basis.rows(); }
  Index dim() const { return basis.cols(); }
  CMatrix projector() const { return basis * basis.adjoint(); }

  static Subspace zero(Index ambient) { return Subspace(CMatrix::Zero(ambient, 0)); }
  static Subspace full(Index ambient) { return Subspace(CMatrix::Identity(ambient, ambient)); }
};

struct Check {
  bool holds = false;
  double residual = 0.0;
};

double op_norm(const CMatrix& m);
bool all_finite(const CMatrix& m);
CMatrix hermitian_part(const CMatrix& m);

CMatrix psd_sqrt(const CMatrix& m, const Tolerances& tol);
Subspace range_basis(const CMatrix& m, const Tolerances& tol);
Subspace orthogonal_complement(const Subspace& s, const Tolerances& tol);

// Pseudo-inverse on the numerical range (singular values above rank_tol * max).
CMatrix pinv(const CMatrix& m, const Tolerances& tol);

// Unitary factor of the polar decomposition of a square matrix.
CMatrix polar_unitary(const CMatrix& m);

CMatrix random_unitary(Index dim, std::mt19937_64& rng);
CMatrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng);

using JointEigenvalue = std::vector<cplx>;

std::vector<JointEigenvalue> joint_eigenvalues(std::span<const CMatrix> ops, const Tolerances& tol,
                                               std::uint64_t seed = 0);

double max_commutator(std::span<const CMatrix> ops);

Check is_isometry(const CMatrix& m, const Tolerances& tol);
Check is_unitary(const CMatrix& m, const Tolerances& tol);
Check is_normal(const CMatrix& m, const Tolerances& tol);

}  // namespace gammalab
