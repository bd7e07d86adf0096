#include "gammalab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gammalab {

void Tolerances::validate() const {
  if (!(rank_tol > 0.0 && eq_tol > 0.0 && cert_tol > 0.0)) {
    throw LabError(ErrorCode::InvalidArgument, "tolerances must be strictly positive");
  }
  if (!(rank_tol < eq_tol && eq_tol < 1.0)) {
    throw LabError(ErrorCode::InvalidArgument, "tolerances must satisfy rank_tol < eq_tol < 1");
  }
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

bool all_finite(const CMatrix& m) { return m.allFinite(); }

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

CMatrix psd_sqrt(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw LabError(ErrorCode::DimensionMismatch, "psd_sqrt needs a square matrix");
  }
  if (m.size() == 0) return m;
  const double scale = op_norm(m);
  const double asym = op_norm(m - m.adjoint());
  if (asym > tol.eq_tol * scale) {
    throw LabError(ErrorCode::NotHermitian,
                   "asymmetry " + std::to_string(asym) + " exceeds eq_tol * norm");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  if (es.info() != Eigen::Success) {
    throw LabError(ErrorCode::NotHermitian, "Hermitian eigensolver failed");
  }
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -tol.eq_tol) {
    throw LabError(ErrorCode::NotPSD, "minimum eigenvalue " + std::to_string(ev.minCoeff()));
  }
  Eigen::VectorXd root = ev.cwiseMax(0.0).cwiseSqrt();
  const CMatrix& q = es.eigenvectors();
  CMatrix s = q * root.cast<cplx>().asDiagonal() * q.adjoint();
  return hermitian_part(s);
}

Subspace range_basis(const CMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return Subspace::zero(m.rows());
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return Subspace::zero(m.rows());
  const double cut = tol.rank_tol * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return Subspace(svd.matrixU().leftCols(r));
}

Subspace orthogonal_complement(const Subspace& s, const Tolerances&) {
  const Index n = s.ambient_dim();
  if (s.dim() == 0) return Subspace::full(n);
  if (s.dim() >= n) return Subspace::zero(n);
  Eigen::JacobiSVD<CMatrix> svd(s.basis, Eigen::ComputeFullU);
  return Subspace(svd.matrixU().rightCols(n - s.dim()));
}

CMatrix pinv(const CMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return CMatrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  if (sv(0) > 0.0) {
    const double cut = tol.rank_tol * sv(0);
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cut) inv(i) = 1.0 / sv(i);
    }
  }
  return svd.matrixV() * inv.cast<cplx>().asDiagonal() * svd.matrixU().adjoint();
}

CMatrix polar_unitary(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw LabError(ErrorCode::DimensionMismatch, "polar_unitary needs a square matrix");
  }
  if (m.size() == 0) return m;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMatrix g(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      g(i, j) = cplx(s * re, s * im);
    }
  }
  return g;
}

CMatrix random_unitary(Index dim, std::mt19937_64& rng) {
  CMatrix g = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

double max_commutator(std::span<const CMatrix> ops) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      worst = std::max(worst, op_norm(ops[i] * ops[j] - ops[j] * ops[i]));
    }
  }
  return worst;
}

std::vector<JointEigenvalue> joint_eigenvalues(std::span<const CMatrix> ops, const Tolerances& tol,
                                               std::uint64_t seed) {
  if (ops.empty()) return {};
  const Index dim = ops[0].rows();
  std::vector<double> norms;
  for (const auto& t : ops) {
    if (t.rows() != dim || t.cols() != dim) {
      throw LabError(ErrorCode::DimensionMismatch, "joint_eigenvalues needs equal square shapes");
    }
    norms.push_back(op_norm(t));
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      const double c = op_norm(ops[i] * ops[j] - ops[j] * ops[i]);
      if (c > tol.eq_tol * (norms[i] * norms[j] + 1.0)) {
        throw LabError(ErrorCode::NotCommuting, "commutator of operators " + std::to_string(i) +
                                                    " and " + std::to_string(j) + " is " +
                                                    std::to_string(c));
      }
    }
  }
  if (dim == 0) return {};

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  constexpr int kAttempts = 6;
  double last_residual = 0.0;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    CMatrix comb = CMatrix::Zero(dim, dim);
    for (const auto& t : ops) comb += nd(rng) * t;
    Eigen::ComplexSchur<CMatrix> schur(comb);
    if (schur.info() != Eigen::Success) continue;
    const CMatrix& u = schur.matrixU();
    std::vector<CMatrix> tri;
    bool ok = true;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      CMatrix c = u.adjoint() * ops[i] * u;
      CMatrix lower = c.triangularView<Eigen::StrictlyLower>();
      last_residual = op_norm(lower);
      if (last_residual > tol.eq_tol * std::max(norms[i], 1.0)) {
        ok = false;
        break;
      }
      tri.push_back(std::move(c));
    }
    if (!ok) continue;
    std::vector<JointEigenvalue> out(static_cast<std::size_t>(dim));
    for (Index k = 0; k < dim; ++k) {
      for (const auto& c : tri) out[static_cast<std::size_t>(k)].push_back(c(k, k));
    }
    return out;
  }
  throw LabError(ErrorCode::TriangularizationFailed,
                 "off-diagonal residual " + std::to_string(last_residual) + " after retries");
}

Check is_isometry(const CMatrix& m, const Tolerances& tol) {
  const double r = op_norm(m.adjoint() * m - CMatrix::Identity(m.cols(), m.cols()));
  return {r <= tol.eq_tol, r};
}

Check is_unitary(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) return {false, 0.0};
  const CMatrix id = CMatrix::Identity(m.rows(), m.rows());
  const double r = std::max(op_norm(m.adjoint() * m - id), op_norm(m * m.adjoint() - id));
  return {r <= tol.eq_tol, r};
}

Check is_normal(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) return {false, 0.0};
  const double r = op_norm(m * m.adjoint() - m.adjoint() * m);
  const double n = op_norm(m);
  return {r <= tol.eq_tol * std::max(1.0, n * n), r};
}

}  // namespace gammalab
