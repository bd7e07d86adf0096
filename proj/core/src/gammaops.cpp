#include "gammalab/gammaops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace gammalab {

namespace {

CMatrix clipped_defect(const CMatrix& gram_complement, double floor) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(gram_complement));
  Eigen::VectorXd ev = es.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) > floor ? std::sqrt(ev(i)) : 0.0;
  const CMatrix& q = es.eigenvectors();
  return hermitian_part(q * ev.cast<cplx>().asDiagonal() * q.adjoint());
}

}  // namespace

DefectPair defect_pair(const CMatrix& p, const Tolerances& tol) {
  if (p.rows() != p.cols()) throw LabError(ErrorCode::DimensionMismatch, "P must be square");
  const double pn = op_norm(p);
  if (pn > 1.0 + tol.cert_tol) {
    throw LabError(ErrorCode::NotContraction, "norm of P is " + std::to_string(pn));
  }
  const Index m = p.rows();
  const CMatrix id = CMatrix::Identity(m, m);
  const double floor = 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, pn * pn);
  DefectPair dp;
  dp.D = clipped_defect(id - p.adjoint() * p, floor);
  dp.Dstar = clipped_defect(id - p * p.adjoint(), floor);
  dp.space = range_basis(dp.D, tol);
  dp.space_star = range_basis(dp.Dstar, tol);
  dp.intertwining_residual = op_norm(p * dp.D - dp.Dstar * p);
  return dp;
}

FundamentalTuple fo_tuple(const GammaTuple& g, const Tolerances& tol, std::optional<std::uint64_t> basis_seed) {
  validate(g, tol);
  return fo_tuple(g, defect_pair(g.P, tol), tol, basis_seed);
}

FundamentalTuple fo_tuple(const GammaTuple& g, const DefectPair& dp, const Tolerances& tol,
                          std::optional<std::uint64_t> basis_seed) {
  FundamentalTuple f;
  f.defect = dp.space;
  const Index k = f.defect.dim();
  if (basis_seed && k > 0) {
    std::mt19937_64 rng(*basis_seed);
    f.defect.basis = f.defect.basis * random_unitary(k, rng);
  }
  const CMatrix& b = f.defect.basis;
  const Index m = g.dim();
  const CMatrix off = CMatrix::Identity(m, m) - b * b.adjoint();

  CMatrix dr_inv = CMatrix::Zero(k, k);
  if (k > 0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(b.adjoint() * dp.D * b));
    const Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() <= 0.0 || ev.maxCoeff() / ev.minCoeff() > 1.0 / tol.rank_tol) {
      throw LabError(ErrorCode::DefectSolveIllConditioned,
                     "restricted defect operator has eigenvalues in [" + std::to_string(ev.minCoeff()) + ", " +
                         std::to_string(ev.maxCoeff()) + "]");
    }
    f.condition = ev.maxCoeff() / ev.minCoeff();
    dr_inv = es.eigenvectors() * ev.cwiseInverse().cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  }

  const int n = g.n;
  for (int i = 1; i <= n - 1; ++i) {
    const CMatrix x = g.s(i) - g.s(n - i).adjoint() * g.P;
    CMatrix a = dr_inv * (b.adjoint() * x * b) * dr_inv;
    const CMatrix ahat = b * a * b.adjoint();
    f.residuals.push_back(op_norm(dp.D * ahat * dp.D - x));
    f.leakage.push_back(op_norm(off * x));
    f.adjoint_leakage.push_back(op_norm(x * off));
    if (std::max(f.leakage.back(), f.adjoint_leakage.back()) > tol.eq_tol * (1.0 + op_norm(g.s(i)))) {
      f.leakage_detected = true;
    }
    f.A.push_back(std::move(a));
  }
  return f;
}

std::vector<double> verify_fundamental_identity(const GammaTuple& g, const FundamentalTuple& f,
                                                const Tolerances& tol) {
  const DefectPair dp = defect_pair(g.P, tol);
  std::vector<double> out;
  const int n = g.n;
  for (int i = 1; i <= n - 1; ++i) {
    const CMatrix lhs = dp.D * g.s(i);
    const CMatrix rhs = f.embedded(i) * dp.D + f.embedded(n - i).adjoint() * dp.D * g.P;
    out.push_back(op_norm(lhs - rhs));
  }
  return out;
}

VnVerdict contraction_probe(const GammaTuple& g, const SupNormProbe* probe, const Tolerances& tol) {
  if (g.n == 1) {
    VnVerdict v;
    v.polynomials_tested = 1;
    v.max_ratio = op_norm(g.P);
    if (v.max_ratio > 1.0 + tol.cert_tol) {
      v.falsified = true;
      v.witness = Polynomial::coordinate(1, 0);
      v.witness_ratio = v.max_ratio;
    }
    return v;
  }
  if (probe == nullptr || probe->n() != g.n) {
    throw LabError(ErrorCode::InvalidArgument, "probe degree does not match the tuple");
  }
  return probe->test(g, tol);
}

SufficiencyVerdict sufficient_condition_check(const GammaTuple& g, const FundamentalTuple& f,
                                              const FundamentalTuple& fadj, const Tolerances& tol,
                                              int resolution, const ProbeConfig& probe_cfg) {
  validate(g, tol);
  const int n = g.n;
  if (n < 2) throw LabError(ErrorCode::InvalidArgument, "sufficiency check needs n >= 2");
  if (static_cast<int>(f.A.size()) != n - 1 || static_cast<int>(fadj.A.size()) != n - 1) {
    throw LabError(ErrorCode::DimensionMismatch, "F_O-tuples must have n-1 entries");
  }
  if (resolution < 1) throw LabError(ErrorCode::InvalidArgument, "resolution must be positive");
  std::optional<SupNormProbe> probe;
  if (n - 1 >= 2) probe.emplace(n - 1, probe_cfg);
  const SupNormProbe* pp = probe ? &*probe : nullptr;

  SufficiencyVerdict verdict;
  auto run = [&](const GammaTuple& t, const std::string& cond, std::optional<cplx> z) {
    const VnVerdict v = contraction_probe(t, pp, tol);
    ++verdict.tuples_tested;
    verdict.max_ratio = std::max(verdict.max_ratio, v.max_ratio);
    if (v.falsified) {
      verdict.failed_condition = cond;
      verdict.failing_z = z;
      verdict.evidence = v;
      return false;
    }
    return true;
  };

  std::vector<CMatrix> a0, a1, b0, b1;
  for (int j = 1; j <= n - 1; ++j) {
    a0.push_back(f.a(j));
    a1.push_back(f.a(n - j).adjoint());
    b0.push_back(fadj.a(j).adjoint());
    b1.push_back(fadj.a(n - j));
  }
  if (f.defect_dim() > 0) {
    for (int k = 0; k < resolution; ++k) {
      const cplx z = unit_root(k, resolution);
      if (!run(weighted_pencil(a0, a1, z), "sigma1", z)) return verdict;
    }
  }
  if (fadj.defect_dim() > 0) {
    for (int k = 0; k < resolution; ++k) {
      const cplx z = unit_root(k, resolution);
      if (!run(weighted_pencil(b0, b1, z), "sigma2", z)) return verdict;
    }
  }
  std::vector<CMatrix> zero(n - 1, CMatrix::Zero(g.dim(), g.dim()));
  if (!run(weighted_pencil(g.S, zero, 0.0), "scaled", std::nullopt)) {
    return verdict;
  }
  verdict.certified = true;
  return verdict;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::gamma_unitary: return "gamma_unitary";
    case Classification::gamma_isometry: return "gamma_isometry";
    case Classification::gamma_contraction_not_falsified: return "gamma_contraction_not_falsified";
    case Classification::falsified: return "falsified";
  }
  return "unknown";
}

ClassifyResult classify(const GammaTuple& g, const Tolerances& tol, const ProbeConfig& probe) {
  validate(g, tol, false);
  ClassifyResult r;
  bool all_normal = true;
  for (const auto& t : g.operators()) {
    const Check c = is_normal(t, tol);
    r.normal_residual = std::max(r.normal_residual, c.residual);
    all_normal = all_normal && c.holds;
  }
  r.unitary = is_unitary(g.P, tol);
  r.isometry = is_isometry(g.P, tol);
  if (all_normal && r.unitary.holds) {
    const auto ops = g.operators();
    r.joint_spectrum = joint_eigenvalues(ops, tol, probe.seed);
    r.spectrum_in_bgamma = true;
    for (const auto& ev : r.joint_spectrum) {
      if (!in_bgamma(GammaPoint{g.n, ev}, tol)) r.spectrum_in_bgamma = false;
    }
    if (r.spectrum_in_bgamma) {
      r.kind = Classification::gamma_unitary;
      return r;
    }
  }
  r.vn = vn_falsify(g, probe, tol);
  if (r.vn->falsified) {
    r.kind = Classification::falsified;
  } else if (r.isometry.holds) {
    r.kind = Classification::gamma_isometry;
  } else {
    r.kind = Classification::gamma_contraction_not_falsified;
  }
  return r;
}

Subspace unitary_subspace(const CMatrix& p, const Tolerances& tol) {
  const DefectPair dp = defect_pair(p, tol);
  const Index m = p.rows();
  const CMatrix d2 = dp.D * dp.D;
  const CMatrix d2s = dp.Dstar * dp.Dstar;
  CMatrix sum = CMatrix::Zero(m, m);
  CMatrix pj = CMatrix::Identity(m, m);
  for (Index j = 0; j <= m; ++j) {
    sum += pj.adjoint() * d2 * pj + pj * d2s * pj.adjoint();
    pj = pj * p;
  }
  return orthogonal_complement(range_basis(hermitian_part(sum), tol), tol);
}

CnuSplit cnu_part(const GammaTuple& g, const Tolerances& tol) {
  validate(g, tol);
  CnuSplit split;
  split.unitary_space = unitary_subspace(g.P, tol);
  split.cnu_space = orthogonal_complement(split.unitary_space, tol);
  const Index m = g.dim();
  const CMatrix pi = split.unitary_space.projector();
  const CMatrix co = CMatrix::Identity(m, m) - pi;
  for (const auto& t : g.operators()) {
    const double r = op_norm(co * t * pi) + op_norm(pi * t * co);
    split.reducing_residual = std::max(split.reducing_residual, r);
    if (r > tol.eq_tol * (1.0 + op_norm(t))) {
      throw LabError(ErrorCode::NotReducing, "unitary subspace leaks by " + std::to_string(r));
    }
  }
  split.unitary_part = compress(g, split.unitary_space);
  split.cnu_part = compress(g, split.cnu_space);
  return split;
}

}  // namespace gammalab
