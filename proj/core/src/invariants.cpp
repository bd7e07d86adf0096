#include "gammalab/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "gammalab/parallel.hpp"
#include "gammalab/polydisc.hpp"

namespace gammalab {

namespace {

CMatrix theta_at(const CMatrix& p, const DefectPair& dp, const CMatrix& b, const CMatrix& bstar, cplx z) {
  const Index m = p.rows();
  const CMatrix pencil = CMatrix::Identity(m, m) - z * p.adjoint();
  const CMatrix x = pencil.partialPivLu().solve(dp.D * b);
  return bstar.adjoint() * (-p * b + z * dp.Dstar * x);
}

double smallest_singular_value(const CMatrix& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().minCoeff();
}

Eigen::VectorXd singular_values(const CMatrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix eye(Index k) { return CMatrix::Identity(k, k); }

// Data for one side of the coincidence problem.
struct Side {
  const std::vector<CMatrix>* theta;
  const std::vector<CMatrix>* a;
  const std::vector<CMatrix>* b;
};

double sum_sq(const std::vector<CMatrix>& ms) {
  double s = 0.0;
  for (const CMatrix& m : ms) s += m.squaredNorm();
  return s;
}

double joint_residual(const Side& l, const Side& r, const CMatrix& u, const CMatrix& us) {
  double s = 0.0;
  for (std::size_t j = 0; j < l.theta->size(); ++j) {
    s += (us * (*l.theta)[j] - (*r.theta)[j] * u).squaredNorm();
  }
  for (std::size_t i = 0; i < l.a->size(); ++i) s += (u * (*l.a)[i] - (*r.a)[i] * u).squaredNorm();
  for (std::size_t i = 0; i < l.b->size(); ++i) s += (us * (*l.b)[i] - (*r.b)[i] * us).squaredNorm();
  return std::sqrt(s);
}

// Greedy nearest matching of two spectra; returns the largest matched distance.
double spectrum_gap(const CMatrix& x, const CMatrix& y, double& bound) {
  const Index k = x.rows();
  if (k == 0) {
    bound = 0.0;
    return 0.0;
  }
  Eigen::ComplexEigenSolver<CMatrix> ex(x, true);
  Eigen::ComplexEigenSolver<CMatrix> ey(y, true);
  const Eigen::VectorXcd lx = ex.eigenvalues();
  const Eigen::VectorXcd ly = ey.eigenvalues();
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  double gap = 0.0;
  for (Index i = 0; i < k; ++i) {
    double best = std::numeric_limits<double>::infinity();
    Index arg = 0;
    for (Index j = 0; j < k; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double d = std::abs(lx(i) - ly(j));
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    used[static_cast<std::size_t>(arg)] = true;
    gap = std::max(gap, best);
  }
  const auto cond = [](const CMatrix& v) {
    const Eigen::VectorXd s = singular_values(v);
    return s.minCoeff() > 0.0 ? s.maxCoeff() / s.minCoeff() : std::numeric_limits<double>::infinity();
  };
  const double kappa = std::max(cond(ex.eigenvectors()), cond(ey.eigenvectors()));
  bound = 1e3 * std::numeric_limits<double>::epsilon() * kappa * std::max(op_norm(x), op_norm(y));
  return gap;
}

struct Falsifier {
  std::string name;
  double gap = 0.0;
};

Falsifier quick_falsify(const Side& l, const Side& r, const Tolerances& tol) {
  Falsifier best;
  double worst_excess = 0.0;
  const auto consider = [&](const std::string& name, double gap, double threshold) {
    if (gap > threshold && gap - threshold > worst_excess) {
      worst_excess = gap - threshold;
      best = {name, gap};
    }
  };
  for (std::size_t j = 0; j < l.theta->size(); ++j) {
    const CMatrix& x = (*l.theta)[j];
    const CMatrix& y = (*r.theta)[j];
    const double gap = (singular_values(x) - singular_values(y)).cwiseAbs().maxCoeff();
    consider("theta singular values at grid point " + std::to_string(j), x.size() ? gap : 0.0,
             tol.cert_tol * (1.0 + op_norm(x)));
  }
  const auto operators = [&](const std::vector<CMatrix>& xs, const std::vector<CMatrix>& ys, const char* tag) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const CMatrix& x = xs[i];
      const CMatrix& y = ys[i];
      if (x.size() == 0) continue;
      const double scale = 1.0 + std::max(op_norm(x), op_norm(y));
      const double sgap = (singular_values(x) - singular_values(y)).cwiseAbs().maxCoeff();
      consider(std::string(tag) + std::to_string(i + 1) + " singular values", sgap, tol.cert_tol * scale);
      double bound = 0.0;
      const double egap = spectrum_gap(x, y, bound);
      consider(std::string(tag) + std::to_string(i + 1) + " spectrum", egap,
               std::max(tol.cert_tol * scale, bound));
    }
  };
  operators(*l.a, *r.a, "A");
  operators(*l.b, *r.b, "B");
  return best;
}

// One majorized polar-ascent run from (u, us).
double procrustes(const Side& l, const Side& r, CMatrix& u, CMatrix& us, int max_iter, double stop) {
  double mu_u = 0.0;
  double mu_s = 0.0;
  for (std::size_t i = 0; i < l.a->size(); ++i) mu_u += 2.0 * op_norm((*l.a)[i]) * op_norm((*r.a)[i]);
  for (std::size_t i = 0; i < l.b->size(); ++i) mu_s += 2.0 * op_norm((*l.b)[i]) * op_norm((*r.b)[i]);
  double res = joint_residual(l, r, u, us);
  for (int it = 0; it < max_iter && res > stop; ++it) {
    CMatrix mu = mu_u * u;
    for (std::size_t j = 0; j < l.theta->size(); ++j) mu += (*r.theta)[j].adjoint() * us * (*l.theta)[j];
    for (std::size_t i = 0; i < l.a->size(); ++i) {
      mu += (*r.a)[i] * u * (*l.a)[i].adjoint() + (*r.a)[i].adjoint() * u * (*l.a)[i];
    }
    u = polar_unitary(mu);
    CMatrix ms = mu_s * us;
    for (std::size_t j = 0; j < l.theta->size(); ++j) ms += (*r.theta)[j] * u * (*l.theta)[j].adjoint();
    for (std::size_t i = 0; i < l.b->size(); ++i) {
      ms += (*r.b)[i] * us * (*l.b)[i].adjoint() + (*r.b)[i].adjoint() * us * (*l.b)[i];
    }
    us = polar_unitary(ms);
    const double next = joint_residual(l, r, u, us);
    const bool stalled = res - next <= 1e-12 * res;
    res = next;
    if (stalled) break;
  }
  return res;
}

// Basis of the numerical nullspace of m, or its least singular direction when it is trivial.
CMatrix nullspace(const CMatrix& m, const Tolerances& tol) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const Index cols = m.cols();
  const double smax = s.size() ? s(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol.eq_tol * std::max(smax, 1.0)) ++rank;
  }
  if (rank == cols) return svd.matrixV().col(cols - 1);
  return svd.matrixV().rightCols(cols - rank);
}

CVector random_combination(const CMatrix& basis, std::mt19937_64& rng) {
  const CMatrix c = gaussian_matrix(basis.cols(), 1, rng);
  return basis * c.col(0);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

}  // namespace

std::vector<cplx> disc_grid(int count, double radius, bool with_origin) {
  if (count < 0 || !(radius >= 0.0) || radius >= 1.0) {
    throw LabError(ErrorCode::InvalidArgument, "grid needs count >= 0 and radius in [0, 1)");
  }
  std::vector<cplx> pts;
  if (with_origin) pts.emplace_back(0.0, 0.0);
  for (int j = 0; j < count; ++j) pts.push_back(radius * unit_root(j, count));
  return pts;
}

std::vector<cplx> coincidence_grid() { return disc_grid(32, 0.9, true); }

CharFnGrid char_fn(const CMatrix& p, const CMatrix& domain_basis, const CMatrix& codomain_basis,
                   std::span<const cplx> grid, const Tolerances& tol, int delta_samples) {
  for (const cplx& z : grid) {
    if (!(std::abs(z) < 1.0)) throw LabError(ErrorCode::InvalidArgument, "grid points must lie in the open disc");
  }
  if (delta_samples < 0) throw LabError(ErrorCode::InvalidArgument, "delta_samples must be nonnegative");
  const DefectPair dp = defect_pair(p, tol);
  if (domain_basis.rows() != p.rows() || codomain_basis.rows() != p.rows()) {
    throw LabError(ErrorCode::DimensionMismatch, "defect bases must live in the ambient space");
  }
  CharFnGrid out;
  out.points.assign(grid.begin(), grid.end());
  out.values.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t j) {
    out.values[j] = theta_at(p, dp, domain_basis, codomain_basis, grid[j]);
  });
  for (std::size_t j = 0; j < grid.size(); ++j) {
    out.max_norm = std::max(out.max_norm, out.values[j].size() ? op_norm(out.values[j]) : 0.0);
    if (grid[j] == cplx(0.0, 0.0)) {
      const double r = (codomain_basis * out.values[j] + p * domain_basis).norm();
      out.origin_residual = std::max(out.origin_residual, r);
    }
  }
  const Index k = domain_basis.cols();
  for (int l = 0; l < delta_samples; ++l) {
    const cplx z = unit_root(l, delta_samples);
    const CMatrix pencil = eye(p.rows()) - z * p.adjoint();
    if (smallest_singular_value(pencil) < tol.rank_tol) {
      ++out.delta_skipped;
      continue;
    }
    const CMatrix th = theta_at(p, dp, domain_basis, codomain_basis, z);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(eye(k) - th.adjoint() * th));
    Eigen::VectorXd ev = es.eigenvalues();
    for (Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
    out.delta_t.push_back(2.0 * std::numbers::pi * l / delta_samples);
    out.delta.push_back(hermitian_part(es.eigenvectors() * ev.cast<cplx>().asDiagonal() *
                                       es.eigenvectors().adjoint()));
  }
  return out;
}

CharFnGrid char_fn(const CMatrix& p, std::span<const cplx> grid, const Tolerances& tol, int delta_samples) {
  if (p.rows() != p.cols()) throw LabError(ErrorCode::DimensionMismatch, "P must be square");
  const DefectPair dp = defect_pair(p, tol);
  return char_fn(p, dp.space.basis, dp.space_star.basis, grid, tol, delta_samples);
}

CharData char_data(const GammaTuple& g, std::span<const cplx> grid, const Tolerances& tol) {
  validate(g, tol);
  CharData d;
  d.ct.F = fo_tuple(g, tol);
  d.fadj = fo_tuple(g.adjoint(), tol);
  d.ct.theta = char_fn(g.P, d.ct.F.defect.basis, d.fadj.defect.basis, grid, tol);
  return d;
}

CoincidenceResult coincidence_solve(const CharTuple& ct, const CharTuple& ct2, const FundamentalTuple& badj,
                                    const FundamentalTuple& badj2, const Tolerances& tol,
                                    const CoincidenceConfig& cfg) {
  tol.validate();
  if (cfg.restarts < 0 || cfg.max_iter < 0) {
    throw LabError(ErrorCode::InvalidArgument, "restarts and max_iter must be nonnegative");
  }
  const auto& g1 = ct.theta.points;
  const auto& g2 = ct2.theta.points;
  if (g1.size() != g2.size() || !std::equal(g1.begin(), g1.end(), g2.begin())) {
    throw LabError(ErrorCode::DimensionMismatch, "characteristic functions sampled on different grids");
  }
  if (ct.F.A.size() != ct2.F.A.size() || badj.A.size() != badj2.A.size() || ct.F.A.size() != badj.A.size()) {
    throw LabError(ErrorCode::DimensionMismatch, "tuples of different degree");
  }
  CoincidenceResult res;
  res.residual = std::numeric_limits<double>::infinity();
  const Index k = ct.F.defect_dim();
  const Index ks = badj.defect_dim();
  if (k != ct2.F.defect_dim() || ks != badj2.defect_dim()) {
    res.falsifier = "defect dimension mismatch";
    res.falsifier_gap = static_cast<double>(std::abs(k - ct2.F.defect_dim()) + std::abs(ks - badj2.defect_dim()));
    return res;
  }
  for (std::size_t j = 0; j < g1.size(); ++j) {
    const auto& t1 = ct.theta.values[j];
    const auto& t2 = ct2.theta.values[j];
    if (t1.rows() != ks || t1.cols() != k || t2.rows() != ks || t2.cols() != k) {
      throw LabError(ErrorCode::DimensionMismatch, "theta samples do not match the defect dimensions");
    }
  }

  const Side l{&ct.theta.values, &ct.F.A, &badj.A};
  const Side r{&ct2.theta.values, &ct2.F.A, &badj2.A};
  const double data = sum_sq(*l.theta) + sum_sq(*l.a) + sum_sq(*l.b);
  res.threshold = tol.cert_tol * (1.0 + std::sqrt(data));

  const Falsifier f = quick_falsify(l, r, tol);
  res.falsifier = f.name;
  res.falsifier_gap = f.gap;

  // Linear intertwiners of the *-closed relations, unknowns [vec u; vec u_*].
  const Index nu = k * k;
  const Index ns = ks * ks;
  std::vector<CMatrix> blocks;
  for (std::size_t j = 0; j < g1.size(); ++j) {
    const CMatrix& t1 = (*l.theta)[j];
    const CMatrix& t2 = (*r.theta)[j];
    CMatrix b1(ks * k, nu + ns);
    b1 << -kron(eye(k), t2), kron(t1.transpose(), eye(ks));
    CMatrix b2(k * ks, nu + ns);
    b2 << kron(t1.conjugate(), eye(k)), -kron(eye(ks), t2.adjoint());
    blocks.push_back(std::move(b1));
    blocks.push_back(std::move(b2));
  }
  const auto relation = [&](const CMatrix& x, const CMatrix& y, Index d, bool star_side) {
    CMatrix b(d * d, nu + ns);
    b.setZero();
    const CMatrix core = kron(x.transpose(), eye(d)) - kron(eye(d), y);
    const CMatrix adj = kron(x.conjugate(), eye(d)) - kron(eye(d), y.adjoint());
    CMatrix b2 = b;
    if (star_side) {
      b.rightCols(ns) = core;
      b2.rightCols(ns) = adj;
    } else {
      b.leftCols(nu) = core;
      b2.leftCols(nu) = adj;
    }
    blocks.push_back(std::move(b));
    blocks.push_back(std::move(b2));
  };
  for (std::size_t i = 0; i < l.a->size(); ++i) relation((*l.a)[i], (*r.a)[i], k, false);
  for (std::size_t i = 0; i < l.b->size(); ++i) relation((*l.b)[i], (*r.b)[i], ks, true);
  Index rows = 0;
  for (const CMatrix& b : blocks) rows += b.rows();

  CMatrix u0 = eye(k);
  CMatrix us0 = eye(ks);
  if (nu + ns > 0 && rows > 0) {
    CMatrix lin(rows, nu + ns);
    Index at = 0;
    for (const CMatrix& b : blocks) {
      lin.middleRows(at, b.rows()) = b;
      at += b.rows();
    }
    const CMatrix basis = nullspace(lin, tol);
    res.nullspace_dim = static_cast<std::size_t>(basis.cols());
    std::mt19937_64 rng = stream(cfg.seed, 0);
    const CVector x = random_combination(basis, rng);
    u0 = polar_unitary(x.head(nu).reshaped(k, k));
    us0 = polar_unitary(x.tail(ns).reshaped(ks, ks));
  }
  res.u = u0;
  res.u_star = us0;
  res.residual = joint_residual(l, r, u0, us0);
  res.best_start = -1;

  const bool proceed = res.falsifier.empty() || cfg.force_procrustes;
  if (proceed && res.residual > res.threshold) {
    const std::size_t starts = static_cast<std::size_t>(cfg.restarts) + 1;
    std::vector<CMatrix> us(starts), uss(starts);
    std::vector<double> rs(starts);
    const double stop = 1e-3 * res.threshold;
    parallel_for(starts, [&](std::size_t s) {
      CMatrix u = u0;
      CMatrix v = us0;
      if (s > 0) {
        std::mt19937_64 rng = stream(cfg.seed, s);
        u = random_unitary(k, rng);
        v = random_unitary(ks, rng);
      }
      rs[s] = procrustes(l, r, u, v, cfg.max_iter, stop);
      us[s] = std::move(u);
      uss[s] = std::move(v);
    });
    for (std::size_t s = 0; s < starts; ++s) {
      if (rs[s] < res.residual) {
        res.residual = rs[s];
        res.u = us[s];
        res.u_star = uss[s];
        res.best_start = static_cast<int>(s);
      }
    }
  }
  res.certified = proceed && res.residual <= res.threshold;
  return res;
}

EquivalenceVerdict decide_equivalence(const GammaTuple& g, const GammaTuple& g2, const Tolerances& tol,
                                      const CoincidenceConfig& cfg) {
  if (g.n != g2.n) throw LabError(ErrorCode::DimensionMismatch, "tuples of different degree");
  const auto hypothesis = [&](const GammaTuple& t, const char* which) {
    for (int i = 1; i < t.n; ++i) {
      const CMatrix& s = t.s(i);
      const double r = op_norm(s.adjoint() * t.P - t.P * s.adjoint());
      if (r > tol.eq_tol * (1.0 + op_norm(s))) {
        throw LabError(ErrorCode::HypothesisViolated,
                       std::string(which) + ": S_" + std::to_string(i) + "* P - P S_" + std::to_string(i) +
                           "* has norm " + std::to_string(r));
      }
    }
  };
  hypothesis(g, "first tuple");
  hypothesis(g2, "second tuple");

  const std::vector<cplx> grid = coincidence_grid();
  const CharData d1 = char_data(g, grid, tol);
  const CharData d2 = char_data(g2, grid, tol);
  EquivalenceVerdict v;
  v.coincidence = coincidence_solve(d1.ct, d2.ct, d1.fadj, d2.fadj, tol, cfg);
  if (!v.coincidence.certified || g.dim() != g2.dim()) return v;

  // U intertwines the tuples and their adjoints, and extends u, u_* from the defect spaces.
  const Index m = g.dim();
  const std::vector<CMatrix> ops = g.operators();
  const std::vector<CMatrix> ops2 = g2.operators();
  std::vector<CMatrix> blocks;
  std::vector<CVector> rhs;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    blocks.push_back(kron(ops[i].transpose(), eye(m)) - kron(eye(m), ops2[i]));
    blocks.push_back(kron(ops[i].conjugate(), eye(m)) - kron(eye(m), ops2[i].adjoint()));
    rhs.push_back(CVector::Zero(m * m));
    rhs.push_back(CVector::Zero(m * m));
  }
  const auto pin = [&](const CMatrix& b, const CMatrix& b2, const CMatrix& w) {
    if (b.cols() == 0) return;
    blocks.push_back(kron(b.transpose(), eye(m)));
    rhs.push_back((b2 * w).reshaped());
  };
  pin(d1.ct.F.defect.basis, d2.ct.F.defect.basis, v.coincidence.u);
  pin(d1.fadj.defect.basis, d2.fadj.defect.basis, v.coincidence.u_star);
  Index rows = 0;
  for (const CMatrix& b : blocks) rows += b.rows();
  CMatrix lin(rows, m * m);
  CVector y(rows);
  Index at = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    lin.middleRows(at, blocks[i].rows()) = blocks[i];
    y.segment(at, blocks[i].rows()) = rhs[i];
    at += blocks[i].rows();
  }
  Eigen::JacobiSVD<CMatrix> svd(lin, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(tol.eq_tol);
  CVector x = svd.solve(y);
  if (svd.rank() < m * m) {
    std::mt19937_64 rng = stream(cfg.seed, 0x5eed);
    const double w = std::max(1.0, x.norm()) / std::sqrt(static_cast<double>(m));
    x += w * random_combination(nullspace(lin, tol), rng);
  }
  const CMatrix U = polar_unitary(x.reshaped(m, m));
  double sres = 0.0;
  double smax = 0.0;
  for (int i = 1; i < g.n; ++i) {
    sres = std::max(sres, op_norm(U * g.s(i) - g2.s(i) * U));
    smax = std::max(smax, op_norm(g.s(i)));
  }
  v.s_residual = sres;
  v.p_residual = op_norm(U * g.P - g2.P * U);
  v.unitary_residual = op_norm(U.adjoint() * U - eye(m));
  v.U = U;
  v.confirmed = v.s_residual <= tol.cert_tol * (1.0 + smax) && v.p_residual <= tol.cert_tol &&
                v.unitary_residual <= tol.cert_tol;
  return v;
}

}  // namespace gammalab
