#include "gammalab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "gammalab/parallel.hpp"

namespace gammalab {

namespace {

constexpr std::size_t kChunk = 2048;
constexpr int kRefineStarts = 3;
constexpr int kRefineBudget = 1500;

struct TopK {
  std::vector<double> value;
  std::vector<std::size_t> index;

  void offer(double v, std::size_t i) {
    std::size_t pos = value.size();
    while (pos > 0 && v > value[pos - 1]) --pos;
    if (pos >= static_cast<std::size_t>(kRefineStarts)) return;
    value.insert(value.begin() + static_cast<long>(pos), v);
    index.insert(index.begin() + static_cast<long>(pos), i);
    if (value.size() > static_cast<std::size_t>(kRefineStarts)) {
      value.pop_back();
      index.pop_back();
    }
  }
};

std::vector<cplx> torus_monomials(std::span<const Exponent> exps, std::span<const double> theta, int degree) {
  std::vector<cplx> z(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) z[j] = std::polar(1.0, theta[j]);
  const GammaPoint pt = symmetrize(z);
  return eval_monomials(exps, pt.coords, degree);
}

}  // namespace

SupNormProbe::SupNormProbe(int n, const ProbeConfig& cfg) : n_(n), cfg_(cfg) {
  if (n < 1 || cfg.degree < 1 || cfg.resolution < 2 || cfg.samples < 0) {
    throw LabError(ErrorCode::InvalidArgument, "probe needs n >= 1, degree >= 1, resolution >= 2");
  }
  exps_ = monomial_exponents(n, cfg.degree);
  std::map<Exponent, Index> where;
  for (std::size_t m = 0; m < exps_.size(); ++m) where[exps_[m]] = static_cast<Index>(m);

  for (int j = 0; j < n; ++j) polys_.push_back(Polynomial::coordinate(n, j));
  for (int k = 2; k <= cfg.degree; ++k) polys_.push_back(power_sum(n, k));
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  for (int t = 0; t < cfg.samples; ++t) {
    Polynomial p(n);
    for (const auto& e : exps_) {
      const double re = nd(rng);
      const double im = nd(rng);
      p.add_term(e, cplx(s * re, s * im));
    }
    polys_.push_back(std::move(p));
  }

  const Index npoly = static_cast<Index>(polys_.size());
  const Index nmono = static_cast<Index>(exps_.size());
  coeffs_ = CMatrix::Zero(npoly, nmono);
  for (Index i = 0; i < npoly; ++i) {
    for (const auto& [e, c] : polys_[i].terms()) coeffs_(i, where.at(e)) = c;
  }

  const auto orbit = torus_orbit_indices(n, cfg.resolution, cfg.grid_cap);
  std::vector<cplx> roots(cfg.resolution);
  for (int k = 0; k < cfg.resolution; ++k) roots[k] = unit_root(k, cfg.resolution);

  const std::size_t nchunks = (orbit.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<TopK>> chunk_top(nchunks);
  parallel_for(nchunks, [&](std::size_t c) {
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(orbit.size(), lo + kChunk);
    CMatrix mon(nmono, static_cast<Index>(hi - lo));
    std::vector<cplx> z(n);
    for (std::size_t q = lo; q < hi; ++q) {
      for (int j = 0; j < n; ++j) z[j] = roots[orbit[q][j]];
      const GammaPoint pt = symmetrize(z);
      const auto mv = eval_monomials(exps_, pt.coords, cfg.degree);
      for (Index m = 0; m < nmono; ++m) mon(m, static_cast<Index>(q - lo)) = mv[m];
    }
    const Eigen::MatrixXd vals = (coeffs_ * mon).cwiseAbs();
    auto& top = chunk_top[c];
    top.resize(npoly);
    for (Index i = 0; i < npoly; ++i) {
      for (Index q = 0; q < vals.cols(); ++q) top[i].offer(vals(i, q), lo + static_cast<std::size_t>(q));
    }
  });

  std::vector<TopK> best(npoly);
  for (const auto& ct : chunk_top) {
    for (Index i = 0; i < npoly; ++i) {
      for (std::size_t k = 0; k < ct[i].value.size(); ++k) best[i].offer(ct[i].value[k], ct[i].index[k]);
    }
  }

  sups_.assign(npoly, 0.0);
  parallel_for(static_cast<std::size_t>(npoly), [&](std::size_t i) {
    double sup = best[i].value.empty() ? 0.0 : best[i].value.front();
    if (cfg_.refine) {
      for (std::size_t k = 0; k < best[i].index.size(); ++k) {
        std::vector<double> theta(n);
        for (int j = 0; j < n; ++j) {
          theta[j] = 2.0 * std::numbers::pi * orbit[best[i].index[k]][j] / cfg_.resolution;
        }
        sup = std::max(sup, refine_sup(i, std::move(theta), best[i].value[k]));
      }
    }
    sups_[i] = sup;
  });
}

double SupNormProbe::refine_sup(std::size_t poly, std::vector<double> theta, double start) const {
  auto value = [&](const std::vector<double>& th) {
    const auto mv = torus_monomials(exps_, th, cfg_.degree);
    cplx acc(0.0, 0.0);
    for (std::size_t m = 0; m < mv.size(); ++m) acc += coeffs_(static_cast<Index>(poly), static_cast<Index>(m)) * mv[m];
    return std::abs(acc);
  };
  double best = start;
  double h = std::numbers::pi / cfg_.resolution;
  int evals = 0;
  while (h > 1e-10 && evals < kRefineBudget) {
    bool improved = false;
    for (int j = 0; j < n_ && evals < kRefineBudget; ++j) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> trial = theta;
        trial[j] += dir * h;
        const double v = value(trial);
        ++evals;
        if (v > best) {
          best = v;
          theta = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    if (!improved) h *= 0.5;
  }
  return best;
}

VnVerdict SupNormProbe::test(std::span<const CMatrix> ops, const Tolerances& tol) const {
  if (static_cast<int>(ops.size()) != n_) {
    throw LabError(ErrorCode::DimensionMismatch, "probe degree does not match the tuple");
  }
  const Index dim = ops[0].rows();
  const int d = cfg_.degree;
  std::vector<std::vector<CMatrix>> pw(n_);
  for (int j = 0; j < n_; ++j) {
    pw[j].push_back(CMatrix::Identity(dim, dim));
    for (int k = 1; k <= d; ++k) pw[j].push_back(pw[j].back() * ops[j]);
  }
  std::vector<CMatrix> mono(exps_.size());
  for (std::size_t m = 0; m < exps_.size(); ++m) {
    CMatrix acc = CMatrix::Identity(dim, dim);
    for (int j = 0; j < n_; ++j) {
      if (exps_[m][j] > 0) acc = acc * pw[j][exps_[m][j]];
    }
    mono[m] = std::move(acc);
  }

  const std::size_t npoly = polys_.size();
  std::vector<double> ratio(npoly, 0.0);
  parallel_for(npoly, [&](std::size_t i) {
    CMatrix acc = CMatrix::Zero(dim, dim);
    for (std::size_t m = 0; m < mono.size(); ++m) {
      const cplx c = coeffs_(static_cast<Index>(i), static_cast<Index>(m));
      if (c != cplx(0.0, 0.0)) acc += c * mono[m];
    }
    const double num = op_norm(acc);
    ratio[i] = sups_[i] > 0.0 ? num / sups_[i] : (num > 0.0 ? HUGE_VAL : 0.0);
  });

  VnVerdict v;
  v.polynomials_tested = npoly;
  for (std::size_t i = 0; i < npoly; ++i) {
    v.max_ratio = std::max(v.max_ratio, ratio[i]);
    if (!v.falsified && ratio[i] > 1.0 + tol.cert_tol) {
      v.falsified = true;
      v.witness = polys_[i];
      v.witness_index = i;
      v.witness_ratio = ratio[i];
    }
  }
  return v;
}

VnVerdict SupNormProbe::test(const GammaTuple& g, const Tolerances& tol) const {
  return test(g.operators(), tol);
}

VnVerdict vn_falsify(const GammaTuple& g, const ProbeConfig& cfg, const Tolerances& tol) {
  validate(g, tol, false);
  return SupNormProbe(g.n, cfg).test(g, tol);
}

}  // namespace gammalab
