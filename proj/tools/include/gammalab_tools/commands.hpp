#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gammalab/generators.hpp"
#include "gammalab/hardy.hpp"
#include "gammalab_tools/io.hpp"

namespace gammalab::cli {

using io::json;

inline constexpr int kExitPassed = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailed = 2;

struct RunConfig {
  Tolerances tol;
  std::uint64_t seed = 0;
  int dilation_depth = 12;
  int fourier = 40;
  int laurent = 40;
  int toeplitz = 8;
  int resolution = 24;
  int disc_grid = 32;
  std::size_t grid_cap = kDefaultGridCap;
  int max_iter = 0;  // 0 selects the automatic iteration budget
  int probe_degree = 3;
  int probe_samples = 200;

  // Throws InvalidArgument unless all depths are >= 2 and resolution >= 8.
  void validate() const;
  ProbeConfig probe() const;
  json to_json() const;
};

struct Report {
  json body;
  int exit_code = kExitPassed;
};

struct GenOptions {
  std::string kind = "ando";  // ando, diagonal or example1
  Index dim = 4;
  int n = 3;
  DiagonalMode mode = DiagonalMode::closed;
  double alpha = 0.5;
};

GammaTuple generate(const GenOptions& opts, std::uint64_t seed);

Report run_fo(const GammaTuple& g, const RunConfig& cfg);
Report run_check(const GammaTuple& g, const RunConfig& cfg);
Report run_dilate(const GammaTuple& g, const RunConfig& cfg, int max_degree, double alpha);
Report run_model(const GammaTuple& g, const RunConfig& cfg, bool relaxed);
Report run_example1(double alpha, Index m, int n, const RunConfig& cfg);
Report run_charfn(const GammaTuple& g, const RunConfig& cfg, double radius, int delta_samples);
Report run_equiv(const GammaTuple& g, const GammaTuple& g2, const RunConfig& cfg, int restarts);
Report run_blh(const MatrixPolynomial& theta, const std::vector<CMatrix>& A, const RunConfig& cfg);

// Report for a failed run: schema, command and the error code and message.
json error_report(const std::string& command, const std::exception& e);

}  // namespace gammalab::cli
