#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gammalab_tools/commands.hpp"

using namespace gammalab;
using namespace gammalab::cli;

namespace {

void add_config_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--seed", cfg.seed, "Random seed");
  app->add_option("--eq-tol", cfg.tol.eq_tol, "Equality tolerance");
  app->add_option("--rank-tol", cfg.tol.rank_tol, "Rank tolerance");
  app->add_option("--cert-tol", cfg.tol.cert_tol, "Certification tolerance");
  app->add_option("--depth", cfg.dilation_depth, "Dilation depth N");
  app->add_option("--fourier", cfg.fourier, "Fourier depth of the model");
  app->add_option("--laurent", cfg.laurent, "Laurent depth of the model");
  app->add_option("--toeplitz", cfg.toeplitz, "Toeplitz section depth");
  app->add_option("--resolution", cfg.resolution, "Torus grid resolution");
  app->add_option("--disc-grid", cfg.disc_grid, "Number of disc grid points");
  app->add_option("--grid-cap", cfg.grid_cap, "Largest torus grid");
  app->add_option("--max-iter", cfg.max_iter, "Iteration budget, 0 for automatic");
  app->add_option("--probe-degree", cfg.probe_degree, "Degree of probe polynomials");
  app->add_option("--probe-samples", cfg.probe_samples, "Number of random probe polynomials");
}

GammaTuple load_tuple(const std::string& path) { return io::tuple_from_json(io::read_json_file(path), path); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gammalab: numerical laboratory for Gamma_n-contractions"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string report_path;
  app.add_option("--report", report_path, "Write the JSON report to this file");

  GenOptions gen;
  std::string mode = "closed";
  std::string out_path;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Emit a generated tuple as JSON");
  gen_cmd->add_option("--kind", gen.kind, "ando, diagonal or example1")
      ->check(CLI::IsMember({"ando", "diagonal", "example1"}));
  gen_cmd->add_option("--dim", gen.dim, "Dimension")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n", gen.n, "Degree n")->check(CLI::Range(2, 64));
  gen_cmd->add_option("--mode", mode, "Diagonal mode")->check(CLI::IsMember({"closed", "interior", "unimodular"}));
  gen_cmd->add_option("--alpha", gen.alpha, "Weight for example1");
  gen_cmd->add_option("--seed", cfg.seed, "Random seed");
  gen_cmd->add_option("--out", out_path, "Write the tuple to this file");

  std::string input;
  std::string input2;
  CLI::App* fo_cmd = app.add_subcommand("fo", "Fundamental operator tuples and residuals");
  CLI::App* check_cmd = app.add_subcommand("check", "Classification, polynomial probe and sufficient condition");
  CLI::App* dilate_cmd = app.add_subcommand("dilate", "Isometric dilation and its checks");
  CLI::App* model_cmd = app.add_subcommand("model", "Operator model embeddings");
  CLI::App* charfn_cmd = app.add_subcommand("charfn", "Characteristic function samples");
  CLI::App* equiv_cmd = app.add_subcommand("equiv", "Decide unitary equivalence of two tuples");
  for (CLI::App* c : {fo_cmd, check_cmd, dilate_cmd, model_cmd, charfn_cmd, equiv_cmd}) {
    c->add_option("input", input, "Tuple JSON file")->required()->check(CLI::ExistingFile);
    add_config_flags(c, cfg);
  }
  equiv_cmd->add_option("other", input2, "Second tuple JSON file")->required()->check(CLI::ExistingFile);

  int max_degree = 5;
  double alpha = 0.5;
  dilate_cmd->add_option("--max-degree", max_degree, "Largest monomial degree for the compression check");
  dilate_cmd->add_option("--alpha", alpha, "Split weight for the representation");
  bool relaxed = false;
  model_cmd->add_flag("--relaxed", relaxed, "Build the model even when S_i* P != P S_i*");
  double radius = 0.9;
  int delta_samples = 16;
  charfn_cmd->add_option("--radius", radius, "Radius of the disc grid");
  charfn_cmd->add_option("--delta-samples", delta_samples, "Samples of Delta_P on the circle");
  int restarts = 4;
  equiv_cmd->add_option("--restarts", restarts, "Random restarts of the Procrustes stage");

  double ex_alpha = 0.5;
  Index ex_dim = 12;
  int ex_n = 3;
  CLI::App* ex_cmd = app.add_subcommand("example1", "Counterexample report for the weighted shift family");
  ex_cmd->add_option("--alpha", ex_alpha, "Weight alpha");
  ex_cmd->add_option("--dim", ex_dim, "Truncation dimension m");
  ex_cmd->add_option("--n", ex_n, "Degree n");
  add_config_flags(ex_cmd, cfg);

  std::string theta_path;
  CLI::App* blh_cmd = app.add_subcommand("blh", "Intertwining through an inner function");
  blh_cmd->add_option("input", theta_path, "JSON with theta {coeffs} and A [matrices]")
      ->required()
      ->check(CLI::ExistingFile);
  add_config_flags(blh_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPassed : kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "gen") {
      gen.mode = diagonal_mode_from_string(mode);
      const std::string text = io::dump(io::to_json(generate(gen, cfg.seed)));
      if (out_path.empty()) std::cout << text;
      else io::write_text_file(out_path, text);
      return kExitPassed;
    }
    Report r;
    if (command == "fo") r = run_fo(load_tuple(input), cfg);
    else if (command == "check") r = run_check(load_tuple(input), cfg);
    else if (command == "dilate") r = run_dilate(load_tuple(input), cfg, max_degree, alpha);
    else if (command == "model") r = run_model(load_tuple(input), cfg, relaxed);
    else if (command == "example1") r = run_example1(ex_alpha, ex_dim, ex_n, cfg);
    else if (command == "charfn") r = run_charfn(load_tuple(input), cfg, radius, delta_samples);
    else if (command == "equiv") r = run_equiv(load_tuple(input), load_tuple(input2), cfg, restarts);
    else {
      const io::json j = io::read_json_file(theta_path);
      if (!j.is_object() || !j.contains("theta") || !j.contains("A")) {
        throw LabError(ErrorCode::SchemaError, theta_path + ": field theta and A are required");
      }
      r = run_blh(io::polynomial_from_json(j["theta"], "theta"), io::matrices_from_json(j["A"], "A"), cfg);
    }
    const std::string text = io::dump(r.body);
    if (report_path.empty()) {
      std::cout << text;
    } else {
      io::write_text_file(report_path, text);
      std::cout << command << ": " << (r.exit_code == kExitPassed ? "passed" : "failed") << "\n";
    }
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "gammalab " << command << ": " << e.what() << "\n";
    if (!report_path.empty()) {
      try {
        io::write_text_file(report_path, io::dump(error_report(command, e)));
      } catch (const std::exception&) {
      }
    }
    return kExitError;
  }
}
