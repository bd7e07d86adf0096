#include "gammalab_tools/commands.hpp"

#include <algorithm>
#include <cmath>

#include "gammalab/abstractmodel.hpp"
#include "gammalab/dilation.hpp"
#include "gammalab/invariants.hpp"

namespace gammalab::cli {

namespace {

json header(const std::string& command, const RunConfig& cfg) {
  json j;
  j["schema"] = io::kSchemaVersion;
  j["command"] = command;
  j["config"] = cfg.to_json();
  return j;
}

Report finish(json body, bool passed) {
  body["passed"] = passed;
  return {std::move(body), passed ? kExitPassed : kExitFailed};
}

double max_of(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, x);
  return m;
}

double max_s_norm(const GammaTuple& g) {
  double m = 0.0;
  for (const CMatrix& s : g.S) m = std::max(m, op_norm(s));
  return m;
}

json vn_json(const VnVerdict& v) {
  json j{{"label", v.label()},
         {"max_ratio", v.max_ratio},
         {"polynomials_tested", v.polynomials_tested}};
  if (v.falsified && v.witness) {
    j["witness"] = v.witness->to_string();
    j["witness_index"] = v.witness_index;
    j["witness_ratio"] = v.witness_ratio;
  }
  return j;
}

json fo_json(const FundamentalTuple& f) {
  return json{{"defect_dim", f.defect_dim()},
              {"A", io::to_json(f.A)},
              {"residuals", f.residuals},
              {"leakage", f.leakage},
              {"adjoint_leakage", f.adjoint_leakage},
              {"leakage_detected", f.leakage_detected},
              {"condition", f.condition}};
}

bool fo_ok(const GammaTuple& g, const FundamentalTuple& f, const std::vector<double>& identity, const Tolerances& tol) {
  if (f.leakage_detected) return false;
  for (int i = 1; i < g.n; ++i) {
    const double bound = tol.eq_tol * (1.0 + op_norm(g.s(i)));
    const auto k = static_cast<std::size_t>(i - 1);
    if (f.residuals[k] > bound || identity[k] > bound) return false;
  }
  return true;
}

json pure_json(const PureIsometryVerdict& v) {
  json j{{"passed", v.passed},
         {"max_commutator", v.max_commutator},
         {"algebra_residual", v.algebra_residual},
         {"failed", v.failed},
         {"max_ratio", v.max_ratio},
         {"pencils_tested", v.pencils_tested}};
  if (v.failing_z) j["failing_z"] = io::to_json(*v.failing_z);
  if (v.evidence) j["evidence"] = vn_json(*v.evidence);
  return j;
}

}  // namespace

void RunConfig::validate() const {
  tol.validate();
  if (dilation_depth < 2 || fourier < 2 || laurent < 2 || toeplitz < 2) {
    throw LabError(ErrorCode::InvalidArgument, "all depths must be at least 2");
  }
  if (resolution < 8) throw LabError(ErrorCode::InvalidArgument, "resolution must be at least 8");
  if (disc_grid < 1) throw LabError(ErrorCode::InvalidArgument, "disc grid needs at least one point");
  if (max_iter < 0) throw LabError(ErrorCode::InvalidArgument, "max_iter must be nonnegative");
  if (probe_degree < 1 || probe_samples < 0) {
    throw LabError(ErrorCode::InvalidArgument, "probe degree must be positive and samples nonnegative");
  }
}

ProbeConfig RunConfig::probe() const {
  ProbeConfig p;
  p.degree = probe_degree;
  p.samples = probe_samples;
  p.resolution = resolution;
  p.seed = seed;
  p.grid_cap = grid_cap;
  return p;
}

json RunConfig::to_json() const {
  return json{{"tolerances", {{"eq_tol", tol.eq_tol}, {"rank_tol", tol.rank_tol}, {"cert_tol", tol.cert_tol}}},
              {"seed", seed},
              {"depths", {{"dilation", dilation_depth}, {"fourier", fourier}, {"laurent", laurent}, {"toeplitz", toeplitz}}},
              {"grid", {{"resolution", resolution}, {"disc", disc_grid}}},
              {"caps", {{"grid_cap", grid_cap}, {"max_iter", max_iter}}},
              {"probe", {{"degree", probe_degree}, {"samples", probe_samples}}}};
}

GammaTuple generate(const GenOptions& opts, std::uint64_t seed) {
  if (opts.kind == "ando") return gen_symmetrized_ando(opts.dim, opts.n, seed);
  if (opts.kind == "diagonal") return gen_diagonal_normal(opts.dim, opts.n, seed, opts.mode);
  if (opts.kind == "example1") return example1_tuple(opts.dim, opts.n, opts.alpha);
  throw LabError(ErrorCode::InvalidArgument, "unknown generator kind " + opts.kind);
}

Report run_fo(const GammaTuple& g, const RunConfig& cfg) {
  cfg.validate();
  validate(g, cfg.tol);
  json j = header("fo", cfg);
  const FundamentalTuple f = fo_tuple(g, cfg.tol);
  const FundamentalTuple fadj = fo_tuple(g.adjoint(), cfg.tol);
  const std::vector<double> id = verify_fundamental_identity(g, f, cfg.tol);
  const std::vector<double> id_adj = verify_fundamental_identity(g.adjoint(), fadj, cfg.tol);
  j["fo"] = fo_json(f);
  j["fo"]["identity_residuals"] = id;
  j["fo_adjoint"] = fo_json(fadj);
  j["fo_adjoint"]["identity_residuals"] = id_adj;
  return finish(std::move(j), fo_ok(g, f, id, cfg.tol) && fo_ok(g.adjoint(), fadj, id_adj, cfg.tol));
}

Report run_check(const GammaTuple& g, const RunConfig& cfg) {
  cfg.validate();
  validate(g, cfg.tol, false);
  json j = header("check", cfg);
  const ProbeConfig probe = cfg.probe();
  const ClassifyResult c = classify(g, cfg.tol, probe);
  j["classification"] = to_string(c.kind);
  j["normal_residual"] = c.normal_residual;
  j["unitary_residual"] = c.unitary.residual;
  j["isometry_residual"] = c.isometry.residual;
  j["spectrum_in_bgamma"] = c.spectrum_in_bgamma;
  json spec = json::array();
  for (const JointEigenvalue& e : c.joint_spectrum) {
    json pt = json::array();
    for (const cplx& z : e) pt.push_back(io::to_json(z));
    spec.push_back(std::move(pt));
  }
  j["joint_spectrum"] = std::move(spec);
  const VnVerdict vn = c.vn ? *c.vn : vn_falsify(g, probe, cfg.tol);
  j["vn"] = vn_json(vn);
  bool passed = !vn.falsified;
  if (op_norm(g.P) <= 1.0 + cfg.tol.cert_tol) {
    const FundamentalTuple f = fo_tuple(g, cfg.tol);
    const FundamentalTuple fadj = fo_tuple(g.adjoint(), cfg.tol);
    const SufficiencyVerdict s = sufficient_condition_check(g, f, fadj, cfg.tol, cfg.resolution, probe);
    json sj{{"label", s.label()},
            {"certified", s.certified},
            {"failed_condition", s.failed_condition},
            {"max_ratio", s.max_ratio},
            {"tuples_tested", s.tuples_tested}};
    if (s.failing_z) sj["failing_z"] = io::to_json(*s.failing_z);
    if (!s.certified) sj["evidence"] = vn_json(s.evidence);
    j["sufficiency"] = std::move(sj);
    passed = passed && s.certified;
  } else {
    j["sufficiency"] = json{{"label", "skipped: P is not a contraction"}, {"certified", false}};
    passed = false;
  }
  return finish(std::move(j), passed);
}

Report run_dilate(const GammaTuple& g, const RunConfig& cfg, int max_degree, double alpha) {
  cfg.validate();
  validate(g, cfg.tol);
  json j = header("dilate", cfg);
  const FundamentalTuple f = fo_tuple(g, cfg.tol);
  const FundamentalTuple fadj = fo_tuple(g.adjoint(), cfg.tol);
  const DilationTuple d = schaffer_dilate(g, f, cfg.dilation_depth, cfg.tol);
  const CompressionReport comp = verify_dilation(d, max_degree, cfg.tol);
  const MinimalityReport mini = minimality_report(d, cfg.tol);
  const RepresentationSplit rep = representation_split(d, cfg.tol, alpha);
  const WExtraction w = extract_W(d, f, cfg.tol);
  PureCheckConfig pc;
  pc.depth = cfg.toeplitz;
  pc.resolution = cfg.resolution;
  pc.probe = cfg.probe();
  const PureIsometryVerdict n1 = necessary1_check(fadj, pc, cfg.tol);
  const double scale = 1.0 + max_s_norm(g);
  j["dilation"] = {{"depth", d.depth},
                   {"defect_dim", d.defect_dim},
                   {"total_dim", d.total_dim()},
                   {"interior_isometry_residual", d.interior_isometry_residual},
                   {"interior_commutator_residual", d.interior_commutator_residual},
                   {"interior_algebra_residual", d.interior_algebra_residual}};
  json worst = json::array();
  for (int e : comp.worst_monomial) worst.push_back(e);
  j["compression"] = {{"max_degree", comp.max_degree},
                      {"monomials", comp.monomials},
                      {"max_residual", comp.max_residual},
                      {"worst_monomial", std::move(worst)},
                      {"passed", comp.passed}};
  j["minimality"] = {{"krylov_rank", mini.krylov_rank}, {"space_dim", mini.space_dim}, {"full", mini.full}};
  j["representation"] = {{"alpha", rep.alpha},
                         {"per_index", rep.per_index},
                         {"residual", rep.residual},
                         {"series_terms", rep.series_terms}};
  j["extract_W"] = {{"recovery_residual", w.recovery_residual},
                    {"embedding_isometry_residual", w.embedding_isometry_residual},
                    {"tail_isometry_residual", w.tail_isometry_residual}};
  j["necessary1"] = pure_json(n1);
  const bool passed = comp.passed && d.interior_algebra_residual <= cfg.tol.eq_tol * scale &&
                      rep.residual <= cfg.tol.cert_tol && w.recovery_residual <= cfg.tol.eq_tol * scale && n1.passed;
  return finish(std::move(j), passed);
}

Report run_model(const GammaTuple& g, const RunConfig& cfg, bool relaxed) {
  cfg.validate();
  validate(g, cfg.tol);
  json j = header("model", cfg);
  AsymptoticOptions ao;
  if (cfg.max_iter > 0) ao.max_iter = cfg.max_iter;
  const AsymptoticData ad = asymptotic_limits(g.P, cfg.tol, ao);
  const ModelEmbedding me = build_embedding(g, ad, {cfg.fourier, cfg.laurent}, cfg.tol, relaxed);
  const FundamentalTuple f = fo_tuple(g, cfg.tol);
  const FundamentalTuple fadj = fo_tuple(g.adjoint(), cfg.tol);
  const ModelReport mr = verify_model(g, me, f, fadj, cfg.tol);
  const Lemma1Report l1 = lemma1_check(g, fadj, ad, cfg.tol);
  j["asymptotic"] = {{"iterations", ad.iterations_used},
                     {"iterations_star", ad.iterations_used_star},
                     {"last_increment", ad.last_increment},
                     {"last_increment_star", ad.last_increment_star},
                     {"rank", ad.ranA.dim()},
                     {"fixed_point_residual", ad.fixed_point_residual},
                     {"v_isometry_residual", ad.v_isometry_residual},
                     {"qv_commutator", ad.qv_commutator},
                     {"qvstar_commutator", ad.qvstar_commutator},
                     {"monotonicity_violation", ad.monotonicity_violation}};
  j["embedding"] = {{"fourier", me.depths.fourier},
                    {"laurent", me.depths.laurent},
                    {"h0_dim", me.H0.dim()},
                    {"tail_bound", me.tail_bound},
                    {"commutation_residual", me.commutation_residual},
                    {"relaxed", me.relaxed}};
  j["model"] = {{"label", mr.label},
                {"w1_residual", mr.w1_residual},
                {"w2_residual", mr.w2_residual},
                {"p_w1_residual", mr.p_w1_residual},
                {"p_w2_residual", mr.p_w2_residual}};
  j["lemma1"] = {{"range_identity", l1.range_identity}, {"adjoint_identity", l1.adjoint_identity}};
  const double worst = std::max({max_of(mr.w1_residual), max_of(mr.w2_residual), mr.p_w1_residual,
                                 mr.p_w2_residual, max_of(l1.range_identity), max_of(l1.adjoint_identity)});
  return finish(std::move(j), !mr.relaxed && worst <= cfg.tol.cert_tol);
}

Report run_example1(double alpha, Index m, int n, const RunConfig& cfg) {
  cfg.validate();
  json j = header("example1", cfg);
  const Example1Report r = example1_counterexample(m, n, alpha, cfg.tol, {cfg.fourier, cfg.laurent});
  j["m"] = r.m;
  j["n"] = r.n;
  j["alpha"] = r.alpha;
  j["gap"] = r.gap;
  j["model_gap"] = r.model_gap;
  j["expected_gap"] = r.expected_gap;
  json cf = json::object();
  double cf_max = 0.0;
  for (const auto& [name, v] : r.closed_form_residuals) {
    cf[name] = v;
    cf_max = std::max(cf_max, v);
  }
  j["closed_form_residuals"] = std::move(cf);
  j["fo_a1_residual"] = r.fo_a1_residual;
  j["w1_residual"] = r.w1_residual;
  j["w2_residual"] = r.w2_residual;
  j["lemma1"] = {{"range_identity", r.lemma1.range_identity}, {"adjoint_identity", r.lemma1.adjoint_identity}};
  j["label"] = r.label;
  const bool passed = std::abs(r.gap - r.expected_gap) <= cfg.tol.cert_tol &&
                      std::abs(r.model_gap - r.expected_gap) <= cfg.tol.cert_tol && cf_max <= cfg.tol.rank_tol &&
                      r.w1_residual <= cfg.tol.eq_tol;
  return finish(std::move(j), passed);
}

Report run_charfn(const GammaTuple& g, const RunConfig& cfg, double radius, int delta_samples) {
  cfg.validate();
  validate(g, cfg.tol);
  json j = header("charfn", cfg);
  const std::vector<cplx> grid = disc_grid(cfg.disc_grid, radius, true);
  const CharFnGrid c = char_fn(g.P, grid, cfg.tol, delta_samples);
  json pts = json::array();
  for (const cplx& z : c.points) pts.push_back(io::to_json(z));
  j["points"] = std::move(pts);
  j["values"] = io::to_json(c.values);
  j["delta_t"] = c.delta_t;
  j["delta"] = io::to_json(c.delta);
  j["delta_skipped"] = c.delta_skipped;
  j["max_norm"] = c.max_norm;
  j["origin_residual"] = c.origin_residual;
  return finish(std::move(j), c.max_norm <= 1.0 + cfg.tol.eq_tol && c.origin_residual <= cfg.tol.eq_tol);
}

Report run_equiv(const GammaTuple& g, const GammaTuple& g2, const RunConfig& cfg, int restarts) {
  cfg.validate();
  validate(g, cfg.tol);
  validate(g2, cfg.tol);
  json j = header("equiv", cfg);
  CoincidenceConfig cc;
  cc.restarts = restarts;
  cc.seed = cfg.seed;
  if (cfg.max_iter > 0) cc.max_iter = cfg.max_iter;
  const EquivalenceVerdict v = decide_equivalence(g, g2, cfg.tol, cc);
  const CoincidenceResult& c = v.coincidence;
  json cj{{"label", c.label()},
          {"certified", c.certified},
          {"residual", c.residual},
          {"threshold", c.threshold},
          {"falsifier", c.falsifier},
          {"falsifier_gap", c.falsifier_gap},
          {"nullspace_dim", c.nullspace_dim},
          {"best_start", c.best_start},
          {"grid", "0 and 32 points on |z| = 0.9; coincidence is certified on this grid only"}};
  if (c.certified) {
    cj["u"] = io::to_json(c.u);
    cj["u_star"] = io::to_json(c.u_star);
  }
  j["coincidence"] = std::move(cj);
  if (v.U) {
    j["confirmation"] = {{"confirmed", v.confirmed},
                         {"s_residual", v.s_residual},
                         {"p_residual", v.p_residual},
                         {"unitary_residual", v.unitary_residual},
                         {"U", io::to_json(*v.U)}};
  }
  j["verdict"] = v.label();
  return finish(std::move(j), v.equivalent());
}

Report run_blh(const MatrixPolynomial& theta, const std::vector<CMatrix>& A, const RunConfig& cfg) {
  cfg.validate();
  json j = header("blh", cfg);
  const BlhResult r = blh_intertwine(theta, A, cfg.toeplitz, cfg.tol, cfg.disc_grid);
  j["B"] = io::to_json(r.B);
  j["structure_residual"] = r.structure_residual;
  j["consistency_residual"] = r.consistency_residual;
  j["inner_residual"] = r.inner_residual;
  j["intertwining_residual"] = r.intertwining_residual;
  j["range_invariance_residual"] = r.range_invariance_residual;
  j["depth_stability"] = r.depth_stability;
  j["interior_blocks"] = r.interior_blocks;
  const double worst = std::max({r.structure_residual, r.consistency_residual, r.inner_residual,
                                 r.intertwining_residual, r.range_invariance_residual});
  return finish(std::move(j), worst <= cfg.tol.eq_tol && r.depth_stability <= cfg.tol.rank_tol);
}

json error_report(const std::string& command, const std::exception& e) {
  json j;
  j["schema"] = io::kSchemaVersion;
  j["command"] = command;
  if (const auto* le = dynamic_cast<const LabError*>(&e)) j["error"] = to_string(le->code());
  else j["error"] = "Unexpected";
  j["message"] = e.what();
  j["passed"] = false;
  return j;
}

}  // namespace gammalab::cli
