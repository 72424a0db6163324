#include <algorithm>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "agler/error.hpp"
#include "agler/grammian.hpp"
#include "agler/interpolation.hpp"
#include "agler/kernels.hpp"
#include "agler/random.hpp"
#include "agler/separation.hpp"
#include "agler/theorem.hpp"
#include "agler_cli/app.hpp"

namespace agler::cli {

namespace {

class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    row(std::vector<std::string>(header.begin(), header.end()));
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::string flag_cell(const std::optional<bool>& f) { return f ? (*f ? "true" : "false") : ""; }
Json flag_json(const std::optional<bool>& f) { return f ? Json(*f) : Json(nullptr); }

Json header(const AnalysisConfig& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = c.command;
  j["domain"] = c.domain.name();
  j["family"] = family_json(c.family);
  j["n"] = c.depth;
  if (c.sequence) j["sequence"] = describe(*c.sequence);
  return j;
}

Route solver_route(const TestFunctionFamily& family) {
  return family.is_grid() ? Route::grid(family.grid_size()) : Route::exact();
}

const char* kGridNote =
    "Feasible at a grid certifies the grid-restricted family only; a witness at a grid is also an "
    "obstruction for the full family, since the grid constraints are a subset.";

PointConfig active_points(const AnalysisConfig& c) { return c.points.prefix(c.depth); }

SolverOptions solver_options(const AnalysisConfig& c) {
  SolverOptions o;
  o.max_iterations = c.max_iterations;
  return o;
}

std::vector<KernelSample> sampled_kernels(const PointConfig& points, const AnalysisConfig& c) {
  std::vector<KernelSample> out{base_kernel(points, c.family)};
  for (std::size_t s = 1; s <= c.n_samples; ++s) out.push_back(scale_by_random_psd(out.front(), mix_seed(c.seed, s)));
  return out;
}

CommandOutput pick(const AnalysisConfig& c) {
  const PointConfig points = active_points(c);
  const InterpolationProblem problem =
      InterpolationProblem::make(points, c.targets->head(static_cast<Index>(c.depth)), *c.bound, c.family);
  const FeasibilityResult result = agler_feasibility(problem, solver_options(c));

  CommandOutput out;
  Json& j = out.report;
  j = header(c);
  j["C"] = number(*c.bound);
  j["route"] = result.route.label();
  j["status"] = to_string(result.status());
  j["iterations"] = result.iterations;
  if (c.family.is_grid()) j["grid_note"] = kGridNote;
  if (const AglerCertificate* cert = result.certificate()) {
    const CertificateCheck check = verify_certificate(*cert, problem);
    Json g = Json::array();
    for (const HermitianMatrix& gamma : cert->gammas) g.push_back(matrix_json(gamma.matrix()));
    j["certificate"] = {{"residual", number(check.residual)},
                        {"min_slice_eigenvalue", number(check.min_slice_eigenvalue)},
                        {"scaled_min_eigenvalue", number(check.scaled_min_eigenvalue)},
                        {"verified", check.passed},
                        {"gammas", std::move(g)}};
    out.exit_code = kSuccess;
  } else if (const DualWitness* w = result.witness()) {
    const WitnessCheck check = verify_witness(*w, problem);
    j["witness"] = {{"violation", number(check.violation)},
                    {"trace", number(check.trace)},
                    {"min_eigenvalue", number(check.min_eigenvalue)},
                    {"min_masked_eigenvalue", number(check.min_masked_eigenvalue)},
                    {"verified", check.passed},
                    {"W", matrix_json(w->W.matrix())}};
    out.exit_code = kNegative;
  } else {
    const IndeterminateDiagnostics* d = result.diagnostics();
    j["diagnostics"] = {{"reason", d->reason},
                        {"primal_residual", number(d->primal_residual)},
                        {"primal_min_eigenvalue", number(d->primal_min_eigenvalue)},
                        {"best_violation", number(d->best_violation)}};
    out.exit_code = kIndeterminate;
  }

  const std::vector<KernelSample> samples = sampled_kernels(points, c);
  const std::vector<KernelMargin> margins = kernel_necessary_check(problem, samples);
  Csv csv{"sample", "provenance", "min_eigenvalue", "route"};
  Json m = Json::array();
  for (std::size_t s = 0; s < margins.size(); ++s) {
    m.push_back({{"sample", s}, {"provenance", margins[s].provenance}, {"min_eigenvalue", number(margins[s].min_eigenvalue)}});
    csv.row({std::to_string(s), margins[s].provenance, csv_number(margins[s].min_eigenvalue), "SAMPLED"});
  }
  j["kernel_margins"] = {{"route", Route::sampled().label()}, {"samples", std::move(m)}};
  out.csv = csv.str();
  return out;
}

CommandOutput grammian(const AnalysisConfig& c) {
  const PointConfig points = active_points(c);
  const std::vector<TrendRow> trend = truncation_trend(points, c.family, c.depth);
  const ConeBounds cone = bounds_over_cone(points, c.family, std::max<std::size_t>(c.n_samples, 1), c.seed);
  const SchurReductionResult schur = schur_reduction_check(base_kernel(points, c.family), c.n_samples, c.seed);
  const std::string route = cone_route(c.family).label();

  CommandOutput out;
  Json& j = out.report;
  j = header(c);
  j["route"] = route;
  Csv csv{"n", "lambda_min", "lambda_max", "N_estimate", "M_estimate", "provenance", "route"};
  Json rows = Json::array();
  const std::string provenance = cone.base.kernel_provenance.label();
  for (const TrendRow& r : trend) {
    const double n_est = r.lambda_min > kLowerBoundFlagTolerance ? 1.0 / r.lambda_min
                                                                 : std::numeric_limits<double>::infinity();
    rows.push_back({{"n", r.n}, {"lambda_min", number(r.lambda_min)}, {"lambda_max", number(r.lambda_max)},
                    {"N_estimate", number(n_est)}, {"M_estimate", number(r.lambda_max)}});
    csv.row({std::to_string(r.n), csv_number(r.lambda_min), csv_number(r.lambda_max), csv_number(n_est),
             csv_number(r.lambda_max), provenance, route});
  }
  j["trend"] = std::move(rows);
  Json samples = Json::array();
  for (const ConeSampleRow& s : cone.samples) {
    samples.push_back({{"sample", s.sample}, {"provenance", s.provenance}, {"lambda_min", number(s.lambda_min)},
                       {"lambda_max", number(s.lambda_max)}});
  }
  j["cone"] = {{"route", cone.route.label()},
               {"lambda_min", number(cone.lambda_min)},
               {"lambda_max", number(cone.lambda_max)},
               {"N_estimate", number(cone.N_estimate())},
               {"M_estimate", number(cone.M_estimate())},
               {"min_at_base", cone.min_at_base},
               {"max_at_base", cone.max_at_base},
               {"samples", std::move(samples)}};
  j["schur_reduction"] = {{"passed", schur.passed},
                          {"trials", schur.trials},
                          {"worst_margin", number(schur.worst_margin)}};
  const bool bounded = cone.lambda_min > kLowerBoundFlagTolerance;
  j["bounded_below"] = bounded;
  j["status"] = bounded ? "BoundedBelow" : "NotBoundedBelow";
  out.exit_code = bounded ? kSuccess : kNegative;
  out.csv = csv.str();
  return out;
}

Json separation_json(const SeparationReport& r) {
  Json detail = Json::array();
  for (const SeparationDetail& d : r.per_index_detail) {
    Json row{{"i", d.i}};
    if (d.j) row["j"] = *d.j;
    row["value"] = number(d.value);
    row["status"] = d.status;
    detail.push_back(std::move(row));
  }
  Json j{{"kind", to_string(r.kind)}, {"route", r.route.label()}, {"constant", number(r.constant)},
         {"verdict", r.verdict}};
  if (r.kind == SeparationKind::CarlesonSufficient) j["descriptor"] = r.descriptor;
  j["per_index_detail"] = std::move(detail);
  return j;
}

CommandOutput carleson(const AnalysisConfig& c) {
  const PointConfig points = active_points(c);
  CommandOutput out;
  Json& j = out.report;
  j = header(c);
  Csv csv{"descriptor", "m", "product"};
  Json reports = Json::array();
  bool any = false;
  for (std::size_t t = 0; t < c.family.size(); ++t) {
    if (c.descriptor && *c.descriptor != t) continue;
    const SeparationReport r = carleson_products(points, c.family, t);
    any = any || r.verdict;
    Json rj = separation_json(r);
    rj["descriptor_label"] = describe(c.family.descriptor(t));
    reports.push_back(std::move(rj));
    for (const SeparationDetail& d : r.per_index_detail) csv.row({std::to_string(t), std::to_string(d.i), csv_number(d.value)});
  }
  j["tolerance"] = kCarlesonTolerance;
  j["reports"] = std::move(reports);
  j["verdict"] = any;
  j["status"] = any ? "Sufficient" : "NotSufficient";
  out.exit_code = any ? kSuccess : kNegative;
  out.csv = csv.str();
  return out;
}

bool has_indeterminate(const SeparationReport& r) {
  return std::any_of(r.per_index_detail.begin(), r.per_index_detail.end(), [](const SeparationDetail& d) {
    return d.status != to_string(MinimalNormStatus::Converged) && d.status != to_string(MinimalNormStatus::Unbounded);
  });
}

CommandOutput analyze(const AnalysisConfig& c) {
  const PointConfig points = active_points(c);
  const SolverOptions options = solver_options(c);
  const SeparationReport weak = weak_separation_constant(points, c.family, c.c_max, c.tol, options);
  const SeparationReport strong = strong_separation_certificate(points, c.family, c.c_max, c.tol, options);
  CommandOutput out;
  Json& j = out.report;
  j = header(c);
  j["C_max"] = number(c.c_max);
  j["tol"] = number(c.tol);
  j["weak"] = separation_json(weak);
  j["strong"] = separation_json(strong);
  Csv csv{"kind", "i", "j", "value", "status"};
  for (const SeparationReport* r : {&weak, &strong}) {
    for (const SeparationDetail& d : r->per_index_detail) {
      csv.row({to_string(r->kind), std::to_string(d.i), d.j ? std::to_string(*d.j) : "", csv_number(d.value), d.status});
    }
  }
  out.csv = csv.str();
  if (has_indeterminate(weak) || has_indeterminate(strong)) {
    out.exit_code = kIndeterminate;
    j["status"] = "Indeterminate";
  } else {
    out.exit_code = strong.verdict ? kSuccess : kNegative;
    j["status"] = strong.verdict ? "StronglySeparated" : "NotStronglySeparated";
  }
  return out;
}

CommandOutput realize(const AnalysisConfig& c) {
  const Colligation& col = *c.colligation;
  const PointConfig points = active_points(c);
  const UnitarityReport unitary = is_unitary(col, 1e-10);
  CommandOutput out;
  Json& j = out.report;
  j = header(c);
  j["colligation"] = colligation_json(col);
  j["unitary"] = {{"passed", unitary.unitary}, {"defect", number(unitary.defect)}, {"tol", 1e-10}};
  if (!is_unitary(col, 1e-8).unitary) {
    j["status"] = "NotUnitary";
    out.exit_code = kNegative;
    return out;
  }
  const ValueMap values = transfer_values(col, points);
  const double bound = c.bound.value_or(1.0);
  const std::vector<KernelSample> samples = sampled_kernels(points, c);
  const MembershipReport membership = membership_test(values, c.family, samples, bound);

  Csv csv{"i", "row", "col", "re", "im"};
  Json vals = Json::array();
  double max_norm = 0.0;
  for (std::size_t i = 0; i < values.values.size(); ++i) {
    const ComplexMatrix& v = values.values[i];
    max_norm = std::max(max_norm, Eigen::JacobiSVD<ComplexMatrix>(v).singularValues()(0));
    vals.push_back({{"point", point_json(points[i])}, {"value", matrix_json(v)}});
    for (Index r = 0; r < v.rows(); ++r) {
      for (Index k = 0; k < v.cols(); ++k) {
        csv.row({std::to_string(i), std::to_string(r), std::to_string(k), csv_number(v(r, k).real()),
                 csv_number(v(r, k).imag())});
      }
    }
  }
  Json per = Json::array();
  for (const SampleMargin& m : membership.per_sample) {
    per.push_back({{"provenance", m.provenance}, {"min_eigenvalue", number(m.min_eigenvalue)}});
  }
  j["values"] = std::move(vals);
  j["max_operator_norm"] = number(max_norm);
  j["membership"] = {{"route", Route::sampled().label()},
                     {"C", number(bound)},
                     {"passed", membership.passed},
                     {"worst_margin", number(membership.worst_margin)},
                     {"per_sample", std::move(per)}};
  j["status"] = membership.passed ? "Member" : "NotMember";
  out.exit_code = unitary.unitary && membership.passed ? kSuccess : kNegative;
  out.csv = csv.str();
  return out;
}

CommandOutput verify(const AnalysisConfig& c) {
  TheoremOptions options;
  options.truncations = c.truncations;
  options.n_samples = c.n_samples;
  options.seed = c.seed;
  options.c_max = c.c_max;
  options.tol = c.tol;
  options.solver = solver_options(c);
  const TheoremReport report = verify_theorem(c.points, c.family, c.depth, options);

  CommandOutput out;
  Json& j = out.report;
  j = header(c);
  j["solver_route"] = report.solver_route.label();
  j["scope"] = "finite truncations only; no statement about the infinite sequence is made";
  Csv csv{"n", "strong_constant", "strong_status", "lambda_min", "lambda_max", "lambda_route", "sqrt_mn",
          "carleson_epsilon", "strong_within_sqrt_mn", "interlacing", "strong_monotone",
          "carleson_implies_strong", "status"};
  Json rows = Json::array();
  for (const TheoremRow& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"strong_constant", number(r.strong_constant)},
                    {"strong_status", r.strong_status},
                    {"lambda_min", number(r.lambda_min)},
                    {"lambda_max", number(r.lambda_max)},
                    {"lambda_route", r.lambda_route.label()},
                    {"sqrt_mn", number(r.sqrt_mn)},
                    {"carleson_epsilon", number(r.carleson_epsilon)},
                    {"carleson_descriptor", r.carleson_descriptor},
                    {"consistency_flags",
                     {{"strong_within_sqrt_mn", flag_json(r.flags.strong_within_sqrt_mn)},
                      {"interlacing", flag_json(r.flags.interlacing)},
                      {"strong_monotone", flag_json(r.flags.strong_monotone)},
                      {"carleson_implies_strong", flag_json(r.flags.carleson_implies_strong)}}},
                    {"status", r.status}});
    csv.row({std::to_string(r.n), csv_number(r.strong_constant), r.strong_status, csv_number(r.lambda_min),
             csv_number(r.lambda_max), r.lambda_route.label(), csv_number(r.sqrt_mn), csv_number(r.carleson_epsilon),
             flag_cell(r.flags.strong_within_sqrt_mn), flag_cell(r.flags.interlacing),
             flag_cell(r.flags.strong_monotone), flag_cell(r.flags.carleson_implies_strong), r.status});
  }
  j["rows"] = std::move(rows);
  j["consistent"] = report.consistent();
  j["indeterminate"] = report.indeterminate();
  out.csv = csv.str();
  out.exit_code = report.indeterminate() ? kIndeterminate : (report.consistent() ? kSuccess : kNegative);
  j["status"] = report.indeterminate() ? "Indeterminate" : (report.consistent() ? "Consistent" : "Inconsistent");
  return out;
}

}  // namespace

CommandOutput execute(const AnalysisConfig& config) {
  if (config.command == "pick") return pick(config);
  if (config.command == "grammian") return grammian(config);
  if (config.command == "carleson") return carleson(config);
  if (config.command == "analyze") return analyze(config);
  if (config.command == "realize") return realize(config);
  if (config.command == "verify-theorem") return verify(config);
  throw Error(ErrorCode::ConfigError, "/command: unknown command \"" + config.command + "\"");
}

}  // namespace agler::cli
