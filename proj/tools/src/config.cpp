#include <algorithm>

#include "agler/error.hpp"
#include "agler_cli/app.hpp"

namespace agler::cli {

namespace {

double positive_number(const Json& config, const char* key, double fallback) {
  if (!config.contains(key)) return fallback;
  const Json& v = config[key];
  if (!v.is_number() || !(v.get<double>() > 0.0)) config_error(std::string("/") + key, "expected a positive number");
  return v.get<double>();
}

std::size_t count(const Json& config, const char* key, std::size_t fallback) {
  if (!config.contains(key)) return fallback;
  const Json& v = config[key];
  if (!v.is_number_unsigned()) config_error(std::string("/") + key, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

DomainTag lift_domain(const SequenceSpec& spec) {
  switch (spec.lift) {
    case SequenceLift::Disc: return DomainTag::disc();
    case SequenceLift::DiagonalBidisc: return DomainTag::polydisc(2);
    case SequenceLift::SymmetrizedPairs: return DomainTag::symmetrized_bidisc();
  }
  return DomainTag::disc();
}

}  // namespace

AnalysisConfig parse_config(const Json& config, const Options& options) {
  if (!config.is_object()) config_error("", "config must be a JSON object");
  AnalysisConfig c;
  c.command = options.command;
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    config_error("/command", "unknown command \"" + c.command + "\"");
  }
  if (config.contains("command") && config["command"] != c.command) {
    config_error("/command", "config was written for \"" + config["command"].dump() + "\"");
  }
  if (config.contains("schema_version") && config["schema_version"] != kSchemaVersion) {
    config_error("/schema_version", "unsupported schema version");
  }

  c.n_samples = options.samples.value_or(count(config, "n_samples", c.n_samples));
  c.seed = options.seed.value_or(count(config, "seed", c.seed));
  c.grid_size = options.grid.value_or(count(config, "grid_size", c.grid_size));
  c.max_iterations = count(config, "max_iterations", c.max_iterations);
  c.tol = positive_number(config, "tol", c.tol);
  c.c_max = positive_number(config, "C_max", c.c_max);
  if (config.contains("C")) c.bound = positive_number(config, "C", 1.0);
  if (c.grid_size < 8) config_error("/grid_size", "grid size must be >= 8");
  if (c.c_max < 1.0) config_error("/C_max", "C_max must be >= 1");

  if (config.contains("sequence")) {
    if (config.contains("points")) config_error("/points", "give either points or sequence, not both");
    c.sequence = read_sequence(config["sequence"], "/sequence");
    c.domain = lift_domain(*c.sequence);
    if (config.contains("domain") && !(read_domain(config) == c.domain)) {
      config_error("/domain", "does not match the sequence lift");
    }
    try {
      c.points = generate(*c.sequence);
    } catch (const Error& e) {
      config_error("/sequence", e.what());
    }
  } else {
    c.domain = read_domain(config);
    if (!config.contains("points")) config_error("/points", "missing (or give a sequence)");
    c.points = read_points(config["points"], c.domain, "/points");
  }
  c.family = read_family(config, c.domain, c.grid_size);

  c.depth = count(config, "depth", c.points.size());
  if (c.depth < 1 || c.depth > c.points.size()) config_error("/depth", "must lie in 1..number of points");
  if (config.contains("truncations")) {
    const Json& t = config["truncations"];
    if (!t.is_array()) config_error("/truncations", "expected an integer list");
    for (const Json& n : t) {
      if (!n.is_number_unsigned() || n.get<std::size_t>() < 1 || n.get<std::size_t>() > c.depth) {
        config_error("/truncations", "entries must lie in 1..depth");
      }
      c.truncations.push_back(n.get<std::size_t>());
    }
  }
  if (config.contains("descriptor")) {
    c.descriptor = count(config, "descriptor", 0);
    if (*c.descriptor >= c.family.size()) config_error("/descriptor", "outside the family");
  }
  if (config.contains("targets")) {
    c.targets = read_vector(config["targets"], "/targets");
    if (static_cast<std::size_t>(c.targets->size()) != c.points.size()) {
      config_error("/targets", "need one target per point");
    }
  }
  if (config.contains("colligation")) c.colligation = read_colligation(config["colligation"], c.family, "/colligation");

  if (c.command == "pick") {
    if (!c.targets) config_error("/targets", "required for pick");
    if (!c.bound) config_error("/C", "required for pick");
  }
  if (c.command == "grammian" && c.targets) config_error("/targets", "not accepted by grammian");
  if (c.command == "realize" && !c.colligation) config_error("/colligation", "required for realize");
  if (c.command == "analyze" && c.points.size() < 2) config_error("/points", "analyze needs at least two points");
  return c;
}

}  // namespace agler::cli
