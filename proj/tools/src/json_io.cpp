#include "agler_cli/json_io.hpp"

#include <charconv>
#include <cmath>

#include "agler/error.hpp"

namespace agler::cli {

void config_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ConfigError, (where.empty() ? std::string("/") : where) + ": " + what);
}

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json complex_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json point_json(const Point& x) {
  Json coords = Json::array();
  for (Complex z : x.coords()) coords.push_back(complex_json(z));
  return coords;
}

Json family_json(const TestFunctionFamily& family) {
  Json j;
  j["domain"] = family.domain().name();
  j["size"] = family.size();
  if (family.is_grid()) {
    j["grid_size"] = family.grid_size();
  } else {
    Json d = Json::array();
    for (const TestFunction& t : family.descriptors()) d.push_back(describe(t));
    j["descriptors"] = std::move(d);
  }
  return j;
}

Complex read_complex(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  config_error(where, "expected a number or [re, im]");
}

ComplexVector read_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) config_error(where, "expected an array");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = read_complex(j[i], where + "/" + std::to_string(i));
  return v;
}

ComplexMatrix read_matrix(const Json& j, Index rows, Index cols, const std::string& where) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rows)) {
    config_error(where, "expected " + std::to_string(rows) + " rows");
  }
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const std::string row_where = where + "/" + std::to_string(i);
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) {
      config_error(row_where, "expected " + std::to_string(cols) + " entries");
    }
    for (Index c = 0; c < cols; ++c) {
      m(i, c) = read_complex(row[static_cast<std::size_t>(c)], row_where + "/" + std::to_string(c));
    }
  }
  return m;
}

DomainTag read_domain(const Json& config) {
  if (!config.contains("domain")) config_error("/domain", "missing");
  const Json& d = config["domain"];
  if (!d.is_string()) config_error("/domain", "expected \"disc\", \"polydisc\" or \"g2\"");
  const std::string name = d.get<std::string>();
  if (name == "disc") return DomainTag::disc();
  if (name == "g2") return DomainTag::symmetrized_bidisc();
  if (name == "polydisc") {
    const Json dim = config.value("n", Json(std::size_t{2}));
    if (!dim.is_number_unsigned() || dim.get<std::size_t>() < 1) config_error("/n", "expected a positive integer");
    return DomainTag::polydisc(dim.get<std::size_t>());
  }
  config_error("/domain", "unknown domain \"" + name + "\"");
}

TestFunctionFamily read_family(const Json& config, const DomainTag& domain, std::size_t grid_size) {
  if (!config.contains("family") || config["family"] == "default") {
    return TestFunctionFamily::for_domain(domain, grid_size);
  }
  const Json& f = config["family"];
  if (!f.is_array() || f.empty()) config_error("/family", "expected \"default\" or a nonempty descriptor list");
  std::vector<TestFunction> descriptors;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::string where = "/family/" + std::to_string(i);
    const Json& d = f[i];
    if (d.is_object() && d.contains("coordinate") && d["coordinate"].is_number_unsigned()) {
      descriptors.emplace_back(Coordinate{d["coordinate"].get<std::size_t>()});
    } else if (d.is_object() && d.contains("alpha")) {
      descriptors.emplace_back(MagicFunction{read_complex(d["alpha"], where + "/alpha")});
    } else {
      config_error(where, "expected {\"coordinate\": k} or {\"alpha\": [re, im]}");
    }
  }
  try {
    return TestFunctionFamily::custom(domain, std::move(descriptors));
  } catch (const Error& e) {
    config_error("/family", e.what());
  }
}

PointConfig read_points(const Json& j, const DomainTag& domain, const std::string& where) {
  if (!j.is_array() || j.empty()) config_error(where, "expected a nonempty array of points");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string pw = where + "/" + std::to_string(i);
    std::vector<Complex> coords;
    if (domain.coordinate_count() == 1 && (j[i].is_number() || (j[i].is_array() && j[i].size() == 2 &&
                                                               j[i][0].is_number()))) {
      coords.push_back(read_complex(j[i], pw));
    } else {
      const ComplexVector v = read_vector(j[i], pw);
      coords.assign(v.data(), v.data() + v.size());
    }
    try {
      pts.push_back(Point::make(domain, std::move(coords)));
    } catch (const Error& e) {
      config_error(pw, e.what());
    }
  }
  return PointConfig(domain, std::move(pts));
}

SequenceSpec read_sequence(const Json& j, const std::string& where) {
  if (!j.is_object()) config_error(where, "expected an object");
  SequenceSpec spec;
  const std::string law = j.value("law", std::string());
  if (law == "exponential") {
    spec.radial.law = RadialLaw::Exponential;
  } else if (law == "polynomial") {
    spec.radial.law = RadialLaw::Polynomial;
  } else {
    config_error(where + "/law", "expected \"exponential\" or \"polynomial\"");
  }
  if (!j.contains("parameter") || !j["parameter"].is_number()) config_error(where + "/parameter", "expected a number");
  spec.radial.parameter = j["parameter"].get<double>();
  if (!j.contains("depth") || !j["depth"].is_number_unsigned()) config_error(where + "/depth", "expected a positive integer");
  spec.depth = j["depth"].get<std::size_t>();
  const std::string lift = j.value("lift", std::string("disc"));
  if (lift == "disc") {
    spec.lift = SequenceLift::Disc;
  } else if (lift == "diagonal_bidisc") {
    spec.lift = SequenceLift::DiagonalBidisc;
  } else if (lift == "symmetrized_pairs") {
    spec.lift = SequenceLift::SymmetrizedPairs;
  } else {
    config_error(where + "/lift", "expected \"disc\", \"diagonal_bidisc\" or \"symmetrized_pairs\"");
  }
  if (j.contains("pair_ratio")) {
    if (!j["pair_ratio"].is_number()) config_error(where + "/pair_ratio", "expected a number");
    spec.pair_ratio = j["pair_ratio"].get<double>();
  }
  return spec;
}

Colligation read_colligation(const Json& j, const TestFunctionFamily& family, const std::string& where) {
  if (!j.is_object()) config_error(where, "expected an object");
  auto dim = [&](const char* key, std::size_t lo) {
    if (!j.contains(key) || !j[key].is_number_unsigned() || j[key].get<std::size_t>() < lo) {
      config_error(where + "/" + key, "expected an integer >= " + std::to_string(lo));
    }
    return static_cast<Index>(j[key].get<std::size_t>());
  };
  if (j.contains("random")) {
    const Json& r = j["random"];
    const std::string rw = where + "/random";
    if (!r.is_object()) config_error(rw, "expected an object");
    const Index s = static_cast<Index>(r.value("state_dim", 2));
    const Index io = static_cast<Index>(r.value("io_dim", 1));
    const std::uint64_t seed = r.value("seed", std::uint64_t{0});
    if (s < 0 || io < 1) config_error(rw, "state_dim >= 0 and io_dim >= 1 required");
    return random_colligation(s, io, family, seed);
  }
  const Index s = dim("state_dim", 0);
  const Index in = dim("in_dim", 1);
  const Index out = dim("out_dim", 1);
  const ComplexMatrix a = read_matrix(j.value("A", Json::array()), s, s, where + "/A");
  const ComplexMatrix b = read_matrix(j.value("B", Json::array()), s, in, where + "/B");
  const ComplexMatrix c = s == 0 && !j.contains("C") ? ComplexMatrix(out, 0)
                                                     : read_matrix(j["C"], out, s, where + "/C");
  const ComplexMatrix d = read_matrix(j.value("D", Json::array()), out, in, where + "/D");
  std::vector<std::size_t> rep;
  if (s > 0) {
    if (!j.contains("rep_assignment") || !j["rep_assignment"].is_array()) {
      config_error(where + "/rep_assignment", "expected an index list");
    }
    for (const Json& t : j["rep_assignment"]) {
      if (!t.is_number_unsigned()) config_error(where + "/rep_assignment", "expected nonnegative integers");
      rep.push_back(t.get<std::size_t>());
    }
  }
  try {
    return Colligation::make(a, b, c, d, std::move(rep), family);
  } catch (const Error& e) {
    config_error(where, e.what());
  }
}

Json colligation_json(const Colligation& col) {
  Json j;
  j["state_dim"] = col.state_dim();
  j["in_dim"] = col.in_dim();
  j["out_dim"] = col.out_dim();
  j["A"] = matrix_json(col.A());
  j["B"] = matrix_json(col.B());
  j["C"] = matrix_json(col.C());
  j["D"] = matrix_json(col.D());
  j["rep_assignment"] = col.rep_assignment();
  return j;
}

}  // namespace agler::cli
