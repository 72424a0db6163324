#pragma once

#include <string>

#include <json.hpp>

#include "agler/colligation.hpp"
#include "agler/grammian.hpp"
#include "agler/linalg.hpp"
#include "agler/sequences.hpp"
#include "agler/test_functions.hpp"

namespace agler::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Finite reals as numbers; +-inf and nan as the strings "inf", "-inf", "nan".
Json number(double v);
Json complex_json(Complex z);
Json matrix_json(const ComplexMatrix& m);
Json point_json(const Point& x);
Json family_json(const TestFunctionFamily& family);

/// Shortest round-trip text for CSV cells.
std::string csv_number(double v);

/// Readers take the JSON pointer of the value for error messages.
Complex read_complex(const Json& j, const std::string& where);
ComplexVector read_vector(const Json& j, const std::string& where);
ComplexMatrix read_matrix(const Json& j, Index rows, Index cols, const std::string& where);
DomainTag read_domain(const Json& config);
TestFunctionFamily read_family(const Json& config, const DomainTag& domain, std::size_t grid_size);
PointConfig read_points(const Json& j, const DomainTag& domain, const std::string& where);
SequenceSpec read_sequence(const Json& j, const std::string& where);
Colligation read_colligation(const Json& j, const TestFunctionFamily& family, const std::string& where);

Json colligation_json(const Colligation& col);

[[noreturn]] void config_error(const std::string& where, const std::string& what);

}  // namespace agler::cli
