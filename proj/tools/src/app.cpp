#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "agler/error.hpp"
#include "agler_cli/app.hpp"

namespace agler::cli {

namespace {

std::string read_all(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

}  // namespace

int run(const Options& options, std::istream& in, std::ostream& out, std::ostream& err) {
  std::string text;
  if (options.config_path == "-") {
    text = read_all(in);
  } else {
    std::ifstream f(options.config_path, std::ios::binary);
    if (!f) {
      err << "error: cannot open config " << options.config_path << "\n";
      return kInputError;
    }
    text = read_all(f);
  }

  CommandOutput result;
  try {
    const Json config = Json::parse(text);
    result = execute(parse_config(config, options));
  } catch (const Json::exception& e) {
    err << "error: malformed config: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  const std::string report = result.report.dump(2) + "\n";
  if (!options.out_dir) {
    out << report;
    return result.exit_code;
  }
  try {
    const std::filesystem::path dir(*options.out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / (options.command + ".json"), report);
    if (!result.csv.empty()) write_file(dir / (options.command + ".csv"), result.csv);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  out << options.command << ": " << result.report.value("status", std::string("done")) << " (exit "
      << result.exit_code << ")\n";
  return result.exit_code;
}

}  // namespace agler::cli
