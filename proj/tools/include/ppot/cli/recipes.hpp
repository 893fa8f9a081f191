#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include "ppot/error.hpp"

namespace ppot::cli {

/// One output row; every CSV shares this schema.
struct CsvRow {
  std::string family;
  double p = 0.0;
  double scale = 0.0;
  double value = 0.0;
  double residual = 0.0;
  std::string verdict;
};

inline constexpr const char* kCsvHeader = "family,p,R_or_scale,value,residual,verdict";

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);
std::string csv_text(const std::vector<CsvRow>& rows);

/// INI file: a [run] section with `recipe`, `seed`, `output`, and one section
/// named after the recipe holding its parameters.
struct ExperimentSpec {
  std::string recipe;
  std::uint64_t seed = 1;
  std::string output;
  boost::property_tree::ptree params;
  boost::property_tree::ptree raw;
};

/// Throws Error(Parse) on malformed files, unknown recipes or bad values.
ExperimentSpec parse_spec(std::istream& in);
ExperimentSpec parse_spec_file(const std::string& path);

std::vector<std::string> recipe_names();

struct RecipeOutput {
  std::vector<CsvRow> rows;
  nlohmann::json manifest;
};

/// Runs the recipe. The manifest echoes the configuration and records
/// versions, wall time and a hash of the CSV text.
RecipeOutput run_recipe(const ExperimentSpec& spec);

/// Writes `<output>` and `<output>.manifest.json`.
void write_outputs(const ExperimentSpec& spec, const RecipeOutput& out);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);

/// 0 success, 2 spec error, 3 computation error, 4 size limit.
int exit_code(const Error& e);

std::vector<double> parse_real_list(const std::string& text);
std::vector<long> parse_long_list(const std::string& text);

}  // namespace ppot::cli
