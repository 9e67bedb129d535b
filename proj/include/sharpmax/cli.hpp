#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sharpmax {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct CliOptions {
  std::string command;
  std::string space;
  std::optional<std::string> function;
  std::optional<std::string> gradient;
  double p = 2.0;
  double beta = 1.0;
  double q = 1.0;
  double tau = 1.0;
  int k = 3;
  double epsilon = 0.1;
  std::string kind = "hajlasz";
  double cw = 1.0 / 128.0;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::optional<std::string> out;
  std::optional<long long> center;
  std::optional<double> radius;
  std::optional<long long> point;
  std::size_t cell = 0;
  std::optional<double> lambda;
  std::size_t samples = 5;
  std::vector<double> epsilons{0.0, 0.05, 0.1, 0.2};
  double a = 2.0;
  std::optional<double> Q;
};

/// One flat table of a report; csv writes the first, plotdata writes each.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct CommandResult {
  nlohmann::json report;
  std::vector<Table> tables;
  bool violations = false;
  std::string summary;
};

CommandResult run_command(const CliOptions& opts);

/// Writes the report in the requested format and returns the written paths.
std::vector<std::string> emit(const CommandResult& result, const CliOptions& opts);

std::string render_csv(const Table& table);
std::string render_plotdata(const Table& table);

/// Full command-line entry point: 0 ok, 2 violations found, 1 errors.
int run_cli(int argc, char** argv);

}  // namespace sharpmax
