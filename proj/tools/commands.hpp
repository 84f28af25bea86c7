#pragma once

// Command implementations behind the bitcred CLI. Each command builds a CSV
// table plus summary lines; main_entry wires argument parsing, output files
// and exit codes so the whole CLI can be driven in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bitcred/unitary.hpp"

namespace bitcred::cli {

enum class Command { fig1, fig3, fig4, fig5, klevel, transform, mc_check };

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

/// One --factors entry, indices already zero-based, angles in radians.
struct FactorSpec {
  std::size_t i = 0;
  std::size_t j = 1;
  Rotation2Params rotation;
};

/// Parsed flags. Angles are stored in radians; the command line takes degrees.
struct RunConfig {
  Command command = Command::fig1;
  int trials = 4000;
  int bits = 6;
  int grid_points = 199;
  int outcomes = 0;  // 0: derive from --dist or the command's default
  Rotation2Params rotation = Rotation2Params::from_degrees(75.0, 50.0, 110.0);
  std::vector<double> phases;  // radians; empty means all zero
  std::vector<double> dist;    // empty means command default
  std::vector<FactorSpec> factors;
  std::size_t random_factor_count = 0;
  std::uint64_t seed = 42;
  std::size_t replications = 10'000;
  bool oracle = false;
  bool include_endpoints = false;
  std::string output_path;  // empty means "<command>.csv"
};

/// "i:j:tau:theta:phi;..." with 1-based indices and angles in degrees.
std::vector<FactorSpec> parse_factors(const std::string& text);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct CommandResult {
  Table table;
  std::vector<std::string> summary;
  int exit_code = 0;
};

/// Shortest round-trip form of a double ("%.17g").
std::string format_number(double value);

void write_csv(const Table& table, std::ostream& out);

CommandResult run_fig1(const RunConfig& cfg);
CommandResult run_fig3(const RunConfig& cfg);
CommandResult run_fig4(const RunConfig& cfg);
CommandResult run_fig5(const RunConfig& cfg);
CommandResult run_klevel(const RunConfig& cfg);
CommandResult run_transform(const RunConfig& cfg);
CommandResult run_mc_check(const RunConfig& cfg);

CommandResult run_command(const RunConfig& cfg);

/// Whole CLI: parse, run, write the CSV, print the summary. Returns the
/// process exit code (0 ok, 1 mc-check threshold missed, 2 usage or domain
/// error, 3 I/O error).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bitcred::cli
