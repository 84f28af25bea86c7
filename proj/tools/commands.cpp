#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "bitcred/dist.hpp"
#include "bitcred/encode.hpp"
#include "bitcred/enumeration.hpp"
#include "bitcred/kernels.hpp"
#include "bitcred/mc.hpp"
#include "bitcred/repvec.hpp"
#include "bitcred/unitary.hpp"

namespace bitcred::cli {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> table{
      {"fig1", Command::fig1},     {"fig3", Command::fig3},     {"fig4", Command::fig4},
      {"fig5", Command::fig5},     {"klevel", Command::klevel}, {"transform", Command::transform},
      {"mc-check", Command::mc_check}};
  return table;
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::string format_int(long long v) { return std::to_string(v); }

std::vector<double> grid_for(const RunConfig& cfg) {
  return default_grid(cfg.grid_points, cfg.include_endpoints);
}

void require_two_outcomes(const RunConfig& cfg) {
  if ((cfg.outcomes != 0 && cfg.outcomes != 2) || (!cfg.dist.empty() && cfg.dist.size() != 2))
    throw std::domain_error(command_name(cfg.command) + " is defined for two outcomes only");
}

PhaseVector phases_for(const RunConfig& cfg, std::size_t outcomes) {
  if (cfg.phases.empty()) return PhaseVector::zeros(outcomes);
  if (cfg.phases.size() != outcomes)
    throw std::domain_error("--phases needs " + std::to_string(outcomes) + " entries");
  return PhaseVector(cfg.phases);
}

// Outcome distribution from --dist / --outcomes, uniform when only K is known.
OutcomeDistribution dist_for(const RunConfig& cfg, std::size_t default_outcomes) {
  if (!cfg.dist.empty()) {
    if (cfg.outcomes != 0 && static_cast<std::size_t>(cfg.outcomes) != cfg.dist.size())
      throw std::domain_error("--outcomes disagrees with the length of --dist");
    return OutcomeDistribution(cfg.dist);
  }
  const std::size_t k = cfg.outcomes != 0 ? static_cast<std::size_t>(cfg.outcomes) : default_outcomes;
  return OutcomeDistribution::uniform(k);
}

struct Extent {
  double min = 0.0, argmin = 0.0, max = 0.0, argmax = 0.0;
};

Extent extent(const std::vector<double>& grid, const std::vector<double>& values) {
  const auto lo = std::min_element(values.begin(), values.end()) - values.begin();
  const auto hi = std::max_element(values.begin(), values.end()) - values.begin();
  return {values[lo], grid[lo], values[hi], grid[hi]};
}

std::string matrix_row(const UnitaryK& u, std::size_t r) {
  std::string line = "  [";
  for (std::size_t c = 0; c < u.dim(); ++c) {
    const Complex z = u(r, c);
    line += fmt("%s%+.6f%+.6fi", c == 0 ? "" : ", ", z.real(), z.imag());
  }
  return line + "]";
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  const auto& table = command_table();
  const auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::string command_name(Command c) {
  for (const auto& [name, cmd] : command_table())
    if (cmd == c) return name;
  return "?";
}

std::vector<FactorSpec> parse_factors(const std::string& text) {
  std::vector<FactorSpec> out;
  std::stringstream entries(text);
  std::string entry;
  while (std::getline(entries, entry, ';')) {
    if (entry.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream parts(entry);
    std::string field;
    while (std::getline(parts, field, ':')) fields.push_back(field);
    if (fields.size() != 5)
      throw std::domain_error("factor '" + entry + "' is not i:j:tau:theta:phi");
    try {
      const long i = std::stol(fields[0]);
      const long j = std::stol(fields[1]);
      if (i < 1 || j <= i)
        throw std::domain_error("factor '" + entry + "' needs 1 <= i < j");
      out.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1),
                     Rotation2Params::from_degrees(std::stod(fields[2]), std::stod(fields[3]),
                                                   std::stod(fields[4]))});
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const std::domain_error*>(&e)) throw;
      throw std::domain_error("factor '" + entry + "' has a non-numeric field");
    }
  }
  return out;
}

std::string format_number(double value) { return fmt("%.17g", value); }

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.header.size(); ++c) out << (c ? "," : "") << table.header[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
}

CommandResult run_fig1(const RunConfig& cfg) {
  const auto grid = grid_for(cfg);
  const BitBudget budget(cfg.bits);
  const EncodingKind kinds[3] = {EncodingKind::frequency, EncodingKind::amplitude, EncodingKind::arcsine};
  std::vector<ProbabilityCurve> curves;
  for (auto kind : kinds) curves.push_back(prob_curve(kind, cfg.trials, budget, grid));

  CommandResult result;
  result.table.header = {"p", "prob_frequency", "prob_amplitude", "prob_arcsine"};
  for (std::size_t i = 0; i < grid.size(); ++i)
    result.table.rows.push_back({format_number(grid[i]), format_number(curves[0].values[i]),
                                 format_number(curves[1].values[i]), format_number(curves[2].values[i])});
  for (const auto& curve : curves) {
    const Extent e = extent(grid, curve.values);
    result.summary.push_back(fmt("%-9s min=%.4f at p=%.4f  max=%.4f at p=%.4f  (N=%d, S=%d)",
                                 std::string(to_string(curve.kind)).c_str(), e.min, e.argmin, e.max,
                                 e.argmax, cfg.trials, cfg.bits));
  }
  return result;
}

CommandResult run_fig3(const RunConfig& cfg) {
  require_two_outcomes(cfg);
  const auto grid = grid_for(cfg);
  const BitBudget budget(cfg.bits);
  const auto eta = kernels::omp::map_grid(grid, [&](double p) {
    return endpoint_prob(VectorKind::eta, cfg.trials, p, budget);
  });
  const auto chi = kernels::omp::map_grid(grid, [&](double p) {
    return endpoint_prob(VectorKind::chi, cfg.trials, p, budget);
  });
  CommandResult result;
  result.table.header = {"p", "endpoint_prob_eta", "endpoint_prob_chi"};
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    result.table.rows.push_back({format_number(grid[i]), format_number(eta[i]), format_number(chi[i])});
    worst = std::max(worst, std::abs(eta[i] - chi[i]));
  }
  result.summary.push_back(fmt("max |eta - chi| endpoint probability difference = %.3g (N=%d, S=%d)",
                               worst, cfg.trials, cfg.bits));
  return result;
}

CommandResult run_fig4(const RunConfig& cfg) {
  constexpr int kSmallN = 100;
  const auto grid = grid_for(cfg);
  const auto small = kernels::omp::map_grid(grid, [&](double p) {
    return kSmallN * dispersion_component(kSmallN, p);
  });
  const auto large = kernels::omp::map_grid(grid, [&](double p) {
    return cfg.trials * dispersion_component(cfg.trials, p);
  });
  CommandResult result;
  result.table.header = {"p_j", "n_times_D2_at_N100", "n_times_D2_at_N" + std::to_string(cfg.trials),
                         "asymptote"};
  double worst = 0.0;
  std::size_t near_boundary = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double asymptote = (1.0 - grid[i]) / 4.0;
    result.table.rows.push_back({format_number(grid[i]), format_number(small[i]),
                                 format_number(large[i]), format_number(asymptote)});
    if (grid[i] >= 0.1 && grid[i] <= 0.95)
      worst = std::max(worst, std::abs(large[i] - asymptote) / asymptote);
    if (std::abs(grid[i] - 0.02) < std::abs(grid[near_boundary] - 0.02)) near_boundary = i;
  }
  result.summary.push_back(fmt("N=%d: max relative deviation from (1-p_j)/4 on [0.1, 0.95] = %.4f",
                               cfg.trials, worst));
  const double a = (1.0 - grid[near_boundary]) / 4.0;
  result.summary.push_back(fmt("at p_j=%.4f: N=100 deviation %.4f, N=%d deviation %.4f",
                               grid[near_boundary], std::abs(small[near_boundary] - a) / a, cfg.trials,
                               std::abs(large[near_boundary] - a) / a));
  return result;
}

CommandResult run_fig5(const RunConfig& cfg) {
  require_two_outcomes(cfg);
  const auto grid = grid_for(cfg);
  const PhaseVector phases = phases_for(cfg, 2);
  const UnitaryK u = embed({0, 1, rotation2(cfg.rotation), 2});
  const double n = cfg.trials;

  struct Row {
    DispersionReport eta, psi;
  };
  std::vector<Row> rows(grid.size());
  kernels::omp::replicate(grid.size(), [&](std::size_t i) {
    const auto dist = OutcomeDistribution::binary(grid[i]);
    rows[i] = {dispersion_total(cfg.trials, dist, phases),
               dispersion_transformed(cfg.trials, dist, phases, u)};
    return 0.0;
  });

  CommandResult result;
  result.table.header = {"p1",      "D2_eta1", "D2_eta2",     "D2_eta_total",
                         "D2_psi1", "D2_psi2", "D2_psi_total"};
  double worst = 0.0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& r = rows[i];
    result.table.rows.push_back(
        {format_number(grid[i]), format_number(n * r.eta.per_component[0]),
         format_number(n * r.eta.per_component[1]), format_number(r.eta.n_scaled_total),
         format_number(n * r.psi.per_component[0]), format_number(n * r.psi.per_component[1]),
         format_number(r.psi.n_scaled_total)});
    worst = std::max(worst, std::abs(r.eta.n_scaled_total - r.psi.n_scaled_total));
    if (grid[i] >= 0.05 && grid[i] <= 0.95) {
      lo = std::min(lo, r.psi.n_scaled_total);
      hi = std::max(hi, r.psi.n_scaled_total);
    }
  }
  result.summary.push_back(fmt("max |D2_eta_total - D2_psi_total| = %.3g (N-scaled, N=%d)", worst, cfg.trials));
  if (lo <= hi)
    result.summary.push_back(fmt("N*D2(psi) on p1 in [0.05, 0.95]: min=%.5f max=%.5f", lo, hi));
  return result;
}

CommandResult run_klevel(const RunConfig& cfg) {
  const OutcomeDistribution dist = dist_for(cfg, 2);
  const PhaseVector phases = phases_for(cfg, dist.size());
  const int k = static_cast<int>(dist.size());
  const double asymptote = (k - 1) / 4.0;

  std::vector<int> ladder;
  for (int n = cfg.trials; n >= 1 && ladder.size() < 6; n /= 2) ladder.push_back(n);
  std::reverse(ladder.begin(), ladder.end());

  CommandResult result;
  result.table.header = {"N", "n_times_D2", "asymptote", "relative_gap"};
  if (cfg.oracle) {
    result.table.header.push_back("n_times_D2_enumerated");
    result.table.header.push_back("abs_difference");
  }
  for (int n : ladder) {
    const auto report = dispersion_total(n, dist, phases);
    const double gap = std::abs(report.n_scaled_total - asymptote) / asymptote;
    std::vector<std::string> row{format_int(n), format_number(report.n_scaled_total),
                                 format_number(asymptote), format_number(gap)};
    if (cfg.oracle) {
      const auto oracle = enumerated_dispersion(n, dist, phases);
      row.push_back(format_number(oracle.n_scaled_total));
      row.push_back(format_number(std::abs(oracle.total - report.total)));
    }
    result.table.rows.push_back(std::move(row));
  }
  const auto& last = result.table.rows.back();
  result.summary.push_back("K=" + std::to_string(k) + " N=" + last[0] + ": N*D2=" + last[1] +
                           " asymptote=" + last[2] + " relative gap=" + last[3]);
  return result;
}

CommandResult run_transform(const RunConfig& cfg) {
  std::size_t k = cfg.outcomes != 0 ? static_cast<std::size_t>(cfg.outcomes) : cfg.dist.size();
  if (k == 0) {
    k = 2;
    for (const auto& f : cfg.factors) k = std::max(k, f.j + 1);
  }
  const OutcomeDistribution dist = dist_for(cfg, k);
  k = dist.size();
  const PhaseVector phases = phases_for(cfg, k);

  std::vector<EmbeddedRotation> factors;
  for (const auto& f : cfg.factors) {
    if (f.j >= k)
      throw std::domain_error("factor index " + std::to_string(f.j + 1) + " exceeds K=" + std::to_string(k));
    factors.push_back({f.i, f.j, rotation2(f.rotation), k});
  }
  const auto extra = random_factors(k, cfg.random_factor_count, cfg.seed);
  factors.insert(factors.end(), extra.begin(), extra.end());

  const UnitaryK u = compose(k, factors);
  const auto before = dispersion_total(cfg.trials, dist, phases);
  const auto after = dispersion_transformed(cfg.trials, dist, phases, u);
  const double residual = std::abs(after.total - before.total);

  CommandResult result;
  result.table.header = {"component", "D2_eta", "D2_psi"};
  for (std::size_t c = 0; c < k; ++c)
    result.table.rows.push_back({format_int(static_cast<long long>(c + 1)),
                                 format_number(cfg.trials * before.per_component[c]),
                                 format_number(cfg.trials * after.per_component[c])});
  result.summary.push_back("composed unitary (" + std::to_string(factors.size()) + " factors, K=" +
                           std::to_string(k) + "):");
  for (std::size_t r = 0; r < k; ++r) result.summary.push_back(matrix_row(u, r));
  result.summary.push_back(fmt("unitarity residual = %.3g", u.unitarity_residual()));
  result.summary.push_back(fmt("N*D2 before = %.12f  after = %.12f", before.n_scaled_total, after.n_scaled_total));
  result.summary.push_back(fmt("conservation residual |D2_after - D2_before| = %.3g", residual));
  return result;
}

CommandResult run_mc_check(const RunConfig& cfg) {
  const SamplerConfig sampler{cfg.seed, cfg.replications};
  sampler.validate();

  struct Cell {
    std::string quantity;
    std::string label;
    int trials;
    std::vector<double> probs;
    std::optional<EncodingKind> kind;  // prob-bits cells
    int unitary = 0;                   // 0 none, 1 default rotation, n>1: n random factors
  };
  using E = EncodingKind;
  const std::vector<Cell> cells{
      {"prob_bits", "frequency", 4000, {0.5, 0.5}, E::frequency},
      {"prob_bits", "amplitude", 4000, {0.5, 0.5}, E::amplitude},
      {"prob_bits", "arcsine", 4000, {0.5, 0.5}, E::arcsine},
      {"prob_bits", "frequency", 4000, {0.05, 0.95}, E::frequency},
      {"prob_bits", "amplitude", 4000, {0.05, 0.95}, E::amplitude},
      {"prob_bits", "arcsine", 4000, {0.05, 0.95}, E::arcsine},
      {"prob_bits", "frequency", 1000, {0.3, 0.7}, E::frequency},
      {"prob_bits", "amplitude", 1000, {0.3, 0.7}, E::amplitude},
      {"prob_bits", "arcsine", 1000, {0.3, 0.7}, E::arcsine},
      {"prob_bits", "frequency", 100, {0.8, 0.2}, E::frequency},
      {"prob_bits", "arcsine", 100, {0.1, 0.9}, E::arcsine},
      {"prob_bits", "amplitude", 4000, {1.0, 0.0}, E::amplitude},
      {"dispersion", "eta", 4000, {0.5, 0.5}, std::nullopt, 0},
      {"dispersion", "psi", 4000, {0.2, 0.8}, std::nullopt, 1},
      {"dispersion", "eta", 100, {0.05, 0.95}, std::nullopt, 0},
      {"dispersion", "eta", 1000, {0.2, 0.3, 0.5}, std::nullopt, 0},
      {"dispersion", "psi", 1000, {0.2, 0.3, 0.5}, std::nullopt, 3},
      {"dispersion", "eta", 4000, {0.25, 0.25, 0.25, 0.25}, std::nullopt, 0},
      {"dispersion", "psi", 100, {0.1, 0.2, 0.3, 0.4}, std::nullopt, 6},
      {"dispersion", "psi", 100, {1.0, 0.0, 0.0}, std::nullopt, 3},
  };

  CommandResult result;
  result.table.header = {"cell", "quantity", "variant", "N", "probs", "exact", "mc_mean",
                         "mc_std_error", "pass", "generator"};
  int failures = 0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    const BitBudget budget(cfg.bits);
    double exact = 0.0;
    McEstimate est;
    if (cell.kind) {
      exact = prob_bits_correct(*cell.kind, cell.trials, cell.probs[0], budget);
      est = mc_prob_bits(*cell.kind, cell.trials, cell.probs[0], budget, sampler);
    } else {
      const OutcomeDistribution dist(cell.probs);
      const PhaseVector phases = dist.size() == 3 && cell.unitary == 0
                                     ? PhaseVector({0.0, 1.0, 2.0})
                                     : PhaseVector::zeros(dist.size());
      std::optional<UnitaryK> u;
      if (cell.unitary == 1) {
        u = embed({0, 1, rotation2(cfg.rotation), 2});
      } else if (cell.unitary > 1) {
        const auto factors = random_factors(dist.size(), static_cast<std::size_t>(cell.unitary), cfg.seed + c);
        u = compose(dist.size(), factors);
      }
      exact = u ? dispersion_transformed(cell.trials, dist, phases, *u).total
                : dispersion_total(cell.trials, dist, phases).total;
      est = mc_dispersion(cell.trials, dist, phases, u, sampler);
    }
    const bool pass = est.covers(exact, 3.0);
    if (!pass) ++failures;
    std::string probs;
    for (std::size_t j = 0; j < cell.probs.size(); ++j) probs += (j ? " " : "") + format_number(cell.probs[j]);
    result.table.rows.push_back({format_int(static_cast<long long>(c + 1)), cell.quantity, cell.label,
                                 format_int(cell.trials), probs, format_number(exact),
                                 format_number(est.mean), format_number(est.std_error),
                                 pass ? "1" : "0", std::string(est.generator)});
    result.summary.push_back(fmt("%s cell %2zu %-10s %-9s N=%-5d p=(%s) exact=%.6g mc=%.6g se=%.3g",
                                 pass ? "PASS" : "FAIL", c + 1, cell.quantity.c_str(), cell.label.c_str(),
                                 cell.trials, probs.c_str(), exact, est.mean, est.std_error));
  }
  const int allowed = static_cast<int>(cells.size()) / 10;
  result.summary.push_back(fmt("%zu/%zu cells inside 3 standard errors (seed=%llu, reps=%zu, generator=%s)",
                               cells.size() - static_cast<std::size_t>(failures), cells.size(),
                               static_cast<unsigned long long>(cfg.seed), cfg.replications,
                               std::string(kGeneratorId).c_str()));
  result.exit_code = failures > allowed ? 1 : 0;
  return result;
}

CommandResult run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::fig1:
      return run_fig1(cfg);
    case Command::fig3:
      return run_fig3(cfg);
    case Command::fig4:
      return run_fig4(cfg);
    case Command::fig5:
      return run_fig5(cfg);
    case Command::klevel:
      return run_klevel(cfg);
    case Command::transform:
      return run_transform(cfg);
    case Command::mc_check:
      return run_mc_check(cfg);
  }
  throw std::domain_error("unknown command");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bit credibility and dispersion of encoded probabilistic data"};
  RunConfig cfg;
  std::string command;
  std::vector<double> rotation_deg;
  std::vector<double> phases_deg;
  std::string factors;

  std::vector<std::string> names;
  for (const auto& [name, cmd] : command_table()) names.push_back(name);
  app.add_option("command", command, "fig1 | fig3 | fig4 | fig5 | klevel | transform | mc-check")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--trials", cfg.trials, "Number of trials N")->check(CLI::PositiveNumber);
  app.add_option("--bits", cfg.bits, "Stored bits S")->check(CLI::PositiveNumber);
  app.add_option("--grid-points", cfg.grid_points, "Interior probability grid points")
      ->check(CLI::PositiveNumber);
  app.add_option("--outcomes", cfg.outcomes, "Outcome count K")->check(CLI::Range(2, 64));
  app.add_option("--dist", cfg.dist, "Outcome probabilities p1,p2,...")->delimiter(',');
  app.add_option("--rotation", rotation_deg, "tau,theta,phi in degrees")->delimiter(',')->expected(3);
  app.add_option("--factors", factors, "i:j:tau:theta:phi;... (1-based, degrees)");
  app.add_option("--random-factors", cfg.random_factor_count, "Extra random factors (transform)");
  app.add_option("--phases", phases_deg, "Phases in degrees d1,d2,...")->delimiter(',');
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--reps", cfg.replications, "Monte Carlo replications")->check(CLI::PositiveNumber);
  app.add_flag("--oracle", cfg.oracle, "Add full-enumeration columns (klevel)");
  app.add_flag("--include-endpoints", cfg.include_endpoints, "Add p=0 and p=1 to the grid");
  app.add_option("--out", cfg.output_path, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.command = *parse_command(command);
    if (!rotation_deg.empty())
      cfg.rotation = Rotation2Params::from_degrees(rotation_deg[0], rotation_deg[1], rotation_deg[2]);
    for (double d : phases_deg) cfg.phases.push_back(d * kDegree);
    if (!factors.empty()) cfg.factors = parse_factors(factors);
    if (cfg.output_path.empty()) cfg.output_path = command + ".csv";

    const CommandResult result = run_command(cfg);

    std::ofstream file(cfg.output_path);
    if (!file) {
      err << "error: cannot open '" << cfg.output_path << "' for writing\n";
      return 3;
    }
    write_csv(result.table, file);
    file.flush();
    if (!file) {
      err << "error: failed writing '" << cfg.output_path << "'\n";
      return 3;
    }
    for (const auto& line : result.summary) out << line << '\n';
    out << "wrote " << result.table.rows.size() << " rows to " << cfg.output_path << '\n';
    return result.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace bitcred::cli
