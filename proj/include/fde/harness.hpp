#pragma once

// Convergence studies over grid ladders and cell-by-cell comparison against
// reference tables.

#include "fde/error.hpp"
#include "fde/problems.hpp"
#include "fde/reference.hpp"
#include "fde/solver.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fde {

struct Rung {
  int n = 0;
  std::optional<int> K;
  std::optional<double> E;
  std::optional<double> order;  // against the previous rung, when n grew by a power of two
  bool stalled = false;
  double seconds = 0.0;
  std::optional<std::string> failure;
};

struct ConvergenceStudy {
  std::string problem;
  Level level = Level::P2;
  double tol = 1e-14;
  std::vector<Rung> rungs;
};

/// Observed order between consecutive rungs; defined when n2/n1 is a power of two.
inline std::optional<double> observed_order(int n1, double e1, int n2, double e2) {
  if (n1 <= 0 || n2 <= n1 || n2 % n1 != 0) return std::nullopt;
  const int ratio = n2 / n1;
  if ((ratio & (ratio - 1)) != 0) return std::nullopt;
  if (!(e1 > 0.0) || !(e2 > 0.0)) return std::nullopt;
  return std::log2(e1 / e2) / std::log2(static_cast<double>(ratio));
}

/// Worker count for ladders: FDE_THREADS if set, otherwise the hardware count.
inline unsigned rung_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FDE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

inline ConvergenceStudy run_convergence(const BvpProblem& problem, Level level, const std::vector<int>& ladder,
                                        double tol = 1e-14, int max_iter = 200, unsigned threads = rung_threads()) {
  if (ladder.empty()) throw Error(Errc::InvalidConfig, "empty ladder");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1]) throw Error(Errc::InvalidConfig, "ladder must be strictly increasing");

  ConvergenceStudy study{problem.name, level, tol, std::vector<Rung>(ladder.size())};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ladder.size(); i = next++) {
      Rung& r = study.rungs[i];
      r.n = ladder[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        const SolveReport rep = solve(problem, SolverConfig{level, ladder[i], tol, max_iter});
        r.K = rep.iterations;
        r.E = rep.max_error;
        r.stalled = rep.stalled;
      } catch (const Error& e) {
        r.failure = e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(ladder.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t i = 1; i < study.rungs.size(); ++i) {
    const Rung& a = study.rungs[i - 1];
    Rung& b = study.rungs[i];
    if (a.E && b.E) b.order = observed_order(a.n, *a.E, b.n, *b.E);
  }
  return study;
}

inline constexpr double kMachineBucket = 1e-12;

struct CellVerdict {
  int n;
  std::string column;  // "E", "K" or "order"
  double expected;
  std::optional<double> actual;
  bool pass;
  std::string rule;
};

struct ComparisonReport {
  std::string table_id;
  std::vector<CellVerdict> cells;

  bool pass() const {
    return std::all_of(cells.begin(), cells.end(), [](const CellVerdict& c) { return c.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const CellVerdict& c) { return !c.pass; }));
  }
};

struct TolerancePolicy {
  double relative = 0.05;         // E_ref >= 1e-12
  double bucket_factor = 5.0;     // E_ref < 1e-12: E <= max(5 E_ref, floor)
  double bucket_floor = 5e-13;
  int iteration_slack = 2;
  bool compare_orders = true;
};

inline CellVerdict judge_error(int n, double expected, std::optional<double> actual, const TolerancePolicy& pol) {
  if (expected >= kMachineBucket) {
    const bool ok = actual && std::abs(*actual - expected) / expected <= pol.relative;
    return {n, "E", expected, actual, ok, fmt::format("rel <= {}", pol.relative)};
  }
  const double bound = std::max(pol.bucket_factor * expected, pol.bucket_floor);
  return {n, "E", expected, actual, actual && *actual <= bound, fmt::format("<= {:.1e}", bound)};
}

/// Cell verdicts for a study against a table of the same problem and level.
inline ComparisonReport compare_reference(const ConvergenceStudy& study, const ReferenceTable& table,
                                          const TolerancePolicy& pol = {}) {
  if (study.problem != table.problem || study.level != table.level)
    throw Error(Errc::TableMismatch, fmt::format("table {} is for {} at {}, study is {} at {}", table.id, table.problem,
                                                 to_string(table.level), study.problem, to_string(study.level)));
  ComparisonReport rep{table.id, {}};
  auto rung_for = [&study](int n) -> const Rung* {
    for (const auto& r : study.rungs)
      if (r.n == n) return &r;
    return nullptr;
  };
  bool overlap = false;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const RefRow& row = table.rows[i];
    const Rung* r = rung_for(row.n);
    if (r) overlap = true;
    const std::optional<double> E = r ? r->E : std::nullopt;
    rep.cells.push_back(judge_error(row.n, row.E, E, pol));
    if (row.K) {
      const std::optional<double> K = (r && r->K) ? std::optional<double>(*r->K) : std::nullopt;
      const bool ok = K && std::abs(*K - *row.K) <= pol.iteration_slack;
      rep.cells.push_back({row.n, "K", static_cast<double>(*row.K), K, ok, fmt::format("+-{}", pol.iteration_slack)});
    }
    // Orders are only meaningful while both errors sit above the round-off floor.
    if (pol.compare_orders && row.order && i > 0 && row.E >= kMachineBucket && table.rows[i - 1].E >= kMachineBucket) {
      const std::optional<double> got = r ? r->order : std::nullopt;
      const bool ok = got && std::abs(*got - *row.order) <= table.order_tolerance;
      rep.cells.push_back({row.n, "order", *row.order, got, ok, fmt::format("+-{}", table.order_tolerance)});
    }
  }
  if (!overlap) throw Error(Errc::TableMismatch, "study and table " + table.id + " share no grid sizes");
  return rep;
}

/// Stopping tolerance used when regenerating tables.
inline constexpr double kReferenceTol = 1e-16;

inline ComparisonReport verify_table(std::string_view id, const TolerancePolicy& pol = {}) {
  const ReferenceTable& table = reference_table(id);
  const BvpProblem problem = builtin(table.problem);
  const ConvergenceStudy study = run_convergence(problem, table.level, table.ladder(), kReferenceTol);
  return compare_reference(study, table, pol);
}

enum class TableFormat { Csv, Markdown };

inline TableFormat parse_table_format(std::string_view s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "markdown") return TableFormat::Markdown;
  throw Error(Errc::InvalidConfig, "unknown output format '" + std::string(s) + "'");
}

inline std::string format_sci(double v) { return fmt::format("{:.4e}", v); }

inline std::string emit_table(const ConvergenceStudy& study, TableFormat format) {
  std::string out;
  auto cells = [](const Rung& r) {
    return std::array<std::string, 4>{std::to_string(r.n), r.K ? std::to_string(*r.K) : std::string(),
                                      r.E ? format_sci(*r.E) : std::string(),
                                      r.order ? fmt::format("{:.4f}", *r.order) : std::string()};
  };
  if (format == TableFormat::Csv) {
    out += "n,K,E,order\n";
    for (const auto& r : study.rungs) {
      const auto c = cells(r);
      out += fmt::format("{},{},{},{}\n", c[0], c[1], c[2], c[3]);
    }
    return out;
  }
  out += "| n | K | E | Order |\n|---:|---:|---:|---:|\n";
  for (const auto& r : study.rungs) {
    const auto c = cells(r);
    out += fmt::format("| {} | {} | {} | {} |\n", c[0], c[1], r.failure ? "failed" : c[2], c[3]);
  }
  return out;
}

}  // namespace fde
