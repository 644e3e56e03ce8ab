// fde: solve, study and verify high-order functional BVPs from the command line.

#include "fde/fde.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kCompareFail = 1, kUsage = 2, kSolverFail = 3 };

// Errors that stem from bad input rather than from the numerics.
bool is_usage_error(fde::Errc c) {
  using fde::Errc;
  switch (c) {
    case Errc::UnsupportedFamily:
    case Errc::BadInterval:
    case Errc::SyntaxError:
    case Errc::UnknownIdentifier:
    case Errc::ParseError:
    case Errc::PhiOutOfRange:
    case Errc::UnknownProblem:
    case Errc::InvalidConfig:
    case Errc::UnknownTable:
    case Errc::GridTooSmall:
      return true;
    default:
      return false;
  }
}

std::vector<int> parse_ladder(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw fde::Error(fde::Errc::InvalidConfig, "bad ladder entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void dump_solution(const std::string& path, const fde::BvpProblem& p, const fde::SolveReport& rep) {
  std::ofstream out(path);
  if (!out) throw fde::Error(fde::Errc::InvalidConfig, "cannot write " + path);
  out << (p.exact ? "t,U,exact,error\n" : "t,U\n");
  const auto& g = rep.U.grid;
  for (int i = 0; i <= g.intervals(); ++i) {
    const double t = g.node(i);
    const double u = rep.U.values[static_cast<std::size_t>(i)];
    if (p.exact) {
      const double ex = (*p.exact)(t);
      fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.6e}\n", t, u, ex, std::abs(u - ex));
    } else {
      fmt::print(out, "{:.17g},{:.17g}\n", t, u);
    }
  }
}

int cmd_solve(const std::string& problem, const std::string& method, int n, double tol, int max_iter,
              const std::string& format, const std::string& dump) {
  const auto p = fde::resolve_problem(problem);
  const fde::SolverConfig cfg{fde::parse_level(method), n, tol, max_iter};
  const auto fmt_kind = fde::parse_table_format(format);
  const auto rep = fde::solve(p, cfg);
  fde::ConvergenceStudy study{p.name, cfg.level, tol, {{n, rep.iterations, rep.max_error, std::nullopt, rep.stalled, 0.0, {}}}};
  std::cout << fde::emit_table(study, fmt_kind);
  fmt::print(stderr, "{}: {} after {} iterations, last update {:.3e}, M0 = {:.6g}", p.name,
             rep.converged ? "converged" : "stalled at round-off", rep.iterations, rep.update_history.back(),
             rep.diagnostics.M0);
  if (rep.diagnostics.q) fmt::print(stderr, ", q = {:.4f}{}", *rep.diagnostics.q, *rep.diagnostics.contraction ? "" : " (not a contraction)");
  fmt::print(stderr, "\n");
  if (!dump.empty()) dump_solution(dump, p, rep);
  return kOk;
}

int cmd_converge(const std::string& problem, const std::string& method, const std::string& ladder, double tol,
                 const std::string& format) {
  const auto p = fde::resolve_problem(problem);
  const auto level = fde::parse_level(method);
  const auto fmt_kind = fde::parse_table_format(format);
  const auto study = fde::run_convergence(p, level, parse_ladder(ladder), tol);
  std::cout << fde::emit_table(study, fmt_kind);
  int rc = kOk;
  for (const auto& r : study.rungs)
    if (r.failure) {
      fmt::print(stderr, "n = {}: {}\n", r.n, *r.failure);
      rc = kSolverFail;
    }
  return rc;
}

int cmd_verify(const std::string& table_id, bool strict) {
  const auto& table = fde::reference_table(table_id);
  fde::TolerancePolicy pol;
  pol.compare_orders = strict;
  const auto study = fde::run_convergence(fde::builtin(table.problem), table.level, table.ladder(), fde::kReferenceTol);
  for (const auto& r : study.rungs)
    if (r.failure) fmt::print(stderr, "n = {}: {}\n", r.n, *r.failure);
  const auto rep = fde::compare_reference(study, table, pol);
  fmt::print("{} ({})\n", table.id, table.caption);
  for (const auto& c : rep.cells) {
    const std::string got = !c.actual ? "-" : c.column == "E" ? fde::format_sci(*c.actual)
                                          : c.column == "K"   ? fmt::format("{}", static_cast<int>(*c.actual))
                                                              : fmt::format("{:.4f}", *c.actual);
    const std::string want = c.column == "E" ? fde::format_sci(c.expected)
                             : c.column == "K" ? fmt::format("{}", static_cast<int>(c.expected))
                                               : fmt::format("{:.4f}", c.expected);
    fmt::print("  {:<5} n={:<5} expected {:>11}  got {:>11}  [{}]  {}\n", c.column, c.n, want, got, c.rule,
               c.pass ? "ok" : "FAIL");
  }
  fmt::print("{}: {} of {} cells pass\n", rep.pass() ? "PASS" : "FAIL", rep.cells.size() - rep.failures(), rep.cells.size());
  return rep.pass() ? kOk : kCompareFail;
}

int cmd_validate_kernel(int order, const std::string& family) {
  const auto tag = fde::parse_bc_tag(family);
  const auto kernel = fde::build_green_kernel(order, tag);
  const auto check = fde::check_kernel(kernel, fde::default_kernel_probes());
  fmt::print("kernel {} (order {})\n", family, order);
  fmt::print("  continuity gap on diagonal  {:.3e}\n", check.continuity_gap);
  fmt::print("  residual u^(m) = psi        {} ({} probes)\n", check.residual_exact ? "exact" : "FAILS", check.probes);
  fmt::print("  homogeneous conditions      {}\n", check.boundary_exact ? "exact" : "FAIL");
  fmt::print("  M0                          {:.10g}\n", fde::estimate_M0(kernel));
  fmt::print("{}\n", check.ok() ? "PASS" : "FAIL");
  return check.ok() ? kOk : kCompareFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green-function fixed-point solver for high-order functional BVPs"};
  app.require_subcommand(1);

  std::string problem, method = "p4", format = "markdown", dump, ladder, table, family;
  int n = 0, max_iter = 200, order = 0;
  double tol = 1e-14;
  bool strict = false;

  auto* solve = app.add_subcommand("solve", "Solve one problem on one grid");
  solve->add_option("--problem", problem, "Built-in name or .fde file")->required();
  solve->add_option("--method", method, "p4, p6 or p8")->required()->check(CLI::IsMember({"p4", "p6", "p8"}));
  solve->add_option("--n", n, "Grid intervals")->required();
  solve->add_option("--tol", tol, "Stopping tolerance on the sup-norm update");
  solve->add_option("--max-iter", max_iter, "Iteration cap");
  solve->add_option("--out", format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));
  solve->add_option("--dump-solution", dump, "Write t,U[,exact,error] as CSV");

  auto* converge = app.add_subcommand("converge", "Run a grid ladder and report observed orders");
  converge->add_option("--problem", problem, "Built-in name or .fde file")->required();
  converge->add_option("--method", method, "p4, p6 or p8")->required()->check(CLI::IsMember({"p4", "p6", "p8"}));
  converge->add_option("--ladder", ladder, "Comma-separated grid sizes")->required();
  converge->add_option("--tol", tol, "Stopping tolerance on the sup-norm update");
  converge->add_option("--out", format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));

  auto* verify = app.add_subcommand("verify", "Regenerate a reference table and compare cell by cell");
  verify->add_option("--table", table, "Table id, e.g. Tab1")->required();
  verify->add_flag("--strict", strict, "Also compare observed orders");

  auto* validate = app.add_subcommand("validate-kernel", "Check a Green kernel against its defining problem");
  validate->add_option("--order", order, "3, 4 or 5")->required()->check(CLI::IsMember({3, 4, 5}));
  validate->add_option("--family", family, "third_a, third_b, third_c, fourth_clamped or fifth")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve) return cmd_solve(problem, method, n, tol, max_iter, format, dump);
    if (*converge) return cmd_converge(problem, method, ladder, tol, format);
    if (*verify) return cmd_verify(table, strict);
    if (*validate) return cmd_validate_kernel(order, family);
  } catch (const fde::Error& e) {
    fmt::print(stderr, "fde: {}\n", e.what());
    return is_usage_error(e.code()) ? kUsage : kSolverFail;
  }
  return kUsage;
}
