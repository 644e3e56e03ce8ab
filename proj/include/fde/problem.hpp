#pragma once

// Boundary value problems u^(m) = f(t, u(t), u(phi(t))) and their text form:
//
//   order = 3
//   interval = 1
//   rhs = exp(-t)*u^(3/2)*v
//   phi = t/2
//   bc_family = third_a
//   bc = 1, 1, e
//   exact = exp(t)          # optional
//   lipschitz = 2.3, 2.0    # optional

#include "fde/error.hpp"
#include "fde/expr.hpp"
#include "fde/findiff.hpp"
#include "fde/kernels.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace fde {

struct ProblemSpec {
  int order = 3;
  double interval_length = 1.0;
  Expr rhs;
  Expr phi;
  BcTag bc_family = BcTag::ThirdA;
  std::vector<Expr> bc_values;
  std::optional<Expr> exact;
  std::optional<std::pair<double, double>> lipschitz;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

struct BvpProblem {
  std::string name;
  int order;
  double interval_length;
  std::function<double(double, double, double)> rhs;
  std::function<double(double)> phi;
  BcFamily bc;
  std::optional<std::function<double(double)>> exact;
  std::optional<std::pair<double, double>> lipschitz;
  std::optional<ProblemSpec> spec;  // present when built from text
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Split on commas that are not inside parentheses.
inline std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

[[noreturn]] inline void rethrow_at_line(const Error& e, int line) {
  throw Error(e.code(), fmt::format("line {}: {}", line, e.what()));
}

inline double constant_value(const std::string& text, int line) {
  try {
    return parse_expr(text, {})(0.0);
  } catch (const Error& e) {
    rethrow_at_line(e, line);
  }
}

}  // namespace detail

/// Check that phi maps [0,a] into [0,a] on 1000 samples.
inline void check_phi_range(const std::function<double(double)>& phi, double a) {
  constexpr int kSamples = 1000;
  for (int i = 0; i < kSamples; ++i) {
    const double t = a * i / (kSamples - 1);
    const double x = phi(t);
    if (!(x >= -1e-14 * a && x <= a * (1.0 + 1e-14)))
      throw Error(Errc::PhiOutOfRange, fmt::format("phi({:.6g}) = {:.6g} leaves [0, {:.6g}]", t, x, a));
  }
}

inline BvpProblem make_problem(const ProblemSpec& spec, std::string name = "custom") {
  if (equation_order(spec.bc_family) != spec.order)
    throw Error(Errc::UnsupportedFamily, fmt::format("family {} does not apply to order {}", to_string(spec.bc_family), spec.order));
  if (!(spec.interval_length > 0.0)) throw Error(Errc::BadInterval, "interval length must be positive");
  std::vector<double> values;
  for (const auto& e : spec.bc_values) values.push_back(e(0.0));
  BvpProblem p{std::move(name), spec.order, spec.interval_length, nullptr, nullptr, BcFamily(spec.bc_family, values),
               std::nullopt, spec.lipschitz, spec};
  const Expr rhs = spec.rhs;
  const Expr phi = spec.phi;
  p.rhs = [rhs](double t, double u, double v) { return rhs(t, u, v); };
  p.phi = [phi](double t) { return phi(t); };
  if (spec.exact) {
    const Expr ex = *spec.exact;
    p.exact = [ex](double t) { return ex(t); };
  }
  check_phi_range(p.phi, p.interval_length);
  return p;
}

inline ProblemSpec parse_problem_spec(std::string_view text) {
  std::map<std::string, std::pair<std::string, int>> fields;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::ParseError, fmt::format("line {}: expected 'key = value'", line_no));
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    static const std::set<std::string> known = {"order", "interval", "rhs", "phi", "bc_family", "bc", "exact", "lipschitz"};
    if (!known.count(key)) throw Error(Errc::ParseError, fmt::format("line {}: unknown key '{}'", line_no, key));
    if (fields.count(key)) throw Error(Errc::ParseError, fmt::format("line {}: duplicate key '{}'", line_no, key));
    if (value.empty()) throw Error(Errc::ParseError, fmt::format("line {}: empty value for '{}'", line_no, key));
    fields[key] = {value, line_no};
  }
  for (const char* req : {"order", "rhs", "phi", "bc_family", "bc"})
    if (!fields.count(req)) throw Error(Errc::ParseError, fmt::format("missing required key '{}'", req));

  auto expr_field = [&](const std::string& key, std::set<Var> vars) {
    const auto& [value, line] = fields.at(key);
    try {
      return parse_expr(value, std::move(vars));
    } catch (const Error& e) {
      detail::rethrow_at_line(e, line);
    }
  };

  ProblemSpec spec;
  {
    const auto& [value, line] = fields.at("order");
    const double v = detail::constant_value(value, line);
    if (v != 3 && v != 4 && v != 5) throw Error(Errc::UnsupportedFamily, fmt::format("line {}: order must be 3, 4 or 5", line));
    spec.order = static_cast<int>(v);
  }
  if (fields.count("interval")) {
    auto [value, line] = fields.at("interval");
    // Either "a" or "[0, a]".
    if (value.front() == '[') {
      if (value.back() != ']') throw Error(Errc::ParseError, fmt::format("line {}: unterminated interval", line));
      const auto parts = detail::split_top_level(std::string_view(value).substr(1, value.size() - 2));
      if (parts.size() != 2 || detail::constant_value(parts[0], line) != 0.0)
        throw Error(Errc::BadInterval, fmt::format("line {}: interval must be [0, a]", line));
      value = parts[1];
    }
    spec.interval_length = detail::constant_value(value, line);
    if (!(spec.interval_length > 0.0)) throw Error(Errc::BadInterval, fmt::format("line {}: interval length must be positive", line));
  }
  spec.rhs = expr_field("rhs", {Var::T, Var::U, Var::V});
  spec.phi = expr_field("phi", {Var::T});
  {
    const auto& [value, line] = fields.at("bc_family");
    try {
      spec.bc_family = parse_bc_tag(value);
    } catch (const Error& e) {
      detail::rethrow_at_line(e, line);
    }
  }
  {
    const auto& [value, line] = fields.at("bc");
    for (const auto& part : detail::split_top_level(value)) {
      try {
        spec.bc_values.push_back(parse_expr(part, {}));
      } catch (const Error& e) {
        detail::rethrow_at_line(e, line);
      }
    }
    if (static_cast<int>(spec.bc_values.size()) != condition_count(spec.bc_family))
      throw Error(Errc::UnsupportedFamily, fmt::format("line {}: {} expects {} boundary values, got {}", line,
                                                       to_string(spec.bc_family), condition_count(spec.bc_family),
                                                       spec.bc_values.size()));
  }
  if (fields.count("exact")) spec.exact = expr_field("exact", {Var::T});
  if (fields.count("lipschitz")) {
    const auto& [value, line] = fields.at("lipschitz");
    const auto parts = detail::split_top_level(value);
    if (parts.size() != 2) throw Error(Errc::ParseError, fmt::format("line {}: lipschitz needs two values", line));
    spec.lipschitz = std::pair{detail::constant_value(parts[0], line), detail::constant_value(parts[1], line)};
  }
  return spec;
}

inline std::string serialize(const ProblemSpec& spec) {
  std::string out;
  out += fmt::format("order = {}\n", spec.order);
  out += fmt::format("interval = {}\n", detail::format_number(spec.interval_length));
  out += fmt::format("rhs = {}\n", spec.rhs.to_string());
  out += fmt::format("phi = {}\n", spec.phi.to_string());
  out += fmt::format("bc_family = {}\n", to_string(spec.bc_family));
  out += "bc = ";
  for (std::size_t i = 0; i < spec.bc_values.size(); ++i) out += (i ? ", " : "") + spec.bc_values[i].to_string();
  out += "\n";
  if (spec.exact) out += fmt::format("exact = {}\n", spec.exact->to_string());
  if (spec.lipschitz)
    out += fmt::format("lipschitz = {}, {}\n", detail::format_number(spec.lipschitz->first),
                       detail::format_number(spec.lipschitz->second));
  return out;
}

inline BvpProblem load_problem_text(std::string_view text, std::string name = "custom") {
  return make_problem(parse_problem_spec(text), std::move(name));
}

inline BvpProblem load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::UnknownProblem, "cannot open problem file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_problem_text(buf.str(), path.stem().string());
}

/// Max residual |u^(m)(t) - f(t, u(t), u(phi(t)))| of the exact solution at
/// `samples` points, with u^(m) from a tenth-order central difference. The
/// step doubles with each order above three to keep round-off below 1e-7.
inline double exact_residual(const BvpProblem& p, int samples = 50) {
  if (!p.exact) throw Error(Errc::InvalidConfig, "problem has no exact solution");
  const auto& u = *p.exact;
  const int m = p.order;
  const Stencil st = make_stencil(m, 10, StencilPosition::interior());
  const double h = 0.02 * p.interval_length * std::ldexp(1.0, m - 3);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = p.interval_length * i / (samples - 1);
    double d = 0.0;
    for (std::size_t q = 0; q < st.offsets.size(); ++q) d += st.weights[q] * u(t + st.offsets[q] * h);
    d /= std::pow(h, m);
    worst = std::max(worst, std::abs(d - p.rhs(t, u(t), u(p.phi(t)))));
  }
  return worst;
}

/// Max mismatch between the exact solution's boundary functionals and the
/// prescribed values.
inline double boundary_residual(const BvpProblem& p) {
  if (!p.exact) throw Error(Errc::InvalidConfig, "problem has no exact solution");
  const auto& u = *p.exact;
  const auto funcs = functionals(p.bc.tag);
  const double h = 0.02 * p.interval_length;
  double worst = 0.0;
  for (std::size_t r = 0; r < funcs.size(); ++r) {
    const double x = funcs[r].at_right ? p.interval_length : 0.0;
    double v = u(x);
    if (funcs[r].derivative > 0) {
      const Stencil st = make_stencil(funcs[r].derivative, 10, StencilPosition::interior());
      v = 0.0;
      for (std::size_t q = 0; q < st.offsets.size(); ++q) v += st.weights[q] * u(x + st.offsets[q] * h);
      v /= std::pow(h, funcs[r].derivative);
    }
    worst = std::max(worst, std::abs(v - p.bc.values[r]));
  }
  return worst;
}

}  // namespace fde
