#ifndef MOMENT_FORGE_CLI_HPP
#define MOMENT_FORGE_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "moment_forge/grid.hpp"
#include "moment_forge/problem_file.hpp"
#include "moment_forge/solver.hpp"

namespace mforge {

enum ExitCode : int { kExitYes = 0, kExitError = 1, kExitNo = 2, kExitInconclusive = 3 };

inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::yes: return kExitYes;
    case Verdict::no: return kExitNo;
    case Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitError;
}

struct CliOptions {
  std::string command;
  std::string problem_path;
  std::optional<double> tol;
  bool exact = false;
  std::string output;
  std::string format = "text";
  std::string poly;
  std::string center = "0,0";
  double half_width = 2;
  int samples = 101;
};

/// Flag, then problem file, then MOMENT_FORGE_TOL, then the default.
inline double resolve_tol(const std::optional<double>& flag, const std::optional<ProblemFile>& problem) {
  if (flag) return *flag;
  if (problem && problem->tol) return *problem->tol;
  if (const char* env = std::getenv("MOMENT_FORGE_TOL")) {
    const FileNumber n = parse_number(env);
    if (!(n.approx > 0)) throw Error("cli", "MOMENT_FORGE_TOL must be positive");
    return n.approx;
  }
  return kDefaultTol;
}

namespace detail {

using Json = nlohmann::ordered_json;

inline std::string scalar_text(const GaussianRational& c) { return format_coefficient(c); }
inline std::string scalar_text(const Complex& c) { return format_coefficient(c); }

inline Json scalar_json(const GaussianRational& c) { return Json{{"re", c.re().get_str()}, {"im", c.im().get_str()}}; }
inline Json scalar_json(const Complex& c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

inline std::string complex_text(const Complex& z) {
  return format_double(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + format_double(std::fabs(z.imag())) + "i";
}

inline std::string labels_text(int k) {
  std::string s;
  for (const auto& m : label_monomials(k)) s += (s.empty() ? "" : " ") + to_string(m);
  return s;
}

struct Session {
  const CliOptions& opt;
  std::optional<ProblemFile> problem;
  double tol = kDefaultTol;
  std::ostringstream out;

  bool structured() const { return opt.format == "structured"; }

  const ProblemFile& require_problem() const {
    if (!problem) throw Error("cli", "command '" + opt.command + "' needs a problem file");
    return *problem;
  }

  AnyPolynomial polynomial() const {
    if (!opt.poly.empty()) return parse_polynomial(opt.poly);
    if (problem && problem->polynomial) return parse_polynomial(*problem->polynomial);
    throw Error("cli", "no polynomial: give --poly or a 'polynomial' key in the problem file");
  }

  AnyMomentSequence moments() const { return moment_sequence(require_problem(), opt.exact); }
};

template <Scalar S>
void emit_matrix(Session& s, const MomentMatrix<S>& m) {
  if (s.structured()) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.size(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.size(); ++c) row.push_back(scalar_json(m(r, c)));
      rows.push_back(row);
    }
    Json labels = Json::array();
    for (const auto& l : m.labels) labels.push_back(to_string(l));
    s.out << Json{{"k", m.k}, {"labels", labels}, {"entries", rows}}.dump(2) << "\n";
    return;
  }
  s.out << "M(" << m.k << "): " << m.size() << " x " << m.size() << "\n";
  s.out << "labels: " << labels_text(m.k) << "\n";
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) s.out << (c ? "  " : "") << scalar_text(m(r, c));
    s.out << "\n";
  }
}

inline void emit_variety(Session& s, const Variety& v) {
  if (s.structured()) {
    Json pts = Json::array();
    for (const auto& p : v.points) {
      Json j{{"re", p.z.real()}, {"im", p.z.imag()}, {"residual", p.residual}, {"simple", p.simple}, {"clustered", p.clustered}};
      if (p.exact) j["exact"] = scalar_json(*p.exact);
      pts.push_back(j);
    }
    s.out << Json{{"tol", v.tol}, {"points", pts}}.dump(2) << "\n";
    return;
  }
  s.out << "points: " << v.size() << "\n";
  for (const auto& p : v.points) {
    s.out << "z = " << (p.exact ? scalar_text(*p.exact) : complex_text(p.z)) << "  residual " << format_double(p.residual)
          << (p.simple ? "  simple" : "  multiple") << (p.clustered ? "  clustered" : "") << (p.exact ? "  exact" : "")
          << "\n";
  }
}

inline std::vector<std::string> basis_lines(const AnyBasis& g) {
  return std::visit(
      [](const auto& b) {
        std::vector<std::string> out;
        for (const auto& e : b.elements) out.push_back(to_string(e));
        return out;
      },
      g);
}

inline void emit_basis(Session& s, const AnyBasis& g) {
  const auto lines = basis_lines(g);
  std::string standard;
  for (const auto& m : standard_monomials(leading_monomials(g))) standard += (standard.empty() ? "" : " ") + to_string(m);
  if (s.structured()) {
    s.out << Json{{"exact", is_exact(g)}, {"elements", lines}, {"standard_monomials", standard}}.dump(2) << "\n";
    return;
  }
  s.out << "# " << (is_exact(g) ? "exact" : "floating") << " basis, " << lines.size() << " elements\n";
  s.out << "# standard monomials: " << standard << "\n";
  for (const auto& l : lines) s.out << l << "\n";
}

inline void emit_conditions(Session& s, const AnyBasis& g) {
  std::vector<std::string> lines;
  std::visit([&](const auto& b) {
    for (const auto& c : numerical_conditions(b)) lines.push_back(format_condition(c));
  }, g);
  if (s.structured()) {
    s.out << Json{{"conditions", lines}}.dump(2) << "\n";
    return;
  }
  for (const auto& l : lines) s.out << l << "\n";
}

inline ProblemFile measure_problem(int k, const AtomicMeasure<Complex>& mu) {
  ProblemFile p;
  p.k = k;
  for (const auto& a : mu.atoms)
    p.atoms.push_back({FileNumber::of(a.z.real()), FileNumber::of(a.z.imag()), FileNumber::of(a.density.real())});
  return p;
}

inline Json measure_json(const AtomicMeasure<Complex>& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms) atoms.push_back(Json{{"z_re", a.z.real()}, {"z_im", a.z.imag()}, {"density", a.density.real()}});
  return atoms;
}

inline void emit_report(Session& s, const CheckReport& r) {
  const auto lines = basis_lines(r.basis);
  if (s.structured()) {
    Json elements = Json::array();
    for (std::size_t i = 0; i < r.elements.size(); ++i) {
      const auto& e = r.elements[i];
      Json j{{"g", lines[i]},
             {"lambda_g", scalar_json(e.lambda_g)},
             {"lambda_zg", scalar_json(e.lambda_zg)},
             {"condition2", e.condition2}};
      if (e.relation_residual) j["relation_residual"] = *e.relation_residual;
      if (e.condition3) j["condition3"] = *e.condition3;
      elements.push_back(j);
    }
    Json rep{{"verdict", to_string(r.verdict)},
             {"reason", r.reason},
             {"k", r.k},
             {"psd", r.psd.psd},
             {"strict_inner", r.psd.strict_inner},
             {"min_eigenvalue", r.psd.min_eigenvalue},
             {"rank", r.rank},
             {"nullity", r.nullity},
             {"variety_size", r.v},
             {"extremal", r.extremal},
             {"relation_residual", r.relation_residual},
             {"basis_exact", is_exact(r.basis)},
             {"elements", elements},
             {"condition2", r.condition2},
             {"condition3", r.condition3},
             {"strict_consistency", Json{{"pass", r.strict.pass}, {"checked", r.strict.checked}, {"worst", r.strict.worst}}},
             {"findings", r.findings}};
    if (r.extraction) {
      rep["measure"] = measure_json(r.extraction->measure);
      rep["extraction_residual"] = r.extraction->residual;
    }
    s.out << rep.dump(2) << "\n";
    return;
  }
  auto yes_no = [](bool b) { return b ? "pass" : "fail"; };
  s.out << "verdict: " << to_string(r.verdict) << "\n"
        << "reason: " << r.reason << "\n"
        << "k: " << r.k << "\n"
        << "psd: " << (r.psd.psd ? "true" : "false") << " (min eigenvalue " << format_double(r.psd.min_eigenvalue) << ")\n"
        << "strict inner: " << (r.psd.strict_inner ? "true" : "false") << "\n"
        << "rank: " << r.rank << "\n"
        << "nullity: " << r.nullity << "\n"
        << "variety size: " << r.v << "\n"
        << "extremal: " << (r.extremal ? "true" : "false") << "\n"
        << "relation residual: " << format_double(r.relation_residual) << "\n"
        << "basis (" << lines.size() << " elements, " << (is_exact(r.basis) ? "exact" : "floating") << "):\n";
  for (std::size_t i = 0; i < r.elements.size(); ++i) {
    const auto& e = r.elements[i];
    s.out << "  g" << i + 1 << " = " << lines[i] << "\n"
          << "     Lambda(g) = " << complex_text(e.lambda_g) << ", Lambda(z g) = " << complex_text(e.lambda_zg)
          << ", condition (2) " << yes_no(e.condition2);
    if (e.condition3) s.out << ", condition (3) " << yes_no(*e.condition3);
    else s.out << ", condition (3) n/a";
    s.out << "\n";
  }
  s.out << "condition (2): " << yes_no(r.condition2) << "\n"
        << "condition (3): " << yes_no(r.condition3) << "\n"
        << "strict consistency: " << yes_no(r.strict.pass) << " (" << r.strict.checked << " checks, worst "
        << format_double(r.strict.worst) << ")\n";
  for (const auto& f : r.findings) s.out << "finding: " << f << "\n";
  if (r.extraction) {
    s.out << "measure (residual " << format_double(r.extraction->residual) << "):\n";
    for (const auto& a : r.extraction->measure.atoms)
      s.out << "  z = " << complex_text(a.z) << "  density " << format_double(a.density.real()) << "\n";
  }
}

inline CheckReport run_check(Session& s) {
  const auto gamma = s.moments();
  const auto analysis = analyze_relation(s.polynomial(), s.tol);
  return std::visit([&](const auto& g) { return check_extremal(g, analysis, s.tol); }, gamma);
}

inline GridSpec grid_spec(const CliOptions& opt) {
  GridSpec spec;
  const auto comma = opt.center.find(',');
  if (comma == std::string::npos) throw Error("cli", "--center expects 're,im'");
  spec.center = {parse_number(strip(opt.center.substr(0, comma))).approx, parse_number(strip(opt.center.substr(comma + 1))).approx};
  spec.half_width = opt.half_width;
  spec.samples = opt.samples;
  return spec;
}

inline int dispatch(Session& s) {
  const std::string& cmd = s.opt.command;
  if (cmd == "matrix") {
    std::visit([&](const auto& g) { emit_matrix(s, build_moment_matrix(g)); }, s.moments());
  } else if (cmd == "variety") {
    emit_variety(s, solve_conjugate_system(s.polynomial(), s.tol));
  } else if (cmd == "groebner") {
    emit_basis(s, variety_ideal(solve_conjugate_system(s.polynomial(), s.tol), s.tol));
  } else if (cmd == "conditions") {
    emit_conditions(s, variety_ideal(solve_conjugate_system(s.polynomial(), s.tol), s.tol));
  } else if (cmd == "check") {
    const CheckReport r = run_check(s);
    emit_report(s, r);
    return exit_code(r.verdict);
  } else if (cmd == "extract") {
    const CheckReport r = run_check(s);
    if (r.verdict != Verdict::yes) throw Error("solver", "no measure extracted: " + r.reason);
    if (s.structured()) s.out << Json{{"k", r.k}, {"atoms", measure_json(r.extraction->measure)}}.dump(2) << "\n";
    else s.out << serialize_problem(measure_problem(r.k, r.extraction->measure));
  } else if (cmd == "generate") {
    const ProblemFile& p = s.require_problem();
    ProblemFile g;
    g.k = p.k;
    g.polynomial = p.polynomial;
    std::visit([&](const auto& mu) { g.moments = moment_entries(generate_moments(mu, p.k)); }, atomic_measure(p, s.opt.exact));
    if (s.structured()) {
      Json moments = Json::array();
      for (const auto& e : g.moments)
        moments.push_back(Json{{"i", e.i}, {"j", e.j}, {"re", to_string(e.re)}, {"im", to_string(e.im)}});
      s.out << Json{{"k", g.k}, {"moments", moments}}.dump(2) << "\n";
    } else {
      s.out << serialize_problem(g);
    }
  } else if (cmd == "grid") {
    const std::string csv = std::visit([&](const auto& p) { return grid_sample(p, grid_spec(s.opt)); }, s.polynomial());
    s.out << csv;
  } else {
    throw Error("cli", "unknown command '" + cmd + "'");
  }
  return kExitYes;
}

}  // namespace detail

/// Runs one command; the text or structured result goes to out (or to
/// --output), diagnostics to err. Returns the process exit status.
inline int run_command(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    detail::Session s{opt, std::nullopt, kDefaultTol, {}};
    if (!opt.problem_path.empty()) s.problem = parse_problem(opt.problem_path);
    if (opt.format != "text" && opt.format != "structured") throw Error("cli", "--format must be text or structured");
    s.tol = resolve_tol(opt.tol, s.problem);
    const int code = detail::dispatch(s);
    if (opt.output.empty()) {
      out << s.out.str();
    } else {
      std::ofstream file(opt.output);
      if (!file) throw Error("cli", "cannot write '" + opt.output + "'");
      file << s.out.str();
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

/// Parses argv with CLI11 and runs the command.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated complex moment problems with a polynomial column relation", "moment_forge"};
  CliOptions opt;
  app.add_option("command", opt.command, "matrix | variety | groebner | conditions | check | extract | generate | grid")
      ->required()
      ->check(CLI::IsMember({"matrix", "variety", "groebner", "conditions", "check", "extract", "generate", "grid"}));
  app.add_option("problem", opt.problem_path, "problem file");
  app.add_option("--tol", opt.tol, "tolerance (default 1e-9, or MOMENT_FORGE_TOL)")->check(CLI::PositiveNumber);
  app.add_flag("--exact", opt.exact, "convert floating inputs exactly and use exact arithmetic");
  app.add_option("--output", opt.output, "write the result to this file");
  app.add_option("--format", opt.format, "text or structured (JSON)")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--poly", opt.poly, "relation polynomial, overriding the problem file");
  app.add_option("--center", opt.center, "grid center as re,im");
  app.add_option("--half-width", opt.half_width, "grid half-width")->check(CLI::PositiveNumber);
  app.add_option("--samples", opt.samples, "grid samples per axis")->check(CLI::Range(2, 100000));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitYes;
  } catch (const CLI::ParseError& e) {
    err << "error: cli: " << e.what() << "\n";
    return kExitError;
  }
  return run_command(opt, out, err);
}

}  // namespace mforge

#endif  // MOMENT_FORGE_CLI_HPP
