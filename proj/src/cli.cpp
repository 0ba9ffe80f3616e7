#include "fraclift/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fraclift/coeffseq.hpp"
#include "fraclift/errors.hpp"
#include "fraclift/gamma.hpp"
#include "fraclift/io.hpp"
#include "fraclift/lifted.hpp"
#include "fraclift/oracle.hpp"
#include "fraclift/parser.hpp"
#include "fraclift/rl.hpp"
#include "fraclift/verify.hpp"

namespace fraclift::cli {

namespace {

enum class Format { Pretty, Json, Csv };

const std::map<std::string, Format> kFormats = {
    {"pretty", Format::Pretty}, {"json", Format::Json}, {"csv", Format::Csv}};

struct InputOptions {
  std::string expr;
  std::string file;
  double basepoint = 0.0;
  int order = 16;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  auto* e = cmd->add_option("--expr,-e", in.expr, "Closed-form expression in x");
  auto* f = cmd->add_option("--file,-f", in.file, "Series JSON file");
  e->excludes(f);
  cmd->add_option("--basepoint,-a", in.basepoint, "Expansion point a")->default_val(0.0);
  cmd->add_option("--order,-n", in.order, "Truncation order of the expansion")
      ->default_val(16)
      ->check(CLI::NonNegativeNumber);
}

GenSeries load_series(const InputOptions& in) {
  if (!in.expr.empty()) return to_series(*parse(in.expr), in.basepoint, in.order);
  if (!in.file.empty()) return series_from_json(read_json_file(in.file));
  throw CLI::RequiredError("--expr or --file");
}

// Human-readable series, e.g. 1.1283791670955126*x^0.5 + 2*(x-1)^2
std::string pretty(const GenSeries& s) {
  if (s.empty()) return "0";
  const std::string base = s.basepoint() == 0.0 ? "x" : "(x-" + format_double(s.basepoint()) + ")";
  std::string out;
  for (const auto& t : s.terms()) {
    if (!out.empty()) out += " + ";
    out += format_double(t.coef);
    if (t.exponent == 1.0)
      out += "*" + base;
    else if (t.exponent != 0.0)
      out += "*" + base + "^" + format_double(t.exponent);
  }
  if (!s.is_exact()) out += " + O(" + base + "^" + format_double(s.truncation_order()) + "+)";
  return out;
}

std::string kernel_note(double alpha, double k) {
  return "0 (kernel: α+1−k = " + format_double(std::round(alpha + 1.0 - k)) + ")";
}

struct Annihilated {
  double exponent;
  double coef;
};

struct PathResult {
  GenSeries series;
  std::vector<Annihilated> annihilated;
};

PathResult via_rl(const GenSeries& f, double k) {
  PathResult r{rl_series(f, k), {}};
  for (const auto& step : rl_trace(f, k))
    if (step.annihilated) r.annihilated.push_back({step.input.exponent, step.input.coef});
  return r;
}

PathResult via_lifted(const GenSeries& f, double k) {
  const LiftedSeq shifted = shift(lift_series(f), k);
  PathResult r{project(shifted), {}};
  for (const auto& [j, v] : shifted.values()) {
    const double t = (Offset::integer(j) - shifted.offset()).value();
    if (is_gamma_pole(t + 1.0)) r.annihilated.push_back({t + k, v * recip_gamma(t + k + 1.0)});
  }
  return r;
}

nlohmann::json annihilated_json(const std::vector<Annihilated>& list, double k) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : list)
    arr.push_back({{"exp", a.exponent}, {"coef", a.coef}, {"alpha_plus_1_minus_k", a.exponent + 1.0 - k}});
  return arr;
}

void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct DerivOptions {
  InputOptions in;
  double k = 0.0;
  std::string via = "rl";
  bool compare_paths = false;
  std::vector<double> at;
  std::string format = "pretty";
};

int cmd_deriv(const DerivOptions& o, std::ostream& out) {
  const GenSeries f = load_series(o.in);
  const Format fmt = kFormats.at(o.format);

  if (o.compare_paths) {
    const PathResult rl = via_rl(f, o.k);
    const PathResult lifted = via_lifted(f, o.k);
    std::vector<double> exps;
    for (const auto& t : rl.series.terms()) exps.push_back(t.exponent);
    for (const auto& t : lifted.series.terms())
      if (rl.series.coef_at(t.exponent) == 0.0) exps.push_back(t.exponent);
    std::sort(exps.begin(), exps.end());
    struct Row { double exp, rl, lifted, diff; };
    std::vector<Row> rows;
    for (double e : exps) {
      const double a = rl.series.coef_at(e), b = lifted.series.coef_at(e);
      rows.push_back({e, a, b, std::abs(a - b)});
    }
    if (fmt == Format::Json) {
      nlohmann::json diff = nlohmann::json::array();
      for (const auto& r : rows)
        diff.push_back({{"exp", r.exp}, {"rl", r.rl}, {"lifted", r.lifted}, {"abs_diff", r.diff}});
      print_json(out, {{"input", to_json(f)}, {"k", o.k}, {"rl", to_json(rl.series)},
                       {"lifted", to_json(lifted.series)}, {"terms", diff}});
    } else if (fmt == Format::Csv) {
      out << "exp,rl,lifted,abs_diff\n";
      for (const auto& r : rows)
        out << format_double(r.exp) << ',' << format_double(r.rl) << ','
            << format_double(r.lifted) << ',' << format_double(r.diff) << '\n';
    } else {
      out << "f      = " << pretty(f) << '\n'
          << "k      = " << format_double(o.k) << '\n'
          << std::left << std::setw(24) << "exponent" << std::setw(26) << "rl" << std::setw(26)
          << "lifted" << "abs_diff\n";
      for (const auto& r : rows)
        out << std::setw(24) << format_double(r.exp) << std::setw(26) << format_double(r.rl)
            << std::setw(26) << format_double(r.lifted) << format_double(r.diff) << '\n';
      for (const auto& a : rl.annihilated)
        out << "rl: term " << format_double(a.coef) << "*x^" << format_double(a.exponent)
            << " -> " << kernel_note(a.exponent, o.k) << '\n';
    }
    return kOk;
  }

  const PathResult r = o.via == "lifted" ? via_lifted(f, o.k) : via_rl(f, o.k);
  std::vector<std::pair<double, double>> values;
  for (double x : o.at) values.emplace_back(x, series_eval(r.series, x));

  if (fmt == Format::Json) {
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& [x, v] : values) vals.push_back({{"x", x}, {"value", v}});
    print_json(out, {{"input", to_json(f)},
                     {"k", o.k},
                     {"via", o.via},
                     {"result", to_json(r.series)},
                     {"annihilated", annihilated_json(r.annihilated, o.k)},
                     {"values", vals}});
  } else if (fmt == Format::Csv) {
    if (!values.empty()) {
      out << "x,value\n";
      for (const auto& [x, v] : values) out << format_double(x) << ',' << format_double(v) << '\n';
    } else {
      out << "exp,coef\n";
      for (const auto& t : r.series.terms())
        out << format_double(t.exponent) << ',' << format_double(t.coef) << '\n';
    }
  } else {
    out << "f = " << pretty(f) << '\n';
    out << "D^" << format_double(o.k) << " f (via " << o.via << ") = " << pretty(r.series) << '\n';
    for (const auto& a : r.annihilated)
      out << "  term " << format_double(a.coef) << "*x^" << format_double(a.exponent) << " -> "
          << kernel_note(a.exponent, o.k) << '\n';
    for (const auto& [x, v] : values)
      out << "value at x = " << format_double(x) << ": " << format_double(v) << '\n';
  }
  return kOk;
}

struct LiftOptions {
  InputOptions in;
  double k = 0.0;
  std::string format = "json";
};

int cmd_lift(const LiftOptions& o, std::ostream& out) {
  const LiftedSeq rho = shift(lift_series(load_series(o.in)), o.k);
  switch (kFormats.at(o.format)) {
  case Format::Csv:
    out << "index,value\n";
    for (const auto& [j, v] : rho.values()) out << j << ',' << format_double(v) << '\n';
    break;
  case Format::Pretty:
    out << "basepoint = " << format_double(rho.basepoint()) << '\n'
        << "offset    = " << format_double(rho.offset().value()) << '\n';
    for (const auto& [j, v] : rho.values())
      out << "  v(" << j << ") = " << format_double(v) << '\n';
    break;
  case Format::Json: print_json(out, to_json(rho)); break;
  }
  return kOk;
}

struct ProjectOptions {
  std::string file;
  double k = 0.0;
  std::string format = "json";
};

int cmd_project(const ProjectOptions& o, std::ostream& out) {
  const GenSeries s = project(shift(lifted_from_json(read_json_file(o.file)), o.k));
  switch (kFormats.at(o.format)) {
  case Format::Csv:
    out << "exp,coef\n";
    for (const auto& t : s.terms())
      out << format_double(t.exponent) << ',' << format_double(t.coef) << '\n';
    break;
  case Format::Pretty: out << pretty(s) << '\n'; break;
  case Format::Json: print_json(out, to_json(s)); break;
  }
  return kOk;
}

struct VerifyOptions {
  std::string suite = "all";
  VerifyConfig cfg;
  std::string format = "pretty";
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const auto results = run_verify(o.suite, o.cfg);
  const bool all_pass =
      std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed(); });
  double worst = 0.0;
  for (const auto& r : results) worst = std::max(worst, r.max_residual);

  switch (kFormats.at(o.format)) {
  case Format::Json: {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results)
      arr.push_back({{"suite", r.name},
                     {"checks", r.checks},
                     {"failures", r.failures},
                     {"max_residual", r.max_residual},
                     {"tolerance", r.tolerance},
                     {"pass", r.passed()},
                     {"first_failure", r.first_failure}});
    print_json(out, {{"suites", arr}, {"all_pass", all_pass}, {"max_residual", worst}});
    break;
  }
  case Format::Csv:
    out << "suite,checks,failures,max_residual,tolerance,pass\n";
    for (const auto& r : results)
      out << r.name << ',' << r.checks << ',' << r.failures << ',' << format_double(r.max_residual)
          << ',' << format_double(r.tolerance) << ',' << (r.passed() ? "true" : "false") << '\n';
    break;
  case Format::Pretty:
    out << std::left << std::setw(10) << "suite" << std::setw(9) << "checks" << std::setw(10)
        << "failures" << std::setw(26) << "max_residual" << std::setw(10) << "tolerance"
        << "result\n";
    for (const auto& r : results) {
      std::ostringstream tol;
      tol << r.tolerance;
      out << std::setw(10) << r.name << std::setw(9) << r.checks << std::setw(10) << r.failures
          << std::setw(26) << format_double(r.max_residual) << std::setw(10) << tol.str()
          << (r.passed() ? "PASS" : "FAIL") << '\n';
      if (!r.passed()) out << "  first failure: " << r.first_failure << '\n';
    }
    if (all_pass)
      out << "all identities pass, max residual " << format_double(worst) << " <= 1e-10\n";
    else
      out << "verification FAILED\n";
    break;
  }
  return all_pass ? kOk : kFailure;
}

struct OracleOptions {
  InputOptions in;
  double k = 0.0;
  std::vector<double> xs;
  QuadratureConfig cfg;
  std::string format = "csv";
};

int cmd_oracle(const OracleOptions& o, std::ostream& out, std::ostream& err) {
  const EvalTable table = compare(load_series(o.in), o.k, o.xs, o.cfg);
  for (const auto& r : table)
    if (r.tail > std::max(o.cfg.abs_tol, o.cfg.rel_tol * std::abs(r.termwise)))
      err << "warning: truncation tail " << format_double(r.tail) << " at x = "
          << format_double(r.x) << "; raise --order for a faithful expansion\n";
  switch (kFormats.at(o.format)) {
  case Format::Csv: write_csv(out, table); break;
  case Format::Json: {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : table)
      arr.push_back({{"x", r.x}, {"termwise", r.termwise}, {"oracle", r.oracle}, {"abs_diff", r.abs_diff}});
    print_json(out, arr);
    break;
  }
  case Format::Pretty:
    out << std::left << std::setw(24) << "x" << std::setw(26) << "termwise" << std::setw(26)
        << "oracle" << "abs_diff\n";
    for (const auto& r : table)
      out << std::setw(24) << format_double(r.x) << std::setw(26) << format_double(r.termwise)
          << std::setw(26) << format_double(r.oracle) << format_double(r.abs_diff) << '\n';
    break;
  }
  return kOk;
}

struct KernelOptions {
  InputOptions in;
  double k = 0.0;
  std::string format = "pretty";
};

int cmd_kernel(const KernelOptions& o, std::ostream& out) {
  const GenSeries f = load_series(o.in);
  const Format fmt = kFormats.at(o.format);
  nlohmann::json arr = nlohmann::json::array();
  if (fmt == Format::Csv) out << "exp,coef,alpha_plus_1_minus_k,kernel\n";
  for (const auto& t : f.terms()) {
    const bool in_kernel = rl_kernel_predicate(t.exponent, o.k);
    const double shifted = t.exponent + 1.0 - o.k;
    if (fmt == Format::Json)
      arr.push_back({{"exp", t.exponent}, {"coef", t.coef}, {"alpha_plus_1_minus_k", shifted},
                     {"kernel", in_kernel}});
    else if (fmt == Format::Csv)
      out << format_double(t.exponent) << ',' << format_double(t.coef) << ','
          << format_double(shifted) << ',' << (in_kernel ? "true" : "false") << '\n';
    else
      out << format_double(t.coef) << "*x^" << format_double(t.exponent) << ": α+1−k = "
          << format_double(shifted) << (in_kernel ? "  in kernel" : "  not in kernel") << '\n';
  }
  if (fmt == Format::Json) print_json(out, {{"k", o.k}, {"terms", arr}});
  return kOk;
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"pretty", "json", "csv"}))
      ->capture_default_str();
}

// Restores process-wide settings touched by a command.
class SettingsGuard {
public:
  SettingsGuard() : tol_(integer_tolerance()), perturb_(testing::ratio_perturbation()) {}
  ~SettingsGuard() {
    set_integer_tolerance(tol_);
    testing::set_ratio_perturbation(perturb_);
  }

private:
  double tol_;
  double perturb_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  SettingsGuard guard;

  CLI::App app{"fraclift: commutative fractional derivatives on analytic functions"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::optional<double> int_tol;
  double perturb = 0.0;
  app.add_option("--int-tol", int_tol,
                 "Integer-detection tolerance for poles and lattices (env FRACLIFT_TOL)");
  // Verification-sensitivity hook; deliberately undocumented in --help.
  app.add_option("--perturb-gamma-ratio", perturb)->group("");

  DerivOptions deriv;
  auto* c_deriv = app.add_subcommand("deriv", "Fractional derivative of order k");
  add_input_options(c_deriv, deriv.in);
  c_deriv->add_option("--k,-k", deriv.k, "Order (negative: fractional integral)")->required();
  c_deriv->add_option("--via", deriv.via, "Computation path")
      ->check(CLI::IsMember({"rl", "lifted"}))
      ->capture_default_str();
  c_deriv->add_flag("--compare-paths", deriv.compare_paths, "Print both paths with a diff column");
  c_deriv->add_option("--at", deriv.at, "Evaluate the result at these points");
  add_format(c_deriv, deriv.format);

  LiftOptions lift;
  auto* c_lift = app.add_subcommand("lift", "Lift a series into the shifted-lattice space");
  add_input_options(c_lift, lift.in);
  c_lift->add_option("--k,-k", lift.k, "Shift applied after lifting")->default_val(0.0);
  add_format(c_lift, lift.format);

  ProjectOptions proj;
  auto* c_proj = app.add_subcommand("project", "Project a lifted sequence back to a series");
  c_proj->add_option("--file,-f", proj.file, "Lifted-sequence JSON file")->required();
  c_proj->add_option("--k,-k", proj.k, "Shift applied before projecting")->default_val(0.0);
  add_format(c_proj, proj.format);

  VerifyOptions ver;
  auto* c_ver = app.add_subcommand("verify", "Run the identity suites");
  c_ver->add_option("--suite", ver.suite, "Suite name or 'all'")->capture_default_str();
  c_ver->add_option("--order,-n", ver.cfg.order, "Jet order")->capture_default_str()->check(CLI::PositiveNumber);
  c_ver->add_option("--cases", ver.cfg.cases, "Random instances per suite")->capture_default_str()->check(CLI::PositiveNumber);
  c_ver->add_option("--seed", ver.cfg.seed, "Random seed")->capture_default_str();
  add_format(c_ver, ver.format);

  OracleOptions orc;
  auto* c_orc = app.add_subcommand("oracle-compare", "Termwise power rule vs numerical quadrature");
  add_input_options(c_orc, orc.in);
  c_orc->add_option("--k,-k", orc.k, "Order")->required();
  c_orc->add_option("--xs", orc.xs, "Evaluation points")->required()->delimiter(',');
  c_orc->add_option("--abs-tol", orc.cfg.abs_tol)->capture_default_str();
  c_orc->add_option("--rel-tol", orc.cfg.rel_tol)->capture_default_str();
  c_orc->add_option("--max-subdivisions", orc.cfg.max_subdivisions)->capture_default_str();
  c_orc->add_option("--fd-step", orc.cfg.fd_step)->capture_default_str();
  add_format(c_orc, orc.format);

  KernelOptions ker;
  auto* c_ker = app.add_subcommand("kernel-check", "Kernel predicate per term");
  add_input_options(c_ker, ker.in);
  c_ker->add_option("--k,-k", ker.k, "Order")->required();
  add_format(c_ker, ker.format);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (const char* env = std::getenv("FRACLIFT_TOL"); env && !int_tol) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0') throw DomainError(std::string("bad FRACLIFT_TOL '") + env + "'");
      set_integer_tolerance(v);
    }
    if (int_tol) set_integer_tolerance(*int_tol);
    testing::set_ratio_perturbation(perturb);

    if (c_deriv->parsed()) return cmd_deriv(deriv, out);
    if (c_lift->parsed()) return cmd_lift(lift, out);
    if (c_proj->parsed()) return cmd_project(proj, out);
    if (c_ver->parsed()) return cmd_verify(ver, out);
    if (c_orc->parsed()) return cmd_oracle(orc, out, err);
    if (c_ker->parsed()) return cmd_kernel(ker, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const LatticeError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BasepointMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

} // namespace fraclift::cli
