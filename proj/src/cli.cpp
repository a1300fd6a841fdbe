#include "besselcert/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "besselcert/errors.hpp"
#include "besselcert/ratios.hpp"
#include "besselcert/suite.hpp"
#include "besselcert/zeros.hpp"

namespace besselcert {

namespace {

using Json = nlohmann::json;
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

// Tabular result of one command: fixed columns, one row per grid point or item.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> violations;
  /// Extra free-form lines for the text format only.
  std::vector<std::string> notes;
};

Cell optional_cell(const std::optional<bool>& v) { return v ? Cell{*v} : Cell{}; }

std::string number17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::string csv_field(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return std::isnan(v) ? "" : number17(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    }
  };
  return std::visit(Visitor{}, c);
}

std::string text_field(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "-";
  if (const double* v = std::get_if<double>(&c)) return number17(*v);
  return csv_field(c);
}

Json json_cell(const Cell& c) {
  struct Visitor {
    Json operator()(std::monostate) const { return nullptr; }
    Json operator()(double v) const { return std::isfinite(v) ? Json(v) : Json(nullptr); }
    Json operator()(long long v) const { return v; }
    Json operator()(bool v) const { return v; }
    Json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = std::string(to_string(c.command));
  auto put = [&j](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  switch (c.command) {
    case Command::Eval:
      j["family"] = std::string(to_string(c.family));
      put("nu", c.nu);
      j["order"] = c.order;
      break;
    case Command::Ratio:
      put("nu", c.nu);
      break;
    case Command::Zero:
      put("nu", c.nu);
      j["n"] = c.n;
      j["count"] = c.count;
      break;
    case Command::Scan:
      j["target"] = std::string(to_string(c.target));
      put("nu", c.nu);
      if (c.expect) j["expect"] = *c.expect == Sign::Negative ? "negative" : "positive";
      break;
    case Command::Critical:
      put("nu", c.nu);
      if (c.kind) j["kind"] = std::string(to_string(*c.kind));
      break;
    case Command::Corput:
      j["family"] = std::string(to_string(c.corput_family));
      put("nu", c.nu);
      put("alpha", c.alpha);
      put("a", c.a);
      put("b", c.b);
      if (!c.a) {
        j["pairs"] = c.pairs;
        j["seed"] = c.seed;
      }
      break;
    case Command::Suite:
      j["pairs"] = c.pairs;
      j["seed"] = c.seed;
      break;
  }
  if (c.command == Command::Eval || c.command == Command::Ratio || c.command == Command::Scan) {
    put("x", c.x);
    put("lo", c.lo);
    put("hi", c.hi);
    if (!c.x) j["points"] = c.grid_points;
  }
  return j;
}

void render(const RunConfig& config, const Report& r, std::ostream& out) {
  switch (config.format) {
    case OutputFormat::Json: {
      Json j;
      j["command"] = std::string(to_string(config.command));
      j["config"] = config_json(config);
      j["results"] = Json::array();
      for (const auto& row : r.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < r.columns.size(); ++i) obj[r.columns[i]] = json_cell(row[i]);
        j["results"].push_back(std::move(obj));
      }
      j["violations"] = r.violations;
      out << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv: {
      for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
      out << '\n';
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << '\n';
      }
      break;
    }
    case OutputFormat::Text: {
      std::vector<std::vector<std::string>> cells;
      std::vector<std::size_t> width(r.columns.size());
      for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
      for (const auto& row : r.rows) {
        auto& line = cells.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
          line.push_back(text_field(row[i]));
          width[i] = std::max(width[i], line.back().size());
        }
      }
      auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
          out << line[i];
          if (i + 1 < line.size()) out << std::string(width[i] - line[i].size() + 2, ' ');
        }
        out << '\n';
      };
      emit(r.columns);
      for (const auto& line : cells) emit(line);
      for (const auto& note : r.notes) out << note << '\n';
      for (const auto& v : r.violations) out << "violation: " << v << '\n';
      out << (r.violations.empty() ? "ok" : std::to_string(r.violations.size()) + " violation(s)") << '\n';
      break;
    }
  }
}

double required_nu(const RunConfig& c) {
  if (!c.nu) throw DomainError("--nu is required for " + std::string(to_string(c.command)));
  return *c.nu;
}

std::vector<double> points_of(const RunConfig& c, double default_hi) {
  if (c.x) return {*c.x};
  const double hi = c.hi.value_or(default_hi);
  return geometric_grid({c.lo.value_or(0.0), hi, true, false}, c.grid_points);
}

Report run_eval(const RunConfig& c) {
  const double nu = required_nu(c);
  Report r;
  r.columns = {"x", "value", "abs_error_bound", "terms_used"};
  for (double x : points_of(c, kMaxArgument)) {
    const auto e = eval_normalized(c.family, nu, x, c.order);
    r.rows.push_back({x, e.value, e.abs_error_bound, static_cast<long long>(e.terms_used)});
  }
  return r;
}

Report run_ratio(const RunConfig& c) {
  const double nu = required_nu(c);
  Report r;
  r.columns = {"x", "R", "y", "Q", "q_prime", "segura_slack", "amos_slack"};
  for (double x : points_of(c, kMaxArgument)) {
    const auto s = ratio_state(nu, x);
    Cell segura;
    Cell amos;
    if (nu > 0.0) {
      const auto b = bound_segura(nu, x);
      segura = b.slack;
      if (!b.holds) r.violations.push_back("Segura bound fails at x = " + number17(x));
    }
    if (nu >= 0.0) {
      const auto b = bound_amos(nu, x);
      amos = b.slack;
      if (!b.holds) r.violations.push_back("Amos bound fails at x = " + number17(x));
    }
    r.rows.push_back({x, s.R, s.y, s.Q, q_prime(nu, x), segura, amos});
  }
  return r;
}

Report run_zero(const RunConfig& c) {
  const double nu = required_nu(c);
  Report r;
  r.columns = {"nu", "n", "value", "residual", "bracket_width"};
  std::vector<BesselZero> zeros;
  if (c.count > 1) {
    zeros = bessel_zeros(nu, c.count);
  } else {
    zeros.push_back(bessel_zero(nu, c.n));
  }
  for (const auto& z : zeros) r.rows.push_back({z.nu, static_cast<long long>(z.n), z.value, z.residual, z.bracket_width});
  return r;
}

Report run_scan(const RunConfig& c) {
  const double nu = required_nu(c);
  const double end = target_domain_end(c.target, nu);
  const bool open_end = c.target == Target::J || c.target == Target::MinusJPrime;
  const double hi = c.hi.value_or(end);
  const Interval interval{c.lo.value_or(0.0), hi, true, open_end && hi >= end};
  const auto report = scan_concavity(c.target, nu, interval, c.grid_points);
  const Sign expected = c.expect.value_or(c.target == Target::I ? Sign::Positive : Sign::Negative);

  Report r;
  r.columns = {"x", "d2", "certified", "sign_change_after"};
  std::size_t next_change = 0;
  for (const auto& p : report.grid) {
    bool change = false;
    if (next_change < report.sign_changes.size() && report.sign_changes[next_change].lo == p.x) {
      change = true;
      ++next_change;
    }
    const bool ok = certified(p.d2, expected);
    if (!ok) r.violations.push_back("d2 = " + number17(p.d2) + " at x = " + number17(p.x));
    r.rows.push_back({p.x, p.d2, ok, change});
  }
  for (const auto& b : report.sign_changes) {
    r.notes.push_back("sign change in [" + number17(b.lo) + ", " + number17(b.hi) + "]");
  }
  return r;
}

Report run_critical(const RunConfig& c) {
  const double nu = required_nu(c);
  const CriticalKind kind = c.kind.value_or(nu > -0.5 ? CriticalKind::XNu : CriticalKind::ZNu);
  Report r;
  r.columns = {"kind", "nu", "value", "bracket_lo", "bracket_hi", "lower_witness"};
  try {
    const auto cp = kind == CriticalKind::XNu ? find_x_nu(nu) : find_z_nu(nu);
    r.rows.push_back({std::string(to_string(cp.kind)), cp.nu, cp.value, cp.bracket.lo, cp.bracket.hi,
                      cp.lower_witness});
  } catch (const FalsificationError& e) {
    r.violations.push_back(e.what());
  }
  return r;
}

Report run_corput(const RunConfig& c) {
  std::optional<double> parameter = c.corput_family == CorputFamily::Gamma && c.alpha ? c.alpha : c.nu;
  std::vector<CorputCertificate> certificates;
  if (c.a || c.b) {
    if (!c.a || !c.b) throw DomainError("--a and --b must be given together");
    const bool needs_order = !fixed_order(c.corput_family) && c.corput_family != CorputFamily::Normal;
    if (needs_order && !parameter) throw DomainError("--nu (or --alpha) is required for a single pair");
    certificates.push_back(corput_check(c.corput_family, parameter.value_or(0.0), *c.a, *c.b));
  } else {
    certificates = random_certificates(c.corput_family, parameter, c.pairs, c.seed);
  }
  Report r;
  r.columns = {"family", "nu_or_alpha", "a", "b", "lhs", "rhs", "margin", "holds", "domain_ok"};
  for (const auto& cert : certificates) {
    if (cert.holds == false) {
      r.violations.push_back("inequality fails at a = " + number17(cert.a) + ", b = " + number17(cert.b));
    }
    r.rows.push_back({std::string(to_string(cert.family)), cert.nu_or_alpha, cert.a, cert.b, cert.lhs, cert.rhs,
                      cert.margin, optional_cell(cert.holds), cert.domain_ok});
  }
  return r;
}

Report run_suite_command(const RunConfig& c, bool with_timing) {
  const auto results = run_suite({c.seed, c.pairs});
  Report r;
  r.columns = {"criterion", "name", "passed"};
  if (with_timing) r.columns.push_back("seconds");
  r.columns.push_back("detail");
  for (const auto& check : results) {
    std::vector<Cell> row{static_cast<long long>(check.criterion), check.name, check.passed};
    if (with_timing) {
      char buffer[16];
      std::snprintf(buffer, sizeof buffer, "%.3f", check.seconds);
      row.emplace_back(std::string(buffer));
    }
    row.emplace_back(check.detail);
    r.rows.push_back(std::move(row));
    if (!check.passed) r.violations.push_back(std::to_string(check.criterion) + " " + check.name);
  }
  return r;
}

Report execute(const RunConfig& c) {
  if (c.grid_points < 16) throw DomainError("--points must be >= 16");
  switch (c.command) {
    case Command::Eval:
      return run_eval(c);
    case Command::Ratio:
      return run_ratio(c);
    case Command::Zero:
      return run_zero(c);
    case Command::Scan:
      return run_scan(c);
    case Command::Critical:
      return run_critical(c);
    case Command::Corput:
      return run_corput(c);
    case Command::Suite:
      // timings vary between runs, so only the text format reports them
      return run_suite_command(c, c.format == OutputFormat::Text);
  }
  throw DomainError("unknown command");
}

template <class T, class Parse>
std::function<void(const std::string&)> parse_into(T& field, Parse parse) {
  return [&field, parse](const std::string& text) {
    try {
      field = parse(text);
    } catch (const std::exception& e) {
      throw CLI::ValidationError(e.what());
    }
  };
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Eval:
      return "eval";
    case Command::Ratio:
      return "ratio";
    case Command::Zero:
      return "zero";
    case Command::Scan:
      return "scan";
    case Command::Critical:
      return "critical";
    case Command::Corput:
      return "corput";
    case Command::Suite:
      return "suite";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Text:
      return "text";
    case OutputFormat::Json:
      return "json";
    case OutputFormat::Csv:
      return "csv";
  }
  return "?";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    report = execute(config);
  } catch (const FalsificationError& e) {
    err << "violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << *config.output_path << " for writing\n";
      return kExitUsage;
    }
    render(config, report, file);
  } else {
    render(config, report, out);
  }
  for (const auto& v : report.violations) {
    if (config.output_path || config.format != OutputFormat::Text) err << "violation: " << v << '\n';
  }
  return report.violations.empty() ? kExitOk : kExitViolation;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Certifies log-concavity and van der Corput type inequalities for Bessel kernels", "besselcert"};
  app.require_subcommand(1);

  auto add_common = [&config](CLI::App* sub) {
    sub->add_option_function<std::string>(
           "--format",
           parse_into(config.format,
                      [](const std::string& s) {
                        if (s == "text") return OutputFormat::Text;
                        if (s == "json") return OutputFormat::Json;
                        if (s == "csv") return OutputFormat::Csv;
                        throw DomainError("format must be text, json or csv");
                      }),
           "text, json or csv")
        ->type_name("FMT");
    sub->add_option("--output", config.output_path, "Write data to this file instead of stdout");
  };
  auto add_grid = [&config](CLI::App* sub) {
    sub->add_option("--lo", config.lo, "Lower grid end (0 means the 0.01 standoff)");
    sub->add_option("--hi", config.hi, "Upper grid end");
    sub->add_option("--points", config.grid_points, "Geometric grid size (>= 16)");
  };
  auto add_nu = [&config](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--nu", config.nu, "Order");
    if (required) opt->required();
  };

  auto* eval = app.add_subcommand("eval", "Normalized kernel values");
  eval->add_option_function<std::string>("--family", parse_into(config.family, parse_family), "I, J or K")
      ->required();
  add_nu(eval, true);
  eval->add_option("--order", config.order, "Derivative order 0, 1 or 2");
  eval->add_option("--x", config.x, "Single argument instead of a grid");
  add_grid(eval);

  auto* ratio = app.add_subcommand("ratio", "R, y, Q, Q' and the Segura/Amos slacks");
  add_nu(ratio, true);
  ratio->add_option("--x", config.x, "Single argument instead of a grid");
  add_grid(ratio);

  auto* zero = app.add_subcommand("zero", "Positive zeros of J_nu");
  add_nu(zero, true);
  zero->add_option("--n", config.n, "Zero index");
  zero->add_option("--count", config.count, "Return the first COUNT zeros");

  auto* scan = app.add_subcommand("scan", "Sign scan of (log g)''");
  scan->add_option_function<std::string>("--target", parse_into(config.target, parse_target),
                                         "I, I-prime, J, minus-J-prime or minus-K-prime")
      ->required();
  add_nu(scan, true);
  add_grid(scan);
  scan->add_option_function<std::string>("--expect",
                                         parse_into(config.expect,
                                                    [](const std::string& s) -> std::optional<Sign> {
                                                      if (s == "negative") return Sign::Negative;
                                                      if (s == "positive") return Sign::Positive;
                                                      throw DomainError("expect must be negative or positive");
                                                    }),
                                         "Expected sign of d2 (default: positive for I, negative otherwise)");

  auto* critical = app.add_subcommand("critical", "Locate x_nu or z_nu");
  add_nu(critical, true);
  critical->add_option_function<std::string>("--kind",
                                             parse_into(config.kind,
                                                        [](const std::string& s) -> std::optional<CriticalKind> {
                                                          if (s == "x_nu") return CriticalKind::XNu;
                                                          if (s == "z_nu") return CriticalKind::ZNu;
                                                          throw DomainError("kind must be x_nu or z_nu");
                                                        }),
                                             "x_nu or z_nu (default from nu)");

  auto* corput = app.add_subcommand("corput", "Van der Corput certificates");
  corput->add_option_function<std::string>("--family", parse_into(config.corput_family, parse_corput_family),
                                           "Inequality family")
      ->required();
  add_nu(corput, false);
  corput->add_option("--alpha", config.alpha, "Gamma shape");
  corput->add_option("--pairs", config.pairs, "Random pairs");
  corput->add_option("--seed", config.seed, "Random seed");
  corput->add_option("--a", config.a, "Single pair, first point");
  corput->add_option("--b", config.b, "Single pair, second point");

  auto* suite = app.add_subcommand("suite", "Run every named check");
  suite->add_option("--seed", config.seed, "Random seed");
  suite->add_option("--pairs", config.pairs, "Random pairs per inequality family (default 1000)");

  for (auto* sub : {eval, ratio, zero, scan, critical, corput, suite}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  const std::pair<CLI::App*, Command> commands[] = {
      {eval, Command::Eval},         {ratio, Command::Ratio},   {zero, Command::Zero},   {scan, Command::Scan},
      {critical, Command::Critical}, {corput, Command::Corput}, {suite, Command::Suite},
  };
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) config.command = command;
  }
  if (config.command == Command::Suite && suite->count("--pairs") == 0) config.pairs = 1000;
  return run(config, out, err);
}

}  // namespace besselcert
