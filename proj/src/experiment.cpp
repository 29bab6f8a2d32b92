#include "zeno/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "zeno/errors.hpp"
#include "zeno/master_equation.hpp"

namespace zeno {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
  std::string out(trim(key));
  while (!out.empty() && out.front() == '-') out.erase(out.begin());
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

[[noreturn]] void config_fail(std::string_view key, std::string_view message) {
  throw ConfigError("config field '" + std::string(key) + "': " + std::string(message));
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  // from_chars for double is available in libstdc++ 11.
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    config_fail(key, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

long parse_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    config_fail(key, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  config_fail(key, "expected true/false, got '" + std::string(text) + "'");
}

std::string round_trip(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

ComplexMatrix hermitized_unit_trace(const ComplexMatrix& rho) {
  ComplexMatrix out = 0.5 * (rho + rho.adjoint());
  return out / out.trace().real();
}

// Curves handed to the detector must stop at one Poincare time.
SurvivalCurve recurrence_prefix(const SurvivalCurve& c) {
  SurvivalCurve out;
  for (std::size_t i = 0; i < c.size() && c.tau[i] <= 1.0 + 1e-12; ++i) {
    out.tau.push_back(c.tau[i]);
    out.p0.push_back(c.p0[i]);
    out.p1.push_back(c.p1[i]);
    out.p2.push_back(c.p2[i]);
  }
  return out;
}

CurveResult projective_curve(const RabiModel& model, const ProjectorSet& set, int n,
                             const std::vector<double>& grid, double window,
                             const DensityMatrix& rho0, const Tolerances& tol) {
  const DiscreteSchedule schedule(n, window);
  CurveResult r;
  r.n = n;
  r.curve = survival_curve(model, set, schedule, grid, rho0);
  const DensityMatrix final_state = evolve_with_measurements(model, set, schedule, rho0);
  const DensityReport check = check_density(final_state.matrix(), tol);
  r.defects.max_trace_defect = check.trace_defect;
  r.defects.min_eigenvalue = check.min_eigenvalue;
  r.defects.oracle_distance =
      max_abs_diff(closed_form_propagator(model, schedule.interval()),
                   hermitian_propagator(rwa_hamiltonian(model), schedule.interval(), tol));
  if (r.defects.oracle_distance > tol.oracle) {
    throw NumericalError("run_experiment: closed-form propagator disagrees with oracle");
  }
  return r;
}

CurveResult lindblad_curve(const RabiModel& model, const ProjectorSet& set, int n,
                           const std::vector<double>& grid, double t_poincare, double window,
                           double width, double weight, const DensityMatrix& rho0,
                           std::vector<std::string>& warnings) {
  const DiscreteSchedule schedule(n, window);
  const RateFunction rate = delta_train_rate(schedule.times(), width, weight, 0.0, window);
  for (const auto& w : rate.warnings()) warnings.push_back("n=" + std::to_string(n) + ": " + w);

  IntegrationOptions options;
  for (double tau : grid) {
    if (tau > 0.0) options.sample_times.push_back(std::min(tau * t_poincare, window));
  }
  const IntegrationResult result = integrate(rho0, model, set, rate, window, options);

  CurveResult r;
  r.n = n;
  r.curve.tau = grid;
  r.defects.integration_defect = std::max(result.trace_defect, result.hermiticity_defect);
  std::size_t next = 0;
  for (double tau : grid) {
    ComplexMatrix rho;
    if (tau > 0.0) {
      const ComplexMatrix& raw = result.samples.at(next++).rho;
      r.defects.integration_defect =
          std::max({r.defects.integration_defect, std::abs(raw.trace() - Complex(1.0, 0.0)),
                    hermiticity_defect(raw)});
      rho = hermitized_unit_trace(raw);
    } else {
      rho = rho0.matrix();
    }
    const DensityReport check = check_density(rho, 1e-6);
    r.defects.max_trace_defect = std::max(r.defects.max_trace_defect, check.trace_defect);
    r.defects.min_eigenvalue = std::min(r.defects.min_eigenvalue, check.min_eigenvalue);
    r.curve.p0.push_back(rho(0, 0).real());
    r.curve.p1.push_back(rho(1, 1).real());
    r.curve.p2.push_back(rho(2, 2).real());
  }
  r.curve.validate();
  return r;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::free: return "free";
    case Mode::projective: return "projective";
    case Mode::lindblad: return "lindblad";
  }
  return "unknown";
}

std::string to_string(ProjectorKind kind) {
  return kind == ProjectorKind::partial_01_vs_2 ? "partial" : "full";
}

void ExperimentConfig::validate() const {
  auto finite = [](const char* key, double v) {
    if (!std::isfinite(v)) config_fail(key, "must be finite");
  };
  finite("omega01", omega01);
  finite("omega12", omega12);
  finite("phi01", phi01);
  finite("phi12", phi12);
  if (omega01 < 0.0) config_fail("omega01", "must be >= 0");
  if (omega12 < 0.0) config_fail("omega12", "must be >= 0");
  if (omega01 == 0.0 && omega12 == 0.0) {
    config_fail("omega01", "omega01 and omega12 cannot both be 0 (no Poincare time)");
  }
  if (grid < 2) config_fail("grid", "must be >= 2");
  if (!std::isfinite(tau_max) || tau_max <= 0.0) config_fail("tau-max", "must be > 0");
  if (mode != Mode::free && n.empty()) config_fail("n", "at least one value required");
  for (int k : n) {
    if (k < 1) config_fail("n", "values must be >= 1");
  }
  if (!std::isfinite(weight) || weight <= 0.0) config_fail("weight", "must be > 0");
  if (!std::isfinite(width) || width <= 0.0) config_fail("width", "must be > 0");
  if (!std::isfinite(epsilon) || epsilon < 0.0) config_fail("epsilon", "must be >= 0");
  if (!(tolerances.unitarity > 0.0)) config_fail("tol-unitarity", "must be > 0");
  if (!(tolerances.positivity > 0.0)) config_fail("tol-positivity", "must be > 0");
  if (!(tolerances.oracle > 0.0)) config_fail("tol-oracle", "must be > 0");
}

void apply_setting(ExperimentConfig& c, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = normalize_key(raw_key);
  const std::string_view value = trim(raw_value);
  if (key == "omega01") {
    c.omega01 = parse_double(key, value);
  } else if (key == "omega12") {
    c.omega12 = parse_double(key, value);
  } else if (key == "phi01") {
    c.phi01 = parse_double(key, value);
  } else if (key == "phi12") {
    c.phi12 = parse_double(key, value);
  } else if (key == "projector") {
    if (value == "partial") {
      c.projector = ProjectorKind::partial_01_vs_2;
    } else if (value == "full") {
      c.projector = ProjectorKind::full_dephasing;
    } else {
      config_fail(key, "expected 'partial' or 'full'");
    }
  } else if (key == "n") {
    c.n.clear();
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      if (item.empty()) config_fail(key, "empty entry in list");
      const long v = parse_integer(key, item);
      if (v < 1 || v > 1'000'000) config_fail(key, "values must be in [1, 1000000]");
      c.n.push_back(static_cast<int>(v));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  } else if (key == "mode") {
    if (value == "free") {
      c.mode = Mode::free;
    } else if (value == "projective") {
      c.mode = Mode::projective;
    } else if (value == "lindblad") {
      c.mode = Mode::lindblad;
    } else {
      config_fail(key, "expected 'free', 'projective' or 'lindblad'");
    }
  } else if (key == "weight") {
    c.weight = parse_double(key, value);
  } else if (key == "width") {
    c.width = parse_double(key, value);
  } else if (key == "grid") {
    const long v = parse_integer(key, value);
    if (v < 2) config_fail(key, "must be >= 2");
    c.grid = static_cast<std::size_t>(v);
  } else if (key == "tau-max") {
    c.tau_max = parse_double(key, value);
  } else if (key == "epsilon") {
    c.epsilon = parse_double(key, value);
  } else if (key == "raw-time") {
    c.raw_time = parse_bool(key, value);
  } else if (key == "csv") {
    c.csv_dir = std::string(value);
  } else if (key == "svg") {
    c.svg_path = std::string(value);
  } else if (key == "report") {
    c.report_path = std::string(value);
  } else if (key == "tol-unitarity") {
    c.tolerances.unitarity = parse_double(key, value);
  } else if (key == "tol-positivity") {
    c.tolerances.positivity = parse_double(key, value);
  } else if (key == "tol-oracle") {
    c.tolerances.oracle = parse_double(key, value);
  } else {
    config_fail(key, "unknown key");
  }
}

void apply_config_text(ExperimentConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config field 'config': cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str());
}

std::string to_config_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "omega01 = " << round_trip(c.omega01) << "\n";
  os << "omega12 = " << round_trip(c.omega12) << "\n";
  os << "phi01 = " << round_trip(c.phi01) << "\n";
  os << "phi12 = " << round_trip(c.phi12) << "\n";
  os << "projector = " << to_string(c.projector) << "\n";
  os << "n = ";
  for (std::size_t i = 0; i < c.n.size(); ++i) os << (i ? "," : "") << c.n[i];
  os << "\n";
  os << "mode = " << to_string(c.mode) << "\n";
  os << "weight = " << round_trip(c.weight) << "\n";
  os << "width = " << round_trip(c.width) << "\n";
  os << "grid = " << c.grid << "\n";
  os << "tau-max = " << round_trip(c.tau_max) << "\n";
  os << "epsilon = " << round_trip(c.epsilon) << "\n";
  os << "raw-time = " << (c.raw_time ? "true" : "false") << "\n";
  os << "tol-unitarity = " << round_trip(c.tolerances.unitarity) << "\n";
  os << "tol-positivity = " << round_trip(c.tolerances.positivity) << "\n";
  os << "tol-oracle = " << round_trip(c.tolerances.oracle) << "\n";
  if (!c.csv_dir.empty()) os << "csv = " << c.csv_dir << "\n";
  if (!c.svg_path.empty()) os << "svg = " << c.svg_path << "\n";
  if (!c.report_path.empty()) os << "report = " << c.report_path << "\n";
  return os.str();
}

RunReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();

  RunReport report;
  report.config = config;
  const RabiModel model(config.omega01, config.omega12, config.phi01, config.phi12);
  report.t_poincare = poincare_time(model);
  const std::vector<double> grid = uniform_grid(config.grid, config.tau_max);
  const DensityMatrix rho0 = DensityMatrix::basis(3, 0);
  const Tolerances& tol = config.tolerances;

  report.free = survival_curve(model, std::nullopt, std::nullopt, grid, rho0);
  {
    const double t = 0.5 * report.t_poincare;
    report.free_defects.oracle_distance = max_abs_diff(
        closed_form_propagator(model, t), hermitian_propagator(rwa_hamiltonian(model), t, tol));
    if (report.free_defects.oracle_distance > tol.oracle) {
      throw NumericalError("run_experiment: closed-form propagator disagrees with oracle");
    }
    const DensityReport check = check_density(
        DensityMatrix::pure(pure_state_evolve(model, StateVector::basis(3, 0), t)).matrix(), tol);
    report.free_defects.max_trace_defect = check.trace_defect;
    report.free_defects.min_eigenvalue = check.min_eigenvalue;
  }

  if (config.mode != Mode::free) {
    const ProjectorSet set = projector_set(config.projector);
    const double window = config.tau_max * report.t_poincare;
    const double width = config.width * report.t_poincare;

    // Curves are independent; evaluate them concurrently and collect in order.
    std::vector<std::future<CurveResult>> jobs;
    std::vector<std::vector<std::string>> job_warnings(config.n.size());
    for (std::size_t i = 0; i < config.n.size(); ++i) {
      const int n = config.n[i];
      std::vector<std::string>* warnings = &job_warnings[i];
      if (config.mode == Mode::projective) {
        jobs.push_back(std::async(std::launch::async, [&, n] {
          return projective_curve(model, set, n, grid, window, rho0, tol);
        }));
      } else {
        jobs.push_back(std::async(std::launch::async, [&, n, warnings] {
          return lindblad_curve(model, set, n, grid, report.t_poincare, window, width,
                                config.weight, rho0, *warnings);
        }));
      }
    }
    const SurvivalCurve free_prefix = recurrence_prefix(report.free);
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      CurveResult r = jobs[i].get();
      r.verdict = detect_zeno_regime(free_prefix, recurrence_prefix(r.curve),
                                     DetectorOptions{config.epsilon});
      report.measured.push_back(std::move(r));
    }
    for (auto& w : job_warnings) {
      report.warnings.insert(report.warnings.end(), w.begin(), w.end());
    }
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_decimal(double value, int significant) {
  if (!std::isfinite(value)) throw std::invalid_argument("format_decimal: non-finite value");
  if (significant < 1) significant = 1;
  if (value == 0.0) return "0";

  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", significant - 1, value);
  const std::string s = buf;
  const bool negative = s[0] == '-';
  const auto e_pos = s.find('e');
  std::string digits;
  for (std::size_t i = negative ? 1 : 0; i < e_pos; ++i) {
    if (s[i] != '.') digits += s[i];
  }
  const int exponent = std::stoi(s.substr(e_pos + 1));

  std::string integer_part;
  std::string fraction;
  if (exponent >= 0) {
    const auto split = static_cast<std::size_t>(exponent) + 1;
    if (split >= digits.size()) {
      integer_part = digits + std::string(split - digits.size(), '0');
    } else {
      integer_part = digits.substr(0, split);
      fraction = digits.substr(split);
    }
  } else {
    integer_part = "0";
    fraction = std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
  }
  while (!fraction.empty() && fraction.back() == '0') fraction.pop_back();

  std::string out = negative ? "-" : "";
  out += integer_part;
  if (!fraction.empty()) out += "." + fraction;
  return out == "-0" ? "0" : out;
}

void write_curve_csv(std::ostream& out, const SurvivalCurve& curve,
                     std::optional<double> t_poincare) {
  out << (t_poincare ? "tau,t,P0,P1,P2\n" : "tau,P0,P1,P2\n");
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << format_decimal(curve.tau[i]) << ',';
    if (t_poincare) out << format_decimal(curve.tau[i] * *t_poincare) << ',';
    out << format_decimal(curve.p0[i]) << ',' << format_decimal(curve.p1[i]) << ','
        << format_decimal(curve.p2[i]) << '\n';
  }
}

SurvivalCurve read_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("read_curve_csv: missing header");
  bool with_t = false;
  if (line == "tau,t,P0,P1,P2") {
    with_t = true;
  } else if (line != "tau,P0,P1,P2") {
    throw ValidationError("read_curve_csv: unexpected header '" + line + "'");
  }
  SurvivalCurve curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> fields;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(parse_double("csv", rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (fields.size() != (with_t ? 5u : 4u)) {
      throw ValidationError("read_curve_csv: wrong field count in '" + line + "'");
    }
    const std::size_t o = with_t ? 1 : 0;
    curve.tau.push_back(fields[0]);
    curve.p0.push_back(fields[1 + o]);
    curve.p1.push_back(fields[2 + o]);
    curve.p2.push_back(fields[3 + o]);
  }
  return curve;
}

void write_svg(std::ostream& out, const RunReport& report) {
  constexpr double width = 800, height = 520;
  constexpr double left = 70, right = 170, top = 30, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const double tau_max = report.config.tau_max;
  auto x = [&](double tau) { return left + plot_w * tau / tau_max; };
  auto y = [&](double p) { return top + plot_h * (1.0 - p); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0)
      << "\" height=\"" << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(width, 0) << ' '
      << fixed(height, 0) << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes, ticks and grid.
  out << "<g stroke=\"#cccccc\" stroke-width=\"0.5\">\n";
  for (int i = 0; i <= 10; ++i) {
    const double tau = tau_max * i / 10.0;
    out << "<line x1=\"" << fixed(x(tau)) << "\" y1=\"" << fixed(y(0)) << "\" x2=\""
        << fixed(x(tau)) << "\" y2=\"" << fixed(y(1)) << "\"/>\n";
    out << "<line x1=\"" << fixed(x(0)) << "\" y1=\"" << fixed(y(i / 10.0)) << "\" x2=\""
        << fixed(x(tau_max)) << "\" y2=\"" << fixed(y(i / 10.0)) << "\"/>\n";
  }
  out << "</g>\n";
  out << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(plot_w)
      << "\" height=\"" << fixed(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<g text-anchor=\"middle\">\n";
  for (int i = 0; i <= 10; i += 2) {
    const double tau = tau_max * i / 10.0;
    out << "<text x=\"" << fixed(x(tau)) << "\" y=\"" << fixed(y(0) + 18) << "\">"
        << format_decimal(tau, 6) << "</text>\n";
  }
  out << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"" << fixed(height - 15)
      << "\">tau = t / T_P</text>\n";
  out << "</g>\n<g text-anchor=\"end\">\n";
  for (int i = 0; i <= 10; i += 2) {
    out << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(y(i / 10.0) + 4) << "\">"
        << format_decimal(i / 10.0, 6) << "</text>\n";
  }
  out << "</g>\n";
  out << "<text x=\"20\" y=\"" << fixed(top + plot_h / 2) << "\" transform=\"rotate(-90 20 "
      << fixed(top + plot_h / 2) << ")\" text-anchor=\"middle\">P0(tau)</text>\n";

  auto polyline = [&](const SurvivalCurve& c, const char* color, bool dashed) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\"";
    if (dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < c.size(); ++i) {
      out << (i ? " " : "") << fixed(x(c.tau[i])) << ',' << fixed(y(c.p0[i]));
    }
    out << "\"/>\n";
  };

  polyline(report.free, "black", false);
  for (std::size_t k = 0; k < report.measured.size(); ++k) {
    polyline(report.measured[k].curve, kPalette[k % std::size(kPalette)], true);
  }

  // Legend.
  const double lx = left + plot_w + 20;
  double ly = top + 10;
  out << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 30)
      << "\" y2=\"" << fixed(ly) << "\" stroke=\"black\" stroke-width=\"1.6\"/>\n";
  out << "<text x=\"" << fixed(lx + 38) << "\" y=\"" << fixed(ly + 4) << "\">free</text>\n";
  for (std::size_t k = 0; k < report.measured.size(); ++k) {
    ly += 22;
    out << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 30)
        << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << kPalette[k % std::size(kPalette)]
        << "\" stroke-width=\"1.6\" stroke-dasharray=\"6 4\"/>\n";
    out << "<text x=\"" << fixed(lx + 38) << "\" y=\"" << fixed(ly + 4) << "\">n = "
        << report.measured[k].n << "</text>\n";
  }
  out << "</svg>\n";
}

namespace {

nlohmann::json curve_json(const SurvivalCurve& c) {
  return {{"tau", c.tau}, {"P0", c.p0}, {"P1", c.p1}, {"P2", c.p2}};
}

nlohmann::json defects_json(const CurveDefects& d) {
  return {{"max_trace_defect", d.max_trace_defect},
          {"min_eigenvalue", d.min_eigenvalue},
          {"oracle_distance", d.oracle_distance},
          {"integration_defect", d.integration_defect}};
}

nlohmann::json verdict_json(const ZenoVerdict& v) {
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& i : v.intervals) {
    intervals.push_back({{"kind", to_string(i.kind)},
                         {"tau_begin", i.tau_begin},
                         {"tau_end", i.tau_end},
                         {"peak", i.peak}});
  }
  return {{"regime", to_string(v.regime)},
          {"displays_qze", v.displays(Regime::qze)},
          {"displays_ize", v.displays(Regime::ize)},
          {"margin", v.margin},
          {"intervals", intervals}};
}

}  // namespace

void write_report_json(std::ostream& out, const RunReport& report) {
  const ExperimentConfig& c = report.config;
  nlohmann::json j;
  j["config"] = {{"omega01", c.omega01},
                 {"omega12", c.omega12},
                 {"phi01", c.phi01},
                 {"phi12", c.phi12},
                 {"projector", to_string(c.projector)},
                 {"n", c.n},
                 {"mode", to_string(c.mode)},
                 {"weight", c.weight},
                 {"width", c.width},
                 {"grid", c.grid},
                 {"tau_max", c.tau_max},
                 {"epsilon", c.epsilon},
                 {"raw_time", c.raw_time},
                 {"tolerances",
                  {{"unitarity", c.tolerances.unitarity},
                   {"positivity", c.tolerances.positivity},
                   {"oracle", c.tolerances.oracle}}}};
  j["config_text"] = to_config_text(c);
  j["t_poincare"] = report.t_poincare;
  j["free"] = {{"curve", curve_json(report.free)}, {"defects", defects_json(report.free_defects)}};
  j["measured"] = nlohmann::json::array();
  for (const auto& m : report.measured) {
    j["measured"].push_back({{"n", m.n},
                             {"verdict", verdict_json(m.verdict)},
                             {"defects", defects_json(m.defects)},
                             {"curve", curve_json(m.curve)}});
  }
  j["warnings"] = report.warnings;
  j["wall_seconds"] = report.wall_seconds;
  out << j.dump(2) << '\n';
}

void emit_outputs(const RunReport& report) {
  const ExperimentConfig& c = report.config;
  auto open = [](const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    return f;
  };
  auto finish = [](std::ofstream& f, const std::filesystem::path& path) {
    f.flush();
    if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
  };
  const std::optional<double> t_col =
      c.raw_time ? std::optional<double>(report.t_poincare) : std::nullopt;

  if (!c.csv_dir.empty()) {
    const std::filesystem::path dir(c.csv_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
    auto write_one = [&](const std::string& name, const SurvivalCurve& curve) {
      const auto path = dir / name;
      auto f = open(path);
      write_curve_csv(f, curve, t_col);
      finish(f, path);
    };
    write_one("free.csv", report.free);
    for (const auto& m : report.measured) write_one("n" + std::to_string(m.n) + ".csv", m.curve);
  }
  if (!c.svg_path.empty()) {
    auto f = open(c.svg_path);
    write_svg(f, report);
    finish(f, c.svg_path);
  }
  if (!c.report_path.empty()) {
    auto f = open(c.report_path);
    write_report_json(f, report);
    finish(f, c.report_path);
  }
}

}  // namespace zeno
