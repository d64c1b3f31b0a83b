#include "raysplit_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <span>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "raysplit/analysis.hpp"
#include "raysplit/combinatorics.hpp"
#include "raysplit/errors.hpp"
#include "raysplit/graph.hpp"
#include "raysplit/model.hpp"
#include "raysplit/orbits.hpp"
#include "raysplit/spectrum.hpp"
#include "raysplit/trace.hpp"
#include "table.hpp"

namespace raysplit::cli {

namespace {

using ojson = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

const std::set<std::string> kCommands{"spectrum", "orbits", "trace", "fourier", "graph-check", "identity"};

std::string exact_number(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::string config_scalar(const nlohmann::json& value, const std::string& key) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer() || value.is_number_unsigned()) return value.dump();
  if (value.is_number_float()) return exact_number(value.get<double>());
  throw ValidationError("config", "unsupported value for '" + key + "'");
}

bool flag_given(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

/// Replaces --config PATH by the flags stored in the JSON file. Flags given
/// on the command line take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config requires a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  const auto doc = read_json_file(path);
  if (!doc.is_object()) throw ValidationError("config", path + " must hold a JSON object");
  const bool has_command = !rest.empty() && kCommands.count(rest.front()) != 0;
  std::vector<std::string> expanded;
  std::size_t insert_at = 0;
  if (has_command) {
    expanded.push_back(rest.front());
    insert_at = 1;
  } else if (doc.contains("command")) {
    expanded.push_back(config_scalar(doc.at("command"), "command"));
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") continue;
    const std::string flag = "--" + key;
    if (flag_given(rest, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) expanded.push_back(flag);
    } else if (value.is_array()) {
      expanded.push_back(flag);
      for (const auto& item : value) expanded.push_back(config_scalar(item, key));
    } else {
      expanded.push_back(flag);
      expanded.push_back(config_scalar(value, key));
    }
  }
  expanded.insert(expanded.end(), rest.begin() + static_cast<long>(insert_at), rest.end());
  return expanded;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const char* env = std::getenv("RAYSPLIT_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (*end != '\0' || value < 1 || value > 1024) {
    throw ValidationError("RAYSPLIT_THREADS", "must be an integer in [1, 1024]");
  }
  return static_cast<unsigned>(value);
}

double num(double x) { return round15(x); }

ojson potential_json(const ScaledStepPotential& pot) {
  ojson p;
  p["b"] = num(pot.b());
  p["lambda"] = num(pot.lambda());
  p["beta"] = num(pot.beta());
  p["omega1"] = num(pot.omega1());
  p["omega2"] = num(pot.omega2());
  p["r"] = num(pot.r());
  p["t"] = num(pot.t());
  return p;
}

ojson doubles_json(std::span<const double> xs) {
  auto a = ojson::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

ojson completeness_json(const CompletenessReport& c) {
  ojson j;
  j["weyl_tolerance"] = num(c.weyl_tolerance);
  j["max_deviation"] = num(c.max_deviation);
  j["worst_k"] = num(c.worst_k);
  j["scan_step"] = num(c.scan_step);
  j["refinements"] = c.refinements;
  j["near_degenerate"] = doubles_json(c.near_degenerate);
  return j;
}

struct Output {
  std::string out;
  std::string summary;
  std::string format;
};

void add_output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.out, "Table destination (stdout if omitted)");
  cmd->add_option("--summary", o.summary, "JSON summary destination (stdout when --out is set)");
  cmd->add_option("--format", o.format, "csv or json (default: from the --out extension)");
}

/// The table goes to --out or stdout. The summary goes to --summary, or to
/// stdout when the table went to a file.
void emit(const Table& table, ojson summary, const Output& o, std::ostream& out) {
  write_table(table, o.out, resolve_format(o.format, o.out), out);
  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  for (auto& [key, value] : summary.items()) doc[key] = std::move(value);
  const std::string text = doc.dump(2) + "\n";
  if (!o.summary.empty()) {
    write_text(text, o.summary, out);
  } else if (!o.out.empty()) {
    out << text;
  }
}

struct PotentialArgs {
  double b = 0.7;
  double lambda = 0.5;
  std::vector<double> breakpoints;
  std::vector<double> lambdas;
};

void add_potential_options(CLI::App* cmd, PotentialArgs& p, bool nstep) {
  cmd->add_option("--b", p.b, "Step position in (0, 1)")->capture_default_str();
  cmd->add_option("--lambda", p.lambda, "Step height V/E in [0, 1)")->capture_default_str();
  if (nstep) {
    cmd->add_option("--breakpoints", p.breakpoints, "N-step region boundaries 0 = x0 < ... < xN = 1");
    cmd->add_option("--lambdas", p.lambdas, "N-step region heights");
  }
}

bool is_nstep(const PotentialArgs& p) { return !p.breakpoints.empty() || !p.lambdas.empty(); }

// spectrum ------------------------------------------------------------------

struct SpectrumArgs {
  PotentialArgs potential;
  double k_max = 100.0;
  std::size_t count = 0;
  RootFindingOptions options;
  unsigned threads = 0;
  Output output;
};

void run_spectrum(const SpectrumArgs& a, std::ostream& out) {
  RootFindingOptions options = a.options;
  options.threads = resolve_threads(a.threads);
  Table table{"roots", {"n", "k", "residual"}, {}};
  ojson summary;
  summary["command"] = "spectrum";
  SpectrumResult result;
  if (is_nstep(a.potential)) {
    if (a.count > 0) throw ValidationError("count", "not supported for N-step potentials; use --kmax");
    const auto pot = build_nstep(a.potential.breakpoints, a.potential.lambdas);
    result = nstep_find_roots(pot, a.k_max, options);
    for (std::size_t i = 0; i < result.roots.size(); ++i) {
      const double k = result.roots[i];
      table.rows.push_back({i + 1, k, std::abs(det_one_minus_s(pot, k))});
    }
    ojson p;
    p["breakpoints"] = doubles_json(pot.breakpoints());
    p["lambdas"] = doubles_json(pot.lambdas());
    summary["potential"] = p;
    summary["weyl_count"] = num(weyl_count(pot, result.k_max));
  } else {
    const auto pot = build_potential(a.potential.b, a.potential.lambda);
    result = a.count > 0 ? find_first_roots(pot, a.count, options) : find_roots(pot, a.k_max, options);
    for (std::size_t i = 0; i < result.roots.size(); ++i) {
      const double k = result.roots[i];
      table.rows.push_back({i + 1, k, secular(pot, k)});
    }
    summary["potential"] = potential_json(pot);
    summary["weyl_count"] = num(weyl_count(pot, result.k_max));
  }
  summary["k_max"] = num(result.k_max);
  summary["root_count"] = result.roots.size();
  summary["completeness"] = completeness_json(result.completeness);
  emit(table, std::move(summary), a.output, out);
}

// orbits --------------------------------------------------------------------

struct OrbitsArgs {
  PotentialArgs potential;
  int max_length = 7;
  std::size_t max_count = 0;
  double s_max = 0.0;
  Output output;
};

std::vector<OrbitRecord> select_orbits(const ScaledStepPotential& pot, int max_length, double s_max,
                                       std::size_t max_count) {
  auto codes = s_max > 0.0 ? enumerate_primitive_within_action(pot, s_max) : enumerate_primitive(max_length);
  auto records = orbit_records(codes, pot);
  sort_by_size(records);
  if (max_count > 0 && records.size() > max_count) records.erase(records.begin() + static_cast<long>(max_count), records.end());
  return records;
}

std::string truncation_text(std::size_t count, int max_length, double s_max, std::size_t max_count) {
  std::string text = std::to_string(count) + " orbits, ";
  text += s_max > 0.0 ? "S0 <= " + format_number(s_max) : "length <= " + std::to_string(max_length);
  if (max_count > 0) text += ", first " + std::to_string(max_count);
  return text;
}

void run_orbits(const OrbitsArgs& a, std::ostream& out) {
  const auto pot = build_potential(a.potential.b, a.potential.lambda);
  const auto records = select_orbits(pot, a.max_length, a.s_max, a.max_count);
  Table table{"orbits",
              {"code", "length", "n_l", "n_r", "ll_pairs", "rr_pairs", "sigma", "tau2", "sign", "amplitude",
               "reduced_action", "newtonian"},
              {}};
  for (const auto& rec : records) {
    table.rows.push_back({rec.code.word(), rec.code.length(), rec.n_l, rec.n_r, rec.ll_pairs, rec.rr_pairs,
                          rec.sigma, rec.tau2, rec.sign, amplitude(rec, pot), rec.reduced_action,
                          is_newtonian(rec.code)});
  }
  ojson summary;
  summary["command"] = "orbits";
  summary["potential"] = potential_json(pot);
  summary["orbit_count"] = records.size();
  summary["truncation"] = truncation_text(records.size(), a.max_length, a.s_max, a.max_count);
  emit(table, std::move(summary), a.output, out);
}

// trace ---------------------------------------------------------------------

struct TraceArgs {
  PotentialArgs potential;
  double k_min = 1.0;
  double k_max = 70.0;
  std::size_t points = 1000;
  int max_length = 7;
  int nu_max = 10;
  double eta = 0.0;
  std::string domain = "energy";
  bool resummed = false;
  std::size_t compare = 20;
  std::string peaks;
  unsigned threads = 0;
  Output output;
};

void run_trace(const TraceArgs& a, std::ostream& out) {
  const auto pot = build_potential(a.potential.b, a.potential.lambda);
  if (!(a.k_min > 0.0 && a.k_max > a.k_min)) throw ValidationError("kmin", "need 0 < kmin < kmax");
  if (a.points < 2) throw ValidationError("points", "must be >= 2");
  DensityOptions options;
  options.nu_max = a.nu_max;
  options.eta = a.eta;
  options.threads = resolve_threads(a.threads);
  if (a.domain == "energy") {
    options.domain = DensityDomain::kEnergy;
  } else if (a.domain == "wavenumber") {
    options.domain = DensityDomain::kWavenumber;
  } else {
    throw ValidationError("domain", "must be energy or wavenumber");
  }
  std::vector<double> grid(a.points);
  for (std::size_t i = 0; i < a.points; ++i) {
    grid[i] = a.k_min + (a.k_max - a.k_min) * static_cast<double>(i) / static_cast<double>(a.points - 1);
  }
  const auto records = select_orbits(pot, a.max_length, 0.0, 0);
  const auto profile = a.resummed ? rho_resummed(pot, records, grid, options) : rho_trace(pot, records, grid, options);
  const double jacobian_scale = options.domain == DensityDomain::kWavenumber ? 2.0 : 0.0;

  Table table{"density", {"k", "rho", "rho_mean"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double mean = mean_density(pot, grid[i]) * (jacobian_scale > 0.0 ? jacobian_scale * grid[i] : 1.0);
    table.rows.push_back({grid[i], profile.values[i], mean});
  }

  // Exact levels against the density maxima and the Newtonian comb.
  const auto maxima = local_maxima(profile.k_grid, profile.values);
  auto roots = find_roots(pot, a.k_max).roots;
  roots.erase(std::remove_if(roots.begin(), roots.end(), [&](double k) { return k < a.k_min; }), roots.end());
  if (roots.size() > a.compare) roots.resize(a.compare);
  const int m_max = static_cast<int>(std::ceil(a.k_max * pot.omega1() / kPi)) + 2;
  const auto comb = newtonian_prediction(pot, m_max);
  const double spacing = kPi / pot.omega1();
  auto nearest = [](const std::vector<double>& xs, double x) {
    double best = std::numeric_limits<double>::quiet_NaN();
    for (double v : xs) {
      if (!(std::abs(v - x) >= std::abs(best - x))) best = v;
    }
    return best;
  };
  Table levels{"levels",
               {"n", "exact_root", "nearest_maximum", "maximum_error", "newtonian_level", "newtonian_error"},
               {}};
  std::size_t within = 0;
  std::size_t newtonian_misses = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double peak = nearest(maxima, roots[i]);
    const double level = nearest(comb, roots[i]);
    const double peak_error = std::isnan(peak) ? std::numeric_limits<double>::infinity() : std::abs(peak - roots[i]);
    const double comb_error = std::abs(level - roots[i]);
    if (peak_error <= 0.25 * spacing) ++within;
    if (comb_error > 0.25 * spacing) ++newtonian_misses;
    levels.rows.push_back({i + 1, roots[i], std::isnan(peak) ? nlohmann::json() : nlohmann::json(peak),
                           std::isfinite(peak_error) ? nlohmann::json(peak_error) : nlohmann::json(), level,
                           comb_error});
  }
  if (!a.peaks.empty()) write_table(levels, a.peaks, resolve_format(a.output.format, a.peaks), out);

  ojson summary;
  summary["command"] = "trace";
  summary["potential"] = potential_json(pot);
  summary["truncation"] = truncation_text(records.size(), a.max_length, 0.0, 0);
  summary["resummed"] = a.resummed;
  summary["nu_max"] = a.nu_max;
  summary["eta"] = num(a.eta);
  summary["domain"] = a.domain;
  summary["maxima_count"] = maxima.size();
  summary["levels_compared"] = roots.size();
  summary["mean_spacing"] = num(spacing);
  summary["levels_within_quarter_spacing"] = within;
  summary["newtonian_misses"] = newtonian_misses;
  emit(table, std::move(summary), a.output, out);
}

// fourier -------------------------------------------------------------------

struct FourierArgs {
  PotentialArgs potential;
  std::string roots_path;
  double k_max = 1000.0;
  double s_min = 0.2;
  double s_max = 10.0;
  double ds = 0.0;
  double threshold = 0.05;
  double tolerance = 0.0;
  bool raw_peaks = false;
  std::string peaks;
  unsigned threads = 0;
  Output output;
};

void run_fourier(const FourierArgs& a, std::ostream& out) {
  const auto pot = build_potential(a.potential.b, a.potential.lambda);
  const unsigned threads = resolve_threads(a.threads);
  std::vector<double> roots;
  if (!a.roots_path.empty()) {
    roots = read_csv_column(a.roots_path, "k");
    if (roots.empty()) throw ValidationError("roots", a.roots_path + " holds no roots");
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (!(roots[i] > 0.0) || (i > 0 && !(roots[i] > roots[i - 1]))) {
        throw ValidationError("roots", "must be positive and strictly increasing");
      }
    }
  } else {
    RootFindingOptions options;
    options.threads = threads;
    roots = find_roots(pot, a.k_max, options).roots;
  }
  const double k_max = roots.back();
  if (!(a.s_max > a.s_min)) throw ValidationError("smax", "must exceed smin");
  const double ds = a.ds > 0.0 ? a.ds : default_s_step(k_max);
  const double tolerance = a.tolerance > 0.0 ? a.tolerance : default_match_tolerance(k_max);
  const auto grid = uniform_grid(a.s_min, a.s_max, ds);
  const auto profile = fourier_transform(roots, grid, threads);
  const double window = a.raw_peaks ? 0.0 : sidelobe_window(k_max, a.threshold);
  const auto peaks = detect_peaks(profile, a.threshold, window);
  const auto orbits = orbit_records(enumerate_primitive_within_action(pot, a.s_max + tolerance), pot);
  const auto lines = action_spectrum(orbits, 1000, a.s_max + tolerance);
  const auto report = match_peaks(peaks, lines, tolerance);

  Table table{"fourier", {"s", "magnitude"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) table.rows.push_back({grid[i], profile.magnitude[i]});

  Table peak_table{"peaks", {"peak", "magnitude", "action", "residual", "newtonian", "labels"}, {}};
  for (const auto& m : report.matches) {
    const auto at = std::lower_bound(grid.begin(), grid.end(), m.peak) - grid.begin();
    const std::size_t index = std::min<std::size_t>(static_cast<std::size_t>(at), grid.size() - 1);
    if (m.line) {
      const auto& line = lines[*m.line];
      std::string labels;
      for (const auto& l : line.labels) labels += (labels.empty() ? "" : " ") + l;
      peak_table.rows.push_back({m.peak, profile.magnitude[index], line.s, m.residual, line.newtonian, labels});
    } else {
      peak_table.rows.push_back({m.peak, profile.magnitude[index], nullptr, nullptr, false, ""});
    }
  }
  if (!a.peaks.empty()) write_table(peak_table, a.peaks, resolve_format(a.output.format, a.peaks), out);

  ojson summary;
  summary["command"] = "fourier";
  summary["potential"] = potential_json(pot);
  summary["j_roots"] = roots.size();
  summary["k_max"] = num(k_max);
  summary["s_step"] = num(ds);
  summary["threshold"] = num(a.threshold);
  summary["tolerance"] = num(tolerance);
  summary["sidelobe_window"] = num(window);
  summary["peak_count"] = peaks.size();
  summary["peaks"] = doubles_json(peaks);
  summary["matched_fraction"] = num(report.matched_fraction);
  summary["worst_residual"] = num(report.worst_residual);
  summary["unmatched"] = report.unmatched;
  summary["non_newtonian_only"] = report.non_newtonian_only;
  emit(table, std::move(summary), a.output, out);
}

// graph-check ---------------------------------------------------------------

struct GraphCheckArgs {
  PotentialArgs potential;
  int n_max = 12;
  std::size_t samples = 100;
  double k_max = 100.0;
  std::uint64_t seed = 1;
  std::size_t roots = 100;
  Output output;
};

void run_graph_check(const GraphCheckArgs& a, std::ostream& out) {
  const auto pot = build_potential(a.potential.b, a.potential.lambda);
  if (a.n_max < 1 || a.n_max > 24) throw ValidationError("nmax", "must lie in [1, 24]");
  if (a.samples < 1) throw ValidationError("samples", "must be >= 1");
  if (!(a.k_max > 0.0)) throw ValidationError("kmax", "must be positive");
  if (a.roots < 1) throw ValidationError("roots", "must be >= 1");
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> uniform(0.0, a.k_max);
  std::vector<double> ks(a.samples);
  for (double& k : ks) k = uniform(rng);

  Table table{"traces", {"n", "even_deviation", "odd_trace"}, {}};
  double worst_even = 0.0;
  double worst_odd = 0.0;
  for (int n = 1; n <= a.n_max; ++n) {
    double even = 0.0;
    double odd = 0.0;
    for (double k : ks) {
      even = std::max(even, std::abs(trace_power(pot, k, 2 * n) - orbit_trace_sum(pot, k, n)));
      odd = std::max(odd, std::abs(trace_power(pot, k, 2 * n + 1)));
    }
    worst_even = std::max(worst_even, even);
    worst_odd = std::max(worst_odd, odd);
    table.rows.push_back({n, even, odd});
  }
  double unitarity = 0.0;
  for (double k : ks) unitarity = std::max(unitarity, unitarity_defect(build_smatrix(pot, k)));

  const auto spectrum = find_first_roots(pot, a.roots).roots;
  double det_at_roots = 0.0;
  for (double k : spectrum) det_at_roots = std::max(det_at_roots, std::abs(det_one_minus_s(pot, k)));
  const double cutoff = spectrum.back() + 0.5 * kPi / pot.omega1();
  const auto nstep = nstep_find_roots(to_nstep(pot), cutoff).roots;
  double nstep_deviation = std::numeric_limits<double>::infinity();
  if (nstep.size() == spectrum.size()) {
    nstep_deviation = 0.0;
    for (std::size_t i = 0; i < nstep.size(); ++i) {
      nstep_deviation = std::max(nstep_deviation, std::abs(nstep[i] - spectrum[i]));
    }
  }

  ojson summary;
  summary["command"] = "graph-check";
  summary["potential"] = potential_json(pot);
  summary["samples"] = a.samples;
  summary["max_even_deviation"] = num(worst_even);
  summary["max_odd_trace"] = num(worst_odd);
  summary["max_unitarity_defect"] = num(unitarity);
  summary["max_det_at_roots"] = num(det_at_roots);
  summary["nstep_root_count"] = nstep.size();
  summary["nstep_max_deviation"] = std::isfinite(nstep_deviation) ? ojson(num(nstep_deviation)) : ojson();
  summary["passed"] = worst_even < 1e-10 && worst_odd < 1e-12 && det_at_roots < 1e-8 && nstep_deviation < 1e-9;
  emit(table, std::move(summary), a.output, out);
}

// identity ------------------------------------------------------------------

struct IdentityArgs {
  int m = 0;
  int m_max = 12;
  Output output;
};

bool run_identity(const IdentityArgs& a, std::ostream& out) {
  const int first = a.m > 0 ? a.m : 1;
  const int last = a.m > 0 ? a.m : a.m_max;
  if (last < 1) throw ValidationError("m-max", "must be >= 1");
  Table table{"identities", {"m", "classes", "verdict", "polynomial", "binomial_sums"}, {}};
  bool all = true;
  auto verdicts = ojson::array();
  for (int m = first; m <= last; ++m) {
    const auto words = build_word_table(m);
    const auto rule = verify_sum_rule(words);
    const auto sums = binomial_sums(words);
    const auto row = binomial_row(m);
    bool binomial_ok = sums.size() == row.size();
    std::string text;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      binomial_ok = binomial_ok && sums[i] == mpq_class(row[i]);
      text += (i ? "," : "") + sums[i].get_str();
    }
    const bool ok = rule.holds && binomial_ok;
    all = all && ok;
    table.rows.push_back({m, words.classes.size(), ok ? "PASS" : "FAIL", rule.polynomial.to_string(), text});
    ojson v;
    v["m"] = m;
    v["sum_rule"] = rule.holds;
    v["binomial"] = binomial_ok;
    verdicts.push_back(v);
  }
  ojson summary;
  summary["command"] = "identity";
  summary["verdicts"] = verdicts;
  summary["passed"] = all;
  emit(table, std::move(summary), a.output, out);
  return all;
}

void write_error(std::ostream& err, const char* kind, int code, const std::string& message,
                 const std::string& parameter = {}) {
  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  ojson e;
  e["kind"] = kind;
  e["exit_code"] = code;
  if (!parameter.empty()) e["parameter"] = parameter;
  e["message"] = message;
  doc["error"] = e;
  err << doc.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra and periodic orbits of the scaled ray-splitting step potential", "raysplit"};
  app.require_subcommand(1);

  std::string config_placeholder;
  auto add_common = [&](CLI::App* cmd, unsigned* threads) {
    cmd->add_option("--config", config_placeholder, "JSON file with flag values");
    if (threads) cmd->add_option("--threads", *threads, "Worker threads (default: RAYSPLIT_THREADS or 1)");
  };

  int status = kOk;
  std::function<void()> action;

  SpectrumArgs spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Roots of the secular equation with a completeness report");
  add_potential_options(spectrum_cmd, spectrum.potential, true);
  spectrum_cmd->add_option("--kmax", spectrum.k_max, "Upper wavenumber")->capture_default_str();
  spectrum_cmd->add_option("--count", spectrum.count, "Return the first N roots instead");
  spectrum_cmd->add_option("--oversampling", spectrum.options.oversampling)->capture_default_str();
  spectrum_cmd->add_option("--tolerance", spectrum.options.tolerance)->capture_default_str();
  spectrum_cmd->add_option("--weyl-tolerance", spectrum.options.weyl_tolerance)->capture_default_str();
  add_common(spectrum_cmd, &spectrum.threads);
  add_output_options(spectrum_cmd, spectrum.output);
  spectrum_cmd->callback([&] { action = [&] { run_spectrum(spectrum, out); }; });

  OrbitsArgs orbits;
  auto* orbits_cmd = app.add_subcommand("orbits", "Primitive periodic orbit table");
  add_potential_options(orbits_cmd, orbits.potential, false);
  orbits_cmd->add_option("--max-length", orbits.max_length, "Longest code")->capture_default_str();
  orbits_cmd->add_option("--max-count", orbits.max_count, "Keep the first N orbits in size order");
  orbits_cmd->add_option("--smax", orbits.s_max, "Enumerate by reduced action instead of length");
  add_common(orbits_cmd, nullptr);
  add_output_options(orbits_cmd, orbits.output);
  orbits_cmd->callback([&] { action = [&] { run_orbits(orbits, out); }; });

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("trace", "Level density from the periodic-orbit sum");
  add_potential_options(trace_cmd, trace.potential, false);
  trace_cmd->add_option("--kmin", trace.k_min)->capture_default_str();
  trace_cmd->add_option("--kmax", trace.k_max)->capture_default_str();
  trace_cmd->add_option("--points", trace.points)->capture_default_str();
  trace_cmd->add_option("--max-length", trace.max_length)->capture_default_str();
  trace_cmd->add_option("--nu-max", trace.nu_max, "Repetitions per orbit")->capture_default_str();
  trace_cmd->add_option("--eta", trace.eta, "Imaginary part added to k")->capture_default_str();
  trace_cmd->add_option("--domain", trace.domain, "energy or wavenumber")->capture_default_str();
  trace_cmd->add_flag("--resummed", trace.resummed, "Sum repetitions in closed form");
  trace_cmd->add_option("--compare", trace.compare, "Exact levels compared with the maxima")->capture_default_str();
  trace_cmd->add_option("--peaks", trace.peaks, "Level comparison table destination");
  add_common(trace_cmd, &trace.threads);
  add_output_options(trace_cmd, trace.output);
  trace_cmd->callback([&] { action = [&] { run_trace(trace, out); }; });

  FourierArgs fourier;
  auto* fourier_cmd = app.add_subcommand("fourier", "|F(s)| of the spectrum and its peak assignment");
  add_potential_options(fourier_cmd, fourier.potential, false);
  fourier_cmd->add_option("--roots", fourier.roots_path, "CSV with a k column (computed if omitted)");
  fourier_cmd->add_option("--kmax", fourier.k_max, "Cutoff when computing roots")->capture_default_str();
  fourier_cmd->add_option("--smin", fourier.s_min)->capture_default_str();
  fourier_cmd->add_option("--smax", fourier.s_max)->capture_default_str();
  fourier_cmd->add_option("--ds", fourier.ds, "Grid step (default pi / (4 k_max))");
  fourier_cmd->add_option("--threshold", fourier.threshold, "Peak threshold as a fraction of J")
      ->capture_default_str();
  fourier_cmd->add_option("--tolerance", fourier.tolerance, "Match tolerance (default 4 pi / k_max)");
  fourier_cmd->add_flag("--raw-peaks", fourier.raw_peaks, "Keep truncation sidelobes");
  fourier_cmd->add_option("--peaks", fourier.peaks, "Peak table destination");
  add_common(fourier_cmd, &fourier.threads);
  add_output_options(fourier_cmd, fourier.output);
  fourier_cmd->callback([&] { action = [&] { run_fourier(fourier, out); }; });

  GraphCheckArgs graph;
  auto* graph_cmd = app.add_subcommand("graph-check", "Scattering-matrix oracles against the orbit sums");
  add_potential_options(graph_cmd, graph.potential, false);
  graph_cmd->add_option("--nmax", graph.n_max)->capture_default_str();
  graph_cmd->add_option("--samples", graph.samples)->capture_default_str();
  graph_cmd->add_option("--kmax", graph.k_max)->capture_default_str();
  graph_cmd->add_option("--seed", graph.seed)->capture_default_str();
  graph_cmd->add_option("--roots", graph.roots, "Roots checked against det(1 - S)")->capture_default_str();
  add_common(graph_cmd, nullptr);
  add_output_options(graph_cmd, graph.output);
  graph_cmd->callback([&] { action = [&] { run_graph_check(graph, out); }; });

  IdentityArgs identity;
  auto* identity_cmd = app.add_subcommand("identity", "Exact sum rule and binomial sums over cyclic words");
  identity_cmd->add_option("--m", identity.m, "Single half-length");
  identity_cmd->add_option("--m-max", identity.m_max, "Check 1..m-max")->capture_default_str();
  add_common(identity_cmd, nullptr);
  add_output_options(identity_cmd, identity.output);
  identity_cmd->callback([&] {
    action = [&] {
      if (!run_identity(identity, out)) status = kComputation;
    };
  });

  try {
    auto expanded = expand_config(args);
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
    action();
    return status;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(err, "usage", kUsage, e.what());
    return kUsage;
  } catch (const ValidationError& e) {
    write_error(err, "validation", kValidation, e.what(), e.parameter());
    return kValidation;
  } catch (const IoError& e) {
    write_error(err, "io", kIo, e.what());
    return kIo;
  } catch (const std::exception& e) {
    write_error(err, "computation", kComputation, e.what());
    return kComputation;
  }
}

}  // namespace raysplit::cli
