#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "CLI11.hpp"
#include "ivest/bayes.hpp"
#include "ivest/errors.hpp"
#include "ivest/montecarlo.hpp"
#include "ivest/neyman.hpp"
#include "json.hpp"

namespace ivest::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::string_view kExperimentHeader = "grid_value,rate,std_err,n_trials,analytic,seed";
constexpr std::string_view kScatterHeader = "a,x";
constexpr std::uint64_t kFallbackSeed = 20240917;
constexpr std::size_t kMaxGridPoints = 100000;

std::uint64_t default_seed() {
  const char* env = std::getenv("IVEST_SEED");
  if (env == nullptr || *env == '\0') return kFallbackSeed;
  std::uint64_t seed = 0;
  const std::string_view s(env);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw UsageError("IVEST_SEED must be an unsigned 64-bit integer, got '" + std::string(s) + "'");
  }
  return seed;
}

struct ConstraintFlags {
  bool rounded = false;
  double q_lo = 0.0;
  double q_hi = 0.0;
  double level = 0.0;
  CLI::Option* q_lo_opt = nullptr;
  CLI::Option* q_hi_opt = nullptr;
  CLI::Option* level_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_flag("--rounded", rounded, "use the two-digit quantiles (0.16, 0.84)");
    q_lo_opt = app->add_option("--q-lo", q_lo, "lower tail probability");
    q_hi_opt = app->add_option("--q-hi", q_hi, "upper tail probability");
    level_opt = app->add_option("--level", level, "coverage; keeps q-lo and sets q-hi = q-lo + level");
  }

  QuantileConstraint build() const {
    QuantileConstraint c = rounded ? QuantileConstraint::rounded() : QuantileConstraint::one_sigma();
    if (q_lo_opt->count() > 0 || q_hi_opt->count() > 0) {
      const Probability lo = q_lo_opt->count() > 0 ? Probability(q_lo) : c.q_lo();
      const Probability hi = q_hi_opt->count() > 0 ? Probability(q_hi) : c.q_hi();
      c = QuantileConstraint(lo, hi);
    }
    if (level_opt->count() > 0) c = QuantileConstraint::with_level(c, level);
    return c;
  }
};

struct PolicyFlags {
  std::string name = "allow";
  double threshold = 1.0;
  double upper_tail = 0.32;
  CLI::Option* name_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* upper_tail_opt = nullptr;

  void attach(CLI::App* app) {
    name_opt = app->add_option("--policy", name, "boundary policy for Neyman intervals")
                   ->check(CLI::IsMember({"allow", "clip", "flipflop"}))
                   ->capture_default_str();
    threshold_opt = app->add_option("--threshold", threshold, "flip-flop switch point, units of u")
                        ->capture_default_str();
    upper_tail_opt = app->add_option("--upper-tail", upper_tail, "flip-flop upper-limit tail probability")
                         ->capture_default_str();
  }

  bool given() const { return name_opt->count() + threshold_opt->count() + upper_tail_opt->count() > 0; }

  BoundaryPolicy build() const {
    if (name != "flipflop" && threshold_opt->count() + upper_tail_opt->count() > 0) {
      throw UsageError("--threshold and --upper-tail need --policy flipflop");
    }
    BoundaryPolicy p = AllowNegative{};
    if (name == "clip") p = ClipToZero{};
    if (name == "flipflop") p = FlipFlop{threshold, upper_tail};
    validate(p);
    return p;
  }
};

void check_unit(double u) {
  if (!(u > 0.0 && std::isfinite(u))) throw UsageError("--u must be finite and positive");
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

// ---- interval --------------------------------------------------------------

struct IntervalArgs {
  std::string kind;
  double x0 = 0.0;
  double u = 1.0;
  std::string format = "text";
  ConstraintFlags constraint;
  PolicyFlags policy;
};

void cmd_interval(const IntervalArgs& a, std::ostream& out) {
  if (!std::isfinite(a.x0)) throw UsageError("--x0 must be finite");
  check_unit(a.u);
  const QuantileConstraint c = a.constraint.build();
  const bool neyman = a.kind == "neyman";
  if (!neyman && a.policy.given()) throw UsageError("boundary policies apply to neyman intervals only");

  Interval iv(0.0, 0.0);
  double given_x0 = 0.0;
  if (neyman) {
    iv = confidence_interval(a.x0, c, a.policy.build());
    given_x0 = coverage_probability_given_x0(iv, a.x0).value();
  } else {
    iv = credible_interval(TruncatedGaussianPosterior(a.x0), c);
  }

  std::vector<std::pair<std::string, double>> fields{{"x0", a.x0 * a.u}, {"lo", iv.lo() * a.u}, {"hi", iv.hi() * a.u}};
  if (neyman) fields.emplace_back("coverage_given_x0", given_x0);
  fields.emplace_back("q_lo", c.q_lo().value());
  fields.emplace_back("q_hi", c.q_hi().value());
  fields.emplace_back("level", c.coverage());

  if (a.format == "json") {
    json j;
    j["kind"] = a.kind;
    for (const auto& [k, v] : fields) j[k] = v;
    out << j.dump(2) << '\n';
    return;
  }
  out << "kind=" << a.kind << '\n';
  for (const auto& [k, v] : fields) out << k << '=' << format_number(v) << '\n';
}

// ---- experiment ------------------------------------------------------------

struct ExperimentArgs {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  CLI::Option* start_opt = nullptr;
  CLI::Option* stop_opt = nullptr;
  CLI::Option* step_opt = nullptr;
  std::uint64_t n = 100000;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  unsigned workers = 1;
  std::uint64_t cap = 1000000;
  double a_seed = 1.0;
  CLI::Option* a_seed_opt = nullptr;
  double u = 1.0;
  std::string format = "csv";
  std::string out_path;
  ConstraintFlags constraint;
  PolicyFlags policy;
};

bool is_measurand_grid(const std::string& name) { return name == "fig3" || name == "fig3-reject" || name == "fig5"; }

// start + i * step, trimmed to 12 significant digits so that accumulated
// rounding does not leak into the printed grid.
std::vector<double> make_grid(double start, double stop, double step) {
  if (!(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step))) {
    throw UsageError("grid bounds must be finite");
  }
  if (!(step > 0.0)) throw UsageError("--step must be positive");
  if (start > stop) throw UsageError("--start must not exceed --stop");
  const double span = std::floor((stop - start) / step + 1e-9);
  if (span + 1.0 > static_cast<double>(kMaxGridPoints)) throw UsageError("grid has too many points");
  std::vector<double> grid;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(span); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", start + static_cast<double>(i) * step);
    grid.push_back(std::strtod(buf, nullptr));
  }
  return grid;
}

void cmd_experiment(ExperimentArgs& a, std::ostream& out) {
  const bool over_measurand = is_measurand_grid(a.name);
  if (a.start_opt->count() == 0) a.start = over_measurand ? 0.2 : -2.0;
  if (a.stop_opt->count() == 0) a.stop = 4.0;
  if (a.step_opt->count() == 0) a.step = over_measurand ? 0.2 : 0.5;
  if (a.seed_opt->count() == 0) a.seed = default_seed();
  if (a.n == 0) throw UsageError("--n must be at least 1");
  if (a.workers == 0) throw UsageError("--workers must be at least 1");
  if (a.cap == 0) throw UsageError("--cap must be at least 1");
  if (!std::isfinite(a.a_seed)) throw UsageError("--a-seed must be finite");
  check_unit(a.u);

  const std::vector<double> grid = make_grid(a.start, a.stop, a.step);
  if (over_measurand && grid.front() <= 0.0) throw UsageError("measurand grids must start above 0");
  const bool uses_policy = a.name == "fig3" || a.name == "fig4-neyman";
  if (!uses_policy && a.policy.given()) throw UsageError("--policy does not apply to " + a.name);
  if (a.name != "fig4" && a.name != "fig4-neyman" && a.a_seed_opt->count() > 0) {
    throw UsageError("--a-seed applies to fig4 and fig4-neyman only");
  }
  const QuantileConstraint c = a.constraint.build();
  const BoundaryPolicy policy = uses_policy ? a.policy.build() : BoundaryPolicy{AllowNegative{}};

  montecarlo::RunOptions opts;
  opts.workers = a.workers;
  opts.resample_cap = a.cap;

  std::vector<montecarlo::ExperimentReport> rows;
  rows.reserve(grid.size());
  for (std::size_t r = 0; r < grid.size(); ++r) {
    const RandomStream rng(a.seed, r);
    const double g = grid[r];
    if (a.name == "fig3") {
      rows.push_back(montecarlo::run_fixed_measurand(Measurand{g}, c, policy, a.n, rng, opts));
    } else if (a.name == "fig3-reject") {
      rows.push_back(montecarlo::run_fixed_measurand_rejecting_negative(Measurand{g}, c, a.n, rng, opts));
    } else if (a.name == "fig4") {
      rows.push_back(montecarlo::run_fixed_result(g, c, Measurand{a.a_seed}, a.n, rng, opts));
    } else if (a.name == "fig4-neyman") {
      rows.push_back(montecarlo::run_fixed_result_neyman(g, c, policy, Measurand{a.a_seed}, a.n, rng, opts));
    } else {
      rows.push_back(montecarlo::run_willink(Measurand{g}, c, a.n, rng, opts));
    }
  }

  std::string text;
  if (a.format == "json") {
    json j;
    j["experiment"] = a.name;
    j["seed"] = a.seed;
    j["u"] = a.u;
    j["q_lo"] = c.q_lo().value();
    j["q_hi"] = c.q_hi().value();
    j["rows"] = json::array();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      json row;
      row["grid_value"] = grid[r] * a.u;
      row["rate"] = rows[r].rate;
      row["std_err"] = rows[r].std_err;
      row["n_trials"] = rows[r].n_trials;
      row["analytic"] = rows[r].analytic ? json(*rows[r].analytic) : json(nullptr);
      row["seed"] = a.seed;
      j["rows"].push_back(row);
    }
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream s;
    s << kExperimentHeader << '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& rep = rows[r];
      s << format_number(grid[r] * a.u) << ',' << format_number(rep.rate) << ',' << format_number(rep.std_err)
        << ',' << rep.n_trials << ',' << (rep.analytic ? format_number(*rep.analytic) : std::string()) << ','
        << a.seed << '\n';
    }
    text = s.str();
  }
  write_text(text, a.out_path, out);
}

// ---- scatter ---------------------------------------------------------------

struct ScatterArgs {
  std::uint64_t n = 1000;
  double a_max = 4.0;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  double u = 1.0;
  std::string out_path;
};

void cmd_scatter(ScatterArgs& a, std::ostream& out) {
  if (a.seed_opt->count() == 0) a.seed = default_seed();
  if (a.n == 0) throw UsageError("--n must be at least 1");
  if (!(a.a_max > 0.0 && std::isfinite(a.a_max))) throw UsageError("--a-max must be finite and positive");
  check_unit(a.u);
  const auto sample = montecarlo::sample_joint(a.n, a.a_max, RandomStream(a.seed, 0));
  std::string text;
  text.reserve(sample.size() * 40);
  text.append(kScatterHeader).push_back('\n');
  for (const auto& p : sample) {
    text += format_number(p.a * a.u);
    text.push_back(',');
    text += format_number(p.x * a.u);
    text.push_back('\n');
  }
  write_text(text, a.out_path, out);
}

// ---- validate --------------------------------------------------------------

bool parse_double(std::string_view s, double& v) {
  if (s.empty()) return false;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && end == s.data() + s.size() && std::isfinite(v);
}

bool parse_u64(std::string_view s, std::uint64_t& v) {
  if (s.empty()) return false;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && end == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = line.find(sep, pos);
    parts.push_back(line.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

bool is_probability(double v) { return v >= 0.0 && v <= 1.0; }

std::string check_experiment_row(const std::vector<std::string_view>& f) {
  if (f.size() != 6) return "expected 6 fields, got " + std::to_string(f.size());
  double grid = 0.0, rate = 0.0, se = 0.0, analytic = 0.0;
  std::uint64_t n = 0, seed = 0;
  if (!parse_double(f[0], grid)) return "grid_value is not a finite number";
  if (!parse_double(f[1], rate) || !is_probability(rate)) return "rate is not in [0, 1]";
  if (!parse_double(f[2], se) || se < 0.0) return "std_err is not a non-negative number";
  if (!parse_u64(f[3], n) || n == 0) return "n_trials is not a positive integer";
  if (!f[4].empty() && (!parse_double(f[4], analytic) || !is_probability(analytic))) {
    return "analytic is neither empty nor in [0, 1]";
  }
  if (!parse_u64(f[5], seed)) return "seed is not an unsigned integer";
  return {};
}

std::string check_scatter_row(const std::vector<std::string_view>& f) {
  if (f.size() != 2) return "expected 2 fields, got " + std::to_string(f.size());
  double a = 0.0, x = 0.0;
  if (!parse_double(f[0], a) || a < 0.0) return "a is not a non-negative number";
  if (!parse_double(f[1], x)) return "x is not a finite number";
  return {};
}

Validation validate_csv(std::string_view text) {
  Validation v;
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.empty()) {
    v.message = "empty input";
    return v;
  }
  std::function<std::string(const std::vector<std::string_view>&)> check;
  if (lines[0] == kExperimentHeader) {
    check = check_experiment_row;
  } else if (lines[0] == kScatterHeader) {
    check = check_scatter_row;
  } else {
    v.message = "unrecognised header '" + std::string(lines[0]) + "'";
    return v;
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string problem = check(split(lines[i], ','));
    if (!problem.empty()) {
      v.message = "line " + std::to_string(i + 1) + ": " + problem;
      return v;
    }
  }
  v.rows = lines.size() - 1;
  if (v.rows == 0) {
    v.message = "no data rows";
    return v;
  }
  v.ok = true;
  return v;
}

Validation validate_json(const std::string& text) {
  Validation v;
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    v.message = "not valid JSON";
    return v;
  }
  if (!j.is_object() || !j.contains("experiment") || !j["experiment"].is_string() || !j.contains("rows") ||
      !j["rows"].is_array()) {
    v.message = "expected an object with 'experiment' and 'rows'";
    return v;
  }
  const auto& rows = j["rows"];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    auto number = [&](const char* k) { return r.contains(k) && r[k].is_number(); };
    const bool ok = r.is_object() && number("grid_value") && number("rate") && is_probability(r["rate"].get<double>()) &&
                    number("std_err") && r["std_err"].get<double>() >= 0.0 && r.contains("n_trials") &&
                    r["n_trials"].is_number_unsigned() && r["n_trials"].get<std::uint64_t>() > 0 &&
                    r.contains("analytic") &&
                    (r["analytic"].is_null() || (r["analytic"].is_number() && is_probability(r["analytic"].get<double>()))) &&
                    r.contains("seed") && r["seed"].is_number_unsigned();
    if (!ok) {
      v.message = "row " + std::to_string(i) + " does not match the experiment schema";
      return v;
    }
  }
  v.rows = rows.size();
  if (v.rows == 0) {
    v.message = "no data rows";
    return v;
  }
  v.ok = true;
  return v;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  const Validation v = validate_output(buf.str());
  if (!v.ok) {
    err << "ivest: " << path << ": " << v.message << '\n';
    return kExitFailure;
  }
  out << "valid rows=" << v.rows << '\n';
  return kExitOk;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

Validation validate_output(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return validate_json(text);
  return validate_csv(text);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Confidence and credible intervals for a positive measurand", "ivest"};
  app.require_subcommand(1);

  IntervalArgs ia;
  auto* interval = app.add_subcommand("interval", "construct one interval from a measured value x0 (units of u)");
  interval->add_option("kind", ia.kind, "neyman or bayes")->required()->check(CLI::IsMember({"neyman", "bayes"}));
  interval->add_option("--x0", ia.x0, "measured value")->required();
  interval->add_option("--u", ia.u, "output scale")->capture_default_str();
  interval->add_option("--format", ia.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  ia.constraint.attach(interval);
  ia.policy.attach(interval);

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo success rates over a grid");
  experiment->add_option("name", ea.name, "fig3, fig3-reject, fig4, fig4-neyman or fig5")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig3-reject", "fig4", "fig4-neyman", "fig5"}));
  ea.start_opt = experiment->add_option("--start", ea.start, "first grid value (a/u or x0/u)");
  ea.stop_opt = experiment->add_option("--stop", ea.stop, "last grid value");
  ea.step_opt = experiment->add_option("--step", ea.step, "grid spacing");
  experiment->add_option("--n", ea.n, "trials per grid point")->capture_default_str();
  ea.seed_opt = experiment->add_option("--seed", ea.seed, "RNG seed (default: $IVEST_SEED or built-in)");
  experiment->add_option("--workers", ea.workers, "worker threads")->capture_default_str();
  experiment->add_option("--cap", ea.cap, "redraws allowed per trial")->capture_default_str();
  ea.a_seed_opt = experiment->add_option("--a-seed", ea.a_seed, "measurand used by the shift sampler");
  experiment->add_option("--u", ea.u, "output scale")->capture_default_str();
  experiment->add_option("--format", ea.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  experiment->add_option("--out", ea.out_path, "output file (default: stdout)");
  ea.constraint.attach(experiment);
  ea.policy.attach(experiment);

  ScatterArgs sa;
  auto* scatter = app.add_subcommand("scatter", "joint sample of (a, x) with a uniform on [0, a-max]");
  scatter->add_option("--n", sa.n, "number of points")->capture_default_str();
  scatter->add_option("--a-max", sa.a_max, "upper end of the measurand range")->capture_default_str();
  sa.seed_opt = scatter->add_option("--seed", sa.seed, "RNG seed (default: $IVEST_SEED or built-in)");
  scatter->add_option("--u", sa.u, "output scale")->capture_default_str();
  scatter->add_option("--out", sa.out_path, "output file (default: stdout)");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "check a CSV or JSON file written by this tool");
  validate_cmd->add_option("file", validate_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (interval->parsed()) cmd_interval(ia, out);
    if (experiment->parsed()) cmd_experiment(ea, out);
    if (scatter->parsed()) cmd_scatter(sa, out);
    if (validate_cmd->parsed()) return cmd_validate(validate_path, out, err);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "ivest: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "ivest: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidProbability& e) {
    err << "ivest: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ivest: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace ivest::cli
