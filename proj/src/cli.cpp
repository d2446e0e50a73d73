#include "hermvar/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hermvar/harness.hpp"
#include "hermvar/rng.hpp"

namespace hermvar {
namespace {

using nlohmann::json;

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

void require(bool cond, const std::string& message) {
  if (!cond) throw config_error(message);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

std::int64_t parse_int(const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    require(used == text.size(), "trailing characters in integer '" + text + "'");
    return v;
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    throw config_error("not an integer: '" + text + "'");
  }
}

bool is_power_of_two(std::int64_t n) { return n >= 1 && (n & (n - 1)) == 0; }

GeneratorMethod parse_method(const std::string& name) {
  if (name == "circulant") return GeneratorMethod::circulant;
  if (name == "cholesky") return GeneratorMethod::cholesky;
  throw config_error("unknown generator method '" + name + "'");
}

McOptions make_options(const RunConfig& cfg) {
  McOptions opts;
  opts.master_seed = cfg.master_seed;
  opts.workers = cfg.workers;
  opts.method = parse_method(cfg.method);
  opts.sigma_tol = cfg.tol;
  return opts;
}

// Results destined for stdout and (optionally) the output file. File content
// carries no timing, so a manifest replay reproduces it byte for byte.
struct Outputs {
  std::string console;
  std::string file;
};

std::string csv_header(const std::string& kind, const std::string& detail) {
  return "# hermvar csv v1 " + kind + (detail.empty() ? "" : " " + detail) + "\n";
}

std::string rate_points_csv(const std::string& kind, const RateFit& fit) {
  std::string out = csv_header(kind, fit.config_summary);
  out += "n,distance,std_error\n";
  for (const RatePoint& p : fit.points)
    out += format("%lld,%.17g,%.17g\n", static_cast<long long>(p.n), p.distance, p.std_error);
  out += format(
      "# slope=%.17g slope_std_error=%.17g intercept=%.17g tail_slope=%.17g target=%.17g "
      "within_target=%d noise_limited=%d degenerate=%d\n",
      fit.slope, fit.slope_std_error, fit.intercept, fit.tail_slope, fit.target_exponent,
      fit.slope_within_target ? 1 : 0, fit.noise_limited ? 1 : 0, fit.degenerate ? 1 : 0);
  return out;
}

json rate_points_json(const std::string& kind, const RateFit& fit) {
  json rows = json::array();
  for (const RatePoint& p : fit.points)
    rows.push_back({{"n", p.n}, {"distance", p.distance}, {"std_error", p.std_error}});
  return {{"kind", kind},
          {"config_summary", fit.config_summary},
          {"points", rows},
          {"slope", fit.slope},
          {"slope_std_error", fit.slope_std_error},
          {"intercept", fit.intercept},
          {"tail_slope", fit.tail_slope},
          {"target_exponent", fit.target_exponent},
          {"slope_within_target", fit.slope_within_target},
          {"noise_limited", fit.noise_limited},
          {"degenerate", fit.degenerate},
          {"replicates", fit.replicates},
          {"master_seed", fit.master_seed}};
}

std::string rate_console(const RateFit& fit) {
  std::string out;
  for (const RatePoint& p : fit.points)
    out += format("n=%-6lld distance=%-12.6g std_error=%.3g\n", static_cast<long long>(p.n),
                  p.distance, p.std_error);
  if (fit.degenerate) {
    out += "degenerate: some distances vanished, no slope fitted\n";
  } else {
    out += format("slope %.4f +- %.4f (target %.4f, tail %.4f) within_target=%s%s\n", fit.slope,
                  fit.slope_std_error, fit.target_exponent, fit.tail_slope,
                  fit.slope_within_target ? "yes" : "no",
                  fit.noise_limited ? " [noise-limited]" : "");
  }
  return out;
}

Outputs run_sigma(const RunConfig& cfg) {
  const HurstParam H(cfg.H);
  const SigmaSq s = sigma_sq(H, cfg.q, cfg.tol);
  Outputs out;
  out.console = format("sigma_sq %.17g\ntail_bound %.3g\ntruncation_K %lld\n", s.value,
                       s.tail_bound, static_cast<long long>(s.truncation_K));
  if (cfg.format == "json") {
    out.file = json{{"kind", "sigma"},
                    {"q", cfg.q},
                    {"H", cfg.H},
                    {"tol", cfg.tol},
                    {"value", s.value},
                    {"truncation_K", s.truncation_K},
                    {"tail_bound", s.tail_bound}}
                   .dump(2) +
               "\n";
  } else {
    out.file = csv_header("sigma", format("q=%d H=%.17g tol=%.17g", cfg.q, cfg.H, cfg.tol));
    out.file += "q,H,value,truncation_K,tail_bound\n";
    out.file += format("%d,%.17g,%.17g,%lld,%.17g\n", cfg.q, cfg.H, s.value,
                       static_cast<long long>(s.truncation_K), s.tail_bound);
  }
  return out;
}

Outputs run_simulate(const RunConfig& cfg) {
  const HurstParam H(cfg.H);
  const std::int64_t N = cfg.replicates > 0 ? cfg.replicates : 1;
  const GeneratorMethod method = parse_method(cfg.method);
  Outputs out;

  if (!cfg.emit_stats) {
    require(N == 1, "simulate without --stats writes a single path; use --stats for replicates");
    const std::uint64_t seed = derive_seed(cfg.master_seed, kPathStreamTag, 0);
    const FbmPath path = method == GeneratorMethod::circulant
                             ? generate_circulant(H, cfg.n, seed)
                             : generate_cholesky(H, cfg.n, seed);
    std::ostringstream stream;
    write_path_csv(path, stream);
    out.file = stream.str();
    out.console = format("path H=%.17g n=%lld seed=%llu method=%s\n", cfg.H,
                         static_cast<long long>(cfg.n), static_cast<unsigned long long>(seed),
                         method_name(method));
    if (cfg.output_path.empty()) out.console = out.file;
    return out;
  }

  require(cfg.format == "csv", "simulate --stats emits csv records only");
  const VariationConfig vc(cfg.q, H, cfg.n);
  if (!vc.in_theorem_range())
    throw numeric_range_error("simulate --stats: (q,H) outside the mixed-Gaussian range");
  const WeightFunction f = weight_by_label(cfg.weight);
  const double sigma2 = sigma_sq(H, cfg.q, cfg.tol).value;
  McOptions opts = make_options(cfg);

  std::string body = csv_header(
      "stats", format("q=%d H=%.17g n=%lld N=%lld seed=%llu method=%s f=%s", cfg.q, cfg.H,
                      static_cast<long long>(cfg.n), static_cast<long long>(N),
                      static_cast<unsigned long long>(cfg.master_seed), method_name(opts.method),
                      f.label().c_str()));
  body += "replicate,path_seed,F,G";
  for (int r = 1; r <= cfg.q; ++r) body += format(",K%d", r);
  body += ",S\n";
  for (std::int64_t rep = 0; rep < N; ++rep) {
    const std::uint64_t seed = derive_seed(cfg.master_seed, kPathStreamTag, rep);
    const FbmPath path = opts.method == GeneratorMethod::circulant
                             ? generate_circulant(H, cfg.n, seed)
                             : generate_cholesky(H, cfg.n, seed);
    const double F = weighted_variation(path, f, cfg.q);
    const std::vector<double> terms = correction_terms(path, f, cfg.q);
    const double G = skorohod_variation(path, f, cfg.q);
    const MixtureScale scale = detail::limit_scale_with_sigma(path, f, sigma2);
    std::string row = format("%lld,%llu,%.17g,%.17g", static_cast<long long>(rep),
                             static_cast<unsigned long long>(seed), F, G);
    for (double term : terms) row += format(",%.17g", term);
    row += format(",%.17g\n", scale.S);
    body += row;
  }
  out.file = body;
  out.console = cfg.output_path.empty()
                    ? body
                    : format("stats records: %lld replicates\n", static_cast<long long>(N));
  return out;
}

Outputs run_rate(const RunConfig& cfg) {
  require(!cfg.n_grid.empty(), "rate requires --n-grid");
  const VariationConfig vc(cfg.q, HurstParam(cfg.H), cfg.n_grid.back());
  const WeightFunction f = weight_by_label(cfg.weight);
  const TestFunction phi = test_function_by_label(cfg.test_function, cfg.test_function_scale);
  const RateFit fit = rate_experiment(vc, f, phi, cfg.n_grid, cfg.replicates, make_options(cfg));
  Outputs out;
  out.console = rate_console(fit);
  out.file = cfg.format == "json" ? rate_points_json("rate", fit).dump(2) + "\n"
                                  : rate_points_csv("rate", fit);
  return out;
}

Outputs run_fngn(const RunConfig& cfg) {
  require(!cfg.n_grid.empty(), "fngn requires --n-grid");
  const VariationConfig vc(cfg.q, HurstParam(cfg.H), cfg.n_grid.back());
  const WeightFunction f = weight_by_label(cfg.weight);
  const std::int64_t N = cfg.replicates > 0 ? cfg.replicates : 1000;
  const RateFit fit = fn_gn_decay(vc, f, cfg.n_grid, N, make_options(cfg));
  Outputs out;
  out.console = rate_console(fit);
  out.file = cfg.format == "json" ? rate_points_json("fngn", fit).dump(2) + "\n"
                                  : rate_points_csv("fngn", fit);
  return out;
}

Outputs run_bounds(const RunConfig& cfg) {
  require(!cfg.n_grid.empty(), "bounds requires --n-grid");
  const HurstParam H(cfg.H);
  Outputs out;

  if (cfg.bound_kind == "alpha") {
    std::string body = csv_header("bounds-alpha", format("H=%.17g t_grid=256", cfg.H));
    body += "n,max_abs,max_abs_sum,pointwise_bound\n";
    double worst_ratio = 0.0;
    for (std::int64_t n : cfg.n_grid) {
      const AlphaBounds b = alpha_bounds(H, n, 256);
      const double bound = std::pow(static_cast<double>(n), -std::min(2.0 * cfg.H, 1.0));
      worst_ratio = std::max(worst_ratio, b.max_abs / bound);
      body += format("%lld,%.17g,%.17g,%.17g\n", static_cast<long long>(n), b.max_abs,
                     b.max_abs_sum, bound);
      out.console += format("n=%-6lld max_abs=%.6g bound=%.6g sum=%.6g\n",
                            static_cast<long long>(n), b.max_abs, bound, b.max_abs_sum);
    }
    out.console += format("worst max_abs / bound ratio %.6f\n", worst_ratio);
    body += format("# worst_ratio=%.17g\n", worst_ratio);
    out.file = cfg.format == "json" ? "" : body;
    if (cfg.format == "json") {
      json rows = json::array();
      for (std::int64_t n : cfg.n_grid) {
        const AlphaBounds b = alpha_bounds(H, n, 256);
        rows.push_back({{"n", n}, {"max_abs", b.max_abs}, {"max_abs_sum", b.max_abs_sum}});
      }
      out.file = json{{"kind", "bounds-alpha"}, {"H", cfg.H}, {"points", rows}}.dump(2) + "\n";
    }
    return out;
  }

  double predicted = 0.0;
  std::string kind;
  std::vector<std::pair<double, double>> points;
  for (std::int64_t n : cfg.n_grid) {
    double value = 0.0;
    if (cfg.bound_kind == "single") {
      value = beta_power_sum(H, n, cfg.exponent_a, n / 2);
      predicted = beta_power_sum_exponent(H, cfg.exponent_a);
      kind = "bounds-single";
    } else if (cfg.bound_kind == "double") {
      value = beta_power_double_sum(H, n, cfg.exponent_a);
      predicted = beta_power_double_sum_exponent(H, cfg.exponent_a);
      kind = "bounds-double";
    } else if (cfg.bound_kind == "triple") {
      value = triple_beta_sum(H, n, cfg.exponent_a, cfg.exponent_b, n / 2);
      predicted = triple_beta_sum_exponent(H, cfg.exponent_a, cfg.exponent_b);
      kind = "bounds-triple";
    } else {
      throw config_error("unknown bound kind '" + cfg.bound_kind +
                         "' (expected alpha|single|double|triple)");
    }
    points.emplace_back(static_cast<double>(n), value);
  }
  const ExponentFit fit = fit_exponent(points);
  for (const auto& [n, v] : points)
    out.console += format("n=%-6.0f value=%.6g\n", n, v);
  out.console += format("fitted slope %.4f (predicted %.4f, tail %.4f)\n", fit.slope, predicted,
                        fit.tail_slope);
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& [n, v] : points) rows.push_back({{"n", n}, {"value", v}});
    out.file = json{{"kind", kind},
                    {"H", cfg.H},
                    {"a", cfg.exponent_a},
                    {"b", cfg.exponent_b},
                    {"points", rows},
                    {"slope", fit.slope},
                    {"predicted_exponent", predicted},
                    {"tail_slope", fit.tail_slope}}
                   .dump(2) +
               "\n";
  } else {
    out.file = csv_header(kind, format("H=%.17g a=%.17g b=%.17g", cfg.H, cfg.exponent_a,
                                       cfg.exponent_b));
    out.file += "n,value\n";
    for (const auto& [n, v] : points) out.file += format("%.0f,%.17g\n", n, v);
    out.file += format("# slope=%.17g predicted=%.17g tail_slope=%.17g\n", fit.slope, predicted,
                       fit.tail_slope);
  }
  return out;
}

Outputs run_residual(const RunConfig& cfg) {
  require(!cfg.n_grid.empty(), "residual requires --n-grid");
  const HurstParam H(cfg.H);
  const double expected = cfg.H < 0.75 ? 2.0 * cfg.H - 2.0 : 6.0 * cfg.H - 5.0;

  std::vector<std::pair<double, double>> points;
  for (std::int64_t n : cfg.n_grid)
    points.emplace_back(static_cast<double>(n), residual_second_moment_exact(H, n));

  Outputs out;
  bool fitted = false;
  ExponentFit fit{};
  const bool positive = std::all_of(points.begin(), points.end(),
                                    [](const auto& p) { return p.second > 0.0; });
  if (positive && points.size() >= 3) {
    fit = fit_exponent(points);
    fitted = true;
  }
  for (const auto& [n, v] : points)
    out.console += format("n=%-6.0f residual_second_moment=%.6g\n", n, v);
  if (fitted)
    out.console += format("fitted slope %.4f (expected %.4f, tail %.4f)\n", fit.slope, expected,
                          fit.tail_slope);
  else
    out.console += "degenerate: residual vanishes on this grid, no slope fitted\n";

  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& [n, v] : points) rows.push_back({{"n", n}, {"value", v}});
    json j{{"kind", "residual"}, {"H", cfg.H}, {"points", rows},
           {"expected_exponent", expected}};
    if (fitted) {
      j["slope"] = fit.slope;
      j["tail_slope"] = fit.tail_slope;
    }
    out.file = j.dump(2) + "\n";
  } else {
    out.file = csv_header("residual", format("H=%.17g", cfg.H));
    out.file += "n,residual_second_moment\n";
    for (const auto& [n, v] : points) out.file += format("%.0f,%.17g\n", n, v);
    if (fitted)
      out.file += format("# slope=%.17g expected=%.17g tail_slope=%.17g\n", fit.slope, expected,
                         fit.tail_slope);
    else
      out.file += format("# degenerate=1 expected=%.17g\n", expected);
  }
  return out;
}

Outputs run_breuer_major(const RunConfig& cfg) {
  const std::int64_t N = cfg.replicates > 0 ? cfg.replicates : 5000;
  const ExperimentResult res =
      breuer_major_check(cfg.q, HurstParam(cfg.H), cfg.n, N, make_options(cfg));
  Outputs out;
  out.console = format("variance %.17g\nstd_error %.3g\n%s\n", res.estimate, res.std_error,
                       res.note.c_str());
  if (cfg.format == "json") {
    out.file = json{{"kind", "breuer-major"},
                    {"config_summary", res.config_summary},
                    {"variance", res.estimate},
                    {"std_error", res.std_error},
                    {"replicates", res.replicates},
                    {"note", res.note}}
                   .dump(2) +
               "\n";
  } else {
    out.file = csv_header("breuer-major", res.config_summary);
    out.file += "q,H,n,N,variance,std_error\n";
    out.file += format("%d,%.17g,%lld,%lld,%.17g,%.17g\n", cfg.q, cfg.H,
                       static_cast<long long>(cfg.n), static_cast<long long>(N), res.estimate,
                       res.std_error);
    out.file += "# " + res.note + "\n";
  }
  return out;
}

Outputs run_stable(const RunConfig& cfg) {
  const VariationConfig vc(cfg.q, HurstParam(cfg.H), cfg.n);
  const WeightFunction f = weight_by_label(cfg.weight);
  const TestFunction phi = test_function_by_label(cfg.test_function, cfg.test_function_scale);
  const TestFunction g = test_function_by_label(cfg.stable_factor);
  const std::int64_t N = cfg.replicates > 0 ? cfg.replicates : 10000;
  const ExperimentResult res = stable_convergence_check(vc, f, phi, g, N, make_options(cfg));
  Outputs out;
  out.console = format("estimate %.17g\nstd_error %.3g\n", res.estimate, res.std_error);
  if (cfg.format == "json") {
    out.file = json{{"kind", "stable"},
                    {"config_summary", res.config_summary},
                    {"estimate", res.estimate},
                    {"std_error", res.std_error},
                    {"replicates", res.replicates}}
                   .dump(2) +
               "\n";
  } else {
    out.file = csv_header("stable", res.config_summary);
    out.file += "estimate,std_error,replicates\n";
    out.file += format("%.17g,%.17g,%lld\n", res.estimate, res.std_error,
                       static_cast<long long>(res.replicates));
  }
  return out;
}

void validate(const RunConfig& cfg) {
  require(cfg.H > 0.0 && cfg.H < 1.0, "H must lie in the open interval (0,1)");
  require(cfg.q >= 1, "q must be a positive integer");
  require(cfg.n >= 1, "n must be a positive integer");
  require(cfg.replicates >= 0, "replicate count must be nonnegative");
  require(cfg.workers >= 0, "worker count must be nonnegative");
  require(cfg.tol > 0.0, "tolerance must be positive");
  require(cfg.format == "csv" || cfg.format == "json", "format must be csv or json");
  parse_method(cfg.method);
  for (std::int64_t n : cfg.n_grid) require(n >= 1, "grid entries must be positive");
}

Outputs dispatch(const RunConfig& cfg) {
  switch (cfg.subcommand) {
    case Subcommand::simulate: return run_simulate(cfg);
    case Subcommand::sigma: return run_sigma(cfg);
    case Subcommand::rate: return run_rate(cfg);
    case Subcommand::fngn: return run_fngn(cfg);
    case Subcommand::bounds: return run_bounds(cfg);
    case Subcommand::residual: return run_residual(cfg);
    case Subcommand::breuer_major: return run_breuer_major(cfg);
    case Subcommand::stable: return run_stable(cfg);
  }
  throw config_error("unknown subcommand");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw io_error("cannot open '" + path + "' for writing");
  stream << content;
  stream.flush();
  if (!stream) throw io_error("write to '" + path + "' failed");
}

}  // namespace

const char* subcommand_name(Subcommand sc) {
  switch (sc) {
    case Subcommand::simulate: return "simulate";
    case Subcommand::sigma: return "sigma";
    case Subcommand::rate: return "rate";
    case Subcommand::fngn: return "fngn";
    case Subcommand::bounds: return "bounds";
    case Subcommand::residual: return "residual";
    case Subcommand::breuer_major: return "breuer-major";
    case Subcommand::stable: return "stable";
  }
  return "unknown";
}

Subcommand subcommand_by_name(const std::string& name) {
  for (Subcommand sc :
       {Subcommand::simulate, Subcommand::sigma, Subcommand::rate, Subcommand::fngn,
        Subcommand::bounds, Subcommand::residual, Subcommand::breuer_major, Subcommand::stable}) {
    if (name == subcommand_name(sc)) return sc;
  }
  throw config_error("unknown subcommand '" + name + "'");
}

std::vector<std::int64_t> parse_n_grid(const std::string& text) {
  require(!text.empty(), "empty n-grid");
  if (text.find(',') != std::string::npos) {
    std::vector<std::int64_t> grid;
    for (const std::string& part : split(text, ',')) {
      const std::int64_t v = parse_int(part);
      require(v >= 1, "grid entries must be positive");
      grid.push_back(v);
    }
    return grid;
  }
  if (text.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split(text, ':');
    require(parts.size() == 2 || (parts.size() == 3 && parts[2] == "dyadic"),
            "grid range must be 'a:b' or 'a:b:dyadic'");
    const std::int64_t a = parse_int(parts[0]);
    const std::int64_t b = parse_int(parts[1]);
    require(is_power_of_two(a) && is_power_of_two(b) && a <= b,
            "grid range endpoints must be powers of two with a <= b");
    std::vector<std::int64_t> grid;
    for (std::int64_t n = a; n <= b; n *= 2) grid.push_back(n);
    return grid;
  }
  const std::int64_t v = parse_int(text);
  require(v >= 1, "grid entries must be positive");
  return {v};
}

std::string emit_manifest(const RunConfig& config, double wall_seconds) {
  json grid = json::array();
  for (std::int64_t n : config.n_grid) grid.push_back(n);
  const json j{{"tool", kToolName},
               {"version", kToolVersion},
               {"wall_seconds", wall_seconds},
               {"config",
                {{"subcommand", subcommand_name(config.subcommand)},
                 {"q", config.q},
                 {"H", config.H},
                 {"n", config.n},
                 {"n_grid", grid},
                 {"replicates", config.replicates},
                 {"weight", config.weight},
                 {"test_function", config.test_function},
                 {"test_function_scale", config.test_function_scale},
                 {"stable_factor", config.stable_factor},
                 {"tol", config.tol},
                 {"bound_kind", config.bound_kind},
                 {"exponent_a", config.exponent_a},
                 {"exponent_b", config.exponent_b},
                 {"master_seed", config.master_seed},
                 {"workers", config.workers},
                 {"method", config.method},
                 {"emit_stats", config.emit_stats},
                 {"output_path", config.output_path},
                 {"format", config.format}}}};
  return j.dump(2) + "\n";
}

RunConfig parse_manifest(const std::string& manifest_json) {
  try {
    const json j = json::parse(manifest_json);
    if (j.at("tool").get<std::string>() != kToolName)
      throw config_error("manifest was not produced by this tool");
    const json& c = j.at("config");
    RunConfig cfg;
    cfg.subcommand = subcommand_by_name(c.at("subcommand").get<std::string>());
    cfg.q = c.at("q").get<int>();
    cfg.H = c.at("H").get<double>();
    cfg.n = c.at("n").get<std::int64_t>();
    cfg.n_grid = c.at("n_grid").get<std::vector<std::int64_t>>();
    cfg.replicates = c.at("replicates").get<std::int64_t>();
    cfg.weight = c.at("weight").get<std::string>();
    cfg.test_function = c.at("test_function").get<std::string>();
    cfg.test_function_scale = c.at("test_function_scale").get<double>();
    cfg.stable_factor = c.at("stable_factor").get<std::string>();
    cfg.tol = c.at("tol").get<double>();
    cfg.bound_kind = c.at("bound_kind").get<std::string>();
    cfg.exponent_a = c.at("exponent_a").get<double>();
    cfg.exponent_b = c.at("exponent_b").get<double>();
    cfg.master_seed = c.at("master_seed").get<std::uint64_t>();
    cfg.workers = c.at("workers").get<int>();
    cfg.method = c.at("method").get<std::string>();
    cfg.emit_stats = c.at("emit_stats").get<bool>();
    cfg.output_path = c.at("output_path").get<std::string>();
    cfg.format = c.at("format").get<std::string>();
    return cfg;
  } catch (const config_error&) {
    throw;
  } catch (const json::exception& e) {
    throw config_error(std::string("malformed manifest: ") + e.what());
  }
}

int run(const RunConfig& config) {
  try {
    validate(config);
    const auto t0 = std::chrono::steady_clock::now();
    const Outputs out = dispatch(config);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out.console.empty()) std::fputs(out.console.c_str(), stdout);
    if (!config.output_path.empty()) {
      write_file(config.output_path, out.file);
      write_file(config.output_path + ".manifest.json", emit_manifest(config, wall));
    }
    return 0;
  } catch (const io_error& e) {
    std::fprintf(stderr, "error: io: %s\n", e.what());
    return 4;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: numeric: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 1;
  }
}

}  // namespace hermvar
