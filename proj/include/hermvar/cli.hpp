#ifndef HERMVAR_CLI_HPP
#define HERMVAR_CLI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hermvar/errors.hpp"

namespace hermvar {

inline constexpr const char* kToolName = "hermvar";
inline constexpr const char* kToolVersion = "1.0.0";

enum class Subcommand {
  simulate,
  sigma,
  rate,
  fngn,
  bounds,
  residual,
  breuer_major,
  stable,
};

const char* subcommand_name(Subcommand sc);
Subcommand subcommand_by_name(const std::string& name);

// Fully resolved run description. Every field is serialized into the manifest,
// so parse_manifest(emit_manifest(cfg)) == cfg and a manifest replay sees the
// exact configuration of the original run.
struct RunConfig {
  Subcommand subcommand = Subcommand::sigma;
  int q = 2;
  double H = 0.7;
  std::int64_t n = 1024;
  std::vector<std::int64_t> n_grid;      // grid subcommands (rate, fngn, bounds, residual)
  std::int64_t replicates = 0;           // 0 = subcommand default
  std::string weight = "identity";       // weight function label
  std::string test_function = "cos";     // phi label
  double test_function_scale = 1.0;
  std::string stable_factor = "cos";     // g label (stable subcommand)
  double tol = 1e-10;                    // sigma_sq certification tolerance
  std::string bound_kind = "double";     // bounds: alpha | single | double | triple
  double exponent_a = 1.0;               // bounds: |beta|^a power
  double exponent_b = 1.0;               // bounds: coupling power (triple)
  std::uint64_t master_seed = 1;
  int workers = 0;                       // 0 = default_worker_count()
  std::string method = "circulant";      // circulant | cholesky
  bool emit_stats = false;               // simulate: per-replicate statistic records
  std::string output_path;               // "" = stdout only, no manifest
  std::string format = "csv";            // csv | json

  bool operator==(const RunConfig&) const = default;
};

// "a:b" or "a:b:dyadic" expands to the powers of two from a to b inclusive
// (both must be powers of two); "a,b,c" is taken literally.
std::vector<std::int64_t> parse_n_grid(const std::string& text);

std::string emit_manifest(const RunConfig& config, double wall_seconds);
RunConfig parse_manifest(const std::string& manifest_json);

// Validates config, dispatches to the target module, writes results (stdout,
// plus output_path and its .manifest.json when set), and maps failures to the
// exit-code contract: 0 success, 2 configuration, 3 numeric range, 4 I/O.
int run(const RunConfig& config);

}  // namespace hermvar

#endif
