#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lamb/core.hpp"

namespace lamb::cli {

/// Raised for any configuration violation; what() names the constraint.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OmegaSweep {
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
};

struct RunConfig {
  Material material;
  BCKind bc = BCKind::FreeFree;
  int n_colloc = 64;
  double accept_tol = 1e-8;
  double chain_tol = 1e-6;
  double theta0 = 0.45 * 3.14159265358979323846;
  std::vector<double> moduli;  ///< empty: derived from the measured threshold
  std::optional<OmegaSweep> omega_sweep;
  std::uint64_t seed = 0;
};

/// Strict JSON parsing: material fields required, unknown fields rejected.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

BCKind parse_bc(const std::string& s);
const char* bc_name(BCKind bc);

/// 17 significant digits, '.' separator.
std::string fmt(double x);

void write_modes_csv(const RunConfig& cfg, std::ostream& out);
void write_dispersion_csv(const RunConfig& cfg, std::ostream& out);
void write_resolvent_csv(const RunConfig& cfg, std::ostream& out);
void write_completeness_csv(const RunConfig& cfg, std::ostream& out);
/// Returns true iff every check passed.
bool write_verify_json(const RunConfig& cfg, std::ostream& out);

/// Entry point: exit 0 on success, 1 on a failed verification, 2 on a
/// configuration or usage error.
int run(int argc, char** argv);

}  // namespace lamb::cli
