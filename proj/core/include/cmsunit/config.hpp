#pragma once

// Tunable constants read from a key = value file.

#include <cstdint>
#include <optional>
#include <string>

#include "cmsunit/heights.hpp"
#include "cmsunit/intarith.hpp"

namespace cmsunit {

struct Config {
  int precision_margin_bits = 64;        // guard bits on top of the analytic estimate
  std::uint64_t factor_budget = 200'000; // Pollard rho iterations per cofactor
  double c1 = 1.1714;                    // omega(n) <= log n / (log log n - c1)
  double k = 1.0;                        // default for property P(k)
  double grid_ratio = 1.333521432163324; // 10^(1/8)
  double grid_ceiling = 1e100;
  std::string source = "built-in";       // file the values came from

  GridOptions grid() const { return {grid_ratio, grid_ceiling}; }
  FactorBudget budget(std::uint64_t seed = 0) const {
    FactorBudget b;
    b.rho_iterations = factor_budget;
    b.seed = seed;
    return b;
  }
};

/// Parses one file. Unknown keys and nonpositive values are InvalidArgument.
Config load_config(const std::string& path);

/// Explicit path, else $CM_SUNIT_CONFIG, else the installed constants file
/// if present, else built-in defaults.
Config resolve_config(const std::optional<std::string>& explicit_path = std::nullopt);

}  // namespace cmsunit
