// config.hpp -- run configuration (block/key=value text format), manifest
// emission, and small serialization helpers shared by the CLI.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bwh/medium.hpp"

namespace bwh {

inline constexpr const char* kToolVersion = "0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat block structure:
//   [medium]
//   epsilon = 1.0
//   ...
// Angles in config files are degrees; they are converted on load.
struct RunConfig {
    // medium
    double epsilon = 1.0, mu = 1.0, alpha = 0.0, beta = 0.0, omega = 1.0;
    // propagation
    double ky = 0.0, loss = 0.0;
    // source: exactly one form
    std::optional<double> r0, phi0;       // phi0 stored in radians
    std::optional<double> x0, z0;
    bool phi0_out_of_range = false;       // warning, not an error
    // kernel
    double strip_halfwidth = 0.0;
    double kernel_tol = 1e-9;
    std::size_t node_budget = 40000;
    // output
    double grid_x0 = -5.0, grid_x1 = 5.0, grid_z0 = -5.0, grid_z1 = 5.0;
    std::size_t grid_nx = 101, grid_nz = 101;
    std::vector<double> angles;           // radians
    double reference_radius = 0.0;        // 0: pick 100/k
    double field_tol = 1e-8;
    // verify
    std::vector<std::string> checks;      // empty: full default suite
    double boundary_tol = 1e-3;
    double spectral_tol = 1e-6;
    double factorization_tol = 1e-8;
    double cancellation_tol = 1e-10;
    std::uint64_t seed = 42;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<inline>");

// Derived quantities for a parsed config.
struct DerivedRun {
    DerivedMedium medium;
    PropagationContext ctx;
    double r0 = 0.0, phi0 = 0.0;
};
DerivedRun derive_run(const RunConfig& cfg);

// FNV-1a 64-bit digest; used to tie emitted files to the manifest.
std::string fnv1a_hex(const std::string& bytes);

// CSV formatting: 17 significant digits, '.' decimal, LF endings.
std::string csv_number(double v);

}  // namespace bwh
