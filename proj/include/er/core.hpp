#pragma once

#include <map>
#include <string>
#include <vector>

#include "er/errors.hpp"

namespace er::core {

// Fundamental constants, Gaussian-CGS by default. Set hbar = c = 1 (with
// charge 1) for natural-unit runs.
struct Constants {
    double hbar = 1.054571817e-27; // erg s
    double c = 2.99792458e10;      // cm/s
};

// Dimensional problem definition. Charged particle with energy -|E| under a
// barrier between soft walls at y = +/- a in a transverse field H.
struct PhysicalSetup {
    double energy_magnitude = 0.0; // |E| > 0
    double mass = 0.0;             // m > 0
    double charge_magnitude = 0.0; // |e| > 0
    double wall_half_width = 0.0;  // a > 0
    double field = 0.0;            // H >= 0
    double wall_strength = 0.0;    // u0 > 0
    int wall_exponent = 0;         // N >= 1, wall u(y) = u0 (y/a)^{4N}
    Constants constants;

    double omega_c() const; // |e| H / (m c)
};

// Parameters of the dimensionless problem (lengths in units of the
// cyclotron length L, energies in units of |E|).
struct Dimensionless {
    double alpha = 0.0;             // a / L
    double nu = 0.0;                // 2|E| / (hbar omega_c)
    double flux_count = 0.0;        // n = H a^2 / Phi0, Phi0 = pi c hbar / e
    double cyclotron_length = 0.0;  // L, cm
    double magnetic_length = 0.0;   // l, cm
    double period = 0.0;            // Delta x in units of L
    double vortex_core_scale = 0.0; // delta = l^2 / a, cm
    double wall_energy_ratio = 0.0; // u0 / |E|
};

struct ConditionCheck {
    std::string name;
    double ratio = 0.0;  // small ratio means well satisfied
    double margin = 0.0; // 1 / ratio
    bool pass = false;
};

struct ValidityReport {
    std::vector<ConditionCheck> checks;
    bool all_pass() const;
};

// Threshold interpreting "much less than": warn when ratio > this.
inline constexpr double kStrongInequalityThreshold = 0.2;

// Throws DomainError naming the offending field; H = 0 throws FlatFieldError.
Dimensionless derive_dimensionless(const PhysicalSetup& setup);

// Reporting only; never throws for finite inputs.
ValidityReport validate(const PhysicalSetup& setup,
                        double threshold = kStrongInequalityThreshold);

// Inverse of derive_dimensionless given the quantities it cannot recover.
PhysicalSetup reconstruct_setup(const Dimensionless& dimless, double mass,
                                double charge_magnitude, int wall_exponent,
                                const Constants& constants);

// INI-style key = value file with '#' comments. Recognized keys: energy,
// mass, charge, a, H, u0, N. Unknown keys are rejected.
std::map<std::string, std::string> parse_config_file(const std::string& path);
void apply_config(const std::map<std::string, std::string>& kv,
                  PhysicalSetup& setup);

} // namespace er::core
