#include "er/core.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace er::core {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive(double value, const char* name) {
    if (!(value > 0.0))
        throw DomainError(std::string("nonpositive input: ") + name);
}

void check_setup(const PhysicalSetup& s) {
    require_positive(s.energy_magnitude, "energy");
    require_positive(s.mass, "mass");
    require_positive(s.charge_magnitude, "charge");
    require_positive(s.wall_half_width, "a");
    require_positive(s.wall_strength, "u0");
    if (s.field < 0.0) throw DomainError("nonpositive input: H");
    if (s.wall_exponent < 1) throw DomainError("nonpositive input: N");
    require_positive(s.constants.hbar, "hbar");
    require_positive(s.constants.c, "c");
}

} // namespace

double PhysicalSetup::omega_c() const {
    return charge_magnitude * field / (mass * constants.c);
}

bool ValidityReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

Dimensionless derive_dimensionless(const PhysicalSetup& setup) {
    check_setup(setup);
    if (setup.field == 0.0)
        throw FlatFieldError(
            "H = 0: cyclotron length diverges, dimensionless reduction undefined");
    const double hbar = setup.constants.hbar;
    const double c = setup.constants.c;
    const double wc = setup.omega_c();
    Dimensionless d;
    d.magnetic_length = std::sqrt(hbar / (setup.mass * wc));
    d.cyclotron_length =
        std::sqrt(2.0 * setup.energy_magnitude / (setup.mass * wc * wc));
    d.alpha = setup.wall_half_width / d.cyclotron_length;
    d.nu = 2.0 * setup.energy_magnitude / (hbar * wc);
    const double phi0 = kPi * c * hbar / setup.charge_magnitude;
    d.flux_count = setup.field * setup.wall_half_width * setup.wall_half_width / phi0;
    d.period = 2.0 * std::sqrt(d.alpha * (2.0 + d.alpha));
    d.vortex_core_scale =
        d.magnetic_length * d.magnetic_length / setup.wall_half_width;
    d.wall_energy_ratio = setup.wall_strength / setup.energy_magnitude;
    return d;
}

ValidityReport validate(const PhysicalSetup& setup, double threshold) {
    check_setup(setup);
    ValidityReport report;
    auto push = [&](const std::string& name, double ratio) {
        ConditionCheck c;
        c.name = name;
        c.ratio = ratio;
        c.margin = ratio > 0.0 ? 1.0 / ratio : std::numeric_limits<double>::infinity();
        c.pass = ratio <= threshold;
        report.checks.push_back(c);
    };
    const double hbar = setup.constants.hbar;
    const double a = setup.wall_half_width;
    const double quantum_energy = hbar * hbar / (setup.mass * a * a);
    push("hbar^2/(m a^2) << |E|", quantum_energy / setup.energy_magnitude);
    if (setup.field > 0.0) {
        const double wc = setup.omega_c();
        const double l = std::sqrt(hbar / (setup.mass * wc));
        push("l << a", l / a);
        const double phi0 = kPi * setup.constants.c * hbar / setup.charge_magnitude;
        const double n = setup.field * a * a / phi0;
        push("N << n", static_cast<double>(setup.wall_exponent) / n);
    }
    return report;
}

PhysicalSetup reconstruct_setup(const Dimensionless& d, double mass,
                                double charge_magnitude, int wall_exponent,
                                const Constants& constants) {
    // omega_c follows from nu and L: L^2 = 2|E|/(m wc^2), nu = 2|E|/(hbar wc).
    const double wc =
        constants.hbar * d.nu / (mass * d.cyclotron_length * d.cyclotron_length);
    PhysicalSetup s;
    s.mass = mass;
    s.charge_magnitude = charge_magnitude;
    s.wall_exponent = wall_exponent;
    s.constants = constants;
    s.energy_magnitude = 0.5 * constants.hbar * d.nu * wc;
    s.field = mass * constants.c * wc / charge_magnitude;
    s.wall_half_width = d.alpha * d.cyclotron_length;
    s.wall_strength = d.wall_energy_ratio * s.energy_magnitude;
    return s;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file: " + path);
    static const std::set<std::string> known = {"energy", "mass", "charge",
                                                "a",      "H",    "u0", "N"};
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (!known.count(key))
            throw DomainError("config line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        if (value.empty())
            throw DomainError("config line " + std::to_string(lineno) +
                              ": empty value for '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

void apply_config(const std::map<std::string, std::string>& kv,
                  PhysicalSetup& setup) {
    auto as_double = [](const std::string& key, const std::string& v) {
        std::istringstream ss(v);
        double x;
        if (!(ss >> x) || !(ss >> std::ws).eof())
            throw DomainError("config key '" + key + "': bad number '" + v + "'");
        return x;
    };
    for (const auto& [key, value] : kv) {
        if (key == "energy") setup.energy_magnitude = as_double(key, value);
        else if (key == "mass") setup.mass = as_double(key, value);
        else if (key == "charge") setup.charge_magnitude = as_double(key, value);
        else if (key == "a") setup.wall_half_width = as_double(key, value);
        else if (key == "H") setup.field = as_double(key, value);
        else if (key == "u0") setup.wall_strength = as_double(key, value);
        else if (key == "N") setup.wall_exponent = static_cast<int>(as_double(key, value));
    }
}

} // namespace er::core
