#include "bwh/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bwh {

namespace {

constexpr double kPi = 3.14159265358979323846264338;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: field '" + key + "' has a malformed number: '" + v + "'");
    }
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::map<std::string, std::string> kv;  // "block.key" -> value
    std::string block;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed block header at " + origin + ":" +
                                  std::to_string(lineno));
            block = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at " + origin + ":" +
                              std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config: empty key or value at " + origin + ":" +
                              std::to_string(lineno));
        kv[block + "." + key] = val;
    }

    auto take = [&](const char* name, double& dst) {
        auto it = kv.find(name);
        if (it != kv.end()) {
            dst = parse_number(it->second, name);
            kv.erase(it);
        }
    };
    auto take_size = [&](const char* name, std::size_t& dst) {
        auto it = kv.find(name);
        if (it != kv.end()) {
            const double d = parse_number(it->second, name);
            if (d < 0.0 || d != std::floor(d))
                throw ConfigError(std::string("config: field '") + name +
                                  "' must be a nonnegative integer");
            dst = std::size_t(d);
            kv.erase(it);
        }
    };

    take("medium.epsilon", cfg.epsilon);
    take("medium.mu", cfg.mu);
    take("medium.alpha", cfg.alpha);
    take("medium.beta", cfg.beta);
    take("medium.omega", cfg.omega);
    take("propagation.ky", cfg.ky);
    take("propagation.loss", cfg.loss);

    double tmp;
    auto take_opt = [&](const char* name, std::optional<double>& dst) {
        auto it = kv.find(name);
        if (it != kv.end()) {
            dst = parse_number(it->second, name);
            kv.erase(it);
        }
    };
    (void)tmp;
    take_opt("source.r0", cfg.r0);
    take_opt("source.phi0_deg", cfg.phi0);
    take_opt("source.x0", cfg.x0);
    take_opt("source.z0", cfg.z0);
    if (cfg.phi0) cfg.phi0 = *cfg.phi0 * kPi / 180.0;

    const bool polar = cfg.r0.has_value() || cfg.phi0.has_value();
    const bool cart = cfg.x0.has_value() || cfg.z0.has_value();
    if (polar && cart)
        throw ConfigError("config: give the source either as (r0, phi0_deg) or as (x0, z0)");
    if (polar && (!cfg.r0 || !cfg.phi0))
        throw ConfigError("config: polar source needs both source.r0 and source.phi0_deg");
    if (cart && (!cfg.x0 || !cfg.z0))
        throw ConfigError("config: cartesian source needs both source.x0 and source.z0");
    if (!polar && !cart) throw ConfigError("config: missing source block");
    if (cfg.phi0 && !(*cfg.phi0 > -kPi && *cfg.phi0 < -0.5 * kPi)) cfg.phi0_out_of_range = true;

    take("kernel.strip_halfwidth", cfg.strip_halfwidth);
    take("kernel.tol", cfg.kernel_tol);
    take_size("kernel.node_budget", cfg.node_budget);

    take("output.grid_x0", cfg.grid_x0);
    take("output.grid_x1", cfg.grid_x1);
    take("output.grid_z0", cfg.grid_z0);
    take("output.grid_z1", cfg.grid_z1);
    take_size("output.grid_nx", cfg.grid_nx);
    take_size("output.grid_nz", cfg.grid_nz);
    take("output.reference_radius", cfg.reference_radius);
    take("output.tol", cfg.field_tol);
    {
        auto it = kv.find("output.angles_deg");
        if (it != kv.end()) {
            std::istringstream as(it->second);
            std::string tok;
            while (std::getline(as, tok, ',')) {
                cfg.angles.push_back(parse_number(trim(tok), "output.angles_deg") * kPi / 180.0);
            }
            kv.erase(it);
        }
    }

    take("verify.boundary_tol", cfg.boundary_tol);
    take("verify.spectral_tol", cfg.spectral_tol);
    take("verify.factorization_tol", cfg.factorization_tol);
    take("verify.cancellation_tol", cfg.cancellation_tol);
    {
        auto it = kv.find("verify.seed");
        if (it != kv.end()) {
            cfg.seed = std::strtoull(it->second.c_str(), nullptr, 10);
            kv.erase(it);
        }
        it = kv.find("verify.checks");
        if (it != kv.end()) {
            std::istringstream as(it->second);
            std::string tok;
            while (std::getline(as, tok, ',')) cfg.checks.push_back(trim(tok));
            kv.erase(it);
        }
    }

    if (!kv.empty())
        throw ConfigError("config: unknown field '" + kv.begin()->first + "'");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

DerivedRun derive_run(const RunConfig& cfg) {
    DerivedRun d;
    MediumParams p;
    p.epsilon = cfg.epsilon;
    p.mu = cfg.mu;
    p.alpha = cfg.alpha;
    p.beta = cfg.beta;
    p.omega = cfg.omega;
    d.medium = derive_medium(p);
    d.ctx = propagation_context(d.medium, cfg.ky, cfg.loss);
    if (cfg.r0) {
        d.r0 = *cfg.r0;
        d.phi0 = *cfg.phi0;
    } else {
        d.r0 = std::hypot(*cfg.x0, *cfg.z0);
        d.phi0 = std::atan2(-*cfg.z0, -*cfg.x0);
    }
    return d;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace bwh
