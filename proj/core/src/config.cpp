#include "ntdlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ntdlab {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::NtdConvergence: return "ntd-convergence";
        case ExperimentKind::MonotonicityIdentity: return "monotonicity-identity";
        case ExperimentKind::LocalizedSweep: return "localized-sweep";
        case ExperimentKind::PositivityTest: return "positivity-test";
        case ExperimentKind::InclusionSweep: return "inclusion-sweep";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> tokens(const std::string& value) {
    std::string normalized = value;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::vector<std::string> result;
    std::string tok;
    while (in >> tok) result.push_back(tok);
    return result;
}

double parse_number(const std::string& field, const std::string& tok) {
    size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ConfigError(field + ": not a number: '" + tok + "'");
    }
    if (pos != tok.size() || !std::isfinite(value))
        throw ConfigError(field + ": not a finite number: '" + tok + "'");
    return value;
}

int parse_int(const std::string& field, const std::string& tok) {
    const double value = parse_number(field, tok);
    const int i = static_cast<int>(value);
    if (static_cast<double>(i) != value)
        throw ConfigError(field + ": integer expected, got '" + tok + "'");
    return i;
}

ExperimentKind parse_kind(const std::string& value) {
    if (value == "ntd-convergence") return ExperimentKind::NtdConvergence;
    if (value == "monotonicity-identity") return ExperimentKind::MonotonicityIdentity;
    if (value == "localized-sweep") return ExperimentKind::LocalizedSweep;
    if (value == "positivity-test") return ExperimentKind::PositivityTest;
    if (value == "inclusion-sweep") return ExperimentKind::InclusionSweep;
    throw ConfigError("experiment: unknown kind '" + value +
                      "' (expected ntd-convergence | monotonicity-identity | localized-sweep | "
                      "positivity-test | inclusion-sweep)");
}

unsigned parse_gamma(const std::string& value) {
    unsigned mask = 0;
    for (const auto& tok : tokens(value)) {
        if (tok == "all") return 0;
        if (tok == "bottom") mask |= 1u;
        else if (tok == "right") mask |= 2u;
        else if (tok == "top") mask |= 4u;
        else if (tok == "left") mask |= 8u;
        else throw ConfigError("gamma: unknown side '" + tok + "' (bottom|right|top|left|all)");
    }
    return mask;
}

PotentialOverride parse_override(const std::string& field, const std::string& value) {
    const auto toks = tokens(value);
    if (toks.size() != 2)
        throw ConfigError(field + ": expected '<region-name> <value>'");
    return {toks[0], parse_number(field, toks[1])};
}

Region parse_region_block(std::istream& in, const std::string& name, int& line_no) {
    std::string kind;
    Vec2 center, lo, hi;
    double radius = -1.0;
    std::vector<int> tri_set;
    bool have_center = false, have_lo = false, have_hi = false;

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        if (line == "end") {
            const std::string field = "region " + name;
            if (kind == "disk") {
                if (!have_center || radius < 0.0)
                    throw ConfigError(field + ": disk needs 'center = x y' and 'radius = r'");
                return Region::disk(center, radius);
            }
            if (kind == "rect") {
                if (!have_lo || !have_hi)
                    throw ConfigError(field + ": rect needs 'min = x y' and 'max = x y'");
                return Region::rect(lo, hi);
            }
            if (kind == "triangles") return Region::triangles(tri_set);
            throw ConfigError(field + ": missing or unknown kind (disk|rect|triangles)");
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("region " + name + " line " + std::to_string(line_no) +
                              ": expected 'key = value' or 'end'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string field = "region " + name + "." + key;
        const auto toks = tokens(value);
        if (key == "kind") {
            kind = value;
        } else if (key == "center" || key == "min" || key == "max") {
            if (toks.size() != 2) throw ConfigError(field + ": expected two coordinates");
            const Vec2 p{parse_number(field, toks[0]), parse_number(field, toks[1])};
            if (key == "center") { center = p; have_center = true; }
            else if (key == "min") { lo = p; have_lo = true; }
            else { hi = p; have_hi = true; }
        } else if (key == "radius") {
            if (toks.size() != 1) throw ConfigError(field + ": expected one value");
            radius = parse_number(field, toks[0]);
        } else if (key == "triangles") {
            for (const auto& tok : toks) tri_set.push_back(parse_int(field, tok));
        } else {
            throw ConfigError(field + ": unknown region key");
        }
    }
    throw ConfigError("region " + name + ": unterminated block (missing 'end')");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    bool have_kind = false;
    std::string line;
    int line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;

        if (line.rfind("region", 0) == 0 && line.find('=') == std::string::npos) {
            const auto toks = tokens(line);
            if (toks.size() != 2) throw ConfigError("line " + std::to_string(line_no) +
                                                    ": expected 'region <name>'");
            const std::string name = toks[1];
            if (find_region(config, name))
                throw ConfigError("region " + name + ": duplicate region name");
            config.regions.push_back({name, parse_region_block(in, name, line_no)});
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto toks = tokens(value);
        auto single = [&]() -> const std::string& {
            if (toks.size() != 1) throw ConfigError(key + ": expected a single value");
            return toks[0];
        };

        if (key == "experiment") { config.kind = parse_kind(value); have_kind = true; }
        else if (key == "n") {
            config.n_values.clear();
            for (const auto& tok : toks) config.n_values.push_back(parse_int(key, tok));
        }
        else if (key == "gamma") config.gamma_sides = parse_gamma(value);
        else if (key == "q1") config.q1 = parse_number(key, single());
        else if (key == "q2") config.q2 = parse_number(key, single());
        else if (key == "q1_override") config.q1_overrides.push_back(parse_override(key, value));
        else if (key == "q2_override") config.q2_overrides.push_back(parse_override(key, value));
        else if (key == "deltas") {
            config.deltas.clear();
            for (const auto& tok : toks) config.deltas.push_back(parse_number(key, tok));
        }
        else if (key == "contrast") config.contrast = parse_number(key, single());
        else if (key == "eig_tol") config.eig_tol = parse_number(key, single());
        else if (key == "seed") config.seed = static_cast<std::uint64_t>(parse_number(key, single()));
        else if (key == "output") config.output_dir = value;
        else if (key == "k") config.flux_k = parse_int(key, single());
        else if (key == "instances") config.instances = parse_int(key, single());
        else if (key == "q_min") config.q_min = parse_number(key, single());
        else if (key == "q_max") config.q_max = parse_number(key, single());
        else if (key == "grid") {
            if (toks.size() != 2) throw ConfigError("grid: expected '<nx> <ny>'");
            config.grid_nx = parse_int(key, toks[0]);
            config.grid_ny = parse_int(key, toks[1]);
        }
        else if (key == "sweep_radius") config.sweep_radius = parse_number(key, single());
        else if (key == "dump_fields") config.dump_fields = (single() == "true" || toks[0] == "1");
        else throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }

    if (!have_kind) throw ConfigError("experiment: missing (no 'experiment = <kind>' line)");
    if (config.n_values.empty()) throw ConfigError("n: missing mesh subdivision");
    validate_config(config);
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in);
}

const NamedRegion* find_region(const ExperimentConfig& config, const std::string& name) {
    for (const auto& r : config.regions)
        if (r.name == name) return &r;
    return nullptr;
}

void validate_config(const ExperimentConfig& config) {
    for (int n : config.n_values)
        if (n < 1) throw ConfigError("n: subdivision must be >= 1");
    if (!(config.q1 > 0.0))
        throw ConfigError("q1: base value must be positive (potentials live in L-infinity-plus)");
    if (!(config.q2 > 0.0))
        throw ConfigError("q2: base value must be positive (potentials live in L-infinity-plus)");

    auto check_overrides = [&](const std::vector<PotentialOverride>& overrides, const char* field) {
        for (const auto& o : overrides) {
            if (!find_region(config, o.region))
                throw ConfigError(std::string(field) + ": unknown region '" + o.region + "'");
            if (!(o.value > 0.0))
                throw ConfigError(std::string(field) + " on region '" + o.region +
                                  "': value must be positive (potentials live in L-infinity-plus)");
        }
    };
    check_overrides(config.q1_overrides, "q1_override");
    check_overrides(config.q2_overrides, "q2_override");

    auto require_region = [&](const char* name) {
        if (!find_region(config, name))
            throw ConfigError(std::string("region ") + name + ": required by " +
                              to_string(config.kind) + " but not declared");
    };
    auto require_single_n = [&]() {
        if (config.n_values.size() != 1)
            throw ConfigError("n: " + to_string(config.kind) + " takes exactly one subdivision");
    };

    switch (config.kind) {
        case ExperimentKind::NtdConvergence:
            if (config.flux_k < 1) throw ConfigError("k: flux index must be >= 1");
            break;
        case ExperimentKind::MonotonicityIdentity:
            require_single_n();
            if (config.instances < 1) throw ConfigError("instances: must be >= 1");
            if (!(config.q_min > 0.0) || !(config.q_max >= config.q_min))
                throw ConfigError("q_min/q_max: need 0 < q_min <= q_max");
            break;
        case ExperimentKind::LocalizedSweep:
            require_single_n();
            require_region("B");
            require_region("V");
            if (config.deltas.empty()) throw ConfigError("deltas: localized-sweep needs a schedule");
            for (size_t i = 0; i < config.deltas.size(); ++i) {
                if (!(config.deltas[i] > 0.0)) throw ConfigError("deltas: must be positive");
                if (i > 0 && !(config.deltas[i] < config.deltas[i - 1]))
                    throw ConfigError("deltas: must be strictly decreasing");
            }
            break;
        case ExperimentKind::PositivityTest:
            require_single_n();
            break;
        case ExperimentKind::InclusionSweep:
            require_single_n();
            require_region("D");
            if (config.grid_nx < 1 || config.grid_ny < 1)
                throw ConfigError("grid: dimensions must be >= 1");
            if (!(config.sweep_radius > 0.0)) throw ConfigError("sweep_radius: must be positive");
            if (!(config.contrast > 0.0)) throw ConfigError("contrast: must be positive");
            break;
    }
}

}  // namespace ntdlab
