#include "fockforge/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fockforge/rng.hpp"

namespace fockforge {

std::string fmt_double(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string geometry_name(Geometry g) { return g == Geometry::Ring ? "ring" : "line"; }

std::string splitting_name(Splitting s) {
    return s == Splitting::LieTrotter1 ? "lie-trotter-1" : "strang-2";
}

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::A1: return "a1";
        case Algo::A2: return "a2";
        case Algo::A2Online: return "a2-online";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& value, int line, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty() || !std::isfinite(v))
        fail(line, key + ": expected a finite number, got '" + value + "'");
    return v;
}

long long parse_int(const std::string& value, int line, const std::string& key) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size() || value.empty())
        fail(line, key + ": expected an integer, got '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& value, int line, const std::string& key) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size() || value.empty() || value[0] == '-')
        fail(line, key + ": expected an unsigned integer, got '" + value + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) parts.push_back(trim(item));
    return parts;
}

std::vector<double> parse_double_list(const std::string& value, int line,
                                      const std::string& key) {
    std::vector<double> out;
    for (const std::string& p : split_list(value)) out.push_back(parse_double(p, line, key));
    if (out.empty()) fail(line, key + ": expected a nonempty list");
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += fmt_double(v[i]);
    }
    return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value,
               int line) {
    if (key == "lattice.sites") {
        cfg.sites = static_cast<int>(parse_int(value, line, key));
    } else if (key == "lattice.geometry") {
        if (value == "ring") cfg.geometry = Geometry::Ring;
        else if (value == "line") cfg.geometry = Geometry::Line;
        else fail(line, "lattice.geometry: expected ring|line, got '" + value + "'");
    } else if (key == "lattice.spacing") {
        cfg.spacing = parse_double(value, line, key);
    } else if (key == "lattice.particles") {
        cfg.particles = static_cast<int>(parse_int(value, line, key));
    } else if (key == "hamiltonian.hopping") {
        cfg.hopping = parse_double(value, line, key);
    } else if (key == "hamiltonian.potential") {
        if (value == "zero") {
            cfg.potential = PotentialSpec{PotentialSpec::Kind::Zero, 0.0, {}};
        } else if (value.rfind("uniform:", 0) == 0) {
            cfg.potential = PotentialSpec{PotentialSpec::Kind::Uniform,
                                          parse_double(value.substr(8), line, key), {}};
        } else {
            cfg.potential = PotentialSpec{PotentialSpec::Kind::Explicit, 0.0,
                                          parse_double_list(value, line, key)};
        }
    } else if (key == "hamiltonian.coulomb") {
        cfg.coulomb = parse_double(value, line, key);
    } else if (key == "plan.algo") {
        if (value == "a1") cfg.algo = Algo::A1;
        else if (value == "a2") cfg.algo = Algo::A2;
        else if (value == "a2-online") cfg.algo = Algo::A2Online;
        else fail(line, "plan.algo: expected a1|a2|a2-online, got '" + value + "'");
    } else if (key == "plan.dt") {
        cfg.dt = parse_double(value, line, key);
    } else if (key == "plan.steps") {
        cfg.steps = static_cast<int>(parse_int(value, line, key));
    } else if (key == "plan.splitting") {
        if (value == "lie-trotter-1") cfg.splitting = Splitting::LieTrotter1;
        else if (value == "strang-2") cfg.splitting = Splitting::Strang2;
        else fail(line, "plan.splitting: expected lie-trotter-1|strang-2, got '" + value + "'");
    } else if (key == "plan.phase_bits") {
        if (value == "none") cfg.phase_bits.reset();
        else cfg.phase_bits = static_cast<int>(parse_int(value, line, key));
    } else if (key == "plan.orbitals") {
        if (value == "auto") {
            cfg.orbitals.reset();
        } else {
            std::vector<int> orbs;
            for (const std::string& p : split_list(value))
                orbs.push_back(static_cast<int>(parse_int(p, line, key)));
            cfg.orbitals = std::move(orbs);
        }
    } else if (key == "measurement.scheme") {
        if (value == "vn") cfg.scheme = Scheme::VonNeumann;
        else if (value == "kitaev") cfg.scheme = Scheme::Kitaev;
        else if (value == "kickback") cfg.scheme = Scheme::Kickback;
        else if (value == "ramsey") cfg.scheme = Scheme::Ramsey;
        else fail(line, "measurement.scheme: expected vn|kitaev|kickback|ramsey");
    } else if (key == "measurement.lambda") {
        cfg.lambda = parse_double(value, line, key);
    } else if (key == "measurement.times") {
        cfg.times = parse_double_list(value, line, key);
    } else if (key == "measurement.shots") {
        cfg.shots = static_cast<int>(parse_int(value, line, key));
    } else if (key == "measurement.seed") {
        cfg.seed = parse_u64(value, line, key);
    } else if (key == "measurement.pointer_sites") {
        cfg.pointer_sites = static_cast<int>(parse_int(value, line, key));
    } else if (key == "measurement.pulse") {
        if (value == "hadamard") cfg.pulse = RamseyPulse::Hadamard;
        else if (value == "pi-half") cfg.pulse = RamseyPulse::PiHalf;
        else fail(line, "measurement.pulse: expected hadamard|pi-half");
    } else if (key == "measurement.observable") {
        if (value.rfind("diag:", 0) == 0) {
            ObservableSpec spec;
            spec.kind = ObservableSpec::Kind::Diagonal;
            spec.diagonal = parse_double_list(value.substr(5), line, key);
            spec.dimension = static_cast<int>(spec.diagonal.size());
            cfg.observable = std::move(spec);
        } else if (value.rfind("random:", 0) == 0) {
            ObservableSpec spec;
            spec.kind = ObservableSpec::Kind::Random;
            spec.diagonal.clear();
            spec.dimension = static_cast<int>(parse_int(value.substr(7), line, key));
            cfg.observable = std::move(spec);
        } else {
            fail(line, "measurement.observable: expected diag:<list>|random:<d>");
        }
    } else if (key == "measurement.state") {
        if (value == "random") {
            cfg.state = StateSpec{StateSpec::Kind::Random, 1};
        } else if (value.rfind("eigenstate:", 0) == 0) {
            cfg.state = StateSpec{StateSpec::Kind::Eigenstate,
                                  static_cast<int>(parse_int(value.substr(11), line, key))};
        } else {
            fail(line, "measurement.state: expected eigenstate:<k>|random");
        }
    } else if (key == "output.path") {
        cfg.out_path = value;
    } else if (key == "output.format") {
        if (value != "tsv" && value != "csv")
            fail(line, "output.format: expected tsv|csv, got '" + value + "'");
        cfg.format = value;
    } else {
        fail(line, "unknown key '" + key + "'");
    }
}

void validate(const ExperimentConfig& cfg) {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    require(cfg.sites >= 2, "lattice.sites: must be >= 2");
    require(cfg.spacing > 0.0, "lattice.spacing: must be positive");
    require(cfg.particles >= 0 && cfg.particles <= cfg.sites,
            "lattice.particles: must be in 0..sites");
    require(cfg.coulomb >= 0.0, "hamiltonian.coulomb: must be >= 0");
    require(cfg.steps >= 1, "plan.steps: must be >= 1");
    require(std::isfinite(cfg.dt), "plan.dt: must be finite");
    require(!cfg.phase_bits || (*cfg.phase_bits >= 1 && *cfg.phase_bits <= 52),
            "plan.phase_bits: must be in 1..52 or none");
    if (cfg.potential.kind == PotentialSpec::Kind::Explicit)
        require(static_cast<int>(cfg.potential.values.size()) == cfg.sites,
                "hamiltonian.potential: list length must equal lattice.sites");
    if (cfg.orbitals) {
        require(static_cast<int>(cfg.orbitals->size()) == cfg.particles,
                "plan.orbitals: need exactly lattice.particles entries");
        for (std::size_t i = 0; i < cfg.orbitals->size(); ++i) {
            require((*cfg.orbitals)[i] >= 1 && (*cfg.orbitals)[i] <= cfg.sites,
                    "plan.orbitals: index out of range");
            require(i == 0 || (*cfg.orbitals)[i] > (*cfg.orbitals)[i - 1],
                    "plan.orbitals: must be strictly ascending");
        }
    }
    require(!cfg.times.empty(), "measurement.times: must be nonempty");
    require(cfg.shots >= 1, "measurement.shots: must be >= 1");
    require(cfg.pointer_sites >= 2, "measurement.pointer_sites: must be >= 2");
    require(cfg.observable.dimension >= 1, "measurement.observable: dimension must be >= 1");
    if (cfg.state.kind == StateSpec::Kind::Eigenstate)
        require(cfg.state.index >= 1 && cfg.state.index <= cfg.observable.dimension,
                "measurement.state: eigenstate index out of range");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            fail(line, "expected 'section.key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || key.find('.') == std::string::npos)
            fail(line, "expected a section.key name, got '" + key + "'");
        apply_key(cfg, key, value, line);
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "lattice.sites = " << cfg.sites << '\n';
    out << "lattice.geometry = " << geometry_name(cfg.geometry) << '\n';
    out << "lattice.spacing = " << fmt_double(cfg.spacing) << '\n';
    out << "lattice.particles = " << cfg.particles << '\n';
    out << "hamiltonian.hopping = " << fmt_double(cfg.hopping) << '\n';
    out << "hamiltonian.potential = ";
    switch (cfg.potential.kind) {
        case PotentialSpec::Kind::Zero: out << "zero"; break;
        case PotentialSpec::Kind::Uniform: out << "uniform:" << fmt_double(cfg.potential.uniform); break;
        case PotentialSpec::Kind::Explicit: out << join_doubles(cfg.potential.values); break;
    }
    out << '\n';
    out << "hamiltonian.coulomb = " << fmt_double(cfg.coulomb) << '\n';
    out << "plan.algo = " << algo_name(cfg.algo) << '\n';
    out << "plan.dt = " << fmt_double(cfg.dt) << '\n';
    out << "plan.steps = " << cfg.steps << '\n';
    out << "plan.splitting = " << splitting_name(cfg.splitting) << '\n';
    out << "plan.phase_bits = ";
    if (cfg.phase_bits) out << *cfg.phase_bits;
    else out << "none";
    out << '\n';
    out << "plan.orbitals = ";
    if (cfg.orbitals) {
        for (std::size_t i = 0; i < cfg.orbitals->size(); ++i) {
            if (i) out << ',';
            out << (*cfg.orbitals)[i];
        }
    } else {
        out << "auto";
    }
    out << '\n';
    out << "measurement.scheme = " << scheme_name(cfg.scheme) << '\n';
    out << "measurement.lambda = " << fmt_double(cfg.lambda) << '\n';
    out << "measurement.times = " << join_doubles(cfg.times) << '\n';
    out << "measurement.shots = " << cfg.shots << '\n';
    out << "measurement.seed = " << cfg.seed << '\n';
    out << "measurement.pointer_sites = " << cfg.pointer_sites << '\n';
    out << "measurement.pulse = "
        << (cfg.pulse == RamseyPulse::Hadamard ? "hadamard" : "pi-half") << '\n';
    out << "measurement.observable = ";
    if (cfg.observable.kind == ObservableSpec::Kind::Diagonal)
        out << "diag:" << join_doubles(cfg.observable.diagonal);
    else
        out << "random:" << cfg.observable.dimension;
    out << '\n';
    out << "measurement.state = ";
    if (cfg.state.kind == StateSpec::Kind::Eigenstate)
        out << "eigenstate:" << cfg.state.index;
    else
        out << "random";
    out << '\n';
    out << "output.path = " << cfg.out_path << '\n';
    out << "output.format = " << cfg.format << '\n';
    return out.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
    const std::uint64_t h = fnv1a64(emit_config(cfg));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace fockforge
