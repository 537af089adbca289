#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockforge/lattice.hpp"
#include "fockforge/measure.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

/// Invalid experiment configuration (parse failure, unknown key, or a
/// violated invariant). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Algo { A1, A2, A2Online };

struct PotentialSpec {
    enum class Kind { Zero, Uniform, Explicit };
    Kind kind = Kind::Zero;
    double uniform = 0.0;
    std::vector<double> values;
};

struct ObservableSpec {
    enum class Kind { Diagonal, Random };
    Kind kind = Kind::Diagonal;
    std::vector<double> diagonal = {0.0, 1.0, 2.0, 3.0};
    int dimension = 4;  // for Random
};

struct StateSpec {
    enum class Kind { Eigenstate, Random };
    Kind kind = Kind::Eigenstate;
    int index = 1;  // 1-based, ascending eigenvalue order
};

/// Line-oriented `section.key = value` experiment description. Every field
/// has a default; emit_config writes the full canonical form, so
/// load -> emit is idempotent byte-for-byte.
struct ExperimentConfig {
    // lattice
    int sites = 4;
    Geometry geometry = Geometry::Ring;
    double spacing = 1.0;
    int particles = 2;
    // hamiltonian
    double hopping = 1.0;
    PotentialSpec potential;
    double coulomb = 0.0;
    // plan
    Algo algo = Algo::A2;
    double dt = 0.05;
    int steps = 20;
    Splitting splitting = Splitting::Strang2;
    std::optional<int> phase_bits;
    std::optional<std::vector<int>> orbitals;  // nullopt: lowest-energy fill
    // measurement
    Scheme scheme = Scheme::Kickback;
    double lambda = 1.0;
    std::vector<double> times = {1.0};
    int shots = 1024;
    std::uint64_t seed = 1;
    int pointer_sites = 8;
    RamseyPulse pulse = RamseyPulse::Hadamard;
    ObservableSpec observable;
    StateSpec state;
    // output
    std::string out_path = "-";
    std::string format = "tsv";
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
std::string emit_config(const ExperimentConfig& cfg);

/// 16 hex digits of FNV-1a over the canonical emitted form; stamped into
/// every output header so results are self-describing.
std::string config_hash(const ExperimentConfig& cfg);

/// Shortest decimal representation that parses back to the same double.
std::string fmt_double(double v);

std::string geometry_name(Geometry g);
std::string splitting_name(Splitting s);
std::string algo_name(Algo a);

}  // namespace fockforge
