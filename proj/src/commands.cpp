#include "fockforge/commands.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fockforge/bridge.hpp"
#include "fockforge/firstq.hpp"
#include "fockforge/fock.hpp"
#include "fockforge/measure.hpp"
#include "fockforge/oracle.hpp"
#include "fockforge/rng.hpp"

namespace fockforge {

namespace {

// ------------------------------ table output --------------------------------

class Table {
  public:
    Table(const ExperimentConfig& cfg, const CommandOptions& opts,
          const std::string& command)
        : sep_(opts.format.value_or(cfg.format) == "csv" ? ',' : '\t') {
        out_ << "# fockforge " << command << sep_ << "config=" << config_hash(cfg)
             << sep_ << "seed=" << opts.seed.value_or(cfg.seed) << '\n';
    }

    void columns(const std::vector<std::string>& names) {
        out_ << '#';
        for (std::size_t i = 0; i < names.size(); ++i)
            out_ << (i == 0 ? " " : std::string(1, sep_)) << names[i];
        out_ << '\n';
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << sep_;
            out_ << cells[i];
        }
        out_ << '\n';
    }

    void comment(const std::string& text) { out_ << "# " << text << '\n'; }

    std::string str() const { return out_.str(); }

  private:
    char sep_;
    std::ostringstream out_;
};

std::string fmt(double v) { return fmt_double(v); }

// --------------------------- ingredient builders ----------------------------

struct Ingredients {
    LatticeSpec spec;
    KineticMatrix kinetic;
    PotentialField potential;
    PairInteraction interaction;
    MomentumTransform transform;
};

PotentialField build_potential(const ExperimentConfig& cfg) {
    PotentialField v = PotentialField::Zero(cfg.sites);
    switch (cfg.potential.kind) {
        case PotentialSpec::Kind::Zero: break;
        case PotentialSpec::Kind::Uniform: v.setConstant(cfg.potential.uniform); break;
        case PotentialSpec::Kind::Explicit:
            for (int i = 0; i < cfg.sites; ++i) v(i) = cfg.potential.values[i];
            break;
    }
    return v;
}

Ingredients build_ingredients(const ExperimentConfig& cfg) {
    LatticeSpec spec(cfg.sites, cfg.geometry, cfg.spacing);
    KineticMatrix kinetic = (cfg.geometry == Geometry::Ring)
                                ? build_ring_kinetic(spec, cfg.hopping)
                                : build_line_kinetic(spec, cfg.hopping);
    PotentialField v = build_potential(cfg);
    PairInteraction w = coulomb_interaction(spec, cfg.coulomb);
    MomentumTransform transform = momentum_transform(kinetic);
    return Ingredients{spec, std::move(kinetic), std::move(v), std::move(w),
                       std::move(transform)};
}

SecondQuantHamiltonian second_quant_hamiltonian(const Ingredients& ing) {
    return SecondQuantHamiltonian(
        ing.kinetic.entries + Eigen::MatrixXcd(ing.potential.cast<Complex>().asDiagonal()),
        ing.interaction);
}

// Occupied orbitals: explicit config list, or the N lowest-eigenvalue
// transform columns (ties resolved toward the lower index).
std::vector<int> resolve_orbitals(const ExperimentConfig& cfg, const Ingredients& ing) {
    if (cfg.orbitals) return *cfg.orbitals;
    const int m = cfg.sites;
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return ing.transform.eigenvalues(a) < ing.transform.eigenvalues(b);
    });
    std::vector<int> occupied(order.begin(), order.begin() + cfg.particles);
    for (int& idx : occupied) ++idx;  // 1-based
    std::sort(occupied.begin(), occupied.end());
    return occupied;
}

// Antisymmetric-subspace spectrum of the first-quantized Hamiltonian: one
// orthonormal antisymmetrized basis vector per ascending site combination.
Eigen::VectorXd first_quant_sector_spectrum(const Ingredients& ing, int n) {
    const int m = ing.spec.sites;
    const std::size_t dim = first_quant_dim(m, n);
    const Eigen::MatrixXcd h1 =
        first_quant_hamiltonian_dense(m, n, ing.kinetic, ing.potential, ing.interaction);

    const SectorBasis sector = build_sector(m, n);
    Eigen::MatrixXcd basis(dim, sector.bitstrings.size());
    Eigen::Index col = 0;
    for (std::uint32_t s : sector.bitstrings) {
        std::vector<int> tuple;
        std::uint32_t rest = s;
        while (rest) {
            tuple.push_back(std::countr_zero(rest) + 1);
            rest &= rest - 1;
        }
        Eigen::VectorXcd raw = Eigen::VectorXcd::Zero(dim);
        raw(n == 0 ? 0 : tuple_to_index(m, n, tuple)) = 1.0;
        basis.col(col++) = antisymmetrize(raw, n, m).amplitudes;
    }
    return exact_spectrum(basis.adjoint() * h1 * basis);
}

Eigen::VectorXd second_quant_sector_spectrum(const Ingredients& ing, int n) {
    const SectorBasis sector = build_sector(ing.spec.sites, n);
    const SecondQuantHamiltonian h2 = second_quant_hamiltonian(ing);
    return exact_spectrum(build_hamiltonian_matrix(h2, &sector));
}

// ------------------------------- measurement --------------------------------

Observable build_observable(const ExperimentConfig& cfg, std::uint64_t seed) {
    if (cfg.observable.kind == ObservableSpec::Kind::Diagonal) {
        const int d = cfg.observable.dimension;
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
        for (int i = 0; i < d; ++i) a(i, i) = cfg.observable.diagonal[i];
        return Observable(a);
    }
    const int d = cfg.observable.dimension;
    auto engine = seeded_engine(seed, "observable");
    auto gaussian = [&engine] {
        const double u1 = std::max(next_uniform(engine), 1e-300);
        const double u2 = next_uniform(engine);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    Eigen::MatrixXcd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(gaussian(), gaussian());
    return Observable(0.5 * (g + Eigen::MatrixXcd(g.adjoint())));
}

Eigen::VectorXcd build_system_state(const ExperimentConfig& cfg, const Observable& a,
                                    std::uint64_t seed) {
    if (cfg.state.kind == StateSpec::Kind::Eigenstate) return a.eigenstate(cfg.state.index);
    auto engine = seeded_engine(seed, "state");
    auto gaussian = [&engine] {
        const double u1 = std::max(next_uniform(engine), 1e-300);
        const double u2 = next_uniform(engine);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    Eigen::VectorXcd v(a.dimension());
    for (int i = 0; i < a.dimension(); ++i) v(i) = Complex(gaussian(), gaussian());
    v.normalize();
    return v;
}

}  // namespace

// =============================== subcommands ================================

std::string run_spectrum(const ExperimentConfig& cfg, const CommandOptions& opts) {
    const Ingredients ing = build_ingredients(cfg);
    const int n = cfg.particles;
    Table table(cfg, opts, "spectrum");

    if (opts.cross_check) {
        const Eigen::VectorXd ev1 = first_quant_sector_spectrum(ing, n);
        const Eigen::VectorXd ev2 = second_quant_sector_spectrum(ing, n);
        table.columns({"index", "eigenvalue_a1", "eigenvalue_a2", "abs_deviation"});
        double worst = 0.0;
        for (Eigen::Index i = 0; i < ev1.size(); ++i) {
            const double dev = std::abs(ev1(i) - ev2(i));
            worst = std::max(worst, dev);
            table.row({std::to_string(i + 1), fmt(ev1(i)), fmt(ev2(i)), fmt(dev)});
        }
        table.comment("max_deviation=" + fmt(worst));
        return table.str();
    }

    const Eigen::VectorXd evals = (cfg.algo == Algo::A1)
                                      ? first_quant_sector_spectrum(ing, n)
                                      : second_quant_sector_spectrum(ing, n);
    table.columns({"index", "eigenvalue"});
    for (Eigen::Index i = 0; i < evals.size(); ++i)
        table.row({std::to_string(i + 1), fmt(evals(i))});
    return table.str();
}

std::string run_evolve(const ExperimentConfig& cfg, const CommandOptions& opts) {
    const Ingredients ing = build_ingredients(cfg);
    const int m = cfg.sites;
    const int n = cfg.particles;
    const std::vector<int> occupied = resolve_orbitals(cfg, ing);

    Table table(cfg, opts, "evolve");
    std::vector<std::string> cols = {"step", "time", "fidelity"};
    for (int p = 1; p <= m; ++p) cols.push_back("occ_" + std::to_string(p));
    table.columns(cols);

    const FirstQuantState psi0 =
        slater_state(ing.transform.matrix.transpose(), occupied, m, n);

    if (cfg.algo == Algo::A1) {
        const Eigen::MatrixXcd h1 = first_quant_hamiltonian_dense(
            m, n, ing.kinetic, ing.potential, ing.interaction);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h1);
        const Eigen::VectorXcd coeff0 = es.eigenvectors().adjoint() * psi0.amplitudes;

        FirstQuantState psi = psi0;
        const A1Plan step_plan(cfg.dt, 1, cfg.splitting, cfg.phase_bits);
        for (int step = 0; step <= cfg.steps; ++step) {
            if (step > 0)
                psi = evolve_a1(psi, step_plan, ing.potential, ing.interaction,
                                ing.transform);
            const double t = step * cfg.dt;
            Eigen::VectorXcd phases(es.eigenvalues().size());
            for (Eigen::Index k = 0; k < phases.size(); ++k)
                phases(k) = std::exp(Complex(0.0, -es.eigenvalues()(k) * t));
            const Eigen::VectorXcd oracle =
                es.eigenvectors() * phases.cwiseProduct(coeff0);
            const double fid = std::abs(oracle.dot(psi.amplitudes));

            std::vector<double> occ(m, 0.0);
            for (std::size_t idx = 0; idx < first_quant_dim(m, n); ++idx) {
                const double w = std::norm(psi.amplitudes(idx));
                if (w == 0.0) continue;
                for (int site : index_to_tuple(m, n, idx)) occ[site - 1] += w;
            }
            std::vector<std::string> cells = {std::to_string(step), fmt(t), fmt(fid)};
            for (double o : occ) cells.push_back(fmt(o));
            table.row(cells);
        }
        return table.str();
    }

    // A2 / A2-online evolve in the full Fock space from the Slater image.
    const SecondQuantHamiltonian h2 = second_quant_hamiltonian(ing);
    const FockState fock0 = first_to_fock(psi0);
    const Eigen::MatrixXcd h2_full = build_hamiltonian_matrix(h2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h2_full);
    const Eigen::VectorXcd coeff0 = es.eigenvectors().adjoint() * fock0.amplitudes;

    const A2Mode mode = (cfg.algo == Algo::A2Online) ? A2Mode::Online : A2Mode::Precomputed;
    const A2Plan step_plan(cfg.dt, 1, cfg.splitting, mode, cfg.phase_bits);
    FockState fock = fock0;
    for (int step = 0; step <= cfg.steps; ++step) {
        if (step > 0) fock = evolve_a2(fock, step_plan, h2, ing.spec);
        const double t = step * cfg.dt;
        Eigen::VectorXcd phases(es.eigenvalues().size());
        for (Eigen::Index k = 0; k < phases.size(); ++k)
            phases(k) = std::exp(Complex(0.0, -es.eigenvalues()(k) * t));
        const Eigen::VectorXcd oracle = es.eigenvectors() * phases.cwiseProduct(coeff0);
        const double fid = std::abs(oracle.dot(fock.amplitudes));

        std::vector<double> occ(m, 0.0);
        for (Eigen::Index s = 0; s < fock.amplitudes.size(); ++s) {
            const double w = std::norm(fock.amplitudes(s));
            if (w == 0.0) continue;
            for (int p = 1; p <= m; ++p)
                if (static_cast<std::uint32_t>(s) & (std::uint32_t{1} << (p - 1)))
                    occ[p - 1] += w;
        }
        std::vector<std::string> cells = {std::to_string(step), fmt(t), fmt(fid)};
        for (double o : occ) cells.push_back(fmt(o));
        table.row(cells);
    }
    return table.str();
}

std::string run_compare(const ExperimentConfig& cfg, const CommandOptions& opts) {
    const Ingredients ing = build_ingredients(cfg);
    const std::vector<int> occupied = resolve_orbitals(cfg, ing);
    const double t = cfg.dt * cfg.steps;
    const FidelityReport report =
        compare_evolutions(ing.spec, ing.kinetic, ing.potential, ing.interaction,
                           occupied, t, cfg.steps, cfg.splitting);

    Table table(cfg, opts, "compare");
    table.columns({"method", "fidelity"});
    table.row({"oracle", fmt(report.oracle_fidelity)});
    table.row({"trotter", fmt(report.trotter_fidelity)});
    table.comment("t=" + fmt(report.time) + " steps=" + std::to_string(report.steps));
    return table.str();
}

std::string run_measure(const ExperimentConfig& cfg, const CommandOptions& opts) {
    const std::uint64_t seed = opts.seed.value_or(cfg.seed);
    const Observable a = build_observable(cfg, seed);
    const Eigen::VectorXcd system = build_system_state(cfg, a, seed);

    Table table(cfg, opts, "measure");

    if (opts.estimate) {
        const EigenvalueEstimate est =
            estimate_eigenvalue(a, system, cfg.times, cfg.shots, seed);
        table.columns({"lambda_hat", "aliasing_window", "shots", "n_times"});
        table.row({fmt(est.lambda_hat), fmt(est.window), std::to_string(cfg.shots),
                   std::to_string(cfg.times.size())});
        return table.str();
    }

    if (opts.all) {
        if (cfg.state.kind != StateSpec::Kind::Eigenstate)
            throw ConfigError("measure --all requires measurement.state = eigenstate:<k>");
        const double lambda = a.eigenvalues()(cfg.state.index - 1);
        table.columns({"time", "outcome", "vn", "kitaev", "kickback", "ramsey"});
        double worst = 0.0;
        for (double t : cfg.times) {
            const SchemeResult vn = von_neumann_measure(a, system, 2, t);
            const SchemeResult kit = kitaev_circuit(a, t, system);
            const SchemeResult kb = phase_kickback_circuit(lambda, t);
            const SchemeResult rm = ramsey_protocol(lambda, t, RamseyPulse::Hadamard);
            for (int outcome = 0; outcome < 2; ++outcome) {
                const double probs[4] = {vn.distribution(outcome), kit.distribution(outcome),
                                         kb.distribution(outcome), rm.distribution(outcome)};
                for (int i = 0; i < 4; ++i)
                    for (int j = i + 1; j < 4; ++j)
                        worst = std::max(worst, std::abs(probs[i] - probs[j]));
                table.row({fmt(t), std::to_string(outcome), fmt(probs[0]), fmt(probs[1]),
                           fmt(probs[2]), fmt(probs[3])});
            }
        }
        table.comment("max_pairwise_deviation=" + fmt(worst));
        return table.str();
    }

    switch (cfg.scheme) {
        case Scheme::VonNeumann: {
            const SchemeResult r = von_neumann_measure(a, system, cfg.pointer_sites);
            table.columns({"pointer_x", "probability"});
            for (Eigen::Index x = 0; x < r.distribution.size(); ++x)
                table.row({std::to_string(x), fmt(r.distribution(x))});
            break;
        }
        case Scheme::Kitaev: {
            table.columns({"time", "p0", "p1"});
            for (double t : cfg.times) {
                const SchemeResult r = kitaev_circuit(a, t, system);
                table.row({fmt(t), fmt(r.distribution(0)), fmt(r.distribution(1))});
            }
            break;
        }
        case Scheme::Kickback: {
            table.columns({"time", "p0", "p1"});
            for (double t : cfg.times) {
                const SchemeResult r = phase_kickback_circuit(cfg.lambda, t);
                table.row({fmt(t), fmt(r.distribution(0)), fmt(r.distribution(1))});
            }
            break;
        }
        case Scheme::Ramsey: {
            table.columns({"time", "p0", "p1"});
            for (double t : cfg.times) {
                const SchemeResult r = ramsey_protocol(cfg.lambda, t, cfg.pulse);
                table.row({fmt(t), fmt(r.distribution(0)), fmt(r.distribution(1))});
            }
            break;
        }
    }
    return table.str();
}

std::string run_resources(const ExperimentConfig& cfg, const CommandOptions& opts) {
    const int m = cfg.sites;
    const int n = cfg.particles;
    const long long onebody_a2 = static_cast<long long>(m) * (m - 1) / 2 + m;
    const long long pair_a2 = static_cast<long long>(m) * (m - 1) / 2;
    const long long pairs_n = static_cast<long long>(n) * (n - 1) / 2;

    auto arithmetic = [&]() -> std::string {
        if (pairs_n == 0) return "0";
        if (!cfg.phase_bits) return "-";
        const long long b = *cfg.phase_bits;
        return std::to_string(b * b * pairs_n);
    };

    Table table(cfg, opts, "resources");
    table.columns({"algorithm", "qubits", "onebody_exponentials", "pair_exponentials",
                   "pair_arithmetic_formula", "pair_arithmetic_value", "spatial_scaling"});
    table.row({"a1", std::to_string(qubit_cost_a1(m, n)), std::to_string(n),
               std::to_string(pairs_n), "b^2*N*(N-1)/2", arithmetic(), "electrons"});
    table.row({"a2", std::to_string(qubit_cost_a2(m)), std::to_string(onebody_a2),
               std::to_string(pair_a2), "-", "-", "sites"});
    table.row({"a2-online", std::to_string(qubit_cost_a2(m)), std::to_string(onebody_a2),
               std::to_string(pairs_n), "b^2*N*(N-1)/2", arithmetic(), "electrons"});
    return table.str();
}

std::string run_command(const std::string& command, const ExperimentConfig& cfg,
                        const CommandOptions& opts) {
    if (command == "spectrum") return run_spectrum(cfg, opts);
    if (command == "evolve") return run_evolve(cfg, opts);
    if (command == "compare") return run_compare(cfg, opts);
    if (command == "measure") return run_measure(cfg, opts);
    if (command == "resources") return run_resources(cfg, opts);
    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace fockforge
