#pragma once

#include "bailout/errors.hpp"
#include "bailout/fairness.hpp"
#include "bailout/instances.hpp"
#include "bailout/io.hpp"
#include "bailout/objectives.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bailout {

/// A configuration that cannot be run (unknown names, empty ranges, missing instance).
class ConfigError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Names accepted in ExperimentConfig::algorithms.
///   greedy, rounding, dependent-rounding, brute-force,
///   wealth, outdegree, pagerank, eigencentrality, random
const std::vector<std::string> &known_algorithms();

struct ObjectiveConfig {
    /// sop, soip, sot, fs, as, or custom (uses `v`)
    std::string name = "sop";
    std::vector<double> v;
    /// AS only: when positive the augmented objective with this epsilon is used.
    double epsilon = 0.0;
};

struct ExperimentConfig {
    std::optional<std::filesystem::path> instance_path;
    std::optional<GeneratorSpec> generator;
    std::string label; ///< instance column; defaults to the file stem or generator name

    std::vector<std::string> algorithms{"greedy", "rounding", "wealth", "outdegree", "pagerank", "random"};
    ObjectiveConfig objective;

    /// Budget schedule budget(k) = ell * k; unset selects the largest stimulus.
    std::optional<double> ell;
    std::vector<std::size_t> k_values{1};

    std::size_t samples = 20;        ///< m, shock draws per (k, seed)
    std::size_t trials = 0;          ///< T, rounding draws per sample (0 selects the default)
    double accuracy = 0.1;
    bool strict_rounding = false;    ///< reject every over-budget draw
    std::vector<std::uint64_t> seeds{0};
    std::size_t brute_force_cap = 1'000'000;

    FairnessKind fairness = FairnessKind::GC;
    std::vector<double> g_values;
    /// PGC property: "instance" reads q from the instance, "synthetic" draws Beta(2, 5).
    std::string q_source = "instance";
    std::uint64_t q_seed = 0;
    FairRoute route = FairRoute::Auto;
    bool discrete_pof = false;

    std::size_t workers = 0; ///< 0 selects available parallelism
    bool timing = true;      ///< false writes wall_ms = 0 for byte-identical reruns

    /// Throws ConfigError.
    void validate() const;
};

/// Loads or generates the instance; fills in a missing stimulus with ones and
/// a synthetic q when requested.
Instance resolve_instance(const ExperimentConfig &config);

Objective make_objective(const ObjectiveConfig &config, const FinancialNetwork &net, double budget);

/// Shock batch shared by every algorithm at budget level k under `seed`.
ShockBatch shared_batch(const Instance &instance, std::uint64_t seed, std::size_t k, std::size_t m);

/// Progress sink, one line per finished cell; may be empty.
using ProgressFn = std::function<void(const std::string &)>;

/**
 * For every seed, k and algorithm: allocation (per sample for the rounding
 * algorithms, once per batch otherwise) evaluated over the shared batch.
 * Every row of a cell carries the mean relaxation optimum in opt_r when the
 * objective is linear. Solver failures become rows with a non-ok status.
 */
ResultsTable run_comparison(const ExperimentConfig &config, const ProgressFn &progress = {});

/**
 * For every seed, k and g: mean fair relaxation optimum ("fair-lp"), best fair
 * rounding per sample ("fair-rounding"), plus the unconstrained "lp" row.
 * Realized coefficients are computed on the sample-averaged fractional solution.
 */
ResultsTable run_fairness_sweep(const ExperimentConfig &config, const ProgressFn &progress = {});

/// Fractional PoF per (seed, k, g); discrete PoF rows as well when requested.
ResultsTable run_pof_curve(const ExperimentConfig &config, const ProgressFn &progress = {});

/// True when any row carries an error status; infinite-PoF and degenerate-coefficient markers are not failures.
bool has_failures(const ResultsTable &table);

} // namespace bailout
