#include "bailout/experiment.hpp"

#include "bailout/parallel.hpp"
#include "bailout/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

namespace bailout {

namespace {

constexpr std::uint64_t kRoundingStream = std::uint64_t{1} << 40;
constexpr std::uint64_t kDependentStream = std::uint64_t{2} << 40;
constexpr std::uint64_t kPermutationStream = std::uint64_t{3} << 40;
constexpr std::uint64_t kPropertyStream = std::uint64_t{4} << 40;
constexpr std::uint64_t kFairRoundingStream = std::uint64_t{5} << 40;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

bool is_heuristic(const std::string &name) {
    return name == "wealth" || name == "outdegree" || name == "pagerank" || name == "eigencentrality" ||
           name == "random";
}

struct Cell {
    const ExperimentConfig &config;
    const Instance &instance;
    std::string label;
    std::uint64_t seed;
    std::size_t k;
    double budget;

    ResultRow row(const std::string &algorithm) const {
        ResultRow r;
        r.algorithm = algorithm;
        r.instance = label;
        r.k = k;
        r.budget = budget;
        r.seed = seed;
        r.samples = config.samples;
        return r;
    }

    ResultRow failed(const std::string &algorithm, const std::exception &e) const {
        ResultRow r = row(algorithm);
        r.mean = kNaN;
        r.std = kNaN;
        r.status = std::string("error: ") + e.what();
        return r;
    }
};

double budget_step(const ExperimentConfig &config, const Instance &instance) {
    if (config.ell)
        return *config.ell;
    return *std::max_element(instance.stimulus.begin(), instance.stimulus.end());
}

std::string default_label(const ExperimentConfig &config) {
    if (!config.label.empty())
        return config.label;
    if (config.instance_path)
        return config.instance_path->stem().string();
    return std::string(to_string(config.generator->kind));
}

struct PerSample {
    std::vector<double> opt_r;
    std::vector<std::vector<double>> z;
};

PerSample relax_all(const BailoutProblem &problem, const ShockBatch &batch, std::size_t workers) {
    PerSample out;
    out.opt_r.resize(batch.size());
    out.z.resize(batch.size());
    parallel_for(batch.size(), workers, [&](std::size_t i) {
        auto res = solve_relaxation(problem, batch[i]);
        out.opt_r[i] = res.opt_r;
        out.z[i] = std::move(res.allocation.z);
    });
    return out;
}

PerSample fair_relax_all(const BailoutProblem &problem, const FairnessSpec &spec, const ShockBatch &batch,
                         FairRoute route, std::size_t workers) {
    PerSample out;
    out.opt_r.resize(batch.size());
    out.z.resize(batch.size());
    parallel_for(batch.size(), workers, [&](std::size_t i) {
        auto res = solve_fair_relaxation(problem, spec, batch[i], route);
        out.opt_r[i] = res.opt_r;
        out.z[i] = std::move(res.allocation.z);
    });
    return out;
}

std::vector<double> average_z(const PerSample &s, std::size_t n) {
    std::vector<double> avg(n, 0.0);
    for (const auto &z : s.z)
        for (std::size_t j = 0; j < n; ++j)
            avg[j] += z[j];
    for (double &v : avg)
        v /= static_cast<double>(s.z.size());
    return avg;
}

template <class Fn> std::optional<double> defined(Fn &&fn) {
    try {
        return fn();
    } catch (const UndefinedMetric &) {
        return std::nullopt;
    }
}

// Realized coefficients of z; the configured kind decides the degenerate marker.
void fill_coefficients(ResultRow &row, std::span<const double> z, const Instance &instance, FairnessKind kind) {
    const auto &L = instance.stimulus;
    row.gini = defined([&] { return gini(z, L); });
    if (!instance.q.empty())
        row.pgc = defined([&] { return property_gini(z, L, instance.q); });
    row.sgc = defined([&] { return spatial_gini(z, L, instance.net); });
    const bool missing = (kind == FairnessKind::GC && !row.gini) || (kind == FairnessKind::PGC && !row.pgc) ||
                         (kind == FairnessKind::SGC && !row.sgc);
    if (missing && row.status == "ok")
        row.status = "degenerate-coefficient";
}

void set_stats(ResultRow &row, std::span<const double> values) {
    row.mean = mean_of(values);
    row.std = population_std(values);
}

FairnessSpec fairness_spec(const ExperimentConfig &config, const Instance &instance, double g) {
    FairnessSpec spec{config.fairness, g, {}};
    if (config.fairness == FairnessKind::PGC)
        spec.q = instance.q;
    spec.validate(instance.net.size());
    return spec;
}

template <class Body>
void for_each_cell(const ExperimentConfig &config, const Instance &instance, const ProgressFn &progress,
                   Body &&body) {
    const double step = budget_step(config, instance);
    const std::string label = default_label(config);
    for (std::uint64_t seed : config.seeds)
        for (std::size_t k : config.k_values) {
            Cell cell{config, instance, label, seed, k, step * static_cast<double>(k)};
            body(cell);
            if (progress)
                progress("seed " + std::to_string(seed) + " k " + std::to_string(k) + " done");
        }
}

} // namespace

const std::vector<std::string> &known_algorithms() {
    static const std::vector<std::string> names{"greedy", "rounding", "dependent-rounding", "brute-force", "wealth",
                                                "outdegree", "pagerank", "eigencentrality", "random"};
    return names;
}

void ExperimentConfig::validate() const {
    if (instance_path.has_value() == generator.has_value())
        throw ConfigError("exactly one of an instance file and a generator must be given");
    if (algorithms.empty())
        throw ConfigError("no algorithms selected");
    for (const auto &a : algorithms)
        if (std::find(known_algorithms().begin(), known_algorithms().end(), a) == known_algorithms().end())
            throw ConfigError("unknown algorithm '" + a + "'");
    if (k_values.empty())
        throw ConfigError("budget range is empty");
    if (samples == 0)
        throw ConfigError("at least one shock sample is required");
    if (seeds.empty())
        throw ConfigError("at least one seed is required");
    if (ell && !(*ell >= 0 && std::isfinite(*ell)))
        throw ConfigError("budget step must be finite and non-negative");
    if (!(accuracy > 0 && accuracy < 1))
        throw ConfigError("rounding accuracy must lie in (0, 1)");
    for (double g : g_values)
        if (!(g >= 0 && g <= 1))
            throw ConfigError("fairness bounds must lie in [0, 1]");
    if (q_source != "instance" && q_source != "synthetic")
        throw ConfigError("q source must be 'instance' or 'synthetic'");
    static const std::set<std::string> objectives{"sop", "soip", "sot", "fs", "as", "custom"};
    if (!objectives.count(objective.name))
        throw ConfigError("unknown objective '" + objective.name + "'");
    if (objective.name == "custom" && objective.v.empty())
        throw ConfigError("custom objective needs coefficients");
    if (objective.epsilon < 0)
        throw ConfigError("augmentation epsilon must be non-negative");
}

Instance resolve_instance(const ExperimentConfig &config) {
    Instance inst = config.instance_path ? load_instance(*config.instance_path) : generate(*config.generator);
    const std::size_t n = inst.net.size();
    if (inst.stimulus.empty())
        inst.stimulus.assign(n, 1.0);
    if (config.q_source == "synthetic") {
        SeededRng rng(config.q_seed, kPropertyStream);
        inst.q = synthetic_property(n, rng);
    }
    if (config.fairness == FairnessKind::PGC && !config.g_values.empty() && inst.q.empty())
        throw ConfigError("PGC needs a property vector: add a q column or use the synthetic source");
    if (config.objective.name == "custom" && config.objective.v.size() != n)
        throw ConfigError("custom objective has " + std::to_string(config.objective.v.size()) +
                          " coefficients for " + std::to_string(n) + " nodes");
    return inst;
}

Objective make_objective(const ObjectiveConfig &config, const FinancialNetwork &net, double budget) {
    if (config.name == "custom")
        return Objective::linear(config.v, false);
    if (config.name == "as") {
        const auto as = Objective::absolute_solvency();
        if (config.epsilon > 0 && budget > 0)
            return Objective::epsilon_augment(as, config.epsilon, budget, net.beta_max());
        return as;
    }
    const auto kind = parse_linear_kind(config.name);
    return Objective::linear(linear_coefficients(kind, net, CoefficientUse::EvaluationOnly), false);
}

ShockBatch shared_batch(const Instance &instance, std::uint64_t seed, std::size_t k, std::size_t m) {
    return instance.shocks.sample_batch(SeededRng(seed, k), m);
}

ResultsTable run_comparison(const ExperimentConfig &config, const ProgressFn &progress) {
    config.validate();
    const Instance instance = resolve_instance(config);
    const std::size_t workers = config.workers;
    ResultsTable table;

    for_each_cell(config, instance, progress, [&](const Cell &cell) {
        const auto objective = make_objective(config.objective, instance.net, cell.budget);
        const BailoutProblem problem(instance.net, instance.stimulus, cell.budget, objective, instance.shocks);
        const auto batch = shared_batch(instance, cell.seed, cell.k, config.samples);
        const double scale = config.timing ? 1.0 : 0.0;

        std::optional<PerSample> relaxed;
        std::optional<double> opt_r;
        std::string relax_error;
        double relax_ms = 0.0;
        if (objective.is_linear()) {
            try {
                Stopwatch sw;
                relaxed = relax_all(problem, batch, workers);
                relax_ms = sw.ms();
                opt_r = mean_of(relaxed->opt_r);
            } catch (const std::exception &e) {
                relax_error = e.what();
            }
        }

        for (const auto &name : config.algorithms) {
            try {
                Stopwatch sw;
                ResultRow row = cell.row(name);
                row.opt_r = opt_r;
                if (name == "rounding" || name == "dependent-rounding") {
                    if (!objective.is_linear())
                        throw InvalidInput("rounding needs a linear objective");
                    if (!relaxed)
                        throw SolverError("relaxation failed: " + relax_error);
                    std::vector<double> values(batch.size()), spent(batch.size());
                    const bool dependent = name == "dependent-rounding";
                    const SeededRng base(cell.seed, (dependent ? kDependentStream : kRoundingStream) + cell.k);
                    RoundingOptions opts;
                    opts.trials = config.trials;
                    opts.accuracy = config.accuracy;
                    opts.strict = config.strict_rounding;
                    parallel_for(batch.size(), workers, [&](std::size_t i) {
                        auto rng = base.substream(i);
                        const auto frac = Allocation::fractional(relaxed->z[i], problem);
                        if (dependent) {
                            const auto z = round_dependent(frac, problem, rng);
                            values[i] = allocation_value(problem, z.z, batch[i]);
                            spent[i] = z.spent;
                        } else {
                            const auto res = round_independent(frac, problem, batch[i], rng, opts);
                            values[i] = res.value;
                            spent[i] = res.allocation.spent;
                        }
                    });
                    set_stats(row, values);
                    row.spent = mean_of(spent);
                    row.wall_ms = (sw.ms() + relax_ms) * scale;
                } else {
                    Allocation alloc;
                    if (name == "greedy") {
                        alloc = greedy(problem, batch, GreedyOptions{workers}).allocation;
                    } else if (name == "brute-force") {
                        BruteForceOptions opts;
                        opts.cap = config.brute_force_cap;
                        opts.workers = workers;
                        alloc = brute_force(problem, batch, opts).allocation;
                    } else if (is_heuristic(name)) {
                        SeededRng rng(cell.seed, kPermutationStream);
                        alloc = heuristic(parse_heuristic_kind(name), problem, rng);
                    }
                    const auto report = evaluate_allocation(problem, alloc, batch, workers);
                    row.mean = report.mean;
                    row.std = report.std;
                    row.spent = alloc.spent;
                    row.wall_ms = sw.ms() * scale;
                }
                table.rows.push_back(std::move(row));
            } catch (const std::exception &e) {
                table.rows.push_back(cell.failed(name, e));
            }
        }
    });
    return table;
}

ResultsTable run_fairness_sweep(const ExperimentConfig &config, const ProgressFn &progress) {
    config.validate();
    if (config.g_values.empty())
        throw ConfigError("fairness sweep needs at least one g");
    const Instance instance = resolve_instance(config);
    const std::size_t n = instance.net.size();
    const std::size_t workers = config.workers;
    const double scale = config.timing ? 1.0 : 0.0;
    ResultsTable table;

    for_each_cell(config, instance, progress, [&](const Cell &cell) {
        const auto objective = make_objective(config.objective, instance.net, cell.budget);
        const BailoutProblem problem(instance.net, instance.stimulus, cell.budget, objective, instance.shocks);
        const auto batch = shared_batch(instance, cell.seed, cell.k, config.samples);

        try {
            if (!objective.is_linear())
                throw InvalidInput("fairness sweep needs a linear objective");
            Stopwatch sw;
            const auto free = relax_all(problem, batch, workers);
            ResultRow row = cell.row("lp");
            set_stats(row, free.opt_r);
            row.opt_r = row.mean;
            const auto avg = average_z(free, n);
            row.spent = Allocation::fractional(avg, problem).spent;
            fill_coefficients(row, avg, instance, config.fairness);
            row.wall_ms = sw.ms() * scale;
            table.rows.push_back(std::move(row));
        } catch (const std::exception &e) {
            table.rows.push_back(cell.failed("lp", e));
        }

        for (double g : config.g_values) {
            std::optional<PerSample> fair;
            try {
                Stopwatch sw;
                const auto spec = fairness_spec(config, instance, g);
                fair = fair_relax_all(problem, spec, batch, config.route, workers);
                ResultRow row = cell.row("fair-lp");
                row.g = g;
                set_stats(row, fair->opt_r);
                row.opt_r = row.mean;
                const auto avg = average_z(*fair, n);
                row.spent = Allocation::fractional(avg, problem).spent;
                fill_coefficients(row, avg, instance, config.fairness);
                row.wall_ms = sw.ms() * scale;
                table.rows.push_back(std::move(row));
            } catch (const std::exception &e) {
                ResultRow row = cell.failed("fair-lp", e);
                row.g = g;
                table.rows.push_back(std::move(row));
                continue;
            }

            try {
                Stopwatch sw;
                const auto spec = fairness_spec(config, instance, g);
                std::vector<double> values(batch.size()), spent(batch.size());
                std::vector<std::vector<double>> chosen(batch.size());
                const SeededRng base(cell.seed, kFairRoundingStream + cell.k);
                RoundingOptions opts;
                opts.trials = config.trials;
                opts.accuracy = config.accuracy;
                opts.strict = config.strict_rounding;
                opts.accept = [&](const Allocation &a) {
                    return satisfies_fairness(spec, a.z, instance.stimulus, instance.net);
                };
                parallel_for(batch.size(), workers, [&](std::size_t i) {
                    auto rng = base.substream(i);
                    const auto frac = Allocation::fractional(fair->z[i], problem);
                    const auto res = round_independent(frac, problem, batch[i], rng, opts);
                    values[i] = res.value;
                    spent[i] = res.allocation.spent;
                    chosen[i] = res.allocation.z;
                });
                ResultRow row = cell.row("fair-rounding");
                row.g = g;
                set_stats(row, values);
                row.opt_r = mean_of(fair->opt_r);
                row.spent = mean_of(spent);
                PerSample picked{{}, std::move(chosen)};
                fill_coefficients(row, average_z(picked, n), instance, config.fairness);
                row.wall_ms = sw.ms() * scale;
                table.rows.push_back(std::move(row));
            } catch (const std::exception &e) {
                ResultRow row = cell.failed("fair-rounding", e);
                row.g = g;
                table.rows.push_back(std::move(row));
            }
        }
    });
    return table;
}

ResultsTable run_pof_curve(const ExperimentConfig &config, const ProgressFn &progress) {
    config.validate();
    if (config.g_values.empty())
        throw ConfigError("PoF curve needs at least one g");
    const Instance instance = resolve_instance(config);
    const double scale = config.timing ? 1.0 : 0.0;
    ResultsTable table;

    auto record = [&](const Cell &cell, const std::string &name, double g, const PofResult &pof, double ms) {
        ResultRow row = cell.row(name);
        row.g = g;
        row.mean = pof.constrained;
        row.std = 0.0;
        row.opt_r = pof.constrained;
        row.pof = pof.infinite ? std::numeric_limits<double>::infinity() : pof.pof;
        if (pof.infinite)
            row.status = "infinite-pof";
        row.wall_ms = ms * scale;
        table.rows.push_back(std::move(row));
    };

    for_each_cell(config, instance, progress, [&](const Cell &cell) {
        const auto objective = make_objective(config.objective, instance.net, cell.budget);
        const BailoutProblem problem(instance.net, instance.stimulus, cell.budget, objective, instance.shocks);
        const auto batch = shared_batch(instance, cell.seed, cell.k, config.samples);
        for (double g : config.g_values) {
            try {
                Stopwatch sw;
                const auto spec = fairness_spec(config, instance, g);
                record(cell, "fractional-pof", g, fractional_pof(problem, spec, batch, config.route), sw.ms());
            } catch (const std::exception &e) {
                ResultRow row = cell.failed("fractional-pof", e);
                row.g = g;
                table.rows.push_back(std::move(row));
            }
            if (!config.discrete_pof)
                continue;
            try {
                Stopwatch sw;
                const auto spec = fairness_spec(config, instance, g);
                record(cell, "discrete-pof", g, discrete_pof(problem, spec, batch, config.brute_force_cap), sw.ms());
            } catch (const std::exception &e) {
                ResultRow row = cell.failed("discrete-pof", e);
                row.g = g;
                table.rows.push_back(std::move(row));
            }
        }
    });
    return table;
}

bool has_failures(const ResultsTable &table) {
    return std::any_of(table.rows.begin(), table.rows.end(),
                       [](const ResultRow &r) { return r.status.rfind("error", 0) == 0; });
}

} // namespace bailout
