// bailout_cli: clearing, optimization and experiment sweeps from the command line.
//
// Exit codes: 0 success, 1 unexpected failure, 2 configuration or input error,
// 3 the run finished but some cells failed.

#include "bailout/experiment.hpp"
#include "bailout/fairness.hpp"
#include "bailout/io.hpp"
#include "bailout/network.hpp"
#include "bailout/spectral.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <numeric>

using namespace bailout;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kConfigError = 2;
constexpr int kPartial = 3;

struct GeneratorFlags {
    std::string kind;
    GeneratorSpec spec;
};

void add_generator_flags(CLI::App *app, GeneratorFlags &g) {
    app->add_option("--generator", g.kind,
                    "star-pof, two-clique, complete-gap, path-threshold, set-cover-gadget, layered-gadget, random-er");
    app->add_option("--n", g.spec.n, "generator size");
    app->add_option("--r", g.spec.r, "two-clique inter-clique edge probability");
    app->add_option("--epsilon", g.spec.epsilon, "complete-gap shock / path-threshold step");
    app->add_option("--gen-k", g.spec.k, "generator budget in stimulus units");
    app->add_option("--alpha", g.spec.alpha, "gadget alpha in (0, 3)");
    app->add_option("--layers", g.spec.layers, "layered gadget depth");
    app->add_option("--edge-prob", g.spec.edge_probability, "random-er edge probability");
    app->add_option("--gen-seed", g.spec.seed, "generator seed");
    app->add_option("--stimulus", g.spec.stimulus, "random-er stimulus per node");
    app->add_option("--shock-scale", g.spec.shock_scale, "two-clique shock scale");
}

struct RunFlags {
    std::string instance;
    GeneratorFlags gen;
    std::string label;
    std::vector<std::string> algorithms;
    std::string objective = "sop";
    std::vector<double> custom_v;
    double epsilon = 0.0;
    std::optional<double> ell;
    std::vector<std::size_t> k_values;
    std::size_t k_max = 0;
    std::size_t samples = 20;
    std::size_t trials = 0;
    double accuracy = 0.1;
    bool strict = false;
    std::vector<std::uint64_t> seeds{0};
    std::size_t cap = 1'000'000;
    std::string fairness = "gc";
    std::vector<double> g_values;
    std::string q_source = "instance";
    std::uint64_t q_seed = 0;
    std::string route = "auto";
    bool discrete_pof = false;
    std::size_t workers = 0;
    bool no_timing = false;
    std::string out;
    bool append = false;
};

void add_run_flags(CLI::App *app, RunFlags &f, bool fairness) {
    app->add_option("--instance", f.instance, "instance file")->check(CLI::ExistingFile);
    add_generator_flags(app, f.gen);
    app->add_option("--label", f.label, "instance column value");
    app->add_option("--algorithms", f.algorithms, "comma separated algorithm names")->delimiter(',');
    app->add_option("--objective", f.objective, "sop, soip, sot, fs, as, custom");
    app->add_option("--v", f.custom_v, "custom objective coefficients")->delimiter(',');
    app->add_option("--augment", f.epsilon, "AS augmentation epsilon");
    app->add_option("--ell", f.ell, "budget step (default: largest stimulus)");
    app->add_option("--k", f.k_values, "budget levels, comma separated")->delimiter(',');
    app->add_option("--k-max", f.k_max, "budget levels 0..k-max");
    app->add_option("-m,--samples", f.samples, "shock samples per budget level");
    app->add_option("-T,--trials", f.trials, "rounding draws per sample (0: default)");
    app->add_option("--accuracy", f.accuracy, "rounding accuracy");
    app->add_flag("--strict", f.strict, "reject every over-budget rounding draw");
    app->add_option("--seeds", f.seeds, "comma separated seeds")->delimiter(',');
    app->add_option("--cap", f.cap, "brute-force subset cap");
    app->add_option("-j,--workers", f.workers, "worker threads (0: all cores)");
    app->add_flag("--no-timing", f.no_timing, "write wall_ms = 0");
    app->add_option("-o,--out", f.out, "results file (default: stdout)");
    app->add_flag("--append", f.append, "append to the results file");
    if (fairness) {
        app->add_option("--fairness", f.fairness, "gc, pgc, sgc");
        app->add_option("--g", f.g_values, "fairness bounds, comma separated")->delimiter(',');
        app->add_option("--q-source", f.q_source, "instance or synthetic");
        app->add_option("--q-seed", f.q_seed, "seed of the synthetic property");
        app->add_option("--route", f.route, "auto, pairs, cuts");
        app->add_flag("--discrete", f.discrete_pof, "also report the discrete PoF");
    }
}

ExperimentConfig to_config(const RunFlags &f) {
    ExperimentConfig c;
    if (!f.instance.empty())
        c.instance_path = f.instance;
    if (!f.gen.kind.empty()) {
        GeneratorSpec spec = f.gen.spec;
        spec.kind = parse_generator_kind(f.gen.kind);
        c.generator = spec;
    }
    c.label = f.label;
    if (!f.algorithms.empty())
        c.algorithms = f.algorithms;
    c.objective = {f.objective, f.custom_v, f.epsilon};
    c.ell = f.ell;
    if (!f.k_values.empty()) {
        c.k_values = f.k_values;
    } else if (f.k_max > 0) {
        c.k_values.resize(f.k_max + 1);
        std::iota(c.k_values.begin(), c.k_values.end(), std::size_t{0});
    }
    c.samples = f.samples;
    c.trials = f.trials;
    c.accuracy = f.accuracy;
    c.strict_rounding = f.strict;
    c.seeds = f.seeds;
    c.brute_force_cap = f.cap;
    c.fairness = parse_fairness_kind(f.fairness);
    c.g_values = f.g_values;
    c.q_source = f.q_source;
    c.q_seed = f.q_seed;
    if (f.route == "auto")
        c.route = FairRoute::Auto;
    else if (f.route == "pairs")
        c.route = FairRoute::PairVariables;
    else if (f.route == "cuts")
        c.route = FairRoute::CuttingPlane;
    else
        throw ConfigError("unknown route '" + f.route + "'");
    c.discrete_pof = f.discrete_pof;
    c.workers = f.workers;
    c.timing = !f.no_timing;
    return c;
}

int write_table(const ResultsTable &table, const RunFlags &f) {
    if (f.out.empty())
        std::cout << format_results(table);
    else
        emit_results(table, f.out, f.append);
    return has_failures(table) ? kPartial : kOk;
}

void progress(const std::string &line) { std::cerr << line << '\n'; }

void print_vector(const char *name, std::span<const double> v) {
    std::cout << name;
    for (double x : v)
        std::cout << ' ' << format_double(x);
    std::cout << '\n';
}

struct ClearFlags {
    std::string instance;
    std::vector<double> shock;
    std::vector<double> cash;
    std::uint64_t seed = 0;
    std::string method = "fixed-point";
    std::string objective = "sop";
};

int run_clear(const ClearFlags &f) {
    if (f.instance.empty())
        throw ConfigError("--instance is required");
    Instance inst = load_instance(f.instance);
    const auto &net = inst.net;
    std::vector<double> x = f.shock;
    if (x.empty()) {
        SeededRng rng(f.seed);
        x = inst.shocks.sample(rng);
    }
    if (x.size() != net.size())
        throw ConfigError("shock has " + std::to_string(x.size()) + " entries for " +
                          std::to_string(net.size()) + " nodes");
    if (!f.cash.empty() && f.cash.size() != net.size())
        throw ConfigError("cash has the wrong length");
    ClearingResult res;
    if (f.method == "fixed-point") {
        res = clear_fixed_point(net, x, f.cash);
    } else if (f.method == "lp") {
        const std::vector<double> ones(net.size(), 1.0);
        res = clear_lp(net, x, f.cash, ones);
    } else {
        throw ConfigError("unknown method '" + f.method + "'");
    }
    ObjectiveConfig oc{f.objective, {}, 0.0};
    const auto obj = make_objective(oc, net, inst.budget);
    print_vector("shock", x);
    print_vector("pbar", res.pbar);
    std::cout << "defaults";
    for (auto j : res.defaults)
        std::cout << ' ' << j;
    std::cout << "\nobjective " << f.objective << ' ' << format_double(obj.evaluate(res, net)) << '\n';
    std::cout << "iterations " << res.iterations << "\nresidual " << format_double(res.residual) << '\n';
    return kOk;
}

struct GenFlags {
    GeneratorFlags gen;
    std::string out;
};

int run_gen(const GenFlags &f) {
    if (f.gen.kind.empty())
        throw ConfigError("--generator is required");
    GeneratorSpec spec = f.gen.spec;
    spec.kind = parse_generator_kind(f.gen.kind);
    const auto inst = generate(spec);
    if (f.out.empty())
        std::cout << format_instance(inst);
    else
        save_instance(inst, f.out);
    return kOk;
}

struct SpectralFlags {
    std::string instance;
    std::string normalization = "volume";
    unsigned power = 1;
};

int run_spectral(const SpectralFlags &f) {
    if (f.instance.empty())
        throw ConfigError("--instance is required");
    const auto inst = load_instance(f.instance);
    CutNormalization norm;
    if (f.normalization == "volume")
        norm = CutNormalization::Volume;
    else if (f.normalization == "cardinality")
        norm = CutNormalization::Cardinality;
    else
        throw ConfigError("unknown normalization '" + f.normalization + "'");
    const auto w = hadamard_power(inst.net.relative_matrix(), f.power);
    const auto rep = conductance(w, norm);
    std::cout << "normalization " << f.normalization << "\nexact " << (rep.exact ? "yes" : "no") << '\n';
    if (rep.exact) {
        std::cout << "phi " << format_double(rep.phi) << "\ncut";
        for (auto v : rep.cut)
            std::cout << ' ' << v;
        std::cout << "\ncheeger_bound " << format_double(rep.cheeger_bound)
                  << "\ncheeger_holds " << (rep.cheeger_holds ? "yes" : "no") << '\n';
    }
    std::cout << "lambda2 " << format_double(rep.lambda2) << "\nlambda2_normalized "
              << format_double(rep.lambda2_normalized) << "\nphi_interval " << format_double(rep.phi_lower) << ' '
              << format_double(rep.phi_upper) << '\n';
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Budgeted bailout allocation in financial networks"};
    app.set_config("--config", "", "TOML or INI file; command-line flags override it");
    app.require_subcommand(1);

    ClearFlags clear_flags;
    auto *clear = app.add_subcommand("clear", "clear an instance under one shock");
    clear->add_option("--instance", clear_flags.instance, "instance file")->required()->check(CLI::ExistingFile);
    clear->add_option("--shock", clear_flags.shock, "shock vector, comma separated")->delimiter(',');
    clear->add_option("--cash", clear_flags.cash, "injected cash, comma separated")->delimiter(',');
    clear->add_option("--seed", clear_flags.seed, "seed for a sampled shock");
    clear->add_option("--method", clear_flags.method, "fixed-point or lp");
    clear->add_option("--objective", clear_flags.objective, "sop, soip, sot, fs, as");

    RunFlags optimize_flags;
    optimize_flags.k_values = {1};
    auto *optimize = app.add_subcommand("optimize", "run algorithms at one budget (--ell, k = 1)");
    add_run_flags(optimize, optimize_flags, false);

    RunFlags budget_flags;
    auto *sweep_budget = app.add_subcommand("sweep-budget", "compare algorithms over budget levels");
    add_run_flags(sweep_budget, budget_flags, false);

    RunFlags fair_flags;
    auto *sweep_fair = app.add_subcommand("sweep-fairness", "fair relaxation and rounding over g");
    add_run_flags(sweep_fair, fair_flags, true);

    RunFlags pof_flags;
    auto *pof = app.add_subcommand("pof-curve", "price of fairness over g");
    add_run_flags(pof, pof_flags, true);

    GenFlags gen_flags;
    auto *gen = app.add_subcommand("gen-instance", "write a generated instance");
    add_generator_flags(gen, gen_flags.gen);
    gen->add_option("-o,--out", gen_flags.out, "instance file (default: stdout)");

    SpectralFlags spectral_flags;
    auto *spectral = app.add_subcommand("spectral", "conductance and Laplacian spectrum of A");
    spectral->add_option("--instance", spectral_flags.instance, "instance file")->required()->check(CLI::ExistingFile);
    spectral->add_option("--normalization", spectral_flags.normalization, "volume or cardinality");
    spectral->add_option("--power", spectral_flags.power, "Hadamard power of A");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*clear)
            return run_clear(clear_flags);
        if (*gen)
            return run_gen(gen_flags);
        if (*spectral)
            return run_spectral(spectral_flags);
        if (*optimize)
            return write_table(run_comparison(to_config(optimize_flags), progress), optimize_flags);
        if (*sweep_budget)
            return write_table(run_comparison(to_config(budget_flags), progress), budget_flags);
        if (*sweep_fair)
            return write_table(run_fairness_sweep(to_config(fair_flags), progress), fair_flags);
        if (*pof)
            return write_table(run_pof_curve(to_config(pof_flags), progress), pof_flags);
    } catch (const InvalidInput &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}
