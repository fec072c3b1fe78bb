#include "bailout/errors.hpp"
#include "bailout/fairness.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace bailout {

namespace {

constexpr std::size_t kMaxCutRounds = 2000;

FairRelaxationResult finish(const BailoutProblem &problem, const RelaxationLayout &layout, const lp::Solution &sol) {
    const std::size_t n = layout.n;
    FairRelaxationResult result;
    result.payments.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<double> z(sol.x.begin() + static_cast<std::ptrdiff_t>(n),
                          sol.x.begin() + static_cast<std::ptrdiff_t>(2 * n));
    result.allocation = Allocation::fractional(std::move(z), problem);
    result.opt_r = sol.objective;
    return result;
}

lp::Solution solve_or_throw(const lp::Solver &solver, const lp::LinearProgram &program) {
    auto sol = solver.solve(program);
    if (!sol.optimal())
        throw SolverError("fair relaxation LP failed: " + std::string(lp::to_string(sol.status)) + " " +
                          sol.message);
    return sol;
}

FairRelaxationResult solve_with_pairs(const BailoutProblem &problem, const PairwiseForm &form, double g,
                                      std::span<const double> x, const lp::Solver &solver) {
    RelaxationLayout layout;
    auto program = relaxation_program(problem, x, layout);
    const auto &L = problem.stimulus();
    const std::size_t total_row = program.add_row(lp::Sense::LessEqual, 0.0);
    for (std::size_t k = 0; k < layout.n; ++k)
        if (form.h[k] != 0.0)
            program.add_entry(total_row, layout.decision(k), -g * form.h[k] * L[k]);
    for (const auto &p : form.pairs) {
        const std::size_t dev = program.add_variable(0.0, 0.0, lp::kInfinity);
        program.add_entry(total_row, dev, p.w);
        const std::size_t up = program.add_row(lp::Sense::LessEqual, 0.0);
        program.add_entry(up, layout.decision(p.i), L[p.i]);
        program.add_entry(up, layout.decision(p.j), -L[p.j]);
        program.add_entry(up, dev, -1.0);
        const std::size_t down = program.add_row(lp::Sense::LessEqual, 0.0);
        program.add_entry(down, layout.decision(p.i), -L[p.i]);
        program.add_entry(down, layout.decision(p.j), L[p.j]);
        program.add_entry(down, dev, -1.0);
    }
    auto result = finish(problem, layout, solve_or_throw(solver, program));
    result.route = FairRoute::PairVariables;
    result.lp_solves = 1;
    return result;
}

FairRelaxationResult solve_with_cuts(const BailoutProblem &problem, const PairwiseForm &form, double g,
                                     std::span<const double> x, const lp::Solver &solver) {
    RelaxationLayout layout;
    auto program = relaxation_program(problem, x, layout);
    const auto &L = problem.stimulus();
    const std::size_t n = layout.n;
    std::size_t cuts = 0;
    for (std::size_t round = 0; round < kMaxCutRounds; ++round) {
        const auto sol = solve_or_throw(solver, program);
        std::vector<double> y(n);
        for (std::size_t k = 0; k < n; ++k)
            y[k] = L[k] * sol.x[layout.decision(k)];
        const double num = form.numerator(y);
        const double bound = g * form.denominator(y);
        if (num <= bound + 1e-9 * std::max({num, bound, 1e-12})) {
            auto result = finish(problem, layout, sol);
            result.route = FairRoute::CuttingPlane;
            result.cuts = cuts;
            result.lp_solves = round + 1;
            return result;
        }
        std::vector<double> coef(n, 0.0);
        for (const auto &p : form.pairs) {
            const double d = y[p.i] - y[p.j];
            const double s = d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0);
            coef[p.i] += p.w * s;
            coef[p.j] -= p.w * s;
        }
        const std::size_t row = program.add_row(lp::Sense::LessEqual, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const double c = (coef[k] - g * form.h[k]) * L[k];
            if (c != 0.0)
                program.add_entry(row, layout.decision(k), c);
        }
        ++cuts;
    }
    throw SolverError("fair relaxation cutting planes did not converge");
}

} // namespace

FairRelaxationResult solve_fair_relaxation(const BailoutProblem &problem, const FairnessSpec &spec,
                                           std::span<const double> x, FairRoute route, const lp::Solver &solver) {
    const auto form = pairwise_form(spec, problem.net());
    if (route == FairRoute::Auto)
        route = form.pairs.size() <= kPairVariableLimit ? FairRoute::PairVariables : FairRoute::CuttingPlane;
    if (route == FairRoute::PairVariables)
        return solve_with_pairs(problem, form, spec.g, x, solver);
    return solve_with_cuts(problem, form, spec.g, x, solver);
}

namespace {

PofResult ratio(double unconstrained, double constrained) {
    PofResult r;
    r.unconstrained = unconstrained;
    r.constrained = constrained;
    if (!(constrained > 1e-12 * std::max(1.0, std::abs(unconstrained)))) {
        r.infinite = true;
        r.pof = std::numeric_limits<double>::infinity();
    } else {
        r.pof = unconstrained / constrained;
    }
    return r;
}

} // namespace

PofResult fractional_pof(const BailoutProblem &problem, const FairnessSpec &spec, const ShockBatch &samples,
                         FairRoute route) {
    if (samples.empty())
        throw InvalidInput("price of fairness needs at least one shock sample");
    double free_total = 0.0;
    double fair_total = 0.0;
    for (const auto &x : samples) {
        free_total += solve_relaxation(problem, x).opt_r;
        fair_total += solve_fair_relaxation(problem, spec, x, route).opt_r;
    }
    const double m = static_cast<double>(samples.size());
    return ratio(free_total / m, fair_total / m);
}

PofResult discrete_pof(const BailoutProblem &problem, const FairnessSpec &spec, const ShockBatch &samples,
                       std::size_t cap) {
    BruteForceOptions free_options;
    free_options.cap = cap;
    const auto free = brute_force(problem, samples, free_options);

    BruteForceOptions fair_options;
    fair_options.cap = cap;
    fair_options.filter = [&](const std::vector<std::size_t> &set) {
        const auto a = Allocation::from_set(set, problem);
        return satisfies_fairness(spec, a.z, problem.stimulus(), problem.net());
    };
    const auto fair = brute_force(problem, samples, fair_options);
    return ratio(free.value, fair.found ? fair.value : 0.0);
}

} // namespace bailout
