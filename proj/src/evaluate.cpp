#include "bailout/errors.hpp"
#include "bailout/optimize.hpp"
#include "bailout/parallel.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

namespace bailout {

BailoutProblem::BailoutProblem(const FinancialNetwork &net, std::vector<double> stimulus, double budget,
                               Objective objective, ShockDistribution shocks)
    : net_(&net), stimulus_(std::move(stimulus)), budget_(budget), objective_(std::move(objective)),
      shocks_(std::move(shocks)) {
    if (stimulus_.size() != net.size())
        throw InvalidInput("stimulus vector has wrong length");
    for (double l : stimulus_)
        if (!(l > 0) || !std::isfinite(l))
            throw InvalidInput("stimulus values must be positive and finite");
    if (!(budget_ >= 0) || !std::isfinite(budget_))
        throw InvalidInput("budget must be non-negative and finite");
    if (objective_.is_linear() && objective_.v().size() != net.size())
        throw InvalidInput("objective coefficients have wrong length");
    if (shocks_.size() != 0 && shocks_.size() != net.size())
        throw InvalidInput("shock distribution has wrong dimension");
}

double BailoutProblem::max_stimulus() const noexcept {
    double m = 0.0;
    for (double l : stimulus_)
        m = std::max(m, l);
    return m;
}

BailoutProblem BailoutProblem::with_budget(double budget) const {
    return BailoutProblem(*net_, stimulus_, budget, objective_, shocks_);
}

BailoutProblem BailoutProblem::with_objective(Objective objective) const {
    return BailoutProblem(*net_, stimulus_, budget_, std::move(objective), shocks_);
}

Allocation Allocation::from_set(std::span<const std::size_t> nodes, const BailoutProblem &problem) {
    Allocation a = empty(problem.size());
    for (std::size_t j : nodes) {
        if (j >= problem.size())
            throw InvalidInput("node index out of range");
        if (a.z[j] == 0.0) {
            a.z[j] = 1.0;
            a.spent += problem.stimulus()[j];
        }
    }
    return a;
}

Allocation Allocation::fractional(std::vector<double> z, const BailoutProblem &problem) {
    if (z.size() != problem.size())
        throw InvalidInput("allocation has wrong length");
    Allocation a;
    a.discrete = true;
    for (std::size_t j = 0; j < z.size(); ++j) {
        z[j] = std::clamp(z[j], 0.0, 1.0);
        a.spent += problem.stimulus()[j] * z[j];
        if (z[j] != 0.0 && z[j] != 1.0)
            a.discrete = false;
    }
    a.z = std::move(z);
    return a;
}

std::vector<std::size_t> Allocation::selected() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < z.size(); ++j)
        if (z[j] > 0.5)
            out.push_back(j);
    return out;
}

std::vector<double> injected_cash(const BailoutProblem &problem, const Allocation &allocation) {
    std::vector<double> cash(problem.size());
    for (std::size_t j = 0; j < cash.size(); ++j)
        cash[j] = problem.stimulus()[j] * allocation.z[j];
    return cash;
}

double allocation_value(const BailoutProblem &problem, std::span<const double> z, std::span<const double> x) {
    std::vector<double> cash(problem.size());
    for (std::size_t j = 0; j < cash.size(); ++j)
        cash[j] = problem.stimulus()[j] * z[j];
    const auto cleared = clear_fixed_point(problem.net(), x, cash);
    return problem.objective().evaluate(cleared, problem.net());
}

double mean_of(std::span<const double> values) {
    if (values.empty())
        return 0.0;
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double population_std(std::span<const double> values) {
    if (values.empty())
        return 0.0;
    const double mu = mean_of(values);
    double acc = 0.0;
    for (double v : values)
        acc += (v - mu) * (v - mu);
    return std::sqrt(acc / static_cast<double>(values.size()));
}

SolverReport evaluate_allocation(const BailoutProblem &problem, const Allocation &allocation,
                                 const ShockBatch &samples, std::size_t workers) {
    const auto start = std::chrono::steady_clock::now();
    SolverReport report;
    report.allocation = allocation;
    report.values.assign(samples.size(), 0.0);
    parallel_for(samples.size(), workers,
                 [&](std::size_t i) { report.values[i] = allocation_value(problem, allocation.z, samples[i]); });
    report.mean = mean_of(report.values);
    report.std = population_std(report.values);
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace bailout
