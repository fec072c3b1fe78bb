#include "bailout/errors.hpp"
#include "bailout/optimize.hpp"
#include "bailout/parallel.hpp"

#include <cmath>
#include <limits>

namespace bailout {

namespace {

double batch_value(const BailoutProblem &problem, const std::vector<double> &z, const ShockBatch &samples) {
    if (samples.empty())
        throw InvalidInput("greedy needs at least one shock sample");
    double total = 0.0;
    for (const auto &x : samples)
        total += allocation_value(problem, z, x);
    return total / static_cast<double>(samples.size());
}

} // namespace

GreedyResult greedy(const BailoutProblem &problem, const ShockBatch &samples, const GreedyOptions &options) {
    const std::size_t n = problem.size();
    const auto &L = problem.stimulus();
    GreedyResult result;
    result.allocation = Allocation::empty(n);
    result.base_value = batch_value(problem, result.allocation.z, samples);
    double current = result.base_value;

    std::vector<double> candidate_value(n);
    while (true) {
        const double remaining = problem.budget() - result.allocation.spent;
        std::vector<std::size_t> feasible;
        for (std::size_t u = 0; u < n; ++u)
            if (result.allocation.z[u] == 0.0 && L[u] <= remaining + 1e-12 * std::max(1.0, problem.budget()))
                feasible.push_back(u);
        if (feasible.empty())
            break;

        parallel_for(feasible.size(), options.workers, [&](std::size_t k) {
            std::vector<double> z = result.allocation.z;
            z[feasible[k]] = 1.0;
            candidate_value[feasible[k]] = batch_value(problem, z, samples);
        });

        std::size_t best = feasible.front();
        for (std::size_t u : feasible) {
            const double tol = 1e-12 * std::max(1.0, std::abs(candidate_value[best]));
            if (candidate_value[u] > candidate_value[best] + tol)
                best = u;
        }
        result.allocation.z[best] = 1.0;
        result.allocation.spent += L[best];
        result.trace.push_back({best, candidate_value[best] - current, candidate_value[best]});
        current = candidate_value[best];
    }
    result.value = current;
    return result;
}

bool check_small_bailout_regime(const BailoutProblem &problem, const ShockBatch &samples, const GreedyResult &run) {
    const auto &net = problem.net();
    std::vector<double> cash(problem.size(), 0.0);
    for (const auto &step : run.trace) {
        const std::size_t u = step.node;
        cash[u] = problem.stimulus()[u];
        for (const auto &x : samples) {
            const auto cleared = clear_fixed_point(net, x, cash);
            if (!(cleared.pbar[u] < net.p()[u] - default_tolerance(net.p()[u])))
                return false;
        }
    }
    return true;
}

} // namespace bailout
