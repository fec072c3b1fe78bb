#include "bailout/errors.hpp"
#include "bailout/optimize.hpp"

#include <cmath>
#include <limits>

namespace bailout {

std::size_t default_rounding_trials(std::size_t n, double accuracy) {
    if (!(accuracy > 0))
        throw InvalidInput("rounding accuracy must be positive");
    const double t = std::ceil(4.0 * std::log(static_cast<double>(std::max<std::size_t>(n, 1))) /
                               (accuracy * accuracy));
    return std::max<std::size_t>(1, static_cast<std::size_t>(t));
}

double default_overspend(const BailoutProblem &problem, double accuracy) {
    const double linf = problem.max_stimulus();
    const double budget = problem.budget();
    if (budget <= 0 || linf <= 0)
        return 0.0;
    const double units = budget / linf;
    const double slack = linf * std::sqrt(3.0 * units * std::log(4.0 / (accuracy * accuracy)));
    return std::min(budget, slack);
}

Allocation sample_independent(const Allocation &fractional, const BailoutProblem &problem, SeededRng &rng) {
    const std::size_t n = problem.size();
    if (fractional.z.size() != n)
        throw InvalidInput("allocation has wrong length");
    Allocation out = Allocation::empty(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (rng.bernoulli(fractional.z[j])) {
            out.z[j] = 1.0;
            out.spent += problem.stimulus()[j];
        }
    }
    return out;
}

RoundingResult round_independent(const Allocation &fractional, const BailoutProblem &problem,
                                 std::span<const double> x, SeededRng &rng, const RoundingOptions &options) {
    RoundingResult result;
    result.trials = options.trials ? options.trials : default_rounding_trials(problem.size(), options.accuracy);
    result.allowance =
        options.strict ? 0.0 : (options.overspend ? *options.overspend : default_overspend(problem, options.accuracy));
    const double limit = problem.budget() + result.allowance;

    result.allocation = Allocation::empty(problem.size());
    result.value = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < result.trials; ++t) {
        auto draw = sample_independent(fractional, problem, rng);
        if (!draw.within(limit))
            continue;
        if (options.accept && !options.accept(draw))
            continue;
        ++result.feasible_trials;
        const double value = allocation_value(problem, draw.z, x);
        if (value > result.value) {
            result.value = value;
            result.allocation = std::move(draw);
        }
    }
    if (result.feasible_trials == 0) {
        result.allocation = Allocation::empty(problem.size());
        result.allocation.fallback = true;
        result.value = allocation_value(problem, result.allocation.z, x);
    }
    return result;
}

namespace {

bool is_fractional(double y) { return y > 1e-12 && y < 1.0 - 1e-12; }

// Pairwise dependent rounding: each step moves mass between two fractional
// coordinates so that one becomes integral, keeping the sum and marginals.
void pipage(std::vector<double> &y, SeededRng &rng) {
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < y.size(); ++j)
        if (is_fractional(y[j]))
            open.push_back(j);
        else
            y[j] = y[j] > 0.5 ? 1.0 : 0.0;

    while (open.size() >= 2) {
        const std::size_t i = open[open.size() - 2];
        const std::size_t j = open[open.size() - 1];
        const double up = std::min(1.0 - y[i], y[j]);   // y_i += up, y_j -= up
        const double down = std::min(y[i], 1.0 - y[j]); // y_i -= down, y_j += down
        if (rng.uniform() * (up + down) < down) {
            y[i] += up;
            y[j] -= up;
        } else {
            y[i] -= down;
            y[j] += down;
        }
        std::vector<std::size_t> still;
        for (std::size_t k : {i, j}) {
            if (is_fractional(y[k]))
                still.push_back(k);
            else
                y[k] = y[k] > 0.5 ? 1.0 : 0.0;
        }
        open.resize(open.size() - 2);
        for (std::size_t k : still)
            open.push_back(k);
    }
    // Leftover mass when the total was not integral.
    for (std::size_t k : open)
        y[k] = rng.bernoulli(y[k]) ? 1.0 : 0.0;
}

} // namespace

Allocation round_dependent(const Allocation &fractional, const BailoutProblem &problem, SeededRng &rng) {
    const std::size_t n = problem.size();
    if (fractional.z.size() != n)
        throw InvalidInput("allocation has wrong length");
    const double linf = problem.max_stimulus();
    if (!(linf > 0))
        throw InvalidInput("stimulus vector is zero");

    std::vector<double> u(n + 1, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        u[j] = problem.stimulus()[j] / linf * (1.0 - std::clamp(fractional.z[j], 0.0, 1.0));
        total += u[j];
    }
    const double nearest = std::round(total);
    const double slack = std::abs(total - nearest) < 1e-9 ? 0.0 : std::ceil(total) - total;
    u[n] = slack;
    pipage(u, rng);

    Allocation out = Allocation::empty(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.z[j] = 1.0 - u[j];
        out.spent += problem.stimulus()[j] * out.z[j];
    }
    return out;
}

} // namespace bailout
