#include "bailout/errors.hpp"
#include "bailout/optimize.hpp"
#include "bailout/parallel.hpp"

#include <limits>
#include <string>

namespace bailout {

namespace {

struct Enumerator {
    const std::vector<double> &L;
    double limit;
    bool maximal_only;

    // Calls visit(set) for every feasible subset in lexicographic DFS order
    // (include-first). Returns false if visit asked to stop.
    template <class Visit>
    bool walk(std::size_t j, double spent, std::vector<std::size_t> &set, Visit &visit) const {
        if (j == L.size()) {
            if (maximal_only && !is_maximal(set, spent))
                return true;
            return visit(set);
        }
        if (spent + L[j] <= limit) {
            set.push_back(j);
            if (!walk(j + 1, spent + L[j], set, visit))
                return false;
            set.pop_back();
        }
        return walk(j + 1, spent, set, visit);
    }

    bool is_maximal(const std::vector<std::size_t> &set, double spent) const {
        std::size_t k = 0;
        for (std::size_t u = 0; u < L.size(); ++u) {
            if (k < set.size() && set[k] == u) {
                ++k;
                continue;
            }
            if (spent + L[u] <= limit)
                return false;
        }
        return true;
    }
};

double budget_limit(const BailoutProblem &problem) {
    return problem.budget() + 1e-12 * std::max(1.0, problem.budget());
}

} // namespace

std::size_t count_feasible_subsets(const BailoutProblem &problem, std::size_t limit) {
    Enumerator e{problem.stimulus(), budget_limit(problem), false};
    std::size_t count = 0;
    std::vector<std::size_t> set;
    auto visit = [&](const std::vector<std::size_t> &) { return ++count <= limit; };
    e.walk(0, 0.0, set, visit);
    return count;
}

BruteForceResult brute_force(const BailoutProblem &problem, const ShockBatch &samples,
                             const BruteForceOptions &options) {
    if (samples.empty())
        throw InvalidInput("brute force needs at least one shock sample");
    const std::size_t total = count_feasible_subsets(problem, options.cap);
    if (total > options.cap)
        throw CapExceeded("more than " + std::to_string(options.cap) + " budget-feasible subsets");

    Enumerator e{problem.stimulus(), budget_limit(problem), !options.filter};
    std::vector<std::vector<std::size_t>> candidates;
    std::vector<std::size_t> set;
    auto collect = [&](const std::vector<std::size_t> &s) {
        if (!options.filter || options.filter(s))
            candidates.push_back(s);
        return true;
    };
    e.walk(0, 0.0, set, collect);

    std::vector<double> values(candidates.size());
    parallel_for(candidates.size(), options.workers, [&](std::size_t k) {
        const auto a = Allocation::from_set(candidates[k], problem);
        double acc = 0.0;
        for (const auto &x : samples)
            acc += allocation_value(problem, a.z, x);
        values[k] = acc / static_cast<double>(samples.size());
    });

    BruteForceResult result;
    result.allocation = Allocation::empty(problem.size());
    result.evaluated = candidates.size();
    result.value = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const double tol = result.found ? 1e-12 * std::max(1.0, std::abs(result.value)) : 0.0;
        if (!result.found || values[k] > result.value + tol) {
            result.found = true;
            result.value = values[k];
            result.allocation = Allocation::from_set(candidates[k], problem);
        }
    }
    if (!result.found)
        result.value = 0.0;
    return result;
}

} // namespace bailout
