#pragma once

#include "bailout/lp.hpp"
#include "bailout/network.hpp"
#include "bailout/objectives.hpp"
#include "bailout/rng.hpp"
#include "bailout/shocks.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bailout {

using ShockBatch = std::vector<std::vector<double>>;

/**
 * Budgeted bailout problem. Holds a reference to the network, which must
 * outlive the problem. A zero budget is accepted (the k = 0 row of a budget
 * schedule); stimulus values must be strictly positive.
 */
class BailoutProblem {
public:
    BailoutProblem(const FinancialNetwork &net, std::vector<double> stimulus, double budget, Objective objective,
                   ShockDistribution shocks = {});

    const FinancialNetwork &net() const noexcept { return *net_; }
    std::size_t size() const noexcept { return net_->size(); }
    const std::vector<double> &stimulus() const noexcept { return stimulus_; }
    double budget() const noexcept { return budget_; }
    const Objective &objective() const noexcept { return objective_; }
    const ShockDistribution &shocks() const noexcept { return shocks_; }

    /// L_inf norm of the stimulus vector.
    double max_stimulus() const noexcept;

    BailoutProblem with_budget(double budget) const;
    BailoutProblem with_objective(Objective objective) const;

private:
    const FinancialNetwork *net_;
    std::vector<double> stimulus_;
    double budget_;
    Objective objective_;
    ShockDistribution shocks_;
};

struct Allocation {
    std::vector<double> z;
    bool discrete = true;
    double spent = 0.0;
    /// Set when a randomized procedure could not produce a budget-feasible draw.
    bool fallback = false;

    static Allocation empty(std::size_t n) { return {std::vector<double>(n, 0.0), true, 0.0, false}; }
    static Allocation from_set(std::span<const std::size_t> nodes, const BailoutProblem &problem);
    static Allocation fractional(std::vector<double> z, const BailoutProblem &problem);

    std::vector<std::size_t> selected() const;
    bool within(double limit, double tol = 1e-9) const { return spent <= limit + tol * std::max(1.0, limit); }
};

/// Cash injected by an allocation: L * z.
std::vector<double> injected_cash(const BailoutProblem &problem, const Allocation &allocation);

/// Objective value after clearing with cash L * z under shock x.
double allocation_value(const BailoutProblem &problem, std::span<const double> z, std::span<const double> x);

// ---------------------------------------------------------------- relaxation

/// Column layout of the relaxation LP: payments first, then decisions.
struct RelaxationLayout {
    std::size_t n = 0;
    std::size_t budget_row = 0;
    std::size_t payment(std::size_t j) const noexcept { return j; }
    std::size_t decision(std::size_t j) const noexcept { return n + j; }
};

/**
 * max v'p  s.t.  p_j - sum_i a_ij p_i - L_j z_j <= c_j - x_j,  L'z <= budget,
 * 0 <= p <= p_total, 0 <= z <= 1. Extra rows can be appended by callers.
 */
lp::LinearProgram relaxation_program(const BailoutProblem &problem, std::span<const double> x,
                                     RelaxationLayout &layout);

struct RelaxationResult {
    Allocation allocation;
    double opt_r = 0.0;
    std::vector<double> payments;
    std::size_t iterations = 0;
};

/// Requires a linear objective.
RelaxationResult solve_relaxation(const BailoutProblem &problem, std::span<const double> x,
                                  const lp::Solver &solver = lp::default_solver());

// ------------------------------------------------------------------ rounding

/// ceil(4 ln n / accuracy^2), at least 1.
std::size_t default_rounding_trials(std::size_t n, double accuracy = 0.1);

/// min(budget, Linf * sqrt(3 (budget / Linf) ln(4 / accuracy^2))).
double default_overspend(const BailoutProblem &problem, double accuracy = 0.1);

struct RoundingOptions {
    std::size_t trials = 0;              ///< 0 selects default_rounding_trials
    double accuracy = 0.1;
    std::optional<double> overspend;     ///< unset selects default_overspend
    bool strict = false;                 ///< no overspend at all
    /// Extra acceptance test on top of the budget (fairness filters).
    std::function<bool(const Allocation &)> accept;
};

struct RoundingResult {
    Allocation allocation;
    double value = 0.0;
    std::size_t feasible_trials = 0;
    std::size_t trials = 0;
    double allowance = 0.0;
};

/// One draw Z_j ~ Bernoulli(z_j), independently, no budget check.
Allocation sample_independent(const Allocation &fractional, const BailoutProblem &problem, SeededRng &rng);

/**
 * Best of `trials` independent draws, evaluated under shock x, among draws
 * with L'Z <= budget + allowance. When every draw is rejected the empty
 * allocation is returned with `fallback` set.
 */
RoundingResult round_independent(const Allocation &fractional, const BailoutProblem &problem,
                                 std::span<const double> x, SeededRng &rng, const RoundingOptions &options = {});

/**
 * Dependent rounding on the complement: U has marginals (L_j / Linf)(1 - z_j)
 * plus one slack coordinate bringing the total to an integer, and pairwise
 * pipage steps keep sum(U) fixed. Returns Z = 1 - U without the slack.
 */
Allocation round_dependent(const Allocation &fractional, const BailoutProblem &problem, SeededRng &rng);

// -------------------------------------------------------------------- greedy

struct GreedyStep {
    std::size_t node = 0;
    double gain = 0.0;   ///< sample-average marginal gain
    double value = 0.0;  ///< sample-average objective after adding node
};

struct GreedyResult {
    Allocation allocation;
    double value = 0.0;
    double base_value = 0.0;
    std::vector<GreedyStep> trace;
};

struct GreedyOptions {
    std::size_t workers = 1;
};

/// Adds the feasible node with the largest average marginal gain until none fits.
GreedyResult greedy(const BailoutProblem &problem, const ShockBatch &samples, const GreedyOptions &options = {});

/// True iff every greedily added node still defaults right after being added, on every sample.
bool check_small_bailout_regime(const BailoutProblem &problem, const ShockBatch &samples, const GreedyResult &run);

// --------------------------------------------------------------- brute force

struct BruteForceOptions {
    std::size_t cap = 1'000'000;
    /// Subsets rejected by the filter are skipped. With no filter only
    /// budget-maximal subsets are evaluated (the objective is monotone in cash).
    std::function<bool(const std::vector<std::size_t> &)> filter;
    std::size_t workers = 1;
};

struct BruteForceResult {
    Allocation allocation;
    double value = 0.0;
    std::size_t evaluated = 0;
    bool found = false;
};

/// Counts budget-feasible subsets, stopping early once `limit` is passed.
std::size_t count_feasible_subsets(const BailoutProblem &problem, std::size_t limit);

BruteForceResult brute_force(const BailoutProblem &problem, const ShockBatch &samples,
                             const BruteForceOptions &options = {});

// ---------------------------------------------------------------- heuristics

enum class HeuristicKind { WealthAscending, OutDegree, PageRank, Eigencentrality, RandomPermutation };

std::string_view to_string(HeuristicKind kind);
HeuristicKind parse_heuristic_kind(std::string_view name);

/// Node order used by a heuristic; the random permutation consumes rng.
std::vector<std::size_t> heuristic_order(HeuristicKind kind, const FinancialNetwork &net, SeededRng &rng);

/// Walks `order`, adding each node whose stimulus still fits.
Allocation fill_in_order(std::span<const std::size_t> order, const BailoutProblem &problem);

Allocation heuristic(HeuristicKind kind, const BailoutProblem &problem, SeededRng &rng);

// ---------------------------------------------------------------- evaluation

struct SolverReport {
    std::string algorithm;
    Allocation allocation;
    std::vector<double> values;
    double mean = 0.0;
    double std = 0.0; ///< population standard deviation
    std::optional<double> opt_r;
    double wall_ms = 0.0;
    std::uint64_t seed = 0;
};

double mean_of(std::span<const double> values);
double population_std(std::span<const double> values);

SolverReport evaluate_allocation(const BailoutProblem &problem, const Allocation &allocation,
                                 const ShockBatch &samples, std::size_t workers = 1);

} // namespace bailout
