#pragma once

#include "bailout/lp.hpp"
#include "bailout/network.hpp"
#include "bailout/optimize.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace bailout {

enum class FairnessKind { GC, PGC, SGC };

std::string_view to_string(FairnessKind kind);
FairnessKind parse_fairness_kind(std::string_view name);

struct FairnessSpec {
    FairnessKind kind = FairnessKind::GC;
    double g = 1.0;
    std::vector<double> q; ///< PGC only, entries in [0, 1]

    void validate(std::size_t n) const;
};

/// sum_{i,j} |y_i - y_j| / (2 n sum_j y_j) with y = L * z. Throws UndefinedMetric on a zero allocation.
double gini(std::span<const double> z, std::span<const double> L);

/// sum_{j,i} q_j (1 - q_i) |y_i - y_j| / (2 (n - n_q) sum_j q_j y_j).
double property_gini(std::span<const double> z, std::span<const double> L, std::span<const double> q);

/// sum_{(j,i) in E} a_ji |y_j - y_i| / (2 sum_j beta_j y_j).
double spatial_gini(std::span<const double> z, std::span<const double> L, const FinancialNetwork &net);

double fairness_coefficient(const FairnessSpec &spec, std::span<const double> z, std::span<const double> L,
                            const FinancialNetwork &net);

/**
 * Every coefficient has the shape sum_{i<j} w_ij |y_i - y_j| / sum_k h_k y_k;
 * the constraint "coefficient <= g" is linearized as numerator <= g * denominator,
 * which the zero allocation satisfies.
 */
struct PairwiseForm {
    struct Pair {
        std::size_t i;
        std::size_t j;
        double w;
    };
    std::vector<Pair> pairs;
    std::vector<double> h;

    double numerator(std::span<const double> y) const;
    double denominator(std::span<const double> y) const;
};

PairwiseForm pairwise_form(const FairnessSpec &spec, const FinancialNetwork &net);

/// Linearized constraint check with relative tolerance.
bool satisfies_fairness(const FairnessSpec &spec, std::span<const double> z, std::span<const double> L,
                        const FinancialNetwork &net, double rel_tol = 1e-6);

/// PGC(z; q) <= g_between and the Gini coefficient inside each side of the split
/// (members weighted by q and 1 - q) <= g_within.
bool within_between_fairness_check(std::span<const double> z, std::span<const double> L,
                                   std::span<const double> q, double g_between, double g_within);

enum class FairRoute { Auto, PairVariables, CuttingPlane };

/// Auto uses pair variables up to this many pairs, cutting planes above.
inline constexpr std::size_t kPairVariableLimit = 400;

struct FairRelaxationResult {
    Allocation allocation;
    double opt_r = 0.0;
    std::vector<double> payments;
    FairRoute route = FairRoute::Auto;
    std::size_t cuts = 0;
    std::size_t lp_solves = 0;
};

/**
 * Relaxation with the fairness constraint. PairVariables adds one deviation
 * variable per unordered pair; CuttingPlane adds sign-pattern cuts
 * sum_{i<j} w_ij s_ij (y_i - y_j) <= g h'y until the point is feasible.
 */
FairRelaxationResult solve_fair_relaxation(const BailoutProblem &problem, const FairnessSpec &spec,
                                           std::span<const double> x, FairRoute route = FairRoute::Auto,
                                           const lp::Solver &solver = lp::default_solver());

struct PofResult {
    double unconstrained = 0.0;
    double constrained = 0.0;
    double pof = 1.0; ///< +infinity when the constrained optimum is zero
    bool infinite = false;
};

/// Ratio of mean relaxation optima over the batch, unconstrained vs fair.
PofResult fractional_pof(const BailoutProblem &problem, const FairnessSpec &spec, const ShockBatch &samples,
                         FairRoute route = FairRoute::Auto);

/// Ratio of brute-force optima, the constrained one restricted to fair subsets.
PofResult discrete_pof(const BailoutProblem &problem, const FairnessSpec &spec, const ShockBatch &samples,
                       std::size_t cap = 1'000'000);

} // namespace bailout
