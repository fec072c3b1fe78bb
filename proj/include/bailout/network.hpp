#pragma once

#include "bailout/lp.hpp"
#include "bailout/matrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bailout {

enum class Storage { Auto, Dense, Sparse };

/// Auto storage keeps a dense relative-liability matrix up to this many nodes.
inline constexpr std::size_t kDenseThreshold = 2000;

struct Edge {
    std::size_t from; ///< debtor
    std::size_t to;   ///< creditor
    double liability;
};

/**
 * Immutable payment network. P(j, i) is the amount node j owes node i;
 * b and c are external liabilities and assets. Derived quantities
 * (total liabilities p, relative liabilities A, connectivity beta) are
 * computed once at construction.
 */
class FinancialNetwork {
public:
    /// Validates and builds; throws NetworkError on any invariant violation,
    /// including beta_max >= 1.
    static FinancialNetwork build(const DenseMatrix &liabilities, std::vector<double> external_liabilities,
                                  std::vector<double> external_assets, Storage storage = Storage::Auto);

    /// Same as build, from an edge list. Parallel edges are summed.
    static FinancialNetwork from_edges(std::size_t n, const std::vector<Edge> &edges,
                                       std::vector<double> external_liabilities,
                                       std::vector<double> external_assets, Storage storage = Storage::Auto);

    std::size_t size() const noexcept { return n_; }

    const std::vector<double> &p() const noexcept { return p_; }
    const std::vector<double> &b() const noexcept { return b_; }
    const std::vector<double> &c() const noexcept { return c_; }
    const std::vector<double> &beta() const noexcept { return beta_; }
    double beta_max() const noexcept { return beta_max_; }
    double beta_min() const noexcept { return beta_min_; }

    /// Positive internal liabilities sorted by (from, to).
    const std::vector<Edge> &edges() const noexcept { return edges_; }
    /// Edges leaving `j` as a subrange of edges().
    std::span<const Edge> out_edges(std::size_t j) const noexcept {
        return {edges_.data() + offsets_[j], offsets_[j + 1] - offsets_[j]};
    }
    std::size_t out_degree(std::size_t j) const noexcept { return offsets_[j + 1] - offsets_[j]; }

    bool dense() const noexcept { return dense_; }

    /// P(j, i).
    double liability(std::size_t j, std::size_t i) const;
    /// a_ji = P(j, i) / p_j.
    double relative(std::size_t j, std::size_t i) const;

    DenseMatrix liability_matrix() const;
    DenseMatrix relative_matrix() const;

    /// out_i = sum_j a_ji x_j, i.e. A^T x.
    void apply_transpose(std::span<const double> x, std::span<double> out) const;

    /// True when P is symmetric within tol (relative to max(1, |P_ij|)).
    bool symmetric_liabilities(double tol = 1e-12) const;

private:
    FinancialNetwork() = default;
    void finish(Storage storage);

    std::size_t n_ = 0;
    std::vector<double> p_, b_, c_, beta_;
    double beta_max_ = 0.0;
    double beta_min_ = 0.0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    bool dense_ = false;
    DenseMatrix relative_; // only when dense_
};

struct ClearingOptions {
    double tol = 1e-10;          ///< absolute fixed-point residual, infinity norm
    std::size_t max_iter = 0;    ///< 0 selects the contraction-based default
};

struct ClearingResult {
    std::vector<double> pbar;
    std::vector<std::size_t> defaults;
    std::vector<std::size_t> solvents;
    std::size_t iterations = 0;
    double residual = 0.0;
};

/// Classification tolerance for node j: 1e-8 * max(1, p_j).
double default_tolerance(double total_liability) noexcept;

/// Default iteration cap for a network and residual target.
std::size_t default_max_iterations(const FinancialNetwork &net, double tol);

/// Splits nodes into defaulting and solvent sets for a payment vector.
void classify(const FinancialNetwork &net, ClearingResult &result);

/// One application of p -> p ^ (A^T p + c - x + cash).
void clearing_map(const FinancialNetwork &net, std::span<const double> pbar, std::span<const double> x,
                  std::span<const double> cash, std::span<double> out);

/// Picard iteration from p. `cash` may be empty (no injection).
ClearingResult clear_fixed_point(const FinancialNetwork &net, std::span<const double> x,
                                 std::span<const double> cash = {}, const ClearingOptions &options = {});

/// max v'pbar over the clearing polytope. Requires v > 0.
ClearingResult clear_lp(const FinancialNetwork &net, std::span<const double> x, std::span<const double> cash,
                        std::span<const double> v, const lp::Solver &solver = lp::default_solver());

/// w_j = c_j + sum_i P(i, j) - p_j.
std::vector<double> equity(const FinancialNetwork &net);

struct ComparisonReport {
    bool holds = true;
    std::optional<std::size_t> witness;
    double worst_violation = 0.0;
};

/**
 * Checks monotonicity of clearing in injected cash: pbar(hi) >= pbar(lo)
 * and, on nodes defaulting under hi, pbar(hi) - pbar(lo) >= cash_hi - cash_lo.
 */
ComparisonReport comparison_check(const FinancialNetwork &net, std::span<const double> x,
                                  std::span<const double> cash_lo, std::span<const double> cash_hi,
                                  double tol = 1e-8);

} // namespace bailout
