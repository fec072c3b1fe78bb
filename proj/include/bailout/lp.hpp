#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace bailout::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, GreaterEqual, Equal };

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit, NumericalFailure };

std::string_view to_string(Status status);

struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
};

/**
 * A maximization LP in sparse triple form:
 *
 *     max  c'x   s.t.  row_r(x) {<=,>=,=} rhs_r,   lower <= x <= upper.
 *
 * Lower bounds must be finite; upper bounds may be +infinity. Duplicate
 * (row, col) entries are summed.
 */
struct LinearProgram {
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<Sense> senses;
    std::vector<double> rhs;
    std::vector<Entry> entries;

    std::size_t add_variable(double cost, double lo, double up);
    std::size_t add_row(Sense sense, double right_hand_side);
    void add_entry(std::size_t row, std::size_t col, double value);

    std::size_t num_variables() const noexcept { return objective.size(); }
    std::size_t num_rows() const noexcept { return rhs.size(); }

    /// Largest violation of rows and bounds at x (0 when feasible).
    double max_violation(const std::vector<double> &x) const;
};

struct Solution {
    Status status = Status::NumericalFailure;
    std::vector<double> x;
    double objective = 0.0;
    std::size_t iterations = 0;
    double max_violation = 0.0;
    std::string message;

    bool optimal() const noexcept { return status == Status::Optimal; }
};

/// Backend interface. Implementations must be safe to call concurrently.
class Solver {
public:
    virtual ~Solver() = default;
    virtual Solution solve(const LinearProgram &program) const = 0;
    virtual std::string_view name() const = 0;
};

/**
 * Dense bounded-variable primal simplex (two phases, tableau form).
 *
 * Upper bounds are handled implicitly: nonbasic columns sit at either bound,
 * so box constraints never become rows. Pricing is Dantzig's rule with a
 * switch to Bland's rule after a run of degenerate pivots. On optimality the
 * basic values are recomputed from a fresh factorization of the basis when
 * it is small enough.
 */
class DenseSimplex final : public Solver {
public:
    struct Options {
        double feasibility_tol = 1e-9;
        double optimality_tol = 1e-9;
        double pivot_tol = 1e-11;
        std::size_t max_iterations = 0; ///< 0 selects 50 * (rows + columns)
        std::size_t refine_limit = 1500; ///< refactorize the final basis up to this many rows
    };

    DenseSimplex() = default;
    explicit DenseSimplex(Options options) : options_(options) {}

    Solution solve(const LinearProgram &program) const override;
    std::string_view name() const override { return "dense-simplex"; }

private:
    Options options_{};
};

const Solver &default_solver();

} // namespace bailout::lp
