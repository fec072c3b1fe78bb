#include "bailout/lp.hpp"

#include "bailout/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace bailout::lp {

std::string_view to_string(Status status) {
    switch (status) {
    case Status::Optimal:
        return "optimal";
    case Status::Infeasible:
        return "infeasible";
    case Status::Unbounded:
        return "unbounded";
    case Status::IterationLimit:
        return "iteration-limit";
    case Status::NumericalFailure:
        return "numerical-failure";
    }
    return "unknown";
}

std::size_t LinearProgram::add_variable(double cost, double lo, double up) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(up);
    return objective.size() - 1;
}

std::size_t LinearProgram::add_row(Sense sense, double right_hand_side) {
    senses.push_back(sense);
    rhs.push_back(right_hand_side);
    return rhs.size() - 1;
}

void LinearProgram::add_entry(std::size_t row, std::size_t col, double value) {
    entries.push_back({row, col, value});
}

double LinearProgram::max_violation(const std::vector<double> &x) const {
    double worst = 0.0;
    for (std::size_t k = 0; k < num_variables(); ++k) {
        worst = std::max(worst, lower[k] - x[k]);
        worst = std::max(worst, x[k] - upper[k]);
    }
    std::vector<double> activity(num_rows(), 0.0);
    for (const auto &e : entries)
        activity[e.row] += e.value * x[e.col];
    for (std::size_t r = 0; r < num_rows(); ++r) {
        const double d = activity[r] - rhs[r];
        switch (senses[r]) {
        case Sense::LessEqual:
            worst = std::max(worst, d);
            break;
        case Sense::GreaterEqual:
            worst = std::max(worst, -d);
            break;
        case Sense::Equal:
            worst = std::max(worst, std::abs(d));
            break;
        }
    }
    return worst;
}

namespace {

enum class Bound : unsigned char { Lower, Upper, Basic };

// Working state of the bounded simplex over columns [structural | slack | artificial].
// Every column has lower bound 0 and upper bound `cap[k]` (possibly infinite).
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : m_(rows), n_(cols), t_(static_cast<std::size_t>(rows) * cols, 0.0), value_(rows, 0.0),
          basis_(rows, 0), cap_(cols, kInfinity), state_(cols, Bound::Lower), d_(cols, 0.0) {}

    double &at(std::size_t r, std::size_t k) { return t_[r * n_ + k]; }
    double at(std::size_t r, std::size_t k) const { return t_[r * n_ + k]; }

    std::size_t m_, n_;
    std::vector<double> t_;
    std::vector<double> value_;        // basic values per row
    std::vector<std::size_t> basis_;   // column basic in each row
    std::vector<double> cap_;
    std::vector<Bound> state_;
    std::vector<double> d_;            // reduced costs
    std::vector<bool> frozen_;         // columns never allowed to enter

    void price(const std::vector<double> &cost) {
        for (std::size_t k = 0; k < n_; ++k)
            d_[k] = cost[k];
        for (std::size_t r = 0; r < m_; ++r) {
            const double cb = cost[basis_[r]];
            if (cb == 0.0)
                continue;
            const double *row = &t_[r * n_];
            for (std::size_t k = 0; k < n_; ++k)
                d_[k] -= cb * row[k];
        }
        for (std::size_t r = 0; r < m_; ++r)
            d_[basis_[r]] = 0.0;
    }

    void pivot(std::size_t r, std::size_t k) {
        double *prow = &t_[r * n_];
        const double inv = 1.0 / prow[k];
        for (std::size_t j = 0; j < n_; ++j)
            prow[j] *= inv;
        prow[k] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r)
                continue;
            double *row = &t_[i * n_];
            const double f = row[k];
            if (f == 0.0)
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                row[j] -= f * prow[j];
            row[k] = 0.0;
        }
        const double f = d_[k];
        if (f != 0.0) {
            for (std::size_t j = 0; j < n_; ++j)
                d_[j] -= f * prow[j];
        }
        d_[k] = 0.0;
    }
};

struct PhaseOutcome {
    Status status;
    std::size_t iterations;
};

PhaseOutcome run_phase(Tableau &tab, const DenseSimplex::Options &opt, std::size_t limit) {
    std::size_t iterations = 0;
    std::size_t degenerate_run = 0;
    bool bland = false;
    const double opt_tol = opt.optimality_tol;
    const double piv_tol = opt.pivot_tol;
    const double feas_tol = opt.feasibility_tol;

    while (true) {
        if (iterations >= limit)
            return {Status::IterationLimit, iterations};

        // pricing
        std::size_t enter = tab.n_;
        double best = 0.0;
        for (std::size_t k = 0; k < tab.n_; ++k) {
            if (tab.state_[k] == Bound::Basic || tab.frozen_[k])
                continue;
            const double dk = tab.d_[k];
            double score = 0.0;
            if (tab.state_[k] == Bound::Lower && dk > opt_tol && tab.cap_[k] > 0.0)
                score = dk;
            else if (tab.state_[k] == Bound::Upper && dk < -opt_tol)
                score = -dk;
            if (score <= 0.0)
                continue;
            if (bland) {
                enter = k;
                break;
            }
            if (score > best) {
                best = score;
                enter = k;
            }
        }
        if (enter == tab.n_)
            return {Status::Optimal, iterations};

        const double dir = tab.state_[enter] == Bound::Lower ? 1.0 : -1.0;

        // ratio test, two passes (Harris): relaxed bound first, then the largest pivot
        double relaxed = tab.cap_[enter];
        for (std::size_t r = 0; r < tab.m_; ++r) {
            const double alpha = tab.at(r, enter);
            const double delta = -dir * alpha;
            const std::size_t b = tab.basis_[r];
            if (delta < -piv_tol) {
                relaxed = std::min(relaxed, (tab.value_[r] + feas_tol) / -delta);
            } else if (delta > piv_tol && std::isfinite(tab.cap_[b])) {
                relaxed = std::min(relaxed, (tab.cap_[b] - tab.value_[r] + feas_tol) / delta);
            }
        }
        if (!std::isfinite(relaxed))
            return {Status::Unbounded, iterations};

        std::size_t leave = tab.m_;
        double step = tab.cap_[enter];
        double best_alpha = 0.0;
        for (std::size_t r = 0; r < tab.m_; ++r) {
            const double alpha = tab.at(r, enter);
            const double delta = -dir * alpha;
            const std::size_t b = tab.basis_[r];
            double t;
            if (delta < -piv_tol)
                t = tab.value_[r] / -delta;
            else if (delta > piv_tol && std::isfinite(tab.cap_[b]))
                t = (tab.cap_[b] - tab.value_[r]) / delta;
            else
                continue;
            if (t <= relaxed && std::abs(alpha) > best_alpha) {
                best_alpha = std::abs(alpha);
                leave = r;
                step = std::max(t, 0.0);
            }
        }
        if (leave != tab.m_ && step > tab.cap_[enter])
            leave = tab.m_, step = tab.cap_[enter];

        ++iterations;
        if (step <= 1e-12) {
            if (++degenerate_run > 50)
                bland = true;
        } else {
            degenerate_run = 0;
            bland = false;
        }

        for (std::size_t r = 0; r < tab.m_; ++r) {
            const double alpha = tab.at(r, enter);
            if (alpha != 0.0)
                tab.value_[r] -= dir * alpha * step;
        }

        if (leave == tab.m_) {
            tab.state_[enter] = dir > 0 ? Bound::Upper : Bound::Lower;
            continue;
        }

        const double entering_value = (dir > 0 ? 0.0 : tab.cap_[enter]) + dir * step;
        const std::size_t out = tab.basis_[leave];
        const double delta = -dir * tab.at(leave, enter);
        tab.state_[out] = delta < 0 ? Bound::Lower : Bound::Upper;
        tab.basis_[leave] = enter;
        tab.state_[enter] = Bound::Basic;
        tab.value_[leave] = entering_value;
        tab.pivot(leave, enter);
    }
}

} // namespace

Solution DenseSimplex::solve(const LinearProgram &program) const {
    const std::size_t nv = program.num_variables();
    const std::size_t m = program.num_rows();
    if (program.lower.size() != nv || program.upper.size() != nv || program.senses.size() != m)
        throw InvalidInput("linear program: inconsistent sizes");
    for (std::size_t k = 0; k < nv; ++k) {
        if (!std::isfinite(program.lower[k]))
            throw InvalidInput("linear program: lower bounds must be finite");
        if (program.upper[k] < program.lower[k]) {
            Solution s;
            s.status = Status::Infeasible;
            s.message = "empty variable range";
            return s;
        }
    }

    // dense rows with bounds shifted so every structural lower bound is 0
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(nv));
    for (const auto &e : program.entries) {
        if (e.row >= m || e.col >= nv)
            throw InvalidInput("linear program: entry out of range");
        a(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += e.value;
    }
    std::vector<double> b(program.rhs);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k < nv; ++k)
            b[r] -= a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) * program.lower[k];

    // column layout
    std::size_t n_slack = 0;
    for (auto s : program.senses)
        if (s != Sense::Equal)
            ++n_slack;
    std::vector<double> sign(m, 1.0);
    std::vector<bool> needs_art(m, false);
    std::size_t n_art = 0;
    for (std::size_t r = 0; r < m; ++r) {
        switch (program.senses[r]) {
        case Sense::LessEqual:
            if (b[r] < 0) {
                sign[r] = -1.0;
                needs_art[r] = true;
            }
            break;
        case Sense::GreaterEqual:
            if (b[r] <= 0)
                sign[r] = -1.0;
            else
                needs_art[r] = true;
            break;
        case Sense::Equal:
            if (b[r] < 0)
                sign[r] = -1.0;
            needs_art[r] = true;
            break;
        }
        if (needs_art[r])
            ++n_art;
    }

    const std::size_t cols = nv + n_slack + n_art;
    Tableau tab(m, cols);
    tab.frozen_.assign(cols, false);
    for (std::size_t k = 0; k < nv; ++k)
        tab.cap_[k] = program.upper[k] - program.lower[k];

    std::size_t slack_col = nv;
    std::size_t art_col = nv + n_slack;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t k = 0; k < nv; ++k)
            tab.at(r, k) = sign[r] * a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
        tab.value_[r] = sign[r] * b[r];
        std::size_t own_slack = cols;
        if (program.senses[r] != Sense::Equal) {
            own_slack = slack_col++;
            const double coef = program.senses[r] == Sense::LessEqual ? 1.0 : -1.0;
            tab.at(r, own_slack) = sign[r] * coef;
        }
        if (needs_art[r]) {
            const std::size_t c = art_col++;
            tab.at(r, c) = 1.0;
            tab.basis_[r] = c;
            tab.state_[c] = Bound::Basic;
        } else {
            tab.basis_[r] = own_slack;
            tab.state_[own_slack] = Bound::Basic;
        }
    }

    const std::size_t limit =
        options_.max_iterations ? options_.max_iterations : 50 * (m + cols) + 1000;

    Solution sol;
    std::size_t iterations = 0;

    if (n_art > 0) {
        std::vector<double> cost(cols, 0.0);
        for (std::size_t c = nv + n_slack; c < cols; ++c)
            cost[c] = -1.0;
        tab.price(cost);
        auto phase1 = run_phase(tab, options_, limit);
        iterations += phase1.iterations;
        if (phase1.status == Status::IterationLimit) {
            sol.status = phase1.status;
            sol.iterations = iterations;
            sol.message = "phase 1 iteration limit";
            return sol;
        }
        double infeas = 0.0;
        double scale = 1.0;
        for (std::size_t r = 0; r < m; ++r) {
            scale = std::max(scale, std::abs(b[r]));
            if (tab.basis_[r] >= nv + n_slack)
                infeas += tab.value_[r];
        }
        if (infeas > options_.feasibility_tol * scale * 10) {
            sol.status = Status::Infeasible;
            sol.iterations = iterations;
            sol.message = "phase 1 residual " + std::to_string(infeas);
            return sol;
        }
        for (std::size_t c = nv + n_slack; c < cols; ++c) {
            tab.cap_[c] = 0.0;
            tab.frozen_[c] = true;
        }
    }

    std::vector<double> cost(cols, 0.0);
    for (std::size_t k = 0; k < nv; ++k)
        cost[k] = program.objective[k];
    tab.price(cost);
    auto phase2 = run_phase(tab, options_, limit);
    iterations += phase2.iterations;
    sol.iterations = iterations;
    if (phase2.status != Status::Optimal) {
        sol.status = phase2.status;
        sol.message = std::string("phase 2 ") + std::string(to_string(phase2.status));
        return sol;
    }

    // recompute basic values from the original columns to shed accumulated drift
    if (m > 0 && m <= options_.refine_limit) {
        auto original_column = [&](std::size_t c, Eigen::Index r) -> double {
            const auto ru = static_cast<std::size_t>(r);
            if (c < nv)
                return sign[ru] * a(r, static_cast<Eigen::Index>(c));
            return 0.0;
        };
        const auto em = static_cast<Eigen::Index>(m);
        Eigen::MatrixXd basis(em, em);
        Eigen::VectorXd rhs(em);
        // slack/artificial columns: rebuild their coefficients
        std::vector<std::size_t> slack_row(n_slack + n_art, 0);
        std::vector<double> slack_coef(n_slack + n_art, 0.0);
        {
            std::size_t sc = 0, ac = 0;
            for (std::size_t r = 0; r < m; ++r) {
                if (program.senses[r] != Sense::Equal) {
                    slack_row[sc] = r;
                    slack_coef[sc] = sign[r] * (program.senses[r] == Sense::LessEqual ? 1.0 : -1.0);
                    ++sc;
                }
                if (needs_art[r]) {
                    slack_row[n_slack + ac] = r;
                    slack_coef[n_slack + ac] = 1.0;
                    ++ac;
                }
            }
        }
        auto column = [&](std::size_t c, Eigen::Index r) -> double {
            if (c < nv)
                return original_column(c, r);
            const std::size_t idx = c - nv;
            return slack_row[idx] == static_cast<std::size_t>(r) ? slack_coef[idx] : 0.0;
        };
        for (Eigen::Index r = 0; r < em; ++r) {
            rhs(r) = sign[static_cast<std::size_t>(r)] * b[static_cast<std::size_t>(r)];
            for (Eigen::Index i = 0; i < em; ++i)
                basis(r, i) = column(tab.basis_[static_cast<std::size_t>(i)], r);
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (tab.state_[c] == Bound::Upper && std::isfinite(tab.cap_[c]) && tab.cap_[c] != 0.0)
                for (Eigen::Index r = 0; r < em; ++r)
                    rhs(r) -= column(c, r) * tab.cap_[c];
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
        Eigen::VectorXd xb = lu.solve(rhs);
        if (xb.allFinite()) {
            double drift = 0.0;
            for (std::size_t r = 0; r < m; ++r)
                drift = std::max(drift, std::abs(xb(static_cast<Eigen::Index>(r)) - tab.value_[r]));
            if (drift < 1e-6)
                for (std::size_t r = 0; r < m; ++r)
                    tab.value_[r] = xb(static_cast<Eigen::Index>(r));
        }
    }

    sol.x.assign(nv, 0.0);
    for (std::size_t k = 0; k < nv; ++k)
        if (tab.state_[k] == Bound::Upper)
            sol.x[k] = tab.cap_[k];
    for (std::size_t r = 0; r < m; ++r)
        if (tab.basis_[r] < nv)
            sol.x[tab.basis_[r]] = tab.value_[r];
    for (std::size_t k = 0; k < nv; ++k) {
        sol.x[k] = std::clamp(sol.x[k] + program.lower[k], program.lower[k], program.upper[k]);
    }
    sol.objective = 0.0;
    for (std::size_t k = 0; k < nv; ++k)
        sol.objective += program.objective[k] * sol.x[k];
    sol.max_violation = program.max_violation(sol.x);
    sol.status = Status::Optimal;
    return sol;
}

const Solver &default_solver() {
    static const DenseSimplex solver;
    return solver;
}

} // namespace bailout::lp
