#include "bailout/network.hpp"

#include "bailout/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bailout {

namespace {

void check_vector(const std::vector<double> &v, std::size_t n, const char *name) {
    if (v.size() != n)
        throw NetworkError(NetworkError::Reason::DimensionMismatch,
                           std::string(name) + " has " + std::to_string(v.size()) + " entries, expected " +
                               std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(v[j]))
            throw NetworkError(NetworkError::Reason::NonFinite,
                               std::string(name) + "[" + std::to_string(j) + "] is not finite", j);
        if (v[j] < 0)
            throw NetworkError(NetworkError::Reason::NegativeEntry,
                               std::string(name) + "[" + std::to_string(j) + "] is negative", j);
    }
}

} // namespace

FinancialNetwork FinancialNetwork::build(const DenseMatrix &liabilities, std::vector<double> external_liabilities,
                                         std::vector<double> external_assets, Storage storage) {
    const std::size_t n = liabilities.rows();
    if (liabilities.cols() != n)
        throw NetworkError(NetworkError::Reason::DimensionMismatch, "liability matrix is not square");
    std::vector<Edge> edges;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const double v = liabilities(j, i);
            if (!std::isfinite(v))
                throw NetworkError(NetworkError::Reason::NonFinite,
                                   "P(" + std::to_string(j) + ", " + std::to_string(i) + ") is not finite", j);
            if (v < 0)
                throw NetworkError(NetworkError::Reason::NegativeEntry,
                                   "P(" + std::to_string(j) + ", " + std::to_string(i) + ") is negative", j);
            if (v > 0) {
                if (i == j)
                    throw NetworkError(NetworkError::Reason::SelfLoop,
                                       "node " + std::to_string(j) + " owes itself", j);
                edges.push_back({j, i, v});
            }
        }
    return from_edges(n, edges, std::move(external_liabilities), std::move(external_assets), storage);
}

FinancialNetwork FinancialNetwork::from_edges(std::size_t n, const std::vector<Edge> &edges,
                                              std::vector<double> external_liabilities,
                                              std::vector<double> external_assets, Storage storage) {
    check_vector(external_liabilities, n, "b");
    check_vector(external_assets, n, "c");

    FinancialNetwork net;
    net.n_ = n;
    net.b_ = std::move(external_liabilities);
    net.c_ = std::move(external_assets);

    std::vector<Edge> sorted;
    sorted.reserve(edges.size());
    for (const auto &e : edges) {
        if (e.from >= n || e.to >= n)
            throw NetworkError(NetworkError::Reason::DimensionMismatch, "edge endpoint out of range");
        if (!std::isfinite(e.liability))
            throw NetworkError(NetworkError::Reason::NonFinite, "edge liability is not finite", e.from);
        if (e.liability < 0)
            throw NetworkError(NetworkError::Reason::NegativeEntry, "edge liability is negative", e.from);
        if (e.liability == 0)
            continue;
        if (e.from == e.to)
            throw NetworkError(NetworkError::Reason::SelfLoop, "node " + std::to_string(e.from) + " owes itself",
                               e.from);
        sorted.push_back(e);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const Edge &a, const Edge &b) { return a.from != b.from ? a.from < b.from : a.to < b.to; });
    for (const auto &e : sorted) {
        if (!net.edges_.empty() && net.edges_.back().from == e.from && net.edges_.back().to == e.to)
            net.edges_.back().liability += e.liability;
        else
            net.edges_.push_back(e);
    }
    net.finish(storage);
    return net;
}

void FinancialNetwork::finish(Storage storage) {
    offsets_.assign(n_ + 1, 0);
    for (const auto &e : edges_)
        ++offsets_[e.from + 1];
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());

    p_ = b_;
    std::vector<double> internal(n_, 0.0);
    for (const auto &e : edges_)
        internal[e.from] += e.liability;
    beta_.assign(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        p_[j] += internal[j];
        if (!(p_[j] > 0))
            throw NetworkError(NetworkError::Reason::IsolatedNode,
                               "node " + std::to_string(j) + " has zero total liabilities", j);
        beta_[j] = internal[j] / p_[j];
    }
    beta_max_ = n_ ? *std::max_element(beta_.begin(), beta_.end()) : 0.0;
    beta_min_ = n_ ? *std::min_element(beta_.begin(), beta_.end()) : 0.0;
    if (beta_max_ >= 1.0) {
        const auto worst = static_cast<std::size_t>(std::max_element(beta_.begin(), beta_.end()) - beta_.begin());
        throw NetworkError(NetworkError::Reason::Connectivity,
                           "node " + std::to_string(worst) + " has no external liabilities (beta = 1)", worst);
    }

    dense_ = storage == Storage::Dense || (storage == Storage::Auto && n_ <= kDenseThreshold);
    if (dense_) {
        relative_ = DenseMatrix(n_, n_);
        for (const auto &e : edges_)
            relative_(e.from, e.to) = e.liability / p_[e.from];
    }
}

double FinancialNetwork::liability(std::size_t j, std::size_t i) const {
    const auto row = out_edges(j);
    const auto it = std::lower_bound(row.begin(), row.end(), i, [](const Edge &e, std::size_t t) { return e.to < t; });
    return it != row.end() && it->to == i ? it->liability : 0.0;
}

double FinancialNetwork::relative(std::size_t j, std::size_t i) const {
    if (dense_)
        return relative_(j, i);
    return liability(j, i) / p_[j];
}

DenseMatrix FinancialNetwork::liability_matrix() const {
    DenseMatrix m(n_, n_);
    for (const auto &e : edges_)
        m(e.from, e.to) = e.liability;
    return m;
}

DenseMatrix FinancialNetwork::relative_matrix() const {
    if (dense_)
        return relative_;
    DenseMatrix m(n_, n_);
    for (const auto &e : edges_)
        m(e.from, e.to) = e.liability / p_[e.from];
    return m;
}

void FinancialNetwork::apply_transpose(std::span<const double> x, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    if (dense_) {
        for (std::size_t j = 0; j < n_; ++j) {
            const double xj = x[j];
            if (xj == 0.0)
                continue;
            const auto row = relative_.row(j);
            for (std::size_t i = 0; i < n_; ++i)
                out[i] += row[i] * xj;
        }
        return;
    }
    for (const auto &e : edges_)
        out[e.to] += e.liability / p_[e.from] * x[e.from];
}

bool FinancialNetwork::symmetric_liabilities(double tol) const {
    for (const auto &e : edges_) {
        const double back = liability(e.to, e.from);
        if (std::abs(back - e.liability) > tol * std::max(1.0, e.liability))
            return false;
    }
    return true;
}

double default_tolerance(double total_liability) noexcept { return 1e-8 * std::max(1.0, total_liability); }

std::size_t default_max_iterations(const FinancialNetwork &net, double tol) {
    constexpr std::size_t floor = 1000;
    const double total = std::accumulate(net.p().begin(), net.p().end(), 0.0);
    if (net.beta_max() <= 0.0 || total <= tol)
        return floor;
    const double steps = std::ceil(std::log(total / tol) / std::log(1.0 / net.beta_max()));
    if (!std::isfinite(steps))
        return floor;
    return std::max(floor, 10 * static_cast<std::size_t>(std::max(0.0, steps)));
}

void classify(const FinancialNetwork &net, ClearingResult &result) {
    result.defaults.clear();
    result.solvents.clear();
    for (std::size_t j = 0; j < net.size(); ++j) {
        if (result.pbar[j] < net.p()[j] - default_tolerance(net.p()[j]))
            result.defaults.push_back(j);
        else
            result.solvents.push_back(j);
    }
}

namespace {

void check_shock(const FinancialNetwork &net, std::span<const double> x, std::span<const double> cash) {
    const std::size_t n = net.size();
    if (x.size() != n)
        throw InvalidInput("shock has " + std::to_string(x.size()) + " entries, expected " + std::to_string(n));
    if (!cash.empty() && cash.size() != n)
        throw InvalidInput("cash has " + std::to_string(cash.size()) + " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
        const double c = net.c()[j];
        if (!(x[j] >= 0.0) || x[j] > c + 1e-12 * std::max(1.0, c))
            throw InvalidInput("shock x[" + std::to_string(j) + "] outside [0, c]");
        if (!cash.empty() && !(cash[j] >= 0.0 && std::isfinite(cash[j])))
            throw InvalidInput("cash[" + std::to_string(j) + "] is negative or not finite");
    }
}

} // namespace

void clearing_map(const FinancialNetwork &net, std::span<const double> pbar, std::span<const double> x,
                  std::span<const double> cash, std::span<double> out) {
    net.apply_transpose(pbar, out);
    const auto &p = net.p();
    const auto &c = net.c();
    for (std::size_t j = 0; j < net.size(); ++j) {
        double v = out[j] + c[j] - x[j];
        if (!cash.empty())
            v += cash[j];
        out[j] = std::min(p[j], std::max(0.0, v));
    }
}

ClearingResult clear_fixed_point(const FinancialNetwork &net, std::span<const double> x,
                                 std::span<const double> cash, const ClearingOptions &options) {
    if (!(options.tol > 0))
        throw InvalidInput("clearing tolerance must be positive");
    check_shock(net, x, cash);
    const std::size_t limit = options.max_iter ? options.max_iter : default_max_iterations(net, options.tol);

    ClearingResult result;
    std::vector<double> current(net.p());
    std::vector<double> next(net.size());
    double residual = 0.0;
    std::size_t it = 0;
    while (true) {
        clearing_map(net, current, x, cash, next);
        ++it;
        residual = 0.0;
        for (std::size_t j = 0; j < net.size(); ++j)
            residual = std::max(residual, std::abs(next[j] - current[j]));
        current.swap(next);
        if (residual <= options.tol)
            break;
        if (it >= limit)
            throw ConvergenceError("clearing iteration did not converge, residual " + std::to_string(residual),
                                   residual, it);
    }
    result.pbar = std::move(current);
    result.iterations = it;
    result.residual = residual;
    classify(net, result);
    return result;
}

ClearingResult clear_lp(const FinancialNetwork &net, std::span<const double> x, std::span<const double> cash,
                        std::span<const double> v, const lp::Solver &solver) {
    check_shock(net, x, cash);
    const std::size_t n = net.size();
    if (v.size() != n)
        throw InvalidInput("objective coefficients have wrong length");
    for (double vj : v)
        if (!(vj > 0) || !std::isfinite(vj))
            throw InvalidInput("clearing by LP requires strictly positive coefficients");

    lp::LinearProgram program;
    for (std::size_t j = 0; j < n; ++j)
        program.add_variable(v[j], 0.0, net.p()[j]);
    for (std::size_t j = 0; j < n; ++j) {
        double rhs = net.c()[j] - x[j];
        if (!cash.empty())
            rhs += cash[j];
        program.add_row(lp::Sense::LessEqual, rhs);
        program.add_entry(j, j, 1.0);
    }
    for (const auto &e : net.edges())
        program.add_entry(e.to, e.from, -e.liability / net.p()[e.from]);

    auto sol = solver.solve(program);
    if (!sol.optimal())
        throw SolverError("clearing LP failed: " + std::string(lp::to_string(sol.status)) + " " + sol.message);

    ClearingResult result;
    result.pbar = std::move(sol.x);
    result.iterations = sol.iterations;
    std::vector<double> mapped(n);
    clearing_map(net, result.pbar, x, cash, mapped);
    for (std::size_t j = 0; j < n; ++j)
        result.residual = std::max(result.residual, std::abs(mapped[j] - result.pbar[j]));
    classify(net, result);
    return result;
}

std::vector<double> equity(const FinancialNetwork &net) {
    std::vector<double> w(net.c());
    for (const auto &e : net.edges())
        w[e.to] += e.liability;
    for (std::size_t j = 0; j < net.size(); ++j)
        w[j] -= net.p()[j];
    return w;
}

ComparisonReport comparison_check(const FinancialNetwork &net, std::span<const double> x,
                                  std::span<const double> cash_lo, std::span<const double> cash_hi, double tol) {
    const std::size_t n = net.size();
    if (cash_lo.size() != n || cash_hi.size() != n)
        throw InvalidInput("cash vectors have wrong length");
    for (std::size_t j = 0; j < n; ++j)
        if (cash_hi[j] < cash_lo[j])
            throw InvalidInput("cash_hi must dominate cash_lo");

    const auto lo = clear_fixed_point(net, x, cash_lo);
    const auto hi = clear_fixed_point(net, x, cash_hi);
    ComparisonReport report;
    auto record = [&](std::size_t j, double violation) {
        if (violation > report.worst_violation) {
            report.worst_violation = violation;
            if (violation > tol) {
                report.holds = false;
                report.witness = j;
            }
        }
    };
    for (std::size_t j = 0; j < n; ++j)
        record(j, lo.pbar[j] - hi.pbar[j]);
    for (std::size_t j : hi.defaults)
        record(j, lo.pbar[j] + (cash_hi[j] - cash_lo[j]) - hi.pbar[j]);
    return report;
}

} // namespace bailout
