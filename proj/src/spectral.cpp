#include "bailout/spectral.hpp"

#include "bailout/errors.hpp"
#include "bailout/fairness.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numeric>

namespace bailout {

namespace {

std::vector<double> degrees(const DenseMatrix &w) {
    std::vector<double> d(w.rows(), 0.0);
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j)
            if (i != j)
                d[i] += w(i, j);
    return d;
}

void check_weights(const DenseMatrix &w) {
    if (w.rows() != w.cols())
        throw InvalidInput("weight matrix is not square");
    if (!w.is_symmetric(1e-12))
        throw InvalidInput("weight matrix is not symmetric");
    for (double v : w.data())
        if (!(v >= 0) || !std::isfinite(v))
            throw InvalidInput("weights must be finite and non-negative");
}

Eigen::VectorXd eigenvalues(const DenseMatrix &w, bool normalized) {
    const auto n = static_cast<Eigen::Index>(w.rows());
    const auto d = degrees(w);
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto iu = static_cast<std::size_t>(i);
            const auto ju = static_cast<std::size_t>(j);
            if (i == j) {
                lap(i, j) = normalized ? 1.0 : d[iu];
            } else {
                const double v = w(iu, ju);
                lap(i, j) = normalized ? -v / std::sqrt(d[iu] * d[ju]) : -v;
            }
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

} // namespace

bool is_connected(const DenseMatrix &w) {
    const std::size_t n = w.rows();
    if (n == 0)
        return false;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v)
            if (!seen[v] && (w(u, v) > 0 || w(v, u) > 0)) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
    }
    return count == n;
}

double laplacian_lambda2(const DenseMatrix &w) {
    check_weights(w);
    if (w.rows() < 2)
        return 0.0;
    return eigenvalues(w, false)(1);
}

SpectralReport conductance(const DenseMatrix &w, CutNormalization normalization, std::size_t cap) {
    check_weights(w);
    const std::size_t n = w.rows();
    if (n < 2)
        throw InvalidInput("conductance needs at least two nodes");
    if (!is_connected(w))
        throw InvalidInput("graph is disconnected");

    const auto d = degrees(w);
    const double d_min = *std::min_element(d.begin(), d.end());
    const double d_max = *std::max_element(d.begin(), d.end());
    const double volume = std::accumulate(d.begin(), d.end(), 0.0);

    SpectralReport report;
    report.normalization = normalization;
    report.lambda2 = eigenvalues(w, false)(1);
    report.lambda2_normalized = eigenvalues(w, true)(1);
    if (normalization == CutNormalization::Volume) {
        report.phi_lower = report.lambda2_normalized / 2.0;
        report.phi_upper = std::sqrt(2.0 * report.lambda2_normalized);
    } else {
        report.phi_lower = report.lambda2 / 2.0;
        report.phi_upper = std::sqrt(2.0 * d_max * report.lambda2);
    }

    if (n > cap) {
        report.exact = false;
        report.phi = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    // Gray code over subsets of the first n - 1 nodes; node n - 1 stays outside,
    // which covers every cut exactly once.
    const std::size_t free_nodes = n - 1;
    const std::uint64_t total = std::uint64_t{1} << free_nodes;
    std::vector<double> into(n, 0.0); // sum of weights from u into S
    std::vector<bool> in(n, false);
    double cut = 0.0;
    double vol_s = 0.0;
    std::size_t size_s = 0;
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_code = 0;
    std::uint64_t code = 0;
    for (std::uint64_t k = 1; k < total; ++k) {
        const auto v = static_cast<std::size_t>(std::countr_zero(k));
        code ^= std::uint64_t{1} << v;
        if (!in[v]) {
            cut += d[v] - 2.0 * into[v];
            in[v] = true;
            vol_s += d[v];
            ++size_s;
            for (std::size_t u = 0; u < n; ++u)
                into[u] += w(v, u);
        } else {
            cut -= d[v] - 2.0 * into[v];
            in[v] = false;
            vol_s -= d[v];
            --size_s;
            for (std::size_t u = 0; u < n; ++u)
                into[u] -= w(v, u);
        }
        double denom;
        if (normalization == CutNormalization::Volume)
            denom = std::min(vol_s, volume - vol_s);
        else
            denom = static_cast<double>(std::min(size_s, n - size_s));
        const double ratio = std::max(cut, 0.0) / denom;
        if (ratio < best) {
            best = ratio;
            best_code = code;
        }
    }

    // recompute the optimum directly to drop accumulated rounding
    std::vector<std::size_t> side, other;
    for (std::size_t v = 0; v < n; ++v)
        ((v < free_nodes && (best_code >> v) & 1U) ? side : other).push_back(v);
    double cut_w = 0.0, vol_side = 0.0, vol_other = 0.0;
    for (std::size_t a : side)
        for (std::size_t b : other)
            cut_w += w(a, b);
    for (std::size_t a : side)
        vol_side += d[a];
    for (std::size_t b : other)
        vol_other += d[b];
    double denom;
    bool keep_side;
    if (normalization == CutNormalization::Volume) {
        denom = std::min(vol_side, vol_other);
        keep_side = vol_side <= vol_other;
    } else {
        denom = static_cast<double>(std::min(side.size(), other.size()));
        keep_side = side.size() <= other.size();
    }
    report.exact = true;
    report.phi = cut_w / denom;
    report.cut = keep_side ? side : other;

    if (normalization == CutNormalization::Volume)
        report.cheeger_bound = d_min * report.phi * report.phi / 2.0;
    else
        report.cheeger_bound = report.phi * report.phi / (2.0 * d_max);
    const double slack = 1e-10 * std::max(1.0, report.lambda2);
    report.cheeger_holds = report.lambda2 + slack >= report.cheeger_bound;
    report.stated_chain_bound = report.phi * report.phi / (2.0 * d_max);
    report.stated_chain_holds = report.lambda2 + slack >= report.stated_chain_bound;
    return report;
}

double psi(std::span<const double> x, const DenseMatrix &w, CutNormalization normalization) {
    const std::size_t n = w.rows();
    if (x.size() != n)
        throw InvalidInput("vector has wrong length");
    const auto d = degrees(w);
    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            num += w(i, j) * std::abs(x[i] - x[j]);
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        den += (normalization == CutNormalization::Volume ? d[i] : 1.0) * std::abs(x[i]);
    if (!(den > 0))
        throw UndefinedMetric("psi of a zero vector");
    return num / den;
}

bool median_zero(std::span<const double> x, const DenseMatrix &w, CutNormalization normalization) {
    const std::size_t n = w.rows();
    const auto d = degrees(w);
    double total = 0.0, pos = 0.0, neg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mass = normalization == CutNormalization::Volume ? d[i] : 1.0;
        total += mass;
        if (x[i] > 0)
            pos += mass;
        else if (x[i] < 0)
            neg += mass;
    }
    return pos <= total / 2.0 && neg <= total / 2.0;
}

std::vector<double> indicator_construction(const SpectralReport &report, std::size_t n) {
    if (!report.exact || !(report.phi > 0))
        throw InvalidInput("indicator construction needs an exact positive conductance");
    std::vector<double> x(n, 0.0);
    for (std::size_t v : report.cut)
        x[v] = 1.0 / report.phi;
    return x;
}

DenseMatrix hadamard_power(const DenseMatrix &a, unsigned k) {
    DenseMatrix out(a.rows(), a.cols(), 1.0);
    for (unsigned t = 0; t < k; ++t)
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                out(i, j) *= a(i, j);
    return out;
}

SgcConductanceCheck sgc_conductance_check(std::span<const double> z, std::span<const double> L,
                                          const FinancialNetwork &net, double tol) {
    const auto a = net.relative_matrix();
    if (!a.is_symmetric(1e-12))
        throw InvalidInput("relative liability matrix is not symmetric");
    SgcConductanceCheck check;
    check.sgc = spatial_gini(z, L, net);
    if (check.sgc == 0.0) {
        check.skipped = true;
        return check;
    }
    check.phi = conductance(a, CutNormalization::Volume).phi;
    check.holds = check.phi / 2.0 <= check.sgc + tol;
    return check;
}

} // namespace bailout
