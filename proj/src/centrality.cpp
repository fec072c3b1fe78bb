#include "bailout/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bailout {

std::vector<double> pagerank(const FinancialNetwork &net, double damping, double tol, std::size_t max_iter) {
    const std::size_t n = net.size();
    std::vector<double> out_weight(n, 0.0);
    for (const auto &e : net.edges())
        out_weight[e.from] += e.liability;

    std::vector<double> rank(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    for (std::size_t it = 0; it < max_iter; ++it) {
        double dangling = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (out_weight[j] == 0.0)
                dangling += rank[j];
        const double base = (1.0 - damping) / static_cast<double>(n) + damping * dangling / static_cast<double>(n);
        std::fill(next.begin(), next.end(), base);
        for (const auto &e : net.edges())
            next[e.to] += damping * rank[e.from] * e.liability / out_weight[e.from];
        double diff = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            diff += std::abs(next[j] - rank[j]);
        rank.swap(next);
        if (diff < tol)
            break;
    }
    return rank;
}

std::vector<double> eigencentrality(const FinancialNetwork &net, double tol, std::size_t max_iter) {
    const std::size_t n = net.size();
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);
    for (std::size_t it = 0; it < max_iter; ++it) {
        y = x; // shift by the identity keeps the iteration from oscillating
        for (const auto &e : net.edges()) {
            y[e.to] += e.liability * x[e.from];
            y[e.from] += e.liability * x[e.to];
        }
        double norm = 0.0;
        for (double v : y)
            norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0)
            return x;
        double diff = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            y[j] /= norm;
            diff = std::max(diff, std::abs(y[j] - x[j]));
        }
        x.swap(y);
        if (diff < tol)
            break;
    }
    return x;
}

std::vector<std::size_t> rank_descending(const std::vector<double> &scores) {
    double scale = 0.0;
    for (double s : scores)
        scale = std::max(scale, std::abs(s));
    const double quantum = 1e-9 * std::max(scale, 1e-300);
    std::vector<double> q(scores.size());
    for (std::size_t j = 0; j < scores.size(); ++j)
        q[j] = std::round(scores[j] / quantum);
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return q[a] > q[b]; });
    return order;
}

} // namespace bailout
