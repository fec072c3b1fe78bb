#pragma once

#include "bailout/network.hpp"

#include <cstddef>
#include <vector>

namespace bailout {

/// Weighted PageRank on debtor -> creditor edges; dangling nodes jump uniformly.
std::vector<double> pagerank(const FinancialNetwork &net, double damping = 0.85, double tol = 1e-12,
                             std::size_t max_iter = 10000);

/// Leading eigenvector of P + P^T (direction ignored), unit L2 norm, non-negative.
std::vector<double> eigencentrality(const FinancialNetwork &net, double tol = 1e-12, std::size_t max_iter = 100000);

/// Indices sorted by score, descending, ties (after rounding to ~1e-9 relative) by index.
std::vector<std::size_t> rank_descending(const std::vector<double> &scores);

} // namespace bailout
