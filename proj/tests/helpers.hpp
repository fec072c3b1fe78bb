#pragma once

#include "bailout/matrix.hpp"
#include "bailout/network.hpp"
#include "bailout/rng.hpp"

#include <vector>

namespace fixtures {


inline bailout::FinancialNetwork example1() {
    return bailout::FinancialNetwork::build(bailout::DenseMatrix::from_rows({{0, 1}, {0, 0}}), {0.5, 1.0},
                                            {1.5, 0.0});
}

/// Random network with about `density` of the ordered pairs carrying a liability.
inline bailout::FinancialNetwork random_network(std::size_t n, double density, double beta_max,
                                                bailout::SeededRng &rng) {
    bailout::DenseMatrix P(n, n, 0.0);
    std::vector<double> b(n), c(n);
    for (std::size_t j = 0; j < n; ++j) {
        double internal = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j && rng.bernoulli(density)) {
                P(j, i) = 0.1 + rng.uniform();
                internal += P(j, i);
            }
        // keep beta_j = internal / (internal + b_j) below beta_max
        const double b_min = internal * (1.0 - beta_max) / beta_max;
        b[j] = b_min + rng.uniform() * (0.5 + internal);
        if (b[j] <= 0)
            b[j] = 0.5;
        c[j] = rng.uniform() * 2.0;
    }
    return bailout::FinancialNetwork::build(P, b, c);
}

} // namespace fixtures
