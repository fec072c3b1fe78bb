#pragma once

#include "bailout/matrix.hpp"
#include "bailout/network.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bailout {

/**
 * Cardinality: w(S, S^c) / min(|S|, |S^c|), psi denominator sum |x_i|.
 * Volume:      w(S, S^c) / min(vol S, vol S^c), psi denominator sum d_i |x_i|.
 */
enum class CutNormalization { Cardinality, Volume };

inline constexpr std::size_t kExhaustiveCutLimit = 24;

struct SpectralReport {
    CutNormalization normalization = CutNormalization::Volume;
    bool exact = false;
    double phi = 0.0;             ///< exact conductance (NaN when not exact)
    std::vector<std::size_t> cut; ///< smaller side of an optimal cut
    double lambda2 = 0.0;         ///< second-smallest eigenvalue of D - W
    double lambda2_normalized = 0.0; ///< same for I - D^{-1/2} W D^{-1/2}
    double phi_lower = 0.0;       ///< Cheeger interval
    double phi_upper = 0.0;
    double cheeger_bound = 0.0;   ///< lower bound on lambda2 implied by phi
    bool cheeger_holds = true;
    /// phi^2 / (2 d_max), the bound quoted for the weighted case; not scale invariant
    /// under the volume normalization and reported for diagnostics only.
    double stated_chain_bound = 0.0;
    bool stated_chain_holds = true;
};

bool is_connected(const DenseMatrix &w);

/// Exhaustive Gray-code enumeration of cuts when n <= cap; Cheeger interval otherwise.
/// Throws InvalidInput for asymmetric or disconnected weights.
SpectralReport conductance(const DenseMatrix &w, CutNormalization normalization = CutNormalization::Volume,
                           std::size_t cap = kExhaustiveCutLimit);

/// Second-smallest eigenvalue of the combinatorial Laplacian.
double laplacian_lambda2(const DenseMatrix &w);

/// sum over unordered pairs w_ij |x_i - x_j| divided by the normalization's denominator.
double psi(std::span<const double> x, const DenseMatrix &w,
           CutNormalization normalization = CutNormalization::Volume);

/// 0 is a (weighted) median: neither {x > 0} nor {x < 0} carries more than half the mass.
bool median_zero(std::span<const double> x, const DenseMatrix &w,
                 CutNormalization normalization = CutNormalization::Volume);

/// 1/phi on the cut side, 0 elsewhere.
std::vector<double> indicator_construction(const SpectralReport &report, std::size_t n);

/// Elementwise power; k = 0 gives the all-ones matrix (the Hadamard identity).
DenseMatrix hadamard_power(const DenseMatrix &a, unsigned k);

struct SgcConductanceCheck {
    bool skipped = false; ///< SGC was zero
    bool holds = true;
    double phi = 0.0;
    double sgc = 0.0;
};

/// Compares phi(A) / 2 with SGC(z; A) for a network with symmetric A.
SgcConductanceCheck sgc_conductance_check(std::span<const double> z, std::span<const double> L,
                                          const FinancialNetwork &net, double tol = 1e-12);

} // namespace bailout
