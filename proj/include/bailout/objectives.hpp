#pragma once

#include "bailout/network.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace bailout {

enum class LinearKind { SoP, SoIP, SoT, FS };

std::string_view to_string(LinearKind kind);
LinearKind parse_linear_kind(std::string_view name);

/// Clearing use demands v > 0; evaluation tolerates zero coefficients.
enum class CoefficientUse { Clearing, EvaluationOnly };

/// 1 (SoP), beta (SoIP), 1 - beta (SoT), 1/p (FS).
std::vector<double> linear_coefficients(LinearKind kind, const FinancialNetwork &net,
                                        CoefficientUse use = CoefficientUse::Clearing);

/**
 * Welfare functional over a payment vector. Three shapes:
 *   linear            v'pbar
 *   absolute solvency |R|, the number of nodes paying in full
 *   augmented         |R| + coef * 1'pbar
 */
class Objective {
public:
    enum class Kind { Linear, AbsoluteSolvency, Augmented };

    /// `strict` requires v > 0; otherwise v >= 0 with at least one positive entry.
    static Objective linear(std::vector<double> v, bool strict = true);
    static Objective absolute_solvency();
    /// AS + eps (1 - beta_max) / (2 budget) * 1'pbar.
    static Objective epsilon_augment(const Objective &as, double eps, double budget, double beta_max);

    Kind kind() const noexcept { return kind_; }
    bool is_linear() const noexcept { return kind_ == Kind::Linear; }
    const std::vector<double> &v() const noexcept { return v_; }
    double augmentation() const noexcept { return augmentation_; }

    /// v_max / v_min for the linear kind; throws otherwise.
    double zeta() const;

    double evaluate(std::span<const double> pbar, const FinancialNetwork &net) const;
    double evaluate(const ClearingResult &result, const FinancialNetwork &net) const {
        return evaluate(result.pbar, net);
    }

private:
    Kind kind_ = Kind::AbsoluteSolvency;
    std::vector<double> v_;
    double augmentation_ = 0.0;
};

/// v_max / v_min of a positive vector.
double zeta(std::span<const double> v);

} // namespace bailout
