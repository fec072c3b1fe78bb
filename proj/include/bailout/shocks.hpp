#pragma once

#include "bailout/rng.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bailout {

enum class ShockKind { Uniform, ScaledBeta, PointMass, Zero };

std::string_view to_string(ShockKind kind);
ShockKind parse_shock_kind(std::string_view name);

/// Distribution of external-asset disruptions supported on [0, c].
class ShockDistribution {
public:
    ShockDistribution() = default;

    /// x_j ~ U[0, c_j] independently.
    static ShockDistribution uniform(std::vector<double> c);
    /// x_j = c_j * Beta(alpha, beta) independently.
    static ShockDistribution scaled_beta(std::vector<double> c, double alpha, double beta);
    /// Always x0; requires 0 <= x0 <= c.
    static ShockDistribution point_mass(std::vector<double> c, std::vector<double> x0);
    static ShockDistribution zero(std::vector<double> c);

    ShockKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return c_.size(); }
    const std::vector<double> &support() const noexcept { return c_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    const std::vector<double> &point() const noexcept { return x0_; }
    bool deterministic() const noexcept { return kind_ == ShockKind::PointMass || kind_ == ShockKind::Zero; }

    std::vector<double> sample(SeededRng &rng) const;

    /// Sample i is drawn from rng.substream(i), so the batch does not depend
    /// on evaluation order. `rng` itself is not advanced.
    std::vector<std::vector<double>> sample_batch(const SeededRng &rng, std::size_t m) const;

    std::string describe() const;

    friend bool operator==(const ShockDistribution &, const ShockDistribution &) = default;

private:
    ShockKind kind_ = ShockKind::Zero;
    std::vector<double> c_;
    double alpha_ = 0.0;
    double beta_ = 0.0;
    std::vector<double> x0_;
};

} // namespace bailout
