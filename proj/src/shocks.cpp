#include "bailout/shocks.hpp"

#include "bailout/errors.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <sstream>

namespace bailout {

std::string_view to_string(ShockKind kind) {
    switch (kind) {
    case ShockKind::Uniform:
        return "uniform";
    case ShockKind::ScaledBeta:
        return "beta";
    case ShockKind::PointMass:
        return "point";
    case ShockKind::Zero:
        return "zero";
    }
    return "unknown";
}

ShockKind parse_shock_kind(std::string_view name) {
    if (name == "uniform")
        return ShockKind::Uniform;
    if (name == "beta" || name == "scaled-beta")
        return ShockKind::ScaledBeta;
    if (name == "point" || name == "point-mass")
        return ShockKind::PointMass;
    if (name == "zero")
        return ShockKind::Zero;
    throw InvalidInput("unknown shock kind '" + std::string(name) + "'");
}

namespace {

void check_support(const std::vector<double> &c) {
    for (double v : c)
        if (!(v >= 0) || !std::isfinite(v))
            throw InvalidInput("shock support must be finite and non-negative");
}

} // namespace

ShockDistribution ShockDistribution::uniform(std::vector<double> c) {
    check_support(c);
    ShockDistribution d;
    d.kind_ = ShockKind::Uniform;
    d.c_ = std::move(c);
    return d;
}

ShockDistribution ShockDistribution::scaled_beta(std::vector<double> c, double alpha, double beta) {
    check_support(c);
    if (!(alpha > 0) || !(beta > 0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw InvalidInput("beta shock parameters must be positive");
    ShockDistribution d;
    d.kind_ = ShockKind::ScaledBeta;
    d.c_ = std::move(c);
    d.alpha_ = alpha;
    d.beta_ = beta;
    return d;
}

ShockDistribution ShockDistribution::point_mass(std::vector<double> c, std::vector<double> x0) {
    check_support(c);
    if (x0.size() != c.size())
        throw InvalidInput("point shock has wrong length");
    for (std::size_t j = 0; j < c.size(); ++j)
        if (!(x0[j] >= 0) || x0[j] > c[j])
            throw InvalidInput("point shock x[" + std::to_string(j) + "] outside [0, c]");
    ShockDistribution d;
    d.kind_ = ShockKind::PointMass;
    d.c_ = std::move(c);
    d.x0_ = std::move(x0);
    return d;
}

ShockDistribution ShockDistribution::zero(std::vector<double> c) {
    check_support(c);
    ShockDistribution d;
    d.kind_ = ShockKind::Zero;
    d.c_ = std::move(c);
    return d;
}

std::vector<double> ShockDistribution::sample(SeededRng &rng) const {
    const std::size_t n = c_.size();
    std::vector<double> x(n, 0.0);
    switch (kind_) {
    case ShockKind::Zero:
        break;
    case ShockKind::PointMass:
        x = x0_;
        break;
    case ShockKind::Uniform:
        for (std::size_t j = 0; j < n; ++j)
            x[j] = c_[j] * rng.uniform();
        break;
    case ShockKind::ScaledBeta:
        for (std::size_t j = 0; j < n; ++j) {
            const double u = rng.uniform();
            x[j] = c_[j] * boost::math::ibeta_inv(alpha_, beta_, u);
        }
        break;
    }
    return x;
}

std::vector<std::vector<double>> ShockDistribution::sample_batch(const SeededRng &rng, std::size_t m) const {
    std::vector<std::vector<double>> batch;
    batch.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto sub = rng.substream(i);
        batch.push_back(sample(sub));
    }
    return batch;
}

std::string ShockDistribution::describe() const {
    std::ostringstream out;
    out << to_string(kind_);
    if (kind_ == ShockKind::ScaledBeta)
        out << "(" << alpha_ << ", " << beta_ << ")";
    return out.str();
}

} // namespace bailout
