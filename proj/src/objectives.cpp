#include "bailout/objectives.hpp"

#include "bailout/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace bailout {

std::string_view to_string(LinearKind kind) {
    switch (kind) {
    case LinearKind::SoP:
        return "sop";
    case LinearKind::SoIP:
        return "soip";
    case LinearKind::SoT:
        return "sot";
    case LinearKind::FS:
        return "fs";
    }
    return "unknown";
}

LinearKind parse_linear_kind(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (s == "sop")
        return LinearKind::SoP;
    if (s == "soip")
        return LinearKind::SoIP;
    if (s == "sot")
        return LinearKind::SoT;
    if (s == "fs")
        return LinearKind::FS;
    throw InvalidInput("unknown linear objective '" + std::string(name) + "'");
}

std::vector<double> linear_coefficients(LinearKind kind, const FinancialNetwork &net, CoefficientUse use) {
    const std::size_t n = net.size();
    std::vector<double> v(n, 1.0);
    switch (kind) {
    case LinearKind::SoP:
        break;
    case LinearKind::SoIP:
        v = net.beta();
        break;
    case LinearKind::SoT:
        for (std::size_t j = 0; j < n; ++j)
            v[j] = 1.0 - net.beta()[j];
        break;
    case LinearKind::FS:
        for (std::size_t j = 0; j < n; ++j)
            v[j] = 1.0 / net.p()[j];
        break;
    }
    if (use == CoefficientUse::Clearing)
        for (std::size_t j = 0; j < n; ++j)
            if (!(v[j] > 0))
                throw InvalidInput(std::string(to_string(kind)) + " coefficient of node " + std::to_string(j) +
                                   " is zero; not strictly increasing");
    return v;
}

Objective Objective::linear(std::vector<double> v, bool strict) {
    bool any_positive = false;
    for (double x : v) {
        if (!std::isfinite(x) || x < 0 || (strict && x == 0))
            throw InvalidInput(strict ? "objective coefficients must be strictly positive"
                                      : "objective coefficients must be non-negative");
        any_positive = any_positive || x > 0;
    }
    if (!v.empty() && !any_positive)
        throw InvalidInput("objective coefficients are all zero");
    Objective o;
    o.kind_ = Kind::Linear;
    o.v_ = std::move(v);
    return o;
}

Objective Objective::absolute_solvency() { return Objective{}; }

Objective Objective::epsilon_augment(const Objective &as, double eps, double budget, double beta_max) {
    if (as.kind_ != Kind::AbsoluteSolvency)
        throw InvalidInput("augmentation applies to the absolute-solvency objective");
    if (!(eps > 0))
        throw InvalidInput("augmentation epsilon must be positive");
    if (!(budget > 0))
        throw InvalidInput("augmentation budget must be positive");
    if (!(beta_max >= 0 && beta_max < 1))
        throw InvalidInput("beta_max must lie in [0, 1)");
    Objective o;
    o.kind_ = Kind::Augmented;
    o.augmentation_ = eps * (1.0 - beta_max) / (2.0 * budget);
    return o;
}

double zeta(std::span<const double> v) {
    if (v.empty())
        throw InvalidInput("zeta of an empty vector");
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (!(*lo > 0))
        throw InvalidInput("zeta requires strictly positive coefficients");
    return *hi / *lo;
}

double Objective::zeta() const {
    if (kind_ != Kind::Linear)
        throw InvalidInput("zeta is defined for linear objectives only");
    return bailout::zeta(v_);
}

double Objective::evaluate(std::span<const double> pbar, const FinancialNetwork &net) const {
    const std::size_t n = net.size();
    if (pbar.size() != n)
        throw InvalidInput("payment vector has wrong length");
    double total = 0.0;
    if (kind_ == Kind::Linear) {
        if (v_.size() != n)
            throw InvalidInput("objective coefficients have wrong length");
        for (std::size_t j = 0; j < n; ++j)
            total += v_[j] * pbar[j];
        return total;
    }
    for (std::size_t j = 0; j < n; ++j)
        if (pbar[j] >= net.p()[j] - default_tolerance(net.p()[j]))
            total += 1.0;
    if (kind_ == Kind::Augmented) {
        double sum = 0.0;
        for (double x : pbar)
            sum += x;
        total += augmentation_ * sum;
    }
    return total;
}

} // namespace bailout
