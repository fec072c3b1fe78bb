#include "bailout/errors.hpp"
#include "bailout/fairness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace bailout {

std::string_view to_string(FairnessKind kind) {
    switch (kind) {
    case FairnessKind::GC:
        return "gc";
    case FairnessKind::PGC:
        return "pgc";
    case FairnessKind::SGC:
        return "sgc";
    }
    return "unknown";
}

FairnessKind parse_fairness_kind(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (s == "gc")
        return FairnessKind::GC;
    if (s == "pgc")
        return FairnessKind::PGC;
    if (s == "sgc")
        return FairnessKind::SGC;
    throw InvalidInput("unknown fairness kind '" + std::string(name) + "'");
}

void FairnessSpec::validate(std::size_t n) const {
    if (!(g >= 0 && g <= 1))
        throw InvalidInput("fairness bound g must lie in [0, 1]");
    if (kind != FairnessKind::PGC)
        return;
    if (q.size() != n)
        throw InvalidInput("property vector has wrong length");
    double nq = 0.0;
    for (double v : q) {
        if (!(v >= 0 && v <= 1))
            throw InvalidInput("property vector entries must lie in [0, 1]");
        nq += v;
    }
    if (!(nq > 0 && nq < static_cast<double>(n)))
        throw InvalidInput("property vector must split the nodes (0 < n_q < n)");
}

namespace {

std::vector<double> scaled(std::span<const double> z, std::span<const double> L) {
    if (z.size() != L.size())
        throw InvalidInput("allocation and stimulus lengths differ");
    std::vector<double> y(z.size());
    for (std::size_t j = 0; j < z.size(); ++j)
        y[j] = L[j] * z[j];
    return y;
}

} // namespace

double gini(std::span<const double> z, std::span<const double> L) {
    auto y = scaled(z, L);
    const std::size_t n = y.size();
    double total = 0.0;
    for (double v : y)
        total += v;
    if (!(total > 0))
        throw UndefinedMetric("Gini coefficient of a zero allocation");
    std::sort(y.begin(), y.end());
    if (y.front() == y.back())
        return 0.0;
    // 1 - GC = sum_k (2(n - k) - 1) y_(k) / (n total) over the ascending order
    double rest = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        rest += (2.0 * static_cast<double>(n - k) - 1.0) * y[k];
    return 1.0 - rest / total / static_cast<double>(n);
}

double property_gini(std::span<const double> z, std::span<const double> L, std::span<const double> q) {
    const auto y = scaled(z, L);
    const std::size_t n = y.size();
    if (q.size() != n)
        throw InvalidInput("property vector has wrong length");
    double nq = 0.0;
    double weighted = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        nq += q[j];
        weighted += q[j] * y[j];
    }
    const double denom = 2.0 * (static_cast<double>(n) - nq) * weighted;
    if (!(denom > 0))
        throw UndefinedMetric("property Gini denominator is zero");
    double num = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (q[j] == 0.0)
            continue;
        for (std::size_t i = 0; i < n; ++i)
            num += q[j] * (1.0 - q[i]) * std::abs(y[i] - y[j]);
    }
    return num / denom;
}

double spatial_gini(std::span<const double> z, std::span<const double> L, const FinancialNetwork &net) {
    const auto y = scaled(z, L);
    if (y.size() != net.size())
        throw InvalidInput("allocation has wrong length");
    double denom = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j)
        denom += net.beta()[j] * y[j];
    denom *= 2.0;
    if (!(denom > 0))
        throw UndefinedMetric("spatial Gini denominator is zero");
    double num = 0.0;
    for (const auto &e : net.edges())
        num += e.liability / net.p()[e.from] * std::abs(y[e.from] - y[e.to]);
    return num / denom;
}

double fairness_coefficient(const FairnessSpec &spec, std::span<const double> z, std::span<const double> L,
                            const FinancialNetwork &net) {
    switch (spec.kind) {
    case FairnessKind::GC:
        return gini(z, L);
    case FairnessKind::PGC:
        return property_gini(z, L, spec.q);
    case FairnessKind::SGC:
        return spatial_gini(z, L, net);
    }
    throw InvalidInput("unknown fairness kind");
}

double PairwiseForm::numerator(std::span<const double> y) const {
    double s = 0.0;
    for (const auto &p : pairs)
        s += p.w * std::abs(y[p.i] - y[p.j]);
    return s;
}

double PairwiseForm::denominator(std::span<const double> y) const {
    double s = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k)
        s += h[k] * y[k];
    return s;
}

PairwiseForm pairwise_form(const FairnessSpec &spec, const FinancialNetwork &net) {
    const std::size_t n = net.size();
    spec.validate(n);
    PairwiseForm form;
    form.h.assign(n, 0.0);
    switch (spec.kind) {
    case FairnessKind::GC:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                form.pairs.push_back({i, j, 2.0});
        std::fill(form.h.begin(), form.h.end(), 2.0 * static_cast<double>(n));
        break;
    case FairnessKind::PGC: {
        double nq = 0.0;
        for (double v : spec.q)
            nq += v;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double w = spec.q[i] * (1.0 - spec.q[j]) + spec.q[j] * (1.0 - spec.q[i]);
                if (w > 0)
                    form.pairs.push_back({i, j, w});
            }
        for (std::size_t k = 0; k < n; ++k)
            form.h[k] = 2.0 * (static_cast<double>(n) - nq) * spec.q[k];
        break;
    }
    case FairnessKind::SGC: {
        std::vector<PairwiseForm::Pair> raw;
        for (const auto &e : net.edges())
            raw.push_back({std::min(e.from, e.to), std::max(e.from, e.to), e.liability / net.p()[e.from]});
        std::sort(raw.begin(), raw.end(),
                  [](const auto &a, const auto &b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
        for (const auto &p : raw) {
            if (!form.pairs.empty() && form.pairs.back().i == p.i && form.pairs.back().j == p.j)
                form.pairs.back().w += p.w;
            else
                form.pairs.push_back(p);
        }
        for (std::size_t k = 0; k < n; ++k)
            form.h[k] = 2.0 * net.beta()[k];
        break;
    }
    }
    return form;
}

bool satisfies_fairness(const FairnessSpec &spec, std::span<const double> z, std::span<const double> L,
                        const FinancialNetwork &net, double rel_tol) {
    const auto form = pairwise_form(spec, net);
    const auto y = scaled(z, L);
    const double num = form.numerator(y);
    const double bound = spec.g * form.denominator(y);
    return num <= bound + rel_tol * std::max({num, bound, 1e-300});
}

bool within_between_fairness_check(std::span<const double> z, std::span<const double> L,
                                   std::span<const double> q, double g_between, double g_within) {
    const std::size_t n = z.size();
    if (q.size() != n)
        throw InvalidInput("property vector has wrong length");
    const auto y = scaled(z, L);
    // Gini within a group given by membership weights m (the indicator for binary q)
    auto group_gini = [&](auto member) {
        double num = 0.0, mass = 0.0, total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            mass += member(j);
            total += member(j) * y[j];
            for (std::size_t i = 0; i < n; ++i)
                num += member(i) * member(j) * std::abs(y[i] - y[j]);
        }
        return total > 0 ? num / (2.0 * mass * total) : 0.0;
    };
    const double within_in = group_gini([&](std::size_t j) { return q[j]; });
    const double within_out = group_gini([&](std::size_t j) { return 1.0 - q[j]; });
    return property_gini(z, L, q) <= g_between && within_in <= g_within && within_out <= g_within;
}

} // namespace bailout
