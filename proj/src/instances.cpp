#include "bailout/instances.hpp"

#include "bailout/errors.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <sstream>

namespace bailout {

std::string_view to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::StarPof:
        return "star-pof";
    case GeneratorKind::TwoClique:
        return "two-clique";
    case GeneratorKind::CompleteGap:
        return "complete-gap";
    case GeneratorKind::PathThreshold:
        return "path-threshold";
    case GeneratorKind::SetCoverGadget:
        return "set-cover-gadget";
    case GeneratorKind::LayeredGadget:
        return "layered-gadget";
    case GeneratorKind::RandomEr:
        return "random-er";
    }
    return "unknown";
}

GeneratorKind parse_generator_kind(std::string_view name) {
    for (auto k : {GeneratorKind::StarPof, GeneratorKind::TwoClique, GeneratorKind::CompleteGap,
                   GeneratorKind::PathThreshold, GeneratorKind::SetCoverGadget, GeneratorKind::LayeredGadget,
                   GeneratorKind::RandomEr})
        if (name == to_string(k))
            return k;
    throw InvalidInput("unknown generator '" + std::string(name) + "'");
}

namespace {

void require(bool ok, const std::string &what) {
    if (!ok)
        throw InvalidInput(what);
}

Instance make(FinancialNetwork net, std::vector<double> L, double budget, ShockDistribution shocks,
              std::string provenance, std::vector<double> q = {}) {
    return Instance{std::move(net), std::move(L), budget, std::move(shocks), std::move(q), std::move(provenance)};
}

Instance star(const GeneratorSpec &s) {
    const std::size_t n = s.n;
    require(n >= 2, "star-pof needs n >= 2");
    const double nd = static_cast<double>(n);
    DenseMatrix P(n, n);
    for (std::size_t i = 1; i < n; ++i)
        P(0, i) = 1.0;
    std::vector<double> b(n, 1.0), c(n, 0.0);
    c[0] = nd;
    auto net = FinancialNetwork::build(P, b, c);
    auto shocks = ShockDistribution::point_mass(c, c);
    return make(std::move(net), std::vector<double>(n, nd), nd, std::move(shocks), describe(s));
}

Instance two_clique(const GeneratorSpec &s) {
    const std::size_t n = s.n;
    require(n >= 4 && n % 2 == 0, "two-clique needs an even n >= 4");
    require(s.r > 0 && s.r <= 1, "two-clique needs r in (0, 1]");
    const double nd = static_cast<double>(n);
    require(s.shock_scale >= 0 && s.shock_scale <= nd, "two-clique shock scale must lie in [0, n]");
    const std::size_t half = n / 2;
    SeededRng rng(s.seed);
    DenseMatrix P(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same = (i < half) == (j < half);
            if (same || rng.uniform() < s.r) {
                P(i, j) = 1.0;
                P(j, i) = 1.0;
            }
        }
    std::vector<double> b(n, 1.0), c(n, nd), x(n, 0.0), q(n, 0.0);
    for (std::size_t j = 0; j < half; ++j) {
        x[j] = s.shock_scale;
        q[j] = 1.0;
    }
    auto net = FinancialNetwork::build(P, b, c);
    auto shocks = ShockDistribution::point_mass(c, x);
    return make(std::move(net), std::vector<double>(n, nd / 2.0), static_cast<double>(s.k) * nd / 2.0,
                std::move(shocks), describe(s), std::move(q));
}

Instance complete_gap(const GeneratorSpec &s) {
    const std::size_t n = s.n;
    require(n >= 2, "complete-gap needs n >= 2");
    require(s.k >= 1 && s.k <= n, "complete-gap needs 1 <= k <= n");
    require(s.epsilon > 0 && s.epsilon < 1, "complete-gap needs epsilon in (0, 1)");
    const double nd = static_cast<double>(n);
    DenseMatrix P(n, n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        P(i, i) = 0.0;
    std::vector<double> b(n, 1.0), c(n, 1.0), x(n, s.epsilon);
    auto net = FinancialNetwork::build(P, b, c);
    auto shocks = ShockDistribution::point_mass(c, x);
    const double l = nd * s.epsilon / static_cast<double>(s.k);
    return make(std::move(net), std::vector<double>(n, l), nd * s.epsilon, std::move(shocks), describe(s));
}

double path_step(const GeneratorSpec &s) {
    return s.epsilon > 0 ? s.epsilon : 1.0 / (2.0 * static_cast<double>(s.n - 1));
}

// v1 is node 0 (c = b = 1); the path v2 -> ... -> vn occupies nodes 1..n-1.
Instance path_threshold(const GeneratorSpec &s) {
    const std::size_t n = s.n;
    require(n >= 3, "path-threshold needs n >= 3");
    const double eps = path_step(s);
    require(eps > 0 && eps < 1.0 / static_cast<double>(n - 1), "path-threshold needs 0 < epsilon < 1/(n-1)");
    DenseMatrix P(n, n);
    std::vector<double> b(n, eps / 2.0), c(n, 0.0);
    b[0] = 1.0;
    c[0] = 1.0;
    c[1] = 1.0;
    for (std::size_t j = 2; j < n; ++j) // path position j (1-based) owes 1 - (j - 1) eps to the next node
        P(j - 1, j) = 1.0 - static_cast<double>(j - 1) * eps;
    b[n - 1] = 1.0 - static_cast<double>(n - 1) * eps + eps / 2.0;
    auto net = FinancialNetwork::build(P, b, c);
    auto shocks = ShockDistribution::point_mass(c, c);
    return make(std::move(net), std::vector<double>(n, 1.0), 1.0, std::move(shocks), describe(s));
}

const std::vector<std::vector<std::size_t>> &default_sets() {
    static const std::vector<std::vector<std::size_t>> sets{{0, 1, 2}, {1, 2, 3}};
    return sets;
}

// Set nodes 0..m-1, then `layers` copies of the item nodes.
Instance gadget(const GeneratorSpec &s, std::size_t layers) {
    require(s.alpha > 0 && s.alpha < 3, "gadget needs alpha in (0, 3)");
    const auto &sets = s.sets.empty() ? default_sets() : s.sets;
    const std::size_t items = s.sets.empty() ? 4 : s.n;
    require(items >= 1, "gadget needs at least one item");
    require(layers >= 1, "gadget needs at least one item layer");
    const std::size_t m = sets.size();
    require(m >= 1, "gadget needs at least one set");
    const std::size_t n = m + layers * items;
    const double keep = 1.0 - s.alpha / 3.0;

    DenseMatrix P(n, n);
    std::vector<double> b(n, 0.0), c(n, 0.0), x(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        require(sets[j].size() == 3, "gadget sets must have exactly three items");
        c[j] = 3.0;
        x[j] = 3.0;
        b[j] = s.alpha;
        for (std::size_t u : sets[j]) {
            require(u < items, "gadget set refers to an unknown item");
            require(P(j, m + u) == 0.0, "gadget set repeats an item");
            P(j, m + u) = keep;
        }
    }
    double inflow = keep;
    for (std::size_t layer = 0; layer < layers; ++layer) {
        const std::size_t base = m + layer * items;
        const bool last = layer + 1 == layers;
        for (std::size_t u = 0; u < items; ++u) {
            if (last) {
                b[base + u] = inflow;
                continue;
            }
            b[base + u] = s.alpha / 3.0 * inflow;
            for (std::size_t v = 0; v < items; ++v)
                P(base + u, base + items + v) = inflow * keep / static_cast<double>(items);
        }
        inflow *= keep;
    }
    auto net = FinancialNetwork::build(P, b, c);
    auto shocks = ShockDistribution::point_mass(c, x);
    return make(std::move(net), std::vector<double>(n, 3.0), 3.0 * static_cast<double>(s.k), std::move(shocks),
                describe(s));
}

Instance random_er(const GeneratorSpec &s) {
    const std::size_t n = s.n;
    require(n >= 2, "random-er needs n >= 2");
    require(s.edge_probability >= 0 && s.edge_probability <= 1, "edge probability must lie in [0, 1]");
    SeededRng rng(s.seed);
    std::vector<Edge> edges;
    std::vector<std::size_t> degree(n, 0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j)
                continue;
            if (rng.uniform() < s.edge_probability) {
                edges.push_back({j, i, rng.exponential()});
                ++degree[j];
                ++degree[i];
            }
        }
    // isolated nodes would have no liabilities at all; give each one outgoing edge
    for (std::size_t j = 0; j < n; ++j)
        if (degree[j] == 0) {
            std::size_t i = static_cast<std::size_t>(rng.below(n - 1));
            if (i >= j)
                ++i;
            edges.push_back({j, i, rng.exponential()});
            ++degree[j];
            ++degree[i];
        }
    std::vector<double> c(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
        c[j] = static_cast<double>(degree[j]) * rng.exponential();
        b[j] = 0.9 * c[j];
    }
    auto net = FinancialNetwork::from_edges(n, edges, b, c);
    const double l = s.stimulus > 0 ? s.stimulus : 10.0;
    auto shocks = ShockDistribution::uniform(c);
    return make(std::move(net), std::vector<double>(n, l), l * static_cast<double>(s.k), std::move(shocks),
                describe(s));
}

} // namespace

Instance generate(const GeneratorSpec &spec) {
    switch (spec.kind) {
    case GeneratorKind::StarPof:
        return star(spec);
    case GeneratorKind::TwoClique:
        return two_clique(spec);
    case GeneratorKind::CompleteGap:
        return complete_gap(spec);
    case GeneratorKind::PathThreshold:
        return path_threshold(spec);
    case GeneratorKind::SetCoverGadget:
        return gadget(spec, 1);
    case GeneratorKind::LayeredGadget:
        return gadget(spec, spec.layers);
    case GeneratorKind::RandomEr:
        return random_er(spec);
    }
    throw InvalidInput("unknown generator");
}

std::string describe(const GeneratorSpec &s) {
    std::ostringstream out;
    out.precision(17);
    out << to_string(s.kind) << ":";
    switch (s.kind) {
    case GeneratorKind::StarPof:
        out << " n=" << s.n << "; center 0 owes 1 to each leaf, c = n e_0, b = 1, L = n, budget n, shock x = c";
        break;
    case GeneratorKind::TwoClique:
        out << " n=" << s.n << " r=" << s.r << " k=" << s.k << " seed=" << s.seed << " shock_scale=" << s.shock_scale
            << "; cliques of n/2 with unit liabilities both ways, cross edges with probability r, c = n, b = 1,"
               " L = n/2, budget k n/2, shock on the first clique";
        break;
    case GeneratorKind::CompleteGap:
        out << " n=" << s.n << " k=" << s.k << " epsilon=" << s.epsilon
            << "; complete graph with unit liabilities, c = b = 1, shock epsilon, L = n epsilon / k,"
               " budget n epsilon";
        break;
    case GeneratorKind::PathThreshold:
        out << " n=" << s.n << " epsilon=" << path_step(s)
            << "; node 0 with c = b = 1 and a directed path 1 -> n-1 fed by c_1 = 1, shock x = c, L = 1, budget 1";
        break;
    case GeneratorKind::SetCoverGadget:
    case GeneratorKind::LayeredGadget:
        out << " alpha=" << s.alpha << " k=" << s.k;
        if (s.kind == GeneratorKind::LayeredGadget)
            out << " layers=" << s.layers;
        out << " sets=";
        {
            const auto &sets = s.sets.empty() ? default_sets() : s.sets;
            for (std::size_t j = 0; j < sets.size(); ++j) {
                out << (j ? "|" : "");
                for (std::size_t t = 0; t < sets[j].size(); ++t)
                    out << (t ? "," : "") << sets[j][t];
            }
        }
        out << "; set nodes c = 3, b = alpha, owe 1 - alpha/3 to each item, shock wipes the sets, L = 3,"
               " budget 3k";
        break;
    case GeneratorKind::RandomEr:
        out << " n=" << s.n << " p=" << s.edge_probability << " seed=" << s.seed << " k=" << s.k
            << "; Exp(1) liabilities, c = degree * Exp(1), b = 0.9 c, uniform shocks";
        break;
    }
    return out.str();
}

std::vector<double> synthetic_property(std::size_t n, SeededRng &rng) {
    std::vector<double> q(n);
    for (auto &v : q)
        v = boost::math::ibeta_inv(2.0, 5.0, rng.uniform());
    return q;
}

} // namespace bailout
