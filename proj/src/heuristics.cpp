#include "bailout/centrality.hpp"
#include "bailout/errors.hpp"
#include "bailout/optimize.hpp"

#include <numeric>
#include <string>

namespace bailout {

std::string_view to_string(HeuristicKind kind) {
    switch (kind) {
    case HeuristicKind::WealthAscending:
        return "wealth";
    case HeuristicKind::OutDegree:
        return "outdegree";
    case HeuristicKind::PageRank:
        return "pagerank";
    case HeuristicKind::Eigencentrality:
        return "eigencentrality";
    case HeuristicKind::RandomPermutation:
        return "random";
    }
    return "unknown";
}

HeuristicKind parse_heuristic_kind(std::string_view name) {
    if (name == "wealth" || name == "wealth-asc")
        return HeuristicKind::WealthAscending;
    if (name == "outdegree")
        return HeuristicKind::OutDegree;
    if (name == "pagerank")
        return HeuristicKind::PageRank;
    if (name == "eigencentrality")
        return HeuristicKind::Eigencentrality;
    if (name == "random" || name == "random-perm")
        return HeuristicKind::RandomPermutation;
    throw InvalidInput("unknown heuristic '" + std::string(name) + "'");
}

std::vector<std::size_t> heuristic_order(HeuristicKind kind, const FinancialNetwork &net, SeededRng &rng) {
    const std::size_t n = net.size();
    switch (kind) {
    case HeuristicKind::WealthAscending: {
        auto w = equity(net);
        for (double &v : w)
            v = -v;
        return rank_descending(w);
    }
    case HeuristicKind::OutDegree: {
        std::vector<double> d(n);
        for (std::size_t j = 0; j < n; ++j)
            d[j] = static_cast<double>(net.out_degree(j));
        return rank_descending(d);
    }
    case HeuristicKind::PageRank:
        return rank_descending(pagerank(net));
    case HeuristicKind::Eigencentrality:
        return rank_descending(eigencentrality(net));
    case HeuristicKind::RandomPermutation: {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        shuffle(order, rng);
        return order;
    }
    }
    throw InvalidInput("unknown heuristic");
}

Allocation fill_in_order(std::span<const std::size_t> order, const BailoutProblem &problem) {
    Allocation a = Allocation::empty(problem.size());
    const double limit = problem.budget() + 1e-12 * std::max(1.0, problem.budget());
    for (std::size_t j : order) {
        const double l = problem.stimulus()[j];
        if (a.z[j] == 0.0 && a.spent + l <= limit) {
            a.z[j] = 1.0;
            a.spent += l;
        }
    }
    return a;
}

Allocation heuristic(HeuristicKind kind, const BailoutProblem &problem, SeededRng &rng) {
    const auto order = heuristic_order(kind, problem.net(), rng);
    return fill_in_order(order, problem);
}

} // namespace bailout
