#pragma once

#include "bailout/network.hpp"
#include "bailout/rng.hpp"
#include "bailout/shocks.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bailout {

enum class GeneratorKind { StarPof, TwoClique, CompleteGap, PathThreshold, SetCoverGadget, LayeredGadget, RandomEr };

std::string_view to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view name);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::RandomEr;
    std::size_t n = 10;            ///< nodes (items for the gadgets)
    double r = 0.5;                ///< two-clique: inter-clique edge probability
    double epsilon = 0.0;          ///< complete-gap shock; path-threshold step (0 selects 1/(2(n-1)))
    std::size_t k = 2;             ///< budget in units of the stimulus
    double alpha = 1.0;            ///< gadgets, in (0, 3)
    std::size_t layers = 2;        ///< layered gadget: copies of the item layer
    double edge_probability = 0.05;///< random-er
    std::uint64_t seed = 0;
    /// Gadget set system over items 0..n-1; empty selects {0,1,2}, {1,2,3} with n = 4.
    std::vector<std::vector<std::size_t>> sets;
    double stimulus = 0.0;         ///< random-er stimulus per node (0 selects 10)
    double shock_scale = 1.0;      ///< two-clique: shock on the first clique
};

struct Instance {
    FinancialNetwork net;
    std::vector<double> stimulus;
    double budget = 0.0;
    ShockDistribution shocks;
    std::vector<double> q; ///< empty when absent
    std::string provenance;
};

Instance generate(const GeneratorSpec &spec);

/// One-line construction record, embedded in instance files.
std::string describe(const GeneratorSpec &spec);

/// q_j ~ Beta(2, 5) independently.
std::vector<double> synthetic_property(std::size_t n, SeededRng &rng);

} // namespace bailout
