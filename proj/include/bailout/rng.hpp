#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace bailout {

/**
 * Counter-based generator: output k of stream (seed, stream) is a fixed
 * function of (seed, stream, k), so substreams can be handed to workers
 * without coordination.
 */
class SeededRng {
public:
    using result_type = std::uint64_t;

    explicit SeededRng(std::uint64_t seed = 0, std::uint64_t stream = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next(); }
    std::uint64_t next();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Exp(1) by inversion.
    double exponential();
    /// Uniform integer in [0, bound), unbiased.
    std::uint64_t below(std::uint64_t bound);
    bool bernoulli(double probability) { return uniform() < probability; }

    /// Independent child stream; does not advance this generator.
    SeededRng substream(std::uint64_t id) const;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }
    std::uint64_t position() const noexcept { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Fisher-Yates.
template <class T>
void shuffle(std::vector<T> &items, SeededRng &rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace bailout
