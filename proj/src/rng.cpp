#include "bailout/rng.hpp"

#include <cmath>

namespace bailout {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), key_(splitmix64(seed ^ splitmix64(stream ^ 0x6a09e667f3bcc909ULL))) {}

std::uint64_t SeededRng::next() {
    const std::uint64_t k = counter_++;
    return splitmix64(key_ ^ splitmix64(k));
}

double SeededRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SeededRng::exponential() { return -std::log1p(-uniform()); }

std::uint64_t SeededRng::below(std::uint64_t bound) {
    if (bound <= 1)
        return 0;
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t r;
    do {
        r = next();
    } while (r >= limit);
    return r % bound;
}

SeededRng SeededRng::substream(std::uint64_t id) const {
    return SeededRng(seed_, splitmix64(stream_ * 0xd1b54a32d192ed03ULL + id + 1));
}

} // namespace bailout
