#pragma once

#include <cstdint>
#include <random>

namespace mrlab {

// splitmix64 step; used to derive independent seeds from a base seed.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic RNG. std::uniform_int_distribution is implementation-defined,
// so bounded draws use explicit rejection sampling to keep every stream
// reproducible across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(mix64(seed)) {}

    std::uint64_t next() { return eng_(); }

    // uniform over [0, bound), bound >= 1
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % bound;
    }

    // independent generator for a named substream of this seed
    Rng derived(std::uint64_t stream) const { return Rng(mix64(seed_ ^ mix64(stream))); }

  private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace mrlab
