#pragma once
#include <cstdint>

namespace weiljet {

// splitmix64. Deterministic across platforms and standard library versions,
// which <random> distributions are not; all randomized tests and the verify
// runner derive their streams from this.
class Rng {
    uint64_t state_;

public:
    explicit constexpr Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Modulo bias is irrelevant at test scale.
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    // Inclusive bounds.
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool chance(uint32_t num, uint32_t den) { return below(den) < num; }

    // Independent child stream; advances this generator once.
    Rng fork(uint64_t stream) {
        return Rng(next() ^ (0xd1342543de82ef95ull * (stream + 1)));
    }
};

} // namespace weiljet
