#pragma once

// Deterministic counter-based sampling. Every sample index owns a substream
// derived from (seed, stream, index), so parallel and serial runs produce
// identical draws. Stream ids: 0 experiment samples, 1 moment/normalizer
// samples, 2-3 verification sweeps, 4 test utilities.

#include <cstdint>

namespace dyadnet {

inline uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
public:
    Rng(uint64_t seed, uint64_t stream, uint64_t index)
        : state_(mix64(mix64(mix64(seed) ^ stream) ^ index)) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on [0,1) with 53 significant bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

// Draw discipline for one (T, Y) sample: per coordinate one word for the
// shift digits (top m bits), then per coordinate one word for Y.
inline void sample_shift_point(int s, int m, uint64_t seed, uint64_t stream, uint64_t index,
                               uint64_t* t_masks, uint64_t* y_frac) {
    Rng g(seed, stream, index);
    for (int i = 0; i < s; ++i) t_masks[i] = m ? (g.next() >> (64 - m)) : 0;
    for (int i = 0; i < s; ++i) y_frac[i] = g.next();
}

} // namespace dyadnet
