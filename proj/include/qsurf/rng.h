#pragma once
#include <cstdint>

namespace qsurf {

// Deterministic splittable RNG.
//
// The core generator is splitmix64.  Parallel shot harnesses derive one
// independent stream per (master seed, stream index) pair via derive(), so an
// N-thread run visits exactly the same per-shot random sequences as a serial
// run and produces byte-identical output.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed = 0) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n).
    uint64_t uniform_int(uint64_t n) { return next() % n; }

    // Uniform +1 / -1.
    int pm1() { return (next() & 1) ? +1 : -1; }
};

// Derive an independent stream: hash (master, stream) through two rounds of
// the splitmix64 finalizer so nearby indices give uncorrelated states.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
    Rng mix(master ^ (stream * 0xda942042e4dd58b5ULL));
    mix.next();
    return mix.next();
}

}  // namespace qsurf
