#pragma once

#include <array>
#include <cstdint>

namespace rxcoop {

/// splitmix64 step; used to derive independent streams from (seed, index)
/// so that parallel sweep evaluation is reproducible regardless of thread
/// scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return splitmix64(s);
}

/// Small deterministic generator (xoshiro-free: splitmix64 chain). The
/// standard <random> distributions are implementation-defined, so uniform
/// doubles are produced by hand to keep output byte-identical everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64(state_); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform phase in [0, 2*pi).
    double phase() { return uniform() * 6.283185307179586476925286766559; }

    std::array<double, 4> phase_tuple() {
        return {phase(), phase(), phase(), phase()};
    }

    bool bit() { return (next() >> 63) != 0; }

  private:
    std::uint64_t state_;
};

}  // namespace rxcoop
