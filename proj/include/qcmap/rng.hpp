#pragma once

#include <cstdint>
#include <random>

namespace qcmap {

// One independent, reproducible stream per trajectory. Streams are derived
// from (master_seed, index) with splitmix64 so results do not depend on how
// trajectories are scheduled across workers.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

class TrajectoryRng {
public:
    explicit TrajectoryRng(std::uint64_t seed) : eng_(seed) {}
    TrajectoryRng(std::uint64_t master, std::uint64_t index)
        : eng_(derive_seed(master, index)) {}

    double uniform() { return unif_(eng_); }          // [0, 1)
    double normal() { return norm_(eng_); }           // N(0, 1)
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
    std::normal_distribution<double> norm_{0.0, 1.0};
};

} // namespace qcmap
