#pragma once

#include <cstdint>
#include <random>

namespace aqec {

// Deterministic per-trajectory random stream: trajectory k of a run draws
// from an engine seeded by (master_seed, k) only, so ensembles are
// reproducible for any worker count and schedule.
class TrajectoryRng {
public:
    TrajectoryRng(uint64_t master_seed, uint64_t stream) {
        std::seed_seq seq{static_cast<uint32_t>(master_seed),
                          static_cast<uint32_t>(master_seed >> 32),
                          static_cast<uint32_t>(stream),
                          static_cast<uint32_t>(stream >> 32)};
        eng_.seed(seq);
    }

    // Uniform on (0, 1]; safe as a jump target for norm^2 <= r tests.
    double uniform_open_closed() {
        const uint64_t bits = eng_() >> 11;
        return 1.0 - static_cast<double>(bits) * 0x1.0p-53;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace aqec
