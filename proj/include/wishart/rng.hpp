#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace wishart {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// A stream is keyed by (seed, replica); blocks are addressed by
// (step, block-within-step), so replicas and steps can be evaluated in
// any order, on any number of workers, with bit-identical output.
namespace philox {

constexpr uint32_t kW32A = 0x9E3779B9u;
constexpr uint32_t kW32B = 0xBB67AE85u;
constexpr uint32_t kM4x32A = 0xD2511F53u;
constexpr uint32_t kM4x32B = 0xCD9E8D57u;

inline void mul_hi_lo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    const uint64_t p = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
}

inline std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        uint32_t hi0, lo0, hi1, lo1;
        mul_hi_lo(kM4x32A, ctr[0], hi0, lo0);
        mul_hi_lo(kM4x32B, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW32A;
        key[1] += kW32B;
    }
    return ctr;
}

} // namespace philox

// Deterministic per-replica Gaussian stream. Each 128-bit Philox block
// yields two uniforms, turned into a Box-Muller pair; the second normal
// is cached. begin_step() re-anchors the counter so draws within a step
// do not depend on how many draws earlier steps consumed.
class GaussianStream {
public:
    GaussianStream(uint64_t seed, uint32_t replica)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          replica_(replica) {}

    void begin_step(uint32_t step) {
        step_ = step;
        block_ = 0;
        has_cached_ = false;
    }

    // uniform on (0,1] and [0,1) from one fresh block
    void uniform_pair(double& u1, double& u2) {
        const auto b = philox::block({block_++, step_, replica_, 0u}, key_);
        const uint64_t x = (static_cast<uint64_t>(b[0]) << 32) | b[1];
        const uint64_t y = (static_cast<uint64_t>(b[2]) << 32) | b[3];
        u1 = static_cast<double>((x >> 11) + 1) * 0x1.0p-53; // (0,1]
        u2 = static_cast<double>(y >> 11) * 0x1.0p-53;       // [0,1)
    }

    double uniform01() {
        double u1, u2;
        uniform_pair(u1, u2);
        return u2;
    }

    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1, u2;
        uniform_pair(u1, u2);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586477 * u2;
        cached_ = rad * std::sin(ang);
        has_cached_ = true;
        return rad * std::cos(ang);
    }

private:
    std::array<uint32_t, 2> key_;
    uint32_t replica_;
    uint32_t step_ = 0;
    uint32_t block_ = 0;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

} // namespace wishart
