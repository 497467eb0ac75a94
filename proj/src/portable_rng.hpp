#pragma once

#include <cstdint>
#include <random>

namespace ecgscrub::detail {

// splitmix64 step, used to decorrelate derived seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic standard-normal stream: mt19937_64 feeding an explicit
// Box-Muller pair. std::normal_distribution is not portable across
// standard libraries, so we do not use it.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : eng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    double uniform01() {
        // 53-bit mantissa in [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ecgscrub::detail
