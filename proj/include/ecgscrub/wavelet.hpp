#pragma once

#include "ecgscrub/signal.hpp"

#include <utility>

namespace ecgscrub {

// Orthogonal two-channel filter bank. The high-pass is always the quadrature
// mirror of the low-pass: h1[n] = (-1)^n * h0[L-1-n].
struct FilterBank {
    std::string name;
    Eigen::ArrayXd h0;  // low-pass, sums to sqrt(2)
    Eigen::ArrayXd h1;  // high-pass, derived

    FilterBank() = default;
    FilterBank(std::string bank_name, Eigen::ArrayXd lowpass);
};

// Fejer-Korovkin length-14 orthogonal bank, the pipeline default.
const FilterBank& fk14();

enum class Boundary {
    Reflect,   // whole-signal reflection, default for pipeline use
    Periodic,  // circular, used by the shift-invariance property test
};

// Undecimated (stationary) wavelet multiresolution analysis.
// Returns levels+1 components of the input's length, ordered detail-1
// (finest) .. detail-levels, approximation-levels, which sum back to the
// input to machine precision.
Decomposition mra_decompose(const Signal& signal, int levels, const FilterBank& bank,
                            Boundary boundary = Boundary::Reflect);

// Sums the first `first_group_size` components and the remaining ones.
// The two outputs add up to recombine(decomp).
std::pair<Signal, Signal> group_split(const Decomposition& decomp, int first_group_size);

enum class ThresholdRule { Universal };
enum class Shrinkage { Soft };

struct DenoiseSpec {
    int level = 5;
    ThresholdRule threshold_rule = ThresholdRule::Universal;
    Shrinkage shrinkage = Shrinkage::Soft;
    // Multiplier on the computed threshold; 0 turns shrinkage off entirely
    // (used by the pipeline pass-through mode).
    double threshold_scale = 1.0;
};

// Wavelet shrinkage: undecimated transform to spec.level, universal
// threshold t = sigma_hat * sqrt(2 ln N) with sigma_hat estimated from the
// finest detail's median absolute value / 0.6745, soft-thresholds every
// detail band, reconstructs.
Signal wavelet_denoise(const Signal& signal, const DenoiseSpec& spec, const FilterBank& bank,
                       Boundary boundary = Boundary::Reflect);

}  // namespace ecgscrub
