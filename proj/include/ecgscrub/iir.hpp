#pragma once

#include "ecgscrub/signal.hpp"

#include <complex>

namespace ecgscrub {

enum class IirKind { LowPass, HighPass };

struct IirSpec {
    IirKind kind = IirKind::HighPass;
    double cutoff = 3.0;  // Hz
    int order = 4;
    bool zero_phase = true;
};

struct Biquad {
    double b0, b1, b2;  // feedforward
    double a1, a2;      // feedback (a0 normalized to 1)
};

// Cascade of second-order sections with a single scalar gain up front.
struct BiquadChain {
    std::vector<Biquad> sections;
    double gain = 1.0;
    int order = 0;
};

// Butterworth design via pole placement and bilinear transform with
// frequency pre-warping; -3.01 dB at the cutoff.
BiquadChain design(const IirSpec& spec, double fs);

// Complex frequency response of the cascade at `freq_hz`.
std::complex<double> frequency_response(const BiquadChain& chain, double freq_hz, double fs);

// Runs the cascade over the signal. Zero-phase mode filters forward and
// backward with odd-reflection edge padding of 3 * (2 * order) samples and
// steady-state initial conditions, which removes group delay.
Signal apply(const Signal& signal, const BiquadChain& chain, bool zero_phase);

}  // namespace ecgscrub
