#include "ecgscrub/iir.hpp"

#include <cmath>
#include <numbers>

namespace ecgscrub {
namespace {

using std::numbers::pi;

// Forward pass of one transposed direct-form-II section with explicit
// initial state (s1, s2), scaled outside by the edge sample.
void run_section(const Biquad& q, Eigen::ArrayXd& x, double s1, double s2) {
    for (Eigen::Index n = 0; n < x.size(); ++n) {
        const double in = x[n];
        const double out = q.b0 * in + s1;
        s1 = q.b1 * in - q.a1 * out + s2;
        s2 = q.b2 * in - q.a2 * out;
        x[n] = out;
    }
}

// Steady-state DF2T state for a unit-amplitude constant input, so the
// filter starts settled at the padded edge value.
void steady_state(const Biquad& q, double& s1, double& s2) {
    const double g = (q.b0 + q.b1 + q.b2) / (1.0 + q.a1 + q.a2);
    s2 = q.b2 - q.a2 * g;
    s1 = q.b1 - q.a1 * g + s2;
}

void filter_once(const BiquadChain& chain, Eigen::ArrayXd& x, bool settled) {
    x *= chain.gain;
    for (const Biquad& q : chain.sections) {
        double s1 = 0.0, s2 = 0.0;
        if (settled) {
            steady_state(q, s1, s2);
            s1 *= x[0];
            s2 *= x[0];
        }
        run_section(q, x, s1, s2);
    }
}

}  // namespace

BiquadChain design(const IirSpec& spec, double fs) {
    if (fs <= 0.0)
        throw std::invalid_argument("sampling rate must be positive");
    if (spec.order < 1)
        throw std::invalid_argument("filter order must be at least 1");
    if (spec.cutoff <= 0.0)
        throw std::invalid_argument("cutoff must be positive");
    if (spec.cutoff >= fs / 2.0)
        throw std::invalid_argument("cutoff above Nyquist");

    const int n = spec.order;
    // Pre-warped analog cutoff, normalized for the bilinear map
    // z = (1 + s) / (1 - s).
    const double warp = std::tan(pi * spec.cutoff / fs);
    const bool highpass = spec.kind == IirKind::HighPass;

    BiquadChain chain;
    chain.order = n;

    // Butterworth poles sit on the left half circle; take conjugate pairs.
    for (int k = 0; k < n / 2; ++k) {
        const double theta = pi * (2.0 * k + n + 1.0) / (2.0 * n);
        std::complex<double> s(std::cos(theta), std::sin(theta));
        // Low-pass prototype scales by warp; high-pass inverts the pole.
        std::complex<double> sp = highpass ? warp / s : warp * s;
        std::complex<double> zp = (1.0 + sp) / (1.0 - sp);

        Biquad q;
        q.a1 = -2.0 * zp.real();
        q.a2 = std::norm(zp);
        if (highpass) {
            q.b0 = 1.0; q.b1 = -2.0; q.b2 = 1.0;  // double zero at z = +1
            chain.gain *= (1.0 - q.a1 + q.a2) / 4.0;
        } else {
            q.b0 = 1.0; q.b1 = 2.0; q.b2 = 1.0;   // double zero at z = -1
            chain.gain *= (1.0 + q.a1 + q.a2) / 4.0;
        }
        chain.sections.push_back(q);
    }
    if (n % 2 == 1) {
        // Real pole at s = -warp (or its high-pass image).
        const double sp = -warp;
        const double zp = highpass ? (1.0 - warp) / (1.0 + warp) : (1.0 + sp) / (1.0 - sp);
        Biquad q;
        q.a1 = -zp;
        q.a2 = 0.0;
        if (highpass) {
            q.b0 = 1.0; q.b1 = -1.0; q.b2 = 0.0;
            chain.gain *= (1.0 - q.a1) / 2.0;
        } else {
            q.b0 = 1.0; q.b1 = 1.0; q.b2 = 0.0;
            chain.gain *= (1.0 + q.a1) / 2.0;
        }
        chain.sections.push_back(q);
    }
    return chain;
}

std::complex<double> frequency_response(const BiquadChain& chain, double freq_hz, double fs) {
    const std::complex<double> z = std::polar(1.0, -2.0 * pi * freq_hz / fs);
    std::complex<double> h = chain.gain;
    for (const Biquad& q : chain.sections)
        h *= (q.b0 + q.b1 * z + q.b2 * z * z) / (1.0 + q.a1 * z + q.a2 * z * z);
    return h;
}

Signal apply(const Signal& signal, const BiquadChain& chain, bool zero_phase) {
    validate(signal);
    for (const Biquad& q : chain.sections) {
        if (!(std::abs(q.a2) < 1.0 && std::abs(q.a1) < 1.0 + q.a2))
            throw std::invalid_argument("unstable biquad section");
    }

    if (!zero_phase) {
        Eigen::ArrayXd y = signal.samples;
        filter_once(chain, y, false);
        return {std::move(y), signal.fs};
    }

    const Eigen::Index n = signal.size();
    const Eigen::Index pad = 3 * (2 * static_cast<Eigen::Index>(chain.order));
    if (n <= pad)
        throw std::invalid_argument("signal too short for zero-phase padding");

    // Odd reflection about the first and last samples keeps the extension
    // continuous in value and slope.
    Eigen::ArrayXd ext(n + 2 * pad);
    const Eigen::ArrayXd& x = signal.samples;
    for (Eigen::Index i = 0; i < pad; ++i) {
        ext[i] = 2.0 * x[0] - x[pad - i];
        ext[pad + n + i] = 2.0 * x[n - 1] - x[n - 2 - i];
    }
    ext.segment(pad, n) = x;

    filter_once(chain, ext, true);
    ext.reverseInPlace();
    filter_once(chain, ext, true);
    ext.reverseInPlace();

    return {ext.segment(pad, n).eval(), signal.fs};
}

}  // namespace ecgscrub
