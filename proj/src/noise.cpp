#include "ecgscrub/noise.hpp"

#include "portable_rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ecgscrub {
namespace {

// P-QRS-T beat template on a 1 s (60 bpm) gauge: five Gaussian bumps,
// amplitude (mV), center offset from the R peak (s), width (s). The shape
// follows the usual adult lead-II morphology, with positions and widths
// nudged so the beat carries almost no energy below 3 Hz at 60 bpm; the
// pipeline's motion-artifact high-pass then barely distorts clean traces.
struct Bump {
    double amp, mu, sigma;
};
constexpr Bump kBeat[5] = {
    {+0.1045320194092328, -0.1000000000000000, 0.0160000000000000},  // P
    {-0.3025506053484910, -0.0331808503878088, 0.0223055106631000},  // Q
    {+1.0000000000000000, +0.0000000000000000, 0.0085000000000000},  // R
    {-0.1749811879521549, +0.0572885633928061, 0.0260000000000000},  // S
    {+0.1000000000000000, +0.1300000000000000, 0.0200000000000000},  // T
};
// Mean level of the template over one period, subtracted so traces are
// zero-mean (AC-coupled) like archived recordings.
constexpr double kBeatMean = 2.1919353074927265e-03;

}  // namespace

Signal awgn(Eigen::Index len, std::uint64_t seed, double fs) {
    if (len < 1)
        throw std::invalid_argument("noise length must be at least 1");
    detail::NormalStream normal(seed);
    Eigen::ArrayXd out(len);
    for (Eigen::Index i = 0; i < len; ++i) out[i] = normal();
    return {std::move(out), fs};
}

std::uint64_t segment_seed(std::uint64_t base_seed, std::uint64_t segment_idx) {
    return detail::splitmix64(base_seed ^ detail::splitmix64(segment_idx));
}

Signal mix_at_snr(const Signal& clean, const Signal& noise, double snr_db) {
    validate(clean);
    validate(noise);
    if (clean.size() != noise.size())
        throw std::invalid_argument("clean and noise lengths differ");
    const double p_clean = clean.samples.square().sum();
    const double p_noise = noise.samples.square().sum();
    if (p_noise <= 0.0)
        throw std::invalid_argument("noise has zero power");
    const double gain = std::sqrt(p_clean / (p_noise * std::pow(10.0, snr_db / 10.0)));
    return {clean.samples + gain * noise.samples, clean.fs};
}

Signal synth_ecg(double duration_s, double fs, double heart_rate_bpm) {
    if (duration_s <= 0.0 || fs <= 0.0)
        throw std::invalid_argument("duration and sampling rate must be positive");
    if (heart_rate_bpm < 20.0 || heart_rate_bpm > 220.0)
        throw std::invalid_argument("heart rate outside supported range 20..220 bpm");

    const double beat_s = 60.0 / heart_rate_bpm;  // template time-scales with rate
    const Eigen::Index n = static_cast<Eigen::Index>(std::llround(duration_s * fs));
    Eigen::ArrayXd out = Eigen::ArrayXd::Constant(n, -kBeatMean);

    // R peaks sit at (m + 1/2) * beat_s; each bump only matters within a
    // few widths, so walk the affected sample range per beat and bump.
    const Eigen::Index beats = static_cast<Eigen::Index>(duration_s / beat_s) + 2;
    for (Eigen::Index b = 0; b < beats; ++b) {
        const double r_center = (static_cast<double>(b) + 0.5) * beat_s;
        for (const Bump& w : kBeat) {
            const double center = r_center + w.mu * beat_s;
            const double sigma = w.sigma * beat_s;
            const Eigen::Index first =
                std::max<Eigen::Index>(0, static_cast<Eigen::Index>((center - 8.0 * sigma) * fs));
            const Eigen::Index last =
                std::min<Eigen::Index>(n - 1, static_cast<Eigen::Index>((center + 8.0 * sigma) * fs) + 1);
            for (Eigen::Index i = first; i <= last; ++i) {
                const double t = static_cast<double>(i) / fs - center;
                out[i] += w.amp * std::exp(-t * t / (2.0 * sigma * sigma));
            }
        }
    }
    return {std::move(out), fs};
}

Signal noise_for_segment(const NoiseSource& src, Eigen::Index segment_len,
                         Eigen::Index segment_idx, double fs) {
    if (segment_len < 1)
        throw std::invalid_argument("noise length must be at least 1");
    if (src.kind == NoiseKind::Awgn)
        return awgn(segment_len, segment_seed(src.seed, static_cast<std::uint64_t>(segment_idx)),
                    fs);
    const Eigen::Index start = src.offset + segment_idx * segment_len;
    if (start < 0 || start + segment_len > src.record.size())
        throw std::runtime_error("noise record too short: segment " +
                                 std::to_string(segment_idx) + " needs samples past " +
                                 std::to_string(src.record.size()));
    return {src.record.samples.segment(start, segment_len).eval(), fs};
}

}  // namespace ecgscrub
