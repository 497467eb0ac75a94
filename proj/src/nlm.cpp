#include "ecgscrub/nlm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ecgscrub {

double estimate_noise_sd(const Signal& signal) {
    const Eigen::Index n = signal.size();
    if (n < 2)
        throw std::invalid_argument("need at least two samples to estimate noise");
    std::vector<double> d(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        d[i] = std::abs(signal.samples[i + 1] - signal.samples[i]);
    const std::size_t mid = d.size() / 2;
    std::nth_element(d.begin(), d.begin() + mid, d.end());
    return d[mid] / (0.6745 * std::sqrt(2.0));
}

double default_bandwidth(const Signal& signal) { return 0.6 * estimate_noise_sd(signal); }

Signal nlm_denoise(const Signal& signal, const NlmParams& params) {
    validate(signal);
    if (params.patch_half < 1 || params.search_half < params.patch_half)
        throw std::invalid_argument("need patch_half >= 1 and search_half >= patch_half");

    const Eigen::Index n = signal.size();
    const Eigen::Index ph = params.patch_half;
    const Eigen::Index sh = params.search_half;
    if (n <= 2 * ph + 1)
        throw std::invalid_argument("signal too short for the requested patch size");

    const double k = params.bandwidth;
    if (!(k > 0.0))
        throw std::invalid_argument("bandwidth must be positive");

    const double full = static_cast<double>(2 * ph + 1);
    const double inv_full_denom = 1.0 / (2.0 * full * k * k);
    const double* x = signal.samples.data();
    Eigen::ArrayXd out(n);

    for (Eigen::Index m = 0; m < n; ++m) {
        const Eigen::Index lo = std::max<Eigen::Index>(0, m - sh);
        const Eigen::Index hi = std::min<Eigen::Index>(n - 1, m + sh);
        double weight_sum = 0.0;
        double acc = 0.0;

        const bool m_interior = (m >= ph && m + ph < n);
        for (Eigen::Index c = lo; c <= hi; ++c) {
            double w;
            if (m_interior && c >= ph && c + ph < n) {
                // full patches on both sides; contiguous inner loop
                const double* pm = x + (m - ph);
                const double* pc = x + (c - ph);
                double d2 = 0.0;
                for (Eigen::Index d = 0; d < 2 * ph + 1; ++d) {
                    const double diff = pm[d] - pc[d];
                    d2 += diff * diff;
                }
                w = std::exp(-d2 * inv_full_denom);
            } else {
                // edge patch: keep only offsets valid for both centers
                double d2 = 0.0;
                Eigen::Index valid = 0;
                for (Eigen::Index d = -ph; d <= ph; ++d) {
                    const Eigen::Index im = m + d, ic = c + d;
                    if (im < 0 || im >= n || ic < 0 || ic >= n) continue;
                    const double diff = x[im] - x[ic];
                    d2 += diff * diff;
                    ++valid;
                }
                w = std::exp(-d2 / (2.0 * static_cast<double>(valid) * k * k));
            }
            weight_sum += w;
            // accumulate deviations from x[m] so a constant signal passes
            // through bit-exact regardless of the weight distribution
            acc += w * (x[c] - x[m]);
        }
        out[m] = x[m] + acc / weight_sum;
    }
    return {std::move(out), signal.fs};
}

}  // namespace ecgscrub
