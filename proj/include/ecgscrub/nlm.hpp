#pragma once

#include "ecgscrub/signal.hpp"

namespace ecgscrub {

struct NlmParams {
    double bandwidth = 0.0;      // k, in signal units; the 0 default is a
                                 // "pick for me" sentinel that the pipeline
                                 // and CLI resolve via default_bandwidth
                                 // before calling nlm_denoise
    int patch_half = 10;         // patch radius; patch size = 2*patch_half+1
    int search_half = 500;       // search window radius
};

// Robust noise-level estimate from first differences:
// median(|x[i+1]-x[i]|) / (0.6745 * sqrt(2)).
double estimate_noise_sd(const Signal& signal);

// Default bandwidth rule: 0.6 * estimate_noise_sd(signal).
double default_bandwidth(const Signal& signal);

// Nonlocal means: each output sample is the similarity-weighted average of
// samples in its search window, with patch distance
//   w(m,n) = exp(-sum_d (x[m+d]-x[n+d])^2 / (2 * valid * k^2)),
// where `valid` counts the patch offsets that fall inside the signal (edge
// patches are shortened, never reflected). Requires bandwidth > 0.
Signal nlm_denoise(const Signal& signal, const NlmParams& params);

}  // namespace ecgscrub
