#pragma once

#include "ecgscrub/signal.hpp"

namespace ecgscrub {

enum class VmdInit { UniformFreq, Zero };

struct VmdConfig {
    int K = 10;            // number of modes
    double alpha = 2000.0; // bandwidth penalty weight
    double tau = 0.0;      // dual-ascent step; 0 leaves reconstruction slack
    double tol = 1e-7;     // relative spectral-change stopping threshold
    int max_iter = 500;
    VmdInit init = VmdInit::UniformFreq;
};

struct VmdResult {
    Decomposition modes;              // kind VMD, K components
    std::vector<double> center_freqs; // Hz, aligned with modes
    int iterations = 0;
    bool converged = false;
};

// Variational mode decomposition by frequency-domain alternating
// minimization: each mode spectrum gets a Wiener-style update around its
// center frequency, centers move to their spectral centroid, and an
// optional dual ascent (tau > 0) tightens reconstruction.
VmdResult vmd_decompose(const Signal& signal, const VmdConfig& cfg);

enum class FreqOrder { Descending, Ascending };

// Reorders modes (and center_freqs) by center frequency; ties keep their
// original relative order.
VmdResult sort_modes_by_freq(const VmdResult& result, FreqOrder order);

}  // namespace ecgscrub
