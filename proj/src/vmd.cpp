#include "ecgscrub/vmd.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace ecgscrub {

VmdResult vmd_decompose(const Signal& signal, const VmdConfig& cfg) {
    validate(signal);
    if (cfg.K < 1)
        throw std::invalid_argument("mode count must be at least 1");
    if (signal.size() < 2 * static_cast<Eigen::Index>(cfg.K))
        throw std::invalid_argument("over-parameterized: need at least 2*K samples");
    if (!(cfg.alpha > 0.0))
        throw std::invalid_argument("alpha must be positive");
    if (!(cfg.tol > 0.0 && cfg.tol < 1.0))
        throw std::invalid_argument("tol must lie in (0, 1)");
    if (cfg.max_iter < 1)
        throw std::invalid_argument("max_iter must be at least 1");
    if (cfg.tau < 0.0)
        throw std::invalid_argument("tau must be non-negative");

    using Cplx = std::complex<double>;
    const Eigen::Index L = signal.size();
    const Eigen::Index la = L / 2;        // left mirror length
    const Eigen::Index rb = L - la;       // right mirror length
    const Eigen::Index N = 2 * L;         // extended (always even)
    const int K = cfg.K;

    // Mirror extension suppresses edge ringing in the mode spectra.
    Eigen::VectorXcd f(N);
    for (Eigen::Index i = 0; i < la; ++i) f[i] = signal.samples[la - 1 - i];
    for (Eigen::Index i = 0; i < L; ++i) f[la + i] = signal.samples[i];
    for (Eigen::Index i = 0; i < rb; ++i) f[la + L + i] = signal.samples[L - 1 - i];

    Eigen::FFT<double> fft;
    Eigen::VectorXcd f_hat(N);
    fft.fwd(f_hat, f);

    // One-sided (analytic-signal) spectrum: bins above DC .. below Nyquist.
    const Eigen::Index half = N / 2;  // first zeroed bin
    for (Eigen::Index i = half; i < N; ++i) f_hat[i] = Cplx(0.0, 0.0);

    Eigen::ArrayXd freqs(half);  // normalized to the sampling rate
    for (Eigen::Index i = 0; i < half; ++i)
        freqs[i] = static_cast<double>(i) / static_cast<double>(N);

    std::vector<Eigen::VectorXcd> u_hat(K, Eigen::VectorXcd::Zero(half));
    std::vector<double> omega(K, 0.0);
    if (cfg.init == VmdInit::UniformFreq)
        for (int k = 0; k < K; ++k) omega[k] = 0.5 * static_cast<double>(k) / K;

    Eigen::VectorXcd lambda_hat = Eigen::VectorXcd::Zero(half);
    Eigen::VectorXcd sum_others = Eigen::VectorXcd::Zero(half);
    const Eigen::VectorXcd f_plus = f_hat.head(half);

    const double eps = 2.2e-16;
    int iter = 0;
    bool converged = false;
    while (iter < cfg.max_iter && !converged) {
        double u_diff = 0.0;
        for (int k = 0; k < K; ++k) {
            // running sum of every mode except k (modes < k already updated)
            sum_others -= u_hat[k];

            Eigen::VectorXcd updated(half);
            double num = 0.0, den = 0.0;
            for (Eigen::Index i = 0; i < half; ++i) {
                const Cplx residual = f_plus[i] - sum_others[i] + 0.5 * lambda_hat[i];
                const double d = freqs[i] - omega[k];
                updated[i] = residual / (1.0 + 2.0 * cfg.alpha * d * d);
                const double p = std::norm(updated[i]);
                num += freqs[i] * p;
                den += p;
            }
            if (den > 0.0) omega[k] = num / den;  // spectral centroid

            u_diff += (updated - u_hat[k]).squaredNorm() / (eps + u_hat[k].squaredNorm());
            u_hat[k] = std::move(updated);
            sum_others += u_hat[k];
        }
        if (cfg.tau > 0.0)
            lambda_hat += cfg.tau * (f_plus - sum_others);
        ++iter;
        converged = u_diff < cfg.tol;
    }

    // Back to time domain: rebuild the Hermitian spectrum per mode, invert,
    // crop the mirror padding.
    VmdResult res;
    res.iterations = iter;
    res.converged = converged;
    res.modes.source_len = L;
    res.modes.fs = signal.fs;
    res.modes.kind = DecompKind::VMD;
    res.modes.components.reserve(K);
    res.center_freqs.reserve(K);

    Eigen::VectorXcd spec(N), mode_time(N);
    for (int k = 0; k < K; ++k) {
        spec.setZero();
        for (Eigen::Index i = 1; i < half; ++i) {
            spec[i] = u_hat[k][i];
            spec[N - i] = std::conj(u_hat[k][i]);
        }
        spec[0] = u_hat[k][0];
        fft.inv(mode_time, spec);

        Eigen::ArrayXd samples(L);
        for (Eigen::Index i = 0; i < L; ++i) samples[i] = mode_time[la + i].real();
        const double freq_hz = omega[k] * signal.fs;
        res.modes.components.push_back({std::move(samples), ComponentLabel::mode(k), freq_hz});
        res.center_freqs.push_back(freq_hz);
    }
    return res;
}

VmdResult sort_modes_by_freq(const VmdResult& result, FreqOrder order) {
    const int K = static_cast<int>(result.center_freqs.size());
    std::vector<int> idx(K);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return order == FreqOrder::Descending
                   ? result.center_freqs[a] > result.center_freqs[b]
                   : result.center_freqs[a] < result.center_freqs[b];
    });

    VmdResult sorted;
    sorted.iterations = result.iterations;
    sorted.converged = result.converged;
    sorted.modes.source_len = result.modes.source_len;
    sorted.modes.fs = result.modes.fs;
    sorted.modes.kind = DecompKind::VMD;
    for (int i : idx) {
        sorted.modes.components.push_back(result.modes.components[i]);
        sorted.center_freqs.push_back(result.center_freqs[i]);
    }
    return sorted;
}

}  // namespace ecgscrub
