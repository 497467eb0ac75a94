#include "ecgscrub/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace ecgscrub {
namespace {

// Fejer-Korovkin 14-tap low-pass coefficients (analysis convention, sum
// sqrt(2)). The embedded values satisfy the orthonormality system
//   sum h = sqrt(2),  sum h^2 = 1,  sum_n h[n] h[n+2k] = 0  (k = 1..6)
// to better than 1e-15; the build-time cross-check test verifies both the
// system and the agreement with the reference coefficient table.
constexpr double kFk14[14] = {
    +2.60445905526237309e-01, +6.86874956432529382e-01, +6.11582416520377259e-01,
    +5.12732039652852856e-02, -2.45535180176587958e-01, -4.85992785059016150e-02,
    +1.24279736794820586e-01, +2.22499812134863591e-02, -6.39477854304128235e-02,
    -5.21846069551184111e-03, +2.98129338148631733e-02, -3.08763809857435199e-03,
    -9.53123712927861182e-03, +3.61400814176301858e-03,
};

// Circular (periodic) undecimated analysis step at scale 2^(j-1):
// filters are applied with a-trous upsampling via modular indexing.
void modwt_step(const Eigen::ArrayXd& v_in, const Eigen::ArrayXd& lp, const Eigen::ArrayXd& hp,
                Eigen::Index stride, Eigen::ArrayXd& w_out, Eigen::ArrayXd& v_out) {
    const Eigen::Index n = v_in.size();
    const Eigen::Index taps = lp.size();
    w_out.resize(n);
    v_out.resize(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        double w = 0.0, v = 0.0;
        Eigen::Index idx = t;
        for (Eigen::Index l = 0; l < taps; ++l) {
            const double x = v_in[idx];
            w += hp[l] * x;
            v += lp[l] * x;
            idx -= stride;
            if (idx < 0) idx += n;
        }
        w_out[t] = w;
        v_out[t] = v;
    }
}

// Inverse of modwt_step: reassembles the parent approximation from one
// detail band and the child approximation.
Eigen::ArrayXd imodwt_step(const Eigen::ArrayXd& w, const Eigen::ArrayXd& v,
                           const Eigen::ArrayXd& lp, const Eigen::ArrayXd& hp,
                           Eigen::Index stride) {
    const Eigen::Index n = v.size();
    const Eigen::Index taps = lp.size();
    Eigen::ArrayXd out(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        double acc = 0.0;
        Eigen::Index idx = t;
        for (Eigen::Index l = 0; l < taps; ++l) {
            acc += hp[l] * w[idx] + lp[l] * v[idx];
            idx += stride;
            if (idx >= n) idx -= n;
        }
        out[t] = acc;
    }
    return out;
}

Eigen::ArrayXd reflect_extend(const Eigen::ArrayXd& x) {
    const Eigen::Index n = x.size();
    Eigen::ArrayXd ext(2 * n);
    ext.head(n) = x;
    ext.tail(n) = x.reverse();
    return ext;
}

struct Pyramid {
    std::vector<Eigen::ArrayXd> details;  // W_1 .. W_J
    Eigen::ArrayXd approx;                // V_J
};

Pyramid modwt_analyze(const Eigen::ArrayXd& x, int levels, const Eigen::ArrayXd& lp,
                      const Eigen::ArrayXd& hp) {
    Pyramid pyr;
    pyr.details.resize(levels);
    Eigen::ArrayXd v = x;
    Eigen::ArrayXd v_next;
    for (int j = 1; j <= levels; ++j) {
        modwt_step(v, lp, hp, Eigen::Index{1} << (j - 1), pyr.details[j - 1], v_next);
        v.swap(v_next);
    }
    pyr.approx = std::move(v);
    return pyr;
}

void check_levels(const Signal& signal, int levels) {
    validate(signal);
    if (levels < 1)
        throw std::invalid_argument("decomposition levels must be at least 1");
    if (signal.size() < (Eigen::Index{1} << levels))
        throw std::invalid_argument("insufficient length for levels");
}

}  // namespace

FilterBank::FilterBank(std::string bank_name, Eigen::ArrayXd lowpass)
    : name(std::move(bank_name)), h0(std::move(lowpass)) {
    const Eigen::Index n = h0.size();
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("filter bank needs an even tap count >= 2");
    if (std::abs(h0.sum() - std::numbers::sqrt2) > 1e-10)
        throw std::invalid_argument("low-pass coefficients must sum to sqrt(2)");
    h1.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        h1[i] = (i % 2 == 0 ? 1.0 : -1.0) * h0[n - 1 - i];
}

const FilterBank& fk14() {
    static const FilterBank bank("fk14",
                                 Eigen::Map<const Eigen::ArrayXd>(kFk14, 14).eval());
    return bank;
}

Decomposition mra_decompose(const Signal& signal, int levels, const FilterBank& bank,
                            Boundary boundary) {
    check_levels(signal, levels);

    const Eigen::Index n = signal.size();
    const Eigen::ArrayXd x =
        boundary == Boundary::Reflect ? reflect_extend(signal.samples) : signal.samples;
    // MODWT filters carry a 1/sqrt(2) per level so the undecimated transform
    // stays an isometry.
    const Eigen::ArrayXd lp = bank.h0 / std::numbers::sqrt2;
    const Eigen::ArrayXd hp = bank.h1 / std::numbers::sqrt2;

    Pyramid pyr = modwt_analyze(x, levels, lp, hp);

    Decomposition out;
    out.source_len = n;
    out.fs = signal.fs;
    out.kind = DecompKind::WaveletMRA;
    out.components.reserve(levels + 1);

    const Eigen::ArrayXd zero = Eigen::ArrayXd::Zero(x.size());
    for (int j = 1; j <= levels; ++j) {
        // Detail j: invert the chain with every band but W_j zeroed.
        Eigen::ArrayXd v = imodwt_step(pyr.details[j - 1], zero, lp, hp,
                                       Eigen::Index{1} << (j - 1));
        for (int k = j - 1; k >= 1; --k)
            v = imodwt_step(zero, v, lp, hp, Eigen::Index{1} << (k - 1));
        out.components.push_back({v.head(n).eval(), ComponentLabel::detail(j), -1.0});
    }
    Eigen::ArrayXd v = pyr.approx;
    for (int k = levels; k >= 1; --k)
        v = imodwt_step(zero, v, lp, hp, Eigen::Index{1} << (k - 1));
    out.components.push_back({v.head(n).eval(), ComponentLabel::approximation(levels), -1.0});
    return out;
}

std::pair<Signal, Signal> group_split(const Decomposition& decomp, int first_group_size) {
    const int count = static_cast<int>(decomp.components.size());
    if (first_group_size < 1 || first_group_size >= count)
        throw std::invalid_argument("group size must lie in [1, component count)");

    Eigen::ArrayXd head = Eigen::ArrayXd::Zero(decomp.source_len);
    Eigen::ArrayXd tail = Eigen::ArrayXd::Zero(decomp.source_len);
    for (int i = 0; i < count; ++i)
        (i < first_group_size ? head : tail) += decomp.components[i].samples;
    return {Signal{std::move(head), decomp.fs}, Signal{std::move(tail), decomp.fs}};
}

Signal wavelet_denoise(const Signal& signal, const DenoiseSpec& spec, const FilterBank& bank,
                       Boundary boundary) {
    check_levels(signal, spec.level);

    const Eigen::Index n = signal.size();
    const Eigen::ArrayXd x =
        boundary == Boundary::Reflect ? reflect_extend(signal.samples) : signal.samples;
    const Eigen::ArrayXd lp = bank.h0 / std::numbers::sqrt2;
    const Eigen::ArrayXd hp = bank.h1 / std::numbers::sqrt2;

    Pyramid pyr = modwt_analyze(x, spec.level, lp, hp);

    // Universal threshold from the finest band's robust noise estimate.
    Eigen::ArrayXd mags = pyr.details[0].head(n).abs();
    std::nth_element(mags.data(), mags.data() + n / 2, mags.data() + n);
    const double sigma_hat = mags[n / 2] / 0.6745;
    const double t =
        spec.threshold_scale * sigma_hat * std::sqrt(2.0 * std::log(static_cast<double>(n)));

    if (t > 0.0) {
        for (Eigen::ArrayXd& w : pyr.details)
            w = w.sign() * (w.abs() - t).max(0.0);  // soft shrinkage
    }

    Eigen::ArrayXd v = pyr.approx;
    for (int j = spec.level; j >= 1; --j)
        v = imodwt_step(pyr.details[j - 1], v, lp, hp, Eigen::Index{1} << (j - 1));
    return {v.head(n).eval(), signal.fs};
}

}  // namespace ecgscrub
