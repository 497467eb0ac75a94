#include "ecgscrub/pipeline.hpp"

#include "ecgscrub/lilliefors.hpp"

#include <stdexcept>

namespace ecgscrub {
namespace {

[[noreturn]] void rethrow_stage(int stage, const char* what, const std::exception& e) {
    throw std::runtime_error("stage " + std::to_string(stage) + " (" + std::string(what) +
                             "): " + e.what());
}

}  // namespace

void validate(const PipelineConfig& cfg) {
    if (cfg.levels < 1 || cfg.modes < 1)
        throw std::invalid_argument("levels and modes must be at least 1");
    if (cfg.first_group < 1)
        throw std::invalid_argument("first_group must be at least 1");
    if (cfg.first_group >= cfg.levels + 1 || cfg.first_group >= cfg.modes)
        throw std::invalid_argument("first_group must leave at least one low-frequency component");
    if (cfg.lilliefors_alpha < 0.0)
        throw std::invalid_argument("lilliefors_alpha must be nonnegative");
    if (cfg.high_group_denoise_level < 1 || cfg.low_group_denoise_level < 1)
        throw std::invalid_argument("denoise levels must be at least 1");
    if (cfg.threshold_scale < 0.0)
        throw std::invalid_argument("threshold_scale must be nonnegative");
}

RunResult run(const Signal& noisy, const PipelineConfig& cfg) {
    validate(cfg);
    validate(noisy);

    StageTrace trace;
    const auto note = [&](std::string tag, const Signal& s) {
        if (cfg.trace_intermediates) trace.intermediates.emplace_back(std::move(tag), s);
    };

    // Stage 1: split the segment into same-length additive components.
    Decomposition decomp;
    try {
        if (cfg.method == Method::WLNH) {
            decomp = mra_decompose(noisy, cfg.levels, cfg.wavelet_bank, Boundary::Reflect);
        } else {
            VmdConfig vcfg = cfg.vmd;
            vcfg.K = cfg.modes;
            decomp = sort_modes_by_freq(vmd_decompose(noisy, vcfg), FreqOrder::Descending).modes;
        }
    } catch (const std::exception& e) {
        rethrow_stage(1, "decomposition", e);
    }
    for (const Component& c : decomp.components)
        note("stage1-" + c.label.str(), Signal{c.samples, noisy.fs});

    const int first = std::min<int>(cfg.first_group, static_cast<int>(decomp.components.size()));

    // Stage 2: screen the high-frequency group; components the test calls
    // Gaussian are pure-noise carriers and are dropped outright.
    std::vector<bool> keep(decomp.components.size(), true);
    if (cfg.lilliefors_alpha > 0.0) {
        try {
            for (int i = 0; i < first; ++i) {
                if (lilliefors_test(decomp.components[i].samples, cfg.lilliefors_alpha)
                        .is_gaussian) {
                    keep[i] = false;
                    trace.components_removed.push_back(decomp.components[i].label);
                }
            }
        } catch (const std::exception& e) {
            rethrow_stage(2, "gaussianity screen", e);
        }
    }

    const Eigen::Index n = noisy.size();
    Eigen::ArrayXd first_kept = Eigen::ArrayXd::Zero(n);
    Eigen::ArrayXd first_raw = Eigen::ArrayXd::Zero(n);
    for (int i = 0; i < first; ++i) {
        first_raw += decomp.components[i].samples;
        if (keep[i]) first_kept += decomp.components[i].samples;
    }
    note("stage2-first-group-kept", Signal{first_kept, noisy.fs});

    // Stage 3: wavelet-threshold the surviving high-frequency sum. An empty
    // survivor set leaves a zero signal, which shrinks to itself.
    Signal high_dn;
    try {
        DenoiseSpec spec;
        spec.level = cfg.high_group_denoise_level;
        spec.threshold_scale = cfg.threshold_scale;
        high_dn = wavelet_denoise(Signal{std::move(first_kept), noisy.fs}, spec, cfg.wavelet_bank);
    } catch (const std::exception& e) {
        rethrow_stage(3, "high-group denoise", e);
    }
    note("stage3-high-denoised", high_dn);

    // Stage 4: same treatment, gentler level, for the low-frequency rest.
    Eigen::ArrayXd rest = Eigen::ArrayXd::Zero(n);
    for (std::size_t i = static_cast<std::size_t>(first); i < decomp.components.size(); ++i)
        rest += decomp.components[i].samples;
    Signal low_dn;
    try {
        DenoiseSpec spec;
        spec.level = cfg.low_group_denoise_level;
        spec.threshold_scale = cfg.threshold_scale;
        low_dn = wavelet_denoise(Signal{std::move(rest), noisy.fs}, spec, cfg.wavelet_bank);
    } catch (const std::exception& e) {
        rethrow_stage(4, "low-group denoise", e);
    }
    note("stage4-low-denoised", low_dn);

    // Stage 5: recombine and strip what is left below the artifact cutoff.
    Signal combined{(cfg.stage5_raw_first_group ? first_raw : high_dn.samples) + low_dn.samples,
                    noisy.fs};
    note("stage5-sum", combined);
    Signal filtered = std::move(combined);
    if (cfg.highpass_enabled) {
        try {
            filtered = apply(filtered, design(cfg.highpass, noisy.fs), cfg.highpass.zero_phase);
        } catch (const std::exception& e) {
            rethrow_stage(5, "high-pass", e);
        }
    }
    note("stage5-highpass", filtered);

    // Stage 6: patch-similarity smoothing of the residual broadband noise.
    // The auto bandwidth is resolved from the segment as received: the
    // stage-5 signal is already partially denoised, which biases its own
    // first-difference noise estimate low and stalls the smoothing.
    Signal out = std::move(filtered);
    if (cfg.nlm_enabled) {
        try {
            NlmParams params = cfg.nlm;
            if (params.bandwidth <= 0.0) params.bandwidth = 0.6 * estimate_noise_sd(noisy);
            // a flat segment estimates zero noise; nothing left to smooth
            if (params.bandwidth > 0.0) out = nlm_denoise(out, params);
        } catch (const std::exception& e) {
            rethrow_stage(6, "nlm", e);
        }
    }
    note("stage6-output", out);
    return {std::move(out), std::move(trace)};
}

RecordRunResult run_record(const Signal& record, const NoiseSource& noise, double snr_db,
                           const PipelineConfig& cfg, Eigen::Index segment_len,
                           bool prefilter_reference) {
    validate(cfg);
    validate(record);

    Signal reference = record;
    if (prefilter_reference && cfg.highpass_enabled)
        reference = apply(record, design(cfg.highpass, record.fs), cfg.highpass.zero_phase);

    const SegmentSet segs = segment(reference, segment_len);
    RecordRunResult out;
    out.per_segment.reserve(segs.segments.size());
    for (std::size_t i = 0; i < segs.segments.size(); ++i) {
        const Signal& clean = segs.segments[i];
        const Signal contaminant =
            noise_for_segment(noise, segment_len, static_cast<Eigen::Index>(i), record.fs);
        const Signal noisy = mix_at_snr(clean, contaminant, snr_db);
        const RunResult res = run(noisy, cfg);
        out.per_segment.push_back(report(clean, noisy, res.denoised));
    }
    out.aggregate = aggregate(out.per_segment);
    return out;
}

}  // namespace ecgscrub
