#pragma once

#include "ecgscrub/signal.hpp"

#include <cstdint>
#include <string>

namespace ecgscrub {

// Where the contaminating noise comes from: synthetic white noise, or a
// stretch of a recorded noise lead (baseline wander / muscle artifact).
enum class NoiseKind { Awgn, RecordNoise };

struct NoiseSource {
    NoiseKind kind = NoiseKind::Awgn;
    std::uint64_t seed = 0;  // Awgn: base seed, mixed with the segment index

    // RecordNoise: the loaded noise lead plus provenance for run headers.
    Signal record;
    std::string record_name;
    int channel = 0;
    Eigen::Index offset = 0;  // first noise sample to use

    static NoiseSource white(std::uint64_t seed) {
        NoiseSource src;
        src.seed = seed;
        return src;
    }
    static NoiseSource recorded(Signal lead, std::string name, int channel = 0,
                                Eigen::Index offset = 0) {
        NoiseSource src;
        src.kind = NoiseKind::RecordNoise;
        src.record = std::move(lead);
        src.record_name = std::move(name);
        src.channel = channel;
        src.offset = offset;
        return src;
    }
};

// The noise samples contaminating segment `idx` of a segmented record:
// a fresh seeded white stream, or the matching slice of the noise lead.
Signal noise_for_segment(const NoiseSource& src, Eigen::Index segment_len,
                         Eigen::Index segment_idx, double fs);

// Zero-mean unit-variance white Gaussian samples from a fixed, portable
// generator (mt19937_64 + Box-Muller); the same seed always yields the
// same bits on every platform.
Signal awgn(Eigen::Index len, std::uint64_t seed, double fs = 1.0);

// Derives a per-segment noise seed from a base seed, so segment noise
// streams are independent yet reproducible.
std::uint64_t segment_seed(std::uint64_t base_seed, std::uint64_t segment_idx);

// clean + g * noise with g chosen so the mix has exactly `snr_db` dB of
// signal-to-noise power ratio.
Signal mix_at_snr(const Signal& clean, const Signal& noise, double snr_db);

// Deterministic clean ECG: a periodic P-QRS-T template of five Gaussian
// bumps, mean-removed. The first R peak sits half a beat in, so a 10 s
// 60 bpm trace carries exactly 10 beats.
Signal synth_ecg(double duration_s, double fs, double heart_rate_bpm = 60.0);

}  // namespace ecgscrub
