#pragma once

#include "ecgscrub/signal.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>

namespace ecgscrub {

struct SignalInfo {
    std::string file_name;
    int format = 212;
    double gain = 200.0;      // adu per mV
    int adc_resolution = 11;  // bits
    int adc_zero = 0;
    int baseline = 0;         // adu value of physical zero
    long long init_value = 0; // first sample, adu
    int checksum = 0;
    std::string description;  // lead name
};

struct RecordHeader {
    std::string record_name;
    int n_signals = 0;
    double fs = 0.0;
    long long n_samples = 0;
    std::vector<SignalInfo> signals;
};

RecordHeader parse_header(const std::filesystem::path& hea_path);

// Decodes format-212 packing: three bytes hold two 12-bit two's-complement
// samples, interleaved across signals.
std::vector<std::int16_t> decode_format212(const std::vector<std::uint8_t>& bytes,
                                           std::size_t sample_count);
std::vector<std::uint8_t> encode_format212(const std::vector<std::int16_t>& samples);

struct ReadOptions {
    // Collects non-fatal notes (e.g. checksum mismatches) when set.
    std::vector<std::string>* warnings = nullptr;
};

// Reads a WFDB record (header + signal file), returning one physical-unit
// signal per lead: value_mV = (adu - baseline) / gain.
std::vector<Signal> read_record(const std::filesystem::path& hea_path, ReadOptions opts = {});

// One numeric value per line; an optional single non-numeric header line
// is skipped.
Signal read_csv(const std::filesystem::path& path, double fs);

void write_csv(const std::filesystem::path& path, const Signal& signal,
               const std::string& header_comment = {});

// Dataset root: ECGSCRUB_DATA_DIR or ./data.
std::filesystem::path data_dir();

// Resolves "100" -> <data_dir>/100.hea if present.
std::optional<std::filesystem::path> find_record(const std::string& name);

}  // namespace ecgscrub
