#pragma once

#include "ecgscrub/pipeline.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ecgscrub {

enum class BenchNoise { Awgn, Bw, Ma };

std::string noise_name(BenchNoise kind);    // "awgn" | "bw" | "ma"
std::string method_name(Method method);     // "wlnh" | "vlwnh"

struct BenchSpec {
    std::vector<std::string> records;       // archive record names, or "synth"
    std::vector<BenchNoise> noises{BenchNoise::Awgn};
    std::vector<double> snr_dbs{10.0};
    std::vector<Method> methods{Method::WLNH, Method::VLWNH};
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "bench-out";

    PipelineConfig base;                    // per-cell runs override .method
    Eigen::Index segment_len = 3600;
    double synth_duration_s = 120.0;        // length of the "synth" pseudo-record
    bool prefilter_reference = true;
};

void validate(const BenchSpec& spec);

struct BenchCell {
    std::string record;
    BenchNoise noise = BenchNoise::Awgn;
    double snr_db = 0.0;
    Method method = Method::WLNH;

    bool ran = false;
    std::string skip_reason;                // set when !ran
    AggregateReport result;                 // valid when ran
};

struct BenchOutcome {
    std::vector<BenchCell> cells;
    std::vector<std::filesystem::path> files_written;
    int cells_run = 0;
    int cells_skipped = 0;
};

// Runs the full record x noise x snr x method grid. Each (record, noise,
// snr) triple gets one CSV holding the measured method rows followed by the
// published comparison rows; summary.csv collects everything. Cells whose
// input records are missing are reported as SKIPPED instead of failing the
// whole run. Output is byte-identical for identical specs.
BenchOutcome run_bench(const BenchSpec& spec);

// A published result quoted for side-by-side comparison. Fields the source
// did not report are NaN.
struct LiteratureResult {
    const char* method;
    double mse;
    double rmse;
    double prd;      // percent
    double snr_imp;  // dB
};

// Quoted rows matching one benchmark cell; empty when the cell lies outside
// the published evaluation grid.
std::vector<LiteratureResult> literature_baselines(const std::string& record, BenchNoise noise,
                                                   double snr_db);

}  // namespace ecgscrub
