#include "ecgscrub/bench.hpp"

#include "doctest.h"
#include "test_support.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace ecgscrub;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    static int counter = 0;
    const fs::path dir =
        fs::temp_directory_path() / ("ecgscrub-bench-" + std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Small offline grid: the synthetic record, white noise, one method.
BenchSpec synth_spec(const fs::path& out_dir) {
    BenchSpec spec;
    spec.records = {"synth"};
    spec.noises = {BenchNoise::Awgn};
    spec.snr_dbs = {10.0};
    spec.methods = {Method::WLNH};
    spec.seed = 9;
    spec.synth_duration_s = 30.0;
    spec.output_dir = out_dir;
    return spec;
}

// Swap the data directory for the duration of one test case so record
// lookups are hermetic regardless of what a previous run fetched.
struct DataDirGuard {
    explicit DataDirGuard(const fs::path& dir) {
        if (const char* prev = std::getenv("ECGSCRUB_DATA_DIR")) saved = prev;
        setenv("ECGSCRUB_DATA_DIR", dir.string().c_str(), 1);
    }
    ~DataDirGuard() {
        if (saved.empty())
            unsetenv("ECGSCRUB_DATA_DIR");
        else
            setenv("ECGSCRUB_DATA_DIR", saved.c_str(), 1);
    }
    std::string saved;
};

}  // namespace

TEST_SUITE_BEGIN("bench");

TEST_CASE("grid axis names") {
    CHECK(noise_name(BenchNoise::Awgn) == "awgn");
    CHECK(noise_name(BenchNoise::Bw) == "bw");
    CHECK(noise_name(BenchNoise::Ma) == "ma");
    CHECK(method_name(Method::WLNH) == "wlnh");
    CHECK(method_name(Method::VLWNH) == "vlwnh");
}

TEST_CASE("spec validation") {
    BenchSpec spec = synth_spec("unused");
    CHECK_NOTHROW(validate(spec));

    BenchSpec no_records = spec;
    no_records.records.clear();
    CHECK_THROWS_WITH_AS(validate(no_records),
                         doctest::Contains("bench grid must name records"),
                         std::invalid_argument);

    BenchSpec no_methods = spec;
    no_methods.methods.clear();
    CHECK_THROWS_WITH_AS(validate(no_methods),
                         doctest::Contains("bench grid must name records"),
                         std::invalid_argument);

    BenchSpec bad_segment = spec;
    bad_segment.segment_len = 0;
    CHECK_THROWS_WITH_AS(validate(bad_segment),
                         doctest::Contains("segment_len must be at least 1"),
                         std::invalid_argument);

    // base pipeline config is validated through the same entry point
    BenchSpec bad_base = spec;
    bad_base.base.levels = 0;
    CHECK_THROWS_AS(validate(bad_base), std::invalid_argument);
}

TEST_CASE("published comparison rows cover the evaluated grid only") {
    const auto rows = literature_baselines("100", BenchNoise::Awgn, 10.0);
    REQUIRE(rows.size() >= 4);

    bool saw_wlnh = false;
    bool saw_vmd_nlm = false;
    for (const LiteratureResult& r : rows) {
        if (std::string(r.method) == "wlnh") {
            saw_wlnh = true;
            CHECK(r.mse == doctest::Approx(2.3e-4).epsilon(1e-12));
            CHECK(r.prd == doctest::Approx(4.67).epsilon(1e-12));
            CHECK(r.snr_imp == doctest::Approx(26.59).epsilon(1e-12));
            CHECK(std::isnan(r.rmse));  // not reported by the source
        }
        if (std::string(r.method) == "vmd-nlm") {
            saw_vmd_nlm = true;
            CHECK(r.snr_imp == doctest::Approx(8.92).epsilon(1e-12));
        }
    }
    CHECK(saw_wlnh);
    CHECK(saw_vmd_nlm);

    CHECK(literature_baselines("999", BenchNoise::Awgn, 10.0).empty());
    CHECK(literature_baselines("100", BenchNoise::Awgn, 7.5).empty());
    CHECK(literature_baselines("synth", BenchNoise::Awgn, 10.0).empty());
    CHECK(!literature_baselines("105", BenchNoise::Ma, 5.0).empty());
}

TEST_CASE("a synthetic-record bench cell runs offline and writes its files") {
    const fs::path dir = scratch_dir();
    const BenchOutcome out = run_bench(synth_spec(dir));

    CHECK(out.cells_run == 1);
    CHECK(out.cells_skipped == 0);
    REQUIRE(out.cells.size() == 1);
    const BenchCell& cell = out.cells[0];
    CHECK(cell.ran);
    CHECK(cell.record == "synth");
    CHECK(cell.result.count == 3);  // 30 s at 360 Hz in 3600-sample segments
    CHECK(std::isfinite(cell.result.mean.prd));
    CHECK(cell.result.mean.snr_imp > 0.0);

    REQUIRE(out.files_written.size() == 2);
    CHECK(out.files_written[0].filename() == "bench_synth_awgn_10dB.csv");
    CHECK(out.files_written[1].filename() == "summary.csv");
    for (const fs::path& p : out.files_written) CHECK(fs::exists(p));

    const std::string cell_csv = slurp(out.files_written[0]);
    CHECK(cell_csv.find("# bench cell: record=synth noise=awgn snr_db=10") != std::string::npos);
    CHECK(cell_csv.find("method,source,mse,rmse,prd_pct") != std::string::npos);
    CHECK(cell_csv.find("wlnh,measured,") != std::string::npos);
    CHECK(cell_csv.find("literature") == std::string::npos);  // none quoted for synth

    const std::string summary = slurp(out.files_written[1]);
    CHECK(summary.find("synth,awgn,10,wlnh,measured,") != std::string::npos);
}

TEST_CASE("identical specs produce byte-identical outputs") {
    const fs::path dir_a = scratch_dir();
    const fs::path dir_b = scratch_dir();
    const BenchOutcome a = run_bench(synth_spec(dir_a));
    const BenchOutcome b = run_bench(synth_spec(dir_b));
    REQUIRE(a.files_written.size() == b.files_written.size());
    for (std::size_t i = 0; i < a.files_written.size(); ++i)
        CHECK(slurp(a.files_written[i]) == slurp(b.files_written[i]));
}

TEST_CASE("missing records are reported as skipped cells, not failures") {
    const fs::path empty_data = scratch_dir();
    DataDirGuard guard(empty_data);

    BenchSpec spec = synth_spec(scratch_dir());
    spec.records = {"zz9"};
    spec.methods = {Method::WLNH, Method::VLWNH};
    const BenchOutcome out = run_bench(spec);

    CHECK(out.cells_run == 0);
    CHECK(out.cells_skipped == 2);
    REQUIRE(out.cells.size() == 2);
    for (const BenchCell& cell : out.cells) {
        CHECK(!cell.ran);
        CHECK(cell.skip_reason.find("zz9") != std::string::npos);
        CHECK(cell.skip_reason.find("fetch") != std::string::npos);
    }
    CHECK(slurp(out.files_written[0]).find("SKIPPED") != std::string::npos);
}

TEST_CASE("missing noise records also skip") {
    const fs::path empty_data = scratch_dir();
    DataDirGuard guard(empty_data);

    BenchSpec spec = synth_spec(scratch_dir());
    spec.noises = {BenchNoise::Bw};
    const BenchOutcome out = run_bench(spec);
    CHECK(out.cells_run == 0);
    REQUIRE(out.cells.size() == 1);
    CHECK(out.cells[0].skip_reason.find("bw") != std::string::npos);
}

TEST_SUITE_END();
