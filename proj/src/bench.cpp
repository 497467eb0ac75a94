#include "ecgscrub/bench.hpp"

#include "ecgscrub/wfdb.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace ecgscrub {
namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

struct LoadedInput {
    std::optional<Signal> lead;
    std::string why;  // skip reason when lead is absent
};

LoadedInput load_lead(const std::string& name, double synth_duration_s) {
    if (name == "synth")
        return {synth_ecg(synth_duration_s, 360.0, 60.0), ""};
    const auto hea = find_record(name);
    if (!hea) {
        return {std::nullopt, "record " + name + " not found under " + data_dir().string() +
                                  " (fetch it first: ecgscrub fetch " + name + ")"};
    }
    try {
        std::vector<Signal> leads = read_record(*hea);
        if (leads.empty()) return {std::nullopt, "record " + name + " has no leads"};
        return {std::move(leads.front()), ""};
    } catch (const std::exception& e) {
        return {std::nullopt, std::string("record ") + name + ": " + e.what()};
    }
}

struct NoiseInput {
    std::optional<NoiseSource> source;
    std::string why;
};

NoiseInput make_noise(BenchNoise kind, std::uint64_t seed, double synth_duration_s) {
    if (kind == BenchNoise::Awgn) return {NoiseSource::white(seed), ""};
    const std::string name = noise_name(kind);
    LoadedInput in = load_lead(name, synth_duration_s);
    if (!in.lead) return {std::nullopt, in.why};
    return {NoiseSource::recorded(std::move(*in.lead), name), ""};
}

void write_config_header(std::ofstream& out, const BenchSpec& spec) {
    const PipelineConfig& c = spec.base;
    out << "# seed=" << spec.seed << " segment_len=" << spec.segment_len
        << " prefilter_reference=" << (spec.prefilter_reference ? 1 : 0) << "\n";
    out << "# levels=" << c.levels << " modes=" << c.modes << " first_group=" << c.first_group
        << " lilliefors_alpha=" << fmt(c.lilliefors_alpha)
        << " high_group_denoise_level=" << c.high_group_denoise_level
        << " low_group_denoise_level=" << c.low_group_denoise_level
        << " threshold_scale=" << fmt(c.threshold_scale) << " wavelet_bank=" << c.wavelet_bank.name
        << "\n";
    out << "# highpass: cutoff_hz=" << fmt(c.highpass.cutoff) << " order=" << c.highpass.order
        << " zero_phase=" << (c.highpass.zero_phase ? 1 : 0)
        << " enabled=" << (c.highpass_enabled ? 1 : 0) << "\n";
    out << "# nlm: bandwidth="
        << (c.nlm.bandwidth > 0.0 ? fmt(c.nlm.bandwidth) : std::string("auto"))
        << " patch_half=" << c.nlm.patch_half << " search_half=" << c.nlm.search_half
        << " enabled=" << (c.nlm_enabled ? 1 : 0) << "\n";
    out << "# vmd: alpha=" << fmt(c.vmd.alpha) << " tau=" << fmt(c.vmd.tau)
        << " tol=" << fmt(c.vmd.tol) << " max_iter=" << c.vmd.max_iter
        << " init=" << (c.vmd.init == VmdInit::UniformFreq ? "uniform" : "zero") << "\n";
    out << "# awgn generator: mt19937_64 + Box-Muller; segment seed = "
           "splitmix64(base ^ splitmix64(segment_index))\n";
}

std::string measured_row(const BenchCell& cell, Eigen::Index segments) {
    const MetricReport& m = cell.result.mean;
    const MetricReport& s = cell.result.stddev;
    std::ostringstream row;
    row << method_name(cell.method) << ",measured," << fmt(m.mse) << "," << fmt(m.rmse) << ","
        << fmt(m.prd) << "," << fmt(m.snr_in) << "," << fmt(m.snr_out) << "," << fmt(m.snr_imp)
        << "," << fmt(s.mse) << "," << fmt(s.prd) << "," << fmt(s.snr_imp) << "," << segments;
    return row.str();
}

std::string literature_row(const LiteratureResult& r) {
    std::ostringstream row;
    row << r.method << ",literature," << fmt(r.mse) << "," << fmt(r.rmse) << "," << fmt(r.prd)
        << ",,," << fmt(r.snr_imp) << ",,,,";
    return row.str();
}

constexpr const char* kColumns =
    "method,source,mse,rmse,prd_pct,snr_in_db,snr_out_db,snr_imp_db,"
    "mse_sd,prd_sd,snr_imp_sd,segments";

}  // namespace

std::string noise_name(BenchNoise kind) {
    switch (kind) {
        case BenchNoise::Awgn: return "awgn";
        case BenchNoise::Bw: return "bw";
        case BenchNoise::Ma: return "ma";
    }
    throw std::logic_error("unreachable noise kind");
}

std::string method_name(Method method) {
    return method == Method::WLNH ? "wlnh" : "vlwnh";
}

void validate(const BenchSpec& spec) {
    if (spec.records.empty() || spec.noises.empty() || spec.snr_dbs.empty() ||
        spec.methods.empty())
        throw std::invalid_argument("bench grid must name records, noises, snr levels and methods");
    if (spec.segment_len < 1)
        throw std::invalid_argument("segment_len must be at least 1");
    validate(spec.base);
}

BenchOutcome run_bench(const BenchSpec& spec) {
    validate(spec);
    std::filesystem::create_directories(spec.output_dir);

    // Inputs are shared across cells, so resolve each record/noise once.
    std::map<std::string, LoadedInput> leads;
    for (const std::string& r : spec.records)
        leads.emplace(r, load_lead(r, spec.synth_duration_s));
    std::map<BenchNoise, NoiseInput> noises;
    for (BenchNoise k : spec.noises)
        noises.emplace(k, make_noise(k, spec.seed, spec.synth_duration_s));

    BenchOutcome out;
    std::vector<std::string> summary_rows;

    for (const std::string& record : spec.records) {
        for (BenchNoise noise : spec.noises) {
            for (double snr_db : spec.snr_dbs) {
                const std::filesystem::path cell_path =
                    spec.output_dir /
                    ("bench_" + record + "_" + noise_name(noise) + "_" + fmt(snr_db) + "dB.csv");
                std::ofstream csv(cell_path);
                if (!csv)
                    throw std::runtime_error("cannot write " + cell_path.string());
                csv << "# bench cell: record=" << record << " noise=" << noise_name(noise)
                    << " snr_db=" << fmt(snr_db) << "\n";
                write_config_header(csv, spec);
                const NoiseInput& ni = noises.at(noise);
                if (ni.source && ni.source->kind == NoiseKind::RecordNoise)
                    csv << "# noise record=" << ni.source->record_name
                        << " channel=" << ni.source->channel << " offset=" << ni.source->offset
                        << "\n";
                csv << kColumns << "\n";

                for (Method method : spec.methods) {
                    BenchCell cell;
                    cell.record = record;
                    cell.noise = noise;
                    cell.snr_db = snr_db;
                    cell.method = method;

                    const LoadedInput& li = leads.at(record);
                    if (!li.lead) {
                        cell.skip_reason = li.why;
                    } else if (!ni.source) {
                        cell.skip_reason = ni.why;
                    } else {
                        PipelineConfig cfg = spec.base;
                        cfg.method = method;
                        const RecordRunResult rr =
                            run_record(*li.lead, *ni.source, snr_db, cfg, spec.segment_len,
                                       spec.prefilter_reference);
                        cell.ran = true;
                        cell.result = rr.aggregate;
                    }

                    std::string row;
                    if (cell.ran) {
                        row = measured_row(cell, cell.result.count);
                        ++out.cells_run;
                    } else {
                        row = method_name(method) + ",SKIPPED,,,,,,,,,," + cell.skip_reason;
                        ++out.cells_skipped;
                    }
                    csv << row << "\n";
                    summary_rows.push_back("" + record + "," + noise_name(noise) + "," +
                                           fmt(snr_db) + "," + row);
                    out.cells.push_back(std::move(cell));
                }
                for (const LiteratureResult& r : literature_baselines(record, noise, snr_db)) {
                    csv << literature_row(r) << "\n";
                    summary_rows.push_back(record + "," + noise_name(noise) + "," + fmt(snr_db) +
                                           "," + literature_row(r));
                }
                if (!csv)
                    throw std::runtime_error("write failed: " + cell_path.string());
                out.files_written.push_back(cell_path);
            }
        }
    }

    const std::filesystem::path summary_path = spec.output_dir / "summary.csv";
    std::ofstream summary(summary_path);
    if (!summary)
        throw std::runtime_error("cannot write " + summary_path.string());
    summary << "# bench summary\n";
    write_config_header(summary, spec);
    summary << "record,noise,snr_db," << kColumns << "\n";
    for (const std::string& row : summary_rows) summary << row << "\n";
    if (!summary)
        throw std::runtime_error("write failed: " + summary_path.string());
    out.files_written.push_back(summary_path);
    return out;
}

}  // namespace ecgscrub
