#include "ecgscrub/bench.hpp"
#include "ecgscrub/fetch.hpp"
#include "ecgscrub/pipeline.hpp"
#include "ecgscrub/wfdb.hpp"

#include <CLI11.hpp>
#include <unsupported/Eigen/FFT>

#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace ecgscrub;

Signal load_input(const std::string& path, double fs) {
    if (path.ends_with(".hea")) {
        std::vector<std::string> warnings;
        ReadOptions opts;
        opts.warnings = &warnings;
        std::vector<Signal> leads = read_record(path, opts);
        for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
        if (leads.empty()) throw std::runtime_error("record has no leads: " + path);
        return std::move(leads.front());
    }
    return read_csv(path, fs);
}

void write_spectrum_csv(const std::filesystem::path& path, const Eigen::ArrayXd& x, double fs) {
    std::vector<double> time(x.data(), x.data() + x.size());
    std::vector<std::complex<double>> spec;
    Eigen::FFT<double> fft;
    fft.fwd(spec, time);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "freq_hz,magnitude\n";
    out.precision(12);
    const auto n = static_cast<Eigen::Index>(time.size());
    for (Eigen::Index k = 0; k <= n / 2; ++k)
        out << static_cast<double>(k) * fs / static_cast<double>(n) << ","
            << std::abs(spec[static_cast<std::size_t>(k)]) << "\n";
}

std::string describe(const PipelineConfig& c) {
    std::ostringstream ss;
    ss.precision(12);
    ss << "method=" << method_name(c.method) << " levels=" << c.levels << " modes=" << c.modes
       << " first_group=" << c.first_group << " lilliefors_alpha=" << c.lilliefors_alpha
       << " denoise_levels=" << c.high_group_denoise_level << "/" << c.low_group_denoise_level
       << " threshold_scale=" << c.threshold_scale << " highpass_hz=" << c.highpass.cutoff
       << " highpass_order=" << c.highpass.order << " highpass_enabled=" << c.highpass_enabled
       << " nlm_bandwidth=" << c.nlm.bandwidth << " nlm_patch=" << c.nlm.patch_half
       << " nlm_search=" << c.nlm.search_half << " nlm_enabled=" << c.nlm_enabled
       << " wavelet_bank=" << c.wavelet_bank.name;
    return ss.str();
}

const std::map<std::string, Method> kMethodNames{{"wlnh", Method::WLNH},
                                                 {"vlwnh", Method::VLWNH}};
const std::map<std::string, BenchNoise> kNoiseNames{
    {"awgn", BenchNoise::Awgn}, {"bw", BenchNoise::Bw}, {"ma", BenchNoise::Ma}};

void add_pipeline_flags(CLI::App* cmd, PipelineConfig& cfg) {
    cmd->add_option("--method", cfg.method, "Pipeline variant: wlnh (wavelet) or vlwnh (VMD)")
        ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case));
    cmd->add_option("--levels", cfg.levels, "Wavelet decomposition depth");
    cmd->add_option("--modes", cfg.modes, "VMD mode count");
    cmd->add_option("--first-group", cfg.first_group, "High-frequency group size");
    cmd->add_option("--alpha-lilliefors", cfg.lilliefors_alpha,
                    "Gaussianity screen significance; 0 disables removal");
    cmd->add_option("--highpass-hz", cfg.highpass.cutoff, "Motion-artifact high-pass cutoff");
    cmd->add_option("--highpass-order", cfg.highpass.order, "High-pass Butterworth order");
    cmd->add_flag("!--no-highpass", cfg.highpass_enabled, "Skip the high-pass stage");
    cmd->add_option("--nlm-bandwidth", cfg.nlm.bandwidth,
                    "NLM bandwidth in signal units; <= 0 selects automatically");
    cmd->add_option("--nlm-patch", cfg.nlm.patch_half, "NLM patch half-width (samples)");
    cmd->add_option("--nlm-search", cfg.nlm.search_half, "NLM search half-width (samples)");
    cmd->add_flag("!--no-nlm", cfg.nlm_enabled, "Skip the NLM stage");
    cmd->add_option("--denoise-high-level", cfg.high_group_denoise_level,
                    "Wavelet shrinkage depth for the high group");
    cmd->add_option("--denoise-low-level", cfg.low_group_denoise_level,
                    "Wavelet shrinkage depth for the low group");
    cmd->add_option("--threshold-scale", cfg.threshold_scale,
                    "Multiplier on both shrinkage thresholds; 0 disables shrinkage");
    cmd->add_option("--vmd-alpha", cfg.vmd.alpha, "VMD bandwidth penalty");
    cmd->add_option("--vmd-tau", cfg.vmd.tau, "VMD dual ascent step");
    cmd->add_option("--vmd-tol", cfg.vmd.tol, "VMD convergence tolerance");
    cmd->add_option("--vmd-iters", cfg.vmd.max_iter, "VMD iteration cap");
    cmd->set_config("--config", "", "Flat key=value config file; explicit flags win");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ECG denoising toolkit: wavelet/VMD decomposition, gaussianity-screened"
                 " shrinkage, high-pass and NLM stages, plus a benchmark harness"};
    app.require_subcommand(1);
    int rc = 0;

    // synth
    auto* synth = app.add_subcommand("synth", "Write a clean synthetic ECG as CSV");
    double synth_duration = 10.0, synth_fs = 360.0, synth_rate = 60.0;
    std::string synth_out = "synth.csv";
    synth->add_option("--duration", synth_duration, "Seconds");
    synth->add_option("--fs", synth_fs, "Sampling rate, Hz");
    synth->add_option("--rate", synth_rate, "Heart rate, bpm");
    synth->add_option("--out", synth_out, "Output CSV path");
    synth->callback([&] {
        const Signal s = synth_ecg(synth_duration, synth_fs, synth_rate);
        std::ostringstream hdr;
        hdr << "synthetic ECG duration_s=" << synth_duration << " fs=" << synth_fs
            << " rate_bpm=" << synth_rate;
        write_csv(synth_out, s, hdr.str());
        std::cout << synth_out << ": " << s.size() << " samples\n";
    });

    // decompose
    auto* dec = app.add_subcommand("decompose", "Split a recording into additive components");
    std::string dec_input, dec_out = "decomp-out", dec_method = "wavelet";
    double dec_fs = 360.0;
    PipelineConfig dec_cfg;
    dec->add_option("input", dec_input, "WFDB header (.hea) or CSV")->required();
    dec->add_option("--fs", dec_fs, "Sampling rate for CSV input");
    dec->add_option("--decomposition", dec_method, "wavelet or vmd")
        ->check(CLI::IsMember({"wavelet", "vmd"}));
    dec->add_option("--out", dec_out, "Output directory");
    add_pipeline_flags(dec, dec_cfg);
    dec->callback([&] {
        const Signal x = load_input(dec_input, dec_fs);
        std::filesystem::create_directories(dec_out);
        Decomposition d;
        std::vector<double> freqs;
        if (dec_method == "wavelet") {
            d = mra_decompose(x, dec_cfg.levels, dec_cfg.wavelet_bank);
        } else {
            VmdConfig vcfg = dec_cfg.vmd;
            vcfg.K = dec_cfg.modes;
            const VmdResult res = sort_modes_by_freq(vmd_decompose(x, vcfg), FreqOrder::Descending);
            d = res.modes;
            freqs = res.center_freqs;
        }
        for (const Component& c : d.components) {
            const std::string label = c.label.str();
            write_csv(std::filesystem::path(dec_out) / ("component-" + label + ".csv"),
                      Signal{c.samples, x.fs}, "component " + label);
            write_spectrum_csv(std::filesystem::path(dec_out) / ("spectrum-" + label + ".csv"),
                               c.samples, x.fs);
        }
        if (!freqs.empty()) {
            std::ofstream manifest(std::filesystem::path(dec_out) / "manifest.csv");
            manifest << "mode,center_freq_hz\n";
            manifest.precision(12);
            for (std::size_t k = 0; k < freqs.size(); ++k)
                manifest << d.components[k].label.str() << "," << freqs[k] << "\n";
        }
        std::cout << dec_out << ": " << d.components.size() << " components\n";
    });

    // denoise
    auto* den = app.add_subcommand("denoise", "Run the full denoising chain on a recording");
    std::string den_input, den_out = "denoised.csv", den_trace, den_dump_config;
    double den_fs = 360.0;
    PipelineConfig den_cfg;
    den->add_option("input", den_input, "WFDB header (.hea) or CSV")->required();
    den->add_option("--fs", den_fs, "Sampling rate for CSV input");
    den->add_option("--out", den_out, "Output CSV path");
    den->add_option("--trace", den_trace, "Directory for per-stage intermediate CSVs");
    den->add_option("--dump-config", den_dump_config, "Write the effective config to this file");
    add_pipeline_flags(den, den_cfg);
    den->callback([&] {
        if (!den_dump_config.empty()) {
            std::ofstream out(den_dump_config);
            out << den->config_to_str(true, true);
        }
        den_cfg.trace_intermediates = !den_trace.empty();
        const Signal x = load_input(den_input, den_fs);
        const RunResult res = run(x, den_cfg);
        std::string removed;
        for (const ComponentLabel& l : res.trace.components_removed)
            removed += (removed.empty() ? "" : " ") + l.str();
        write_csv(den_out, res.denoised,
                  describe(den_cfg) + " removed=[" + removed + "] input=" + den_input);
        if (!den_trace.empty()) {
            std::filesystem::create_directories(den_trace);
            for (const auto& [tag, sig] : res.trace.intermediates)
                write_csv(std::filesystem::path(den_trace) / (tag + ".csv"), sig, tag);
        }
        std::cout << den_out << ": " << res.denoised.size() << " samples, removed=[" << removed
                  << "]\n";
    });

    // bench
    auto* ben = app.add_subcommand("bench", "Grid evaluation with published comparison columns");
    BenchSpec spec;
    spec.records = {"100", "103", "105"};
    std::string ben_out = "bench-out";
    bool raw_reference = false;
    ben->add_option("--records", spec.records, "Record names (or synth)");
    ben->add_option("--noise", spec.noises, "Noise kinds: awgn, bw, ma")
        ->transform(CLI::CheckedTransformer(kNoiseNames, CLI::ignore_case));
    ben->add_option("--snr-db", spec.snr_dbs, "Input SNR levels, dB");
    ben->add_option("--methods", spec.methods, "Methods to run")
        ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case));
    ben->add_option("--seed", spec.seed, "Base noise seed");
    ben->add_option("--out", ben_out, "Output directory");
    ben->add_option("--segment-len", spec.segment_len, "Samples per evaluation segment");
    ben->add_option("--synth-duration", spec.synth_duration_s,
                    "Length of the synth pseudo-record, seconds");
    ben->add_flag("--raw-reference", raw_reference,
                  "Score against the raw record instead of its high-passed version");
    add_pipeline_flags(ben, spec.base);
    ben->callback([&] {
        spec.output_dir = ben_out;
        spec.prefilter_reference = !raw_reference;
        const BenchOutcome outcome = run_bench(spec);
        for (const BenchCell& cell : outcome.cells) {
            std::cout << cell.record << " " << noise_name(cell.noise) << " " << cell.snr_db
                      << "dB " << method_name(cell.method) << ": ";
            if (cell.ran) {
                std::cout << "prd=" << cell.result.mean.prd
                          << "% snr_imp=" << cell.result.mean.snr_imp << "dB over "
                          << cell.result.count << " segments\n";
            } else {
                std::cout << "SKIPPED (" << cell.skip_reason << ")\n";
            }
        }
        std::cout << "wrote " << outcome.files_written.size() << " files to " << ben_out << "\n";
        rc = outcome.cells_run > 0 ? 0 : 2;
    });

    // fetch
    auto* fet = app.add_subcommand("fetch", "Download records into the data directory");
    std::vector<std::string> fetch_names{"100", "103", "105", "bw", "ma"};
    std::string base_url = default_base_url();
    std::string fetch_dest = data_dir().string();
    fet->add_option("records", fetch_names, "Record names");
    fet->add_option("--base-url", base_url, "Archive base URL");
    fet->add_option("--dest", fetch_dest, "Destination directory");
    fet->callback([&] {
        const std::vector<FetchItem> items = fetch_records(fetch_names, base_url, fetch_dest);
        bool all_ok = !items.empty();
        for (const FetchItem& item : items) {
            std::cout << item.file << ": " << (item.ok ? "OK, " : "FAILED: ") << item.message
                      << "\n";
            all_ok = all_ok && item.ok;
        }
        rc = all_ok ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
