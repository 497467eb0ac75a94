#include "ecgscrub/metrics.hpp"

#include <cmath>

namespace ecgscrub {
namespace {

void check_pair(const Signal& a, const Signal& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("metric inputs must have equal lengths");
}

}  // namespace

double mse(const Signal& clean, const Signal& estimate) {
    check_pair(clean, estimate);
    return (estimate.samples - clean.samples).square().mean();
}

double rmse(const Signal& clean, const Signal& estimate) {
    return std::sqrt(mse(clean, estimate));
}

double prd(const Signal& clean, const Signal& estimate) {
    check_pair(clean, estimate);
    const double ref = clean.samples.square().sum();
    if (ref <= 0.0)
        throw std::invalid_argument("PRD undefined for a zero-energy reference");
    const double err = (estimate.samples - clean.samples).square().sum();
    return 100.0 * std::sqrt(err / ref);
}

SnrTriple snr_improvement(const Signal& clean, const Signal& noisy, const Signal& denoised) {
    check_pair(clean, noisy);
    check_pair(clean, denoised);
    const double ref = clean.samples.square().sum();
    const double e_in = (noisy.samples - clean.samples).square().sum();
    const double e_out = (denoised.samples - clean.samples).square().sum();
    if (e_in <= 0.0 || e_out <= 0.0)
        throw std::invalid_argument("degenerate perfect estimate: SNR undefined");
    SnrTriple t;
    t.snr_in = 10.0 * std::log10(ref / e_in);
    t.snr_out = 10.0 * std::log10(ref / e_out);
    t.snr_imp = t.snr_out - t.snr_in;
    return t;
}

MetricReport report(const Signal& clean, const Signal& noisy, const Signal& denoised) {
    MetricReport r;
    r.mse = mse(clean, denoised);
    r.rmse = std::sqrt(r.mse);
    r.prd = prd(clean, denoised);
    const SnrTriple t = snr_improvement(clean, noisy, denoised);
    r.snr_in = t.snr_in;
    r.snr_out = t.snr_out;
    r.snr_imp = t.snr_imp;
    return r;
}

AggregateReport aggregate(const std::vector<MetricReport>& reports) {
    if (reports.empty())
        throw std::invalid_argument("cannot aggregate zero reports");
    const double n = static_cast<double>(reports.size());

    auto fold = [&](auto pick) {
        double s = 0.0, s2 = 0.0;
        for (const MetricReport& r : reports) {
            const double v = pick(r);
            s += v;
            s2 += v * v;
        }
        const double mean = s / n;
        const double var = std::max(0.0, s2 / n - mean * mean);
        return std::pair<double, double>{mean, std::sqrt(var)};
    };

    AggregateReport out;
    out.count = static_cast<int>(reports.size());
    std::tie(out.mean.mse, out.stddev.mse) = fold([](const MetricReport& r) { return r.mse; });
    std::tie(out.mean.rmse, out.stddev.rmse) = fold([](const MetricReport& r) { return r.rmse; });
    std::tie(out.mean.prd, out.stddev.prd) = fold([](const MetricReport& r) { return r.prd; });
    std::tie(out.mean.snr_in, out.stddev.snr_in) =
        fold([](const MetricReport& r) { return r.snr_in; });
    std::tie(out.mean.snr_out, out.stddev.snr_out) =
        fold([](const MetricReport& r) { return r.snr_out; });
    std::tie(out.mean.snr_imp, out.stddev.snr_imp) =
        fold([](const MetricReport& r) { return r.snr_imp; });
    return out;
}

}  // namespace ecgscrub
