#pragma once

#include "ecgscrub/signal.hpp"

namespace ecgscrub {

// Quality metrics for one denoising run.
struct MetricReport {
    double mse = 0.0;      // mean squared error, mV^2
    double rmse = 0.0;     // sqrt(mse), mV
    double prd = 0.0;      // percentage root-mean-square difference
    double snr_in = 0.0;   // dB
    double snr_out = 0.0;  // dB
    double snr_imp = 0.0;  // snr_out - snr_in, dB
};

double mse(const Signal& clean, const Signal& estimate);
double rmse(const Signal& clean, const Signal& estimate);
double prd(const Signal& clean, const Signal& estimate);

struct SnrTriple {
    double snr_in;
    double snr_out;
    double snr_imp;
};

// snr_in compares the noisy input against clean, snr_out the denoised
// estimate against clean.
SnrTriple snr_improvement(const Signal& clean, const Signal& noisy, const Signal& denoised);

MetricReport report(const Signal& clean, const Signal& noisy, const Signal& denoised);

// Mean and standard deviation of per-segment reports.
struct AggregateReport {
    MetricReport mean;
    MetricReport stddev;
    int count = 0;
};

AggregateReport aggregate(const std::vector<MetricReport>& reports);

}  // namespace ecgscrub
