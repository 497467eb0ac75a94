#pragma once

#include <Eigen/Core>

#include <filesystem>

namespace ecgscrub {

struct LillieforsResult {
    double statistic = 0.0;       // D_max
    double critical_value = 0.0;  // threshold at the requested alpha
    double alpha = 0.0;
    Eigen::Index n = 0;
    bool is_gaussian = false;     // statistic <= critical_value
};

// Composite normality test: KS discrepancy between the empirical CDF and a
// normal CDF whose mean and (n-1)-denominator SD come from the sample
// itself. Supported significance levels: 0.01, 0.05, 0.10.
LillieforsResult lilliefors_test(const Eigen::ArrayXd& samples, double alpha);

// Critical threshold for the test, from a seeded Monte Carlo calibration
// (1e5 null replicates per grid size, interpolated between grid sizes).
// The calibration table is built once and cached on disk.
double critical_value(double alpha, Eigen::Index n);

// Where the calibration table lives; honors ECGSCRUB_DATA_DIR.
std::filesystem::path calibration_cache_path();

}  // namespace ecgscrub
