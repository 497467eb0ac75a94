#include "ecgscrub/lilliefors.hpp"

#include "portable_rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ecgscrub {
namespace {

constexpr std::uint64_t kCalibrationSeed = 0x4C696C6C32303236ULL;
constexpr int kReplicates = 100000;
constexpr double kAlphas[] = {0.01, 0.05, 0.10};
// Grid of calibrated sample sizes; interpolation covers everything between,
// and the c/sqrt(n) asymptote extends beyond the top.
constexpr Eigen::Index kGrid[] = {4,   6,   8,    12,   16,   24,  32, 48,
                                  64,  128, 256,  512,  1024, 2048, 4096};

double normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.70710678118654752440); }

// KS discrepancy of a sorted sample against the normal fitted to it.
double statistic_sorted(const std::vector<double>& x) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd <= 0.0)
        throw std::invalid_argument("degenerate sample: zero variance");

    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = normal_cdf((x[i] - mean) / sd);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(n) - f;
        const double lo = f - static_cast<double>(i) / static_cast<double>(n);
        d = std::max({d, hi, lo});
    }
    return d;
}

struct Table {
    std::vector<Eigen::Index> n;
    // scaled[a][i] = cv * sqrt(n) for alpha kAlphas[a] at grid point i
    std::vector<std::vector<double>> scaled;
};

Table calibrate() {
    Table tab;
    tab.scaled.assign(std::size(kAlphas), {});
    std::vector<double> stats(kReplicates);
    std::vector<double> sample;
    for (Eigen::Index n : kGrid) {
        detail::NormalStream normal(detail::splitmix64(kCalibrationSeed ^ static_cast<std::uint64_t>(n)));
        sample.resize(n);
        for (int r = 0; r < kReplicates; ++r) {
            for (double& v : sample) v = normal();
            std::sort(sample.begin(), sample.end());
            stats[r] = statistic_sorted(sample);
        }
        std::sort(stats.begin(), stats.end());
        tab.n.push_back(n);
        for (std::size_t a = 0; a < std::size(kAlphas); ++a) {
            // type-7 quantile at 1 - alpha
            const double pos = (kReplicates - 1) * (1.0 - kAlphas[a]);
            const std::size_t i = static_cast<std::size_t>(pos);
            const double frac = pos - static_cast<double>(i);
            const double q = stats[i] + frac * (stats[i + 1] - stats[i]);
            tab.scaled[a].push_back(q * std::sqrt(static_cast<double>(n)));
        }
    }
    return tab;
}

void save_table(const Table& tab, const std::filesystem::path& path) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;  // cache is an optimization; recalibrating is always valid
        out << "# lilliefors critical values; seed=" << kCalibrationSeed
            << " replicates=" << kReplicates << "\n";
        out << "# n";
        for (double a : kAlphas) out << " cv*sqrt(n)@" << a;
        out << "\n";
        out.precision(17);
        for (std::size_t i = 0; i < tab.n.size(); ++i) {
            out << tab.n[i];
            for (std::size_t a = 0; a < std::size(kAlphas); ++a)
                out << ' ' << tab.scaled[a][i];
            out << "\n";
        }
    }
    std::filesystem::rename(tmp, path, ec);  // atomic swap-in
    if (ec) std::filesystem::remove(tmp, ec);
}

bool load_table(Table& tab, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return false;
    std::string header;
    std::getline(in, header);
    std::ostringstream expect;
    expect << "# lilliefors critical values; seed=" << kCalibrationSeed
           << " replicates=" << kReplicates;
    if (header != expect.str()) return false;  // stale cache, rebuild
    std::getline(in, header);                  // column names

    Table fresh;
    fresh.scaled.assign(std::size(kAlphas), {});
    Eigen::Index n;
    while (in >> n) {
        fresh.n.push_back(n);
        for (std::size_t a = 0; a < std::size(kAlphas); ++a) {
            double v;
            if (!(in >> v)) return false;
            fresh.scaled[a].push_back(v);
        }
    }
    if (fresh.n.size() != std::size(kGrid)) return false;
    tab = std::move(fresh);
    return true;
}

const Table& table() {
    static Table tab;
    static std::once_flag once;
    std::call_once(once, [] {
        const std::filesystem::path path = calibration_cache_path();
        if (!load_table(tab, path)) {
            tab = calibrate();
            save_table(tab, path);
        }
    });
    return tab;
}

std::size_t alpha_index(double alpha) {
    for (std::size_t a = 0; a < std::size(kAlphas); ++a)
        if (std::abs(alpha - kAlphas[a]) < 1e-12) return a;
    throw std::invalid_argument("unsupported significance level (use 0.01, 0.05 or 0.10)");
}

}  // namespace

std::filesystem::path calibration_cache_path() {
    if (const char* dir = std::getenv("ECGSCRUB_DATA_DIR"); dir && *dir)
        return std::filesystem::path(dir) / "lilliefors_cv.tsv";
    return std::filesystem::temp_directory_path() / "ecgscrub_lilliefors_cv.tsv";
}

double critical_value(double alpha, Eigen::Index n) {
    const std::size_t a = alpha_index(alpha);
    if (n < 4)
        throw std::invalid_argument("sample too small: need n >= 4");
    const Table& tab = table();
    const std::vector<double>& f = tab.scaled[a];
    const double ln = std::log(static_cast<double>(n));

    double scaled;
    if (n >= tab.n.back()) {
        scaled = f.back();
    } else {
        std::size_t hi = 1;
        while (tab.n[hi] < n) ++hi;
        const double l0 = std::log(static_cast<double>(tab.n[hi - 1]));
        const double l1 = std::log(static_cast<double>(tab.n[hi]));
        const double w = (ln - l0) / (l1 - l0);
        scaled = (1.0 - w) * f[hi - 1] + w * f[hi];
    }
    return scaled / std::sqrt(static_cast<double>(n));
}

LillieforsResult lilliefors_test(const Eigen::ArrayXd& samples, double alpha) {
    const std::size_t a = alpha_index(alpha);
    if (samples.size() < 4)
        throw std::invalid_argument("sample too small: need n >= 4");
    std::vector<double> x(samples.data(), samples.data() + samples.size());
    std::sort(x.begin(), x.end());

    LillieforsResult res;
    res.alpha = kAlphas[a];
    res.n = samples.size();
    res.statistic = statistic_sorted(x);
    res.critical_value = critical_value(res.alpha, res.n);
    res.is_gaussian = res.statistic <= res.critical_value;
    return res;
}

}  // namespace ecgscrub
