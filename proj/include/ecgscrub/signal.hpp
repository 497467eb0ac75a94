#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace ecgscrub {

// Uniformly sampled single-lead amplitude sequence, in millivolts.
struct Signal {
    Eigen::ArrayXd samples;
    double fs = 0.0;  // sampling rate, Hz

    Signal() = default;
    Signal(Eigen::ArrayXd s, double rate) : samples(std::move(s)), fs(rate) {}

    Eigen::Index size() const { return samples.size(); }
    double duration() const { return static_cast<double>(samples.size()) / fs; }
};

// Throws std::invalid_argument unless fs > 0, length >= 1 and all samples finite.
void validate(const Signal& sig);

enum class ComponentKind { Detail, Approximation, Mode };

struct ComponentLabel {
    ComponentKind kind = ComponentKind::Detail;
    int index = 0;  // wavelet level (1-based) or mode index (0-based)

    static ComponentLabel detail(int level) { return {ComponentKind::Detail, level}; }
    static ComponentLabel approximation(int level) { return {ComponentKind::Approximation, level}; }
    static ComponentLabel mode(int idx) { return {ComponentKind::Mode, idx}; }

    bool operator==(const ComponentLabel&) const = default;
    std::string str() const;
};

struct Component {
    Eigen::ArrayXd samples;
    ComponentLabel label;
    double center_freq = -1.0;  // Hz; >= 0 only for VMD modes
};

enum class DecompKind { WaveletMRA, VMD };

// Ordered set of same-length additive components of one source signal.
struct Decomposition {
    Eigen::Index source_len = 0;
    double fs = 0.0;
    DecompKind kind = DecompKind::WaveletMRA;
    std::vector<Component> components;
};

struct SegmentSet {
    std::vector<Signal> segments;
    Eigen::Index segment_len = 0;
};

// Splits into floor(len/segment_len) consecutive non-overlapping segments;
// the trailing remainder is discarded.
SegmentSet segment(const Signal& signal, Eigen::Index segment_len);

// Element-wise sum of all components.
Signal recombine(const Decomposition& decomp);

}  // namespace ecgscrub
