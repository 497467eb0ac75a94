#include "ecgscrub/signal.hpp"

namespace ecgscrub {

void validate(const Signal& sig) {
    if (sig.fs <= 0.0)
        throw std::invalid_argument("signal sampling rate must be positive");
    if (sig.samples.size() < 1)
        throw std::invalid_argument("signal must contain at least one sample");
    if (!sig.samples.allFinite())
        throw std::invalid_argument("signal contains non-finite samples");
}

std::string ComponentLabel::str() const {
    switch (kind) {
        case ComponentKind::Detail: return "detail-" + std::to_string(index);
        case ComponentKind::Approximation: return "approx-" + std::to_string(index);
        case ComponentKind::Mode: return "mode-" + std::to_string(index);
    }
    return "?";
}

SegmentSet segment(const Signal& signal, Eigen::Index segment_len) {
    if (segment_len < 1)
        throw std::invalid_argument("segment length must be at least 1");
    if (signal.size() < segment_len)
        throw std::invalid_argument("insufficient length: signal shorter than one segment");

    SegmentSet out;
    out.segment_len = segment_len;
    const Eigen::Index count = signal.size() / segment_len;
    out.segments.reserve(count);
    for (Eigen::Index i = 0; i < count; ++i)
        out.segments.emplace_back(signal.samples.segment(i * segment_len, segment_len).eval(),
                                  signal.fs);
    return out;
}

Signal recombine(const Decomposition& decomp) {
    if (decomp.components.empty())
        throw std::invalid_argument("cannot recombine an empty decomposition");
    Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(decomp.source_len);
    for (const Component& c : decomp.components)
        sum += c.samples;
    return {std::move(sum), decomp.fs};
}

}  // namespace ecgscrub
