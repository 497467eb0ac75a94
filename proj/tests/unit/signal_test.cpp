#include "ecgscrub/signal.hpp"
#include "ecgscrub/wavelet.hpp"

#include "doctest.h"
#include "test_support.hpp"

#include <limits>

using namespace ecgscrub;

TEST_SUITE_BEGIN("signal");

TEST_CASE("validate rejects malformed signals") {
    CHECK_THROWS_WITH_AS(validate(Signal{Eigen::ArrayXd::Zero(4), 0.0}),
                         doctest::Contains("sampling rate"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(validate(Signal{Eigen::ArrayXd(), 360.0}),
                         doctest::Contains("at least one sample"), std::invalid_argument);
    Eigen::ArrayXd bad = Eigen::ArrayXd::Zero(4);
    bad[2] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_WITH_AS(validate(Signal{bad, 360.0}), doctest::Contains("non-finite"),
                         std::invalid_argument);
    CHECK_NOTHROW(validate(Signal{Eigen::ArrayXd::Ones(1), 360.0}));
}

TEST_CASE("component labels render by kind and index") {
    CHECK(ComponentLabel::detail(3).str() == "detail-3");
    CHECK(ComponentLabel::approximation(10).str() == "approx-10");
    CHECK(ComponentLabel::mode(0).str() == "mode-0");
}

TEST_CASE("segment splits a 650000-sample record into 180 segments") {
    Signal record{Eigen::ArrayXd::Zero(650000), 360.0};
    const SegmentSet set = segment(record, 3600);
    CHECK(set.segments.size() == 180);
    CHECK(set.segment_len == 3600);
    for (const Signal& s : set.segments) {
        CHECK(s.size() == 3600);
        CHECK(s.fs == 360.0);
    }
}

TEST_CASE("segment of exactly one segment length returns the input") {
    Signal sig{tst::uniform_array(3600, 11), 360.0};
    const SegmentSet set = segment(sig, 3600);
    REQUIRE(set.segments.size() == 1);
    CHECK(tst::max_abs_diff(set.segments[0].samples, sig.samples) == 0.0);
}

TEST_CASE("segment rejects signals shorter than one segment") {
    Signal sig{Eigen::ArrayXd::Zero(3599), 360.0};
    CHECK_THROWS_WITH_AS(segment(sig, 3600), doctest::Contains("insufficient length"),
                         std::invalid_argument);
}

TEST_CASE("segments concatenate back to the retained prefix") {
    // 10000 = 2 * 3600 + 2800; the trailing 2800 samples are dropped.
    Signal sig{tst::uniform_array(10000, 12), 360.0};
    const SegmentSet set = segment(sig, 3600);
    REQUIRE(set.segments.size() == 2);
    for (Eigen::Index i = 0; i < 7200; ++i) {
        const Eigen::Index seg = i / 3600, off = i % 3600;
        CHECK(set.segments[static_cast<std::size_t>(seg)].samples[off] == sig.samples[i]);
    }
}

TEST_CASE("recombine sums components elementwise") {
    Decomposition decomp;
    decomp.source_len = 2;
    decomp.fs = 360.0;
    decomp.components.push_back({Eigen::ArrayXd::Constant(2, 1.0), ComponentLabel::detail(1)});
    decomp.components.push_back({Eigen::ArrayXd::Constant(2, 2.0), ComponentLabel::detail(2)});
    const Signal sum = recombine(decomp);
    CHECK(sum.samples[0] == 3.0);
    CHECK(sum.samples[1] == 3.0);
}

TEST_CASE("recombine of a single component returns it unchanged") {
    Decomposition decomp;
    decomp.source_len = 16;
    decomp.fs = 100.0;
    decomp.components.push_back({tst::uniform_array(16, 13), ComponentLabel::mode(0)});
    const Signal sum = recombine(decomp);
    CHECK(tst::max_abs_diff(sum.samples, decomp.components[0].samples) == 0.0);
    CHECK(sum.fs == 100.0);
}

TEST_CASE("recombine rejects an empty decomposition") {
    Decomposition decomp;
    decomp.source_len = 4;
    decomp.fs = 360.0;
    CHECK_THROWS_WITH_AS(recombine(decomp), doctest::Contains("empty"), std::invalid_argument);
}

TEST_CASE("recombine inverts the wavelet decomposition") {
    Signal sig{tst::uniform_array(2048, 14), 360.0};
    const Decomposition decomp = mra_decompose(sig, 8, fk14());
    CHECK(tst::max_abs_diff(recombine(decomp).samples, sig.samples) < 1e-8);
}

TEST_CASE("recombine is linear in the component amplitudes") {
    Signal sig{tst::uniform_array(512, 15), 360.0};
    Decomposition decomp = mra_decompose(sig, 5, fk14());
    const Signal base = recombine(decomp);
    const double c = 2.5;
    for (Component& comp : decomp.components) comp.samples *= c;
    const Signal scaled = recombine(decomp);
    CHECK(tst::max_abs_diff(scaled.samples, (c * base.samples).eval()) < 1e-12);
}

TEST_SUITE_END();
