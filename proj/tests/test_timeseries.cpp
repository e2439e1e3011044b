#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "wavesync/errors.hpp"
#include "wavesync/timeseries.hpp"

using namespace wavesync;

namespace {
std::vector<double> ramp(std::size_t n, double start = 1.0, double step = 1.0) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = start + step * static_cast<double>(i);
    return v;
}
} // namespace

TEST_CASE("make_series validates and stores the axis") {
    const TimeSeries s = make_series("gdp", 100, 3, ramp(10), TimeUnit::month);
    CHECK(s.size() == 10);
    CHECK(s.dt() == 3.0);
    CHECK(s.time_at(0) == 100);
    CHECK(s.time_at(9) == 127);

    CHECK_THROWS_AS(make_series("x", 0, 1, ramp(7)), TooShort);
    CHECK_THROWS_AS(make_series("x", 0, 0, ramp(8)), SamplingError);
    CHECK_THROWS_AS(make_series("x", 0, -2, ramp(8)), SamplingError);
    std::vector<double> bad = ramp(8);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(make_series("x", 0, 1, bad), DataError);
}

TEST_CASE("preprocess diff shortens and shifts") {
    const TimeSeries s = make_series("x", 10, 2, {1, 4, 9, 16, 25, 36, 49, 64, 81});
    const TimeSeries d = preprocess(s, Preprocess::diff);
    CHECK(d.size() == 8);
    CHECK(d.t0 == 12);
    CHECK(d.step == 2);
    CHECK(d.values[0] == 3.0);
    CHECK(d.values[7] == 17.0);
    const TimeSeries same = preprocess(s, Preprocess::none);
    CHECK(same.values == s.values);
    CHECK(same.t0 == s.t0);
}

TEST_CASE("preprocess log_diff") {
    std::vector<double> v(9);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(0.1 * static_cast<double>(i));
    const TimeSeries s = make_series("x", 0, 1, v);
    const TimeSeries d = preprocess(s, Preprocess::log_diff);
    CHECK(d.size() == 8);
    for (double x : d.values) CHECK(x == doctest::Approx(0.1).epsilon(1e-12));

    const TimeSeries neg = make_series("x", 0, 1, {1, 2, -3, 4, 5, 6, 7, 8, 9});
    CHECK_THROWS_AS(preprocess(neg, Preprocess::log_diff), DomainError);
}

TEST_CASE("preprocess standardize uses the n-1 deviation") {
    const TimeSeries s = make_series("x", 0, 1, {1, 2, 3, 4, 5, 6, 7, 8});
    const TimeSeries z = preprocess(s, Preprocess::standardize);
    double m = 0;
    for (double v : z.values) m += v;
    CHECK(m == doctest::Approx(0.0).epsilon(1e-12));
    // sample std of 1..8 is sqrt(6); the first standardized value is -3.5/sqrt(6)
    CHECK(z.values[0] == doctest::Approx(-3.5 / std::sqrt(6.0)).epsilon(1e-14));

    const TimeSeries flat = make_series("x", 0, 1, std::vector<double>(8, 2.0));
    CHECK_THROWS_AS(preprocess(flat, Preprocess::standardize), DegenerateError);
}

TEST_CASE("preprocess names round-trip") {
    for (Preprocess p : {Preprocess::none, Preprocess::diff, Preprocess::log_diff,
                         Preprocess::standardize})
        CHECK(preprocess_from_name(preprocess_name(p)) == p);
    CHECK(preprocess_from_name("log-diff") == Preprocess::log_diff);
    CHECK_THROWS_AS(preprocess_from_name("bogus"), ConfigError);
}

TEST_CASE("panel construction enforces alignment and unique names") {
    const TimeSeries a = make_series("a", 0, 1, ramp(10));
    const TimeSeries b = make_series("b", 0, 1, ramp(10, 5));
    const Panel p = make_panel({a, b});
    CHECK(p.size() == 2);
    CHECK(p.length() == 10);
    CHECK(p.find("b") != nullptr);
    CHECK(p.find("zz") == nullptr);

    CHECK_THROWS_AS(make_panel({a}), DataError);
    const TimeSeries shifted = make_series("c", 1, 1, ramp(10));
    CHECK_THROWS_AS(make_panel({a, shifted}), AlignmentError);
    const TimeSeries shorter = make_series("c", 0, 1, ramp(9));
    CHECK_THROWS_AS(make_panel({a, shorter}), AlignmentError);
    const TimeSeries dup = make_series("a", 0, 1, ramp(10));
    CHECK_THROWS_AS(make_panel({a, dup}), NameError);
}

TEST_CASE("panel preprocess applies to every member") {
    const Panel p = make_panel({make_series("a", 0, 1, ramp(10)),
                                make_series("b", 0, 1, ramp(10, 2, 3))});
    const Panel d = preprocess(p, Preprocess::diff);
    CHECK(d.length() == 9);
    CHECK(d[0].values[0] == 1.0);
    CHECK(d[1].values[0] == 3.0);
    CHECK(d[0].t0 == 1);
}

TEST_CASE("weight series validation") {
    CHECK_THROWS_AS(make_weight_series("w", {0, 0, 2}, {1, 2, 3}), DataError);
    CHECK_THROWS_AS(make_weight_series("w", {0, 2}, {1, -2}), DomainError);
    CHECK_THROWS_AS(make_weight_series("w", {0, 2}, {1, 0}), DomainError);
    CHECK_THROWS_AS(make_weight_series("w", {}, {}), DataError);
    const WeightSeries w = make_weight_series("w", {0, 2, 10}, {1, 2, 3});
    CHECK(w.size() == 3);
}

TEST_CASE("weights resample by carrying the last observation forward") {
    const WeightSeries w = make_weight_series("w", {0, 4, 8}, {1.0, 2.0, 5.0});
    CHECK(weight_at(w, 0) == 1.0);
    CHECK(weight_at(w, 3) == 1.0);
    CHECK(weight_at(w, 4) == 2.0);
    CHECK(weight_at(w, 100) == 5.0);
    CHECK_THROWS_AS(weight_at(w, -1), CoverageError);

    const std::vector<double> r = resample_weights(w, 0, 2, 6);
    const std::vector<double> expect{1.0, 1.0, 2.0, 2.0, 5.0, 5.0};
    CHECK(r == expect);
    CHECK_THROWS_AS(resample_weights(w, -2, 2, 4), CoverageError);
}

TEST_CASE("mean and sample_std") {
    const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
    CHECK(mean(v) == doctest::Approx(5.0));
    CHECK(sample_std(v) == doctest::Approx(std::sqrt(32.0 / 7.0)).epsilon(1e-14));
}
