#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wavesync {

// Time axis bookkeeping. Timestamps are integer counts of a base unit from an
// epoch; calendar arithmetic happens only at the CSV boundary. `month` uses
// year*12 + (month-1), `day` uses days since 1970-01-01, `index` is a plain
// counter.
enum class TimeUnit { index, day, month };

std::string time_unit_name(TimeUnit u);
TimeUnit time_unit_from_name(const std::string& s);

// Uniformly sampled series: sample i sits at t0 + i*step (base units).
struct TimeSeries {
    std::string name;
    std::int64_t t0 = 0;
    std::int64_t step = 1;
    TimeUnit unit = TimeUnit::index;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double dt() const { return static_cast<double>(step); }
    std::int64_t time_at(std::size_t i) const {
        return t0 + static_cast<std::int64_t>(i) * step;
    }
};

// Validating constructor: n >= 8, positive step, finite values.
TimeSeries make_series(std::string name, std::int64_t t0, std::int64_t step,
                       std::vector<double> values, TimeUnit unit = TimeUnit::index);

// Two or more series on an identical time axis with unique names.
struct Panel {
    std::vector<TimeSeries> members;

    std::size_t size() const { return members.size(); }
    std::size_t length() const { return members.empty() ? 0 : members.front().size(); }
    const TimeSeries& operator[](std::size_t i) const { return members[i]; }
    const TimeSeries* find(const std::string& name) const;
};

Panel make_panel(std::vector<TimeSeries> members);

enum class Preprocess { none, diff, log_diff, standardize };

std::string preprocess_name(Preprocess p);
Preprocess preprocess_from_name(const std::string& s);

// diff/log_diff shorten the series by one sample and advance t0 by one step.
// standardize uses the unbiased (n-1) standard deviation.
TimeSeries preprocess(const TimeSeries& x, Preprocess mode);
Panel preprocess(const Panel& p, Preprocess mode);

// Irregularly observed positive weights (strictly increasing timestamps).
struct WeightSeries {
    std::string name;
    std::vector<std::int64_t> times;
    std::vector<double> values;

    std::size_t size() const { return times.size(); }
};

WeightSeries make_weight_series(std::string name, std::vector<std::int64_t> times,
                                std::vector<double> values);

// Last-observation-carried-forward onto a uniform grid; every grid point must
// be covered (first observation at or before t0).
std::vector<double> resample_weights(const WeightSeries& w, std::int64_t t0,
                                     std::int64_t step, std::size_t n);

// LOCF value at a single timestamp.
double weight_at(const WeightSeries& w, std::int64_t t);

double mean(const std::vector<double>& v);
// Unbiased sample standard deviation (n-1 divisor).
double sample_std(const std::vector<double>& v);

} // namespace wavesync
