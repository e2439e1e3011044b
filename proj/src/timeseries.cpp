#include "wavesync/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wavesync/errors.hpp"

namespace wavesync {

std::string time_unit_name(TimeUnit u) {
    switch (u) {
        case TimeUnit::day: return "day";
        case TimeUnit::month: return "month";
        default: return "index";
    }
}

TimeUnit time_unit_from_name(const std::string& s) {
    if (s == "day") return TimeUnit::day;
    if (s == "month") return TimeUnit::month;
    if (s == "index") return TimeUnit::index;
    throw ConfigError("unknown time unit: " + s);
}

TimeSeries make_series(std::string name, std::int64_t t0, std::int64_t step,
                       std::vector<double> values, TimeUnit unit) {
    if (values.size() < 8)
        throw TooShort("series '" + name + "' has " + std::to_string(values.size()) +
                       " samples, need at least 8");
    if (step <= 0)
        throw SamplingError("series '" + name + "' has non-positive sampling step");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw DataError("series '" + name + "' has a non-finite value at row " +
                            std::to_string(i));
    TimeSeries s;
    s.name = std::move(name);
    s.t0 = t0;
    s.step = step;
    s.unit = unit;
    s.values = std::move(values);
    return s;
}

const TimeSeries* Panel::find(const std::string& name) const {
    for (const auto& m : members)
        if (m.name == name) return &m;
    return nullptr;
}

Panel make_panel(std::vector<TimeSeries> members) {
    if (members.size() < 2)
        throw DataError("a panel needs at least 2 members, got " +
                        std::to_string(members.size()));
    const TimeSeries& ref = members.front();
    for (const auto& m : members) {
        if (m.t0 != ref.t0 || m.step != ref.step || m.size() != ref.size() ||
            m.unit != ref.unit)
            throw AlignmentError("panel member '" + m.name +
                                 "' is not aligned with '" + ref.name + "'");
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (members[i].name == members[j].name)
                throw NameError("duplicate panel member name '" + members[i].name + "'");
    Panel p;
    p.members = std::move(members);
    return p;
}

std::string preprocess_name(Preprocess p) {
    switch (p) {
        case Preprocess::diff: return "diff";
        case Preprocess::log_diff: return "log_diff";
        case Preprocess::standardize: return "standardize";
        default: return "none";
    }
}

Preprocess preprocess_from_name(const std::string& s) {
    if (s == "none") return Preprocess::none;
    if (s == "diff") return Preprocess::diff;
    if (s == "log_diff" || s == "log-diff") return Preprocess::log_diff;
    if (s == "standardize") return Preprocess::standardize;
    throw ConfigError("unknown preprocess mode: " + s);
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

TimeSeries preprocess(const TimeSeries& x, Preprocess mode) {
    switch (mode) {
        case Preprocess::none:
            return x;
        case Preprocess::diff: {
            std::vector<double> d(x.size() - 1);
            for (std::size_t i = 0; i + 1 < x.size(); ++i)
                d[i] = x.values[i + 1] - x.values[i];
            return make_series(x.name, x.t0 + x.step, x.step, std::move(d), x.unit);
        }
        case Preprocess::log_diff: {
            std::vector<double> d(x.size() - 1);
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x.values[i] <= 0.0)
                    throw DomainError("log_diff needs positive values; series '" +
                                      x.name + "' row " + std::to_string(i));
            for (std::size_t i = 0; i + 1 < x.size(); ++i)
                d[i] = std::log(x.values[i + 1]) - std::log(x.values[i]);
            return make_series(x.name, x.t0 + x.step, x.step, std::move(d), x.unit);
        }
        case Preprocess::standardize: {
            const double m = mean(x.values);
            const double sd = sample_std(x.values);
            if (!(sd > 0.0))
                throw DegenerateError("cannot standardize constant series '" + x.name + "'");
            std::vector<double> d(x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                d[i] = (x.values[i] - m) / sd;
            return make_series(x.name, x.t0, x.step, std::move(d), x.unit);
        }
    }
    throw ConfigError("unhandled preprocess mode");
}

Panel preprocess(const Panel& p, Preprocess mode) {
    if (mode == Preprocess::none) return p;
    std::vector<TimeSeries> out;
    out.reserve(p.size());
    for (const auto& m : p.members) out.push_back(preprocess(m, mode));
    return make_panel(std::move(out));
}

WeightSeries make_weight_series(std::string name, std::vector<std::int64_t> times,
                                std::vector<double> values) {
    if (times.size() != values.size())
        throw DataError("weight series '" + name + "': times/values size mismatch");
    if (times.empty())
        throw DataError("weight series '" + name + "' is empty");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw DataError("weight series '" + name +
                            "': timestamps must be strictly increasing (row " +
                            std::to_string(i) + ")");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw DataError("weight series '" + name + "' has a non-finite value");
        if (values[i] <= 0.0)
            throw DomainError("weight series '" + name +
                              "' has a non-positive weight at row " + std::to_string(i));
    }
    WeightSeries w;
    w.name = std::move(name);
    w.times = std::move(times);
    w.values = std::move(values);
    return w;
}

double weight_at(const WeightSeries& w, std::int64_t t) {
    auto it = std::upper_bound(w.times.begin(), w.times.end(), t);
    if (it == w.times.begin())
        throw CoverageError("weight series '" + w.name +
                            "' starts after requested time " + std::to_string(t));
    return w.values[static_cast<std::size_t>(it - w.times.begin()) - 1];
}

std::vector<double> resample_weights(const WeightSeries& w, std::int64_t t0,
                                     std::int64_t step, std::size_t n) {
    if (step <= 0) throw SamplingError("resample_weights: non-positive step");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = weight_at(w, t0 + static_cast<std::int64_t>(i) * step);
    return out;
}

} // namespace wavesync
