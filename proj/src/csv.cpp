#include "wavesync/csv.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wavesync/errors.hpp"

namespace wavesync {
namespace {

// Howard Hinnant's civil-date algorithms (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && (std::isspace(static_cast<unsigned char>(s[a])) != 0)) ++a;
    while (b > a && (std::isspace(static_cast<unsigned char>(s[b - 1])) != 0)) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool parse_int(const std::string& s, std::int64_t& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k)
        if (std::isdigit(static_cast<unsigned char>(s[k])) == 0) return false;
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) return false;
    out = v;
    return true;
}

struct CivilStamp {
    std::int64_t year = 0;
    unsigned month = 1, day = 1;
    bool has_day = false;
};

bool parse_date(const std::string& s, CivilStamp& out) {
    // YYYY-MM or YYYY-MM-DD
    int y = 0, m = 0, d = 0, consumed = 0;
    if (std::sscanf(s.c_str(), "%d-%d-%d%n", &y, &m, &d, &consumed) == 3 &&
        consumed == static_cast<int>(s.size())) {
        if (m < 1 || m > 12 || d < 1 || d > 31) return false;
        out = {y, static_cast<unsigned>(m), static_cast<unsigned>(d), true};
        return true;
    }
    if (std::sscanf(s.c_str(), "%d-%d%n", &y, &m, &consumed) == 2 &&
        consumed == static_cast<int>(s.size())) {
        if (m < 1 || m > 12) return false;
        out = {y, static_cast<unsigned>(m), 1, false};
        return true;
    }
    return false;
}

double parse_value(const std::string& s, const std::string& context) {
    if (s.empty()) throw DataError("empty value " + context);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw DataError("cannot parse number '" + s + "' " + context);
    return v;
}

struct ParsedTable {
    std::vector<std::string> names;        // value column names
    std::vector<std::int64_t> times;       // converted timestamps
    std::vector<std::vector<double>> cols; // one vector per value column
    TimeUnit unit = TimeUnit::index;
};

ParsedTable parse_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError("'" + path + "' is empty");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB &&
        static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2)
        throw DataError("'" + path + "': need a timestamp column and at least one value column");

    ParsedTable t;
    t.names.assign(header.begin() + 1, header.end());
    for (std::size_t i = 0; i < t.names.size(); ++i) {
        if (t.names[i].empty())
            throw NameError("'" + path + "': empty column name in header");
        for (std::size_t j = i + 1; j < t.names.size(); ++j)
            if (t.names[i] == t.names[j])
                throw NameError("'" + path + "': duplicate column name '" + t.names[i] + "'");
    }
    t.cols.resize(t.names.size());

    std::vector<std::string> raw_stamps;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw DataError("'" + path + "' row " + std::to_string(row) + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()));
        raw_stamps.push_back(cells[0]);
        for (std::size_t c = 0; c < t.names.size(); ++c)
            t.cols[c].push_back(parse_value(
                cells[c + 1], "in '" + path + "' row " + std::to_string(row) +
                                  " column '" + t.names[c] + "'"));
    }
    if (raw_stamps.empty()) throw DataError("'" + path + "' has no data rows");

    // Timestamp representation: integers pass through; dates become month
    // indices when every row shares the day of month, day indices otherwise.
    std::vector<std::int64_t> as_int(raw_stamps.size());
    bool all_int = true;
    for (std::size_t i = 0; i < raw_stamps.size() && all_int; ++i)
        all_int = parse_int(raw_stamps[i], as_int[i]);
    if (all_int) {
        t.times = std::move(as_int);
        t.unit = TimeUnit::index;
        return t;
    }
    std::vector<CivilStamp> stamps(raw_stamps.size());
    for (std::size_t i = 0; i < raw_stamps.size(); ++i)
        if (!parse_date(raw_stamps[i], stamps[i]))
            throw DataError("'" + path + "': cannot parse timestamp '" + raw_stamps[i] + "'");
    bool same_day = true;
    for (std::size_t i = 1; i < stamps.size(); ++i)
        same_day = same_day && stamps[i].day == stamps[0].day;
    t.times.resize(stamps.size());
    if (same_day) {
        for (std::size_t i = 0; i < stamps.size(); ++i)
            t.times[i] = stamps[i].year * 12 + (stamps[i].month - 1);
        t.unit = TimeUnit::month;
    } else {
        for (std::size_t i = 0; i < stamps.size(); ++i)
            t.times[i] = days_from_civil(stamps[i].year, stamps[i].month, stamps[i].day);
        t.unit = TimeUnit::day;
    }
    return t;
}

} // namespace

std::vector<TimeSeries> load_series_csv(const std::string& path) {
    ParsedTable t = parse_table(path);
    if (t.times.size() < 2)
        throw TooShort("'" + path + "': need at least 2 rows to infer the sampling step");
    const std::int64_t step = t.times[1] - t.times[0];
    if (step <= 0)
        throw SamplingError("'" + path + "': timestamps must be strictly increasing");
    for (std::size_t i = 1; i < t.times.size(); ++i)
        if (t.times[i] - t.times[i - 1] != step)
            throw SamplingError("'" + path + "': irregular sampling at row " +
                                std::to_string(i + 1) + " (gap or duplicate)");
    std::vector<TimeSeries> out;
    out.reserve(t.names.size());
    for (std::size_t c = 0; c < t.names.size(); ++c)
        out.push_back(make_series(t.names[c], t.times[0], step, std::move(t.cols[c]), t.unit));
    return out;
}

std::vector<WeightSeries> load_weights_csv(const std::string& path) {
    ParsedTable t = parse_table(path);
    std::vector<WeightSeries> out;
    out.reserve(t.names.size());
    for (std::size_t c = 0; c < t.names.size(); ++c)
        out.push_back(make_weight_series(t.names[c], t.times, std::move(t.cols[c])));
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_timestamp(std::int64_t t, TimeUnit unit) {
    char buf[32];
    switch (unit) {
        case TimeUnit::month: {
            std::int64_t y = t >= 0 ? t / 12 : (t - 11) / 12;
            const unsigned m = static_cast<unsigned>(t - y * 12) + 1;
            std::snprintf(buf, sizeof buf, "%04" PRId64 "-%02u", y, m);
            return buf;
        }
        case TimeUnit::day: {
            std::int64_t y;
            unsigned m, d;
            civil_from_days(t, y, m, d);
            std::snprintf(buf, sizeof buf, "%04" PRId64 "-%02u-%02u", y, m, d);
            return buf;
        }
        default:
            std::snprintf(buf, sizeof buf, "%" PRId64, t);
            return buf;
    }
}

std::int64_t parse_timestamp(const std::string& text, TimeUnit unit) {
    std::int64_t as_int = 0;
    if (parse_int(text, as_int)) return as_int;
    CivilStamp stamp;
    if (parse_date(text, stamp)) {
        if (unit == TimeUnit::month)
            return stamp.year * 12 + static_cast<std::int64_t>(stamp.month) - 1;
        if (unit == TimeUnit::day)
            return days_from_civil(stamp.year, stamp.month, stamp.day);
    }
    throw ConfigError("cannot parse timestamp '" + text + "' for unit " +
                      time_unit_name(unit));
}

void atomic_write_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + tmp + "'");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw ConfigError("short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ConfigError("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

void write_series_csv(const std::string& path, const std::vector<TimeSeries>& series) {
    if (series.empty()) throw ConfigError("write_series_csv: no series");
    const TimeSeries& ref = series.front();
    for (const auto& s : series)
        if (s.t0 != ref.t0 || s.step != ref.step || s.size() != ref.size() ||
            s.unit != ref.unit)
            throw AlignmentError("write_series_csv: series are not aligned");
    std::ostringstream out;
    out << "timestamp";
    for (const auto& s : series) out << ',' << s.name;
    out << '\n';
    for (std::size_t i = 0; i < ref.size(); ++i) {
        out << format_timestamp(ref.time_at(i), ref.unit);
        for (const auto& s : series) out << ',' << format_double(s.values[i]);
        out << '\n';
    }
    atomic_write_file(path, out.str());
}

} // namespace wavesync
