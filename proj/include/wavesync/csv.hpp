#pragma once

#include <string>
#include <vector>

#include "wavesync/timeseries.hpp"

namespace wavesync {

// Series CSV: header row, first column a timestamp (integer index, YYYY-MM-DD
// or YYYY-MM), one value column per series, comma separated, UTF-8.
// Dates become month indices when every row shares the day of month (monthly,
// quarterly, yearly data), day indices otherwise; spacing must be uniform.
std::vector<TimeSeries> load_series_csv(const std::string& path);

// Weight CSV: same timestamp column, one named weight column per panel member
// (a plain timestamp,value file is the single-member case). Timestamps must be
// strictly increasing but need not be uniform.
std::vector<WeightSeries> load_weights_csv(const std::string& path);

// Writes series sharing one time axis. Numbers are printed with 17 significant
// digits so a load/write cycle is byte-identical.
void write_series_csv(const std::string& path, const std::vector<TimeSeries>& series);

// Renders a timestamp in the form the loaders accept (ISO date for calendar
// units, plain integer otherwise).
std::string format_timestamp(std::int64_t t, TimeUnit unit);

// Inverse of format_timestamp: integer, YYYY-MM (month unit) or YYYY-MM-DD
// (day unit). ConfigError on anything else.
std::int64_t parse_timestamp(const std::string& text, TimeUnit unit);

// 17-significant-digit representation that round-trips doubles exactly.
std::string format_double(double v);

// Writes to <path>.tmp in the same directory, then renames into place.
void atomic_write_file(const std::string& path, const std::string& contents);

} // namespace wavesync
