#pragma once

#include <string>
#include <vector>

#include "wavesync/comovement.hpp"

namespace wavesync {

// One output column of a long-format field CSV. values has either one entry
// per cell (num_scales*n, row-major) or one per scale (broadcast across time).
struct FieldColumn {
    std::string name;
    const std::vector<double>* values = nullptr;
};

// Long format: time,period,<columns...>, one row per (scale, time) cell,
// scales ascending (shortest period first), time inner. 17 significant digits;
// undefined cells print as nan.
std::string render_field_csv(const ScalarField& geom,
                             const std::vector<FieldColumn>& columns);

// Matrix layout for one column: header row "period,<time...>", one row per
// scale.
std::string render_field_grid_csv(const ScalarField& geom,
                                  const std::vector<double>& cells);

// Complex field rendered as re/im columns on the same long format.
std::string render_wavelet_csv(const WaveletField& f);

std::string render_wavelet_grid_csv(const WaveletField& f);

// Borrow a wavelet field's geometry for the renderers above.
ScalarField field_geometry(const WaveletField& f);

} // namespace wavesync
