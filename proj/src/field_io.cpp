#include "wavesync/field_io.hpp"

#include <cmath>

#include "wavesync/csv.hpp"
#include "wavesync/errors.hpp"

namespace wavesync {
namespace {

std::string cell_text(double v) {
    return std::isnan(v) ? std::string("nan") : format_double(v);
}

// Upper bound on rendered size: ~26 bytes per numeric cell.
std::size_t reserve_hint(std::size_t rows, std::size_t cols) {
    return rows * (cols + 1) * 26;
}

} // namespace

std::string render_field_csv(const ScalarField& geom,
                             const std::vector<FieldColumn>& columns) {
    const std::size_t ns = geom.num_scales(), n = geom.n;
    for (const auto& c : columns) {
        if (!c.values) throw ConfigError("field column '" + c.name + "' has no data");
        if (c.values->size() != ns * n && c.values->size() != ns)
            throw SizeError("field column '" + c.name + "' does not match the grid");
    }
    std::string out;
    out.reserve(reserve_hint(ns * n, columns.size() + 2));
    out += "time,period";
    for (const auto& c : columns) {
        out += ',';
        out += c.name;
    }
    out += '\n';
    for (std::size_t k = 0; k < ns; ++k) {
        const std::string period = format_double(scale_to_period(geom.grid.scales[k], geom.params));
        for (std::size_t i = 0; i < n; ++i) {
            out += format_timestamp(geom.t0 + static_cast<std::int64_t>(i) * geom.step,
                                    geom.unit);
            out += ',';
            out += period;
            for (const auto& c : columns) {
                out += ',';
                out += cell_text(c.values->size() == ns ? (*c.values)[k]
                                                        : (*c.values)[k * n + i]);
            }
            out += '\n';
        }
    }
    return out;
}

std::string render_field_grid_csv(const ScalarField& geom,
                                  const std::vector<double>& cells) {
    const std::size_t ns = geom.num_scales(), n = geom.n;
    if (cells.size() != ns * n)
        throw SizeError("grid export does not match the field geometry");
    std::string out;
    out.reserve(reserve_hint(ns, n + 1));
    out += "period";
    for (std::size_t i = 0; i < n; ++i) {
        out += ',';
        out += format_timestamp(geom.t0 + static_cast<std::int64_t>(i) * geom.step,
                                geom.unit);
    }
    out += '\n';
    for (std::size_t k = 0; k < ns; ++k) {
        out += format_double(scale_to_period(geom.grid.scales[k], geom.params));
        for (std::size_t i = 0; i < n; ++i) {
            out += ',';
            out += cell_text(cells[k * n + i]);
        }
        out += '\n';
    }
    return out;
}

ScalarField field_geometry(const WaveletField& f) {
    ScalarField g;
    g.name = "power";
    g.series_i = f.series_name;
    g.t0 = f.t0;
    g.step = f.step;
    g.unit = f.unit;
    g.dt = f.dt;
    g.n = f.n;
    g.params = f.params;
    g.grid = f.grid;
    g.coi = f.coi;
    return g;
}

std::string render_wavelet_csv(const WaveletField& f) {
    const std::size_t cells = f.grid.size() * f.n;
    std::vector<double> re(cells), im(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        re[c] = f.w[c].real();
        im[c] = f.w[c].imag();
    }
    return render_field_csv(field_geometry(f), {{"re", &re}, {"im", &im}});
}

std::string render_wavelet_grid_csv(const WaveletField& f) {
    // Matrix layout cannot hold two numbers per cell; emit modulus.
    std::vector<double> mod(f.grid.size() * f.n);
    for (std::size_t c = 0; c < mod.size(); ++c) mod[c] = std::abs(f.w[c]);
    return render_field_grid_csv(field_geometry(f), mod);
}

} // namespace wavesync
