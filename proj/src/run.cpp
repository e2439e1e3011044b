#include "wavesync/run.hpp"

#include <cmath>
#include <utility>

#include "json.hpp"

#include "wavesync/csv.hpp"
#include "wavesync/errors.hpp"
#include "wavesync/field_io.hpp"
#include "wavesync/significance.hpp"

namespace wavesync {
namespace {

using ordered_json = nlohmann::ordered_json;

struct SchemeText {
    WeightSchemeKind kind = WeightSchemeKind::equal;
    std::string anchor; // unparsed; unit known only once the panel is loaded
};

bool parse_scheme_text(const std::string& s, SchemeText& out) {
    if (s == "equal") {
        out.kind = WeightSchemeKind::equal;
        return true;
    }
    if (s == "tv" || s == "time-varying" || s == "time_varying") {
        out.kind = WeightSchemeKind::time_varying;
        return true;
    }
    if (s.rfind("fixed:", 0) == 0 && s.size() > 6) {
        out.kind = WeightSchemeKind::fixed;
        out.anchor = s.substr(6);
        return true;
    }
    return false;
}

bool synth_uses_randomness(const SynthSpec& s) {
    switch (s.kind) {
        case SynthSpec::Kind::segmented_sines: return s.noise_std > 0.0;
        case SynthSpec::Kind::pure_sine: return false;
        case SynthSpec::Kind::white_noise: return s.sigma > 0.0;
        case SynthSpec::Kind::ar1: return s.sigma > 0.0;
        default: return true; // lagged_noise, random_walk_pair
    }
}

std::string grid_path(const std::string& out) {
    const std::string ext = ".csv";
    if (out.size() > ext.size() &&
        out.compare(out.size() - ext.size(), ext.size(), ext) == 0)
        return out.substr(0, out.size() - ext.size()) + ".grid.csv";
    return out + ".grid.csv";
}

std::vector<TimeSeries> select_series(std::vector<TimeSeries> all,
                                      const std::vector<std::string>& wanted) {
    if (wanted.empty()) return all;
    std::vector<TimeSeries> out;
    out.reserve(wanted.size());
    for (const auto& name : wanted) {
        bool found = false;
        for (auto& s : all)
            if (s.name == name) {
                out.push_back(std::move(s));
                found = true;
                break;
            }
        if (!found) throw NameError("no series named '" + name + "' in the input");
    }
    return out;
}

ordered_json synth_to_json(const SynthSpec& s) {
    ordered_json j;
    j["kind"] = synth_kind_name(s.kind);
    j["n"] = s.n;
    j["seed"] = s.seed;
    j["noise_std"] = s.noise_std;
    j["period"] = s.period;
    j["phase"] = s.phase;
    j["sigma"] = s.sigma;
    j["alpha"] = s.alpha;
    return j;
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = command_name(cfg.command);
    j["input"] = cfg.input;
    j["columns"] = cfg.columns;
    j["weights"] = cfg.weights;
    j["scheme"] = cfg.scheme;
    j["preprocess"] = preprocess_name(cfg.preprocess);
    j["omega0"] = cfg.omega0;
    j["envelope_var"] = cfg.envelope_var;
    j["s0"] = cfg.s0;
    j["dj"] = cfg.dj;
    j["smooth_time"] = cfg.smooth_time;
    j["smooth_scale"] = cfg.smooth_scale;
    j["mc_draws"] = cfg.mc_draws;
    j["bootstrap_draws"] = cfg.bootstrap_draws;
    if (cfg.seed)
        j["seed"] = *cfg.seed;
    else
        j["seed"] = nullptr;
    j["level"] = cfg.level;
    j["synth"] = synth_to_json(cfg.synth);
    j["out"] = cfg.out;
    j["grid"] = cfg.grid;
    return j;
}

ordered_json conventions_json() {
    ordered_json j;
    j["phase_sign"] = "positive phase: the first selected series leads";
    j["phase_range"] = "[-pi, pi]; CI bounds may exceed it (never re-wrapped)";
    j["coi"] = "maximum edge-effect-free period per sample; cells with period "
               "above it are contaminated by zero padding";
    j["undefined_cells"] = "printed as nan";
    j["period"] = "Fourier period = fourier factor * scale, in base time units";
    return j;
}

ordered_json geometry_json(const ScalarField& g) {
    std::vector<double> periods(g.num_scales());
    for (std::size_t k = 0; k < g.num_scales(); ++k)
        periods[k] = scale_to_period(g.grid.scales[k], g.params);
    ordered_json j;
    j["series"] = ordered_json::array();
    j["time"] = {{"t0", g.t0}, {"step", g.step}, {"unit", time_unit_name(g.unit)}};
    j["grid"] = {{"s0", g.grid.s0}, {"dj", g.grid.dj}, {"scales", g.grid.scales},
                 {"periods", periods}};
    j["coi"] = g.coi;
    return j;
}

void write_sidecar(const std::string& out_path, ordered_json j,
                   std::vector<std::string>& files) {
    const std::string path = out_path + ".json";
    files.push_back(path);
    j["files"] = files;
    atomic_write_file(path, j.dump(2) + "\n");
}

} // namespace

std::string command_name(Command c) {
    switch (c) {
        case Command::transform: return "transform";
        case Command::coherence: return "coherence";
        case Command::phase: return "phase";
        case Command::rho: return "rho";
        case Command::cohesion: return "cohesion";
        default: return "synth";
    }
}

Command command_from_name(const std::string& s) {
    if (s == "transform") return Command::transform;
    if (s == "coherence") return Command::coherence;
    if (s == "phase") return Command::phase;
    if (s == "rho") return Command::rho;
    if (s == "cohesion") return Command::cohesion;
    if (s == "synth") return Command::synth;
    throw ConfigError("unknown command '" + s + "'");
}

std::vector<std::string> validate(const RunConfig& cfg) {
    std::vector<std::string> v;
    if (!(cfg.omega0 >= 5.0)) v.push_back("morlet.omega0");
    if (!(cfg.envelope_var > 0.0)) v.push_back("morlet.envelope_var");
    if (!(cfg.dj > 0.0) || cfg.dj > 0.25) v.push_back("scale.dj");
    // Integer-step axes make dt >= 1, so any positive s0 below 2 must fail;
    // the full s0 >= 2*dt check runs once the input's dt is known.
    if (cfg.s0 != 0.0 && cfg.s0 < 2.0) v.push_back("scale.s0");
    if (!(cfg.smooth_time >= 0.0)) v.push_back("smoothing.time");
    if (!(cfg.smooth_scale >= 0.0)) v.push_back("smoothing.scale");
    if (!(cfg.level > 0.0 && cfg.level < 1.0)) v.push_back("significance.level");
    if (cfg.mc_draws > 0 && !cfg.seed) v.push_back("significance.seed");
    if (cfg.mc_draws > 0 && cfg.command != Command::coherence)
        v.push_back("significance.mc_draws");
    if (cfg.bootstrap_draws == 0 && cfg.seed &&
        (cfg.command == Command::coherence || cfg.command == Command::phase))
        v.push_back("significance.bootstrap_draws");
    if (cfg.out.empty()) v.push_back("output.path");

    if (cfg.command == Command::synth) {
        const SynthSpec& s = cfg.synth;
        if (s.n != 0 && s.n < 8) v.push_back("synth.n");
        if (!(s.noise_std >= 0.0)) v.push_back("synth.noise_std");
        if (s.kind == SynthSpec::Kind::pure_sine && !(s.period > 0.0))
            v.push_back("synth.period");
        if ((s.kind == SynthSpec::Kind::white_noise ||
             s.kind == SynthSpec::Kind::ar1) &&
            !(s.sigma >= 0.0))
            v.push_back("synth.sigma");
        if (s.kind == SynthSpec::Kind::ar1 && !(std::abs(s.alpha) < 1.0))
            v.push_back("synth.alpha");
        if (synth_uses_randomness(s) && !cfg.seed) v.push_back("synth.seed");
        return v;
    }

    if (cfg.input.empty()) v.push_back("input.path");
    switch (cfg.command) {
        case Command::transform:
            if (!cfg.columns.empty() && cfg.columns.size() != 1)
                v.push_back("input.columns");
            break;
        case Command::coherence:
        case Command::phase:
        case Command::rho:
            if (!cfg.columns.empty() && cfg.columns.size() != 2)
                v.push_back("input.columns");
            break;
        case Command::cohesion: {
            if (!cfg.columns.empty() && cfg.columns.size() < 2)
                v.push_back("panel.size");
            SchemeText st;
            if (!parse_scheme_text(cfg.scheme, st))
                v.push_back("cohesion.scheme");
            else if (st.kind != WeightSchemeKind::equal && cfg.weights.empty())
                v.push_back("cohesion.weights");
            break;
        }
        default: break;
    }
    return v;
}

std::string config_to_json(const RunConfig& cfg) {
    return config_json(cfg).dump(2);
}

RunConfig config_from_sidecar(const std::string& sidecar_json) {
    ordered_json root;
    try {
        root = ordered_json::parse(sidecar_json);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("cannot parse sidecar JSON: ") + e.what());
    }
    const ordered_json& j = root.contains("config") ? root["config"] : root;
    try {
        RunConfig cfg;
        cfg.command = command_from_name(j.value("command", std::string("transform")));
        cfg.input = j.value("input", std::string());
        cfg.columns = j.value("columns", std::vector<std::string>{});
        cfg.weights = j.value("weights", std::string());
        cfg.scheme = j.value("scheme", std::string("equal"));
        cfg.preprocess = preprocess_from_name(j.value("preprocess", std::string("none")));
        cfg.omega0 = j.value("omega0", 6.0);
        cfg.envelope_var = j.value("envelope_var", 0.5);
        cfg.s0 = j.value("s0", 0.0);
        cfg.dj = j.value("dj", 1.0 / 12.0);
        cfg.smooth_time = j.value("smooth_time", 1.0);
        cfg.smooth_scale = j.value("smooth_scale", 0.6);
        cfg.mc_draws = j.value("mc_draws", std::size_t{0});
        cfg.bootstrap_draws = j.value("bootstrap_draws", std::size_t{1000});
        if (j.contains("seed") && !j["seed"].is_null())
            cfg.seed = j["seed"].get<std::uint64_t>();
        cfg.level = j.value("level", 0.95);
        if (j.contains("synth")) {
            const ordered_json& s = j["synth"];
            cfg.synth.kind =
                synth_kind_from_name(s.value("kind", std::string("segmented_sines")));
            cfg.synth.n = s.value("n", std::size_t{0});
            cfg.synth.seed = s.value("seed", std::uint64_t{0});
            cfg.synth.noise_std = s.value("noise_std", 0.1);
            cfg.synth.period = s.value("period", 32.0);
            cfg.synth.phase = s.value("phase", 0.0);
            cfg.synth.sigma = s.value("sigma", 1.0);
            cfg.synth.alpha = s.value("alpha", 0.5);
        }
        cfg.out = j.value("out", std::string());
        cfg.grid = j.value("grid", false);
        return cfg;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("malformed sidecar config: ") + e.what());
    }
}

RunResult run(const RunConfig& cfg) {
    {
        const std::vector<std::string> violations = validate(cfg);
        if (!violations.empty()) {
            std::string msg = "invalid configuration:";
            for (const auto& f : violations) msg += " " + f;
            throw ConfigError(msg);
        }
    }
    // Normalized copy echoed into the sidecar: one --seed drives everything.
    RunConfig eff = cfg;
    if (eff.seed) eff.synth.seed = *eff.seed;

    RunResult res;
    ordered_json sidecar;
    sidecar["tool"] = "wavesync";
    sidecar["config"] = config_json(eff);

    if (eff.command == Command::synth) {
        const std::vector<TimeSeries> series = generate(eff.synth);
        write_series_csv(eff.out, series);
        res.files.push_back(eff.out);
        ordered_json names = ordered_json::array();
        for (const auto& s : series) names.push_back(s.name);
        sidecar["series"] = names;
        write_sidecar(eff.out, std::move(sidecar), res.files);
        return res;
    }

    std::vector<TimeSeries> selected =
        select_series(load_series_csv(eff.input), eff.columns);
    const MorletParams mp{eff.omega0, eff.envelope_var};
    const SmoothingSpec sp{eff.smooth_time, eff.smooth_scale};

    if (eff.command == Command::transform) {
        if (selected.size() != 1)
            throw ConfigError("transform needs exactly one series; found " +
                              std::to_string(selected.size()) +
                              " (use --columns to pick one)");
        const TimeSeries x = preprocess(selected.front(), eff.preprocess);
        const ScaleGrid grid = make_scale_grid(x.size(), x.dt(), eff.s0, eff.dj);
        const WaveletField w = transform(x, grid, mp);
        atomic_write_file(eff.out, render_wavelet_csv(w));
        res.files.push_back(eff.out);
        if (eff.grid) {
            atomic_write_file(grid_path(eff.out), render_wavelet_grid_csv(w));
            res.files.push_back(grid_path(eff.out));
        }
        ordered_json geom = geometry_json(field_geometry(w));
        geom["series"] = {x.name};
        sidecar.update(geom);
        sidecar["conventions"] = conventions_json();
        write_sidecar(eff.out, std::move(sidecar), res.files);
        return res;
    }

    if (eff.command == Command::cohesion) {
        Panel panel = make_panel(std::move(selected));
        panel = preprocess(panel, eff.preprocess);
        SchemeText st;
        parse_scheme_text(eff.scheme, st); // validated already
        WeightScheme scheme{st.kind, 0};
        std::vector<WeightSeries> weights;
        if (st.kind != WeightSchemeKind::equal) {
            weights = load_weights_csv(eff.weights);
            if (st.kind == WeightSchemeKind::fixed)
                scheme.anchor = parse_timestamp(st.anchor, panel[0].unit);
        }
        const CohesionOptions opts{mp, sp, eff.s0, eff.dj};
        const ScalarField field = cohesion(panel, weights, scheme, opts);
        atomic_write_file(eff.out, render_field_csv(field, {{"cohesion", &field.values}}));
        res.files.push_back(eff.out);
        if (eff.grid) {
            atomic_write_file(grid_path(eff.out), render_field_grid_csv(field, field.values));
            res.files.push_back(grid_path(eff.out));
        }
        ordered_json geom = geometry_json(field);
        ordered_json names = ordered_json::array();
        for (const auto& m : panel.members) names.push_back(m.name);
        geom["series"] = names;
        sidecar.update(geom);
        sidecar["conventions"] = conventions_json();
        write_sidecar(eff.out, std::move(sidecar), res.files);
        return res;
    }

    // Pair commands: coherence, phase, rho.
    if (selected.size() != 2)
        throw ConfigError(command_name(eff.command) +
                          " needs exactly two series; found " +
                          std::to_string(selected.size()) +
                          " (use --columns to pick two)");
    Panel panel = make_panel(std::move(selected));
    panel = preprocess(panel, eff.preprocess);
    const TimeSeries& xi = panel[0];
    const TimeSeries& xj = panel[1];
    const ScaleGrid grid = make_scale_grid(xi.size(), xi.dt(), eff.s0, eff.dj);
    const PairFields pf =
        analyze_pair(transform(xi, grid, mp), transform(xj, grid, mp), sp);

    std::vector<FieldColumn> cols;
    std::vector<double> thr, sig_mask; // keep alive until rendered
    PhaseCi ci;
    const ScalarField* geometry = nullptr;
    const std::vector<double>* grid_values = nullptr;

    if (eff.command == Command::coherence) {
        geometry = &pf.r2;
        grid_values = &pf.r2.values;
        cols.push_back({"r2", &pf.r2.values});
        if (eff.mc_draws > 0) {
            const SignificanceResult sig = coherence_significance(
                xi, xj, grid, mp, sp, {eff.mc_draws, *eff.seed, eff.level, 4096});
            thr = sig.threshold;
            sig_mask.assign(sig.mask.begin(), sig.mask.end());
            cols.push_back({"sig_threshold", &thr});
            cols.push_back({"significant", &sig_mask});
        }
        cols.push_back({"phase", &pf.phase.values});
    } else if (eff.command == Command::phase) {
        geometry = &pf.phase;
        grid_values = &pf.phase.values;
        cols.push_back({"phase", &pf.phase.values});
    } else {
        geometry = &pf.rho;
        grid_values = &pf.rho.values;
        cols.push_back({"rho", &pf.rho.values});
    }

    if (eff.seed &&
        (eff.command == Command::coherence || eff.command == Command::phase)) {
        ci = phase_bootstrap(xi, xj, grid, mp, sp,
                             {eff.bootstrap_draws, *eff.seed, eff.level, 0.05, 256});
        cols.push_back({"ci_lo", &ci.lo});
        cols.push_back({"ci_hi", &ci.hi});
    }

    atomic_write_file(eff.out, render_field_csv(*geometry, cols));
    res.files.push_back(eff.out);
    if (eff.grid) {
        atomic_write_file(grid_path(eff.out), render_field_grid_csv(*geometry, *grid_values));
        res.files.push_back(grid_path(eff.out));
    }
    ordered_json geom = geometry_json(*geometry);
    geom["series"] = {xi.name, xj.name};
    sidecar.update(geom);
    sidecar["conventions"] = conventions_json();
    if (eff.mc_draws > 0)
        sidecar["significance"] = {{"draws", eff.mc_draws},
                                   {"seed", *eff.seed},
                                   {"level", eff.level}};
    if (!ci.lo.empty())
        sidecar["bootstrap"] = {{"draws", eff.bootstrap_draws},
                                {"seed", *eff.seed},
                                {"level", eff.level},
                                {"noise_fraction", 0.05}};
    write_sidecar(eff.out, std::move(sidecar), res.files);
    return res;
}

} // namespace wavesync
