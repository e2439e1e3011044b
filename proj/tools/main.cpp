#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "wavesync/errors.hpp"
#include "wavesync/run.hpp"

namespace {

int fail(const std::string& category, const std::string& message, int code) {
    nlohmann::ordered_json err;
    err["error"] = {{"category", category}, {"message", message}};
    std::cerr << err.dump() << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavesync: time-frequency co-movement of time series panels"};
    app.require_subcommand(1);

    wavesync::RunConfig cfg;
    std::uint64_t seed_val = 0;
    std::string preprocess_text = "none";
    std::string synth_kind = "segmented_sines";

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "output CSV path (sidecar: <out>.json)")
            ->required();
        sub->add_flag("--grid", cfg.grid, "also write a matrix-layout CSV");
        sub->add_option("--seed", seed_val, "master RNG seed (required for any Monte Carlo)");
    };
    auto add_analysis = [&](CLI::App* sub) {
        sub->add_option("--omega0", cfg.omega0, "Morlet center frequency, >= 5")
            ->capture_default_str();
        sub->add_option("--envelope-var", cfg.envelope_var,
                        "wavelet Gaussian envelope decay (0.5 = standard)")
            ->capture_default_str();
        sub->add_option("--s0", cfg.s0, "smallest scale (0 = default 2*dt)");
        sub->add_option("--dj", cfg.dj, "scale grid step in octaves")
            ->capture_default_str();
        sub->add_option("--smooth-time", cfg.smooth_time,
                        "time smoothing width factor (Gaussian std per scale)")
            ->capture_default_str();
        sub->add_option("--smooth-scale", cfg.smooth_scale,
                        "scale smoothing width in octaves")
            ->capture_default_str();
        sub->add_option("--level", cfg.level, "significance / CI level")
            ->capture_default_str();
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "series CSV (header + timestamp column)")
            ->required();
        sub->add_option("--columns", cfg.columns,
                        "series names to use, comma separated (default: all)")
            ->delimiter(',');
        sub->add_option("--preprocess", preprocess_text,
                        "none | diff | log-diff | standardize")
            ->capture_default_str();
    };

    CLI::App* c_transform =
        app.add_subcommand("transform", "wavelet transform of one series");
    add_input(c_transform);
    add_analysis(c_transform);
    add_output(c_transform);

    CLI::App* c_coherence = app.add_subcommand(
        "coherence", "squared coherence of two series (plus phase, optional "
                     "red-noise significance and phase CIs)");
    add_input(c_coherence);
    add_analysis(c_coherence);
    add_output(c_coherence);
    c_coherence->add_option("--mc-draws", cfg.mc_draws,
                            "red-noise Monte Carlo draws (0 = no significance test)");
    c_coherence->add_option("--bootstrap-draws", cfg.bootstrap_draws,
                            "phase bootstrap replications")
        ->capture_default_str();

    CLI::App* c_phase = app.add_subcommand(
        "phase", "phase difference of two series (bootstrap CIs when seeded)");
    add_input(c_phase);
    add_analysis(c_phase);
    add_output(c_phase);
    c_phase->add_option("--bootstrap-draws", cfg.bootstrap_draws,
                        "phase bootstrap replications")
        ->capture_default_str();

    CLI::App* c_rho =
        app.add_subcommand("rho", "real wavelet correlation of two series");
    add_input(c_rho);
    add_analysis(c_rho);
    add_output(c_rho);

    CLI::App* c_cohesion = app.add_subcommand(
        "cohesion", "weighted average pairwise correlation of a panel");
    add_input(c_cohesion);
    add_analysis(c_cohesion);
    add_output(c_cohesion);
    c_cohesion->add_option("--weights", cfg.weights,
                           "weight CSV (one column per member, LOCF resampled)");
    c_cohesion->add_option("--scheme", cfg.scheme,
                           "equal | fixed:<timestamp> | tv")
        ->capture_default_str();

    CLI::App* c_synth =
        app.add_subcommand("synth", "write a synthetic dataset as a series CSV");
    c_synth
        ->add_option("kind", synth_kind,
                     "segmented_sines | lagged_noise | random_walk_pair | "
                     "pure_sine | white_noise | ar1")
        ->required();
    c_synth->add_option("--n", cfg.synth.n, "sample count (0 = generator default)");
    c_synth->add_option("--noise-std", cfg.synth.noise_std,
                        "noise level for segmented_sines")
        ->capture_default_str();
    c_synth->add_option("--period", cfg.synth.period, "pure sine period (samples)")
        ->capture_default_str();
    c_synth->add_option("--phase", cfg.synth.phase, "pure sine phase (radians)")
        ->capture_default_str();
    c_synth->add_option("--sigma", cfg.synth.sigma, "innovation std")
        ->capture_default_str();
    c_synth->add_option("--alpha", cfg.synth.alpha, "AR(1) coefficient, |alpha| < 1")
        ->capture_default_str();
    add_output(c_synth);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        return fail("config", e.what(), 2);
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        if (active == c_transform) cfg.command = wavesync::Command::transform;
        else if (active == c_coherence) cfg.command = wavesync::Command::coherence;
        else if (active == c_phase) cfg.command = wavesync::Command::phase;
        else if (active == c_rho) cfg.command = wavesync::Command::rho;
        else if (active == c_cohesion) cfg.command = wavesync::Command::cohesion;
        else cfg.command = wavesync::Command::synth;

        if (active->count("--seed") > 0) cfg.seed = seed_val;
        cfg.preprocess = wavesync::preprocess_from_name(preprocess_text);
        if (cfg.command == wavesync::Command::synth) {
            std::replace(synth_kind.begin(), synth_kind.end(), '-', '_');
            cfg.synth.kind = wavesync::synth_kind_from_name(synth_kind);
        }

        const std::vector<std::string> violations = wavesync::validate(cfg);
        if (!violations.empty()) {
            std::string msg = "invalid configuration:";
            for (const auto& f : violations) msg += " " + f;
            return fail("config", msg, 2);
        }

        const wavesync::RunResult res = wavesync::run(cfg);
        for (const auto& f : res.files) std::cout << f << "\n";
        return 0;
    } catch (const wavesync::ConfigError& e) {
        return fail("config", e.what(), 2);
    } catch (const wavesync::DataError& e) {
        return fail("data", e.what(), 3);
    } catch (const wavesync::NumericError& e) {
        return fail("numeric", e.what(), 4);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
}
