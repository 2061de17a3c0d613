#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "egain/errors.hpp"
#include "egain/matrix_io.hpp"
#include "egain/report.hpp"

namespace {

using egain::report::RunConfig;

void add_common(CLI::App *sub, RunConfig &c) {
    sub->add_option("--seed", c.seed, "Seed recorded in the output (and used for random campaigns)");
    sub->add_option("--out", c.out, "Write the report to this file instead of stdout");
    sub->add_option("--tol", c.tol, "Numerical tolerance (default: EGAIN_TOL or 1e-9)")->check(CLI::PositiveNumber);
}

void add_channel(CLI::App *sub, RunConfig &c) {
    sub->add_option("--preset", c.preset, "attenuator | amplifier | classical-noise")
        ->check(CLI::IsMember({"attenuator", "amplifier", "classical-noise"}));
    sub->add_option("--k", c.k, "Preset gain parameter");
    sub->add_option("--noise", c.noise, "Added noise of the classical-noise preset");
    sub->add_option("--channel-file", c.channel_file, "JSON channel {s, K, mu}")->check(CLI::ExistingFile);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Minimal entropy gain of bosonic Gaussian channels"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    RunConfig c;
    c.tol = egain::report::default_tolerance();

    auto *gain = app.add_subcommand("gain", "Closed-form minimal entropy gain of a channel");
    add_channel(gain, c);
    add_common(gain, c);

    auto *sweep = app.add_subcommand("sweep", "Entropy gain on Gibbs states as beta decreases");
    add_channel(sweep, c);
    sweep->add_option("--epsilon-file", c.epsilon_file, "JSON energy matrix (default identity)")
        ->check(CLI::ExistingFile);
    sweep->add_option("--beta-min", c.beta_min, "Smallest beta of the grid")->check(CLI::PositiveNumber);
    sweep->add_option("--beta-max", c.beta_max, "Largest beta of the grid")->check(CLI::PositiveNumber);
    sweep->add_option("--beta-points", c.beta_points, "Log-spaced grid points")->check(CLI::Range(2, 100000));
    sweep->add_flag("!--no-adaptive", c.adaptive, "Do not extend the grid when not converged");
    add_common(sweep, c);

    auto *fock = app.add_subcommand("fock", "Truncated Fock-space verification campaign");
    add_channel(fock, c);
    fock->add_option("--dim", c.dim, "Fock truncation")->check(CLI::Range(4, 400));
    fock->add_option("--trials", c.trials, "Number of random or thermal input states")->check(CLI::Range(1, 1000000));
    fock->add_option("--check", c.check, "prop1 | prop3")->check(CLI::IsMember({"prop1", "prop3"}));
    fock->add_option("--states", c.states, "random | thermal")->check(CLI::IsMember({"random", "thermal"}));
    fock->add_option("--extra-noise", c.extra_noise, "Append a classical-noise stage with this noise")
        ->check(CLI::NonNegativeNumber);
    fock->add_flag("--dump-states", c.dump_states, "Include input and output density matrices");
    add_common(fock, c);

    auto *classical = app.add_subcommand("classical", "Unbounded entropy gain of a doubly stochastic channel");
    classical->add_option("--k-max", c.k_max, "Largest exponent k, N = 2^k")->check(CLI::Range(1, 24));
    classical->add_option("--rows", c.rows, "Rows i whose output entropy is reported")->delimiter(',');
    add_common(classical, c);

    auto *will = app.add_subcommand("williamson", "Williamson normal form of a covariance matrix");
    will->add_option("--matrix-file", c.matrix_file, "JSON covariance matrix")->required()->check(CLI::ExistingFile);
    add_common(will, c);

    try {
        app.parse(argc, argv);
    } catch(const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : egain::report::kUsage;
    }
    c.command = app.get_subcommands().front()->get_name();

    const egain::report::CommandResult result = egain::report::run(c);
    if(!result.message.empty()) std::cerr << "egain: " << result.message << "\n";
    if(c.out.empty()) {
        std::cout << result.output;
    } else {
        try {
            egain::io::write_file_atomic(c.out, result.output);
        } catch(const std::exception &e) {
            std::cerr << "egain: " << e.what() << "\n";
            return egain::report::kUsage;
        }
    }
    return result.exit_code;
}
