#include "egain/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "egain/channels.hpp"
#include "egain/classical.hpp"
#include "egain/errors.hpp"
#include "egain/fock.hpp"
#include "egain/matrix_io.hpp"

namespace egain::report {

using io::Json;

namespace {

// Shortest round-trip representation; deterministic across runs.
std::string num(double x) {
    if(std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json header(const RunConfig &c) { return Json{{"command", c.command}, {"seed", c.seed}, {"tolerance", c.tol}}; }

struct ResolvedChannel {
    GaussianChannel channel;
    Json description;
};

ResolvedChannel resolve_channel(const RunConfig &c) {
    if(!c.channel_file.empty()) {
        const Json spec = io::read_json_file(c.channel_file);
        return {io::channel_from_json(spec, c.tol), Json{{"source", "file"}, {"path", c.channel_file}}};
    }
    if(c.preset.empty()) throw InvalidArgument("either --preset or --channel-file is required");
    Json desc{{"source", "preset"}, {"preset", c.preset}, {"k", c.k}};
    if(c.preset == "classical-noise") desc["noise"] = c.noise;
    return {presets::by_name(c.preset, c.k, c.noise), std::move(desc)};
}

QuadraticHamiltonian resolve_hamiltonian(const RunConfig &c, const PhaseSpace &space) {
    if(c.epsilon_file.empty()) return QuadraticHamiltonian(space, Matrix::Identity(space.dim(), space.dim()), c.tol);
    return QuadraticHamiltonian(space, io::matrix_from_json(io::read_json_file(c.epsilon_file)), c.tol);
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

CommandResult error_result(const RunConfig &c, int code, std::string_view kind, const std::string &what,
                           const HermitianCert *cert = nullptr) {
    Json j = header(c);
    j["error"] = std::string(kind);
    j["message"] = what;
    if(cert) j["certificate"] = io::to_json(*cert);
    return {dump(j), code, std::string(kind) + ": " + what};
}

} // namespace

double default_tolerance() {
    if(const char *env = std::getenv("EGAIN_TOL")) {
        char *end = nullptr;
        const double v = std::strtod(env, &end);
        if(end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
    }
    return kDefaultTolerance;
}

CommandResult cmd_gain(const RunConfig &c) {
    const ResolvedChannel rc = resolve_channel(c);
    const GaussianChannel &ch = rc.channel;
    Json j = header(c);
    j["channel"] = rc.description;
    j["channel"]["spec"] = io::to_json(ch);
    j["admissibility"] = io::to_json(ch.cert());
    j["strict"] = ch.strict();
    j["regular"] = ch.regular();
    if(!ch.regular()) {
        CommandResult r = error_result(c, kInadmissible, "non-regular", "det K = 0: Phi[I] is unbounded, G is undefined");
        return r;
    }
    j["phi_identity_scale"] = phi_of_identity_scale(ch);
    j["G_closed_form"] = minimal_entropy_gain(ch);
    j["lower_bound"] = general_lower_bound(ch);
    return {dump(j), kSuccess, {}};
}

CommandResult cmd_sweep(const RunConfig &c) {
    const ResolvedChannel rc = resolve_channel(c);
    const QuadraticHamiltonian h = resolve_hamiltonian(c, rc.channel.space());
    SweepOptions opts;
    opts.adaptive = c.adaptive;
    const GainReport rep =
        gain_beta_sweep(rc.channel, h, default_beta_grid(c.beta_max, c.beta_min, c.beta_points), opts);

    std::ostringstream out;
    out << "# command=sweep seed=" << c.seed << " channel=" << rc.description.dump()
        << " closed_form=" << num(rep.closed_form) << " lower_bound=" << num(rep.lower_bound_general) << "\n";
    out << "beta,gain,gap_to_closed_form\n";
    for(std::size_t i = 0; i < rep.gains.size(); ++i)
        out << num(rep.beta_grid[i]) << "," << num(rep.gains[i]) << "," << num(rep.gains[i] - rep.closed_form) << "\n";
    if(!rep.converged)
        out << "# warning: gap " << num(std::abs(rep.gains.back() - rep.closed_form)) << " above tolerance "
            << num(opts.tolerance) << " at beta " << num(rep.beta_grid.back()) << "\n";
    return {out.str(), kSuccess, rep.converged ? std::string{} : std::string("sweep did not converge")};
}

CommandResult cmd_fock(const RunConfig &c) {
    if(c.preset.empty()) throw InvalidArgument("fock requires a one-mode --preset");
    fock::CampaignConfig cfg;
    cfg.check = c.check == "prop3" ? fock::CampaignCheck::prop3 : fock::CampaignCheck::prop1;
    if(c.check != "prop1" && c.check != "prop3") throw InvalidArgument("--check must be prop1 or prop3");
    cfg.states = c.states == "thermal" ? fock::CampaignStates::thermal : fock::CampaignStates::random;
    if(c.states != "random" && c.states != "thermal") throw InvalidArgument("--states must be random or thermal");
    cfg.trials = c.trials;
    cfg.seed = c.seed;
    cfg.keep_states = c.dump_states;

    const fock::ChannelKind kind = fock::kind_from_string(c.preset);
    cfg.stages.push_back(fock::build_dilation(kind, c.k, c.dim, kind == fock::ChannelKind::classical_noise ? c.noise : 0.0));
    if(c.extra_noise > 0.0)
        cfg.stages.push_back(fock::build_dilation(fock::ChannelKind::classical_noise, 1.0, c.dim, c.extra_noise));

    const fock::CampaignResult res = fock::run_campaign(cfg);

    Json j = header(c);
    j["config"] = Json{{"check", c.check}, {"states", c.states}, {"kind", c.preset}, {"k", c.k},
                       {"dim", c.dim},     {"trials", c.trials}, {"extra_noise", c.extra_noise}};
    if(kind == fock::ChannelKind::classical_noise) j["config"]["noise"] = c.noise;
    Json records = Json::array();
    double max_gap = 0.0;
    for(const auto &r : res.records) {
        Json rec{{"seed", r.seed},   {"kind", c.preset},      {"k", c.k},
                 {"dim", c.dim},     {"gain", r.gain},        {"bound", r.bound},
                 {"deficit", r.deficit}, {"holds", r.holds},  {"reliable", r.reliable}};
        if(cfg.states == fock::CampaignStates::thermal) rec["nu"] = r.nu;
        if(c.dump_states) {
            rec["input_rho"] = io::to_json(r.input_rho);
            rec["output_rho"] = io::to_json(r.output_rho);
        }
        if(r.reliable) max_gap = std::max(max_gap, std::abs(r.gain - r.bound));
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    const auto &s = res.summary;
    j["summary"] = Json{{"trials", s.trials},
                        {"holds_count", s.holds_count},
                        {"reliable_count", s.reliable_count},
                        {"unreliable_count", s.unreliable_count},
                        {"violations", s.violations},
                        {"worst_margin", finite_or_null(s.worst_margin)},
                        {"max_abs_gap", max_gap},
                        {"max_deficit", s.max_deficit}};

    if(s.unreliable_count > 0)
        return {dump(j), kUnreliable, std::to_string(s.unreliable_count) + " trial(s) with unreliable truncation"};
    return {dump(j), kSuccess, {}};
}

CommandResult cmd_classical(const RunConfig &c) {
    if(c.k_max < 1 || c.k_max > 24) throw InvalidArgument("--k-max must lie in [1, 24]");
    const auto &dist = classical::heavy_tail();
    const auto perms = classical::PermutationFamily::xor_table();
    const auto rows = classical::entropy_growth(dist, perms, c.k_max, c.rows);

    std::ostringstream out;
    out << "# command=classical seed=" << c.seed << " normalizer=" << num(dist.normalizer()) << "\n";
    out << "k,N,H,doubly_stochastic";
    for(auto i : c.rows) out << ",H_row_" << i;
    out << "\n";
    for(const auto &r : rows) {
        out << r.k << "," << (std::uint64_t{1} << r.k) << "," << num(r.entropy) << ","
            << (r.doubly_stochastic ? "true" : "false");
        for(double h : r.row_entropies) out << "," << (std::isnan(h) ? std::string{} : num(h));
        out << "\n";
    }
    const classical::Index last = classical::Index{1} << c.k_max;
    out << "# tail: -sum_{" << last << " < n <= M} q_n log q_n >= (loglog(M+1) - loglog(N+1)) / (Z (1 + 1/(N log N))^2);"
        << " at M = 2^64 this is " << num(dist.tail_entropy_lower_bound(std::max<classical::Index>(last, 3), ~classical::Index{0}))
        << ", unbounded as M grows\n";
    return {out.str(), kSuccess, {}};
}

CommandResult cmd_williamson(const RunConfig &c) {
    if(c.matrix_file.empty()) throw InvalidArgument("williamson requires --matrix-file");
    const Matrix alpha = io::matrix_from_json(io::read_json_file(c.matrix_file));
    if(alpha.rows() != alpha.cols() || alpha.rows() % 2 != 0) throw InvalidArgument("covariance must be 2s x 2s");
    const PhaseSpace space(static_cast<int>(alpha.rows() / 2));
    const WilliamsonDecomposition wd = williamson(alpha, space, c.tol);
    const HermitianCert cert = check_hermitian_psd(uncertainty_matrix(alpha, space, +1.0), c.tol);

    Json j = header(c);
    j["s"] = space.modes();
    j["nu"] = io::to_json(wd.nu);
    j["T"] = io::to_json(wd.transform);
    j["certificate"] = io::to_json(cert);
    j["admissible"] = cert.at_least_semidefinite();
    j["nondegenerate"] = cert.definite();
    if(!cert.at_least_semidefinite())
        return {dump(j), kInadmissible, "inadmissible: alpha + (i/2)Delta is not positive semidefinite"};
    return {dump(j), kSuccess, {}};
}

CommandResult run(const RunConfig &c) {
    try {
        if(c.command == "gain") return cmd_gain(c);
        if(c.command == "sweep") return cmd_sweep(c);
        if(c.command == "fock") return cmd_fock(c);
        if(c.command == "classical") return cmd_classical(c);
        if(c.command == "williamson") return cmd_williamson(c);
        return error_result(c, kUsage, "usage", "unknown command '" + c.command + "'");
    } catch(const InadmissibleError &e) {
        return error_result(c, kInadmissible, "inadmissible", e.what(), &e.cert());
    } catch(const NonRegularError &e) {
        return error_result(c, kInadmissible, "non-regular", e.what());
    } catch(const HypothesisViolation &e) {
        return error_result(c, kHypothesisViolation, "hypothesis-violation", e.what());
    } catch(const Error &e) {
        return error_result(c, kUsage, "error", e.what());
    }
}

} // namespace egain::report
