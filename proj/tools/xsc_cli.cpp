// Command-line front end: closed-form correlations with oracle verification,
// Markovian channel trajectories, and non-Markovian bath trajectories as CSV.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "xsc/xsc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidState = 2;
constexpr int kExitVerifyFailed = 3;

struct StateOpt {
    std::string text = "0,0,0,0,0";
};

void add_state_option(CLI::App* cmd, StateOpt& s) {
    cmd->add_option("--c", s.text, "State coefficients c1,c2,c3,c4,c5")->required();
}

// key=value config support: file values are spliced into the argument list
// for every flag not already given explicitly, so flags override the file.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] != "--config") continue;
        if (i + 1 >= args.size())
            throw std::invalid_argument("--config requires a file path");
        path = args[i + 1];
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                   args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        break;
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config file lines must be key=value: '" + line + "'");
        const std::string flag = "--" + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(args.begin(), args.end(), flag) == args.end()) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

std::string join_params(const xsc::CorrelationParams& c) {
    std::string out;
    for (int i = 0; i < 5; ++i) {
        if (i > 0) out += ',';
        out += xsc::format_g9(c.component(i));
    }
    return out;
}

void print_validity(std::ostream& os, const xsc::ValidityReport& rep,
                    const std::string& prefix) {
    const auto line = [&](const char* name, bool pass) {
        os << prefix << "constraint " << name << ": " << (pass ? "pass" : "FAIL") << "\n";
    };
    line("unit_trace", rep.unit_trace);
    line("nonneg_populations", rep.nonneg_populations);
    line("rho11*rho44 >= rho41^2", rep.outer_coherence_bound);
    line("rho22*rho33 >= rho32^2", rep.inner_coherence_bound);
}

struct ParsedState {
    xsc::CorrelationParams params;
    xsc::ValidityReport report;
    bool in_range = true;
};

ParsedState parse_state(const StateOpt& s) {
    ParsedState out;
    out.params = xsc::parse_correlation_params(s.text);
    for (int i = 0; i < 5; ++i)
        if (std::abs(out.params.component(i)) > 1.0) out.in_range = false;
    out.report = xsc::validate(xsc::from_correlation_params(out.params));
    return out;
}

// ---------------------------------------------------------------- correlations

struct CorrelationsOpts {
    StateOpt state;
    bool verify = false;
};

int run_correlations(const CorrelationsOpts& opt) {
    const ParsedState st = parse_state(opt.state);
    if (!st.in_range) {
        std::cout << "InvalidState: coefficients must lie in [-1, 1]\n";
        return kExitInvalidState;
    }
    const bool needs_oracle = opt.verify || xsc::qg_denominator_degenerate(st.params);
    if (!st.report.ok()) {
        if (needs_oracle) {
            std::cout << "InvalidState: state fails positivity validation\n";
            print_validity(std::cout, st.report, "  ");
            return kExitInvalidState;
        }
        std::cout << "warning: state fails positivity validation; closed forms are "
                     "still reported\n";
        print_validity(std::cout, st.report, "  ");
    }
    const double qg = xsc::quantum_discord_1norm(st.params);
    const double cg = xsc::classical_correlation(st.params);
    const double tg = xsc::total_correlation(st.params);
    std::cout << "QG=" << xsc::format_g9(qg) << "\n";
    std::cout << "CG=" << xsc::format_g9(cg) << "\n";
    std::cout << "TG=" << xsc::format_g9(tg) << "\n";
    if (opt.verify) {
        const xsc::XDensityMatrix x = xsc::from_correlation_params(st.params);
        const double oq = xsc::oracle_quantum(x, xsc::RefinementLevel::fine);
        const double oc = xsc::oracle_classical(x, xsc::RefinementLevel::fine);
        const double ot = xsc::oracle_total(x);
        std::cout << "QG_oracle=" << xsc::format_g9(oq) << " dQG=" << xsc::format_g9(qg - oq)
                  << "\n";
        std::cout << "CG_oracle=" << xsc::format_g9(oc) << " dCG=" << xsc::format_g9(cg - oc)
                  << "\n";
        std::cout << "TG_oracle=" << xsc::format_g9(ot) << " dTG=" << xsc::format_g9(tg - ot)
                  << "\n";
    }
    return kExitOk;
}

// --------------------------------------------------------------------- evolve

struct EvolveOpts {
    StateOpt state;
    std::string channel = "pd";
    double gamma_a = 0.5, gamma_b = 0.5;
    double lambda_a = 0.5, lambda_b = 0.5;
    std::string convention = "kraus";
    double tmax = 5.0;
    int steps = 500;
    std::string out;
};

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
    if (path.empty()) return fn(std::cout);
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return kExitUsage;
    }
    return fn(os);
}

void write_records(std::ostream& os, const std::vector<xsc::TrajectoryRecord>& traj,
                   const xsc::NonMarkovConfig* weights_cfg) {
    os << "tau,c1t,c2t,c3t,CG,QG,TG";
    if (weights_cfg) os << ",P1,P2";
    os << "\n";
    for (const auto& rec : traj) {
        os << xsc::format_g9(rec.tau) << ',' << xsc::format_g9(rec.coeffs.c1) << ','
           << xsc::format_g9(rec.coeffs.c2) << ',' << xsc::format_g9(rec.coeffs.c3) << ','
           << xsc::format_g9(rec.cg) << ',' << xsc::format_g9(rec.qg.value_or(0.0)) << ','
           << xsc::format_g9(rec.tg.value_or(0.0));
        if (weights_cfg) {
            const auto [p1, p2] = xsc::configuration_weights(*weights_cfg, rec.tau);
            os << ',' << xsc::format_g9(p1) << ',' << xsc::format_g9(p2);
        }
        os << "\n";
    }
}

int run_evolve(const EvolveOpts& opt) {
    const ParsedState st = parse_state(opt.state);
    if (!st.in_range) {
        std::cerr << "InvalidState: coefficients must lie in [-1, 1]\n";
        return kExitInvalidState;
    }
    xsc::ChannelSpec spec;
    spec.kind = opt.channel == "pd" ? xsc::ChannelKind::pd : xsc::ChannelKind::gad;
    spec.gamma_a = opt.gamma_a;
    spec.gamma_b = opt.gamma_b;
    spec.lambda_a = opt.lambda_a;
    spec.lambda_b = opt.lambda_b;
    spec.convention = opt.convention == "kraus" ? xsc::DecayConvention::kraus
                                                : xsc::DecayConvention::halftime;

    return with_output(opt.out, [&](std::ostream& os) {
        os << "# xsc evolve\n";
        os << "# c=" << join_params(st.params) << "\n";
        os << "# channel=" << opt.channel << "\n";
        os << "# gamma-a=" << xsc::format_g9(opt.gamma_a) << "\n";
        os << "# gamma-b=" << xsc::format_g9(opt.gamma_b) << "\n";
        os << "# lambda-a=" << xsc::format_g9(opt.lambda_a) << "\n";
        os << "# lambda-b=" << xsc::format_g9(opt.lambda_b) << "\n";
        os << "# convention=" << opt.convention << "\n";
        os << "# tmax=" << xsc::format_g9(opt.tmax) << "\n";
        os << "# steps=" << opt.steps << "\n";
        if (!st.report.ok()) {
            os << "# warning: state fails positivity validation\n";
            print_validity(os, st.report, "#   ");
        }
        const auto traj = xsc::markov_trajectory(st.params, spec, opt.tmax, opt.steps);
        write_records(os, traj, nullptr);
        const auto rep = xsc::transition_time(st.params, spec);
        if (rep.has_transition)
            os << "# transition tau_star=" << xsc::format_f6(*rep.tau_star) << "\n";
        if (rep.tau_emergence)
            os << "# emergence tau_E=" << xsc::format_f6(*rep.tau_emergence) << "\n";
        return kExitOk;
    });
}

// ------------------------------------------------------------------ nonmarkov

struct NonMarkovOpts {
    StateOpt state;
    double eps = 0.5, eta = 0.5, v = 1.0;
    int kappa = 2;
    std::string init = "stationary";
    double tmax = 5.0;
    int steps = 500;
    double dt = 1e-3;
    std::string out;
};

int run_nonmarkov(const NonMarkovOpts& opt) {
    const ParsedState st = parse_state(opt.state);
    if (!st.in_range) {
        std::cerr << "InvalidState: coefficients must lie in [-1, 1]\n";
        return kExitInvalidState;
    }
    const xsc::NonMarkovConfig cfg =
        xsc::build_config(opt.eps, opt.eta, opt.v, opt.kappa,
                          opt.init == "stationary" ? xsc::InitialWeights::stationary
                                                   : xsc::InitialWeights::equal);
    const xsc::XDensityMatrix x0 = xsc::from_correlation_params(st.params);

    // Fixed-step integrator as a cross-check of the analytic coefficients.
    const auto coeffs = xsc::detail::nm_coefficients(st.params, cfg);
    double worst = 0.0;
    for (const auto& [tau, state] : xsc::integrate(x0, cfg, std::min(opt.tmax, 5.0), opt.dt)) {
        const xsc::CorrelationParams got = state.summed();
        for (int i = 0; i < 5; ++i)
            worst = std::max(worst, std::abs(got.component(i) -
                                             coeffs.s[static_cast<std::size_t>(i)](tau)));
    }
    if (worst > xsc::kIntegratorTol) {
        std::cerr << "verification failure: integrator deviates from the analytic "
                     "solution by "
                  << xsc::format_g9(worst) << "\n";
        return kExitVerifyFailed;
    }

    return with_output(opt.out, [&](std::ostream& os) {
        os << "# xsc nonmarkov\n";
        os << "# c=" << join_params(st.params) << "\n";
        os << "# eps=" << xsc::format_g9(opt.eps) << "\n";
        os << "# eta=" << xsc::format_g9(opt.eta) << "\n";
        os << "# v=" << xsc::format_g9(opt.v) << "\n";
        os << "# kappa=" << opt.kappa << "\n";
        os << "# init=" << opt.init << "\n";
        os << "# tmax=" << xsc::format_g9(opt.tmax) << "\n";
        os << "# steps=" << opt.steps << "\n";
        os << "# dt=" << xsc::format_g9(opt.dt) << "\n";
        if (!st.report.ok()) {
            os << "# warning: state fails positivity validation\n";
            print_validity(os, st.report, "#   ");
        }
        const auto traj = xsc::nm_classical_trajectory(x0, cfg, opt.tmax, opt.steps);
        write_records(os, traj, &cfg);
        const auto tau_e = xsc::nm_emergence_time(x0, cfg);
        os << "# emergence tau_E=" << (tau_e ? xsc::format_f6(*tau_e) : std::string("none"))
           << "\n";
        return kExitOk;
    });
}

// --------------------------------------------------------------------- verify

struct VerifyOpts {
    int samples = 1000;
    std::uint64_t seed = 7;
};

int run_verify(const VerifyOpts& opt) {
    bool ok = true;
    const auto oracle = xsc::verify_oracle_agreement(opt.samples, opt.seed);
    std::cout << "oracle agreement: samples=" << oracle.samples << " seed=" << opt.seed
              << "\n";
    std::cout << "  max|QG-oracle|=" << xsc::format_g9(oracle.max_dq) << " tol="
              << xsc::format_g9(xsc::kOracleTolQ) << "\n";
    std::cout << "  max|CG-oracle|=" << xsc::format_g9(oracle.max_dc) << " tol="
              << xsc::format_g9(xsc::kOracleTolC) << "\n";
    std::cout << "  max|TG-oracle|=" << xsc::format_g9(oracle.max_dt) << " tol="
              << xsc::format_g9(xsc::kOracleTolT) << "\n";
    ok = ok && oracle.ok();

    const double kraus = xsc::verify_kraus_vs_closed_form(200, opt.seed);
    std::cout << "kraus vs closed form: max delta=" << xsc::format_g9(kraus)
              << " tol=" << xsc::format_g9(xsc::kKrausTol) << "\n";
    ok = ok && kraus <= xsc::kKrausTol;

    const double integ = xsc::verify_integrator_vs_analytic();
    std::cout << "integrator vs analytic: max delta=" << xsc::format_g9(integ)
              << " tol=" << xsc::format_g9(xsc::kIntegratorTol) << "\n";
    ok = ok && integ <= xsc::kIntegratorTol;

    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-norm correlations and decoherence dynamics of two-qubit X states"};
    app.require_subcommand(1);

    CorrelationsOpts corr;
    CLI::App* corr_cmd =
        app.add_subcommand("correlations", "Closed-form QG, CG, TG of one state");
    add_state_option(corr_cmd, corr.state);
    corr_cmd->add_flag("--verify", corr.verify, "Also run the measurement oracles");

    EvolveOpts evolve;
    CLI::App* evolve_cmd =
        app.add_subcommand("evolve", "Markovian channel trajectory as CSV");
    add_state_option(evolve_cmd, evolve.state);
    evolve_cmd->add_option("--channel", evolve.channel, "Channel kind")
        ->check(CLI::IsMember({"pd", "gad"}));
    evolve_cmd->add_option("--gamma-a", evolve.gamma_a, "Decoherence rate of qubit A")
        ->check(CLI::NonNegativeNumber);
    evolve_cmd->add_option("--gamma-b", evolve.gamma_b, "Decoherence rate of qubit B")
        ->check(CLI::NonNegativeNumber);
    evolve_cmd->add_option("--lambda-a", evolve.lambda_a, "GAD bias of qubit A")
        ->check(CLI::Range(0.0, 1.0));
    evolve_cmd->add_option("--lambda-b", evolve.lambda_b, "GAD bias of qubit B")
        ->check(CLI::Range(0.0, 1.0));
    evolve_cmd->add_option("--convention", evolve.convention, "Decay-rate convention")
        ->check(CLI::IsMember({"kraus", "halftime"}));
    evolve_cmd->add_option("--tmax", evolve.tmax, "Final dimensionless time")
        ->check(CLI::PositiveNumber);
    evolve_cmd->add_option("--steps", evolve.steps, "Number of sampling intervals")
        ->check(CLI::Range(2, 100000000));
    evolve_cmd->add_option("--out", evolve.out, "Output CSV path (stdout if omitted)");

    NonMarkovOpts nm;
    CLI::App* nm_cmd =
        app.add_subcommand("nonmarkov", "Two-configuration dephasing bath trajectory as CSV");
    add_state_option(nm_cmd, nm.state);
    nm_cmd->add_option("--eps", nm.eps, "Rate asymmetry")->check(CLI::Range(0.0, 1.0));
    nm_cmd->add_option("--eta", nm.eta, "Stationary weight of configuration 1")
        ->check(CLI::Range(0.0, 1.0));
    nm_cmd->add_option("--v", nm.v, "Fluctuation speed")->check(CLI::NonNegativeNumber);
    nm_cmd->add_option("--kappa", nm.kappa, "Coefficient decay rate per unit gamma")
        ->check(CLI::IsMember({2, 4}));
    nm_cmd->add_option("--init", nm.init, "Initial configurational weights")
        ->check(CLI::IsMember({"stationary", "equal"}));
    nm_cmd->add_option("--tmax", nm.tmax, "Final dimensionless time")
        ->check(CLI::PositiveNumber);
    nm_cmd->add_option("--steps", nm.steps, "Number of sampling intervals")
        ->check(CLI::Range(2, 100000000));
    nm_cmd->add_option("--dt", nm.dt, "Integrator step for the cross-check")
        ->check(CLI::PositiveNumber);
    nm_cmd->add_option("--out", nm.out, "Output CSV path (stdout if omitted)");

    VerifyOpts verify;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Oracle-agreement and consistency suites");
    verify_cmd->add_option("--samples", verify.samples, "Random states to sample")
        ->check(CLI::Range(1, 100000000));
    verify_cmd->add_option("--seed", verify.seed, "Sampling seed");

    std::string config_help;
    for (CLI::App* sub : {corr_cmd, evolve_cmd, nm_cmd, verify_cmd})
        sub->add_option("--config", config_help,
                        "Read options from a key=value file (flags override it)");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = apply_config_file(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (corr_cmd->parsed()) return run_correlations(corr);
        if (evolve_cmd->parsed()) return run_evolve(evolve);
        if (nm_cmd->parsed()) return run_nonmarkov(nm);
        if (verify_cmd->parsed()) return run_verify(verify);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
