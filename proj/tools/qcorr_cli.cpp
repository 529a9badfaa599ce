// qcorr command-line front end.
//
// Subcommands: sweep, report, cond-entropy, events, tomo sim, tomo fit.
// All thickness flags are in units of the photon's central wavelength
// lambda_0. Exit codes: 0 success, 1 I/O failure, 2 validation failure.

#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "qcorr/io.hpp"

namespace {

using namespace qcorr;

struct StateFlags {
    std::string family = "interference";
    double b = 0.75;
    double r = 0.0;
    std::string matrix_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family, "State family: interference | four-mix | explicit")
            ->check(CLI::IsMember({"interference", "four-mix", "explicit"}))
            ->capture_default_str();
        cmd->add_option("--b", b, "Mixture weight b")->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
        cmd->add_option("--r", r, "Reflectivity R (four-mix family)")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
        cmd->add_option("--matrix", matrix_path,
                        "Density-matrix JSON file (selects the explicit family)");
    }

    StateFamilySpec spec() const {
        StateFamilySpec s;
        if (!matrix_path.empty() || family == "explicit") {
            if (matrix_path.empty())
                throw std::invalid_argument("--family explicit requires --matrix");
            s.family = StateFamilySpec::Family::Explicit;
            s.matrix = load_matrix_file(matrix_path);
        } else if (family == "four-mix") {
            s.family = StateFamilySpec::Family::FourMix;
            s.b = b;
            s.r = r;
        } else {
            s.family = StateFamilySpec::Family::Interference;
            s.b = b;
        }
        return s;
    }
};

void print_marker_summary(const EventMarkers& markers) {
    if (markers.sudden_change_l)
        std::cout << "sudden_change_L = " << format_g9(*markers.sudden_change_l)
                  << (markers.sudden_change_extrapolated ? " (analytic, beyond sweep)" : "")
                  << "\n";
    if (markers.esd_l)
        std::cout << "esd_L = " << format_g9(*markers.esd_l)
                  << (markers.esd_extrapolated ? " (analytic, beyond sweep)" : "") << "\n";
    for (const auto& [lo, hi] : markers.qc_cross_intervals)
        std::cout << "qc_interval = [" << format_g9(lo) << ", " << format_g9(hi) << "]\n";
    if (markers.frozen_quantum)
        std::cout << "frozen_Q = [" << format_g9(markers.frozen_quantum->from) << ", "
                  << format_g9(*markers.frozen_quantum->to) << "]\n";
    if (markers.frozen_classical)
        std::cout << "frozen_C = [" << format_g9(markers.frozen_classical->from) << ", inf)\n";
}

int run_sweep(const StateFlags& state, double l_half, double l_max, int steps,
              const std::string& out, const std::string& format) {
    DephasingModel model{l_half};
    const SweepTable table = sweep(state.spec(), model, l_max, steps);
    const EventMarkers markers = detect_events(table);
    emit(table, markers, format == "json" ? EmitFormat::Json : EmitFormat::Csv, out);
    print_marker_summary(markers);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int run_report(const StateFlags& state, double l_half, double l) {
    DephasingModel model{l_half};
    const CorrelationReport rep = full_report(evolve(state.spec(), model, l));
    std::cout << report_to_json(rep).dump(2) << "\n";
    return 0;
}

int run_cond_entropy(const StateFlags& state, double l_half, std::vector<double> ls,
                     int theta_steps, double theta_max_deg, double phi_deg, bool two_outcome,
                     const std::string& out) {
    DephasingModel model{l_half};
    if (ls.empty()) ls.push_back(0.0);
    const StateFamilySpec spec = state.spec();
    std::ostringstream os;
    os << "L_lambda0,theta_deg,S_cond\n";
    for (double l : ls) {
        const ComplexMatrix rho = evolve(spec, model, l);
        for (int i = 0; i < theta_steps; ++i) {
            const double theta_deg = theta_max_deg * i / (theta_steps - 1);
            const MeasurementDirection dir{theta_deg * kPi / 180.0, phi_deg * kPi / 180.0};
            const double s = conditional_entropy_after_B(rho, dir, !two_outcome);
            os << format_g9(l) << ',' << format_g9(theta_deg) << ',' << format_g9(s) << '\n';
        }
    }
    if (out.empty())
        std::cout << os.str();
    else
        write_text_file(out, os.str());
    return 0;
}

int run_events(const StateFlags& state, double l_half, double l_max, int steps) {
    DephasingModel model{l_half};
    const SweepTable table = sweep(state.spec(), model, l_max, steps);
    std::cout << markers_to_json(detect_events(table)).dump(2) << "\n";
    return 0;
}

int run_tomo_sim(const StateFlags& state, double l_half, double l, long long n,
                 std::uint64_t seed, bool exact, const std::string& out) {
    DephasingModel model{l_half};
    const TomoCounts counts = simulate_counts(evolve(state.spec(), model, l), n, seed, exact);
    write_text_file(out, counts_to_json(counts).dump(2) + "\n");
    std::cout << "wrote " << out << "\n";
    return 0;
}

int run_tomo_fit(const std::string& counts_path, int resamples, std::uint64_t seed,
                 const std::string& out) {
    const TomoCounts counts = counts_from_json(load_json_file(counts_path));
    const ComplexMatrix rho = project_physical(linear_inversion(counts));
    const BootstrapSummary bs = bootstrap_report(counts, resamples, seed);

    auto ms = [](const MeanStd& m) { return json{{"mean", m.mean}, {"std", m.stddev}}; };
    json j = {{"rho", matrix_to_json(rho)},
              {"report", report_to_json(bs.point)},
              {"bootstrap",
               {{"resamples", bs.resamples},
                {"rn_resamples", bs.ree_count},
                {"I", ms(bs.mutual_information)},
                {"C", ms(bs.classical)},
                {"Q", ms(bs.quantum)},
                {"Lambda", ms(bs.lambda)},
                {"Upsilon", ms(bs.upsilon)},
                {"En", ms(bs.eof)},
                {"Rn", bs.ree ? ms(*bs.ree) : json(nullptr)},
                {"D", bs.nonent ? ms(*bs.nonent) : json(nullptr)}}}};
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else {
        write_text_file(out, j.dump(2) + "\n");
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical and quantum correlations of two-qubit states in a one-sided "
                 "phase-damping channel"};
    app.require_subcommand(1);

    double l_half = 138.0;
    app.add_option("--model-lhalf", l_half,
                   "Thickness (lambda_0) at which |kappa| = 1/2")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep correlations over quartz thickness");
    StateFlags sweep_state;
    sweep_state.attach(sweep_cmd);
    double sweep_lmax = 350.0;
    int sweep_steps = 141;
    std::string sweep_out, sweep_format = "csv";
    sweep_cmd->add_option("--l-max", sweep_lmax, "Largest thickness (lambda_0)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--steps", sweep_steps, "Number of thickness samples")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "Output file")->required();
    sweep_cmd->add_option("--format", sweep_format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // report
    auto* report_cmd = app.add_subcommand("report", "Correlation report for one state");
    StateFlags report_state;
    report_state.attach(report_cmd);
    double report_l = 0.0;
    report_cmd->add_option("--l", report_l, "Quartz thickness (lambda_0)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    // cond-entropy
    auto* cond_cmd =
        app.add_subcommand("cond-entropy", "Conditional-entropy scan over the measurement angle");
    StateFlags cond_state;
    cond_state.attach(cond_cmd);
    std::vector<double> cond_ls;
    int cond_theta_steps = 91;
    double cond_theta_max = 90.0, cond_phi = 0.0;
    bool cond_two_outcome = false;
    std::string cond_out;
    cond_cmd->add_option("--l", cond_ls, "Thickness values (repeatable)")
        ->check(CLI::NonNegativeNumber);
    cond_cmd->add_option("--theta-steps", cond_theta_steps, "Number of theta samples")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    cond_cmd->add_option("--theta-max-deg", cond_theta_max, "Largest theta in degrees")
        ->check(CLI::Range(1.0, 180.0))
        ->capture_default_str();
    cond_cmd->add_option("--phi-deg", cond_phi, "Measurement phase phi in degrees")
        ->capture_default_str();
    cond_cmd->add_flag("--two-outcome", cond_two_outcome,
                       "Average both outcomes instead of reporting S(rho_A^l)");
    cond_cmd->add_option("--out", cond_out, "Output file (stdout when omitted)");

    // events
    auto* events_cmd = app.add_subcommand("events", "Dynamical-event markers only");
    StateFlags events_state;
    events_state.attach(events_cmd);
    double events_lmax = 350.0;
    int events_steps = 701;
    events_cmd->add_option("--l-max", events_lmax, "Largest thickness (lambda_0)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    events_cmd->add_option("--steps", events_steps, "Scan resolution")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();

    // tomo
    auto* tomo_cmd = app.add_subcommand("tomo", "Simulated tomography pipeline");
    tomo_cmd->require_subcommand(1);
    auto* sim_cmd = tomo_cmd->add_subcommand("sim", "Simulate 16-basis coincidence counts");
    StateFlags sim_state;
    sim_state.attach(sim_cmd);
    double sim_l = 0.0;
    long long sim_n = 10000;
    std::uint64_t sim_seed = 0;
    bool sim_exact = false;
    std::string sim_out;
    sim_cmd->add_option("--l", sim_l, "Quartz thickness (lambda_0)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sim_cmd->add_option("--counts", sim_n, "Acquisition size N per basis")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim_seed, "PRNG seed")->capture_default_str();
    sim_cmd->add_flag("--exact", sim_exact, "Write noiseless means N Tr(Pi rho)");
    sim_cmd->add_option("--out", sim_out, "Counts file to write")->required();

    auto* fit_cmd = tomo_cmd->add_subcommand("fit", "Reconstruct a state from a counts file");
    std::string fit_counts, fit_out;
    int fit_bootstrap = 200;
    std::uint64_t fit_seed = 0;
    fit_cmd->add_option("--counts", fit_counts, "Counts JSON file")->required();
    fit_cmd->add_option("--bootstrap", fit_bootstrap, "Bootstrap resamples (0 disables)")
        ->check(CLI::Range(0, 1000000))
        ->capture_default_str();
    fit_cmd->add_option("--seed", fit_seed, "PRNG seed")->capture_default_str();
    fit_cmd->add_option("--out", fit_out, "Result file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(sweep_cmd))
            return run_sweep(sweep_state, l_half, sweep_lmax, sweep_steps, sweep_out, sweep_format);
        if (app.got_subcommand(report_cmd)) return run_report(report_state, l_half, report_l);
        if (app.got_subcommand(cond_cmd))
            return run_cond_entropy(cond_state, l_half, cond_ls, cond_theta_steps, cond_theta_max,
                                    cond_phi, cond_two_outcome, cond_out);
        if (app.got_subcommand(events_cmd))
            return run_events(events_state, l_half, events_lmax, events_steps);
        if (app.got_subcommand(tomo_cmd)) {
            if (tomo_cmd->got_subcommand(sim_cmd))
                return run_tomo_sim(sim_state, l_half, sim_l, sim_n, sim_seed, sim_exact, sim_out);
            if (tomo_cmd->got_subcommand(fit_cmd))
                return run_tomo_fit(fit_counts, fit_bootstrap, fit_seed, fit_out);
        }
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
