#ifndef WAVELAB_SCENARIO_HPP
#define WAVELAB_SCENARIO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "wavelab/char_solver.hpp"
#include "wavelab/data_families.hpp"
#include "wavelab/problem.hpp"

namespace wavelab::scenario {

enum class Command { Solve, Extinction, DecaySweep, Smoothing, Verify, MollifyStudy };

const char* command_name(Command cmd);

struct RunParams {
    double tol = 1e-10;          // extinction threshold
    double window_lo = 0.0;      // decay fit window
    double window_hi = 0.0;
    double floor = 1e-13;        // log-fit floor
    std::vector<double> epsilons;
    std::vector<int> l_list;
    std::vector<int> n_list;
    std::vector<double> query_times;
    double t0 = 0.0;             // oracle hand-off time (defaults to 4/a)
    double t_end = 0.0;          // oracle comparison end (defaults to horizon)
    double picard_tol = 1e-12;
    int max_iter = 200;
};

/// A fully validated scenario: every key checked, unknown keys rejected,
/// all cross-field constraints enforced before any computation starts.
struct ScenarioConfig {
    Command command = Command::Solve;

    double a = 1.0;
    double p = 0.0;
    Orientation orientation = Orientation::LeftSmoothing;
    CoefficientField c = CoefficientField::zero();
    CoefficientField a1 = CoefficientField::zero();
    double horizon = 1.0;

    DataFamily w0 = DataFamily::zero();
    DataFamily w1 = DataFamily::zero();

    int n_cells = 100;
    int record_every = 1;

    std::string forcing = "none";   // none | mms-sine
    bool reproduction = false;

    std::string out_dir;            // from output.dir, may be empty
    bool emit_plots = false;
    bool write_states = false;

    RunParams run;

    ProblemSpec problem() const;
    InitialData initial_data(int n) const;      // honors mms-sine
    StepScheme scheme() const;                  // honors mms-sine
};

ScenarioConfig parse_config_file(const std::string& path, Command cmd);
ScenarioConfig parse_config_text(const std::string& text, const std::string& name, Command cmd);

/// The driven verification solution w = exp(-t) sin(pi x): its value, the
/// scheme carrying the matching forcing and boundary traces, and its
/// initial data. Shared by the `scheme.forcing = mms-sine` config mode and
/// the convergence tests.
double mms_sine_exact_w(double x, double t);
StepScheme mms_sine_scheme(const ProblemSpec& spec);
InitialData mms_sine_data(int n_cells, double a);

/// Output directory precedence: --out flag, then output.dir from the
/// config, then $WAVELAB_OUT, then the current directory.
std::string resolve_out_dir(const std::string& cli_out, const ScenarioConfig& config);

/// Runners write their CSVs (and plot scripts when requested) into
/// out_dir and human-readable notes to log. They throw on failure; the
/// CLI maps exceptions to nonzero exit status.
void run_solve(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log);
void run_extinction(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log);
void run_decay_sweep(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log);
void run_smoothing(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log);
void run_verify(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log);
void run_mollify_study(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log);

void run_command(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log);

} // namespace wavelab::scenario

#endif
