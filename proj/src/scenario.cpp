#include "wavelab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "wavelab/analysis.hpp"
#include "wavelab/csv.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/mollify.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/picard.hpp"
#include "wavelab/plot.hpp"

namespace wavelab::scenario {

namespace {

namespace fs = std::filesystem;

struct RawEntry {
    std::string value;
    int line = 0;
    bool consumed = false;
};

class KeyMap {
  public:
    KeyMap(std::string name) : name_(std::move(name)) {}

    void insert(const std::string& key, const std::string& value, int line) {
        auto [it, fresh] = entries_.emplace(key, RawEntry{value, line, false});
        if (!fresh)
            throw ConfigError(name_ + ":" + std::to_string(line) + ": duplicate key '" + key +
                              "' (first at line " + std::to_string(it->second.line) + ")");
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string take(const std::string& key, const std::string& fallback) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        it->second.consumed = true;
        return it->second.value;
    }

    std::string require(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError(name_ + ": missing required key '" + key + "'");
        it->second.consumed = true;
        return it->second.value;
    }

    double take_double(const std::string& key, double fallback) {
        return has(key) ? parse_double(key, take(key, "")) : fallback;
    }
    double require_double(const std::string& key) { return parse_double(key, require(key)); }
    int take_int(const std::string& key, int fallback) {
        return has(key) ? parse_int(key, take(key, "")) : fallback;
    }
    bool take_bool(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const std::string v = take(key, "");
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw ConfigError(context(key) + ": expected a boolean, got '" + v + "'");
    }
    std::vector<double> require_double_list(const std::string& key) {
        return parse_list(key, require(key));
    }
    std::vector<int> require_int_list(const std::string& key) {
        std::vector<int> out;
        for (double v : parse_list(key, require(key))) {
            if (v != std::floor(v))
                throw ConfigError(context(key) + ": expected integers");
            out.push_back(static_cast<int>(v));
        }
        return out;
    }

    void reject_unconsumed() const {
        for (const auto& [key, entry] : entries_) {
            if (!entry.consumed)
                throw ConfigError(name_ + ":" + std::to_string(entry.line) + ": unknown key '" +
                                  key + "'");
        }
    }

    std::string context(const std::string& key) const {
        auto it = entries_.find(key);
        const int line = it == entries_.end() ? 0 : it->second.line;
        return name_ + ":" + std::to_string(line) + ": key '" + key + "'";
    }

  private:
    double parse_double(const std::string& key, const std::string& v) {
        try {
            size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing");
            if (!std::isfinite(d)) throw std::invalid_argument("nonfinite");
            return d;
        } catch (const std::exception&) {
            throw ConfigError(context(key) + ": expected a number, got '" + v + "'");
        }
    }
    int parse_int(const std::string& key, const std::string& v) {
        const double d = parse_double(key, v);
        if (d != std::floor(d)) throw ConfigError(context(key) + ": expected an integer");
        return static_cast<int>(d);
    }
    std::vector<double> parse_list(const std::string& key, const std::string& v) {
        std::vector<double> out;
        std::string item;
        std::istringstream ss(v);
        while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
        if (out.empty()) throw ConfigError(context(key) + ": empty list");
        return out;
    }
    static std::string trim(std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? "" : s.substr(b, e - b + 1);
    }

    std::string name_;
    std::map<std::string, RawEntry> entries_;
};

CoefficientField parse_coefficient(KeyMap& keys, const std::string& prefix) {
    const std::string kind = keys.take(prefix + ".kind", "zero");
    if (kind == "zero") return CoefficientField::zero();
    if (kind == "constant")
        return CoefficientField::constant(keys.require_double(prefix + ".value"));
    if (kind == "trig")
        return CoefficientField::separable_trig(keys.require_double(prefix + ".amplitude"),
                                                keys.require_double(prefix + ".xfreq"),
                                                keys.require_double(prefix + ".tfreq"));
    if (kind == "bump")
        return CoefficientField::gaussian_bump(keys.require_double(prefix + ".amplitude"),
                                               keys.require_double(prefix + ".center"),
                                               keys.require_double(prefix + ".width"),
                                               keys.require_double(prefix + ".tmod"));
    if (kind == "grid") {
        const std::string file = keys.require(prefix + ".file");
        std::ifstream in(file);
        if (!in) throw ConfigError("coefficient grid file not found: " + file);
        int nx = 0, nt = 0;
        double t_max = 0.0;
        if (!(in >> nx >> nt >> t_max))
            throw ConfigError("coefficient grid file " + file + ": bad header (nx nt t_max)");
        std::vector<double> values;
        double v;
        while (in >> v) values.push_back(v);
        return CoefficientField::sampled_grid(nx, nt, t_max, std::move(values));
    }
    throw ConfigError(keys.context(prefix + ".kind") + ": unknown coefficient kind '" + kind +
                      "'");
}

DataFamily parse_data_family(KeyMap& keys, const std::string& prefix) {
    const std::string kind = keys.take(prefix + ".kind", "zero");
    if (kind == "zero") return DataFamily::zero();
    if (kind == "sine") return DataFamily::sine(keys.require_double(prefix + ".k"));
    if (kind == "hat") return DataFamily::hat(keys.require_double(prefix + ".center"));
    if (kind == "step") return DataFamily::step(keys.require_double(prefix + ".edge"));
    if (kind == "random") {
        const double seed = keys.require_double(prefix + ".seed");
        if (seed < 0 || seed != std::floor(seed))
            throw ConfigError(keys.context(prefix + ".seed") + ": expected a nonnegative integer");
        return DataFamily::random(static_cast<std::uint64_t>(seed),
                                  keys.require_double(prefix + ".smoothness"));
    }
    throw ConfigError(keys.context(prefix + ".kind") + ": unknown data kind '" + kind + "'");
}

bool data_keys_present(const KeyMap& keys) {
    for (const char* k :
         {"data.w0.kind", "data.w1.kind", "data.w0.k", "data.w1.k", "data.w0.center",
          "data.w1.center", "data.w0.edge", "data.w1.edge", "data.w0.seed", "data.w1.seed",
          "data.w0.smoothness", "data.w1.smoothness"})
        if (keys.has(k)) return true;
    return false;
}

// Effective problem the runners actually march: RightSmoothing scenarios
// are mirrored into the solver's native orientation.
struct Effective {
    ProblemSpec spec;
    InitialData data;
    bool mirrored = false;
};

Effective make_effective(const ScenarioConfig& config, int n_cells) {
    const ProblemSpec spec = config.problem();
    if (spec.orientation() == Orientation::LeftSmoothing)
        return Effective{spec, config.initial_data(n_cells), false};
    std::vector<double> w0 = config.w0.sample(n_cells);
    std::vector<double> w1 = config.w1.sample(n_cells);
    return Effective{mirror_problem(spec),
                     reduce_to_first_order(mirror_samples(w0), mirror_samples(w1), spec.a()),
                     true};
}

void log_hypothesis_notes(const ScenarioConfig& config, std::ostream& log) {
    const auto c2 = config.c.c2_norm_bound();
    if (c2)
        log << "note: |c|_C2 <= " << format_g17(*c2) << ", sup|c| = "
            << format_g17(config.c.sup_abs(config.horizon)) << "\n";
    else
        log << "warning: sampled-grid c is only Lipschitz, outside the C2 smoothing "
               "hypothesis; smoothing results are exploratory\n";
    if (!config.a1.c2_norm_bound())
        log << "warning: sampled-grid a1 is outside the C2 hypothesis\n";
}

void write_plot(const std::string& out_dir, const std::string& csv_name,
                std::vector<std::string> columns) {
    const std::string csv_path = (fs::path(out_dir) / csv_name).string();
    const std::string script = emit_plot_script(csv_path, columns);
    const std::string gp_path =
        (fs::path(out_dir) / (fs::path(csv_name).stem().string() + ".gp")).string();
    std::ofstream out(gp_path, std::ios::binary);
    out << script;
    if (!out) throw Error("write failed: " + gp_path);
}

Trajectory run_effective(const ScenarioConfig& config, const Effective& eff, int n_cells,
                         int record_every) {
    Trajectory traj = solve(eff.spec, eff.data, n_cells, record_every, config.scheme());
    if (eff.mirrored) {
        for (GridState& s : traj.states) {
            s.w = mirror_samples(s.w);
            s.u = mirror_samples(s.u);
        }
    }
    return traj;
}

} // namespace

const char* command_name(Command cmd) {
    switch (cmd) {
    case Command::Solve:
        return "solve";
    case Command::Extinction:
        return "extinction";
    case Command::DecaySweep:
        return "decay-sweep";
    case Command::Smoothing:
        return "smoothing";
    case Command::Verify:
        return "verify";
    case Command::MollifyStudy:
        return "mollify-study";
    }
    return "?";
}

ProblemSpec ScenarioConfig::problem() const {
    return ProblemSpec(a, p, orientation, c, a1, horizon);
}

InitialData ScenarioConfig::initial_data(int n) const {
    if (forcing == "mms-sine") return mms_sine_data(n, a);
    return reduce_to_first_order(w0.sample(n), w1.sample(n), a);
}

StepScheme ScenarioConfig::scheme() const {
    if (forcing == "mms-sine") return mms_sine_scheme(problem());
    return StepScheme{};
}

double mms_sine_exact_w(double x, double t) {
    return std::exp(-t) * std::sin(std::numbers::pi * x);
}

StepScheme mms_sine_scheme(const ProblemSpec& spec) {
    const double a = spec.a();
    const double p = spec.p();
    const CoefficientField c = spec.c();
    const CoefficientField a1 = spec.a1();
    StepScheme scheme;
    scheme.forcing_w = [](double, double) { return 0.0; };
    scheme.forcing_u = [a, c, a1](double x, double t) {
        const double pi = std::numbers::pi;
        const double s = std::sin(pi * x);
        const double cx = std::cos(pi * x);
        const double u_ex = -s + a * pi * cx;
        return std::exp(-t) * ((1.0 + a * a * pi * pi + c(x, t)) * s + a1(x, t) * u_ex);
    };
    scheme.boundary_u = [a](double t) { return -a * std::numbers::pi * std::exp(-t); };
    scheme.boundary_w = [a, p](double t) { return -p * a * std::numbers::pi * std::exp(-t); };
    return scheme;
}

InitialData mms_sine_data(int n_cells, double a) {
    std::vector<double> w0(n_cells + 1), w1(n_cells + 1);
    for (int j = 0; j <= n_cells; ++j) {
        const double x = static_cast<double>(j) / n_cells;
        w0[j] = std::sin(std::numbers::pi * x);
        w1[j] = -std::sin(std::numbers::pi * x);
    }
    return reduce_to_first_order(w0, w1, a);
}

ScenarioConfig parse_config_file(const std::string& path, Command cmd) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path, cmd);
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& name, Command cmd) {
    KeyMap keys(name);
    {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            const auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            const auto e = line.find_last_not_of(" \t\r");
            line = line.substr(b, e - b + 1);
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(name + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
            auto trim = [](std::string s) {
                const auto lo = s.find_first_not_of(" \t");
                const auto hi = s.find_last_not_of(" \t");
                return lo == std::string::npos ? std::string() : s.substr(lo, hi - lo + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ConfigError(name + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
            keys.insert(key, value, line_no);
        }
    }

    ScenarioConfig config;
    config.command = cmd;
    config.a = keys.require_double("problem.a");
    config.p = keys.take_double("problem.p", 0.0);
    const std::string orient = keys.take("problem.orientation", "left");
    if (orient == "left")
        config.orientation = Orientation::LeftSmoothing;
    else if (orient == "right")
        config.orientation = Orientation::RightSmoothing;
    else
        throw ConfigError(keys.context("problem.orientation") +
                          ": expected 'left' or 'right', got '" + orient + "'");
    config.horizon = keys.require_double("problem.horizon");
    config.c = parse_coefficient(keys, "problem.c");
    config.a1 = parse_coefficient(keys, "problem.a1");

    config.forcing = keys.take("scheme.forcing", "none");
    if (config.forcing != "none" && config.forcing != "mms-sine")
        throw ConfigError(keys.context("scheme.forcing") + ": unknown forcing '" +
                          config.forcing + "'");
    config.reproduction = keys.take_bool("reproduction", false);
    if (config.reproduction && config.forcing != "none")
        throw ConfigError(name + ": forcing is forbidden in reproduction runs");
    if (config.forcing != "none" && cmd != Command::Solve)
        throw ConfigError(name + ": scheme.forcing is only supported by the solve command");

    if (config.forcing == "mms-sine") {
        if (data_keys_present(keys))
            throw ConfigError(name + ": mms-sine supplies its own initial data; remove data.*");
    } else {
        config.w0 = parse_data_family(keys, "data.w0");
        config.w1 = parse_data_family(keys, "data.w1");
    }

    config.n_cells = keys.take_int("grid.n", 100);
    config.record_every = keys.take_int("grid.record_every", 1);
    if (config.n_cells < 4) throw ConfigError(name + ": grid.n must be >= 4");
    if (config.record_every < 1) throw ConfigError(name + ": grid.record_every must be >= 1");

    config.out_dir = keys.take("output.dir", "");
    config.emit_plots = keys.take_bool("output.emit_plots", false);
    config.write_states = keys.take_bool("output.states", false);

    switch (cmd) {
    case Command::Solve:
        break;
    case Command::Extinction:
        config.run.tol = keys.take_double("run.tol", 1e-10);
        if (!(config.run.tol > 0.0)) throw ConfigError(name + ": run.tol must be > 0");
        break;
    case Command::DecaySweep: {
        config.run.epsilons = keys.require_double_list("run.epsilons");
        std::vector<double> sorted = config.run.epsilons;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ConfigError(name + ": duplicate values in run.epsilons");
        for (double e : sorted)
            if (e < 0.0) throw ConfigError(name + ": run.epsilons must be >= 0");
        config.run.epsilons = std::move(sorted);   // rows ordered by epsilon descending
        config.run.window_lo = keys.require_double("run.window_lo");
        config.run.window_hi = keys.require_double("run.window_hi");
        if (!(config.run.window_lo < config.run.window_hi) ||
            config.run.window_hi > config.horizon)
            throw ConfigError(name + ": need window_lo < window_hi <= horizon");
        config.run.floor = keys.take_double("run.floor", 1e-13);
        break;
    }
    case Command::Smoothing: {
        const auto n_list = keys.require_int_list("run.n_list");
        config.run.n_list = n_list;
        for (size_t i = 0; i < n_list.size(); ++i) {
            if (n_list[i] < 4) throw ConfigError(name + ": run.n_list entries must be >= 4");
            if (i > 0 && n_list[i] <= n_list[i - 1])
                throw ConfigError(name + ": run.n_list must be strictly increasing");
            if (n_list[i] % n_list[0] != 0)
                throw ConfigError(name + ": run.n_list entries must be multiples of the first");
        }
        config.run.query_times = keys.require_double_list("run.query_times");
        for (double q : config.run.query_times)
            if (!(q > 0.0) || q > config.horizon)
                throw ConfigError(name + ": run.query_times must lie in (0, horizon]");
        config.run.floor = keys.take_double("run.floor", 1e-13);
        break;
    }
    case Command::Verify: {
        const auto n_list = keys.require_int_list("run.n_list");
        config.run.n_list = n_list;
        for (size_t i = 0; i < n_list.size(); ++i) {
            if (n_list[i] < 4) throw ConfigError(name + ": run.n_list entries must be >= 4");
            if (i > 0 && n_list[i] <= n_list[i - 1])
                throw ConfigError(name + ": run.n_list must be strictly increasing");
        }
        config.run.t0 = keys.take_double("run.t0", 4.0 / config.a);
        config.run.t_end = keys.take_double("run.t_end", config.horizon);
        if (config.run.t0 < 4.0 / config.a - 1e-12)
            throw ConfigError(name + ": run.t0 must be at least 4/a");
        if (!(config.run.t0 < config.run.t_end) || config.run.t_end > config.horizon)
            throw ConfigError(name + ": need t0 < t_end <= horizon");
        config.run.picard_tol = keys.take_double("run.tol", 1e-12);
        config.run.max_iter = keys.take_int("run.max_iter", 200);
        if (config.run.max_iter < 1) throw ConfigError(name + ": run.max_iter must be >= 1");
        break;
    }
    case Command::MollifyStudy: {
        config.run.l_list = keys.require_int_list("run.l_list");
        if (config.run.l_list.size() < 2)
            throw ConfigError(name + ": run.l_list needs at least two levels");
        for (size_t i = 0; i < config.run.l_list.size(); ++i) {
            if (config.run.l_list[i] < 2)
                throw ConfigError(name + ": run.l_list entries must be >= 2");
            if (i > 0 && config.run.l_list[i] <= config.run.l_list[i - 1])
                throw ConfigError(name + ": run.l_list must be strictly increasing");
        }
        break;
    }
    }

    keys.reject_unconsumed();
    config.problem();   // validates the assembled problem early
    return config;
}

std::string resolve_out_dir(const std::string& cli_out, const ScenarioConfig& config) {
    if (!cli_out.empty()) return cli_out;
    if (!config.out_dir.empty()) return config.out_dir;
    if (const char* env = std::getenv("WAVELAB_OUT"); env && *env) return env;
    return ".";
}

void run_solve(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log) {
    fs::create_directories(out_dir);
    const int n = config.n_cells;
    const Effective eff = make_effective(config, n);

    // surface the boundary overwrite applied by init_state (driven runs
    // replace the endpoints with their exact traces instead)
    if (config.forcing == "none") {
        const double u_end = eff.data.phi2().back();
        const double w_start = eff.data.phi1().front();
        const double w_fixed = eff.spec.p() * eff.data.phi2().front();
        if (u_end != 0.0)
            log << "note: initial u(1,0) adjusted " << format_g17(u_end) << " -> 0\n";
        if (w_start != w_fixed)
            log << "note: initial w(0,0) adjusted " << format_g17(w_start) << " -> "
                << format_g17(w_fixed) << "\n";
    }
    log_hypothesis_notes(config, log);

    const Trajectory traj = run_effective(config, eff, n, config.record_every);

    CsvTable norms;
    norms.header = {"t", "W", "U", "sup_w", "sup_u"};
    for (const auto& r : traj.norms)
        norms.rows.push_back({format_g17(r.t), format_g17(r.w_l2), format_g17(r.u_l2),
                              format_g17(r.w_sup), format_g17(r.u_sup)});
    write_csv((fs::path(out_dir) / "norms.csv").string(), norms);

    if (config.write_states) {
        const double dt = traj.dt();
        for (const GridState& s : traj.states) {
            const int step = static_cast<int>(std::llround(s.t / dt));
            CsvTable state;
            state.header = {"x", "w", "u"};
            for (int j = 0; j <= s.n_cells; ++j)
                state.rows.push_back({format_g17(static_cast<double>(j) / s.n_cells),
                                      format_g17(s.w[j]), format_g17(s.u[j])});
            write_csv((fs::path(out_dir) / ("state_" + std::to_string(step) + ".csv")).string(),
                      state);
        }
    }
    if (config.emit_plots) write_plot(out_dir, "norms.csv", {"W", "U"});
    log << "solve: " << traj.norms.size() - 1 << " steps, final W = "
        << format_g17(traj.norms.back().w_l2) << "\n";
}

void run_extinction(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log) {
    fs::create_directories(out_dir);
    const Effective eff = make_effective(config, config.n_cells);
    const Trajectory traj = run_effective(config, eff, config.n_cells, config.record_every);
    const auto t_star = extinction_time(traj, config.run.tol);

    CsvTable table;
    table.header = {"tol", "t_star"};
    table.rows.push_back(
        {format_g17(config.run.tol), t_star ? format_g17(*t_star) : kNoneMarker});
    write_csv((fs::path(out_dir) / "extinction.csv").string(), table);
    if (t_star)
        log << "extinct from t = " << format_g17(*t_star) << " (tol "
            << format_g17(config.run.tol) << ")\n";
    else
        log << "no extinction within the horizon (tol " << format_g17(config.run.tol) << ")\n";
}

void run_decay_sweep(const ScenarioConfig& config, const std::string& out_dir,
                     std::ostream& log) {
    fs::create_directories(out_dir);
    const int n = config.n_cells;

    CsvTable table;
    table.header = {"epsilon", "gamma", "M", "rms", "window_lo", "window_hi"};
    for (double eps : config.run.epsilons) {
        ScenarioConfig scaled = config;
        scaled.c = config.c.scaled(eps);
        const Effective eff = make_effective(scaled, n);
        const Trajectory traj = run_effective(scaled, eff, n, config.record_every);
        const double normalizer = decay_normalizer(eff.data);

        int usable = 0;
        for (const auto& r : traj.norms)
            if (r.t >= config.run.window_lo && r.t <= config.run.window_hi &&
                r.w_l2 > config.run.floor)
                ++usable;
        if (usable < 3) {
            // trajectory already extinct inside the window: faster than any rate
            table.rows.push_back({format_g17(eps), kExtinctMarker, kExtinctMarker,
                                  kExtinctMarker, format_g17(config.run.window_lo),
                                  format_g17(config.run.window_hi)});
            log << "epsilon " << format_g17(eps) << ": extinct within the fit window\n";
            continue;
        }
        const FitReport fit = fit_decay_rate(traj, config.run.window_lo, config.run.window_hi,
                                             normalizer, config.run.floor);
        table.rows.push_back({format_g17(eps), format_g17(fit.rate), format_g17(fit.prefactor),
                              format_g17(fit.rms_residual), format_g17(fit.window_lo),
                              format_g17(fit.window_hi)});
        log << "epsilon " << format_g17(eps) << ": gamma = " << format_g17(fit.rate) << " ("
            << fit.sample_count << " samples, " << fit.excluded_count << " below floor)\n";
    }
    write_csv((fs::path(out_dir) / "decay.csv").string(), table);
    if (config.emit_plots) write_plot(out_dir, "decay.csv", {"gamma"});
}

void run_smoothing(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log) {
    fs::create_directories(out_dir);
    log_hypothesis_notes(config, log);

    const ProblemSpec user_spec = config.problem();
    const bool right = user_spec.orientation() == Orientation::RightSmoothing;
    const ProblemSpec eff_spec = right ? mirror_problem(user_spec) : user_spec;
    DataSampler sampler = [&config, right](int n) {
        std::vector<double> w0 = config.w0.sample(n);
        std::vector<double> w1 = config.w1.sample(n);
        if (right) {
            w0 = mirror_samples(w0);
            w1 = mirror_samples(w1);
        }
        return reduce_to_first_order(w0, w1, config.a);
    };

    const SmoothingReport rep = smoothing_report(eff_spec, sampler, config.run.n_list,
                                                 config.run.query_times, config.run.floor);

    CsvTable norms;
    norms.header = {"t", "N", "d00", "d10", "d01", "d20", "d11", "d02"};
    for (size_t ti = 0; ti < rep.times.size(); ++ti)
        for (size_t ni = 0; ni < rep.n_list.size(); ++ni) {
            std::vector<std::string> row = {format_g17(rep.times[ti]),
                                            std::to_string(rep.n_list[ni])};
            for (double v : rep.norms[ti][ni]) row.push_back(format_g17(v));
            norms.rows.push_back(row);
        }
    write_csv((fs::path(out_dir) / "smoothing.csv").string(), norms);

    CsvTable ratios;
    ratios.header = {"t", "n_coarse", "n_fine", "r00", "r10", "r01", "r20", "r11", "r02"};
    for (size_t ti = 0; ti < rep.times.size(); ++ti)
        for (size_t pi = 0; pi + 1 < rep.n_list.size(); ++pi) {
            std::vector<std::string> row = {format_g17(rep.times[ti]),
                                            std::to_string(rep.n_list[pi]),
                                            std::to_string(rep.n_list[pi + 1])};
            for (double v : rep.ratios[ti][pi])
                row.push_back(std::isnan(v) ? kExtinctMarker : format_g17(v));
            ratios.rows.push_back(row);
        }
    write_csv((fs::path(out_dir) / "ratios.csv").string(), ratios);
    log << "smoothing report: " << rep.times.size() << " query times, " << rep.n_list.size()
        << " grids\n";
}

void run_verify(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log) {
    fs::create_directories(out_dir);
    log << "note: oracle start-up window [0, " << format_g17(config.run.t0)
        << "] is seeded from the marching solver\n";

    CsvTable table;
    table.header = {"N", "sup_discrepancy", "observed_order", "status"};
    double prev_disc = 0.0;
    int prev_n = 0;
    bool all_converged = true;
    for (int n : config.run.n_list) {
        const Effective eff = make_effective(config, n);
        const Trajectory traj = solve(eff.spec, eff.data, n, 1, config.scheme());
        const double dt = traj.dt();
        const int idx_t0 = static_cast<int>(std::llround(config.run.t0 / dt));
        const auto seed = picard::HistorySegment::from_states(
            std::span<const GridState>(traj.states).subspan(0, idx_t0 + 1), config.a);
        const auto result =
            picard::picard_solve(seed, eff.spec, config.run.t_end, config.run.picard_tol,
                                 config.run.max_iter);

        double disc = 0.0;
        for (int lev = 1; lev < result.w.n_levels; ++lev) {
            if (idx_t0 + lev >= static_cast<int>(traj.states.size())) break;
            const GridState& s = traj.states[idx_t0 + lev];
            for (int j = 0; j <= n; ++j)
                disc = std::max(disc, std::abs(s.w[j] - result.w.at(lev, j)));
        }

        std::string order = kNaMarker;
        if (prev_n > 0 && disc > 0.0)
            order = format_g17(std::log(prev_disc / disc) /
                               std::log(static_cast<double>(n) / prev_n));
        const bool ok = result.converged;
        all_converged = all_converged && ok;
        table.rows.push_back(
            {std::to_string(n), format_g17(disc), order, ok ? "ok" : "nonconverged"});
        log << "N=" << n << ": sup discrepancy " << format_g17(disc)
            << (ok ? "" : " [picard did not converge]") << "\n";
        prev_disc = disc;
        prev_n = n;
    }
    write_csv((fs::path(out_dir) / "verify.csv").string(), table);
    if (!all_converged) log << "warning: some rows are flagged nonconverged\n";
}

void run_mollify_study(const ScenarioConfig& config, const std::string& out_dir,
                       std::ostream& log) {
    fs::create_directories(out_dir);
    const int n = config.n_cells;
    const ProblemSpec user_spec = config.problem();
    const bool right = user_spec.orientation() == Orientation::RightSmoothing;
    const ProblemSpec eff_spec = right ? mirror_problem(user_spec) : user_spec;
    std::vector<double> w0 = config.w0.sample(n);
    std::vector<double> w1 = config.w1.sample(n);
    if (right) {
        w0 = mirror_samples(w0);
        w1 = mirror_samples(w1);
    }

    const auto rows = generalized_solution_check(eff_spec, w0, w1, config.run.l_list, n);

    CsvTable table;
    table.header = {"l_lo",           "l_hi",   "phi1_l2", "phi2_l2", "phi1_h1",
                    "sup_theta_dist", "M3_hat", "A_hat",   "bound",   "within"};
    for (const auto& row : rows) {
        table.rows.push_back({std::to_string(row.level_lo), std::to_string(row.level_hi),
                              format_g17(row.phi1_l2_dist), format_g17(row.phi2_l2_dist),
                              format_g17(row.phi1_h1_dist), format_g17(row.sup_theta_dist),
                              format_g17(row.m3_hat), format_g17(row.a_hat),
                              format_g17(row.bound), row.within_bound ? "1" : "0"});
        log << "l " << row.level_lo << "->" << row.level_hi << ": sup distance "
            << format_g17(row.sup_theta_dist) << (row.within_bound ? "" : " EXCEEDS BOUND")
            << "\n";
    }
    write_csv((fs::path(out_dir) / "mollify.csv").string(), table);
    if (config.emit_plots) write_plot(out_dir, "mollify.csv", {"sup_theta_dist"});
}

void run_command(const ScenarioConfig& config, const std::string& out_dir, std::ostream& log) {
    switch (config.command) {
    case Command::Solve:
        return run_solve(config, out_dir, log);
    case Command::Extinction:
        return run_extinction(config, out_dir, log);
    case Command::DecaySweep:
        return run_decay_sweep(config, out_dir, log);
    case Command::Smoothing:
        return run_smoothing(config, out_dir, log);
    case Command::Verify:
        return run_verify(config, out_dir, log);
    case Command::MollifyStudy:
        return run_mollify_study(config, out_dir, log);
    }
}

} // namespace wavelab::scenario
