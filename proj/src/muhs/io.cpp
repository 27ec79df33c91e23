#include "io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace muhs {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

int line_of_byte(const std::string& text, size_t byte) {
    int line = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

void require_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

double get_num(const json& obj, const std::string& where, const std::string& key, double fallback,
               bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw ConfigError(where + ": missing key '" + key + "'");
        return fallback;
    }
    if (!obj[key].is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

std::vector<double> get_vec(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) return {};
    if (!obj[key].is_array()) throw ConfigError(where + "." + key + ": expected an array");
    std::vector<double> out;
    for (const auto& v : obj[key]) {
        if (!v.is_number()) throw ConfigError(where + "." + key + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Profile parse_profile(const json& obj, const std::string& where) {
    if (!obj.is_object() || !obj.contains("kind") || !obj["kind"].is_string())
        throw ConfigError(where + ": expected an object with a 'kind' string");
    const std::string kind = obj["kind"].get<std::string>();
    if (kind == "hat") {
        require_keys(obj, where, {"kind"});
        return hat_profile();
    }
    if (kind == "constant") {
        require_keys(obj, where, {"kind", "value"});
        return constant_profile(get_num(obj, where, "value", 0.0, true));
    }
    if (kind == "step") {
        require_keys(obj, where, {"kind", "left", "right"});
        return step_profile(get_num(obj, where, "left", 0.0, true),
                            get_num(obj, where, "right", 0.0, true));
    }
    if (kind == "fourier") {
        require_keys(obj, where, {"kind", "a0", "cos", "sin"});
        return fourier_profile(get_num(obj, where, "a0", 0.0), get_vec(obj, where, "cos"),
                               get_vec(obj, where, "sin"));
    }
    if (kind == "piecewise_linear" || kind == "piecewise_constant") {
        require_keys(obj, where, {"kind", "x", "y"});
        Profile p;
        p.kind = kind == "piecewise_linear" ? Profile::Kind::PiecewiseLinear
                                            : Profile::Kind::PiecewiseConstant;
        p.xs = get_vec(obj, where, "x");
        p.ys = get_vec(obj, where, "y");
        if (p.xs.empty() || p.xs.size() != p.ys.size())
            throw ConfigError(where + ": 'x' and 'y' need equal nonzero lengths");
        if (p.xs.front() != 0.0) throw ConfigError(where + ": breakpoints must start at 0");
        for (size_t i = 0; i + 1 < p.xs.size(); ++i)
            if (p.xs[i + 1] <= p.xs[i] || p.xs[i + 1] >= 1.0)
                throw ConfigError(where + ": breakpoints must increase within [0,1)");
        return p;
    }
    if (kind == "samples") {
        require_keys(obj, where, {"kind", "values"});
        Profile p;
        p.kind = Profile::Kind::Samples;
        p.samples = get_vec(obj, where, "values");
        if (p.samples.empty()) throw ConfigError(where + ": 'values' must be nonempty");
        return p;
    }
    throw ConfigError(where + ": unknown profile kind '" + kind + "'");
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error at line " + std::to_string(line_of_byte(text, e.byte)) +
                          ": " + e.what());
    }

    require_keys(root, "config",
                 {"grid_n", "gamma", "initial", "mollifier_n", "mollifier_list", "time",
                  "probe_times", "out_dir", "seed", "declare_global", "dealias"});

    ExperimentConfig cfg;
    cfg.grid_n = static_cast<int>(get_num(root, "config", "grid_n", 128, true));
    if (cfg.grid_n < 4 || cfg.grid_n % 2 != 0)
        throw ConfigError("config.grid_n: must be even and >= 4");
    cfg.gamma = get_num(root, "config", "gamma", 0.0);
    if (!std::isfinite(cfg.gamma)) throw ConfigError("config.gamma: must be finite");

    if (!root.contains("initial")) throw ConfigError("config: missing key 'initial'");
    const json& init = root["initial"];
    require_keys(init, "config.initial", {"alpha", "u0", "rho0"});
    if (!init.contains("u0") || !init.contains("rho0"))
        throw ConfigError("config.initial: needs 'u0' and 'rho0'");
    cfg.initial.u0 = parse_profile(init["u0"], "config.initial.u0");
    cfg.initial.rho0 = parse_profile(init["rho0"], "config.initial.rho0");
    cfg.initial.alpha = get_num(init, "config.initial", "alpha", 0.0);

    if (root.contains("mollifier_n")) {
        const int m = static_cast<int>(get_num(root, "config", "mollifier_n", 0, true));
        if (m < 2) throw ConfigError("config.mollifier_n: must be >= 2");
        cfg.mollifier_n = m;
    }
    if (root.contains("mollifier_list")) {
        for (double v : get_vec(root, "config", "mollifier_list")) {
            const int m = static_cast<int>(v);
            if (m < 2) throw ConfigError("config.mollifier_list: entries must be >= 2");
            cfg.mollifier_list.push_back(m);
        }
    }

    if (root.contains("time")) {
        const json& t = root["time"];
        require_keys(t, "config.time",
                     {"t_end", "cfl", "dt_max", "record_every", "blowup_threshold", "fixed_dt"});
        cfg.time.t_end = get_num(t, "config.time", "t_end", 1.0);
        cfg.time.cfl = get_num(t, "config.time", "cfl", 0.3);
        cfg.time.dt_max = get_num(t, "config.time", "dt_max", 1e-2);
        cfg.time.record_every = static_cast<int>(get_num(t, "config.time", "record_every", 1));
        cfg.time.blowup_threshold = get_num(t, "config.time", "blowup_threshold", 1e6);
        if (t.contains("fixed_dt")) cfg.time.fixed_dt = get_num(t, "config.time", "fixed_dt", 0.0, true);
        if (cfg.time.t_end < 0.0) throw ConfigError("config.time.t_end: must be >= 0");
        if (!(cfg.time.cfl > 0.0 && cfg.time.cfl <= 1.0))
            throw ConfigError("config.time.cfl: must lie in (0, 1]");
        if (!(cfg.time.dt_max > 0.0)) throw ConfigError("config.time.dt_max: must be positive");
        if (cfg.time.record_every < 1) throw ConfigError("config.time.record_every: must be >= 1");
        if (!(cfg.time.blowup_threshold > 0.0))
            throw ConfigError("config.time.blowup_threshold: must be positive");
        if (cfg.time.fixed_dt && !(*cfg.time.fixed_dt > 0.0))
            throw ConfigError("config.time.fixed_dt: must be positive");
    }

    cfg.probe_times = get_vec(root, "config", "probe_times");
    for (double pt : cfg.probe_times)
        if (pt < 0.0 || pt > cfg.time.t_end)
            throw ConfigError("config.probe_times: entries must lie in [0, t_end]");

    if (root.contains("out_dir")) {
        if (!root["out_dir"].is_string()) throw ConfigError("config.out_dir: expected a string");
        cfg.out_dir = root["out_dir"].get<std::string>();
    }
    if (root.contains("seed")) cfg.seed = static_cast<std::uint64_t>(get_num(root, "config", "seed", 0));
    if (root.contains("declare_global")) {
        if (!root["declare_global"].is_boolean())
            throw ConfigError("config.declare_global: expected a boolean");
        cfg.declare_global = root["declare_global"].get<bool>();
    }
    if (root.contains("dealias")) {
        if (!root["dealias"].is_boolean()) throw ConfigError("config.dealias: expected a boolean");
        cfg.dealias = root["dealias"].get<bool>();
    }

    cfg.echo = root.dump(2);
    return cfg;
}

RunArchive make_archive_dir(const std::string& dir) {
    std::filesystem::create_directories(dir);
    return RunArchive{dir};
}

namespace {

std::ofstream open_out(const RunArchive& a, const std::string& name) {
    std::ofstream out(std::filesystem::path(a.dir) / name);
    if (!out) throw std::runtime_error("cannot write " + name + " in " + a.dir);
    return out;
}

}  // namespace

void write_manifest(const RunArchive& a, const ExperimentConfig& cfg, const std::string& extra) {
    auto out = open_out(a, "manifest.txt");
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    out << "code_version: " << kVersion << "\n";
    out << "written_at: " << now << "\n";
    out << "seed: " << cfg.seed << "\n";
    if (!extra.empty()) out << extra << "\n";
    out << "columns.diagnostics: t,mu0,energy,sup_u,sup_ux,sup_rho,min_rho,sup_bound_margin,"
           "c1_margin,c2_margin\n";
    out << "columns.trajectory: t,u_0..u_{n-1},rho_0..rho_{n-1}\n";
    out << "columns.bounds: t,sup_ux,c1_tilde,c1_margin,sup_rho,c2_tilde,c2_margin\n";
    out << "config:\n" << cfg.echo << "\n";
}

void write_diagnostics_csv(const RunArchive& a, const TrajectoryRecord& traj) {
    auto out = open_out(a, "diagnostics.csv");
    out << "t,mu0,energy,sup_u,sup_ux,sup_rho,min_rho,sup_bound_margin,c1_margin,c2_margin\r\n";
    for (const Snapshot& s : traj.snaps) {
        const Diagnostics& d = s.diag;
        out << format_double(s.t) << ',' << format_double(d.mu0) << ',' << format_double(d.energy)
            << ',' << format_double(d.sup_u) << ',' << format_double(d.sup_ux) << ','
            << format_double(d.sup_rho) << ',' << format_double(d.min_rho) << ','
            << format_double(d.sup_bound_margin) << ',' << format_double(d.c1_margin) << ','
            << format_double(d.c2_margin) << "\r\n";
    }
}

void write_trajectory_csv(const RunArchive& a, const TrajectoryRecord& traj) {
    auto out = open_out(a, "trajectory.csv");
    const int n = traj.front().u.n();
    out << "t";
    for (int j = 0; j < n; ++j) out << ",u_" << j;
    for (int j = 0; j < n; ++j) out << ",rho_" << j;
    out << "\r\n";
    for (const Snapshot& s : traj.snaps) {
        out << format_double(s.t);
        for (double v : s.u.values) out << ',' << format_double(v);
        for (double v : s.rho.values) out << ',' << format_double(v);
        out << "\r\n";
    }
}

void write_bounds_csv(const RunArchive& a, const TrajectoryRecord& traj) {
    auto out = open_out(a, "bounds.csv");
    out << "t,sup_ux,c1_tilde,c1_margin,sup_rho,c2_tilde,c2_margin\r\n";
    for (const Snapshot& s : traj.snaps) {
        const double c1 = c1_tilde(s.t, traj.init);
        const double c2 = c2_tilde(s.t, traj.init);
        out << format_double(s.t) << ',' << format_double(s.diag.sup_ux) << ',' << format_double(c1)
            << ',' << format_double(c1 - s.diag.sup_ux) << ',' << format_double(s.diag.sup_rho)
            << ',' << format_double(c2) << ',' << format_double(c2 - s.diag.sup_rho) << "\r\n";
    }
}

void write_convergence_csv(const RunArchive& a, const ConvergenceReport& rep) {
    auto out = open_out(a, "convergence.csv");
    out << "probe_t,n_lo,n_hi,l2_u,l2_ux,l2_rho,sup_u,sup_ux,sup_rho\r\n";
    for (size_t pi = 0; pi < rep.probe_times.size(); ++pi)
        for (const auto& d : rep.pairs[pi])
            out << format_double(rep.probe_times[pi]) << ',' << d.n_lo << ',' << d.n_hi << ','
                << format_double(d.l2_u) << ',' << format_double(d.l2_ux) << ','
                << format_double(d.l2_rho) << ',' << format_double(d.sup_u) << ','
                << format_double(d.sup_ux) << ',' << format_double(d.sup_rho) << "\r\n";

    auto eout = open_out(a, "energies.csv");
    eout << "mollifier_n,energy0,max_energy_probes,rough_mu1_sq,dt_used\r\n";
    for (size_t i = 0; i < rep.n_list.size(); ++i)
        eout << rep.n_list[i] << ',' << format_double(rep.run_energy0[i]) << ','
             << format_double(rep.max_energy_probes[i]) << ',' << format_double(rep.rough_mu1_sq)
             << ',' << format_double(rep.dt_used) << "\r\n";

    auto pout = open_out(a, "probes.csv");
    pout << "mollifier_n,probe_t,norm_sum,rough_norm_sum\r\n";
    for (size_t i = 0; i < rep.n_list.size(); ++i)
        for (size_t pi = 0; pi < rep.probe_times.size(); ++pi)
            pout << rep.n_list[i] << ',' << format_double(rep.probe_times[pi]) << ','
                 << format_double(rep.norm_sums[i][pi]) << ','
                 << format_double(rep.rough_norm_sum) << "\r\n";
}

void write_convergence_summary(const RunArchive& a, const ConvergenceReport& rep) {
    auto out = open_out(a, "convergence_summary.txt");
    out << "mollifier indices:";
    for (int n : rep.n_list) out << ' ' << n;
    out << "\nfixed dt: " << format_double(rep.dt_used) << "\n";
    out << "cauchy_decay: " << (rep.cauchy_decay ? "yes" : "no") << "\n";
    out << "energy_dominance: " << (rep.energy_dominance ? "yes" : "no") << "\n";
    out << "admissibility_margin (finest run): " << format_double(rep.admissibility_margin) << "\n";
    for (size_t pi = 0; pi < rep.probe_times.size(); ++pi) {
        out << "probe t = " << format_double(rep.probe_times[pi]) << "\n";
        for (const auto& d : rep.pairs[pi])
            out << "  d(" << d.n_lo << "," << d.n_hi << "): l2_u=" << format_double(d.l2_u)
                << " l2_ux=" << format_double(d.l2_ux) << " l2_rho=" << format_double(d.l2_rho)
                << "\n";
    }
}

void write_mollifier_inspect(const RunArchive& a, const Field& phi, const MollifyReport& rep,
                             int mollifier_n) {
    auto out = open_out(a, "mollifier.csv");
    out << "x,phi\r\n";
    for (int j = 0; j < phi.n(); ++j)
        out << format_double(phi.grid->nodes[static_cast<size_t>(j)]) << ','
            << format_double(phi.values[static_cast<size_t>(j)]) << "\r\n";

    auto t = open_out(a, "mollify_report.txt");
    t << "mollifier_n: " << mollifier_n << "\n";
    t << "bump_normalizer: " << format_double(rep.normalizer) << "\n";
    t << "l2(u0) rough/mollified: " << format_double(rep.u0_l2) << " " << format_double(rep.u0n_l2)
      << "\n";
    t << "l2(u0_x) rough/mollified: " << format_double(rep.u0x_l2) << " "
      << format_double(rep.u0xn_l2) << "\n";
    t << "l2(rho0) rough/mollified: " << format_double(rep.rho0_l2) << " "
      << format_double(rep.rho0n_l2) << "\n";
    t << "min(rho0) rough/mollified: " << format_double(rep.min_rho0) << " "
      << format_double(rep.min_rho0n) << "\n";
    t << "h1_dist(u0n, u0): " << format_double(rep.h1_dist) << "\n";
}

}  // namespace muhs
