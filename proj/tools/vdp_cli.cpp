// Command-line front door: one subcommand per experiment family, file-based
// CSV/JSON/WAV outputs, and a manifest alongside every run for byte-identical
// replay.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vdp/averaging.hpp"
#include "vdp/forced.hpp"
#include "vdp/manifest.hpp"
#include "vdp/ode.hpp"
#include "vdp/sonify.hpp"
#include "vdp/spectra.hpp"
#include "vdp/symdyn.hpp"

namespace {

using vdp::Params;
using vdp::State;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw vdp::IoError("cannot open " + path + " for writing");
    return out;
}

// `--config` files hold one key=value per line; keys mirror long option
// names without the leading dashes.
std::map<std::string, std::string> load_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw vdp::IoError("cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("config", "expected key=value: " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

struct CommonArgs {
    double a = -1, b = 0, w = 1, theta = 0;
    double x0 = 0, y0 = 0;

    Params params() const { return Params{a, b, w, theta}; }
    State init() const { return State{0.0, x0, y0}; }
};

void add_param_flags(CLI::App* cmd, CommonArgs& c, bool require_a = true) {
    auto* a = cmd->add_option("-a", c.a, "damping strength");
    if (require_a) a->required();
    cmd->add_option("-b", c.b, "forcing amplitude");
    cmd->add_option("-w,--omega", c.w, "forcing angular frequency");
    cmd->add_option("--theta", c.theta, "forcing phase");
    cmd->add_option("--x0", c.x0, "initial x");
    cmd->add_option("--y0", c.y0, "initial y");
}

vdp::RunManifest make_manifest(const std::string& sub, int argc, char** argv,
                               const Params& p) {
    vdp::RunManifest m;
    m.subcommand = sub;
    m.argv.assign(argv, argv + argc);
    m.params = p;
    return m;
}

unsigned default_jobs() {
    if (const char* env = std::getenv("VDP_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

vdp::PeakList read_peaks_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw vdp::IoError("cannot open peak list " + path);
    vdp::PeakList peaks;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        vdp::Peak pk;
        char comma = 0;
        if (!(row >> pk.freq >> comma >> pk.mag >> comma >> pk.rel))
            throw vdp::IoError("malformed peak row: " + line);
        peaks.peaks.push_back(pk);
    }
    return peaks;
}

int run(int argc, char** argv);

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(int argc, char** argv, const CommonArgs& c, const std::string& form_name,
                 double dt, double t_max, const std::string& out_path) {
    vdp::SystemForm form = vdp::SystemForm::ForcedStandard;
    if (form_name == "lienard") form = vdp::SystemForm::LienardPlane;
    else if (form_name == "relaxation") form = vdp::SystemForm::RelaxationScaled;
    else if (form_name == "transformed") form = vdp::SystemForm::Transformed;

    const Params p = c.params();
    double step = dt;
    if (step <= 0) step = p.b > 0 ? p.forcing_period() / 1000.0 : 1e-3;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::round(t_max / step)));
    const auto traj = vdp::integrate(form, p, c.init(), step, n);

    auto out = open_out(out_path);
    vdp::write_trajectory_csv(out, traj);

    auto m = make_manifest("simulate", argc, argv, p);
    m.dt = step;
    m.n = static_cast<long>(n);
    m.options["form"] = form_name;
    m.outputs = {out_path};
    m.write(out_path + ".manifest.json");
    return kExitOk;
}

// ---------------------------------------------------------------------------
// poincare

int cmd_poincare(int argc, char** argv, const CommonArgs& c, double transient_periods,
                 std::size_t n_points, double dt, double tol, const std::string& stem) {
    const Params p = c.params();
    if (p.b <= 0) throw vdp::DomainError("poincare: stroboscopic period undefined for b = 0");
    const double T = p.forcing_period();
    const auto sec = vdp::poincare(p, c.init(), transient_periods * T, n_points, dt);
    const auto verdict = vdp::detect_period(sec, tol);

    {
        auto out = open_out(stem + ".csv");
        out << "x,y\n";
        for (const auto& pt : sec.points)
            out << vdp::format_double(pt[0]) << ',' << vdp::format_double(pt[1]) << '\n';
    }
    {
        nlohmann::ordered_json j;
        j["kind"] = verdict.locked() ? "locked" : "drifting";
        if (verdict.locked()) j["m"] = verdict.m;
        j["clusters"] = verdict.clusters;
        j["tolerance"] = verdict.tolerance;
        auto out = open_out(stem + ".verdict.json");
        out << j.dump(2) << "\n";
    }

    auto m = make_manifest("poincare", argc, argv, p);
    m.transient = transient_periods * T;
    m.n = static_cast<long>(n_points);
    m.dt = dt;
    m.outputs = {stem + ".csv", stem + ".verdict.json"};
    m.write(stem + ".manifest.json");

    std::cout << (verdict.locked() ? "locked m=" + std::to_string(verdict.m) : "drifting")
              << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bifurcate

int cmd_bifurcate(int argc, char** argv, const CommonArgs& c, const std::string& axis_name,
                  double lo, double hi, double step, const vdp::ScanOptions& opts,
                  const std::string& stem) {
    const Params p = c.params();
    const vdp::ScanAxis axis = axis_name == "omega" ? vdp::ScanAxis::Omega : vdp::ScanAxis::B;
    const auto data = vdp::bifurcation_scan(axis, lo, hi, step, p, c.init(), opts);

    auto points = open_out(stem + ".points.csv");
    auto periods = open_out(stem + ".periods.csv");
    vdp::write_bifurcation_csv(points, periods, data);

    auto m = make_manifest("bifurcate", argc, argv, p);
    m.transient = opts.transient;
    m.n = static_cast<long>(opts.n_samples);
    m.options["axis"] = axis_name;
    m.options["lo"] = vdp::format_double(lo);
    m.options["hi"] = vdp::format_double(hi);
    m.options["step"] = vdp::format_double(step);
    m.options["continuation"] = opts.continuation ? "true" : "false";
    m.outputs = {stem + ".points.csv", stem + ".periods.csv"};
    m.write(stem + ".manifest.json");
    return kExitOk;
}

// ---------------------------------------------------------------------------
// lyapunov

int cmd_lyapunov(int argc, char** argv, const CommonArgs& c, double d0, double interval,
                 int n_renorm, double transient_periods, const std::string& out_path) {
    const Params p = c.params();
    const double T = p.b > 0 ? p.forcing_period() : 2.0 * std::numbers::pi;
    const auto est =
        vdp::lyapunov_max(p, c.init(), d0, interval, n_renorm, transient_periods * T);

    nlohmann::ordered_json j;
    j["lambda"] = est.lambda;
    j["stderr"] = est.stderr_;
    j["n_renorm"] = est.n_renorm;
    j["params"] = {{"a", p.a}, {"b", p.b}, {"omega", p.omega}, {"theta", p.theta}};
    auto out = open_out(out_path);
    out << j.dump(2) << "\n";

    auto m = make_manifest("lyapunov", argc, argv, p);
    m.transient = transient_periods * T;
    m.n = n_renorm;
    m.outputs = {out_path};
    m.write(out_path + ".manifest.json");

    std::cout << "lambda=" << est.lambda << " stderr=" << est.stderr_ << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// spectrum

int cmd_spectrum(int argc, char** argv, const CommonArgs& c, double minp,
                 const vdp::SpectrumSampling& sampling, bool sweep, double lo, double hi,
                 int n_values, const std::string& stem) {
    const Params p = c.params();
    auto m = make_manifest("spectrum", argc, argv, p);

    if (sweep) {
        const auto rows =
            vdp::spectrum_sweep(vdp::ScanAxis::B, lo, hi, n_values, p, c.init(), sampling);
        auto out = open_out(stem + ".sweep.csv");
        vdp::write_sweep_csv(out, rows);
        m.outputs = {stem + ".sweep.csv"};
    } else {
        double dt = 0.0;
        const auto series = vdp::sample_series(p, c.init(), sampling, &dt);
        const auto spec = vdp::power_spectrum(series, dt);
        const auto peaks = vdp::detect_peaks(spec, minp);
        const auto label = vdp::classify(spec);
        {
            auto out = open_out(stem + ".spectrum.csv");
            vdp::write_spectrum_csv(out, spec);
        }
        {
            auto out = open_out(stem + ".peaks.csv");
            vdp::write_peaks_csv(out, peaks);
        }
        {
            nlohmann::ordered_json j;
            j["regime"] = vdp::regime_name(label);
            j["significant_peaks"] = vdp::count_significant(spec, 0.5);
            j["minp_pct"] = minp;
            auto out = open_out(stem + ".regime.json");
            out << j.dump(2) << "\n";
        }
        m.dt = dt;
        m.outputs = {stem + ".spectrum.csv", stem + ".peaks.csv", stem + ".regime.json"};
        std::cout << vdp::regime_name(label) << "\n";
    }
    m.options["minp"] = vdp::format_double(minp);
    m.write(stem + ".manifest.json");
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sonify

int cmd_sonify(int argc, char** argv, const CommonArgs& c, const std::string& peaks_path,
               double minp, double k_scale, double duration, int rate,
               const vdp::SpectrumSampling& sampling, const std::string& out_path) {
    vdp::PeakList peaks;
    Params p;
    if (!peaks_path.empty()) {
        peaks = read_peaks_csv(peaks_path);
    } else {
        p = c.params();
        double dt = 0.0;
        const auto series = vdp::sample_series(p, c.init(), sampling, &dt);
        peaks = vdp::detect_peaks(vdp::power_spectrum(series, dt), minp);
    }
    const auto buf = vdp::synthesize(peaks, k_scale, duration, rate);
    if (buf.inaudible_range)
        std::cerr << "warning: every scaled partial falls outside [16, 20000] Hz\n";
    vdp::write_wav_file(out_path, buf);

    auto m = make_manifest("sonify", argc, argv, p);
    m.options["k_scale"] = vdp::format_double(k_scale);
    m.options["duration"] = vdp::format_double(duration);
    m.options["rate"] = std::to_string(rate);
    if (!peaks_path.empty()) m.options["peaks"] = peaks_path;
    m.outputs = {out_path};
    m.write(out_path + ".manifest.json");
    return kExitOk;
}

// ---------------------------------------------------------------------------
// symdyn

int cmd_symdyn(std::ostream& out, int enumerate_m, int dense_depth,
               const std::string& metric_a, const std::string& metric_b, int window,
               const std::string& witness_seq, const std::vector<double>& spacings,
               int levinson_n, double tol) {
    if (enumerate_m > 0) {
        const auto seqs = vdp::enumerate_fixed(enumerate_m);
        out << "fixed points of shift^" << enumerate_m << ": " << seqs.size() << "\n";
        for (const auto& s : seqs)
            out << "  " << vdp::to_literal(s, -enumerate_m, enumerate_m) << "\n";
    }
    if (dense_depth > 0) {
        const auto d = vdp::dense_orbit(dense_depth);
        out << "dense orbit window [" << d.window_lo() << ", " << d.window_hi()
            << "], covering all words up to length " << dense_depth << "\n";
    }
    if (!metric_a.empty() && !metric_b.empty()) {
        const auto da = vdp::parse_literal(metric_a);
        const auto db = vdp::parse_literal(metric_b);
        // Pad with implicit zeros so short literals are usable directly.
        const auto wa = vdp::SymbolSequence::window(da.block(), da.window_lo(), true);
        const auto wb = vdp::SymbolSequence::window(db.block(), db.window_lo(), true);
        const auto r = vdp::metric(wa, wb, window);
        out << "metric=" << r.value << " tail_bound=" << r.error_bound << "\n";
    }
    if (!witness_seq.empty()) {
        const auto d = vdp::parse_literal(witness_seq);
        const auto padded = vdp::SymbolSequence::window(d.block(), d.window_lo(), true);
        const auto w = vdp::sensitivity_witness(padded, window);
        out << "witness n=" << w.n << " e="
            << vdp::to_literal(w.e, -window, window + 1) << "\n";
    }
    if (!spacings.empty()) {
        const auto seq = vdp::encode_spacings(spacings, levinson_n, tol);
        out << "encoded=" << vdp::to_literal(
                   vdp::SymbolSequence::window(seq.block(), 0, true), 0,
                   static_cast<long>(seq.block().size()) - 1)
            << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// figure presets

struct FigurePreset {
    std::string kind;  // simulate | response | poincare | bifurcate | divergence | spectrum | sonify
    std::vector<std::string> args;
};

const std::map<std::string, FigurePreset>& figure_presets() {
    static const std::map<std::string, FigurePreset> presets = {
        {"fig2.2", {"simulate", {"-a", "0.1", "-b", "0", "--x0", "0.5", "--t-max", "300"}}},
        {"fig2.4", {"simulate", {"--form", "relaxation", "-a", "8", "-b", "0", "--x0", "0.5",
                                 "--t-max", "60"}}},
        {"fig3.4", {"response", {"-a", "1", "-b", "0.5"}}},
        {"fig4.2", {"poincare", {"-a", "5", "-b", "15", "-w", "7"}}},
        {"fig4.3", {"poincare", {"-a", "5", "-b", "25", "-w", "7"}}},
        {"fig4.4", {"poincare", {"-a", "5", "-b", "50", "-w", "7"}}},
        {"fig4.5", {"poincare", {"-a", "5", "-b", "55", "-w", "7"}}},
        {"fig4.6a", {"bifurcate", {"-a", "5", "-w", "3", "--axis", "b", "--lo", "0.01",
                                   "--hi", "53", "--step", "0.1"}}},
        {"fig4.6b", {"bifurcate", {"-a", "5", "-w", "7", "--axis", "b", "--lo", "0.01",
                                   "--hi", "80", "--step", "0.1"}}},
        {"fig4.8a", {"bifurcate", {"-a", "3", "-b", "5", "--axis", "omega", "--lo", "1",
                                   "--hi", "7", "--step", "0.006"}}},
        {"fig4.10", {"bifurcate", {"-a", "5", "-b", "25", "--axis", "omega", "--lo", "1",
                                   "--hi", "7", "--step", "0.006"}}},
        {"fig4.14", {"poincare", {"-a", "3", "-b", "5", "-w", "1.788", "--points", "500"}}},
        {"fig4.15", {"poincare", {"-a", "5", "-b", "5", "-w", "3.37015", "--points", "500"}}},
        {"fig4.16", {"poincare", {"-a", "5", "-b", "25", "-w", "4.455", "--points", "500"}}},
        {"fig4.17", {"divergence", {"-a", "3", "-b", "5", "-w", "1.788", "--x0", "0.5"}}},
        {"fig4.18", {"divergence", {"-a", "5", "-b", "25", "-w", "4.455", "--x0", "0.5"}}},
        {"fig4.19", {"spectrum", {"-a", "5", "-b", "40", "-w", "7"}}},
        {"fig4.20", {"spectrum", {"-a", "5", "-b", "15", "-w", "7"}}},
        {"fig4.21", {"spectrum", {"-a", "3", "-b", "5", "-w", "1.788"}}},
        {"fig4.21a", {"spectrum", {"-a", "5", "-w", "7", "--sweep", "--lo", "22", "--hi", "29",
                                   "--values", "20", "-b", "22"}}},
        {"fig4.21b", {"spectrum", {"-a", "5", "-w", "7", "--sweep", "--lo", "27", "--hi", "30",
                                   "--values", "20", "-b", "27"}}},
        {"fig4.22", {"sonify", {"-a", "5", "-b", "40", "-w", "7"}}},
        {"fig4.23", {"sonify", {"-a", "5", "-b", "15", "-w", "7"}}},
        {"fig4.24", {"sonify", {"-a", "3", "-b", "5", "-w", "1.788"}}},
    };
    return presets;
}

int cmd_figure(const std::string& name, const std::string& out_stem) {
    const auto& presets = figure_presets();
    const auto it = presets.find(name);
    if (it == presets.end())
        throw CLI::ValidationError("figure", "unknown figure name: " + name);
    std::vector<std::string> args = {"vdp", it->second.kind};
    for (const auto& a : it->second.args) args.push_back(a);
    args.push_back("-o");
    args.push_back(out_stem);
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

// ---------------------------------------------------------------------------
// amplitude-response curve (Fig 3.4 data) and divergence series

int cmd_response(int argc, char** argv, const CommonArgs& c, double sigma_lo,
                 double sigma_hi, double sigma_step, const std::string& out_path) {
    const Params p = c.params();
    auto out = open_out(out_path);
    out << "sigma,r\n";
    for (double s = sigma_lo; s <= sigma_hi + sigma_step / 2; s += sigma_step) {
        const double w2 = 1.0 + p.b * s;
        if (w2 <= 0) continue;  // detuning outside the representable branch
        const double r = vdp::amplitude_response(p.a, p.b, std::sqrt(w2));
        out << vdp::format_double(s) << ',' << vdp::format_double(r) << '\n';
    }
    auto m = make_manifest("response", argc, argv, p);
    m.options["sigma_lo"] = vdp::format_double(sigma_lo);
    m.options["sigma_hi"] = vdp::format_double(sigma_hi);
    m.options["sigma_step"] = vdp::format_double(sigma_step);
    m.outputs = {out_path};
    m.write(out_path + ".manifest.json");
    return kExitOk;
}

int cmd_divergence(int argc, char** argv, const CommonArgs& c, double delta,
                   double span_periods, const std::string& out_path) {
    const Params p = c.params();
    const double T = p.b > 0 ? p.forcing_period() : 2.0 * std::numbers::pi;
    const auto res = vdp::divergence_experiment(p, c.init(), delta, span_periods * T);
    auto out = open_out(out_path);
    out << "t,x1,x2,log_separation\n";
    for (std::size_t i = 0; i < res.series1.size(); ++i)
        out << vdp::format_double(static_cast<double>(i) * res.dt) << ','
            << vdp::format_double(res.series1[i]) << ',' << vdp::format_double(res.series2[i])
            << ',' << vdp::format_double(res.log_separation[i]) << '\n';
    auto m = make_manifest("divergence", argc, argv, p);
    m.dt = res.dt;
    m.options["delta"] = vdp::format_double(delta);
    m.outputs = {out_path};
    m.write(out_path + ".manifest.json");
    return kExitOk;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{"Van der Pol oscillator laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value defaults file");
    unsigned jobs = default_jobs();
    app.add_option("--jobs", jobs, "worker cap for scans");

    CommonArgs c;
    const auto positive = CLI::PositiveNumber;

    // simulate
    auto* sim = app.add_subcommand("simulate", "integrate one trajectory to CSV");
    std::string form = "forced";
    double dt = 0.0, t_max = 100.0;
    std::string out = "out";
    add_param_flags(sim, c);
    sim->add_option("--form", form, "forced|lienard|relaxation|transformed")
        ->check(CLI::IsMember({"forced", "lienard", "relaxation", "transformed"}));
    sim->add_option("--dt", dt, "integration step")->check(positive);
    sim->add_option("--t-max", t_max, "end time")->check(positive);
    sim->add_option("-o,--out", out, "output CSV path");

    // poincare
    auto* poin = app.add_subcommand("poincare", "stroboscopic section + period verdict");
    double transient_periods = 500.0, tol = 1e-3;
    std::size_t n_points = 50;
    add_param_flags(poin, c);
    poin->add_option("--transient", transient_periods, "transient, in forcing periods");
    poin->add_option("--points", n_points, "number of section points");
    poin->add_option("--dt", dt, "integration step")->check(positive);
    poin->add_option("--tol", tol, "clustering tolerance");
    poin->add_option("-o,--out", out, "output stem");

    // bifurcate
    auto* bif = app.add_subcommand("bifurcate", "bifurcation scan over b or omega");
    std::string axis = "b";
    double lo = 0.0, hi = 1.0, step = 0.1;
    bool continuation = false;
    add_param_flags(bif, c);
    bif->add_option("--axis", axis, "b|omega")->check(CLI::IsMember({"b", "omega"}));
    bif->add_option("--lo", lo)->required();
    bif->add_option("--hi", hi)->required();
    bif->add_option("--step", step)->required()->check(positive);
    std::size_t samples = 50;
    bif->add_option("--samples", samples, "Poincare points per row");
    bif->add_option("--transient", transient_periods, "transient, in forcing periods");
    bif->add_flag("--continuation", continuation, "chain initial conditions across rows");
    bif->add_option("-o,--out", out, "output stem");

    // lyapunov
    auto* lya = app.add_subcommand("lyapunov", "largest Lyapunov exponent (Benettin)");
    double d0 = 1e-8, interval = 0.0;
    int n_renorm = 400;
    add_param_flags(lya, c);
    lya->add_option("--d0", d0, "initial separation")->check(positive);
    lya->add_option("--interval", interval, "renormalization interval (default T)");
    lya->add_option("--n-renorm", n_renorm, "number of renormalizations");
    lya->add_option("--transient", transient_periods, "transient, in periods");
    lya->add_option("-o,--out", out, "output JSON path");

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "FFT spectrum, peaks, regime label");
    double minp = 0.5;
    vdp::SpectrumSampling sampling;
    bool sweep = false;
    int n_values = 20;
    add_param_flags(spec, c);
    spec->add_option("--minp", minp, "peak threshold, % of max")->check(positive);
    spec->add_option("--transient-periods", sampling.transient_periods);
    spec->add_option("--window-periods", sampling.window_periods);
    spec->add_option("--samples-per-period", sampling.samples_per_period);
    spec->add_flag("--sweep", sweep, "b-sweep spectrogram matrix");
    spec->add_option("--lo", lo, "sweep lower bound");
    spec->add_option("--hi", hi, "sweep upper bound");
    spec->add_option("--values", n_values, "sweep grid size");
    spec->add_option("-o,--out", out, "output stem");

    // sonify
    auto* son = app.add_subcommand("sonify", "render a peak list (or pipeline) to WAV");
    std::string peaks_path;
    double k_scale = 1e3, duration = 4.0;
    int rate = 44100;
    add_param_flags(son, c, /*require_a=*/false);
    son->add_option("--peaks", peaks_path, "peak list CSV (skips the pipeline)");
    son->add_option("--minp", minp, "peak threshold when running the pipeline");
    son->add_option("--k-scale", k_scale, "frequency normalization constant");
    son->add_option("--duration", duration, "seconds")->check(positive);
    son->add_option("--rate", rate, "sample rate");
    son->add_option("-o,--out", out, "output WAV path");

    // symdyn
    auto* sym = app.add_subcommand("symdyn", "shift-space reports");
    int enumerate_m = 0, dense_depth = 0, window = 8, levinson_n = 1;
    std::string metric_a, metric_b, witness_seq;
    std::vector<double> spacings;
    double spacing_tol = 0.1;
    sym->add_option("--enumerate", enumerate_m, "list fixed points of shift^m");
    sym->add_option("--dense", dense_depth, "build the dense orbit to this depth");
    sym->add_option("--metric", metric_a, "first sequence literal (with --other)");
    sym->add_option("--other", metric_b, "second sequence literal");
    sym->add_option("--window", window, "metric/witness window W");
    sym->add_option("--witness", witness_seq, "sensitivity witness for this literal");
    sym->add_option("--encode", spacings, "spacing list to encode");
    sym->add_option("--n", levinson_n, "Levinson integer n");
    sym->add_option("--tol", spacing_tol, "spacing tolerance");

    // figure
    auto* fig = app.add_subcommand("figure", "regenerate the data behind a named figure preset");
    std::string fig_name;
    fig->add_option("name", fig_name, "figure preset, e.g. fig4.3")->required();
    fig->add_option("-o,--out", out, "output stem");

    // response (Fig 3.4 curve)
    auto* resp = app.add_subcommand("response", "amplitude-response curve over sigma");
    double sigma_lo = -1.9, sigma_hi = 1.0, sigma_step = 0.01;
    add_param_flags(resp, c);
    resp->add_option("--sigma-lo", sigma_lo);
    resp->add_option("--sigma-hi", sigma_hi);
    resp->add_option("--sigma-step", sigma_step)->check(positive);
    resp->add_option("-o,--out", out, "output CSV path");

    // divergence
    auto* div = app.add_subcommand("divergence", "twin-run sensitive-dependence series");
    double delta = 1e-5, span_periods = 200.0;
    add_param_flags(div, c);
    div->add_option("--delta", delta, "initial offset");
    div->add_option("--span", span_periods, "run length, in periods");
    div->add_option("-o,--out", out, "output CSV path");

    // replay
    auto* rep = app.add_subcommand("replay", "re-run a stored manifest");
    std::string manifest_path;
    rep->add_option("manifest", manifest_path, "manifest JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Prints help or the usage error, then normalizes the exit code.
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    if (!config_path.empty()) {
        // Config supplies defaults only; explicit flags win.
        for (const auto& [key, value] : load_config(config_path)) {
            if (key == "transient" && poin->count("--transient") == 0)
                transient_periods = std::stod(value);
            else if (key == "dt" && sim->count("--dt") == 0 && poin->count("--dt") == 0)
                dt = std::stod(value);
            else if (key == "jobs" && app.count("--jobs") == 0)
                jobs = static_cast<unsigned>(std::stoul(value));
            else if (key == "minp" && spec->count("--minp") == 0)
                minp = std::stod(value);
        }
    }

    if (sim->parsed()) return cmd_simulate(argc, argv, c, form, dt, t_max, out);
    if (poin->parsed())
        return cmd_poincare(argc, argv, c, transient_periods, n_points, dt, tol, out);
    if (bif->parsed()) {
        vdp::ScanOptions opts;
        opts.n_samples = samples;
        opts.transient = transient_periods > 0 && bif->count("--transient")
                             ? transient_periods * (2.0 * std::numbers::pi / c.w)
                             : 0.0;
        opts.continuation = continuation;
        opts.jobs = jobs;
        return cmd_bifurcate(argc, argv, c, axis, lo, hi, step, opts, out);
    }
    if (lya->parsed())
        return cmd_lyapunov(argc, argv, c, d0, interval, n_renorm, transient_periods, out);
    if (spec->parsed())
        return cmd_spectrum(argc, argv, c, minp, sampling, sweep, lo, hi, n_values, out);
    if (son->parsed())
        return cmd_sonify(argc, argv, c, peaks_path, son->count("--minp") ? minp : 4.0, k_scale,
                          duration, rate, sampling, out);
    if (sym->parsed())
        return cmd_symdyn(std::cout, enumerate_m, dense_depth, metric_a, metric_b, window,
                          witness_seq, spacings, levinson_n, spacing_tol);
    if (fig->parsed()) return cmd_figure(fig_name, out);
    if (resp->parsed())
        return cmd_response(argc, argv, c, sigma_lo, sigma_hi, sigma_step, out);
    if (div->parsed()) return cmd_divergence(argc, argv, c, delta, span_periods, out);
    if (rep->parsed()) {
        auto mf = vdp::RunManifest::from_json_file(manifest_path);
        std::vector<char*> replay_argv;
        for (auto& a : mf.argv) replay_argv.push_back(a.data());
        return run(static_cast<int>(replay_argv.size()), replay_argv.data());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return kExitOk;  // --help
        CLI::App dummy;
        dummy.exit(e);
        return kExitUsage;
    } catch (const vdp::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const vdp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
