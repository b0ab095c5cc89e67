// flmm command-line front end: weights, bench, fode, rd.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flmm/convolver.hpp"
#include "flmm/errors.hpp"
#include "flmm/fode.hpp"
#include "flmm/rd.hpp"
#include "flmm/realline.hpp"
#include "flmm/simd.hpp"
#include "flmm/talbot.hpp"
#include "flmm/weights.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace flmm;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
    std::string gf = "gngf2";
    double alpha = 0.5, sigma = 0, tau = 0.01, T = 10;
    int Q = 256, talbot_N = 36, B = 5, n0 = 50, m = 0, jobs = 1;
    std::string engine = "realline";
    std::uint64_t seed = 1;
    std::string out;
};

void add_common(CLI::App* c, Common& o, bool with_T = true) {
    c->add_option("--gf", o.gf, "generating function: fbdf1..fbdf6, gngf1..gngf6, ftrap")->capture_default_str();
    c->add_option("--alpha", o.alpha, "order")->capture_default_str();
    c->add_option("--sigma", o.sigma, "tempering parameter (>= 0)")->capture_default_str();
    c->add_option("--tau", o.tau, "step size")->capture_default_str();
    if (with_T) c->add_option("--T", o.T, "final time")->capture_default_str();
    c->add_option("--Q", o.Q, "real-line quadrature nodes")->capture_default_str();
    c->add_option("--talbot-N", o.talbot_N, "Talbot nodes per level")->capture_default_str();
    c->add_option("--B", o.B, "Talbot block base")->capture_default_str();
    c->add_option("--n0", o.n0, "exact local window")->capture_default_str();
    c->add_option("--engine", o.engine, "direct, talbot or realline")->capture_default_str();
    c->add_option("--m", o.m, "number of correction terms")->capture_default_str();
    c->add_option("--seed", o.seed, "random seed")->capture_default_str();
    c->add_option("--out", o.out, "output directory");
    c->add_option("--jobs", o.jobs, "worker threads for sweeps")->capture_default_str();
}

EngineConfig engine_of(const Common& o) {
    EngineConfig e;
    e.engine = parse_engine(o.engine);
    e.Q = o.Q;
    e.talbot_N = o.talbot_N;
    e.B = o.B;
    e.n0 = o.n0;
    if (o.Q < 2 || o.talbot_N < 1 || o.B < 2 || o.n0 < 1) throw ValidationError("need Q >= 2, talbot-N >= 1, B >= 2, n0 >= 1");
    return e;
}

json common_json(const Common& o) {
    return {{"gf", o.gf},   {"alpha", o.alpha}, {"sigma", o.sigma},       {"tau", o.tau},   {"T", o.T},
            {"Q", o.Q},     {"talbot_N", o.talbot_N}, {"B", o.B},         {"n0", o.n0},     {"engine", o.engine},
            {"m", o.m},     {"seed", o.seed},   {"jobs", o.jobs}};
}

fs::path prepare_out(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

void write_manifest(const fs::path& dir, const std::string& cmd, json params) {
    json j;
    j["command"] = cmd;
    j["version"] = kVersion;
    j["simd"] = simd::isa_name(simd::active());
    j["parameters"] = std::move(params);
    std::ofstream(dir / "manifest.json") << j.dump(2) << '\n';
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> r;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) r.push_back(std::stod(tok));
    if (r.empty()) throw ValidationError("empty list '" + s + "'");
    return r;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- weights --------------------------------------------------------------

struct WeightsOpts {
    Common c;
    long n_max = 100000;
    long stride = 1;
};

int cmd_weights(const WeightsOpts& o) {
    const auto gf = GeneratingFunction::parse(o.c.gf);
    const auto eng = engine_of(o.c);
    if (o.n_max <= o.c.n0) throw ValidationError("n-max must exceed n0");
    if (o.stride < 1) throw ValidationError("stride must be >= 1");
    const auto wt = convolution_weights(gf, o.c.alpha, o.c.sigma, o.c.tau, static_cast<std::size_t>(o.n_max));

    RealLineRule rule;
    bool have2 = true;
    try {
        rule = build_rule(make_phi_context(gf, o.c.alpha, o.c.tau), o.c.n0, o.n_max, o.c.Q);
    } catch (const UnsupportedForFastEngine& e) {
        have2 = false;
        std::cerr << "note: " << e.what() << "\n";
    }
    bool have1 = o.c.talbot_N > 0;
    std::vector<TalbotContour> contours;
    if (have1) {
        try {
            talbot_F(gf, o.c.alpha, o.c.tau, {1.0, 1.0});
        } catch (const UnsupportedForFastEngine& e) {
            have1 = false;
            std::cerr << "note: " << e.what() << "\n";
        }
    }

    std::ostringstream cmp;
    cmp << "n,exact,fast2,fast2_relerr" << (have1 ? ",fast1,fast1_relerr" : "") << '\n';
    for (long n = o.c.n0; n <= o.n_max; n += o.stride) {
        const double ex = wt.weights[static_cast<std::size_t>(n)];
        cmp << n << ',' << format_double(ex);
        if (have2) {
            const double f2 = realline_weight(rule, o.c.alpha, o.c.sigma, o.c.tau, n);
            cmp << ',' << format_double(f2) << ',' << format_double(std::abs(f2 - ex) / std::abs(ex));
        } else {
            cmp << ",nan,nan";
        }
        if (have1) {
            const int l = level_for_index(std::max<long>(n, o.c.n0 + 1), eng.B, eng.n0);
            while (static_cast<int>(contours.size()) < l)
                contours.push_back(talbot_nodes(eng.talbot_N, level_time(static_cast<int>(contours.size()) + 1, eng.B, eng.n0, o.c.tau)));
            const double f1 = fast_weight_talbot(n, contours[static_cast<std::size_t>(l - 1)], gf, o.c.alpha, o.c.sigma, o.c.tau);
            cmp << ',' << format_double(f1) << ',' << format_double(std::abs(f1 - ex) / std::abs(ex));
        }
        cmp << '\n';
    }

    if (o.c.out.empty()) {
        std::cout << cmp.str();
        return 0;
    }
    const auto dir = prepare_out(o.c.out);
    std::ofstream(dir / "compare.csv") << cmp.str();
    {
        std::ofstream f(dir / "weights.csv");
        wt.write_csv(f);
    }
    if (have2) {
        std::ofstream f(dir / "rule.csv");
        rule.write_csv(f);
    }
    if (have1) {
        std::ofstream f(dir / "talbot_levels.csv");
        write_talbot_diagnostics(f, gf, o.c.alpha, o.c.sigma, o.c.tau, eng.talbot_N, eng.B, eng.n0, o.n_max);
    }
    auto p = common_json(o.c);
    p["n_max"] = o.n_max;
    p["stride"] = o.stride;
    write_manifest(dir, "weights", p);
    return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchOpts {
    Common c;
    std::string sizes = "1000,10000,100000";
    std::string engines = "direct,talbot,realline";
    std::string q_sweep;
    bool diagnostics = false;
};

struct BenchRun {
    double seconds = 0;
    std::vector<double> values;
};

BenchRun bench_once(const GeneratingFunction& gf, const WeightTable& wt, const EngineConfig& e, std::size_t nT) {
    BenchRun r;
    r.values.resize(nT + 1);
    const auto t0 = std::chrono::steady_clock::now();
    auto conv = make_convolver(gf, wt, e, nT);
    for (std::size_t n = 0; n <= nT; ++n) {
        const double t = static_cast<double>(n) * wt.tau;
        r.values[n] = conv->step(t + t * t);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

double median_time(const GeneratingFunction& gf, const WeightTable& wt, const EngineConfig& e, std::size_t nT,
                   BenchRun& keep) {
    keep = bench_once(gf, wt, e, nT);
    if (nT >= 10000) return keep.seconds;
    std::vector<double> t{keep.seconds, bench_once(gf, wt, e, nT).seconds, bench_once(gf, wt, e, nT).seconds};
    std::sort(t.begin(), t.end());
    return t[1];
}

int cmd_bench(const BenchOpts& o) {
    const auto gf = GeneratingFunction::parse(o.c.gf);
    const auto base = engine_of(o.c);
    std::vector<std::size_t> sizes;
    for (double s : parse_list(o.sizes)) sizes.push_back(static_cast<std::size_t>(s));
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1]) throw ValidationError("sizes must be strictly increasing");
    std::vector<Engine> engines;
    {
        std::stringstream ss(o.engines);
        std::string tok;
        while (std::getline(ss, tok, ',')) engines.push_back(parse_engine(tok));
    }
    std::vector<int> qs;
    if (!o.q_sweep.empty())
        for (double q : parse_list(o.q_sweep)) qs.push_back(static_cast<int>(q));

    std::ostringstream rep, diag;
    rep << "n_T,engine,nodes,wall_time_seconds,max_relerr\n";
    diag << "n,fast,direct,relerr\n";
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> series;
    const bool has_direct = std::find(engines.begin(), engines.end(), Engine::Direct) != engines.end();
    for (std::size_t nT : sizes) {
        const auto wt = convolution_weights(gf, o.c.alpha, o.c.sigma, o.c.tau, std::max<std::size_t>(nT, base.n0 + 1));
        BenchRun ref;
        if (has_direct) {
            EngineConfig e = base;
            e.engine = Engine::Direct;
            const double secs = median_time(gf, wt, e, nT, ref);
            rep << nT << ",direct,0," << format_double(secs) << ",0\n";
            series["direct"].first.push_back(static_cast<double>(nT));
            series["direct"].second.push_back(secs);
        }
        for (Engine en : engines) {
            if (en == Engine::Direct) continue;
            std::vector<int> node_list = qs.empty() ? std::vector<int>{en == Engine::Talbot ? base.talbot_N : base.Q} : qs;
            for (int q : node_list) {
                EngineConfig e = base;
                e.engine = en;
                (en == Engine::Talbot ? e.talbot_N : e.Q) = q;
                BenchRun run;
                const double secs = median_time(gf, wt, e, nT, run);
                double relerr = NAN;
                if (has_direct) {
                    relerr = 0;
                    for (std::size_t n = 1; n <= nT; ++n) {
                        const double r = std::abs(run.values[n] - ref.values[n]) / std::abs(ref.values[n]);
                        relerr = std::max(relerr, r);
                        if (o.diagnostics && nT == sizes.back() && en == Engine::RealLine && q == node_list.front())
                            diag << n << ',' << format_double(run.values[n]) << ',' << format_double(ref.values[n]) << ','
                                 << format_double(r) << '\n';
                    }
                }
                rep << nT << ',' << engine_name(en) << ',' << q << ',' << format_double(secs) << ',' << format_double(relerr) << '\n';
                const std::string key = std::string(engine_name(en)) + ":" + std::to_string(q);
                series[key].first.push_back(static_cast<double>(nT));
                series[key].second.push_back(secs);
            }
        }
    }
    std::cout << rep.str();
    json slopes;
    if (sizes.size() >= 2) {
        std::cout << "\nslope of log(time) vs log(n_T):\n";
        for (const auto& [k, v] : series) {
            const double s = slope(v.first, v.second);
            slopes[k] = s;
            std::cout << "  " << std::left << std::setw(16) << k << format_double(s) << '\n';
        }
    }
    if (!o.c.out.empty()) {
        const auto dir = prepare_out(o.c.out);
        std::ofstream(dir / "bench.csv") << rep.str();
        if (o.diagnostics) std::ofstream(dir / "diagnostics.csv") << diag.str();
        auto p = common_json(o.c);
        p["sizes"] = o.sizes;
        p["engines"] = o.engines;
        p["q_sweep"] = o.q_sweep;
        p["slopes"] = slopes;
        write_manifest(dir, "bench", p);
    }
    return 0;
}

// ---- fode -----------------------------------------------------------------

struct FodeOpts {
    Common c;
    std::string m_list;
    int levels = 5;
    int which = 1;
    std::string startup = "fine";
    std::string error = "max";
};

int cmd_fode(const FodeOpts& o) {
    const auto gf = GeneratingFunction::parse(o.c.gf);
    const auto eng = engine_of(o.c);
    if (o.levels < 1) throw ValidationError("levels must be >= 1");
    if (o.which != 1 && o.which != 2) throw ValidationError("case must be 1 or 2");
    if (o.startup != "fine" && o.startup != "exact") throw ValidationError("startup must be fine or exact");
    if (o.error != "max" && o.error != "end") throw ValidationError("error must be max or end");
    if (o.which == 2 && (o.startup == "exact" || o.levels > 1)) {
        // no reference solution: a single trajectory
    }
    std::vector<int> ms;
    if (o.m_list.empty()) ms.push_back(o.c.m);
    else
        for (double v : parse_list(o.m_list)) ms.push_back(static_cast<int>(v));

    std::vector<double> taus;
    for (int i = 0; i < o.levels; ++i) taus.push_back(o.c.tau / std::pow(2.0, i));

    struct Cell {
        int m;
        double tau;
        Trajectory tr;
        double err = NAN;
    };
    std::vector<Cell> cells;
    for (int m : ms)
        for (double t : taus) cells.push_back({m, t, {}, NAN});

    auto work = [&](Cell& cell) {
        FodeProblem p = o.which == 1 ? case_one(o.c.alpha, o.c.sigma, cell.tau, o.c.T, cell.m)
                                     : case_two(o.c.alpha, o.c.sigma, cell.tau, o.c.T, cell.m);
        p.gf = gf;
        p.engine = eng;
        p.startup = o.startup == "exact" ? Startup::Exact : Startup::FineStep;
        if (o.which == 2 && p.startup == Startup::Exact) throw ValidationError("case 2 has no exact solution for startup");
        cell.tr = solve(p);
        if (p.exact) {
            const auto e = trajectory_error(cell.tr, p.exact);
            cell.err = o.error == "max" ? e.max_err : e.end_err;
        }
    };
    const int jobs = std::max(1, o.c.jobs);
    for (std::size_t i = 0; i < cells.size(); i += static_cast<std::size_t>(jobs)) {
        std::vector<std::future<void>> fut;
        for (std::size_t j = i; j < std::min(cells.size(), i + static_cast<std::size_t>(jobs)); ++j)
            fut.push_back(std::async(std::launch::async, work, std::ref(cells[j])));
        for (auto& f : fut) f.get();
    }

    std::ostringstream csv, txt;
    csv << "tau";
    txt << std::left << std::setw(12) << "tau";
    for (int m : ms) {
        csv << ",err_m" << m << ",order_m" << m;
        txt << std::setw(14) << ("m=" + std::to_string(m)) << std::setw(9) << "order";
    }
    csv << '\n';
    txt << '\n';
    for (std::size_t i = 0; i < taus.size(); ++i) {
        csv << format_double(taus[i]);
        std::ostringstream tt;
        tt << "2^" << std::lround(std::log2(taus[i]));
        txt << std::setw(12) << (std::abs(std::log2(taus[i]) - std::round(std::log2(taus[i]))) < 1e-12 ? tt.str() : format_double(taus[i]));
        for (std::size_t k = 0; k < ms.size(); ++k) {
            const auto& cur = cells[k * taus.size() + i];
            double order = NAN;
            if (i > 0) order = std::log2(cells[k * taus.size() + i - 1].err / cur.err);
            csv << ',' << format_double(cur.err) << ',' << (i > 0 ? format_double(order) : "");
            std::ostringstream e, r;
            e << std::scientific << std::setprecision(4) << cur.err;
            if (i > 0) r << std::fixed << std::setprecision(4) << order;
            txt << std::setw(14) << e.str() << std::setw(9) << r.str();
        }
        csv << '\n';
        txt << '\n';
    }
    std::cout << txt.str();
    if (!o.c.out.empty()) {
        const auto dir = prepare_out(o.c.out);
        std::ofstream(dir / "table.csv") << csv.str();
        for (const auto& cell : cells) {
            std::ostringstream name;
            name << "trajectory_m" << cell.m << "_tau" << format_double(cell.tau) << ".csv";
            std::ofstream f(dir / name.str());
            cell.tr.write_csv(f);
        }
        auto p = common_json(o.c);
        p["m_list"] = o.m_list;
        p["levels"] = o.levels;
        p["case"] = o.which;
        p["startup"] = o.startup;
        p["error"] = o.error;
        write_manifest(dir, "fode", p);
    }
    return 0;
}

// ---- rd -------------------------------------------------------------------

struct RdOpts {
    Common c;
    std::string kinetics = "brusselator", ic = "random", preset;
    double alpha1 = 1, alpha2 = 1, d = 17, kappa = 1, kappa1 = -1, kappa2 = -1, D = 100, epsilon = 0.01, q = 0;
    int cells = 256;
    long save_stride = 100;
};

void apply_preset(RdOpts& o, const CLI::App* app) {
    struct P {
        const char* kin;
        double a1, a2, d;
        const char* ic;
    };
    static const std::map<std::string, P> presets{
        {"fig7a", {"gierer-meinhardt", 0.2, 0.2, 7, "random"}},  {"fig7b", {"gierer-meinhardt", 0.5, 0.5, 14, "random"}},
        {"fig7c", {"gierer-meinhardt", 0.8, 0.8, 21, "random"}}, {"fig8a", {"brusselator", 0.2, 0.2, 9, "random"}},
        {"fig8b", {"brusselator", 0.5, 0.5, 17, "random"}},      {"fig8c", {"brusselator", 0.8, 0.8, 23, "random"}},
        {"fig10", {"gierer-meinhardt", 0.5, 1.0, 8, "random"}},  {"fig11", {"brusselator", 0.5, 1.0, 10, "short-wave"}},
        {"fig12", {"brusselator", 0.5, 0.5, 17, "long-wave"}},
    };
    if (o.preset.empty()) return;
    const auto it = presets.find(o.preset);
    if (it == presets.end()) throw ValidationError("unknown preset '" + o.preset + "'");
    const P& p = it->second;
    // explicit flags win over the preset
    auto unset = [&](const char* flag) { return app->count(flag) == 0; };
    if (unset("--kinetics")) o.kinetics = p.kin;
    if (unset("--alpha1")) o.alpha1 = p.a1;
    if (unset("--alpha2")) o.alpha2 = p.a2;
    if (unset("--d")) o.d = p.d;
    if (unset("--ic")) o.ic = p.ic;
    if (unset("--T")) o.c.T = 500;
}

int cmd_rd(RdOpts o, const CLI::App* app) {
    apply_preset(o, app);
    RdProblem p;
    p.kin = kinetics_by_name(o.kinetics);
    p.alpha1 = o.alpha1;
    p.alpha2 = o.alpha2;
    p.d = o.d;
    p.kappa = o.kappa;
    p.kappa1 = o.kappa1;
    p.kappa2 = o.kappa2;
    p.D = o.D;
    p.cells = o.cells;
    p.tau = o.c.tau;
    p.T = o.c.T;
    p.ic.type = parse_ic(o.ic);
    p.ic.epsilon = o.epsilon;
    p.ic.q = o.q;
    p.ic.seed = o.c.seed;
    p.engine = engine_of(o.c);
    p.gf = GeneratingFunction::parse(o.c.gf);
    if (o.save_stride < 1) throw ValidationError("save-stride must be >= 1");
    if (o.c.out.empty()) throw ValidationError("rd needs --out DIR");

    const auto h = run(p, static_cast<std::size_t>(o.save_stride));
    const auto dir = prepare_out(o.c.out);
    for (std::size_t i = 0; i < h.snaps.size(); ++i) {
        std::ostringstream name;
        name << "snapshot_" << std::setw(6) << std::setfill('0') << i << ".csv";
        std::ofstream f(dir / name.str());
        h.write_snapshot_csv(f, i);
    }
    {
        std::ofstream f(dir / "surface.csv");
        h.write_long_csv(f);
    }
    auto j = common_json(o.c);
    j["kinetics"] = p.kin.name;
    j["alpha1"] = p.alpha1;
    j["alpha2"] = p.alpha2;
    j["d"] = p.d;
    j["kappa"] = p.kappa;
    j["kappa1"] = p.kappa1 < 0 ? p.kin.kappa1 : p.kappa1;
    j["kappa2"] = p.kappa2 < 0 ? p.kin.kappa2 : p.kappa2;
    j["D"] = p.D;
    j["cells"] = p.cells;
    j["ic"] = ic_name(p.ic.type);
    j["epsilon"] = p.ic.epsilon;
    j["q"] = p.ic.q;
    j["preset"] = o.preset;
    j["save_stride"] = o.save_stride;
    j["snapshots"] = h.snaps.size();
    const auto& last = h.snaps.back();
    j["final"] = {{"t", last.t}, {"var_u", spatial_variance(last.u)}, {"var_v", spatial_variance(last.v)},
                  {"dominant_mode_u", dominant_mode(last.u)}};
    write_manifest(dir, "rd", j);
    std::cout << "t=" << last.t << " var(u)=" << spatial_variance(last.u) << " var(v)=" << spatial_variance(last.v)
              << " dominant mode=" << dominant_mode(last.u) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional linear multistep methods with fast convolution"};
    app.set_config("--config", "", "flat key = value file; flags override");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    WeightsOpts wo;
    auto* w = app.add_subcommand("weights", "convolution weights and fast-approximation errors");
    wo.c.Q = 448;
    wo.c.talbot_N = 64;
    add_common(w, wo.c, false);
    w->add_option("--n-max", wo.n_max, "largest weight index")->capture_default_str();
    w->add_option("--stride", wo.stride, "row stride in n")->capture_default_str();

    BenchOpts bo;
    auto* b = app.add_subcommand("bench", "timing and accuracy of direct vs fast convolution on u(t)=t+t^2");
    bo.c.Q = 140;
    bo.c.talbot_N = 20;
    add_common(b, bo.c, false);
    b->add_option("--sizes", bo.sizes, "comma-separated n_T list")->capture_default_str();
    b->add_option("--engines", bo.engines, "comma-separated engines")->capture_default_str();
    b->add_option("--q-sweep", bo.q_sweep, "comma-separated node counts at fixed sizes");
    b->add_flag("--diagnostics", bo.diagnostics, "write n,fast,direct,relerr for the largest size");

    FodeOpts fo;
    auto* f = app.add_subcommand("fode", "convergence table for D^{sigma,alpha}(u-u0) = -u + f(u,t)");
    fo.c.tau = 1.0 / 32;
    add_common(f, fo.c);
    f->add_option("--m-list", fo.m_list, "comma-separated correction counts (default: --m)");
    f->add_option("--levels", fo.levels, "number of step halvings starting from --tau")->capture_default_str();
    f->add_option("--case", fo.which, "1: linear with Mittag-Leffler solution, 2: f = u(1-u^2)")->capture_default_str();
    f->add_option("--startup", fo.startup, "fine or exact")->capture_default_str();
    f->add_option("--error", fo.error, "max or end")->capture_default_str();

    RdOpts ro;
    auto* r = app.add_subcommand("rd", "fractional activator-inhibitor system");
    ro.c.T = 500;
    ro.c.engine = "realline";
    add_common(r, ro.c);
    r->add_option("--preset", ro.preset, "fig7a..c, fig8a..c, fig10, fig11, fig12");
    r->add_option("--kinetics", ro.kinetics, "gierer-meinhardt, brusselator, none")->capture_default_str();
    r->add_option("--alpha1", ro.alpha1)->capture_default_str();
    r->add_option("--alpha2", ro.alpha2)->capture_default_str();
    r->add_option("--d", ro.d, "diffusion ratio")->capture_default_str();
    r->add_option("--kappa", ro.kappa, "reaction scaling")->capture_default_str();
    r->add_option("--kappa1", ro.kappa1, "stabilization (default per kinetics)");
    r->add_option("--kappa2", ro.kappa2, "stabilization (default per kinetics)");
    r->add_option("--D", ro.D, "domain length")->capture_default_str();
    r->add_option("--cells", ro.cells, "D/h")->capture_default_str();
    r->add_option("--ic", ro.ic, "random, long-wave, short-wave")->capture_default_str();
    r->add_option("--epsilon", ro.epsilon, "perturbation size")->capture_default_str();
    r->add_option("--q", ro.q, "perturbation wavenumber (0: default)")->capture_default_str();
    r->add_option("--save-stride", ro.save_stride, "steps between snapshots")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*w) return cmd_weights(wo);
        if (*b) return cmd_bench(bo);
        if (*f) return cmd_fode(fo);
        if (*r) return cmd_rd(ro, r);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedOrder& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedForFastEngine& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
