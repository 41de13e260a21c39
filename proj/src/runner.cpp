#include "fsilab/runner.hpp"

#include "fsilab/inequalities.hpp"
#include "fsilab/norms.hpp"
#include "fsilab/operators.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

namespace fsilab {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double pi_const = 3.14159265358979323846264338327950288;

std::string fmt_double(double v) {
    // shortest representation that round-trips exactly
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

class CsvWriter {
  public:
    CsvWriter(const fs::path& path, const std::string& header) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open " + path.string());
        out_ << header << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << cells[i];
        }
        out_ << "\n";
    }

  private:
    std::ofstream out_;
};

json track_to_json(const ChannelGeometry&, const ScalarTrack& t) {
    json j;
    j["dt"] = t.dt;
    j["domain"] = domain_name(t.samples.front().domain);
    j["components"] = 1;
    json samples = json::array();
    for (const auto& s : t.samples) samples.push_back(s.data);
    j["samples"] = std::move(samples);
    return j;
}

json track_to_json(const ChannelGeometry&, const VectorTrack& t) {
    json j;
    j["dt"] = t.dt;
    j["domain"] = domain_name(t.samples.front().domain);
    j["components"] = 3;
    json samples = json::array();
    for (const auto& s : t.samples) samples.push_back(s.data);
    j["samples"] = std::move(samples);
    return j;
}

Domain domain_from_name(const std::string& name) {
    for (Domain d : {Domain::FluidLower, Domain::FluidUpper, Domain::Elastic,
                     Domain::GammaCLower, Domain::GammaCUpper, Domain::GammaFBottom,
                     Domain::GammaFTop})
        if (name == domain_name(d)) return d;
    throw std::runtime_error("checkpoint: unknown domain '" + name + "'");
}

template <class F>
TimeTrack<F> track_from_json(const ChannelGeometry& g, const json& j) {
    TimeTrack<F> t;
    t.dt = j.at("dt").get<double>();
    const Domain dom = domain_from_name(j.at("domain").get<std::string>());
    for (const auto& s : j.at("samples")) {
        F f(g, dom);
        const auto vals = s.get<std::vector<double>>();
        if (vals.size() != f.data.size())
            throw std::runtime_error("checkpoint: sample size mismatch");
        f.data = vals;
        t.samples.push_back(std::move(f));
    }
    return t;
}

struct SuiteContext {
    const RunConfig& cfg;
    ChannelGeometry g;
    fs::path dir;
    RunSummary& summary;

    fs::path artifact(const std::string& name) {
        summary.artifacts.push_back(name);
        return dir / name;
    }
};

FsiData build_data(const RunConfig& cfg, const ChannelGeometry& g) {
    return make_compatible_data(g, cfg.viscosities(), cfg.strength);
}

void write_summary(SuiteContext& ctx, const json& payload, double wall_seconds,
                   std::uint64_t digest) {
    json j;
    j["config"] = ctx.cfg.echo();
    j["input_digest"] = digest;
    j["wall_seconds"] = wall_seconds;
    j["status"] = ctx.summary.status;
    j["exit_code"] = ctx.summary.exit_code;
    j["warnings"] = ctx.summary.warnings;
    j["time_norm_convention"] = time_norm_convention();
    j["results"] = payload;
    std::ofstream out(ctx.artifact("summary.json"), std::ios::binary);
    out << j.dump(2) << "\n";
}

// ---- simulate (lambda | pi) ----

json run_simulate(SuiteContext& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const ChannelGeometry& g = ctx.g;
    FsiData data = build_data(cfg, g);

    CompatibilityReport compat =
        check_compatibility(g, data.v0, data.w1, data.R0, data.visc);
    if (!compat.all_pass) {
        if (!cfg.allow_incompatible)
            throw ConfigError("initial data fails the compatibility conditions "
                              "(set allow_incompatible = true to override)");
        ctx.summary.warnings.push_back("compatibility override active");
    }

    const FsiMode mode = (cfg.mode == RunMode::Lambda) ? FsiMode::Lambda : FsiMode::Pi;
    FsiResult res = run_fixed_point(mode, g, data, cfg.iter);
    const ConvergenceReport& rep = res.report;

    switch (rep.status) {
        case FsiStatus::Converged: ctx.summary.exit_code = ExitOk; break;
        case FsiStatus::MaxIterReached: ctx.summary.exit_code = ExitNonConvergence; break;
        case FsiStatus::FloorBreach: ctx.summary.exit_code = ExitFloorBreach; break;
        case FsiStatus::InnerDivergence: ctx.summary.exit_code = ExitInnerDivergence; break;
    }
    ctx.summary.status = status_name(rep.status);
    if (rep.ball_exceeded)
        ctx.summary.warnings.push_back("iterate left the K-norm ball M_report");

    {
        CsvWriter iters(ctx.artifact("iterations.csv"), "iter,diff,factor");
        for (std::size_t i = 0; i < rep.diffs.size(); ++i) {
            const std::size_t fi = i; // factors start at the second iterate
            std::string factor = "-";
            if (fi >= 1 && fi - 1 < rep.factors.size()) factor = fmt_double(rep.factors[fi - 1]);
            iters.row({std::to_string(i), fmt_double(rep.diffs[i]), factor});
        }
    }

    if (rep.status == FsiStatus::Converged || rep.status == FsiStatus::MaxIterReached) {
        CsvWriter norms(ctx.artifact("norms.csv"),
                        "t,v_Hs_lower,v_Hs_upper,R_Hs_lower,R_Hs_upper,w_H1,wt_L2,"
                        "wave_energy");
        const FsiState& st = res.state;
        const int nt = static_cast<int>(st.v.lower.samples.size());
        for (int n = 0; n < nt; ++n) {
            ElasticState es{st.elastic.w.samples[n], st.elastic.w_t.samples[n],
                            n * cfg.iter.dt};
            norms.row({fmt_double(n * cfg.iter.dt),
                       fmt_double(sobolev_norm(g, st.v.lower.samples[n], cfg.iter.s)),
                       fmt_double(sobolev_norm(g, st.v.upper.samples[n], cfg.iter.s)),
                       fmt_double(sobolev_norm(g, st.R.lower.samples[n], cfg.iter.s)),
                       fmt_double(sobolev_norm(g, st.R.upper.samples[n], cfg.iter.s)),
                       fmt_double(sobolev_norm(g, st.elastic.w.samples[n], 1.0)),
                       fmt_double(l2_norm(g, st.elastic.w_t.samples[n])),
                       fmt_double(wave_energy(g, es))});
        }
        save_checkpoint(ctx.artifact("checkpoint.json").string(), g, cfg, res.state);
    }

    json payload;
    payload["iterations"] = rep.iterations;
    payload["diffs"] = rep.diffs;
    payload["factors"] = rep.factors;
    payload["final_interior_residual"] = rep.final_interior_residual;
    payload["final_flux_residual"] = rep.final_flux_residual;
    payload["final_dirichlet_residual"] = rep.final_dirichlet_residual;
    payload["interface_velocity_mismatch"] = rep.interface_velocity_mismatch;
    payload["ball_exceeded"] = rep.ball_exceeded;
    payload["compatibility_residuals"] = compat.residuals;
    payload["inner_sweeps_last"] = res.state.inner_sweeps;
    payload["message"] = rep.message;
    return payload;
}

// ---- lemmas ----

json run_lemmas(SuiteContext& ctx) {
    const ChannelGeometry& g = ctx.g;
    std::mt19937_64 rng(ctx.cfg.seed);
    json payload;

    // trace-inequality suite over random band-limited tracks
    int trace_count = 0;
    double max_ratio = 0.0;
    {
        CsvWriter csv(ctx.artifact("trace_suite.csv"), "id,r,theta,lhs,rhs,ratio,degenerate");
        std::uniform_real_distribution<double> rd(0.8, 2.0), td(0.0, 1.0), om(0.5, 4.0);
        const int nt = 12;
        const double dt = 0.02;
        for (int id = 0; id < 100; ++id) {
            const double r = rd(rng), theta = td(rng);
            VectorField base = sample_vector(
                g, Domain::FluidLower,
                [&](int, double, double, double) { return 0.0; });
            {
                std::mt19937_64 sub(rng());
                std::uniform_int_distribution<int> ki(-2, 2), zi(0, 2);
                std::uniform_real_distribution<double> ph(0.0, 2.0 * pi_const),
                    am(-1.0, 1.0);
                const int k1 = ki(sub), k2 = ki(sub), kz = zi(sub);
                const double phase = ph(sub), a0 = am(sub), a1 = am(sub), a2 = am(sub);
                base = sample_vector(g, Domain::FluidLower,
                                     [&](int c, double y1, double y2, double z) {
                                         const double amp = c == 0 ? a0 : (c == 1 ? a1 : a2);
                                         return amp * std::cos(k1 * y1 + k2 * y2 + phase) *
                                                std::cos(kz * pi_const * z / g.L1);
                                     });
            }
            VectorTrack u;
            u.dt = dt;
            const double omega = om(rng);
            for (int n = 0; n < nt; ++n)
                u.samples.push_back(scaled(base, std::cos(omega * n * dt)));
            RatioReport rep = verify_trace_inequality(g, u, r, theta);
            csv.row({std::to_string(id), fmt_double(r), fmt_double(theta), fmt_double(rep.lhs),
                     fmt_double(rep.rhs), fmt_double(rep.ratio),
                     rep.degenerate ? "1" : "0"});
            if (!rep.degenerate) {
                ++trace_count;
                max_ratio = std::max(max_ratio, rep.ratio);
            }
        }
    }
    payload["trace_max_ratio"] = max_ratio;
    payload["trace_count"] = trace_count;

    // interpolation symbol inequality over the shipped parameter matrix
    int total_violations = 0;
    int failed_negative_controls = 0;
    {
        CsvWriter csv(ctx.artifact("symbol_suite.csv"),
                      "alpha,beta,theta,lambda,eps,C_eps,violations,negative_control");
        const std::vector<InequalityParams> matrix = {
            {1.0, 1.0, 0.4, 0.5, 0.3},  {2.0, 1.5, 0.8, 0.9, 0.5},
            {0.75, 0.6, 0.3, 0.3, 0.25}, {1.5, 2.5, 0.9, 1.0, 0.5},
            {1.0, 1.0, 0.5, 0.5, 0.1},  {2.2, 0.8, 1.1, 0.4, 0.9},
        };
        for (const auto& p : matrix) {
            const double c = interpolation_constant(p);
            const int viol = verify_symbol_inequality(p, c, 100);
            const int neg = verify_symbol_inequality(p, c / 2.0, 100);
            total_violations += viol;
            if (neg == 0) ++failed_negative_controls;
            csv.row({fmt_double(p.alpha), fmt_double(p.beta), fmt_double(p.theta),
                     fmt_double(p.lambda), fmt_double(p.eps), fmt_double(c),
                     std::to_string(viol), std::to_string(neg)});
        }
    }
    payload["symbol_violations"] = total_violations;
    payload["failed_negative_controls"] = failed_negative_controls;

    // hidden-regularity ratio suite on randomized homogeneous-data runs
    double hidden_max_energy = 0.0, hidden_max_trace = 0.0;
    {
        CsvWriter csv(ctx.artifact("hidden_suite.csv"), "id,form,beta,lhs,rhs,ratio,degenerate");
        const int nt = 16;
        const double dt = 0.02;
        InterfaceTracks psi;
        psi.lower.dt = psi.upper.dt = dt;
        psi.lower.samples.assign(nt, VectorField(g, Domain::GammaCLower));
        psi.upper.samples.assign(nt, VectorField(g, Domain::GammaCUpper));
        for (int id = 0; id < 25; ++id) {
            std::mt19937_64 sub(rng());
            std::uniform_int_distribution<int> ki(-2, 2), zi(1, 2);
            std::uniform_real_distribution<double> am(-1.0, 1.0);
            const int k1 = ki(sub), k2 = ki(sub), kz = zi(sub);
            const double a = am(sub);
            VectorField w0 = sample_vector(g, Domain::Elastic,
                                           [&](int c, double y1, double y2, double z) {
                                               if (c != 1) return 0.0;
                                               const double d = g.L2 - g.L1;
                                               return a * std::cos(k1 * y1 + k2 * y2) *
                                                      std::sin(kz * pi_const * (z - g.L1) / d);
                                           });
            WaveRunRecord rec = solve_wave(g, w0, VectorField(g, Domain::Elastic), psi);
            RatioReport re = hidden_regularity_ratio(g, rec, w0,
                                                     VectorField(g, Domain::Elastic), 1.5,
                                                     HiddenRegularityForm::NormalTraceEnergy);
            RatioReport rt = hidden_regularity_ratio(g, rec, w0,
                                                     VectorField(g, Domain::Elastic), 0.5,
                                                     HiddenRegularityForm::NormalTraceL2Hs);
            csv.row({std::to_string(id), "energy", fmt_double(1.5), fmt_double(re.lhs),
                     fmt_double(re.rhs), fmt_double(re.ratio), re.degenerate ? "1" : "0"});
            csv.row({std::to_string(id), "trace", fmt_double(0.5), fmt_double(rt.lhs),
                     fmt_double(rt.rhs), fmt_double(rt.ratio), rt.degenerate ? "1" : "0"});
            if (!re.degenerate) hidden_max_energy = std::max(hidden_max_energy, re.ratio);
            if (!rt.degenerate) hidden_max_trace = std::max(hidden_max_trace, rt.ratio);
        }
    }
    payload["hidden_max_ratio_energy"] = hidden_max_energy;
    payload["hidden_max_ratio_trace"] = hidden_max_trace;

    if (total_violations > 0 || failed_negative_controls > 0) {
        ctx.summary.exit_code = ExitNonConvergence;
        ctx.summary.status = "lemma-violations";
    } else {
        ctx.summary.status = "ok";
    }
    return payload;
}

// ---- compat ----

json run_compat(SuiteContext& ctx) {
    const ChannelGeometry& g = ctx.g;
    FsiData data = build_data(ctx.cfg, g);
    CompatibilityReport rep = check_compatibility(g, data.v0, data.w1, data.R0, data.visc);
    {
        CsvWriter csv(ctx.artifact("compat.csv"), "condition,residual,threshold,pass");
        const char* names[4] = {"interface-velocity", "outer-dirichlet", "stress-balance",
                                "outer-momentum"};
        for (int i = 0; i < 4; ++i)
            csv.row({names[i], fmt_double(rep.residuals[i]), fmt_double(rep.thresholds[i]),
                     rep.pass[i] ? "1" : "0"});
    }
    json payload;
    payload["residuals"] = rep.residuals;
    payload["all_pass"] = rep.all_pass;
    ctx.summary.status = rep.all_pass ? "ok" : "compat-failed";
    if (!rep.all_pass) ctx.summary.exit_code = ExitNonConvergence;
    return payload;
}

// ---- contraction ----

json run_contraction(SuiteContext& ctx) {
    const RunConfig& cfg = ctx.cfg;
    FsiData data = build_data(cfg, ctx.g);
    const std::vector<double> windows = {cfg.contraction_T, cfg.contraction_T / 2.0,
                                         cfg.contraction_T / 4.0};
    auto rows = contraction_study(FsiMode::Pi, ctx.g, data, cfg.iter, windows);
    {
        CsvWriter csv(ctx.artifact("contraction.csv"),
                      "T,input_diff,output_diff,factor,degenerate");
        for (const auto& r : rows)
            csv.row({fmt_double(r.T), fmt_double(r.input_diff), fmt_double(r.output_diff),
                     fmt_double(r.factor), r.degenerate ? "1" : "0"});
    }
    json payload;
    json jr = json::array();
    bool decreasing = true, contracting = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        jr.push_back({{"T", rows[i].T},
                      {"factor", rows[i].factor},
                      {"degenerate", rows[i].degenerate}});
        if (rows[i].factor >= 1.0) contracting = false;
        if (i > 0 && rows[i].factor >= rows[i - 1].factor) decreasing = false;
    }
    payload["rows"] = jr;
    payload["factors_below_one"] = contracting;
    payload["factors_decreasing"] = decreasing;
    ctx.summary.status = (contracting && decreasing) ? "ok" : "no-contraction";
    if (!(contracting && decreasing)) ctx.summary.exit_code = ExitNonConvergence;
    return payload;
}

// ---- mms ----

json run_mms(SuiteContext& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const Viscosities visc = cfg.viscosities();
    const Domain slab = Domain::FluidLower;
    json payload;

    CsvWriter csv(ctx.artifact("mms.csv"), "study,level,scale,dt,max_err");
    std::vector<double> hs, herr, dts, terr;
    for (int lev = 0; lev < 3; ++lev) {
        const int m = 6 * (1 << lev);
        ChannelGeometry g(cfg.L1, cfg.L2, cfg.L3, cfg.N1, cfg.N2, m, cfg.M_up, cfg.M_el);
        const double dt = 2e-3 / (1 << (2 * lev));
        const int nt = static_cast<int>(std::lround(0.024 / dt)) + 1;
        ScalarTrack R;
        R.dt = dt;
        R.samples.assign(nt, sample_scalar(g, slab, [](double y1, double, double) {
                             return 1.0 + 0.1 * std::cos(y1);
                         }));
        ManufacturedSolution ms;
        const double lam = visc.lambda, mu = visc.mu;
        ms.value = [](int c, double t, double y1, double, double z) {
            return c == 0 ? std::sin(y1) * std::sin(pi_const * z) * (1.0 + 0.5 * t) : 0.0;
        };
        ms.dt_value = [](int c, double, double y1, double, double z) {
            return c == 0 ? 0.5 * std::sin(y1) * std::sin(pi_const * z) : 0.0;
        };
        ms.lame_of = [lam, mu](int c, double t, double y1, double, double z) {
            const double gt = 1.0 + 0.5 * t;
            if (c == 0)
                return (lam * (-(1.0 + pi_const * pi_const)) + (lam + mu) * (-1.0)) *
                       std::sin(y1) * std::sin(pi_const * z) * gt;
            if (c == 2) return (lam + mu) * pi_const * std::cos(y1) * std::cos(pi_const * z) * gt;
            return 0.0;
        };
        ManufacturedForcing mf = manufactured_forcing(g, slab, ms, R, visc);
        LameProblem p{slab, R, mf.f, mf.h, mf.u_exact.samples[0], visc};
        VectorTrack u = solve_lame(g, p);
        double err = 0.0;
        for (std::size_t n = 0; n < u.samples.size(); ++n)
            err = std::max(err, sup_diff(u.samples[n], mf.u_exact.samples[n]));
        hs.push_back(1.0 / (1 << lev));
        herr.push_back(err);
        csv.row({"spatial", std::to_string(lev), fmt_double(hs.back()), fmt_double(dt),
                 fmt_double(err)});
    }
    for (int lev = 0; lev < 3; ++lev) {
        ChannelGeometry g(cfg.L1, cfg.L2, cfg.L3, cfg.N1, cfg.N2, cfg.M_lo, cfg.M_up,
                          cfg.M_el);
        const double dt = 4e-3 / (1 << lev);
        const int nt = static_cast<int>(std::lround(0.048 / dt)) + 1;
        ScalarTrack R;
        R.dt = dt;
        R.samples.assign(nt,
                         sample_scalar(g, slab, [](double, double, double) { return 1.0; }));
        ManufacturedSolution ms;
        const double lam = visc.lambda, mu = visc.mu;
        ms.value = [](int c, double t, double y1, double, double z) {
            return c == 0 ? std::sin(y1) * z * z * std::cos(3.0 * t) : 0.0;
        };
        ms.dt_value = [](int c, double t, double y1, double, double z) {
            return c == 0 ? -3.0 * std::sin(y1) * z * z * std::sin(3.0 * t) : 0.0;
        };
        ms.lame_of = [lam, mu](int c, double t, double y1, double, double z) {
            const double gt = std::cos(3.0 * t);
            if (c == 0)
                return (lam * (2.0 - z * z) + (lam + mu) * (-z * z)) * std::sin(y1) * gt;
            if (c == 2) return (lam + mu) * 2.0 * z * std::cos(y1) * gt;
            return 0.0;
        };
        ManufacturedForcing mf = manufactured_forcing(g, slab, ms, R, visc);
        LameProblem p{slab, R, mf.f, mf.h, mf.u_exact.samples[0], visc};
        VectorTrack u = solve_lame(g, p);
        double err = 0.0;
        for (std::size_t n = 0; n < u.samples.size(); ++n)
            err = std::max(err, sup_diff(u.samples[n], mf.u_exact.samples[n]));
        dts.push_back(dt);
        terr.push_back(err);
        csv.row({"temporal", std::to_string(lev), fmt_double(1.0 / (1 << lev)),
                 fmt_double(dt), fmt_double(err)});
    }

    auto slope = [](const std::vector<double>& x, const std::vector<double>& y) {
        const int n = static_cast<int>(x.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < n; ++i) {
            const double a = std::log(x[i]), b = std::log(y[i]);
            sx += a;
            sy += b;
            sxx += a * a;
            sxy += a * b;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    payload["spatial_order"] = slope(hs, herr);
    payload["temporal_order"] = slope(dts, terr);
    ctx.summary.status = "ok";
    return payload;
}

} // namespace

std::uint64_t input_digest(const std::string& text, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](unsigned char c) {
        h ^= c;
        h *= 1099511628211ull;
    };
    for (unsigned char c : text) mix(c);
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
    return h;
}

void save_checkpoint(const std::string& path, const ChannelGeometry& g,
                     const RunConfig& cfg, const FsiState& state) {
    json j;
    j["format"] = "fsilab-checkpoint-1";
    j["geometry"] = {{"L1", g.L1}, {"L2", g.L2},   {"L3", g.L3},   {"N1", g.N1},
                     {"N2", g.N2}, {"M_lo", g.Mlo}, {"M_up", g.Mup}, {"M_el", g.Mel}};
    j["time_norm_convention"] = time_norm_convention();
    j["s"] = cfg.iter.s;
    j["state"]["v_lower"] = track_to_json(g, state.v.lower);
    j["state"]["v_upper"] = track_to_json(g, state.v.upper);
    j["state"]["R_lower"] = track_to_json(g, state.R.lower);
    j["state"]["R_upper"] = track_to_json(g, state.R.upper);
    j["state"]["w"] = track_to_json(g, state.elastic.w);
    j["state"]["w_t"] = track_to_json(g, state.elastic.w_t);
    if (state.kinematics) {
        j["state"]["eta_lower"] = track_to_json(g, state.kinematics->lower.eta);
        j["state"]["eta_upper"] = track_to_json(g, state.kinematics->upper.eta);
        j["state"]["jac_lower"] = track_to_json(g, state.kinematics->lower.jac);
        j["state"]["jac_upper"] = track_to_json(g, state.kinematics->upper.jac);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open checkpoint path " + path);
    out << j.dump() << "\n";
}

FsiState load_checkpoint(const std::string& path, const ChannelGeometry& expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint " + path);
    json j;
    in >> j;
    if (j.at("format") != "fsilab-checkpoint-1")
        throw std::runtime_error("unknown checkpoint format");
    const auto& jg = j.at("geometry");
    ChannelGeometry g(jg.at("L1"), jg.at("L2"), jg.at("L3"), jg.at("N1"), jg.at("N2"),
                      jg.at("M_lo"), jg.at("M_up"), jg.at("M_el"));
    if (!(g == expected)) throw std::runtime_error("checkpoint geometry mismatch");
    FsiState st;
    st.v.lower = track_from_json<VectorField>(g, j.at("state").at("v_lower"));
    st.v.upper = track_from_json<VectorField>(g, j.at("state").at("v_upper"));
    st.R.lower = track_from_json<ScalarField>(g, j.at("state").at("R_lower"));
    st.R.upper = track_from_json<ScalarField>(g, j.at("state").at("R_upper"));
    st.elastic.w = track_from_json<VectorField>(g, j.at("state").at("w"));
    st.elastic.w_t = track_from_json<VectorField>(g, j.at("state").at("w_t"));
    return st;
}

RunSummary recompute_norms(const RunConfig& cfg, const std::string& checkpoint_path) {
    cfg.validate();
    RunSummary summary;
    summary.status = "ok";
    fs::create_directories(cfg.output_dir);
    SuiteContext ctx{cfg, cfg.geometry(), fs::path(cfg.output_dir), summary};
    try {
        const ChannelGeometry& g = ctx.g;
        FsiState st = load_checkpoint(checkpoint_path, g);
        const double dt = st.v.lower.dt;
        CsvWriter norms(ctx.artifact("norms.csv"),
                        "t,v_Hs_lower,v_Hs_upper,R_Hs_lower,R_Hs_upper,w_H1,wt_L2,"
                        "wave_energy");
        const int nt = static_cast<int>(st.v.lower.samples.size());
        for (int n = 0; n < nt; ++n) {
            ElasticState es{st.elastic.w.samples[n], st.elastic.w_t.samples[n], n * dt};
            norms.row({fmt_double(n * dt),
                       fmt_double(sobolev_norm(g, st.v.lower.samples[n], cfg.iter.s)),
                       fmt_double(sobolev_norm(g, st.v.upper.samples[n], cfg.iter.s)),
                       fmt_double(sobolev_norm(g, st.R.lower.samples[n], cfg.iter.s)),
                       fmt_double(sobolev_norm(g, st.R.upper.samples[n], cfg.iter.s)),
                       fmt_double(sobolev_norm(g, st.elastic.w.samples[n], 1.0)),
                       fmt_double(l2_norm(g, st.elastic.w_t.samples[n])),
                       fmt_double(wave_energy(g, es))});
        }
    } catch (const std::exception& e) {
        summary.exit_code = ExitConfigError;
        summary.status = "config-error";
        summary.warnings.push_back(e.what());
    }
    json payload;
    payload["checkpoint"] = checkpoint_path;
    write_summary(ctx, payload, 0.0, input_digest(cfg.echo(), cfg.seed));
    return summary;
}

RunSummary run(const RunConfig& cfg) {
    cfg.validate();
    RunSummary summary;
    summary.status = "ok";

    fs::create_directories(cfg.output_dir);
    SuiteContext ctx{cfg, cfg.geometry(), fs::path(cfg.output_dir), summary};

    const auto t0 = std::chrono::steady_clock::now();
    json payload;
    try {
        switch (cfg.mode) {
            case RunMode::Lambda:
            case RunMode::Pi: payload = run_simulate(ctx); break;
            case RunMode::Lemmas: payload = run_lemmas(ctx); break;
            case RunMode::Compat: payload = run_compat(ctx); break;
            case RunMode::Contraction: payload = run_contraction(ctx); break;
            case RunMode::Mms: payload = run_mms(ctx); break;
        }
    } catch (const ConfigError& e) {
        summary.exit_code = ExitConfigError;
        summary.status = "config-error";
        summary.warnings.push_back(e.what());
    } catch (const FloorBreach& e) {
        summary.exit_code = ExitFloorBreach;
        summary.status = "floor-breach";
        summary.warnings.push_back(e.what());
    } catch (const InnerDivergence& e) {
        summary.exit_code = ExitInnerDivergence;
        summary.status = "inner-divergence";
        summary.warnings.push_back(e.what());
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_summary(ctx, payload, wall, input_digest(cfg.echo(), cfg.seed));
    return summary;
}

} // namespace fsilab
