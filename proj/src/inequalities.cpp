#include "fsilab/inequalities.hpp"

#include "fsilab/norms.hpp"
#include "fsilab/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace fsilab {
namespace {

// log-spaced sample points in [0, hi] including the origin
std::vector<double> log_grid(double lo, double hi, int n, double jitter) {
    std::vector<double> pts;
    pts.push_back(0.0);
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < n; ++i) {
        const double f = (i + jitter) / (n - 1 + jitter);
        pts.push_back(std::exp(la + f * (lb - la)));
    }
    return pts;
}

double symbol_defect(const InequalityParams& p, double tau, double xi, double c_eps) {
    const double lhs = (1.0 + std::pow(std::abs(tau), 2.0 * p.theta)) *
                       (1.0 + std::pow(std::abs(xi), 2.0 * p.lambda));
    const double rhs = p.eps * p.eps * (1.0 + std::pow(std::abs(tau), 2.0 * p.alpha)) +
                       c_eps * (1.0 + std::pow(std::abs(xi), 2.0 * p.beta));
    return lhs - rhs;
}

} // namespace

RatioReport verify_trace_inequality(const ChannelGeometry& g, const VectorTrack& u,
                                    double r, double theta) {
    if (r <= 0.5) throw std::invalid_argument("trace inequality requires r > 1/2");
    if (theta < 0.0) throw std::invalid_argument("trace inequality requires theta >= 0");
    const Domain slab = u.samples.front().domain;
    const Domain plane = (slab == Domain::FluidLower) ? Domain::GammaCLower
                                                      : Domain::GammaCUpper;

    GammaCTrack trace;
    trace.dt = u.dt;
    for (const auto& s : u.samples) trace.samples.push_back(boundary_trace(g, s, plane));

    RatioReport rep;
    rep.lhs = spacetime_norm(g, trace, {theta, 0.0});
    const double q = 2.0 * theta * r / (2.0 * r - 1.0);
    const double a = spacetime_norm(g, u, {0.0, r});
    const double b = spacetime_norm(g, u, {q, 0.0});
    rep.rhs = std::pow(a, 1.0 / (2.0 * r)) * std::pow(b, (2.0 * r - 1.0) / (2.0 * r)) + a;
    if (rep.rhs < 1e-13) {
        rep.degenerate = true;
        return rep;
    }
    rep.ratio = rep.lhs / rep.rhs;
    return rep;
}

void InequalityParams::validate() const {
    if (alpha <= 0.0 || beta <= 0.0)
        throw std::invalid_argument("interpolation requires alpha, beta > 0");
    if (!(theta > 0.0 && theta < alpha))
        throw std::invalid_argument("interpolation requires theta in (0, alpha)");
    if (!(lambda > 0.0 && lambda < beta))
        throw std::invalid_argument("interpolation requires lambda in (0, beta)");
    if (theta / alpha + lambda / beta > 1.0 + 1e-12)
        throw std::invalid_argument("interpolation requires theta/alpha + lambda/beta <= 1");
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
}

double interpolation_constant(const InequalityParams& p) {
    p.validate();
    const std::vector<double> taus = log_grid(1e-6, 1e6, 400, 0.0);
    const std::vector<double> xis = log_grid(1e-6, 1e6, 400, 0.0);
    double worst = 0.0;
    for (double tau : taus) {
        const double num0 = (1.0 + std::pow(tau, 2.0 * p.theta));
        const double sub = p.eps * p.eps * (1.0 + std::pow(tau, 2.0 * p.alpha));
        for (double xi : xis) {
            const double lhs = num0 * (1.0 + std::pow(xi, 2.0 * p.lambda));
            const double den = 1.0 + std::pow(xi, 2.0 * p.beta);
            worst = std::max(worst, (lhs - sub) / den);
        }
    }
    return 1.05 * worst;
}

int verify_symbol_inequality(const InequalityParams& p, double c_eps, int grid_size) {
    p.validate();
    // golden-ratio jitter keeps this grid disjoint from the fitting grid
    const std::vector<double> taus = log_grid(1e-6, 1e6, grid_size, 0.6180339887);
    const std::vector<double> xis = log_grid(1e-6, 1e6, grid_size, 0.3819660113);
    int violations = 0;
    for (double tau : taus)
        for (double xi : xis)
            if (symbol_defect(p, tau, xi, c_eps) > 0.0) ++violations;
    return violations;
}

RatioReport hidden_regularity_ratio(const ChannelGeometry& g, const WaveRunRecord& run,
                                    const VectorField& w0, const VectorField& w1,
                                    double beta, HiddenRegularityForm form) {
    RatioReport rep;
    auto both_planes = [&](const InterfaceTracks& t, SpaceTimeOrder ord) {
        const double a = spacetime_norm(g, t.lower, ord);
        const double b = spacetime_norm(g, t.upper, ord);
        return std::sqrt(a * a + b * b);
    };

    if (form == HiddenRegularityForm::NormalTraceEnergy) {
        if (beta < 1.0)
            throw std::invalid_argument("energy-form ratio requires beta >= 1");
        rep.lhs = sup_sobolev_in_time(g, run.w, beta) +
                  sup_sobolev_in_time(g, run.w_t, beta - 1.0) +
                  both_planes(run.normal_trace, {beta - 1.0, beta - 1.0});
        rep.rhs = sobolev_norm(g, w0, beta) + sobolev_norm(g, w1, beta - 1.0) +
                  both_planes(run.psi, {beta, beta});
    } else {
        if (!(beta > 0.0 && beta < 2.5))
            throw std::invalid_argument("trace-form ratio requires beta in (0, 5/2)");
        rep.lhs = both_planes(run.normal_trace, {0.0, beta + 1.0});
        rep.rhs = sobolev_norm(g, w0, beta + 2.0) + sobolev_norm(g, w1, beta + 1.0) +
                  both_planes(run.psi, {0.0, beta + 2.0}) +
                  both_planes(run.psi, {beta / 2.0 + 1.0, beta / 2.0 + 1.0});
    }
    if (rep.rhs < 1e-13) {
        rep.degenerate = true;
        return rep;
    }
    rep.ratio = rep.lhs / rep.rhs;
    return rep;
}

} // namespace fsilab
