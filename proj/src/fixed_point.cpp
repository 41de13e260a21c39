#include "fsilab/fixed_point.hpp"

#include "fsilab/norms.hpp"
#include "fsilab/operators.hpp"

#include <cmath>

namespace fsilab {
namespace {

constexpr double pi_const = 3.14159265358979323846264338327950288;

// ---- small tensor-field algebra used by the forcing assembly ----

// (G b)_{jk} = G_{jm} b_{mk}
TensorField mat_mul(const ChannelGeometry& g, const TensorField& G, const TensorField& b) {
    TensorField out(g, G.domain);
    const std::size_t n = out.points();
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (int m = 0; m < 3; ++m) {
                const double* gp = G.data.data() + (3 * j + m) * n;
                const double* bp = b.data.data() + (3 * m + k) * n;
                double* op = out.data.data() + (3 * j + k) * n;
                for (std::size_t q = 0; q < n; ++q) op[q] += gp[q] * bp[q];
            }
    return out;
}

TensorField sym(const ChannelGeometry& g, const TensorField& T) {
    TensorField out(g, T.domain);
    const std::size_t n = out.points();
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const double* a = T.data.data() + (3 * j + k) * n;
            const double* b = T.data.data() + (3 * k + j) * n;
            double* o = out.data.data() + (3 * j + k) * n;
            for (std::size_t q = 0; q < n; ++q) o[q] = a[q] + b[q];
        }
    return out;
}

ScalarField trace_of(const ChannelGeometry& g, const TensorField& T) {
    ScalarField out(g, T.domain);
    const std::size_t n = out.points();
    for (int d = 0; d < 3; ++d) {
        const double* a = T.data.data() + (3 * d + d) * n;
        for (std::size_t q = 0; q < n; ++q) out.data[q] += a[q];
    }
    return out;
}

// out_j = sum_k b_{kj} w_k  (transpose contraction)
VectorField bt_contract(const ChannelGeometry& g, const TensorField& b, const VectorField& w) {
    VectorField out(g, b.domain);
    const std::size_t n = out.points();
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const double* bp = b.data.data() + (3 * k + j) * n;
            const double* wp = w.data.data() + k * n;
            double* op = out.data.data() + j * n;
            for (std::size_t q = 0; q < n; ++q) op[q] += bp[q] * wp[q];
        }
    return out;
}

ScalarField reciprocal(const ChannelGeometry&, const ScalarField& R) {
    ScalarField out = R;
    for (double& v : out.data) v = 1.0 / v;
    return out;
}

VectorField scale_by(const ChannelGeometry& g, const VectorField& v, const ScalarField& s,
                     double c) {
    VectorField out(g, v.domain);
    const std::size_t n = out.points();
    for (int j = 0; j < 3; ++j) {
        const double* vp = v.data.data() + j * n;
        double* op = out.data.data() + j * n;
        for (std::size_t q = 0; q < n; ++q) op[q] = c * s.data[q] * vp[q];
    }
    return out;
}

// I_2 / I_3 contraction: out_j = sum_{k,l} b_{kl} dP[k]_{jl}
VectorField b_grad_contract(const ChannelGeometry& g, const TensorField& b,
                            const std::array<TensorField, 3>& dP) {
    VectorField out(g, b.domain);
    const std::size_t n = out.points();
    for (int j = 0; j < 3; ++j) {
        double* op = out.data.data() + j * n;
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                const double* bp = b.data.data() + (3 * k + l) * n;
                const double* dp = dP[k].data.data() + (3 * j + l) * n;
                for (std::size_t q = 0; q < n; ++q) op[q] += bp[q] * dp[q];
            }
    }
    return out;
}

std::array<TensorField, 3> tensor_partials(const ChannelGeometry& g, const TensorField& T) {
    return {partial(g, T, 0), partial(g, T, 1), partial(g, T, 2)};
}

struct PiSampleTerms {
    VectorField interior;  // I_1 + ... + I_8
    VectorField boundary;  // K_1 + ... + K_11 on the slab's Gamma_c plane
};

// Full assembly of the forcing of the Navier-Stokes-wave map at one sample.
PiSampleTerms pi_terms_sample(const ChannelGeometry& g, Domain plane, const ScalarField& R,
                              const ScalarField& jac, const TensorField& b,
                              const VectorField& vbar, const Viscosities& vc) {
    const Domain dom = vbar.domain;
    const std::size_t n = vbar.points();
    const double lam = vc.lambda, mu = vc.mu;

    TensorField G = gradient(g, vbar);
    TensorField Gb = mat_mul(g, G, b);
    TensorField S = sym(g, Gb);             // b_{mk} d_m v_j + b_{mj} d_m v_k
    TensorField V = sym(g, G);              // d_k v_j + d_j v_k
    ScalarField tr = trace_of(g, Gb);       // b_{mi} d_m v_i
    ScalarField div = trace_of(g, G);
    ScalarField Rinv = reciprocal(g, R);
    VectorField grad_tr = gradient(g, tr);
    VectorField grad_div = gradient(g, div);
    VectorField grad_rinv = gradient(g, Rinv);
    std::array<TensorField, 3> dS = tensor_partials(g, S);
    std::array<TensorField, 3> dV = tensor_partials(g, V);

    VectorField I(g, dom);
    {
        VectorField i1 = tensor_divergence(g, S);
        VectorField i2 = b_grad_contract(g, b, dS);
        VectorField i3 = b_grad_contract(g, b, dV);
        VectorField i5 = bt_contract(g, b, grad_tr);
        VectorField i6 = bt_contract(g, b, grad_div);
        VectorField i7 = bt_contract(g, b, grad_rinv);
        for (int j = 0; j < 3; ++j) {
            double* op = I.data.data() + j * n;
            const double* p1 = i1.data.data() + j * n;
            const double* p2 = i2.data.data() + j * n;
            const double* p3 = i3.data.data() + j * n;
            const double* p4 = grad_tr.data.data() + j * n;
            const double* p5 = i5.data.data() + j * n;
            const double* p6 = i6.data.data() + j * n;
            const double* p7 = i7.data.data() + j * n;
            const double* p8 = grad_rinv.data.data() + j * n;
            for (std::size_t q = 0; q < n; ++q) {
                const double r = R.data[q];
                op[q] = lam * r * (p1[q] + p2[q] + p3[q]) + mu * r * (p4[q] + p5[q] + p6[q]) -
                        r * (p7[q] + p8[q]);
            }
        }
    }

    // boundary terms: traces at the plane, nu = (0, 0, nu3)
    const double nu3 = ChannelGeometry::nu3(plane);
    TensorField St = boundary_trace(g, S, plane);
    TensorField Vt = boundary_trace(g, V, plane);
    TensorField bt = boundary_trace(g, b, plane);
    ScalarField Jt = boundary_trace(g, jac, plane);
    ScalarField divt = boundary_trace(g, div, plane);
    ScalarField trt = boundary_trace(g, tr, plane);
    ScalarField rinvt = boundary_trace(g, Rinv, plane);

    VectorField K(g, plane);
    const std::size_t m = K.points();
    for (int j = 0; j < 3; ++j) {
        double* kp = K.data.data() + j * m;
        for (std::size_t q = 0; q < m; ++q) {
            const double J = Jt.data[q];
            const double ri = rinvt.data[q];
            const double bn_j = bt.data[(3 * 2 + j) * m + q];   // b_{3j} nu-row
            double v = 0.0;
            v += lam * (1.0 - J) * Vt.data[(3 * j + 2) * m + q] * nu3;          // K1
            if (j == 2) v += mu * (1.0 - J) * divt.data[q] * nu3;               // K2
            double k3 = 0.0;                                                    // K3
            for (int l = 0; l < 3; ++l)
                k3 += bt.data[(3 * 2 + l) * m + q] * nu3 * St.data[(3 * j + l) * m + q];
            v += -lam * J * k3;
            v += J * ri * bn_j * nu3;                                           // K4
            if (j == 2) v += (J - 1.0) * ri * nu3;                              // K5
            v += -lam * J * St.data[(3 * j + 2) * m + q] * nu3;                 // K6
            double k7 = 0.0;                                                    // K7
            for (int l = 0; l < 3; ++l)
                k7 += bt.data[(3 * 2 + l) * m + q] * nu3 * Vt.data[(3 * j + l) * m + q];
            v += -lam * J * k7;
            v += -mu * J * trt.data[q] * bn_j * nu3;                            // K8
            if (j == 2) v += -mu * J * trt.data[q] * nu3;                       // K9
            v += -mu * J * divt.data[q] * bn_j * nu3;                           // K10
            if (j == 2) v += ri * nu3;                                          // K11
            kp[q] = v;
        }
    }
    return {std::move(I), std::move(K)};
}

// ---- shared step plumbing ----

GammaCData interface_traces(const ChannelGeometry& g, const FluidVector& v) {
    return {boundary_trace(g, v.lower, Domain::GammaCLower),
            boundary_trace(g, v.upper, Domain::GammaCUpper)};
}

WaveRunRecord wave_pass(const ChannelGeometry& g, const FsiData& data,
                        const FluidVectorTrack& v) {
    GammaCData w0_trace{boundary_trace(g, data.w0, Domain::GammaCLower),
                        boundary_trace(g, data.w0, Domain::GammaCUpper)};
    InterfaceTracks psi = dirichlet_from_velocity(g, w0_trace, v);
    // d_t psi(0) equals the initial velocity trace exactly for this data
    GammaCData rate = interface_traces(g, data.v0);
    return solve_wave(g, data.w0, data.w1, psi, rate);
}

// f_n = f_ext - R grad(R^{-1}); h_n = dw/dnu + R^{-1} nu + h_ext
LameProblem lambda_problem(const ChannelGeometry& g, const FsiData& data, Domain slab,
                           const ScalarTrack& R, const GammaCTrack& wave_trace,
                           const VectorField& u0) {
    const Domain plane =
        (slab == Domain::FluidLower) ? Domain::GammaCLower : Domain::GammaCUpper;
    const double nu3 = ChannelGeometry::nu3(plane);
    LameProblem p;
    p.slab = slab;
    p.visc = data.visc;
    p.R = R;
    p.u0 = u0;
    p.f.dt = p.h.dt = R.dt;
    const int nt = static_cast<int>(R.samples.size());
    for (int n = 0; n < nt; ++n) {
        ScalarField rinv = reciprocal(g, R.samples[n]);
        VectorField f = scale_by(g, gradient(g, rinv), R.samples[n], -1.0);
        if (data.f_ext) {
            const VectorTrack& fe =
                (slab == Domain::FluidLower) ? data.f_ext->lower : data.f_ext->upper;
            f = axpy(1.0, fe.samples.at(n), f);
        }
        p.f.samples.push_back(std::move(f));

        VectorField h = wave_trace.samples.at(n);
        ScalarField rinv_tr = boundary_trace(g, rinv, plane);
        for (std::size_t q = 0; q < rinv_tr.points(); ++q)
            h.data[2 * rinv_tr.points() + q] += rinv_tr.data[q] * nu3;
        if (data.h_ext) {
            const GammaCTrack& he =
                (slab == Domain::FluidLower) ? data.h_ext->lower : data.h_ext->upper;
            h = axpy(1.0, he.samples.at(n), h);
        }
        p.h.samples.push_back(std::move(h));
    }
    return p;
}

FluidVectorTrack constant_extension(const FluidVector& v0, int nt, double dt) {
    FluidVectorTrack v;
    v.lower.dt = v.upper.dt = dt;
    v.lower.samples.assign(nt, v0.lower);
    v.upper.samples.assign(nt, v0.upper);
    return v;
}

} // namespace

int IterationConfig::samples() const {
    return static_cast<int>(std::lround(T / dt)) + 1;
}

void IterationConfig::validate() const {
    if (!(s > 2.0 && s < 2.5))
        throw ConfigError("regularity parameter s must lie in (2, 2.5)");
    if (T <= 0.0 || dt <= 0.0 || tol <= 0.0) throw ConfigError("T, dt, tol must be positive");
    if (samples() < 4) throw ConfigError("window too short: need at least 4 samples");
    if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
}

CompatibilityReport check_compatibility(const ChannelGeometry& g, const FluidVector& v0,
                                        const VectorField& w1, const FluidScalar& R0,
                                        const Viscosities& visc, double thr_linear,
                                        double thr_deriv) {
    CompatibilityReport rep;
    rep.thresholds = {thr_linear, thr_linear, thr_deriv, thr_deriv};

    // 1: w1 = v0 on both interface planes
    rep.residuals[0] =
        std::max(sup_diff(boundary_trace(g, w1, Domain::GammaCLower),
                          boundary_trace(g, v0.lower, Domain::GammaCLower)),
                 sup_diff(boundary_trace(g, w1, Domain::GammaCUpper),
                          boundary_trace(g, v0.upper, Domain::GammaCUpper)));

    // 2: v0 = 0 on the outer boundary
    rep.residuals[1] = std::max(sup_norm(boundary_trace(g, v0.lower, Domain::GammaFBottom)),
                                sup_norm(boundary_trace(g, v0.upper, Domain::GammaFTop)));

    // 3: interface stress balance with the pressure trace, q(R) = R
    auto stress = [&](const VectorField& v, const ScalarField& R0s, Domain plane) {
        VectorField flux = boundary_flux(g, v, visc, plane);
        ScalarField q = boundary_trace(g, reciprocal(g, R0s), plane);
        const double nu3 = ChannelGeometry::nu3(plane);
        const std::size_t m = q.points();
        for (std::size_t i = 0; i < m; ++i) flux.data[2 * m + i] -= q.data[i] * nu3;
        return sup_norm(flux);
    };
    rep.residuals[2] = std::max(stress(v0.lower, R0.lower, Domain::GammaCLower),
                                stress(v0.upper, R0.upper, Domain::GammaCUpper));

    // 4: outer-boundary momentum consistency (j-th gradient component of the
    // pressure, matching the momentum equation restricted to Gamma_f)
    auto momentum = [&](const VectorField& v, const ScalarField& R0s, Domain plane) {
        ScalarField one = R0s;
        std::fill(one.data.begin(), one.data.end(), 1.0);
        VectorField lame = apply_lame_operator(g, one, visc, v);
        VectorField gq = gradient(g, reciprocal(g, R0s));
        return sup_norm(boundary_trace(g, lame - gq, plane));
    };
    rep.residuals[3] = std::max(momentum(v0.lower, R0.lower, Domain::GammaFBottom),
                                momentum(v0.upper, R0.upper, Domain::GammaFTop));

    rep.all_pass = true;
    for (int i = 0; i < 4; ++i) {
        rep.pass[i] = rep.residuals[i] <= rep.thresholds[i];
        rep.all_pass = rep.all_pass && rep.pass[i];
    }
    return rep;
}

FsiState lambda_step(const ChannelGeometry& g, const FsiData& data,
                     const IterationConfig& cfg, const FluidVectorTrack& v) {
    FsiState st;
    st.R.lower = density_closed_form(g, data.R0.lower, v.lower);
    st.R.upper = density_closed_form(g, data.R0.upper, v.upper);
    enforce_density_floor(st.R.lower, data.R0.lower, cfg.R_floor);
    enforce_density_floor(st.R.upper, data.R0.upper, cfg.R_floor);

    st.elastic = wave_pass(g, data, v);

    st.assembled.lower = lambda_problem(g, data, Domain::FluidLower, st.R.lower,
                                        st.elastic.normal_trace.lower, data.v0.lower);
    st.assembled.upper = lambda_problem(g, data, Domain::FluidUpper, st.R.upper,
                                        st.elastic.normal_trace.upper, data.v0.upper);
    st.v.lower = solve_lame(g, st.assembled.lower);
    st.v.upper = solve_lame(g, st.assembled.upper);
    return st;
}

VectorField pi_interior_forcing(const ChannelGeometry& g, const ScalarField& R,
                                const TensorField& b, const VectorField& vbar,
                                const Viscosities& visc) {
    const Domain plane =
        (vbar.domain == Domain::FluidLower) ? Domain::GammaCLower : Domain::GammaCUpper;
    ScalarField one(g, vbar.domain);
    std::fill(one.data.begin(), one.data.end(), 1.0);
    return pi_terms_sample(g, plane, R, one, b, vbar, visc).interior;
}

VectorField pi_interior_term(const ChannelGeometry& g, int which, const ScalarField& R,
                             const TensorField& b, const VectorField& vbar,
                             const Viscosities& visc) {
    const Domain dom = vbar.domain;
    const double lam = visc.lambda, mu = visc.mu;
    TensorField G = gradient(g, vbar);
    TensorField Gb = mat_mul(g, G, b);
    TensorField S = sym(g, Gb);
    TensorField V = sym(g, G);
    ScalarField tr = trace_of(g, Gb);
    ScalarField div = trace_of(g, G);
    ScalarField Rinv = reciprocal(g, R);

    VectorField base(g, dom);
    switch (which) {
        case 1: base = scale_by(g, tensor_divergence(g, S), R, lam); break;
        case 2: base = scale_by(g, b_grad_contract(g, b, tensor_partials(g, S)), R, lam); break;
        case 3: base = scale_by(g, b_grad_contract(g, b, tensor_partials(g, V)), R, lam); break;
        case 4: base = scale_by(g, gradient(g, tr), R, mu); break;
        case 5: base = scale_by(g, bt_contract(g, b, gradient(g, tr)), R, mu); break;
        case 6: base = scale_by(g, bt_contract(g, b, gradient(g, div)), R, mu); break;
        case 7: base = scale_by(g, bt_contract(g, b, gradient(g, Rinv)), R, -1.0); break;
        case 8: base = scale_by(g, gradient(g, Rinv), R, -1.0); break;
        default: throw std::invalid_argument("pi_interior_term: which must be 1..8");
    }
    return base;
}

VectorField pi_boundary_term(const ChannelGeometry& g, int which, Domain plane,
                             const ScalarField& R, const ScalarField& jac,
                             const TensorField& b, const VectorField& vbar,
                             const Viscosities& visc) {
    const double lam = visc.lambda, mu = visc.mu;
    const double nu3 = ChannelGeometry::nu3(plane);
    TensorField G = gradient(g, vbar);
    TensorField Gb = mat_mul(g, G, b);
    TensorField St = boundary_trace(g, sym(g, Gb), plane);
    TensorField Vt = boundary_trace(g, sym(g, G), plane);
    TensorField bt = boundary_trace(g, b, plane);
    ScalarField Jt = boundary_trace(g, jac, plane);
    ScalarField divt = boundary_trace(g, trace_of(g, G), plane);
    ScalarField trt = boundary_trace(g, trace_of(g, Gb), plane);
    ScalarField rinvt = boundary_trace(g, reciprocal(g, R), plane);

    VectorField K(g, plane);
    const std::size_t m = K.points();
    for (int j = 0; j < 3; ++j)
        for (std::size_t q = 0; q < m; ++q) {
            const double J = Jt.data[q];
            const double ri = rinvt.data[q];
            const double bn_j = bt.data[(3 * 2 + j) * m + q];
            double v = 0.0;
            switch (which) {
                case 1: v = lam * (1.0 - J) * Vt.data[(3 * j + 2) * m + q] * nu3; break;
                case 2: v = (j == 2) ? mu * (1.0 - J) * divt.data[q] * nu3 : 0.0; break;
                case 3:
                    for (int l = 0; l < 3; ++l)
                        v -= lam * J * bt.data[(3 * 2 + l) * m + q] * nu3 *
                             St.data[(3 * j + l) * m + q];
                    break;
                case 4: v = J * ri * bn_j * nu3; break;
                case 5: v = (j == 2) ? (J - 1.0) * ri * nu3 : 0.0; break;
                case 6: v = -lam * J * St.data[(3 * j + 2) * m + q] * nu3; break;
                case 7:
                    for (int l = 0; l < 3; ++l)
                        v -= lam * J * bt.data[(3 * 2 + l) * m + q] * nu3 *
                             Vt.data[(3 * j + l) * m + q];
                    break;
                case 8: v = -mu * J * trt.data[q] * bn_j * nu3; break;
                case 9: v = (j == 2) ? -mu * J * trt.data[q] * nu3 : 0.0; break;
                case 10: v = -mu * J * divt.data[q] * bn_j * nu3; break;
                case 11: v = (j == 2) ? ri * nu3 : 0.0; break;
                default: throw std::invalid_argument("pi_boundary_term: which must be 1..11");
            }
            K.data[j * m + q] = v;
        }
    return K;
}

VectorField pi_boundary_data(const ChannelGeometry& g, Domain plane, const ScalarField& R,
                             const ScalarField& jac, const TensorField& b,
                             const VectorField& vbar, const Viscosities& visc) {
    return pi_terms_sample(g, plane, R, jac, b, vbar, visc).boundary;
}

FsiState pi_step(const ChannelGeometry& g, const FsiData& data, const IterationConfig& cfg,
                 const FluidVectorTrack& v,
                 const std::optional<FluidPair<KinematicTrack>>& frozen_kinematics) {
    FsiState st;
    if (frozen_kinematics) {
        st.kinematics = *frozen_kinematics;
    } else {
        st.kinematics = FluidPair<KinematicTrack>{compute_kinematics(g, v.lower),
                                                  compute_kinematics(g, v.upper)};
    }
    enforce_jacobian_floor(st.kinematics->lower.jac, cfg.J_floor);
    enforce_jacobian_floor(st.kinematics->upper.jac, cfg.J_floor);

    st.R.lower = density_closed_form(g, data.R0.lower, v.lower, st.kinematics->lower.a);
    st.R.upper = density_closed_form(g, data.R0.upper, v.upper, st.kinematics->upper.a);
    enforce_density_floor(st.R.lower, data.R0.lower, cfg.R_floor);
    enforce_density_floor(st.R.upper, data.R0.upper, cfg.R_floor);

    st.elastic = wave_pass(g, data, v);

    const int nt = static_cast<int>(v.lower.samples.size());
    FluidVectorTrack prev = v;
    const double inner_tol = 0.1 * cfg.tol;
    bool converged = false;
    for (int sweep = 0; sweep < 25; ++sweep) {
        FluidPair<LameProblem> probs;
        for (int side = 0; side < 2; ++side) {
            const Domain slab = side == 0 ? Domain::FluidLower : Domain::FluidUpper;
            const Domain plane = side == 0 ? Domain::GammaCLower : Domain::GammaCUpper;
            const ScalarTrack& R = side == 0 ? st.R.lower : st.R.upper;
            const KinematicTrack& kin =
                side == 0 ? st.kinematics->lower : st.kinematics->upper;
            const VectorTrack& vb = side == 0 ? prev.lower : prev.upper;
            const GammaCTrack& wave_trace =
                side == 0 ? st.elastic.normal_trace.lower : st.elastic.normal_trace.upper;

            LameProblem p;
            p.slab = slab;
            p.visc = data.visc;
            p.R = R;
            p.u0 = side == 0 ? data.v0.lower : data.v0.upper;
            p.f.dt = p.h.dt = R.dt;
            for (int n = 0; n < nt; ++n) {
                PiSampleTerms terms =
                    pi_terms_sample(g, plane, R.samples[n], kin.jac.samples[n],
                                    kin.b.samples[n], vb.samples[n], data.visc);
                p.f.samples.push_back(std::move(terms.interior));
                VectorField h = wave_trace.samples.at(n) + terms.boundary;
                p.h.samples.push_back(std::move(h));
            }
            (side == 0 ? probs.lower : probs.upper) = std::move(p);
        }
        FluidVectorTrack next;
        next.lower = solve_lame(g, probs.lower);
        next.upper = solve_lame(g, probs.upper);
        st.inner_sweeps = sweep + 1;

        FluidVectorTrack diff = next;
        for (std::size_t n = 0; n < diff.lower.samples.size(); ++n) {
            diff.lower.samples[n] = diff.lower.samples[n] - prev.lower.samples[n];
            diff.upper.samples[n] = diff.upper.samples[n] - prev.upper.samples[n];
        }
        const double d = k_norm(g, diff, cfg.s + 1.0);
        prev = std::move(next);
        st.assembled = std::move(probs);
        if (d < inner_tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw InnerDivergence("inner Picard loop did not reach 0.1*tol in 25 sweeps "
                              "(window or step too large)");
    st.v = std::move(prev);
    return st;
}

const char* status_name(FsiStatus s) {
    switch (s) {
        case FsiStatus::Converged: return "converged";
        case FsiStatus::MaxIterReached: return "non-convergence";
        case FsiStatus::FloorBreach: return "floor-breach";
        case FsiStatus::InnerDivergence: return "inner-divergence";
    }
    return "?";
}

FsiResult run_fixed_point(FsiMode mode, const ChannelGeometry& g, const FsiData& data,
                          const IterationConfig& cfg) {
    cfg.validate();
    FsiResult res;
    ConvergenceReport& rep = res.report;

    FluidVectorTrack v = constant_extension(data.v0, cfg.samples(), cfg.dt);
    try {
        double prev_diff = -1.0;
        for (int it = 0; it < cfg.max_iter; ++it) {
            FsiState st = (mode == FsiMode::Lambda) ? lambda_step(g, data, cfg, v)
                                                    : pi_step(g, data, cfg, v);
            FluidVectorTrack diff = st.v;
            for (std::size_t n = 0; n < diff.lower.samples.size(); ++n) {
                diff.lower.samples[n] = diff.lower.samples[n] - v.lower.samples[n];
                diff.upper.samples[n] = diff.upper.samples[n] - v.upper.samples[n];
            }
            const double d = k_norm(g, diff, cfg.s + 1.0);
            rep.diffs.push_back(d);
            const double vn = k_norm(g, st.v, cfg.s + 1.0);
            rep.iterate_norms.push_back(vn);
            if (vn > cfg.M_report) rep.ball_exceeded = true;
            if (prev_diff > 10.0 * cfg.tol) rep.factors.push_back(d / prev_diff);
            prev_diff = d;
            rep.iterations = it + 1;
            v = st.v;
            if (d < cfg.tol) {
                rep.status = FsiStatus::Converged;
                res.state = std::move(st);
                break;
            }
            if (it + 1 == cfg.max_iter) {
                rep.status = FsiStatus::MaxIterReached;
                rep.message = "fixed point not reached within max_iter";
                res.state = std::move(st);
            }
        }
    } catch (const FloorBreach& e) {
        rep.status = FsiStatus::FloorBreach;
        rep.message = e.what();
        return res;
    } catch (const InnerDivergence& e) {
        rep.status = FsiStatus::InnerDivergence;
        rep.message = e.what();
        return res;
    }

    // a-posteriori residuals of the converged (or last) iterate
    const LameResidual rl = lame_residual(g, res.state.v.lower, res.state.assembled.lower);
    const LameResidual ru = lame_residual(g, res.state.v.upper, res.state.assembled.upper);
    rep.final_interior_residual = std::hypot(rl.interior, ru.interior);
    rep.final_flux_residual = std::hypot(rl.flux, ru.flux);
    rep.final_dirichlet_residual = std::hypot(rl.dirichlet, ru.dirichlet);

    double mismatch = 0.0;
    const int nt = static_cast<int>(res.state.v.lower.samples.size());
    for (int n = 0; n < nt; ++n) {
        VectorField lo = boundary_trace(g, res.state.v.lower.samples[n], Domain::GammaCLower);
        VectorField up = boundary_trace(g, res.state.v.upper.samples[n], Domain::GammaCUpper);
        VectorField wl =
            boundary_trace(g, res.state.elastic.w_t.samples[n], Domain::GammaCLower);
        VectorField wu =
            boundary_trace(g, res.state.elastic.w_t.samples[n], Domain::GammaCUpper);
        mismatch = std::max({mismatch, sup_diff(lo, wl), sup_diff(up, wu)});
    }
    rep.interface_velocity_mismatch = mismatch;
    return res;
}

std::vector<ContractionRow> contraction_study(FsiMode mode, const ChannelGeometry& g,
                                              const FsiData& data, IterationConfig cfg,
                                              const std::vector<double>& T_values,
                                              double perturbation) {
    if (T_values.size() < 2)
        throw ConfigError("contraction_study needs at least two window lengths");
    std::vector<ContractionRow> rows;
    for (double T : T_values) {
        cfg.T = T;
        cfg.validate();
        const int nt = cfg.samples();
        FluidVectorTrack va = constant_extension(data.v0, nt, cfg.dt);
        FluidVectorTrack vb = va;
        for (int n = 0; n < nt; ++n) {
            const double t = n * cfg.dt;
            const double amp = perturbation * std::sin(pi_const * t / T);
            auto bump = [&](Domain slab, VectorField& f) {
                const double z0 = g.z0(slab), len = g.thickness(slab);
                VectorField p = sample_vector(g, slab, [&](int c, double y1, double y2, double z) {
                    const double s = (z - z0) / len;
                    const double prof = 16.0 * s * s * (1 - s) * (1 - s);
                    if (c == 0) return std::sin(y1) * prof;
                    if (c == 2) return 0.5 * std::cos(y2) * prof;
                    return 0.0;
                });
                f = axpy(amp, p, f);
            };
            bump(Domain::FluidLower, vb.lower.samples[n]);
            bump(Domain::FluidUpper, vb.upper.samples[n]);
        }

        ContractionRow row;
        row.T = T;
        FluidVectorTrack din = vb;
        for (int n = 0; n < nt; ++n) {
            din.lower.samples[n] = din.lower.samples[n] - va.lower.samples[n];
            din.upper.samples[n] = din.upper.samples[n] - va.upper.samples[n];
        }
        row.input_diff = k_norm(g, din, cfg.s + 1.0);
        if (row.input_diff < 1e-14) {
            row.degenerate = true;
            rows.push_back(row);
            continue;
        }
        FsiState sa = (mode == FsiMode::Lambda) ? lambda_step(g, data, cfg, va)
                                                : pi_step(g, data, cfg, va);
        FsiState sb = (mode == FsiMode::Lambda) ? lambda_step(g, data, cfg, vb)
                                                : pi_step(g, data, cfg, vb);
        FluidVectorTrack dout = sb.v;
        for (int n = 0; n < nt; ++n) {
            dout.lower.samples[n] = dout.lower.samples[n] - sa.v.lower.samples[n];
            dout.upper.samples[n] = dout.upper.samples[n] - sa.v.upper.samples[n];
        }
        row.output_diff = k_norm(g, dout, cfg.s + 1.0);
        row.factor = row.output_diff / row.input_diff;
        rows.push_back(row);
    }
    return rows;
}

FsiData make_compatible_data(const ChannelGeometry& g, const Viscosities& visc,
                             double strength) {
    FsiData data;
    data.visc = visc;
    const double q = 2.0 * visc.lambda + visc.mu;

    // lower slab: v0 = (0,0, eps z), R0^{-1} = 1 + d z^2 with value q*eps at
    // the interface and zero slope at Gamma_f; all four compatibility
    // conditions then vanish through the discrete stencils (linear velocity,
    // quadratic pressure profile).
    const double d_lo = (q * strength - 1.0) / (g.L1 * g.L1);
    data.v0.lower = sample_vector(g, Domain::FluidLower, [&](int c, double, double, double z) {
        return c == 2 ? strength * z : 0.0;
    });
    data.R0.lower = sample_scalar(g, Domain::FluidLower, [&](double, double, double z) {
        return 1.0 / (1.0 + d_lo * z * z);
    });

    // upper slab: v0 = (0,0, eps (z - L3)), Gamma_f at z = L3
    const double th_up = g.L3 - g.L2;
    const double d_up = (q * strength - 1.0) / (th_up * th_up);
    data.v0.upper = sample_vector(g, Domain::FluidUpper, [&](int c, double, double, double z) {
        return c == 2 ? strength * (z - g.L3) : 0.0;
    });
    data.R0.upper = sample_scalar(g, Domain::FluidUpper, [&](double, double, double z) {
        return 1.0 / (1.0 + d_up * (z - g.L3) * (z - g.L3));
    });

    // w1 interpolates the interface traces of v0 linearly across the slab
    const double lo_val = strength * g.L1;
    const double up_val = strength * (g.L2 - g.L3);
    data.w0 = VectorField(g, Domain::Elastic);
    data.w1 = sample_vector(g, Domain::Elastic, [&](int c, double, double, double z) {
        if (c != 2) return 0.0;
        const double s = (z - g.L1) / (g.L2 - g.L1);
        return lo_val * (1.0 - s) + up_val * s;
    });
    return data;
}

} // namespace fsilab
