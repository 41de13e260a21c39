#include "fsilab/wave.hpp"

#include "fsilab/operators.hpp"
#include "fsilab/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace fsilab {
namespace {

// Solves (diag(b) + offdiag(a,c)) x = d for a complex tridiagonal system
// with real coefficients; the Newmark matrix is strictly diagonally
// dominant, so no pivoting is needed.
void thomas(const std::vector<double>& a, std::vector<double> b,
            const std::vector<double>& c, std::vector<cplx>& d) {
    const int n = static_cast<int>(d.size());
    for (int i = 1; i < n; ++i) {
        const double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        d[i] -= m * d[i - 1];
    }
    d[n - 1] /= b[n - 1];
    for (int i = n - 2; i >= 0; --i) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

struct ModalWorkspace {
    int n1, n2, nz;
    std::vector<std::vector<cplx>> levels; // per-z in-plane spectra

    ModalWorkspace(int n1_, int n2_, int nz_)
        : n1(n1_), n2(n2_), nz(nz_),
          levels(nz_, std::vector<cplx>(static_cast<std::size_t>(n1_) * n2_)) {}

    void forward(const VectorField& f, int comp) {
        for (int k = 0; k < nz; ++k) {
            auto& lv = levels[k];
            for (int i = 0; i < n1; ++i)
                for (int j = 0; j < n2; ++j) lv[i * n2 + j] = f.at(comp, i, j, k);
            dft_2d(lv, n1, n2, true);
        }
    }

    void backward(VectorField& f, int comp) {
        const double inv = 1.0 / (static_cast<double>(n1) * n2);
        for (int k = 0; k < nz; ++k) {
            auto lv = levels[k];
            dft_2d(lv, n1, n2, false);
            for (int i = 0; i < n1; ++i)
                for (int j = 0; j < n2; ++j) f.at(comp, i, j, k) = lv[i * n2 + j].real() * inv;
        }
    }

    cplx& at(int i, int j, int k) { return levels[k][i * n2 + j]; }
};

} // namespace

InterfaceTracks dirichlet_from_velocity(const ChannelGeometry& g,
                                        const GammaCData& w0_trace,
                                        const FluidVectorTrack& v) {
    auto accumulate = [&](const VectorTrack& vt, Domain plane, const VectorField& w0p) {
        GammaCTrack psi;
        psi.dt = vt.dt;
        VectorField acc = w0p;
        psi.samples.push_back(acc);
        VectorField prev = boundary_trace(g, vt.samples.front(), plane);
        for (std::size_t n = 1; n < vt.samples.size(); ++n) {
            VectorField cur = boundary_trace(g, vt.samples[n], plane);
            for (std::size_t m = 0; m < acc.data.size(); ++m)
                acc.data[m] += 0.5 * vt.dt * (prev.data[m] + cur.data[m]);
            psi.samples.push_back(acc);
            prev = std::move(cur);
        }
        return psi;
    };
    InterfaceTracks out;
    out.lower = accumulate(v.lower, Domain::GammaCLower, w0_trace.lower);
    out.upper = accumulate(v.upper, Domain::GammaCUpper, w0_trace.upper);
    return out;
}

ElasticState step_wave(const ChannelGeometry& g, const ElasticState& state,
                       const GammaCData& psi_next, double dt) {
    const Domain dom = Domain::Elastic;
    const int nz = g.nodes(dom);
    const int n1 = g.N1, n2 = g.N2;
    const double h = g.dz(dom);
    const double ih2 = 1.0 / (h * h);

    if (psi_next.lower.domain != Domain::GammaCLower ||
        psi_next.upper.domain != Domain::GammaCUpper)
        throw DomainMismatch("step_wave: psi must live on the interface planes");

    ElasticState next;
    next.w = VectorField(g, dom);
    next.w_t = VectorField(g, dom);
    next.time = state.time + dt;

    ModalWorkspace W(n1, n2, nz), V(n1, n2, nz);
    std::vector<cplx> psi_lo(static_cast<std::size_t>(n1) * n2),
        psi_up(static_cast<std::size_t>(n1) * n2);

    const int ni = nz - 2; // interior rows
    std::vector<double> sub(ni), diag(ni), sup(ni);
    std::vector<cplx> rhs(ni), acc_n(ni), acc_new(ni);

    for (int comp = 0; comp < 3; ++comp) {
        W.forward(state.w, comp);
        V.forward(state.w_t, comp);
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) {
                psi_lo[i * n2 + j] = psi_next.lower.at(comp, i, j, 0);
                psi_up[i * n2 + j] = psi_next.upper.at(comp, i, j, 0);
            }
        dft_2d(psi_lo, n1, n2, true);
        dft_2d(psi_up, n1, n2, true);

        for (int i = 0; i < n1; ++i) {
            for (int j = 0; j < n2; ++j) {
                const double k1 = dft_wavenumber(i, n1);
                const double k2 = dft_wavenumber(j, n2);
                const double kk = k1 * k1 + k2 * k2;

                // acceleration at t_n: a = -K w + boundary coupling
                for (int z = 1; z < nz - 1; ++z) {
                    const cplx lap = ih2 * (W.at(i, j, z + 1) - 2.0 * W.at(i, j, z) +
                                            W.at(i, j, z - 1)) -
                                     kk * W.at(i, j, z);
                    acc_n[z - 1] = lap;
                }

                // (I + dt^2/4 K_II) w_I^{n+1} = w_I + dt v_I + dt^2/4 a_I
                //                              + dt^2/4 * boundary load(psi^{n+1})
                const double c = dt * dt / 4.0;
                for (int z = 0; z < ni; ++z) {
                    diag[z] = 1.0 + c * (2.0 * ih2 + kk);
                    sub[z] = -c * ih2;
                    sup[z] = -c * ih2;
                    rhs[z] = W.at(i, j, z + 1) + dt * V.at(i, j, z + 1) + c * acc_n[z];
                }
                rhs[0] += c * ih2 * psi_lo[i * n2 + j];
                rhs[ni - 1] += c * ih2 * psi_up[i * n2 + j];

                thomas(sub, diag, sup, rhs);

                // new acceleration and velocity (gamma = 1/2)
                for (int z = 1; z < nz - 1; ++z) {
                    const cplx wl = (z == 1) ? psi_lo[i * n2 + j] : rhs[z - 2];
                    const cplx wr = (z == nz - 2) ? psi_up[i * n2 + j] : rhs[z];
                    const cplx wc = rhs[z - 1];
                    acc_new[z - 1] = ih2 * (wr - 2.0 * wc + wl) - kk * wc;
                }
                for (int z = 0; z < ni; ++z) {
                    const cplx vnew =
                        V.at(i, j, z + 1) + 0.5 * dt * (acc_n[z] + acc_new[z]);
                    W.at(i, j, z + 1) = rhs[z];
                    V.at(i, j, z + 1) = vnew;
                }
                W.at(i, j, 0) = psi_lo[i * n2 + j];
                W.at(i, j, nz - 1) = psi_up[i * n2 + j];
                V.at(i, j, 0) = 0.0;       // overwritten below in physical space
                V.at(i, j, nz - 1) = 0.0;
            }
        }
        W.backward(next.w, comp);
        V.backward(next.w_t, comp);

        // strong imposition: boundary rows equal the data bitwise
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) {
                next.w.at(comp, i, j, 0) = psi_next.lower.at(comp, i, j, 0);
                next.w.at(comp, i, j, nz - 1) = psi_next.upper.at(comp, i, j, 0);
                next.w_t.at(comp, i, j, 0) =
                    (psi_next.lower.at(comp, i, j, 0) - state.w.at(comp, i, j, 0)) / dt;
                next.w_t.at(comp, i, j, nz - 1) =
                    (psi_next.upper.at(comp, i, j, 0) - state.w.at(comp, i, j, nz - 1)) / dt;
            }
    }
    return next;
}

GammaCData normal_derivative(const ChannelGeometry& g, const ElasticState& state) {
    GammaCData out{VectorField(g, Domain::GammaCLower), VectorField(g, Domain::GammaCUpper)};
    VectorField lo = one_sided_dz(g, state.w, Domain::GammaCLower);
    VectorField up = one_sided_dz(g, state.w, Domain::GammaCUpper);
    // nu = -e3 at y3 = L1: dw/dnu = -d3 w; nu = +e3 at y3 = L2: dw/dnu = +d3 w
    out.lower = scaled(lo, ChannelGeometry::nu3(Domain::GammaCLower));
    out.upper = scaled(up, ChannelGeometry::nu3(Domain::GammaCUpper));
    return out;
}

double wave_energy(const ChannelGeometry& g, const ElasticState& state) {
    const Domain dom = Domain::Elastic;
    const int nz = g.nodes(dom);
    const double h = g.dz(dom);
    const double da = g.dy1() * g.dy2();

    // kinetic + in-plane gradient energy with trapezoid weights in y3
    double kin = 0.0, pot_inplane = 0.0;
    TensorField gw = gradient(g, state.w);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < gw.n1; ++i)
            for (int jj = 0; jj < gw.n2; ++jj)
                for (int k = 0; k < nz; ++k) {
                    const double wz = (k == 0 || k == nz - 1) ? 0.5 : 1.0;
                    const double vt = state.w_t.at(j, i, jj, k);
                    kin += wz * vt * vt;
                    const double g1 = gw.at(3 * j + 0, i, jj, k);
                    const double g2 = gw.at(3 * j + 1, i, jj, k);
                    pot_inplane += wz * (g1 * g1 + g2 * g2);
                }

    // vertical gradient energy by face differences (exact summation by parts
    // against the stepper's compact Laplacian)
    double pot_vertical = 0.0;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < state.w.n1; ++i)
            for (int jj = 0; jj < state.w.n2; ++jj)
                for (int k = 0; k + 1 < nz; ++k) {
                    const double d =
                        (state.w.at(j, i, jj, k + 1) - state.w.at(j, i, jj, k)) / h;
                    pot_vertical += d * d;
                }

    return 0.5 * da * h * (kin + pot_inplane + pot_vertical);
}

WaveRunRecord solve_wave(const ChannelGeometry& g, const VectorField& w0,
                         const VectorField& w1, const InterfaceTracks& psi,
                         std::optional<GammaCData> psi_dot0) {
    if (psi.lower.samples.size() != psi.upper.samples.size())
        throw std::invalid_argument("solve_wave: interface tracks disagree in length");
    const double dt = psi.lower.dt;
    const int nt = static_cast<int>(psi.lower.samples.size());

    WaveRunRecord rec;
    rec.psi = psi;
    rec.w.dt = rec.w_t.dt = rec.normal_trace.lower.dt = rec.normal_trace.upper.dt = dt;

    // compatibility d_t psi|_0 = w1 on Gamma_c (Lemma-style check, warning only)
    {
        GammaCData rate = psi_dot0 ? *psi_dot0
                                   : GammaCData{axpy(-1.0 / dt, psi.lower.samples[0],
                                                     scaled(psi.lower.samples[1], 1.0 / dt)),
                                                axpy(-1.0 / dt, psi.upper.samples[0],
                                                     scaled(psi.upper.samples[1], 1.0 / dt))};
        const double rl =
            sup_diff(rate.lower, boundary_trace(g, w1, Domain::GammaCLower));
        const double ru =
            sup_diff(rate.upper, boundary_trace(g, w1, Domain::GammaCUpper));
        rec.compat_residual = std::max(rl, ru);
        rec.compat_warning = rec.compat_residual > 1e-8;
    }

    ElasticState st{w0, w1, 0.0};
    // initial boundary rows must agree with psi(0); impose strongly
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < st.w.n1; ++i)
            for (int j = 0; j < st.w.n2; ++j) {
                st.w.at(c, i, j, 0) = psi.lower.samples[0].at(c, i, j, 0);
                st.w.at(c, i, j, st.w.nz - 1) = psi.upper.samples[0].at(c, i, j, 0);
            }

    auto push = [&](const ElasticState& s) {
        rec.w.samples.push_back(s.w);
        rec.w_t.samples.push_back(s.w_t);
        GammaCData tr = normal_derivative(g, s);
        rec.normal_trace.lower.samples.push_back(std::move(tr.lower));
        rec.normal_trace.upper.samples.push_back(std::move(tr.upper));
    };
    push(st);
    for (int n = 1; n < nt; ++n) {
        GammaCData psi_n{psi.lower.samples[n], psi.upper.samples[n]};
        st = step_wave(g, st, psi_n, dt);
        push(st);
    }
    return rec;
}

} // namespace fsilab
