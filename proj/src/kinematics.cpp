#include "fsilab/kinematics.hpp"

#include "fsilab/operators.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace fsilab {
namespace {

using Mat3 = Eigen::Matrix3d;

Mat3 tensor_at(const TensorField& t, int i, int j, int k) {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = t.at(3 * r + c, i, j, k);
    return m;
}

void set_tensor(TensorField& t, int i, int j, int k, const Mat3& m) {
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) t.at(3 * r + c, i, j, k) = m(r, c);
}

// Cumulative trapezoid of a track of pointwise values, applied in place to
// an accumulator callback.
template <class F, class Fn>
void cumtrapz(const TimeTrack<F>& src, const Fn& consume) {
    F acc = src.samples.front();
    std::fill(acc.data.begin(), acc.data.end(), 0.0);
    consume(0, acc);
    for (std::size_t n = 1; n < src.samples.size(); ++n) {
        const F& prev = src.samples[n - 1];
        const F& cur = src.samples[n];
        for (std::size_t m = 0; m < acc.data.size(); ++m)
            acc.data[m] += 0.5 * src.dt * (prev.data[m] + cur.data[m]);
        consume(n, acc);
    }
}

} // namespace

VectorTrack flow_map(const ChannelGeometry& g, const VectorTrack& v) {
    const Domain dom = v.samples.front().domain;
    VectorField x = sample_vector(g, dom, [](int c, double y1, double y2, double z) {
        return c == 0 ? y1 : (c == 1 ? y2 : z);
    });
    VectorTrack eta;
    eta.dt = v.dt;
    eta.samples.resize(v.samples.size());
    cumtrapz(v, [&](std::size_t n, const VectorField& integral) {
        eta.samples[n] = (n == 0) ? x : axpy(1.0, integral, x);
    });
    return eta;
}

TensorTrack integrate_inverse_gradient(const ChannelGeometry& g, const VectorTrack& v) {
    const Domain dom = v.samples.front().domain;
    const int nt = static_cast<int>(v.samples.size());
    const double dt = v.dt;

    std::vector<TensorField> gradv(nt);
    for (int n = 0; n < nt; ++n) gradv[n] = gradient(g, v.samples[n]);

    TensorTrack a;
    a.dt = dt;
    a.samples.assign(nt, TensorField(g, dom));
    TensorField& a0 = a.samples[0];
    const auto& probe = v.samples.front();
    for (int i = 0; i < probe.n1; ++i)
        for (int j = 0; j < probe.n2; ++j)
            for (int k = 0; k < probe.nz; ++k) set_tensor(a0, i, j, k, Mat3::Identity());

    for (int n = 0; n + 1 < nt; ++n) {
        const TensorField& g0 = gradv[n];
        const TensorField& g1 = gradv[n + 1];
        TensorField& cur = a.samples[n];
        TensorField& next = a.samples[n + 1];
        for (int i = 0; i < probe.n1; ++i)
            for (int j = 0; j < probe.n2; ++j)
                for (int k = 0; k < probe.nz; ++k) {
                    const Mat3 G0 = tensor_at(g0, i, j, k);
                    const Mat3 G1 = tensor_at(g1, i, j, k);
                    const Mat3 Gh = 0.5 * (G0 + G1);
                    const Mat3 an = tensor_at(cur, i, j, k);
                    const Mat3 k1 = -an * G0 * an;
                    const Mat3 y2 = an + 0.5 * dt * k1;
                    const Mat3 k2 = -y2 * Gh * y2;
                    const Mat3 y3 = an + 0.5 * dt * k2;
                    const Mat3 k3 = -y3 * Gh * y3;
                    const Mat3 y4 = an + dt * k3;
                    const Mat3 k4 = -y4 * G1 * y4;
                    set_tensor(next, i, j, k, an + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4));
                }
    }
    return a;
}

ScalarTrack integrate_jacobian(const ChannelGeometry& g, const VectorTrack& v,
                               const TensorTrack& a) {
    const Domain dom = v.samples.front().domain;
    const int nt = static_cast<int>(v.samples.size());
    const double dt = v.dt;

    // coefficient c = a_{kj} d_k v_j = tr(a * grad v) per sample
    std::vector<ScalarField> coef(nt, ScalarField(g, dom));
    for (int n = 0; n < nt; ++n) {
        TensorField gv = gradient(g, v.samples[n]);
        for (int i = 0; i < gv.n1; ++i)
            for (int j = 0; j < gv.n2; ++j)
                for (int k = 0; k < gv.nz; ++k) {
                    const Mat3 A = tensor_at(a.samples[n], i, j, k);
                    const Mat3 G = tensor_at(gv, i, j, k);
                    coef[n].at(i, j, k) = (A * G).trace();
                }
    }

    ScalarTrack jac;
    jac.dt = dt;
    jac.samples.assign(nt, ScalarField(g, dom));
    for (double& x : jac.samples[0].data) x = 1.0;
    for (int n = 0; n + 1 < nt; ++n) {
        const ScalarField& c0 = coef[n];
        const ScalarField& c1 = coef[n + 1];
        for (std::size_t m = 0; m < c0.data.size(); ++m) {
            const double a0 = c0.data[m], a1 = c1.data[m], ah = 0.5 * (a0 + a1);
            const double y = jac.samples[n].data[m];
            const double k1 = a0 * y;
            const double k2 = ah * (y + 0.5 * dt * k1);
            const double k3 = ah * (y + 0.5 * dt * k2);
            const double k4 = a1 * (y + dt * k3);
            jac.samples[n + 1].data[m] = y + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        }
    }
    return jac;
}

KinematicTrack compute_kinematics(const ChannelGeometry& g, const VectorTrack& v) {
    KinematicTrack kt;
    kt.eta = flow_map(g, v);
    kt.a = integrate_inverse_gradient(g, v);
    kt.jac = integrate_jacobian(g, v, kt.a);
    kt.b = kt.a;
    kt.b.samples.clear();
    for (const TensorField& an : kt.a.samples) {
        TensorField bn = an;
        const std::size_t comp = bn.points();
        for (int d = 0; d < 3; ++d)
            for (std::size_t m = 0; m < comp; ++m) bn.data[(3 * d + d) * comp + m] -= 1.0;
        kt.b.samples.push_back(std::move(bn));
    }
    return kt;
}

namespace {

ScalarTrack density_from_exponent(const ChannelGeometry&, const ScalarField& R0,
                                  const ScalarTrack& exponent_rate, double dt) {
    for (double r : R0.data)
        if (r <= 0.0) throw InvalidDensity("density_closed_form: R0 must be positive");
    ScalarTrack R;
    R.dt = dt;
    R.samples.resize(exponent_rate.samples.size());
    cumtrapz(exponent_rate, [&](std::size_t n, const ScalarField& integral) {
        ScalarField Rn = R0;
        for (std::size_t m = 0; m < Rn.data.size(); ++m)
            Rn.data[m] = R0.data[m] * std::exp(integral.data[m]);
        R.samples[n] = std::move(Rn);
    });
    return R;
}

} // namespace

ScalarTrack density_closed_form(const ChannelGeometry& g, const ScalarField& R0,
                                const VectorTrack& v) {
    ScalarTrack rate;
    rate.dt = v.dt;
    for (const VectorField& vn : v.samples) rate.samples.push_back(divergence(g, vn));
    return density_from_exponent(g, R0, rate, v.dt);
}

ScalarTrack density_closed_form(const ChannelGeometry& g, const ScalarField& R0,
                                const VectorTrack& v, const TensorTrack& a) {
    const Domain dom = v.samples.front().domain;
    ScalarTrack rate;
    rate.dt = v.dt;
    for (std::size_t n = 0; n < v.samples.size(); ++n) {
        TensorField gv = gradient(g, v.samples[n]);
        ScalarField c(g, dom);
        for (int i = 0; i < gv.n1; ++i)
            for (int j = 0; j < gv.n2; ++j)
                for (int k = 0; k < gv.nz; ++k)
                    c.at(i, j, k) =
                        (tensor_at(a.samples[n], i, j, k) * tensor_at(gv, i, j, k)).trace();
        rate.samples.push_back(std::move(c));
    }
    return density_from_exponent(g, R0, rate, v.dt);
}

KinematicResidual kinematic_consistency(const ChannelGeometry& g, const VectorTrack& eta,
                                        const TensorTrack& a, const ScalarTrack& jac) {
    const Domain dom = eta.samples.front().domain;
    // differentiate the periodic displacement eta - x, then add the identity
    VectorField x = sample_vector(g, dom, [](int c, double y1, double y2, double z) {
        return c == 0 ? y1 : (c == 1 ? y2 : z);
    });
    KinematicResidual res;
    for (std::size_t n = 0; n < eta.samples.size(); ++n) {
        VectorField disp = eta.samples[n] - x;
        TensorField grad_eta = gradient(g, disp);
        const std::size_t comp = grad_eta.points();
        for (int d = 0; d < 3; ++d)
            for (std::size_t m = 0; m < comp; ++m) grad_eta.data[(3 * d + d) * comp + m] += 1.0;
        for (int i = 0; i < grad_eta.n1; ++i)
            for (int j = 0; j < grad_eta.n2; ++j)
                for (int k = 0; k < grad_eta.nz; ++k) {
                    const Mat3 F = tensor_at(grad_eta, i, j, k);
                    const Mat3 A = tensor_at(a.samples[n], i, j, k);
                    const Mat3 E = A * F - Mat3::Identity();
                    res.inverse_residual =
                        std::max(res.inverse_residual, E.cwiseAbs().maxCoeff());
                    res.jacobian_residual =
                        std::max(res.jacobian_residual,
                                 std::abs(jac.samples[n].at(i, j, k) - F.determinant()));
                }
    }
    return res;
}

void enforce_jacobian_floor(const ScalarTrack& jac, double floor) {
    for (const auto& s : jac.samples)
        for (double v : s.data)
            if (v < floor)
                throw FloorBreach("jacobian floor breached: min J < " + std::to_string(floor));
}

void enforce_density_floor(const ScalarTrack& R, const ScalarField& R0, double rel_floor) {
    double min0 = R0.data.front();
    for (double v : R0.data) min0 = std::min(min0, v);
    const double floor = rel_floor * min0;
    for (const auto& s : R.samples)
        for (double v : s.data)
            if (v < floor) throw FloorBreach("density floor breached: min R < floor");
}

} // namespace fsilab
