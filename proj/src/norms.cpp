#include "fsilab/norms.hpp"

#include "fsilab/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace fsilab {
namespace {

constexpr double pi = 3.14159265358979323846264338327950288;

// Squared H^s norm of one scalar component on a slab via even reflection.
double sobolev_sq_volume(const ChannelGeometry& g, const double* f, Domain dom,
                         int n1, int n2, int nz, double s) {
    const int m = nz - 1;             // cells
    const int ne = 2 * m;             // extended vertical length
    const double h = g.dz(dom);
    const double len = g.thickness(dom);

    std::vector<cplx> ext(static_cast<std::size_t>(n1) * n2 * ne);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const double* col = f + (static_cast<std::size_t>(i) * n2 + j) * nz;
            cplx* ec = ext.data() + (static_cast<std::size_t>(i) * n2 + j) * ne;
            for (int k = 0; k <= m; ++k) ec[k] = col[k];
            for (int k = 1; k < m; ++k) ec[ne - k] = col[k];
        }
    }
    dft_3d(ext, n1, n2, ne, true);

    const double scale = g.dy1() * g.dy2() * (h / 2.0) /
                         (static_cast<double>(n1) * n2 * ne);
    double sum = 0.0;
    for (int i = 0; i < n1; ++i) {
        const double k1 = dft_wavenumber(i, n1);
        for (int j = 0; j < n2; ++j) {
            const double k2 = dft_wavenumber(j, n2);
            for (int k = 0; k < ne; ++k) {
                const double k3 = dft_wavenumber(k, ne) * pi / len;
                const double sym = std::pow(1.0 + k1 * k1 + k2 * k2 + k3 * k3, s);
                sum += sym * std::norm(ext[(static_cast<std::size_t>(i) * n2 + j) * ne + k]);
            }
        }
    }
    return scale * sum;
}

double sobolev_sq_plane(const ChannelGeometry& g, const double* f, int n1, int n2,
                        double s) {
    std::vector<cplx> a(static_cast<std::size_t>(n1) * n2);
    for (std::size_t n = 0; n < a.size(); ++n) a[n] = f[n];
    dft_2d(a, n1, n2, true);
    const double scale = g.dy1() * g.dy2() / (static_cast<double>(n1) * n2);
    double sum = 0.0;
    for (int i = 0; i < n1; ++i) {
        const double k1 = dft_wavenumber(i, n1);
        for (int j = 0; j < n2; ++j) {
            const double k2 = dft_wavenumber(j, n2);
            sum += std::pow(1.0 + k1 * k1 + k2 * k2, s) * std::norm(a[i * n2 + j]);
        }
    }
    return scale * sum;
}

// Trapezoid weight in y3 (1 everywhere for plane fields).
double z_weight(int k, int nz) {
    if (nz == 1) return 1.0;
    return (k == 0 || k == nz - 1) ? 0.5 : 1.0;
}

// Windowed fractional seminorm^2 of a scalar time signal; symbol
// (1+tau^2)^r - 1, Hann window compensated by its mean-square 3/8.
double time_seminorm_sq(const std::vector<double>& u, double dt, double r,
                        std::vector<cplx>& work, const std::vector<double>& window) {
    const int nt = static_cast<int>(u.size());
    const int np = static_cast<int>(work.size());
    for (int n = 0; n < nt; ++n) work[n] = u[n] * window[n];
    for (int n = nt; n < np; ++n) work[n] = 0.0;
    dft_1d(work, true);
    const double dtau = 2.0 * pi / (np * dt);
    double sum = 0.0;
    for (int k = 0; k < np; ++k) {
        const double tau = dft_wavenumber(k, np) * dtau;
        sum += (std::pow(1.0 + tau * tau, r) - 1.0) * std::norm(work[k]);
    }
    return (8.0 / 3.0) * sum * dt / np;
}

} // namespace

template <int NC>
double sobolev_norm(const ChannelGeometry& g, const FieldT<NC>& f, double s) {
    if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be nonnegative");
    const std::size_t comp = f.points();
    double sum = 0.0;
    for (int c = 0; c < NC; ++c) {
        const double* d = f.data.data() + c * comp;
        sum += is_volume(f.domain)
                   ? sobolev_sq_volume(g, d, f.domain, f.n1, f.n2, f.nz, s)
                   : sobolev_sq_plane(g, d, f.n1, f.n2, s);
    }
    return std::sqrt(sum);
}

template double sobolev_norm<1>(const ChannelGeometry&, const ScalarField&, double);
template double sobolev_norm<3>(const ChannelGeometry&, const VectorField&, double);
template double sobolev_norm<9>(const ChannelGeometry&, const TensorField&, double);

template <int NC>
double l2_norm(const ChannelGeometry& g, const FieldT<NC>& f) {
    const double dz = is_volume(f.domain) ? g.dz(f.domain) : 1.0;
    double sum = 0.0;
    for (int c = 0; c < NC; ++c)
        for (int i = 0; i < f.n1; ++i)
            for (int j = 0; j < f.n2; ++j)
                for (int k = 0; k < f.nz; ++k) {
                    const double v = f.at(c, i, j, k);
                    sum += z_weight(k, f.nz) * v * v;
                }
    return std::sqrt(sum * g.dy1() * g.dy2() * dz);
}

template double l2_norm<1>(const ChannelGeometry&, const ScalarField&);
template double l2_norm<3>(const ChannelGeometry&, const VectorField&);
template double l2_norm<9>(const ChannelGeometry&, const TensorField&);

template <int NC>
double spacetime_norm(const ChannelGeometry& g, const TimeTrack<FieldT<NC>>& track,
                      SpaceTimeOrder order) {
    if (track.samples.size() < 4)
        throw std::invalid_argument("spacetime_norm: track needs at least 4 samples");
    if (order.r < 0.0 || order.s < 0.0)
        throw std::invalid_argument("spacetime_norm: orders must be nonnegative");
    const int nt = static_cast<int>(track.samples.size());
    const double dt = track.dt;

    // L^2-in-time H^s-in-space part (trapezoid in t).
    double space_sq = 0.0;
    for (int n = 0; n < nt; ++n) {
        const double w = (n == 0 || n == nt - 1) ? 0.5 : 1.0;
        const double a = sobolev_norm(g, track.samples[n], order.s);
        space_sq += w * a * a * dt;
    }

    // Fractional-in-time part, pointwise over the grid.
    double time_sq = 0.0;
    if (order.r > 0.0) {
        const FieldT<NC>& f0 = track.samples.front();
        const double dz = is_volume(f0.domain) ? g.dz(f0.domain) : 1.0;
        const double da = g.dy1() * g.dy2() * dz;
        const int np = 4 * nt;
        std::vector<cplx> work(np);
        std::vector<double> window(nt);
        for (int n = 0; n < nt; ++n)
            window[n] = 0.5 * (1.0 - std::cos(2.0 * pi * n / (nt - 1)));
        std::vector<double> u(nt);
        for (int c = 0; c < NC; ++c)
            for (int i = 0; i < f0.n1; ++i)
                for (int j = 0; j < f0.n2; ++j)
                    for (int k = 0; k < f0.nz; ++k) {
                        for (int n = 0; n < nt; ++n)
                            u[n] = track.samples[n].at(c, i, j, k);
                        time_sq += z_weight(k, f0.nz) * da *
                                   time_seminorm_sq(u, dt, order.r, work, window);
                    }
    }
    return std::sqrt(space_sq + time_sq);
}

template double spacetime_norm<1>(const ChannelGeometry&, const ScalarTrack&, SpaceTimeOrder);
template double spacetime_norm<3>(const ChannelGeometry&, const VectorTrack&, SpaceTimeOrder);
template double spacetime_norm<9>(const ChannelGeometry&, const TensorTrack&, SpaceTimeOrder);

template <int NC>
double sup_sobolev_in_time(const ChannelGeometry& g, const TimeTrack<FieldT<NC>>& track,
                           double s) {
    double m = 0.0;
    for (const auto& f : track.samples) m = std::max(m, sobolev_norm(g, f, s));
    return m;
}

template double sup_sobolev_in_time<1>(const ChannelGeometry&, const ScalarTrack&, double);
template double sup_sobolev_in_time<3>(const ChannelGeometry&, const VectorTrack&, double);

double spacetime_norm(const ChannelGeometry& g, const FluidVectorTrack& track,
                      SpaceTimeOrder order) {
    const double a = spacetime_norm(g, track.lower, order);
    const double b = spacetime_norm(g, track.upper, order);
    return std::sqrt(a * a + b * b);
}

double k_norm(const ChannelGeometry& g, const FluidVectorTrack& track, double s) {
    return spacetime_norm(g, track, k_order(s));
}

} // namespace fsilab
