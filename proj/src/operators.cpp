#include "fsilab/operators.hpp"

#include "fsilab/transform.hpp"

namespace fsilab {
namespace {

// Spectral in-plane derivative of one component, direction dir in {0,1}.
// The Nyquist mode's derivative is set to zero (real-field convention).
void spectral_inplane(const ChannelGeometry&, const double* in, double* out,
                      int n1, int n2, int nz, int dir) {
    std::vector<cplx> level(static_cast<std::size_t>(n1) * n2);
    for (int k = 0; k < nz; ++k) {
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j)
                level[i * n2 + j] = in[(static_cast<std::size_t>(i) * n2 + j) * nz + k];
        dft_2d(level, n1, n2, true);
        for (int i = 0; i < n1; ++i) {
            for (int j = 0; j < n2; ++j) {
                int k1 = dft_wavenumber(i, n1);
                int k2 = dft_wavenumber(j, n2);
                if (2 * i == n1) k1 = 0;
                if (2 * j == n2) k2 = 0;
                const double kk = (dir == 0) ? k1 : k2;
                level[i * n2 + j] *= cplx(0.0, kk);
            }
        }
        dft_2d(level, n1, n2, false);
        const double inv = 1.0 / (static_cast<double>(n1) * n2);
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j)
                out[(static_cast<std::size_t>(i) * n2 + j) * nz + k] =
                    level[i * n2 + j].real() * inv;
    }
}

// Vertical derivative columns: centered interior, one-sided ends.
void fd_vertical(const double* in, double* out, int n1, int n2, int nz, double h) {
    const double c = 1.0 / (2.0 * h);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const double* col = in + (static_cast<std::size_t>(i) * n2 + j) * nz;
            double* oc = out + (static_cast<std::size_t>(i) * n2 + j) * nz;
            oc[0] = c * (-3.0 * col[0] + 4.0 * col[1] - col[2]);
            for (int k = 1; k < nz - 1; ++k) oc[k] = c * (col[k + 1] - col[k - 1]);
            oc[nz - 1] = c * (3.0 * col[nz - 1] - 4.0 * col[nz - 2] + col[nz - 3]);
        }
    }
}

template <int NC>
void check_volume(const FieldT<NC>& f, const char* op) {
    if (!is_volume(f.domain))
        throw DomainMismatch(std::string(op) + ": boundary-plane fields have no y3 direction");
}

} // namespace

template <int NC>
FieldT<NC> partial(const ChannelGeometry& g, const FieldT<NC>& f, int dir) {
    check_volume(f, "partial");
    FieldT<NC> out(g, f.domain);
    const std::size_t comp = f.points();
    for (int c = 0; c < NC; ++c) {
        const double* in = f.data.data() + c * comp;
        double* o = out.data.data() + c * comp;
        if (dir < 2)
            spectral_inplane(g, in, o, f.n1, f.n2, f.nz, dir);
        else
            fd_vertical(in, o, f.n1, f.n2, f.nz, g.dz(f.domain));
    }
    return out;
}

template ScalarField partial<1>(const ChannelGeometry&, const ScalarField&, int);
template VectorField partial<3>(const ChannelGeometry&, const VectorField&, int);
template TensorField partial<9>(const ChannelGeometry&, const TensorField&, int);

VectorField gradient(const ChannelGeometry& g, const ScalarField& f) {
    check_volume(f, "gradient");
    VectorField out(g, f.domain);
    const std::size_t comp = f.points();
    for (int d = 0; d < 3; ++d) {
        ScalarField df = partial(g, f, d);
        std::copy(df.data.begin(), df.data.end(), out.data.begin() + d * comp);
    }
    return out;
}

TensorField gradient(const ChannelGeometry& g, const VectorField& v) {
    check_volume(v, "gradient");
    TensorField out(g, v.domain);
    const std::size_t comp = v.points();
    VectorField d1 = partial(g, v, 0), d2 = partial(g, v, 1), d3 = partial(g, v, 2);
    for (int j = 0; j < 3; ++j) {
        std::copy(d1.data.begin() + j * comp, d1.data.begin() + (j + 1) * comp,
                  out.data.begin() + (3 * j + 0) * comp);
        std::copy(d2.data.begin() + j * comp, d2.data.begin() + (j + 1) * comp,
                  out.data.begin() + (3 * j + 1) * comp);
        std::copy(d3.data.begin() + j * comp, d3.data.begin() + (j + 1) * comp,
                  out.data.begin() + (3 * j + 2) * comp);
    }
    return out;
}

ScalarField divergence(const ChannelGeometry& g, const VectorField& v) {
    check_volume(v, "divergence");
    ScalarField out(g, v.domain);
    const std::size_t comp = v.points();
    for (int d = 0; d < 3; ++d) {
        ScalarField vc(g, v.domain);
        std::copy(v.data.begin() + d * comp, v.data.begin() + (d + 1) * comp, vc.data.begin());
        ScalarField dv = partial(g, vc, d);
        for (std::size_t n = 0; n < comp; ++n) out.data[n] += dv.data[n];
    }
    return out;
}

VectorField tensor_divergence(const ChannelGeometry& g, const TensorField& t) {
    check_volume(t, "tensor_divergence");
    VectorField out(g, t.domain);
    const std::size_t comp = t.points();
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            ScalarField tc(g, t.domain);
            std::copy(t.data.begin() + (3 * j + k) * comp,
                      t.data.begin() + (3 * j + k + 1) * comp, tc.data.begin());
            ScalarField d = partial(g, tc, k);
            for (std::size_t n = 0; n < comp; ++n) out.data[j * comp + n] += d.data[n];
        }
    }
    return out;
}

template <int NC>
FieldT<NC> boundary_trace(const ChannelGeometry& g, const FieldT<NC>& f, Domain plane) {
    check_volume(f, "boundary_trace");
    if (plane != g.bottom_plane(f.domain) && plane != g.top_plane(f.domain))
        throw DomainMismatch(std::string("boundary_trace: plane ") + domain_name(plane) +
                             " is not a boundary of " + domain_name(f.domain));
    const int k = (plane == g.top_plane(f.domain)) ? f.nz - 1 : 0;
    FieldT<NC> out(g, plane);
    for (int c = 0; c < NC; ++c)
        for (int i = 0; i < f.n1; ++i)
            for (int j = 0; j < f.n2; ++j)
                out.at(c, i, j, 0) = f.at(c, i, j, k);
    return out;
}

template ScalarField boundary_trace<1>(const ChannelGeometry&, const ScalarField&, Domain);
template VectorField boundary_trace<3>(const ChannelGeometry&, const VectorField&, Domain);
template TensorField boundary_trace<9>(const ChannelGeometry&, const TensorField&, Domain);

template <int NC>
FieldT<NC> one_sided_dz(const ChannelGeometry& g, const FieldT<NC>& f, Domain plane) {
    check_volume(f, "one_sided_dz");
    if (plane != g.bottom_plane(f.domain) && plane != g.top_plane(f.domain))
        throw DomainMismatch("one_sided_dz: plane not on this slab");
    const bool top = (plane == g.top_plane(f.domain));
    const double c = 1.0 / (2.0 * g.dz(f.domain));
    const int m = f.nz - 1;
    FieldT<NC> out(g, plane);
    for (int cc = 0; cc < NC; ++cc)
        for (int i = 0; i < f.n1; ++i)
            for (int j = 0; j < f.n2; ++j)
                out.at(cc, i, j, 0) =
                    top ? c * (3.0 * f.at(cc, i, j, m) - 4.0 * f.at(cc, i, j, m - 1) +
                               f.at(cc, i, j, m - 2))
                        : c * (-3.0 * f.at(cc, i, j, 0) + 4.0 * f.at(cc, i, j, 1) -
                               f.at(cc, i, j, 2));
    return out;
}

template ScalarField one_sided_dz<1>(const ChannelGeometry&, const ScalarField&, Domain);
template VectorField one_sided_dz<3>(const ChannelGeometry&, const VectorField&, Domain);
template TensorField one_sided_dz<9>(const ChannelGeometry&, const TensorField&, Domain);

} // namespace fsilab
