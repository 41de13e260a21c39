#ifndef FSILAB_FIELD_HPP
#define FSILAB_FIELD_HPP

#include "fsilab/geometry.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace fsilab {

// Grid samples of a scalar/vector/tensor quantity on one tagged subdomain.
// Volume fields have shape N1 x N2 x nodes(slab); boundary-plane fields have
// nz = 1.  In-plane periodicity is implicit: there is no duplicated seam.
// Tensor components are stored row-major, c = 3*j + k meaning (grad v)_{jk}
// = d_k v_j (row = component, column = derivative direction).
template <int NC>
struct FieldT {
    Domain domain = Domain::FluidLower;
    int n1 = 0, n2 = 0, nz = 0;
    std::vector<double> data;

    FieldT() = default;
    FieldT(const ChannelGeometry& g, Domain d)
        : domain(d), n1(g.N1), n2(g.N2), nz(is_volume(d) ? g.nodes(d) : 1),
          data(static_cast<std::size_t>(NC) * n1 * n2 * nz, 0.0) {}

    static constexpr int components = NC;

    std::size_t points() const { return static_cast<std::size_t>(n1) * n2 * nz; }
    std::size_t index(int c, int i, int j, int k) const {
        return ((static_cast<std::size_t>(c) * n1 + i) * n2 + j) * nz + k;
    }
    double& at(int c, int i, int j, int k) { return data[index(c, i, j, k)]; }
    double at(int c, int i, int j, int k) const { return data[index(c, i, j, k)]; }

    // Scalar convenience accessors.
    double& at(int i, int j, int k) { static_assert(NC == 1); return at(0, i, j, k); }
    double at(int i, int j, int k) const { static_assert(NC == 1); return at(0, i, j, k); }

    bool same_shape(const FieldT& o) const {
        return domain == o.domain && n1 == o.n1 && n2 == o.n2 && nz == o.nz;
    }
};

using ScalarField = FieldT<1>;
using VectorField = FieldT<3>;
using TensorField = FieldT<9>;

// Pointwise sampling helpers.  The callable receives (y1, y2, y3); boundary
// planes are sampled at their fixed height.
ScalarField sample_scalar(const ChannelGeometry& g, Domain d,
                          const std::function<double(double, double, double)>& f);
VectorField sample_vector(const ChannelGeometry& g, Domain d,
                          const std::function<double(int, double, double, double)>& f);

double plane_height(const ChannelGeometry& g, Domain plane);

// Elementwise algebra; shapes must match.
template <int NC>
FieldT<NC> axpy(double a, const FieldT<NC>& x, const FieldT<NC>& y) {
    FieldT<NC> r = y;
    for (std::size_t n = 0; n < r.data.size(); ++n) r.data[n] += a * x.data[n];
    return r;
}

template <int NC>
FieldT<NC> scaled(const FieldT<NC>& x, double a) {
    FieldT<NC> r = x;
    for (double& v : r.data) v *= a;
    return r;
}

template <int NC>
FieldT<NC> operator+(const FieldT<NC>& a, const FieldT<NC>& b) { return axpy(1.0, a, b); }
template <int NC>
FieldT<NC> operator-(const FieldT<NC>& a, const FieldT<NC>& b) { return axpy(-1.0, b, a); }

template <int NC>
double sup_norm(const FieldT<NC>& f) {
    double m = 0.0;
    for (double v : f.data) m = std::max(m, std::abs(v));
    return m;
}

template <int NC>
double sup_diff(const FieldT<NC>& a, const FieldT<NC>& b) {
    double m = 0.0;
    for (std::size_t n = 0; n < a.data.size(); ++n)
        m = std::max(m, std::abs(a.data[n] - b.data[n]));
    return m;
}

// Uniformly sampled time series of one field shape; the carrier for all
// space-time norms.  samples[n] is the state at t = n*dt.
template <class F>
struct TimeTrack {
    double dt = 0.0;
    std::vector<F> samples;

    int steps() const { return static_cast<int>(samples.size()) - 1; }
    double duration() const { return dt * steps(); }
    const F& operator[](std::size_t n) const { return samples[n]; }
    F& operator[](std::size_t n) { return samples[n]; }
};

using ScalarTrack = TimeTrack<ScalarField>;
using VectorTrack = TimeTrack<VectorField>;
using TensorTrack = TimeTrack<TensorField>;

template <class F>
double sup_norm(const TimeTrack<F>& t) {
    double m = 0.0;
    for (const auto& s : t.samples) m = std::max(m, sup_norm(s));
    return m;
}

template <class F>
double sup_diff(const TimeTrack<F>& a, const TimeTrack<F>& b) {
    double m = 0.0;
    for (std::size_t n = 0; n < a.samples.size(); ++n)
        m = std::max(m, sup_diff(a.samples[n], b.samples[n]));
    return m;
}

// Quantities that live on both fluid slabs at once.
template <class T>
struct FluidPair {
    T lower, upper;
};

using FluidScalar = FluidPair<ScalarField>;
using FluidVector = FluidPair<VectorField>;
using FluidScalarTrack = FluidPair<ScalarTrack>;
using FluidVectorTrack = FluidPair<VectorTrack>;

template <class T>
double sup_diff(const FluidPair<T>& a, const FluidPair<T>& b) {
    return std::max(sup_diff(a.lower, b.lower), sup_diff(a.upper, b.upper));
}

} // namespace fsilab

#endif
