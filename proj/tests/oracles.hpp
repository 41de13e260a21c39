#ifndef FSILAB_TEST_ORACLES_HPP
#define FSILAB_TEST_ORACLES_HPP

// Independent reference implementations used only by tests.  They follow the
// same norm/ODE definitions as the library but through straightforward dense
// loops (naive DFTs, plain quadrature, adaptive scalar ODE integration) so
// that plumbing errors in the fast paths cannot cancel.

#include "fsilab/field.hpp"
#include "fsilab/norms.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace fsilab::oracle {

// Naive-DFT H^s norm of a slab or plane field (even reflection, O(N^2) sums).
double sobolev_norm_dense(const ChannelGeometry& g, const ScalarField& f, double s);
double sobolev_norm_dense(const ChannelGeometry& g, const VectorField& f, double s);

// Naive space-time norm with the library's window convention.
double spacetime_norm_dense(const ChannelGeometry& g, const ScalarTrack& track,
                            SpaceTimeOrder order);
double spacetime_norm_dense(const ChannelGeometry& g, const VectorTrack& track,
                            SpaceTimeOrder order);

// Plain trapezoid L^2((0,T) x Omega) quadrature norm.
double l2_spacetime_dense(const ChannelGeometry& g, const ScalarTrack& track);

// Adaptive RK4 (step-doubling) for a scalar ODE y' = f(t, y).
double integrate_scalar_ode(const std::function<double(double, double)>& f, double y0,
                            double t_end, double tol);

// Least-squares slope of log(err) vs log(scale).
double fit_slope(const std::vector<double>& scale, const std::vector<double>& err);

// Simple deterministic band-limited random fields.
ScalarField random_band_limited_scalar(const ChannelGeometry& g, Domain d,
                                       unsigned seed, int kmax, double amp);
VectorField random_band_limited_vector(const ChannelGeometry& g, Domain d,
                                       unsigned seed, int kmax, double amp);

} // namespace fsilab::oracle

#endif
