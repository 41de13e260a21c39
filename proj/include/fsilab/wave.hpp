#ifndef FSILAB_WAVE_HPP
#define FSILAB_WAVE_HPP

#include "fsilab/field.hpp"

#include <optional>

namespace fsilab {

// Linear wave equation w_tt = Laplacian w on the elastic slab, Dirichlet
// data on both interface planes, periodic laterally.  Per in-plane mode the
// vertical operator is the compact tridiagonal Laplacian; time stepping is
// implicit Newmark (average acceleration, beta = 1/4, gamma = 1/2), which
// conserves the matching discrete energy exactly for homogeneous data.
// Dirichlet rows are imposed strongly: after every step the boundary rows
// of w equal psi bitwise, and boundary rows of w_t carry the discrete time
// derivative of psi.

struct ElasticState {
    VectorField w;    // displacement on Omega_e
    VectorField w_t;  // structure velocity on Omega_e
    double time = 0.0;
};

// Dirichlet data on both interface planes.
struct GammaCData {
    VectorField lower;  // plane y3 = L1
    VectorField upper;  // plane y3 = L2
};

using GammaCTrack = TimeTrack<VectorField>; // one plane over time

struct InterfaceTracks {
    GammaCTrack lower, upper;
};

// psi(t) = w0_trace + cumulative trapezoid of the interface trace of v.
InterfaceTracks dirichlet_from_velocity(const ChannelGeometry& g,
                                        const GammaCData& w0_trace,
                                        const FluidVectorTrack& v);

ElasticState step_wave(const ChannelGeometry& g, const ElasticState& state,
                       const GammaCData& psi_next, double dt);

// Signed normal derivative dw/dnu on both planes; nu = -e3 at y3 = L1 and
// +e3 at y3 = L2 (outward with respect to the elastic body).
GammaCData normal_derivative(const ChannelGeometry& g, const ElasticState& state);

double wave_energy(const ChannelGeometry& g, const ElasticState& state);

// Whole-window wave solve used by the coupling iterations and the lemma lab.
struct WaveRunRecord {
    TimeTrack<VectorField> w;        // displacement history
    TimeTrack<VectorField> w_t;      // velocity history
    InterfaceTracks psi;             // the Dirichlet data used
    InterfaceTracks normal_trace;    // dw/dnu history on both planes
    bool compat_warning = false;     // d_t psi|_0 != w1 trace beyond 1e-8
    double compat_residual = 0.0;
};

WaveRunRecord solve_wave(const ChannelGeometry& g, const VectorField& w0,
                         const VectorField& w1, const InterfaceTracks& psi,
                         std::optional<GammaCData> psi_dot0 = std::nullopt);

} // namespace fsilab

#endif
