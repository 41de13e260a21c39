#ifndef FSILAB_NORMS_HPP
#define FSILAB_NORMS_HPP

#include "fsilab/field.hpp"

namespace fsilab {

// Discrete Sobolev and anisotropic space-time norms.
//
// Spatial H^s on a slab: the vertical direction is extended to a torus by
// even reflection, the full 3D DFT is taken, and the symbol (1+|xi|^2)^s is
// summed over modes.  At s = 0 this reduces exactly to the trapezoidal
// (in y3) L^2 grid norm.  Boundary-plane fields use the plain 2D torus DFT.
//
// Space-time H^{r,s}: the squared norm is the sum of a fractional-in-time
// part and an L^2-in-time H^s-in-space part,
//
//   |u|^2_{H^{r,s}} = |u|^2_{time,r} + int_0^T |u(t)|^2_{H^s} dt ,
//
// where the time part applies a Hann window, zero-pads to 4x length, takes
// the temporal DFT, and weights by (1+tau^2)^r - 1.  Subtracting 1 from the
// symbol keeps the zero-order content out of the time part (it is already
// carried by the space part), so H^{0,0} is exactly the plain space-time
// L^2 quadrature norm.  The window/padding convention is reported in run
// metadata; all norm comparisons in this project use the same convention.

struct SpaceTimeOrder {
    double r = 0.0; // time order
    double s = 0.0; // space order
};

// K^s = H^{s/2, s}, the parabolic scaling.
inline SpaceTimeOrder k_order(double s) { return {s / 2.0, s}; }

inline const char* time_norm_convention() { return "hann-window, 4x zero-pad, symbol (1+tau^2)^r - 1"; }

template <int NC>
double sobolev_norm(const ChannelGeometry& g, const FieldT<NC>& f, double s);

template <int NC>
double l2_norm(const ChannelGeometry& g, const FieldT<NC>& f);

template <int NC>
double spacetime_norm(const ChannelGeometry& g, const TimeTrack<FieldT<NC>>& track,
                      SpaceTimeOrder order);

template <int NC>
double k_norm(const ChannelGeometry& g, const TimeTrack<FieldT<NC>>& track, double s) {
    return spacetime_norm(g, track, k_order(s));
}

// max over samples of the spatial H^s norm (C_t H^s_x proxy).
template <int NC>
double sup_sobolev_in_time(const ChannelGeometry& g, const TimeTrack<FieldT<NC>>& track,
                           double s);

// K^s norm aggregated over both fluid slabs.
double k_norm(const ChannelGeometry& g, const FluidVectorTrack& track, double s);
double spacetime_norm(const ChannelGeometry& g, const FluidVectorTrack& track,
                      SpaceTimeOrder order);

} // namespace fsilab

#endif
