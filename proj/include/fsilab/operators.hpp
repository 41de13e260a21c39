#ifndef FSILAB_OPERATORS_HPP
#define FSILAB_OPERATORS_HPP

#include "fsilab/field.hpp"

namespace fsilab {

// Spatial derivatives on a slab: d_1, d_2 by exact spectral differentiation
// of the in-plane DFT, d_3 by second-order centered differences with
// second-order one-sided stencils at the slab ends.  Boundary-plane (2D)
// fields are rejected.

VectorField gradient(const ChannelGeometry& g, const ScalarField& f);
TensorField gradient(const ChannelGeometry& g, const VectorField& v);
ScalarField divergence(const ChannelGeometry& g, const VectorField& v);

// Row-wise divergence of a tensor: out_j = sum_k d_k T_{jk}.
VectorField tensor_divergence(const ChannelGeometry& g, const TensorField& t);

// Single directional derivative d_dir (dir in {0,1,2}) of every component.
template <int NC>
FieldT<NC> partial(const ChannelGeometry& g, const FieldT<NC>& f, int dir);

// Restriction of grid values to a boundary plane of the field's subdomain.
template <int NC>
FieldT<NC> boundary_trace(const ChannelGeometry& g, const FieldT<NC>& f, Domain plane);

// One-sided second-order vertical derivative evaluated on a boundary plane
// of the field's slab (used for fluxes and wave normal derivatives).
template <int NC>
FieldT<NC> one_sided_dz(const ChannelGeometry& g, const FieldT<NC>& f, Domain plane);

} // namespace fsilab

#endif
