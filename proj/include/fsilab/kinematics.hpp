#ifndef FSILAB_KINEMATICS_HPP
#define FSILAB_KINEMATICS_HPP

#include "fsilab/field.hpp"

namespace fsilab {

struct InvalidDensity : std::runtime_error {
    explicit InvalidDensity(const std::string& what) : std::runtime_error(what) {}
};

struct FloorBreach : std::runtime_error {
    explicit FloorBreach(const std::string& what) : std::runtime_error(what) {}
};

// Flow map, inverse deformation gradient, perturbation b = a - I, and
// Jacobian computed from a velocity track on one fluid slab.  a is obtained
// from its own ODE  a_t = -a (grad v) a,  a(0) = I, and only *checked*
// against (grad eta)^{-1}; J integrates  J_t = J a_{kj} d_k v_j,  J(0) = 1.
struct KinematicTrack {
    VectorTrack eta;  // flow map, eta(0,x) = x exactly
    TensorTrack a;    // inverse matrix of the flow map
    TensorTrack b;    // a - I3
    ScalarTrack jac;  // Jacobian, jac(0) = 1
};

// eta(t) = x + cumulative trapezoid of v.
VectorTrack flow_map(const ChannelGeometry& g, const VectorTrack& v);

// RK4 on the matrix Riccati ODE; grad v interpolated linearly in time at
// the RK4 substeps.
TensorTrack integrate_inverse_gradient(const ChannelGeometry& g, const VectorTrack& v);

// RK4 per grid point on the scalar linear Jacobian ODE.
ScalarTrack integrate_jacobian(const ChannelGeometry& g, const VectorTrack& v,
                               const TensorTrack& a);

KinematicTrack compute_kinematics(const ChannelGeometry& g, const VectorTrack& v);

// Reciprocal Lagrangian density.  Without an `a` track the exponent is the
// cumulative integral of div v (parabolic-wave form); with one it is the
// cumulative integral of a_{kj} d_k v_j (Navier-Stokes form).
ScalarTrack density_closed_form(const ChannelGeometry& g, const ScalarField& R0,
                                const VectorTrack& v);
ScalarTrack density_closed_form(const ChannelGeometry& g, const ScalarField& R0,
                                const VectorTrack& v, const TensorTrack& a);

struct KinematicResidual {
    double inverse_residual = 0.0;   // max_t |a * grad(eta) - I|_inf
    double jacobian_residual = 0.0;  // max_t |J - det grad(eta)|_inf
};

KinematicResidual kinematic_consistency(const ChannelGeometry& g, const VectorTrack& eta,
                                        const TensorTrack& a, const ScalarTrack& jac);

// Run floors (Lemma-regime guards): min J and min R relative to min R0.
void enforce_jacobian_floor(const ScalarTrack& jac, double floor);
void enforce_density_floor(const ScalarTrack& R, const ScalarField& R0, double rel_floor);

} // namespace fsilab

#endif
