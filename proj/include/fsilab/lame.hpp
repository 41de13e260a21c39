#ifndef FSILAB_LAME_HPP
#define FSILAB_LAME_HPP

#include "fsilab/field.hpp"
#include "fsilab/wave.hpp"

#include <functional>

namespace fsilab {

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct Viscosities {
    double lambda = 1.0;
    double mu = 1.0;
};

// Variable-coefficient parabolic Lame problem on one fluid slab:
//
//   d_t u - lambda R div(grad u + (grad u)^T) - mu R grad div u = f
//
// with the flux condition lambda(d_k u_j + d_j u_k) nu^k + mu (div u) nu^j
// = h_j on the slab's Gamma_c plane, u = 0 on its Gamma_f plane, periodic
// laterally.  R, f, h are sampled on the same time grid as the solution.
struct LameProblem {
    Domain slab = Domain::FluidLower;
    ScalarTrack R;    // reciprocal density coefficient, must stay >= 1e-3
    VectorTrack f;    // interior forcing
    GammaCTrack h;    // flux data on the Gamma_c plane of this slab
    VectorField u0;
    Viscosities visc;
};

// The discrete Lame operator: exact composition of the module's gradient /
// divergence stencils, so a-posteriori residuals of the solver vanish to
// solver tolerance.
VectorField apply_lame_operator(const ChannelGeometry& g, const ScalarField& R,
                                const Viscosities& visc, const VectorField& u);

// Discrete boundary flux of u on a Gamma_c plane (one-sided vertical
// stencil, spectral in-plane), signed with the elastic-outward normal.
VectorField boundary_flux(const ChannelGeometry& g, const VectorField& u,
                          const Viscosities& visc, Domain plane);

// One implicit step from time t to t + dt (dt = track spacing), coefficient
// and data frozen at the new time level.  theta = 1 is backward Euler (the
// default driver); theta = 1/2 is Crank-Nicolson for the order study.  The
// per-mode banded solve uses the horizontal mean of R; the in-plane-varying
// remainder is folded in by defect correction until the full variable-R
// equation holds to `tol` (relative).
VectorField step_lame(const ChannelGeometry& g, const VectorField& u,
                      const LameProblem& prob, double t, double theta = 1.0,
                      double tol = 1e-13);

VectorTrack solve_lame(const ChannelGeometry& g, const LameProblem& prob,
                       double theta = 1.0, double tol = 1e-13);

// Method-of-manufactured-solutions data.  `value` and `dt_value` sample the
// chosen solution and its time derivative; when `lame_of` is provided the
// interior forcing uses the symbolic operator (for order studies), otherwise
// the module's own discrete operators.  h is always the discrete flux.
struct ManufacturedSolution {
    std::function<double(int c, double t, double y1, double y2, double z)> value;
    std::function<double(int c, double t, double y1, double y2, double z)> dt_value;
    std::function<double(int c, double t, double y1, double y2, double z)> lame_of; // optional
};

struct ManufacturedForcing {
    VectorTrack f;
    GammaCTrack h;
    VectorTrack u_exact;
};

ManufacturedForcing manufactured_forcing(const ChannelGeometry& g, Domain slab,
                                         const ManufacturedSolution& ms,
                                         const ScalarTrack& R, const Viscosities& visc);

struct LameResidual {
    double interior = 0.0;   // L2-in-time of the BDF1 PDE residual
    double flux = 0.0;       // L2-in-time of the Gamma_c flux mismatch
    double dirichlet = 0.0;  // L2-in-time of the Gamma_f rows
};

LameResidual lame_residual(const ChannelGeometry& g, const VectorTrack& u,
                           const LameProblem& prob);

} // namespace fsilab

#endif
