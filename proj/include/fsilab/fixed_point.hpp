#ifndef FSILAB_FIXED_POINT_HPP
#define FSILAB_FIXED_POINT_HPP

#include "fsilab/field.hpp"
#include "fsilab/kinematics.hpp"
#include "fsilab/lame.hpp"
#include "fsilab/wave.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fsilab {

struct InnerDivergence : std::runtime_error {
    explicit InnerDivergence(const std::string& what) : std::runtime_error(what) {}
};

enum class FsiMode { Lambda, Pi };

// Iteration parameters.  s sits in (2, 2.5) and selects the diagnostic
// K^{s+1} norm order only; M_report is the ball-radius diagnostic.
struct IterationConfig {
    double s = 2.25;
    double T = 0.1;
    double dt = 2.5e-3;
    double tol = 1e-7;
    int max_iter = 30;
    double M_report = 500.0;
    double R_floor = 1e-3;  // relative to min R0
    double J_floor = 0.1;

    int samples() const;
    void validate() const;
};

// Problem data shared by both maps.  External forcing (f, h) enters the
// parabolic-wave map only; the Navier-Stokes-wave map is unforced.
struct FsiData {
    FluidScalar R0;
    FluidVector v0;
    VectorField w0; // identically zero in the theorem setting
    VectorField w1;
    Viscosities visc;
    std::optional<FluidVectorTrack> f_ext;
    std::optional<InterfaceTracks> h_ext;
};

// One full iterate of the coupled system.
struct FsiState {
    FluidVectorTrack v;
    FluidScalarTrack R;
    WaveRunRecord elastic;
    std::optional<FluidPair<KinematicTrack>> kinematics; // Pi mode only
    FluidPair<LameProblem> assembled;                    // problems of the last solve
    int inner_sweeps = 0;
};

struct CompatibilityReport {
    // interface velocity match, outer Dirichlet, interface stress balance,
    // outer-boundary momentum consistency
    std::array<double, 4> residuals{};
    std::array<double, 4> thresholds{};
    std::array<bool, 4> pass{};
    bool all_pass = false;
};

CompatibilityReport check_compatibility(const ChannelGeometry& g, const FluidVector& v0,
                                        const VectorField& w1, const FluidScalar& R0,
                                        const Viscosities& visc,
                                        double thr_linear = 1e-8, double thr_deriv = 1e-6);

// One application of the parabolic-wave map: density by the closed form with
// the div v exponent, wave solve with integrated-velocity Dirichlet data,
// then the nonhomogeneous parabolic solve with forcing f - R grad(R^{-1})
// and boundary data dw/dnu + R^{-1} nu + h.
FsiState lambda_step(const ChannelGeometry& g, const FsiData& data,
                     const IterationConfig& cfg, const FluidVectorTrack& v);

// One application of the Navier-Stokes-wave map: kinematics (a, b, J) from
// the velocity, density with the a_{kj} d_k v_j exponent, wave solve, then
// the parabolic solve whose forcing I_1..I_8 and boundary K_1..K_11 depend
// on the unknown iterate; resolved by an inner Picard loop lagging those
// terms.  `frozen_kinematics` substitutes precomputed (a, b, J) tracks
// (identity kinematics reduce the map to the parabolic-wave one).
FsiState pi_step(const ChannelGeometry& g, const FsiData& data, const IterationConfig& cfg,
                 const FluidVectorTrack& v,
                 const std::optional<FluidPair<KinematicTrack>>& frozen_kinematics =
                     std::nullopt);

// I/K forcing terms, exposed one by one for oracle cross-validation.
// Interior: which in 1..8; boundary: which in 1..11, on the slab's
// Gamma_c plane.
VectorField pi_interior_term(const ChannelGeometry& g, int which, const ScalarField& R,
                             const TensorField& b, const VectorField& vbar,
                             const Viscosities& visc);
VectorField pi_boundary_term(const ChannelGeometry& g, int which, Domain plane,
                             const ScalarField& R, const ScalarField& jac,
                             const TensorField& b, const VectorField& vbar,
                             const Viscosities& visc);
VectorField pi_interior_forcing(const ChannelGeometry& g, const ScalarField& R,
                                const TensorField& b, const VectorField& vbar,
                                const Viscosities& visc);
VectorField pi_boundary_data(const ChannelGeometry& g, Domain plane, const ScalarField& R,
                             const ScalarField& jac, const TensorField& b,
                             const VectorField& vbar, const Viscosities& visc);

enum class FsiStatus { Converged, MaxIterReached, FloorBreach, InnerDivergence };

const char* status_name(FsiStatus s);

struct ConvergenceReport {
    FsiStatus status = FsiStatus::MaxIterReached;
    std::string message;
    std::vector<double> diffs;            // K^{s+1}-proxy of v^{n+1} - v^n
    std::vector<double> factors;          // d_{n+1}/d_n where d_n > 10 tol
    std::vector<double> iterate_norms;    // K^{s+1} of each iterate
    bool ball_exceeded = false;           // any iterate norm > M_report
    double final_interior_residual = 0.0; // lame_residual over both slabs
    double final_flux_residual = 0.0;
    double final_dirichlet_residual = 0.0;
    double interface_velocity_mismatch = 0.0; // sup |trace v - w_t| on Gamma_c
    int iterations = 0;
};

struct FsiResult {
    FsiState state;
    ConvergenceReport report;
};

FsiResult run_fixed_point(FsiMode mode, const ChannelGeometry& g, const FsiData& data,
                          const IterationConfig& cfg);

struct ContractionRow {
    double T = 0.0;
    double input_diff = 0.0;
    double output_diff = 0.0;
    double factor = 0.0;
    bool degenerate = false;
};

// Applies one step to two nearby admissible iterates per window length and
// tabulates output-diff / input-diff in the diagnostic norm.
std::vector<ContractionRow> contraction_study(FsiMode mode, const ChannelGeometry& g,
                                              const FsiData& data, IterationConfig cfg,
                                              const std::vector<double>& T_values,
                                              double perturbation = 1e-3);

// The shipped small compatible data set: linear vertical velocity profiles,
// quadratic reciprocal density matched so all four compatibility conditions
// vanish discretely, w1 interpolating the interface traces.
FsiData make_compatible_data(const ChannelGeometry& g, const Viscosities& visc,
                             double strength = 0.05);

} // namespace fsilab

#endif
