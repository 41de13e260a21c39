#ifndef FSILAB_INEQUALITIES_HPP
#define FSILAB_INEQUALITIES_HPP

#include "fsilab/field.hpp"
#include "fsilab/wave.hpp"

#include <vector>

namespace fsilab {

// Numerical verification of the space-time trace inequality, the Fourier
// interpolation inequality, and hidden-regularity ratio studies for the
// wave equation.  Ratios are measured quantities: suites aggregate and
// archive them, they are never asserted against theoretical constants.

struct RatioReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool degenerate = false; // rhs below noise; reported as skip
};

// |u|_{H^theta_t L2(Gamma_c)} vs
// |u|_{L2 H^r}^{1/2r} |u|_{H^{2 theta r/(2r-1)} L2}^{(2r-1)/2r} + |u|_{L2 H^r}
// on the trace plane of the track's slab.  Requires r > 1/2, theta >= 0.
RatioReport verify_trace_inequality(const ChannelGeometry& g, const VectorTrack& u,
                                    double r, double theta);

// Parameters of the interpolation symbol inequality
// (1+|tau|^{2 theta})(1+|xi|^{2 lambda})
//     <= eps^2 (1+|tau|^{2 alpha}) + C_eps (1+|xi|^{2 beta}).
struct InequalityParams {
    double alpha = 1.0;
    double beta = 1.0;
    double theta = 0.5;   // in (0, alpha)
    double lambda = 0.5;  // in (0, beta)
    double eps = 0.5;     // in (0, 1]

    void validate() const;
};

// C_eps from maximizing the defect over a log-spaced grid of
// (|tau|, |xi|) in [0, 1e6]^2, then scaling by the 1.05 safety factor.
double interpolation_constant(const InequalityParams& p);

// Pointwise check on a fresh log-spaced grid of grid_size^2 points disjoint
// from the fitting grid; returns the number of violations.
int verify_symbol_inequality(const InequalityParams& p, double c_eps, int grid_size);

enum class HiddenRegularityForm {
    NormalTraceEnergy,  // dw/dnu in H^{beta-1} of the cylinder vs data norms
    NormalTraceL2Hs     // dw/dnu in L2_t H^{beta+1}(Gamma_c) vs data norms
};

// Ratio of the estimate for one recorded wave solve.  beta must be >= 1 for
// the energy form and in (0, 5/2) for the L2Hs form.
RatioReport hidden_regularity_ratio(const ChannelGeometry& g, const WaveRunRecord& run,
                                    const VectorField& w0, const VectorField& w1,
                                    double beta, HiddenRegularityForm form);

} // namespace fsilab

#endif
