#ifndef FSILAB_TRANSFORM_HPP
#define FSILAB_TRANSFORM_HPP

#include <complex>
#include <vector>

namespace fsilab {

// Thin wrappers over FFTW with a per-shape plan cache.  All calls are
// serialized behind one lock; plans use FFTW_ESTIMATE so results are
// reproducible across runs.  Transforms are unnormalized (forward then
// backward multiplies by the total size).

using cplx = std::complex<double>;

// In-place 1D DFT of a complex signal.
void dft_1d(std::vector<cplx>& a, bool forward);

// In-place 2D DFT of an n1 x n2 row-major complex array.
void dft_2d(std::vector<cplx>& a, int n1, int n2, bool forward);

// In-place 3D DFT of an n1 x n2 x n3 row-major complex array.
void dft_3d(std::vector<cplx>& a, int n1, int n2, int n3, bool forward);

// Signed integer wavenumber of DFT bin i out of n (period-2*pi convention):
// 0, 1, ..., n/2, -(n/2-1), ..., -1.
inline int dft_wavenumber(int i, int n) { return (i <= n / 2) ? i : i - n; }

} // namespace fsilab

#endif
