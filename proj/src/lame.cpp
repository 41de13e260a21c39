#include "fsilab/lame.hpp"

#include "fsilab/kinematics.hpp"
#include "fsilab/operators.hpp"
#include "fsilab/parallel.hpp"
#include "fsilab/transform.hpp"

#define LAPACK_COMPLEX_CPP
#include <complex>
#include <lapacke.h>

#include <array>
#include <cmath>
#include <cstdlib>

namespace fsilab {
namespace {

constexpr int KL = 8; // scalar band width of the per-mode system
constexpr int KU = 8;

// Dense vertical derivative matrix: centered interior rows, second-order
// one-sided end rows; matches the module gradient stencils exactly.
std::vector<double> d1_matrix(int nz, double h) {
    std::vector<double> d(static_cast<std::size_t>(nz) * nz, 0.0);
    const double c = 1.0 / (2.0 * h);
    d[0 * nz + 0] = -3.0 * c;
    d[0 * nz + 1] = 4.0 * c;
    d[0 * nz + 2] = -1.0 * c;
    for (int i = 1; i < nz - 1; ++i) {
        d[i * nz + (i - 1)] = -c;
        d[i * nz + (i + 1)] = c;
    }
    d[(nz - 1) * nz + (nz - 1)] = 3.0 * c;
    d[(nz - 1) * nz + (nz - 2)] = -4.0 * c;
    d[(nz - 1) * nz + (nz - 3)] = c;
    return d;
}

// Compact second derivative: (1,-2,1)/h^2 interior, second-order one-sided
// rows at the ends.  Pure vertical second derivatives use this rather than
// the D1*D1 composition, which loses an order next to the one-sided rows.
std::vector<double> d2_matrix(int nz, double h) {
    std::vector<double> d(static_cast<std::size_t>(nz) * nz, 0.0);
    const double c = 1.0 / (h * h);
    d[0 * nz + 0] = 2.0 * c;
    d[0 * nz + 1] = -5.0 * c;
    d[0 * nz + 2] = 4.0 * c;
    d[0 * nz + 3] = -1.0 * c;
    for (int i = 1; i < nz - 1; ++i) {
        d[i * nz + (i - 1)] = c;
        d[i * nz + i] = -2.0 * c;
        d[i * nz + (i + 1)] = c;
    }
    d[(nz - 1) * nz + (nz - 1)] = 2.0 * c;
    d[(nz - 1) * nz + (nz - 2)] = -5.0 * c;
    d[(nz - 1) * nz + (nz - 3)] = 4.0 * c;
    d[(nz - 1) * nz + (nz - 4)] = -1.0 * c;
    return d;
}

struct SlabLayout {
    Domain slab;
    Domain gamma_c;      // flux plane
    Domain gamma_f;      // Dirichlet plane
    int flux_z;          // node index of the flux plane
    int dir_z;           // node index of the Dirichlet plane
    double nu3;          // elastic-outward normal at the flux plane

    SlabLayout(const ChannelGeometry& g, Domain slab_) : slab(slab_) {
        const int nz = g.nodes(slab_);
        if (slab_ == Domain::FluidLower) {
            gamma_c = Domain::GammaCLower;
            gamma_f = Domain::GammaFBottom;
            flux_z = nz - 1;
            dir_z = 0;
        } else if (slab_ == Domain::FluidUpper) {
            gamma_c = Domain::GammaCUpper;
            gamma_f = Domain::GammaFTop;
            flux_z = 0;
            dir_z = nz - 1;
        } else {
            throw DomainMismatch("lame solver: needs a fluid slab");
        }
        nu3 = ChannelGeometry::nu3(gamma_c);
    }
};

// Per-mode banded matrix in LAPACK band storage, plus the pivot array.
struct BandFactor {
    int n = 0;
    std::vector<std::complex<double>> ab;
    std::vector<lapack_int> ipiv;
};

// Assembles and factors I - theta*dt*L for one in-plane mode with vertical
// coefficient profile Rz (horizontal mean of R at the new time level).
// Boundary rows carry the flux / Dirichlet conditions.
BandFactor factor_mode(const ChannelGeometry&, const SlabLayout& lay,
                       const std::vector<double>& Rz, const Viscosities& vc,
                       double k1, double k2, double theta_dt,
                       const std::vector<double>& D1, const std::vector<double>& D2) {
    const int nz = static_cast<int>(Rz.size());
    const int n = 3 * nz;
    const double kk = k1 * k1 + k2 * k2;
    const double lam = vc.lambda, lpm = vc.lambda + vc.mu;

    // dense accumulation of the block operator is tiny at slab resolution
    std::vector<std::complex<double>> A(static_cast<std::size_t>(n) * n, 0.0);
    auto add = [&](int j, int zi, int k, int zj, std::complex<double> v) {
        A[(static_cast<std::size_t>(3) * zi + j) * n + (3 * zj + k)] += v;
    };
    const std::complex<double> I1(0.0, k1), I2(0.0, k2);

    for (int zi = 0; zi < nz; ++zi) {
        if (zi == lay.dir_z || zi == lay.flux_z) continue;
        const double R = Rz[zi];
        // lambda R (D1^2 - kk) on the diagonal blocks
        for (int j = 0; j < 3; ++j) {
            add(j, zi, j, zi, -lam * R * kk);
            for (int zj = 0; zj < nz; ++zj) {
                const double d2 = D2[zi * nz + zj];
                if (d2 != 0.0) add(j, zi, j, zj, lam * R * d2);
            }
        }
        // (lambda + mu) R grad div
        add(0, zi, 0, zi, -lpm * R * k1 * k1);
        add(0, zi, 1, zi, -lpm * R * k1 * k2);
        add(1, zi, 0, zi, -lpm * R * k1 * k2);
        add(1, zi, 1, zi, -lpm * R * k2 * k2);
        for (int zj = 0; zj < nz; ++zj) {
            const double d1 = D1[zi * nz + zj];
            if (d1 == 0.0) continue;
            add(0, zi, 2, zj, lpm * R * I1 * d1);
            add(1, zi, 2, zj, lpm * R * I2 * d1);
            add(2, zi, 0, zj, lpm * R * I1 * d1);
            add(2, zi, 1, zj, lpm * R * I2 * d1);
        }
        for (int zj = 0; zj < nz; ++zj) {
            const double d2 = D2[zi * nz + zj];
            if (d2 != 0.0) add(2, zi, 2, zj, lpm * R * d2);
        }
    }

    // M = I - theta*dt*A on PDE rows
    for (auto& v : A) v *= -theta_dt;
    for (int zi = 0; zi < nz; ++zi) {
        if (zi == lay.dir_z || zi == lay.flux_z) continue;
        for (int j = 0; j < 3; ++j)
            A[(static_cast<std::size_t>(3) * zi + j) * n + (3 * zi + j)] += 1.0;
    }

    // Dirichlet rows: identity
    for (int j = 0; j < 3; ++j)
        A[(static_cast<std::size_t>(3) * lay.dir_z + j) * n + (3 * lay.dir_z + j)] = 1.0;

    // flux rows: lambda(d3 u_j + d_j u_3) nu3, j=1,2; third row couples div
    {
        const int zf = lay.flux_z;
        const double s = lay.nu3;
        for (int zj = 0; zj < nz; ++zj) {
            const double d1 = D1[zf * nz + zj];
            if (d1 == 0.0) continue;
            add(0, zf, 0, zj, s * lam * d1);
            add(1, zf, 1, zj, s * lam * d1);
            add(2, zf, 2, zj, s * (2.0 * lam + vc.mu) * d1);
        }
        add(0, zf, 2, zf, s * lam * I1);
        add(1, zf, 2, zf, s * lam * I2);
        add(2, zf, 0, zf, s * vc.mu * I1);
        add(2, zf, 1, zf, s * vc.mu * I2);
    }

    // pack into LAPACK band storage
    BandFactor bf;
    bf.n = n;
    const int ldab = 2 * KL + KU + 1;
    bf.ab.assign(static_cast<std::size_t>(ldab) * n, 0.0);
    for (int col = 0; col < n; ++col)
        for (int row = std::max(0, col - KU); row <= std::min(n - 1, col + KL); ++row)
            bf.ab[static_cast<std::size_t>(col) * ldab + (KL + KU + row - col)] =
                A[static_cast<std::size_t>(row) * n + col];
    bf.ipiv.assign(n, 0);
    const lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n, n, KL, KU,
                                           reinterpret_cast<lapack_complex_double*>(bf.ab.data()),
                                           ldab, bf.ipiv.data());
    if (info != 0) throw SolverError("lame mode factorization failed (info != 0)");
    return bf;
}

void solve_mode(const BandFactor& bf, std::vector<std::complex<double>>& rhs) {
    const int ldab = 2 * KL + KU + 1;
    const lapack_int info = LAPACKE_zgbtrs(
        LAPACK_COL_MAJOR, 'N', bf.n, KL, KU, 1,
        reinterpret_cast<const lapack_complex_double*>(bf.ab.data()), ldab, bf.ipiv.data(),
        reinterpret_cast<lapack_complex_double*>(rhs.data()), bf.n);
    if (info != 0) throw SolverError("lame mode solve failed (info != 0)");
}

int sample_index(const TimeTrack<ScalarField>& track, double t) {
    return static_cast<int>(std::lround(t / track.dt));
}

std::vector<double> horizontal_mean(const ScalarField& R) {
    std::vector<double> rz(R.nz, 0.0);
    for (int k = 0; k < R.nz; ++k) {
        double s = 0.0;
        for (int i = 0; i < R.n1; ++i)
            for (int j = 0; j < R.n2; ++j) s += R.at(i, j, k);
        rz[k] = s / (static_cast<double>(R.n1) * R.n2);
    }
    return rz;
}

void check_coefficient(const ScalarField& R) {
    for (double v : R.data)
        if (v < 1e-3) throw InvalidDensity("lame coefficient below floor 1e-3");
}

// All per-mode factors of I - theta*dt*L_{Rbar} for one step; modes are
// independent, so the loop parallelizes over FSILAB_THREADS.
std::vector<BandFactor> factor_all_modes(const ChannelGeometry& g, const SlabLayout& lay,
                                         const std::vector<double>& Rz,
                                         const Viscosities& vc, double theta_dt,
                                         const std::vector<double>& D1,
                                         const std::vector<double>& D2) {
    const int n1 = g.N1, n2 = g.N2;
    std::vector<BandFactor> factors(static_cast<std::size_t>(n1) * n2);
    parallel_for(n1 * n2, [&](int m) {
        const int i = m / n2, j = m % n2;
        double k1 = dft_wavenumber(i, n1);
        double k2 = dft_wavenumber(j, n2);
        if (2 * i == n1) k1 = 0.0; // Nyquist derivative convention
        if (2 * j == n2) k2 = 0.0;
        factors[m] = factor_mode(g, lay, Rz, vc, k1, k2, theta_dt, D1, D2);
    });
    return factors;
}

// Solves (I - theta*dt*L_{Rbar}) u = b for all in-plane modes; b given in
// physical space with BC entries already in place on boundary rows.
VectorField preconditioner_solve(const ChannelGeometry& g, const SlabLayout& lay,
                                 const std::vector<BandFactor>& factors,
                                 const VectorField& b) {
    const int n1 = g.N1, n2 = g.N2, nz = g.nodes(lay.slab);
    // forward transform all components level by level
    std::vector<std::vector<cplx>> hat(nz,
                                       std::vector<cplx>(static_cast<std::size_t>(n1) * n2));
    VectorField out(g, lay.slab);
    std::vector<std::vector<cplx>> comp_hat(3);
    for (int c = 0; c < 3; ++c) {
        comp_hat[c].resize(static_cast<std::size_t>(n1) * n2 * nz);
        std::vector<cplx> level(static_cast<std::size_t>(n1) * n2);
        for (int k = 0; k < nz; ++k) {
            for (int i = 0; i < n1; ++i)
                for (int j = 0; j < n2; ++j) level[i * n2 + j] = b.at(c, i, j, k);
            dft_2d(level, n1, n2, true);
            for (int i = 0; i < n1; ++i)
                for (int j = 0; j < n2; ++j)
                    comp_hat[c][(static_cast<std::size_t>(i) * n2 + j) * nz + k] =
                        level[i * n2 + j];
        }
    }

    parallel_for(n1 * n2, [&](int m) {
        std::vector<cplx> rhs(3 * nz);
        const BandFactor& bf = factors[m];
        for (int z = 0; z < nz; ++z)
            for (int c = 0; c < 3; ++c)
                rhs[3 * z + c] = comp_hat[c][static_cast<std::size_t>(m) * nz + z];
        solve_mode(bf, rhs);
        for (int z = 0; z < nz; ++z)
            for (int c = 0; c < 3; ++c)
                comp_hat[c][static_cast<std::size_t>(m) * nz + z] = rhs[3 * z + c];
    });

    std::vector<cplx> level(static_cast<std::size_t>(n1) * n2);
    const double inv = 1.0 / (static_cast<double>(n1) * n2);
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k < nz; ++k) {
            for (int i = 0; i < n1; ++i)
                for (int j = 0; j < n2; ++j)
                    level[i * n2 + j] =
                        comp_hat[c][(static_cast<std::size_t>(i) * n2 + j) * nz + k];
            dft_2d(level, n1, n2, false);
            for (int i = 0; i < n1; ++i)
                for (int j = 0; j < n2; ++j) out.at(c, i, j, k) = level[i * n2 + j].real() * inv;
        }
    return out;
}

} // namespace

namespace {

// Vertical derivatives of one component through the dense stencil tables.
ScalarField vertical_apply(const ChannelGeometry& g, const VectorField& u, int comp,
                           const std::vector<double>& D) {
    ScalarField out(g, u.domain);
    const int nz = u.nz;
    for (int i = 0; i < u.n1; ++i)
        for (int j = 0; j < u.n2; ++j)
            for (int zi = 0; zi < nz; ++zi) {
                double s = 0.0;
                for (int zj = 0; zj < nz; ++zj) {
                    const double d = D[zi * nz + zj];
                    if (d != 0.0) s += d * u.at(comp, i, j, zj);
                }
                out.at(i, j, zi) = s;
            }
    return out;
}

ScalarField extract(const ChannelGeometry& g, const VectorField& u, int comp) {
    ScalarField out(g, u.domain);
    const std::size_t n = out.points();
    std::copy(u.data.begin() + comp * n, u.data.begin() + (comp + 1) * n, out.data.begin());
    return out;
}

} // namespace

VectorField apply_lame_operator(const ChannelGeometry& g, const ScalarField& R,
                                const Viscosities& visc, const VectorField& u) {
    // mirrors the per-mode assembly stencil for stencil: spectral in-plane,
    // single-D1 mixed verticals, compact D2 pure verticals
    const int nz = u.nz;
    const double h = g.dz(u.domain);
    const std::vector<double> D1 = d1_matrix(nz, h);
    const std::vector<double> D2 = d2_matrix(nz, h);
    const std::size_t comp = u.points();

    const ScalarField u0 = extract(g, u, 0);
    const ScalarField u1 = extract(g, u, 1);

    ScalarField d1u0 = partial(g, u0, 0);
    ScalarField d2u1 = partial(g, u1, 1);
    ScalarField dzu0 = vertical_apply(g, u, 0, D1);
    ScalarField dzu1 = vertical_apply(g, u, 1, D1);


    // Laplacian of each component
    std::array<ScalarField, 3> lap;
    for (int c = 0; c < 3; ++c) {
        ScalarField uc = extract(g, u, c);
        ScalarField lp = partial(g, partial(g, uc, 0), 0);
        ScalarField l2 = partial(g, partial(g, uc, 1), 1);
        ScalarField lz = vertical_apply(g, u, c, D2);
        for (std::size_t m = 0; m < comp; ++m)
            lp.data[m] += l2.data[m] + lz.data[m];
        lap[c] = std::move(lp);
    }

    // grad div with the mixed/pure split
    ScalarField div_inplane = d1u0;
    for (std::size_t m = 0; m < comp; ++m) div_inplane.data[m] += d2u1.data[m];
    ScalarField dzu2_d1 = vertical_apply(g, u, 2, D1);

    ScalarField gd0 = partial(g, div_inplane, 0);
    {
        ScalarField t = partial(g, dzu2_d1, 0);
        for (std::size_t m = 0; m < comp; ++m) gd0.data[m] += t.data[m];
    }
    ScalarField gd1 = partial(g, div_inplane, 1);
    {
        ScalarField t = partial(g, dzu2_d1, 1);
        for (std::size_t m = 0; m < comp; ++m) gd1.data[m] += t.data[m];
    }
    // (grad div)_3 = d3 d1 u1 + d3 d2 u2 + D2 u3, mixed parts as d1(D1 u1)
    ScalarField gd2 = partial(g, dzu0, 0);
    {
        ScalarField t = partial(g, dzu1, 1);
        ScalarField z2 = vertical_apply(g, u, 2, D2);
        for (std::size_t m = 0; m < comp; ++m) gd2.data[m] += t.data[m] + z2.data[m];
    }

    VectorField out(g, u.domain);
    const double lam = visc.lambda, lpm = visc.lambda + visc.mu;
    const std::array<const ScalarField*, 3> gd{&gd0, &gd1, &gd2};
    for (int c = 0; c < 3; ++c)
        for (std::size_t m = 0; m < comp; ++m)
            out.data[c * comp + m] =
                R.data[m] * (lam * lap[c].data[m] + lpm * gd[c]->data[m]);
    return out;
}

VectorField boundary_flux(const ChannelGeometry& g, const VectorField& u,
                          const Viscosities& visc, Domain plane) {
    const double s = ChannelGeometry::nu3(plane);
    VectorField du3 = one_sided_dz(g, u, plane);      // d3 of all components at the plane
    VectorField tr = boundary_trace(g, u, plane);

    // in-plane derivatives of the traces (2D spectral)
    auto inplane = [&](const VectorField& t2d, int comp, int dir) {
        std::vector<cplx> a(static_cast<std::size_t>(t2d.n1) * t2d.n2);
        for (int i = 0; i < t2d.n1; ++i)
            for (int j = 0; j < t2d.n2; ++j) a[i * t2d.n2 + j] = t2d.at(comp, i, j, 0);
        dft_2d(a, t2d.n1, t2d.n2, true);
        for (int i = 0; i < t2d.n1; ++i)
            for (int j = 0; j < t2d.n2; ++j) {
                int k1 = dft_wavenumber(i, t2d.n1);
                int k2 = dft_wavenumber(j, t2d.n2);
                if (2 * i == t2d.n1) k1 = 0;
                if (2 * j == t2d.n2) k2 = 0;
                a[i * t2d.n2 + j] *= cplx(0.0, dir == 0 ? k1 : k2);
            }
        dft_2d(a, t2d.n1, t2d.n2, false);
        ScalarField out(g, t2d.domain);
        const double inv = 1.0 / (static_cast<double>(t2d.n1) * t2d.n2);
        for (int i = 0; i < t2d.n1; ++i)
            for (int j = 0; j < t2d.n2; ++j) out.at(i, j, 0) = a[i * t2d.n2 + j].real() * inv;
        return out;
    };

    ScalarField d1u3 = inplane(tr, 2, 0);
    ScalarField d2u3 = inplane(tr, 2, 1);
    ScalarField d1u1 = inplane(tr, 0, 0);
    ScalarField d2u2 = inplane(tr, 1, 1);

    VectorField h(g, plane);
    for (int i = 0; i < h.n1; ++i)
        for (int j = 0; j < h.n2; ++j) {
            const double dz1 = du3.at(0, i, j, 0);
            const double dz2 = du3.at(1, i, j, 0);
            const double dz3 = du3.at(2, i, j, 0);
            const double div = d1u1.at(i, j, 0) + d2u2.at(i, j, 0) + dz3;
            h.at(0, i, j, 0) = s * visc.lambda * (dz1 + d1u3.at(i, j, 0));
            h.at(1, i, j, 0) = s * visc.lambda * (dz2 + d2u3.at(i, j, 0));
            h.at(2, i, j, 0) = s * (2.0 * visc.lambda * dz3 + visc.mu * div);
        }
    return h;
}

VectorField step_lame(const ChannelGeometry& g, const VectorField& u,
                      const LameProblem& prob, double t, double theta, double tol) {
    if (prob.visc.lambda <= 0.0 || prob.visc.mu <= 0.0)
        throw ConfigError("viscosities must be positive");
    const SlabLayout lay(g, prob.slab);
    const double dt = prob.f.dt;
    const int idx = sample_index(prob.R, t);
    const int next = idx + 1;
    const ScalarField& Rn = prob.R.samples.at(next);
    check_coefficient(Rn);

    const int nz = g.nodes(prob.slab);
    const double h = g.dz(prob.slab);
    const std::vector<double> D1 = d1_matrix(nz, h);
    const std::vector<double> D2 = d2_matrix(nz, h);
    const std::vector<double> Rz = horizontal_mean(Rn);

    // explicit part of the rhs (theta scheme)
    VectorField rhs = u;
    if (theta < 1.0) {
        const ScalarField& Rcur = prob.R.samples.at(idx);
        VectorField Lu = apply_lame_operator(g, Rcur, prob.visc, u);
        rhs = axpy((1.0 - theta) * dt, Lu, rhs);
        rhs = axpy((1.0 - theta) * dt, prob.f.samples.at(idx), rhs);
    }
    rhs = axpy(theta * dt, prob.f.samples.at(next), rhs);

    // boundary rows of the right side carry the data
    const VectorField& hn = prob.h.samples.at(next);
    for (int i = 0; i < rhs.n1; ++i)
        for (int j = 0; j < rhs.n2; ++j)
            for (int c = 0; c < 3; ++c) {
                rhs.at(c, i, j, lay.dir_z) = 0.0;
                rhs.at(c, i, j, lay.flux_z) = hn.at(c, i, j, 0);
            }

    const std::vector<BandFactor> factors =
        factor_all_modes(g, lay, Rz, prob.visc, theta * dt, D1, D2);
    VectorField unew = preconditioner_solve(g, lay, factors, rhs);

    // defect correction folds in the in-plane variation of R
    const double rhs_scale = std::max(sup_norm(rhs), 1e-30);
    for (int sweep = 0; sweep < 60; ++sweep) {
        VectorField Lu = apply_lame_operator(g, Rn, prob.visc, unew);
        VectorField resid = rhs;
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < rhs.n1; ++i)
                for (int j = 0; j < rhs.n2; ++j)
                    for (int k = 0; k < nz; ++k) {
                        if (k == lay.dir_z || k == lay.flux_z) {
                            resid.at(c, i, j, k) = 0.0; // BCs hold exactly per solve
                            continue;
                        }
                        resid.at(c, i, j, k) -=
                            unew.at(c, i, j, k) - theta * dt * Lu.at(c, i, j, k);
                    }
        const double rn = sup_norm(resid);
        if (rn <= tol * rhs_scale) break;
        if (sweep == 59)
            throw SolverError("lame defect correction stalled (coefficient too rough)");
        VectorField corr = preconditioner_solve(g, lay, factors, resid);
        unew = axpy(1.0, corr, unew);
    }

    // strong imposition of the Dirichlet rows
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < unew.n1; ++i)
            for (int j = 0; j < unew.n2; ++j) unew.at(c, i, j, lay.dir_z) = 0.0;
    return unew;
}

VectorTrack solve_lame(const ChannelGeometry& g, const LameProblem& prob, double theta,
                       double tol) {
    VectorTrack out;
    out.dt = prob.f.dt;
    out.samples.push_back(prob.u0);
    VectorField u = prob.u0;
    const int nt = static_cast<int>(prob.f.samples.size());
    for (int n = 0; n + 1 < nt; ++n) {
        u = step_lame(g, u, prob, n * out.dt, theta, tol);
        out.samples.push_back(u);
    }
    return out;
}

ManufacturedForcing manufactured_forcing(const ChannelGeometry& g, Domain slab,
                                         const ManufacturedSolution& ms,
                                         const ScalarTrack& R, const Viscosities& visc) {
    const SlabLayout lay(g, slab);
    const int nt = static_cast<int>(R.samples.size());
    const double dt = R.dt;
    ManufacturedForcing out;
    out.f.dt = out.h.dt = out.u_exact.dt = dt;
    for (int n = 0; n < nt; ++n) {
        const double t = n * dt;
        VectorField u = sample_vector(g, slab, [&](int c, double a, double b, double z) {
            return ms.value(c, t, a, b, z);
        });
        VectorField ut = sample_vector(g, slab, [&](int c, double a, double b, double z) {
            return ms.dt_value(c, t, a, b, z);
        });
        VectorField f(g, slab);
        if (ms.lame_of) {
            VectorField lame = sample_vector(g, slab, [&](int c, double a, double b, double z) {
                return ms.lame_of(c, t, a, b, z);
            });
            const std::size_t comp = f.points();
            for (int c = 0; c < 3; ++c)
                for (std::size_t m = 0; m < comp; ++m)
                    f.data[c * comp + m] =
                        ut.data[c * comp + m] - R.samples[n].data[m] * lame.data[c * comp + m];
        } else {
            VectorField Lu = apply_lame_operator(g, R.samples[n], visc, u);
            f = ut - Lu;
        }
        out.f.samples.push_back(std::move(f));
        out.h.samples.push_back(boundary_flux(g, u, visc, lay.gamma_c));
        out.u_exact.samples.push_back(std::move(u));
    }
    return out;
}

LameResidual lame_residual(const ChannelGeometry& g, const VectorTrack& u,
                           const LameProblem& prob) {
    const SlabLayout lay(g, prob.slab);
    const double dt = u.dt;
    const int nt = static_cast<int>(u.samples.size());
    const double da = g.dy1() * g.dy2();
    const double dz = g.dz(prob.slab);

    LameResidual res;
    double interior_sq = 0.0, flux_sq = 0.0, dir_sq = 0.0;
    for (int n = 1; n < nt; ++n) {
        VectorField Lu = apply_lame_operator(g, prob.R.samples.at(n), prob.visc, u.samples[n]);
        const VectorField& fn = prob.f.samples.at(n);
        double cell = 0.0;
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < Lu.n1; ++i)
                for (int j = 0; j < Lu.n2; ++j)
                    for (int k = 0; k < Lu.nz; ++k) {
                        if (k == lay.dir_z || k == lay.flux_z) continue;
                        const double r = (u.samples[n].at(c, i, j, k) -
                                          u.samples[n - 1].at(c, i, j, k)) / dt -
                                         Lu.at(c, i, j, k) - fn.at(c, i, j, k);
                        cell += r * r;
                    }
        interior_sq += cell * da * dz * dt;

        VectorField fl = boundary_flux(g, u.samples[n], prob.visc, lay.gamma_c);
        double fcell = 0.0;
        for (std::size_t m = 0; m < fl.data.size(); ++m) {
            const double r = fl.data[m] - prob.h.samples.at(n).data[m];
            fcell += r * r;
        }
        flux_sq += fcell * da * dt;

        double dcell = 0.0;
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < Lu.n1; ++i)
                for (int j = 0; j < Lu.n2; ++j) {
                    const double r = u.samples[n].at(c, i, j, lay.dir_z);
                    dcell += r * r;
                }
        dir_sq += dcell * da * dt;
    }
    res.interior = std::sqrt(interior_sq);
    res.flux = std::sqrt(flux_sq);
    res.dirichlet = std::sqrt(dir_sq);
    return res;
}

} // namespace fsilab
