#include "fsilab/field.hpp"

namespace fsilab {

double plane_height(const ChannelGeometry& g, Domain plane) {
    switch (plane) {
        case Domain::GammaFBottom: return 0.0;
        case Domain::GammaCLower: return g.L1;
        case Domain::GammaCUpper: return g.L2;
        case Domain::GammaFTop: return g.L3;
        default: throw DomainMismatch("plane_height(): not a boundary plane");
    }
}

ScalarField sample_scalar(const ChannelGeometry& g, Domain d,
                          const std::function<double(double, double, double)>& f) {
    ScalarField out(g, d);
    const bool vol = is_volume(d);
    const double zp = vol ? 0.0 : plane_height(g, d);
    for (int i = 0; i < out.n1; ++i)
        for (int j = 0; j < out.n2; ++j)
            for (int k = 0; k < out.nz; ++k)
                out.at(i, j, k) = f(g.y1(i), g.y2(j), vol ? g.z(d, k) : zp);
    return out;
}

VectorField sample_vector(const ChannelGeometry& g, Domain d,
                          const std::function<double(int, double, double, double)>& f) {
    VectorField out(g, d);
    const bool vol = is_volume(d);
    const double zp = vol ? 0.0 : plane_height(g, d);
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < out.n1; ++i)
            for (int j = 0; j < out.n2; ++j)
                for (int k = 0; k < out.nz; ++k)
                    out.at(c, i, j, k) = f(c, g.y1(i), g.y2(j), vol ? g.z(d, k) : zp);
    return out;
}

} // namespace fsilab
