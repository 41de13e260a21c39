#include "fsilab/geometry.hpp"

namespace fsilab {

const char* domain_name(Domain d) {
    switch (d) {
        case Domain::FluidLower: return "fluid-lower";
        case Domain::FluidUpper: return "fluid-upper";
        case Domain::Elastic: return "elastic";
        case Domain::GammaCLower: return "gamma-c-lower";
        case Domain::GammaCUpper: return "gamma-c-upper";
        case Domain::GammaFBottom: return "gamma-f-bottom";
        case Domain::GammaFTop: return "gamma-f-top";
    }
    return "?";
}

ChannelGeometry::ChannelGeometry(double L1_, double L2_, double L3_,
                                 int N1_, int N2_, int Mlo_, int Mup_, int Mel_)
    : L1(L1_), L2(L2_), L3(L3_), N1(N1_), N2(N2_), Mlo(Mlo_), Mup(Mup_), Mel(Mel_) {
    if (!(0 < L1 && L1 < L2 && L2 < L3))
        throw ConfigError("channel layers must satisfy 0 < L1 < L2 < L3");
    for (int n : {N1, N2, Mlo, Mup, Mel}) {
        if (n < 4) throw ConfigError("grid counts must be >= 4");
        if (n % 2 != 0) throw ConfigError("grid counts must be even");
    }
}

int ChannelGeometry::cells(Domain d) const {
    switch (d) {
        case Domain::FluidLower: return Mlo;
        case Domain::FluidUpper: return Mup;
        case Domain::Elastic: return Mel;
        default: throw DomainMismatch("cells(): not a volume domain");
    }
}

double ChannelGeometry::thickness(Domain d) const {
    switch (d) {
        case Domain::FluidLower: return L1;
        case Domain::FluidUpper: return L3 - L2;
        case Domain::Elastic: return L2 - L1;
        default: throw DomainMismatch("thickness(): not a volume domain");
    }
}

double ChannelGeometry::z0(Domain d) const {
    switch (d) {
        case Domain::FluidLower: return 0.0;
        case Domain::FluidUpper: return L2;
        case Domain::Elastic: return L1;
        default: throw DomainMismatch("z0(): not a volume domain");
    }
}

Domain ChannelGeometry::bottom_plane(Domain slab) const {
    switch (slab) {
        case Domain::FluidLower: return Domain::GammaFBottom;
        case Domain::FluidUpper: return Domain::GammaCUpper;
        case Domain::Elastic: return Domain::GammaCLower;
        default: throw DomainMismatch("bottom_plane(): not a volume domain");
    }
}

Domain ChannelGeometry::top_plane(Domain slab) const {
    switch (slab) {
        case Domain::FluidLower: return Domain::GammaCLower;
        case Domain::FluidUpper: return Domain::GammaFTop;
        case Domain::Elastic: return Domain::GammaCUpper;
        default: throw DomainMismatch("top_plane(): not a volume domain");
    }
}

Domain ChannelGeometry::fluid_slab_of(Domain plane) const {
    switch (plane) {
        case Domain::GammaFBottom:
        case Domain::GammaCLower: return Domain::FluidLower;
        case Domain::GammaCUpper:
        case Domain::GammaFTop: return Domain::FluidUpper;
        default: throw DomainMismatch("fluid_slab_of(): not a boundary plane");
    }
}

double ChannelGeometry::nu3(Domain gamma_c_plane) {
    switch (gamma_c_plane) {
        case Domain::GammaCLower: return -1.0;
        case Domain::GammaCUpper: return +1.0;
        default: throw DomainMismatch("nu3(): normal defined on Gamma_c only");
    }
}

bool ChannelGeometry::operator==(const ChannelGeometry& o) const {
    return L1 == o.L1 && L2 == o.L2 && L3 == o.L3 && N1 == o.N1 && N2 == o.N2 &&
           Mlo == o.Mlo && Mup == o.Mup && Mel == o.Mel;
}

} // namespace fsilab
