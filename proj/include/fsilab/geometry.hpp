#ifndef FSILAB_GEOMETRY_HPP
#define FSILAB_GEOMETRY_HPP

#include <array>
#include <stdexcept>
#include <string>

namespace fsilab {

// Subdomains of the periodic channel.  The two fluid slabs never merge:
// every field lives on exactly one slab (or on one of the four horizontal
// boundary planes).
enum class Domain {
    FluidLower,      // T^2 x (0, L1)
    FluidUpper,      // T^2 x (L2, L3)
    Elastic,         // T^2 x (L1, L2)
    GammaCLower,     // plane y3 = L1
    GammaCUpper,     // plane y3 = L2
    GammaFBottom,    // plane y3 = 0
    GammaFTop        // plane y3 = L3
};

inline bool is_volume(Domain d) {
    return d == Domain::FluidLower || d == Domain::FluidUpper || d == Domain::Elastic;
}

const char* domain_name(Domain d);

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainMismatch : std::runtime_error {
    explicit DomainMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Flat periodic channel 0 < L1 < L2 < L3 with in-plane period 2*pi in both
// directions.  Vertical grids are node-based and include both slab ends, so
// the interface planes y3 = L1, L2 are grid points of every adjacent slab.
class ChannelGeometry {
  public:
    ChannelGeometry(double L1, double L2, double L3,
                    int N1, int N2, int Mlo, int Mup, int Mel);

    double L1, L2, L3;
    int N1, N2;          // in-plane grid counts (periodic, no seam point)
    int Mlo, Mup, Mel;   // vertical cell counts per slab

    double dy1() const { return two_pi_ / N1; }
    double dy2() const { return two_pi_ / N2; }

    // Cell count, node count, spacing, and bottom coordinate of a slab.
    int cells(Domain d) const;
    int nodes(Domain d) const { return cells(d) + 1; }
    double dz(Domain d) const { return thickness(d) / cells(d); }
    double thickness(Domain d) const;
    double z0(Domain d) const;

    double y1(int i) const { return i * dy1(); }
    double y2(int j) const { return j * dy2(); }
    double z(Domain d, int k) const { return z0(d) + k * dz(d); }

    // Boundary planes of a slab, bottom and top.
    Domain bottom_plane(Domain slab) const;
    Domain top_plane(Domain slab) const;

    // Slab adjacent to a boundary plane (the unique one for Gamma_f planes;
    // for Gamma_c planes the *fluid* slab, since stress data lives there).
    Domain fluid_slab_of(Domain plane) const;

    // Outward unit normal to Gamma_c with respect to the elastic body:
    // -e3 at y3 = L1 and +e3 at y3 = L2.
    static double nu3(Domain gamma_c_plane);

    bool operator==(const ChannelGeometry& o) const;

  private:
    static constexpr double two_pi_ = 6.283185307179586476925286766559;
};

} // namespace fsilab

#endif
