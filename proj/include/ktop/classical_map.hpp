#pragma once

#include <cstdint>
#include <vector>

namespace ktop {

struct Angles;

/// Point on the unit sphere, X^2 + Y^2 + Z^2 = 1.
struct SpherePoint {
    double x = 0.0, y = 0.0, z = 1.0;

    static SpherePoint from_angles(const Angles& a);
    Angles to_angles() const;
    double norm_defect() const;  // |X^2+Y^2+Z^2 - 1|
};

/// theta in [0, pi], phi in (-pi, pi]; phi = 0 at the poles by convention.
struct Angles {
    double theta = 0.0;
    double phi = 0.0;
};

/// One iteration of the classical kicked-top map (general p).
/// Throws input_error when the input is off the sphere beyond 1e-9.
SpherePoint map_step(const SpherePoint& v, double k, double p);

enum class SpecialRotation { half_pi, pi, two_pi };

/// Reduced map for p in {pi/2, pi, 2pi}; agrees with map_step at those p.
SpherePoint map_step_special(const SpherePoint& v, double k, SpecialRotation p);

/// Iterated map from a starting point, converted back to angles each step.
/// Returns steps+1 entries including the start.
std::vector<Angles> trajectory(const Angles& start, double k, double p, int steps);

struct PortraitPoint {
    int traj_id = 0;
    int step = 0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Deterministic phase portrait: a uniform grid in (cos theta, phi) with
/// seeded jitter, each initial condition iterated `steps` times.
std::vector<PortraitPoint> phase_portrait(double k, double p, int n_initial,
                                          int steps, std::uint64_t seed);

/// max-abs component of map_step(-v, -k, p) + map_step(v, k, p); the map at
/// -k is conjugate to the map at k under full point inversion.
double inversion_conjugacy_residual(const SpherePoint& v, double k, double p);

/// Mean nearest-neighbour chordal distance within each trajectory, averaged
/// over trajectories. Small for thin regular orbits, large for area-filling
/// chaotic ones.
double portrait_dispersion(const std::vector<PortraitPoint>& cloud);

double wrap_phi(double phi);  // into (-pi, pi]

}  // namespace ktop
