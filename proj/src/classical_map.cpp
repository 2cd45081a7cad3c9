#include "ktop/classical_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ktop/errors.hpp"

namespace ktop {

namespace {
constexpr double kPi = std::numbers::pi;

void check_on_sphere(const SpherePoint& v) {
    if (v.norm_defect() > 1e-9)
        throw input_error("classical map: point off the unit sphere, defect " +
                          std::to_string(v.norm_defect()));
}

SpherePoint renormalized(SpherePoint v) {
    const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    return {v.x / n, v.y / n, v.z / n};
}
}  // namespace

double wrap_phi(double phi) {
    double w = std::remainder(phi, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

SpherePoint SpherePoint::from_angles(const Angles& a) {
    return {std::sin(a.theta) * std::cos(a.phi),
            std::sin(a.theta) * std::sin(a.phi),
            std::cos(a.theta)};
}

Angles SpherePoint::to_angles() const {
    Angles a;
    a.theta = std::acos(std::clamp(z, -1.0, 1.0));
    a.phi = (std::hypot(x, y) < 1e-12) ? 0.0 : std::atan2(y, x);
    return a;
}

double SpherePoint::norm_defect() const {
    return std::abs(x * x + y * y + z * z - 1.0);
}

SpherePoint map_step(const SpherePoint& v, double k, double p) {
    check_on_sphere(v);
    const double cp = std::cos(p), sp = std::sin(p);
    const double arg = k * (v.z * cp - v.x * sp);
    const double ca = std::cos(arg), sa = std::sin(arg);
    const double xr = v.x * cp + v.z * sp;  // x after the precession
    return {xr * ca - v.y * sa,
            xr * sa + v.y * ca,
            -v.x * sp + v.z * cp};
}

SpherePoint map_step_special(const SpherePoint& v, double k, SpecialRotation p) {
    check_on_sphere(v);
    double ca, sa;
    switch (p) {
        case SpecialRotation::half_pi:
            ca = std::cos(k * v.x);
            sa = std::sin(k * v.x);
            return {v.z * ca + v.y * sa, v.y * ca - v.z * sa, -v.x};
        case SpecialRotation::pi:
            ca = std::cos(k * v.z);
            sa = std::sin(k * v.z);
            return {-v.x * ca + v.y * sa, v.x * sa + v.y * ca, -v.z};
        case SpecialRotation::two_pi:
            ca = std::cos(k * v.z);
            sa = std::sin(k * v.z);
            return {v.x * ca - v.y * sa, v.x * sa + v.y * ca, v.z};
    }
    throw input_error("map_step_special: unknown rotation case");
}

std::vector<Angles> trajectory(const Angles& start, double k, double p, int steps) {
    if (steps < 0) throw input_error("trajectory: steps must be >= 0");
    std::vector<Angles> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    SpherePoint v = SpherePoint::from_angles(start);
    out.push_back(v.to_angles());
    for (int i = 0; i < steps; ++i) {
        v = map_step(v, k, p);
        if (v.norm_defect() > 1e-13) v = renormalized(v);
        out.push_back(v.to_angles());
    }
    return out;
}

std::vector<PortraitPoint> phase_portrait(double k, double p, int n_initial,
                                          int steps, std::uint64_t seed) {
    if (n_initial < 1 || steps < 1)
        throw input_error("phase_portrait: n_initial and steps must be >= 1");

    // Uniform cells in (cos theta, phi) with per-cell jitter: uniform on the
    // sphere and reproducible for a given seed.
    const int n_theta = std::max(1, static_cast<int>(std::lround(
                                        std::sqrt(n_initial / 2.0))));
    const int n_phi = (n_initial + n_theta - 1) / n_theta;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);

    std::vector<PortraitPoint> cloud;
    cloud.reserve(static_cast<std::size_t>(n_initial) * (steps + 1));
    int traj_id = 0;
    for (int it = 0; it < n_theta && traj_id < n_initial; ++it) {
        for (int ip = 0; ip < n_phi && traj_id < n_initial; ++ip, ++traj_id) {
            const double u = -1.0 + 2.0 * (it + jitter(rng)) / n_theta;
            const double phi = -kPi + 2.0 * kPi * (ip + jitter(rng)) / n_phi;
            Angles a{std::acos(std::clamp(u, -1.0, 1.0)), phi};
            const auto traj = trajectory(a, k, p, steps);
            for (int t = 0; t < static_cast<int>(traj.size()); ++t)
                cloud.push_back({traj_id, t, traj[t].theta, traj[t].phi});
        }
    }
    return cloud;
}

double inversion_conjugacy_residual(const SpherePoint& v, double k, double p) {
    const SpherePoint a = map_step({-v.x, -v.y, -v.z}, -k, p);
    const SpherePoint b = map_step(v, k, p);
    return std::max({std::abs(a.x + b.x), std::abs(a.y + b.y), std::abs(a.z + b.z)});
}

double portrait_dispersion(const std::vector<PortraitPoint>& cloud) {
    if (cloud.empty()) return 0.0;
    int max_id = 0;
    for (const auto& pt : cloud) max_id = std::max(max_id, pt.traj_id);

    std::vector<std::vector<std::array<double, 3>>> trajs(max_id + 1);
    for (const auto& pt : cloud) {
        const SpherePoint v = SpherePoint::from_angles({pt.theta, pt.phi});
        trajs[pt.traj_id].push_back({v.x, v.y, v.z});
    }

    double sum = 0.0;
    int counted = 0;
    for (const auto& pts : trajs) {
        if (pts.size() < 2) continue;
        double traj_sum = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double best = std::numeric_limits<double>::max();
            for (std::size_t l = 0; l < pts.size(); ++l) {
                if (l == i) continue;
                const double dx = pts[i][0] - pts[l][0];
                const double dy = pts[i][1] - pts[l][1];
                const double dz = pts[i][2] - pts[l][2];
                best = std::min(best, dx * dx + dy * dy + dz * dz);
            }
            traj_sum += std::sqrt(best);
        }
        sum += traj_sum / static_cast<double>(pts.size());
        ++counted;
    }
    return counted == 0 ? 0.0 : sum / counted;
}

}  // namespace ktop
