#include "swarmform/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swarmform/topology.hpp"

namespace swarmform {

std::optional<ErrorStats> neighbor_distance_error(const World& world, const LinkSet& links) {
    if (links.empty()) return std::nullopt;
    ErrorStats s;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& l : links.links) {
        const double e =
            std::abs(distance(world[l.from].position, world[l.to].position) - l.rest_length);
        sum += e;
        sum_sq += e * e;
        s.max_abs_error = std::max(s.max_abs_error, e);
    }
    const auto n = static_cast<double>(links.size());
    s.mean_abs_error = sum / n;
    s.rms_error = std::sqrt(sum_sq / n);
    return s;
}

LineFit collinearity(const World& world) {
    LineFit fit;
    if (world.size() == 0) return fit;
    const auto n = static_cast<double>(world.size());
    Vec2 mean;
    for (const auto& a : world.agents) mean += a.position;
    mean = mean / n;

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& a : world.agents) {
        const Vec2 d = a.position - mean;
        sxx += d.x * d.x;
        syy += d.y * d.y;
        sxy += d.x * d.y;
    }
    sxx /= n;
    syy /= n;
    sxy /= n;

    // Principal axis of [[sxx, sxy], [sxy, syy]]; both eigenvalues are then
    // taken as projected variances, which stays accurate near rank one.
    const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    const Vec2 axis{std::cos(angle), std::sin(angle)};
    const Vec2 normal{-axis.y, axis.x};
    double major = 0.0, minor = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& a : world.agents) {
        const Vec2 d = a.position - mean;
        const double t = d.dot(axis);
        const double u = d.dot(normal);
        major += t * t;
        minor += u * u;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    major /= n;
    minor /= n;
    if (!(major > std::numeric_limits<double>::min())) return fit;

    fit.eigen_ratio = std::clamp(minor / major, 0.0, 1.0);
    fit.rms_perpendicular = std::sqrt(minor);
    fit.length = hi - lo;
    return fit;
}

int component_count(const World& world, double range) {
    return static_cast<int>(connected_components(world, range).size());
}

bool is_converged(std::span<const double> speed_history, double v_tol, int window) {
    if (window < 1 || speed_history.size() < static_cast<std::size_t>(window)) return false;
    return std::all_of(speed_history.end() - window, speed_history.end(),
                       [v_tol](double s) { return s < v_tol; });
}

}  // namespace swarmform
