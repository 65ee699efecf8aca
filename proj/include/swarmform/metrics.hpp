#pragma once

#include <optional>
#include <span>

#include "swarmform/dynamics.hpp"

namespace swarmform {

struct ErrorStats {
    double mean_abs_error{0.0};
    double max_abs_error{0.0};
    double rms_error{0.0};
};

/// Principal-axis fit of the agent positions.
struct LineFit {
    double eigen_ratio{0.0};        ///< minor / major covariance eigenvalue, in [0, 1]
    double rms_perpendicular{0.0};  ///< sqrt of the minor eigenvalue
    double length{0.0};             ///< extent along the major axis
};

/// Rest-length residual statistics over every link. nullopt for an empty set.
std::optional<ErrorStats> neighbor_distance_error(const World& world, const LinkSet& links);

/// Population-covariance eigen analysis of the positions.
LineFit collinearity(const World& world);

int component_count(const World& world, double range);

/// True when the last `window` entries of `speed_history` are all below `v_tol`.
bool is_converged(std::span<const double> speed_history, double v_tol, int window);

}  // namespace swarmform
