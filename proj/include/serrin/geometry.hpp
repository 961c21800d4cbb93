#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "serrin/domain.hpp"

namespace serrin {

/// Default dense-sampling count for continuous extrema searches. Every
/// operation taking an `m` parameter refines the best samples locally, so
/// accuracy is much better than the raw grid resolution.
inline constexpr int kDefaultSamples = 2048;

/// m equally spaced boundary points with analytic normals and curvatures.
/// Throws ValidationError("not star-shaped") if rho <= 0 at any sample.
std::vector<BoundaryPoint> boundary_sample(const DomainSpec& domain, int m);

struct DiameterDetail {
    double value = 0.0;
    double phi_a = 0.0;
    double phi_b = 0.0;
};

/// Diameter with the realizing angle pair. Dense sample plus local
/// refinement; works in center-relative coordinates so translation
/// invariance is exact.
DiameterDetail diameter_detail(const DomainSpec& domain, int m = kDefaultSamples);
double diameter(const DomainSpec& domain, int m = kDefaultSamples);

/// Uniform interior sphere radius r_Omega = min over boundary points x of the
/// maximal radius of a ball inside Omega tangent at x. Uses the two-point
/// tangent-ball formula |x-y|^2 / (2 nu(x).(y-x)) capped by the curvature
/// radius 1/max(kappa, 0+).
double interior_sphere_radius(const DomainSpec& domain, int m = kDefaultSamples);

/// Largest tangent-ball radius at a single boundary point (the paper's r(x)).
double touching_ball_radius(const DomainSpec& domain, double phi, int m = kDefaultSamples);

/// Signed distance to the boundary: positive inside, negative outside.
/// Nearest-point search on the coarse polyline plus Newton refinement on the
/// angle parameter; accurate to ~1e-12 of the domain scale.
double signed_distance(const DomainSpec& domain, const Vec2& x);

/// Angle parameter of (one) nearest boundary point to x.
double nearest_boundary_angle(const DomainSpec& domain, const Vec2& x);

/// Membership in the parallel set Omega(delta) = {x : dist(x, boundary) > delta}.
/// Requires 0 <= delta < r_Omega (pass the precomputed radius); outside that
/// range the parallel boundary is not guaranteed smooth and we refuse.
bool parallel_set_contains(const DomainSpec& domain, double delta, const Vec2& x,
                           double r_Omega);

/// Mirror image of x in the hyperplane {p . omega = mu}: x - 2 (x.omega - mu) omega.
/// omega must be unit to 1e-12.
Vec2 reflect(const Vec2& x, const Vec2& omega, double mu);

/// (r_i, r_e): min and max distance from `center` to the boundary. `center`
/// must lie inside the domain.
std::pair<double, double> inner_outer_radii(const DomainSpec& domain, const Vec2& center,
                                            int m = kDefaultSamples);

GeometrySummary summarize(const DomainSpec& domain, int m = kDefaultSamples);

namespace detail {
/// Golden-section maximization of f on [lo, hi] to interval width `tol`.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol);
} // namespace detail

} // namespace serrin
