#pragma once

#include <string>
#include <vector>

#include "serrin/vec2.hpp"

namespace serrin {

/// Truncated Fourier series rho(phi) = c0 + sum_k (a_k cos k phi + b_k sin k phi)
/// describing the boundary radius of a star-shaped domain about its center.
struct FourierBoundary {
    double c0 = 1.0;
    std::vector<double> cos_coeffs; // a_1, a_2, ...
    std::vector<double> sin_coeffs; // b_1, b_2, ...

    double rho(double phi) const;
    double drho(double phi) const;
    double d2rho(double phi) const;
    std::size_t order() const { return std::max(cos_coeffs.size(), sin_coeffs.size()); }
};

/// One sampled point of the boundary curve with its analytic frame.
struct BoundaryPoint {
    Vec2 position;
    double angle_param = 0.0; // phi
    Vec2 inward_normal;       // unit, points into the domain
    double curvature = 0.0;   // signed; positive where the boundary is convex
};

/// Global shape constants every other module consumes.
struct GeometrySummary {
    double d_Omega = 0.0;  // diameter
    double r_Omega = 0.0;  // uniform interior sphere radius
    bool is_convex = false;
};

/// Star-shaped planar domain with a smooth radial Fourier boundary.
///
/// Immutable after construction. The constructor validates star-shapedness
/// (rho > 0 everywhere) and, when `convex` is declared, nonnegative sampled
/// curvature; it also records the smoothness guards min rho and min
/// curvature radius. All member queries are pure and thread-safe.
class DomainSpec {
public:
    DomainSpec(Vec2 center, FourierBoundary boundary, bool convex_flag = false,
               std::string id = "domain");

    const Vec2& center() const { return center_; }
    const FourierBoundary& radial() const { return radial_; }
    bool convex_flag() const { return convex_flag_; }
    const std::string& id() const { return id_; }

    // Smoothness guards sampled at construction.
    double min_rho() const { return min_rho_; }
    double min_curvature_radius() const { return min_curvature_radius_; }

    double rho(double phi) const { return radial_.rho(phi); }
    /// Boundary position relative to the center: rho(phi) * (cos phi, sin phi).
    Vec2 boundary_offset(double phi) const;
    Vec2 boundary_position(double phi) const { return center_ + boundary_offset(phi); }
    /// Full analytic frame (position, inward normal, curvature) at phi.
    BoundaryPoint boundary_point(double phi) const;

    /// Coarse center-relative boundary polyline used to seed local searches.
    const std::vector<Vec2>& coarse_offsets() const { return coarse_offsets_; }
    int coarse_count() const { return static_cast<int>(coarse_offsets_.size()); }

    // Derived domains (all pure).
    DomainSpec translated(const Vec2& shift) const;
    DomainSpec rotated(double angle) const;      // about the center
    DomainSpec scaled(double factor) const;      // radial coefficients scaled
    DomainSpec with_id(std::string id) const;

    // Factories.
    static DomainSpec disk(double radius, Vec2 center = {0, 0});
    /// Axis-aligned ellipse with semi-axes a (x) and b (y), optionally rotated
    /// about its center. The polar radius is fit by a cosine series; terms are
    /// kept until coefficients fall below 1e-15, so the representation is
    /// exact to machine precision for moderate aspect ratios.
    static DomainSpec ellipse(double a, double b, Vec2 center = {0, 0}, double rotation = 0.0);

    // Domain file I/O: {"center":[x,y], "coeffs":{"c0":..,"cos":[..],"sin":[..]}, "convex":bool}
    static DomainSpec from_json_text(const std::string& text, const std::string& id = "domain");
    static DomainSpec load(const std::string& path);
    std::string to_json_text() const;
    void save(const std::string& path) const;

private:
    Vec2 center_;
    FourierBoundary radial_;
    bool convex_flag_ = false;
    std::string id_;
    double min_rho_ = 0.0;
    double min_curvature_radius_ = 0.0;
    std::vector<Vec2> coarse_offsets_;

    void validate_and_cache();
};

} // namespace serrin
