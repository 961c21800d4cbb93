#include "serrin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "serrin/errors.hpp"

namespace serrin {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGolden = 0.6180339887498949; // (sqrt(5)-1)/2
} // namespace

namespace detail {

double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

} // namespace detail

std::vector<BoundaryPoint> boundary_sample(const DomainSpec& domain, int m) {
    if (m < 16) throw ValidationError("boundary_sample: m must be at least 16");
    std::vector<BoundaryPoint> pts;
    pts.reserve(m);
    for (int i = 0; i < m; ++i) {
        const double phi = kTwoPi * i / m;
        if (domain.rho(phi) <= 0.0) throw ValidationError("not star-shaped");
        pts.push_back(domain.boundary_point(phi));
    }
    return pts;
}

DiameterDetail diameter_detail(const DomainSpec& domain, int m) {
    // Center-relative offsets: pairwise distances are then exactly
    // translation-invariant.
    std::vector<Vec2> off(m);
    for (int i = 0; i < m; ++i) off[i] = domain.boundary_offset(kTwoPi * i / m);

    double best = -1.0;
    int bi = 0, bj = 0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double d2 = (off[i] - off[j]).norm2();
            if (d2 > best) {
                best = d2;
                bi = i;
                bj = j;
            }
        }
    }
    double pa = kTwoPi * bi / m, pb = kTwoPi * bj / m;
    const double step = kTwoPi / m;
    const auto dist_of = [&](double a, double b) {
        return (domain.boundary_offset(a) - domain.boundary_offset(b)).norm();
    };
    for (int round = 0; round < 4; ++round) {
        pa = detail::golden_max([&](double a) { return dist_of(a, pb); }, pa - 2 * step,
                                pa + 2 * step, 1e-12);
        pb = detail::golden_max([&](double b) { return dist_of(pa, b); }, pb - 2 * step,
                                pb + 2 * step, 1e-12);
    }
    // Newton polish on g = |X(pa) - X(pb)|^2; coordinate ascent alone crawls
    // along the flat antipodal valley of near-circular boundaries.
    const auto& f = domain.radial();
    const auto frame = [&](double phi, Vec2& X, Vec2& dX, Vec2& ddX) {
        const double r = f.rho(phi), dr = f.drho(phi), ddr = f.d2rho(phi);
        const Vec2 e = unit_vector(phi), ep = e.perp();
        X = r * e;
        dX = dr * e + r * ep;
        ddX = (ddr - r) * e + 2.0 * dr * ep;
    };
    for (int it = 0; it < 12; ++it) {
        Vec2 X1, d1, dd1, X2, d2, dd2;
        frame(pa, X1, d1, dd1);
        frame(pb, X2, d2, dd2);
        const Vec2 w = X1 - X2;
        const double g1 = 2.0 * w.dot(d1);
        const double g2 = -2.0 * w.dot(d2);
        const double h11 = 2.0 * (d1.norm2() + w.dot(dd1));
        const double h22 = 2.0 * (d2.norm2() - w.dot(dd2));
        const double h12 = -2.0 * d1.dot(d2);
        const double det = h11 * h22 - h12 * h12;
        if (std::abs(det) < 1e-30) break;
        double sa = -(h22 * g1 - h12 * g2) / det;
        double sb = -(h11 * g2 - h12 * g1) / det;
        sa = std::clamp(sa, -step, step);
        sb = std::clamp(sb, -step, step);
        if (dist_of(pa + sa, pb + sb) < dist_of(pa, pb)) break;
        pa += sa;
        pb += sb;
        if (std::abs(sa) + std::abs(sb) < 1e-15) break;
    }
    return {dist_of(pa, pb), pa, pb};
}

double diameter(const DomainSpec& domain, int m) { return diameter_detail(domain, m).value; }

double nearest_boundary_angle(const DomainSpec& domain, const Vec2& x) {
    const Vec2 q = x - domain.center();
    const auto& off = domain.coarse_offsets();
    const int m = domain.coarse_count();
    int best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const double d2 = (off[i] - q).norm2();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    const double step = kTwoPi / m;
    double phi = step * best;

    // Newton on F(phi) = (X(phi) - q) . X'(phi), safeguarded by step clamping.
    const auto& f = domain.radial();
    for (int it = 0; it < 60; ++it) {
        const double r = f.rho(phi), dr = f.drho(phi), ddr = f.d2rho(phi);
        const Vec2 e = unit_vector(phi), ep = e.perp();
        const Vec2 X = r * e;
        const Vec2 dX = dr * e + r * ep;
        const Vec2 ddX = (ddr - r) * e + 2.0 * dr * ep;
        const Vec2 w = X - q;
        const double F = w.dot(dX);
        const double dF = dX.norm2() + w.dot(ddX);
        if (!(std::abs(dF) > 0.0)) break;
        double delta = -F / dF;
        if (dF <= 0.0) delta = (F > 0 ? -0.25 : 0.25) * step; // walk downhill
        delta = std::clamp(delta, -step, step);
        phi += delta;
        if (std::abs(delta) < 1e-15) break;
    }
    // Guard against Newton drifting to a worse critical point.
    if ((domain.boundary_offset(phi) - q).norm2() > best_d2 + 1e-30)
        phi = detail::golden_max(
            [&](double p) { return -(domain.boundary_offset(p) - q).norm2(); },
            step * best - step, step * best + step, 1e-14);
    return phi;
}

double signed_distance(const DomainSpec& domain, const Vec2& x) {
    const Vec2 q = x - domain.center();
    const double phi = nearest_boundary_angle(domain, x);
    const double d = (domain.boundary_offset(phi) - q).norm();
    const double theta = std::atan2(q.y, q.x);
    const bool inside = q.norm() <= domain.rho(theta);
    return inside ? d : -d;
}

bool parallel_set_contains(const DomainSpec& domain, double delta, const Vec2& x,
                           double r_Omega) {
    if (delta < 0.0 || delta >= r_Omega)
        throw ValidationError("parallel set not guaranteed smooth (need 0 <= delta < r_Omega)");
    return signed_distance(domain, x) > delta;
}

Vec2 reflect(const Vec2& x, const Vec2& omega, double mu) {
    if (std::abs(omega.norm() - 1.0) > 1e-12)
        throw ValidationError("reflect: omega must be a unit vector");
    return x - (2.0 * (x.dot(omega) - mu)) * omega;
}

namespace {

struct BoundaryArrays {
    std::vector<Vec2> off;
    std::vector<Vec2> normal;
    std::vector<double> curvature;
};

BoundaryArrays make_arrays(const DomainSpec& domain, int m) {
    BoundaryArrays a;
    a.off.resize(m);
    a.normal.resize(m);
    a.curvature.resize(m);
    for (int i = 0; i < m; ++i) {
        const BoundaryPoint p = domain.boundary_point(kTwoPi * i / m);
        a.off[i] = p.position - domain.center();
        a.normal[i] = p.inward_normal;
        a.curvature[i] = p.curvature;
    }
    return a;
}

// Radius of the circle through y tangent to the boundary at x (inward side).
double two_point_radius(const Vec2& x, const Vec2& nu_x, const Vec2& y) {
    const Vec2 d = y - x;
    const double denom = 2.0 * nu_x.dot(d);
    if (denom <= 1e-14) return std::numeric_limits<double>::infinity();
    return d.norm2() / denom;
}

double two_point_radius_angles(const DomainSpec& domain, double phi_x, double phi_y) {
    const BoundaryPoint bx = domain.boundary_point(phi_x);
    const Vec2 x = bx.position - domain.center();
    const Vec2 y = domain.boundary_offset(phi_y);
    return two_point_radius(x, bx.inward_normal, y);
}

} // namespace

double interior_sphere_radius(const DomainSpec& domain, int m) {
    const BoundaryArrays a = make_arrays(domain, m);
    const double step = kTwoPi / m;

    // Curvature cap: 1 / max kappa, refined around the sampled argmax.
    int arg_kappa = 0;
    for (int i = 1; i < m; ++i)
        if (a.curvature[i] > a.curvature[arg_kappa]) arg_kappa = i;
    double r_curv = std::numeric_limits<double>::infinity();
    if (a.curvature[arg_kappa] > 0.0) {
        const double phi_k = detail::golden_max(
            [&](double p) { return domain.boundary_point(p).curvature; },
            step * arg_kappa - step, step * arg_kappa + step, 1e-13);
        r_curv = 1.0 / domain.boundary_point(phi_k).curvature;
    }

    // Two-point tangent-ball term. Adjacent pairs are excluded: their limit is
    // the osculating radius already captured by the curvature cap.
    double best = std::numeric_limits<double>::infinity();
    int bi = -1, bj = -1;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const int gap = std::abs(i - j);
            if (std::min(gap, m - gap) <= 2) continue;
            const double t = two_point_radius(a.off[i], a.normal[i], a.off[j]);
            if (t < best) {
                best = t;
                bi = i;
                bj = j;
            }
        }
    }
    double r_two = best;
    if (bi >= 0 && std::isfinite(best)) {
        double px = step * bi, py = step * bj;
        for (int round = 0; round < 4; ++round) {
            py = detail::golden_max(
                [&](double p) { return -two_point_radius_angles(domain, px, p); },
                py - 2 * step, py + 2 * step, 1e-13);
            px = detail::golden_max(
                [&](double p) { return -two_point_radius_angles(domain, p, py); },
                px - 2 * step, px + 2 * step, 1e-13);
        }
        r_two = std::min(r_two, two_point_radius_angles(domain, px, py));
    }
    return std::min(r_curv, r_two);
}

double touching_ball_radius(const DomainSpec& domain, double phi, int m) {
    const BoundaryPoint bx = domain.boundary_point(phi);
    const Vec2 x = bx.position - domain.center();
    const double step = kTwoPi / m;
    double best = std::numeric_limits<double>::infinity();
    int bj = -1;
    for (int j = 0; j < m; ++j) {
        const double pj = step * j;
        if (std::abs(std::remainder(pj - phi, kTwoPi)) <= 2.5 * step) continue;
        const double t = two_point_radius(x, bx.inward_normal, domain.boundary_offset(pj));
        if (t < best) {
            best = t;
            bj = j;
        }
    }
    if (bj >= 0 && std::isfinite(best)) {
        const double py = detail::golden_max(
            [&](double p) { return -two_point_radius_angles(domain, phi, p); },
            step * bj - 2 * step, step * bj + 2 * step, 1e-13);
        best = std::min(best, two_point_radius_angles(domain, phi, py));
    }
    const double kappa = bx.curvature;
    if (kappa > 0.0) best = std::min(best, 1.0 / kappa);
    return best;
}

std::pair<double, double> inner_outer_radii(const DomainSpec& domain, const Vec2& center,
                                            int m) {
    if (signed_distance(domain, center) <= 0.0)
        throw ValidationError("inner_outer_radii: center is not inside the domain");
    const double step = kTwoPi / m;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    int ai = 0, aj = 0;
    for (int i = 0; i < m; ++i) {
        const double d = (domain.boundary_position(step * i) - center).norm();
        if (d < lo) {
            lo = d;
            ai = i;
        }
        if (d > hi) {
            hi = d;
            aj = i;
        }
    }
    const auto radius_at = [&](double p) {
        return (domain.boundary_position(p) - center).norm();
    };
    const double phi_lo = detail::golden_max([&](double p) { return -radius_at(p); },
                                             step * ai - step, step * ai + step, 1e-13);
    const double phi_hi = detail::golden_max(radius_at, step * aj - step, step * aj + step,
                                             1e-13);
    return {radius_at(phi_lo), radius_at(phi_hi)};
}

GeometrySummary summarize(const DomainSpec& domain, int m) {
    GeometrySummary g;
    g.d_Omega = diameter(domain, m);
    g.r_Omega = interior_sphere_radius(domain, m);
    double min_kappa = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
        min_kappa = std::min(min_kappa, domain.boundary_point(kTwoPi * i / m).curvature);
    g.is_convex = min_kappa >= -1e-9 / domain.min_curvature_radius();
    return g;
}

} // namespace serrin
