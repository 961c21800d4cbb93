#include "serrin/movingplanes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "serrin/errors.hpp"

namespace serrin {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_unit(const Vec2& omega) {
    if (std::abs(omega.norm() - 1.0) > 1e-12)
        throw ValidationError("moving planes: omega must be a unit vector");
}
} // namespace

std::string CriticalCap::to_json_text() const {
    nlohmann::json j;
    j["omega"] = {omega.x, omega.y};
    j["Lambda"] = Lambda;
    j["lambda"] = lambda;
    j["case"] = both_cases() ? std::string(to_string(primary_case)) + "+both"
                             : std::string(to_string(primary_case));
    j["touch_point"] = {touch_point.x, touch_point.y};
    if (secondary_touch)
        j["secondary_touch"] = {secondary_touch->x, secondary_touch->y};
    j["component_seed"] = {component_seed.x, component_seed.y};
    j["halfball_radius"] = halfball_radius;
    j["fallback_scan_used"] = fallback_scan_used;
    return j.dump(2);
}

double extent(const DomainSpec& domain, const Vec2& omega, int m) {
    require_unit(omega);
    const double step = kTwoPi / m;
    double best = -std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int i = 0; i < m; ++i) {
        const double v = domain.boundary_position(step * i).dot(omega);
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    const double phi = detail::golden_max(
        [&](double p) { return domain.boundary_position(p).dot(omega); }, step * arg - step,
        step * arg + step, 1e-13);
    return domain.boundary_position(phi).dot(omega);
}

bool reflected_cap_inside(const DomainSpec& domain, const Vec2& omega, double mu, int m,
                          double geo_tol) {
    require_unit(omega);
    if (geo_tol < 0.0) geo_tol = 1e-9 * 2.0 * (domain.radial().c0 + 1.0);
    const double step = kTwoPi / m;
    for (int i = 0; i < m; ++i) {
        const Vec2 x = domain.boundary_position(step * i);
        if (x.dot(omega) <= mu) continue;
        const Vec2 xr = reflect(x, omega, mu);
        if (signed_distance(domain, xr) < -geo_tol) return false;
    }
    return true;
}

LambdaResult critical_lambda(const DomainSpec& domain, const Vec2& omega, double tol, int m) {
    require_unit(omega);
    if (!(tol > 0.0)) throw ValidationError("critical_lambda: tol must be positive");
    const double Lambda = extent(domain, omega, m);
    const double lower = -extent(domain, -omega, m); // min of x . omega over the boundary
    const double geo_tol = 1e-9 * (Lambda - lower);

    const auto inside = [&](double mu) {
        return reflected_cap_inside(domain, omega, mu, m, geo_tol);
    };

    double hi = Lambda - tol;
    if (!inside(hi)) {
        hi = Lambda - 0.125 * tol;
        if (!inside(hi))
            throw NumericalError("critical_lambda: reflected cap not contained near extent");
    }

    // Geometric expansion downward until containment fails.
    double step_down = std::max(tol, (Lambda - lower) / 64.0);
    double lo = hi;
    bool bracketed = false;
    while (lo > lower - (Lambda - lower)) {
        const double cand = lo - step_down;
        if (!inside(cand)) {
            lo = cand;
            bracketed = true;
            break;
        }
        lo = cand;
        step_down *= 2.0;
    }
    if (!bracketed) {
        // Containment never fails above the lower extent: the domain is
        // symmetric in omega up to tolerance; the only admissible plane is the
        // mid-extent plane.
        return {0.5 * (Lambda + lower), false};
    }

    double a = lo, b = hi; // inside(b), !inside(a)
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        if (inside(mid))
            b = mid;
        else
            a = mid;
    }
    double lambda = 0.5 * (a + b);

    // Monotonicity audit on the bracket; the definition of lambda does not
    // require mu -> containment to be monotone, bisection does.
    bool monotone = true;
    for (int i = 1; i <= 16; ++i) {
        const double mu = lambda + (Lambda - lambda) * i / 17.0;
        if (!inside(mu)) {
            monotone = false;
            break;
        }
    }
    if (!monotone) {
        const double scan_step = std::max(tol, (Lambda - lower) / 4096.0);
        double mu = Lambda - tol;
        double last_inside = mu;
        while (mu > lower - scan_step) {
            if (!inside(mu)) break;
            last_inside = mu;
            mu -= scan_step;
        }
        double aa = mu, bb = last_inside;
        while (bb - aa > tol) {
            const double mid = 0.5 * (aa + bb);
            if (inside(mid))
                bb = mid;
            else
                aa = mid;
        }
        return {0.5 * (aa + bb), true};
    }
    return {lambda, false};
}

Classification classify_case(const DomainSpec& domain, const Vec2& omega, double lambda,
                             const CapTolerances& tol, int m) {
    require_unit(omega);
    const double step = kTwoPi / m;
    Classification out;

    // --- S2: boundary points on the plane with normal orthogonal to omega.
    // Sign changes of g(phi) = x(phi).omega - lambda are refined by bisection;
    // near-tangential contacts of the plane with the boundary (no sign change
    // because lambda carries +-tol error) are picked up as local minima of |g|.
    const auto plane_gap = [&](double phi) {
        return domain.boundary_position(phi).dot(omega) - lambda;
    };
    std::vector<double> crossings;
    std::vector<double> g(m);
    for (int i = 0; i < m; ++i) g[i] = plane_gap(step * i);
    for (int i = 0; i < m; ++i) {
        const double cur = g[i], nxt = g[(i + 1) % m];
        if ((cur < 0.0) != (nxt < 0.0)) {
            double a = step * i, b = step * (i + 1);
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (a + b);
                if ((plane_gap(mid) < 0.0) == (cur < 0.0))
                    a = mid;
                else
                    b = mid;
            }
            crossings.push_back(0.5 * (a + b));
        } else {
            const double prv = g[(i + m - 1) % m];
            const double mag = std::abs(cur);
            if (mag <= std::abs(prv) && mag <= std::abs(nxt) &&
                mag <= 20.0 * tol.lambda_tol) {
                crossings.push_back(detail::golden_max(
                    [&](double p) { return -std::abs(plane_gap(p)); }, step * i - step,
                    step * i + step, 1e-12));
            }
        }
    }
    double best_s2 = std::numeric_limits<double>::infinity();
    Vec2 q_point;
    std::vector<Vec2> s2_points;
    for (double phi : crossings) {
        const BoundaryPoint q = domain.boundary_point(phi);
        const double res = std::abs(q.inward_normal.dot(omega));
        if (res <= tol.angle_tol) s2_points.push_back(q.position);
        if (res < best_s2) {
            best_s2 = res;
            q_point = q.position;
        }
    }
    out.s2_fired = best_s2 <= tol.angle_tol;

    // --- S1: reflected boundary points of the open cap tangent to the boundary.
    //
    // Near an orthogonal contact Q the reflection maps the boundary onto
    // itself to third order in arclength, so tangency residuals inside a
    // cube-root-sized neighbourhood of Q are spurious. Those neighbourhoods
    // are excluded; a genuine S1 point hiding inside one would merely demote
    // the report to S2, which Lemma 2.1 serves equally well.
    const double s1_tol = tol.s1_factor * tol.lambda_tol;
    const double shadow =
        out.s2_fired ? 2.0 * std::cbrt(s1_tol * tol.scale * tol.scale) : 0.0;
    const auto shadowed = [&](const Vec2& x) {
        for (const Vec2& q : s2_points)
            if ((x - q).norm() < shadow) return true;
        return false;
    };
    const auto tangency = [&](double phi) {
        const Vec2 x = domain.boundary_position(phi);
        return std::abs(signed_distance(domain, reflect(x, omega, lambda)));
    };

    double best_s1 = std::numeric_limits<double>::infinity();
    Vec2 p_point;

    // The extent point is the canonical tangency witness for symmetric and
    // near-symmetric configurations (the whole cap self-reflects there).
    {
        double arg = 0.0;
        double best_dot = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            const double v = domain.boundary_position(step * i).dot(omega);
            if (v > best_dot) {
                best_dot = v;
                arg = step * i;
            }
        }
        const double phi = detail::golden_max(
            [&](double p) { return domain.boundary_position(p).dot(omega); }, arg - step,
            arg + step, 1e-13);
        const Vec2 x = domain.boundary_position(phi);
        if (x.dot(omega) > lambda + 2.0 * tol.lambda_tol && tangency(phi) <= s1_tol) {
            best_s1 = tangency(phi);
            p_point = x;
        }
    }

    if (!(best_s1 <= s1_tol)) {
        int best_i = -1;
        double best_res = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            const Vec2 x = domain.boundary_position(step * i);
            if (x.dot(omega) <= lambda + 2.0 * tol.lambda_tol) continue;
            if (shadowed(x)) continue;
            const double res = tangency(step * i);
            if (res < best_res) {
                best_res = res;
                best_i = i;
            }
        }
        if (best_i >= 0) {
            const double phi = detail::golden_max([&](double p) { return -tangency(p); },
                                                  step * best_i - step, step * best_i + step,
                                                  1e-12);
            const Vec2 x = domain.boundary_position(phi);
            if (x.dot(omega) > lambda + 2.0 * tol.lambda_tol && !shadowed(x)) {
                const double res = tangency(phi);
                if (res < best_res) {
                    best_res = res;
                    best_i = -2; // refined point accepted
                    p_point = x;
                }
            }
            if (best_i >= 0) p_point = domain.boundary_position(step * best_i);
            best_s1 = best_res;
        }
    }
    out.s1_fired = best_s1 <= s1_tol;

    if (out.s1_fired) {
        out.primary = CapCase::S1;
        out.touch_point = p_point;
        if (out.s2_fired) out.secondary_touch = q_point;
    } else if (out.s2_fired) {
        out.primary = CapCase::S2;
        out.touch_point = q_point;
    } else {
        throw NumericalError("classify_case: critical value inconsistent (neither S1 nor S2 "
                             "criterion met at tolerance)");
    }
    return out;
}

CriticalCap find_critical_cap(const DomainSpec& domain, const Vec2& omega, double r_Omega,
                              const CapTolerances& tol, int m) {
    CriticalCap cap;
    cap.omega = omega;
    cap.Lambda = extent(domain, omega, m);
    const LambdaResult lr = critical_lambda(domain, omega, tol.lambda_tol, m);
    cap.lambda = lr.lambda;
    cap.fallback_scan_used = lr.fallback_scan_used;
    const Classification cls = classify_case(domain, omega, cap.lambda, tol, m);
    cap.primary_case = cls.primary;
    cap.touch_point = cls.touch_point;
    cap.secondary_touch = cls.secondary_touch;
    const TangentHalfball hb = tangent_halfball(domain, cap, r_Omega, tol);
    cap.component_seed = hb.center;
    cap.halfball_radius = hb.radius;
    return cap;
}

TangentHalfball tangent_halfball(const DomainSpec& domain, const CriticalCap& cap,
                                 double r_Omega, const CapTolerances& tol,
                                 int check_samples) {
    const double phi = nearest_boundary_angle(domain, cap.touch_point);
    const BoundaryPoint t = domain.boundary_point(phi);
    TangentHalfball hb;
    hb.center = t.position + r_Omega * t.inward_normal;
    hb.radius = r_Omega;

    if (hb.center.dot(cap.omega) < cap.lambda - 10.0 * tol.lambda_tol)
        throw NumericalError("tangent_halfball: center left of the critical plane, "
                             "contradicting Lemma-2.1 geometry");

    // Sunflower sample of the ball, restricted to the right half-space.
    const double contain_tol = std::max(1e-6 * 2.0 * r_Omega, 50.0 * tol.lambda_tol);
    constexpr double kGoldenAngle = 2.399963229728653;
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < check_samples; ++k) {
        const double rr = r_Omega * std::sqrt((k + 0.5) / check_samples);
        const Vec2 x = hb.center + rr * unit_vector(kGoldenAngle * k);
        if (x.dot(cap.omega) <= cap.lambda) continue;
        margin = std::min(margin, signed_distance(domain, x));
    }
    hb.margin = margin;
    if (margin < -contain_tol)
        throw NumericalError("tangent_halfball: sampled half-ball escapes the domain "
                             "(geometry inconsistent with Lemma 2.1)");
    return hb;
}

double theta_lower_bound(double d_Omega, double r_Omega, double t) {
    if (!(t > 0.0) || !(t < 0.5))
        throw ValidationError("theta_lower_bound: t must lie in (0, 1/2)");
    if (!(d_Omega > 0.0) || !(r_Omega > 0.0))
        throw ValidationError("theta_lower_bound: lengths must be positive");
    return std::atan((1.0 - t) * r_Omega / (2.0 * d_Omega));
}

double lipschitz_cap_bound(double d_Omega, double r_Omega) {
    if (!(d_Omega > 0.0) || !(r_Omega > 0.0))
        throw ValidationError("lipschitz_cap_bound: lengths must be positive");
    return 2.0 * d_Omega / r_Omega;
}

ConeCertificate ctheta_check(const DomainSpec& domain, const CriticalCap& cap, double t,
                             double d_Omega, double r_Omega, const CapTolerances& tol,
                             const CThetaOptions& opts) {
    if (!(t > 0.0) || !(t < 0.5))
        throw ValidationError("ctheta_check: t must lie in (0, 1/2)");
    const Vec2 omega = cap.omega;
    const double lambda = cap.lambda;
    const double collar = t * r_Omega;

    const TangentHalfball hb = tangent_halfball(domain, cap, r_Omega, tol);
    const double rbar = 0.5 * (1.0 - t) * r_Omega;
    const Vec2 y = hb.center + rbar * omega;
    if (signed_distance(domain, y) <= collar)
        throw NumericalError("ctheta_check: inscribed ball center is not inside G");

    ConeCertificate cert;
    cert.t_param = t;
    cert.ball_center = y;
    cert.ball_radius = rbar;
    cert.lateral_samples = opts.lateral_samples;
    cert.theta = std::numeric_limits<double>::infinity();
    cert.note = "certificate covers sampled cone vertices only";

    const double plane_tol = 10.0 * tol.lambda_tol;
    const double geo_tol = std::max(1e-7 * d_Omega, 5.0 * tol.lambda_tol);
    const int per_edge = std::max(8, opts.lateral_samples / 2);
    const double depth_fracs[4] = {0.15, 0.4, 0.7, 0.95};

    for (int i = 0; i < opts.witness_angles; ++i) {
        const double phi = kTwoPi * i / opts.witness_angles;
        const BoundaryPoint b = domain.boundary_point(phi);
        for (double df : depth_fracs) {
            const Vec2 x = b.position + (df * collar) * b.inward_normal;
            if (x.dot(omega) <= lambda + plane_tol) continue;
            const double sd = signed_distance(domain, x);
            if (sd <= 0.0 || sd >= collar) continue; // want x in the cap collar

            // Axis point xi on the boundary of G_lambda between x and y.
            const Vec2 seg = y - x;
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (signed_distance(domain, x + mid * seg) > collar)
                    hi = mid;
                else
                    lo = mid;
            }
            const Vec2 xi = x + (0.5 * (lo + hi)) * seg;

            // Lateral edges of the triangle cone from x over the chord of B
            // perpendicular to the axis at y.
            const Vec2 u = seg.normalized();
            const Vec2 chord = rbar * u.perp();
            for (const Vec2 corner : {y + chord, y - chord}) {
                for (int j = 0; j < per_edge; ++j) {
                    const double s = static_cast<double>(j) / (per_edge - 1);
                    const Vec2 z = x + s * (corner - x);
                    if (z.dot(omega) < lambda - plane_tol ||
                        signed_distance(domain, z) < -geo_tol)
                        throw ConeEscapeError("ctheta_check: cone escapes the maximal cap",
                                              x, z);
                }
            }
            const double theta_x = std::atan(rbar / (x - y).norm());
            cert.theta = std::min(cert.theta, theta_x);
            if (static_cast<int>(cert.witness_points.size()) < opts.max_witness_records)
                cert.witness_points.emplace_back(x, xi);
            ++cert.vertices_checked;
        }
    }
    if (cert.vertices_checked == 0)
        throw NumericalError("ctheta_check: no cone vertices sampled (cap collar empty?)");
    return cert;
}

CThetaSweep ctheta_sweep(const DomainSpec& domain, double t, int n_directions,
                         const CapTolerances& tol, const CThetaOptions& opts, int m) {
    const double d_Omega = diameter(domain, m);
    const double r_Omega = interior_sphere_radius(domain, m);
    CThetaSweep sweep;
    sweep.theta_min = std::numeric_limits<double>::infinity();
    sweep.all_ok = true;
    for (int k = 0; k < n_directions; ++k) {
        CThetaDirectionResult res;
        res.omega = unit_vector(kTwoPi * k / n_directions);
        try {
            const CriticalCap cap = find_critical_cap(domain, res.omega, r_Omega, tol, m);
            const ConeCertificate cert =
                ctheta_check(domain, cap, t, d_Omega, r_Omega, tol, opts);
            res.ok = true;
            res.theta = cert.theta;
            sweep.theta_min = std::min(sweep.theta_min, cert.theta);
        } catch (const ConeEscapeError& e) {
            res.ok = false;
            res.failure_vertex = e.vertex();
            res.failure_point = e.escape_point();
            sweep.all_ok = false;
        }
        sweep.directions.push_back(res);
    }
    return sweep;
}

} // namespace serrin
