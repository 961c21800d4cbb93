#pragma once

#include <optional>
#include <string>
#include <vector>

#include "serrin/domain.hpp"
#include "serrin/geometry.hpp"

namespace serrin {

enum class CapCase { S1, S2 };

inline const char* to_string(CapCase c) { return c == CapCase::S1 ? "S1" : "S2"; }

/// Tolerances for the moving-planes machinery. Defaults follow the module
/// conventions: lambda to 1e-6 of the diameter, 1e-3 rad for normal
/// orthogonality, 1e-9 of the diameter for containment.
struct CapTolerances {
    double lambda_tol = 1e-6;
    double angle_tol = 1e-3;
    double geo_tol = 1e-9;
    double s1_factor = 20.0; // tangency residual allowance, in units of lambda_tol
    double scale = 2.0;      // length scale (diameter) for derived exclusion radii

    static CapTolerances for_scale(double d_Omega, double lambda_rel = 1e-6) {
        CapTolerances t;
        t.lambda_tol = lambda_rel * d_Omega;
        t.geo_tol = 1e-9 * d_Omega;
        t.scale = d_Omega;
        return t;
    }
};

/// Outcome of moving planes in one direction: the critical value, the case
/// classification with its touching point, and the seed used downstream to
/// pick the connected component of the maximal cap.
struct CriticalCap {
    Vec2 omega;
    double Lambda = 0.0; // extent in direction omega
    double lambda = 0.0; // critical value
    CapCase primary_case = CapCase::S1;
    Vec2 touch_point;                  // P (case S1) or Q (case S2), on the boundary
    std::optional<Vec2> secondary_touch; // the other case's point when both fire
    Vec2 component_seed;               // center of the Lemma-2.1 half-ball
    double halfball_radius = 0.0;
    bool fallback_scan_used = false;   // bisection bracket was not monotone

    bool both_cases() const { return secondary_touch.has_value(); }
    std::string to_json_text() const;
};

struct LambdaResult {
    double lambda = 0.0;
    bool fallback_scan_used = false;
};

/// Per-direction (C,theta) certificate: the smallest half-aperture achieved
/// over all sampled cone vertices, with a few witness (x, xi) pairs. A
/// certificate covers the sampled vertices and directions only.
struct ConeCertificate {
    double theta = 0.0;     // certified half-aperture (min over witnesses)
    double t_param = 0.0;
    Vec2 ball_center;       // center of the inscribed ball B inside G_lambda
    double ball_radius = 0.0;
    std::vector<std::pair<Vec2, Vec2>> witness_points; // (x, xi) sample
    int vertices_checked = 0;
    int lateral_samples = 0;
    std::string note;
};

struct CThetaOptions {
    int witness_angles = 256;  // boundary angles for vertex seeding
    int lateral_samples = 4096; // samples per cone lateral surface
    int max_witness_records = 16;
};

/// Certificate sweep over a direction sample.
struct CThetaDirectionResult {
    Vec2 omega;
    bool ok = false;
    double theta = 0.0;
    Vec2 failure_vertex;   // set when ok == false
    Vec2 failure_point;
};

struct CThetaSweep {
    bool all_ok = false;
    double theta_min = 0.0; // over successful directions
    std::vector<CThetaDirectionResult> directions;
};

/// Extent sup{x . omega : x in Omega} of the domain in direction omega.
double extent(const DomainSpec& domain, const Vec2& omega, int m = kDefaultSamples);

/// Sampled containment test: every boundary point right of the plane reflects
/// to signed distance >= -geo_tol.
bool reflected_cap_inside(const DomainSpec& domain, const Vec2& omega, double mu,
                          int m = kDefaultSamples, double geo_tol = -1.0);

/// Critical value lambda = inf{mu : reflected cap inside for all mu' in (mu, Lambda)},
/// located by geometric bracketing plus bisection. Monotonicity of containment
/// is assumed on the bracket and audited afterwards; a non-monotone bracket
/// triggers a fine linear scan (reported via the flag).
LambdaResult critical_lambda(const DomainSpec& domain, const Vec2& omega, double tol,
                             int m = kDefaultSamples);

struct Classification {
    CapCase primary = CapCase::S1;
    Vec2 touch_point;
    std::optional<Vec2> secondary_touch;
    bool s1_fired = false;
    bool s2_fired = false;
};

/// Case classification at the critical value. S2 when the plane meets the
/// boundary orthogonally, S1 when a reflected cap point is tangent to the
/// boundary; ties report both with S1 primary.
Classification classify_case(const DomainSpec& domain, const Vec2& omega, double lambda,
                             const CapTolerances& tol, int m = kDefaultSamples);

/// Orchestrates extent, critical value, classification and the half-ball seed.
CriticalCap find_critical_cap(const DomainSpec& domain, const Vec2& omega, double r_Omega,
                              const CapTolerances& tol, int m = kDefaultSamples);

struct TangentHalfball {
    Vec2 center;
    double radius = 0.0;
    double margin = 0.0; // min signed distance over the sampled half-ball
};

/// Interior ball of radius r_Omega touching the boundary at the cap's
/// touch point; Lemma-2.1 asserts its right half lies in the maximal cap,
/// which is verified on samples (failure throws).
TangentHalfball tangent_halfball(const DomainSpec& domain, const CriticalCap& cap,
                                 double r_Omega, const CapTolerances& tol,
                                 int check_samples = 2048);

/// theta >= arctan((1-t) r_Omega / (2 d_Omega)) for convex domains.
double theta_lower_bound(double d_Omega, double r_Omega, double t);

/// Lipschitz bound 2 d_Omega / r_Omega for boundaries of maximal caps of
/// convex domains.
double lipschitz_cap_bound(double d_Omega, double r_Omega);

/// Builds cones from sampled collar points of the maximal cap over the
/// inscribed ball of G_lambda and verifies lateral-surface containment.
/// Throws ConeEscapeError when a cone leaves the cap.
ConeCertificate ctheta_check(const DomainSpec& domain, const CriticalCap& cap, double t,
                             double d_Omega, double r_Omega, const CapTolerances& tol,
                             const CThetaOptions& opts = {});

/// Runs ctheta_check over n equally spaced directions. Failures are collected
/// rather than thrown.
CThetaSweep ctheta_sweep(const DomainSpec& domain, double t, int n_directions,
                         const CapTolerances& tol, const CThetaOptions& opts = {},
                         int m = kDefaultSamples);

} // namespace serrin
