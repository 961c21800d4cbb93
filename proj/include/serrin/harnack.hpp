#pragma once

#include <functional>
#include <vector>

namespace serrin {

/// Point in R^N for the dimension-generic chain machinery (N = 2 or 3 in
/// practice; the formulas accept any N >= 1).
using VecN = std::vector<double>;

double dotn(const VecN& a, const VecN& b);
double normn(const VecN& a);
VecN addn(const VecN& a, const VecN& b, double scale_b = 1.0);

/// Right spherical cone with vertex z, unit axis, half-aperture in (0, pi/2].
struct ConeSpec {
    VecN vertex;
    VecN axis;
    double half_aperture = 0.0;
    double height = 0.0;

    int dim() const { return static_cast<int>(vertex.size()); }
    /// Distance from an interior point to the lateral surface of the
    /// (infinite) cone; negative outside.
    double lateral_distance(const VecN& p) const;
};

struct ChainBall {
    VecN center;
    double radius = 0.0;
};

/// Ball chain of the cone Harnack lemma. Balls 1..n follow the closed forms
///   r_i = r0 (1-a) sin(theta) / (1 - a sin(theta)) * beta^i
///   p_i = z + r0 (1-a) / (1 - a sin(theta)) * beta^i * axis
/// and ball 0 is centered at the start point x with radius |x - z|.
struct HarnackChain {
    double a = 0.0;
    double H_a = 1.0;
    double beta = 1.0;
    double gamma = 0.0;
    double K = 1.0;
    double r0 = 0.0;
    double dist_xi_z = 0.0;
    std::vector<ChainBall> balls; // indices 0..n
    int n = 0;
};

/// Poisson-formula Harnack constant ((1+a)/(1-a))^N for harmonic functions.
double harnack_constant_harmonic(double a, int N);

/// General zero-order coefficient case: base^(sqrt(N) + sqrt(r * c_sup)).
/// The base is supplied by the caller; elliptic theory provides no numeric
/// value, and we do not invent one.
double harnack_constant_general(double a, int N, double r, double c_sup, double base);

struct GammaBeta {
    double gamma = 0.0;
    double beta = 1.0;
};

/// gamma = log_beta(H_a), beta = (1 + a sin theta) / (1 - a sin theta).
GammaBeta gamma_beta(double a, double theta, double H_a);

/// Harmonic-case exponent N log((1+a)/(1-a)) / log((1+a sin theta)/(1-a sin theta));
/// always >= N with equality only at theta = pi/2.
double gamma_torsion(double a, double theta, int N);

/// K = H_a [ |xi - z| (1 - a sin theta) / (1 - a) ]^gamma.
double K_constant(double a, double theta, double dist_xi_z, double H_a);

/// n <= 1 + log((|xi-z|/r0)(1-a sin theta)/(1-a)) / log(beta).
double chain_length_bound(double a, double theta, double r0, double dist_xi_z, double H_a);

/// Builds the minimal chain joining x to xi along the cone axis. Both points
/// must lie on the axis (to 1e-9 relative) with |x-z| < |xi-z|.
HarnackChain build_chain(const ConeSpec& cone, const VecN& x, const VecN& xi, double a,
                         double H_a);

using Evaluator = std::function<double(const VecN&)>;

struct TwoSidedMargins {
    double lower_margin = 0.0; // w(xi) / lower bound; >= 1 when the lemma holds
    double upper_margin = 0.0; // upper bound / w(xi)
    int n = 0;
};

/// Checks (|x-z|^gamma / K) w(x) <= w(xi) <= (K / |x-z|^gamma) w(x) for a
/// positive solution evaluator. Throws if the evaluator is nonpositive at a
/// chain sample point.
TwoSidedMargins verify_two_sided(const Evaluator& w, const ConeSpec& cone, const VecN& x,
                                 const VecN& xi, double a, double H_a);

/// sup / inf of the evaluator over an m-per-axis grid of the ball B_{a r}.
double harnack_ratio_on_ball(const Evaluator& w, const VecN& center, double r, double a,
                             int m);

} // namespace serrin
