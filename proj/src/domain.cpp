#include "serrin/domain.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "serrin/errors.hpp"

namespace serrin {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kGuardSamples = 4096;
constexpr int kCoarseSamples = 1024;
} // namespace

double FourierBoundary::rho(double phi) const {
    double r = c0;
    // Trigonometric recurrence: cos/sin of k*phi from (k-1)*phi.
    const double c1 = std::cos(phi), s1 = std::sin(phi);
    double ck = c1, sk = s1;
    const std::size_t n = order();
    for (std::size_t k = 1; k <= n; ++k) {
        if (k <= cos_coeffs.size()) r += cos_coeffs[k - 1] * ck;
        if (k <= sin_coeffs.size()) r += sin_coeffs[k - 1] * sk;
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
    }
    return r;
}

double FourierBoundary::drho(double phi) const {
    double r = 0.0;
    const double c1 = std::cos(phi), s1 = std::sin(phi);
    double ck = c1, sk = s1;
    const std::size_t n = order();
    for (std::size_t k = 1; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        if (k <= cos_coeffs.size()) r -= cos_coeffs[k - 1] * kk * sk;
        if (k <= sin_coeffs.size()) r += sin_coeffs[k - 1] * kk * ck;
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
    }
    return r;
}

double FourierBoundary::d2rho(double phi) const {
    double r = 0.0;
    const double c1 = std::cos(phi), s1 = std::sin(phi);
    double ck = c1, sk = s1;
    const std::size_t n = order();
    for (std::size_t k = 1; k <= n; ++k) {
        const double k2 = static_cast<double>(k) * static_cast<double>(k);
        if (k <= cos_coeffs.size()) r -= cos_coeffs[k - 1] * k2 * ck;
        if (k <= sin_coeffs.size()) r -= sin_coeffs[k - 1] * k2 * sk;
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
    }
    return r;
}

DomainSpec::DomainSpec(Vec2 center, FourierBoundary boundary, bool convex_flag, std::string id)
    : center_(center), radial_(std::move(boundary)), convex_flag_(convex_flag),
      id_(std::move(id)) {
    validate_and_cache();
}

void DomainSpec::validate_and_cache() {
    min_rho_ = std::numeric_limits<double>::infinity();
    double max_abs_curvature = 0.0;
    double min_curvature = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGuardSamples; ++i) {
        const double phi = kTwoPi * i / kGuardSamples;
        const double r = radial_.rho(phi);
        min_rho_ = std::min(min_rho_, r);
        if (r <= 0.0) continue; // curvature meaningless; rejected below
        const double dr = radial_.drho(phi);
        const double ddr = radial_.d2rho(phi);
        const double g = r * r + dr * dr;
        const double kappa = (r * r + 2.0 * dr * dr - r * ddr) / (g * std::sqrt(g));
        max_abs_curvature = std::max(max_abs_curvature, std::abs(kappa));
        min_curvature = std::min(min_curvature, kappa);
    }
    if (!(min_rho_ > 0.0))
        throw ValidationError("domain '" + id_ + "': not star-shaped (rho <= 0)");
    min_curvature_radius_ = 1.0 / max_abs_curvature;
    if (convex_flag_ && min_curvature < -1e-9 / min_curvature_radius_)
        throw ValidationError("domain '" + id_ +
                              "': declared convex but sampled curvature is negative");

    coarse_offsets_.resize(kCoarseSamples);
    for (int i = 0; i < kCoarseSamples; ++i)
        coarse_offsets_[i] = boundary_offset(kTwoPi * i / kCoarseSamples);
}

Vec2 DomainSpec::boundary_offset(double phi) const {
    return radial_.rho(phi) * unit_vector(phi);
}

BoundaryPoint DomainSpec::boundary_point(double phi) const {
    const double r = radial_.rho(phi);
    const double dr = radial_.drho(phi);
    const double ddr = radial_.d2rho(phi);
    const Vec2 e = unit_vector(phi);
    const Vec2 ep = e.perp();
    // Tangent of the counter-clockwise parameterization.
    const Vec2 tangent = dr * e + r * ep;
    const double speed = tangent.norm();
    const Vec2 outward = Vec2{tangent.y, -tangent.x} / speed;
    const double g = r * r + dr * dr;
    const double kappa = (r * r + 2.0 * dr * dr - r * ddr) / (g * std::sqrt(g));
    BoundaryPoint p;
    p.position = center_ + r * e;
    p.angle_param = phi;
    p.inward_normal = -outward;
    p.curvature = kappa;
    return p;
}

DomainSpec DomainSpec::translated(const Vec2& shift) const {
    return DomainSpec(center_ + shift, radial_, convex_flag_, id_);
}

DomainSpec DomainSpec::rotated(double angle) const {
    FourierBoundary b;
    b.c0 = radial_.c0;
    const std::size_t n = radial_.order();
    b.cos_coeffs.assign(n, 0.0);
    b.sin_coeffs.assign(n, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        const double ak = k <= radial_.cos_coeffs.size() ? radial_.cos_coeffs[k - 1] : 0.0;
        const double bk = k <= radial_.sin_coeffs.size() ? radial_.sin_coeffs[k - 1] : 0.0;
        const double c = std::cos(k * angle), s = std::sin(k * angle);
        // rho'(phi) = rho(phi - angle)
        b.cos_coeffs[k - 1] = ak * c - bk * s;
        b.sin_coeffs[k - 1] = ak * s + bk * c;
    }
    return DomainSpec(center_, std::move(b), convex_flag_, id_);
}

DomainSpec DomainSpec::scaled(double factor) const {
    if (!(factor > 0.0)) throw ValidationError("scale factor must be positive");
    FourierBoundary b = radial_;
    b.c0 *= factor;
    for (double& a : b.cos_coeffs) a *= factor;
    for (double& s : b.sin_coeffs) s *= factor;
    return DomainSpec(center_, std::move(b), convex_flag_, id_);
}

DomainSpec DomainSpec::with_id(std::string id) const {
    return DomainSpec(center_, radial_, convex_flag_, std::move(id));
}

DomainSpec DomainSpec::disk(double radius, Vec2 center) {
    if (!(radius > 0.0)) throw ValidationError("disk radius must be positive");
    FourierBoundary b;
    b.c0 = radius;
    return DomainSpec(center, std::move(b), /*convex_flag=*/true, "disk");
}

DomainSpec DomainSpec::ellipse(double a, double b, Vec2 center, double rotation) {
    if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("ellipse semi-axes must be positive");
    // Polar radius about the center: rho(phi) = a b / sqrt(b^2 cos^2 + a^2 sin^2),
    // an even pi-periodic analytic function; its cosine coefficients decay
    // geometrically, so trapezoid projection on a fine grid is spectrally exact.
    constexpr int kQuad = 8192;
    constexpr int kMaxOrder = 64;
    std::vector<double> samples(kQuad);
    for (int i = 0; i < kQuad; ++i) {
        const double phi = kTwoPi * i / kQuad;
        const double c = std::cos(phi), s = std::sin(phi);
        samples[i] = a * b / std::sqrt(b * b * c * c + a * a * s * s);
    }
    FourierBoundary f;
    double mean = 0.0;
    for (double v : samples) mean += v;
    f.c0 = mean / kQuad;
    for (int k = 2; k <= kMaxOrder; k += 2) {
        double ak = 0.0;
        for (int i = 0; i < kQuad; ++i)
            ak += samples[i] * std::cos(k * kTwoPi * i / kQuad);
        ak *= 2.0 / kQuad;
        if (std::abs(ak) < 1e-15) break;
        f.cos_coeffs.resize(k, 0.0);
        f.cos_coeffs[k - 1] = ak;
    }
    DomainSpec dom(center, std::move(f), /*convex_flag=*/true, "ellipse");
    if (rotation != 0.0) dom = dom.rotated(rotation);
    return dom;
}

DomainSpec DomainSpec::from_json_text(const std::string& text, const std::string& id) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("domain json parse error: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "center" && key != "coeffs" && key != "convex" && key != "id")
            throw ValidationError("domain json: unknown key '" + key + "'");
    }
    if (!j.contains("coeffs")) throw ValidationError("domain json: missing 'coeffs'");
    const auto& cj = j["coeffs"];
    for (const auto& [key, value] : cj.items()) {
        (void)value;
        if (key != "c0" && key != "cos" && key != "sin")
            throw ValidationError("domain json: unknown key 'coeffs." + key + "'");
    }
    FourierBoundary b;
    if (!cj.contains("c0")) throw ValidationError("domain json: missing 'coeffs.c0'");
    b.c0 = cj["c0"].get<double>();
    if (cj.contains("cos")) b.cos_coeffs = cj["cos"].get<std::vector<double>>();
    if (cj.contains("sin")) b.sin_coeffs = cj["sin"].get<std::vector<double>>();
    Vec2 center{0, 0};
    if (j.contains("center")) {
        auto c = j["center"].get<std::vector<double>>();
        if (c.size() != 2) throw ValidationError("domain json: 'center' must be [x, y]");
        center = {c[0], c[1]};
    }
    const bool convex = j.value("convex", false);
    const std::string dom_id = j.value("id", id);
    return DomainSpec(center, std::move(b), convex, dom_id);
}

DomainSpec DomainSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open domain file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), path);
}

std::string DomainSpec::to_json_text() const {
    nlohmann::json j;
    j["center"] = {center_.x, center_.y};
    j["coeffs"]["c0"] = radial_.c0;
    j["coeffs"]["cos"] = radial_.cos_coeffs;
    j["coeffs"]["sin"] = radial_.sin_coeffs;
    j["convex"] = convex_flag_;
    j["id"] = id_;
    return j.dump(2);
}

void DomainSpec::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write domain file: " + path);
    out << to_json_text() << "\n";
}

} // namespace serrin
