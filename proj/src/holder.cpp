#include "roughkit/holder.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace roughkit::holder {

namespace {

double flat_matrix_norm(const std::vector<double>& buf, std::size_t rows, std::size_t cols) {
    return spectral_norm({buf.data(), rows, cols});
}

} // namespace

void HolderFunction::sanity_probe(double box_radius, std::size_t samples) const {
    validate();
    std::mt19937_64 rng(0x8f1e3a7cull ^ samples);
    std::uniform_real_distribution<double> u(-box_radius, box_radius);
    const double slack = 1.01;

    std::vector<double> y(dy), z(dy);
    std::vector<double> f(dy * dx), g(dy * dx);
    std::vector<double> df(dy * dx * dy), dg(dy * dx * dy);

    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& v : y) v = u(rng);
        for (auto& v : z) v = u(rng);
        eval(y.data(), f.data());
        eval(z.data(), g.data());
        deriv(y.data(), df.data());
        deriv(z.data(), dg.data());

        if (spectral_norm({f.data(), dy, dx}) > phi0 * slack)
            throw ConsistencyError(name + ": observed |phi| exceeds declared phi0");
        if (flat_matrix_norm(df, dy * dx, dy) > phi1 * slack)
            throw ConsistencyError(name + ": observed |D phi| exceeds declared phi1");

        double dist = 0;
        for (std::size_t k = 0; k < dy; ++k) dist += (y[k] - z[k]) * (y[k] - z[k]);
        dist = std::sqrt(dist);
        if (dist < 1e-12) continue;
        const double ha = std::pow(dist, alpha);

        std::vector<double> diff(dy * dx);
        for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = f[k] - g[k];
        if (spectral_norm({diff.data(), dy, dx}) > phi_alpha * ha * slack)
            throw ConsistencyError(name + ": Hoelder quotient of phi exceeds phi_alpha");

        std::vector<double> ddiff(dy * dx * dy);
        for (std::size_t k = 0; k < ddiff.size(); ++k) ddiff[k] = df[k] - dg[k];
        if (flat_matrix_norm(ddiff, dy * dx, dy) > phi1_alpha * ha * slack)
            throw ConsistencyError(name + ": Hoelder quotient of D phi exceeds phi1_alpha");
    }
}

void SmoothFunction21::sanity_probe21(double box_radius, std::size_t samples) const {
    validate21();
    sanity_probe(box_radius, samples);
    std::mt19937_64 rng(0x51e9b2c4ull ^ samples);
    std::uniform_real_distribution<double> u(-box_radius, box_radius);
    const double slack = 1.01;

    std::vector<double> y(dy), z(dy);
    std::vector<double> f(dy * dx), df(dy * dx * dy);
    std::vector<double> d2(dy * dx * dy * dy), d2z(dy * dx * dy * dy);

    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& v : y) v = u(rng);
        for (auto& v : z) v = u(rng);
        deriv2(y.data(), d2.data());
        deriv2(z.data(), d2z.data());
        if (frobenius(d2.data(), d2.size()) > phi2 * slack)
            throw ConsistencyError(name + ": observed |D^2 phi| exceeds declared phi2");

        double dist = 0;
        for (std::size_t k = 0; k < dy; ++k) dist += (y[k] - z[k]) * (y[k] - z[k]);
        dist = std::sqrt(dist);
        if (dist >= 1e-12) {
            double dn = 0;
            for (std::size_t k = 0; k < d2.size(); ++k) {
                const double d = d2[k] - d2z[k];
                dn += d * d;
            }
            if (std::sqrt(dn) > phi21 * dist * slack)
                throw ConsistencyError(name + ": Lipschitz quotient of D^2 phi exceeds phi21");
        }

        // |D phi . phi| in the flat Frobenius norm on L(E (x) E, F)
        eval(y.data(), f.data());
        deriv(y.data(), df.data());
        double acc = 0;
        for (std::size_t i = 0; i < dy; ++i)
            for (std::size_t k = 0; k < dx; ++k)
                for (std::size_t j = 0; j < dx; ++j) {
                    double v = 0; // sum_m dphi_{ik,m} phi_{mj}
                    for (std::size_t m = 0; m < dy; ++m)
                        v += df[(i * dx + k) * dy + m] * f[m * dx + j];
                    acc += v * v;
                }
        if (std::sqrt(acc) > phi_dd * slack)
            throw ConsistencyError(name + ": observed |D phi . phi| exceeds declared phi_dd");
    }
}

namespace {

// Scalar family helper: phi(y) = scale * g(y + shift) with g's unit bounds.
struct ScalarFamily {
    std::function<double(double)> g, dg, d2g;
    double b0, b1, b2, b21, bdd; // unit-scale suprema of |g|, |g'|, |g''|, |g'''|, |g g'|
};

SmoothFunction21 from_scalar(const std::string& name, const ScalarFamily& fam, double scale,
                             double shift, double voffset) {
    if (!(scale > 0)) throw ParameterError("builtin phi: scale must be positive");
    SmoothFunction21 out;
    out.name = name;
    out.dy = 1;
    out.dx = 1;
    out.alpha = 1.0;
    out.eval = [fam, scale, shift, voffset](const double* y, double* o) {
        o[0] = scale * fam.g(y[0] + shift) + voffset;
    };
    out.deriv = [fam, scale, shift](const double* y, double* o) { o[0] = scale * fam.dg(y[0] + shift); };
    out.deriv2 = [fam, scale, shift](const double* y, double* o) { o[0] = scale * fam.d2g(y[0] + shift); };
    out.phi0 = scale * fam.b0 + std::abs(voffset);
    out.phi1 = scale * fam.b1;
    out.phi2 = scale * fam.b2;
    out.phi_alpha = out.phi01 = out.phi1; // alpha = 1: C^alpha == Lipschitz == sup of next level
    out.phi1_alpha = out.phi11 = out.phi2;
    out.phi21 = scale * fam.b21;
    out.phi_dd = std::min(scale * scale * fam.bdd + std::abs(voffset) * out.phi1,
                          out.phi0 * out.phi1);
    return out;
}

} // namespace

SmoothFunction21 make_recip_quad(double scale, double shift, double voffset) {
    ScalarFamily fam;
    fam.g = [](double y) { return 1.0 / (1.0 + y * y); };
    fam.dg = [](double y) {
        const double q = 1.0 + y * y;
        return -2.0 * y / (q * q);
    };
    fam.d2g = [](double y) {
        const double q = 1.0 + y * y;
        return (6.0 * y * y - 2.0) / (q * q * q);
    };
    fam.b0 = 1.0;
    fam.b1 = 3.0 * std::sqrt(3.0) / 8.0; // 0.649519...
    fam.b2 = 2.0;
    fam.b21 = 4.6685593;  // sup |24 y (1 - y^2) / (1 + y^2)^4|
    fam.bdd = 0.51760833; // sup |2y / (1 + y^2)^3|
    return from_scalar("recip_quad", fam, scale, shift, voffset);
}

SmoothFunction21 make_atan(double scale, double shift, double voffset) {
    ScalarFamily fam;
    fam.g = [](double y) { return std::atan(y); };
    fam.dg = [](double y) { return 1.0 / (1.0 + y * y); };
    fam.d2g = [](double y) {
        const double q = 1.0 + y * y;
        return -2.0 * y / (q * q);
    };
    fam.b0 = std::numbers::pi / 2.0;
    fam.b1 = 1.0;
    fam.b2 = 3.0 * std::sqrt(3.0) / 8.0;
    fam.b21 = 2.0;        // sup |(6y^2 - 2)/(1 + y^2)^3|
    fam.bdd = 0.41194928; // sup |atan(y)/(1 + y^2)|
    return from_scalar("atan", fam, scale, shift, voffset);
}

SmoothFunction21 make_gauss(double scale, double shift, double voffset) {
    ScalarFamily fam;
    fam.g = [](double y) { return std::exp(-0.5 * y * y); };
    fam.dg = [](double y) { return -y * std::exp(-0.5 * y * y); };
    fam.d2g = [](double y) { return (y * y - 1.0) * std::exp(-0.5 * y * y); };
    fam.b0 = 1.0;
    fam.b1 = std::exp(-0.5);
    fam.b2 = 1.0;
    fam.b21 = 1.3801191;  // sup |y (3 - y^2) exp(-y^2/2)|
    fam.bdd = 0.42888195; // sup |y exp(-y^2)|
    return from_scalar("gauss", fam, scale, shift, voffset);
}

SmoothFunction21 make_sin_cos(double a, double b) {
    if (!(a > 0) || !(b > 0)) throw ParameterError("make_sin_cos: amplitudes must be positive");
    SmoothFunction21 out;
    out.name = "sin_cos";
    out.dy = 1;
    out.dx = 2;
    out.alpha = 1.0;
    out.eval = [a, b](const double* y, double* o) {
        o[0] = a * std::cos(y[0]);
        o[1] = b * std::sin(y[0]);
    };
    out.deriv = [a, b](const double* y, double* o) {
        o[0] = -a * std::sin(y[0]);
        o[1] = b * std::cos(y[0]);
    };
    out.deriv2 = [a, b](const double* y, double* o) {
        o[0] = -a * std::cos(y[0]);
        o[1] = -b * std::sin(y[0]);
    };
    const double m = std::max(a, b);
    out.phi0 = out.phi1 = out.phi2 = m;
    out.phi_alpha = out.phi01 = m;
    out.phi1_alpha = out.phi11 = m;
    out.phi21 = m;
    out.phi_dd = 0.5 * (a * a + b * b); // sup |phi| |phi'| over the circle
    return out;
}

SmoothFunction21 builtin(const std::string& name) {
    if (name == "recip_quad") return make_recip_quad();
    if (name == "atan" || name == "atan_family") return make_atan();
    if (name == "gauss") return make_gauss();
    if (name == "sin_cos") return make_sin_cos();
    throw ParameterError("unknown builtin phi: " + name +
                         " (available: recip_quad, atan, gauss, sin_cos)");
}

std::vector<std::string> builtin_names() { return {"recip_quad", "atan", "gauss", "sin_cos"}; }

MatrixPath compose(const HolderFunction& phi, const GridPath& y) {
    if (y.dim() != phi.dy) throw DimensionError("compose: path dimension != phi domain");
    MatrixPath out = MatrixPath::zeros(y.grid(), phi.dy, phi.dx);
    for (std::size_t t = 0; t < y.n(); ++t) phi.eval(y.value(t).data(), out.value(t).p);
    return out;
}

} // namespace roughkit::holder
