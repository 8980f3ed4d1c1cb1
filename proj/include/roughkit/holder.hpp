#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "roughkit/errors.hpp"
#include "roughkit/linalg.hpp"
#include "roughkit/path.hpp"

namespace roughkit::holder {

/// A nonlinearity phi : R^dy -> L(R^dx, R^dy) with declared regularity bounds.
///
/// eval writes the dy x dx matrix phi(y); deriv writes the dy x dx x dy block
/// d phi_{ik} / d y_m at flat index (i*dx + k)*dy + m. Matrix values are
/// measured in the operator norm; derivative tensors in the operator norm of
/// the induced map R^dy -> (matrices, Frobenius), which dominates the nested
/// operator norm, so declared bounds remain valid in every estimate.
struct HolderFunction {
    std::string name;
    std::size_t dy = 1;
    std::size_t dx = 1;
    std::function<void(const double*, double*)> eval;
    std::function<void(const double*, double*)> deriv;

    double alpha = 1.0;    // Hoelder exponent in (0, 1]
    double phi0 = 0;       // sup |phi|
    double phi_alpha = 0;  // C^alpha seminorm of phi
    double phi1 = 0;       // sup |D phi|
    double phi1_alpha = 0; // C^alpha seminorm of D phi

    void validate() const {
        if (dy == 0 || dx == 0) throw ParameterError("HolderFunction: zero dimension");
        if (!(alpha > 0 && alpha <= 1.0))
            throw ParameterError("HolderFunction: alpha must be in (0, 1]");
        if (!(phi0 > 0) || !(phi1 > 0))
            throw ParameterError("HolderFunction: nonpositive phi0 or phi1 bound");
        if (!eval || !deriv) throw ParameterError("HolderFunction: missing evaluator");
    }

    /// Samples |phi|, |D phi| and the Hoelder quotients on a deterministic probe
    /// set and fails if any observation exceeds a declared bound by > 1%.
    void sanity_probe(double box_radius = 4.0, std::size_t samples = 400) const;
};

/// C^{2,1}-type nonlinearity for the level-2 theory: second derivative plus
/// Lipschitz bounds of each level. deriv2 writes d2 phi_{ik} / (dy_m dy_l) at
/// flat index ((i*dx + k)*dy + m)*dy + l.
struct SmoothFunction21 : HolderFunction {
    std::function<void(const double*, double*)> deriv2;

    double phi01 = 0; // Lipschitz bound of phi itself
    double phi11 = 0; // Lipschitz bound of D phi
    double phi2 = 0;  // sup |D^2 phi|
    double phi21 = 0; // Lipschitz bound of D^2 phi
    double phi_dd = 0; // sup |D phi . phi|, always <= phi0 * phi1

    void validate21() const {
        validate();
        if (!deriv2) throw ParameterError("SmoothFunction21: missing second derivative");
        if (!(phi2 > 0) || !(phi01 > 0) || !(phi11 > 0) || !(phi21 > 0))
            throw ParameterError("SmoothFunction21: nonpositive bound");
        if (!(phi_dd > 0)) throw ParameterError("SmoothFunction21: nonpositive phi_dd");
        if (phi_dd > phi0 * phi1 * (1 + 1e-12))
            throw ParameterError("SmoothFunction21: phi_dd must not exceed phi0 * phi1");
    }

    void sanity_probe21(double box_radius = 4.0, std::size_t samples = 300) const;
};

// Built-in families with hand-derived exact bound metadata. All are bounded
// with bounded derivatives, as the theory requires.

/// phi(y) = scale / (1 + (y + shift)^2) + value_offset, scalar.
SmoothFunction21 make_recip_quad(double scale = 1.0, double shift = 0.0,
                                 double value_offset = 0.0);

/// phi(y) = scale * atan(y + shift) + value_offset, scalar.
SmoothFunction21 make_atan(double scale = 1.0, double shift = 0.0,
                           double value_offset = 0.0);

/// phi(y) = scale * exp(-(y + shift)^2 / 2) + value_offset, scalar.
SmoothFunction21 make_gauss(double scale = 1.0, double shift = 0.0,
                            double value_offset = 0.0);

/// phi(y) = (a cos y, b sin y): R -> L(R^2, R), for two-dimensional drivers.
SmoothFunction21 make_sin_cos(double a = 0.8, double b = 0.6);

/// Registry lookup for "builtin:<name>" CLI arguments; names: recip_quad,
/// atan, gauss, sin_cos.
SmoothFunction21 builtin(const std::string& name);
std::vector<std::string> builtin_names();

/// phi(Y_t) sampled along a path, as a matrix path.
MatrixPath compose(const HolderFunction& phi, const GridPath& y);

} // namespace roughkit::holder
