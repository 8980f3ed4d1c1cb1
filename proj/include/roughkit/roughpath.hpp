#pragma once

#include <array>
#include <cstddef>
#include <memory>

#include "roughkit/besov.hpp"
#include "roughkit/field.hpp"
#include "roughkit/path.hpp"

namespace roughkit::rough {

/// Grading exponents of a controlled (r, alpha)-rough path.
struct RoughPathParams {
    double r = 2.5;
    double alpha = 1.0;

    void validate() const {
        if (!(r >= 2.0 && r < 3.0)) throw ParameterError("RoughPathParams: r must be in [2,3)");
        if (!(alpha > 0 && alpha <= 1.0))
            throw ParameterError("RoughPathParams: alpha must be in (0,1]");
        if (!(r < 2.0 + alpha))
            throw ParameterError("RoughPathParams: need r < 2 + alpha (theta > 1)");
    }
    double theta() const { return (2.0 + alpha) / r; }
};

/// Level-2 rough path: a path X in R^d and a d x d tensor field XX subject to
/// Chen's identity XX(s,t) = XX(s,u) + XX(u,t) + X(s,u) (x) X(u,t).
class RoughPath {
public:
    RoughPath(GridPath x, TensorField2 xx) : x_(std::move(x)), xx_(std::move(xx)) {
        if (!(x_.grid() == xx_.grid())) throw DimensionError("RoughPath: grids differ");
        if (xx_.rows() != x_.dim() || xx_.cols() != x_.dim())
            throw DimensionError("RoughPath: XX must be dim x dim");
    }

    const GridPath& x() const { return x_; }
    const TensorField2& xx() const { return xx_; }
    const TimeGrid& grid() const { return x_.grid(); }
    std::size_t n() const { return x_.n(); }
    std::size_t dim() const { return x_.dim(); }

private:
    GridPath x_;
    TensorField2 xx_;
};

enum class LiftRule { left_point, linear };

/// Canonical lift of a grid path. left_point: XX(i,j) = sum_{i<=k<j} X(i,k) (x) dX_k;
/// linear adds 1/2 dX_k (x) dX_k per cell. Both satisfy Chen exactly in exact
/// arithmetic (telescoping construction).
RoughPath canonical_lift(const GridPath& x, LiftRule rule = LiftRule::left_point);

struct ChenDefectReport {
    double defect = 0.0;
    std::array<std::size_t, 3> worst{0, 0, 0};
    bool exhaustive = true;
    std::size_t triples_checked = 0;
};

/// Max over grid triples of |XX(s,t) - XX(s,u) - XX(u,t) - X(s,u) (x) X(u,t)|_F.
/// Exhaustive for n <= 320, deterministic stratified sampling above.
ChenDefectReport chen_defect_report(const RoughPath& p);
double chen_defect(const RoughPath& p);

/// An X-controlled path (Y, Y'): Y in R^d, Y' in L(R^dimX, R^d).
class ControlledPath {
public:
    ControlledPath(GridPath y, MatrixPath yp, std::shared_ptr<const RoughPath> driver)
        : y_(std::move(y)), yp_(std::move(yp)), driver_(std::move(driver)) {
        if (!driver_) throw ParameterError("ControlledPath: missing driver");
        if (!(y_.grid() == driver_->grid()) || !(yp_.grid() == driver_->grid()))
            throw DimensionError("ControlledPath: grids differ");
        if (yp_.rows() != y_.dim() || yp_.cols() != driver_->dim())
            throw DimensionError("ControlledPath: Y' must be dim(Y) x dim(X)");
    }

    const GridPath& y() const { return y_; }
    const MatrixPath& yp() const { return yp_; }
    const RoughPath& driver() const { return *driver_; }
    std::shared_ptr<const RoughPath> driver_ptr() const { return driver_; }
    std::size_t n() const { return y_.n(); }

private:
    GridPath y_;
    MatrixPath yp_;
    std::shared_ptr<const RoughPath> driver_;
};

/// Remainder field R^{Y,X}(s,t) = Y(s,t) - Y'(s) X(s,t), vector-valued.
TensorField2 remainder(const ControlledPath& y);

/// Difference fields for a pair of controlled paths (the Delta-notation block):
/// DeltaR(s,t) = R^{Y,X}(s,t) - R^{Y~,X~}(s,t).
TensorField2 remainder_difference(const ControlledPath& y, const ControlledPath& yt);

GridPath path_difference(const GridPath& a, const GridPath& b);
MatrixPath matrix_path_difference(const MatrixPath& a, const MatrixPath& b);
TensorField2 field_difference(const TensorField2& a, const TensorField2& b);

/// Composite rough-path Besov norm:
/// |||X|||_{B^alpha_{p,q}} = ||X||_{B^alpha_{p,q}} + ||XX||_{B^{2alpha}_{p/2,q/2}}^{1/2}.
double roughpath_besov_norm(const RoughPath& p, const besov::BesovParams& params,
                            besov::Evaluator evaluator = besov::Evaluator::dyadic);

} // namespace roughkit::rough
