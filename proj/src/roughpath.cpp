#include "roughkit/roughpath.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace roughkit::rough {

RoughPath canonical_lift(const GridPath& x, LiftRule rule) {
    const std::size_t n = x.n();
    const std::size_t d = x.dim();
    TensorField2 xx(x.grid(), d, d);

    std::vector<double> inc(d), cell(d);
    // Row recursion: XX(i, j+1) = XX(i, j) + X(i,j) (x) dX_j (+ cell term).
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            MatView dst = xx.entry_mut(i, j);
            const ConstMatView prev = xx.entry(i, j - 1);
            for (std::size_t m = 0; m < d * d; ++m) dst.p[m] = prev.p[m];
            x.increment(i, j - 1, inc.data());
            x.increment(j - 1, j, cell.data());
            outer_acc(dst.p, inc.data(), d, cell.data(), d);
            if (rule == LiftRule::linear) {
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b)
                        dst(a, b) += 0.5 * cell[a] * cell[b];
            }
        }
    }
    return RoughPath(x, std::move(xx));
}

namespace {

constexpr std::size_t kChenExhaustiveLimit = 320;
constexpr std::size_t kChenSamples = 2000000;

double chen_residual(const RoughPath& p, std::size_t s, std::size_t u, std::size_t t,
                     std::vector<double>& buf, std::vector<double>& a, std::vector<double>& b) {
    const std::size_t d = p.dim();
    p.xx().delta(s, u, t, buf.data());
    p.x().increment(s, u, a.data());
    p.x().increment(u, t, b.data());
    double acc = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double r = buf[i * d + j] - a[i] * b[j];
            acc += r * r;
        }
    return std::sqrt(acc);
}

} // namespace

ChenDefectReport chen_defect_report(const RoughPath& p) {
    const std::size_t n = p.n();
    const std::size_t d = p.dim();
    std::vector<double> buf(d * d), a(d), b(d);
    ChenDefectReport rep;

    auto consider = [&](std::size_t s, std::size_t u, std::size_t t) {
        const double r = chen_residual(p, s, u, t, buf, a, b);
        ++rep.triples_checked;
        if (r > rep.defect) {
            rep.defect = r;
            rep.worst = {s, u, t};
        }
    };

    if (n <= kChenExhaustiveLimit) {
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t u = s + 1; u < n; ++u)
                for (std::size_t t = u + 1; t < n; ++t) consider(s, u, t);
        rep.exhaustive = true;
        return rep;
    }

    rep.exhaustive = false;
    for (std::size_t s = 0; s + 2 < n; ++s) consider(s, s + 1, s + 2); // adjacent
    for (std::size_t span = n - 1; span >= 2; span /= 2)               // dyadic midpoints
        for (std::size_t s = 0; s + span < n; s += std::max<std::size_t>(1, span / 2))
            consider(s, s + span / 2, s + span);
    std::mt19937_64 rng(0x1f123bb5159a55e5ull ^ n);
    std::uniform_int_distribution<std::size_t> uni(0, n - 1);
    for (std::size_t m = 0; m < kChenSamples; ++m) {
        std::size_t s = uni(rng), u = uni(rng), t = uni(rng);
        if (s > u) std::swap(s, u);
        if (u > t) std::swap(u, t);
        if (s > u) std::swap(s, u);
        if (s == u || u == t) continue;
        consider(s, u, t);
    }
    return rep;
}

double chen_defect(const RoughPath& p) { return chen_defect_report(p).defect; }

TensorField2 remainder(const ControlledPath& y) {
    const std::size_t n = y.n();
    const std::size_t d = y.y().dim();
    const std::size_t dx = y.driver().dim();
    TensorField2 r(y.y().grid(), d, 1);
    std::vector<double> dx_inc(dx), yx(d);
    for (std::size_t i = 0; i < n; ++i) {
        const ConstMatView yp = y.yp().value(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            y.driver().x().increment(i, j, dx_inc.data());
            matvec(yp, dx_inc.data(), yx.data());
            MatView dst = r.entry_mut(i, j);
            const auto yi = y.y().value(i);
            const auto yj = y.y().value(j);
            for (std::size_t k = 0; k < d; ++k) dst.p[k] = (yj[k] - yi[k]) - yx[k];
        }
    }
    return r;
}

TensorField2 remainder_difference(const ControlledPath& y, const ControlledPath& yt) {
    return field_difference(remainder(y), remainder(yt));
}

GridPath path_difference(const GridPath& a, const GridPath& b) {
    if (!(a.grid() == b.grid()) || a.dim() != b.dim())
        throw DimensionError("path_difference: incompatible paths");
    std::vector<double> v(a.raw().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.raw()[i] - b.raw()[i];
    return GridPath(a.grid(), a.dim(), std::move(v));
}

MatrixPath matrix_path_difference(const MatrixPath& a, const MatrixPath& b) {
    if (!(a.grid() == b.grid()) || a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix_path_difference: incompatible paths");
    std::vector<double> v(a.raw().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.raw()[i] - b.raw()[i];
    return MatrixPath(a.grid(), a.rows(), a.cols(), std::move(v));
}

TensorField2 field_difference(const TensorField2& a, const TensorField2& b) {
    if (!(a.grid() == b.grid()) || a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("field_difference: incompatible fields");
    TensorField2 out(a.grid(), a.rows(), a.cols());
    for (std::size_t i = 0; i < out.raw().size(); ++i)
        out.raw()[i] = a.raw()[i] - b.raw()[i];
    return out;
}

double roughpath_besov_norm(const RoughPath& p, const besov::BesovParams& params,
                            besov::Evaluator evaluator) {
    params.validate();
    const besov::BesovParams second{2.0 * params.alpha, params.p / 2.0, params.q / 2.0};
    const double path_part =
        besov::besov_norm_path(p.x(), params, besov::Mode::standard, evaluator).norm;
    const double area_part =
        besov::besov_norm(p.xx().norm_field(), second, besov::Mode::standard, evaluator).norm;
    return path_part + std::sqrt(area_part);
}

} // namespace roughkit::rough
