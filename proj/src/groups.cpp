#include "roughkit/groups.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <random>
#include <string>

namespace roughkit::groups {

Pairing::Pairing(GroupKind k, std::size_t de, std::size_t df, ScaleConstants sc)
    : kind_(k), de_(de), df_(df), scales_(sc) {
    if (de_ == 0) throw ParameterError("Pairing: dimension must be positive");
    scales_.validate();
    scales_.clamp();
    switch (kind_) {
        case GroupKind::g1:
            dim_x1_ = de_;
            dim_x2_ = de_ * de_;
            break;
        case GroupKind::g2:
            dim_x1_ = 3 * de_;
            dim_x2_ = de_ * de_;
            break;
        case GroupKind::g3:
            if (df_ == 0) throw ParameterError("Pairing: G3 needs a target dimension");
            dim_x1_ = 2 * de_ * df_ + 2 * de_;
            dim_x2_ = df_;
            break;
    }
}

Pairing Pairing::g1(std::size_t de) { return Pairing(GroupKind::g1, de, 0, {}); }
Pairing Pairing::g2(std::size_t de, ScaleConstants sc) {
    return Pairing(GroupKind::g2, de, 0, sc);
}
Pairing Pairing::g3(std::size_t de, std::size_t df, ScaleConstants sc) {
    return Pairing(GroupKind::g3, de, df, sc);
}

void Pairing::b(const double* a, const double* at, double* out) const {
    std::memset(out, 0, dim_x2_ * sizeof(double));
    switch (kind_) {
        case GroupKind::g1:
            // B(x, y) = x (x) y
            outer_acc(out, a, de_, at, de_);
            break;
        case GroupKind::g2: {
            // B((x, x~, xb), (y, y~, yb)) = xb (x) y + x~ (x) yb
            const double* x_t = a + de_;
            const double* x_b = a + 2 * de_;
            const double* y = at;
            const double* y_b = at + 2 * de_;
            outer_acc(out, x_b, de_, y, de_);
            outer_acc(out, x_t, de_, y_b, de_);
            break;
        }
        case GroupKind::g3: {
            // B((A, B, c, d), (A~, B~, c~, d~)) = B c~ + A d~
            const std::size_t m = de_ * df_;
            const double* ma = a;           // df x de
            const double* mb = a + m;       // df x de
            const double* ct = at + 2 * m;  // c~
            const double* dt = at + 2 * m + de_;
            std::vector<double> tmp(df_);
            matvec({mb, df_, de_}, ct, tmp.data());
            for (std::size_t i = 0; i < df_; ++i) out[i] += tmp[i];
            matvec({ma, df_, de_}, dt, tmp.data());
            for (std::size_t i = 0; i < df_; ++i) out[i] += tmp[i];
            break;
        }
    }
}

double Pairing::norm_x1(const double* a) const {
    switch (kind_) {
        case GroupKind::g1:
            return frobenius(a, de_);
        case GroupKind::g2: {
            const double nx = frobenius(a, de_) / scales_.N;
            const double nxt = frobenius(a + de_, de_) / scales_.N;
            const double nxb = frobenius(a + 2 * de_, de_) / scales_.N_delta;
            return std::max({nx, nxt, nxb});
        }
        case GroupKind::g3: {
            const std::size_t m = de_ * df_;
            const double na = spectral_norm({a, df_, de_}) / scales_.Na;
            const double nb = spectral_norm({a + m, df_, de_}) / scales_.Nb;
            const double nc = frobenius(a + 2 * m, de_) / scales_.Nc;
            const double nd = frobenius(a + 2 * m + de_, de_) / scales_.Nd;
            return std::max({na, nb, nc, nd});
        }
    }
    return 0;
}

double Pairing::norm_x2(const double* r) const {
    switch (kind_) {
        case GroupKind::g1:
            return 2.0 * frobenius(r, dim_x2_);
        case GroupKind::g2:
            return frobenius(r, dim_x2_) / (scales_.N * scales_.N_delta);
        case GroupKind::g3:
            return frobenius(r, dim_x2_) / scales_.Nr();
    }
    return 0;
}

namespace {

void check_same(const GroupElement& w, const GroupElement& wt) {
    if (!w.pairing.same(wt.pairing))
        throw DimensionError("group elements belong to different pairings");
}

} // namespace

GroupElement identity(const Pairing& pairing) {
    return {pairing, Vec(pairing.dim_x1(), 0.0), Vec(pairing.dim_x2(), 0.0)};
}

GroupElement gmul(const GroupElement& w, const GroupElement& wt) {
    check_same(w, wt);
    GroupElement out{w.pairing, Vec(w.a.size()), Vec(w.r.size())};
    w.pairing.b(w.a.data(), wt.a.data(), out.r.data());
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = w.a[i] + wt.a[i];
    for (std::size_t i = 0; i < out.r.size(); ++i) out.r[i] += w.r[i] + wt.r[i];
    return out;
}

GroupElement ginv(const GroupElement& w) {
    GroupElement out{w.pairing, Vec(w.a.size()), Vec(w.r.size())};
    w.pairing.b(w.a.data(), w.a.data(), out.r.data());
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = -w.a[i];
    for (std::size_t i = 0; i < out.r.size(); ++i) out.r[i] -= w.r[i];
    return out;
}

double gnorm(const GroupElement& w, NormMode mode) {
    const double plain =
        std::max(w.pairing.norm_x1(w.a.data()), std::sqrt(w.pairing.norm_x2(w.r.data())));
    if (mode == NormMode::plain) return plain;
    return std::max(plain, gnorm(ginv(w), NormMode::plain));
}

double gdist(const GroupElement& w, const GroupElement& wt) {
    // |w^{-1} * w~|_sym: the left-invariant form, under which the distance of
    // two path points is the sym norm of the group increment.
    return gnorm(gmul(ginv(w), wt), NormMode::sym);
}

GroupElement IncrementPath::increment(std::size_t i, std::size_t j) const {
    if (i > j || j >= increments_from_origin.size()) throw IndexError("increment: bad pair");
    return gmul(ginv(increments_from_origin[i]), increments_from_origin[j]);
}

namespace {

// Builds distance field, checks the multiplicative increment property
// F(s,u) * F(u,t) = F(s,t), and assembles the result.
IncrementPath finish(Pairing pairing, const std::function<GroupElement(std::size_t, std::size_t)>& inc,
                     const TimeGrid& grid, double tol) {
    const std::size_t n = grid.size();
    IncrementPath out{std::move(pairing), {}, ScalarField2(grid)};
    out.increments_from_origin.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.increments_from_origin.push_back(inc(0, i));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.distance.set(i, j, gnorm(inc(i, j), NormMode::sym));

    auto residual = [&](std::size_t s, std::size_t u, std::size_t t) {
        const GroupElement lhs = gmul(inc(s, u), inc(u, t));
        const GroupElement rhs = inc(s, t);
        double m = 0;
        for (std::size_t k = 0; k < lhs.a.size(); ++k)
            m = std::max(m, std::abs(lhs.a[k] - rhs.a[k]));
        for (std::size_t k = 0; k < lhs.r.size(); ++k)
            m = std::max(m, std::abs(lhs.r[k] - rhs.r[k]));
        return m;
    };

    auto consider = [&](std::size_t s, std::size_t u, std::size_t t) {
        const double r = residual(s, u, t);
        if (r > out.residual) {
            out.residual = r;
            out.worst_triple = {s, u, t};
        }
    };

    constexpr std::size_t kExhaustive = 128;
    if (n <= kExhaustive) {
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t u = s + 1; u < n; ++u)
                for (std::size_t t = u + 1; t < n; ++t) consider(s, u, t);
    } else {
        for (std::size_t s = 0; s + 2 < n; ++s) consider(s, s + 1, s + 2);
        std::mt19937_64 rng(0xd1342543de82ef95ull ^ n);
        std::uniform_int_distribution<std::size_t> uni(0, n - 1);
        for (std::size_t m = 0; m < 20000; ++m) {
            std::size_t s = uni(rng), u = uni(rng), t = uni(rng);
            if (s > u) std::swap(s, u);
            if (u > t) std::swap(u, t);
            if (s > u) std::swap(s, u);
            if (s == u || u == t) continue;
            consider(s, u, t);
        }
    }
    if (out.residual > tol)
        throw ConsistencyError(
            "increment property fails: residual " + std::to_string(out.residual) +
            " at triple (" + std::to_string(out.worst_triple[0]) + "," +
            std::to_string(out.worst_triple[1]) + "," + std::to_string(out.worst_triple[2]) +
            ")");
    return out;
}

} // namespace

IncrementPath increment_path_g1(const rough::RoughPath& x, double tol) {
    Pairing pairing = Pairing::g1(x.dim());
    const std::size_t de = x.dim();
    auto inc = [&x, de, pairing](std::size_t i, std::size_t j) {
        GroupElement w = identity(pairing);
        x.x().increment(i, j, w.a.data());
        if (j > i) {
            const ConstMatView xx = x.xx().entry(i, j);
            std::copy(xx.p, xx.p + de * de, w.r.begin());
        }
        return w;
    };
    return finish(std::move(pairing), inc, x.grid(), tol);
}

IncrementPath increment_path_g2(const rough::RoughPath& x, const rough::RoughPath& xt,
                                ScaleConstants scales, double tol) {
    if (!(x.grid() == xt.grid()) || x.dim() != xt.dim())
        throw DimensionError("increment_path_g2: incompatible rough paths");
    Pairing pairing = Pairing::g2(x.dim(), scales);
    const std::size_t de = x.dim();
    auto inc = [&, pairing, de](std::size_t i, std::size_t j) {
        GroupElement w = identity(pairing);
        x.x().increment(i, j, w.a.data());
        xt.x().increment(i, j, w.a.data() + de);
        for (std::size_t k = 0; k < de; ++k)
            w.a[2 * de + k] = w.a[k] - w.a[de + k]; // DeltaX
        if (j > i) {
            const ConstMatView a1 = x.xx().entry(i, j);
            const ConstMatView a2 = xt.xx().entry(i, j);
            for (std::size_t k = 0; k < de * de; ++k) w.r[k] = a1.p[k] - a2.p[k];
        }
        return w;
    };
    return finish(std::move(pairing), inc, x.grid(), tol);
}

IncrementPath increment_path_g3(const rough::ControlledPath& y, const rough::ControlledPath& yt,
                                ScaleConstants scales, double tol) {
    if (!(y.y().grid() == yt.y().grid())) throw DimensionError("increment_path_g3: grids differ");
    if (y.yp().rows() != yt.yp().rows() || y.yp().cols() != yt.yp().cols())
        throw DimensionError("increment_path_g3: incompatible controlled paths");
    const std::size_t df = y.yp().rows();
    const std::size_t de = y.yp().cols();
    Pairing pairing = Pairing::g3(de, df, scales);

    const TensorField2 r1 = rough::remainder(y);
    const TensorField2 r2 = rough::remainder(yt);
    const std::size_t m = de * df;

    auto inc = [&, pairing, m, de, df](std::size_t i, std::size_t j) {
        GroupElement w = identity(pairing);
        // a = (Y~'(i,j), DeltaY'(i,j), X(i,j), DeltaX(i,j))
        const ConstMatView ypt_i = yt.yp().value(i), ypt_j = yt.yp().value(j);
        const ConstMatView yp_i = y.yp().value(i), yp_j = y.yp().value(j);
        for (std::size_t k = 0; k < m; ++k) {
            const double d_ypt = ypt_j.p[k] - ypt_i.p[k];
            const double d_yp = yp_j.p[k] - yp_i.p[k];
            w.a[k] = d_ypt;
            w.a[m + k] = d_yp - d_ypt;
        }
        y.driver().x().increment(i, j, w.a.data() + 2 * m);
        std::vector<double> xt_inc(de);
        yt.driver().x().increment(i, j, xt_inc.data());
        for (std::size_t k = 0; k < de; ++k)
            w.a[2 * m + de + k] = w.a[2 * m + k] - xt_inc[k];
        if (j > i) {
            const ConstMatView a1 = r1.entry(i, j);
            const ConstMatView a2 = r2.entry(i, j);
            for (std::size_t k = 0; k < df; ++k) w.r[k] = a1.p[k] - a2.p[k];
        }
        return w;
    };
    return finish(std::move(pairing), inc, y.y().grid(), tol);
}

} // namespace roughkit::groups
