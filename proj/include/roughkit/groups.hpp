#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "roughkit/field.hpp"
#include "roughkit/linalg.hpp"
#include "roughkit/roughpath.hpp"

namespace roughkit::groups {

/// Tunable scaling constants of the weighted norms: G2 carries (N, N_delta),
/// G3 carries (N_a, N_b, N_c, N_d) with derived N_r = N_a N_d + N_b N_c.
/// Zero or tiny values are clamped to a floor to avoid division blow-ups on
/// degenerate inputs.
struct ScaleConstants {
    double N = 1.0, N_delta = 1.0;
    double Na = 1.0, Nb = 1.0, Nc = 1.0, Nd = 1.0;

    static constexpr double kFloor = 1e-300;

    void clamp() {
        for (double* v : {&N, &N_delta, &Na, &Nb, &Nc, &Nd})
            if (*v < kFloor) *v = kFloor;
    }
    double Nr() const { return Na * Nd + Nb * Nc; }
    void validate() const {
        for (double v : {N, N_delta, Na, Nb, Nc, Nd})
            if (!(v > 0)) throw ParameterError("ScaleConstants: all constants must be > 0");
    }
};

enum class GroupKind { g1, g2, g3 };

/// Bilinear pairing B : X1 x X1 -> X2 with weighted norms such that |B| <= 2.
/// Elements of X1/X2 are stored flat:
///   G1: X1 = E (dim de),              X2 = E(x)E (de^2)
///   G2: X1 = E + E + E (3 de),        X2 = E(x)E (de^2)
///   G3: X1 = L(E,F) + L(E,F) + E + E, X2 = F (df)
class Pairing {
public:
    static Pairing g1(std::size_t de);
    static Pairing g2(std::size_t de, ScaleConstants scales = {});
    static Pairing g3(std::size_t de, std::size_t df, ScaleConstants scales = {});

    GroupKind kind() const { return kind_; }
    std::size_t de() const { return de_; }
    std::size_t df() const { return df_; }
    const ScaleConstants& scales() const { return scales_; }
    std::size_t dim_x1() const { return dim_x1_; }
    std::size_t dim_x2() const { return dim_x2_; }

    /// out = B(a, a~), flat X2 block.
    void b(const double* a, const double* at, double* out) const;

    /// Weighted X1 norm (Euclidean / operator-norm components with divisors).
    double norm_x1(const double* a) const;
    /// Weighted X2 norm (2|.| for G1, |.|/(N N_delta) for G2, |.|/N_r for G3).
    double norm_x2(const double* r) const;

    bool same(const Pairing& o) const {
        return kind_ == o.kind_ && de_ == o.de_ && df_ == o.df_;
    }

private:
    Pairing(GroupKind k, std::size_t de, std::size_t df, ScaleConstants sc);

    GroupKind kind_;
    std::size_t de_, df_;
    ScaleConstants scales_;
    std::size_t dim_x1_, dim_x2_;
};

/// Element (a, r) of the graded group X1 x X2 under (a,r)*(a~,r~) = (a+a~, r+r~+B(a,a~)).
/// Elements carry their pairing by value (it is a small POD-like descriptor);
/// binary operations require structurally identical pairings and evaluate the
/// product with the left operand's scale constants.
struct GroupElement {
    Pairing pairing;
    Vec a;
    Vec r;
};

GroupElement identity(const Pairing& pairing);
GroupElement gmul(const GroupElement& w, const GroupElement& wt);
/// (a, r)^{-1} = (-a, -r + B(a, a)).
GroupElement ginv(const GroupElement& w);

enum class NormMode { plain, sym };

/// plain: max(|a|_{X1}, |r|_{X2}^{1/2}); sym: max(plain(w), plain(w^{-1})).
double gnorm(const GroupElement& w, NormMode mode = NormMode::plain);
/// Left-invariant metric d(w, w~) = |w^{-1} * w~|_sym.
double gdist(const GroupElement& w, const GroupElement& wt);

/// Group-increment representation of rough-path data, with the scalar distance
/// field d(i, j) = |F(i,j)|_sym for the variation/besov modules.
struct IncrementPath {
    Pairing pairing;
    std::vector<GroupElement> increments_from_origin; // W_i = F(0, i)
    ScalarField2 distance;
    double residual = 0.0; // worst |F(s,u)*F(u,t) - F(s,t)| over checked triples
    std::array<std::size_t, 3> worst_triple{0, 0, 0};

    GroupElement increment(std::size_t i, std::size_t j) const;
};

/// G1: F(s,t) = (X(s,t), XX(s,t)).
IncrementPath increment_path_g1(const rough::RoughPath& x, double tol = 1e-9);

/// G2: F(s,t) = (X(s,t), X~(s,t), DeltaX(s,t); DeltaXX(s,t)).
IncrementPath increment_path_g2(const rough::RoughPath& x, const rough::RoughPath& xt,
                                ScaleConstants scales = {}, double tol = 1e-9);

/// G3: F(s,t) = (Y~'(s,t), DeltaY'(s,t), X(s,t), DeltaX(s,t); DeltaR(s,t)).
IncrementPath increment_path_g3(const rough::ControlledPath& y,
                                const rough::ControlledPath& yt,
                                ScaleConstants scales = {}, double tol = 1e-9);

} // namespace roughkit::groups
