#include "kn/moment.hpp"

#include <cmath>

namespace kn {

MomentValue moment_map_generic(const Rep& rep, const Vec& v) {
    if (v.size() != rep.dim())
        throw DimensionError("moment_map: dimension mismatch");
    const int m = rep.num_generators();
    RVec coords(m);
    double scale = std::max(1.0, v.squaredNorm());
    for (int j = 0; j < m; ++j) {
        Cplx z = hermitian_inner(rep.generator(j) * v, v);
        // (1/2i) z is real for skew-hermitian generators; Re(z) is roundoff.
        if (std::abs(z.real()) > 1e-12 * scale * std::max(1.0, rep.generator(j).norm()))
            throw Error("moment_map: pairing has a non-negligible real part");
        coords(j) = 0.5 * z.imag();
    }
    return {std::move(coords), rep.inner_product()};
}

MomentValue moment_map(const Rep& rep, const Vec& v) {
    if (rep.kind() == RepKind::Torus) {
        if (v.size() != rep.dim())
            throw DimensionError("moment_map: dimension mismatch");
        const IMat& a = rep.weights();
        RVec coords = RVec::Zero(a.cols());
        for (int i = 0; i < rep.dim(); ++i) {
            double w = std::norm(v(i));
            for (int j = 0; j < a.cols(); ++j)
                coords(j) += 0.5 * a(i, j) * w;
        }
        return {std::move(coords), rep.inner_product()};
    }
    return moment_map_generic(rep, v);
}

double kn_derivative_residual(const Rep& rep, const Vec& v, const LieElement& xi,
                              double h) {
    if (!xi.is_compact())
        throw Error("kn_derivative_residual: xi must be purely compact");
    MomentValue mu = moment_map(rep, v);
    double target = -4.0 * mu.pair(xi.compact);
    double fp = rep.flow_point(xi.compact, h, v).squaredNorm();
    double fm = rep.flow_point(xi.compact, -h, v).squaredNorm();
    double d = (fp - fm) / (2.0 * h);
    return std::abs(d - target);
}

double invariance_residual_omega(const Rep& rep, const Vec& v1, const Vec& v2,
                                 const LieElement& xi) {
    Vec xv1 = rep.act_lie(xi, v1);
    Vec xv2 = rep.act_lie(xi, v2);
    return std::abs(symplectic_form(xv1, v2) + symplectic_form(v1, xv2));
}

RVec bracket_coordinates(const Rep& rep, const RVec& xi_coords, const RVec& eta_coords) {
    const int m = rep.num_generators();
    const int n = rep.dim();
    Mat a = rep.lie_operator(LieElement::from_compact(xi_coords));
    Mat b = rep.lie_operator(LieElement::from_compact(eta_coords));
    Mat comm = a * b - b * a;

    // Least squares over R: vectorize real and imaginary parts.
    RMat g(2 * n * n, m);
    RVec rhs(2 * n * n);
    for (int j = 0; j < m; ++j) {
        Eigen::Index p = 0;
        const Mat& gen = rep.generator(j);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                g(p++, j) = gen(r, c).real();
                g(p++, j) = gen(r, c).imag();
            }
    }
    {
        Eigen::Index p = 0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                rhs(p++) = comm(r, c).real();
                rhs(p++) = comm(r, c).imag();
            }
    }
    RVec sol = g.colPivHouseholderQr().solve(rhs);
    double resid = (g * sol - rhs).norm();
    if (resid > 1e-9 * std::max(1.0, comm.norm()))
        throw BracketEscapesAlgebra("commutator is not in the span of the compact generators");
    return sol;
}

double commutator_residual(const Rep& rep, const Vec& v, const LieElement& xi,
                           const LieElement& eta) {
    if (!xi.is_compact() || !eta.is_compact())
        throw Error("commutator_residual: arguments must be purely compact");
    RVec bracket = bracket_coordinates(rep, xi.compact, eta.compact);
    MomentValue mu = moment_map(rep, v);
    double lhs = mu.pair(bracket);
    double rhs = symplectic_form(rep.act_lie(xi, v), rep.act_lie(eta, v));
    return std::abs(lhs - rhs);
}

RMat adjoint_matrix(const Rep& rep, const RVec& k_coords) {
    const int m = rep.num_generators();
    RMat ad(m, m);
    for (int j = 0; j < m; ++j) {
        RVec ej = RVec::Zero(m);
        ej(j) = 1.0;
        ad.col(j) = bracket_coordinates(rep, k_coords, ej);
    }
    return ad;
}

double equivariance_residual(const Rep& rep, const Vec& v, const LieElement& k) {
    if (!k.is_compact())
        throw Error("equivariance_residual: k must be purely compact");
    Vec moved = rep.act_group(k, v);
    MomentValue lhs = moment_map(rep, moved);

    // <mu(kv), xi> = <mu(v), Ad(exp(-k)) xi>, i.e. coords transform by
    // exp(-ad_k)^T.
    RMat ad = adjoint_matrix(rep, k.compact);
    Mat neg_ad = (-ad).cast<Cplx>();
    RMat transport = matrix_exp(neg_ad).real();
    MomentValue mu = moment_map(rep, v);
    RVec rhs = transport.transpose() * mu.coords;
    return (lhs.coords - rhs).norm();
}

} // namespace kn
