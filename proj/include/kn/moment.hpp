#pragma once

#include "kn/representation.hpp"

namespace kn {

// mu(v) in k*, stored as the pairing values <mu(v), xi_j> against the compact
// generator basis, together with the invariant product Q used to identify
// k with k*.
struct MomentValue {
    RVec coords;
    RMat q;

    // mu^sharp = Q^{-1} coords, the dual vector in k.
    RVec sharp() const { return q.ldlt().solve(coords); }
    double norm_q_sq() const { return coords.dot(sharp()); }
    double norm_q() const { return std::sqrt(std::max(0.0, norm_q_sq())); }
    // <mu(v), xi> for compact xi in generator coordinates.
    double pair(const RVec& xi_coords) const { return coords.dot(xi_coords); }
};

// <mu(v), xi_j> = (1/2i)(xi_j v, v). Torus reps use the closed form
// (1/2) sum_i a_ij |v_i|^2.
MomentValue moment_map(const Rep& rep, const Vec& v);

// Generic evaluation through the generator matrices, kept separate so the
// torus closed form can be cross-checked against it.
MomentValue moment_map_generic(const Rep& rep, const Vec& v);

// |D - (-4 <mu(v), xi>)| where D is the central finite difference of
// t -> ||exp(i t xi) v||^2 at t = 0.
double kn_derivative_residual(const Rep& rep, const Vec& v, const LieElement& xi,
                              double h = 1e-4);

// |omega(xi v1, v2) + omega(v1, xi v2)|, the K-invariance of omega.
double invariance_residual_omega(const Rep& rep, const Vec& v1, const Vec& v2,
                                 const LieElement& xi);

// Coordinates of the operator commutator [xi, eta] in the generator basis.
// Throws BracketEscapesAlgebra if the least-squares residual exceeds 1e-9.
RVec bracket_coordinates(const Rep& rep, const RVec& xi_coords, const RVec& eta_coords);

// |<mu(v), [xi,eta]> - omega(xi v, eta v)|.
double commutator_residual(const Rep& rep, const Vec& v, const LieElement& xi,
                           const LieElement& eta);

// || mu(exp(k) v) - Ad*(exp(k)) mu(v) || in generator coordinates.
double equivariance_residual(const Rep& rep, const Vec& v, const LieElement& k);

// Matrix of ad_k on generator coordinates: column j = coords of [k, xi_j].
RMat adjoint_matrix(const Rep& rep, const RVec& k_coords);

} // namespace kn
