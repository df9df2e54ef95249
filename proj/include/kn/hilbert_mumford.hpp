#pragma once

#include <map>
#include <optional>
#include <vector>

#include "kn/polynomial.hpp"
#include "kn/representation.hpp"

namespace kn {

// One-parameter subgroup. For tori this is an integer cocharacter; the SL(2)
// reduction carries a unitary frame diagonalizing the subgroup.
struct OnePS {
    IVec lambda;
    std::optional<Mat> frame;
};

enum class TorusVerdictKind { Closed, SemistableNotClosed, NullCone };

// Verdict of the exact torus oracle together with a machine-checkable
// certificate. Closed: positive rationals lambda_i with sum 1 and
// sum lambda_i a_i = 0 over the support. Otherwise: an integer cocharacter
// with <a_i, lambda> >= 0 on the support (all strict for NullCone).
struct TorusVerdict {
    TorusVerdictKind kind = TorusVerdictKind::Closed;
    std::vector<IVec> support;
    std::vector<Rational> closed_certificate;
    std::optional<IVec> destabilizing;
};

// Weight decomposition of v with respect to a torus cocharacter:
// component m gathers the coordinates i with <a_i, lambda> = m.
struct WeightDecomposition {
    std::map<long, ExactVector> components;
    IVec lambda;
    int dim = 0;
};

// Deduplicated support weights of v. Exact coordinates use the exact zero
// test; the floating overload treats |v_i| <= zero_tol * ||v|| as zero.
std::vector<IVec> support_weights(const Rep& rep, const ExactVector& v);
std::vector<IVec> support_weights(const Rep& rep, const Vec& v, double zero_tol);

// Hull trichotomy on a set of integer weights, decided by exact rational
// linear programming. This is the core of the torus oracle and is also used
// on floating supports.
TorusVerdict classify_weight_set(std::vector<IVec> support, int rank);
TorusVerdict classify_support(const Rep& rep, std::vector<IVec> support);

// Exact Kempf-Ness/Hilbert-Mumford trichotomy for a torus orbit.
TorusVerdict torus_orbit_oracle(const Rep& rep, const ExactVector& v);

// Integer lambda with <a_i,lambda> >= 0 on the support and > 0 somewhere,
// of minimal max-norm; nullopt iff the orbit is closed. With strict=true all
// pairings must be positive (null-cone certificate).
std::optional<IVec> find_destabilizing_1ps(const Rep& rep, const ExactVector& v);
std::optional<IVec> find_destabilizing_for_support(const std::vector<IVec>& support,
                                                   int rank, bool strict);

WeightDecomposition weight_decompose(const Rep& rep, const ExactVector& v,
                                     const OnePS& tau);

// v_0 if all negative components vanish, otherwise nothing.
std::optional<ExactVector> one_ps_limit(const WeightDecomposition& dec);

// | <mu(v), xi_tau> - (1/2) sum_m m ||v_m||^2 |.
double pairing_identity_residual(const Rep& rep, const ExactVector& v, const OnePS& tau);

// Exact pairing <mu(v), xi_lambda> = (1/2) sum_i <a_i,lambda> |v_i|^2.
Rational torus_mu_pairing_exact(const Rep& rep, const ExactVector& v, const IVec& lambda);

// --- SL(2) on binary forms -------------------------------------------------

struct Sl2Verdict {
    TorusVerdictKind kind = TorusVerdictKind::Closed;
    int max_multiplicity = 0;
    int distinct_roots = 0;
    int infinity_multiplicity = 0;
    // multiplicity -> square-free factor of the dehomogenization
    std::vector<std::pair<int, Poly>> profile;
};

// Exact classification of the SL(2) orbit of a binary form of degree d with
// Gaussian-rational coefficients (c_k = coefficient of x^{d-k} y^k).
// NullCone iff some root has multiplicity > d/2; Closed iff all
// multiplicities < d/2, or the form is c * l1^{d/2} l2^{d/2} with
// independent linear forms; SemistableNotClosed otherwise.
Sl2Verdict sl2_form_oracle(int d, const ExactVector& coeffs);

} // namespace kn
