#pragma once

#include <optional>
#include <vector>

#include "kn/kempf_ness.hpp"

namespace kn {

// Real bases of the compact forms k2 (of H) and optionally k1 (of N_G(H)),
// given by coordinates against the ambient compact generator basis.
struct SubgroupData {
    std::vector<RVec> h_generators;
    std::vector<RVec> k1_generators;
};

struct StabilizerReport {
    int dim_c_gv = 0;
    int dim_r_kv = 0;
    double mu_norm = 0.0;
    bool real_form_holds = false;
};

// Kernel of (c,h) -> (sum c_j xi_j + i sum h_j xi_j) v as a real subspace of
// R^{2m}; the kernel is complex-stable, so its real dimension is even and
// dim_C = dim_R / 2. Returns (basis columns, dim_C).
std::pair<RMat, int> stabilizer_algebra_complex(const Rep& rep, const Vec& v,
                                                double tol = 1e-6);

// Kernel of c -> (sum c_j xi_j) v over the compact basis; returns
// (basis columns, dim_R).
std::pair<RMat, int> stabilizer_algebra_compact(const Rep& rep, const Vec& v,
                                                double tol = 1e-6);

StabilizerReport matsushima_check(const Rep& rep, const Vec& v, double rank_tol = 1e-6);

// max over compact-basis pairs (a,b) of |omega(xi_a v, xi_b v)|.
double isotropic_check(const Rep& rep, const Vec& v);

// Orthonormal basis (columns) of the joint kernel V^H of the subgenerator
// actions.
Mat fixed_subspace(const Rep& rep, const SubgroupData& h, double tol = 1e-9);

// Basis (coordinate columns) of the bracket-centralizer of the subgenerators
// inside k.
RMat centralizer_in_k(const Rep& rep, const std::vector<RVec>& subgenerators,
                      double tol = 1e-9);

struct LunaRestrictionReport {
    double max_complement_pairing = 0.0; // check (a)
    double projection_residual = 0.0;    // check (b)
    bool pass = false;
};

LunaRestrictionReport luna_restriction_check(const Rep& rep, const SubgroupData& h,
                                             const Vec& v);

struct LunaTangentReport {
    int dim_s1 = 0; // (g.y) intersect V^H
    int dim_s2 = 0; // g^H.y
    double containment_residual = 0.0;
    bool pass = false;
};

LunaTangentReport luna_tangent_check(const Rep& rep, const SubgroupData& h, const Vec& y);

// Q-orthogonal projection of mu(v) onto the k1 coordinates; agrees with the
// direct evaluation of the restricted moment map.
MomentValue restricted_moment(const Rep& rep, const std::vector<RVec>& k1_basis,
                              const Vec& v);

struct SamplerException {
    int sample_index = -1;
    VerdictKind verdict = VerdictKind::Inconclusive;
};

struct SamplerResult {
    int n_samples = 0;
    std::uint64_t seed = 0;
    double closed_fraction = 0.0;
    std::vector<SamplerException> exceptions;
};

// Draws seeded random compact elements k, forms k.v0, and classifies the
// H1-orbit of each sample. H1 must act as a torus in adapted (diagonal)
// coordinates; the exact hull oracle then classifies each sampled support.
SamplerResult stability_sampler(const Rep& rep, const ExactVector& v0,
                                const std::vector<RVec>& k1_basis, int n_samples,
                                std::uint64_t seed);

// Integer weight matrix of a torus subalgebra acting diagonally in the rep
// coordinates; nullopt if some generator is non-diagonal or has non-integer
// spectrum.
std::optional<IMat> adapted_torus_weights(const Rep& rep, const std::vector<RVec>& basis,
                                          double tol = 1e-9);

// Classifies the orbit of a floating vector under an adapted torus subalgebra.
TorusVerdict adapted_torus_classify(const IMat& weights, const Vec& v, double zero_tol = 1e-9);

} // namespace kn
