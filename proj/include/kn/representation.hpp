#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kn/linalg.hpp"
#include "kn/rational.hpp"

namespace kn {

enum class RepKind { Torus, BinaryForm, Custom };

// Element of g = k + ik, in coordinates against the compact generator basis.
// The represented operator is
//     sum_j compact(j) * Xi_j  -  i * sum_j hermitian(j) * Xi_j,
// so purely compact elements are skew-hermitian and purely hermitian ones
// hermitian. For a torus this makes act_group with hermitian coordinates x
// scale coordinate i by exp(<a_i, x>).
struct LieElement {
    RVec compact;
    RVec hermitian;

    static LieElement zero(int m) { return {RVec::Zero(m), RVec::Zero(m)}; }
    static LieElement from_compact(RVec c) {
        RVec h = RVec::Zero(c.size());
        return {std::move(c), std::move(h)};
    }
    static LieElement from_hermitian(RVec h) {
        RVec c = RVec::Zero(h.size());
        return {std::move(c), std::move(h)};
    }
    bool is_compact() const { return hermitian.isZero(0.0); }
    bool is_hermitian() const { return compact.isZero(0.0); }
};

// A linear action of a compact group K (and its complexification) on C^n.
// Generators are the images of a real basis of k, always skew-hermitian in
// the coordinates used by the floating-point layer. For binary forms those
// coordinates are the orthonormalized monomial basis; exact monomial
// coefficient vectors are converted by embed().
class Rep {
public:
    static Rep torus(const IMat& weights);
    static Rep binary_form(int degree);
    static Rep custom(std::vector<Mat> generators, std::string label = "");

    RepKind kind() const { return kind_; }
    int dim() const { return dim_; }
    int num_generators() const { return static_cast<int>(generators_.size()); }
    const std::vector<Mat>& generators() const { return generators_; }
    const Mat& generator(int j) const { return generators_.at(static_cast<std::size_t>(j)); }

    // n x r integer weight matrix; torus only.
    const IMat& weights() const;
    int torus_rank() const;
    int degree() const { return degree_; }
    const std::string& label() const { return label_; }

    // Invariant scalar product on k in the generator basis.
    const RMat& inner_product() const { return q_; }

    // Operator of a general Lie algebra element.
    Mat lie_operator(const LieElement& g) const;

    // Infinitesimal action: the operator of xi applied to v.
    Vec act_lie(const LieElement& xi, const Vec& v) const;

    // exp of the represented operator applied to v. Torus group elements use
    // the closed form exp(<a_i,x> + i<a_i,theta>) per coordinate.
    Vec act_group(const LieElement& g, const Vec& v) const;

    // exp(i t xi) v for compact xi given by generator coordinates.
    // This is the Kempf-Ness flow curve; for a torus, coordinate i is
    // scaled by exp(-t <a_i, xi>).
    Vec flow_point(const RVec& xi_coords, double t, const Vec& v) const;

    // Exact monomial/coordinate vector to the floating coordinates of the
    // generator matrices. Identity for torus and custom reps; binary forms
    // rescale monomial coefficients into the orthonormal basis.
    Vec embed(const ExactVector& v) const;

    // Weighted norm-square of an exact binary form (or plain norm-square for
    // torus/custom), computed exactly.
    Rational exact_norm_sq(const ExactVector& v) const;

private:
    Rep() = default;
    void check_dim(Eigen::Index n) const;

    RepKind kind_ = RepKind::Custom;
    int dim_ = 0;
    IMat weights_;       // torus
    int degree_ = 0;     // binary form
    std::vector<Mat> generators_;
    std::vector<double> embed_scale_; // binary form: 1/sqrt(binom(d,k))
    std::vector<Rational> embed_scale_sq_exact_;
    RMat q_;
    std::string label_;
};

// Convenience constructors mirroring the scenario families.
Rep build_torus_rep(const IMat& weights);
Rep build_binary_form_rep(int degree);

// Exact binomial coefficient.
Rational binomial_exact(int n, int k);

} // namespace kn
