#pragma once

#include <vector>

#include "kn/rational.hpp"

namespace kn {

// Dense univariate polynomial over Q(i), coefficients in ascending degree
// order with no trailing zeros. The zero polynomial has empty coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<GaussianRational> coeffs);

    static Poly constant(GaussianRational c);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    const GaussianRational& leading() const;

    Poly derivative() const;
    Poly monic() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    // Exact division with remainder; divisor must be nonzero.
    static void divmod(const Poly& num, const Poly& den, Poly& quot, Poly& rem);

private:
    std::vector<GaussianRational> coeffs_;
};

// Monic gcd by the Euclidean algorithm. gcd(0,0) = 0.
Poly poly_gcd(Poly a, Poly b);

// Yun's square-free decomposition: p = c * prod_k factors[k-1]^k with each
// factor square-free and pairwise coprime. Factors of degree zero are
// returned as constants 1.
std::vector<Poly> yun_squarefree(const Poly& p);

} // namespace kn
