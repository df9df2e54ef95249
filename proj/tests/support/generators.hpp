#pragma once

#include <random>

#include "kn/representation.hpp"

namespace kn::testsupport {

struct TorusInstance {
    IMat weights;
    ExactVector v;
};

// Random torus instance: rank <= 3, dim <= 8, weights in [-5,5], coordinates
// with numerators/denominators bounded by 9 and a 1/4 chance of being forced
// to zero.
TorusInstance random_torus_instance(std::mt19937_64& eng);

// Random exact binary-form coefficient vector of degree d (never all zero).
ExactVector random_binary_form(std::mt19937_64& eng, int d);

// Monomial coefficient vector of x^{d-k} y^k scaled by c.
ExactVector monomial_form(int d, int k, const GaussianRational& c = GaussianRational(1));

} // namespace kn::testsupport
