#pragma once

#include <complex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kn/errors.hpp"

namespace kn {

// Arbitrary-precision rational, always stored in canonical reduced form.
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q);

// Parses "p/q" or "p". Throws FormatError on anything else.
Rational parse_rational(const std::string& text);

std::string rational_to_string(const Rational& q);

// Element of Q(i): exact complex scalar for the oracles. All arithmetic is
// exact; there is no rounding anywhere in this type.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussianRational(long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRational conj() const { return {re, -im}; }
    Rational norm_sq() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.norm_sq();
        if (n == 0) throw Error("GaussianRational: division by zero");
        GaussianRational p = a * b.conj();
        return {p.re / n, p.im / n};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }
};

using ExactVector = std::vector<GaussianRational>;

bool exact_is_zero(const ExactVector& v);

// (u,v) with conjugation in the second argument, exactly.
GaussianRational exact_hermitian_inner(const ExactVector& u, const ExactVector& v);

} // namespace kn
