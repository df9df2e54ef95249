#include "kn/polynomial.hpp"

namespace kn {

namespace {
void strip(std::vector<GaussianRational>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}
} // namespace

Poly::Poly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) {
    strip(coeffs_);
}

Poly Poly::constant(GaussianRational c) {
    return Poly(std::vector<GaussianRational>{std::move(c)});
}

const GaussianRational& Poly::leading() const {
    if (is_zero()) throw Error("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<GaussianRational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = coeffs_[k] * GaussianRational(static_cast<long>(k));
    return Poly(std::move(d));
}

Poly Poly::monic() const {
    if (is_zero()) return Poly();
    std::vector<GaussianRational> c = coeffs_;
    GaussianRational lead = c.back();
    for (auto& x : c) x = x / lead;
    return Poly(std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<GaussianRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.coeffs_.size()) c[i] = c[i] + a.coeffs_[i];
        if (i < b.coeffs_.size()) c[i] = c[i] + b.coeffs_[i];
    }
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<GaussianRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.coeffs_.size()) c[i] = c[i] + a.coeffs_[i];
        if (i < b.coeffs_.size()) c[i] = c[i] - b.coeffs_[i];
    }
    return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<GaussianRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(c));
}

void Poly::divmod(const Poly& num, const Poly& den, Poly& quot, Poly& rem) {
    if (den.is_zero()) throw Error("polynomial division by zero");
    std::vector<GaussianRational> r = num.coeffs_;
    const int dd = den.degree();
    if (num.degree() < dd) {
        quot = Poly();
        rem = num;
        return;
    }
    std::vector<GaussianRational> q(static_cast<std::size_t>(num.degree() - dd) + 1);
    for (int k = num.degree() - dd; k >= 0; --k) {
        GaussianRational factor = r[static_cast<std::size_t>(k + dd)] / den.coeffs_.back();
        q[static_cast<std::size_t>(k)] = factor;
        for (int j = 0; j <= dd; ++j)
            r[static_cast<std::size_t>(k + j)] =
                r[static_cast<std::size_t>(k + j)] - factor * den.coeffs_[static_cast<std::size_t>(j)];
    }
    quot = Poly(std::move(q));
    rem = Poly(std::move(r));
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        Poly::divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::vector<Poly> yun_squarefree(const Poly& p) {
    std::vector<Poly> out;
    if (p.is_zero() || p.degree() == 0) return out;
    Poly f = p.monic();
    Poly fp = f.derivative();
    Poly a = poly_gcd(f, fp);
    Poly q, r;
    Poly::divmod(f, a, q, r); // b1 = f / gcd(f, f')
    Poly b = q;
    Poly::divmod(fp, a, q, r);
    Poly c = q; // f'/gcd
    Poly d = c - b.derivative();
    while (b.degree() > 0) {
        Poly g = poly_gcd(b, d);
        out.push_back(g.monic());
        Poly::divmod(b, g, q, r);
        b = q;
        Poly::divmod(d, g, q, r);
        c = q;
        d = c - b.derivative();
    }
    return out;
}

} // namespace kn
