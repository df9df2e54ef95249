#include "kn/representation.hpp"

#include <cmath>

namespace kn {

Rational binomial_exact(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    boost::multiprecision::cpp_int num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return Rational(num, den);
}

Rep Rep::torus(const IMat& weights) {
    if (weights.rows() < 1 || weights.cols() < 1)
        throw FormatError("torus rep needs a nonempty weight matrix");
    Rep rep;
    rep.kind_ = RepKind::Torus;
    rep.dim_ = static_cast<int>(weights.rows());
    rep.weights_ = weights;
    const int r = static_cast<int>(weights.cols());
    for (int j = 0; j < r; ++j) {
        Mat g = Mat::Zero(rep.dim_, rep.dim_);
        for (int i = 0; i < rep.dim_; ++i)
            g(i, i) = Cplx(0.0, static_cast<double>(weights(i, j)));
        rep.generators_.push_back(std::move(g));
    }
    rep.q_ = RMat::Identity(r, r);
    return rep;
}

Rep Rep::binary_form(int degree) {
    if (degree < 1)
        throw FormatError("binary form degree must be >= 1");
    Rep rep;
    rep.kind_ = RepKind::BinaryForm;
    rep.degree_ = degree;
    const int n = degree + 1;
    rep.dim_ = n;

    // su(2) basis in the defining rep:
    //   X1 = [[ i, 0],[0,-i]],  X2 = [[0,1],[-1,0]],  X3 = [[0,i],[i,0]].
    // Extended as derivations to monomials m_k = x^{d-k} y^k: with
    // xi.x = a x + c y, xi.y = b x + d y,
    //   xi.m_k = ((d-k)a + k d) m_k + (d-k)c? ... see build below.
    struct Defining { Cplx a, b, c, d; };
    const Cplx I(0.0, 1.0);
    std::vector<Defining> basis = {
        {I, Cplx(0), Cplx(0), -I},
        {Cplx(0), Cplx(1), Cplx(-1), Cplx(0)},
        {Cplx(0), I, I, Cplx(0)},
    };

    std::vector<double> scale(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Rational b = binomial_exact(degree, k);
        rep.embed_scale_sq_exact_.push_back(Rational(1) / b);
        scale[static_cast<std::size_t>(k)] = 1.0 / std::sqrt(to_double(b));
    }
    rep.embed_scale_ = scale;

    for (const auto& x : basis) {
        // Monomial-basis action: xi.x = x.a * x + x.c * y (column vector
        // convention), xi.y = x.b * x + x.d * y, extended as a derivation:
        //   xi.m_k = ((d-k) x.a + k x.d) m_k
        //          + (d-k) x.c m_{k+1} + k x.b m_{k-1}.
        Mat m = Mat::Zero(n, n);
        for (int k = 0; k < n; ++k) {
            m(k, k) = static_cast<double>(degree - k) * x.a + static_cast<double>(k) * x.d;
            if (k + 1 < n) m(k + 1, k) = static_cast<double>(degree - k) * x.c;
            if (k - 1 >= 0) m(k - 1, k) = static_cast<double>(k) * x.b;
        }
        // Conjugate into the orthonormal basis u_k = sqrt(binom(d,k)) m_k.
        Mat a = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a(i, j) = m(i, j) * scale[static_cast<std::size_t>(i)] /
                          scale[static_cast<std::size_t>(j)];
        if (!is_skew_hermitian(a, 1e-12))
            throw Error("binary form generator failed the skew-hermitian postcondition");
        rep.generators_.push_back(std::move(a));
    }

    // Trace form -tr(xi eta) on the defining 2x2 matrices: 2 * identity.
    rep.q_ = 2.0 * RMat::Identity(3, 3);
    return rep;
}

Rep Rep::custom(std::vector<Mat> generators, std::string label) {
    if (generators.empty())
        throw FormatError("custom rep needs at least one generator");
    Rep rep;
    rep.kind_ = RepKind::Custom;
    rep.dim_ = static_cast<int>(generators.front().rows());
    for (const auto& g : generators) {
        if (g.rows() != rep.dim_ || g.cols() != rep.dim_)
            throw DimensionError("custom rep: generator shape mismatch");
        if (!is_skew_hermitian(g, 1e-12))
            throw FormatError("custom rep: generator is not skew-hermitian");
    }
    // Independence over R of the vectorized generators.
    std::vector<RVec> vecs;
    for (const auto& g : generators) {
        RVec v(2 * rep.dim_ * rep.dim_);
        Eigen::Index p = 0;
        for (int i = 0; i < rep.dim_; ++i)
            for (int j = 0; j < rep.dim_; ++j) {
                v(p++) = g(i, j).real();
                v(p++) = g(i, j).imag();
            }
        vecs.push_back(std::move(v));
    }
    if (subspace_dimension_real(vecs) != static_cast<int>(generators.size()))
        throw FormatError("custom rep: generators are linearly dependent over R");

    const int m = static_cast<int>(generators.size());
    RMat q(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            q(a, b) = (generators[static_cast<std::size_t>(a)].adjoint() *
                       generators[static_cast<std::size_t>(b)])
                          .trace()
                          .real();
    rep.generators_ = std::move(generators);
    rep.q_ = std::move(q);
    rep.label_ = std::move(label);
    return rep;
}

const IMat& Rep::weights() const {
    if (kind_ != RepKind::Torus)
        throw Error("weights() is only defined for torus reps");
    return weights_;
}

int Rep::torus_rank() const {
    return static_cast<int>(weights().cols());
}

void Rep::check_dim(Eigen::Index n) const {
    if (n != dim_)
        throw DimensionError("vector dimension does not match representation");
}

Mat Rep::lie_operator(const LieElement& g) const {
    if (g.compact.size() != num_generators() || g.hermitian.size() != num_generators())
        throw DimensionError("LieElement coordinate count mismatch");
    Mat op = Mat::Zero(dim_, dim_);
    const Cplx I(0.0, 1.0);
    for (int j = 0; j < num_generators(); ++j)
        op += (Cplx(g.compact(j)) - I * Cplx(g.hermitian(j))) * generators_[static_cast<std::size_t>(j)];
    return op;
}

Vec Rep::act_lie(const LieElement& xi, const Vec& v) const {
    check_dim(v.size());
    return lie_operator(xi) * v;
}

Vec Rep::act_group(const LieElement& g, const Vec& v) const {
    check_dim(v.size());
    if (g.compact.size() != num_generators() || g.hermitian.size() != num_generators())
        throw DimensionError("LieElement coordinate count mismatch");
    if (kind_ == RepKind::Torus) {
        Vec out(dim_);
        for (int i = 0; i < dim_; ++i) {
            double re = 0.0, im = 0.0;
            for (int j = 0; j < torus_rank(); ++j) {
                re += weights_(i, j) * g.hermitian(j);
                im += weights_(i, j) * g.compact(j);
            }
            out(i) = std::exp(Cplx(re, im)) * v(i);
        }
        return out;
    }
    return matrix_exp(lie_operator(g)) * v;
}

Vec Rep::flow_point(const RVec& xi_coords, double t, const Vec& v) const {
    check_dim(v.size());
    if (xi_coords.size() != num_generators())
        throw DimensionError("flow_point: coordinate count mismatch");
    // exp(i t xi) with xi compact == group element with hermitian part -t*xi.
    if (kind_ == RepKind::Torus) {
        Vec out(dim_);
        for (int i = 0; i < dim_; ++i) {
            double e = 0.0;
            for (int j = 0; j < torus_rank(); ++j)
                e += weights_(i, j) * xi_coords(j);
            out(i) = std::exp(-t * e) * v(i);
        }
        return out;
    }
    Mat op = Mat::Zero(dim_, dim_);
    const Cplx it(0.0, t);
    for (int j = 0; j < num_generators(); ++j)
        op += it * Cplx(xi_coords(j)) * generators_[static_cast<std::size_t>(j)];
    return matrix_exp(op) * v;
}

Vec Rep::embed(const ExactVector& v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw DimensionError("embed: vector dimension mismatch");
    Vec out = exact_to_floating(v);
    if (kind_ == RepKind::BinaryForm)
        for (int i = 0; i < dim_; ++i)
            out(i) *= embed_scale_[static_cast<std::size_t>(i)];
    return out;
}

Rational Rep::exact_norm_sq(const ExactVector& v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw DimensionError("exact_norm_sq: vector dimension mismatch");
    Rational acc(0);
    for (int i = 0; i < dim_; ++i) {
        Rational term = v[static_cast<std::size_t>(i)].norm_sq();
        if (kind_ == RepKind::BinaryForm)
            term *= embed_scale_sq_exact_[static_cast<std::size_t>(i)];
        acc += term;
    }
    return acc;
}

Rep build_torus_rep(const IMat& weights) { return Rep::torus(weights); }
Rep build_binary_form_rep(int degree) { return Rep::binary_form(degree); }

} // namespace kn
