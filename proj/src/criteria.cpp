#include "kn/criteria.hpp"

#include <cmath>
#include <random>

namespace kn {

namespace {

// Real 2n-vector view of a complex n-vector.
RVec realify(const Vec& v) {
    RVec out(2 * v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out(2 * i) = v(i).real();
        out(2 * i + 1) = v(i).imag();
    }
    return out;
}

} // namespace

std::pair<RMat, int> stabilizer_algebra_complex(const Rep& rep, const Vec& v, double tol) {
    const int m = rep.num_generators();
    const Cplx I(0.0, 1.0);
    RMat sys(2 * rep.dim(), 2 * m);
    for (int j = 0; j < m; ++j) {
        Vec xv = rep.generator(j) * v;
        sys.col(j) = realify(xv);
        sys.col(m + j) = realify(I * xv);
    }
    RMat basis = kernel_basis_real(sys, tol);
    int dim_r = static_cast<int>(basis.cols());
    if (dim_r % 2 != 0)
        throw OddKernelDimension("complex stabilizer kernel has odd real dimension");
    return {std::move(basis), dim_r / 2};
}

std::pair<RMat, int> stabilizer_algebra_compact(const Rep& rep, const Vec& v, double tol) {
    const int m = rep.num_generators();
    RMat sys(2 * rep.dim(), m);
    for (int j = 0; j < m; ++j)
        sys.col(j) = realify(rep.generator(j) * v);
    RMat basis = kernel_basis_real(sys, tol);
    return {basis, static_cast<int>(basis.cols())};
}

StabilizerReport matsushima_check(const Rep& rep, const Vec& v, double rank_tol) {
    StabilizerReport report;
    report.mu_norm = moment_map(rep, v).norm_q();
    report.dim_c_gv = stabilizer_algebra_complex(rep, v, rank_tol).second;
    report.dim_r_kv = stabilizer_algebra_compact(rep, v, rank_tol).second;
    report.real_form_holds = (report.dim_r_kv == report.dim_c_gv);
    return report;
}

double isotropic_check(const Rep& rep, const Vec& v) {
    const int m = rep.num_generators();
    std::vector<Vec> moved;
    moved.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        moved.push_back(rep.generator(j) * v);
    double worst = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            worst = std::max(worst, std::abs(symplectic_form(moved[static_cast<std::size_t>(a)],
                                                             moved[static_cast<std::size_t>(b)])));
    return worst;
}

Mat fixed_subspace(const Rep& rep, const SubgroupData& h, double tol) {
    if (h.h_generators.empty())
        return Mat::Identity(rep.dim(), rep.dim());
    const int s = static_cast<int>(h.h_generators.size());
    Mat stacked(s * rep.dim(), rep.dim());
    for (int k = 0; k < s; ++k)
        stacked.middleRows(k * rep.dim(), rep.dim()) =
            rep.lie_operator(LieElement::from_compact(h.h_generators[static_cast<std::size_t>(k)]));
    return kernel_basis(stacked, tol);
}

RMat centralizer_in_k(const Rep& rep, const std::vector<RVec>& subgenerators, double tol) {
    const int m = rep.num_generators();
    if (subgenerators.empty()) return RMat::Identity(m, m);
    RMat stacked(static_cast<Eigen::Index>(subgenerators.size()) * m, m);
    for (std::size_t k = 0; k < subgenerators.size(); ++k)
        stacked.middleRows(static_cast<Eigen::Index>(k) * m, m) =
            adjoint_matrix(rep, subgenerators[k]);
    return kernel_basis_real(stacked, tol);
}

LunaRestrictionReport luna_restriction_check(const Rep& rep, const SubgroupData& h,
                                             const Vec& v) {
    Mat vh = fixed_subspace(rep, h);
    Vec projected = vh * (vh.adjoint() * v);
    if ((projected - v).norm() > 1e-10 * std::max(1.0, v.norm()))
        throw NotFixed("luna_restriction_check: v does not lie in V^H");

    LunaRestrictionReport report;
    MomentValue mu = moment_map(rep, v);

    // (a) mu(v) pairs to zero against the Q-orthocomplement of the
    // centralizer k^{K2}.
    RMat cent = centralizer_in_k(rep, h.h_generators);
    RMat complement = kernel_basis_real(cent.transpose() * rep.inner_product(), 1e-12);
    for (Eigen::Index c = 0; c < complement.cols(); ++c)
        report.max_complement_pairing =
            std::max(report.max_complement_pairing,
                     std::abs(mu.pair(complement.col(c))));

    // (b) the restricted moment map equals the projection of mu.
    const std::vector<RVec>& k1 =
        h.k1_generators.empty() ? h.h_generators : h.k1_generators;
    MomentValue projected_mu = restricted_moment(rep, k1, v);
    double resid = 0.0;
    for (std::size_t j = 0; j < k1.size(); ++j) {
        Cplx z = hermitian_inner(rep.act_lie(LieElement::from_compact(k1[j]), v), v);
        double direct = 0.5 * z.imag();
        resid = std::max(resid, std::abs(direct - projected_mu.coords(static_cast<Eigen::Index>(j))));
    }
    report.projection_residual = resid;
    report.pass = report.max_complement_pairing <= 1e-9 && resid <= 1e-10;
    return report;
}

MomentValue restricted_moment(const Rep& rep, const std::vector<RVec>& k1_basis,
                              const Vec& v) {
    MomentValue mu = moment_map(rep, v);
    const int m1 = static_cast<int>(k1_basis.size());
    RVec coords(m1);
    RMat b(rep.num_generators(), m1);
    for (int j = 0; j < m1; ++j) {
        coords(j) = mu.pair(k1_basis[static_cast<std::size_t>(j)]);
        b.col(j) = k1_basis[static_cast<std::size_t>(j)];
    }
    RMat q1 = b.transpose() * rep.inner_product() * b;
    return {std::move(coords), std::move(q1)};
}

LunaTangentReport luna_tangent_check(const Rep& rep, const SubgroupData& h, const Vec& y) {
    Mat vh = fixed_subspace(rep, h);
    Vec projected = vh * (vh.adjoint() * y);
    if ((projected - y).norm() > 1e-10 * std::max(1.0, y.norm()))
        throw NotFixed("luna_tangent_check: y does not lie in V^H");

    LunaTangentReport report;
    const int m = rep.num_generators();

    // g.y as a complex subspace (complex span of the xi_j y).
    Mat gy(rep.dim(), m);
    for (int j = 0; j < m; ++j)
        gy.col(j) = rep.generator(j) * y;
    Eigen::JacobiSVD<Mat> svd(gy, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double top = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (top > 0.0 && sv(i) > 1e-9 * top) ++rank;
    Mat u1 = svd.matrixU().leftCols(rank);

    // S1 = (g.y) intersect V^H.
    int dim_s1 = 0;
    Mat s1_basis(rep.dim(), 0);
    if (rank > 0 && vh.cols() > 0) {
        Mat joint(rep.dim(), rank + vh.cols());
        joint.leftCols(rank) = u1;
        joint.rightCols(vh.cols()) = vh;
        Mat null = kernel_basis(joint, 1e-9);
        dim_s1 = static_cast<int>(null.cols());
        s1_basis.resize(rep.dim(), dim_s1);
        for (Eigen::Index c = 0; c < null.cols(); ++c)
            s1_basis.col(c) = u1 * null.col(c).head(rank);
    }
    report.dim_s1 = dim_s1;

    // S2 = g^H.y with g^H the complexified bracket-centralizer.
    RMat cent = centralizer_in_k(rep, h.h_generators);
    Mat s2(rep.dim(), cent.cols());
    for (Eigen::Index c = 0; c < cent.cols(); ++c)
        s2.col(c) = rep.act_lie(LieElement::from_compact(cent.col(c)), y);
    std::vector<Vec> s2_cols;
    for (Eigen::Index c = 0; c < s2.cols(); ++c)
        if (s2.col(c).norm() > 1e-12) s2_cols.push_back(s2.col(c));
    report.dim_s2 = subspace_dimension(s2_cols, 1e-9);

    // Containment S2 <= S1.
    double resid = 0.0;
    if (!s2_cols.empty()) {
        Eigen::JacobiSVD<Mat> s1_svd(s1_basis, Eigen::ComputeThinU);
        int r1 = 0;
        if (s1_basis.cols() > 0) {
            const auto& sv1 = s1_svd.singularValues();
            for (Eigen::Index i = 0; i < sv1.size(); ++i)
                if (sv1(0) > 0.0 && sv1(i) > 1e-9 * sv1(0)) ++r1;
        }
        Mat p = r1 > 0 ? Mat(s1_svd.matrixU().leftCols(r1)) : Mat(rep.dim(), 0);
        for (const auto& w : s2_cols) {
            Vec res = w - p * (p.adjoint() * w);
            resid = std::max(resid, res.norm() / w.norm());
        }
    }
    report.containment_residual = resid;
    report.pass = (report.dim_s1 == report.dim_s2) && resid <= 1e-8;
    return report;
}

std::optional<IMat> adapted_torus_weights(const Rep& rep, const std::vector<RVec>& basis,
                                          double tol) {
    if (basis.empty()) return std::nullopt;
    IMat weights(rep.dim(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        Mat op = rep.lie_operator(LieElement::from_compact(basis[j]));
        for (int r = 0; r < rep.dim(); ++r)
            for (int c = 0; c < rep.dim(); ++c)
                if (r != c && std::abs(op(r, c)) > tol) return std::nullopt;
        for (int i = 0; i < rep.dim(); ++i) {
            Cplx d = op(i, i);
            double rounded = std::round(d.imag());
            if (std::abs(d.real()) > tol || std::abs(d.imag() - rounded) > tol)
                return std::nullopt;
            weights(i, static_cast<Eigen::Index>(j)) = static_cast<int>(rounded);
        }
    }
    return weights;
}

TorusVerdict adapted_torus_classify(const IMat& weights, const Vec& v, double zero_tol) {
    std::vector<IVec> support;
    const double cutoff = zero_tol * v.norm();
    for (int i = 0; i < weights.rows(); ++i) {
        if (std::abs(v(i)) <= cutoff) continue;
        IVec w = weights.row(i).transpose();
        bool seen = false;
        for (const auto& x : support)
            if (x == w) {
                seen = true;
                break;
            }
        if (!seen) support.push_back(std::move(w));
    }
    return classify_weight_set(std::move(support), static_cast<int>(weights.cols()));
}

SamplerResult stability_sampler(const Rep& rep, const ExactVector& v0,
                                const std::vector<RVec>& k1_basis, int n_samples,
                                std::uint64_t seed) {
    Vec base = rep.embed(v0);
    if (moment_map(rep, base).norm_q() > 1e-8)
        throw BasePointNotCritical("stability_sampler: base point is not a moment-map zero");

    auto weights = adapted_torus_weights(rep, k1_basis);
    KNOptions fallback_options;

    SamplerResult result;
    result.n_samples = n_samples;
    result.seed = seed;
    int closed = 0;
    for (int i = 0; i < n_samples; ++i) {
        // per-sample substream: deterministic regardless of sharding
        std::mt19937_64 eng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        RVec k(rep.num_generators());
        for (int j = 0; j < rep.num_generators(); ++j) k(j) = gauss(eng);
        Vec sample = rep.act_group(LieElement::from_compact(k), base);

        VerdictKind kind;
        if (weights) {
            kind = [&] {
                switch (adapted_torus_classify(*weights, sample).kind) {
                    case TorusVerdictKind::Closed: return VerdictKind::Closed;
                    case TorusVerdictKind::SemistableNotClosed: return VerdictKind::NotClosed;
                    case TorusVerdictKind::NullCone: return VerdictKind::NullCone;
                }
                return VerdictKind::Inconclusive;
            }();
        } else {
            // Generic subgroup: flow under the restricted action.
            Rep sub = Rep::custom([&] {
                std::vector<Mat> gens;
                for (const auto& b : k1_basis)
                    gens.push_back(rep.lie_operator(LieElement::from_compact(b)));
                return gens;
            }());
            kind = classify_orbit(sub, sample, fallback_options).kind;
        }
        if (kind == VerdictKind::Closed)
            ++closed;
        else
            result.exceptions.push_back({i, kind});
    }
    result.closed_fraction = n_samples > 0 ? static_cast<double>(closed) / n_samples : 1.0;
    return result;
}

} // namespace kn
