#include "kn/hilbert_mumford.hpp"

#include <algorithm>
#include <cmath>

#include "kn/moment.hpp"
#include "kn/simplex.hpp"

namespace kn {

namespace {

bool contains_weight(const std::vector<IVec>& ws, const IVec& w) {
    for (const auto& x : ws)
        if (x == w) return true;
    return false;
}

long pairing(const IVec& weight, const IVec& lambda) {
    long s = 0;
    for (Eigen::Index j = 0; j < weight.size(); ++j)
        s += static_cast<long>(weight(j)) * static_cast<long>(lambda(j));
    return s;
}

// Verifies a Closed certificate exactly: lambda_i > 0, sum lambda_i = 1,
// sum lambda_i a_i = 0.
void verify_closed_certificate(const std::vector<IVec>& support,
                               const std::vector<Rational>& lambda, int rank) {
    if (lambda.size() != support.size())
        throw Error("torus oracle: certificate length mismatch");
    Rational total(0);
    std::vector<Rational> combo(static_cast<std::size_t>(rank), Rational(0));
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (lambda[i] <= 0) throw Error("torus oracle: certificate not positive");
        total += lambda[i];
        for (int j = 0; j < rank; ++j)
            combo[static_cast<std::size_t>(j)] += lambda[i] * support[i](j);
    }
    if (total != 1) throw Error("torus oracle: certificate does not sum to 1");
    for (const auto& c : combo)
        if (c != 0) throw Error("torus oracle: certificate combination is nonzero");
}

void verify_destabilizing(const std::vector<IVec>& support, const IVec& lambda,
                          bool strict) {
    bool some_positive = false, some_zero = false;
    for (const auto& w : support) {
        long m = pairing(w, lambda);
        if (m < 0) throw Error("torus oracle: destabilizing certificate has a negative pairing");
        if (m > 0) some_positive = true;
        if (m == 0) some_zero = true;
    }
    if (!some_positive)
        throw Error("torus oracle: destabilizing certificate has no positive pairing");
    if (strict && some_zero)
        throw Error("torus oracle: null-cone certificate has a zero pairing");
}

} // namespace

std::vector<IVec> support_weights(const Rep& rep, const ExactVector& v) {
    if (static_cast<int>(v.size()) != rep.dim())
        throw DimensionError("support_weights: dimension mismatch");
    const IMat& a = rep.weights();
    std::vector<IVec> out;
    for (int i = 0; i < rep.dim(); ++i) {
        if (v[static_cast<std::size_t>(i)].is_zero()) continue;
        IVec w = a.row(i).transpose();
        if (!contains_weight(out, w)) out.push_back(std::move(w));
    }
    return out;
}

std::vector<IVec> support_weights(const Rep& rep, const Vec& v, double zero_tol) {
    if (v.size() != rep.dim())
        throw DimensionError("support_weights: dimension mismatch");
    const IMat& a = rep.weights();
    const double cutoff = zero_tol * v.norm();
    std::vector<IVec> out;
    for (int i = 0; i < rep.dim(); ++i) {
        if (std::abs(v(i)) <= cutoff) continue;
        IVec w = a.row(i).transpose();
        if (!contains_weight(out, w)) out.push_back(std::move(w));
    }
    return out;
}

std::optional<IVec> find_destabilizing_for_support(const std::vector<IVec>& support,
                                                   int rank, bool strict) {
    if (support.empty()) return std::nullopt;
    for (long budget = 1; budget <= (1L << 20); budget *= 2) {
        std::optional<IVec> best;
        long best_norm = 0;
        IVec lambda = IVec::Constant(rank, static_cast<int>(-budget));
        while (true) {
            bool zero = true, valid = true, some_positive = false;
            for (int j = 0; j < rank; ++j)
                if (lambda(j) != 0) zero = false;
            if (!zero) {
                for (const auto& w : support) {
                    long m = pairing(w, lambda);
                    if (m < 0 || (strict && m == 0)) {
                        valid = false;
                        break;
                    }
                    if (m > 0) some_positive = true;
                }
                if (valid && some_positive) {
                    long norm = lambda.cwiseAbs().maxCoeff();
                    if (!best || norm < best_norm) {
                        best = lambda;
                        best_norm = norm;
                    }
                }
            }
            // advance odometer
            int j = 0;
            for (; j < rank; ++j) {
                if (lambda(j) < budget) {
                    lambda(j) += 1;
                    break;
                }
                lambda(j) = static_cast<int>(-budget);
            }
            if (j == rank) break;
        }
        if (best) return best;
    }
    throw SearchBudgetExceeded("no destabilizing cocharacter within the search budget");
}

TorusVerdict classify_weight_set(std::vector<IVec> support, int rank) {
    const int r = rank;
    TorusVerdict verdict;
    verdict.support = std::move(support);
    const auto& s = verdict.support;

    if (s.empty()) {
        verdict.kind = TorusVerdictKind::Closed;
        return verdict; // zero vector: the zero orbit is closed
    }

    // 0 in the relative interior of the hull: sum lambda_i a_i = 0 with
    // lambda_i >= 1 (substitute lambda = 1 + s).
    {
        std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(r));
        std::vector<Rational> rhs(static_cast<std::size_t>(r), Rational(0));
        for (int j = 0; j < r; ++j) {
            rows[static_cast<std::size_t>(j)].resize(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                rows[static_cast<std::size_t>(j)][i] = Rational(s[i](j));
                rhs[static_cast<std::size_t>(j)] -= Rational(s[i](j));
            }
        }
        if (auto sol = simplex_equality_feasible(rows, rhs)) {
            std::vector<Rational> lambda(s.size());
            Rational total(0);
            for (std::size_t i = 0; i < s.size(); ++i) {
                lambda[i] = Rational(1) + (*sol)[i];
                total += lambda[i];
            }
            for (auto& l : lambda) l /= total;
            verify_closed_certificate(s, lambda, r);
            verdict.kind = TorusVerdictKind::Closed;
            verdict.closed_certificate = std::move(lambda);
            return verdict;
        }
    }

    // 0 in the hull at all: sum lambda_i a_i = 0, sum lambda_i = 1, lambda >= 0.
    bool in_hull;
    {
        std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(r) + 1);
        std::vector<Rational> rhs(static_cast<std::size_t>(r) + 1, Rational(0));
        for (int j = 0; j < r; ++j) {
            rows[static_cast<std::size_t>(j)].resize(s.size());
            for (std::size_t i = 0; i < s.size(); ++i)
                rows[static_cast<std::size_t>(j)][i] = Rational(s[i](j));
        }
        rows[static_cast<std::size_t>(r)].assign(s.size(), Rational(1));
        rhs[static_cast<std::size_t>(r)] = 1;
        in_hull = simplex_equality_feasible(rows, rhs).has_value();
    }

    verdict.kind = in_hull ? TorusVerdictKind::SemistableNotClosed : TorusVerdictKind::NullCone;
    bool strict = !in_hull;
    auto lambda = find_destabilizing_for_support(s, r, strict);
    if (!lambda)
        throw Error("torus oracle: non-closed support without destabilizing direction");
    verify_destabilizing(s, *lambda, strict);
    verdict.destabilizing = *lambda;
    return verdict;
}

TorusVerdict classify_support(const Rep& rep, std::vector<IVec> support) {
    return classify_weight_set(std::move(support), rep.torus_rank());
}

TorusVerdict torus_orbit_oracle(const Rep& rep, const ExactVector& v) {
    return classify_support(rep, support_weights(rep, v));
}

std::optional<IVec> find_destabilizing_1ps(const Rep& rep, const ExactVector& v) {
    auto s = support_weights(rep, v);
    TorusVerdict verdict = classify_support(rep, s);
    if (verdict.kind == TorusVerdictKind::Closed) return std::nullopt;
    return find_destabilizing_for_support(s, rep.torus_rank(), false);
}

WeightDecomposition weight_decompose(const Rep& rep, const ExactVector& v,
                                     const OnePS& tau) {
    if (static_cast<int>(v.size()) != rep.dim())
        throw DimensionError("weight_decompose: dimension mismatch");
    const IMat& a = rep.weights();
    if (tau.lambda.size() != a.cols())
        throw DimensionError("weight_decompose: cocharacter rank mismatch");
    WeightDecomposition dec;
    dec.lambda = tau.lambda;
    dec.dim = rep.dim();
    for (int i = 0; i < rep.dim(); ++i) {
        if (v[static_cast<std::size_t>(i)].is_zero()) continue;
        long m = pairing(a.row(i).transpose(), tau.lambda);
        auto& comp = dec.components[m];
        if (comp.empty()) comp.assign(static_cast<std::size_t>(rep.dim()), GaussianRational());
        comp[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    }
    return dec;
}

std::optional<ExactVector> one_ps_limit(const WeightDecomposition& dec) {
    for (const auto& [m, comp] : dec.components)
        if (m < 0 && !exact_is_zero(comp)) return std::nullopt;
    auto it = dec.components.find(0);
    if (it != dec.components.end()) return it->second;
    return ExactVector(static_cast<std::size_t>(dec.dim), GaussianRational());
}

Rational torus_mu_pairing_exact(const Rep& rep, const ExactVector& v, const IVec& lambda) {
    const IMat& a = rep.weights();
    if (lambda.size() != a.cols())
        throw DimensionError("torus_mu_pairing_exact: rank mismatch");
    Rational acc(0);
    for (int i = 0; i < rep.dim(); ++i) {
        long m = pairing(a.row(i).transpose(), lambda);
        acc += Rational(m) * v[static_cast<std::size_t>(i)].norm_sq();
    }
    return acc / 2;
}

double pairing_identity_residual(const Rep& rep, const ExactVector& v, const OnePS& tau) {
    Vec vf = rep.embed(v);
    MomentValue mu = moment_map(rep, vf);
    RVec lam(tau.lambda.size());
    for (Eigen::Index j = 0; j < tau.lambda.size(); ++j)
        lam(j) = static_cast<double>(tau.lambda(j));
    double lhs = mu.pair(lam);

    WeightDecomposition dec = weight_decompose(rep, v, tau);
    double rhs = 0.0;
    for (const auto& [m, comp] : dec.components)
        rhs += 0.5 * static_cast<double>(m) * rep.embed(comp).squaredNorm();
    return std::abs(lhs - rhs);
}

Sl2Verdict sl2_form_oracle(int d, const ExactVector& coeffs) {
    if (d < 1) throw FormatError("sl2_form_oracle: degree must be >= 1");
    if (static_cast<int>(coeffs.size()) != d + 1)
        throw FormatError("sl2_form_oracle: coefficient count does not match degree");

    Sl2Verdict out;
    if (exact_is_zero(coeffs)) {
        out.kind = TorusVerdictKind::Closed; // zero orbit
        return out;
    }

    // Dehomogenize at y = 1: p(x) = sum_k c_k x^{d-k}, ascending coefficient
    // of x^j is c_{d-j}.
    std::vector<GaussianRational> asc(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k)
        asc[static_cast<std::size_t>(d - k)] = coeffs[static_cast<std::size_t>(k)];
    Poly p{std::move(asc)};

    out.infinity_multiplicity = d - p.degree(); // root at [1:0]
    int max_mult = out.infinity_multiplicity;
    int distinct = out.infinity_multiplicity > 0 ? 1 : 0;

    auto factors = yun_squarefree(p);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Poly& f = factors[i];
        if (f.degree() < 1) continue;
        int mult = static_cast<int>(i) + 1;
        out.profile.emplace_back(mult, f);
        max_mult = std::max(max_mult, mult);
        distinct += f.degree();
    }
    if (p.degree() == 0 && out.infinity_multiplicity == 0)
        throw Error("sl2_form_oracle: internal degree bookkeeping failure");

    out.max_multiplicity = max_mult;
    out.distinct_roots = distinct;

    if (2 * max_mult > d)
        out.kind = TorusVerdictKind::NullCone;
    else if (2 * max_mult < d)
        out.kind = TorusVerdictKind::Closed;
    else
        out.kind = distinct == 2 ? TorusVerdictKind::Closed
                                 : TorusVerdictKind::SemistableNotClosed;
    return out;
}

} // namespace kn
