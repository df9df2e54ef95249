#include "kn/kempf_ness.hpp"

#include <cmath>

namespace kn {

const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Closed: return "Closed";
        case VerdictKind::NullCone: return "NullCone";
        case VerdictKind::NotClosed: return "NotClosed";
        case VerdictKind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(VerdictSource s) {
    switch (s) {
        case VerdictSource::Numeric: return "Numeric";
        case VerdictSource::ExactOracle: return "ExactOracle";
        case VerdictSource::Both: return "Both";
    }
    return "?";
}

const char* to_string(TerminalReason r) {
    switch (r) {
        case TerminalReason::MuBelowTol: return "MuBelowTol";
        case TerminalReason::NullCollapse: return "NullCollapse";
        case TerminalReason::MaxIters: return "MaxIters";
        case TerminalReason::StepUnderflow: return "StepUnderflow";
    }
    return "?";
}

double kn_value(const Rep& rep, const RVec& hermitian_coords, const Vec& v) {
    if (v.size() != rep.dim())
        throw DimensionError("kn_value: dimension mismatch");
    if (rep.kind() == RepKind::Torus) {
        if (hermitian_coords.size() != rep.torus_rank())
            throw DimensionError("kn_value: coordinate count mismatch");
        const IMat& a = rep.weights();
        double f = 0.0;
        for (int i = 0; i < rep.dim(); ++i) {
            double e = 0.0;
            for (int j = 0; j < a.cols(); ++j)
                e += a(i, j) * hermitian_coords(j);
            f += std::exp(2.0 * e) * std::norm(v(i));
        }
        return f;
    }
    return rep.act_group(LieElement::from_hermitian(hermitian_coords), v).squaredNorm();
}

namespace {

// Armijo backtracking along t -> exp(i t dir) v with analytic initial slope
// -4 ||mu||_Q^2.
std::pair<Vec, double> armijo_step(const Rep& rep, const Vec& v, const MomentValue& mu,
                                   const KNOptions& options) {
    double mu_sq = mu.norm_q_sq();
    if (mu_sq <= 0.0) return {v, 0.0};
    RVec dir = mu.sharp();
    const double f0 = v.squaredNorm();
    const double slope = -4.0 * mu_sq;
    double t = options.initial_step;
    while (true) {
        Vec cand = rep.flow_point(dir, t, v);
        if (cand.squaredNorm() <= f0 + options.armijo_c * t * slope)
            return {std::move(cand), t};
        t *= options.backtrack_factor;
        if (t < 1e-16)
            throw StepUnderflowError("Armijo backtracking underflowed");
    }
}

} // namespace

std::pair<Vec, double> kn_step(const Rep& rep, const Vec& v, const KNOptions& options) {
    options.validate();
    if (v.norm() == 0.0) throw Error("kn_step: v must be nonzero");
    MomentValue mu = moment_map(rep, v);
    return armijo_step(rep, v, mu, options);
}

KNTrajectory kn_minimize(const Rep& rep, const Vec& v0, const KNOptions& options) {
    options.validate();
    KNTrajectory traj;
    const double norm0 = v0.norm();
    Vec v = v0;
    for (int k = 0; k < options.max_iters; ++k) {
        MomentValue mu = moment_map(rep, v);
        double mu_norm = mu.norm_q();
        if (mu_norm <= options.tol_mu) {
            traj.iterates.push_back({v.squaredNorm(), mu_norm, 0.0});
            traj.final_point = std::move(v);
            traj.reason = TerminalReason::MuBelowTol;
            return traj;
        }
        if (v.norm() <= options.tol_null * norm0) {
            traj.iterates.push_back({v.squaredNorm(), mu_norm, 0.0});
            traj.final_point = std::move(v);
            traj.reason = TerminalReason::NullCollapse;
            return traj;
        }
        try {
            auto [next, step] = armijo_step(rep, v, mu, options);
            traj.iterates.push_back({v.squaredNorm(), mu_norm, step});
            v = std::move(next);
        } catch (const StepUnderflowError&) {
            traj.iterates.push_back({v.squaredNorm(), mu_norm, 0.0});
            traj.final_point = std::move(v);
            traj.reason = TerminalReason::StepUnderflow;
            return traj;
        }
    }
    traj.final_point = std::move(v);
    traj.reason = TerminalReason::MaxIters;
    return traj;
}

namespace {

VerdictKind to_verdict_kind(TorusVerdictKind k) {
    switch (k) {
        case TorusVerdictKind::Closed: return VerdictKind::Closed;
        case TorusVerdictKind::SemistableNotClosed: return VerdictKind::NotClosed;
        case TorusVerdictKind::NullCone: return VerdictKind::NullCone;
    }
    return VerdictKind::Inconclusive;
}

OrbitVerdict classify_impl(const Rep& rep, const Vec& vf,
                           const ExactVector* exact, const KNOptions& options,
                           double support_zero_tol) {
    options.validate();
    OrbitVerdict out;

    const bool has_oracle =
        rep.kind() == RepKind::Torus ||
        (rep.kind() == RepKind::BinaryForm && exact != nullptr);

    if (vf.norm() == 0.0) {
        out.kind = VerdictKind::Closed; // the zero orbit
        out.source = has_oracle ? VerdictSource::Both : VerdictSource::Numeric;
        out.mu_zero_point = vf;
        return out;
    }

    KNTrajectory traj = kn_minimize(rep, vf, options);

    // A mu-zero only certifies closedness if the flow stayed on the orbit.
    // Steep weight gaps can annihilate destabilized coordinates within a few
    // steps, landing on a mu-zero of the orbit CLOSURE instead; for torus
    // reps the tell-tale is a coordinate leaving the starting support, so a
    // numeric Closed claim requires every starting-support coordinate to
    // survive at a conservative relative scale. (Collapsed coordinates sit
    // at ~sqrt(tol_mu) by the pairing bound, well below this threshold.)
    bool support_preserved = true;
    if (rep.kind() == RepKind::Torus && traj.reason == TerminalReason::MuBelowTol) {
        const double in_tol = 1e-9 * vf.norm();
        const double out_tol = 1e-2 * traj.final_point.norm();
        for (Eigen::Index i = 0; i < vf.size(); ++i)
            if (std::abs(vf(i)) > in_tol && std::abs(traj.final_point(i)) < out_tol)
                support_preserved = false;
    }

    // Null-cone orbits can also reach an absolute mu below tol_mu long before
    // the norm-collapse threshold fires, simply because mu scales with the
    // square of the shrinking norm. The scale-invariant residual
    // ||mu(w)||_Q / ||w||^2 separates the two regimes decisively: ~tol_mu for
    // a genuine minimum on the orbit, O(1) for uniform decay toward zero.
    bool scale_ok = false;
    if (traj.reason == TerminalReason::MuBelowTol) {
        const double w_sq = traj.final_point.squaredNorm();
        scale_ok = w_sq > 0.0 &&
                   moment_map(rep, traj.final_point).norm_q() <= 1e-4 * w_sq;
    }

    std::optional<VerdictKind> numeric;
    if (traj.reason == TerminalReason::MuBelowTol && support_preserved && scale_ok &&
        traj.final_point.norm() > options.tol_null * vf.norm())
        numeric = VerdictKind::Closed;
    else if (traj.reason == TerminalReason::NullCollapse)
        numeric = VerdictKind::NullCone;

    std::optional<VerdictKind> oracle;
    if (rep.kind() == RepKind::Torus) {
        TorusVerdict tv = exact ? torus_orbit_oracle(rep, *exact)
                                : classify_support(rep, support_weights(rep, vf, support_zero_tol));
        oracle = to_verdict_kind(tv.kind);
        out.closed_certificate = std::move(tv.closed_certificate);
        if (tv.destabilizing) out.destabilizing_1ps = *tv.destabilizing;
    } else if (rep.kind() == RepKind::BinaryForm && exact) {
        Sl2Verdict sv = sl2_form_oracle(rep.degree(), *exact);
        oracle = to_verdict_kind(sv.kind);
    }

    if (oracle) {
        if (numeric && *numeric != *oracle)
            throw OracleMismatch(std::string("numeric verdict ") + to_string(*numeric) +
                                 " contradicts exact oracle " + to_string(*oracle));
        out.kind = *oracle;
        out.source = numeric ? VerdictSource::Both : VerdictSource::ExactOracle;
    } else {
        out.kind = numeric ? *numeric : VerdictKind::Inconclusive;
        out.source = VerdictSource::Numeric;
    }

    if (out.kind == VerdictKind::Closed && traj.reason == TerminalReason::MuBelowTol)
        out.mu_zero_point = traj.final_point;
    out.trajectory = std::move(traj);
    return out;
}

} // namespace

OrbitVerdict classify_orbit(const Rep& rep, const ExactVector& v, const KNOptions& options) {
    Vec vf = rep.embed(v);
    return classify_impl(rep, vf, &v, options, 0.0);
}

OrbitVerdict classify_orbit(const Rep& rep, const Vec& v, const KNOptions& options,
                            double support_zero_tol) {
    return classify_impl(rep, v, nullptr, options, support_zero_tol);
}

} // namespace kn
