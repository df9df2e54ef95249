#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kn/hilbert_mumford.hpp"
#include "kn/moment.hpp"

namespace kn {

struct KNOptions {
    double tol_mu = 1e-8;
    double tol_null = 1e-10; // relative collapse threshold on ||v_k||
    int max_iters = 10000;
    double armijo_c = 1e-4;
    double backtrack_factor = 0.5;
    double initial_step = 1.0;

    void validate() const {
        if (tol_mu <= 0 || tol_null <= 0) throw FormatError("KN tolerances must be positive");
        if (max_iters <= 0) throw FormatError("max_iters must be positive");
        if (armijo_c <= 0 || armijo_c >= 1) throw FormatError("armijo_c must lie in (0,1)");
        if (backtrack_factor <= 0 || backtrack_factor >= 1)
            throw FormatError("backtrack_factor must lie in (0,1)");
        if (initial_step <= 0) throw FormatError("initial_step must be positive");
    }
};

enum class TerminalReason { MuBelowTol, NullCollapse, MaxIters, StepUnderflow };

struct KNIterate {
    double f;       // ||v_k||^2
    double mu_norm; // ||mu(v_k)||_Q
    double step;
};

struct KNTrajectory {
    std::vector<KNIterate> iterates;
    Vec final_point;
    TerminalReason reason = TerminalReason::MaxIters;
};

enum class VerdictKind { Closed, NullCone, NotClosed, Inconclusive };
enum class VerdictSource { Numeric, ExactOracle, Both };

struct OrbitVerdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    VerdictSource source = VerdictSource::Numeric;
    std::optional<Vec> mu_zero_point;
    std::optional<KNTrajectory> trajectory;
    std::optional<IVec> destabilizing_1ps;
    std::vector<Rational> closed_certificate; // torus oracle certificate
};

const char* to_string(VerdictKind k);
const char* to_string(VerdictSource s);
const char* to_string(TerminalReason r);

// F(p) = ||exp(p) v||^2 for purely hermitian p given by generator
// coordinates. Torus reps use the closed form sum_i e^{2<a_i,x>} |v_i|^2.
double kn_value(const Rep& rep, const RVec& hermitian_coords, const Vec& v);

// One Armijo-backtracked step of the moment-map descent flow:
// v_next = exp(i t mu(v)^sharp) v. Returns the step actually used (0 when
// mu(v) vanishes). Throws StepUnderflowError below t = 1e-16.
std::pair<Vec, double> kn_step(const Rep& rep, const Vec& v, const KNOptions& options);

// Runs the flow until one of the termination conditions fires.
KNTrajectory kn_minimize(const Rep& rep, const Vec& v0, const KNOptions& options);

// Theorem-4 classification. The numeric flow may certify Closed or NullCone;
// for torus and binary-form reps the exact oracle is always consulted and
// cross-checked, and a contradiction raises OracleMismatch.
OrbitVerdict classify_orbit(const Rep& rep, const ExactVector& v, const KNOptions& options);

// Floating entry point. For torus reps the oracle runs on the floating
// support; otherwise the verdict is numeric-only.
OrbitVerdict classify_orbit(const Rep& rep, const Vec& v, const KNOptions& options,
                            double support_zero_tol = 1e-9);

} // namespace kn
