#pragma once

#include <string>

#include "kn/scenario.hpp"

namespace kn {

inline constexpr const char* kToolVersion = "knorbit 1.0.0";

// Residual contracts for the proof-identity suite. Pinned here so the CLI,
// the reports, and the acceptance gate all read the same numbers.
inline constexpr double kDerivativeTol = 1e-6; // central difference, h = 1e-4
inline constexpr double kInvarianceTol = 1e-10;
inline constexpr double kCommutatorTol = 1e-9;
inline constexpr double kEquivarianceTol = 1e-8;
inline constexpr double kPairingTol = 1e-12;

struct IdentityStats {
    int probes = 0;
    double max_derivative = 0.0;
    double max_invariance = 0.0;
    double max_commutator = 0.0;
    double max_equivariance = 0.0;
    std::optional<double> max_pairing; // torus reps only

    bool ok() const {
        return max_derivative <= kDerivativeTol && max_invariance <= kInvarianceTol &&
               max_commutator <= kCommutatorTol && max_equivariance <= kEquivarianceTol &&
               (!max_pairing || *max_pairing <= kPairingTol);
    }
};

// Seeded probe run of the five proof identities on one representation.
// Probes are normalized: unit vectors and generator combinations scaled to
// unit operator norm, so the finite-difference contract is scale-free.
IdentityStats run_identity_probes(const Rep& rep, int probes, std::uint64_t seed);

// Executes every requested analysis; individual analysis failures become
// per-analysis error records rather than aborting the run.
Json run_scenario(const Scenario& s);

bool report_ok(const Json& report);

struct BatchSummary {
    Json json;
    bool all_ok = true;
};

// Runs every *.json scenario under `directory` with `jobs`-wide concurrency.
// Unreadable or malformed files are recorded failures; the batch continues.
BatchSummary batch_run(const std::string& directory, int jobs);

std::string digest_hex(std::uint64_t digest);

} // namespace kn
