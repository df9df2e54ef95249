// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here and in kn/report.hpp.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "kn/criteria.hpp"
#include "kn/report.hpp"
#include "support/brute_force_sl2.hpp"
#include "support/generators.hpp"

using namespace kn;
using namespace kn::testsupport;

namespace {

int g_failures = 0;

struct Line {
    int index;
    std::string text;
};
std::vector<Line> g_lines;

void report(int index, const char* label, bool pass, const std::string& detail = "") {
    char buf[512];
    std::snprintf(buf, sizeof buf, "criterion %d (%s): %s%s%s", index, label,
                  pass ? "PASS" : "FAIL", detail.empty() ? "" : " — ", detail.c_str());
    g_lines.push_back({index, buf});
    if (!pass) ++g_failures;
}

VerdictKind oracle_to_verdict(TorusVerdictKind k) {
    switch (k) {
        case TorusVerdictKind::Closed: return VerdictKind::Closed;
        case TorusVerdictKind::SemistableNotClosed: return VerdictKind::NotClosed;
        case TorusVerdictKind::NullCone: return VerdictKind::NullCone;
    }
    return VerdictKind::Inconclusive;
}

struct ClosedInstance {
    Rep rep;
    ExactVector v;
};

std::vector<ClosedInstance> g_closed_instances; // collected by criterion 1/5

// ---- criterion 1: Kempf-Ness <=> Hilbert-Mumford on 1000 torus instances --
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 eng(20260823);
    int agree = 0;
    const int total = 1000;
    std::string detail;
    try {
        for (int i = 0; i < total; ++i) {
            TorusInstance inst = random_torus_instance(eng);
            Rep rep = build_torus_rep(inst.weights);
            TorusVerdict oracle = torus_orbit_oracle(rep, inst.v);
            OrbitVerdict got = classify_orbit(rep, inst.v, KNOptions{});
            if (exact_is_zero(inst.v)) {
                // Zero vector: both sides call the zero orbit closed.
                if (got.kind == VerdictKind::Closed &&
                    oracle.kind == TorusVerdictKind::Closed)
                    ++agree;
                continue;
            }
            if (got.kind == oracle_to_verdict(oracle.kind)) ++agree;
            if (oracle.kind == TorusVerdictKind::Closed)
                g_closed_instances.push_back({rep, inst.v});
        }
    } catch (const std::exception& e) {
        detail = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/%d agreements in %.1fs%s%s", agree, total, secs,
                  detail.empty() ? "" : "; ", detail.c_str());
    report(1, "Kempf-Ness flow agrees with the exact torus oracle",
           agree == total && secs < 60.0, buf);
}

// ---- criterion 2: proof-identity residual suite ---------------------------
void criterion_2() {
    std::vector<Rep> reps;
    std::mt19937_64 eng(77);
    for (int r = 1; r <= 3; ++r) {
        std::uniform_int_distribution<int> w(-4, 4);
        IMat m(2 * r + 1, r);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (int j = 0; j < r; ++j) m(i, j) = w(eng);
        reps.push_back(build_torus_rep(m));
    }
    for (int d = 2; d <= 6; ++d) reps.push_back(build_binary_form_rep(d));

    const int per_rep = 170; // >= 500 total per identity; >= 500 torus-only
    IdentityStats agg;
    int pairing_probes = 0;
    bool ok = true;
    std::string detail;
    try {
        for (std::size_t i = 0; i < reps.size(); ++i) {
            IdentityStats st = run_identity_probes(reps[i], per_rep, 1000 + i);
            agg.probes += st.probes;
            agg.max_derivative = std::max(agg.max_derivative, st.max_derivative);
            agg.max_invariance = std::max(agg.max_invariance, st.max_invariance);
            agg.max_commutator = std::max(agg.max_commutator, st.max_commutator);
            agg.max_equivariance = std::max(agg.max_equivariance, st.max_equivariance);
            if (st.max_pairing) {
                pairing_probes += st.probes;
                agg.max_pairing = std::max(agg.max_pairing.value_or(0.0), *st.max_pairing);
            }
        }
        ok = agg.probes >= 500 && pairing_probes >= 500 && agg.ok();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "%d probes; deriv %.2e invar %.2e commut %.2e equiv %.2e pairing %.2e%s%s",
                  agg.probes, agg.max_derivative, agg.max_invariance, agg.max_commutator,
                  agg.max_equivariance, agg.max_pairing.value_or(0.0),
                  detail.empty() ? "" : "; ", detail.c_str());
    report(2, "proof-identity residuals within contracts", ok, buf);
}

// ---- criterion 3: weight-decomposition exactness --------------------------
void criterion_3() {
    std::mt19937_64 eng(303);
    std::uniform_int_distribution<int> lam(-3, 3);
    bool ok = true;
    std::string detail;
    try {
        for (int trial = 0; trial < 200; ++trial) {
            TorusInstance inst = random_torus_instance(eng);
            Rep rep = build_torus_rep(inst.weights);
            OnePS tau;
            tau.lambda = IVec(inst.weights.cols());
            for (Eigen::Index j = 0; j < tau.lambda.size(); ++j) tau.lambda(j) = lam(eng);
            WeightDecomposition dec = weight_decompose(rep, inst.v, tau);

            ExactVector sum(inst.v.size());
            for (const auto& [m, comp] : dec.components)
                for (std::size_t i = 0; i < comp.size(); ++i) sum[i] = sum[i] + comp[i];
            if (!(sum == inst.v)) ok = false;
            for (auto it = dec.components.begin(); it != dec.components.end(); ++it)
                for (auto jt = std::next(it); jt != dec.components.end(); ++jt)
                    if (!exact_hermitian_inner(it->second, jt->second).is_zero()) ok = false;

            // Limit/pairing consistency along the stored destabilizing
            // direction, when one exists.
            auto lambda = find_destabilizing_1ps(rep, inst.v);
            if (lambda) {
                OnePS dtau{*lambda, std::nullopt};
                auto limit = one_ps_limit(weight_decompose(rep, inst.v, dtau));
                Rational pairing = torus_mu_pairing_exact(rep, inst.v, *lambda);
                if (!limit.has_value() || pairing < 0) ok = false;
                if ((pairing == 0) != (*limit == inst.v)) ok = false;
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(3, "weight decompositions exact with consistent limits", ok, detail);
}

// ---- criterion 5 (run before 4 to collect closed binary instances) --------
std::vector<ClosedInstance> g_closed_forms;

void criterion_5() {
    bool ok = true;
    int cases = 0, disagreements = 0;
    std::string detail;
    try {
        std::vector<std::pair<int, ExactVector>> corpus;
        for (int d = 1; d <= 6; ++d)
            for (int k = 0; k <= d; ++k) corpus.emplace_back(d, monomial_form(d, k));
        corpus.emplace_back(2, monomial_form(2, 1)); // xy
        {
            ExactVector c(5); // x^2 y (x+y)
            c[1] = GaussianRational(1);
            c[2] = GaussianRational(1);
            corpus.emplace_back(4, c);
        }
        {
            ExactVector c(3); // x^2 + y^2
            c[0] = GaussianRational(1);
            c[2] = GaussianRational(1);
            corpus.emplace_back(2, c);
        }
        corpus.emplace_back(4, monomial_form(4, 2)); // (xy)^2
        {
            ExactVector c(5); // x^4 + y^4
            c[0] = GaussianRational(1);
            c[4] = GaussianRational(1);
            corpus.emplace_back(4, c);
        }
        corpus.emplace_back(4, monomial_form(4, 1)); // x^3 y

        std::mt19937_64 eng(505);
        for (int d = 2; d <= 6; ++d)
            for (int i = 0; i < 100; ++i) corpus.emplace_back(d, random_binary_form(eng, d));

        for (const auto& [d, coeffs] : corpus) {
            ++cases;
            Sl2Verdict exact = sl2_form_oracle(d, coeffs);
            TorusVerdictKind brute = brute_force_sl2(d, coeffs, 9000 + cases);
            if (exact.kind != brute) ++disagreements;
            if (exact.kind == TorusVerdictKind::Closed && !exact_is_zero(coeffs))
                g_closed_forms.push_back({build_binary_form_rep(d), coeffs});
        }
        ok = disagreements == 0;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d cases, %d disagreements%s%s", cases, disagreements,
                  detail.empty() ? "" : "; ", detail.c_str());
    report(5, "sl2 oracle matches the brute-force frame oracle", ok, buf);
}

// ---- criterion 4: Matsushima real-form equality at flowed mu-zeros --------
void criterion_4() {
    bool ok = true;
    int checked = 0, held = 0;
    std::string detail;
    KNOptions opt;
    opt.max_iters = 200000;
    // A stricter line search avoids the zigzag stalls the default Armijo
    // constant allows on badly conditioned closed instances.
    opt.armijo_c = 0.5;
    opt.backtrack_factor = 0.8;
    try {
        std::vector<ClosedInstance> all = g_closed_instances;
        all.insert(all.end(), g_closed_forms.begin(), g_closed_forms.end());
        for (const auto& inst : all) {
            if (exact_is_zero(inst.v)) continue;
            Vec v0 = inst.rep.embed(inst.v);
            KNTrajectory traj = kn_minimize(inst.rep, v0, opt);
            if (traj.reason != TerminalReason::MuBelowTol) {
                ok = false;
                continue;
            }
            ++checked;
            StabilizerReport r = matsushima_check(inst.rep, traj.final_point);
            if (r.real_form_holds) ++held;
        }
        ok = ok && checked > 0 && held == checked;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "real form held at %d/%d flowed zeros%s%s", held, checked,
                  detail.empty() ? "" : "; ", detail.c_str());
    report(4, "Matsushima real-form equality at moment-map zeros", ok, buf);
}

// ---- criterion 6: Luna scenarios -------------------------------------------
void criterion_6() {
    bool ok = true;
    std::string detail;
    try {
        const std::vector<GaussianRational> cs = {
            GaussianRational(1), GaussianRational(2), {Rational(-3) / 5, Rational(0)}};
        for (int d : {2, 4, 6}) {
            Rep rep = build_binary_form_rep(d);
            SubgroupData sub;
            RVec e0 = RVec::Zero(3);
            e0(0) = 1.0;
            sub.h_generators = {e0};
            for (const auto& c : cs) {
                ExactVector v = monomial_form(d, d / 2, c);
                if (sl2_form_oracle(d, v).kind != TorusVerdictKind::Closed) ok = false;
                KNTrajectory traj = kn_minimize(rep, rep.embed(v), KNOptions{});
                if (traj.reason != TerminalReason::MuBelowTol) ok = false;
                LunaRestrictionReport lr = luna_restriction_check(rep, sub, rep.embed(v));
                if (lr.max_complement_pairing > 1e-9 || lr.projection_residual > 1e-9)
                    ok = false;
                LunaTangentReport lt = luna_tangent_check(rep, sub, rep.embed(v));
                if (!lt.pass) ok = false;
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(6, "Luna scenarios certified closed with passing residuals", ok, detail);
}

// ---- criterion 7: generic-closedness sampler --------------------------------
void criterion_7() {
    bool ok = true;
    std::string detail;
    try {
        Rep rep = build_binary_form_rep(2);
        RVec e0 = RVec::Zero(3);
        e0(0) = 1.0;
        SamplerResult r = stability_sampler(rep, monomial_form(2, 1), {e0}, 200, 7);
        if (r.closed_fraction != 1.0 || !r.exceptions.empty()) ok = false;

        IMat w = *adapted_torus_weights(rep, {e0});
        Vec y2 = rep.embed(monomial_form(2, 2));
        if (adapted_torus_classify(w, y2).kind != TorusVerdictKind::NullCone) ok = false;
        ExactVector mixed(3);
        mixed[1] = GaussianRational(1);
        mixed[2] = GaussianRational(1);
        if (adapted_torus_classify(w, rep.embed(mixed)).kind !=
            TorusVerdictKind::SemistableNotClosed)
            ok = false;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(7, "sampler closed_fraction 1.0 with special-point exceptions", ok, detail);
}

// ---- criterion 8: determinism and round-trip --------------------------------
Json strip_clocks(Json j) {
    if (j.is_object()) {
        j.erase("wall_clock_seconds");
        for (auto& [k, v] : j.items()) v = strip_clocks(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_clocks(v);
    }
    return j;
}

void criterion_8(const std::string& scenario_dir) {
    bool ok = true;
    std::string detail;
    try {
        namespace fs = std::filesystem;
        if (!fs::is_directory(scenario_dir)) throw Error("missing scenario dir");
        int files = 0;
        for (const auto& entry : fs::directory_iterator(scenario_dir)) {
            if (entry.path().extension() != ".json") continue;
            ++files;
            std::ifstream in(entry.path());
            std::stringstream buf;
            buf << in.rdbuf();
            Scenario s = parse_scenario(buf.str());
            Scenario s2 = parse_scenario_json(serialize_scenario(s));
            if (!scenario_equal(s, s2)) ok = false;
        }
        if (files == 0) ok = false;

        BatchSummary a = batch_run(scenario_dir, 4);
        BatchSummary b = batch_run(scenario_dir, 1);
        if (strip_clocks(a.json).dump() != strip_clocks(b.json).dump()) ok = false;
        if (!a.all_ok) ok = false;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(8, "deterministic reports and canonical round-trips", ok, detail);
}

} // namespace

int main(int argc, char** argv) {
    std::string scenario_dir = argc > 1 ? argv[1] : "scenarios";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_5(); // before 4: criterion 4 reuses its closed instances
    criterion_4();
    criterion_6();
    criterion_7();
    criterion_8(scenario_dir);
    std::sort(g_lines.begin(), g_lines.end(),
              [](const Line& a, const Line& b) { return a.index < b.index; });
    for (const auto& line : g_lines) std::printf("%s\n", line.text.c_str());
    if (g_failures == 0) std::printf("acceptance: all 8 criteria PASS\n");
    return g_failures == 0 ? 0 : 1;
}
