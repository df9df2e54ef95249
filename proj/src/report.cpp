#include "kn/report.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace kn {

namespace {

const char* torus_kind_name(TorusVerdictKind k) {
    switch (k) {
        case TorusVerdictKind::Closed: return "Closed";
        case TorusVerdictKind::SemistableNotClosed: return "SemistableNotClosed";
        case TorusVerdictKind::NullCone: return "NullCone";
    }
    return "?";
}

Vec random_unit_vector(std::mt19937_64& eng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = Cplx(g(eng), g(eng));
    double nrm = v.norm();
    if (nrm == 0.0) v(0) = 1.0, nrm = 1.0;
    return v / nrm;
}

// Compact coordinates scaled so the represented operator has unit Frobenius
// norm; keeps finite-difference truncation uniform across representations.
RVec random_unit_compact(std::mt19937_64& eng, const Rep& rep) {
    std::normal_distribution<double> g(0.0, 1.0);
    RVec c(rep.num_generators());
    for (int j = 0; j < rep.num_generators(); ++j) c(j) = g(eng);
    double nrm = rep.lie_operator(LieElement::from_compact(c)).norm();
    if (nrm == 0.0) {
        c.setZero();
        c(0) = 1.0;
        nrm = rep.lie_operator(LieElement::from_compact(c)).norm();
    }
    return c / nrm;
}

GaussianRational random_exact_scalar(std::mt19937_64& eng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> zero(0, 3);
    if (zero(eng) == 0) return GaussianRational();
    return {Rational(num(eng)) / den(eng), Rational(num(eng)) / den(eng)};
}

Json trajectory_json(const KNTrajectory& tr) {
    Json t;
    t["iterations"] = tr.iterates.size();
    t["reason"] = to_string(tr.reason);
    if (!tr.iterates.empty()) {
        t["final_f"] = tr.iterates.back().f;
        t["final_mu_norm"] = tr.iterates.back().mu_norm;
    }
    return t;
}

Json rationals_json(const std::vector<Rational>& qs) {
    Json arr = Json::array();
    for (const auto& q : qs) arr.push_back(rational_to_string(q));
    return arr;
}

Json ivec_json(const IVec& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Json analysis_classify(const Rep& rep, const Scenario& s) {
    OrbitVerdict v = classify_orbit(rep, s.vector, s.options.kn);
    Json out;
    out["verdict"] = to_string(v.kind);
    out["source"] = to_string(v.source);
    if (v.trajectory) out["trajectory"] = trajectory_json(*v.trajectory);
    if (!v.closed_certificate.empty())
        out["closed_certificate"] = rationals_json(v.closed_certificate);
    if (v.destabilizing_1ps) out["destabilizing_1ps"] = ivec_json(*v.destabilizing_1ps);
    out["ok"] = true;
    return out;
}

Json analysis_identities(const Rep& rep, const Scenario& s) {
    IdentityStats st = run_identity_probes(rep, s.options.probes, s.options.seed);
    Json out;
    out["probes"] = st.probes;
    out["seed"] = s.options.seed;
    out["max_derivative_residual"] = st.max_derivative;
    out["max_invariance_residual"] = st.max_invariance;
    out["max_commutator_residual"] = st.max_commutator;
    out["max_equivariance_residual"] = st.max_equivariance;
    if (st.max_pairing) out["max_pairing_residual"] = *st.max_pairing;
    out["ok"] = st.ok();
    return out;
}

Json analysis_matsushima(const Rep& rep, const Scenario& s) {
    Vec v0 = rep.embed(s.vector);
    KNTrajectory tr = kn_minimize(rep, v0, s.options.kn);
    bool at_zero = tr.reason == TerminalReason::MuBelowTol;
    const Vec& point = at_zero ? tr.final_point : v0;
    StabilizerReport rep_out = matsushima_check(rep, point);
    Json out;
    out["flowed_to_critical"] = at_zero;
    out["mu_norm"] = rep_out.mu_norm;
    out["dim_c_gv"] = rep_out.dim_c_gv;
    out["dim_r_kv"] = rep_out.dim_r_kv;
    out["real_form_holds"] = rep_out.real_form_holds;
    // The theorem only speaks at critical points; away from them the record
    // is informational.
    out["ok"] = !(rep_out.mu_norm <= s.options.kn.tol_mu && !rep_out.real_form_holds);
    return out;
}

Json analysis_luna(const Rep& rep, const Scenario& s) {
    SubgroupData sub = s.subgroup(rep);
    if (sub.h_generators.empty())
        throw FormatError("luna analysis requires options.subgroup.h");
    Vec v = rep.embed(s.vector);
    LunaRestrictionReport lr = luna_restriction_check(rep, sub, v);
    LunaTangentReport lt = luna_tangent_check(rep, sub, v);
    Json out;
    out["max_complement_pairing"] = lr.max_complement_pairing;
    out["projection_residual"] = lr.projection_residual;
    out["restriction_pass"] = lr.pass;
    out["dim_s1"] = lt.dim_s1;
    out["dim_s2"] = lt.dim_s2;
    out["containment_residual"] = lt.containment_residual;
    out["tangent_pass"] = lt.pass;
    out["ok"] = lr.pass && lt.pass;
    return out;
}

Json analysis_stability(const Rep& rep, const Scenario& s) {
    SubgroupData sub = s.subgroup(rep);
    if (sub.k1_generators.empty())
        throw FormatError("stability analysis requires options.subgroup.k1");
    SamplerResult r = stability_sampler(rep, s.vector, sub.k1_generators, s.options.samples,
                                        s.options.seed);
    Json out;
    out["n_samples"] = r.n_samples;
    out["seed"] = r.seed;
    out["closed_fraction"] = r.closed_fraction;
    Json exc = Json::array();
    for (const auto& e : r.exceptions) {
        Json rec;
        rec["sample_index"] = e.sample_index;
        rec["verdict"] = to_string(e.verdict);
        exc.push_back(std::move(rec));
    }
    out["exceptions"] = std::move(exc);

    if (!s.options.special_points.empty()) {
        auto weights = adapted_torus_weights(rep, sub.k1_generators);
        Json pts = Json::array();
        for (const auto& p : s.options.special_points) {
            Json rec;
            if (weights) {
                TorusVerdict tv = adapted_torus_classify(*weights, rep.embed(p));
                rec["verdict"] = torus_kind_name(tv.kind);
                if (!tv.closed_certificate.empty())
                    rec["closed_certificate"] = rationals_json(tv.closed_certificate);
                if (tv.destabilizing) rec["destabilizing_1ps"] = ivec_json(*tv.destabilizing);
            } else {
                OrbitVerdict ov = classify_orbit(rep, rep.embed(p), s.options.kn);
                rec["verdict"] = to_string(ov.kind);
            }
            pts.push_back(std::move(rec));
        }
        out["special_points"] = std::move(pts);
    }
    out["ok"] = true;
    return out;
}

Json analysis_hilbert_mumford(const Rep& rep, const Scenario& s) {
    Json out;
    if (rep.kind() == RepKind::Torus) {
        TorusVerdict tv = torus_orbit_oracle(rep, s.vector);
        out["verdict"] = torus_kind_name(tv.kind);
        Json sup = Json::array();
        for (const auto& w : tv.support) sup.push_back(ivec_json(w));
        out["support"] = std::move(sup);
        if (!tv.closed_certificate.empty())
            out["closed_certificate"] = rationals_json(tv.closed_certificate);
        if (tv.destabilizing) out["destabilizing_1ps"] = ivec_json(*tv.destabilizing);
    } else if (rep.kind() == RepKind::BinaryForm) {
        Sl2Verdict sv = sl2_form_oracle(rep.degree(), s.vector);
        out["verdict"] = torus_kind_name(sv.kind);
        out["max_multiplicity"] = sv.max_multiplicity;
        out["distinct_roots"] = sv.distinct_roots;
        out["infinity_multiplicity"] = sv.infinity_multiplicity;
    } else {
        throw FormatError("hilbert-mumford analysis needs a torus or binary_form rep");
    }
    out["ok"] = true;
    return out;
}

} // namespace

IdentityStats run_identity_probes(const Rep& rep, int probes, std::uint64_t seed) {
    if (probes < 1) throw FormatError("probes must be positive");
    std::mt19937_64 eng(seed ^ 0x6b6e2d6964656e74ULL);
    std::uniform_int_distribution<int> lam(-3, 3);

    IdentityStats st;
    st.probes = probes;
    if (rep.kind() == RepKind::Torus) st.max_pairing = 0.0;

    for (int p = 0; p < probes; ++p) {
        Vec v = random_unit_vector(eng, rep.dim());
        RVec xi = random_unit_compact(eng, rep);
        RVec eta = random_unit_compact(eng, rep);
        LieElement exi = LieElement::from_compact(xi);
        LieElement eeta = LieElement::from_compact(eta);

        st.max_derivative = std::max(st.max_derivative, kn_derivative_residual(rep, v, exi));
        Vec v2 = random_unit_vector(eng, rep.dim());
        st.max_invariance =
            std::max(st.max_invariance, invariance_residual_omega(rep, v, v2, exi));
        st.max_commutator =
            std::max(st.max_commutator, commutator_residual(rep, v, exi, eeta));
        st.max_equivariance = std::max(st.max_equivariance, equivariance_residual(rep, v, exi));

        if (st.max_pairing) {
            ExactVector ev(static_cast<std::size_t>(rep.dim()));
            for (auto& z : ev) z = random_exact_scalar(eng);
            OnePS tau;
            tau.lambda = IVec(rep.torus_rank());
            for (Eigen::Index j = 0; j < tau.lambda.size(); ++j) tau.lambda(j) = lam(eng);
            st.max_pairing =
                std::max(*st.max_pairing, pairing_identity_residual(rep, ev, tau));
        }
    }
    return st;
}

Json run_scenario(const Scenario& s) {
    const auto t0 = std::chrono::steady_clock::now();
    Json report;
    report["format_version"] = 1;
    report["tool"] = kToolVersion;
    report["scenario_digest"] = digest_hex(scenario_digest(s));

    Rep rep = s.rep.build();
    Json analyses = Json::object();
    bool ok = true;
    for (const auto& name : s.analyses) {
        Json rec;
        try {
            if (name == "classify")
                rec = analysis_classify(rep, s);
            else if (name == "identities")
                rec = analysis_identities(rep, s);
            else if (name == "matsushima")
                rec = analysis_matsushima(rep, s);
            else if (name == "luna")
                rec = analysis_luna(rep, s);
            else if (name == "stability")
                rec = analysis_stability(rep, s);
            else if (name == "hilbert-mumford")
                rec = analysis_hilbert_mumford(rep, s);
            else
                throw FormatError("unknown analysis '" + name + "'");
        } catch (const std::exception& e) {
            rec = Json::object();
            rec["error"] = e.what();
            rec["ok"] = false;
        }
        ok = ok && rec.value("ok", false);
        analyses[name] = std::move(rec);
    }
    report["analyses"] = std::move(analyses);
    report["ok"] = ok;
    const auto t1 = std::chrono::steady_clock::now();
    report["wall_clock_seconds"] = std::chrono::duration<double>(t1 - t0).count();
    return report;
}

bool report_ok(const Json& report) { return report.value("ok", false); }

BatchSummary batch_run(const std::string& directory, int jobs) {
    namespace fs = std::filesystem;
    if (jobs < 1) throw FormatError("jobs must be positive");

    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(directory))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    std::vector<Json> results(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= files.size()) return;
            Json rec;
            rec["file"] = fs::path(files[i]).filename().string();
            try {
                std::ifstream in(files[i]);
                if (!in) throw Error("cannot open file");
                std::stringstream buf;
                buf << in.rdbuf();
                Scenario s = parse_scenario(buf.str());
                Json report = run_scenario(s);
                rec["ok"] = report_ok(report);
                rec["report"] = std::move(report);
            } catch (const std::exception& e) {
                rec["ok"] = false;
                rec["error"] = e.what();
            }
            results[i] = std::move(rec);
        }
    };

    std::vector<std::thread> pool;
    int n_threads = std::min<int>(jobs, std::max<std::size_t>(files.size(), 1));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    BatchSummary summary;
    int passed = 0;
    Json arr = Json::array();
    for (auto& rec : results) {
        bool ok = rec.value("ok", false);
        passed += ok ? 1 : 0;
        summary.all_ok = summary.all_ok && ok;
        arr.push_back(std::move(rec));
    }
    summary.json["format_version"] = 1;
    summary.json["tool"] = kToolVersion;
    summary.json["total"] = files.size();
    summary.json["passed"] = passed;
    summary.json["failed"] = static_cast<int>(files.size()) - passed;
    summary.json["scenarios"] = std::move(arr);
    summary.json["ok"] = summary.all_ok;
    return summary;
}

std::string digest_hex(std::uint64_t digest) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

} // namespace kn
