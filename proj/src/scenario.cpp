#include "kn/scenario.hpp"

#include <algorithm>
#include <set>

namespace kn {

namespace {

const std::set<std::string> kAnalyses = {"classify",   "identities", "matsushima",
                                         "luna",       "stability",  "hilbert-mumford"};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw FormatError("scenario: " + where + ": " + what);
}

void require_keys(const Json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(where, "unknown key '" + it.key() + "'");
}

Rational parse_rational_field(const Json& j, const std::string& where) {
    if (j.is_number_integer())
        return Rational(static_cast<long long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    fail(where, "expected an integer or rational string");
}

GaussianRational parse_complex(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        fail(where, "complex scalar must be a two-element array [re, im]");
    return {parse_rational_field(j[0], where + "[0]"), parse_rational_field(j[1], where + "[1]")};
}

ExactVector parse_exact_vector(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array");
    ExactVector v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

Json complex_to_json(const GaussianRational& z) {
    return Json::array({rational_to_string(z.re), rational_to_string(z.im)});
}

Json exact_vector_to_json(const ExactVector& v) {
    Json out = Json::array();
    for (const auto& z : v) out.push_back(complex_to_json(z));
    return out;
}

RepSpec parse_rep(const Json& j) {
    require_keys(j, "representation",
                 {"type", "rank", "weights", "degree", "dim", "generators", "label"});
    if (!j.contains("type") || !j["type"].is_string())
        fail("representation", "missing string 'type'");
    RepSpec spec;
    const std::string type = j["type"].get<std::string>();
    if (type == "torus") {
        spec.kind = RepKind::Torus;
        if (!j.contains("weights") || !j["weights"].is_array() || j["weights"].empty())
            fail("representation", "torus needs a nonempty 'weights' array");
        const Json& w = j["weights"];
        const std::size_t n = w.size();
        std::size_t r = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!w[i].is_array() || w[i].empty())
                fail("representation.weights", "each row must be a nonempty integer array");
            if (i == 0)
                r = w[i].size();
            else if (w[i].size() != r)
                fail("representation.weights", "ragged weight matrix");
        }
        spec.weights.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < r; ++k) {
                if (!w[i][k].is_number_integer())
                    fail("representation.weights", "entries must be integers");
                spec.weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                    w[i][k].get<int>();
            }
        spec.rank = static_cast<int>(r);
        if (j.contains("rank")) {
            if (!j["rank"].is_number_integer() || j["rank"].get<int>() != spec.rank)
                fail("representation.rank", "does not match the weight matrix");
        }
        if (j.contains("degree") || j.contains("dim") || j.contains("generators"))
            fail("representation", "torus rep does not take degree/dim/generators");
    } else if (type == "binary_form") {
        spec.kind = RepKind::BinaryForm;
        if (!j.contains("degree") || !j["degree"].is_number_integer())
            fail("representation", "binary_form needs integer 'degree'");
        spec.degree = j["degree"].get<int>();
        if (spec.degree < 1) fail("representation.degree", "must be >= 1");
        if (j.contains("rank") || j.contains("weights") || j.contains("dim") ||
            j.contains("generators"))
            fail("representation", "binary_form only takes 'degree'");
    } else if (type == "custom") {
        spec.kind = RepKind::Custom;
        if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
            fail("representation", "custom needs a nonempty 'generators' array");
        for (const auto& g : j["generators"]) {
            if (!g.is_array() || g.empty()) fail("representation.generators", "bad matrix");
            std::vector<std::vector<GaussianRational>> mat;
            const std::size_t n = g.size();
            for (const auto& row : g) {
                if (!row.is_array() || row.size() != n)
                    fail("representation.generators", "matrices must be square");
                std::vector<GaussianRational> r;
                for (const auto& entry : row)
                    r.push_back(parse_complex(entry, "representation.generators"));
                mat.push_back(std::move(r));
            }
            spec.generators.push_back(std::move(mat));
        }
        spec.dim = static_cast<int>(spec.generators.front().size());
        if (j.contains("dim")) {
            if (!j["dim"].is_number_integer() || j["dim"].get<int>() != spec.dim)
                fail("representation.dim", "does not match the generator matrices");
        }
        if (j.contains("label")) {
            if (!j["label"].is_string()) fail("representation.label", "must be a string");
            spec.label = j["label"].get<std::string>();
        }
    } else {
        fail("representation.type", "must be torus, binary_form, or custom");
    }
    return spec;
}

SubgroupGen parse_subgroup_gen(const Json& j, const std::string& where) {
    if (j.is_number_integer()) {
        int idx = j.get<int>();
        if (idx < 0) fail(where, "generator index must be nonnegative");
        return idx;
    }
    if (j.is_array()) {
        std::vector<Rational> coords;
        for (std::size_t i = 0; i < j.size(); ++i)
            coords.push_back(parse_rational_field(j[i], where));
        return coords;
    }
    fail(where, "expected an index or a coordinate array");
}

void parse_options(const Json& j, ScenarioOptions& opt) {
    require_keys(j, "options",
                 {"kn", "seed", "probes", "samples", "subgroup", "special_points"});
    if (j.contains("kn")) {
        const Json& k = j["kn"];
        require_keys(k, "options.kn",
                     {"tol_mu", "tol_null", "max_iters", "armijo_c", "backtrack_factor",
                      "initial_step"});
        auto set_rational = [&](const char* name, double& target) {
            if (!k.contains(name)) return;
            Rational q = parse_rational_field(k[name], std::string("options.kn.") + name);
            opt.kn_overrides.emplace_back(name, q);
            target = to_double(q);
        };
        set_rational("tol_mu", opt.kn.tol_mu);
        set_rational("tol_null", opt.kn.tol_null);
        set_rational("armijo_c", opt.kn.armijo_c);
        set_rational("backtrack_factor", opt.kn.backtrack_factor);
        set_rational("initial_step", opt.kn.initial_step);
        if (k.contains("max_iters")) {
            if (!k["max_iters"].is_number_integer())
                fail("options.kn.max_iters", "must be an integer");
            opt.kn.max_iters = k["max_iters"].get<int>();
            opt.max_iters_override = opt.kn.max_iters;
        }
        opt.kn.validate();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            fail("options.seed", "must be an integer");
        opt.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("probes")) {
        if (!j["probes"].is_number_integer() || j["probes"].get<int>() < 1)
            fail("options.probes", "must be a positive integer");
        opt.probes = j["probes"].get<int>();
    }
    if (j.contains("samples")) {
        if (!j["samples"].is_number_integer() || j["samples"].get<int>() < 1)
            fail("options.samples", "must be a positive integer");
        opt.samples = j["samples"].get<int>();
    }
    if (j.contains("subgroup")) {
        const Json& s = j["subgroup"];
        require_keys(s, "options.subgroup", {"h", "k1"});
        if (s.contains("h"))
            for (std::size_t i = 0; i < s["h"].size(); ++i)
                opt.subgroup_h.push_back(parse_subgroup_gen(s["h"][i], "options.subgroup.h"));
        if (s.contains("k1"))
            for (std::size_t i = 0; i < s["k1"].size(); ++i)
                opt.subgroup_k1.push_back(parse_subgroup_gen(s["k1"][i], "options.subgroup.k1"));
    }
    if (j.contains("special_points")) {
        if (!j["special_points"].is_array())
            fail("options.special_points", "expected an array of vectors");
        for (std::size_t i = 0; i < j["special_points"].size(); ++i)
            opt.special_points.push_back(parse_exact_vector(
                j["special_points"][i], "options.special_points[" + std::to_string(i) + "]"));
    }
}

} // namespace

Rep RepSpec::build() const {
    switch (kind) {
        case RepKind::Torus:
            return Rep::torus(weights);
        case RepKind::BinaryForm:
            return Rep::binary_form(degree);
        case RepKind::Custom: {
            std::vector<Mat> gens;
            for (const auto& g : generators) {
                Mat m(dim, dim);
                for (int r = 0; r < dim; ++r)
                    for (int c = 0; c < dim; ++c)
                        m(r, c) = g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]
                                      .to_complex();
                gens.push_back(std::move(m));
            }
            return Rep::custom(std::move(gens), label);
        }
    }
    throw Error("unreachable");
}

SubgroupData Scenario::subgroup(const Rep& r) const {
    SubgroupData data;
    auto materialize = [&](const std::vector<SubgroupGen>& src, std::vector<RVec>& dst,
                           const char* where) {
        for (const auto& g : src) {
            if (std::holds_alternative<int>(g)) {
                int idx = std::get<int>(g);
                if (idx >= r.num_generators())
                    throw FormatError(std::string(where) + ": generator index out of range");
                RVec e = RVec::Zero(r.num_generators());
                e(idx) = 1.0;
                dst.push_back(std::move(e));
            } else {
                const auto& coords = std::get<std::vector<Rational>>(g);
                if (static_cast<int>(coords.size()) != r.num_generators())
                    throw FormatError(std::string(where) + ": coordinate length mismatch");
                RVec e(r.num_generators());
                for (std::size_t i = 0; i < coords.size(); ++i)
                    e(static_cast<Eigen::Index>(i)) = to_double(coords[i]);
                dst.push_back(std::move(e));
            }
        }
    };
    materialize(options.subgroup_h, data.h_generators, "subgroup.h");
    materialize(options.subgroup_k1, data.k1_generators, "subgroup.k1");
    return data;
}

Scenario parse_scenario_json(const Json& j) {
    require_keys(j, "scenario", {"representation", "vector", "analyses", "options"});
    if (!j.contains("representation")) fail("scenario", "missing 'representation'");
    if (!j.contains("vector")) fail("scenario", "missing 'vector'");
    if (!j.contains("analyses")) fail("scenario", "missing 'analyses'");

    Scenario s;
    s.rep = parse_rep(j["representation"]);
    s.vector = parse_exact_vector(j["vector"], "vector");

    Rep built = s.rep.build();
    if (static_cast<int>(s.vector.size()) != built.dim())
        fail("vector", "length does not match the representation dimension");

    if (!j["analyses"].is_array() || j["analyses"].empty())
        fail("analyses", "expected a nonempty array");
    for (const auto& a : j["analyses"]) {
        if (!a.is_string() || !kAnalyses.count(a.get<std::string>()))
            fail("analyses", "unknown analysis '" + a.dump() + "'");
        s.analyses.push_back(a.get<std::string>());
    }

    if (j.contains("options")) parse_options(j["options"], s.options);

    for (const auto& p : s.options.special_points)
        if (static_cast<int>(p.size()) != built.dim())
            fail("options.special_points", "length does not match the representation dimension");
    return s;
}

Scenario parse_scenario(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("scenario: invalid JSON: ") + e.what());
    }
    return parse_scenario_json(j);
}

Json serialize_scenario(const Scenario& s) {
    Json rep;
    switch (s.rep.kind) {
        case RepKind::Torus: {
            rep["type"] = "torus";
            rep["rank"] = s.rep.rank;
            Json w = Json::array();
            for (Eigen::Index i = 0; i < s.rep.weights.rows(); ++i) {
                Json row = Json::array();
                for (Eigen::Index j2 = 0; j2 < s.rep.weights.cols(); ++j2)
                    row.push_back(s.rep.weights(i, j2));
                w.push_back(std::move(row));
            }
            rep["weights"] = std::move(w);
            break;
        }
        case RepKind::BinaryForm:
            rep["type"] = "binary_form";
            rep["degree"] = s.rep.degree;
            break;
        case RepKind::Custom: {
            rep["type"] = "custom";
            rep["dim"] = s.rep.dim;
            Json gens = Json::array();
            for (const auto& g : s.rep.generators) {
                Json m = Json::array();
                for (const auto& row : g) {
                    Json r = Json::array();
                    for (const auto& z : row) r.push_back(complex_to_json(z));
                    m.push_back(std::move(r));
                }
                gens.push_back(std::move(m));
            }
            rep["generators"] = std::move(gens);
            if (!s.rep.label.empty()) rep["label"] = s.rep.label;
            break;
        }
    }

    Json out;
    out["representation"] = std::move(rep);
    out["vector"] = exact_vector_to_json(s.vector);
    out["analyses"] = s.analyses;

    Json opt = Json::object();
    if (!s.options.kn_overrides.empty() || s.options.max_iters_override) {
        Json knj = Json::object();
        for (const auto& [name, q] : s.options.kn_overrides)
            knj[name] = rational_to_string(q);
        if (s.options.max_iters_override) knj["max_iters"] = *s.options.max_iters_override;
        opt["kn"] = std::move(knj);
    }
    if (s.options.seed != 0) opt["seed"] = s.options.seed;
    if (s.options.probes != 20) opt["probes"] = s.options.probes;
    if (s.options.samples != 200) opt["samples"] = s.options.samples;
    if (!s.options.subgroup_h.empty() || !s.options.subgroup_k1.empty()) {
        Json sub = Json::object();
        auto gens_to_json = [](const std::vector<SubgroupGen>& gens) {
            Json arr = Json::array();
            for (const auto& g : gens) {
                if (std::holds_alternative<int>(g)) {
                    arr.push_back(std::get<int>(g));
                } else {
                    Json coords = Json::array();
                    for (const auto& q : std::get<std::vector<Rational>>(g))
                        coords.push_back(rational_to_string(q));
                    arr.push_back(std::move(coords));
                }
            }
            return arr;
        };
        if (!s.options.subgroup_h.empty()) sub["h"] = gens_to_json(s.options.subgroup_h);
        if (!s.options.subgroup_k1.empty()) sub["k1"] = gens_to_json(s.options.subgroup_k1);
        opt["subgroup"] = std::move(sub);
    }
    if (!s.options.special_points.empty()) {
        Json arr = Json::array();
        for (const auto& p : s.options.special_points) arr.push_back(exact_vector_to_json(p));
        opt["special_points"] = std::move(arr);
    }
    if (!opt.empty()) out["options"] = std::move(opt);
    return out;
}

std::uint64_t scenario_digest(const Scenario& s) {
    const std::string text = serialize_scenario(s).dump();
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

bool scenario_equal(const Scenario& a, const Scenario& b) {
    return serialize_scenario(a) == serialize_scenario(b);
}

} // namespace kn
