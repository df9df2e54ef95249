#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kn/criteria.hpp"

namespace kn {

using Json = nlohmann::ordered_json;

// Subgroup generator: an index into the ambient compact basis, or explicit
// rational coordinates against it.
using SubgroupGen = std::variant<int, std::vector<Rational>>;

struct RepSpec {
    RepKind kind = RepKind::Torus;
    int rank = 0;     // torus
    IMat weights;     // torus
    int degree = 0;   // binary form
    int dim = 0;      // custom
    std::vector<std::vector<std::vector<GaussianRational>>> generators; // custom, row-major
    std::string label;

    Rep build() const;
};

struct ScenarioOptions {
    KNOptions kn;
    // Exact override values, kept so serialization round-trips canonical
    // rational forms. max_iters rides along in KNOptions directly.
    std::vector<std::pair<std::string, Rational>> kn_overrides;
    std::optional<int> max_iters_override;
    std::uint64_t seed = 0;
    int probes = 20;
    int samples = 200;
    std::vector<SubgroupGen> subgroup_h;
    std::vector<SubgroupGen> subgroup_k1;
    std::vector<ExactVector> special_points;
};

struct Scenario {
    RepSpec rep;
    ExactVector vector;
    std::vector<std::string> analyses;
    ScenarioOptions options;

    SubgroupData subgroup(const Rep& rep) const;
};

// Strict parser for the scenario schema; unknown keys are rejected with
// field diagnostics. Complex scalars are two-element arrays of rational
// strings [re, im].
Scenario parse_scenario(const std::string& text);
Scenario parse_scenario_json(const Json& j);

// Canonical serialization; parse(serialize(s)) == s with all rationals in
// reduced form.
Json serialize_scenario(const Scenario& s);

std::uint64_t scenario_digest(const Scenario& s);

bool scenario_equal(const Scenario& a, const Scenario& b);

} // namespace kn
