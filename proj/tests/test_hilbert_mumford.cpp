#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kn/hilbert_mumford.hpp"
#include "support/generators.hpp"

using namespace kn;
using namespace kn::testsupport;

namespace {

IMat weights_1d(std::initializer_list<int> ws) {
    IMat m(static_cast<Eigen::Index>(ws.size()), 1);
    Eigen::Index i = 0;
    for (int w : ws) m(i++, 0) = w;
    return m;
}

ExactVector ones(int n) {
    return ExactVector(static_cast<std::size_t>(n), GaussianRational(1));
}

IVec lam1(int x) {
    IVec l(1);
    l << x;
    return l;
}

// Exact re-verification of an oracle certificate.
void verify_verdict(const IMat& weights, const TorusVerdict& tv) {
    if (tv.kind == TorusVerdictKind::Closed) {
        if (tv.support.empty()) return; // zero vector
        REQUIRE(tv.closed_certificate.size() == tv.support.size());
        Rational total(0);
        std::vector<Rational> sums(static_cast<std::size_t>(weights.cols()), Rational(0));
        for (std::size_t i = 0; i < tv.support.size(); ++i) {
            CHECK(tv.closed_certificate[i] > 0);
            total += tv.closed_certificate[i];
            for (Eigen::Index j = 0; j < weights.cols(); ++j)
                sums[static_cast<std::size_t>(j)] +=
                    tv.closed_certificate[i] * tv.support[i](j);
        }
        CHECK(total == 1);
        for (const auto& s : sums) CHECK(s == 0);
    } else {
        REQUIRE(tv.destabilizing.has_value());
        bool some_positive = false;
        bool some_zero = false;
        for (const auto& a : tv.support) {
            long m = 0;
            for (Eigen::Index j = 0; j < a.size(); ++j) m += static_cast<long>(a(j)) * (*tv.destabilizing)(j);
            CHECK(m >= 0);
            if (m > 0) some_positive = true;
            if (m == 0) some_zero = true;
            if (tv.kind == TorusVerdictKind::NullCone) CHECK(m > 0);
        }
        CHECK(some_positive);
        if (tv.kind == TorusVerdictKind::SemistableNotClosed) CHECK(some_zero);
    }
}

} // namespace

TEST_CASE("support weights") {
    Rep rep = build_torus_rep(weights_1d({1, -1}));
    auto s1 = support_weights(rep, ones(2));
    REQUIRE(s1.size() == 2);
    CHECK(s1[0](0) == 1);
    CHECK(s1[1](0) == -1);

    ExactVector v = {GaussianRational(0), GaussianRational(5)};
    auto s2 = support_weights(rep, v);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0](0) == -1);

    CHECK(support_weights(rep, ExactVector(2)).empty());

    // Floating overload with zero tolerance relative to the norm.
    Vec f(2);
    f << Cplx(1, 0), Cplx(1e-12, 0);
    CHECK(support_weights(rep, f, 1e-9).size() == 1);

    // Duplicate weights deduplicated.
    Rep rep2 = build_torus_rep(weights_1d({1, 1}));
    CHECK(support_weights(rep2, ones(2)).size() == 1);
}

TEST_CASE("torus oracle trichotomy") {
    {
        Rep rep = build_torus_rep(weights_1d({1, -1}));
        TorusVerdict tv = torus_orbit_oracle(rep, ones(2));
        CHECK(tv.kind == TorusVerdictKind::Closed);
        REQUIRE(tv.closed_certificate.size() == 2);
        CHECK(tv.closed_certificate[0] == Rational(1) / 2);
        CHECK(tv.closed_certificate[1] == Rational(1) / 2);
        verify_verdict(rep.weights(), tv);
    }
    {
        Rep rep = build_torus_rep(weights_1d({1}));
        TorusVerdict tv = torus_orbit_oracle(rep, ones(1));
        CHECK(tv.kind == TorusVerdictKind::NullCone);
        REQUIRE(tv.destabilizing.has_value());
        CHECK((*tv.destabilizing)(0) == 1);
        verify_verdict(rep.weights(), tv);
    }
    {
        Rep rep = build_torus_rep(weights_1d({2, 0, -1}));
        ExactVector v = {GaussianRational(1), GaussianRational(1), GaussianRational(0)};
        TorusVerdict tv = torus_orbit_oracle(rep, v);
        CHECK(tv.kind == TorusVerdictKind::SemistableNotClosed);
        verify_verdict(rep.weights(), tv);
    }
    {
        IMat w(3, 2);
        w << 1, 0, 0, 1, -1, -1;
        Rep rep = build_torus_rep(w);
        TorusVerdict tv = torus_orbit_oracle(rep, ones(3));
        CHECK(tv.kind == TorusVerdictKind::Closed);
        REQUIRE(tv.closed_certificate.size() == 3);
        for (const auto& c : tv.closed_certificate) CHECK(c == Rational(1) / 3);
        verify_verdict(w, tv);
    }
    {
        // v = 0: the zero orbit is closed with an empty certificate.
        Rep rep = build_torus_rep(weights_1d({1}));
        TorusVerdict tv = torus_orbit_oracle(rep, ExactVector(1));
        CHECK(tv.kind == TorusVerdictKind::Closed);
        CHECK(tv.support.empty());
    }
}

TEST_CASE("find_destabilizing_1ps") {
    Rep closed = build_torus_rep(weights_1d({1, -1}));
    CHECK(!find_destabilizing_1ps(closed, ones(2)).has_value());

    Rep null1 = build_torus_rep(weights_1d({1}));
    auto l1 = find_destabilizing_1ps(null1, ones(1));
    REQUIRE(l1.has_value());
    CHECK((*l1)(0) == 1);

    Rep semi = build_torus_rep(weights_1d({2, 0, -1}));
    ExactVector v = {GaussianRational(1), GaussianRational(1), GaussianRational(0)};
    auto l2 = find_destabilizing_1ps(semi, v);
    REQUIRE(l2.has_value());
    CHECK((*l2)(0) == 1); // pairings (2,0) on the support; found at B=1

    OnePS tau{*l2, std::nullopt};
    auto limit = one_ps_limit(weight_decompose(semi, v, tau));
    REQUIRE(limit.has_value());
    CHECK((*limit)[0].is_zero());
    CHECK((*limit)[1] == GaussianRational(1));
    CHECK((*limit)[2].is_zero());
}

TEST_CASE("weight decomposition") {
    Rep rep = build_torus_rep(weights_1d({2, 0, -1}));
    OnePS tau{lam1(1), std::nullopt};
    WeightDecomposition dec = weight_decompose(rep, ones(3), tau);
    REQUIRE(dec.components.size() == 3);
    CHECK(dec.components.at(2)[0] == GaussianRational(1));
    CHECK(dec.components.at(0)[1] == GaussianRational(1));
    CHECK(dec.components.at(-1)[2] == GaussianRational(1));

    OnePS zero{lam1(0), std::nullopt};
    WeightDecomposition dz = weight_decompose(rep, ones(3), zero);
    REQUIRE(dz.components.size() == 1);
    CHECK(dz.components.count(0) == 1);

    Rep shared = build_torus_rep(weights_1d({1, 1}));
    ExactVector v34 = {GaussianRational(3), GaussianRational(4)};
    WeightDecomposition ds = weight_decompose(shared, v34, OnePS{lam1(1), std::nullopt});
    REQUIRE(ds.components.size() == 1);
    CHECK(ds.components.at(1) == v34);
}

TEST_CASE("weight decomposition exactness and orthogonality") {
    std::mt19937_64 eng(41);
    std::uniform_int_distribution<int> lam(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        TorusInstance inst = random_torus_instance(eng);
        Rep rep = build_torus_rep(inst.weights);
        OnePS tau;
        tau.lambda = IVec(inst.weights.cols());
        for (Eigen::Index j = 0; j < tau.lambda.size(); ++j) tau.lambda(j) = lam(eng);
        WeightDecomposition dec = weight_decompose(rep, inst.v, tau);

        ExactVector sum(inst.v.size());
        for (const auto& [m, comp] : dec.components)
            for (std::size_t i = 0; i < comp.size(); ++i) sum[i] = sum[i] + comp[i];
        CHECK(sum == inst.v);

        for (auto it = dec.components.begin(); it != dec.components.end(); ++it)
            for (auto jt = std::next(it); jt != dec.components.end(); ++jt)
                CHECK(exact_hermitian_inner(it->second, jt->second).is_zero());
    }
}

TEST_CASE("one_ps_limit") {
    WeightDecomposition d1;
    d1.dim = 3;
    d1.components[2] = {GaussianRational(1), GaussianRational(0), GaussianRational(0)};
    d1.components[0] = {GaussianRational(0), GaussianRational(1), GaussianRational(0)};
    auto l1 = one_ps_limit(d1);
    REQUIRE(l1.has_value());
    CHECK((*l1)[1] == GaussianRational(1));

    WeightDecomposition d2;
    d2.dim = 3;
    d2.components[-1] = {GaussianRational(0), GaussianRational(0), GaussianRational(1)};
    d2.components[0] = {GaussianRational(0), GaussianRational(1), GaussianRational(0)};
    CHECK(!one_ps_limit(d2).has_value());

    WeightDecomposition d3;
    d3.dim = 2;
    d3.components[0] = {GaussianRational(5), GaussianRational(7)};
    auto l3 = one_ps_limit(d3);
    REQUIRE(l3.has_value());
    CHECK((*l3)[0] == GaussianRational(5));
}

TEST_CASE("pairing identity") {
    Rep rep = build_torus_rep(weights_1d({2, 0, -1}));
    CHECK(pairing_identity_residual(rep, ones(3), OnePS{lam1(0), std::nullopt}) <= 1e-15);

    // Both sides equal 1/2 for lambda = 1, v = (1,1,1).
    CHECK(torus_mu_pairing_exact(rep, ones(3), lam1(1)) == Rational(1) / 2);
    CHECK(pairing_identity_residual(rep, ones(3), OnePS{lam1(1), std::nullopt}) <= 1e-12);

    Rep bal = build_torus_rep(weights_1d({1, -1}));
    CHECK(torus_mu_pairing_exact(bal, ones(2), lam1(1)) == 0);
    CHECK(pairing_identity_residual(bal, ones(2), OnePS{lam1(1), std::nullopt}) <= 1e-15);
}

TEST_CASE("limit consistency with the mu pairing") {
    std::mt19937_64 eng(42);
    int checked = 0;
    for (int trial = 0; trial < 300 && checked < 60; ++trial) {
        TorusInstance inst = random_torus_instance(eng);
        Rep rep = build_torus_rep(inst.weights);
        auto lambda = find_destabilizing_1ps(rep, inst.v);
        if (!lambda) continue;
        ++checked;
        OnePS tau{*lambda, std::nullopt};
        auto limit = one_ps_limit(weight_decompose(rep, inst.v, tau));
        REQUIRE(limit.has_value());
        CHECK(*limit != inst.v); // the limit genuinely moves the point
        Rational pairing = torus_mu_pairing_exact(rep, inst.v, *lambda);
        CHECK(pairing >= 0);
        CHECK((pairing == 0) == (*limit == inst.v));
    }
    CHECK(checked >= 40);
}

TEST_CASE("sl2 oracle on the named forms") {
    // d=2, xy: two simple roots at d/2 multiplicity each -> Closed.
    {
        Sl2Verdict v = sl2_form_oracle(2, monomial_form(2, 1));
        CHECK(v.kind == TorusVerdictKind::Closed);
        CHECK(v.max_multiplicity == 1);
        CHECK(v.distinct_roots == 2);
    }
    // d=2, x^2: multiplicity 2 > 1 -> NullCone.
    {
        Sl2Verdict v = sl2_form_oracle(2, monomial_form(2, 0));
        CHECK(v.kind == TorusVerdictKind::NullCone);
        CHECK(v.max_multiplicity == 2);
    }
    // d=4, x^3 y -> NullCone (multiplicity 3 > 2).
    {
        Sl2Verdict v = sl2_form_oracle(4, monomial_form(4, 1));
        CHECK(v.kind == TorusVerdictKind::NullCone);
        CHECK(v.max_multiplicity == 3);
    }
    // d=4, x^2 y (x+y) = x^3 y + x^2 y^2: multiplicity 2 = d/2 with three
    // distinct roots -> SemistableNotClosed.
    {
        ExactVector c(5);
        c[1] = GaussianRational(1);
        c[2] = GaussianRational(1);
        Sl2Verdict v = sl2_form_oracle(4, c);
        CHECK(v.kind == TorusVerdictKind::SemistableNotClosed);
        CHECK(v.max_multiplicity == 2);
        CHECK(v.distinct_roots == 3);
    }
    // d=2, x^2 + y^2: roots +-i, simple -> Closed.
    {
        ExactVector c(3);
        c[0] = GaussianRational(1);
        c[2] = GaussianRational(1);
        Sl2Verdict v = sl2_form_oracle(2, c);
        CHECK(v.kind == TorusVerdictKind::Closed);
        CHECK(v.distinct_roots == 2);
    }
    // d=4, (xy)^2 -> Closed (two roots of multiplicity d/2).
    {
        Sl2Verdict v = sl2_form_oracle(4, monomial_form(4, 2));
        CHECK(v.kind == TorusVerdictKind::Closed);
        CHECK(v.max_multiplicity == 2);
        CHECK(v.distinct_roots == 2);
    }
    // d=4, x^4 + y^4: four simple roots -> Closed.
    {
        ExactVector c(5);
        c[0] = GaussianRational(1);
        c[4] = GaussianRational(1);
        Sl2Verdict v = sl2_form_oracle(4, c);
        CHECK(v.kind == TorusVerdictKind::Closed);
        CHECK(v.max_multiplicity == 1);
    }
    // Zero form -> Closed; length mismatch -> FormatError.
    CHECK(sl2_form_oracle(3, ExactVector(4)).kind == TorusVerdictKind::Closed);
    CHECK_THROWS_AS(sl2_form_oracle(3, ExactVector(3)), FormatError);
}

TEST_CASE("sl2 oracle vs rank-1 torus oracle on monomials (null-cone cases)") {
    for (int d = 1; d <= 6; ++d) {
        for (int k = 0; k <= d; ++k) {
            Sl2Verdict sv = sl2_form_oracle(d, monomial_form(d, k));
            // The monomial's diagonal-torus weight is d-2k; its rank-1 orbit
            // is NullCone iff the weight is nonzero, matching m* > d/2.
            IMat w(1, 1);
            w << d - 2 * k;
            Rep torus = build_torus_rep(w);
            TorusVerdict tv = torus_orbit_oracle(torus, ones(1));
            CHECK((sv.kind == TorusVerdictKind::NullCone) ==
                  (tv.kind == TorusVerdictKind::NullCone));
        }
    }
}

TEST_CASE("oracle certificates verify on random instances") {
    std::mt19937_64 eng(43);
    for (int trial = 0; trial < 150; ++trial) {
        TorusInstance inst = random_torus_instance(eng);
        Rep rep = build_torus_rep(inst.weights);
        TorusVerdict tv = torus_orbit_oracle(rep, inst.v);
        verify_verdict(inst.weights, tv);
    }
}
