#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jforge/algebroid.hpp"
#include "support/algebroid_gen.hpp"
#include "support/fixtures.hpp"

using namespace jforge;
using namespace jforge::algebroid;
using namespace jforge::testing;

TEST_CASE("check_axioms accepts the families and rejects a broken bracket") {
    CHECK(check_axioms(abelian(0, 3)).pass);
    CHECK(check_axioms(so3_algebra()).pass);
    CHECK(check_axioms(heisenberg()).pass);
    CHECK(check_axioms(aff1()).pass);
    CHECK(check_axioms(filiform4()).pass);
    CHECK(check_axioms(sl2_action()).pass);
    CHECK(check_axioms(tangent_algebroid(base_chart_m(2))).pass);

    // [e0,e1] = e2 with [e0,e2] = e0 violates the Jacobi identity on (0,1,2)
    AlgebroidData bad(base_chart_m(0), 3);
    bad.set_c(0, 1, 2, Polynomial::constant(bad.base_chart(), Scalar(1)));
    bad.set_c(0, 2, 0, Polynomial::constant(bad.base_chart(), Scalar(1)));
    auto rep = check_axioms(bad);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.jacobi_witness.has_value());
    CHECK(*rep.jacobi_witness == std::array<int, 3>{0, 1, 2});

    // anchor that is not a bracket homomorphism
    AlgebroidData bad2(base_chart_m(1), 2);
    bad2.set_anchor(0, 0, Polynomial::constant(bad2.base_chart(), Scalar(1)));
    bad2.set_anchor(1, 0, Polynomial::variable(bad2.base_chart(), 0));
    // abelian bracket but [rho0, rho1] = d/dx != 0
    auto rep2 = check_axioms(bad2);
    CHECK_FALSE(rep2.pass);
    CHECK(rep2.anchor_witness.has_value());
}

TEST_CASE("random valid algebroids pass the axioms") {
    Rng rng(101);
    for (int it = 0; it < 40; ++it) {
        auto a = random_valid_algebroid(rng);
        CAPTURE(it);
        CHECK(check_axioms(a).pass);
    }
}

TEST_CASE("exterior derivative: so(3) basis forms and the cocycle property") {
    auto a = so3_algebra();
    // d of a function over a point is zero
    auto f = AlgebroidForm::scalar(a.base_chart(), 3, Polynomial::constant(a.base_chart(), Scalar(1)));
    CHECK(exterior_derivative(a, f).is_zero());

    // d eps^2 = -eps^0 ^ eps^1  (0-based: [e0,e1] = e2)
    AlgebroidForm eps2(a.base_chart(), 3, 1);
    eps2.add_term({2}, Polynomial::constant(a.base_chart(), Scalar(1)));
    auto d2 = exterior_derivative(a, eps2);
    AlgebroidForm expect(a.base_chart(), 3, 2);
    expect.add_term({0, 1}, Polynomial::constant(a.base_chart(), Scalar(-1)));
    CHECK(d2 == expect);

    // d(df) = 0 on random algebroids and functions
    Rng rng(303);
    for (int it = 0; it < 30; ++it) {
        auto b = random_valid_algebroid(rng);
        auto g = AlgebroidForm::scalar(b.base_chart(), b.rank(),
                                       random_polynomial(rng, b.base_chart()));
        CHECK(exterior_derivative(b, exterior_derivative(b, g)).is_zero());
        auto mu = random_multisection(rng, b, std::min(1, b.rank() - 1) + 0);
        CHECK(exterior_derivative(b, exterior_derivative(b, mu)).is_zero());
    }
}

TEST_CASE("exterior derivative on functions pairs with the anchor") {
    Rng rng(304);
    for (int it = 0; it < 20; ++it) {
        auto a = random_valid_algebroid(rng);
        auto f = random_polynomial(rng, a.base_chart());
        auto df = exterior_derivative(a, AlgebroidForm::scalar(a.base_chart(), a.rank(), f));
        for (int al = 0; al < a.rank(); ++al)
            CHECK(df.component({al}) == a.anchor_apply(al, f));
    }
}

TEST_CASE("linear_poisson: abelian, so(3), heisenberg") {
    CHECK(linear_poisson(abelian(0, 2)).lambda.is_zero());

    auto j = linear_poisson(so3_algebra());
    auto c = j.chart();
    // xi3 d1^d2 + xi1 d2^d3 + xi2 d3^d1
    poly::Multivector expect(c, 2);
    expect.add_term({0, 1}, Polynomial::variable(c, 2));
    expect.add_term({1, 2}, Polynomial::variable(c, 0));
    expect.add_term({2, 0}, Polynomial::variable(c, 1));
    CHECK(j.lambda == expect);
    CHECK(j.e.is_zero());
    CHECK(jacobi::check_master(j).pass);

    auto h = linear_poisson(heisenberg());
    poly::Multivector hexpect(h.chart(), 2);
    hexpect.add_term({0, 1}, Polynomial::variable(h.chart(), 2));
    CHECK(h.lambda == hexpect);
}

TEST_CASE("linear_poisson satisfies the iota bracket identity and is homogeneous") {
    Rng rng(404);
    for (int it = 0; it < 25; ++it) {
        auto a = random_valid_algebroid(rng, 2, 3);
        auto j = linear_poisson(a);
        auto c = j.chart();
        const int m = a.base_dim();
        CHECK(jacobi::check_master(j).pass);
        // iota_{[X,Y]} = {iota_X, iota_Y} on basis sections
        for (int al = 0; al < a.rank(); ++al) {
            for (int be = al + 1; be < a.rank(); ++be) {
                auto br = a.basis_bracket(al, be);
                Polynomial iota = Polynomial::zero(c);
                std::vector<int> base_map(static_cast<size_t>(m));
                for (int l = 0; l < m; ++l) base_map[static_cast<size_t>(l)] = l;
                for (const auto& [idx, coeff] : br.components())
                    iota = iota + coeff.remap(c, base_map) * Polynomial::variable(c, m + idx[0]);
                CHECK(jacobi::jacobi_bracket(j, Polynomial::variable(c, m + al),
                                             Polynomial::variable(c, m + be)) == iota);
            }
        }
        // homogeneous: L_Delta Lambda = -Lambda
        CHECK(lie_derivative(liouville_field(c), j.lambda) == -j.lambda);
        auto rep = jacobi::classify(j);
        CHECK(rep.is_linear == jacobi::Flag::True);
        CHECK(rep.is_homogeneous == jacobi::Flag::True);
        CHECK(rep.is_poisson == jacobi::Flag::True);
    }
}

TEST_CASE("lifts: vertical and complete basics") {
    auto a = abelian(0, 2);
    auto e0 = Multisection::basis(a.base_chart(), 2, 0);
    auto v = lift(a, e0, LiftMode::Vertical);
    CHECK(v == poly::Multivector::basis_vector(v.chart(), 0));

    // A = TM over R^1, X = x d/dx: complete lift is x d/dx + y d/dy
    auto tm = tangent_algebroid(base_chart_m(1));
    Multisection x(tm.base_chart(), 1, 1);
    x.add_term({0}, Polynomial::variable(tm.base_chart(), 0));
    auto xc = lift(tm, x, LiftMode::Complete);
    auto tc = xc.chart();
    poly::Multivector expect(tc, 1);
    expect.add_term({0}, Polynomial::variable(tc, 0));
    expect.add_term({1}, Polynomial::variable(tc, 1));
    CHECK(xc == expect);

    // abelian over a point: complete lifts of sections vanish
    Rng rng(505);
    for (int it = 0; it < 5; ++it) {
        auto ab = abelian(0, 3);
        auto s = random_multisection(rng, ab, 1);
        CHECK(lift(ab, s, LiftMode::Complete).is_zero());
    }
}

TEST_CASE("complete lift is a bracket homomorphism") {
    Rng rng(606);
    int nontrivial = 0;
    for (int it = 0; it < 40; ++it) {
        auto a = random_valid_algebroid(rng, 2, 3);
        auto total = total_chart(a);
        std::uniform_int_distribution<int> deg(1, 2);
        auto x = random_multisection(rng, a, deg(rng));
        auto y = random_multisection(rng, a, deg(rng));
        auto br = algebroid_schouten(a, x, y);
        if (!br.is_zero()) ++nontrivial;

        auto xc = lift(a, x, LiftMode::Complete, total);
        auto yc = lift(a, y, LiftMode::Complete, total);
        auto yv = lift(a, y, LiftMode::Vertical, total);
        CHECK(lift(a, br, LiftMode::Complete, total) == schouten_nijenhuis(xc, yc));
        CHECK(lift(a, br, LiftMode::Vertical, total) == schouten_nijenhuis(xc, yv));
    }
    CHECK(nontrivial > 5);
}

TEST_CASE("complete lift defining rules") {
    Rng rng(707);
    for (int it = 0; it < 20; ++it) {
        auto a = random_valid_algebroid(rng, 1, 3);
        auto total = total_chart(a);
        const int m = a.base_dim();
        // f^c = iota_{df}
        auto f = random_polynomial(rng, a.base_chart(), 2, 2);
        auto fc = lift(a, Multisection::scalar(a.base_chart(), a.rank(), f), LiftMode::Complete,
                       total);
        auto df = exterior_derivative(a, AlgebroidForm::scalar(a.base_chart(), a.rank(), f));
        Polynomial iota_df = Polynomial::zero(total);
        std::vector<int> base_map(static_cast<size_t>(m));
        for (int l = 0; l < m; ++l) base_map[static_cast<size_t>(l)] = l;
        for (int al = 0; al < a.rank(); ++al)
            iota_df = iota_df +
                      df.component({al}).remap(total, base_map) * Polynomial::variable(total, m + al);
        CHECK(fc.scalar_part() == iota_df);

        // (X ^ Y)^c = X^c ^ Y^v + X^v ^ Y^c
        auto x = random_multisection(rng, a, 1);
        auto y = random_multisection(rng, a, 1);
        auto lhs = lift(a, algebroid::wedge(x, y), LiftMode::Complete, total);
        auto rhs = wedge(lift(a, x, LiftMode::Complete, total), lift(a, y, LiftMode::Vertical, total)) +
                   wedge(lift(a, x, LiftMode::Vertical, total), lift(a, y, LiftMode::Complete, total));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("algebroid Schouten bracket: graded identities") {
    Rng rng(808);
    for (int it = 0; it < 30; ++it) {
        auto a = random_valid_algebroid(rng, 1, 3);
        std::uniform_int_distribution<int> deg(0, 2);
        int k = deg(rng), l = deg(rng);
        auto u = random_multisection(rng, a, k);
        auto v = random_multisection(rng, a, l);
        auto uv = algebroid_schouten(a, u, v);
        auto vu = algebroid_schouten(a, v, u);
        if (uv.degree() == vu.degree())
            CHECK(uv == (((k - 1) * (l - 1)) % 2 == 0 ? -vu : vu));

        auto w = random_multisection(rng, a, 1);
        // Leibniz in the second slot (skip the degree-clamped k = l = 0 case)
        if (k + l > 0) {
            auto lhs = algebroid_schouten(a, u, algebroid::wedge(v, w));
            auto t2 = algebroid::wedge(v, algebroid_schouten(a, u, w));
            auto rhs = algebroid::wedge(uv, w) + (((k - 1) * l) % 2 == 0 ? t2 : -t2);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("algebroid Schouten matches anchor and structure functions on generators") {
    Rng rng(909);
    for (int it = 0; it < 20; ++it) {
        auto a = random_valid_algebroid(rng, 2, 3);
        auto f = random_multisection(rng, a, 0);
        for (int al = 0; al < a.rank(); ++al) {
            auto ea = Multisection::basis(a.base_chart(), a.rank(), al);
            CHECK(algebroid_schouten(a, ea, f) ==
                  Multisection::scalar(a.base_chart(), a.rank(),
                                       a.anchor_apply(al, f.component({}))));
            for (int be = 0; be < a.rank(); ++be) {
                auto eb = Multisection::basis(a.base_chart(), a.rank(), be);
                CHECK(algebroid_schouten(a, ea, eb) == a.basis_bracket(al, be));
            }
        }
    }
}

TEST_CASE("detect_special") {
    auto ab = abelian(0, 3);
    ab.distinguished = 0;
    auto rep = detect_special(ab);
    CHECK(rep.kind == SpecialKind::Special);
    CHECK(rep.xbar0->is_zero());

    // [e0,e1] = e0: almost-special with X0bar(e1) = -1
    AlgebroidData alm(base_chart_m(0), 2);
    alm.set_c(0, 1, 0, Polynomial::constant(alm.base_chart(), Scalar(1)));
    alm.distinguished = 0;
    auto rep2 = detect_special(alm);
    CHECK(rep2.kind == SpecialKind::AlmostSpecial);
    CHECK(rep2.xbar0->component({1}) == Polynomial::constant(alm.base_chart(), Scalar(-1)));
    // X0bar is a cocycle
    CHECK(exterior_derivative(alm, *rep2.xbar0).is_zero());

    // [e0,e1] = e1: the span of e0 is not an ideal
    CHECK(detect_special([&] {
              auto a = aff1();
              a.distinguished = 0;
              return a;
          }()).kind == SpecialKind::Neither);

    CHECK_THROWS_AS(detect_special(abelian(0, 2)), PreconditionError);
}
