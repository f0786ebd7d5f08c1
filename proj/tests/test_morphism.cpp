#include "doctest.h"
#include "morphism_fixtures.hpp"
#include "nqforge/signs.hpp"
#include "support.hpp"

using namespace nqforge;
using namespace nqforge::testing;

namespace {

Polynomial at_point(const Polynomial& p, const std::vector<Rational>& pt) {
    std::vector<Polynomial> imgs;
    for (const auto& q : pt) imgs.push_back(Polynomial::constant(Coordinates(), q));
    return p.substitute(imgs, Coordinates());
}

}  // namespace

TEST_SUITE("morphism") {
    TEST_CASE("decomposition against global frames") {
        auto id = identity_f1();
        auto e = id.phi.source();
        auto d = decompose(id.phi, {Section::frame(e, 1)});
        REQUIRE(d.size() == 1);
        CHECK(d[0].second == 1);
        CHECK(d[0].first == Polynomial::constant(e->coordinates(), 1));
        auto sq = square_map();
        CHECK(decompose(sq.phi, {Section::frame(sq.phi.source(), 0)})[0].first ==
              Polynomial::parse(sq.phi.source()->coordinates(), "2*x"));
        MorphismData m(e, e, BaseMap::identity(e->coordinates()));
        CHECK(decompose(m, {Section::frame(e, 0)}).empty());
        component(m, {"d1"}, {{"d1", "x1^2"}});
        auto s = decompose(m, {Section::frame(e, 0)});
        REQUIRE(s.size() == 1);
        CHECK(s[0].first == Polynomial::parse(e->coordinates(), "x1^2"));
        CHECK(s[0].second == 0);
    }

    TEST_CASE("components are graded symmetric with degree 0") {
        auto p = point_two_term();
        auto e = p.phi.source();
        auto a = *e->index_of("a"), b = *e->index_of("b");
        CHECK(p.phi.component({b, a}) == -p.phi.component({a, b}));
        CHECK(p.phi.component({a, a}).is_zero());
        MorphismData m = p.phi;
        CHECK_THROWS(component(m, {"a"}, {{"z", "1"}}));
        CHECK_THROWS(component(m, {"a", "a"}, {{"z", "1"}}));
        CHECK_THROWS(component(m, {"a", "b", "w"}, {}));
    }

    TEST_CASE("build_phi") {
        auto id = identity_f1();
        auto big = build_phi(id.phi);
        auto e = id.phi.source();
        for (std::size_t i = 0; i < e->rank(); ++i) CHECK(big.generator_images()[i] == SuperFunction::generator(e, i));
        CHECK(big.coordinate_images()[0] == Polynomial::variable(e->coordinates(), 0));
        CHECK(big.is_bigraded());

        // pullback of forms: y -> x^2, dy -> 2x dx
        auto sq = square_map();
        auto ps = build_phi(sq.phi);
        auto se = sq.phi.source();
        CHECK(ps(SuperFunction::parse(sq.phi.target(), "y*dy")) == SuperFunction::parse(se, "2*x^3*dx"));

        // phi'_2 != 0 breaks the bigrading
        auto pt = point_two_term();
        auto pp = build_phi(pt.phi);
        CHECK_FALSE(pp.is_bigraded());
        auto z = *pt.phi.target()->index_of("z");
        CHECK(pp.generator_images()[z].hom_component(2) != SuperFunction(pt.phi.source()));
        CHECK(pp.generator_images()[z].hom_component(1) == SuperFunction::generator(pt.phi.source(), *pt.phi.source()->index_of("w")));
    }

    TEST_CASE("extract_morphism inverts build_phi") {
        for (const auto& fx : all_morphism_fixtures()) {
            INFO(fx.name);
            CHECK(extract_morphism(build_phi(fx.phi)) == fx.phi);
        }
        auto e = identity_f1().phi.source();
        CHECK_THROWS(AlgebraMorphism(e, e, {Polynomial::variable(e->coordinates(), 0), Polynomial::variable(e->coordinates(), 1)},
                                     {SuperFunction::function(e, Polynomial::constant(e->coordinates(), 1)), SuperFunction(e)}));
    }

    TEST_CASE("Phi is an algebra morphism") {
        std::mt19937 rng(41);
        for (const auto& fx : all_morphism_fixtures()) {
            INFO(fx.name);
            auto big = build_phi(fx.phi);
            auto f = fx.phi.target();
            for (int rep = 0; rep < 4; ++rep) {
                auto g = random_superfunction(rng, f, rep % 3), h = random_superfunction(rng, f, (rep + 1) % 3);
                CHECK(big(g * h) == big(g) * big(h));
            }
        }
    }

    TEST_CASE("Phi is local") {
        // (Phi eta)_x depends on eta at phi0(x) only: y - 1 vanishes at phi0(1) = 1
        auto sq = square_map();
        auto big = build_phi(sq.phi);
        auto f = sq.phi.target();
        auto eta = SuperFunction::parse(f, "(3*y + 2)*dy");
        auto other = eta + SuperFunction::parse(f, "(y - 1)*(y + 5)*dy");
        auto diff = big(eta) - big(other);
        for (const auto& [m, c] : diff.terms()) {
            CHECK(at_point(c, {1}).is_zero());
            CHECK(at_point(c, {-1}).is_zero());
        }
        CHECK_FALSE(diff.is_zero());
    }

    TEST_CASE("anchor condition") {
        CHECK(check_anchor_condition(identity_f1().phi, identity_f1().pair).pass);
        auto sq = square_map();
        CHECK(check_anchor_condition(sq.phi, sq.pair).pass);
        auto bad = square_map("4");
        auto r = check_anchor_condition(bad.phi, bad.pair);
        CHECK_FALSE(r.pass);
        REQUIRE(r.witness);
        CHECK(r.witness->residual == "-2*x");
    }

    TEST_CASE("bracket conditions") {
        for (const auto& fx : all_morphism_fixtures()) {
            INFO(fx.name);
            auto r = check_bracket_conditions(fx.phi, fx.pair);
            if (fx.name == "tangent map of x^2 with scaled phi1") continue;  // brackets hold, anchor fails
            CHECK(r.pass == fx.is_morphism);
        }
        auto c = check_bracket_conditions(rescale_f5("1").phi, rescale_f5("1").pair);
        CHECK_FALSE(c.children[0].pass);
        auto p = check_bracket_conditions(point_two_term("2").phi, point_two_term("2").pair);
        CHECK(p.children[0].pass);
        CHECK_FALSE(p.children[1].pass);
    }

    TEST_CASE("base-preserving form agrees with the full condition") {
        BracketOptions full;
        full.allow_fast_path = false;
        for (const auto& fx : {identity_f1(), rescale_f5(), rescale_f5("1"), point_two_term(), point_two_term("2")}) {
            INFO(fx.name);
            auto src = to_antialgebroid(fx.pair.source), tgt = to_antialgebroid(fx.pair.target);
            for (int t = 1; t <= fx.phi.source()->n() + 1; ++t)
                for (const auto& ms : frame_multisets(*fx.phi.source(), t)) {
                    std::vector<Section> xs;
                    for (auto f : ms) xs.push_back(Section::frame(fx.phi.source(), f));
                    const auto& c = fx.phi.source()->coordinates();
                    if (!c.empty()) xs[0] = Polynomial::parse(c, "1 + " + c[0] + "^2") * xs[0];
                    CHECK(bracket_residual(fx.phi, src, tgt, xs) == bracket_residual_base_preserving(fx.phi, src, tgt, xs));
                }
            CHECK(check_bracket_conditions(fx.phi, fx.pair, full).pass == check_bracket_conditions(fx.phi, fx.pair).pass);
        }
    }

    TEST_CASE("equivariance agrees with the geometric conditions") {
        for (const auto& fx : all_morphism_fixtures()) {
            INFO(fx.name);
            auto rep = check_morphism(fx.phi, fx.pair);
            CHECK(rep.equivariance.pass == fx.is_morphism);
            CHECK(rep.agree());
        }
    }

    TEST_CASE("equivariance defect is the bracket residual") {
        // with the anchor condition in force, (Q_E Phi eta - Phi Q_F eta)(X) = (-1)^k <eta, LHS - RHS>
        for (const auto& fx : all_morphism_fixtures()) {
            if (!check_anchor_condition(fx.phi, fx.pair).pass) continue;
            INFO(fx.name);
            auto src = to_antialgebroid(fx.pair.source), tgt = to_antialgebroid(fx.pair.target);
            auto big = build_phi(fx.phi);
            auto qe = ce_differential_anti(src), qf = ce_differential_anti(tgt);
            auto e = fx.phi.source();
            auto f = fx.phi.target();
            for (std::size_t beta = 0; beta < f->rank(); ++beta) {
                int k = -f->degree(beta);
                auto defect = equivariance_defect(big, qe, qf, beta, false);
                for (int t = 1; t <= k + 1; ++t)
                    for (const auto& ms : frame_multisets(*e, t, -k - 1)) {
                        std::vector<Section> xs;
                        for (auto g : ms) xs.push_back(Section::frame(e, g));
                        Polynomial want = Rational(signs::ce_bracket_sign(k)) * bracket_residual(fx.phi, src, tgt, xs)[beta];
                        CHECK(evaluate_form(defect, xs) == want);
                    }
            }
        }
    }

    TEST_CASE("over a point the condition is the L-infinity morphism identity") {
        for (const auto& fx : {point_two_term(), point_two_term("2")}) {
            INFO(fx.name);
            auto src = to_antialgebroid(fx.pair.source), tgt = to_antialgebroid(fx.pair.target);
            auto sb = fx.pair.source.bundle();
            bool any_nonzero = false;
            for (int t = 1; t <= 3; ++t)
                for (const auto& ms : frame_multisets(*sb, t)) {
                    std::vector<Section> ys, xs;
                    std::vector<int> x;
                    for (auto g : ms) {
                        ys.push_back(Section::frame(sb, g));
                        xs.push_back(Section::frame(fx.phi.source(), g));
                        x.push_back(fx.phi.source()->degree(g));
                    }
                    Section direct = linfty_morphism_residual(fx.phi, fx.pair.source, fx.pair.target, ys);
                    Section via = Rational(signs::transfer_sign(x)) * bracket_residual(fx.phi, src, tgt, xs).rebased(fx.pair.target.bundle());
                    CHECK(direct == via);
                    any_nonzero = any_nonzero || !direct.is_zero();
                }
            CHECK(any_nonzero == !fx.is_morphism);
        }
    }
}
