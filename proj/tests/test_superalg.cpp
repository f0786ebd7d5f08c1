#include "doctest.h"
#include "nqforge/expr.hpp"
#include "nqforge/superalg.hpp"
#include "support.hpp"

using namespace nqforge;
using namespace nqforge::testing;

namespace {

// n = 2 over (x, y): two degree -1 frames, one degree -2 frame
BundlePtr bundle2() {
    return GradedBundle::make(Side::E, 2, Coordinates({"x", "y"}),
                              {{"a", -1, "u1"}, {"b", -1, "u2"}, {"c", -2, "w"}});
}

BundlePtr tangent2() {
    return GradedBundle::make(Side::E, 1, Coordinates({"x1", "x2"}), {{"d1", -1, "xi1"}, {"d2", -1, "xi2"}});
}

SuperFunction F(const BundlePtr& b, const char* s) { return SuperFunction::parse(b, s); }

Derivation de_rham(const BundlePtr& t) {
    Derivation q(t, 1);
    for (std::size_t i = 0; i < 2; ++i) q.set_coordinate_image(i, SuperFunction::generator(t, i));
    return q;
}

}  // namespace

TEST_SUITE("superalg") {
    TEST_CASE("normal form and products") {
        auto b = bundle2();
        CHECK(F(b, "u2*u1") == -F(b, "u1*u2"));
        CHECK(F(b, "u1*u1").is_zero());
        CHECK(F(b, "w*u1") == F(b, "u1*w"));
        CHECK(F(b, "w*w") == SuperFunction::monomial(b, {0, 0, 2}, Polynomial(b->coordinates(), 1)));
        CHECK(F(b, "(x+1)*u1*w").standard_degree() == 3);
        CHECK(SuperFunction::homological_degree({1, 0, 2}) == 3);
        CHECK(F(b, "u1 + w").standard_degree() == std::nullopt);
        CHECK(F(b, "x*y").as_function() == Polynomial::parse(b->coordinates(), "x*y"));
    }

    TEST_CASE("printer round trip") {
        auto b = bundle2();
        std::mt19937 rng(5);
        for (int k = 0; k <= 4; ++k)
            for (int t = 0; t < 5; ++t) {
                SuperFunction f = random_superfunction(rng, b, k);
                CHECK(SuperFunction::parse(b, f.to_string()) == f);
            }
        CHECK(F(b, "2*u1*u2 - x*w").to_string() == "-x*w + 2*u1*u2");
        CHECK_THROWS_AS(F(b, "u1 + q"), ParseError);
    }

    TEST_CASE("euler fields") {
        auto b = bundle2();
        auto eps = Derivation::euler(b), heps = Derivation::hom_euler(b);
        std::mt19937 rng(3);
        for (int k = 0; k <= 4; ++k) {
            SuperFunction f = random_superfunction(rng, b, k);
            CHECK(eps(f) == Rational(k) * f);
            for (const auto& [m, c] : f.terms()) {
                SuperFunction t = SuperFunction::monomial(b, m, c);
                CHECK(heps(t) == Rational(SuperFunction::homological_degree(m)) * t);
            }
        }
        auto d = random_derivation(rng, b, 1);
        CHECK(d(SuperFunction::function(b, Polynomial(b->coordinates(), 1))).is_zero());
    }

    TEST_CASE("interior products") {
        auto b = bundle2();
        auto x = Polynomial::variable(b->coordinates(), 0);
        auto ia = Derivation::interior(x * Section::frame(b, 0));
        CHECK(ia.degree() == -1);
        CHECK(ia(F(b, "u1")) == SuperFunction::function(b, -x));
        CHECK(ia(F(b, "w")).is_zero());
        auto ic = Derivation::interior(x * Section::frame(b, 2));
        CHECK(ic(F(b, "w")) == SuperFunction::function(b, x));
        CHECK(ic(F(b, "u1")).is_zero());
    }

    TEST_CASE("extract section") {
        auto b = bundle2();
        std::mt19937 rng(8);
        for (int deg : {-1, -2}) {
            Section s = random_section(rng, b, deg);
            CHECK(extract_section(Derivation::interior(s)) == s);
        }
        CHECK(extract_section(Derivation(b, -1)).is_zero());
        Derivation d(b, -1);
        d.set_generator_image(0, SuperFunction::function(b, Polynomial(b->coordinates(), 1)));
        CHECK(extract_section(d) == -Section::frame(b, 0));
        CHECK_THROWS(extract_section(Derivation::euler(b)));
    }

    TEST_CASE("commutators") {
        auto b = bundle2();
        std::mt19937 rng(13);
        auto eps = Derivation::euler(b), heps = Derivation::hom_euler(b);
        for (int k = -1; k <= 2; ++k) {
            auto x = random_derivation(rng, b, k);
            CHECK(commutator(eps, x) == Rational(k) * x);
        }
        Section s = random_section(rng, b, -1);
        auto is = Derivation::interior(s);
        CHECK(commutator(heps, is) == Rational(-1) * is);

        auto q = de_rham(tangent2());
        CHECK(commutator(q, q).is_zero());
        auto odd = random_derivation(rng, b, 1);
        auto sq = commutator(odd, odd);
        for (std::size_t i = 0; i < b->rank(); ++i)
            CHECK(sq.generator_images()[i] == Rational(2) * odd(odd(SuperFunction::generator(b, i))));
    }

    TEST_CASE("graded jacobi for commutators") {
        auto b = bundle2();
        std::mt19937 rng(21);
        for (int trial = 0; trial < 6; ++trial) {
            int da = trial % 3 - 1, db = (trial + 1) % 3, dc = trial % 2;
            auto a = random_derivation(rng, b, da), bb = random_derivation(rng, b, db), c = random_derivation(rng, b, dc);
            // [a,[b,c]] = [[a,b],c] + (-1)^{ab}[b,[a,c]]
            auto lhs = commutator(a, commutator(bb, c));
            auto rhs = commutator(commutator(a, bb), c) +
                       Rational(minus_one_pow(da * db)) * commutator(bb, commutator(a, c));
            CHECK(lhs == rhs);
        }
    }

    TEST_CASE("interior products commute") {
        auto b = bundle2();
        std::mt19937 rng(4);
        for (int d1 : {-1, -2})
            for (int d2 : {-1, -2}) {
                auto i1 = Derivation::interior(random_section(rng, b, d1));
                auto i2 = Derivation::interior(random_section(rng, b, d2));
                CHECK(commutator(i1, i2).is_zero());
            }
    }

    TEST_CASE("bidegree decomposition") {
        auto b = bundle2();
        std::mt19937 rng(17);
        auto heps = Derivation::hom_euler(b);
        for (int trial = 0; trial < 4; ++trial) {
            auto d = random_derivation(rng, b, trial % 3);
            Derivation sum(b, d.degree());
            for (const auto& [s, c] : d.bidegree_decompose()) {
                CHECK(s >= -1);
                CHECK(commutator(heps, c) == Rational(s) * c);
                sum += c;
            }
            CHECK(sum == d);
        }
        auto is = Derivation::interior(random_section(rng, b, -2));
        auto parts = is.bidegree_decompose();
        REQUIRE(parts.size() == 1);
        CHECK(parts[0].first == -1);
        auto hp = heps.bidegree_decompose();
        REQUIRE(hp.size() == 1);
        CHECK(hp[0].first == 0);
    }

    TEST_CASE("projection onto homological degree -1 distributes") {
        auto b = bundle2();
        std::mt19937 rng(31);
        auto P = [](const Derivation& d) { return d.hom_component(-1); };
        for (int trial = 0; trial < 6; ++trial) {
            auto d1 = random_derivation(rng, b, trial % 2), d2 = random_derivation(rng, b, (trial / 2) % 3 - 1);
            CHECK(P(commutator(d1, d2)) == P(commutator(P(d1), d2)) + P(commutator(d1, P(d2))));
        }
    }

    TEST_CASE("homological check") {
        auto t = tangent2();
        CHECK(check_homological(de_rham(t)).pass);
        CHECK(check_homological(Derivation(t, 1)).pass);
        // xi2 -> xi1*xi2 breaks Q^2 = 0 on x2
        auto q = de_rham(t);
        q.set_generator_image(1, F(t, "xi1*xi2"));
        auto r = check_homological(q);
        CHECK_FALSE(r.pass);
        REQUIRE(r.witness);
        CHECK(r.witness->where.find("x2") != std::string::npos);
    }

    TEST_CASE("pairing of forms") {
        auto b = bundle2();
        auto e0 = Section::frame(b, 0), e1 = Section::frame(b, 1), e2 = Section::frame(b, 2);
        CHECK(evaluate_form(F(b, "u1"), {e0}).as_constant() == 1);
        CHECK(evaluate_form(F(b, "w"), {e2}).as_constant() == 1);
        CHECK(evaluate_form(F(b, "u1*u2"), {e0, e1}).as_constant() == -1);
        CHECK(evaluate_form(F(b, "u1*u2"), {e1, e0}).as_constant() == 1);
        CHECK(evaluate_form(F(b, "w*w"), {e2, e2}).as_constant() == 2);
        auto f = form_from_values(b, 2, 2, [&](const std::vector<std::size_t>& beta) {
            return Polynomial::parse(b->coordinates(), beta == std::vector<std::size_t>{0, 1} ? "x" : "0");
        });
        CHECK(evaluate_form(f, {e0, e1}) == Polynomial::variable(b->coordinates(), 0));
        CHECK(f == F(b, "-x*u1*u2"));
    }
}
