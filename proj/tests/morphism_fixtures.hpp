#pragma once

// Morphism fixtures: identity on F1, the tangent map of x -> x^2, a rescaling of F5,
// a 2-term L-infinity morphism over a point with phi'_2 != 0, and broken variants.

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "nqforge/morphism.hpp"

namespace nqforge::testing {

struct MorphismFixture {
    std::string name;
    MorphismData phi;
    MorphismPair pair;
    bool is_morphism;
};

inline Section pulled_section(const MorphismData& m, std::vector<std::pair<std::string, std::string>> parts) {
    auto b = m.pulled();
    Section s(b);
    for (const auto& [frame, coeff] : parts)
        s += Section::frame(b, *b->index_of(frame), Polynomial::parse(b->coordinates(), coeff));
    return s;
}

inline void component(MorphismData& m, std::vector<std::string> in, std::vector<std::pair<std::string, std::string>> out) {
    FrameTuple t;
    for (const auto& n : in) t.push_back(*m.source()->index_of(n));
    m.set_component(t, pulled_section(m, out));
}

inline MorphismFixture identity_f1() {
    auto a = tangent_r2();
    auto e = a.bundle()->desuspended();
    return {"identity on F1", MorphismData::identity(e), {a, a}, true};
}

// tangent map of phi0(x) = x^2 between tangent algebroids of R, phi'_1(d) = c x e
inline MorphismFixture square_map(const std::string& c = "2") {
    auto src = tangent_r1("x", "d", "dx"), tgt = tangent_r1("y", "e", "dy");
    auto e = src.bundle()->desuspended(), f = tgt.bundle()->desuspended();
    MorphismData m(e, f, BaseMap(e->coordinates(), f->coordinates(), {Polynomial::parse(e->coordinates(), "x^2")}));
    component(m, {"d"}, {{"e", c + "*x"}});
    return {c == "2" ? "tangent map of x^2" : "tangent map of x^2 with scaled phi1", m, {src, tgt}, c == "2"};
}

// F5 -> F5 over the identity: a -> a, b -> 2b, c -> c_scale c
inline MorphismFixture rescale_f5(const std::string& c_scale = "2") {
    auto a = two_term_complex();
    auto e = a.bundle()->desuspended();
    MorphismData m(e, e, BaseMap::identity(e->coordinates()));
    component(m, {"a"}, {{"a", "1"}});
    component(m, {"b"}, {{"b", "2"}});
    component(m, {"c"}, {{"c", c_scale}});
    return {c_scale == "2" ? "rescaling of F5" : "rescaling of F5 breaking l1", m, {a, a}, c_scale == "2"};
}

// E-side 2-term structure over a point: a, b of degree -1, w of degree -2,
// l'1 w = b, l'2(a, b) = mu b, l'2(a, w) = mu w
inline AntialgebraStructure two_term_point(const std::string& mu, const std::vector<std::string>& names) {
    auto e = GradedBundle::make(Side::E, 2, Coordinates(),
                                {{names[0], -1, "u" + names[0]}, {names[1], -1, "u" + names[1]}, {names[2], -2, "u" + names[2]}});
    AntialgebraStructure s(e);
    bracket(s, {names[2]}, {{names[1], "1"}});
    bracket(s, {names[0], names[1]}, {{names[1], mu}});
    bracket(s, {names[0], names[2]}, {{names[2], mu}});
    return s;
}

// phi'_1: a -> p, b -> q, w -> z and phi'_2(a, b) = lambda z, from mu = 1 to mu = 1 - 3 = -2;
// only lambda = 3 is a morphism
inline MorphismFixture point_two_term(const std::string& lambda = "3") {
    auto src = two_term_point("1", {"a", "b", "w"});
    auto tgt = two_term_point("-2", {"p", "q", "z"});
    MorphismData m(src.bundle(), tgt.bundle(), BaseMap::identity(Coordinates()));
    component(m, {"a"}, {{"p", "1"}});
    component(m, {"b"}, {{"q", "1"}});
    component(m, {"w"}, {{"z", "1"}});
    component(m, {"a", "b"}, {{"z", lambda}});
    return {lambda == "3" ? "2-term morphism over a point" : "2-term map over a point with wrong phi2", m,
            {transfer_to_algebra(src), transfer_to_algebra(tgt)}, lambda == "3"};
}

// the five cases of the morphism theorem check
inline std::vector<MorphismFixture> theorem_fixtures() {
    return {identity_f1(), square_map(), rescale_f5(), point_two_term(), rescale_f5("1")};
}

inline std::vector<MorphismFixture> all_morphism_fixtures() {
    return {identity_f1(), square_map(), rescale_f5(), point_two_term(), rescale_f5("1"), square_map("4"), point_two_term("2")};
}

}  // namespace nqforge::testing
