#pragma once

// Algebroid fixtures built in code. The JSON files in tests/fixtures describe
// the same structures for the CLI; a unit test checks that both agree.

#include <string>
#include <utility>
#include <vector>

#include "nqforge/linfty.hpp"

namespace nqforge::testing {

inline Section section(const BundlePtr& b, std::vector<std::pair<std::string, std::string>> parts) {
    Section s(b);
    for (const auto& [frame, coeff] : parts)
        s += Section::frame(b, *b->index_of(frame), Polynomial::parse(b->coordinates(), coeff));
    return s;
}

inline FrameTuple frames(const BundlePtr& b, std::vector<std::string> names) {
    FrameTuple t;
    for (const auto& n : names) t.push_back(*b->index_of(n));
    return t;
}

inline void anchor(BracketStructure& a, const std::string& frame, std::vector<std::string> field) {
    std::vector<Polynomial> v;
    for (const auto& f : field) v.push_back(Polynomial::parse(a.bundle()->coordinates(), f));
    a.set_anchor(*a.bundle()->index_of(frame), v);
}

inline void bracket(BracketStructure& a, std::vector<std::string> in, std::vector<std::pair<std::string, std::string>> out) {
    a.set_bracket(frames(a.bundle(), in), section(a.bundle(), out));
}

// F1: tangent algebroid of R^2
inline AlgebraStructure tangent_r2() {
    auto b = GradedBundle::make(Side::SE, 1, Coordinates({"x1", "x2"}), {{"d1", 0, "xi1"}, {"d2", 0, "xi2"}});
    AlgebraStructure a(b);
    anchor(a, "d1", {"1", "0"});
    anchor(a, "d2", {"0", "1"});
    return a;
}

// tangent algebroid of R
inline AlgebraStructure tangent_r1(const std::string& coord = "x", const std::string& frame = "d", const std::string& dual = "dx") {
    auto b = GradedBundle::make(Side::SE, 1, Coordinates({coord}), {{frame, 0, dual}});
    AlgebraStructure a(b);
    anchor(a, frame, {"1"});
    return a;
}

// F4: action algebroid of the nonabelian 2-dim Lie algebra on R, a -> d/dx, b -> x d/dx
inline AlgebraStructure action_r1(const std::string& ab_value = "1") {
    auto b = GradedBundle::make(Side::SE, 1, Coordinates({"x"}), {{"a", 0, "u1"}, {"b", 0, "u2"}});
    AlgebraStructure a(b);
    anchor(a, "a", {"1"});
    anchor(a, "b", {"x"});
    bracket(a, {"a", "b"}, {{"a", ab_value}});
    return a;
}

// F5: n = 2 over R, L0 = <a, b>, L-1 = <c>, l1 c = b, rho(a) = d/dx
inline AlgebraStructure two_term_complex() {
    auto b = GradedBundle::make(Side::SE, 2, Coordinates({"x"}), {{"a", 0, "u1"}, {"b", 0, "u2"}, {"c", -1, "w"}});
    AlgebraStructure a(b);
    anchor(a, "a", {"1"});
    bracket(a, {"c"}, {{"b", "1"}});
    return a;
}

// F6: string Lie 2-algebra of so(3) over a point, l3 = the invariant 3-cocycle
inline AlgebraStructure string_lie2() {
    auto b = GradedBundle::make(Side::SE, 2, Coordinates(), {{"e1", 0, "u1"}, {"e2", 0, "u2"}, {"e3", 0, "u3"}, {"z", -1, "w"}});
    AlgebraStructure a(b);
    bracket(a, {"e1", "e2"}, {{"e3", "1"}});
    bracket(a, {"e2", "e3"}, {{"e1", "1"}});
    bracket(a, {"e3", "e1"}, {{"e2", "1"}});
    bracket(a, {"e1", "e2", "e3"}, {{"z", "1"}});
    return a;
}

// so(3) with one structure constant perturbed: Jacobi fails
inline AlgebraStructure broken_so3() {
    auto b = GradedBundle::make(Side::SE, 1, Coordinates(), {{"e1", 0, "u1"}, {"e2", 0, "u2"}, {"e3", 0, "u3"}});
    AlgebraStructure a(b);
    bracket(a, {"e1", "e2"}, {{"e3", "1"}});
    bracket(a, {"e2", "e3"}, {{"e1", "1"}});
    bracket(a, {"e3", "e1"}, {{"e2", "2"}, {"e1", "1"}});
    return a;
}

// F7: n = 2 over R, the action algebroid of F4 acting on a line L-1 = <c> by b . c = c
inline AlgebraStructure action_with_module() {
    auto b = GradedBundle::make(Side::SE, 2, Coordinates({"x"}), {{"a", 0, "u1"}, {"b", 0, "u2"}, {"c", -1, "w"}});
    AlgebraStructure a(b);
    anchor(a, "a", {"1"});
    anchor(a, "b", {"x"});
    bracket(a, {"a", "b"}, {{"a", "1"}});
    bracket(a, {"b", "c"}, {{"c", "1"}});
    return a;
}

// F8: n = 3 over a point, L0 = <a>, L-1 = <b>, L-2 = <c>, l1 c = b, a acting by 1 on b and c
inline AlgebraStructure three_term() {
    auto b = GradedBundle::make(Side::SE, 3, Coordinates(), {{"a", 0, "u"}, {"b", -1, "v"}, {"c", -2, "w"}});
    AlgebraStructure a(b);
    bracket(a, {"c"}, {{"b", "1"}});
    bracket(a, {"a", "b"}, {{"b", "1"}});
    bracket(a, {"a", "c"}, {{"c", "1"}});
    return a;
}

// 2-term Lie algebra-module over a point: g = <a, b>, [a,b] = a, on V = <v, w> by a.w = v, b.w = w
inline AlgebraStructure lie_module(bool broken = false) {
    auto b = GradedBundle::make(Side::SE, 2, Coordinates(), {{"a", 0, "p"}, {"b", 0, "q"}, {"v", -1, "s"}, {"w", -1, "t"}});
    AlgebraStructure a(b);
    bracket(a, {"a", "b"}, {{"a", "1"}});
    bracket(a, {"a", "w"}, {{"v", "1"}});
    bracket(a, {"b", "w"}, {{"w", broken ? "2" : "1"}});
    return a;
}

struct NamedFixture {
    std::string name;
    AlgebraStructure algebra;
};

inline std::vector<NamedFixture> all_fixtures() {
    return {{"F1 tangent R2", tangent_r2()},        {"F4 action R1", action_r1()},
            {"F5 two-term complex", two_term_complex()}, {"F6 string Lie 2-algebra", string_lie2()},
            {"F7 action with module", action_with_module()}, {"F8 three-term", three_term()},
            {"Lie algebra module", lie_module()}};
}

// a perturbed copy that violates the identities
inline std::vector<NamedFixture> perturbed_fixtures() {
    auto f1 = tangent_r2();
    bracket(f1, {"d1", "d2"}, {{"d1", "1"}});
    auto f5 = two_term_complex();
    anchor(f5, "b", {"1"});  // rho o l1 != 0
    auto f7 = action_with_module();
    bracket(f7, {"a", "c"}, {{"c", "1"}});
    auto f6 = string_lie2();
    bracket(f6, {"e1", "z"}, {{"z", "1"}});  // not a representation of so(3)
    auto f8 = three_term();
    bracket(f8, {"b"}, {{"a", "1"}});  // l1 no longer squares to zero
    return {{"F1 tangent R2", f1},
            {"F4 action R1", action_r1("2")},
            {"F5 two-term complex", f5},
            {"F6 string Lie 2-algebra", f6},
            {"F7 action with module", f7},
            {"F8 three-term", f8},
            {"Lie algebra module", lie_module(true)}};
}

}  // namespace nqforge::testing
