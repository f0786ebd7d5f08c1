#include "nqforge/derived.hpp"

#include <stdexcept>

#include "nqforge/parallel.hpp"

namespace nqforge {

DerivedSetup::DerivedSetup(Derivation d) : q(std::move(d)) {
    if (!q.bundle()) throw std::invalid_argument("derivation without a bundle");
    if (q.degree() != 1) throw std::invalid_argument("Q must have standard degree 1");
}

namespace {

Section iterate(const Derivation& start, const std::vector<Section>& xs) {
    Derivation d = start;
    for (const auto& x : xs) {
        if (!x.is_homogeneous()) throw std::invalid_argument("derived bracket arguments must be homogeneous");
        if (x.is_zero()) return Section(start.bundle());
        d = commutator(d, Derivation::interior(x));
    }
    return extract_section(d.hom_component(-1));
}

}  // namespace

Section derived_bracket(const DerivedSetup& s, const std::vector<Section>& xs) {
    if (xs.empty()) throw std::invalid_argument("derived bracket needs at least one argument");
    if (static_cast<int>(xs.size()) > s.bundle()->n() + 1) return Section(s.bundle());
    return iterate(s.q, xs);
}

Section derived_bracket_component(const DerivedSetup& s, const std::vector<Section>& xs) {
    if (xs.empty()) throw std::invalid_argument("derived bracket needs at least one argument");
    return iterate(s.q.hom_component(static_cast<int>(xs.size()) - 1), xs);
}

Polynomial derived_anchor(const DerivedSetup& s, const Section& x, const Polynomial& f) {
    const Coordinates& c = s.bundle()->coordinates();
    if (x.is_zero() || x.degree() != -1) return Polynomial(c);
    return commutator(s.q.hom_component(1), Derivation::interior(x)).on_function(f.in(c));
}

LeibnizDefect leibniz_probe(const DerivedSetup& s, int j, const Polynomial& f, const std::vector<Section>& xs) {
    if (j < 0 || j >= static_cast<int>(xs.size())) throw std::out_of_range("Leibniz slot out of range");
    auto ys = xs;
    ys[j] = f * ys[j];
    LeibnizDefect out;
    out.defect = derived_bracket(s, ys) - f * derived_bracket(s, xs);
    out.expected = Section(s.bundle());
    if (xs.size() == 2) {
        int other = 1 - j;
        Polynomial act = derived_anchor(s, xs[other], f);
        int sign = 1;
        // slot 0 by symmetry: l(fX, Y) = (-1)^{xy} l(Y, fX)
        if (j == 0) sign = minus_one_pow(static_cast<long long>(xs[0].degree_or(0)) * xs[1].degree_or(0));
        out.expected = Rational(sign) * (act * xs[j]);
    }
    return out;
}

AntialgebraStructure derived_structure(const DerivedSetup& s) {
    const BundlePtr& b = s.bundle();
    AntialgebraStructure out(b);
    for (int r = 1; r <= b->n() + 1; ++r) {
        auto tuples = frame_multisets(*b, r);
        auto values = parallel_map<Section>(tuples.size(), [&](std::size_t t) {
            std::vector<Section> xs;
            for (auto f : tuples[t]) xs.push_back(Section::frame(b, f));
            return derived_bracket(s, xs);
        });
        for (std::size_t t = 0; t < tuples.size(); ++t) out.set_bracket(tuples[t], values[t]);
    }
    const Coordinates& c = b->coordinates();
    for (auto a : b->frames_of_degree(-1)) {
        std::vector<Polynomial> field;
        for (std::size_t i = 0; i < c.size(); ++i)
            field.push_back(derived_anchor(s, Section::frame(b, a), Polynomial::variable(c, i)));
        out.set_anchor(a, field);
    }
    return out;
}

}  // namespace nqforge
