#pragma once

#include <vector>

#include "nqforge/linfty.hpp"
#include "nqforge/superalg.hpp"

namespace nqforge {

// Higher derived brackets of a degree 1 derivation Q of A = Γ(⊙E*), with P the
// projection onto homological degree -1. Q need not square to zero.
struct DerivedSetup {
    Derivation q;

    explicit DerivedSetup(Derivation d);
    const BundlePtr& bundle() const { return q.bundle(); }
};

// P[...[[Q, X1], X2], ..., Xk] as a section; zero for k > n + 1
Section derived_bracket(const DerivedSetup& s, const std::vector<Section>& xs);
// the same bracket computed from the single bidegree component ^{k-1}Q
Section derived_bracket_component(const DerivedSetup& s, const std::vector<Section>& xs);
// ρ''(X) f = [^1Q, X] f = i_X(^1Q f); zero unless X has degree -1
Polynomial derived_anchor(const DerivedSetup& s, const Section& x, const Polynomial& f);

struct LeibnizDefect {
    Section defect;    // l''_k(.., f X_j, ..) - f l''_k(.., X_j, ..)
    Section expected;  // anchor term for k = 2, zero otherwise
    bool matches() const { return defect == expected; }
};
LeibnizDefect leibniz_probe(const DerivedSetup& s, int j, const Polynomial& f, const std::vector<Section>& xs);

// all derived brackets on frame multisets together with the derived anchor
AntialgebraStructure derived_structure(const DerivedSetup& s);

}  // namespace nqforge
