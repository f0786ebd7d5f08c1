#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nqforge/algebroid.hpp"

namespace nqforge {

// Components φ'_r: ⊙^r E -> F of degree 0 over a polynomial base map φ0: M -> N.
// Source and target are E-side bundles; values are sections of φ0*F, i.e. target
// frames with coefficients in C∞(M).
class MorphismData {
public:
    MorphismData() = default;
    MorphismData(BundlePtr source, BundlePtr target, BaseMap base);
    static MorphismData identity(const BundlePtr& e);

    const BundlePtr& source() const { return source_; }
    const BundlePtr& target() const { return target_; }
    // target frames over the source base
    const BundlePtr& pulled() const { return pulled_; }
    const BaseMap& base() const { return base_; }
    int max_arity() const { return source_->n(); }

    // frames in any order; the value is stored on the sorted tuple
    void set_component(const FrameTuple& frames, const Section& value);
    Section component(const FrameTuple& frames) const;
    const std::map<FrameTuple, Section>& table() const { return table_; }

    // φ'_r on homogeneous sections, C∞(M)-multilinear
    Section apply(const std::vector<Section>& xs) const;
    // only φ'_1 nonzero
    bool is_linear() const;
    bool operator==(const MorphismData& o) const;
    std::string to_string() const;

private:
    BundlePtr source_, target_, pulled_;
    BaseMap base_ = BaseMap::identity(Coordinates());
    std::map<FrameTuple, Section> table_;
};

// φ'_r∘X = Σ_j f_j ξ_j∘φ0 against the global target frames
std::vector<std::pair<Polynomial, std::size_t>> decompose(const MorphismData& phi, const std::vector<Section>& xs);

// Φ: Γ(⊙F*) -> Γ(⊙E*) given on generators
class AlgebraMorphism {
public:
    AlgebraMorphism() = default;
    AlgebraMorphism(BundlePtr source, BundlePtr target, std::vector<Polynomial> coordinate_images,
                    std::vector<SuperFunction> generator_images);

    const BundlePtr& source() const { return source_; }  // E: Φ lands in its functions
    const BundlePtr& target() const { return target_; }  // F: Φ acts on its functions
    const std::vector<Polynomial>& coordinate_images() const { return coord_; }
    const std::vector<SuperFunction>& generator_images() const { return gen_; }

    SuperFunction operator()(const SuperFunction& g) const;
    // respects the homological grading as well
    bool is_bigraded() const;
    bool operator==(const AlgebraMorphism& o) const;
    std::string to_string() const;

private:
    BundlePtr source_, target_;
    std::vector<Polynomial> coord_;
    std::vector<SuperFunction> gen_;
};

// Φ g = g∘φ0 and (Φη)(X_1..X_r) = <η∘φ0, φ'_r(X_1..X_r)> on generators
AlgebraMorphism build_phi(const MorphismData& phi);
// φ0 from the coordinate images, φ'_r(X)(q*) = <q, (Φq*)(X)>; throws if Φ does not preserve degrees
MorphismData extract_morphism(const AlgebraMorphism& phi);

// Shifted components φ_r = s φ'_r (s^-1)^r on sections of sE, and the inverse.
Section shifted_apply(const MorphismData& phi, const BundlePtr& s_target, const std::vector<Section>& ys);

struct MorphismPair {
    LieNAlgebroid source, target;
};

// ρ'(X)(φ0*g) = Σ_j f_j φ0*(r'(ξ_j) g) on degree -1 frames and target coordinates
CheckResult check_anchor_condition(const MorphismData& phi, const MorphismPair& p);

struct BracketOptions {
    bool coordinate_multiples = true;  // also slots multiplied by a source coordinate
    bool allow_fast_path = true;       // simplified condition when φ0 = id
};
// LHS - RHS of the bracket condition on one tuple of source sections (full condition)
Section bracket_residual(const MorphismData& phi, const LieNAntialgebroid& src, const LieNAntialgebroid& tgt,
                         const std::vector<Section>& xs);
// the base-preserving form, with the anchor terms inside m'_2
Section bracket_residual_base_preserving(const MorphismData& phi, const LieNAntialgebroid& src,
                                         const LieNAntialgebroid& tgt, const std::vector<Section>& xs);
// children "t=1".."t=n+1"
CheckResult check_bracket_conditions(const MorphismData& phi, const MorphismPair& p, BracketOptions opt = {});

// Q_E∘Φ = Φ∘Q_F on target coordinates and generators
CheckResult check_equivariance(const MorphismData& phi, const MorphismPair& p);
// (Q_E Φ g - Φ Q_F g) for one target generator index, or coordinate when `coordinate`
SuperFunction equivariance_defect(const AlgebraMorphism& big_phi, const Derivation& qe, const Derivation& qf,
                                  std::size_t index, bool coordinate);

struct MorphismReport {
    CheckResult anchor, brackets, equivariance;
    bool geometric() const { return anchor.pass && brackets.pass; }
    bool agree() const { return equivariance.pass == geometric(); }
};
MorphismReport check_morphism(const MorphismData& phi, const MorphismPair& p, BracketOptions opt = {});

// Over a point: the L∞-morphism identity written with φ_r, l_r, m_r on sE tuples,
//   Σ_{r+s=t+1} Σ_{Sh(s,r-1)} c_A φ_r(l_s(..), ..) - Σ_{partitions} c_B m_r(φ_{t_1}(..), .., φ_{t_r}(..))
Section linfty_morphism_residual(const MorphismData& phi, const LieNAlgebroid& src, const LieNAlgebroid& tgt,
                                 const std::vector<Section>& ys);

}  // namespace nqforge
