#pragma once

#include <map>
#include <string>
#include <vector>

#include "nqforge/coalgebra.hpp"
#include "nqforge/graded.hpp"
#include "nqforge/report.hpp"

namespace nqforge {

// E-side bundles carry graded symmetric brackets of degree 1, sE-side bundles
// graded antisymmetric brackets l_i of degree 2 - i.
enum class Convention { Antialgebra, Algebra };

using FrameTuple = std::vector<std::size_t>;

// Brackets given by structure functions on sorted frame multisets, with an
// optional anchor on the frames of top degree (-1 on E, 0 on sE). Without an
// anchor every bracket is C∞-multilinear.
class BracketStructure {
public:
    BracketStructure() = default;
    explicit BracketStructure(BundlePtr b);

    const BundlePtr& bundle() const { return bundle_; }
    Convention convention() const;
    int max_arity() const { return bundle_->n() + 1; }
    // degree of a bracket of arity r on inputs of total degree d
    int output_degree(int r, int d) const;

    // frames in any order; the value is stored on the sorted tuple
    void set_bracket(const FrameTuple& frames, const Section& value);
    // value on a frame tuple in any order (zero when absent or vanishing)
    Section on_frames(const FrameTuple& frames) const;
    const std::map<FrameTuple, Section>& table() const { return table_; }

    void set_anchor(std::size_t frame, std::vector<Polynomial> field);
    // components of the vector field; empty when zero
    const std::vector<Polynomial>& anchor(std::size_t frame) const;
    bool has_anchor() const;
    // ρ(X) f
    Polynomial apply_anchor(const Section& x, const Polynomial& f) const;

    // full evaluation on homogeneous sections, with the anchored Leibniz rule in arity 2
    Section operator()(const std::vector<Section>& xs) const;

    bool is_zero() const;
    bool operator==(const BracketStructure& o) const;
    bool operator!=(const BracketStructure& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    BundlePtr bundle_;
    std::map<FrameTuple, Section> table_;
    std::vector<std::vector<Polynomial>> anchor_;
    int reorder_sign(const FrameTuple& frames, FrameTuple& sorted) const;
};

using AntialgebraStructure = BracketStructure;
using AlgebraStructure = BracketStructure;

struct VerifyOptions {
    int r_max = 0;  // 0 means n + 2
    // also test tuples with one slot multiplied by a base coordinate
    bool coordinate_multiples = false;
};

// Σ_{i+j=r+1} Σ_{Sh(i,j-1)} sign ℓ_j(ℓ_i(..),..) on one tuple
Section jacobiator(const BracketStructure& a, const std::vector<Section>& xs);

// The identities on all frame tuples of arity 1..r_max; one child report per arity.
CheckResult verify_antialgebra(const AntialgebraStructure& a, VerifyOptions opt = {});
CheckResult verify_algebra(const AlgebraStructure& a, VerifyOptions opt = {});
CheckResult verify_structure(const BracketStructure& a, VerifyOptions opt = {});

// l_i = s l'_i (s^-1)^i and l'_i = (-1)^{i(i-1)/2} s^-1 l_i s^i; anchors are copied frame by frame
AlgebraStructure transfer_to_algebra(const AntialgebraStructure& a);
AntialgebraStructure transfer_to_antialgebra(const AlgebraStructure& a);

// test tuples used by the checkers
std::vector<std::vector<Section>> test_tuples(const BracketStructure& a, int r, bool coordinate_multiples);

// Corestriction l'_r as a map on atoms x^m e_α over the reals.
MultilinearMap corestriction(const AntialgebraStructure& a, int arity);
Coderivation codifferential(const AntialgebraStructure& a);
// frames, plus coordinate multiples when requested
std::vector<Atom> atom_basis(const BundlePtr& b, bool coordinate_multiples);
// D^2 = 0 on all normal-ordered words of length 1..max_len over the basis
CheckResult check_codifferential(const AntialgebraStructure& a, int max_len, const std::vector<Atom>& basis);

std::string tuple_label(const std::vector<Section>& xs);

}  // namespace nqforge
