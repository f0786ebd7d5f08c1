#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nqforge/polynomial.hpp"

namespace nqforge {

// E-side: degrees -1..-n. sE-side: degrees 0..-(n-1).
enum class Side { E, SE };

struct Frame {
    std::string name;
    int degree;
    std::string dual;  // name of the dual generator in superfunction text
};

class GradedBundle;
using BundlePtr = std::shared_ptr<const GradedBundle>;

class GradedBundle {
public:
    // frames are stored sorted by decreasing degree, keeping declaration order inside a degree
    static BundlePtr make(Side side, int n, Coordinates coords, std::vector<Frame> frames);

    Side side() const { return side_; }
    int n() const { return n_; }
    const Coordinates& coordinates() const { return coords_; }
    std::size_t rank() const { return frames_.size(); }
    const std::vector<Frame>& frames() const { return frames_; }
    const Frame& frame(std::size_t i) const { return frames_[i]; }
    int degree(std::size_t i) const { return frames_[i].degree; }
    std::optional<std::size_t> index_of(std::string_view name) const;
    std::optional<std::size_t> dual_index_of(std::string_view name) const;
    std::vector<std::size_t> frames_of_degree(int d) const;
    int min_degree() const { return side_ == Side::E ? -n_ : 1 - n_; }
    int max_degree() const { return side_ == Side::E ? -1 : 0; }
    // degree of the frames carrying the anchor
    int anchor_degree() const { return max_degree(); }

    BundlePtr suspended() const;    // E -> sE
    BundlePtr desuspended() const;  // sE -> E
    // same frames, other base coordinates (sections of a pulled-back bundle)
    BundlePtr over(const Coordinates& c) const;

    bool operator==(const GradedBundle& o) const;
    bool operator!=(const GradedBundle& o) const { return !(*this == o); }

private:
    GradedBundle() = default;
    Side side_ = Side::E;
    int n_ = 1;
    Coordinates coords_;
    std::vector<Frame> frames_;
};

bool same_bundle(const BundlePtr& a, const BundlePtr& b);

// whether a frame of this degree squares to zero in the symmetric (E) or
// antisymmetric (sE) algebra over the bundle
bool repeat_vanishes(Side side, int degree);
// sorted multisets of frame indices of size r; optionally restricted to a total degree
std::vector<std::vector<std::size_t>> frame_multisets(const GradedBundle& b, int r,
                                                      std::optional<int> total_degree = std::nullopt,
                                                      bool drop_vanishing = true);

class Section {
public:
    Section() = default;
    explicit Section(BundlePtr b);
    Section(BundlePtr b, std::vector<Polynomial> comps);
    static Section frame(BundlePtr b, std::size_t i, const Polynomial& coeff);
    static Section frame(BundlePtr b, std::size_t i);

    const BundlePtr& bundle() const { return bundle_; }
    const std::vector<Polynomial>& components() const { return comps_; }
    const Polynomial& operator[](std::size_t i) const { return comps_[i]; }
    void set(std::size_t i, Polynomial p) { comps_[i] = p.in(bundle_->coordinates()); }

    bool is_zero() const;
    // degree when homogeneous and nonzero
    std::optional<int> degree() const;
    bool is_homogeneous() const;
    // degree of a homogeneous section; the zero section reports `fallback`
    int degree_or(int fallback) const;

    Section& operator+=(const Section& o);
    Section& operator-=(const Section& o);
    Section operator-() const;
    friend Section operator+(Section a, const Section& b) { return a += b; }
    friend Section operator-(Section a, const Section& b) { return a -= b; }
    friend Section operator*(const Polynomial& f, const Section& s);
    friend Section operator*(const Rational& q, const Section& s);
    bool operator==(const Section& o) const;
    bool operator!=(const Section& o) const { return !(*this == o); }

    // same components viewed in another bundle with the same frame list (s, s^-1)
    Section rebased(BundlePtr b) const;

    std::string to_string() const;

private:
    BundlePtr bundle_;
    std::vector<Polynomial> comps_;
};

// Permutation in one-line notation, 0-based: position p of the output holds input perm[p].
using Permutation = std::vector<int>;

bool is_permutation(const Permutation& p);
int signature(const Permutation& p);
// Koszul sign of reordering inputs with the given degrees into the order perm
int koszul_sign(const Permutation& perm, const std::vector<int>& degrees);
int chi_sign(const Permutation& perm, const std::vector<int>& degrees);
// all permutations increasing inside each consecutive block, lexicographic order
std::vector<Permutation> shuffles(const std::vector<int>& block_sizes);

// One unordered set partition of {0..r-1}; blocks sorted by their least element.
struct BlockPartition {
    std::vector<std::vector<int>> blocks;
    Permutation perm;  // concatenation of the blocks
    std::vector<int> sizes;
};
std::vector<BlockPartition> set_partitions(int r);

inline int minus_one_pow(long long e) { return (e % 2 == 0) ? 1 : -1; }

// (-1)^{i(i-1)/2}
int suspension_power_sign(int i);
// (-1)^{sum_j (i-j) deg X_j}, j = 1..i
int suspension_tuple_sign(const std::vector<int>& degrees);

struct SignedTuple {
    std::vector<Section> sections;
    int sign;
};
// s^i
SignedTuple suspend_tuple(const std::vector<Section>& xs);
// (s^{-1})^i = (-1)^{i(i-1)/2} (s^i)^{-1}
SignedTuple desuspend_tuple(const std::vector<Section>& ys);
// (s^i)^{-1}
SignedTuple unsuspend_tuple(const std::vector<Section>& ys);

}  // namespace nqforge
