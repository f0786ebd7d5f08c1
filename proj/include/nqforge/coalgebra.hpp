#pragma once

#include <functional>
#include <map>
#include <tuple>
#include <string>
#include <vector>

#include "nqforge/graded.hpp"

namespace nqforge {

// Basis element x^exps * e_frame of the section space, viewed over the reals.
struct Atom {
    std::size_t frame = 0;
    Exponents exps;
    int degree = 0;

    auto key() const { return std::tie(frame, exps); }
    bool operator<(const Atom& o) const { return key() < o.key(); }
    bool operator==(const Atom& o) const { return key() == o.key(); }
};

using Word = std::vector<Atom>;

struct NormalForm {
    Word word;
    int sign;  // 0 when the word vanishes
};
// sort into the global order, tracking the Koszul sign
NormalForm normal_order(const Word& w);
int word_degree(const Word& w);

// Formal sum of normal-ordered words with rational coefficients.
class TensorWord {
public:
    using Terms = std::map<Word, Rational>;
    TensorWord() = default;
    static TensorWord single(const Word& w, const Rational& q = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const Word& w, const Rational& q);  // w is normal-ordered by the caller or here

    TensorWord& operator+=(const TensorWord& o);
    TensorWord& operator-=(const TensorWord& o);
    friend TensorWord operator+(TensorWord a, const TensorWord& b) { return a += b; }
    friend TensorWord operator-(TensorWord a, const TensorWord& b) { return a -= b; }
    friend TensorWord operator*(const Rational& q, TensorWord a);
    bool operator==(const TensorWord& o) const { return terms_ == o.terms_; }
    bool operator!=(const TensorWord& o) const { return !(*this == o); }

    // symmetric product
    friend TensorWord odot(const TensorWord& a, const TensorWord& b);

    std::string to_string(const BundlePtr& names = nullptr) const;

private:
    Terms terms_;
};

// Sum of k-fold tensor products of words.
class TensorProduct {
public:
    using Key = std::vector<Word>;
    using Terms = std::map<Key, Rational>;
    const Terms& terms() const { return terms_; }
    void add(const Key& k, const Rational& q);
    bool is_zero() const { return terms_.empty(); }
    TensorProduct& operator+=(const TensorProduct& o);
    TensorProduct& operator-=(const TensorProduct& o);
    bool operator==(const TensorProduct& o) const { return terms_ == o.terms_; }

private:
    Terms terms_;
};

// section <-> atoms
TensorWord atoms_of(const Section& s);
Section section_of(const BundlePtr& b, const Atom& a);
// a length-one tensor word back to a section (higher lengths rejected)
Section section_of(const BundlePtr& b, const TensorWord& w);

struct MultilinearMap {
    int arity = 1;
    int degree = 0;
    std::function<TensorWord(const std::vector<Atom>&)> eval;

    // evaluates on a word of length `arity` and extends linearly; other lengths give 0
    TensorWord operator()(const TensorWord& w) const;
    TensorWord on(const std::vector<Atom>& atoms) const;
};

MultilinearMap identity_map(int arity);
// (f ⊙ g)(v) = sum over Sh(r1, r2) of (-1)^{g (v_s1 + ... + v_sr1)} eps(s) f(..) ⊙ g(..)
MultilinearMap symmetric_product(const MultilinearMap& f, const MultilinearMap& g);

TensorProduct coproduct(const TensorWord& w);
// apply a map of the given degree to factor `slot` of every tensor, with the Koszul sign
TensorProduct apply_on_factor(const TensorProduct& t, std::size_t slot, int degree,
                              const std::function<TensorWord(const Word&)>& f);
// apply Delta to factor `slot`, producing one more factor
TensorProduct coproduct_on_factor(const TensorProduct& t, std::size_t slot);
TensorProduct tensor_of(const TensorWord& w);  // one-factor tensors

class Coderivation {
public:
    // corestrictions[k-1] has arity k and values in length-one words
    Coderivation(std::vector<MultilinearMap> corestrictions, int degree);
    int degree() const { return degree_; }
    TensorWord operator()(const TensorWord& w) const;
    TensorWord on_word(const Word& w) const;

private:
    std::vector<MultilinearMap> co_;
    int degree_;
};

class Cohomomorphism {
public:
    // corestrictions of degree 0
    explicit Cohomomorphism(std::vector<MultilinearMap> corestrictions);
    TensorWord operator()(const TensorWord& w) const;
    TensorWord on_word(const Word& w) const;

private:
    std::vector<MultilinearMap> co_;
};

}  // namespace nqforge
