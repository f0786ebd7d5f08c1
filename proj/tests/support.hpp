#pragma once

// Shared helpers for the unit tests and the acceptance binary.

#include <functional>
#include <string>
#include <random>

#include "nqforge/coalgebra.hpp"
#include "nqforge/superalg.hpp"

namespace nqforge::testing {

// Graded symmetric map into length-one words, with random values on sorted inputs.
inline MultilinearMap random_symmetric_map(std::mt19937& rng, int arity, int degree, const std::vector<Atom>& basis,
                                           int density_percent = 60) {
    auto seed = static_cast<unsigned>(rng());
    MultilinearMap m;
    m.arity = arity;
    m.degree = degree;
    m.eval = [seed, basis, degree, density_percent](const std::vector<Atom>& in) {
        NormalForm nf = normal_order(in);
        if (nf.sign == 0) return TensorWord();
        // values depend only on the sorted input word, so the map is well defined
        std::seed_seq sq{seed, static_cast<unsigned>(std::hash<std::string>{}(TensorWord::single(nf.word).to_string()))};
        std::mt19937 local(sq);
        std::uniform_int_distribution<int> coef(-3, 3), pick(0, 99);
        TensorWord v;
        int want = word_degree(nf.word) + degree;
        for (const auto& b : basis)
            if (b.degree == want && pick(local) < density_percent) v.add(Word{b}, coef(local));
        return Rational(nf.sign) * v;
    };
    return m;
}

// All normal-ordered nonvanishing words of the given length over the basis.
inline std::vector<Word> all_words(const std::vector<Atom>& basis, int length) {
    std::vector<Word> out;
    Word cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<int>(cur.size()) == length) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < basis.size(); ++i) {
            if (!cur.empty() && cur.back() == basis[i] && basis[i].degree % 2 != 0) continue;
            cur.push_back(basis[i]);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline TensorProduct delta_then(const std::function<TensorWord(const Word&)>& f, const TensorWord& w) {
    TensorWord img;
    for (const auto& [word, q] : w.terms()) img += q * f(word);
    return coproduct(img);
}

// Monomials of the given standard degree.
inline std::vector<Monomial> monomials_of_degree(const GradedBundle& b, int k) {
    std::vector<Monomial> out;
    Monomial cur(b.rank(), 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == b.rank()) {
            if (left == 0) out.push_back(cur);
            return;
        }
        int g = -b.degree(i);
        unsigned cap = g % 2 ? 1u : static_cast<unsigned>(left / g);
        for (unsigned e = 0; e <= cap && static_cast<int>(e) * g <= left; ++e) {
            cur[i] = e;
            self(self, i + 1, left - static_cast<int>(e) * g);
        }
        cur[i] = 0;
    };
    if (k >= 0) rec(rec, 0, k);
    return out;
}

inline Polynomial random_polynomial(std::mt19937& rng, const Coordinates& c, int terms = 2, unsigned maxdeg = 2) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<unsigned> ex(0, maxdeg);
    Polynomial p(c);
    for (int t = 0; t < terms; ++t) {
        Exponents e(c.size());
        for (auto& x : e) x = ex(rng);
        p.add_term(e, coef(rng));
    }
    return p;
}

inline SuperFunction random_superfunction(std::mt19937& rng, const BundlePtr& b, int k) {
    SuperFunction f(b);
    std::uniform_int_distribution<int> pick(0, 99);
    for (const auto& m : monomials_of_degree(*b, k))
        if (pick(rng) < 60) f.add_term(m, random_polynomial(rng, b->coordinates()));
    return f;
}

inline Derivation random_derivation(std::mt19937& rng, const BundlePtr& b, int degree) {
    std::vector<SuperFunction> c, g;
    for (std::size_t i = 0; i < b->coordinates().size(); ++i) c.push_back(random_superfunction(rng, b, degree));
    for (std::size_t i = 0; i < b->rank(); ++i) g.push_back(random_superfunction(rng, b, -b->degree(i) + degree));
    return Derivation(b, degree, c, g);
}

inline Section random_section(std::mt19937& rng, const BundlePtr& b, int degree) {
    Section s(b);
    for (auto i : b->frames_of_degree(degree)) s.set(i, random_polynomial(rng, b->coordinates()));
    return s;
}

}  // namespace nqforge::testing
