#include "nqforge/coalgebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace nqforge {

NormalForm normal_order(const Word& w) {
    Permutation p(w.size());
    std::iota(p.begin(), p.end(), 0);
    std::stable_sort(p.begin(), p.end(), [&](int a, int b) { return w[a] < w[b]; });
    std::vector<int> deg;
    for (const auto& a : w) deg.push_back(a.degree);
    NormalForm nf{{}, koszul_sign(p, deg)};
    for (int i : p) nf.word.push_back(w[i]);
    for (std::size_t i = 1; i < nf.word.size(); ++i)
        if (nf.word[i] == nf.word[i - 1] && nf.word[i].degree % 2 != 0) {
            nf.sign = 0;
            break;
        }
    return nf;
}

int word_degree(const Word& w) {
    int d = 0;
    for (const auto& a : w) d += a.degree;
    return d;
}

TensorWord TensorWord::single(const Word& w, const Rational& q) {
    TensorWord t;
    t.add(w, q);
    return t;
}

void TensorWord::add(const Word& w, const Rational& q) {
    if (q == 0) return;
    NormalForm nf = normal_order(w);
    if (nf.sign == 0) return;
    auto it = terms_.find(nf.word);
    Rational v = nf.sign > 0 ? q : Rational(-q);
    if (it == terms_.end()) {
        terms_.emplace(std::move(nf.word), v);
    } else {
        it->second += v;
        if (it->second == 0) terms_.erase(it);
    }
}

TensorWord& TensorWord::operator+=(const TensorWord& o) {
    for (const auto& [w, q] : o.terms_) add(w, q);
    return *this;
}

TensorWord& TensorWord::operator-=(const TensorWord& o) {
    for (const auto& [w, q] : o.terms_) add(w, -q);
    return *this;
}

TensorWord operator*(const Rational& q, TensorWord a) {
    if (q == 0) return TensorWord();
    for (auto& [w, c] : a.terms_) c *= q;
    return a;
}

TensorWord odot(const TensorWord& a, const TensorWord& b) {
    TensorWord r;
    for (const auto& [wa, qa] : a.terms_)
        for (const auto& [wb, qb] : b.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add(w, qa * qb);
        }
    return r;
}

std::string TensorWord::to_string(const BundlePtr& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, q] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << q.get_str() << ")";
        for (std::size_t i = 0; i < w.size(); ++i) {
            os << (i ? " . " : " ");
            bool mono = false;
            for (unsigned e : w[i].exps) mono |= e != 0;
            if (mono && names) os << Polynomial::monomial(names->coordinates(), w[i].exps).to_string() << "*";
            if (names) os << names->frame(w[i].frame).name;
            else os << "v" << w[i].frame;
        }
    }
    return os.str();
}

void TensorProduct::add(const Key& k, const Rational& q) {
    if (q == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, q);
    } else {
        it->second += q;
        if (it->second == 0) terms_.erase(it);
    }
}

TensorProduct& TensorProduct::operator+=(const TensorProduct& o) {
    for (const auto& [k, q] : o.terms_) add(k, q);
    return *this;
}

TensorProduct& TensorProduct::operator-=(const TensorProduct& o) {
    for (const auto& [k, q] : o.terms_) add(k, -q);
    return *this;
}

TensorWord atoms_of(const Section& s) {
    TensorWord t;
    const auto& b = *s.bundle();
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (const auto& [e, q] : s[i].terms()) t.add(Word{Atom{i, e, b.degree(i)}}, q);
    return t;
}

Section section_of(const BundlePtr& b, const Atom& a) {
    Exponents e = a.exps;
    if (e.empty()) e.assign(b->coordinates().size(), 0);
    return Section::frame(b, a.frame, Polynomial::monomial(b->coordinates(), e));
}

Section section_of(const BundlePtr& b, const TensorWord& w) {
    Section s(b);
    for (const auto& [word, q] : w.terms()) {
        if (word.size() != 1) throw std::invalid_argument("expected a word of length one");
        s += q * section_of(b, word[0]);
    }
    return s;
}

TensorWord MultilinearMap::on(const std::vector<Atom>& atoms) const {
    if (static_cast<int>(atoms.size()) != arity) return TensorWord();
    return eval(atoms);
}

TensorWord MultilinearMap::operator()(const TensorWord& w) const {
    TensorWord r;
    for (const auto& [word, q] : w.terms()) r += q * on(word);
    return r;
}

MultilinearMap identity_map(int arity) {
    MultilinearMap m;
    m.arity = arity;
    m.degree = 0;
    m.eval = [](const std::vector<Atom>& v) { return TensorWord::single(v); };
    return m;
}

MultilinearMap symmetric_product(const MultilinearMap& f, const MultilinearMap& g) {
    MultilinearMap m;
    m.arity = f.arity + g.arity;
    m.degree = f.degree + g.degree;
    m.eval = [f, g](const std::vector<Atom>& v) {
        std::vector<int> deg;
        for (const auto& a : v) deg.push_back(a.degree);
        TensorWord r;
        for (const auto& s : shuffles({f.arity, g.arity})) {
            std::vector<Atom> a(v.size());
            long long first = 0;
            for (std::size_t p = 0; p < s.size(); ++p) a[p] = v[s[p]];
            for (int p = 0; p < f.arity; ++p) first += a[p].degree;
            int sign = minus_one_pow(static_cast<long long>(g.degree) * first) * koszul_sign(s, deg);
            std::vector<Atom> fa(a.begin(), a.begin() + f.arity), ga(a.begin() + f.arity, a.end());
            r += Rational(sign) * odot(f.on(fa), g.on(ga));
        }
        return r;
    };
    return m;
}

TensorProduct tensor_of(const TensorWord& w) {
    TensorProduct t;
    for (const auto& [word, q] : w.terms()) t.add({word}, q);
    return t;
}

namespace {

std::vector<int> degrees_of(const Word& w) {
    std::vector<int> d;
    for (const auto& a : w) d.push_back(a.degree);
    return d;
}

}  // namespace

TensorProduct coproduct(const TensorWord& w) {
    TensorProduct t;
    for (const auto& [word, q] : w.terms()) {
        const int r = static_cast<int>(word.size());
        auto deg = degrees_of(word);
        for (int k = 1; k < r; ++k)
            for (const auto& s : shuffles({k, r - k})) {
                Word a, b;
                for (int p = 0; p < k; ++p) a.push_back(word[s[p]]);
                for (int p = k; p < r; ++p) b.push_back(word[s[p]]);
                NormalForm na = normal_order(a), nb = normal_order(b);
                int sign = koszul_sign(s, deg) * na.sign * nb.sign;
                if (sign) t.add({na.word, nb.word}, q * sign);
            }
    }
    return t;
}

TensorProduct apply_on_factor(const TensorProduct& t, std::size_t slot, int degree,
                              const std::function<TensorWord(const Word&)>& f) {
    TensorProduct r;
    for (const auto& [key, q] : t.terms()) {
        long long before = 0;
        for (std::size_t i = 0; i < slot; ++i) before += word_degree(key[i]);
        int sign = minus_one_pow(static_cast<long long>(degree) * before);
        TensorWord img = f(key[slot]);
        for (const auto& [w, c] : img.terms()) {
            auto k = key;
            k[slot] = w;
            r.add(k, q * c * sign);
        }
    }
    return r;
}

TensorProduct coproduct_on_factor(const TensorProduct& t, std::size_t slot) {
    TensorProduct r;
    for (const auto& [key, q] : t.terms()) {
        TensorProduct d = coproduct(TensorWord::single(key[slot]));
        for (const auto& [pair, c] : d.terms()) {
            TensorProduct::Key k(key.begin(), key.begin() + slot);
            k.push_back(pair[0]);
            k.push_back(pair[1]);
            k.insert(k.end(), key.begin() + slot + 1, key.end());
            r.add(k, q * c);
        }
    }
    return r;
}

Coderivation::Coderivation(std::vector<MultilinearMap> corestrictions, int degree)
    : co_(std::move(corestrictions)), degree_(degree) {
    for (std::size_t k = 0; k < co_.size(); ++k)
        if (co_[k].arity != static_cast<int>(k + 1)) throw std::invalid_argument("corestriction arity out of place");
}

TensorWord Coderivation::on_word(const Word& word) const {
    TensorWord r;
    const int len = static_cast<int>(word.size());
    auto deg = degrees_of(word);
    for (int k = 1; k <= len && k <= static_cast<int>(co_.size()); ++k) {
        if (k == len) {
            r += co_[k - 1].on(word);
            continue;
        }
        for (const auto& s : shuffles({k, len - k})) {
            std::vector<Atom> a;
            Word rest;
            for (int p = 0; p < k; ++p) a.push_back(word[s[p]]);
            for (int p = k; p < len; ++p) rest.push_back(word[s[p]]);
            TensorWord head = co_[k - 1].on(a);
            if (head.is_zero()) continue;
            r += Rational(koszul_sign(s, deg)) * odot(head, TensorWord::single(rest));
        }
    }
    return r;
}

TensorWord Coderivation::operator()(const TensorWord& w) const {
    TensorWord r;
    for (const auto& [word, q] : w.terms()) r += q * on_word(word);
    return r;
}

Cohomomorphism::Cohomomorphism(std::vector<MultilinearMap> corestrictions) : co_(std::move(corestrictions)) {
    for (std::size_t k = 0; k < co_.size(); ++k)
        if (co_[k].arity != static_cast<int>(k + 1)) throw std::invalid_argument("corestriction arity out of place");
}

TensorWord Cohomomorphism::on_word(const Word& word) const {
    TensorWord r;
    auto deg = degrees_of(word);
    for (const auto& part : set_partitions(static_cast<int>(word.size()))) {
        TensorWord prod;
        bool first = true;
        for (const auto& block : part.blocks) {
            if (block.size() > co_.size()) {
                prod = TensorWord();
                first = false;
                break;
            }
            std::vector<Atom> a;
            for (int i : block) a.push_back(word[i]);
            TensorWord v = co_[block.size() - 1].on(a);
            prod = first ? v : odot(prod, v);
            first = false;
            if (prod.is_zero()) break;
        }
        if (!prod.is_zero()) r += Rational(koszul_sign(part.perm, deg)) * prod;
    }
    return r;
}

TensorWord Cohomomorphism::operator()(const TensorWord& w) const {
    TensorWord r;
    for (const auto& [word, q] : w.terms()) r += q * on_word(word);
    return r;
}

}  // namespace nqforge
