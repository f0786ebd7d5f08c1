#include "nqforge/linfty.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nqforge/parallel.hpp"
#include "nqforge/signs.hpp"

namespace nqforge {

BracketStructure::BracketStructure(BundlePtr b) : bundle_(std::move(b)), anchor_(bundle_->rank()) {}

Convention BracketStructure::convention() const {
    return bundle_->side() == Side::E ? Convention::Antialgebra : Convention::Algebra;
}

int BracketStructure::output_degree(int r, int d) const {
    return convention() == Convention::Antialgebra ? d + 1 : d + 2 - r;
}

int BracketStructure::reorder_sign(const FrameTuple& frames, FrameTuple& sorted) const {
    Permutation p(frames.size());
    std::iota(p.begin(), p.end(), 0);
    std::stable_sort(p.begin(), p.end(), [&](int a, int b) { return frames[a] < frames[b]; });
    sorted.resize(frames.size());
    std::vector<int> deg(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        sorted[i] = frames[p[i]];
        deg[i] = bundle_->degree(frames[i]);
    }
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1] && repeat_vanishes(bundle_->side(), bundle_->degree(sorted[i]))) return 0;
    return convention() == Convention::Antialgebra ? koszul_sign(p, deg) : chi_sign(p, deg);
}

void BracketStructure::set_bracket(const FrameTuple& frames, const Section& value) {
    int r = static_cast<int>(frames.size());
    if (r < 1 || r > max_arity())
        throw std::invalid_argument("bracket arity " + std::to_string(r) + " outside 1.." + std::to_string(max_arity()));
    int d = 0;
    for (auto f : frames) {
        if (f >= bundle_->rank()) throw std::out_of_range("frame index out of range");
        d += bundle_->degree(f);
    }
    if (!same_bundle(value.bundle(), bundle_)) throw std::invalid_argument("bracket value lives in another bundle");
    int want = output_degree(r, d);
    if (auto got = value.degree(); got && *got != want)
        throw std::invalid_argument("bracket of arity " + std::to_string(r) + " must have degree " + std::to_string(want));
    if (!value.is_homogeneous()) throw std::invalid_argument("bracket value is not homogeneous");
    FrameTuple sorted;
    int s = reorder_sign(frames, sorted);
    if (s == 0) {
        if (!value.is_zero()) throw std::invalid_argument("bracket on a vanishing frame tuple must be zero");
        return;
    }
    if (value.is_zero())
        table_.erase(sorted);
    else
        table_[sorted] = Rational(s) * value;
}

Section BracketStructure::on_frames(const FrameTuple& frames) const {
    FrameTuple sorted;
    int s = reorder_sign(frames, sorted);
    if (s == 0) return Section(bundle_);
    auto it = table_.find(sorted);
    if (it == table_.end()) return Section(bundle_);
    return Rational(s) * it->second;
}

void BracketStructure::set_anchor(std::size_t frame, std::vector<Polynomial> field) {
    if (frame >= bundle_->rank()) throw std::out_of_range("anchor frame out of range");
    bool zero = std::all_of(field.begin(), field.end(), [](const Polynomial& p) { return p.is_zero(); });
    if (zero) {
        anchor_[frame].clear();
        return;
    }
    if (bundle_->degree(frame) != bundle_->anchor_degree())
        throw std::invalid_argument("anchor is only defined on frames of degree " + std::to_string(bundle_->anchor_degree()));
    if (field.size() != bundle_->coordinates().size()) throw std::invalid_argument("anchor needs one component per coordinate");
    for (auto& p : field) p = p.in(bundle_->coordinates());
    anchor_[frame] = std::move(field);
}

const std::vector<Polynomial>& BracketStructure::anchor(std::size_t frame) const { return anchor_[frame]; }

bool BracketStructure::has_anchor() const {
    return std::any_of(anchor_.begin(), anchor_.end(), [](const auto& a) { return !a.empty(); });
}

Polynomial BracketStructure::apply_anchor(const Section& x, const Polynomial& f) const {
    const Coordinates& c = bundle_->coordinates();
    Polynomial out(c);
    for (std::size_t a = 0; a < bundle_->rank(); ++a) {
        if (anchor_[a].empty() || x[a].is_zero()) continue;
        for (std::size_t i = 0; i < c.size(); ++i) out += x[a] * anchor_[a][i] * f.partial(i);
    }
    return out;
}

Section BracketStructure::operator()(const std::vector<Section>& xs) const {
    int r = static_cast<int>(xs.size());
    Section out(bundle_);
    if (r < 1) throw std::invalid_argument("bracket needs at least one argument");
    for (const auto& x : xs) {
        if (!same_bundle(x.bundle(), bundle_)) throw std::invalid_argument("section of another bundle");
        if (!x.is_homogeneous()) throw std::invalid_argument("bracket arguments must be homogeneous");
        if (x.is_zero()) return out;
    }
    if (r > max_arity()) return out;

    // multilinear part over the frames
    FrameTuple cur(r);
    auto rec = [&](auto&& self, int slot, const Polynomial& coeff) -> void {
        if (slot == r) {
            Section v = on_frames(cur);
            if (!v.is_zero()) out += coeff * v;
            return;
        }
        const auto& comps = xs[slot].components();
        for (std::size_t a = 0; a < comps.size(); ++a) {
            if (comps[a].is_zero()) continue;
            cur[slot] = a;
            self(self, slot + 1, coeff * comps[a]);
        }
    };
    rec(rec, 0, Polynomial(bundle_->coordinates(), 1));

    if (r == 2 && has_anchor()) {
        // l(f e_α, g e_β) gains f (ρ(e_α) g) e_β ± (-1)^{xy} g (ρ(e_β) f) e_α
        int x = *xs[0].degree(), y = *xs[1].degree();
        int other = (convention() == Convention::Antialgebra ? 1 : -1) * minus_one_pow(static_cast<long long>(x) * y);
        for (std::size_t a = 0; a < bundle_->rank(); ++a) {
            if (xs[0][a].is_zero()) continue;
            Section ea = Section::frame(bundle_, a);
            for (std::size_t b = 0; b < bundle_->rank(); ++b) {
                if (xs[1][b].is_zero()) continue;
                Section eb = Section::frame(bundle_, b);
                Polynomial t1 = xs[0][a] * apply_anchor(ea, xs[1][b]);
                if (!t1.is_zero()) out += t1 * eb;
                Polynomial t2 = xs[1][b] * apply_anchor(eb, xs[0][a]);
                if (!t2.is_zero()) out += Rational(other) * (t2 * ea);
            }
        }
    }
    return out;
}

bool BracketStructure::is_zero() const { return table_.empty() && !has_anchor(); }

bool BracketStructure::operator==(const BracketStructure& o) const {
    return same_bundle(bundle_, o.bundle_) && table_ == o.table_ && anchor_ == o.anchor_;
}

std::string BracketStructure::to_string() const {
    std::ostringstream os;
    const auto& b = *bundle_;
    const char* name = convention() == Convention::Antialgebra ? "l'" : "l";
    for (std::size_t a = 0; a < b.rank(); ++a) {
        if (anchor_[a].empty()) continue;
        os << "rho(" << b.frame(a).name << ") =";
        bool first = true;
        for (std::size_t i = 0; i < anchor_[a].size(); ++i) {
            if (anchor_[a][i].is_zero()) continue;
            os << (first ? " " : " + ") << "(" << anchor_[a][i].to_string() << ")*d/d" << b.coordinates()[i];
            first = false;
        }
        os << "\n";
    }
    for (const auto& [t, v] : table_) {
        os << name << t.size() << "(";
        for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << b.frame(t[i]).name;
        os << ") = " << v.to_string() << "\n";
    }
    return os.str();
}

std::string tuple_label(const std::vector<Section>& xs) {
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += xs[i].to_string();
    }
    return s + ")";
}

Section jacobiator(const BracketStructure& a, const std::vector<Section>& xs) {
    int r = static_cast<int>(xs.size());
    bool anti = a.convention() == Convention::Antialgebra;
    std::vector<int> deg(r);
    for (int m = 0; m < r; ++m) deg[m] = xs[m].degree_or(0);
    Section total(a.bundle());
    for (int i = 1; i <= r; ++i) {
        int j = r + 1 - i;
        if (i > a.max_arity() || j > a.max_arity()) continue;
        std::vector<Permutation> perms;
        if (j == 1) {
            perms.emplace_back(r);
            std::iota(perms[0].begin(), perms[0].end(), 0);
        } else {
            perms = shuffles({i, j - 1});
        }
        for (const auto& sigma : perms) {
            std::vector<Section> inner;
            for (int m = 0; m < i; ++m) inner.push_back(xs[sigma[m]]);
            Section in = a(inner);
            if (in.is_zero()) continue;
            std::vector<Section> outer{in};
            for (int m = i; m < r; ++m) outer.push_back(xs[sigma[m]]);
            Section v = a(outer);
            if (v.is_zero()) continue;
            int s = anti ? signs::anti_shuffle_sign(sigma, deg) : signs::algebra_shuffle_sign(i, j, sigma, deg);
            total += Rational(s) * v;
        }
    }
    return total;
}

std::vector<std::vector<Section>> test_tuples(const BracketStructure& a, int r, bool coordinate_multiples) {
    const BundlePtr& b = a.bundle();
    std::vector<Section> basis;
    std::vector<int> deg;
    for (const auto& at : atom_basis(b, coordinate_multiples)) {
        basis.push_back(section_of(b, at));
        deg.push_back(at.degree);
    }
    // multisets over the basis, skipping repeats that vanish
    std::vector<std::vector<Section>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<int>(cur.size()) == r) {
            std::vector<Section> xs;
            for (auto i : cur) xs.push_back(basis[i]);
            out.push_back(xs);
            return;
        }
        for (std::size_t i = start; i < basis.size(); ++i) {
            if (!cur.empty() && cur.back() == i && repeat_vanishes(b->side(), deg[i])) continue;
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

CheckResult verify_structure(const BracketStructure& a, VerifyOptions opt) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult res;
    res.name = a.convention() == Convention::Antialgebra ? "antialgebra identities" : "algebra identities";
    int r_max = opt.r_max > 0 ? opt.r_max : a.bundle()->n() + 2;
    for (int r = 1; r <= r_max; ++r) {
        CheckResult child;
        child.name = "r=" + std::to_string(r);
        auto tuples = test_tuples(a, r, opt.coordinate_multiples);
        auto residuals = parallel_map<Section>(tuples.size(), [&](std::size_t t) { return jacobiator(a, tuples[t]); });
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            ++child.cases;
            if (!residuals[t].is_zero()) child.fail("r=" + std::to_string(r) + " " + tuple_label(tuples[t]), residuals[t].to_string());
        }
        res.absorb(child);
        res.children.push_back(child);
    }
    res.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

CheckResult verify_antialgebra(const AntialgebraStructure& a, VerifyOptions opt) {
    if (a.convention() != Convention::Antialgebra) throw std::invalid_argument("expected an E-side structure");
    return verify_structure(a, opt);
}

CheckResult verify_algebra(const AlgebraStructure& a, VerifyOptions opt) {
    if (a.convention() != Convention::Algebra) throw std::invalid_argument("expected an sE-side structure");
    return verify_structure(a, opt);
}

namespace {

// conjugates every structure function by the transfer sign computed on E-side degrees
BracketStructure transfer(const BracketStructure& a, const BundlePtr& target, int e_shift) {
    BracketStructure out(target);
    for (const auto& [t, v] : a.table()) {
        std::vector<int> e_deg;
        for (auto f : t) e_deg.push_back(a.bundle()->degree(f) + e_shift);
        out.set_bracket(t, Rational(signs::transfer_sign(e_deg)) * v.rebased(target));
    }
    for (std::size_t f = 0; f < a.bundle()->rank(); ++f)
        if (!a.anchor(f).empty()) out.set_anchor(f, a.anchor(f));
    return out;
}

}  // namespace

AlgebraStructure transfer_to_algebra(const AntialgebraStructure& a) {
    if (a.convention() != Convention::Antialgebra) throw std::invalid_argument("expected an E-side structure");
    return transfer(a, a.bundle()->suspended(), 0);
}

AntialgebraStructure transfer_to_antialgebra(const AlgebraStructure& a) {
    if (a.convention() != Convention::Algebra) throw std::invalid_argument("expected an sE-side structure");
    return transfer(a, a.bundle()->desuspended(), -1);
}

MultilinearMap corestriction(const AntialgebraStructure& a, int arity) {
    MultilinearMap m;
    m.arity = arity;
    m.degree = 1;
    BundlePtr b = a.bundle();
    m.eval = [a, b](const std::vector<Atom>& atoms) {
        std::vector<Section> xs;
        for (const auto& at : atoms) xs.push_back(section_of(b, at));
        return atoms_of(a(xs));
    };
    return m;
}

Coderivation codifferential(const AntialgebraStructure& a) {
    std::vector<MultilinearMap> co;
    for (int k = 1; k <= a.max_arity(); ++k) co.push_back(corestriction(a, k));
    return Coderivation(co, 1);
}

std::vector<Atom> atom_basis(const BundlePtr& b, bool coordinate_multiples) {
    std::vector<Atom> out;
    std::size_t nc = b->coordinates().size();
    for (std::size_t f = 0; f < b->rank(); ++f) {
        out.push_back(Atom{f, Exponents(nc, 0), b->degree(f)});
        if (!coordinate_multiples) continue;
        for (std::size_t i = 0; i < nc; ++i) {
            Exponents e(nc, 0);
            e[i] = 1;
            out.push_back(Atom{f, e, b->degree(f)});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CheckResult check_codifferential(const AntialgebraStructure& a, int max_len, const std::vector<Atom>& basis) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult res;
    res.name = "codifferential squares to zero";
    Coderivation d = codifferential(a);
    std::vector<Word> words;
    for (int len = 1; len <= max_len; ++len) {
        Word cur;
        auto rec = [&](auto&& self, std::size_t start) -> void {
            if (static_cast<int>(cur.size()) == len) {
                words.push_back(cur);
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
    }
    auto sq = parallel_map<TensorWord>(words.size(), [&](std::size_t w) { return d(d.on_word(words[w])); });
    for (std::size_t w = 0; w < words.size(); ++w) {
        ++res.cases;
        if (!sq[w].is_zero())
            res.fail("word " + TensorWord::single(words[w]).to_string(a.bundle()), sq[w].to_string(a.bundle()));
    }
    res.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace nqforge
