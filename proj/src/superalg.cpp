#include "nqforge/superalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nqforge/expr.hpp"
#include "nqforge/parallel.hpp"

namespace nqforge {

namespace {

void require_bundle(const BundlePtr& b) {
    if (!b) throw ContextError("superfunction without a bundle");
    if (b->side() != Side::E) throw ContextError("superfunctions live over an E-side bundle");
}

const BundlePtr& merged(const BundlePtr& a, const BundlePtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (!same_bundle(a, b)) throw ContextError("superfunctions over different bundles");
    return a;
}

}  // namespace

SuperFunction::SuperFunction(BundlePtr b) : bundle_(std::move(b)) { require_bundle(bundle_); }

SuperFunction SuperFunction::function(BundlePtr b, const Polynomial& f) {
    SuperFunction s(std::move(b));
    s.add_term(Monomial(s.bundle_->rank(), 0), f);
    return s;
}

SuperFunction SuperFunction::generator(BundlePtr b, std::size_t i) {
    SuperFunction s(std::move(b));
    if (i >= s.bundle_->rank()) throw std::out_of_range("generator index out of range");
    Monomial m(s.bundle_->rank(), 0);
    m[i] = 1;
    s.add_term(m, Polynomial(s.bundle_->coordinates(), 1));
    return s;
}

SuperFunction SuperFunction::coordinate(BundlePtr b, std::size_t i) {
    Coordinates c = b->coordinates();
    return function(std::move(b), Polynomial::variable(c, i));
}

SuperFunction SuperFunction::monomial(BundlePtr b, const Monomial& m, const Polynomial& coeff) {
    SuperFunction s(std::move(b));
    s.add_term(m, coeff);
    return s;
}

SuperFunction SuperFunction::parse(BundlePtr b, std::string_view text) {
    require_bundle(b);
    ExprOps<SuperFunction> ops;
    ops.constant = [&](const Rational& q) { return function(b, Polynomial(b->coordinates(), q)); };
    ops.identifier = [&](std::string_view name, std::size_t col) {
        if (auto i = b->coordinates().index_of(name)) return coordinate(b, *i);
        if (auto i = b->dual_index_of(name)) return generator(b, *i);
        throw ParseError("unknown symbol '" + std::string(name) + "'", col);
    };
    ops.as_constant = [](const SuperFunction& s) -> std::optional<Rational> {
        auto f = s.as_function();
        if (!f) return std::nullopt;
        return f->as_constant();
    };
    ops.scale = [](const SuperFunction& s, const Rational& q) { return q * s; };
    return ExprParser<SuperFunction>(text, ops).parse();
}

void SuperFunction::add_term(const Monomial& m, const Polynomial& c) {
    require_bundle(bundle_);
    if (m.size() != bundle_->rank()) throw std::invalid_argument("monomial length differs from the bundle rank");
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 1 && generator_degree(i) % 2 != 0) return;  // odd generators square to zero
    if (c.is_zero()) return;
    Polynomial cc = c.in(bundle_->coordinates());
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, cc);
        return;
    }
    it->second += cc;
    if (it->second.is_zero()) terms_.erase(it);
}

int SuperFunction::standard_degree(const Monomial& m) const {
    int k = 0;
    for (std::size_t i = 0; i < m.size(); ++i) k += static_cast<int>(m[i]) * generator_degree(i);
    return k;
}

int SuperFunction::homological_degree(const Monomial& m) {
    return static_cast<int>(std::accumulate(m.begin(), m.end(), 0u));
}

SuperFunction SuperFunction::hom_component(int s) const {
    if (!bundle_) return *this;
    SuperFunction r(bundle_);
    for (const auto& [m, c] : terms_)
        if (homological_degree(m) == s) r.terms_.emplace(m, c);
    return r;
}

SuperFunction SuperFunction::std_component(int k) const {
    if (!bundle_) return *this;
    SuperFunction r(bundle_);
    for (const auto& [m, c] : terms_)
        if (standard_degree(m) == k) r.terms_.emplace(m, c);
    return r;
}

std::optional<int> SuperFunction::standard_degree() const {
    std::optional<int> k;
    for (const auto& [m, c] : terms_) {
        int d = standard_degree(m);
        if (k && *k != d) return std::nullopt;
        k = d;
    }
    return k;
}

Polynomial SuperFunction::function_part() const {
    if (!bundle_) return Polynomial();
    auto it = terms_.find(Monomial(bundle_->rank(), 0));
    return it == terms_.end() ? Polynomial(bundle_->coordinates()) : it->second;
}

std::optional<Polynomial> SuperFunction::as_function() const {
    if (!bundle_) return Polynomial();
    for (const auto& [m, c] : terms_)
        if (homological_degree(m) != 0) return std::nullopt;
    return function_part();
}

SuperFunction& SuperFunction::operator+=(const SuperFunction& o) {
    bundle_ = merged(bundle_, o.bundle_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SuperFunction& SuperFunction::operator-=(const SuperFunction& o) { return *this += -o; }

SuperFunction SuperFunction::operator-() const {
    SuperFunction r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

int monomial_product_sign(const GradedBundle& b, const Monomial& m1, const Monomial& m2) {
    long long e = 0;
    for (std::size_t h = 0; h < m1.size(); ++h) {
        if (!m1[h]) continue;
        bool odd_h = b.degree(h) % 2 != 0;
        if (odd_h && m2[h]) return 0;
        if (!odd_h) continue;
        for (std::size_t g = 0; g < h; ++g)
            if (m2[g] && b.degree(g) % 2 != 0) e += static_cast<long long>(m1[h]) * m2[g];
    }
    return minus_one_pow(e);
}

SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
    const BundlePtr& bp = merged(a.bundle_, b.bundle_);
    if (!bp) return SuperFunction();
    SuperFunction r(bp);
    for (const auto& [m1, c1] : a.terms_)
        for (const auto& [m2, c2] : b.terms_) {
            int s = monomial_product_sign(*bp, m1, m2);
            if (!s) continue;
            Monomial m(m1.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
            r.add_term(m, Rational(s) * (c1 * c2));
        }
    return r;
}

SuperFunction operator*(const Polynomial& f, const SuperFunction& a) {
    SuperFunction r(a.bundle_);
    for (const auto& [m, c] : a.terms_) r.add_term(m, f * c);
    return r;
}

SuperFunction operator*(const Rational& q, const SuperFunction& a) {
    if (q == 0) return a.bundle_ ? SuperFunction(a.bundle_) : SuperFunction();
    SuperFunction r(a);
    for (auto& [m, c] : r.terms_) c *= q;
    return r;
}

bool SuperFunction::operator==(const SuperFunction& o) const {
    if (!bundle_ || !o.bundle_) return is_zero() && o.is_zero();
    return same_bundle(bundle_, o.bundle_) && terms_ == o.terms_;
}

std::vector<std::size_t> SuperFunction::factors(const Monomial& m) {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (unsigned e = 0; e < m[i]; ++e) f.push_back(i);
    return f;
}

std::string SuperFunction::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // lower homological degree first
    std::vector<const Terms::value_type*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
        return homological_degree(a->first) < homological_degree(b->first);
    });
    for (const auto* t : order) {
        const auto& [m, c] = *t;
        std::string word;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (!word.empty()) word += "*";
            word += bundle_->frame(i).dual;
            if (m[i] > 1) word += "^" + std::to_string(m[i]);
        }
        std::string term;
        if (word.empty()) {
            term = c.to_string();
            if (c.terms().size() > 1 && !first) term = "(" + term + ")";
        } else if (auto q = c.as_constant()) {
            if (*q == 1) term = word;
            else if (*q == -1) term = "-" + word;
            else term = q->get_str() + "*" + word;
        } else if (c.terms().size() == 1) {
            term = c.to_string() + "*" + word;
        } else {
            term = "(" + c.to_string() + ")*" + word;
        }
        if (first) os << term;
        else if (term[0] == '-') os << " - " << term.substr(1);
        else os << " + " << term;
        first = false;
    }
    return os.str();
}

Derivation::Derivation(BundlePtr b, int degree) : bundle_(std::move(b)), degree_(degree) {
    require_bundle(bundle_);
    coord_.assign(bundle_->coordinates().size(), SuperFunction(bundle_));
    gen_.assign(bundle_->rank(), SuperFunction(bundle_));
}

Derivation::Derivation(BundlePtr b, int degree, std::vector<SuperFunction> coord_images,
                       std::vector<SuperFunction> gen_images)
    : bundle_(std::move(b)), degree_(degree), coord_(std::move(coord_images)), gen_(std::move(gen_images)) {
    require_bundle(bundle_);
    if (coord_.size() != bundle_->coordinates().size() || gen_.size() != bundle_->rank())
        throw std::invalid_argument("derivation needs one image per coordinate and generator");
    for (auto& f : coord_)
        if (!f.bundle()) f = SuperFunction(bundle_);
    for (auto& f : gen_)
        if (!f.bundle()) f = SuperFunction(bundle_);
    check_images();
}

void Derivation::check_images() const {
    for (std::size_t i = 0; i < coord_.size(); ++i) {
        if (!same_bundle(coord_[i].bundle(), bundle_)) throw ContextError("derivation image over another bundle");
        auto k = coord_[i].standard_degree();
        if (!coord_[i].is_zero() && (!k || *k != degree_))
            throw std::invalid_argument("image of coordinate '" + bundle_->coordinates()[i] +
                                        "' does not have standard degree " + std::to_string(degree_));
    }
    for (std::size_t i = 0; i < gen_.size(); ++i) {
        if (!same_bundle(gen_[i].bundle(), bundle_)) throw ContextError("derivation image over another bundle");
        auto k = gen_[i].standard_degree();
        int want = -bundle_->degree(i) + degree_;
        if (!gen_[i].is_zero() && (!k || *k != want))
            throw std::invalid_argument("image of generator '" + bundle_->frame(i).dual +
                                        "' does not have standard degree " + std::to_string(want));
    }
}

void Derivation::set_coordinate_image(std::size_t i, SuperFunction f) {
    coord_.at(i) = f.bundle() ? std::move(f) : SuperFunction(bundle_);
    check_images();
}

void Derivation::set_generator_image(std::size_t i, SuperFunction f) {
    gen_.at(i) = f.bundle() ? std::move(f) : SuperFunction(bundle_);
    check_images();
}

Derivation Derivation::euler(BundlePtr b) {
    Derivation d(b, 0);
    for (std::size_t i = 0; i < b->rank(); ++i)
        d.gen_[i] = Rational(-b->degree(i)) * SuperFunction::generator(b, i);
    return d;
}

Derivation Derivation::hom_euler(BundlePtr b) {
    Derivation d(b, 0);
    for (std::size_t i = 0; i < b->rank(); ++i) d.gen_[i] = SuperFunction::generator(b, i);
    return d;
}

Derivation Derivation::interior(const Section& x) {
    if (!x.bundle()) throw std::invalid_argument("interior product of a section without bundle");
    if (!x.is_homogeneous()) throw std::invalid_argument("interior product needs a homogeneous section");
    int deg = x.degree_or(-1);
    Derivation d(x.bundle(), deg);
    for (std::size_t i = 0; i < x.bundle()->rank(); ++i) {
        if (x[i].is_zero()) continue;
        int j = -deg;
        d.gen_[i] = SuperFunction::function(x.bundle(), Rational(minus_one_pow(static_cast<long long>(j) * j)) * x[i]);
    }
    return d;
}

SuperFunction Derivation::operator()(const SuperFunction& f) const {
    if (!f.bundle()) return SuperFunction(bundle_);
    if (!same_bundle(f.bundle(), bundle_)) throw ContextError("derivation applied over another bundle");
    SuperFunction out(bundle_);
    const std::size_t rank = bundle_->rank();
    const std::size_t nc = bundle_->coordinates().size();
    for (const auto& [m, c] : f.terms()) {
        SuperFunction mono = SuperFunction::monomial(bundle_, m, Polynomial(bundle_->coordinates(), 1));
        for (std::size_t i = 0; i < nc; ++i) {
            if (coord_[i].is_zero()) continue;
            Polynomial dc = c.partial(i);
            if (dc.is_zero()) continue;
            out += dc * (coord_[i] * mono);
        }
        auto fac = SuperFunction::factors(m);
        int before = 0;
        for (std::size_t q = 0; q < fac.size(); ++q) {
            std::size_t g = fac[q];
            if (!gen_[g].is_zero()) {
                Monomial pre(rank, 0), post(rank, 0);
                for (std::size_t p = 0; p < q; ++p) ++pre[fac[p]];
                for (std::size_t p = q + 1; p < fac.size(); ++p) ++post[fac[p]];
                Polynomial one(bundle_->coordinates(), 1);
                SuperFunction term = SuperFunction::monomial(bundle_, pre, one) * gen_[g] *
                                     SuperFunction::monomial(bundle_, post, one);
                int sign = minus_one_pow(static_cast<long long>(degree_) * before);
                out += Rational(sign) * (c * term);
            }
            before += -bundle_->degree(g);
        }
    }
    return out;
}

Polynomial Derivation::on_function(const Polynomial& f) const {
    Polynomial r(bundle_->coordinates());
    for (std::size_t i = 0; i < coord_.size(); ++i) {
        Polynomial p = coord_[i].function_part();
        if (!p.is_zero()) r += f.partial(i) * p;
    }
    return r;
}

bool Derivation::is_zero() const {
    auto z = [](const SuperFunction& s) { return s.is_zero(); };
    return std::all_of(coord_.begin(), coord_.end(), z) && std::all_of(gen_.begin(), gen_.end(), z);
}

Derivation& Derivation::operator+=(const Derivation& o) {
    if (!o.bundle_ || o.is_zero()) return *this;
    if (!bundle_ || is_zero()) return *this = o;
    if (!same_bundle(bundle_, o.bundle_)) throw ContextError("derivations over different bundles");
    if (degree_ != o.degree_) throw std::invalid_argument("adding derivations of different degrees");
    for (std::size_t i = 0; i < coord_.size(); ++i) coord_[i] += o.coord_[i];
    for (std::size_t i = 0; i < gen_.size(); ++i) gen_[i] += o.gen_[i];
    return *this;
}

Derivation& Derivation::operator-=(const Derivation& o) { return *this += Rational(-1) * o; }

Derivation operator*(const Rational& q, Derivation a) {
    for (auto& f : a.coord_) f = q * f;
    for (auto& f : a.gen_) f = q * f;
    return a;
}

bool Derivation::operator==(const Derivation& o) const {
    if (is_zero() && o.is_zero()) return true;
    return same_bundle(bundle_, o.bundle_) && degree_ == o.degree_ && coord_ == o.coord_ && gen_ == o.gen_;
}

Derivation Derivation::hom_component(int s) const {
    Derivation d(bundle_, degree_);
    for (std::size_t i = 0; i < coord_.size(); ++i) d.coord_[i] = coord_[i].hom_component(s);
    for (std::size_t i = 0; i < gen_.size(); ++i) d.gen_[i] = gen_[i].hom_component(s + 1);
    return d;
}

std::vector<std::pair<int, Derivation>> Derivation::bidegree_decompose() const {
    int top = -1;
    for (const auto& f : coord_)
        for (const auto& [m, c] : f.terms()) top = std::max(top, SuperFunction::homological_degree(m));
    for (const auto& f : gen_)
        for (const auto& [m, c] : f.terms()) top = std::max(top, SuperFunction::homological_degree(m) - 1);
    std::vector<std::pair<int, Derivation>> out;
    for (int s = -1; s <= top; ++s) {
        Derivation d = hom_component(s);
        if (!d.is_zero()) out.emplace_back(s, std::move(d));
    }
    return out;
}

std::string Derivation::to_string(const std::string& name) const {
    std::ostringstream os;
    const auto& c = bundle_->coordinates();
    for (std::size_t i = 0; i < coord_.size(); ++i) os << name << " " << c[i] << " = " << coord_[i].to_string() << "\n";
    for (std::size_t i = 0; i < gen_.size(); ++i)
        os << name << " " << bundle_->frame(i).dual << " = " << gen_[i].to_string() << "\n";
    return os.str();
}

Derivation commutator(const Derivation& a, const Derivation& b) {
    if (!same_bundle(a.bundle(), b.bundle())) throw ContextError("commutator of derivations over different bundles");
    const auto& bp = a.bundle();
    int sign = minus_one_pow(static_cast<long long>(a.degree()) * b.degree());
    std::vector<SuperFunction> ci, gi;
    for (std::size_t i = 0; i < bp->coordinates().size(); ++i)
        ci.push_back(a(b.coordinate_images()[i]) - Rational(sign) * b(a.coordinate_images()[i]));
    for (std::size_t i = 0; i < bp->rank(); ++i)
        gi.push_back(a(b.generator_images()[i]) - Rational(sign) * b(a.generator_images()[i]));
    return Derivation(bp, a.degree() + b.degree(), std::move(ci), std::move(gi));
}

Section extract_section(const Derivation& d) {
    const auto& bp = d.bundle();
    for (const auto& f : d.coordinate_images())
        if (!f.is_zero()) throw std::invalid_argument("derivation does not vanish on base coordinates");
    Section x(bp);
    for (std::size_t i = 0; i < bp->rank(); ++i) {
        const auto& img = d.generator_images()[i];
        auto f = img.as_function();
        if (!f) throw std::invalid_argument("derivation is not of homological degree -1");
        if (f->is_zero()) continue;
        long long j = -bp->degree(i);
        x.set(i, Rational(minus_one_pow(j * j)) * *f);
    }
    return x;
}

int pairing_sign(const std::vector<int>& degrees) {
    long long e = 0;
    for (std::size_t m = 0; m < degrees.size(); ++m) {
        e += degrees[m];
        for (std::size_t l = 0; l < m; ++l) e += static_cast<long long>(degrees[l]) * degrees[m];
    }
    return minus_one_pow(e);
}

Polynomial evaluate_form(const SuperFunction& theta, const std::vector<Section>& xs) {
    SuperFunction t = theta;
    std::vector<int> degs;
    for (const auto& x : xs) {
        Derivation ix = Derivation::interior(x);
        degs.push_back(ix.degree());
        t = ix(t);
    }
    return Rational(pairing_sign(degs)) * t.function_part();
}

SuperFunction form_from_values(const BundlePtr& b, int r, int k,
                               const std::function<Polynomial(const std::vector<std::size_t>&)>& values) {
    SuperFunction out(b);
    for (const auto& beta : frame_multisets(*b, r, -k, true)) {
        Polynomial v = values(beta);
        if (v.is_zero()) continue;
        Monomial m(b->rank(), 0);
        std::vector<Section> xs;
        for (auto i : beta) {
            ++m[i];
            xs.push_back(Section::frame(b, i));
        }
        SuperFunction u = SuperFunction::monomial(b, m, Polynomial(b->coordinates(), 1));
        auto norm = evaluate_form(u, xs).as_constant();
        if (!norm || *norm == 0) throw std::logic_error("degenerate frame pairing");
        out += (Rational(1) / *norm) * (v * u);
    }
    return out;
}

CheckResult check_homological(const Derivation& q) {
    CheckResult res;
    res.name = "Q^2 = 0 on generators";
    const auto& bp = q.bundle();
    std::size_t nc = bp->coordinates().size(), ng = bp->rank();
    struct Item {
        std::string where;
        SuperFunction residual;
    };
    auto items = parallel_map<Item>(nc + ng, [&](std::size_t i) {
        if (i < nc) return Item{bp->coordinates()[i], q(q.coordinate_images()[i])};
        return Item{bp->frame(i - nc).dual, q(q.generator_images()[i - nc])};
    });
    for (auto& it : items) {
        ++res.cases;
        if (!it.residual.is_zero()) res.fail("Q^2 " + it.where, it.residual.to_string());
    }
    return res;
}

}  // namespace nqforge
