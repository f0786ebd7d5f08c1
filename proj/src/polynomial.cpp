#include "nqforge/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nqforge/expr.hpp"

namespace nqforge {

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da < db;
    return a < b;
}

Coordinates::Coordinates() : names_(std::make_shared<const std::vector<std::string>>()) {}

Coordinates::Coordinates(std::vector<std::string> names) {
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (names[i] == names[j]) throw ContextError("duplicate coordinate name '" + names[i] + "'");
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> Coordinates::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
        if ((*names_)[i] == name) return i;
    return std::nullopt;
}

Polynomial::Polynomial(Coordinates c, const Rational& q) : coords_(std::move(c)) {
    add_term(Exponents(coords_.size(), 0), q);
}

Polynomial Polynomial::variable(Coordinates c, std::size_t i) {
    if (i >= c.size()) throw ContextError("coordinate index out of range");
    Exponents e(c.size(), 0);
    e[i] = 1;
    return monomial(std::move(c), std::move(e));
}

Polynomial Polynomial::variable(Coordinates c, std::string_view name) {
    auto i = c.index_of(name);
    if (!i) throw ContextError("unknown coordinate '" + std::string(name) + "'");
    return variable(std::move(c), *i);
}

Polynomial Polynomial::monomial(Coordinates c, Exponents e, const Rational& q) {
    if (e.size() != c.size()) throw ContextError("exponent length does not match coordinates");
    Polynomial p(std::move(c));
    p.add_term(e, q);
    return p;
}

std::optional<Rational> Polynomial::as_constant() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1) {
        const auto& [e, q] = *terms_.begin();
        if (std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; })) return q;
    }
    return std::nullopt;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.rbegin()->first;
    return static_cast<int>(std::accumulate(e.begin(), e.end(), 0u));
}

Polynomial Polynomial::in(const Coordinates& c) const {
    if (coords_ == c) return *this;
    if (!coords_.empty()) throw ContextError("coordinate context mismatch");
    Polynomial p(c);
    for (const auto& [e, q] : terms_) p.terms_.emplace(Exponents(c.size(), 0), q);
    return p;
}

Coordinates common_context(const Polynomial& a, const Polynomial& b) {
    if (a.coords_ == b.coords_) return a.coords_;
    if (a.coords_.empty() && !a.as_constant()) throw ContextError("coordinate context mismatch");
    if (b.coords_.empty() && !b.as_constant()) throw ContextError("coordinate context mismatch");
    if (a.coords_.empty()) return b.coords_;
    if (b.coords_.empty()) return a.coords_;
    throw ContextError("coordinate context mismatch");
}

void Polynomial::add_term(const Exponents& e, const Rational& q0) {
    if (q0 == 0) return;
    if (e.size() != coords_.size()) throw ContextError("exponent length does not match coordinates");
    Rational q(q0);
    q.canonicalize();
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, q);
    } else {
        it->second += q;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial p(*this);
    for (auto& [e, q] : p.terms_) q = -q;
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    Coordinates c = common_context(*this, o);
    if (coords_ != c) *this = in(c);
    if (o.coords_ != c) {
        Polynomial oo = o.in(c);
        for (const auto& [e, q] : oo.terms_) add_term(e, q);
    } else {
        for (const auto& [e, q] : o.terms_) add_term(e, q);
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Rational& q) {
    if (q == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= q;
    return *this;
}

Polynomial operator*(const Polynomial& a0, const Polynomial& b0) {
    Coordinates c = common_context(a0, b0);
    Polynomial a = a0.in(c), b = b0.in(c);
    Polynomial r(c);
    Exponents e(c.size());
    for (const auto& [ea, qa] : a.terms_)
        for (const auto& [eb, qb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, qa * qb);
        }
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

bool Polynomial::operator==(const Polynomial& o) const {
    if (coords_ == o.coords_) return terms_ == o.terms_;
    Coordinates c;
    try {
        c = common_context(*this, o);
    } catch (const ContextError&) {
        return false;
    }
    return in(c).terms_ == o.in(c).terms_;
}

Polynomial Polynomial::partial(std::size_t i) const {
    if (i >= coords_.size()) throw ContextError("coordinate index out of range");
    Polynomial r(coords_);
    for (const auto& [e, q] : terms_) {
        if (e[i] == 0) continue;
        Exponents f = e;
        --f[i];
        r.add_term(f, q * e[i]);
    }
    return r;
}

Polynomial Polynomial::partial(std::string_view name) const {
    auto i = coords_.index_of(name);
    if (!i) throw ContextError("unknown coordinate '" + std::string(name) + "'");
    return partial(*i);
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images, const Coordinates& target) const {
    if (images.size() != coords_.size()) throw ContextError("substitution needs one image per coordinate");
    Polynomial r(target);
    // cache powers per coordinate
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
        auto& v = powers[i];
        if (v.empty()) v.push_back(Polynomial(target, 1));
        while (v.size() <= k) v.push_back(v.back() * images[i].in(target));
        return v[k];
    };
    for (const auto& [e, q] : terms_) {
        Polynomial t(target, q);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) t = t * power(i, e[i]);
        r += t;
    }
    return r;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, q] = *it;
        Rational a = abs(q);
        if (first) {
            if (q < 0) os << "-";
        } else {
            os << (q < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
        bool wrote = false;
        if (unit || a != 1) {
            os << a.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (wrote) os << "*";
            os << coords_[i];
            if (e[i] > 1) os << "^" << e[i];
            wrote = true;
        }
    }
    return os.str();
}

Polynomial Polynomial::parse(Coordinates c, std::string_view text) {
    ExprOps<Polynomial> ops;
    ops.constant = [&](const Rational& q) { return Polynomial(c, q); };
    ops.identifier = [&](std::string_view name, std::size_t col) {
        auto i = c.index_of(name);
        if (!i) throw ParseError("unknown coordinate '" + std::string(name) + "'", col);
        return Polynomial::variable(c, *i);
    };
    ops.as_constant = [](const Polynomial& p) { return p.as_constant(); };
    ops.scale = [](const Polynomial& p, const Rational& q) { return p * q; };
    return ExprParser<Polynomial>(text, ops).parse();
}

BaseMap::BaseMap(Coordinates source, Coordinates target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)) {
    if (images.size() != target_.size()) throw ContextError("base map needs one image per target coordinate");
    for (auto& p : images) images_.push_back(p.in(source_));
}

BaseMap BaseMap::identity(const Coordinates& c) {
    std::vector<Polynomial> im;
    for (std::size_t i = 0; i < c.size(); ++i) im.push_back(Polynomial::variable(c, i));
    return BaseMap(c, c, std::move(im));
}

bool BaseMap::is_identity() const {
    if (source_ != target_) return false;
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != Polynomial::variable(source_, i)) return false;
    return true;
}

Polynomial BaseMap::pullback(const Polynomial& g) const {
    Polynomial gg = g.in(target_);
    return gg.substitute(images_, source_);
}

std::vector<std::vector<Polynomial>> BaseMap::jacobian() const {
    std::vector<std::vector<Polynomial>> J;
    for (const auto& p : images_) {
        std::vector<Polynomial> row;
        for (std::size_t j = 0; j < source_.size(); ++j) row.push_back(p.partial(j));
        J.push_back(std::move(row));
    }
    return J;
}

BaseMap BaseMap::after(const BaseMap& inner) const {
    if (inner.target_ != source_) throw ContextError("base maps do not compose");
    std::vector<Polynomial> im;
    for (const auto& p : images_) im.push_back(inner.pullback(p));
    return BaseMap(inner.source_, target_, std::move(im));
}

}  // namespace nqforge
