#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace nqforge {

using Rational = mpq_class;
using Exponents = std::vector<unsigned>;

class ContextError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// total degree first, then lexicographic
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

// Ordered list of base coordinate names, shared between polynomials.
class Coordinates {
public:
    Coordinates();
    explicit Coordinates(std::vector<std::string> names);

    std::size_t size() const { return names_->size(); }
    bool empty() const { return names_->empty(); }
    const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const { return *names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const Coordinates& o) const { return names_ == o.names_ || *names_ == *o.names_; }
    bool operator!=(const Coordinates& o) const { return !(*this == o); }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

class Polynomial {
public:
    using Terms = std::map<Exponents, Rational, GrlexLess>;

    Polynomial() = default;  // zero with no coordinates
    explicit Polynomial(Coordinates c) : coords_(std::move(c)) {}
    Polynomial(Coordinates c, const Rational& q);

    static Polynomial constant(Coordinates c, const Rational& q) { return Polynomial(std::move(c), q); }
    static Polynomial variable(Coordinates c, std::size_t i);
    static Polynomial variable(Coordinates c, std::string_view name);
    static Polynomial monomial(Coordinates c, Exponents e, const Rational& q = 1);
    static Polynomial parse(Coordinates c, std::string_view text);

    const Coordinates& coordinates() const { return coords_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::optional<Rational> as_constant() const;
    int total_degree() const;  // -1 for zero

    // rebinds a context-free constant into c; identity when already in c
    Polynomial in(const Coordinates& c) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& q);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& q) { return a *= q; }
    friend Polynomial operator*(const Rational& q, Polynomial a) { return a *= q; }

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial partial(std::size_t i) const;
    Polynomial partial(std::string_view name) const;

    // replace coordinate i by images[i]; images share a common context
    Polynomial substitute(const std::vector<Polynomial>& images, const Coordinates& target) const;

    std::string to_string() const;

    void add_term(const Exponents& e, const Rational& q);

private:
    Coordinates coords_;
    Terms terms_;

    friend Coordinates common_context(const Polynomial& a, const Polynomial& b);
};

Coordinates common_context(const Polynomial& a, const Polynomial& b);

// Polynomial map M -> N given by images of the target coordinates.
class BaseMap {
public:
    BaseMap(Coordinates source, Coordinates target, std::vector<Polynomial> images);
    static BaseMap identity(const Coordinates& c);

    const Coordinates& source() const { return source_; }
    const Coordinates& target() const { return target_; }
    const std::vector<Polynomial>& images() const { return images_; }
    bool is_identity() const;

    Polynomial pullback(const Polynomial& g) const;
    // entry (i, j) = d(image i)/d(source j)
    std::vector<std::vector<Polynomial>> jacobian() const;
    // (*this) after inner: first inner then this
    BaseMap after(const BaseMap& inner) const;

private:
    Coordinates source_, target_;
    std::vector<Polynomial> images_;
};

}  // namespace nqforge
