#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nqforge/graded.hpp"
#include "nqforge/report.hpp"

namespace nqforge {

// Exponent of each dual generator; odd generators carry 0 or 1.
using Monomial = std::vector<unsigned>;

// Element of A = Γ(⊙E*) over an E-side bundle. The generator dual to frame i
// has standard degree -deg(frame i).
class SuperFunction {
public:
    using Terms = std::map<Monomial, Polynomial>;

    SuperFunction() = default;
    explicit SuperFunction(BundlePtr b);
    static SuperFunction function(BundlePtr b, const Polynomial& f);
    static SuperFunction generator(BundlePtr b, std::size_t i);
    static SuperFunction coordinate(BundlePtr b, std::size_t i);
    static SuperFunction monomial(BundlePtr b, const Monomial& m, const Polynomial& coeff);
    static SuperFunction parse(BundlePtr b, std::string_view text);

    const BundlePtr& bundle() const { return bundle_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Monomial& m, const Polynomial& c);

    int generator_degree(std::size_t i) const { return -bundle_->degree(i); }
    int standard_degree(const Monomial& m) const;
    static int homological_degree(const Monomial& m);
    // the part with standard degree k and/or homological degree s
    SuperFunction hom_component(int s) const;
    SuperFunction std_component(int k) const;
    // single standard degree if homogeneous (zero gives nullopt)
    std::optional<int> standard_degree() const;
    // coefficient of the empty monomial
    Polynomial function_part() const;
    std::optional<Polynomial> as_function() const;

    SuperFunction& operator+=(const SuperFunction& o);
    SuperFunction& operator-=(const SuperFunction& o);
    SuperFunction operator-() const;
    friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
    friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
    friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b);
    friend SuperFunction operator*(const Polynomial& f, const SuperFunction& a);
    friend SuperFunction operator*(const Rational& q, const SuperFunction& a);
    bool operator==(const SuperFunction& o) const;
    bool operator!=(const SuperFunction& o) const { return !(*this == o); }

    std::string to_string() const;

    // generator indices of a monomial in normal order, with repetition
    static std::vector<std::size_t> factors(const Monomial& m);

private:
    BundlePtr bundle_;
    Terms terms_;
};

// sign of m1 * m2 relative to the merged normal-ordered monomial; 0 if it vanishes
int monomial_product_sign(const GradedBundle& b, const Monomial& m1, const Monomial& m2);

// Graded derivation of A stored by its images on coordinates and generators.
class Derivation {
public:
    Derivation() = default;
    Derivation(BundlePtr b, int degree);
    Derivation(BundlePtr b, int degree, std::vector<SuperFunction> coord_images, std::vector<SuperFunction> gen_images);

    static Derivation euler(BundlePtr b);      // standard degree counter
    static Derivation hom_euler(BundlePtr b);  // homological degree counter
    static Derivation interior(const Section& x);

    const BundlePtr& bundle() const { return bundle_; }
    int degree() const { return degree_; }
    const std::vector<SuperFunction>& coordinate_images() const { return coord_; }
    const std::vector<SuperFunction>& generator_images() const { return gen_; }
    void set_coordinate_image(std::size_t i, SuperFunction f);
    void set_generator_image(std::size_t i, SuperFunction f);

    SuperFunction operator()(const SuperFunction& f) const;
    Polynomial on_function(const Polynomial& f) const;  // function part of the image of f

    bool is_zero() const;
    Derivation& operator+=(const Derivation& o);
    Derivation& operator-=(const Derivation& o);
    friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
    friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
    friend Derivation operator*(const Rational& q, Derivation a);
    bool operator==(const Derivation& o) const;
    bool operator!=(const Derivation& o) const { return !(*this == o); }

    // component raising the homological degree by s
    Derivation hom_component(int s) const;
    std::vector<std::pair<int, Derivation>> bidegree_decompose() const;

    std::string to_string(const std::string& name = "D") const;

private:
    BundlePtr bundle_;
    int degree_ = 0;
    std::vector<SuperFunction> coord_, gen_;

    void check_images() const;
};

Derivation commutator(const Derivation& a, const Derivation& b);

// X with i_X = d, for d of homological degree -1
Section extract_section(const Derivation& d);

// Pairing of a form with homogeneous sections:
// θ(X1..Xr) = (-1)^{Σ x_m + Σ_{l<m} x_l x_m} i_{Xr} ... i_{X1} θ, read off in homological degree 0.
Polynomial evaluate_form(const SuperFunction& theta, const std::vector<Section>& xs);
// Sign in the pairing above
int pairing_sign(const std::vector<int>& degrees);

// The unique element of ʳA with prescribed values on sorted frame multisets of size r
// and standard degree k (values on other multisets are ignored).
SuperFunction form_from_values(const BundlePtr& b, int r, int k,
                               const std::function<Polynomial(const std::vector<std::size_t>&)>& values);

CheckResult check_homological(const Derivation& q);

}  // namespace nqforge
