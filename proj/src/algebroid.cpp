#include "nqforge/algebroid.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>

#include "nqforge/parallel.hpp"
#include "nqforge/signs.hpp"

namespace nqforge {

namespace {

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<int> degrees_of(const std::vector<Section>& xs) {
    std::vector<int> d;
    for (const auto& x : xs) d.push_back(x.degree_or(0));
    return d;
}

Permutation identity_perm(int r) {
    Permutation p(r);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// Sh(p, q) with the empty second block allowed
std::vector<Permutation> shuffles2(int p, int q) {
    if (q == 0) return {identity_perm(p)};
    if (p == 0) return {identity_perm(q)};
    return shuffles({p, q});
}

std::vector<Polynomial> low_degree_polynomials(const Coordinates& c, int max_degree) {
    std::vector<Polynomial> out;
    Exponents e(c.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == c.size()) {
            out.push_back(Polynomial::monomial(c, e));
            return;
        }
        for (int d = 0; d <= left; ++d) {
            e[i] = d;
            self(self, i + 1, left - d);
        }
        e[i] = 0;
    };
    rec(rec, 0, max_degree);
    return out;
}

}  // namespace

void validate_algebroid(const BracketStructure& a) {
    const auto& b = *a.bundle();
    for (std::size_t f = 0; f < b.rank(); ++f)
        if (!a.anchor(f).empty() && b.degree(f) != b.anchor_degree())
            throw std::invalid_argument("anchor on frame " + b.frame(f).name + " outside the top degree");
    if (b.n() == 1)
        for (const auto& [t, v] : a.table())
            if (t.size() == 1) throw std::invalid_argument("a Lie 1-algebroid carries no l1");
}

LieNAntialgebroid to_antialgebroid(const LieNAlgebroid& a) { return transfer_to_antialgebra(a); }
LieNAlgebroid to_algebroid(const LieNAntialgebroid& a) { return transfer_to_algebra(a); }

Derivation ce_differential_anti(const LieNAntialgebroid& a) {
    validate_algebroid(a);
    const BundlePtr& b = a.bundle();
    const Coordinates& c = b->coordinates();
    Derivation q(b, 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
        SuperFunction img(b);
        for (auto f : b->frames_of_degree(-1))
            if (!a.anchor(f).empty()) img += Rational(signs::ce_function_sign()) * a.anchor(f)[i] * SuperFunction::generator(b, f);
        q.set_coordinate_image(i, img);
    }
    for (std::size_t alpha = 0; alpha < b->rank(); ++alpha) {
        int k = -b->degree(alpha);
        Rational sign = signs::ce_bracket_sign(k);
        SuperFunction img(b);
        for (int r = 1; r <= k + 1; ++r)
            img += form_from_values(b, r, k + 1, [&](const std::vector<std::size_t>& beta) {
                return sign * a.on_frames(beta)[alpha];
            });
        q.set_generator_image(alpha, img);
    }
    return q;
}

Derivation ce_differential(const LieNAlgebroid& a) {
    validate_algebroid(a);
    return ce_differential_anti(to_antialgebroid(a));
}

LieNAntialgebroid extract_antialgebroid(const Derivation& q) {
    if (q.degree() != 1) throw std::invalid_argument("Q must have standard degree 1");
    const BundlePtr& b = q.bundle();
    if (b->side() != Side::E) throw std::invalid_argument("Q must act on functions of an E-side bundle");
    const Coordinates& c = b->coordinates();
    LieNAntialgebroid out(b);
    for (auto f : b->frames_of_degree(-1)) {
        std::vector<Polynomial> field;
        for (std::size_t i = 0; i < c.size(); ++i)
            field.push_back(Rational(signs::ce_function_sign()) * evaluate_form(q.coordinate_images()[i], {Section::frame(b, f)}));
        out.set_anchor(f, field);
    }
    for (int r = 1; r <= b->n() + 1; ++r)
        for (const auto& beta : frame_multisets(*b, r)) {
            int d = 0;
            std::vector<Section> xs;
            for (auto f : beta) {
                d += b->degree(f);
                xs.push_back(Section::frame(b, f));
            }
            int k = -d - 1;
            if (k < 1 || k > b->n()) continue;
            Section value(b);
            for (auto alpha : b->frames_of_degree(-k))
                value.set(alpha, Rational(signs::ce_bracket_sign(k)) * evaluate_form(q.generator_images()[alpha], xs));
            out.set_bracket(beta, value);
        }
    return out;
}

LieNAlgebroid extract_algebroid(const Derivation& q) { return to_algebroid(extract_antialgebroid(q)); }

Polynomial ce_formula_value(const LieNAntialgebroid& a, const SuperFunction& omega, const std::vector<Section>& xs) {
    const BundlePtr& b = a.bundle();
    Polynomial total(b->coordinates());
    int r = static_cast<int>(xs.size());
    std::vector<int> x = degrees_of(xs);
    // split ω by (standard degree, homological degree)
    std::map<std::pair<int, int>, SuperFunction> parts;
    for (const auto& [m, coeff] : omega.terms()) {
        auto key = std::make_pair(omega.standard_degree(m), SuperFunction::homological_degree(m));
        auto it = parts.try_emplace(key, b).first;
        it->second.add_term(m, coeff);
    }
    for (const auto& [key, w] : parts) {
        auto [k, s] = key;
        int t = r - s + 1;
        if (s >= 1 && t >= 1) {
            for (const auto& sigma : shuffles2(t, s - 1)) {
                std::vector<Section> inner;
                for (int m = 0; m < t; ++m) inner.push_back(xs[sigma[m]]);
                Section l = a(inner);
                if (l.is_zero()) continue;
                std::vector<Section> args{l};
                for (int m = t; m < r; ++m) args.push_back(xs[sigma[m]]);
                Rational sg = signs::ce_bracket_sign(k) * koszul_sign(sigma, x);
                total += sg * evaluate_form(w, args);
            }
        }
        if (r == s + 1) {
            for (int i = 0; i < r; ++i) {
                std::vector<Section> rest;
                for (int m = 0; m < r; ++m)
                    if (m != i) rest.push_back(xs[m]);
                Polynomial inner = s == 0 ? w.function_part() : evaluate_form(w, rest);
                total -= Rational(signs::ce_anchor_slot(k, x, i)) * a.apply_anchor(xs[i], inner);
            }
        }
    }
    return total;
}

AlgebroidReport verify_algebroid(const LieNAlgebroid& a, int r_max) {
    validate_algebroid(a);
    AlgebroidReport rep;
    auto t0 = std::chrono::steady_clock::now();
    rep.homological = check_homological(ce_differential(a));
    rep.homological.name = "Q^2 = 0 on generators";
    rep.homological.millis = since(t0);

    VerifyOptions opt;
    opt.r_max = r_max;
    rep.identities = verify_algebra(a, opt);
    rep.identities.name = "L-infinity identities on frames";

    t0 = std::chrono::steady_clock::now();
    rep.defects.name = "linearity defects of the identities";
    const BundlePtr& b = a.bundle();
    const Coordinates& c = b->coordinates();
    int rm = r_max > 0 ? r_max : b->n() + 2;
    struct Probe {
        std::vector<Section> xs;
        int slot;
        std::size_t coord;
    };
    std::vector<Probe> probes;
    for (int r = 1; r <= rm; ++r)
        for (const auto& ms : frame_multisets(*b, r, std::nullopt, false)) {
            std::vector<Section> xs;
            for (auto f : ms) xs.push_back(Section::frame(b, f));
            for (int j = 0; j < r; ++j) {
                if (j > 0 && ms[j] == ms[j - 1]) continue;
                for (std::size_t i = 0; i < c.size(); ++i) probes.push_back({xs, j, i});
            }
        }
    auto residuals = parallel_map<Section>(probes.size(), [&](std::size_t p) {
        const auto& pr = probes[p];
        Polynomial f = Polynomial::variable(c, pr.coord);
        auto ys = pr.xs;
        ys[pr.slot] = f * ys[pr.slot];
        return jacobiator(a, ys) - f * jacobiator(a, pr.xs);
    });
    for (std::size_t p = 0; p < probes.size(); ++p) {
        ++rep.defects.cases;
        if (!residuals[p].is_zero())
            rep.defects.fail("slot " + std::to_string(probes[p].slot + 1) + " times " + c[probes[p].coord] + " in " +
                                 tuple_label(probes[p].xs),
                             residuals[p].to_string());
    }
    rep.defects.millis = since(t0);
    return rep;
}

CheckResult consequence_checks(const LieNAlgebroid& a) {
    validate_algebroid(a);
    auto t0 = std::chrono::steady_clock::now();
    LieNAntialgebroid anti = to_antialgebroid(a);
    const BundlePtr& b = anti.bundle();
    const Coordinates& c = b->coordinates();
    CheckResult res;
    res.name = "anchor and derived-bracket consequences";

    CheckResult l1;
    l1.name = "rho' o l'_1 = 0 on degree -2";
    for (auto f : b->frames_of_degree(-2)) {
        Section y = anti({Section::frame(b, f)});
        for (std::size_t i = 0; i < c.size(); ++i) {
            ++l1.cases;
            Polynomial v = anti.apply_anchor(y, Polynomial::variable(c, i));
            if (!v.is_zero()) l1.fail(b->frame(f).name + " on " + c[i], v.to_string());
        }
    }

    CheckResult rep;
    rep.name = "rho'(l'_2(X,Y)) = [rho'X, rho'Y]";
    auto polys = low_degree_polynomials(c, 2);
    auto odd = b->frames_of_degree(-1);
    for (auto p : odd)
        for (auto q : odd) {
            Section X = Section::frame(b, p), Y = Section::frame(b, q);
            Section l = anti({X, Y});
            for (const auto& g : polys) {
                ++rep.cases;
                Polynomial lhs = anti.apply_anchor(l, g);
                Polynomial rhs = anti.apply_anchor(X, anti.apply_anchor(Y, g)) - anti.apply_anchor(Y, anti.apply_anchor(X, g));
                if (lhs != rhs) rep.fail("(" + b->frame(p).name + ", " + b->frame(q).name + ") on " + g.to_string(), (lhs - rhs).to_string());
            }
        }

    CheckResult der;
    der.name = "l'_r = (-1)^r l''_r and rho'' = rho'";
    AntialgebraStructure dd = derived_structure(DerivedSetup(ce_differential_anti(anti)));
    for (int r = 1; r <= b->n() + 1; ++r)
        for (const auto& beta : frame_multisets(*b, r)) {
            ++der.cases;
            Section diff = anti.on_frames(beta) - Rational(minus_one_pow(r)) * dd.on_frames(beta);
            if (!diff.is_zero()) {
                std::vector<Section> xs;
                for (auto f : beta) xs.push_back(Section::frame(b, f));
                der.fail("r=" + std::to_string(r) + " " + tuple_label(xs), diff.to_string());
            }
        }
    for (auto f : odd) {
        ++der.cases;
        if (anti.anchor(f) != dd.anchor(f)) der.fail("anchor of " + b->frame(f).name, "derived anchor differs");
    }

    for (auto* ch : {&l1, &rep, &der}) {
        res.absorb(*ch);
        res.children.push_back(*ch);
    }
    res.millis = since(t0);
    return res;
}

DeRhamReport de_rham_compare(const LieNAlgebroid& a, int max_form_degree, int global_sign) {
    if (a.bundle()->n() != 1) throw std::invalid_argument("the de Rham comparison needs n = 1");
    validate_algebroid(a);
    auto t0 = std::chrono::steady_clock::now();
    DeRhamReport rep;
    rep.global_sign = global_sign;
    rep.against_shifted.name = "CE operator vs shifted formula";
    rep.against_cartan.name = "CE operator vs Cartan formula";
    LieNAntialgebroid anti = to_antialgebroid(a);
    const BundlePtr& eb = anti.bundle();
    const BundlePtr& sb = a.bundle();
    const Coordinates& c = eb->coordinates();

    Derivation q = ce_differential_anti(anti);
    std::vector<SuperFunction> zero(c.size(), SuperFunction(eb));
    Derivation qb(eb, 1, zero, q.generator_images());  // bracket part
    Derivation qr = q - qb;                             // anchor part

    // η̃ on sE sections
    auto tilde = [&](const SuperFunction& eta, const std::vector<Section>& ys) {
        std::vector<Section> xs;
        std::vector<int> d;
        for (const auto& y : ys) {
            xs.push_back(y.rebased(eb));
            d.push_back(y.degree_or(0) - 1);
        }
        if (xs.empty()) return eta.function_part();
        return Rational(suspension_tuple_sign(d)) * evaluate_form(eta, xs);
    };
    auto polys = low_degree_polynomials(c, 1);

    for (int k = 0; k <= max_form_degree; ++k) {
        for (const auto& beta : frame_multisets(*eb, k)) {
            Monomial m(eb->rank(), 0);
            for (auto f : beta) m[f] = 1;
            for (const auto& coeff : polys) {
                SuperFunction eta = SuperFunction::monomial(eb, m, coeff);
                if (k == 0) eta = SuperFunction::function(eb, coeff);
                SuperFunction qre = qr(eta), qbe = qb(eta);
                for (const auto& gamma : frame_multisets(*eb, k + 1)) {
                    std::vector<Section> xs, ys;
                    std::vector<int> xd;
                    for (auto f : gamma) {
                        xs.push_back(Section::frame(eb, f));
                        ys.push_back(Section::frame(sb, f));
                        xd.push_back(eb->degree(f));
                    }
                    Rational sg = suspension_tuple_sign(xd);
                    Polynomial qt_rho = sg * evaluate_form(qre, xs), qt_l = sg * evaluate_form(qbe, xs);
                    std::vector<int> yd = degrees_of(ys);
                    int r = k + 1;

                    Polynomial s_rho(c), s_l(c), c_rho(c), c_l(c);
                    for (const auto& sigma : shuffles2(1, k)) {
                        std::vector<Section> rest;
                        for (int j = 1; j < r; ++j) rest.push_back(ys[sigma[j]]);
                        s_rho -= Rational(chi_sign(sigma, yd)) * a.apply_anchor(ys[sigma[0]], tilde(eta, rest));
                    }
                    if (k >= 1)
                        for (const auto& sigma : shuffles2(2, k - 1)) {
                            Section l = a({ys[sigma[0]], ys[sigma[1]]});
                            if (l.is_zero()) continue;
                            std::vector<Section> args{l};
                            for (int j = 2; j < r; ++j) args.push_back(ys[sigma[j]]);
                            s_l += Rational(signs::shifted_ce_sign(r, k) * chi_sign(sigma, yd)) * tilde(eta, args);
                        }
                    for (int i = 0; i < r; ++i) {
                        std::vector<Section> rest;
                        for (int j = 0; j < r; ++j)
                            if (j != i) rest.push_back(ys[j]);
                        c_rho += Rational(minus_one_pow(i)) * a.apply_anchor(ys[i], tilde(eta, rest));
                        for (int j = i + 1; j < r; ++j) {
                            Section l = a({ys[i], ys[j]});
                            if (l.is_zero()) continue;
                            std::vector<Section> args{l};
                            for (int m2 = 0; m2 < r; ++m2)
                                if (m2 != i && m2 != j) args.push_back(ys[m2]);
                            c_l += Rational(minus_one_pow(i + j)) * tilde(eta, args);
                        }
                    }
                    std::string where = "eta = " + eta.to_string() + " on " + tuple_label(ys);
                    rep.against_shifted.cases += 2;
                    if (qt_rho != s_rho) rep.against_shifted.fail(where + " (anchor part)", (qt_rho - s_rho).to_string());
                    if (qt_l != s_l) rep.against_shifted.fail(where + " (bracket part)", (qt_l - s_l).to_string());
                    rep.against_cartan.cases += 2;
                    Rational g = rep.global_sign;
                    if (qt_rho != g * c_rho) rep.against_cartan.fail(where + " (anchor part)", (qt_rho - g * c_rho).to_string());
                    if (qt_l != g * c_l) rep.against_cartan.fail(where + " (bracket part)", (qt_l - g * c_l).to_string());
                }
            }
        }
    }
    rep.against_shifted.millis = rep.against_cartan.millis = since(t0);
    return rep;
}

}  // namespace nqforge
