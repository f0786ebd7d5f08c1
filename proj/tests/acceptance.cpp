// Acceptance run: one PASS/FAIL line per criterion, every identity checked by exact equality.
// Exit status 0 only when all criteria pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "morphism_fixtures.hpp"
#include "nqforge/algebroid.hpp"
#include "nqforge/coalgebra.hpp"
#include "nqforge/derived.hpp"
#include "nqforge/signs.hpp"
#include "support.hpp"

using namespace nqforge;
using namespace nqforge::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::size_t cases = 0;
    std::string detail;                // first failure
    std::vector<std::string> notes;    // printed under the criterion line
    void check(bool ok, const std::string& where) {
        ++cases;
        if (!ok && pass) {
            pass = false;
            detail = where;
        }
    }
};

int failures = 0;

void run(int id, const std::string& title, double limit_ms, const std::function<void(Outcome&)>& body) {
    Outcome o;
    auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (limit_ms > 0 && ms > limit_ms) o.check(false, "time limit " + std::to_string(limit_ms) + " ms exceeded");
    std::printf("%s  %2d  %s  [%zu checks, %.1f ms]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.cases, ms);
    if (!o.pass) std::printf("          first failure: %s\n", o.detail.c_str());
    for (const auto& n : o.notes) std::printf("          %s\n", n.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::vector<Section> frame_sections(const BundlePtr& b, const std::vector<std::size_t>& ms) {
    std::vector<Section> xs;
    for (auto f : ms) xs.push_back(Section::frame(b, f));
    return xs;
}

VerifyOptions with_multiples() {
    VerifyOptions o;
    o.coordinate_multiples = true;
    return o;
}

}  // namespace

int main() {
    run(1, "CE differential squares to zero on F1, F4, F5", 0, [](Outcome& o) {
        for (const auto& [name, a] : std::vector<std::pair<std::string, AlgebraStructure>>{
                 {"F1", tangent_r2()}, {"F4", action_r1()}, {"F5", two_term_complex()}}) {
            auto t0 = Clock::now();
            auto r = check_homological(ce_differential(a));
            double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            o.check(r.pass, name + ": " + (r.witness ? r.witness->where + " -> " + r.witness->residual : ""));
            o.check(ms < 10000, name + " slower than 10 s");
        }
    });

    run(2, "extract(ce(A)) = A and ce(extract(Q)) = Q", 0, [](Outcome& o) {
        for (const auto& fx : all_fixtures()) {
            auto t0 = Clock::now();
            Derivation q = ce_differential(fx.algebra);
            o.check(extract_algebroid(q) == fx.algebra, fx.name + ": extract(ce(A))");
            o.check(ce_differential(extract_algebroid(q)) == q, fx.name + ": ce(extract(Q))");
            double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            o.check(ms < 10000, fx.name + " slower than 10 s");
        }
        // arbitrary degree 1 derivations, Q^2 = 0 not assumed
        std::mt19937 rng(2);
        auto b = GradedBundle::make(Side::E, 2, Coordinates({"x"}), {{"p", -1, "u"}, {"r", -2, "w"}});
        for (int rep = 0; rep < 8; ++rep) {
            Derivation q = random_derivation(rng, b, 1);
            o.check(ce_differential_anti(extract_antialgebroid(q)) == q, "random Q #" + std::to_string(rep));
        }
    });

    run(3, "derived brackets: l'_r = (-1)^r l''_r for r <= n + 1, rho'' = rho'", 30000, [](Outcome& o) {
        for (const auto& fx : all_fixtures()) {
            auto anti = to_antialgebroid(fx.algebra);
            auto b = anti.bundle();
            DerivedSetup s(ce_differential_anti(anti));
            for (int r = 1; r <= b->n() + 1; ++r)
                for (const auto& ms : frame_multisets(*b, r, std::nullopt, false)) {
                    auto xs = frame_sections(b, ms);
                    o.check(anti(xs) == Rational(minus_one_pow(r)) * derived_bracket(s, xs),
                            fx.name + " r=" + std::to_string(r) + " " + tuple_label(xs));
                }
            for (std::size_t f = 0; f < b->rank(); ++f)
                for (std::size_t i = 0; i < b->coordinates().size(); ++i) {
                    auto x = Section::frame(b, f);
                    auto xi = Polynomial::variable(b->coordinates(), i);
                    o.check(anti.apply_anchor(x, xi) == derived_anchor(s, x, xi), fx.name + " anchor of " + b->frame(f).name);
                }
        }
    });

    run(4, "L-infinity identities hold iff the codifferential squares to zero (words <= n + 2)", 30000, [](Outcome& o) {
        int passing = 0, failing = 0;
        for (const auto& set : {all_fixtures(), perturbed_fixtures()})
            for (const auto& fx : set) {
                auto anti = transfer_to_antialgebra(fx.algebra);
                int len = anti.bundle()->n() + 2;
                auto co = check_codifferential(anti, len, atom_basis(anti.bundle(), true));
                auto id = verify_antialgebra(anti, with_multiples());
                o.check(co.pass == id.pass, fx.name);
                (id.pass ? passing : failing)++;
            }
        o.check(passing == 7 && failing == 7, "expected 7 passing and 7 perturbed variants");
    });

    run(5, "verify_antialgebra(a) iff verify_algebra(transfer(a)), incl. a Lie algebra module", 10000, [](Outcome& o) {
        for (const auto& set : {all_fixtures(), perturbed_fixtures()})
            for (const auto& fx : set) {
                AntialgebraStructure a = transfer_to_antialgebra(fx.algebra);
                AlgebraStructure t = transfer_to_algebra(a);
                o.check(t == fx.algebra, fx.name + ": transfer round trip");
                o.check(verify_antialgebra(a, with_multiples()).pass == verify_algebra(t, with_multiples()).pass, fx.name);
            }
    });

    run(6, "rho' o l'_1 = 0 (n >= 2) and rho'(l'_2(X,Y)) = [rho'X, rho'Y] on polynomials of degree <= 2", 0,
        [](Outcome& o) {
            std::size_t l1_cases = 0;
            for (const auto& fx : all_fixtures()) {
                auto c = consequence_checks(fx.algebra);
                if (fx.algebra.bundle()->n() >= 2) {
                    o.check(c.children[0].pass, fx.name + ": " + (c.children[0].witness ? c.children[0].witness->where : ""));
                    l1_cases += c.children[0].cases;
                }
                o.check(c.children[1].pass, fx.name + ": " + (c.children[1].witness ? c.children[1].witness->where : ""));
            }
            o.check(l1_cases > 0, "no degree -2 frame was tested");
        });

    run(7, "de Rham reduction: shifted CE operator equals the Cartan formula term by term (F1, F4)", 0, [](Outcome& o) {
        for (const auto& [name, a] :
             std::vector<std::pair<std::string, AlgebraStructure>>{{"F1", tangent_r2()}, {"F4", action_r1()}}) {
            auto literal = de_rham_compare(a, 2, 1);
            auto negated = de_rham_compare(a, 2, -1);
            o.check(literal.against_shifted.pass, name + " against the shifted formula: " +
                                                      (literal.against_shifted.witness ? literal.against_shifted.witness->where : ""));
            o.check(literal.against_cartan.pass,
                    name + " " + (literal.against_cartan.witness ? literal.against_cartan.witness->where + ", residual " +
                                                                       literal.against_cartan.witness->residual
                                                                 : ""));
            o.notes.push_back(name + ": CE operator vs shifted formula " + (literal.against_shifted.pass ? "equal" : "differ") +
                              "; vs Cartan " + (literal.against_cartan.pass ? "equal" : "differ") + "; vs -Cartan " +
                              (negated.against_cartan.pass ? "equal" : "differ") + " (" +
                              std::to_string(negated.against_cartan.cases) + " terms)");
        }
    });

    run(8, "morphism theorem: equivariance iff anchor and bracket conditions (5 cases)", 60000, [](Outcome& o) {
        for (const auto& fx : theorem_fixtures()) {
            auto rep = check_morphism(fx.phi, fx.pair);
            o.check(rep.agree(), fx.name + ": equivariance " + (rep.equivariance.pass ? "pass" : "fail") + ", geometric " +
                                     (rep.geometric() ? "pass" : "fail"));
            o.check(rep.equivariance.pass == fx.is_morphism, fx.name + ": unexpected verdict");
        }
    });

    run(9, "over a point: bracket-condition residuals equal the L-infinity morphism residuals", 0, [](Outcome& o) {
        for (const auto& fx : {point_two_term(), point_two_term("2")}) {
            auto src = to_antialgebroid(fx.pair.source), tgt = to_antialgebroid(fx.pair.target);
            auto sb = fx.pair.source.bundle();
            bool nonzero = false;
            for (int t = 1; t <= sb->n() + 1; ++t)
                for (const auto& ms : frame_multisets(*sb, t)) {
                    auto ys = frame_sections(sb, ms);
                    auto xs = frame_sections(fx.phi.source(), ms);
                    std::vector<int> x;
                    for (auto g : ms) x.push_back(fx.phi.source()->degree(g));
                    Section direct = linfty_morphism_residual(fx.phi, fx.pair.source, fx.pair.target, ys);
                    Section via = Rational(signs::transfer_sign(x)) *
                                  bracket_residual(fx.phi, src, tgt, xs).rebased(fx.pair.target.bundle());
                    o.check(direct == via, fx.name + " " + tuple_label(ys));
                    nonzero = nonzero || !direct.is_zero();
                }
            o.check(nonzero == !fx.is_morphism, fx.name + ": residuals should vanish exactly for the morphism");
        }
    });

    run(10, "coassociativity, coderivation and cohomomorphism laws on words of length <= 4", 10000, [](Outcome& o) {
        const std::vector<Atom> basis = {Atom{0, {}, 0}, Atom{1, {}, -1}, Atom{2, {}, -2}};
        std::mt19937 rng(10);
        std::vector<MultilinearMap> dco, pco;
        for (int k = 1; k <= 4; ++k) {
            dco.push_back(random_symmetric_map(rng, k, 1, basis));
            pco.push_back(random_symmetric_map(rng, k, 0, basis));
        }
        Coderivation d(dco, 1);
        Cohomomorphism phi(pco);
        auto dw = [&](const Word& w) { return d.on_word(w); };
        auto pw = [&](const Word& w) { return phi.on_word(w); };
        for (int len = 1; len <= 4; ++len)
            for (const auto& w : all_words(basis, len)) {
                TensorWord tw = TensorWord::single(w);
                std::string where = tw.to_string();
                TensorProduct dl = coproduct(tw);
                o.check(coproduct_on_factor(dl, 0) == coproduct_on_factor(dl, 1), "coassociativity on " + where);
                TensorProduct rhs = apply_on_factor(dl, 0, 1, dw);
                rhs += apply_on_factor(dl, 1, 1, dw);
                o.check(delta_then(dw, tw) == rhs, "coderivation law on " + where);
                o.check(delta_then(pw, tw) == apply_on_factor(apply_on_factor(dl, 0, 0, pw), 1, 0, pw),
                        "cohomomorphism law on " + where);
            }
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
