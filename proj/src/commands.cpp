#include "nqforge/commands.hpp"

#include <chrono>
#include <random>

namespace nqforge {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

const LieNAlgebroid& need_algebroid(const StructureFile& f) {
    if (!f.algebroid) throw InputError("file has no algebroid block");
    return *f.algebroid;
}

Polynomial small_polynomial(std::mt19937& rng, const Coordinates& c) {
    std::uniform_int_distribution<int> coef(-3, 3), ex(0, 2);
    Polynomial p(c);
    for (int t = 0; t < 2; ++t) {
        Exponents e(c.size());
        for (auto& x : e) x = static_cast<unsigned>(ex(rng));
        p.add_term(e, coef(rng));
    }
    return p;
}

CheckResult sample_ce_formula(const LieNAlgebroid& alg, const CommandOptions& opt) {
    auto t0 = Clock::now();
    CheckResult res;
    res.name = "CE formula on sampled forms";
    auto anti = to_antialgebroid(alg);
    auto b = anti.bundle();
    auto q = ce_differential_anti(anti);
    std::mt19937 rng(opt.seed);
    const auto& c = b->coordinates();
    int s_max = opt.max_arity > 0 ? opt.max_arity - 1 : b->n();
    std::vector<SuperFunction> forms;
    forms.push_back(SuperFunction::function(b, small_polynomial(rng, c)));
    for (int s = 1; s <= s_max; ++s)
        for (int k = s; k <= s * b->n(); ++k) {
            auto w = form_from_values(b, s, k, [&](const std::vector<std::size_t>&) { return small_polynomial(rng, c); });
            if (!w.is_zero()) forms.push_back(w);
        }
    for (const auto& w : forms) {
        int s = 0;
        if (!w.terms().empty()) s = SuperFunction::homological_degree(w.terms().begin()->first);
        SuperFunction qw = q(w);
        for (const auto& ms : frame_multisets(*b, s + 1)) {
            std::vector<Section> xs;
            for (auto g : ms) xs.push_back(Section::frame(b, g));
            if (!c.empty()) xs[0] = (Polynomial::constant(c, 1) + small_polynomial(rng, c)) * xs[0];
            ++res.cases;
            Polynomial d = evaluate_form(qw, xs) - ce_formula_value(anti, w, xs);
            if (!d.is_zero()) res.fail("omega = " + w.to_string() + " at " + tuple_label(xs), d.to_string());
        }
    }
    res.millis = since(t0);
    return res;
}

// first anchor or frame tuple where two structures on the same bundle differ
std::optional<Witness> structure_difference(const BracketStructure& a, const BracketStructure& b) {
    const auto& bp = a.bundle();
    if (!same_bundle(bp, b.bundle())) return Witness{"bundle", "bundles differ"};
    for (std::size_t f = 0; f < bp->rank(); ++f)
        if (a.anchor(f) != b.anchor(f)) {
            std::string r;
            for (std::size_t i = 0; i < a.anchor(f).size() || i < b.anchor(f).size(); ++i) {
                Polynomial x = i < a.anchor(f).size() ? a.anchor(f)[i] : Polynomial(bp->coordinates());
                Polynomial y = i < b.anchor(f).size() ? b.anchor(f)[i] : Polynomial(bp->coordinates());
                r += (r.empty() ? "" : ", ") + (x - y).to_string();
            }
            return Witness{"anchor(" + bp->frame(f).name + ")", "(" + r + ")"};
        }
    for (int r = 1; r <= a.max_arity(); ++r)
        for (const auto& t : frame_multisets(*bp, r)) {
            Section d = a.on_frames(t) - b.on_frames(t);
            if (!d.is_zero()) {
                std::vector<Section> xs;
                for (auto g : t) xs.push_back(Section::frame(bp, g));
                return Witness{"l_" + std::to_string(r) + tuple_label(xs), d.to_string()};
            }
        }
    return std::nullopt;
}

std::optional<Witness> derivation_difference(const Derivation& p, const Derivation& q) {
    const auto& b = p.bundle();
    for (std::size_t i = 0; i < b->coordinates().size(); ++i) {
        auto d = p.coordinate_images()[i] - q.coordinate_images()[i];
        if (!d.is_zero()) return Witness{"Q " + b->coordinates()[i], d.to_string()};
    }
    for (std::size_t i = 0; i < b->rank(); ++i) {
        auto d = p.generator_images()[i] - q.generator_images()[i];
        if (!d.is_zero()) return Witness{"Q " + b->frame(i).dual, d.to_string()};
    }
    return std::nullopt;
}

LieNAlgebroid guarded_extract(const Derivation& q) {
    try {
        return extract_algebroid(q);
    } catch (const std::exception& e) {
        throw InputError(std::string("q: ") + e.what());
    }
}

CheckResult comparison(std::string name, Clock::time_point t0, std::optional<Witness> w) {
    CheckResult c;
    c.name = std::move(name);
    c.cases = 1;
    if (w) c.fail(w->where, w->residual);
    c.millis = since(t0);
    return c;
}

}  // namespace

std::vector<CheckResult> cmd_verify(const StructureFile& f, const CommandOptions& opt) {
    const auto& a = need_algebroid(f);
    auto rep = verify_algebroid(a, opt.max_arity);
    CheckResult agree;
    agree.name = "Q^2 = 0 exactly when the identities and their C-infinity defects vanish";
    agree.cases = 1;
    if (!rep.agree())
        agree.fail("homological " + std::string(rep.homological.pass ? "pass" : "fail"),
                   "brackets " + std::string(rep.identities.pass && rep.defects.pass ? "pass" : "fail"));
    return {rep.homological, rep.identities, rep.defects, agree, consequence_checks(a), sample_ce_formula(a, opt)};
}

std::string cmd_to_q(const StructureFile& f) { return ce_differential(need_algebroid(f)).to_string("Q"); }

std::string cmd_from_q(const StructureFile& f) {
    if (!f.q) throw InputError("file has no q block");
    StructureFile out;
    out.name = f.name;
    out.algebroid = guarded_extract(*f.q);
    return print_structure(out);
}

std::vector<CheckResult> cmd_roundtrip(const StructureFile& f) {
    std::vector<CheckResult> out;
    if (f.algebroid) {
        auto t0 = Clock::now();
        const auto& a = *f.algebroid;
        Derivation q = ce_differential(a);
        out.push_back(comparison("extract(ce(A)) = A", t0, structure_difference(extract_algebroid(q), a)));
        if (f.q) {
            t0 = Clock::now();
            auto back = guarded_extract(*f.q);
            out.push_back(comparison("ce(extract(Q)) = Q", t0, derivation_difference(ce_differential(back), *f.q)));
            t0 = Clock::now();
            out.push_back(comparison("extract(Q) = A", t0, structure_difference(back, a)));
        }
    }
    if (f.morphism) {
        auto t0 = Clock::now();
        auto back = extract_morphism(build_phi(*f.morphism));
        std::optional<Witness> w;
        if (!(back == *f.morphism)) w = Witness{"phi", back.to_string()};
        out.push_back(comparison("extract(build(phi)) = phi", t0, w));
    }
    return out;
}

std::vector<CheckResult> cmd_check_morphism(const StructureFile& f, const CommandOptions&) {
    if (!f.morphism) throw InputError("file has no morphism block");
    auto rep = check_morphism(*f.morphism, {*f.source, *f.target});
    CheckResult agree;
    agree.name = "Q_E Phi = Phi Q_F exactly when the anchor and bracket conditions hold";
    agree.cases = 1;
    if (!rep.agree())
        agree.fail("equivariance " + std::string(rep.equivariance.pass ? "pass" : "fail"),
                   "geometric " + std::string(rep.geometric() ? "pass" : "fail"));
    return {rep.anchor, rep.brackets, rep.equivariance, agree};
}

}  // namespace nqforge
