#include "nqforge/morphism.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
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

std::vector<Permutation> shuffles2(int p, int q) {
    if (q == 0 || p == 0) {
        Permutation id(p + q);
        std::iota(id.begin(), id.end(), 0);
        return {id};
    }
    return shuffles({p, q});
}

// sort a frame tuple of a symmetric (E-side) bundle; 0 when it vanishes
int sort_frames(const GradedBundle& b, const FrameTuple& frames, FrameTuple& sorted) {
    Permutation p(frames.size());
    std::iota(p.begin(), p.end(), 0);
    std::stable_sort(p.begin(), p.end(), [&](int u, int v) { return frames[u] < frames[v]; });
    sorted.clear();
    std::vector<int> d;
    for (auto f : frames) d.push_back(b.degree(f));
    for (int i : p) sorted.push_back(frames[i]);
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1] && repeat_vanishes(b.side(), b.degree(sorted[i]))) return 0;
    return koszul_sign(p, d);
}

// multilinear expansion over frames: calls f(frame tuple, coefficient)
template <typename F>
void expand(const std::vector<Section>& xs, F&& f) {
    FrameTuple cur;
    auto rec = [&](auto&& self, std::size_t i, const Polynomial& coeff) -> void {
        if (i == xs.size()) {
            f(cur, coeff);
            return;
        }
        const auto& comps = xs[i].components();
        for (std::size_t a = 0; a < comps.size(); ++a) {
            if (comps[a].is_zero()) continue;
            cur.push_back(a);
            self(self, i + 1, coeff * comps[a]);
            cur.pop_back();
        }
    };
    if (xs.empty()) return;
    rec(rec, 0, Polynomial(xs[0].bundle()->coordinates(), 1));
}

Section pull_section(const MorphismData& phi, const Section& s) {
    Section out(phi.pulled());
    for (std::size_t i = 0; i < s.components().size(); ++i) out.set(i, phi.base().pullback(s[i]));
    return out;
}

// m'_r on sections of φ0*F, C∞(M)-multilinear, no anchor terms
Section tensorial_bracket(const MorphismData& phi, const LieNAntialgebroid& tgt, const std::vector<Section>& ws) {
    Section out(phi.pulled());
    expand(ws, [&](const FrameTuple& fr, const Polynomial& c) {
        Section v = tgt.on_frames(fr);
        if (!v.is_zero()) out += c * pull_section(phi, v);
    });
    return out;
}

void require_same(const BundlePtr& a, const BundlePtr& b, const char* what) {
    if (!same_bundle(a, b)) throw std::invalid_argument(std::string("morphism ") + what + " does not match the algebroid");
}

}  // namespace

// ---- MorphismData ----

MorphismData::MorphismData(BundlePtr source, BundlePtr target, BaseMap base)
    : source_(std::move(source)), target_(std::move(target)), base_(std::move(base)) {
    if (source_->side() != Side::E || target_->side() != Side::E)
        throw std::invalid_argument("morphism components live on E-side bundles");
    if (source_->n() != target_->n()) throw std::invalid_argument("source and target must have the same n");
    if (base_.source() != source_->coordinates() || base_.target() != target_->coordinates())
        throw std::invalid_argument("base map coordinates do not match the bundles");
    pulled_ = target_->over(source_->coordinates());
}

MorphismData MorphismData::identity(const BundlePtr& e) {
    MorphismData m(e, e, BaseMap::identity(e->coordinates()));
    for (std::size_t f = 0; f < e->rank(); ++f) m.set_component({f}, Section::frame(m.pulled(), f));
    return m;
}

void MorphismData::set_component(const FrameTuple& frames, const Section& value) {
    int r = static_cast<int>(frames.size());
    if (r < 1 || r > max_arity()) throw std::invalid_argument("component arity must be within 1..n");
    int d = 0;
    for (auto f : frames) {
        if (f >= source_->rank()) throw std::out_of_range("unknown source frame");
        d += source_->degree(f);
    }
    Section v = value.bundle() ? value : Section(pulled_);
    if (!same_bundle(v.bundle(), pulled_)) {
        if (v.bundle()->rank() != pulled_->rank()) throw std::invalid_argument("component value is not a target section");
        v = v.rebased(target_);
        Section w(pulled_);
        for (std::size_t i = 0; i < v.components().size(); ++i) w.set(i, v[i]);
        v = w;
    }
    if (!v.is_zero() && (!v.is_homogeneous() || *v.degree() != d))
        throw std::invalid_argument("component must have degree 0");
    FrameTuple sorted;
    int sign = sort_frames(*source_, frames, sorted);
    if (sign == 0) {
        if (!v.is_zero()) throw std::invalid_argument("component on a vanishing tuple must be zero");
        return;
    }
    if (v.is_zero())
        table_.erase(sorted);
    else
        table_[sorted] = Rational(sign) * v;
}

Section MorphismData::component(const FrameTuple& frames) const {
    FrameTuple sorted;
    int sign = sort_frames(*source_, frames, sorted);
    if (sign == 0) return Section(pulled_);
    auto it = table_.find(sorted);
    if (it == table_.end()) return Section(pulled_);
    return Rational(sign) * it->second;
}

Section MorphismData::apply(const std::vector<Section>& xs) const {
    Section out(pulled_);
    if (xs.empty() || static_cast<int>(xs.size()) > max_arity()) return out;
    expand(xs, [&](const FrameTuple& fr, const Polynomial& c) {
        Section v = component(fr);
        if (!v.is_zero()) out += c * v;
    });
    return out;
}

bool MorphismData::is_linear() const {
    for (const auto& [t, v] : table_)
        if (t.size() > 1) return false;
    return true;
}

bool MorphismData::operator==(const MorphismData& o) const {
    return same_bundle(source_, o.source_) && same_bundle(target_, o.target_) && base_.images() == o.base_.images() &&
           table_ == o.table_;
}

std::string MorphismData::to_string() const {
    std::ostringstream os;
    const auto& tc = target_->coordinates();
    for (std::size_t j = 0; j < tc.size(); ++j) os << "phi0*" << tc[j] << " = " << base_.images()[j].to_string() << "\n";
    for (const auto& [t, v] : table_) {
        os << "phi'" << t.size() << "(";
        for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << source_->frame(t[i]).name;
        os << ") = " << v.to_string() << "\n";
    }
    return os.str();
}

std::vector<std::pair<Polynomial, std::size_t>> decompose(const MorphismData& phi, const std::vector<Section>& xs) {
    std::vector<std::pair<Polynomial, std::size_t>> out;
    Section v = phi.apply(xs);
    for (std::size_t j = 0; j < v.components().size(); ++j)
        if (!v[j].is_zero()) out.emplace_back(v[j], j);
    return out;
}

// ---- AlgebraMorphism ----

AlgebraMorphism::AlgebraMorphism(BundlePtr source, BundlePtr target, std::vector<Polynomial> coordinate_images,
                                 std::vector<SuperFunction> generator_images)
    : source_(std::move(source)), target_(std::move(target)), coord_(std::move(coordinate_images)),
      gen_(std::move(generator_images)) {
    if (coord_.size() != target_->coordinates().size() || gen_.size() != target_->rank())
        throw std::invalid_argument("algebra morphism needs one image per target coordinate and generator");
    for (auto& c : coord_) c = c.in(source_->coordinates());
    for (std::size_t b = 0; b < gen_.size(); ++b) {
        if (!gen_[b].bundle()) gen_[b] = SuperFunction(source_);
        if (!same_bundle(gen_[b].bundle(), source_)) throw std::invalid_argument("generator image in the wrong algebra");
        auto k = gen_[b].standard_degree();
        if (!gen_[b].is_zero() && (!k || *k != -target_->degree(b)))
            throw std::invalid_argument("algebra morphism must preserve the standard degree");
    }
}

SuperFunction AlgebraMorphism::operator()(const SuperFunction& g) const {
    SuperFunction out(source_);
    const Coordinates& mc = source_->coordinates();
    for (const auto& [m, c] : g.terms()) {
        SuperFunction term = SuperFunction::function(source_, c.substitute(coord_, mc));
        for (auto f : SuperFunction::factors(m)) {
            term = term * gen_[f];
            if (term.is_zero()) break;
        }
        out += term;
    }
    return out;
}

bool AlgebraMorphism::is_bigraded() const {
    for (const auto& g : gen_)
        if (g.hom_component(1) != g) return false;
    return true;
}

bool AlgebraMorphism::operator==(const AlgebraMorphism& o) const {
    return same_bundle(source_, o.source_) && same_bundle(target_, o.target_) && coord_ == o.coord_ && gen_ == o.gen_;
}

std::string AlgebraMorphism::to_string() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < coord_.size(); ++j)
        os << "Phi(" << target_->coordinates()[j] << ") = " << coord_[j].to_string() << "\n";
    for (std::size_t b = 0; b < gen_.size(); ++b)
        os << "Phi(" << target_->frame(b).dual << ") = " << gen_[b].to_string() << "\n";
    return os.str();
}

AlgebraMorphism build_phi(const MorphismData& phi) {
    const BundlePtr& e = phi.source();
    const BundlePtr& f = phi.target();
    std::vector<SuperFunction> gens;
    for (std::size_t b = 0; b < f->rank(); ++b) {
        int k = -f->degree(b);
        SuperFunction img(e);
        for (int r = 1; r <= std::min(k, phi.max_arity()); ++r)
            img += form_from_values(e, r, k, [&](const std::vector<std::size_t>& gamma) { return phi.component(gamma)[b]; });
        gens.push_back(img);
    }
    return AlgebraMorphism(e, f, phi.base().images(), gens);
}

MorphismData extract_morphism(const AlgebraMorphism& big) {
    const BundlePtr& e = big.source();
    const BundlePtr& f = big.target();
    MorphismData out(e, f, BaseMap(e->coordinates(), f->coordinates(), big.coordinate_images()));
    for (int r = 1; r <= e->n(); ++r)
        for (const auto& gamma : frame_multisets(*e, r)) {
            int d = 0;
            std::vector<Section> xs;
            for (auto g : gamma) {
                d += e->degree(g);
                xs.push_back(Section::frame(e, g));
            }
            if (d < -f->n()) continue;
            Section v(out.pulled());
            for (auto b : f->frames_of_degree(d)) v.set(b, evaluate_form(big.generator_images()[b], xs));
            out.set_component(gamma, v);
        }
    return out;
}

Section shifted_apply(const MorphismData& phi, const BundlePtr& s_target, const std::vector<Section>& ys) {
    std::vector<Section> xs;
    std::vector<int> d;
    for (const auto& y : ys) {
        xs.push_back(y.rebased(phi.source()));
        d.push_back(y.degree_or(0) - 1);
    }
    Section v = phi.apply(xs);
    BundlePtr sb = s_target->over(phi.source()->coordinates());
    return Rational(signs::transfer_sign(d)) * v.rebased(sb);
}

// ---- checks ----

namespace {

struct Prepared {
    LieNAntialgebroid src, tgt;
};

Prepared prepare(const MorphismData& phi, const MorphismPair& p) {
    validate_algebroid(p.source);
    validate_algebroid(p.target);
    Prepared out{to_antialgebroid(p.source), to_antialgebroid(p.target)};
    require_same(out.src.bundle(), phi.source(), "source");
    require_same(out.tgt.bundle(), phi.target(), "target");
    return out;
}

// source tuples for the bracket condition of arity t
std::vector<std::vector<Section>> bracket_tuples(const MorphismData& phi, int t, bool multiples) {
    const BundlePtr& e = phi.source();
    const Coordinates& c = e->coordinates();
    std::vector<std::vector<Section>> out;
    int floor = -e->n() - 1;  // LHS lands in degree Σx + 1
    for (const auto& ms : frame_multisets(*e, t, std::nullopt, !multiples)) {
        int d = 0;
        for (auto f : ms) d += e->degree(f);
        if (d < floor) continue;
        std::vector<Section> xs;
        for (auto f : ms) xs.push_back(Section::frame(e, f));
        bool vanishing = false;
        for (std::size_t i = 1; i < ms.size(); ++i)
            if (ms[i] == ms[i - 1] && repeat_vanishes(Side::E, e->degree(ms[i]))) vanishing = true;
        if (!vanishing) out.push_back(xs);
        if (!multiples) continue;
        for (int j = 0; j < t; ++j) {
            if (j > 0 && ms[j] == ms[j - 1]) continue;
            for (std::size_t i = 0; i < c.size(); ++i) {
                auto ys = xs;
                ys[j] = Polynomial::variable(c, i) * ys[j];
                out.push_back(ys);
            }
        }
    }
    return out;
}

// Σ_{r+s=t+1} Σ_{Sh(s,r-1)} ε φ'_r(l'_s(X_σ..), X_σ..)
Section lhs_brackets(const MorphismData& phi, const LieNAntialgebroid& src, const std::vector<Section>& xs) {
    int t = static_cast<int>(xs.size());
    std::vector<int> x = degrees_of(xs);
    Section out(phi.pulled());
    for (int s = 1; s <= t; ++s) {
        int r = t + 1 - s;
        if (r > phi.max_arity() || s > src.max_arity()) continue;
        for (const auto& sigma : shuffles2(s, r - 1)) {
            std::vector<Section> inner;
            for (int m = 0; m < s; ++m) inner.push_back(xs[sigma[m]]);
            Section z = src(inner);
            if (z.is_zero()) continue;
            std::vector<Section> args{z};
            for (int m = s; m < t; ++m) args.push_back(xs[sigma[m]]);
            out += Rational(koszul_sign(sigma, x)) * phi.apply(args);
        }
    }
    return out;
}

}  // namespace

CheckResult check_anchor_condition(const MorphismData& phi, const MorphismPair& p) {
    auto t0 = std::chrono::steady_clock::now();
    Prepared pr = prepare(phi, p);
    CheckResult res;
    res.name = "anchor condition r' o phi'_1 = T phi0 o rho'";
    const BundlePtr& e = phi.source();
    const BundlePtr& f = phi.target();
    const Coordinates& nc = f->coordinates();
    for (auto a : e->frames_of_degree(-1)) {
        Section x = Section::frame(e, a);
        auto parts = decompose(phi, {x});
        for (std::size_t j = 0; j < nc.size(); ++j) {
            ++res.cases;
            Polynomial lhs = pr.src.apply_anchor(x, phi.base().images()[j]);
            Polynomial rhs(e->coordinates());
            for (const auto& [coeff, xi] : parts) {
                const auto& field = pr.tgt.anchor(xi);
                if (!field.empty()) rhs += coeff * phi.base().pullback(field[j]);
            }
            if (lhs != rhs) res.fail(e->frame(a).name + " on " + nc[j], (lhs - rhs).to_string());
        }
    }
    res.millis = since(t0);
    return res;
}

Section bracket_residual(const MorphismData& phi, const LieNAntialgebroid& src, const LieNAntialgebroid& tgt,
                         const std::vector<Section>& xs) {
    int t = static_cast<int>(xs.size());
    std::vector<int> x = degrees_of(xs);
    Section res = lhs_brackets(phi, src, xs);
    // anchor row
    if (t >= 2)
        for (int i = 0; i < t; ++i) {
            if (x[i] != -1) continue;
            std::vector<Section> rest;
            for (int m = 0; m < t; ++m)
                if (m != i) rest.push_back(xs[m]);
            Section v = phi.apply(rest);
            Section w(phi.pulled());
            for (std::size_t b = 0; b < v.components().size(); ++b)
                if (!v[b].is_zero()) w.set(b, src.apply_anchor(xs[i], v[b]));
            res += Rational(signs::morphism_anchor_row(x, i)) * w;
        }
    // Σ over set partitions of ε m'_r(φ'(X^1), .., φ'(X^r)) on frames
    for (const auto& part : set_partitions(t)) {
        int r = static_cast<int>(part.blocks.size());
        if (r > tgt.max_arity()) continue;
        std::vector<Section> ws;
        bool zero = false;
        for (const auto& blk : part.blocks) {
            std::vector<Section> sub;
            for (int i : blk) sub.push_back(xs[i]);
            ws.push_back(phi.apply(sub));
            if (ws.back().is_zero()) zero = true;
        }
        if (zero) continue;
        res -= Rational(koszul_sign(part.perm, x)) * tensorial_bracket(phi, tgt, ws);
    }
    return res;
}

Section bracket_residual_base_preserving(const MorphismData& phi, const LieNAntialgebroid& src,
                                         const LieNAntialgebroid& tgt, const std::vector<Section>& xs) {
    if (!phi.base().is_identity() || !same_bundle(phi.pulled(), tgt.bundle()))
        throw std::invalid_argument("the simplified condition needs phi0 = id");
    int t = static_cast<int>(xs.size());
    std::vector<int> x = degrees_of(xs);
    Section res = lhs_brackets(phi, src, xs);
    for (const auto& part : set_partitions(t)) {
        int r = static_cast<int>(part.blocks.size());
        if (r > tgt.max_arity()) continue;
        std::vector<Section> ws;
        bool zero = false;
        for (const auto& blk : part.blocks) {
            std::vector<Section> sub;
            for (int i : blk) sub.push_back(xs[i]);
            ws.push_back(phi.apply(sub).rebased(tgt.bundle()));
            if (ws.back().is_zero()) zero = true;
        }
        if (zero) continue;
        res -= Rational(koszul_sign(part.perm, x)) * tgt(ws).rebased(phi.pulled());
    }
    return res;
}

CheckResult check_bracket_conditions(const MorphismData& phi, const MorphismPair& p, BracketOptions opt) {
    auto t0 = std::chrono::steady_clock::now();
    Prepared pr = prepare(phi, p);
    bool fast = opt.allow_fast_path && phi.base().is_identity() && same_bundle(phi.pulled(), pr.tgt.bundle());
    CheckResult res;
    res.name = fast ? "bracket conditions (base-preserving form)" : "bracket conditions";
    for (int t = 1; t <= phi.source()->n() + 1; ++t) {
        auto t1 = std::chrono::steady_clock::now();
        CheckResult ch;
        ch.name = "t=" + std::to_string(t);
        auto tuples = bracket_tuples(phi, t, opt.coordinate_multiples);
        auto residuals = parallel_map<Section>(tuples.size(), [&](std::size_t i) {
            return fast ? bracket_residual_base_preserving(phi, pr.src, pr.tgt, tuples[i])
                        : bracket_residual(phi, pr.src, pr.tgt, tuples[i]);
        });
        for (std::size_t i = 0; i < tuples.size(); ++i) {
            ++ch.cases;
            if (!residuals[i].is_zero()) ch.fail("t=" + std::to_string(t) + " " + tuple_label(tuples[i]), residuals[i].to_string());
        }
        ch.millis = since(t1);
        res.absorb(ch);
        res.children.push_back(ch);
    }
    res.millis = since(t0);
    return res;
}

SuperFunction equivariance_defect(const AlgebraMorphism& big, const Derivation& qe, const Derivation& qf,
                                  std::size_t index, bool coordinate) {
    const BundlePtr& f = big.target();
    SuperFunction g = coordinate ? SuperFunction::coordinate(f, index) : SuperFunction::generator(f, index);
    return qe(big(g)) - big(qf(g));
}

CheckResult check_equivariance(const MorphismData& phi, const MorphismPair& p) {
    auto t0 = std::chrono::steady_clock::now();
    Prepared pr = prepare(phi, p);
    AlgebraMorphism big = build_phi(phi);
    Derivation qe = ce_differential_anti(pr.src), qf = ce_differential_anti(pr.tgt);
    const BundlePtr& f = phi.target();
    std::size_t nc = f->coordinates().size();
    CheckResult res;
    res.name = "Q_E o Phi = Phi o Q_F on generators";
    auto defects = parallel_map<SuperFunction>(nc + f->rank(), [&](std::size_t i) {
        return i < nc ? equivariance_defect(big, qe, qf, i, true) : equivariance_defect(big, qe, qf, i - nc, false);
    });
    for (std::size_t i = 0; i < defects.size(); ++i) {
        ++res.cases;
        if (!defects[i].is_zero())
            res.fail(i < nc ? f->coordinates()[i] : f->frame(i - nc).dual, defects[i].to_string());
    }
    res.millis = since(t0);
    return res;
}

MorphismReport check_morphism(const MorphismData& phi, const MorphismPair& p, BracketOptions opt) {
    MorphismReport rep;
    rep.anchor = check_anchor_condition(phi, p);
    rep.brackets = check_bracket_conditions(phi, p, opt);
    rep.equivariance = check_equivariance(phi, p);
    return rep;
}

Section linfty_morphism_residual(const MorphismData& phi, const LieNAlgebroid& src, const LieNAlgebroid& tgt,
                                 const std::vector<Section>& ys) {
    if (!phi.source()->coordinates().empty() || !phi.target()->coordinates().empty())
        throw std::invalid_argument("the L-infinity form of the condition lives over a point");
    const BundlePtr& sf = tgt.bundle();
    int t = static_cast<int>(ys.size());
    std::vector<int> y = degrees_of(ys);
    auto phi_r = [&](const std::vector<Section>& args) { return shifted_apply(phi, sf, args); };
    Section res(sf);
    for (int s = 1; s <= t; ++s) {
        int r = t + 1 - s;
        if (r > phi.max_arity() || s > src.max_arity()) continue;
        for (const auto& sigma : shuffles2(s, r - 1)) {
            std::vector<Section> inner;
            for (int m = 0; m < s; ++m) inner.push_back(ys[sigma[m]]);
            Section z = src(inner);
            if (z.is_zero()) continue;
            std::vector<Section> args{z};
            for (int m = s; m < t; ++m) args.push_back(ys[sigma[m]]);
            res += Rational(signs::shifted_morphism_lhs_sign(s, r, sigma, y)) * phi_r(args);
        }
    }
    for (const auto& part : set_partitions(t)) {
        int r = static_cast<int>(part.blocks.size());
        if (r > tgt.max_arity()) continue;
        std::vector<Section> ws;
        bool zero = false;
        for (const auto& blk : part.blocks) {
            std::vector<Section> sub;
            for (int i : blk) sub.push_back(ys[i]);
            ws.push_back(phi_r(sub));
            if (ws.back().is_zero()) zero = true;
        }
        if (zero) continue;
        res -= Rational(signs::shifted_morphism_rhs_sign(part.blocks, y)) * tgt(ws);
    }
    return res;
}

}  // namespace nqforge
