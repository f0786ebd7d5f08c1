#include "nqforge/graded.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace nqforge {

BundlePtr GradedBundle::make(Side side, int n, Coordinates coords, std::vector<Frame> frames) {
    if (n < 1) throw std::invalid_argument("bundle degree n must be at least 1");
    std::set<std::string> names, duals;
    auto b = std::shared_ptr<GradedBundle>(new GradedBundle());
    b->side_ = side;
    b->n_ = n;
    b->coords_ = std::move(coords);
    int lo = side == Side::E ? -n : 1 - n;
    int hi = side == Side::E ? -1 : 0;
    for (auto& f : frames) {
        if (f.degree < lo || f.degree > hi)
            throw std::invalid_argument("frame '" + f.name + "' has degree " + std::to_string(f.degree) +
                                        " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        if (f.dual.empty()) f.dual = f.name;
        if (!names.insert(f.name).second) throw std::invalid_argument("duplicate frame name '" + f.name + "'");
        if (!duals.insert(f.dual).second) throw std::invalid_argument("duplicate dual name '" + f.dual + "'");
        if (b->coords_.index_of(f.name) || b->coords_.index_of(f.dual))
            throw std::invalid_argument("frame name '" + f.name + "' clashes with a coordinate");
    }
    std::stable_sort(frames.begin(), frames.end(), [](const Frame& a, const Frame& c) { return a.degree > c.degree; });
    b->frames_ = std::move(frames);
    return b;
}

std::optional<std::size_t> GradedBundle::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < frames_.size(); ++i)
        if (frames_[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> GradedBundle::dual_index_of(std::string_view name) const {
    for (std::size_t i = 0; i < frames_.size(); ++i)
        if (frames_[i].dual == name) return i;
    return std::nullopt;
}

std::vector<std::size_t> GradedBundle::frames_of_degree(int d) const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < frames_.size(); ++i)
        if (frames_[i].degree == d) r.push_back(i);
    return r;
}

BundlePtr GradedBundle::suspended() const {
    if (side_ != Side::E) throw std::logic_error("suspension expects an E-side bundle");
    std::vector<Frame> f = frames_;
    for (auto& x : f) x.degree += 1;
    return make(Side::SE, n_, coords_, std::move(f));
}

BundlePtr GradedBundle::desuspended() const {
    if (side_ != Side::SE) throw std::logic_error("desuspension expects an sE-side bundle");
    std::vector<Frame> f = frames_;
    for (auto& x : f) x.degree -= 1;
    return make(Side::E, n_, coords_, std::move(f));
}

BundlePtr GradedBundle::over(const Coordinates& c) const { return make(side_, n_, c, frames_); }

bool GradedBundle::operator==(const GradedBundle& o) const {
    if (side_ != o.side_ || n_ != o.n_ || coords_ != o.coords_ || frames_.size() != o.frames_.size()) return false;
    for (std::size_t i = 0; i < frames_.size(); ++i)
        if (frames_[i].name != o.frames_[i].name || frames_[i].degree != o.frames_[i].degree ||
            frames_[i].dual != o.frames_[i].dual)
            return false;
    return true;
}

bool same_bundle(const BundlePtr& a, const BundlePtr& b) { return a == b || (a && b && *a == *b); }

bool repeat_vanishes(Side side, int degree) {
    bool odd = degree % 2 != 0;
    return side == Side::E ? odd : !odd;
}

std::vector<std::vector<std::size_t>> frame_multisets(const GradedBundle& b, int r, std::optional<int> total_degree,
                                                      bool drop_vanishing) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start, int deg) -> void {
        if (static_cast<int>(cur.size()) == r) {
            if (!total_degree || *total_degree == deg) out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < b.rank(); ++i) {
            if (drop_vanishing && !cur.empty() && cur.back() == i && repeat_vanishes(b.side(), b.degree(i))) continue;
            cur.push_back(i);
            self(self, i, deg + b.degree(i));
            cur.pop_back();
        }
    };
    if (r >= 0) rec(rec, 0, 0);
    return out;
}

Section::Section(BundlePtr b) : bundle_(std::move(b)) {
    comps_.assign(bundle_->rank(), Polynomial(bundle_->coordinates()));
}

Section::Section(BundlePtr b, std::vector<Polynomial> comps) : bundle_(std::move(b)) {
    if (comps.size() != bundle_->rank()) throw std::invalid_argument("section needs one component per frame");
    for (auto& p : comps) comps_.push_back(p.in(bundle_->coordinates()));
}

Section Section::frame(BundlePtr b, std::size_t i, const Polynomial& coeff) {
    Section s(std::move(b));
    s.set(i, coeff);
    return s;
}

Section Section::frame(BundlePtr b, std::size_t i) {
    Coordinates c = b->coordinates();
    return frame(std::move(b), i, Polynomial(c, 1));
}

bool Section::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::optional<int> Section::degree() const {
    std::optional<int> d;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (comps_[i].is_zero()) continue;
        if (d && *d != bundle_->degree(i)) return std::nullopt;
        d = bundle_->degree(i);
    }
    return d;
}

bool Section::is_homogeneous() const { return is_zero() || degree().has_value(); }

int Section::degree_or(int fallback) const {
    if (is_zero()) return fallback;
    auto d = degree();
    if (!d) throw std::invalid_argument("section is not homogeneous");
    return *d;
}

Section& Section::operator+=(const Section& o) {
    if (!bundle_) return *this = o;
    if (!o.bundle_) return *this;
    if (!same_bundle(bundle_, o.bundle_)) throw ContextError("sections live in different bundles");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
}

Section& Section::operator-=(const Section& o) { return *this += -o; }

Section Section::operator-() const {
    Section s(*this);
    for (auto& p : s.comps_) p = -p;
    return s;
}

Section operator*(const Polynomial& f, const Section& s) {
    Section r(s);
    for (auto& p : r.comps_) p = (f * p).in(s.bundle_->coordinates());
    return r;
}

Section operator*(const Rational& q, const Section& s) {
    Section r(s);
    for (auto& p : r.comps_) p *= q;
    return r;
}

bool Section::operator==(const Section& o) const {
    if (!bundle_ || !o.bundle_) return is_zero() && o.is_zero();
    return same_bundle(bundle_, o.bundle_) && comps_ == o.comps_;
}

Section Section::rebased(BundlePtr b) const {
    if (b->rank() != comps_.size()) throw ContextError("rebasing onto a bundle of different rank");
    return Section(std::move(b), comps_);
}

std::string Section::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (comps_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << comps_[i].to_string() << ")*" << bundle_->frame(i).name;
    }
    return first ? "0" : os.str();
}

bool is_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (int x : p) {
        if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

int signature(const Permutation& p) {
    int s = 1;
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b)
            if (p[a] > p[b]) s = -s;
    return s;
}

int koszul_sign(const Permutation& perm, const std::vector<int>& degrees) {
    if (perm.size() != degrees.size()) throw std::invalid_argument("permutation and degree list differ in length");
    long long e = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) e += static_cast<long long>(degrees[perm[a]]) * degrees[perm[b]];
    return minus_one_pow(e);
}

int chi_sign(const Permutation& perm, const std::vector<int>& degrees) {
    return signature(perm) * koszul_sign(perm, degrees);
}

std::vector<Permutation> shuffles(const std::vector<int>& block_sizes) {
    int r = 0;
    for (int b : block_sizes) {
        if (b < 1) throw std::invalid_argument("shuffle block sizes must be positive");
        r += b;
    }
    // assign each input position to a block; the permutation lists block contents in order
    std::vector<Permutation> out;
    std::vector<int> owner(r);
    std::vector<int> left = block_sizes;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == r) {
            Permutation p;
            for (std::size_t k = 0; k < block_sizes.size(); ++k)
                for (int i = 0; i < r; ++i)
                    if (owner[i] == static_cast<int>(k)) p.push_back(i);
            out.push_back(std::move(p));
            return;
        }
        for (std::size_t k = 0; k < left.size(); ++k) {
            if (!left[k]) continue;
            --left[k];
            owner[pos] = static_cast<int>(k);
            self(self, pos + 1);
            ++left[k];
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BlockPartition> set_partitions(int r) {
    std::vector<BlockPartition> out;
    std::vector<std::vector<int>> blocks;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == r) {
            BlockPartition bp;
            bp.blocks = blocks;
            for (auto& b : blocks) {
                bp.sizes.push_back(static_cast<int>(b.size()));
                bp.perm.insert(bp.perm.end(), b.begin(), b.end());
            }
            out.push_back(std::move(bp));
            return;
        }
        // index loop: the recursion appends blocks
        for (std::size_t b = 0, nb = blocks.size(); b < nb; ++b) {
            blocks[b].push_back(i);
            self(self, i + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({i});
        self(self, i + 1);
        blocks.pop_back();
    };
    if (r > 0) rec(rec, 0);
    return out;
}

int suspension_power_sign(int i) {
    if (i < 1) throw std::invalid_argument("suspension power must be positive");
    return minus_one_pow(static_cast<long long>(i) * (i - 1) / 2);
}

int suspension_tuple_sign(const std::vector<int>& degrees) {
    long long e = 0;
    const long long i = static_cast<long long>(degrees.size());
    for (long long j = 0; j < i; ++j) e += (i - 1 - j) * degrees[j];
    return minus_one_pow(e);
}

namespace {

std::vector<int> tuple_degrees(const std::vector<Section>& xs) {
    std::vector<int> d;
    for (const auto& x : xs) {
        if (!x.is_homogeneous()) throw std::invalid_argument("tuple entries must be homogeneous");
        d.push_back(x.degree_or(0));
    }
    return d;
}

}  // namespace

SignedTuple suspend_tuple(const std::vector<Section>& xs) {
    SignedTuple t{{}, suspension_tuple_sign(tuple_degrees(xs))};
    for (const auto& x : xs) t.sections.push_back(x.rebased(x.bundle()->suspended()));
    return t;
}

SignedTuple unsuspend_tuple(const std::vector<Section>& ys) {
    SignedTuple t{{}, 1};
    for (const auto& y : ys) t.sections.push_back(y.rebased(y.bundle()->desuspended()));
    t.sign = suspension_tuple_sign(tuple_degrees(t.sections));
    return t;
}

SignedTuple desuspend_tuple(const std::vector<Section>& ys) {
    SignedTuple t = unsuspend_tuple(ys);
    if (!ys.empty()) t.sign *= suspension_power_sign(static_cast<int>(ys.size()));
    return t;
}

}  // namespace nqforge
