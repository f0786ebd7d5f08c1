#include "nqforge/structure_file.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nqforge/signs.hpp"

namespace nqforge {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(path, std::string("missing \"") + key + "\"");
    return *it;
}

std::string as_string(const json& j, const std::string& path) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    bad(path, "expected a string");
}

template <typename F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        bad(path, e.what());
    }
}

Polynomial poly(const json& j, const Coordinates& c, const std::string& path) {
    std::string s = as_string(j, path);
    return guarded(path, [&] { return Polynomial::parse(c, s); });
}

std::size_t frame_index(const GradedBundle& b, const json& j, const std::string& path) {
    std::string name = as_string(j, path);
    auto i = b.index_of(name);
    if (!i) bad(path, "undeclared frame '" + name + "'");
    return *i;
}

FrameTuple frame_list(const GradedBundle& b, const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) bad(path, "expected a nonempty list of frames");
    FrameTuple t;
    for (std::size_t i = 0; i < j.size(); ++i) t.push_back(frame_index(b, j[i], path + "[" + std::to_string(i) + "]"));
    return t;
}

Section section_value(const BundlePtr& b, const json& j, const std::string& path) {
    if (!j.is_object()) bad(path, "expected an object frame -> coefficient");
    Section s(b);
    for (const auto& [k, v] : j.items()) {
        auto i = b->index_of(k);
        if (!i) bad(path, "undeclared frame '" + k + "'");
        s.set(*i, s[*i] + poly(v, b->coordinates(), path + "." + k));
    }
    return s;
}

LieNAlgebroid algebroid_from(const json& j, const std::string& path) {
    const json& nj = field(j, "n", path);
    if (!nj.is_number_integer() || nj.get<int>() < 1) bad(path + ".n", "expected an integer >= 1");
    int n = nj.get<int>();
    Coordinates coords;
    if (j.contains("coordinates")) {
        const json& cj = j["coordinates"];
        if (!cj.is_array()) bad(path + ".coordinates", "expected a list of names");
        std::vector<std::string> names;
        for (std::size_t i = 0; i < cj.size(); ++i) names.push_back(as_string(cj[i], path + ".coordinates[" + std::to_string(i) + "]"));
        coords = guarded(path + ".coordinates", [&] { return Coordinates(names); });
    }
    std::vector<Frame> frames;
    std::set<std::string> seen;
    if (j.contains("frames")) {
        const json& fj = j["frames"];
        if (!fj.is_array()) bad(path + ".frames", "expected a list");
        for (std::size_t i = 0; i < fj.size(); ++i) {
            std::string p = path + ".frames[" + std::to_string(i) + "]";
            std::string name = as_string(field(fj[i], "name", p), p + ".name");
            const json& dj = field(fj[i], "degree", p);
            if (!dj.is_number_integer()) bad(p + ".degree", "expected an integer");
            int d = dj.get<int>();
            if (d > 0 || d < 1 - n) bad(p + ".degree", "degree " + std::to_string(d) + " outside 0.." + std::to_string(1 - n));
            std::string dual = fj[i].contains("dual") ? as_string(fj[i]["dual"], p + ".dual") : "u_" + name;
            for (const auto& nm : {name, dual})
                if (!seen.insert(nm).second || coords.index_of(nm)) bad(p, "name '" + nm + "' declared twice");
            frames.push_back({name, d, dual});
        }
    }
    BundlePtr b = guarded(path, [&] { return GradedBundle::make(Side::SE, n, coords, frames); });
    LieNAlgebroid a(b);
    if (j.contains("anchor")) {
        const json& aj = j["anchor"];
        if (!aj.is_object()) bad(path + ".anchor", "expected an object frame -> field");
        for (const auto& [k, v] : aj.items()) {
            std::string p = path + ".anchor." + k;
            auto f = b->index_of(k);
            if (!f) bad(p, "undeclared frame '" + k + "'");
            if (b->degree(*f) != 0) bad(p, "anchor on a frame of nonzero degree");
            if (!v.is_array() || v.size() != coords.size())
                bad(p, "expected " + std::to_string(coords.size()) + " components");
            std::vector<Polynomial> field_;
            for (std::size_t i = 0; i < v.size(); ++i) field_.push_back(poly(v[i], coords, p + "[" + std::to_string(i) + "]"));
            guarded(p, [&] { a.set_anchor(*f, field_); return 0; });
        }
    }
    if (j.contains("brackets")) {
        const json& bj = j["brackets"];
        if (!bj.is_array()) bad(path + ".brackets", "expected a list");
        for (std::size_t i = 0; i < bj.size(); ++i) {
            std::string p = path + ".brackets[" + std::to_string(i) + "]";
            FrameTuple in = frame_list(*b, field(bj[i], "in", p), p + ".in");
            if (static_cast<int>(in.size()) > n + 1) bad(p + ".in", "arity above n + 1");
            Section out = section_value(b, field(bj[i], "out", p), p + ".out");
            Section prev = a.on_frames(in);
            guarded(p, [&] { a.set_bracket(in, prev + out); return 0; });
        }
    }
    guarded(path, [&] { validate_algebroid(a); return 0; });
    return a;
}

json polys_json(const Section& s) {
    json o = json::object();
    for (std::size_t i = 0; i < s.components().size(); ++i)
        if (!s[i].is_zero()) o[s.bundle()->frame(i).name] = s[i].to_string();
    return o;
}

json names_json(const GradedBundle& b, const FrameTuple& t) {
    json a = json::array();
    for (auto f : t) a.push_back(b.frame(f).name);
    return a;
}

json algebroid_json(const LieNAlgebroid& a) {
    const auto& b = *a.bundle();
    json j;
    j["n"] = b.n();
    json cs = json::array();
    for (const auto& c : b.coordinates().names()) cs.push_back(c);
    j["coordinates"] = cs;
    json fs = json::array();
    for (const auto& f : b.frames()) fs.push_back({{"name", f.name}, {"degree", f.degree}, {"dual", f.dual}});
    j["frames"] = fs;
    json an = json::object();
    for (std::size_t f = 0; f < b.rank(); ++f)
        if (!a.anchor(f).empty()) {
            json v = json::array();
            for (const auto& p : a.anchor(f)) v.push_back(p.to_string());
            an[b.frame(f).name] = v;
        }
    j["anchor"] = an;
    json br = json::array();
    for (const auto& [t, v] : a.table()) br.push_back({{"in", names_json(b, t)}, {"out", polys_json(v)}});
    j["brackets"] = br;
    return j;
}

Derivation q_from(const json& j, const LieNAlgebroid& a, const std::string& path) {
    BundlePtr e = a.bundle()->desuspended();
    Derivation q(e, 1);
    auto sf = [&](const json& v, const std::string& p) {
        std::string s = as_string(v, p);
        return guarded(p, [&] { return SuperFunction::parse(e, s); });
    };
    if (j.contains("coordinates")) {
        for (const auto& [k, v] : j["coordinates"].items()) {
            std::string p = path + ".coordinates." + k;
            auto i = e->coordinates().index_of(k);
            if (!i) bad(p, "undeclared coordinate '" + k + "'");
            SuperFunction f = sf(v, p);
            guarded(p, [&] { q.set_coordinate_image(*i, f); return 0; });
        }
    }
    if (j.contains("generators")) {
        for (const auto& [k, v] : j["generators"].items()) {
            std::string p = path + ".generators." + k;
            auto i = e->dual_index_of(k);
            if (!i) bad(p, "undeclared generator '" + k + "'");
            SuperFunction f = sf(v, p);
            guarded(p, [&] { q.set_generator_image(*i, f); return 0; });
        }
    }
    return q;
}

json q_json(const Derivation& q) {
    const auto& e = *q.bundle();
    json c = json::object(), g = json::object();
    for (std::size_t i = 0; i < e.coordinates().size(); ++i)
        if (!q.coordinate_images()[i].is_zero()) c[e.coordinates()[i]] = q.coordinate_images()[i].to_string();
    for (std::size_t i = 0; i < e.rank(); ++i)
        if (!q.generator_images()[i].is_zero()) g[e.frame(i).dual] = q.generator_images()[i].to_string();
    return {{"coordinates", c}, {"generators", g}};
}

MorphismData morphism_from(const json& j, const LieNAlgebroid& src, const LieNAlgebroid& tgt, const std::string& path) {
    BundlePtr e = src.bundle()->desuspended(), f = tgt.bundle()->desuspended();
    if (e->n() != f->n()) bad(path, "source and target have different n");
    const Coordinates& mc = e->coordinates();
    const Coordinates& nc = f->coordinates();
    std::vector<Polynomial> images;
    const json empty = json::object();
    const json& base = j.contains("base") ? j["base"] : empty;
    if (!base.is_object()) bad(path + ".base", "expected an object target coordinate -> polynomial");
    for (const auto& [k, v] : base.items())
        if (!nc.index_of(k)) bad(path + ".base." + k, "undeclared target coordinate '" + k + "'");
    for (std::size_t i = 0; i < nc.size(); ++i) {
        if (!base.contains(nc[i])) bad(path + ".base", "no image for target coordinate '" + nc[i] + "'");
        images.push_back(poly(base[nc[i]], mc, path + ".base." + nc[i]));
    }
    MorphismData m(e, f, BaseMap(mc, nc, images));
    if (j.contains("components")) {
        const json& cj = j["components"];
        if (!cj.is_array()) bad(path + ".components", "expected a list");
        for (std::size_t i = 0; i < cj.size(); ++i) {
            std::string p = path + ".components[" + std::to_string(i) + "]";
            FrameTuple in = frame_list(*e, field(cj[i], "in", p), p + ".in");
            Section out = section_value(m.pulled(), field(cj[i], "out", p), p + ".out");
            std::vector<int> d;
            for (auto g : in) d.push_back(e->degree(g));
            // φ'_r(X) = κ(x) s^-1 φ_r(sX)
            Section prime = Rational(signs::transfer_sign(d)) * out;
            guarded(p, [&] {
                m.set_component(in, m.component(in) + prime);
                return 0;
            });
        }
    }
    return m;
}

json morphism_json(const MorphismData& m) {
    json base = json::object();
    for (std::size_t i = 0; i < m.target()->coordinates().size(); ++i)
        base[m.target()->coordinates()[i]] = m.base().images()[i].to_string();
    json cs = json::array();
    for (const auto& [t, v] : shifted_components(m)) cs.push_back({{"in", names_json(*m.source(), t)}, {"out", polys_json(v)}});
    return {{"base", base}, {"components", cs}};
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json check_json(const CheckResult& c) {
    json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["cases"] = c.cases;
    j["millis"] = std::round(c.millis * 1000) / 1000;
    if (c.witness)
        j["witness"] = {{"where", c.witness->where}, {"residual", c.witness->residual}};
    else
        j["witness"] = nullptr;
    json ch = json::array();
    for (const auto& x : c.children) ch.push_back(check_json(x));
    j["children"] = ch;
    return j;
}

void check_text(std::ostringstream& os, const CheckResult& c, int depth) {
    os << std::string(2 * depth, ' ') << (c.pass ? "PASS " : "FAIL ") << c.name << "  [" << c.cases << " cases, "
       << std::fixed << std::setprecision(1) << c.millis << " ms]\n";
    if (c.witness && depth == 0)
        os << std::string(2 * depth + 5, ' ') << "witness: " << c.witness->where << "\n"
           << std::string(2 * depth + 5, ' ') << "residual: " << c.witness->residual << "\n";
    for (const auto& x : c.children) check_text(os, x, depth + 1);
}

}  // namespace

bool StructureFile::operator==(const StructureFile& o) const {
    return name == o.name && algebroid == o.algebroid && q == o.q && source == o.source && target == o.target &&
           morphism == o.morphism;
}

StructureFile parse_structure(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte);
        std::string msg = e.what();
        auto col_at = msg.find("column");
        auto cut = col_at == std::string::npos ? std::string::npos : msg.find(": ", col_at);
        throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                         (cut == std::string::npos ? msg : msg.substr(cut + 2)));
    }
    if (!j.is_object()) throw InputError("line 1, column 1: top level must be an object");
    StructureFile f;
    for (const auto& [k, v] : j.items())
        if (k != "name" && k != "algebroid" && k != "q" && k != "source" && k != "target" && k != "morphism")
            bad(k, "unknown key");
    if (j.contains("name")) f.name = as_string(j["name"], "name");
    if (j.contains("algebroid")) f.algebroid = algebroid_from(j["algebroid"], "algebroid");
    if (j.contains("q")) {
        if (!f.algebroid) bad("q", "a Q block needs the algebroid block declaring the bundle");
        f.q = q_from(j["q"], *f.algebroid, "q");
    }
    if (j.contains("source")) f.source = algebroid_from(j["source"], "source");
    if (j.contains("target")) f.target = algebroid_from(j["target"], "target");
    if (j.contains("morphism")) {
        if (!f.source || !f.target) bad("morphism", "a morphism needs source and target blocks");
        f.morphism = morphism_from(j["morphism"], *f.source, *f.target, "morphism");
    }
    if (!f.algebroid && !f.morphism) throw InputError("file declares neither an algebroid nor a morphism");
    return f;
}

StructureFile load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_structure(ss.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string print_structure(const StructureFile& f) {
    json j;
    if (!f.name.empty()) j["name"] = f.name;
    if (f.algebroid) j["algebroid"] = algebroid_json(*f.algebroid);
    if (f.q) j["q"] = q_json(*f.q);
    if (f.source) j["source"] = algebroid_json(*f.source);
    if (f.target) j["target"] = algebroid_json(*f.target);
    if (f.morphism) j["morphism"] = morphism_json(*f.morphism);
    return j.dump(2) + "\n";
}

std::vector<std::pair<FrameTuple, Section>> shifted_components(const MorphismData& phi) {
    std::vector<std::pair<FrameTuple, Section>> out;
    for (const auto& [t, v] : phi.table()) {
        std::vector<int> d;
        for (auto g : t) d.push_back(phi.source()->degree(g));
        out.emplace_back(t, Rational(signs::transfer_sign(d)) * v);
    }
    return out;
}

std::string report_text(const std::vector<CheckResult>& checks) {
    std::ostringstream os;
    bool pass = true;
    for (const auto& c : checks) {
        check_text(os, c, 0);
        pass = pass && c.pass;
    }
    os << (pass ? "result: pass" : "result: FAIL") << "\n";
    return os.str();
}

std::string report_json(const std::string& command, const std::vector<CheckResult>& checks) {
    json j;
    j["command"] = command;
    bool pass = true;
    json cs = json::array();
    for (const auto& c : checks) {
        cs.push_back(check_json(c));
        pass = pass && c.pass;
    }
    j["pass"] = pass;
    j["checks"] = cs;
    return j.dump(2) + "\n";
}

}  // namespace nqforge
