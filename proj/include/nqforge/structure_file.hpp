#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nqforge/algebroid.hpp"
#include "nqforge/morphism.hpp"
#include "nqforge/report.hpp"

namespace nqforge {

// Malformed input: JSON syntax (with line and column) or undeclared names,
// bad degrees and the like (with the JSON path).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON structure file:
//   "algebroid": {"n", "coordinates", "frames": [{"name","degree","dual"}],
//                 "anchor": {frame: [component per coordinate]},
//                 "brackets": [{"in": [frames], "out": {frame: polynomial}}]}
//   "q": {"coordinates": {coord: superfunction}, "generators": {dual: superfunction}}
//   "source", "target": algebroids, "morphism": {"base": {target coord: polynomial},
//                 "components": [{"in": [source frames], "out": {target frame: polynomial}}]}
// Algebroids live on sE (degrees 0..1-n); Q acts on functions of E; morphism
// components are the shifted maps φ_r on sE frames.
struct StructureFile {
    std::string name;
    std::optional<LieNAlgebroid> algebroid;
    std::optional<Derivation> q;
    std::optional<LieNAlgebroid> source, target;
    std::optional<MorphismData> morphism;

    bool operator==(const StructureFile& o) const;
};

StructureFile parse_structure(std::string_view text);
StructureFile load_structure(const std::string& path);
std::string print_structure(const StructureFile& f);

// φ_r(s e_γ) on sorted source frame tuples, from the stored φ'_r
std::vector<std::pair<FrameTuple, Section>> shifted_components(const MorphismData& phi);

std::string report_text(const std::vector<CheckResult>& checks);
std::string report_json(const std::string& command, const std::vector<CheckResult>& checks);

}  // namespace nqforge
