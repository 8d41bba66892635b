#pragma once

#include <qhd/configuration.hpp>
#include <qhd/graph.hpp>
#include <qhd/homology.hpp>
#include <qhd/lattice.hpp>
#include <qhd/reduction.hpp>
#include <qhd/sandwich.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace qhd {

using Json = nlohmann::ordered_json;

/// Machine-size integers as numbers, larger ones as decimal strings.
auto to_json(const BigInt & value) -> Json;
auto bigint_from_json(const Json & j) -> BigInt;
/// "p/q", or an integer when the denominator is 1.
auto to_json(const Rational & value) -> Json;
auto rational_from_json(const Json & j) -> Rational;

auto to_json(const IntMatrix & m) -> Json;
auto matrix_from_json(const Json & j) -> IntMatrix;
auto to_json(const SmallMatrix & m) -> Json;

/// {"vertices":[{"id":"v1","framing":-5}],"edges":[["v1","v2"]]}
auto to_json(const PlumbingTree & tree) -> Json;
auto tree_from_json(const Json & j) -> PlumbingTree;

/// Graph JSON where edges may be ["a","b"] or {"a":..,"b":..,"label":k}.
auto sketch_from_json(const Json & j) -> EdgeSketch;
auto to_json(const EdgeSketch & sketch) -> Json;

/// Graph, end vertex, per-curve {vertex, size, kind, label} and the Gram matrix.
auto to_json(const SandwichPresentation & presentation) -> Json;
auto presentation_from_json(const Json & j) -> SandwichPresentation;

/// {"points":[..],"curves":[{"vertex":"v1","support":{"p1":1}}]}
auto to_json(const Configuration & config) -> Json;
auto configuration_from_json(const Json & j) -> Configuration;

auto to_json(const ReductionStep & step) -> Json;
auto to_json(const ReductionTrace & trace) -> Json;
auto to_json(const ReducedReport & report) -> Json;
auto to_json(const FiberInvariants & invariants) -> Json;
auto to_json(const IntersectionForm & form) -> Json;

/// Graphviz with framings as labels; the end vertex, if given, is boxed.
auto to_dot(const PlumbingTree & tree, std::string_view end = {}) -> std::string;

/// Throws InvalidInput on a missing file or malformed JSON.
auto read_json(const std::filesystem::path & path) -> Json;
void write_json(const std::filesystem::path & path, const Json & j);

/// Accepts either a tree or an edge sketch (labels expanded).
auto graph_from_json(const Json & j) -> PlumbingTree;

} // namespace qhd
