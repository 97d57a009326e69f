#pragma once

#include <cstdint>
#include <string>

#include "sharing/model.hpp"
#include "sharing/treewidth.hpp"

namespace sharing {

// JSON wire formats. All parsers throw InputError with a message of the form
// "line L, column C: reason" pointing at the offending token (for schema and
// semantic violations, at the owning top-level key).

// Instance document keys, in canonical order: "agents", "resources",
// "utilities" (array of arrays of integers), "allocation" (array of arrays
// of resource indices), "sharing_edges" (array of [i,j] pairs or the macro
// string "clique"), "attention_arcs" (array of [i,j] pairs, "clique", or
// "same_as_sharing_bidirected"), optional "alpha"/"beta" (rational strings
// "p/q", default "1/1"), optional "costs" (array of [i,j,c] triples),
// optional "budget" (integer or "unbounded").
Instance parse_instance(const std::string& bytes);

// Canonical serialization: keys in the order above with alpha/beta always
// present, macros expanded to index-sorted arrays, "costs" only when some
// edge cost is nonzero, "budget" only when bounded, two-space indentation,
// trailing newline. parse_instance(serialize_instance(x)) reproduces x, and
// serialize_instance(parse_instance(doc)) == doc for canonical documents.
std::string serialize_instance(const Instance& inst);

// Sharing document: {"bound": b, "assignments": [{"edge": [i,j],
// "resource": r}, ...]}. Structural parsing only; validate against an
// instance with validate_sharing after loading.
Sharing parse_sharing(const std::string& bytes);
std::string serialize_sharing(const Sharing& sharing);

// Decomposition document: {"width": w, "root": r, "nodes": [{"kind":
// "leaf"|"introduce"|"forget"|"join", "vertex": v, "bag": [...],
// "children": [...]}, ...]}. "vertex" may be omitted where it is
// meaningless (leaves and joins).
NiceTreeDecomposition parse_decomposition(const std::string& bytes);
std::string serialize_decomposition(const NiceTreeDecomposition& dec);

// Random-instance graph models. Sharing graphs accept clique, erdos_renyi,
// path and tree; attention graphs additionally accept same_as_sharing
// (undirected models are bidirected arc-wise, erdos_renyi draws each
// ordered pair independently).
struct GraphModel {
  enum class Kind { kClique, kErdosRenyi, kPath, kTree, kSameAsSharing };
  Kind kind = Kind::kClique;
  double p = 0.0;  // edge probability, erdos_renyi only
};

// Accepts "clique", "path", "tree", "erdos_renyi:P" (P a decimal in [0,1])
// and "same_as_sharing_bidirected".
GraphModel parse_graph_model(const std::string& text);

// Deterministic per seed: same arguments give byte-identical documents.
// Every resource goes to a uniformly drawn agent; utilities are uniform
// integers in [0, u_max]; loss parameters stay at their defaults and no
// costs or budget are set.
Instance generate_random(std::uint64_t seed, int n, int m,
                         const GraphModel& sharing_model,
                         const GraphModel& attention_model, int u_max);

}  // namespace sharing
