#include "sharing/io.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sharing/errors.hpp"
#include "sharing/numeric.hpp"

namespace sharing {

namespace {

using json = nlohmann::ordered_json;

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of_offset(const std::string& bytes, std::size_t offset) {
  Position pos;
  for (std::size_t i = 0; i < offset && i < bytes.size(); ++i) {
    if (bytes[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

// Semantic violations point at the owning top-level key: the first
// occurrence of the quoted key in the source text.
Position position_of_key(const std::string& bytes, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  const std::size_t at = bytes.find(quoted);
  if (at == std::string::npos) return {1, 1};
  return position_of_offset(bytes, at);
}

[[noreturn]] void fail_at(const Position& pos, const std::string& reason) {
  throw InputError("line " + std::to_string(pos.line) + ", column " +
                   std::to_string(pos.column) + ": " + reason);
}

[[noreturn]] void fail_key(const std::string& bytes, const std::string& key,
                           const std::string& reason) {
  fail_at(position_of_key(bytes, key), reason);
}

json parse_document(const std::string& bytes) {
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    // e.byte is one past the last processed byte.
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    fail_at(position_of_offset(bytes, offset),
            std::string("invalid JSON: ") + e.what());
  }
}

const json& require_key(const std::string& bytes, const json& doc,
                        const std::string& key) {
  if (!doc.is_object()) fail_at({1, 1}, "document is not a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end()) fail_key(bytes, key, "missing key \"" + key + "\"");
  return *it;
}

int require_int(const std::string& bytes, const json& value,
                const std::string& key, const std::string& what) {
  if (!value.is_number_integer()) {
    fail_key(bytes, key, what + " must be an integer");
  }
  const long long v = value.get<long long>();
  if (v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    fail_key(bytes, key, what + " out of range");
  }
  return static_cast<int>(v);
}

int require_index(const std::string& bytes, const json& value,
                  const std::string& key, const std::string& what,
                  int limit) {
  const int v = require_int(bytes, value, key, what);
  if (v < 0 || v >= limit) fail_key(bytes, key, what + " out of range");
  return v;
}

std::pair<int, int> require_pair(const std::string& bytes, const json& value,
                                 const std::string& key,
                                 const std::string& what, int limit) {
  if (!value.is_array() || value.size() != 2) {
    fail_key(bytes, key, what + " must be an [i, j] pair");
  }
  const int i = require_index(bytes, value[0], key, what + " endpoint", limit);
  const int j = require_index(bytes, value[1], key, what + " endpoint", limit);
  if (i == j) fail_key(bytes, key, what + " is a loop");
  return {i, j};
}

Rat parse_loss_parameter(const std::string& bytes, const json& doc,
                         const std::string& key) {
  const auto it = doc.find(key);
  if (it == doc.end()) return Rat(1);
  if (!it->is_string()) {
    fail_key(bytes, key, key + " must be a rational string \"p/q\"");
  }
  Rat value;
  try {
    value = parse_rational(it->get<std::string>());
  } catch (const InputError& e) {
    fail_key(bytes, key, e.what());
  }
  if (value < 0 || value > 1) fail_key(bytes, key, key + " out of [0,1]");
  return value;
}

long long to_int64(const Int& value, const char* what) {
  static const Int kMin(std::numeric_limits<long long>::min());
  static const Int kMax(std::numeric_limits<long long>::max());
  if (value < kMin || value > kMax) {
    throw InputError(std::string(what) +
                     " does not fit a 64-bit integer for serialization");
  }
  return value.convert_to<long long>();
}

json assignment_to_json(const Assignment& a) {
  json out;
  out["edge"] = json::array({a.u, a.v});
  out["resource"] = a.resource;
  return out;
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

int model_bounded(std::mt19937_64& gen, int lo, int hi) {
  return lo + static_cast<int>(
                  gen() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Uniform double in [0, 1) with 53 random bits; deterministic across runs.
double unit_draw(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Undirected edge set of a model, pairs ascending. erdos_renyi draws pairs
// in ascending order so the stream of random numbers is reproducible.
std::vector<std::pair<int, int>> undirected_edges(std::mt19937_64& gen,
                                                  const GraphModel& model,
                                                  int n) {
  std::vector<std::pair<int, int>> edges;
  switch (model.kind) {
    case GraphModel::Kind::kClique:
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
      }
      break;
    case GraphModel::Kind::kErdosRenyi:
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (unit_draw(gen) < model.p) edges.push_back({u, v});
        }
      }
      break;
    case GraphModel::Kind::kPath:
      for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
      break;
    case GraphModel::Kind::kTree:
      for (int v = 1; v < n; ++v) {
        const int parent = model_bounded(gen, 0, v - 1);
        edges.push_back({std::min(parent, v), std::max(parent, v)});
      }
      break;
    case GraphModel::Kind::kSameAsSharing:
      throw InputError(
          "same_as_sharing_bidirected is only a valid attention model");
  }
  return edges;
}

}  // namespace

Instance parse_instance(const std::string& bytes) {
  const json doc = parse_document(bytes);

  Instance inst;
  inst.n = require_int(bytes, require_key(bytes, doc, "agents"), "agents",
                       "agents");
  inst.m = require_int(bytes, require_key(bytes, doc, "resources"),
                       "resources", "resources");
  if (inst.n < 1) fail_key(bytes, "agents", "need at least one agent");
  if (inst.m < 0) fail_key(bytes, "resources", "negative resource count");

  const json& utilities = require_key(bytes, doc, "utilities");
  if (!utilities.is_array() ||
      static_cast<int>(utilities.size()) != inst.n) {
    fail_key(bytes, "utilities", "utilities must list one row per agent");
  }
  inst.utility.assign(inst.n, std::vector<Int>(inst.m, 0));
  for (int i = 0; i < inst.n; ++i) {
    const json& row = utilities[i];
    if (!row.is_array() || static_cast<int>(row.size()) != inst.m) {
      fail_key(bytes, "utilities",
               "utility row must list one value per resource");
    }
    for (int r = 0; r < inst.m; ++r) {
      if (!row[r].is_number_integer()) {
        fail_key(bytes, "utilities", "utility must be an integer");
      }
      const long long v = row[r].get<long long>();
      if (v < 0) fail_key(bytes, "utilities", "negative utility");
      inst.utility[i][r] = Int(v);
    }
  }

  const json& allocation = require_key(bytes, doc, "allocation");
  if (!allocation.is_array() ||
      static_cast<int>(allocation.size()) != inst.n) {
    fail_key(bytes, "allocation",
             "allocation must list one bundle per agent");
  }
  inst.bundle.assign(inst.n, {});
  std::vector<char> allocated(inst.m, 0);
  for (int i = 0; i < inst.n; ++i) {
    const json& bundle = allocation[i];
    if (!bundle.is_array()) {
      fail_key(bytes, "allocation", "bundle must be an array of resources");
    }
    for (const json& entry : bundle) {
      const int r = require_index(bytes, entry, "allocation", "resource",
                                  inst.m);
      if (allocated[r]) fail_key(bytes, "allocation", "resource allocated twice");
      allocated[r] = 1;
      inst.bundle[i].push_back(r);
    }
  }
  if (std::find(allocated.begin(), allocated.end(), 0) != allocated.end()) {
    fail_key(bytes, "allocation", "allocation not complete");
  }

  const json& sharing = require_key(bytes, doc, "sharing_edges");
  inst.sharing.assign(inst.n, std::vector<char>(inst.n, 0));
  if (sharing.is_string()) {
    if (sharing.get<std::string>() != "clique") {
      fail_key(bytes, "sharing_edges", "unknown sharing_edges macro");
    }
    for (int i = 0; i < inst.n; ++i) {
      for (int j = 0; j < inst.n; ++j) inst.sharing[i][j] = (i != j);
    }
  } else if (sharing.is_array()) {
    for (const json& entry : sharing) {
      const auto [i, j] =
          require_pair(bytes, entry, "sharing_edges", "sharing edge", inst.n);
      inst.sharing[i][j] = inst.sharing[j][i] = 1;
    }
  } else {
    fail_key(bytes, "sharing_edges",
             "sharing_edges must be an array or \"clique\"");
  }

  const json& attention = require_key(bytes, doc, "attention_arcs");
  inst.attention.assign(inst.n, std::vector<char>(inst.n, 0));
  if (attention.is_string()) {
    const std::string macro = attention.get<std::string>();
    if (macro == "clique") {
      for (int i = 0; i < inst.n; ++i) {
        for (int j = 0; j < inst.n; ++j) inst.attention[i][j] = (i != j);
      }
    } else if (macro == "same_as_sharing_bidirected") {
      for (int i = 0; i < inst.n; ++i) {
        for (int j = 0; j < inst.n; ++j) {
          inst.attention[i][j] = inst.sharing[i][j];
        }
      }
    } else {
      fail_key(bytes, "attention_arcs", "unknown attention_arcs macro");
    }
  } else if (attention.is_array()) {
    for (const json& entry : attention) {
      const auto [i, j] = require_pair(bytes, entry, "attention_arcs",
                                       "attention arc", inst.n);
      inst.attention[i][j] = 1;
    }
  } else {
    fail_key(bytes, "attention_arcs",
             "attention_arcs must be an array, \"clique\", or "
             "\"same_as_sharing_bidirected\"");
  }

  inst.ext.alpha = parse_loss_parameter(bytes, doc, "alpha");
  inst.ext.beta = parse_loss_parameter(bytes, doc, "beta");

  inst.edge_cost.assign(inst.n, std::vector<Int>(inst.n, 0));
  if (const auto it = doc.find("costs"); it != doc.end()) {
    if (!it->is_array()) {
      fail_key(bytes, "costs", "costs must be an array of [i, j, c] triples");
    }
    std::vector<std::vector<char>> seen(inst.n,
                                        std::vector<char>(inst.n, 0));
    for (const json& entry : *it) {
      if (!entry.is_array() || entry.size() != 3) {
        fail_key(bytes, "costs", "cost entry must be an [i, j, c] triple");
      }
      const int i =
          require_index(bytes, entry[0], "costs", "cost endpoint", inst.n);
      const int j =
          require_index(bytes, entry[1], "costs", "cost endpoint", inst.n);
      if (i == j) fail_key(bytes, "costs", "cost entry is a loop");
      if (!entry[2].is_number_integer()) {
        fail_key(bytes, "costs", "cost must be an integer");
      }
      const long long c = entry[2].get<long long>();
      if (c < 0) fail_key(bytes, "costs", "negative cost");
      if (seen[i][j]) fail_key(bytes, "costs", "duplicate cost entry");
      seen[i][j] = seen[j][i] = 1;
      inst.edge_cost[i][j] = inst.edge_cost[j][i] = Int(c);
    }
  }

  if (const auto it = doc.find("budget"); it != doc.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "unbounded") {
        fail_key(bytes, "budget", "budget must be an integer or \"unbounded\"");
      }
    } else if (it->is_number_integer()) {
      const long long b = it->get<long long>();
      if (b < 0) fail_key(bytes, "budget", "negative budget");
      inst.ext.budget = Int(b);
    } else {
      fail_key(bytes, "budget", "budget must be an integer or \"unbounded\"");
    }
  }

  finalize_instance(inst);
  const auto violations = validate_instance(inst);
  if (!violations.empty()) fail_at({1, 1}, violations.front());
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc["agents"] = inst.n;
  doc["resources"] = inst.m;

  json utilities = json::array();
  for (int i = 0; i < inst.n; ++i) {
    json row = json::array();
    for (int r = 0; r < inst.m; ++r) {
      row.push_back(to_int64(inst.utility[i][r], "utility"));
    }
    utilities.push_back(std::move(row));
  }
  doc["utilities"] = std::move(utilities);

  json allocation = json::array();
  for (int i = 0; i < inst.n; ++i) {
    std::vector<int> bundle = inst.bundle[i];
    std::sort(bundle.begin(), bundle.end());
    allocation.push_back(json(bundle));
  }
  doc["allocation"] = std::move(allocation);

  json edges = json::array();
  for (int i = 0; i < inst.n; ++i) {
    for (int j = i + 1; j < inst.n; ++j) {
      if (inst.sharing[i][j]) edges.push_back(json::array({i, j}));
    }
  }
  doc["sharing_edges"] = std::move(edges);

  json arcs = json::array();
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (i != j && inst.attention[i][j]) arcs.push_back(json::array({i, j}));
    }
  }
  doc["attention_arcs"] = std::move(arcs);

  doc["alpha"] = format_rational(inst.ext.alpha);
  doc["beta"] = format_rational(inst.ext.beta);

  json costs = json::array();
  for (int i = 0; i < inst.n; ++i) {
    for (int j = i + 1; j < inst.n; ++j) {
      if (inst.edge_cost[i][j] != 0) {
        costs.push_back(
            json::array({i, j, to_int64(inst.edge_cost[i][j], "cost")}));
      }
    }
  }
  if (!costs.empty()) doc["costs"] = std::move(costs);
  if (inst.ext.budget.has_value()) {
    doc["budget"] = to_int64(*inst.ext.budget, "budget");
  }
  return dump_document(doc);
}

Sharing parse_sharing(const std::string& bytes) {
  const json doc = parse_document(bytes);
  Sharing out;
  out.bound = require_int(bytes, require_key(bytes, doc, "bound"), "bound",
                          "bound");
  if (out.bound < 1) fail_key(bytes, "bound", "bound must be at least 1");
  const json& assignments = require_key(bytes, doc, "assignments");
  if (!assignments.is_array()) {
    fail_key(bytes, "assignments", "assignments must be an array");
  }
  for (const json& entry : assignments) {
    if (!entry.is_object() || !entry.contains("edge") ||
        !entry.contains("resource")) {
      fail_key(bytes, "assignments",
               "assignment must carry \"edge\" and \"resource\"");
    }
    const json& edge = entry["edge"];
    if (!edge.is_array() || edge.size() != 2 ||
        !edge[0].is_number_integer() || !edge[1].is_number_integer()) {
      fail_key(bytes, "assignments", "edge must be an [i, j] pair");
    }
    if (!entry["resource"].is_number_integer()) {
      fail_key(bytes, "assignments", "resource must be an integer");
    }
    Assignment a;
    a.u = edge[0].get<int>();
    a.v = edge[1].get<int>();
    a.resource = entry["resource"].get<int>();
    out.assignments.push_back(a);
  }
  return out;
}

std::string serialize_sharing(const Sharing& sharing) {
  Sharing canon = sharing;
  normalize_sharing(canon);
  json doc;
  doc["bound"] = canon.bound;
  json assignments = json::array();
  for (const Assignment& a : canon.assignments) {
    assignments.push_back(assignment_to_json(a));
  }
  doc["assignments"] = std::move(assignments);
  return dump_document(doc);
}

NiceTreeDecomposition parse_decomposition(const std::string& bytes) {
  const json doc = parse_document(bytes);
  NiceTreeDecomposition dec;
  dec.width = require_int(bytes, require_key(bytes, doc, "width"), "width",
                          "width");
  dec.root = require_int(bytes, require_key(bytes, doc, "root"), "root",
                         "root");
  const json& nodes = require_key(bytes, doc, "nodes");
  if (!nodes.is_array()) fail_key(bytes, "nodes", "nodes must be an array");
  for (const json& entry : nodes) {
    if (!entry.is_object() || !entry.contains("kind") ||
        !entry.contains("bag") || !entry.contains("children")) {
      fail_key(bytes, "nodes",
               "node must carry \"kind\", \"bag\" and \"children\"");
    }
    NiceTreeDecomposition::Node node;
    const std::string kind = entry["kind"].is_string()
                                 ? entry["kind"].get<std::string>()
                                 : std::string();
    if (kind == "leaf") {
      node.kind = NiceTreeDecomposition::NodeKind::kLeaf;
    } else if (kind == "introduce") {
      node.kind = NiceTreeDecomposition::NodeKind::kIntroduce;
    } else if (kind == "forget") {
      node.kind = NiceTreeDecomposition::NodeKind::kForget;
    } else if (kind == "join") {
      node.kind = NiceTreeDecomposition::NodeKind::kJoin;
    } else {
      fail_key(bytes, "nodes", "unknown node kind");
    }
    if (entry.contains("vertex")) {
      node.vertex = require_int(bytes, entry["vertex"], "nodes", "vertex");
    }
    if (!entry["bag"].is_array() || !entry["children"].is_array()) {
      fail_key(bytes, "nodes", "bag and children must be arrays");
    }
    for (const json& v : entry["bag"]) {
      node.bag.push_back(require_int(bytes, v, "nodes", "bag entry"));
    }
    for (const json& c : entry["children"]) {
      node.children.push_back(require_int(bytes, c, "nodes", "child index"));
    }
    dec.nodes.push_back(std::move(node));
  }
  return dec;
}

std::string serialize_decomposition(const NiceTreeDecomposition& dec) {
  json doc;
  doc["width"] = dec.width;
  doc["root"] = dec.root;
  json nodes = json::array();
  for (const auto& node : dec.nodes) {
    json entry;
    switch (node.kind) {
      case NiceTreeDecomposition::NodeKind::kLeaf:
        entry["kind"] = "leaf";
        break;
      case NiceTreeDecomposition::NodeKind::kIntroduce:
        entry["kind"] = "introduce";
        break;
      case NiceTreeDecomposition::NodeKind::kForget:
        entry["kind"] = "forget";
        break;
      case NiceTreeDecomposition::NodeKind::kJoin:
        entry["kind"] = "join";
        break;
    }
    if (node.vertex >= 0) entry["vertex"] = node.vertex;
    entry["bag"] = json(node.bag);
    entry["children"] = json(node.children);
    nodes.push_back(std::move(entry));
  }
  doc["nodes"] = std::move(nodes);
  return dump_document(doc);
}

GraphModel parse_graph_model(const std::string& text) {
  GraphModel model;
  if (text == "clique") {
    model.kind = GraphModel::Kind::kClique;
  } else if (text == "path") {
    model.kind = GraphModel::Kind::kPath;
  } else if (text == "tree") {
    model.kind = GraphModel::Kind::kTree;
  } else if (text == "same_as_sharing_bidirected") {
    model.kind = GraphModel::Kind::kSameAsSharing;
  } else if (text.rfind("erdos_renyi:", 0) == 0) {
    model.kind = GraphModel::Kind::kErdosRenyi;
    const std::string digits = text.substr(std::string("erdos_renyi:").size());
    try {
      std::size_t used = 0;
      model.p = std::stod(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(digits);
    } catch (const std::exception&) {
      throw InputError("bad edge probability \"" + digits + "\"");
    }
    if (model.p < 0.0 || model.p > 1.0) {
      throw InputError("edge probability out of [0,1]");
    }
  } else {
    throw InputError("unknown graph model \"" + text + "\"");
  }
  return model;
}

Instance generate_random(std::uint64_t seed, int n, int m,
                         const GraphModel& sharing_model,
                         const GraphModel& attention_model, int u_max) {
  if (n < 1) throw InputError("need at least one agent");
  if (m < 0) throw InputError("negative resource count");
  if (u_max < 0) throw InputError("negative utility ceiling");
  if (sharing_model.kind == GraphModel::Kind::kSameAsSharing) {
    throw InputError(
        "same_as_sharing_bidirected is only a valid attention model");
  }

  std::mt19937_64 gen(seed);
  Instance inst;
  inst.n = n;
  inst.m = m;
  inst.sharing.assign(n, std::vector<char>(n, 0));
  inst.attention.assign(n, std::vector<char>(n, 0));

  for (const auto& [u, v] : undirected_edges(gen, sharing_model, n)) {
    inst.sharing[u][v] = inst.sharing[v][u] = 1;
  }
  if (attention_model.kind == GraphModel::Kind::kSameAsSharing) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) inst.attention[i][j] = inst.sharing[i][j];
    }
  } else if (attention_model.kind == GraphModel::Kind::kErdosRenyi) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && unit_draw(gen) < attention_model.p) {
          inst.attention[i][j] = 1;
        }
      }
    }
  } else {
    for (const auto& [u, v] : undirected_edges(gen, attention_model, n)) {
      inst.attention[u][v] = inst.attention[v][u] = 1;
    }
  }

  inst.bundle.assign(n, {});
  for (int r = 0; r < m; ++r) {
    inst.bundle[model_bounded(gen, 0, n - 1)].push_back(r);
  }
  inst.utility.assign(n, std::vector<Int>(m, 0));
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < m; ++r) {
      inst.utility[i][r] = Int(model_bounded(gen, 0, u_max));
    }
  }
  finalize_instance(inst);
  return inst;
}

}  // namespace sharing
