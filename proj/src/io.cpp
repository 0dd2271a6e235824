#include "pmcover/io.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <unordered_map>

namespace pmc {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known)
      throw Error(ErrorKind::Parse, "unknown key '" + item.key() + "' in " + where);
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw Error(ErrorKind::Parse, "missing key '" + std::string(key) + "' in " + where);
  return *it;
}

std::string require_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw Error(ErrorKind::Parse, where + " must be a string");
  return v.get<std::string>();
}

int require_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw Error(ErrorKind::Parse, where + " must be an integer");
  return v.get<int>();
}

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw Error(ErrorKind::Parse, where + " must be a number");
  return v.get<double>();
}

CostSpec parse_cost(const json& doc, const std::vector<SetSpec>& sets) {
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "'cost' must be an object");
  CostSpec cost;
  const std::string kind = require_string(require(doc, "kind", "cost"), "cost.kind");
  std::unordered_map<std::string, int> set_index;
  for (std::size_t i = 0; i < sets.size(); ++i)
    set_index.emplace(sets[i].id, static_cast<int>(i));

  if (kind == "linear") {
    reject_unknown_keys(doc, {"kind", "weights"}, "cost");
    cost.kind = CostKind::Linear;
    const json& weights = require(doc, "weights", "cost");
    if (!weights.is_object())
      throw Error(ErrorKind::Parse, "cost.weights must map set ids to weights");
    cost.weights.assign(sets.size(), Rational(0));
    std::set<std::string> seen;
    for (const auto& item : weights.items()) {
      auto it = set_index.find(item.key());
      if (it == set_index.end())
        throw Error(ErrorKind::Parse, "cost.weights names unknown set '" + item.key() + "'");
      seen.insert(item.key());
      cost.weights[it->second] = rational_of_json(item.value(), "cost.weights");
    }
    if (seen.size() != sets.size())
      throw Error(ErrorKind::Parse, "cost.weights must name every set exactly once");
  } else if (kind == "concave-cardinality") {
    reject_unknown_keys(doc, {"kind", "scale", "exponent"}, "cost");
    cost.kind = CostKind::ConcaveCardinality;
    cost.scale = require_number(require(doc, "scale", "cost"), "cost.scale");
    cost.exponent = require_number(require(doc, "exponent", "cost"), "cost.exponent");
  } else if (kind == "explicit-table") {
    reject_unknown_keys(doc, {"kind", "monotone", "entries"}, "cost");
    cost.kind = CostKind::ExplicitTable;
    const json& mono = require(doc, "monotone", "cost");
    if (!mono.is_boolean()) throw Error(ErrorKind::Parse, "cost.monotone must be a boolean");
    cost.table_monotone = mono.get<bool>();
    if (sets.size() > 16)
      throw Error(ErrorKind::Parse, "explicit-table cost is limited to 16 sets");
    const json& entries = require(doc, "entries", "cost");
    if (!entries.is_array()) throw Error(ErrorKind::Parse, "cost.entries must be an array");
    const std::size_t want = std::size_t{1} << sets.size();
    cost.table.assign(want, Rational(0));
    std::vector<char> seen(want, 0);
    for (const json& entry : entries) {
      if (!entry.is_object())
        throw Error(ErrorKind::Parse, "cost.entries items must be objects");
      reject_unknown_keys(entry, {"subset", "value"}, "cost.entries");
      const json& subset = require(entry, "subset", "cost.entries");
      if (!subset.is_array())
        throw Error(ErrorKind::Parse, "cost.entries subset must be an array of set ids");
      std::uint64_t mask = 0;
      for (const json& id : subset) {
        auto it = set_index.find(require_string(id, "cost.entries subset item"));
        if (it == set_index.end())
          throw Error(ErrorKind::Parse,
                      "cost.entries subset names unknown set '" + id.get<std::string>() + "'");
        mask |= std::uint64_t{1} << it->second;
      }
      if (seen[mask])
        throw Error(ErrorKind::Parse, "cost.entries lists a subset twice");
      seen[mask] = 1;
      cost.table[mask] = rational_of_json(require(entry, "value", "cost.entries"),
                                          "cost.entries value");
    }
    for (std::size_t mask = 0; mask < want; ++mask)
      if (!seen[mask])
        throw Error(ErrorKind::Parse,
                    "cost.entries must list a value for every sub-collection (" +
                        std::to_string(want) + " entries expected)");
  } else {
    throw Error(ErrorKind::Parse, "unknown cost kind '" + kind + "'");
  }
  return cost;
}

}  // namespace

Rational rational_of_json(const json& v, const std::string& context) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  if (v.is_string()) {
    auto parsed = parse_rational(v.get<std::string>());
    if (!parsed)
      throw Error(ErrorKind::Parse,
                  context + ": cannot parse '" + v.get<std::string>() + "' as a rational");
    return *parsed;
  }
  throw Error(ErrorKind::Parse, context + " must be a number or a rational string");
}

json json_of_rational(const Rational& r) {
  if (denominator(r) == 1 && numerator(r) >= std::numeric_limits<std::int64_t>::min() &&
      numerator(r) <= std::numeric_limits<std::int64_t>::max())
    return json(numerator(r).convert_to<std::int64_t>());
  return json(rational_to_string(r));
}

Instance parse_instance(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "instance document must be an object");
  reject_unknown_keys(doc, {"elements", "sets", "q", "cost"}, "instance");

  Instance inst;
  const json& elements = require(doc, "elements", "instance");
  if (!elements.is_array()) throw Error(ErrorKind::Parse, "'elements' must be an array");
  for (const json& e : elements) {
    if (!e.is_object()) throw Error(ErrorKind::Parse, "elements items must be objects");
    reject_unknown_keys(e, {"id", "requirement", "profit"}, "elements");
    ElementSpec spec;
    spec.id = require_string(require(e, "id", "elements"), "element id");
    spec.requirement = require_int(require(e, "requirement", "elements"), "element requirement");
    spec.profit = rational_of_json(require(e, "profit", "elements"), "element profit");
    inst.elements.push_back(std::move(spec));
  }

  const json& sets = require(doc, "sets", "instance");
  if (!sets.is_array()) throw Error(ErrorKind::Parse, "'sets' must be an array");
  for (const json& s : sets) {
    if (!s.is_object()) throw Error(ErrorKind::Parse, "sets items must be objects");
    reject_unknown_keys(s, {"id", "members"}, "sets");
    SetSpec spec;
    spec.id = require_string(require(s, "id", "sets"), "set id");
    const json& members = require(s, "members", "sets");
    if (!members.is_array()) throw Error(ErrorKind::Parse, "set members must be an array");
    for (const json& member : members)
      spec.members.push_back(require_string(member, "set member"));
    inst.sets.push_back(std::move(spec));
  }

  inst.q = rational_of_json(require(doc, "q", "instance"), "q");
  inst.cost = parse_cost(require(doc, "cost", "instance"), inst.sets);
  return inst;
}

Instance load_instance(const std::string& path, bool run_validation, const Limits& limits) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open instance file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw Error(ErrorKind::Parse, "malformed JSON in '" + path + "': " + err.what());
  }
  Instance inst = parse_instance(doc);
  if (run_validation) {
    ValidationReport report = validate(inst, limits);
    if (!report.ok()) {
      std::string msg = "instance '" + path + "' is invalid:";
      for (const auto& v : report.violations) msg += "\n  - " + v;
      throw Error(ErrorKind::InvalidInstance, msg);
    }
  } else {
    validate(inst, limits);  // still fills derived data when it can
  }
  return inst;
}

json dump_instance(const Instance& inst) {
  json doc;
  doc["elements"] = json::array();
  for (const auto& e : inst.elements)
    doc["elements"].push_back({{"id", e.id},
                               {"requirement", e.requirement},
                               {"profit", json_of_rational(e.profit)}});
  doc["sets"] = json::array();
  for (const auto& s : inst.sets)
    doc["sets"].push_back({{"id", s.id}, {"members", s.members}});
  doc["q"] = json_of_rational(inst.q);
  json cost;
  switch (inst.cost.kind) {
    case CostKind::Linear: {
      cost["kind"] = "linear";
      json weights = json::object();
      for (std::size_t i = 0; i < inst.sets.size(); ++i)
        weights[inst.sets[i].id] = json_of_rational(inst.cost.weights[i]);
      cost["weights"] = std::move(weights);
      break;
    }
    case CostKind::ConcaveCardinality:
      cost["kind"] = "concave-cardinality";
      cost["scale"] = inst.cost.scale;
      cost["exponent"] = inst.cost.exponent;
      break;
    case CostKind::ExplicitTable: {
      cost["kind"] = "explicit-table";
      cost["monotone"] = inst.cost.table_monotone;
      json entries = json::array();
      for (std::size_t mask = 0; mask < inst.cost.table.size(); ++mask) {
        json subset = json::array();
        for (std::size_t i = 0; i < inst.sets.size(); ++i)
          if (mask & (std::uint64_t{1} << i)) subset.push_back(inst.sets[i].id);
        entries.push_back({{"subset", std::move(subset)},
                           {"value", json_of_rational(inst.cost.table[mask])}});
      }
      cost["entries"] = std::move(entries);
      break;
    }
  }
  doc["cost"] = std::move(cost);
  return doc;
}

}  // namespace pmc
