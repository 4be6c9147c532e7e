#include "mkit/algebra_io.hpp"

#include <fstream>
#include <map>

namespace mkit {

FiniteAlgebra algebra_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("algebra document must be an object");
  if (!doc.contains("size") || !doc["size"].is_number_integer())
    throw ValidationError("algebra document needs an integer 'size'");
  std::string name = doc.value("name", "unnamed");
  int size = doc["size"].get<int>();
  std::vector<Operation> ops;
  if (doc.contains("operations")) {
    if (!doc["operations"].is_array())
      throw ValidationError("'operations' must be an array");
    for (const auto& op : doc["operations"]) {
      if (!op.contains("name") || !op.contains("arity") || !op.contains("table"))
        throw ValidationError("each operation needs 'name', 'arity' and 'table'");
      Operation o;
      o.name = op["name"].get<std::string>();
      o.arity = op["arity"].get<int>();
      o.table = op["table"].get<std::vector<int>>();
      ops.push_back(std::move(o));
    }
  }
  return FiniteAlgebra(std::move(name), size, std::move(ops));
}

Json algebra_to_json(const FiniteAlgebra& a) {
  Json doc;
  doc["name"] = a.name();
  doc["size"] = a.size();
  doc["operations"] = Json::array();
  for (const Operation& op : a.operations()) {
    Json o;
    o["name"] = op.name;
    o["arity"] = op.arity;
    o["table"] = op.table;
    doc["operations"].push_back(std::move(o));
  }
  return doc;
}

FiniteAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open algebra file '" + path + "'");
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ValidationError("invalid JSON in '" + path + "': " + e.what());
  }
  return algebra_from_json(doc);
}

Json relation_to_json(const BinaryRelation& r) {
  Json rows = Json::array();
  for (int i = 0; i < r.size(); ++i) {
    std::string row(r.size(), '0');
    for (int j = 0; j < r.size(); ++j)
      if (r.test(i, j)) row[j] = '1';
    rows.push_back(row);
  }
  return rows;
}

BinaryRelation relation_from_json(const Json& doc) {
  if (!doc.is_array()) throw ValidationError("relation must be an array of rows");
  int n = static_cast<int>(doc.size());
  BinaryRelation r(n);
  for (int i = 0; i < n; ++i) {
    std::string row = doc[i].get<std::string>();
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("relation row length mismatch");
    for (int j = 0; j < n; ++j)
      if (row[j] == '1') r.set(i, j);
  }
  return r;
}

std::string partition_to_string(const Congruence& c) {
  std::map<int, std::vector<int>> blocks;
  for (int i = 0; i < c.size(); ++i) blocks[c.rep()[i]].push_back(i);
  std::string out;
  bool first_block = true;
  for (const auto& [rep, members] : blocks) {
    if (!first_block) out += '|';
    first_block = false;
    for (size_t i = 0; i < members.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(members[i]);
    }
  }
  return out;
}

}  // namespace mkit
