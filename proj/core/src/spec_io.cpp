#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kronspin/errors.hpp"
#include "kronspin/io.hpp"

namespace kronspin {

namespace {

using nlohmann::json;

// 1-based (line, column) of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"", 0, 0);
  return *it;
}

int as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ParseError(what + " must be an integer", 0, 0);
  const auto value = v.get<long long>();
  if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
    throw ParseError(what + " out of range", 0, 0);
  }
  return static_cast<int>(value);
}

double as_real(const json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError(what + " must be a number", 0, 0);
  return v.get<double>();
}

}  // namespace

HamiltonianSpec parse_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, column] = locate(json_text, offset);
    throw ParseError("spec: malformed JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(column),
                     line, column);
  }
  if (!doc.is_object()) throw ParseError("spec: top level must be an object", 1, 1);

  const int n_sites = as_int(field(doc, "n_sites", "spec"), "n_sites");
  const double mu_b0 = as_real(field(doc, "mu_b0", "spec"), "mu_b0");
  std::vector<CouplingEdge> edges;
  if (auto it = doc.find("couplings"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("couplings must be an array", 0, 0);
    std::size_t k = 0;
    for (const json& c : *it) {
      const std::string where = "couplings[" + std::to_string(k++) + "]";
      if (!c.is_object()) throw ParseError(where + " must be an object", 0, 0);
      edges.push_back({as_int(field(c, "i", where), where + ".i"),
                       as_int(field(c, "j", where), where + ".j"),
                       as_real(field(c, "J", where), where + ".J")});
    }
  }
  return HamiltonianSpec(n_sites, mu_b0, std::move(edges));
}

HamiltonianSpec read_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spec(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

std::string format_spec(const HamiltonianSpec& spec) {
  json couplings = json::array();
  for (const CouplingEdge& e : spec.couplings()) {
    couplings.push_back({{"i", e.i}, {"j", e.j}, {"J", e.strength}});
  }
  json doc = {{"n_sites", spec.n_sites()}, {"mu_b0", spec.mu_b0()}, {"couplings", couplings}};
  return doc.dump();
}

std::string spec_hash(const HamiltonianSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : format_spec(spec)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace kronspin
