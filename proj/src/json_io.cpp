#include "exchg/json_io.hpp"

#include <cmath>
#include <fstream>

#include "exchg/parser.hpp"

namespace exchg {

Rational parse_rational(const std::string& text) {
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    long long num = std::stoll(text.substr(0, slash));
    long long den = std::stoll(text.substr(slash + 1));
    return Rational(num, den);
  } catch (const std::exception&) {
    throw Error("parse", "cannot read '" + text + "' as a rational");
  }
}

namespace {

// Stern-Brocot best approximation with bounded denominator; exact for any
// double that is a ratio of small integers.
Rational approximate(double v) {
  if (!std::isfinite(v)) throw Error("domain", "non-finite mass");
  bool negative = v < 0;
  double x = std::abs(v);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    long long a = static_cast<long long>(std::floor(frac));
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > 1000000000LL) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <
        1e-12)
      break;
    double rem = frac - static_cast<double>(a);
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rational r(p1, q1);
  return negative ? -r : r;
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return approximate(j.get<double>());
  throw Error("parse", "mass must be a \"p/q\" string or a number");
}

Json to_json(const IdSet& a) { return Json(a.labels()); }

IdSet idset_from_json(const Json& j) {
  if (!j.is_array()) throw Error("parse", "ID set must be a JSON array");
  return IdSet(j.get<std::vector<int>>());
}

Json to_json(const Injection& tau) {
  Json map = Json::array();
  for (const auto& [s, t] : tau.pairs()) map.push_back({s, t});
  return Json{{"dom", to_json(tau.dom())},
              {"cod", to_json(tau.cod())},
              {"map", map}};
}

Injection injection_from_json(const Json& j) {
  std::vector<std::pair<int, int>> pairs;
  for (const Json& entry : j.at("map"))
    pairs.emplace_back(entry.at(0).get<int>(), entry.at(1).get<int>());
  return Injection(idset_from_json(j.at("dom")), idset_from_json(j.at("cod")),
                   std::move(pairs));
}

Json to_json(const Index& i) {
  switch (i.kind()) {
    case Index::Kind::Atom:
      return Json(i.label());
    case Index::Kind::Tuple: {
      Json kids = Json::array();
      for (const Index& c : i.children()) kids.push_back(to_json(c));
      return Json{{"tuple", kids}};
    }
    case Index::Kind::Set: {
      Json kids = Json::array();
      for (const Index& c : i.children()) kids.push_back(to_json(c));
      return Json{{"set", kids}};
    }
    case Index::Kind::Pair:
      return Json{{"slot", i.slot()}, {"index", to_json(i.children()[0])}};
  }
  throw Error("parse", "unreachable index kind");
}

Index index_from_json(const Json& j) {
  if (j.is_number_integer()) return Index::atom(j.get<int>());
  if (j.is_object()) {
    if (j.contains("tuple")) {
      std::vector<Index> kids;
      for (const Json& c : j.at("tuple")) kids.push_back(index_from_json(c));
      return Index::tuple(std::move(kids));
    }
    if (j.contains("set")) {
      std::vector<Index> kids;
      for (const Json& c : j.at("set")) kids.push_back(index_from_json(c));
      return Index::set(std::move(kids));
    }
    if (j.contains("slot"))
      return Index::pair(j.at("slot").get<int>(),
                         index_from_json(j.at("index")));
  }
  throw Error("parse", "malformed index term: " + j.dump());
}

Json to_json(const Elem& x) {
  switch (x.kind()) {
    case Elem::Kind::Array: {
      Json entries = Json::array();
      for (const auto& [i, v] : x.entries())
        entries.push_back({{"index", to_json(i)}, {"value", v}});
      return Json{{"array", entries}};
    }
    case Elem::Kind::SetSystem: {
      Json sets = Json::array();
      for (const IdSet& s : x.sets()) sets.push_back(to_json(s));
      return Json{{"sets", sets}};
    }
    case Elem::Kind::Graph1: {
      Json edges = Json::array();
      for (const IdSet& e : x.sets()) edges.push_back(to_json(e));
      return Json{{"vertices", to_json(x.vertices())}, {"edges", edges}};
    }
    case Elem::Kind::Pair:
      return Json{{"pair", {to_json(x.left()), to_json(x.right())}}};
    case Elem::Kind::Tagged:
      return Json{{"tag", x.tag()}, {"value", to_json(x.inner())}};
  }
  throw Error("parse", "unreachable element kind");
}

Elem elem_from_json(const Json& j) {
  if (!j.is_object()) throw Error("parse", "malformed element term: " + j.dump());
  if (j.contains("array")) {
    std::vector<std::pair<Index, int>> entries;
    for (const Json& e : j.at("array"))
      entries.emplace_back(index_from_json(e.at("index")),
                           e.at("value").get<int>());
    return Elem::array(std::move(entries));
  }
  if (j.contains("sets")) {
    std::vector<IdSet> sets;
    for (const Json& s : j.at("sets")) sets.push_back(idset_from_json(s));
    return Elem::setsystem(std::move(sets));
  }
  if (j.contains("vertices")) {
    std::vector<IdSet> edges;
    for (const Json& e : j.at("edges")) edges.push_back(idset_from_json(e));
    return Elem::graph1(idset_from_json(j.at("vertices")), std::move(edges));
  }
  if (j.contains("pair"))
    return Elem::pair(elem_from_json(j.at("pair").at(0)),
                      elem_from_json(j.at("pair").at(1)));
  if (j.contains("tag"))
    return Elem::tagged(j.at("tag").get<int>(), elem_from_json(j.at("value")));
  throw Error("parse", "malformed element term: " + j.dump());
}

Json to_json(const CheckReport& report) {
  Json j{{"pass", report.pass}};
  if (!report.check.empty()) j["check"] = report.check;
  if (!report.message.empty()) j["message"] = report.message;
  if (!report.witness_sets.empty()) {
    Json sets = Json::array();
    for (const IdSet& s : report.witness_sets) sets.push_back(to_json(s));
    j["witness_sets"] = sets;
  }
  if (report.witness_injection)
    j["witness_injection"] = to_json(*report.witness_injection);
  if (report.witness_index) j["witness_index"] = to_json(*report.witness_index);
  if (!report.witness_value.empty()) j["witness_value"] = report.witness_value;
  return j;
}

Json law_to_json(const FiniteLaw& law) {
  Json tables = Json::object();
  DataStructure d = law.structure();
  for (int n = 0; n <= law.n_max(); ++n) {
    Json level = Json::array();
    const std::vector<Elem>& elems = d.elements(IdSet::range(n));
    for (size_t i = 0; i < elems.size(); ++i)
      level.push_back({{"element", to_json(elems[i])},
                       {"mass", to_string(law.table(n)[i])}});
    tables[std::to_string(n)] = level;
  }
  return Json{{"structure", d.to_string()},
              {"n_max", law.n_max()},
              {"tables", tables}};
}

FiniteLaw law_from_json(const Json& j) {
  DataStructure d = parse_structure(j.at("structure").get<std::string>());
  int n_max = j.at("n_max").get<int>();
  std::vector<std::vector<Rational>> tables;
  for (int n = 0; n <= n_max; ++n) {
    const Json& level = j.at("tables").at(std::to_string(n));
    const std::vector<Elem>& elems = d.elements(IdSet::range(n));
    std::vector<Rational> table(elems.size(), Rational(0));
    for (const Json& entry : level) {
      Elem x = elem_from_json(entry.at("element"));
      auto it = std::lower_bound(elems.begin(), elems.end(), x);
      if (it == elems.end() || !(*it == x))
        throw Error("membership", "law entry " + x.to_string() +
                                      " is not an element at level " +
                                      std::to_string(n));
      table[static_cast<size_t>(it - elems.begin())] +=
          rational_from_json(entry.at("mass"));
    }
    tables.push_back(std::move(table));
  }
  return FiniteLaw(std::move(d), n_max, std::move(tables));
}

Json kernels_to_json(const KernelFamily& family) {
  Json kernels = Json::array();
  for (const auto& [rep, table] : family.kernels) {
    Json rows = Json::array();
    for (const auto& [x, sym] : table)
      rows.push_back({{"input", to_json(x)}, {"output", sym}});
    kernels.push_back({{"rep", to_json(rep)}, {"table", rows}});
  }
  return Json{{"source", family.source.to_string()},
              {"indexing", family.indexing.to_string()},
              {"alphabet", family.target_alphabet},
              {"max_rep_size", family.max_rep_size},
              {"kernels", kernels}};
}

KernelFamily kernels_from_json(const Json& j) {
  KernelFamily family{parse_structure(j.at("source").get<std::string>()),
                      j.at("alphabet").get<std::vector<int>>(),
                      parse_indexing(j.at("indexing").get<std::string>()),
                      j.value("max_rep_size", 3),
                      {}};
  for (const Json& k : j.at("kernels")) {
    std::map<Elem, int> table;
    for (const Json& row : k.at("table"))
      table[elem_from_json(row.at("input"))] = row.at("output").get<int>();
    family.kernels[index_from_json(k.at("rep"))] = std::move(table);
  }
  return family;
}

SamplerKernelFamily sampler_from_json(const Json& j) {
  SamplerKernelFamily family{parse_indexing(j.at("indexing").get<std::string>()),
                             j.at("alphabet").get<std::vector<int>>(),
                             {},
                             j.value("depth", -1)};
  for (const Json& k : j.at("kernels")) {
    Index rep = index_from_json(k.at("rep"));
    const Json& rule = k.at("rule");
    std::string type = rule.at("type").get<std::string>();
    if (type == "threshold") {
      IdSet subset = idset_from_json(rule.at("subset"));
      double p = rule.at("p").get<double>();
      family.kernels[rep] = [subset, p](const SamplerKernelFamily::Uniforms& u) {
        return u(subset) < p ? 1 : 0;
      };
    } else if (type == "compare") {
      IdSet less = idset_from_json(rule.at("less"));
      IdSet greater = idset_from_json(rule.at("greater"));
      family.kernels[rep] =
          [less, greater](const SamplerKernelFamily::Uniforms& u) {
            return u(less) < u(greater) ? 1 : 0;
          };
    } else {
      throw Error("parse", "unknown sampler rule type '" + type + "'");
    }
  }
  return family;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw Error("parse", std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

FiniteLaw load_law(const std::string& path) {
  return law_from_json(read_json_file(path));
}

KernelFamily load_kernels(const std::string& path) {
  return kernels_from_json(read_json_file(path));
}

SamplerKernelFamily load_sampler(const std::string& path) {
  return sampler_from_json(read_json_file(path));
}

}  // namespace exchg
