// exchg: checks, samplers and estimators for exchangeable combinatorial data.
// Exit codes: 0 = success/pass, 1 = a check failed (witness printed),
// 2 = usage, parse or input error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "exchg/json_io.hpp"
#include "exchg/parser.hpp"
#include "exchg/sep.hpp"
#include "exchg/stats.hpp"

using namespace exchg;

namespace {

struct Options {
  std::string structure_expr;
  std::string indexing_expr;
  int n = 3;
  std::uint64_t seed = 0;
  int count = 1;
  std::string law_path;
  std::string kernels_path;
  std::string out_path;
  std::string format;  // json|csv|jsonl; verbs pick a sensible default
  double tolerance = 0.05;
  std::string x_path;
  std::string y_path;
  std::string sequence_path;
  std::string targets_path;
  std::string stat_name = "indicator";
  bool check_independence = false;
  bool check_exchangeable = false;
};

std::ostream& out_stream(const Options& opt, std::ofstream& file) {
  if (opt.out_path.empty()) return std::cout;
  file.open(opt.out_path);
  if (!file) throw Error("io", "cannot open " + opt.out_path + " for writing");
  return file;
}

int finish_report(const Options& opt, const CheckReport& report) {
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  os << to_json(report).dump(2) << "\n";
  if (report.pass) {
    os << "pass\n";
    return 0;
  }
  os << "fail: " << report.message;
  if (!report.witness_value.empty())
    os << " (witness " << report.witness_value << " = "
       << to_double(parse_rational(report.witness_value)) << ")";
  os << "\n";
  return 1;
}

// {"ids":[...], "element": term}
std::pair<IdSet, Elem> load_observation(const std::string& path) {
  Json j = read_json_file(path);
  return {idset_from_json(j.at("ids")), elem_from_json(j.at("element"))};
}

KernelStatistic make_statistic(const Options& opt, const DataStructure& d) {
  if (opt.stat_name == "first_entry") return KernelStatistic::first_entry(d);
  if (opt.stat_name == "indicator") {
    if (opt.x_path.empty())
      throw Error("usage", "the indicator statistic needs --x <pattern file>");
    auto [ids, pattern] = load_observation(opt.x_path);
    if (ids != IdSet::range(ids.size()))
      throw Error("usage", "indicator patterns must live on a standard [k]");
    return KernelStatistic::indicator(d, ids.size(), pattern);
  }
  throw Error("usage", "unknown statistic '" + opt.stat_name +
                           "' (expected indicator or first_entry)");
}

int run_axioms(const Options& opt) {
  IndexingSystem is = parse_indexing(opt.indexing_expr);
  return finish_report(opt, is.check_axioms(opt.n));
}

int run_skeleton(const Options& opt) {
  IndexingSystem is = parse_indexing(opt.indexing_expr);
  Skeleton sk = is.skeleton(opt.n);
  Json reps = Json::array();
  for (const Index& rep : sk.representatives())
    reps.push_back({{"index", to_json(rep)},
                    {"dom", to_json(is.dom(rep))},
                    {"stab_order", is.stab(rep).size()}});
  std::ofstream file;
  out_stream(opt, file) << Json{{"indexing", is.to_string()},
                                {"max_size", opt.n},
                                {"representatives", reps}}
                               .dump(2)
                        << "\n";
  return 0;
}

int run_depth(const Options& opt) {
  DataStructure d = parse_structure(opt.structure_expr);
  DepthResult r = d.depth(opt.n);
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  if (opt.format == "json")
    os << Json{{"k", r.k}, {"certified", r.certified}}.dump() << "\n";
  else
    os << r.k << "\n";
  return 0;
}

int run_elements(const Options& opt) {
  DataStructure d = parse_structure(opt.structure_expr);
  const std::vector<Elem>& elems = d.elements(IdSet::range(opt.n));
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  if (opt.format == "jsonl") {
    for (const Elem& x : elems) os << to_json(x).dump() << "\n";
  } else if (opt.format == "csv") {
    for (const Elem& x : elems) os << x.to_string() << "\n";
  } else {
    Json arr = Json::array();
    for (const Elem& x : elems) arr.push_back(to_json(x));
    os << arr.dump(2) << "\n";
  }
  return 0;
}

int run_law_check(const Options& opt) {
  FiniteLaw law = load_law(opt.law_path);
  bool default_checks = !opt.check_independence && !opt.check_exchangeable;
  CheckReport report = law.validate_consistency();
  if (report.pass && (default_checks || opt.check_exchangeable))
    report = law.check_exchangeable();
  if (report.pass && opt.check_independence) report = law.check_independence();
  return finish_report(opt, report);
}

int run_sample(const Options& opt) {
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  std::optional<DataStructure> shape;
  if (!opt.structure_expr.empty())
    shape = parse_structure(opt.structure_expr);

  for (int c = 0; c < opt.count; ++c) {
    std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(c);
    Elem x = [&] {
      if (!opt.law_path.empty())
        return sample_measurement(load_law(opt.law_path), opt.n, seed);
      if (!opt.kernels_path.empty())
        return sample_array(load_sampler(opt.kernels_path), opt.n, seed);
      if (shape && shape->display_name() == "total")
        return sample_total_order(opt.n, seed);
      throw Error("usage", "sample needs --kernels, --law, or --structure total");
    }();
    if (shape && !shape->element_of(IdSet::range(opt.n), x))
      throw Error("membership", "sampled value does not inhabit the declared "
                                "structure");
    Json j{{"ids", to_json(IdSet::range(opt.n))}, {"element", to_json(x)}};
    os << (opt.format == "jsonl" ? j.dump() : j.dump(2)) << "\n";
  }
  return 0;
}

void print_value(const Options& opt, const std::string& name,
                 const Rational& v) {
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  if (opt.format == "csv")
    os << name << "," << to_string(v) << "," << to_double(v) << "\n";
  else
    os << Json{{name, to_string(v)}, {"decimal", to_double(v)}}.dump() << "\n";
}

int run_density(const Options& opt) {
  DataStructure d = parse_structure(opt.structure_expr);
  auto [b, x] = load_observation(opt.x_path);
  auto [a, y] = load_observation(opt.y_path);
  print_value(opt, "density", density(d, b, x, a, y));
  return 0;
}

int run_avg(const Options& opt) {
  DataStructure d = parse_structure(opt.structure_expr);
  KernelStatistic stat = make_statistic(opt, d);
  auto [a, y] = load_observation(opt.y_path);
  print_value(opt, "avg", empirical_average(stat, a, y));
  return 0;
}

int run_ustat(const Options& opt) {
  FiniteLaw law = load_law(opt.law_path);
  KernelStatistic stat = make_statistic(opt, law.structure());
  UStatCovariances u = u_stat_covariances(law, stat);
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  if (opt.format == "csv") {
    for (size_t l = 0; l < u.c.size(); ++l)
      os << "c_" << l << "," << to_string(u.c[l]) << "," << to_double(u.c[l])
         << "\n";
    os << "sigma2," << to_string(u.sigma2_limit) << ","
       << to_double(u.sigma2_limit) << "\n";
  } else {
    Json c = Json::array();
    for (const Rational& v : u.c) c.push_back(to_string(v));
    os << Json{{"c", c}, {"sigma2", to_string(u.sigma2_limit)}}.dump(2) << "\n";
  }
  return 0;
}

std::vector<std::pair<IdSet, Elem>> load_observations(const std::string& path) {
  Json j = read_json_file(path);
  if (!j.is_array()) throw Error("parse", path + ": expected a JSON array");
  std::vector<std::pair<IdSet, Elem>> out;
  for (const Json& entry : j)
    out.emplace_back(idset_from_json(entry.at("ids")),
                     elem_from_json(entry.at("element")));
  return out;
}

int run_limit(const Options& opt) {
  DataStructure d = parse_structure(opt.structure_expr);
  std::vector<std::pair<IdSet, Elem>> sequence =
      load_observations(opt.sequence_path);
  std::vector<std::pair<IdSet, Elem>> targets =
      load_observations(opt.targets_path);
  LimitReport report = limit_estimate(d, sequence, targets, opt.tolerance);
  Json rows = Json::array();
  for (const LimitReport::Row& row : report.rows) {
    Json values = Json::array();
    for (const Rational& v : row.values) values.push_back(to_double(v));
    rows.push_back({{"n", row.n}, {"values", values}});
  }
  Json converged = Json::array();
  for (bool c : report.converged) converged.push_back(c);
  std::ofstream file;
  out_stream(opt, file) << Json{{"rows", rows},
                                {"converged", converged},
                                {"all_converged", report.all_converged}}
                               .dump(2)
                        << "\n";
  return report.all_converged ? 0 : 1;
}

int run_embed(const Options& opt) {
  DataStructure d = parse_structure(opt.structure_expr);
  NaturalTransformation eta = universal_embedding(d, opt.n);
  CheckReport injective = check_embedding_injective(eta, opt.n);
  if (!injective.pass) return finish_report(opt, injective);
  return finish_report(opt, check_naturality(eta, opt.n));
}

int run_build_nat(const Options& opt) {
  KernelFamily family = load_kernels(opt.kernels_path);
  CheckReport valid = family.validate();
  if (!valid.pass) return finish_report(opt, valid);
  NaturalTransformation eta = build_from_kernels(family);
  return finish_report(opt, check_naturality(eta, opt.n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exchangeable laws on combinatorial data structures"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--structure", opt.structure_expr, "data structure DSL");
    sub->add_option("--indexing", opt.indexing_expr, "indexing system DSL");
    sub->add_option("--n,--n-max", opt.n, "level bound");
    sub->add_option("--seed", opt.seed, "randomizer seed");
    sub->add_option("--count", opt.count, "number of samples");
    sub->add_option("--law", opt.law_path, "law file (JSON)");
    sub->add_option("--kernels", opt.kernels_path, "kernel file (JSON)");
    sub->add_option("--out", opt.out_path, "output path (default stdout)");
    sub->add_option("--format", opt.format, "json|csv|jsonl");
    sub->add_option("--tolerance", opt.tolerance, "convergence tolerance");
    sub->add_option("--x", opt.x_path, "pattern observation file");
    sub->add_option("--y", opt.y_path, "observation file");
    sub->add_option("--sequence", opt.sequence_path, "observation list file");
    sub->add_option("--targets", opt.targets_path, "target pattern list file");
    sub->add_option("--stat", opt.stat_name, "indicator|first_entry");
    sub->add_flag("--independence", opt.check_independence,
                  "check independence");
    sub->add_flag("--exchangeable", opt.check_exchangeable,
                  "check exchangeability");
    return sub;
  };

  struct Verb {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Verb verbs[] = {
      {"axioms", "check indexing-system axioms", run_axioms},
      {"skeleton", "list skeleton representatives", run_skeleton},
      {"depth", "determination depth of a structure", run_depth},
      {"elements", "enumerate elements over [n]", run_elements},
      {"law-check", "validate a finite law", run_law_check},
      {"sample", "draw from kernels, a law, or the order sampler", run_sample},
      {"density", "pattern density of x in y", run_density},
      {"avg", "empirical average of a statistic", run_avg},
      {"ustat", "overlap covariances of a statistic", run_ustat},
      {"limit", "density trajectory along a sequence", run_limit},
      {"embed", "universal embedding injectivity", run_embed},
      {"build-nat", "build a transformation from kernel tables", run_build_nat},
  };
  for (const Verb& v : verbs) add_common(app.add_subcommand(v.name, v.help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0
  }

  try {
    for (const Verb& v : verbs)
      if (app.get_subcommand(v.name)->parsed()) return v.run(opt);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error (" << e.kind() << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
