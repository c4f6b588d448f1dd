#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "puiseux/betti.hpp"
#include "puiseux/error.hpp"
#include "puiseux/factorization.hpp"
#include "puiseux/invariants.hpp"
#include "puiseux/io.hpp"
#include "puiseux/monoid.hpp"
#include "puiseux/verify.hpp"

namespace puiseux::cli {

namespace {

constexpr std::size_t kDefaultTruncation = 8;

struct Options {
  std::string monoid_path;
  std::string element;
  std::size_t truncation = kDefaultTruncation;
  std::string bound;
  bool json = false;
  std::string format = "dot";
  std::string suite;
  std::size_t samples = 500;
  std::uint64_t seed = 20240601;
  std::string family;
  std::uint64_t b = 3;
  std::string q = "3/2";
  std::string output;
};

Monoid load_monoid(const Options& o, std::ostream& err) {
  MonoidSpec spec = load_spec(o.monoid_path);
  if (const auto* fg = std::get_if<FinitelyGeneratedPayload>(&spec.payload)) {
    for (const auto& g : fg->dropped) {
      err << "note: generator " << g << " is not an atom and was dropped\n";
    }
  }
  return Monoid(std::move(spec), std::max(kDefaultPrefix, o.truncation));
}

PosRational parse_rational(const std::string& text, const std::string& what) {
  try {
    return PosRational::parse(text);
  } catch (const DomainError& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

PosRational member_element(const Monoid& monoid, const Options& o) {
  const PosRational q = parse_rational(o.element, "--element");
  if (!member(monoid, q)) throw NotAMember(q.to_string() + " is not in the monoid");
  return q;
}

PosRational default_bound(const Monoid& monoid, const Options& o) {
  if (!o.bound.empty()) return parse_rational(o.bound, "--bound");
  if (monoid.kind() == MonoidKind::Geometric) {
    // Covers n(q) q^0 and n(q) q^1.
    const PosRational& q = monoid.ratio();
    return PosRational(q.num(), Integer(1)) * q;
  }
  return PosRational(1);
}

int cmd_factorizations(const Options& o, std::ostream& out, std::ostream& err) {
  const Monoid monoid = load_monoid(o, err);
  const PosRational q = member_element(monoid, o);
  const auto zset = enumerate(monoid, q, o.truncation);
  if (o.json) out << factorizations_json(monoid, zset).dump() << "\n";
  else out << factorizations_text(monoid, zset);
  return kOk;
}

int cmd_betti_graph(const Options& o, std::ostream& out, std::ostream& err) {
  const Monoid monoid = load_monoid(o, err);
  const PosRational q = member_element(monoid, o);
  const auto graph = betti_graph(enumerate(monoid, q, o.truncation));
  if (o.format == "json") {
    out << graph_json(monoid, graph).dump() << "\n";
  } else {
    out << graph_dot(monoid, graph, std::getenv("NO_COLOR") == nullptr);
  }
  return kOk;
}

int cmd_betti_set(const Options& o, std::ostream& out, std::ostream& err) {
  const Monoid monoid = load_monoid(o, err);
  if (monoid.kind() == MonoidKind::FinitelyGenerated) {
    const auto betti = betti_set_fg(monoid);
    if (o.json) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& x : betti) list.push_back(x.to_string());
      out << nlohmann::json{{"betti", list},
                            {"complete", "exact"},
                            {"scan_bound", fg_scan_bound(monoid).to_string()}}
                 .dump()
          << "\n";
    } else {
      out << join_rationals(betti) << "\n";
    }
    return kOk;
  }
  const PosRational bound = default_bound(monoid, o);
  if (monoid.kind() == MonoidKind::Geometric && monoid.ratio() > PosRational(1)) {
    const auto betti = betti_set_geometric(monoid, bound);
    if (o.json) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& x : betti) list.push_back(x.to_string());
      out << nlohmann::json{{"betti", list}, {"complete", "exact"}, {"bound", bound.to_string()}}
                 .dump()
          << "\n";
    } else {
      out << join_rationals(betti) << "\n";
    }
    return kOk;
  }
  if (monoid.kind() == MonoidKind::Geometric) {
    throw DomainError("Betti sets of geometric monoids with ratio below 1 need classify");
  }
  const auto report = betti_scan_atomized(monoid, bound, o.truncation);
  if (o.json) out << scan_json(monoid, report).dump() << "\n";
  else out << scan_text(report);
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
  const Monoid monoid = load_monoid(o, err);
  const PosRational q = parse_rational(o.element, "--element");
  if (monoid.kind() == MonoidKind::Atomized) {
    const auto verdict = classify_atomized(monoid, q, o.truncation);
    if (o.json) {
      out << verdict_json(monoid, q, verdict).dump() << "\n";
    } else {
      out << verdict_text(monoid, verdict) << "\n";
      out << "truncation: " << verdict.truncation << "\n";
    }
    return kOk;
  }
  if (!member(monoid, q)) throw NotAMember(q.to_string() + " is not in the monoid");
  const auto zset = enumerate(monoid, q, o.truncation);
  const auto graph = betti_graph(zset);
  const std::string verdict =
      !zset.exact() && graph.connected() ? "Unknown" : (graph.connected() ? "NotBetti" : "Betti");
  if (o.json) {
    out << nlohmann::json{{"element", q.to_string()},
                          {"verdict", verdict},
                          {"truncation", zset.truncation()},
                          {"complete", to_string(zset.completeness())},
                          {"vertices", zset.size()},
                          {"components", graph.components.size()}}
               .dump()
        << "\n";
  } else {
    out << verdict << " (" << (zset.exact() ? "exact enumeration" : "enumeration up to truncation")
        << "; " << zset.size() << " vertices in " << graph.components.size() << " component"
        << (graph.components.size() == 1 ? "" : "s") << ")\n";
    out << "truncation: " << zset.truncation() << "\n";
  }
  return kOk;
}

int cmd_canon(const Options& o, std::ostream& out, std::ostream& err) {
  const Monoid monoid = load_monoid(o, err);
  if (monoid.kind() != MonoidKind::Atomized) {
    throw DomainError("canonical decompositions need an atomized monoid");
  }
  const PosRational q = parse_rational(o.element, "--element");
  const auto canon = canonical_decomposition(monoid, q);
  if (!canon) throw NotAMember(q.to_string() + " is not in the monoid");
  if (o.json) out << canonical_json(monoid, q, *canon).dump() << "\n";
  else out << canonical_text(monoid, *canon) << "\n";
  return kOk;
}

int cmd_invariants(const Options& o, std::ostream& out, std::ostream& err) {
  const Monoid monoid = load_monoid(o, err);
  const PosRational q = member_element(monoid, o);
  const auto zset = enumerate(monoid, q, o.truncation);
  if (!zset.exact()) {
    throw TruncatedInput("factorizations of " + q.to_string() + " are only known up to truncation " +
                         std::to_string(zset.truncation()));
  }
  const auto report = invariants_json(zset);
  if (o.json) {
    out << report.dump() << "\n";
    return kOk;
  }
  auto join = [](const nlohmann::json& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : " ") + std::to_string(x.get<std::uint64_t>());
    return s;
  };
  out << "lengths: " << join(report["lengths"]) << "\n";
  out << "delta: " << join(report["delta"]) << "\n";
  out << "catenary: " << report["catenary"].get<std::uint64_t>() << "\n";
  return kOk;
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
  const Monoid monoid = load_monoid(o, err);
  if (monoid.kind() != MonoidKind::Atomized) throw DomainError("scan needs an atomized monoid");
  const auto report = betti_scan_atomized(monoid, default_bound(monoid, o), o.truncation);
  if (o.json) out << scan_json(monoid, report).dump() << "\n";
  else out << scan_text(report);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const Monoid monoid = load_monoid(o, err);
  SuiteOptions options;
  options.truncation = o.truncation;
  options.bound = default_bound(monoid, o);
  options.samples = o.samples;
  options.seed = o.seed;
  const SuiteResult result = run_suite(o.suite, monoid, options);
  for (const auto& line : result.lines) out << line << "\n";
  out << "suite " << result.name << ": " << (result.passed ? "PASS" : "FAIL") << "\n";
  return result.passed ? kOk : kFailure;
}

int cmd_construct(const Options& o, std::ostream& out, std::ostream&) {
  MonoidSpec spec;
  if (o.family == "prop44") spec = construct_prop44(o.b);
  else if (o.family == "grams") spec = construct_grams();
  else if (o.family == "reciprocal") spec = construct_reciprocal();
  else spec = construct_geometric(parse_rational(o.q, "--q"));
  validate(spec, kDefaultPrefix);
  const std::string text = spec_to_json(spec).dump(2) + "\n";
  if (o.output.empty() || o.output == "-") {
    out << text;
    return kOk;
  }
  std::ofstream file(o.output);
  if (!file) throw ValidationError("cannot write " + o.output);
  file << text;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Factorizations and Betti elements of Puiseux monoids", "puiseux"};
  app.require_subcommand(1);
  Options o;

  auto add_monoid = [&](CLI::App* sub) {
    sub->add_option("--monoid", o.monoid_path, "JSON monoid spec")->required();
  };
  auto add_element = [&](CLI::App* sub) {
    sub->add_option("--element", o.element, "element as a or a/b")->required();
  };
  auto add_truncate = [&](CLI::App* sub) {
    sub->add_option("--truncate", o.truncation, "number of atoms in the window")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  };
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "JSON output"); };
  auto add_bound = [&](CLI::App* sub) {
    sub->add_option("--bound", o.bound, "largest element scanned");
  };

  std::vector<std::pair<CLI::App*, std::function<int(const Options&, std::ostream&, std::ostream&)>>> commands;

  auto* factorizations = app.add_subcommand("factorizations", "list factorizations of an element");
  add_monoid(factorizations);
  add_element(factorizations);
  add_truncate(factorizations);
  add_json(factorizations);
  commands.emplace_back(factorizations, cmd_factorizations);

  auto* graph = app.add_subcommand("betti-graph", "export the Betti graph of an element");
  add_monoid(graph);
  add_element(graph);
  add_truncate(graph);
  graph->add_option("--format", o.format, "dot or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"dot", "json"}));
  commands.emplace_back(graph, cmd_betti_graph);

  auto* betti_set = app.add_subcommand("betti-set", "Betti elements of a monoid");
  add_monoid(betti_set);
  add_bound(betti_set);
  add_truncate(betti_set);
  add_json(betti_set);
  commands.emplace_back(betti_set, cmd_betti_set);

  auto* classify = app.add_subcommand("classify", "decide whether an element is Betti");
  add_monoid(classify);
  add_element(classify);
  add_truncate(classify);
  add_json(classify);
  commands.emplace_back(classify, cmd_classify);

  auto* canon = app.add_subcommand("canon", "canonical decomposition in an atomized monoid");
  add_monoid(canon);
  add_element(canon);
  add_json(canon);
  commands.emplace_back(canon, cmd_canon);

  auto* invariants = app.add_subcommand("invariants", "lengths, delta set and catenary degree");
  add_monoid(invariants);
  add_element(invariants);
  add_truncate(invariants);
  add_json(invariants);
  commands.emplace_back(invariants, cmd_invariants);

  auto* scan = app.add_subcommand("scan", "classify every candidate up to a bound");
  add_monoid(scan);
  add_bound(scan);
  add_truncate(scan);
  add_json(scan);
  commands.emplace_back(scan, cmd_scan);

  auto* verify = app.add_subcommand("verify", "run a property suite");
  add_monoid(verify);
  add_truncate(verify);
  add_bound(verify);
  verify->add_option("--suite", o.suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"thm42", "cor43", "prop21", "lemma41"}));
  verify->add_option("--samples", o.samples, "random members for lemma41")->capture_default_str();
  verify->add_option("--seed", o.seed, "random seed for lemma41")->capture_default_str();
  commands.emplace_back(verify, cmd_verify);

  auto* construct = app.add_subcommand("construct", "write the spec of a named family");
  construct->add_option("--family", o.family, "family name")
      ->required()
      ->check(CLI::IsMember({"prop44", "grams", "reciprocal", "geometric"}));
  construct->add_option("--b", o.b, "period for prop44")->capture_default_str();
  construct->add_option("--q", o.q, "ratio for geometric")->capture_default_str();
  construct->add_option("-o,--output", o.output, "output file (stdout when omitted)");
  commands.emplace_back(construct, cmd_construct);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }

  try {
    for (const auto& [sub, handler] : commands) {
      if (sub->parsed()) return handler(o, out, err);
    }
    return kFailure;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kValidation;
  } catch (const TruncationTooSmall& e) {
    err << "truncation too small: " << e.what() << "\n";
    return kTruncation;
  } catch (const PrefixTooSmall& e) {
    err << "prefix too small: " << e.what() << "\n";
    return kTruncation;
  } catch (const TruncatedInput& e) {
    err << "truncated input: " << e.what() << "\n";
    return kTruncation;
  } catch (const NotAMember& e) {
    err << "not a member: " << e.what() << "\n";
    return kNotAMember;
  }
}

}  // namespace puiseux::cli
