#include "puiseux/io.hpp"

#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "puiseux/error.hpp"

namespace puiseux {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& required,
                const std::set<std::string>& optional, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!required.count(key) && !optional.count(key)) {
      throw ValidationError("unknown key '" + key + "' in " + where);
    }
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) throw ValidationError("missing key '" + key + "' in " + where);
  }
}

PosRational rational_field(const json& v, const std::string& where) {
  if (!v.is_string()) throw ValidationError(where + " must be a rational string \"a/b\"");
  try {
    return PosRational::parse(v.get<std::string>());
  } catch (const DomainError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

std::uint64_t unsigned_field(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) throw ValidationError(where + " must be a positive integer");
  return v.get<std::uint64_t>();
}

BaseFamily base_from_json(const json& obj) {
  if (!obj.is_object() || !obj.contains("variant")) {
    throw ValidationError("base needs a 'variant'");
  }
  const std::string variant = obj.at("variant").get<std::string>();
  if (variant == "cyclic_list") {
    check_keys(obj, {"variant", "values"}, {}, "base");
    if (!obj.at("values").is_array()) throw ValidationError("base.values must be an array");
    CyclicList cyc;
    for (const auto& v : obj.at("values")) cyc.values.push_back(rational_field(v, "base.values"));
    return cyc;
  }
  if (variant == "unit_fraction_geometric") {
    check_keys(obj, {"variant", "m"}, {}, "base");
    return UnitFractionGeometric{unsigned_field(obj.at("m"), "base.m")};
  }
  throw ValidationError("unknown base variant '" + variant + "'");
}

PrimeRule primes_from_json(const json& obj) {
  if (!obj.is_object() || !obj.contains("variant")) {
    throw ValidationError("primes needs a 'variant'");
  }
  const std::string variant = obj.at("variant").get<std::string>();
  if (variant == "all_primes_ascending") {
    check_keys(obj, {"variant"}, {}, "primes");
    return AllPrimesAscending{};
  }
  if (variant == "odd_primes_ascending") {
    check_keys(obj, {"variant"}, {}, "primes");
    return OddPrimesAscending{};
  }
  if (variant == "primes_above") {
    check_keys(obj, {"variant", "b"}, {}, "primes");
    return PrimesAbove{unsigned_field(obj.at("b"), "primes.b")};
  }
  if (variant == "explicit_list") {
    check_keys(obj, {"variant", "primes"}, {}, "primes");
    if (!obj.at("primes").is_array()) throw ValidationError("primes.primes must be an array");
    ExplicitList list;
    for (const auto& p : obj.at("primes")) list.primes.push_back(unsigned_field(p, "primes.primes"));
    return list;
  }
  throw ValidationError("unknown primes variant '" + variant + "'");
}

json rationals_json(const std::vector<PosRational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

std::string term_string(Multiplicity c, const std::string& label) {
  return std::to_string(c) + "(" + label + ")";
}

// Labels for a set of positions: atom values unless two collide.
std::map<Position, std::string> labels_for(const Monoid& monoid, const std::set<Position>& positions) {
  std::map<Position, std::string> labels;
  std::set<std::string> used;
  bool collision = false;
  for (Position p : positions) {
    auto label = atom_label(monoid, p);
    collision = collision || !used.insert(label).second;
    labels[p] = std::move(label);
  }
  if (collision) {
    for (auto& [p, label] : labels) label = "idx:" + std::to_string(monoid.display_index(p));
  }
  return labels;
}

std::string render(const std::map<Position, std::string>& labels, const Factorization& z) {
  if (z.empty()) return "0";
  std::string out;
  for (const auto& [pos, mult] : z.terms()) {
    if (!out.empty()) out += "+";
    out += term_string(mult, labels.at(pos));
  }
  return out;
}

std::set<Position> positions_of(const std::vector<Factorization>& zs) {
  std::set<Position> out;
  for (const auto& z : zs) {
    for (const auto& [pos, mult] : z.terms()) out.insert(pos);
  }
  return out;
}

}  // namespace

MonoidSpec spec_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string()) {
    throw ValidationError("monoid spec needs a string 'kind'");
  }
  const std::string kind = doc.at("kind").get<std::string>();
  MonoidSpec spec;
  if (kind == "finitely_generated") {
    // "atoms" must already be minimal; "generators" is reduced to the atoms.
    const bool reduce = doc.contains("generators");
    const std::string key = reduce ? "generators" : "atoms";
    check_keys(doc, {"kind", key}, {"index_origin"}, "monoid spec");
    if (!doc.at(key).is_array()) throw ValidationError(key + " must be an array");
    std::vector<PosRational> gens;
    for (const auto& a : doc.at(key)) gens.push_back(rational_field(a, key));
    spec.payload = reduce ? reduce_generators(std::move(gens)) : FinitelyGeneratedPayload{gens, {}};
    spec.index_origin = 1;
  } else if (kind == "atomized") {
    check_keys(doc, {"kind", "base", "primes"}, {"index_origin"}, "monoid spec");
    spec.payload = AtomizedPayload{base_from_json(doc.at("base")), primes_from_json(doc.at("primes"))};
    spec.index_origin = 1;
  } else if (kind == "geometric") {
    check_keys(doc, {"kind", "q"}, {"index_origin"}, "monoid spec");
    spec.payload = GeometricPayload{rational_field(doc.at("q"), "q")};
    spec.index_origin = 0;
  } else {
    throw ValidationError("unknown monoid kind '" + kind + "'");
  }
  if (doc.contains("index_origin")) {
    const auto& origin = doc.at("index_origin");
    if (!origin.is_number_integer()) throw ValidationError("index_origin must be 0 or 1");
    spec.index_origin = origin.get<int>();
  }
  return spec;
}

json spec_to_json(const MonoidSpec& spec) {
  json doc;
  std::visit(
      [&](const auto& payload) {
        using P = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<P, FinitelyGeneratedPayload>) {
          doc["kind"] = "finitely_generated";
          doc["atoms"] = rationals_json(payload.atoms);
        } else if constexpr (std::is_same_v<P, GeometricPayload>) {
          doc["kind"] = "geometric";
          doc["q"] = payload.q.to_string();
        } else {
          doc["kind"] = "atomized";
          if (const auto* cyc = std::get_if<CyclicList>(&payload.base)) {
            doc["base"] = {{"variant", "cyclic_list"}, {"values", rationals_json(cyc->values)}};
          } else {
            doc["base"] = {{"variant", "unit_fraction_geometric"},
                           {"m", std::get<UnitFractionGeometric>(payload.base).m}};
          }
          std::visit(
              [&](const auto& rule) {
                using R = std::decay_t<decltype(rule)>;
                if constexpr (std::is_same_v<R, AllPrimesAscending>) {
                  doc["primes"] = {{"variant", "all_primes_ascending"}};
                } else if constexpr (std::is_same_v<R, OddPrimesAscending>) {
                  doc["primes"] = {{"variant", "odd_primes_ascending"}};
                } else if constexpr (std::is_same_v<R, PrimesAbove>) {
                  doc["primes"] = {{"variant", "primes_above"}, {"b", rule.bound}};
                } else {
                  doc["primes"] = {{"variant", "explicit_list"}, {"primes", rule.primes}};
                }
              },
              payload.primes);
        }
      },
      spec.payload);
  doc["index_origin"] = spec.index_origin;
  return doc;
}

MonoidSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open monoid spec " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError("monoid spec " + path.string() + " is not valid JSON: " + e.what());
  }
  return spec_from_json(doc);
}

std::string atom_label(const Monoid& monoid, Position position) {
  return monoid.atom(position).to_string();
}

std::string factorization_string(const Monoid& monoid, const Factorization& z) {
  std::set<Position> positions;
  for (const auto& [pos, mult] : z.terms()) positions.insert(pos);
  return render(labels_for(monoid, positions), z);
}

json factorizations_json(const Monoid& monoid, const FactorizationSet& zset) {
  const auto labels = labels_for(monoid, positions_of(zset.factorizations()));
  json list = json::array();
  for (const auto& z : zset.factorizations()) {
    json atoms = json::object();
    for (const auto& [pos, mult] : z.terms()) atoms[labels.at(pos)] = mult;
    list.push_back({{"atoms", atoms}});
  }
  return {{"element", zset.element().to_string()},
          {"complete", to_string(zset.completeness())},
          {"truncation", zset.truncation()},
          {"factorizations", list}};
}

std::string factorizations_text(const Monoid& monoid, const FactorizationSet& zset) {
  const auto labels = labels_for(monoid, positions_of(zset.factorizations()));
  std::ostringstream os;
  os << "Z(" << zset.element() << "): " << zset.size() << " factorization"
     << (zset.size() == 1 ? "" : "s") << ", " << to_string(zset.completeness())
     << ", truncation " << zset.truncation() << "\n";
  for (const auto& z : zset.factorizations()) os << render(labels, z) << "\n";
  return os.str();
}

json graph_json(const Monoid& monoid, const BettiGraph& graph) {
  const auto& vs = graph.vertices.factorizations();
  const auto labels = labels_for(monoid, positions_of(vs));
  json vertices = json::array();
  for (const auto& z : vs) vertices.push_back(render(labels, z));
  json edges = json::array();
  for (const auto& [a, b] : graph.edges) edges.push_back({a, b});
  return {{"element", graph.element().to_string()},
          {"complete", to_string(graph.vertices.completeness())},
          {"truncation", graph.vertices.truncation()},
          {"vertices", vertices},
          {"edges", edges},
          {"components", graph.components}};
}

std::string graph_dot(const Monoid& monoid, const BettiGraph& graph, bool color) {
  static constexpr std::array<const char*, 8> kPalette = {
      "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"};
  const auto& vs = graph.vertices.factorizations();
  const auto labels = labels_for(monoid, positions_of(vs));
  std::vector<std::size_t> comp_of(vs.size(), 0);
  for (std::size_t c = 0; c < graph.components.size(); ++c) {
    for (auto v : graph.components[c]) comp_of[v] = c;
  }
  std::ostringstream os;
  os << "graph betti {\n";
  os << "  label=\"Betti graph of " << graph.element() << " ("
     << to_string(graph.vertices.completeness()) << ", truncation "
     << graph.vertices.truncation() << ")\";\n";
  for (std::size_t v = 0; v < vs.size(); ++v) {
    os << "  v" << v << " [label=\"" << render(labels, vs[v]) << "\"";
    if (color) {
      os << ", style=filled, fillcolor=\"" << kPalette[comp_of[v] % kPalette.size()] << "\"";
    }
    os << "];\n";
  }
  for (const auto& [a, b] : graph.edges) os << "  v" << a << " -- v" << b << ";\n";
  os << "}\n";
  return os.str();
}

json verdict_json(const Monoid& monoid, const PosRational& q, const BettiVerdict& v) {
  json cert = std::visit(
      [&](const auto& c) -> json {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, DisconnectedWitness>) {
          json out = {{"kind", "disconnected_witness"},
                      {"isolated", factorization_string(monoid, c.isolated)},
                      {"witness", factorization_string(monoid, c.other)}};
          if (c.proof) {
            out["isolation"] = {{"index", monoid.display_index(c.proof->position)},
                                {"prime", c.proof->prime},
                                {"base_value", c.proof->base_value.to_string()}};
          } else {
            out["isolation"] = "exact_enumeration";
          }
          return out;
        } else if constexpr (std::is_same_v<C, ForcedAtom>) {
          return {{"kind", "forced_atom"},
                  {"atom", atom_label(monoid, c.position)},
                  {"index", monoid.display_index(c.position)},
                  {"prime", c.prime},
                  {"valuation", c.valuation}};
        } else if constexpr (std::is_same_v<C, SingleFactorization>) {
          return {{"kind", "single_factorization"}, {"count", c.count}};
        } else if constexpr (std::is_same_v<C, ValuationPath>) {
          return {{"kind", "valuation_path"}, {"element", c.element.to_string()}};
        } else {
          return {{"kind", "truncation_only"},
                  {"truncation", c.truncation},
                  {"vertices", c.vertices},
                  {"components", c.components}};
        }
      },
      v.certificate);
  return {{"element", q.to_string()},
          {"verdict", to_string(v.verdict)},
          {"truncation", v.truncation},
          {"certificate", cert}};
}

std::string verdict_text(const Monoid& monoid, const BettiVerdict& v) {
  const std::string detail = std::visit(
      [&](const auto& c) -> std::string {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, DisconnectedWitness>) {
          if (c.proof) {
            return "isolated vertex " + factorization_string(monoid, c.isolated) + "; witness " +
                   factorization_string(monoid, c.other);
          }
          return "exact enumeration; " + factorization_string(monoid, c.isolated) + " and " +
                 factorization_string(monoid, c.other) + " lie in different components";
        } else if constexpr (std::is_same_v<C, ForcedAtom>) {
          return "forced atom " + atom_label(monoid, c.position) + "; v_" + std::to_string(c.prime) +
                 " = " + std::to_string(c.valuation);
        } else if constexpr (std::is_same_v<C, SingleFactorization>) {
          return std::to_string(c.count) + " factorization" + (c.count == 1 ? "" : "s") +
                 ", exact";
        } else if constexpr (std::is_same_v<C, ValuationPath>) {
          return "valuation path; " + c.element.to_string() + " in N and not a base value";
        } else {
          return "truncation " + std::to_string(c.truncation) + " only; " +
                 std::to_string(c.vertices) + " vertices in " + std::to_string(c.components) +
                 " component" + (c.components == 1 ? "" : "s");
        }
      },
      v.certificate);
  return to_string(v.verdict) + " (" + detail + ")";
}

json canonical_json(const Monoid& monoid, const PosRational& q, const CanonicalDecomposition& canon) {
  json fractional = json::array();
  for (const auto& [pos, c] : canon.fractional) {
    fractional.push_back({{"atom", atom_label(monoid, pos)},
                          {"index", monoid.display_index(pos)},
                          {"prime", monoid.prime(pos)},
                          {"coefficient", c}});
  }
  return {{"element", q.to_string()}, {"n_q", canon.n_q.to_string()}, {"fractional", fractional}};
}

std::string canonical_text(const Monoid& monoid, const CanonicalDecomposition& canon) {
  std::string out = "n_q=" + canon.n_q.to_string();
  if (!canon.fractional.empty()) {
    out += ";";
    for (const auto& [pos, c] : canon.fractional) {
      out += " c[" + atom_label(monoid, pos) + "]=" + std::to_string(c);
    }
  }
  return out;
}

json invariants_json(const FactorizationSet& zset) {
  const LengthSet lengths = length_set(zset);
  return {{"element", zset.element().to_string()},
          {"lengths", lengths.lengths},
          {"delta", delta_set(lengths)},
          {"catenary", catenary_degree_element(zset)}};
}

json scan_json(const Monoid& monoid, const BettiScanReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) entries.push_back(verdict_json(monoid, e.element, e.verdict));
  json consistent = nullptr;
  if (report.betti_matches_base_values) consistent = *report.betti_matches_base_values;
  return {{"bound", report.bound.to_string()},
          {"truncation", report.truncation},
          {"base_properties",
           {{"antimatter", to_string(report.properties.antimatter)},
            {"valuation", to_string(report.properties.valuation)}}},
          {"betti", rationals_json(report.betti)},
          {"not_betti", rationals_json(report.not_betti)},
          {"unknown", rationals_json(report.unknown)},
          {"base_values", rationals_json(report.base_values)},
          {"betti_matches_base_values", consistent},
          {"entries", entries}};
}

std::string scan_text(const BettiScanReport& report) {
  std::ostringstream os;
  os << "truncation: " << report.truncation << "\n";
  os << "bound: " << report.bound << "\n";
  os << "base: antimatter=" << to_string(report.properties.antimatter)
     << " valuation=" << to_string(report.properties.valuation) << "\n";
  os << "betti: " << join_rationals(report.betti) << "\n";
  os << "not_betti: " << join_rationals(report.not_betti) << "\n";
  os << "unknown: " << join_rationals(report.unknown) << "\n";
  if (report.betti_matches_base_values) {
    os << "betti set equals base values in window: "
       << (*report.betti_matches_base_values ? "yes" : "NO") << "\n";
  }
  return os.str();
}

std::string join_rationals(const std::vector<PosRational>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += " ";
    out += x.to_string();
  }
  return out;
}

}  // namespace puiseux
