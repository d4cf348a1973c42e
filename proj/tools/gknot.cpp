// gknot: command-line front end over the gknot library.
//
// Every command reads diagram files (see gknot/io.hpp) and prints one block
// per diagram, starting with its canonical key. --format json emits the same
// structure as JSON.
//
// Exit codes: 0 success, 1 parse or domain error, 2 inconclusive under a
// budget (search not found, canonicalization overflow).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gknot/gknot.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace gknot;

struct Globals {
  std::string format = "text";
  int vertex_budget = 4;
  std::size_t node_budget = 100000;
  std::size_t orbit_cap = kDefaultOrbitCap;
};

struct Input {
  std::string source;
  Stanza stanza;
  GGraph diagram;
};

struct FileError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Input> load(const std::vector<std::string>& paths) {
  std::vector<Input> out;
  for (const auto& path : paths) {
    try {
      for (auto& s : parse_diagrams(read_file(path))) {
        auto d = s.diagram();
        out.push_back(Input{path + ":" + std::to_string(s.line), std::move(s), std::move(d)});
      }
    } catch (const ParseError& e) {
      throw FileError(path + ": " + e.what());
    }
  }
  return out;
}

std::string names_of(const std::vector<int>& vertices) {
  std::string out;
  for (int v : vertices) out += (out.empty() ? "" : " ") + default_vertex_name(v);
  return out;
}

json combination_json(const Combination& c) {
  json terms = json::array(), reps = json::array();
  for (const auto& [key, rep] : c.terms) {
    terms.push_back({{"key", key}, {"coefficient", 1}});
    reps.push_back({{"key", key}, {"stanza", print_diagram_file(rep)}});
  }
  return {{"space", space_name(c.space)}, {"size", c.size()}, {"terms", terms}, {"representatives", reps}};
}

json diagram_json(const GGraph& k) {
  return {{"key", k.key()},
          {"vertices", k.vertex_count()},
          {"components", component_count(k.shadow())},
          {"stanza", print_diagram_file(k)}};
}

json input_head(const Input& in) { return {{"source", in.source}, {"key", in.diagram.key()}}; }

// ---------------------------------------------------------------------------
// Text rendering of the JSON report

void render(std::ostream& os, const json& obj, int indent);

void render_value(std::ostream& os, const std::string& name, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    os << pad << name << ":\n";
    render(os, v, indent + 2);
  } else if (v.is_array()) {
    if (v.empty()) {
      os << pad << name << ": (none)\n";
    } else if (v.front().is_object()) {
      os << pad << name << ":\n";
      for (const auto& item : v) {
        if (item.contains("coefficient")) {
          os << pad << "  " << item["key"].get<std::string>() << "  " << item["coefficient"] << "\n";
          continue;
        }
        std::ostringstream block;
        render(block, item, indent + 4);
        std::string text = block.str();
        text.replace(static_cast<std::size_t>(indent) + 2, 2, "- ");
        os << text;
      }
    } else if (v.front().is_string()) {
      for (const auto& item : v) os << pad << name << ": " << item.get<std::string>() << "\n";
    } else {
      os << pad << name << ":";
      for (const auto& item : v) os << " " << item;
      os << "\n";
    }
  } else if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find('\n') == std::string::npos) {
      os << pad << name << ": " << s << "\n";
    } else {
      os << pad << name << ":\n";
      std::istringstream lines(s);
      std::string line;
      while (std::getline(lines, line)) os << pad << "  " << line << "\n";
    }
  } else {
    os << pad << name << ": " << v << "\n";
  }
}

void render(std::ostream& os, const json& obj, int indent) {
  for (const auto& [name, v] : obj.items()) render_value(os, name, v, indent);
}

void emit(const Globals& g, const json& report) {
  if (g.format == "json") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::cout << "command: " << report["command"].get<std::string>() << "\n";
  for (const auto& [name, v] : report.items()) {
    if (name == "command" || name == "inputs") continue;
    render_value(std::cout, name, v, 0);
  }
  if (report.contains("inputs"))
    for (const auto& in : report["inputs"]) {
      std::cout << "\n== " << in["source"].get<std::string>() << "\n";
      json rest = in;
      rest.erase("source");
      render(std::cout, rest, 0);
    }
}

// ---------------------------------------------------------------------------
// Commands

json cmd_validate(const std::vector<Input>& inputs) {
  json out = json::array();
  for (const auto& in : inputs) {
    const auto& k = in.diagram;
    const auto& g = k.shadow();
    const auto comps = unicursal_components(g);
    json e = input_head(in);
    e["group"] = k.group().spec_line();
    e["vertices"] = k.vertex_count();
    e["unicursal_components"] = comps.unicursal;
    e["free_circles"] = g.free_circles();
    e["good"] = is_good(g);
    e["oriented"] = k.oriented();
    e["bigons"] = find_bigons(g).size();
    e["unit_vertices"] = detail::unit_vertices(k).empty() ? std::string("(none)") : names_of(detail::unit_vertices(k));
    out.push_back(e);
  }
  return out;
}

DeltaOptions delta_options(const Globals& g, const std::string& quotient) {
  DeltaOptions opt;
  opt.cap = g.orbit_cap;
  opt.quotient = quotient == "exactly-one" ? TrivialQuotient::ExactlyOne : TrivialQuotient::AtLeastOne;
  return opt;
}

json split_json(const std::map<std::string, Combination>& split) {
  json out = json::array();
  for (const auto& [pair, c] : split) {
    json e = {{"pair", pair}};
    e["combination"] = combination_json(c);
    out.push_back(e);
  }
  return out;
}

json cmd_invariants(const Globals& g, const std::vector<Input>& inputs) {
  json out = json::array();
  for (const auto& in : inputs) {
    const auto& k = in.diagram;
    json e = input_head(in);
    e["vertices"] = k.vertex_count();
    e["components"] = component_count(k.shadow());
    e["crossing_lower_bound"] = crossing_lower_bound(k, g.orbit_cap);
    e["group_bracket"] = combination_json(group_bracket(k, g.orbit_cap));
    e["parity_bracket"] = combination_json(parity_bracket(k, g.orbit_cap));
    const auto opt = delta_options(g, "at-least-one");
    e["delta"] = combination_json(delta(k, opt));
    e["delta_split"] = split_json(delta_full(k, opt));
    out.push_back(e);
  }
  return out;
}

template <typename F>
json per_input(const std::vector<Input>& inputs, const char* field, F&& f) {
  json out = json::array();
  for (const auto& in : inputs) {
    json e = input_head(in);
    e[field] = f(in);
    out.push_back(e);
  }
  return out;
}

Subgroup subgroup_of(const Group& G, const std::string& text) {
  return Subgroup::generated_by(G, parse_element_list(G, text));
}

Transversal transversal_of(const Subgroup& s, const std::string& text) {
  const Group& G = s.ambient();
  Transversal t;
  if (text.empty()) {
    t.representatives.push_back(G.identity());
    for (const auto& x : G.elements()) {
      bool fresh = true;
      for (const auto& r : t.representatives)
        if (s.contains(G.multiply(x, G.inverse(r)))) fresh = false;
      if (fresh) t.representatives.push_back(x);
    }
    return t;
  }
  for (const auto& [named, rep] : parse_section(G, text)) {
    if (named && !s.contains(G.multiply(*named, G.inverse(rep))))
      throw DomainError("section entry " + G.print(*named) + "=" + G.print(rep) + " leaves the coset");
    t.representatives.push_back(rep);
  }
  return t;
}

json cmd_cover(const std::vector<Input>& inputs, const std::string& subgroup, const std::string& section) {
  json out = json::array();
  for (const auto& in : inputs) {
    const auto& k = in.diagram;
    const auto s = subgroup_of(k.group(), subgroup);
    const auto t = transversal_of(s, section);
    const auto c = cover(k, s, t);
    std::vector<int> mixed;
    for (int v = 0; v < c.vertex_count(); ++v)
      if (is_mixed(c.shadow(), v)) mixed.push_back(v);
    json e = input_head(in);
    e["sheets"] = s.index();
    e["section_is_homomorphism"] = section_is_homomorphism(s, t);
    e["expected_components"] = static_cast<std::size_t>(component_count(k.shadow())) * s.index();
    e["cover"] = diagram_json(c);
    e["cover"]["mixed"] = names_of(mixed);
    out.push_back(e);
  }
  return out;
}

json cmd_search(const Globals& g, const std::vector<Input>& inputs, bool& proven) {
  const Input& a = inputs[0];
  const Input& b = inputs[1];
  SearchBudget budget;
  budget.vertex_budget = g.vertex_budget;
  budget.node_budget = g.node_budget;
  const auto r = equivalence_search(a.diagram, b.diagram, budget);
  proven = r.proven;
  json path = json::array();
  for (const auto& s : r.path) path.push_back(describe(s));
  json out;
  out["from"] = input_head(a);
  out["to"] = input_head(b);
  out["result"] = r.proven ? "proven" : "not-found-within-budget";
  out["vertex_budget"] = g.vertex_budget;
  out["node_budget"] = g.node_budget;
  out["path_length"] = r.path.size();
  out["path"] = path;
  out["expanded"] = r.expanded;
  out["discovered"] = r.discovered;
  out["exhausted"] = r.exhausted;
  return out;
}

RotationSystem rotation_of(const Input& in) {
  if (in.stanza.rotation) return *in.stanza.rotation;
  return RotationSystem{std::vector<std::uint8_t>(static_cast<std::size_t>(in.diagram.vertex_count()), 0)};
}

std::string bits_text(const std::vector<std::uint8_t>& bits) {
  std::string out;
  for (std::size_t v = 0; v < bits.size(); ++v)
    out += (v ? ", " : "") + default_vertex_name(static_cast<int>(v)) + "=" + std::to_string(bits[v]);
  return out;
}

json cmd_faces(const std::vector<Input>& inputs) {
  json out = json::array();
  for (const auto& in : inputs) {
    const auto& g = in.diagram.shadow();
    const auto r = rotation_of(in);
    const auto fs = faces(g, r);
    const auto colors = checkerboard_coloring(g, r);
    json list = json::array();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      std::string darts, corners;
      for (int h : fs[i]) {
        darts += (darts.empty() ? "" : " ") + to_string(HalfEdgeRef::from_index(h));
        corners += (corners.empty() ? "" : " ") + default_vertex_name(h / 4);
      }
      json f = {{"half_edges", darts}, {"corners", corners}};
      if (colors) f["color"] = (*colors)[i];
      list.push_back(f);
    }
    json e = input_head(in);
    e["rotation"] = bits_text(r.bits);
    e["V"] = g.vertex_count();
    e["E"] = 2 * g.vertex_count();
    e["F"] = fs.size();
    e["genus"] = genus(g, r);
    e["checkerboard"] = colors.has_value();
    e["faces"] = list;
    out.push_back(e);
  }
  return out;
}

json cmd_presentation(const std::vector<Input>& inputs, const std::string& target_text,
                      const std::string& images_text) {
  json out = json::array();
  for (const auto& in : inputs) {
    const auto& k = in.diagram;
    const auto& g = k.shadow();
    std::vector<std::uint8_t> pol;
    if (in.stanza.orientation) pol = *in.stanza.orientation;
    else if (k.polarity()) pol = *k.polarity();
    else if (auto b = base_polarity(g)) pol = *b;
    else throw DomainError("graph is not good, so it has no source-sink structure");
    const auto r = rotation_of(in);
    const auto p = presentation(g, r, pol);
    std::string gens;
    for (const auto& x : p.generators) gens += (gens.empty() ? "" : " ") + x;
    json rels = json::array();
    for (const auto& rel : p.relators) {
      std::string w;
      for (int x : rel) w += (w.empty() ? "" : " ") + p.generators[static_cast<std::size_t>(x)];
      rels.push_back(w);
    }
    json e = input_head(in);
    e["rotation"] = bits_text(r.bits);
    e["orientation"] = bits_text(pol);
    e["gens"] = gens;
    e["rel"] = rels;
    e["abelianization"] = abelianization(p).to_string();
    if (!target_text.empty()) {
      const auto target = parse_group_text(target_text);
      e["labeled"] = diagram_json(label_via_quotient(g, p, target, parse_element_list(target, images_text),
                                                     target.is_abelian() ? std::nullopt
                                                                         : std::optional<std::vector<std::uint8_t>>(pol)));
    }
    out.push_back(e);
  }
  return out;
}

json cmd_enumerate(const Globals& g, const std::string& group_text, int k) {
  EnumerationLimits lim;
  lim.orbit_cap = g.orbit_cap;
  const auto G = parse_group_text(group_text);
  json classes = json::array();
  std::size_t certified = 0;
  for (const auto& c : na_enumeration(G, k, lim)) {
    const bool cert = c.status == MinimalityStatus::CertifiedMinimal;
    certified += cert;
    classes.push_back({{"key", c.key},
                       {"status", cert ? "certified-minimal" : "undetermined"},
                       {"lower_bound", c.lower_bound},
                       {"stanza", print_diagram_file(c.representative)}});
  }
  json out;
  out["group"] = G.spec_line();
  out["vertices"] = k;
  out["classes"] = classes.size();
  out["certified"] = certified;
  out["list"] = classes;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free knots and group-labeled free knots"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--vertex-budget", g.vertex_budget, "Largest diagram search may visit")->check(CLI::NonNegativeNumber);
  app.add_option("--node-budget", g.node_budget, "States search may expand");
  app.add_option("--orbit-cap", g.orbit_cap, "Largest orbit explored while canonicalizing");

  std::vector<std::string> files;
  auto with_files = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("files", files, "Diagram files")->required()->check(CLI::ExistingFile);
    return sub;
  };

  auto* validate = with_files("validate", "Check diagrams and print their keys");
  auto* invariants = with_files("invariants", "Every invariant of each diagram");
  auto* bracket = with_files("bracket", "Parity bracket");
  auto* gbracket = with_files("gbracket", "Group bracket");
  auto* delta_cmd = with_files("delta", "Turaev delta");
  bool split = false;
  std::string quotient = "at-least-one";
  delta_cmd->add_flag("--split", split, "One combination per inversion pair");
  delta_cmd->add_option("--quotient", quotient, "Which trivial links are dropped")
      ->check(CLI::IsMember({"at-least-one", "exactly-one"}));

  auto* cover_cmd = with_files("cover", "Covering diagram over a subgroup");
  std::string subgroup, section;
  cover_cmd->add_option("--subgroup", subgroup, "Generators of the subgroup")->required();
  cover_cmd->add_option("--section", section, "Coset representatives, h=g or g");
  auto* project_cmd = with_files("project", "Delete vertices labeled outside a subgroup");
  project_cmd->add_option("--subgroup", subgroup, "Generators of the subgroup")->required();
  auto* push_cmd = with_files("pushforward", "Relabel along a homomorphism");
  std::string target, hom;
  push_cmd->add_option("--target", target, "Target group, e.g. \"cyclic 2\"")->required();
  push_cmd->add_option("--hom", hom, "Images g->h of generators")->required();

  auto* search_cmd = with_files("search", "Look for a move sequence between two diagrams");
  auto* faces_cmd = with_files("faces", "Faces, genus and checkerboard coloring of an embedding");
  auto* pres_cmd = with_files("presentation", "Group presentation of a checkerboard embedding");
  std::string images;
  pres_cmd->add_option("--target", target, "Label the graph in this group");
  pres_cmd->add_option("--images", images, "Image of each generator, in vertex order");

  auto* enum_cmd = app.add_subcommand("enumerate", "Classes of one-component diagrams with k vertices");
  std::string group_text;
  int k = 0;
  enum_cmd->add_option("--group", group_text, "Group, e.g. \"cyclic 3\"")->required();
  enum_cmd->add_option("--k", k, "Vertex count")->required()->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    json report;
    int status = 0;
    auto* sub = app.get_subcommands().front();
    report["command"] = sub->get_name();
    if (sub == enum_cmd) {
      report.update(cmd_enumerate(g, group_text, k));
      emit(g, report);
      return 0;
    }
    const auto inputs = load(files);
    if (sub == validate) {
      report["inputs"] = cmd_validate(inputs);
    } else if (sub == invariants) {
      report["inputs"] = cmd_invariants(g, inputs);
    } else if (sub == bracket) {
      report["inputs"] = per_input(inputs, "parity_bracket",
                                   [&](const Input& in) { return combination_json(parity_bracket(in.diagram, g.orbit_cap)); });
    } else if (sub == gbracket) {
      report["inputs"] = per_input(inputs, "group_bracket",
                                   [&](const Input& in) { return combination_json(group_bracket(in.diagram, g.orbit_cap)); });
    } else if (sub == delta_cmd) {
      const auto opt = delta_options(g, quotient);
      report["quotient"] = quotient;
      if (split)
        report["inputs"] = per_input(inputs, "delta_split",
                                     [&](const Input& in) { return split_json(delta_full(in.diagram, opt)); });
      else
        report["inputs"] = per_input(inputs, "delta",
                                     [&](const Input& in) { return combination_json(delta(in.diagram, opt)); });
    } else if (sub == cover_cmd) {
      report["inputs"] = cmd_cover(inputs, subgroup, section);
    } else if (sub == project_cmd) {
      report["inputs"] = per_input(inputs, "projection", [&](const Input& in) {
        return diagram_json(project(in.diagram, subgroup_of(in.diagram.group(), subgroup)));
      });
    } else if (sub == push_cmd) {
      const auto T = parse_group_text(target);
      report["target"] = T.spec_line();
      report["inputs"] = per_input(inputs, "pushforward", [&](const Input& in) {
        const auto& S = in.diagram.group();
        return diagram_json(pushforward(in.diagram, Homomorphism::from_images(S, T, parse_images(S, T, hom))));
      });
    } else if (sub == search_cmd) {
      if (inputs.size() != 2) throw DomainError("search needs exactly two diagrams, got " + std::to_string(inputs.size()));
      bool proven = false;
      report.update(cmd_search(g, inputs, proven));
      status = proven ? 0 : 2;
    } else if (sub == faces_cmd) {
      report["inputs"] = cmd_faces(inputs);
    } else if (sub == pres_cmd) {
      report["inputs"] = cmd_presentation(inputs, target, images);
    }
    emit(g, report);
    return status;
  } catch (const CanonicalizationOverflow& e) {
    std::cerr << "gknot: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gknot: " << e.what() << "\n";
    return 1;
  }
}
