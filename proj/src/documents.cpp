#include "documents.hpp"

#include <fstream>
#include <sstream>

#include "version.hpp"

namespace decomp {

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

namespace {

void reject_unknown_fields(const Json& doc, const std::vector<std::string>& known,
                           const std::string& what) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw InputError(what + " document has unknown field '" + it.key() + "'");
  }
}

const Json& require_field(const Json& doc, const std::string& key, const std::string& what) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(what + " document is missing field '" + key + "'");
  return *it;
}

std::string require_type(const Json& doc, const std::string& expected) {
  if (!doc.is_object()) throw InputError("document is not a JSON object");
  std::string type = require_field(doc, "type", expected).get<std::string>();
  if (type != expected)
    throw InputError("expected a '" + expected + "' document, found '" + type + "'");
  return type;
}

}  // namespace

SSetPtr parse_sset_document(const Json& doc, TruncatedSSet::Check check) {
  require_type(doc, "sset");
  reject_unknown_fields(doc, {"type", "cap", "provenance", "levels"}, "sset");
  SSetData data;
  data.cap = require_field(doc, "cap", "sset").get<int>();
  if (data.cap < 0) throw InputError("sset document has negative cap");
  std::string prov_str = doc.contains("provenance")
                             ? doc.at("provenance").get<std::string>()
                             : std::string("raw");
  Provenance prov;
  if (prov_str == "raw")
    prov = Provenance::Raw;
  else if (prov_str == "nerve-chain-bound")
    prov = Provenance::NerveChainBound;
  else
    throw InputError("sset document has unknown provenance '" + prov_str + "'");

  const Json& levels = require_field(doc, "levels", "sset");
  if (!levels.is_array() || static_cast<int>(levels.size()) != data.cap + 1)
    throw InputError("sset document needs exactly cap+1 levels");

  data.cells.resize(static_cast<std::size_t>(data.cap) + 1);
  data.faces.resize(static_cast<std::size_t>(data.cap) + 1);
  data.degeneracies.resize(static_cast<std::size_t>(data.cap) + 1);

  for (int n = 0; n <= data.cap; ++n) {
    const Json& level = levels.at(static_cast<std::size_t>(n));
    std::vector<std::string> known = {"cells"};
    if (n >= 1) known.push_back("faces");
    if (n < data.cap) known.push_back("degeneracies");
    reject_unknown_fields(level, known, "sset level " + std::to_string(n));
    for (const auto& cell : require_field(level, "cells", "sset level"))
      data.cells[static_cast<std::size_t>(n)].push_back(cell.get<std::string>());
  }

  auto resolve = [&](int n, const std::string& id, const std::string& where) {
    const auto& cells = data.cells[static_cast<std::size_t>(n)];
    auto it = std::find(cells.begin(), cells.end(), id);
    if (it == cells.end())
      throw InputError(where + ": id '" + id + "' is not a level-" + std::to_string(n) + " cell");
    return static_cast<int>(it - cells.begin());
  };

  for (int n = 0; n <= data.cap; ++n) {
    const Json& level = levels.at(static_cast<std::size_t>(n));
    if (n >= 1) {
      const Json& faces = require_field(level, "faces", "sset level " + std::to_string(n));
      if (!faces.is_array() || static_cast<int>(faces.size()) != n + 1)
        throw InputError("level " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                         " face tables");
      for (int i = 0; i <= n; ++i) {
        const Json& table = faces.at(static_cast<std::size_t>(i));
        if (static_cast<int>(table.size()) != static_cast<int>(data.cells[static_cast<std::size_t>(n)].size()))
          throw InputError("level " + std::to_string(n) + " face table d_" + std::to_string(i) +
                           " has the wrong size");
        std::vector<int> t;
        for (const auto& id : table)
          t.push_back(resolve(n - 1, id.get<std::string>(),
                              "level " + std::to_string(n) + " face d_" + std::to_string(i)));
        data.faces[static_cast<std::size_t>(n)].push_back(std::move(t));
      }
    }
    if (n < data.cap) {
      const Json& degens =
          require_field(level, "degeneracies", "sset level " + std::to_string(n));
      if (!degens.is_array() || static_cast<int>(degens.size()) != n + 1)
        throw InputError("level " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                         " degeneracy tables");
      for (int i = 0; i <= n; ++i) {
        const Json& table = degens.at(static_cast<std::size_t>(i));
        if (static_cast<int>(table.size()) != static_cast<int>(data.cells[static_cast<std::size_t>(n)].size()))
          throw InputError("level " + std::to_string(n) + " degeneracy table s_" +
                           std::to_string(i) + " has the wrong size");
        std::vector<int> t;
        for (const auto& id : table)
          t.push_back(resolve(n + 1, id.get<std::string>(),
                              "level " + std::to_string(n) + " degeneracy s_" + std::to_string(i)));
        data.degeneracies[static_cast<std::size_t>(n)].push_back(std::move(t));
      }
    }
  }
  return std::make_shared<TruncatedSSet>(std::move(data), prov, check);
}

Json sset_to_document(const TruncatedSSet& s) {
  Json doc;
  doc["type"] = "sset";
  doc["cap"] = s.cap();
  doc["provenance"] = to_string(s.provenance());
  Json levels = Json::array();
  for (int n = 0; n <= s.cap(); ++n) {
    Json level;
    Json cells = Json::array();
    for (int c = 0; c < s.size(n); ++c) cells.push_back(s.id(n, c));
    level["cells"] = std::move(cells);
    if (n >= 1) {
      Json faces = Json::array();
      for (int i = 0; i <= n; ++i) {
        Json table = Json::array();
        for (int c = 0; c < s.size(n); ++c) table.push_back(s.id(n - 1, s.face(n, i, c)));
        faces.push_back(std::move(table));
      }
      level["faces"] = std::move(faces);
    }
    if (n < s.cap()) {
      Json degens = Json::array();
      for (int i = 0; i <= n; ++i) {
        Json table = Json::array();
        for (int c = 0; c < s.size(n); ++c) table.push_back(s.id(n + 1, s.degeneracy(n, i, c)));
        degens.push_back(std::move(table));
      }
      level["degeneracies"] = std::move(degens);
    }
    levels.push_back(std::move(level));
  }
  doc["levels"] = std::move(levels);
  return doc;
}

ParsedPoset parse_poset_document(const Json& doc) {
  require_type(doc, "poset");
  reject_unknown_fields(doc, {"type", "elements", "relation", "pairs", "cap"}, "poset");
  std::vector<std::string> elements;
  for (const auto& e : require_field(doc, "elements", "poset"))
    elements.push_back(e.get<std::string>());
  std::string rel = require_field(doc, "relation", "poset").get<std::string>();
  Poset::RelationKind kind;
  if (rel == "covers")
    kind = Poset::RelationKind::Covers;
  else if (rel == "order")
    kind = Poset::RelationKind::Order;
  else
    throw InputError("poset relation must be 'covers' or 'order', found '" + rel + "'");
  auto index_of = [&](const std::string& name) {
    auto it = std::find(elements.begin(), elements.end(), name);
    if (it == elements.end()) throw InputError("relation pair names unknown element '" + name + "'");
    return static_cast<int>(it - elements.begin());
  };
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : require_field(doc, "pairs", "poset")) {
    if (!p.is_array() || p.size() != 2) throw InputError("relation pairs must be 2-element arrays");
    pairs.emplace_back(index_of(p.at(0).get<std::string>()), index_of(p.at(1).get<std::string>()));
  }
  ParsedPoset out{Poset(std::move(elements), pairs, kind), std::nullopt};
  if (doc.contains("cap")) out.cap = doc.at("cap").get<int>();
  return out;
}

ParsedCategory parse_category_document(const Json& doc) {
  require_type(doc, "category");
  reject_unknown_fields(doc, {"type", "cap", "objects", "morphisms", "identities", "compose"},
                        "category");
  std::vector<std::string> objects;
  for (const auto& o : require_field(doc, "objects", "category"))
    objects.push_back(o.get<std::string>());
  auto obj_index = [&](const std::string& name) {
    auto it = std::find(objects.begin(), objects.end(), name);
    if (it == objects.end()) throw InputError("unknown object '" + name + "'");
    return static_cast<int>(it - objects.begin());
  };
  std::vector<CategoryMorphism> morphisms;
  for (const auto& m : require_field(doc, "morphisms", "category")) {
    reject_unknown_fields(m, {"name", "dom", "cod"}, "morphism");
    morphisms.push_back({require_field(m, "name", "morphism").get<std::string>(),
                         obj_index(require_field(m, "dom", "morphism").get<std::string>()),
                         obj_index(require_field(m, "cod", "morphism").get<std::string>())});
  }
  auto mor_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < morphisms.size(); ++i)
      if (morphisms[i].name == name) return static_cast<int>(i);
    throw InputError("unknown morphism '" + name + "'");
  };
  std::vector<int> identities(objects.size(), -1);
  for (auto it = require_field(doc, "identities", "category").begin();
       it != require_field(doc, "identities", "category").end(); ++it)
    identities[static_cast<std::size_t>(obj_index(it.key()))] = mor_index(it->get<std::string>());
  for (std::size_t i = 0; i < identities.size(); ++i)
    if (identities[i] < 0) throw InputError("object '" + objects[i] + "' has no identity");
  std::vector<std::array<int, 3>> composition;
  for (const auto& t : require_field(doc, "compose", "category")) {
    if (!t.is_array() || t.size() != 3)
      throw InputError("compose entries are [first, second, composite] triples");
    composition.push_back({mor_index(t.at(0).get<std::string>()),
                           mor_index(t.at(1).get<std::string>()),
                           mor_index(t.at(2).get<std::string>())});
  }
  int cap = require_field(doc, "cap", "category").get<int>();
  return ParsedCategory{Category(std::move(objects), std::move(morphisms), std::move(identities),
                                 composition),
                        cap};
}

LoadedSpace load_space_text(const std::string& text, const std::string& label,
                            TruncatedSSet::Check check) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw InputError(label + ": not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("type"))
    throw InputError(label + ": document has no 'type' tag");
  std::string type = doc.at("type").get<std::string>();
  LoadedSpace out{nullptr, type, fnv1a64(text), label};
  if (type == "sset") {
    out.space = parse_sset_document(doc, check);
  } else if (type == "poset") {
    ParsedPoset p = parse_poset_document(doc);
    out.space = nerve(p.poset, p.cap);
  } else if (type == "category") {
    ParsedCategory c = parse_category_document(doc);
    out.space = nerve_category(c.category, c.cap);
  } else {
    throw InputError(label + ": cannot load a '" + type + "' document as a simplicial set");
  }
  return out;
}

LoadedSpace load_space_file(const std::string& path, TruncatedSSet::Check check) {
  return load_space_text(read_file(path), path, check);
}

SimplicialMap parse_map_document(const Json& doc, const SSetPtr& source, const SSetPtr& target) {
  require_type(doc, "smap");
  reject_unknown_fields(doc, {"type", "levels"}, "smap");
  const Json& levels = require_field(doc, "levels", "smap");
  if (!levels.is_array() || static_cast<int>(levels.size()) != source->cap() + 1)
    throw InputError("smap document needs cap+1 levels");
  std::vector<std::vector<int>> components;
  for (int n = 0; n <= source->cap(); ++n) {
    const Json& level = levels.at(static_cast<std::size_t>(n));
    reject_unknown_fields(level, {"pairs"}, "smap level " + std::to_string(n));
    std::vector<int> comp(static_cast<std::size_t>(source->size(n)), -1);
    for (const auto& pair : require_field(level, "pairs", "smap level")) {
      if (!pair.is_array() || pair.size() != 2)
        throw InputError("smap pairs must be [source, target] id pairs");
      int s = source->index_of(n, pair.at(0).get<std::string>());
      int t = target->index_of(n, pair.at(1).get<std::string>());
      if (s < 0)
        throw InputError("smap level " + std::to_string(n) + ": unknown source cell '" +
                         pair.at(0).get<std::string>() + "'");
      if (t < 0)
        throw InputError("smap level " + std::to_string(n) + ": unknown target cell '" +
                         pair.at(1).get<std::string>() + "'");
      if (comp[static_cast<std::size_t>(s)] >= 0)
        throw InputError("smap level " + std::to_string(n) + ": source cell '" +
                         pair.at(0).get<std::string>() + "' mapped twice");
      comp[static_cast<std::size_t>(s)] = t;
    }
    for (int s = 0; s < source->size(n); ++s)
      if (comp[static_cast<std::size_t>(s)] < 0)
        throw InputError("smap level " + std::to_string(n) + ": source cell '" +
                         source->id(n, s) + "' is unmapped");
    components.push_back(std::move(comp));
  }
  return SimplicialMap(source, target, std::move(components));
}

SimplicialMap load_map_file(const std::string& path, const SSetPtr& source, const SSetPtr& target) {
  Json doc;
  try {
    doc = Json::parse(read_file(path));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(path + ": not valid JSON: " + e.what());
  }
  return parse_map_document(doc, source, target);
}

std::vector<int> parse_vertex_set_document(const Json& doc, const TruncatedSSet& s) {
  require_type(doc, "vertex-set");
  reject_unknown_fields(doc, {"type", "vertices"}, "vertex-set");
  std::vector<int> out;
  for (const auto& v : require_field(doc, "vertices", "vertex-set")) {
    int idx = s.index_of(0, v.get<std::string>());
    if (idx < 0) throw InputError("vertex-set names unknown vertex '" + v.get<std::string>() + "'");
    out.push_back(idx);
  }
  return out;
}

Json subsset_to_document(const SubSSet& sub, const std::string& kind) {
  Json doc;
  doc["type"] = "subsset";
  doc["cap"] = sub.ambient()->cap();
  doc["kind"] = kind;
  Json selected = Json::array();
  for (int n = 0; n <= sub.ambient()->cap(); ++n) {
    Json level = Json::array();
    for (int idx : sub.selected(n)) level.push_back(sub.ambient()->id(n, idx));
    selected.push_back(std::move(level));
  }
  doc["selected"] = std::move(selected);
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string dump_document(const Json& doc) { return doc.dump(2) + "\n"; }

Json rational_json(const Rat& r) { return Json::array({r.num().str(), r.den().str()}); }

Json validation_json(const ValidationReport& r) {
  Json out;
  out["id"] = "validate";
  out["pass"] = r.valid;
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json item;
    item["identity"] = v.identity;
    item["level"] = v.level;
    item["cell"] = v.cell;
    violations.push_back(std::move(item));
  }
  out["violations"] = std::move(violations);
  return out;
}

namespace {

Json square_failure_json(const SquareFailure& f) {
  Json out;
  out["family"] = f.family;
  out["square"] = f.detail;
  out["witness"] = f.witness;
  out["cells"] = f.cells;
  return out;
}

}  // namespace

Json axiom_report_json(const AxiomReport& r) {
  Json out;
  out["id"] = r.condition;
  out["cap"] = r.cap;
  out["pass"] = r.pass;
  out["squares_checked"] = r.squares_checked;
  if (r.failure) out["failure"] = square_failure_json(*r.failure);
  return out;
}

Json classification_json(const MapClassification& c) {
  Json out;
  auto put = [&](const char* name, const ClassificationFlag& flag) {
    Json f;
    f["value"] = flag.value;
    if (flag.failure) f["failure"] = square_failure_json(*flag.failure);
    out[name] = std::move(f);
  };
  put("mono_on_objects", c.mono_on_objects);
  put("equiv_on_objects", c.equiv_on_objects);
  put("fully_faithful", c.fully_faithful);
  put("full_inclusion", c.full_inclusion);
  put("conservative", c.conservative);
  put("culf", c.culf);
  put("relatively_segal", c.relatively_segal);
  put("ikeo", c.ikeo);
  put("semi_ikeo", c.semi_ikeo);
  put("convex", c.convex);
  out["used_shortcuts"] = c.used_shortcuts;
  return out;
}

Json functional_table_json(const Functional& f) {
  Json out = Json::array();
  for (int e = 0; e < f.base()->size(1); ++e) {
    if (f.at(e).is_zero()) continue;
    out.push_back(Json::array({f.base()->id(1, e), rational_json(f.at(e))}));
  }
  return out;
}

Json certificate_json(const FinitenessCertificate& c, const TruncatedSSet& s) {
  Json out;
  out["locally_finite"] = c.locally_finite;
  out["moebius_ok"] = c.moebius_ok;
  out["reason"] = c.reason;
  if (c.witness_edge) out["witness_edge"] = *c.witness_edge;
  Json lengths = Json::array();
  for (int e = 0; e < s.size(1); ++e)
    lengths.push_back(Json::array({s.id(1, e), c.length[static_cast<std::size_t>(e)]}));
  out["length"] = std::move(lengths);
  return out;
}

Json inversion_json(const InversionReport& r) {
  Json out;
  out["id"] = "inversion";
  out["mu_zeta"] = r.mu_zeta;
  out["zeta_mu"] = r.zeta_mu;
  out["sign_free"] = r.sign_free;
  out["pass"] = r.pass();
  if (r.witness_edge) out["witness_edge"] = *r.witness_edge;
  return out;
}

Json lemma_json(const LemmaVerdict& v) {
  Json out;
  out["id"] = v.name;
  out["detail"] = v.detail;
  out["pass"] = v.pass;
  if (v.witness_edge) out["witness_edge"] = *v.witness_edge;
  return out;
}

Json key_lemma_json(const KeyLemmaVerdict& v, int degree) {
  Json out;
  out["id"] = "key-lemma";
  out["detail"] = "n=" + std::to_string(degree);
  out["direct"] = v.direct;
  out["replay"] = v.replay;
  out["pass"] = v.pass();
  if (v.witness_edge) out["witness_edge"] = *v.witness_edge;
  return out;
}

Json crapo_json(const CrapoVerdict& v) {
  Json out;
  out["id"] = "crapo";
  out["signed_identity"] = v.signed_identity;
  out["signfree_even"] = v.signfree_even;
  out["signfree_odd"] = v.signfree_odd;
  out["k_proposition"] = v.k_prop;
  out["k_proposition_even"] = v.k_prop_even;
  out["k_proposition_odd"] = v.k_prop_odd;
  out["meet_proposition"] = v.meet_prop;
  out["s_proposition"] = v.s_prop;
  out["t_proposition"] = v.t_prop;
  out["pass"] = v.pass();
  if (v.witness_edge) out["witness_edge"] = *v.witness_edge;
  Json table = Json::array();
  for (const auto& row : v.table) {
    Json r;
    r["edge"] = row.edge;
    r["mu_x"] = rational_json(row.mu_x);
    r["mu_complement"] = rational_json(row.mu_comp);
    r["correction"] = rational_json(row.correction);
    table.push_back(std::move(r));
  }
  out["table"] = std::move(table);
  return out;
}

Json make_report(const LoadedSpace& input, Json checks, Json tables, bool pass) {
  Json out;
  out["type"] = "report";
  out["tool"] = kToolName;
  out["version"] = kVersion;
  Json in;
  in["label"] = input.label;
  in["kind"] = input.kind;
  in["digest"] = input.digest;
  in["cap"] = input.space->cap();
  in["provenance"] = to_string(input.space->provenance());
  out["input"] = std::move(in);
  out["checks"] = std::move(checks);
  if (!tables.is_null()) out["tables"] = std::move(tables);
  out["pass"] = pass;
  return out;
}

}  // namespace decomp
