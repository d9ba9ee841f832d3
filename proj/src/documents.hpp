#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "axioms.hpp"
#include "crapo.hpp"
#include "incidence.hpp"
#include "posets.hpp"
#include "sset.hpp"

namespace decomp {

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a content digest, hex.
std::string fnv1a64(std::string_view bytes);

// All documents are single JSON objects with an explicit "type" tag. Unknown
// fields are rejected by name; ids are resolved with level/index diagnostics.

SSetPtr parse_sset_document(const Json& doc, TruncatedSSet::Check check);
Json sset_to_document(const TruncatedSSet& s);

struct ParsedPoset {
  Poset poset;
  std::optional<int> cap;
};
ParsedPoset parse_poset_document(const Json& doc);

struct ParsedCategory {
  Category category;
  int cap;
};
ParsedCategory parse_category_document(const Json& doc);

/// A loaded simplicial set, whatever the document kind: sset documents load
/// directly, poset documents are realized as nerves, category documents as
/// category nerves at their declared cap.
struct LoadedSpace {
  SSetPtr space;
  std::string kind;  // "sset" | "poset" | "category"
  std::string digest;
  std::string label;
};
LoadedSpace load_space_text(const std::string& text, const std::string& label,
                            TruncatedSSet::Check check = TruncatedSSet::Check::Eager);
LoadedSpace load_space_file(const std::string& path,
                            TruncatedSSet::Check check = TruncatedSSet::Check::Eager);

SimplicialMap parse_map_document(const Json& doc, const SSetPtr& source, const SSetPtr& target);
SimplicialMap load_map_file(const std::string& path, const SSetPtr& source, const SSetPtr& target);

std::vector<int> parse_vertex_set_document(const Json& doc, const TruncatedSSet& s);

Json subsset_to_document(const SubSSet& sub, const std::string& kind);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
/// Canonical serialization: 2-space indent plus a trailing newline.
std::string dump_document(const Json& doc);

// Report fragments (all deterministic for identical input).
Json rational_json(const Rat& r);  // [num, den] as decimal strings
Json validation_json(const ValidationReport& r);
Json axiom_report_json(const AxiomReport& r);
Json classification_json(const MapClassification& c);
Json functional_table_json(const Functional& f);
Json certificate_json(const FinitenessCertificate& c, const TruncatedSSet& s);
Json inversion_json(const InversionReport& r);
Json lemma_json(const LemmaVerdict& v);
Json key_lemma_json(const KeyLemmaVerdict& v, int degree);
Json crapo_json(const CrapoVerdict& v);

/// The report envelope: tool version, input digest, checks, tables.
Json make_report(const LoadedSpace& input, Json checks, Json tables, bool pass);

}  // namespace decomp
