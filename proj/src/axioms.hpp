#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sset.hpp"

namespace decomp {

/// A failing pullback square, described well enough to rebuild it: which
/// family, which levels/maps, and the is_pullback witness as cell ids.
struct SquareFailure {
  std::string family;              // e.g. "active-inert", "SRCS", "culf"
  std::string detail;              // map labels, e.g. "n=2 i=1 (d_2, d_bot)"
  std::string witness;             // rendered witness
  std::vector<std::string> cells;  // the witness cells, "level:id"
};

struct AxiomReport {
  std::string condition;  // "decomposition-1" .. "decomposition-4", "complete"
  int cap = 0;            // verdicts are relative to the truncation
  bool pass = false;
  std::optional<SquareFailure> failure;
  int squares_checked = 0;
};

/// Check one of the four equivalent decomposition-space conditions by
/// exhausting every instance of the selected square family realizable
/// within the cap:
///   1 — the two generator families (d_{1+i}, d_bot) and (d_i, d_top);
///   2 — all squares of inert maps against active injections;
///   3 — all special reduced-cover squares;
///   4 — all general reduced-cover squares.
/// Requires cap >= 2.
AxiomReport check_decomposition(const TruncatedSSet& x, int condition);

/// s_0 : X_0 -> X_1 mono, so nondegenerate edges are well defined.
AxiomReport is_complete(const TruncatedSSet& x);

struct ClassificationFlag {
  bool value = false;
  std::optional<SquareFailure> failure;  // witness when false
};

struct MapClassification {
  ClassificationFlag mono_on_objects;
  ClassificationFlag equiv_on_objects;  // bijection on 0-cells
  ClassificationFlag fully_faithful;
  ClassificationFlag full_inclusion;  // fully_faithful && mono_on_objects
  ClassificationFlag conservative;    // cartesian on all degeneracy maps
  ClassificationFlag culf;            // cartesian on all active maps
  ClassificationFlag relatively_segal;
  ClassificationFlag ikeo;
  ClassificationFlag semi_ikeo;
  ClassificationFlag convex;  // full_inclusion && culf
  /// True when both sides passed the decomposition checks, licensing the
  /// single-square culf / semi-ikeo / two-square ikeo shortcuts.
  bool used_shortcuts = false;
};

/// Classify a simplicial map. When both sides pass check_decomposition the
/// shortcut squares are used for culf / ikeo / semi-ikeo; otherwise the full
/// square families within the cap are exhausted.
MapClassification classify_map(const SimplicialMap& f);

/// All cells whose every vertex lies in the selected vertex set.
SubSSet full_hull(const SSetPtr& x, const std::vector<int>& vertices);

/// Convex hull of a set of seed vertices in a complete decomposition space:
/// one saturation step (vertices of cells whose zeroth and last vertex are
/// seeds) followed by the full hull. Verifies that the step has stabilized
/// and that the inclusion classifies as convex; failures throw CheckError
/// (they signal that the ambient was not a decomposition space).
SubSSet convex_hull(const SSetPtr& x, const std::vector<int>& seeds);

enum class InheritanceCheck { None, DecompositionAndCompleteness };

/// Full hull on the complementary vertex set X_0 \ K_0. With
/// InheritanceCheck::DecompositionAndCompleteness the extracted complement is
/// re-verified to be a complete decomposition space (guaranteed when the
/// ambient is one); violation throws CheckError.
SubSSet complement(const SSetPtr& x, const SubSSet& k,
                   InheritanceCheck check = InheritanceCheck::None);

/// For a convex K and a cell whose last vertex lies in K: the unique j such
/// that vertex i lies in K exactly for i >= j. A non-contiguous membership
/// pattern signals corruption (K not convex) and throws CheckError.
int convex_index(const SubSSet& k, int level, int cell);

}  // namespace decomp
