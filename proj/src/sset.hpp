#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "delta.hpp"
#include "errors.hpp"

namespace decomp {

enum class Provenance { Raw, NerveChainBound };
std::string to_string(Provenance p);

/// Raw construction data for a truncated simplicial set. Levels run 0..cap;
/// faces[n][i] is the table of d_i : X_n -> X_{n-1} (1 <= n <= cap,
/// 0 <= i <= n) and degeneracies[n][i] the table of s_i : X_n -> X_{n+1}
/// (0 <= n < cap, 0 <= i <= n), all by cell index.
struct SSetData {
  int cap = 0;
  std::vector<std::vector<std::string>> cells;
  std::vector<std::vector<std::vector<int>>> faces;
  std::vector<std::vector<std::vector<int>>> degeneracies;
};

struct IdentityViolation {
  std::string identity;  // e.g. "d_0 d_2 = d_1 d_0"
  int level;             // level of the witnessing cell
  std::string cell;
};

struct ValidationReport {
  bool valid = true;
  std::vector<IdentityViolation> violations;
};

/// A finite simplicial set truncated at an explicit dimension cap.
/// Immutable after construction; operations needing levels above the cap
/// fail loudly instead of extending silently.
class TruncatedSSet {
 public:
  enum class Check { Eager, Deferred };

  /// Verifies structural totality (table sizes, index ranges, id uniqueness
  /// across all levels) always; with Check::Eager (the default) also verifies
  /// every simplicial identity and throws InputError on the first violation.
  /// Check::Deferred exists for corruption-detection harnesses.
  explicit TruncatedSSet(SSetData data, Provenance provenance = Provenance::Raw,
                         Check check = Check::Eager);

  int cap() const { return data_.cap; }
  Provenance provenance() const { return provenance_; }

  int size(int level) const;
  const std::string& id(int level, int idx) const;
  /// Index of a cell id at a level, or -1.
  int index_of(int level, const std::string& id) const;

  int face(int level, int i, int idx) const;        // d_i : X_level -> X_{level-1}
  int degeneracy(int level, int i, int idx) const;  // s_i : X_level -> X_{level+1}
  const std::vector<int>& face_table(int level, int i) const;
  const std::vector<int>& degeneracy_table(int level, int i) const;

  /// Contravariant action of phi : [m] -> [n] as a full table X_n -> X_m,
  /// computed through the epi-mono factorization so no intermediate level
  /// exceeds the cap. Functorial: act(psi ∘ phi) = act(phi) ∘ act(psi).
  std::vector<int> act(const MonotoneMap& phi) const;

  /// Vertex j of an n-cell, as a 0-cell index.
  int vertex(int level, int j, int idx) const;
  /// Principal edge (i-1, i) of an n-cell, 1 <= i <= level, as a 1-cell index.
  int principal_edge_of(int level, int i, int idx) const;
  /// Image under the unique active map [1] -> [n]; for n = 0 this is s_0.
  int long_edge(int level, int idx) const;

  /// True iff the cell is a retract s_i(d_i(cell)) for some i. Vertices are
  /// nondegenerate by convention and level 0 is rejected.
  bool is_degenerate(int level, int idx) const;

  ValidationReport validate() const;

 private:
  void check_level(int level) const;

  SSetData data_;
  Provenance provenance_;
  std::vector<std::unordered_map<std::string, int>> index_;
};

using SSetPtr = std::shared_ptr<const TruncatedSSet>;

ValidationReport validate(const TruncatedSSet& sset);

/// A levelwise map between two truncated simplicial sets of equal cap,
/// commuting with all faces and degeneracies (verified at construction).
class SimplicialMap {
 public:
  SimplicialMap(SSetPtr source, SSetPtr target,
                std::vector<std::vector<int>> components);

  const SSetPtr& source() const { return source_; }
  const SSetPtr& target() const { return target_; }
  int apply(int level, int idx) const;
  const std::vector<int>& component(int level) const;

 private:
  SSetPtr source_;
  SSetPtr target_;
  std::vector<std::vector<int>> components_;
};

/// f_0 injective ("fibres are (-1)-truncated" in simplicial degree 0).
bool is_mono_on_objects(const SimplicialMap& f);

/// A levelwise subset of an ambient simplicial set, closed under all faces
/// and degeneracies (verified at construction).
class SubSSet {
 public:
  SubSSet(SSetPtr ambient, std::vector<std::vector<int>> selected,
          bool from_full_hull = false);

  const SSetPtr& ambient() const { return ambient_; }
  const std::vector<int>& selected(int level) const;
  bool contains(int level, int idx) const;
  int size(int level) const { return static_cast<int>(selected_[static_cast<std::size_t>(level)].size()); }
  bool from_full_hull() const { return from_full_hull_; }

  bool is_empty() const;
  bool is_everything() const;

  /// The selected cells as a standalone simplicial set with the same cell
  /// ids. Full hulls of nerve-provenance ambients keep that provenance
  /// (a full hull of a nerve is the nerve of the full subposet).
  SSetPtr extract() const;
  /// The inclusion of extract() into the ambient.
  SimplicialMap inclusion() const;
  /// The inclusion of a previously extracted copy (so that functionals built
  /// on it share the same base object).
  SimplicialMap inclusion_of(const SSetPtr& extracted) const;

 private:
  SSetPtr ambient_;
  std::vector<std::vector<int>> selected_;
  std::vector<std::vector<char>> member_;
  bool from_full_hull_;
};

// ---------------------------------------------------------------------------
// Finite pullback checking: the universal primitive.

/// A total function between finite sets given by its table.
struct FiniteMap {
  int domain_size = 0;
  int codomain_size = 0;
  std::vector<int> table;

  FiniteMap() = default;
  FiniteMap(int dom, int cod, std::vector<int> t);
  static FiniteMap identity(int n);
  int operator()(int x) const { return table[static_cast<std::size_t>(x)]; }
};

/// A commuting square of finite sets
///
///     P ──top──> A
///     │          │
///   left       right
///     v          v
///     B ─bottom─> C
struct Square {
  int p_size = 0, a_size = 0, b_size = 0, c_size = 0;
  FiniteMap top, left, right, bottom;  // P->A, P->B, A->C, B->C
};

struct PullbackWitness {
  enum class Kind { Duplicate, Missing };
  Kind kind;
  // Duplicate: two P-elements with the same image in A x_C B.
  int p1 = -1, p2 = -1;
  // Missing: a fiber-product element (a, (b_1, ..., b_k)) with no preimage.
  int a = -1;
  std::vector<int> b;
};

struct PullbackCheck {
  bool is_pullback = false;
  std::optional<PullbackWitness> witness;
};

/// True iff the canonical map P -> A x_C B is a bijection; on failure the
/// witness is either a fiber-product element with empty preimage or two
/// P-elements with the same image. Throws InputError if the square does not
/// commute.
PullbackCheck is_pullback(const Square& sq);

/// The general form used by the axiom checkers: the lower corners are
/// products ΠB_i -> ΠC_i with componentwise maps, so the fiber product
/// A x_C ΠB_i can be counted without materializing the products. k = 1
/// recovers the plain square; k = 0 (empty product) makes the condition
/// "top is a bijection".
struct ProductSquareComponent {
  FiniteMap p_to_b;  // P -> B_i
  FiniteMap a_to_c;  // A -> C_i
  FiniteMap b_to_c;  // B_i -> C_i
};

struct ProductSquare {
  int p_size = 0;
  int a_size = 0;
  FiniteMap p_to_a;
  std::vector<ProductSquareComponent> components;
};

PullbackCheck is_pullback(const ProductSquare& sq);

}  // namespace decomp
