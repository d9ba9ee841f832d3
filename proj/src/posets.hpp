#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sset.hpp"

namespace decomp {

/// A finite poset. Input either as cover relations (closed reflexively and
/// transitively, with cycle detection) or as a full order (verified
/// reflexive, transitive, antisymmetric).
class Poset {
 public:
  enum class RelationKind { Covers, Order };

  Poset(std::vector<std::string> elements, const std::vector<std::pair<int, int>>& pairs,
        RelationKind kind);

  int size() const { return static_cast<int>(elements_.size()); }
  const std::string& name(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  int index_of(const std::string& name) const;
  bool leq(int a, int b) const { return leq_[static_cast<std::size_t>(a * size() + b)] != 0; }

  /// Edge count of the longest strict chain.
  int longest_chain_edges() const;

 private:
  std::vector<std::string> elements_;
  std::vector<char> leq_;
};

/// Nerve of a poset: X_n is the set of weakly increasing (n+1)-chains, faces
/// delete entries and degeneracies repeat them. Cells are named by their
/// chain tuples. The default cap is longest strict chain + 1 (at least 2),
/// which guarantees Phi_cap == 0 and hence the nerve-with-chain-bound
/// provenance; an explicit smaller cap demotes the provenance to raw.
SSetPtr nerve(const Poset& p, std::optional<int> cap = std::nullopt);

struct CategoryMorphism {
  std::string name;
  int dom = 0;
  int cod = 0;
};

/// A finite category presentation: total composition on composable pairs,
/// verified associative and unital. Morphism names must not clash with
/// object names (cells of the nerve are named by them).
class Category {
 public:
  Category(std::vector<std::string> objects, std::vector<CategoryMorphism> morphisms,
           std::vector<int> identities, const std::vector<std::array<int, 3>>& composition);

  int objects() const { return static_cast<int>(object_names_.size()); }
  int morphisms() const { return static_cast<int>(morphisms_.size()); }
  const std::string& object_name(int i) const { return object_names_[static_cast<std::size_t>(i)]; }
  const CategoryMorphism& morphism(int i) const { return morphisms_[static_cast<std::size_t>(i)]; }
  int object_index(const std::string& name) const;
  int morphism_index(const std::string& name) const;
  int identity(int object) const { return identities_[static_cast<std::size_t>(object)]; }
  /// g after f; requires cod(f) = dom(g).
  int compose(int g, int f) const;

 private:
  std::vector<std::string> object_names_;
  std::vector<CategoryMorphism> morphisms_;
  std::vector<int> identities_;
  std::vector<int> table_;  // -1 when not composable
};

/// Nerve of a category: X_n is the set of composable n-chains of morphisms.
/// Provenance is raw; the cap is the caller's declared bound and the Möbius
/// condition is only earned through certify_finiteness by exhaustion.
SSetPtr nerve_category(const Category& c, int cap);

/// A poset viewed as a category (morphisms are the relation pairs).
Category category_from_poset(const Poset& p);

}  // namespace decomp
