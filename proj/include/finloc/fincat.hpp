#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "finloc/guards.hpp"
#include "finloc/lattice.hpp"

namespace finloc {

// Composition-table category. Morphism and object ids are indices;
// compose(g, f) is g after f, defined exactly when src(g) == tgt(f).
class FinCategory {
 public:
  struct MorphismData {
    std::string name;
    int src = 0, tgt = 0;
  };

  // Validates associativity and identity laws exhaustively; throws
  // AssocViolation / IdentityViolation with a witness.
  static FinCategory from_tables(std::vector<std::string> objects,
                                 std::vector<MorphismData> morphisms,
                                 std::vector<int> identities,
                                 std::vector<int> compose_table);

  // Thin category of a poset: morphisms are the order pairs.
  static FinCategory from_poset(const FinPoset& p);
  static FinCategory from_lattice(const FinLattice& l) { return from_poset(l.poset()); }

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(mors_.size()); }
  const std::string& object_name(int o) const { return objects_[o]; }
  const std::string& morphism_name(int m) const { return mors_[m].name; }
  int src(int m) const { return mors_[m].src; }
  int tgt(int m) const { return mors_[m].tgt; }
  int identity(int obj) const { return ids_[obj]; }
  bool is_identity(int m) const { return ids_[src(m)] == m; }

  // -1 when undefined (shape mismatch).
  int compose(int g, int f) const { return comp_[g * num_morphisms() + f]; }

  std::vector<int> hom(int a, int b) const;
  int object_index(const std::string& name) const;
  std::optional<int> try_object_index(const std::string& name) const;
  int morphism_index(const std::string& name) const;

  bool is_iso(int m) const;
  std::optional<int> inverse(int m) const;

 private:
  std::vector<std::string> objects_;
  std::vector<MorphismData> mors_;
  std::vector<int> ids_;
  std::vector<int> comp_;
};

using CatPtr = std::shared_ptr<const FinCategory>;

CatPtr thin_category(const FinPoset& p);
CatPtr opposite_category(CatPtr c);
// Product category; object (a,b) has index a * |B| + b, morphism (f,g)
// index f * |mor B| + g.
CatPtr product_category(CatPtr a, CatPtr b);

// Table functor; laws checked at construction (FunctorLawViolation).
class Functor {
 public:
  // Empty placeholder for deferred assignment; not usable until assigned.
  Functor() = default;
  Functor(CatPtr src, CatPtr tgt, std::vector<int> object_map,
          std::vector<int> morphism_map);

  const CatPtr& src() const { return src_; }
  const CatPtr& tgt() const { return tgt_; }
  int on_object(int o) const { return omap_[o]; }
  int on_morphism(int m) const { return mmap_[m]; }

  static Functor identity(CatPtr c);
  Functor compose_after(const Functor& inner) const;  // this ∘ inner

 private:
  CatPtr src_, tgt_;
  std::vector<int> omap_, mmap_;
};

// Natural family over a diagram X: J -> C with a chosen apex.
struct Cone {
  Functor diagram;          // X: J -> C
  int apex = 0;             // object of C
  std::vector<int> legs;    // per object of J: morphism X(j) -> apex

  // Naturality: leg_k ∘ X(alpha) = leg_j for every alpha: j -> k.
  bool is_natural() const;
};

// B/F for F: A -> C and B an object of C. Objects are arrows
// B -> F(A); morphisms are commuting triangles.
struct SliceCategory {
  CatPtr category;               // the slice itself
  std::vector<int> obj_domain;   // slice object -> object A of the source of F
  std::vector<int> obj_arrow;    // slice object -> morphism B -> F(A) in target
  std::vector<int> mor_arrow;    // slice morphism -> morphism of the source of F
};

SliceCategory slice_category(int base_obj, const Functor& f);
// Comma category F/B (objects F(A) -> B); used for right adjoints.
SliceCategory coslice_category(const Functor& f, int base_obj);

bool is_connected(const FinCategory& c);
// Final iff B/F is connected for every object B of the target.
bool is_final(const Functor& f);
// Cross-check route: colimit of C(B, F(-)) in Set is a singleton, via
// connected components of the category of elements.
bool is_final_via_set_colimit(const Functor& f);

struct Colimit {
  Cone cone;
};

// Enumerates cocones and returns one through which every cocone factors
// uniquely; deterministic representative: least apex index, then least
// leg tuple. Absent when no colimit exists.
std::optional<Colimit> find_colimit(const Functor& diagram,
                                    const Guards& g = Guards{});
bool is_colimiting(const Cone& c, const Guards& g = Guards{});
Cone restrict_cone(const Cone& c, const Functor& f);
// Unique h with h ∘ c1 = restrict(c2 along f); throws NotColimiting when
// either cone fails its premise.
int canonical_map(const Cone& c1, const Cone& c2, const Functor& f,
                  const Guards& g = Guards{});

std::optional<int> initial_object(const FinCategory& c);
std::optional<int> terminal_object(const FinCategory& c);

struct AdjointData {
  Functor left;              // F: D -> C (left adjoint of g: C -> D)
  std::vector<int> units;    // per object d: morphism d -> G(F(d)) in D
};

// For G: C -> D, finds an initial object of d/G for every d; absent if
// some slice has none.
std::optional<AdjointData> find_left_adjoint(const Functor& g);

}  // namespace finloc
