#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finloc/fincat.hpp"

namespace finloc {

// Full subcategory on a subset of objects, with index translation both ways.
struct FullSubcategory {
  CatPtr ambient;
  std::vector<int> objects;  // ambient object ids, ascending
  CatPtr category;
  std::vector<int> mor_of;   // sub morphism -> ambient morphism

  int sub_object(int ambient_obj) const;        // throws UnknownObject
  std::optional<int> sub_morphism(int ambient_mor) const;
  Functor inclusion() const;
};

FullSubcategory full_subcategory(CatPtr c, std::vector<int> objects);

// Density comonad of the inclusion of a full subcategory W, computed as a
// pointwise left Kan extension: T(c) = colim of the projection W/c -> C.
// The per-object colimiting cones are kept because epsilon, delta and the
// action on morphisms all arise from unique factorizations through them.
struct ComonadData {
  CatPtr carrier;
  FullSubcategory w;
  Functor t;                          // endofunctor of the carrier
  std::vector<SliceCategory> slices;  // per object c: W/c
  std::vector<Cone> cones;            // per object c: colimiting cone, apex T(c)
  std::vector<int> eta;               // per W-object index: w -> T(w)
  std::vector<int> epsilon;           // per object: T(c) -> c
  std::vector<int> delta;             // per object: T(c) -> T(T(c))
};

// Absent when some slice colimit is missing; `failure` then names the object.
std::optional<ComonadData> density_comonad(CatPtr c, std::vector<int> wobjs,
                                           std::string* failure = nullptr,
                                           const Guards& g = Guards{});

bool is_idempotent(const ComonadData& m);

// Full subcategory on {c : epsilon_c iso}; requires idempotence, where this
// coincides with the category of coalgebras.
FullSubcategory coalgebra_category(const ComonadData& m);

// F_T = T corestricted to the coalgebras. Throws NotIdempotent, and
// InternalInvariantBroken if some T(c) fails the coalgebra test.
Functor coreflector(const ComonadData& m, const FullSubcategory& coalg);

// Hom-set bijection C(U(x), c) <-> W_l(x, F_T(c)) via g -> epsilon_c . g,
// checked exhaustively for every coalgebra x and object c.
bool coreflection_check(const ComonadData& m, const FullSubcategory& coalg);

// c is W-generated iff it is a coalgebra. Throws NotIdempotent.
bool generated_check(const ComonadData& m, int c);
// Independent route: the tautological cocone over W/c (legs sigma) with
// apex c is colimiting.
bool generated_check_via_colimit(const ComonadData& m, int c,
                                 const Guards& g = Guards{});

// Chosen binary products, searched exhaustively per pair; a pair without a
// product is marked absent and accessors throw MissingProducts.
class CartesianData {
 public:
  explicit CartesianData(CatPtr c);

  const CatPtr& category() const { return c_; }
  bool has(int a, int b) const { return prod_[idx(a, b)] >= 0; }
  int object(int a, int b) const;
  int proj1(int a, int b) const;
  int proj2(int a, int b) const;
  // Mediating <fa, fb>: x -> a*b for fa: x -> a, fb: x -> b.
  int pair(int a, int b, int fa, int fb) const;
  // f*g: a*b -> a2*b2 for f: a -> a2, g: b -> b2.
  int times(int a, int b, int a2, int b2, int f, int g) const;
  // The functor -*e when every product with e exists.
  std::optional<Functor> times_right(int e) const;

 private:
  int idx(int a, int b) const { return a * c_->num_objects() + b; }
  CatPtr c_;
  std::vector<int> prod_, p1_, p2_;
};

// Exponential of e at z: (z^e, ev: z^e * e -> z) with the transpose
// bijection verified against every object; absent when none exists.
struct ExponentialData {
  int expo;
  int ev;
};
std::optional<ExponentialData> find_exponential(const CartesianData& prod,
                                                int e, int z);
// e is exponentiable iff z^e exists for every z.
bool is_exponentiable(const CartesianData& prod, int e);
// Unique t: x -> z^e with ev . (t * id_e) = h, for h: x * e -> z.
int transpose(const CartesianData& prod, const ExponentialData& ex, int e,
              int z, int x, int h);

struct CloseableReport {
  bool exponentiable_ok = false;
  bool product_closure_ok = false;
  bool theta_colimiting_ok = false;
  bool s_functor_limit_ok = false;
  std::string witness;

  bool all() const {
    return exponentiable_ok && product_closure_ok && theta_colimiting_ok &&
           s_functor_limit_ok;
  }
};

CloseableReport closeable_check(const ComonadData& m, const CartesianData& prod,
                                const Guards& g = Guards{});

// Z^Y = F_T(lim S^Y_Z), the limit taken over (W/Y)^op of (w, sigma) -> Z^w.
// Throws NotCloseable when closeable_check fails.
int internal_hom(const ComonadData& m, const CartesianData& prod, int y, int z,
                 const Guards& g = Guards{});

// |Hom(X*Y, Z)| = |Hom(X, Z^Y)| for all coalgebra triples.
bool exponential_adjunction_check(const ComonadData& m,
                                  const CartesianData& prod,
                                  const Guards& g = Guards{});

// b: I x J -> C (product_category index convention). True iff the canonical
// comparison from the joint colimit to the iterated colimit is iso. Throws
// MissingColimit naming the first failing partial diagram.
bool fubini_check(const Functor& b, CatPtr i, CatPtr j,
                  const Guards& g = Guards{});

}  // namespace finloc
