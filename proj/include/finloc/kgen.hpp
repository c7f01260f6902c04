#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finloc/fincat.hpp"
#include "finloc/frames.hpp"

namespace finloc {

// The thin category of compact sublocales of a frame, with inclusions,
// both as a FinCategory and as a locale diagram ready for colimits.
// Every sublocale of a finite frame is compact; the construction asserts
// this per object instead of assuming it.
struct KDiagram {
  FramePtr parent;
  std::vector<Sublocale> objects;      // ascending by size then mask
  std::vector<FramePtr> object_frames;
  CatPtr category;                     // thin, ordered by inclusion
  LocDiagram diagram;                  // object_frames with inclusion maps
  std::vector<LocalicMap> legs;        // per object: inclusion into parent

  // Index of the sublocale with the given member mask; -1 when absent.
  int index_of(Subset members) const;
};

KDiagram k_diagram(FramePtr l, const Guards& g = {});

// colim of the K-diagram with the counit eps: T(L) -> L factoring the
// inclusion cocone; iso is the compact-generation test.
struct DensityCounit {
  KDiagram kd;
  LocColimit colimit;  // apex = T(L)
  LocalicMap eps;
  bool iso = false;
};

// Throws NotStronglyHausdorff unless allow_non_sh; the negative cases
// (e.g. the 3-chain) are still worth probing under the flag.
DensityCounit density_counit_locale(FramePtr l, bool allow_non_sh = false,
                                    const Guards& g = {});

// Finite stand-in for a category of locales: a list of frames with all
// localic maps among them enumerated, plus computed per-frame flags.
struct LocaleUniverse {
  std::vector<FramePtr> frames;
  // maps[i][j]: all localic maps frames[i] -> frames[j]
  std::vector<std::vector<std::vector<LocalicMap>>> maps;
  std::vector<bool> strongly_hausdorff;
  std::vector<bool> compact;
};

LocaleUniverse make_universe(std::vector<FramePtr> frames,
                             const Guards& g = {});

// Reflection of the over-category of compact strongly Hausdorff arrows
// into L onto the compact sublocales: R(sigma) = image of sigma.
struct ReflectionData {
  struct OverObject {
    int frame;        // universe index of the domain
    LocalicMap map;   // sigma: K -> L
    Sublocale image;  // R(sigma)
  };
  std::vector<OverObject> objects;
  bool adjunction_ok = false;  // hom-set bijection of the reflection
  bool u_final = false;        // finality of the sublocale inclusion functor
};

// Throws UniverseTooSmall when some image sublocale has no isomorphic
// representative among the universe frames.
ReflectionData image_reflection(const LocaleUniverse& u, int l,
                                const Guards& g = {});

struct CoreflectorK {
  std::vector<FramePtr> k_of;  // per universe frame: T(L)
  std::vector<bool> iso;       // per universe frame: compactly generated
  bool hom_bijection_ok = false;
};

CoreflectorK coreflector_k(const LocaleUniverse& u, const Guards& g = {});

// T applied twice collapses: the leg images tile T(L) into compact
// sublocales, eps at T(L) is iso, and T(T(L)) is isomorphic to T(L).
bool idempotence_locale_check(FramePtr l, const Guards& g = {});

// G: K(L) x K(L') -> K(L x L') by images of product sublocales, with its
// left adjoint F(Q) = (p(Q), p'(Q)); finality of G; and the product cone
// theta checked colimiting by direct enumeration.
struct ProductFinalityReport {
  bool adjunction_ok = false;
  bool g_final = false;
  bool theta_colimiting = false;

  bool all() const { return adjunction_ok && g_final && theta_colimiting; }
};

ProductFinalityReport product_finality_check(FramePtr l, FramePtr lp,
                                             const Guards& g = {});

}  // namespace finloc
