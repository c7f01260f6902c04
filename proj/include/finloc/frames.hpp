#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "finloc/lattice.hpp"

namespace finloc {

// A finite lattice validated against the frame distributivity law
// a /\ \/B = \/{a /\ b : b in B}. Construct via check_frame.
class Frame {
 public:
  const FinLattice& lattice() const { return *lat_; }
  const LatPtr& lattice_ptr() const { return lat_; }
  int size() const { return lat_->size(); }
  bool leq(int a, int b) const { return lat_->leq(a, b); }
  int meet(int a, int b) const { return lat_->meet(a, b); }
  int join(int a, int b) const { return lat_->join(a, b); }
  int meet_all(Subset s) const { return lat_->meet_all(s); }
  int join_all(Subset s) const { return lat_->join_all(s); }
  int bottom() const { return lat_->bottom(); }
  int top() const { return lat_->top(); }
  const std::string& name(int i) const { return lat_->name(i); }
  int index_of(const std::string& n) const { return lat_->index_of(n); }
  Subset full_set() const { return lat_->full_set(); }

 private:
  friend std::shared_ptr<const Frame> check_frame(LatPtr, const Guards&);
  explicit Frame(LatPtr l) : lat_(std::move(l)) {}
  LatPtr lat_;
};

using FramePtr = std::shared_ptr<const Frame>;

// Throws NotAFrame with a violating (a, B) witness.
FramePtr check_frame(LatPtr l, const Guards& g = {});
FramePtr frame_of(const FinLattice& l, const Guards& g = {});

// Heyting operator a => b = \/{x : a /\ x <= b}.
int heyting(const Frame& f, int a, int b);
// a* = a => 0.
int pseudocomplement(const Frame& f, int a);
// a -< b iff a* \/ b = 1.
bool rather_below(const Frame& f, int a, int b);
// x << y iff every directed D with y <= \/D contains some d >= x.
// Decided by enumerating directed subsets (guarded).
bool well_below(const Frame& f, int x, int y, const Guards& g = {});
bool is_regular(const Frame& f);
bool is_continuous(const Frame& f, const Guards& g = {});
// Literal cover check over all subsets (guarded); finite frames are
// always compact but the enumeration is the contract.
bool is_compact(const Frame& f, const Guards& g = {});

// Subset of a frame closed under all meets and under x => (-).
struct Sublocale {
  FramePtr parent;
  Subset members = 0;

  bool contains(int x) const { return subset_has(members, x); }
  int count() const { return subset_size(members); }
};

struct SublocaleViolation {
  std::string what;
};

// Checks the two sublocale closure conditions; violation is a result,
// not an error.
std::variant<Sublocale, SublocaleViolation> is_sublocale(FramePtr f, Subset members);
bool sublocale_ok(const Frame& f, Subset members);

// c(a) = up-set of a.
Sublocale closed_sublocale(FramePtr f, int a);

// Views a sublocale as a frame in its own right (induced order).
FramePtr sublocale_as_frame(const Sublocale& s, const Guards& g = {});
// Element index into sublocale_as_frame's carrier for a parent element.
int sublocale_element_index(const Sublocale& s, int parent_elt);
int sublocale_element_of_parent(const Sublocale& s, int sub_elt);

// Meet-preserving map whose left adjoint preserves finite meets; both
// directions are stored. f: L -> M, f_star: M -> L.
class LocalicMap {
 public:
  // Computes and validates the left adjoint; throws NotLocalic when f is
  // not meet-preserving or f* fails to preserve finite meets.
  LocalicMap(FramePtr src, FramePtr tgt, std::vector<int> table);

  const FramePtr& src() const { return src_; }
  const FramePtr& tgt() const { return tgt_; }
  int operator()(int x) const { return f_.table()[x]; }
  int star(int y) const { return f_star_.table()[y]; }
  const MonotoneMap& map() const { return f_; }
  const MonotoneMap& star_map() const { return f_star_; }

  static LocalicMap identity(FramePtr f);
  LocalicMap compose_after(const LocalicMap& inner) const;
  bool is_isomorphism() const;

 private:
  FramePtr src_, tgt_;
  MonotoneMap f_, f_star_;
};

// Inclusion of a sublocale (as its own frame) into the parent.
LocalicMap sublocale_inclusion(const Sublocale& s, const Guards& g = {});

// f(S) = {f(s) : s in S}; throws InternalInvariantBroken if the image
// fails the sublocale check.
Sublocale sublocale_image(const LocalicMap& f, const Sublocale& s);
// Full image of the map as a sublocale of the target.
Sublocale localic_image(const LocalicMap& f);

bool is_closed_map(const LocalicMap& f);
// f^{-1}(c(b)); asserts it equals c(f*(b)).
Sublocale preimage_closed(const LocalicMap& f, int b);

struct SublocaleLattice {
  FramePtr parent;
  std::vector<Subset> sublocales;  // ordered by inclusion-compatible mask order
};

SublocaleLattice sublocale_lattice(FramePtr f, const Guards& g = {});
Subset sub_meet(const std::vector<Subset>& members);
Subset sub_join(const Frame& f, const std::vector<Subset>& members);

// Locale product L x M realized as the frame coproduct: elements are
// C-ideals of the poset L x M, ordered by inclusion. Product points are
// indexed a * |M| + b and C-ideals are bitmasks over them.
struct FrameProduct {
  FramePtr left, right;
  FramePtr product;
  std::vector<std::uint64_t> ideals;  // per product-frame element
  std::vector<int> basic;             // (a,b) -> element whose ideal is cl(down(a,b))

  int point(int a, int b) const { return a * right->size() + b; }
  int basic_element(int a, int b) const { return basic[point(a, b)]; }
  // Element whose C-ideal is the saturation of the given point set union
  // with the basics it contains; throws InternalInvariantBroken if the
  // closure is not an element (cannot happen for closures of downsets).
  int element_of_ideal(std::uint64_t ideal) const;

  LocalicMap projection_left() const;
  LocalicMap projection_right() const;
};

FrameProduct frame_product(FramePtr l, FramePtr m, const Guards& g = {});

// Product of localic maps K -> L, K' -> L' as a localic map between the
// C-ideal frames.
LocalicMap product_map(const FrameProduct& src, const FrameProduct& tgt,
                       const LocalicMap& f, const LocalicMap& g);

// Diagonal localic map L -> L x L; its frame-side adjoint sends the
// basic C-ideal of (a,b) to a /\ b.
LocalicMap diagonal(const FrameProduct& square);
bool is_strongly_hausdorff(FramePtr l, const Guards& g = {});

// Finite diagram of frames and localic maps, colimit taken in the
// locale direction (limit of the frame-homomorphism diagram).
struct LocDiagram {
  struct Arrow {
    int src = 0, tgt = 0;
    LocalicMap f;
  };
  std::vector<FramePtr> objects;
  std::vector<Arrow> arrows;
};

struct LocCocone {
  FramePtr apex;
  std::vector<LocalicMap> legs;  // legs[i]: objects[i] -> apex
};

struct LocColimit {
  FramePtr apex;
  std::vector<LocalicMap> legs;
  std::vector<std::vector<int>> families;  // apex element -> compatible family
};

LocColimit loc_colimit(const LocDiagram& d, const Guards& g = {});

// Unique mediating localic map colim -> apex of the cocone; nullopt when
// the candidate fails to commute (the cocone is then not over d).
std::optional<LocalicMap> loc_colimit_factor(const LocDiagram& d,
                                             const LocColimit& c,
                                             const LocCocone& cocone);

// True iff `cocone` is itself colimiting for d: the canonical comparison
// from the computed colimit is an isomorphism.
bool loc_cocone_is_colimiting(const LocDiagram& d, const LocCocone& cocone,
                              const Guards& g = {});

// Backtracking isomorphism search; returns an order-isomorphism table
// src -> tgt when one exists.
std::optional<std::vector<int>> frame_iso(const Frame& a, const Frame& b);

// All localic maps from L to M, by exhaustive monotone-map search.
std::vector<LocalicMap> enumerate_localic_maps(FramePtr l, FramePtr m);

}  // namespace finloc
