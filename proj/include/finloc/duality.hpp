#pragma once

#include <string>
#include <vector>

#include "finloc/frames.hpp"

namespace finloc {

// Finite topological space; opens are point bitmasks.
struct FinTopSpace {
  std::vector<std::string> points;
  std::vector<Subset> opens;  // ascending by size then mask

  int size() const { return static_cast<int>(points.size()); }
  int num_opens() const { return static_cast<int>(opens.size()); }
  bool is_open(Subset s) const;
  int open_index(Subset s) const;  // -1 when not open
};

// Validates: contains empty and full, closed under union and
// intersection. Throws NotATopology with a witness.
FinTopSpace make_space(std::vector<std::string> points,
                       std::vector<Subset> opens);

// Lc on objects: the inclusion-ordered lattice of opens as a frame.
FramePtr open_set_frame(const FinTopSpace& x, const Guards& g = {});

// All frame homomorphisms L -> 2 as 0/1 tables, sorted.
std::vector<std::vector<int>> frame_points(const Frame& l);

// Sp on objects: points are the frame homomorphisms, opens are the
// extents a^ = {p : p(a) = 1}. Frame homs preserve joins, so the extents
// already form a topology.
FinTopSpace points_space(FramePtr l, const Guards& g = {});

// Backtracking bijection preserving openness both ways.
bool homeomorphic(const FinTopSpace& a, const FinTopSpace& b);

bool space_compact(const FinTopSpace& x);
bool space_regular(const FinTopSpace& x);
bool space_t0(const FinTopSpace& x);

struct DualityReport {
  bool triangle_space_ok = false;   // Sp(eps) . eta_Sp = id on points
  bool triangle_frame_ok = false;   // eps at Lc(X) . Lc(eta) = id on opens
  bool regular_match = false;       // X regular iff Lc(X) regular
  bool compact_match = false;       // X compact iff Lc(X) compact
  bool sober_roundtrip = false;     // Sp(Lc(X)) homeomorphic to X

  bool adjunction_ok() const { return triangle_space_ok && triangle_frame_ok; }
};

DualityReport duality_check(const FinTopSpace& x, const Guards& g = {});

// Counit side: Lc(Sp(L)) is isomorphic to L (finite frames are spatial).
bool spatial_roundtrip(FramePtr l, const Guards& g = {});

// All labeled topologies on n named points, deterministic order.
std::vector<FinTopSpace> all_topologies(int n);

}  // namespace finloc
