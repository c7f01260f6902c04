#include "finloc/duality.hpp"

#include <algorithm>
#include <numeric>

namespace finloc {

namespace {

std::string mask_name(const std::vector<std::string>& points, Subset s) {
  std::string out = "{";
  bool first = true;
  for (size_t i = 0; i < points.size(); ++i)
    if (subset_has(s, static_cast<int>(i))) {
      if (!first) out += ",";
      out += points[i];
      first = false;
    }
  return out + "}";
}

}  // namespace

bool FinTopSpace::is_open(Subset s) const { return open_index(s) >= 0; }

int FinTopSpace::open_index(Subset s) const {
  for (int i = 0; i < num_opens(); ++i)
    if (opens[i] == s) return i;
  return -1;
}

FinTopSpace make_space(std::vector<std::string> points,
                       std::vector<Subset> opens) {
  if (points.size() > 32) throw NotATopology("too many points");
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw NotATopology("duplicate point name " + points[i]);
  Subset full =
      points.empty() ? 0 : (Subset{1} << points.size()) - 1;
  std::sort(opens.begin(), opens.end(), [](Subset a, Subset b) {
    int ca = subset_size(a), cb = subset_size(b);
    return ca != cb ? ca < cb : a < b;
  });
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  for (Subset o : opens)
    if ((o & ~full) != 0) throw NotATopology("open set references unknown points");
  auto is_in = [&](Subset s) {
    return std::find(opens.begin(), opens.end(), s) != opens.end();
  };
  if (!is_in(0)) throw NotATopology("the empty set is not open");
  if (!is_in(full)) throw NotATopology("the full set is not open");
  for (Subset a : opens)
    for (Subset b : opens) {
      if (!is_in(a | b))
        throw NotATopology("union " + mask_name(points, a | b) + " is not open");
      if (!is_in(a & b))
        throw NotATopology("intersection " + mask_name(points, a & b) +
                           " is not open");
    }
  return FinTopSpace{std::move(points), std::move(opens)};
}

FramePtr open_set_frame(const FinTopSpace& x, const Guards& g) {
  std::vector<std::string> names;
  for (Subset o : x.opens) names.push_back(mask_name(x.points, o));
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < x.num_opens(); ++a)
    for (int b = 0; b < x.num_opens(); ++b)
      if ((x.opens[a] & ~x.opens[b]) == 0) pairs.emplace_back(a, b);
  return frame_of(validate_lattice(std::move(names), pairs), g);
}

std::vector<std::vector<int>> frame_points(const Frame& l) {
  const int n = l.size();
  std::vector<std::vector<int>> out;
  for (Subset mask = 0; mask < (Subset{1} << n); ++mask) {
    auto h = [&](int a) { return subset_has(mask, a) ? 1 : 0; };
    if (h(l.bottom()) != 0 || h(l.top()) != 1) continue;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) {
        if (h(l.meet(a, b)) != (h(a) & h(b))) ok = false;
        if (h(l.join(a, b)) != (h(a) | h(b))) ok = false;
      }
    if (!ok) continue;
    std::vector<int> table(n);
    for (int a = 0; a < n; ++a) table[a] = h(a);
    out.push_back(std::move(table));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FinTopSpace points_space(FramePtr l, const Guards& g) {
  (void)g;
  auto pts = frame_points(*l);
  std::vector<std::string> names;
  for (size_t i = 0; i < pts.size(); ++i)
    names.push_back("p" + std::to_string(i));
  std::vector<Subset> opens;
  for (int a = 0; a < l->size(); ++a) {
    Subset extent = 0;
    for (size_t p = 0; p < pts.size(); ++p)
      if (pts[p][a]) extent |= subset_of(static_cast<int>(p));
    opens.push_back(extent);
  }
  return make_space(std::move(names), std::move(opens));
}

bool homeomorphic(const FinTopSpace& a, const FinTopSpace& b) {
  if (a.size() != b.size() || a.num_opens() != b.num_opens()) return false;
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (Subset o : a.opens) {
      Subset img = 0;
      for (int i = 0; i < a.size() && ok; ++i)
        if (subset_has(o, i)) img |= subset_of(perm[i]);
      if (!b.is_open(img)) ok = false;
      if (!ok) break;
    }
    if (ok) return true;  // open count equal, so the inverse matches too
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool space_compact(const FinTopSpace& x) {
  if (x.num_opens() > 20) throw SizeGuardExceeded("too many opens for the cover scan");
  Subset full = x.size() == 0 ? 0 : (Subset{1} << x.size()) - 1;
  for (std::uint32_t family = 0; family < (1u << x.num_opens()); ++family) {
    Subset u = 0;
    for (int i = 0; i < x.num_opens(); ++i)
      if (family & (1u << i)) u |= x.opens[i];
    if (u != full) continue;
    // A finite subfamily joining to the whole space: the family itself.
    bool found = false;
    for (std::uint32_t sub = family;; sub = (sub - 1) & family) {
      Subset su = 0;
      for (int i = 0; i < x.num_opens(); ++i)
        if (sub & (1u << i)) su |= x.opens[i];
      if (su == full) {
        found = true;
        break;
      }
      if (sub == 0) break;
    }
    if (!found) return false;
  }
  return true;
}

namespace {

Subset closure(const FinTopSpace& x, Subset s) {
  Subset full = x.size() == 0 ? 0 : (Subset{1} << x.size()) - 1;
  Subset exterior = 0;
  for (Subset o : x.opens)
    if ((o & s) == 0) exterior |= o;
  return full & ~exterior;
}

}  // namespace

bool space_regular(const FinTopSpace& x) {
  for (int p = 0; p < x.size(); ++p)
    for (Subset u : x.opens) {
      if (!subset_has(u, p)) continue;
      bool separated = false;
      for (Subset v : x.opens)
        if (subset_has(v, p) && (closure(x, v) & ~u) == 0) {
          separated = true;
          break;
        }
      if (!separated) return false;
    }
  return true;
}

bool space_t0(const FinTopSpace& x) {
  for (int p = 0; p < x.size(); ++p)
    for (int q = p + 1; q < x.size(); ++q) {
      bool split = false;
      for (Subset o : x.opens)
        if (subset_has(o, p) != subset_has(o, q)) {
          split = true;
          break;
        }
      if (!split) return false;
    }
  return true;
}

DualityReport duality_check(const FinTopSpace& x, const Guards& g) {
  DualityReport r;
  FramePtr l = open_set_frame(x, g);
  auto pts = frame_points(*l);
  FinTopSpace y = points_space(l, g);

  // eta: each point of X to the frame hom "does my point lie in it".
  std::vector<int> eta(x.size(), -1);
  for (int p = 0; p < x.size(); ++p) {
    std::vector<int> table(l->size());
    for (int a = 0; a < l->size(); ++a)
      table[a] = subset_has(x.opens[a], p) ? 1 : 0;
    for (size_t q = 0; q < pts.size(); ++q)
      if (pts[q] == table) eta[p] = static_cast<int>(q);
    if (eta[p] < 0) return r;  // eta must always land in the points
  }

  // Triangle at the space: Sp(eps) composed with eta on Sp(L) is the
  // identity on the points of L.
  r.triangle_space_ok = true;
  for (size_t h = 0; h < pts.size(); ++h) {
    std::vector<int> through(l->size());
    for (int a = 0; a < l->size(); ++a) {
      Subset extent = 0;
      for (size_t q = 0; q < pts.size(); ++q)
        if (pts[q][a]) extent |= subset_of(static_cast<int>(q));
      int oi = y.open_index(extent);
      if (oi < 0) {
        r.triangle_space_ok = false;
        break;
      }
      through[a] = subset_has(y.opens[oi], static_cast<int>(h)) ? 1 : 0;
    }
    if (through != pts[h]) r.triangle_space_ok = false;
  }

  // Triangle at the locale: pulling the extent of an open back along eta
  // recovers the open.
  r.triangle_frame_ok = true;
  for (int a = 0; a < l->size(); ++a) {
    Subset pre = 0;
    for (int p = 0; p < x.size(); ++p)
      if (pts[eta[p]][a]) pre |= subset_of(p);
    if (pre != x.opens[a]) r.triangle_frame_ok = false;
  }

  r.regular_match = space_regular(x) == is_regular(*l);
  r.compact_match = space_compact(x) == is_compact(*l, g);
  r.sober_roundtrip = homeomorphic(y, x);
  return r;
}

bool spatial_roundtrip(FramePtr l, const Guards& g) {
  FinTopSpace y = points_space(l, g);
  FramePtr back = open_set_frame(y, g);
  return frame_iso(*back, *l).has_value();
}

std::vector<FinTopSpace> all_topologies(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  Subset full = n == 0 ? 0 : (Subset{1} << n) - 1;
  std::vector<Subset> middle;
  for (Subset s = 1; s < full; ++s) middle.push_back(s);
  std::vector<FinTopSpace> out;
  const std::uint32_t limit = 1u << middle.size();
  for (std::uint32_t pick = 0; pick < limit; ++pick) {
    std::vector<Subset> opens{0, full};
    for (size_t i = 0; i < middle.size(); ++i)
      if (pick & (1u << i)) opens.push_back(middle[i]);
    bool closed = true;
    auto member = [&](Subset s) {
      return std::find(opens.begin(), opens.end(), s) != opens.end();
    };
    for (size_t i = 0; i < opens.size() && closed; ++i)
      for (size_t j = 0; j < opens.size() && closed; ++j)
        if (!member(opens[i] | opens[j]) || !member(opens[i] & opens[j]))
          closed = false;
    if (closed) out.push_back(make_space(names, opens));
  }
  return out;
}

}  // namespace finloc
