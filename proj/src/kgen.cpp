#include "finloc/kgen.hpp"

#include <algorithm>
#include <numeric>

namespace finloc {

namespace {

std::string sublocale_name(const Frame& parent, Subset members) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < parent.size(); ++i)
    if (subset_has(members, i)) {
      if (!first) out += ",";
      out += parent.name(i);
      first = false;
    }
  return out + "}";
}

bool subset_leq(Subset a, Subset b) { return (a & ~b) == 0; }

// Inclusion of objects[i] into objects[j] (i's members inside j's) as a
// localic map between the sublocale frames.
LocalicMap inclusion_between(const KDiagram& kd, int i, int j) {
  std::vector<int> table(kd.object_frames[i]->size());
  for (int x = 0; x < kd.object_frames[i]->size(); ++x)
    table[x] = sublocale_element_index(
        kd.objects[j], sublocale_element_of_parent(kd.objects[i], x));
  return LocalicMap(kd.object_frames[i], kd.object_frames[j], std::move(table));
}

// For thin categories: the unique morphism table induced by an object map.
std::vector<int> thin_mmap(const CatPtr& src, const CatPtr& tgt,
                           const std::vector<int>& omap) {
  std::vector<int> mmap(src->num_morphisms());
  for (int m = 0; m < src->num_morphisms(); ++m) {
    auto h = tgt->hom(omap[src->src(m)], omap[src->tgt(m)]);
    if (h.empty())
      throw InternalInvariantBroken("object map is not monotone");
    mmap[m] = h[0];
  }
  return mmap;
}

}  // namespace

int KDiagram::index_of(Subset members) const {
  for (size_t i = 0; i < objects.size(); ++i)
    if (objects[i].members == members) return static_cast<int>(i);
  return -1;
}

KDiagram k_diagram(FramePtr l, const Guards& g) {
  KDiagram kd;
  kd.parent = l;
  SublocaleLattice sl = sublocale_lattice(l, g);
  std::vector<std::string> names;
  for (Subset mask : sl.sublocales) {
    Sublocale s{l, mask};
    FramePtr sf = sublocale_as_frame(s, g);
    if (!is_compact(*sf, g))
      throw InternalInvariantBroken("non-compact sublocale " +
                                    sublocale_name(*l, mask));
    kd.objects.push_back(s);
    kd.object_frames.push_back(sf);
    kd.legs.push_back(sublocale_inclusion(s, g));
    names.push_back(sublocale_name(*l, mask));
  }
  const int n = static_cast<int>(kd.objects.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (subset_leq(kd.objects[i].members, kd.objects[j].members))
        pairs.emplace_back(i, j);
  kd.category = thin_category(FinPoset::from_pairs(std::move(names), pairs));
  kd.diagram.objects = kd.object_frames;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && subset_leq(kd.objects[i].members, kd.objects[j].members))
        kd.diagram.arrows.push_back({i, j, inclusion_between(kd, i, j)});
  return kd;
}

DensityCounit density_counit_locale(FramePtr l, bool allow_non_sh,
                                    const Guards& g) {
  if (!allow_non_sh && !is_strongly_hausdorff(l, g))
    throw NotStronglyHausdorff("frame is not strongly Hausdorff");
  DensityCounit d{k_diagram(l, g), {}, LocalicMap::identity(l), false};
  d.colimit = loc_colimit(d.kd.diagram, g);
  auto eps = loc_colimit_factor(d.kd.diagram, d.colimit,
                                LocCocone{l, d.kd.legs});
  if (!eps)
    throw InternalInvariantBroken("inclusion cocone does not factor");
  d.eps = *eps;
  d.iso = d.eps.is_isomorphism();
  return d;
}

LocaleUniverse make_universe(std::vector<FramePtr> frames, const Guards& g) {
  LocaleUniverse u;
  u.frames = std::move(frames);
  const int n = static_cast<int>(u.frames.size());
  u.maps.resize(n);
  for (int i = 0; i < n; ++i) {
    u.maps[i].resize(n);
    for (int j = 0; j < n; ++j)
      u.maps[i][j] = enumerate_localic_maps(u.frames[i], u.frames[j]);
    u.strongly_hausdorff.push_back(is_strongly_hausdorff(u.frames[i], g));
    u.compact.push_back(is_compact(*u.frames[i], g));
  }
  return u;
}

ReflectionData image_reflection(const LocaleUniverse& u, int l,
                                const Guards& g) {
  if (l < 0 || l >= static_cast<int>(u.frames.size()))
    throw UnknownObject("universe index out of range");
  FramePtr parent = u.frames[l];
  ReflectionData r;
  for (size_t i = 0; i < u.frames.size(); ++i) {
    if (!u.compact[i] || !u.strongly_hausdorff[i]) continue;
    for (const LocalicMap& sigma : u.maps[i][l])
      r.objects.push_back(
          {static_cast<int>(i), sigma, localic_image(sigma)});
  }
  // Every image must be representable inside the universe.
  for (const auto& o : r.objects) {
    FramePtr imf = sublocale_as_frame(o.image, g);
    bool present = false;
    for (const FramePtr& f : u.frames)
      if (frame_iso(*imf, *f)) {
        present = true;
        break;
      }
    if (!present)
      throw UniverseTooSmall("image " +
                             sublocale_name(*parent, o.image.members) +
                             " has no representative in the universe");
  }

  KDiagram kd = k_diagram(parent, g);
  r.adjunction_ok = true;
  std::vector<std::vector<char>> factors(r.objects.size(),
                                         std::vector<char>(kd.objects.size()));
  for (size_t oi = 0; oi < r.objects.size(); ++oi) {
    const auto& o = r.objects[oi];
    for (size_t s = 0; s < kd.objects.size(); ++s) {
      // Arrows over the parent from sigma to the inclusion of S.
      int count = 0;
      for (const LocalicMap& h :
           enumerate_localic_maps(u.frames[o.frame], kd.object_frames[s])) {
        bool commutes = true;
        for (int x = 0; x < u.frames[o.frame]->size() && commutes; ++x)
          if (kd.legs[s](h(x)) != o.map(x)) commutes = false;
        if (commutes) ++count;
      }
      factors[oi][s] = count > 0;
      int expect = subset_leq(o.image.members, kd.objects[s].members) ? 1 : 0;
      if (count != expect) r.adjunction_ok = false;
    }
  }

  // Finality of the inclusion functor: each slice under sigma must be
  // connected through the sublocale inclusions.
  r.u_final = true;
  for (size_t oi = 0; oi < r.objects.size(); ++oi) {
    std::vector<int> nodes;
    for (size_t s = 0; s < kd.objects.size(); ++s)
      if (factors[oi][s]) nodes.push_back(static_cast<int>(s));
    if (nodes.empty()) {
      r.u_final = false;
      break;
    }
    std::vector<int> parent_of(nodes.size());
    std::iota(parent_of.begin(), parent_of.end(), 0);
    auto find = [&](int x) {
      while (parent_of[x] != x) x = parent_of[x] = parent_of[parent_of[x]];
      return x;
    };
    for (size_t a = 0; a < nodes.size(); ++a)
      for (size_t b = 0; b < nodes.size(); ++b)
        if (subset_leq(kd.objects[nodes[a]].members,
                       kd.objects[nodes[b]].members))
          parent_of[find(static_cast<int>(a))] = find(static_cast<int>(b));
    for (size_t a = 1; a < nodes.size(); ++a)
      if (find(static_cast<int>(a)) != find(0)) {
        r.u_final = false;
        break;
      }
  }
  return r;
}

CoreflectorK coreflector_k(const LocaleUniverse& u, const Guards& g) {
  CoreflectorK k;
  std::vector<DensityCounit> data;
  for (const FramePtr& f : u.frames) {
    data.push_back(density_counit_locale(f, /*allow_non_sh=*/true, g));
    k.k_of.push_back(data.back().colimit.apex);
    k.iso.push_back(data.back().iso);
  }
  // Hom bijection: for compactly generated M, maps M -> k(L) correspond
  // to maps M -> L via postcomposition with eps.
  k.hom_bijection_ok = true;
  for (size_t i = 0; i < u.frames.size(); ++i) {
    if (!k.iso[i]) continue;
    for (size_t j = 0; j < u.frames.size(); ++j) {
      auto lifted = enumerate_localic_maps(u.frames[i], k.k_of[j]);
      const auto& direct = u.maps[i][j];
      if (lifted.size() != direct.size()) {
        k.hom_bijection_ok = false;
        continue;
      }
      std::vector<std::vector<int>> seen;
      for (const LocalicMap& h : lifted) {
        LocalicMap composite = data[j].eps.compose_after(h);
        std::vector<int> table(composite.src()->size());
        for (int x = 0; x < composite.src()->size(); ++x)
          table[x] = composite(x);
        if (std::find(seen.begin(), seen.end(), table) != seen.end())
          k.hom_bijection_ok = false;
        seen.push_back(std::move(table));
      }
    }
  }
  return k;
}

bool idempotence_locale_check(FramePtr l, const Guards& g) {
  DensityCounit d = density_counit_locale(l, /*allow_non_sh=*/true, g);
  FramePtr t = d.colimit.apex;
  KDiagram kd2 = k_diagram(t, g);
  // The leg images tile T(L) with compact sublocales.
  std::vector<Subset> q;
  for (const LocalicMap& leg : d.colimit.legs) {
    Sublocale img = localic_image(leg);
    if (kd2.index_of(img.members) < 0) return false;
    q.push_back(img.members);
  }
  if (sub_join(*t, q) != t->full_set()) return false;
  DensityCounit d2 = density_counit_locale(t, /*allow_non_sh=*/true, g);
  if (!d2.iso) return false;
  return frame_iso(*d2.colimit.apex, *t).has_value();
}

ProductFinalityReport product_finality_check(FramePtr l, FramePtr lp,
                                             const Guards& g) {
  ProductFinalityReport r;
  FrameProduct square = frame_product(l, lp, g);
  KDiagram kd = k_diagram(l, g);
  KDiagram kdp = k_diagram(lp, g);
  KDiagram kdprod = k_diagram(square.product, g);
  const int n = static_cast<int>(kd.objects.size());
  const int np = static_cast<int>(kdp.objects.size());

  // G(K, K') = image of K x K' inside L x L'.
  std::vector<FrameProduct> squares(static_cast<size_t>(n) * np);
  std::vector<LocalicMap> theta_legs;
  std::vector<int> gidx(static_cast<size_t>(n) * np);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < np; ++j) {
      FrameProduct sq =
          frame_product(kd.object_frames[i], kdp.object_frames[j], g);
      LocalicMap leg = product_map(sq, square, kd.legs[i], kdp.legs[j]);
      int idx = kdprod.index_of(localic_image(leg).members);
      if (idx < 0)
        throw InternalInvariantBroken("product image is not a sublocale");
      gidx[i * np + j] = idx;
      squares[i * np + j] = std::move(sq);
      theta_legs.push_back(std::move(leg));
    }

  // F(Q) = (p(Q), p'(Q)).
  LocalicMap proj_l = square.projection_left();
  LocalicMap proj_r = square.projection_right();
  const int nq = static_cast<int>(kdprod.objects.size());
  std::vector<int> fl(nq), fr(nq);
  for (int q = 0; q < nq; ++q) {
    fl[q] = kd.index_of(
        sublocale_image(proj_l, kdprod.objects[q]).members);
    fr[q] = kdp.index_of(
        sublocale_image(proj_r, kdprod.objects[q]).members);
    if (fl[q] < 0 || fr[q] < 0)
      throw InternalInvariantBroken("projection image is not a sublocale");
  }

  // F -| G as a biconditional on the thin orders.
  r.adjunction_ok = true;
  for (int q = 0; q < nq; ++q)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < np; ++j) {
        bool lhs = subset_leq(kdprod.objects[q].members,
                              kdprod.objects[gidx[i * np + j]].members);
        bool rhs =
            subset_leq(kd.objects[fl[q]].members, kd.objects[i].members) &&
            subset_leq(kdp.objects[fr[q]].members, kdp.objects[j].members);
        if (lhs != rhs) r.adjunction_ok = false;
      }

  CatPtr dom = product_category(kd.category, kdp.category);
  Functor gf(dom, kdprod.category, gidx,
             thin_mmap(dom, kdprod.category, gidx));
  r.g_final = is_final(gf);

  // theta: the cocone of product inclusions over the K(L) x K(L') grid.
  LocDiagram diag;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < np; ++j)
      diag.objects.push_back(squares[i * np + j].product);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < np; ++j)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < np; ++j2) {
          if (i == i2 && j == j2) continue;
          if (!subset_leq(kd.objects[i].members, kd.objects[i2].members) ||
              !subset_leq(kdp.objects[j].members, kdp.objects[j2].members))
            continue;
          LocalicMap inc_l = inclusion_between(kd, i, i2);
          LocalicMap inc_r = inclusion_between(kdp, j, j2);
          diag.arrows.push_back(
              {i * np + j, i2 * np + j2,
               product_map(squares[i * np + j], squares[i2 * np + j2], inc_l,
                           inc_r)});
        }
  r.theta_colimiting = loc_cocone_is_colimiting(
      diag, LocCocone{square.product, theta_legs}, g);
  return r;
}

}  // namespace finloc
