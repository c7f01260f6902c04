#include "finloc/fincat.hpp"

#include <algorithm>
#include <numeric>

namespace finloc {

FinCategory FinCategory::from_tables(std::vector<std::string> objects,
                                     std::vector<MorphismData> morphisms,
                                     std::vector<int> identities,
                                     std::vector<int> compose_table) {
  FinCategory c;
  c.objects_ = std::move(objects);
  c.mors_ = std::move(morphisms);
  c.ids_ = std::move(identities);
  c.comp_ = std::move(compose_table);
  const int no = c.num_objects();
  const int nm = c.num_morphisms();
  if (static_cast<int>(c.ids_.size()) != no)
    throw IdentityViolation("identity table size does not match objects");
  if (static_cast<int>(c.comp_.size()) != nm * nm)
    throw AssocViolation("composition table size is not |mor|^2");
  for (const auto& m : c.mors_)
    if (m.src < 0 || m.src >= no || m.tgt < 0 || m.tgt >= no)
      throw AssocViolation("morphism endpoints reference unknown objects");
  for (int o = 0; o < no; ++o) {
    int i = c.ids_[o];
    if (i < 0 || i >= nm || c.src(i) != o || c.tgt(i) != o)
      throw IdentityViolation("identity of " + c.objects_[o] +
                              " is not an endomorphism of it");
  }
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f) {
      int gf = c.comp_[g * nm + f];
      if (c.src(g) != c.tgt(f)) {
        if (gf != -1)
          throw AssocViolation("composite defined for non-composable pair " +
                               c.mors_[g].name + " . " + c.mors_[f].name);
        continue;
      }
      if (gf < 0 || gf >= nm || c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g))
        throw AssocViolation("composite " + c.mors_[g].name + " . " +
                             c.mors_[f].name + " is missing or mistyped");
    }
  for (int f = 0; f < nm; ++f) {
    if (c.compose(c.ids_[c.tgt(f)], f) != f || c.compose(f, c.ids_[c.src(f)]) != f)
      throw IdentityViolation("identity law fails at " + c.mors_[f].name);
  }
  for (int h = 0; h < nm; ++h)
    for (int g = 0; g < nm; ++g) {
      if (c.src(h) != c.tgt(g)) continue;
      for (int f = 0; f < nm; ++f) {
        if (c.src(g) != c.tgt(f)) continue;
        if (c.compose(c.compose(h, g), f) != c.compose(h, c.compose(g, f)))
          throw AssocViolation("associativity fails at " + c.mors_[h].name +
                               " . " + c.mors_[g].name + " . " + c.mors_[f].name);
      }
    }
  return c;
}

FinCategory FinCategory::from_poset(const FinPoset& p) {
  const int n = p.size();
  std::vector<std::string> objects(p.names());
  std::vector<MorphismData> mors;
  std::vector<std::vector<int>> midx(n, std::vector<int>(n, -1));
  std::vector<int> ids(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.leq(a, b)) {
        midx[a][b] = static_cast<int>(mors.size());
        std::string name = (a == b) ? "id_" + p.name(a) : p.name(a) + "->" + p.name(b);
        mors.push_back({std::move(name), a, b});
        if (a == b) ids[a] = midx[a][b];
      }
  const int nm = static_cast<int>(mors.size());
  std::vector<int> comp(static_cast<size_t>(nm) * nm, -1);
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (mors[g].src == mors[f].tgt)
        comp[g * nm + f] = midx[mors[f].src][mors[g].tgt];
  return from_tables(std::move(objects), std::move(mors), std::move(ids),
                     std::move(comp));
}

std::vector<int> FinCategory::hom(int a, int b) const {
  std::vector<int> out;
  for (int m = 0; m < num_morphisms(); ++m)
    if (src(m) == a && tgt(m) == b) out.push_back(m);
  return out;
}

int FinCategory::object_index(const std::string& name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) throw UnknownObject("unknown object: " + name);
  return static_cast<int>(it - objects_.begin());
}

std::optional<int> FinCategory::try_object_index(const std::string& name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<int>(it - objects_.begin());
}

int FinCategory::morphism_index(const std::string& name) const {
  for (int m = 0; m < num_morphisms(); ++m)
    if (mors_[m].name == name) return m;
  throw UnknownObject("unknown morphism: " + name);
}

bool FinCategory::is_iso(int m) const { return inverse(m).has_value(); }

std::optional<int> FinCategory::inverse(int m) const {
  for (int n = 0; n < num_morphisms(); ++n)
    if (src(n) == tgt(m) && tgt(n) == src(m) &&
        compose(n, m) == identity(src(m)) && compose(m, n) == identity(tgt(m)))
      return n;
  return std::nullopt;
}

CatPtr thin_category(const FinPoset& p) {
  return std::make_shared<const FinCategory>(FinCategory::from_poset(p));
}

CatPtr opposite_category(CatPtr c) {
  const int nm = c->num_morphisms();
  std::vector<std::string> objects;
  for (int o = 0; o < c->num_objects(); ++o) objects.push_back(c->object_name(o));
  std::vector<FinCategory::MorphismData> mors;
  for (int m = 0; m < nm; ++m)
    mors.push_back({c->morphism_name(m), c->tgt(m), c->src(m)});
  std::vector<int> ids;
  for (int o = 0; o < c->num_objects(); ++o) ids.push_back(c->identity(o));
  std::vector<int> comp(static_cast<size_t>(nm) * nm, -1);
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (c->src(f) == c->tgt(g)) comp[g * nm + f] = c->compose(f, g);
  return std::make_shared<const FinCategory>(FinCategory::from_tables(
      std::move(objects), std::move(mors), std::move(ids), std::move(comp)));
}

CatPtr product_category(CatPtr a, CatPtr b) {
  const int nb = b->num_objects();
  const int mb = b->num_morphisms();
  std::vector<std::string> objects;
  for (int i = 0; i < a->num_objects(); ++i)
    for (int j = 0; j < nb; ++j)
      objects.push_back("(" + a->object_name(i) + "," + b->object_name(j) + ")");
  std::vector<FinCategory::MorphismData> mors;
  for (int f = 0; f < a->num_morphisms(); ++f)
    for (int g = 0; g < mb; ++g)
      mors.push_back({"(" + a->morphism_name(f) + "," + b->morphism_name(g) + ")",
                      a->src(f) * nb + b->src(g), a->tgt(f) * nb + b->tgt(g)});
  std::vector<int> ids;
  for (int i = 0; i < a->num_objects(); ++i)
    for (int j = 0; j < nb; ++j)
      ids.push_back(a->identity(i) * mb + b->identity(j));
  const int nm = static_cast<int>(mors.size());
  std::vector<int> comp(static_cast<size_t>(nm) * nm, -1);
  for (int m1 = 0; m1 < nm; ++m1)
    for (int m2 = 0; m2 < nm; ++m2) {
      int f1 = m1 / mb, g1 = m1 % mb, f2 = m2 / mb, g2 = m2 % mb;
      if (a->src(f1) == a->tgt(f2) && b->src(g1) == b->tgt(g2))
        comp[m1 * nm + m2] = a->compose(f1, f2) * mb + b->compose(g1, g2);
    }
  return std::make_shared<const FinCategory>(FinCategory::from_tables(
      std::move(objects), std::move(mors), std::move(ids), std::move(comp)));
}

Functor::Functor(CatPtr src, CatPtr tgt, std::vector<int> object_map,
                 std::vector<int> morphism_map)
    : src_(std::move(src)),
      tgt_(std::move(tgt)),
      omap_(std::move(object_map)),
      mmap_(std::move(morphism_map)) {
  if (static_cast<int>(omap_.size()) != src_->num_objects() ||
      static_cast<int>(mmap_.size()) != src_->num_morphisms())
    throw FunctorLawViolation("functor table sizes do not match the source");
  for (int m = 0; m < src_->num_morphisms(); ++m) {
    int fm = mmap_[m];
    if (fm < 0 || fm >= tgt_->num_morphisms())
      throw FunctorLawViolation("morphism map out of range");
    if (tgt_->src(fm) != omap_[src_->src(m)] || tgt_->tgt(fm) != omap_[src_->tgt(m)])
      throw FunctorLawViolation("functor does not preserve endpoints at " +
                                src_->morphism_name(m));
  }
  for (int o = 0; o < src_->num_objects(); ++o)
    if (mmap_[src_->identity(o)] != tgt_->identity(omap_[o]))
      throw FunctorLawViolation("functor does not preserve the identity of " +
                                src_->object_name(o));
  for (int g = 0; g < src_->num_morphisms(); ++g)
    for (int f = 0; f < src_->num_morphisms(); ++f) {
      if (src_->src(g) != src_->tgt(f)) continue;
      if (mmap_[src_->compose(g, f)] != tgt_->compose(mmap_[g], mmap_[f]))
        throw FunctorLawViolation("functor does not preserve composition at " +
                                  src_->morphism_name(g) + " . " +
                                  src_->morphism_name(f));
    }
}

Functor Functor::identity(CatPtr c) {
  std::vector<int> o(c->num_objects()), m(c->num_morphisms());
  std::iota(o.begin(), o.end(), 0);
  std::iota(m.begin(), m.end(), 0);
  return Functor(c, c, std::move(o), std::move(m));
}

Functor Functor::compose_after(const Functor& inner) const {
  std::vector<int> o(inner.src_->num_objects()), m(inner.src_->num_morphisms());
  for (size_t i = 0; i < o.size(); ++i) o[i] = omap_[inner.omap_[i]];
  for (size_t i = 0; i < m.size(); ++i) m[i] = mmap_[inner.mmap_[i]];
  return Functor(inner.src_, tgt_, std::move(o), std::move(m));
}

bool Cone::is_natural() const {
  const FinCategory& j = *diagram.src();
  const FinCategory& c = *diagram.tgt();
  for (int o = 0; o < j.num_objects(); ++o) {
    int leg = legs[o];
    if (c.src(leg) != diagram.on_object(o) || c.tgt(leg) != apex) return false;
  }
  for (int a = 0; a < j.num_morphisms(); ++a) {
    int jj = j.src(a), k = j.tgt(a);
    if (c.compose(legs[k], diagram.on_morphism(a)) != legs[jj]) return false;
  }
  return true;
}

namespace {

SliceCategory build_slice(const Functor& f, int base_obj, bool under) {
  const FinCategory& a = *f.src();
  const FinCategory& c = *f.tgt();
  SliceCategory s;
  std::vector<std::string> objects;
  for (int obj = 0; obj < a.num_objects(); ++obj) {
    auto arrows = under ? c.hom(base_obj, f.on_object(obj))
                        : c.hom(f.on_object(obj), base_obj);
    for (int h : arrows) {
      s.obj_domain.push_back(obj);
      s.obj_arrow.push_back(h);
      objects.push_back("(" + a.object_name(obj) + "," + c.morphism_name(h) + ")");
    }
  }
  const int no = static_cast<int>(objects.size());
  std::vector<FinCategory::MorphismData> mors;
  std::vector<std::vector<int>> midx(no);
  for (int i = 0; i < no; ++i) midx[i].assign(static_cast<size_t>(no) * a.num_morphisms(), -1);
  std::vector<int> ids(no, -1);
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j)
      for (int m : a.hom(s.obj_domain[i], s.obj_domain[j])) {
        bool commutes =
            under ? c.compose(f.on_morphism(m), s.obj_arrow[i]) == s.obj_arrow[j]
                  : c.compose(s.obj_arrow[j], f.on_morphism(m)) == s.obj_arrow[i];
        if (!commutes) continue;
        int id = static_cast<int>(mors.size());
        mors.push_back({objects[i] + "~" + a.morphism_name(m), i, j});
        s.mor_arrow.push_back(m);
        midx[i][j * a.num_morphisms() + m] = id;
        if (i == j && a.is_identity(m)) ids[i] = id;
      }
  const int nm = static_cast<int>(mors.size());
  std::vector<int> comp(static_cast<size_t>(nm) * nm, -1);
  for (int g = 0; g < nm; ++g)
    for (int fm = 0; fm < nm; ++fm) {
      if (mors[g].src != mors[fm].tgt) continue;
      int composite = a.compose(s.mor_arrow[g], s.mor_arrow[fm]);
      comp[g * nm + fm] = midx[mors[fm].src][mors[g].tgt * a.num_morphisms() + composite];
    }
  s.category = std::make_shared<const FinCategory>(FinCategory::from_tables(
      std::move(objects), std::move(mors), std::move(ids), std::move(comp)));
  return s;
}

}  // namespace

SliceCategory slice_category(int base_obj, const Functor& f) {
  if (base_obj < 0 || base_obj >= f.tgt()->num_objects())
    throw UnknownObject("slice base object out of range");
  return build_slice(f, base_obj, /*under=*/true);
}

SliceCategory coslice_category(const Functor& f, int base_obj) {
  if (base_obj < 0 || base_obj >= f.tgt()->num_objects())
    throw UnknownObject("slice base object out of range");
  return build_slice(f, base_obj, /*under=*/false);
}

bool is_connected(const FinCategory& c) {
  const int n = c.num_objects();
  if (n == 0) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int m = 0; m < c.num_morphisms(); ++m)
    parent[find(c.src(m))] = find(c.tgt(m));
  int root = find(0);
  for (int o = 1; o < n; ++o)
    if (find(o) != root) return false;
  return true;
}

bool is_final(const Functor& f) {
  for (int b = 0; b < f.tgt()->num_objects(); ++b)
    if (!is_connected(*slice_category(b, f).category)) return false;
  return true;
}

bool is_final_via_set_colimit(const Functor& f) {
  const FinCategory& a = *f.src();
  const FinCategory& c = *f.tgt();
  for (int b = 0; b < c.num_objects(); ++b) {
    // Category of elements of C(b, F(-)): elements (obj, h), edges
    // (obj, h) -> (obj', F(alpha) . h).
    struct Elt {
      int obj, h;
    };
    std::vector<Elt> elts;
    auto index_of = [&](int obj, int h) {
      for (size_t i = 0; i < elts.size(); ++i)
        if (elts[i].obj == obj && elts[i].h == h) return static_cast<int>(i);
      return -1;
    };
    for (int obj = 0; obj < a.num_objects(); ++obj)
      for (int h : c.hom(b, f.on_object(obj))) elts.push_back({obj, h});
    if (elts.empty()) return false;
    std::vector<int> parent(elts.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (size_t i = 0; i < elts.size(); ++i)
      for (int alpha = 0; alpha < a.num_morphisms(); ++alpha) {
        if (a.src(alpha) != elts[i].obj) continue;
        int h2 = c.compose(f.on_morphism(alpha), elts[i].h);
        int j = index_of(a.tgt(alpha), h2);
        parent[find(static_cast<int>(i))] = find(j);
      }
    int root = find(0);
    for (size_t i = 1; i < elts.size(); ++i)
      if (find(static_cast<int>(i)) != root) return false;
  }
  return true;
}

namespace {

// All cocones of the diagram, ordered by apex then lexicographic legs.
std::vector<Cone> all_cocones(const Functor& diagram) {
  const FinCategory& j = *diagram.src();
  const FinCategory& c = *diagram.tgt();
  std::vector<Cone> out;
  std::vector<int> legs(j.num_objects());
  for (int apex = 0; apex < c.num_objects(); ++apex) {
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == j.num_objects()) {
        Cone cand{diagram, apex, legs};
        if (cand.is_natural()) out.push_back(std::move(cand));
        return;
      }
      for (int m : c.hom(diagram.on_object(pos), apex)) {
        legs[pos] = m;
        self(self, pos + 1);
      }
    };
    rec(rec, 0);
  }
  return out;
}

// Number of mediating morphisms from `cand` to `other`.
int mediators(const Cone& cand, const Cone& other) {
  const FinCategory& c = *cand.diagram.tgt();
  int count = 0;
  for (int h : c.hom(cand.apex, other.apex)) {
    bool ok = true;
    for (size_t jo = 0; jo < cand.legs.size() && ok; ++jo)
      if (c.compose(h, cand.legs[jo]) != other.legs[jo]) ok = false;
    if (ok) ++count;
  }
  return count;
}

}  // namespace

std::optional<Colimit> find_colimit(const Functor& diagram, const Guards& g) {
  g.require_morphisms(diagram.tgt()->num_morphisms(), "find_colimit");
  auto cocones = all_cocones(diagram);
  for (const Cone& cand : cocones) {
    bool ok = true;
    for (const Cone& other : cocones)
      if (mediators(cand, other) != 1) {
        ok = false;
        break;
      }
    if (ok) return Colimit{cand};
  }
  return std::nullopt;
}

bool is_colimiting(const Cone& c, const Guards& g) {
  g.require_morphisms(c.diagram.tgt()->num_morphisms(), "is_colimiting");
  if (!c.is_natural()) return false;
  auto cocones = all_cocones(c.diagram);
  for (const Cone& other : cocones)
    if (mediators(c, other) != 1) return false;
  return true;
}

Cone restrict_cone(const Cone& c, const Functor& f) {
  std::vector<int> legs(f.src()->num_objects());
  for (int i = 0; i < f.src()->num_objects(); ++i) legs[i] = c.legs[f.on_object(i)];
  return Cone{c.diagram.compose_after(f), c.apex, std::move(legs)};
}

int canonical_map(const Cone& c1, const Cone& c2, const Functor& f,
                  const Guards& g) {
  if (!is_colimiting(c1, g))
    throw NotColimiting("cone over the restricted diagram is not colimiting");
  if (!is_colimiting(c2, g))
    throw NotColimiting("cone over the diagram is not colimiting");
  Cone restricted = restrict_cone(c2, f);
  const FinCategory& c = *c1.diagram.tgt();
  for (int h : c.hom(c1.apex, c2.apex)) {
    bool ok = true;
    for (size_t i = 0; i < c1.legs.size() && ok; ++i)
      if (c.compose(h, c1.legs[i]) != restricted.legs[i]) ok = false;
    if (ok) return h;
  }
  throw InternalInvariantBroken("colimiting cone admits no mediating morphism");
}

std::optional<int> initial_object(const FinCategory& c) {
  for (int o = 0; o < c.num_objects(); ++o) {
    bool ok = true;
    for (int b = 0; b < c.num_objects() && ok; ++b)
      if (c.hom(o, b).size() != 1) ok = false;
    if (ok) return o;
  }
  return std::nullopt;
}

std::optional<int> terminal_object(const FinCategory& c) {
  for (int o = 0; o < c.num_objects(); ++o) {
    bool ok = true;
    for (int b = 0; b < c.num_objects() && ok; ++b)
      if (c.hom(b, o).size() != 1) ok = false;
    if (ok) return o;
  }
  return std::nullopt;
}

std::optional<AdjointData> find_left_adjoint(const Functor& g) {
  const FinCategory& cc = *g.src();
  const FinCategory& d = *g.tgt();
  std::vector<int> omap(d.num_objects());
  std::vector<int> units(d.num_objects());
  for (int a = 0; a < d.num_objects(); ++a) {
    SliceCategory slice = slice_category(a, g);
    auto init = initial_object(*slice.category);
    if (!init) return std::nullopt;
    omap[a] = slice.obj_domain[*init];
    units[a] = slice.obj_arrow[*init];
  }
  // F on morphisms: the unique arrow with G(F(f)) . eta_a = eta_a' . f.
  std::vector<int> mmap(d.num_morphisms(), -1);
  for (int f = 0; f < d.num_morphisms(); ++f) {
    int a = d.src(f), a2 = d.tgt(f);
    int want = d.compose(units[a2], f);
    for (int cand : cc.hom(omap[a], omap[a2]))
      if (d.compose(g.on_morphism(cand), units[a]) == want) {
        mmap[f] = cand;
        break;
      }
    if (mmap[f] < 0) return std::nullopt;
  }
  return AdjointData{Functor(g.tgt(), g.src(), std::move(omap), std::move(mmap)),
                     std::move(units)};
}

}  // namespace finloc
