#include "finloc/frames.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace finloc {

namespace {

// Binary distributivity; equivalent to the full law over finite B by
// induction on |B|, used when 2^n enumeration is out of reach.
bool binary_distributive(const FinLattice& l, int& wa, int& wb, int& wc) {
  for (int a = 0; a < l.size(); ++a)
    for (int b = 0; b < l.size(); ++b)
      for (int c = 0; c < l.size(); ++c)
        if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c))) {
          wa = a;
          wb = b;
          wc = c;
          return false;
        }
  return true;
}

}  // namespace

FramePtr check_frame(LatPtr l, const Guards& g) {
  const FinLattice& lat = *l;
  const int n = lat.size();
  if (n <= g.subset_max) {
    const Subset full = lat.full_set();
    for (int a = 0; a < n; ++a) {
      for (Subset b = 0;; ++b) {
        int lhs = lat.meet(a, lat.join_all(b));
        Subset img = 0;
        for (int i = 0; i < n; ++i)
          if (subset_has(b, i)) img |= subset_of(lat.meet(a, i));
        if (lhs != lat.join_all(img)) {
          std::string witness = "a=" + lat.name(a) + " B={";
          for (int i = 0; i < n; ++i)
            if (subset_has(b, i)) witness += lat.name(i) + " ";
          throw NotAFrame("frame law fails at " + witness + "}");
        }
        if (b == full) break;
      }
    }
  } else {
    int a, b, c;
    if (!binary_distributive(lat, a, b, c))
      throw NotAFrame("frame law fails at a=" + lat.name(a) + " B={" +
                      lat.name(b) + " " + lat.name(c) + "}");
  }
  return std::shared_ptr<const Frame>(new Frame(std::move(l)));
}

FramePtr frame_of(const FinLattice& l, const Guards& g) {
  return check_frame(std::make_shared<const FinLattice>(l), g);
}

int heyting(const Frame& f, int a, int b) {
  f.lattice().check_element(a);
  f.lattice().check_element(b);
  int acc = f.bottom();
  for (int x = 0; x < f.size(); ++x)
    if (f.leq(f.meet(a, x), b)) acc = f.join(acc, x);
  return acc;
}

int pseudocomplement(const Frame& f, int a) { return heyting(f, a, f.bottom()); }

bool rather_below(const Frame& f, int a, int b) {
  return f.join(pseudocomplement(f, a), b) == f.top();
}

bool well_below(const Frame& f, int x, int y, const Guards& g) {
  f.lattice().check_element(x);
  f.lattice().check_element(y);
  g.require_subsets(f.size(), "well_below");
  const Subset full = f.full_set();
  for (Subset d = 1;; ++d) {
    if (d == 0) break;
    // Directed: nonempty and every pair has an upper bound inside d.
    bool directed = true;
    for (int i = 0; i < f.size() && directed; ++i) {
      if (!subset_has(d, i)) continue;
      for (int j = i; j < f.size() && directed; ++j) {
        if (!subset_has(d, j)) continue;
        bool bounded = false;
        for (int u = 0; u < f.size(); ++u)
          if (subset_has(d, u) && f.leq(i, u) && f.leq(j, u)) {
            bounded = true;
            break;
          }
        directed = bounded;
      }
    }
    if (directed && f.leq(y, f.join_all(d))) {
      bool dominated = false;
      for (int e = 0; e < f.size(); ++e)
        if (subset_has(d, e) && f.leq(x, e)) {
          dominated = true;
          break;
        }
      if (!dominated) return false;
    }
    if (d == full) break;
  }
  return true;
}

bool is_regular(const Frame& f) {
  for (int a = 0; a < f.size(); ++a) {
    int acc = f.bottom();
    for (int x = 0; x < f.size(); ++x)
      if (rather_below(f, x, a)) acc = f.join(acc, x);
    if (acc != a) return false;
  }
  return true;
}

bool is_continuous(const Frame& f, const Guards& g) {
  for (int a = 0; a < f.size(); ++a) {
    int acc = f.bottom();
    for (int x = 0; x < f.size(); ++x)
      if (well_below(f, x, a, g)) acc = f.join(acc, x);
    if (acc != a) return false;
  }
  return true;
}

bool is_compact(const Frame& f, const Guards& g) {
  g.require_subsets(f.size(), "is_compact");
  const Subset full = f.full_set();
  for (Subset a = 0;; ++a) {
    if (f.join_all(a) == f.top()) {
      // Look for a finite subcover; every subset is finite here, so the
      // cover itself always qualifies, but the search is the contract.
      bool found = false;
      for (Subset b = a; !found; b = (b - 1) & a) {
        if (f.join_all(b) == f.top()) found = true;
        if (b == 0) break;
      }
      if (!found) return false;
    }
    if (a == full) break;
  }
  return true;
}

bool sublocale_ok(const Frame& f, Subset members) {
  if (!subset_has(members, f.top())) return false;
  for (int s = 0; s < f.size(); ++s) {
    if (!subset_has(members, s)) continue;
    for (int t = s; t < f.size(); ++t)
      if (subset_has(members, t) && !subset_has(members, f.meet(s, t)))
        return false;
    for (int x = 0; x < f.size(); ++x)
      if (!subset_has(members, heyting(f, x, s))) return false;
  }
  return true;
}

std::variant<Sublocale, SublocaleViolation> is_sublocale(FramePtr f, Subset members) {
  const Frame& fr = *f;
  if (!subset_has(members, fr.top()))
    return SublocaleViolation{"1 = meet of the empty set is missing"};
  for (int s = 0; s < fr.size(); ++s) {
    if (!subset_has(members, s)) continue;
    for (int t = s; t < fr.size(); ++t)
      if (subset_has(members, t) && !subset_has(members, fr.meet(s, t)))
        return SublocaleViolation{"not meet-closed: " + fr.name(s) + " /\\ " +
                                  fr.name(t) + " = " + fr.name(fr.meet(s, t)) +
                                  " is missing"};
    for (int x = 0; x < fr.size(); ++x) {
      int h = heyting(fr, x, s);
      if (!subset_has(members, h))
        return SublocaleViolation{"not Heyting-closed: " + fr.name(x) + " => " +
                                  fr.name(s) + " = " + fr.name(h) +
                                  " is missing"};
    }
  }
  return Sublocale{std::move(f), members};
}

Sublocale closed_sublocale(FramePtr f, int a) {
  f->lattice().check_element(a);
  Subset m = 0;
  for (int x = 0; x < f->size(); ++x)
    if (f->leq(a, x)) m |= subset_of(x);
  return Sublocale{std::move(f), m};
}

FramePtr sublocale_as_frame(const Sublocale& s, const Guards& g) {
  const Frame& p = *s.parent;
  std::vector<std::string> names;
  std::vector<int> elems;
  for (int i = 0; i < p.size(); ++i)
    if (s.contains(i)) {
      names.push_back(p.name(i));
      elems.push_back(i);
    }
  std::vector<std::pair<int, int>> pairs;
  for (size_t a = 0; a < elems.size(); ++a)
    for (size_t b = 0; b < elems.size(); ++b)
      if (p.leq(elems[a], elems[b])) pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return frame_of(validate_lattice(std::move(names), pairs), g);
}

int sublocale_element_index(const Sublocale& s, int parent_elt) {
  int idx = 0;
  for (int i = 0; i < s.parent->size(); ++i) {
    if (i == parent_elt) {
      if (!s.contains(i)) throw UnknownElement("element not in sublocale");
      return idx;
    }
    if (s.contains(i)) ++idx;
  }
  throw UnknownElement("element index out of range");
}

int sublocale_element_of_parent(const Sublocale& s, int sub_elt) {
  int idx = 0;
  for (int i = 0; i < s.parent->size(); ++i)
    if (s.contains(i)) {
      if (idx == sub_elt) return i;
      ++idx;
    }
  throw UnknownElement("sublocale element index out of range");
}

LocalicMap::LocalicMap(FramePtr src, FramePtr tgt, std::vector<int> table)
    : src_(std::move(src)),
      tgt_(std::move(tgt)),
      f_(src_->lattice_ptr(), tgt_->lattice_ptr(), std::move(table)),
      f_star_(f_) {
  auto adj = left_adjoint(f_);
  if (!adj)
    throw NotLocalic("map has no left adjoint (fails to preserve all meets)");
  f_star_ = *adj;
  // f* must preserve finite meets, including the empty one.
  const FinLattice& m = *tgt_->lattice_ptr();
  const FinLattice& l = *src_->lattice_ptr();
  if (f_star_(m.top()) != l.top())
    throw NotLocalic("left adjoint does not preserve the top element");
  for (int a = 0; a < m.size(); ++a)
    for (int b = a; b < m.size(); ++b)
      if (f_star_(m.meet(a, b)) != l.meet(f_star_(a), f_star_(b)))
        throw NotLocalic("left adjoint does not preserve binary meets at " +
                         m.name(a) + ", " + m.name(b));
}

LocalicMap LocalicMap::identity(FramePtr f) {
  std::vector<int> t(f->size());
  std::iota(t.begin(), t.end(), 0);
  return LocalicMap(f, f, std::move(t));
}

LocalicMap LocalicMap::compose_after(const LocalicMap& inner) const {
  if (!inner.tgt_->lattice().same_as(src_->lattice()))
    throw ShapeMismatch("localic composition shapes do not line up");
  std::vector<int> t(inner.src_->size());
  for (int i = 0; i < inner.src_->size(); ++i) t[i] = f_.table()[inner(i)];
  return LocalicMap(inner.src_, tgt_, std::move(t));
}

bool LocalicMap::is_isomorphism() const {
  if (src_->size() != tgt_->size()) return false;
  std::vector<char> hit(tgt_->size(), 0);
  for (int x = 0; x < src_->size(); ++x) {
    if (hit[f_.table()[x]]) return false;
    hit[f_.table()[x]] = 1;
  }
  for (int a = 0; a < src_->size(); ++a)
    for (int b = 0; b < src_->size(); ++b)
      if (src_->leq(a, b) != tgt_->leq(f_.table()[a], f_.table()[b])) return false;
  return true;
}

LocalicMap sublocale_inclusion(const Sublocale& s, const Guards& g) {
  FramePtr sub = sublocale_as_frame(s, g);
  std::vector<int> table(sub->size());
  for (int i = 0; i < sub->size(); ++i) table[i] = sublocale_element_of_parent(s, i);
  return LocalicMap(std::move(sub), s.parent, std::move(table));
}

Sublocale sublocale_image(const LocalicMap& f, const Sublocale& s) {
  if (!s.parent->lattice().same_as(f.src()->lattice()))
    throw ShapeMismatch("sublocale does not live in the source of the map");
  Subset img = 0;
  for (int x = 0; x < f.src()->size(); ++x)
    if (s.contains(x)) img |= subset_of(f(x));
  auto r = is_sublocale(f.tgt(), img);
  if (auto* v = std::get_if<SublocaleViolation>(&r))
    throw InternalInvariantBroken("image of a sublocale failed the sublocale check: " + v->what);
  return std::get<Sublocale>(r);
}

Sublocale localic_image(const LocalicMap& f) {
  return sublocale_image(f, Sublocale{f.src(), f.src()->full_set()});
}

bool is_closed_map(const LocalicMap& f) {
  for (int a = 0; a < f.src()->size(); ++a) {
    Subset img = 0;
    for (int x = 0; x < f.src()->size(); ++x)
      if (f.src()->leq(a, x)) img |= subset_of(f(x));
    if (img != closed_sublocale(f.tgt(), f(a)).members) return false;
  }
  return true;
}

Sublocale preimage_closed(const LocalicMap& f, int b) {
  f.tgt()->lattice().check_element(b);
  Subset pre = 0;
  for (int x = 0; x < f.src()->size(); ++x)
    if (f.tgt()->leq(b, f(x))) pre |= subset_of(x);
  if (pre != closed_sublocale(f.src(), f.star(b)).members)
    throw InternalInvariantBroken("preimage of a closed sublocale is not c(f*(b))");
  return Sublocale{f.src(), pre};
}

SublocaleLattice sublocale_lattice(FramePtr f, const Guards& g) {
  g.require_sublocales(f->size(), "sublocale_lattice");
  const Frame& fr = *f;
  std::vector<Subset> out;
  const Subset full = fr.full_set();
  const Subset topbit = subset_of(fr.top());
  // Only subsets containing 1 can qualify; iterate over the rest.
  const Subset rest = full & ~topbit;
  for (Subset s = rest;; s = (s - 1) & rest) {
    Subset cand = s | topbit;
    // Meet-closure first, then the Heyting condition.
    bool ok = true;
    for (int a = 0; a < fr.size() && ok; ++a) {
      if (!subset_has(cand, a)) continue;
      for (int b = a; b < fr.size() && ok; ++b)
        if (subset_has(cand, b) && !subset_has(cand, fr.meet(a, b))) ok = false;
    }
    if (ok && sublocale_ok(fr, cand)) out.push_back(cand);
    if (s == 0) break;
  }
  std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
    int pa = subset_size(a), pb = subset_size(b);
    return pa != pb ? pa < pb : a < b;
  });
  return SublocaleLattice{std::move(f), std::move(out)};
}

Subset sub_meet(const std::vector<Subset>& members) {
  Subset acc = ~Subset{0};
  for (Subset m : members) acc &= m;
  return acc;
}

Subset sub_join(const Frame& f, const std::vector<Subset>& members) {
  Subset u = subset_of(f.top());
  for (Subset m : members) u |= m;
  // {meet of A : A subseteq union}: meet-closure with top (finite meets).
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < f.size(); ++a) {
      if (!subset_has(u, a)) continue;
      for (int b = a; b < f.size(); ++b)
        if (subset_has(u, b) && !subset_has(u, f.meet(a, b))) {
          u |= subset_of(f.meet(a, b));
          changed = true;
        }
    }
  }
  return u;
}

// ---------------------------------------------------------------------------
// Frame products (C-ideals)

namespace {

struct IdealContext {
  const FinLattice* l = nullptr;
  const FinLattice* m = nullptr;
  int nl = 0, nm = 0;

  int point(int a, int b) const { return a * nm + b; }

  std::uint64_t down_of_point(int a, int b) const {
    std::uint64_t s = 0;
    for (int x = 0; x < nl; ++x)
      for (int y = 0; y < nm; ++y)
        if (l->leq(x, a) && m->leq(y, b)) s |= std::uint64_t{1} << point(x, y);
    return s;
  }

  // Saturation: downward closure plus the two coordinatewise-join rules.
  std::uint64_t saturate(std::uint64_t u) const {
    bool changed = true;
    while (changed) {
      changed = false;
      // Downward closure.
      for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nm; ++b)
          if (u >> point(a, b) & 1) {
            std::uint64_t d = down_of_point(a, b);
            if ((u | d) != u) {
              u |= d;
              changed = true;
            }
          }
      // (join A, b) for A the full column, (a, join B) for the full row.
      for (int b = 0; b < nm; ++b) {
        Subset col = 0;
        for (int a = 0; a < nl; ++a)
          if (u >> point(a, b) & 1) col |= subset_of(a);
        int ja = l->join_all(col);
        if (!(u >> point(ja, b) & 1)) {
          u |= std::uint64_t{1} << point(ja, b);
          changed = true;
        }
      }
      for (int a = 0; a < nl; ++a) {
        Subset row = 0;
        for (int b = 0; b < nm; ++b)
          if (u >> point(a, b) & 1) row |= subset_of(b);
        int jb = m->join_all(row);
        if (!(u >> point(a, jb) & 1)) {
          u |= std::uint64_t{1} << point(a, jb);
          changed = true;
        }
      }
    }
    return u;
  }
};

}  // namespace

FrameProduct frame_product(FramePtr l, FramePtr m, const Guards& g) {
  const int nl = l->size(), nm = m->size();
  g.require_product(nl * nm, "frame_product");
  IdealContext ctx{&l->lattice(), &m->lattice(), nl, nm};

  // Bottom ideal: saturation of the empty set (bottom row and column).
  std::uint64_t bot = 0;
  for (int b = 0; b < nm; ++b) bot |= std::uint64_t{1} << ctx.point(l->bottom(), b);
  for (int a = 0; a < nl; ++a) bot |= std::uint64_t{1} << ctx.point(a, m->bottom());
  bot = ctx.saturate(bot);

  std::vector<std::uint64_t> ideals{bot};
  std::vector<std::uint64_t> basics(static_cast<size_t>(nl) * nm);
  for (int a = 0; a < nl; ++a)
    for (int b = 0; b < nm; ++b) {
      std::uint64_t u = ctx.saturate(bot | ctx.down_of_point(a, b));
      basics[ctx.point(a, b)] = u;
      if (std::find(ideals.begin(), ideals.end(), u) == ideals.end())
        ideals.push_back(u);
    }
  // Every C-ideal is a join of basics; close under binary joins.
  for (size_t i = 0; i < ideals.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      std::uint64_t u = ctx.saturate(ideals[i] | ideals[j]);
      if (std::find(ideals.begin(), ideals.end(), u) == ideals.end())
        ideals.push_back(u);
    }

  std::sort(ideals.begin(), ideals.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    return pa != pb ? pa < pb : a < b;
  });

  const int n = static_cast<int>(ideals.size());
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = "i" + std::to_string(i);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((ideals[i] & ~ideals[j]) == 0) pairs.emplace_back(i, j);

  FrameProduct fp;
  fp.left = std::move(l);
  fp.right = std::move(m);
  fp.product = frame_of(validate_lattice(std::move(names), pairs), g);
  fp.ideals = std::move(ideals);
  fp.basic.resize(basics.size());
  for (int a = 0; a < nl; ++a)
    for (int b = 0; b < nm; ++b) {
      auto it = std::find(fp.ideals.begin(), fp.ideals.end(), basics[ctx.point(a, b)]);
      fp.basic[ctx.point(a, b)] = static_cast<int>(it - fp.ideals.begin());
    }
  return fp;
}

int FrameProduct::element_of_ideal(std::uint64_t ideal) const {
  auto it = std::find(ideals.begin(), ideals.end(), ideal);
  if (it == ideals.end())
    throw InternalInvariantBroken("point set is not a C-ideal of this product");
  return static_cast<int>(it - ideals.begin());
}

namespace {

LocalicMap projection_impl(const FrameProduct& fp, bool first) {
  const FramePtr& factor = first ? fp.left : fp.right;
  // Frame-side injection a |-> basic(a, 1) (resp. (1, b)).
  std::vector<int> inj(factor->size());
  for (int a = 0; a < factor->size(); ++a)
    inj[a] = first ? fp.basic_element(a, fp.right->top())
                   : fp.basic_element(fp.left->top(), a);
  MonotoneMap e(factor->lattice_ptr(), fp.product->lattice_ptr(), std::move(inj));
  auto p = right_adjoint(e);
  if (!p) throw InternalInvariantBroken("coproduct injection has no right adjoint");
  return LocalicMap(fp.product, factor, p->table());
}

}  // namespace

LocalicMap FrameProduct::projection_left() const { return projection_impl(*this, true); }
LocalicMap FrameProduct::projection_right() const { return projection_impl(*this, false); }

LocalicMap product_map(const FrameProduct& src, const FrameProduct& tgt,
                       const LocalicMap& f, const LocalicMap& g) {
  if (!f.src()->lattice().same_as(src.left->lattice()) ||
      !g.src()->lattice().same_as(src.right->lattice()) ||
      !f.tgt()->lattice().same_as(tgt.left->lattice()) ||
      !g.tgt()->lattice().same_as(tgt.right->lattice()))
    throw ShapeMismatch("product_map factors do not line up");
  // Frame hom tgt.product -> src.product on C-ideal generators.
  std::vector<int> star(tgt.product->size());
  for (int v = 0; v < tgt.product->size(); ++v) {
    int acc = src.product->bottom();
    std::uint64_t ideal = tgt.ideals[v];
    for (int a = 0; a < tgt.left->size(); ++a)
      for (int b = 0; b < tgt.right->size(); ++b)
        if (ideal >> (a * tgt.right->size() + b) & 1)
          acc = src.product->join(acc, src.basic_element(f.star(a), g.star(b)));
    star[v] = acc;
  }
  MonotoneMap h_star(tgt.product->lattice_ptr(), src.product->lattice_ptr(), std::move(star));
  auto h = right_adjoint(h_star);
  if (!h) throw InternalInvariantBroken("induced coproduct hom has no right adjoint");
  return LocalicMap(src.product, tgt.product, h->table());
}

LocalicMap diagonal(const FrameProduct& square) {
  if (!square.left->lattice().same_as(square.right->lattice()))
    throw ShapeMismatch("diagonal needs a square product L x L");
  const Frame& l = *square.left;
  std::vector<int> star(square.product->size());
  for (int v = 0; v < square.product->size(); ++v) {
    int acc = l.bottom();
    std::uint64_t ideal = square.ideals[v];
    for (int a = 0; a < l.size(); ++a)
      for (int b = 0; b < l.size(); ++b)
        if (ideal >> (a * l.size() + b) & 1) acc = l.join(acc, l.meet(a, b));
    star[v] = acc;
  }
  MonotoneMap d_star(square.product->lattice_ptr(), square.left->lattice_ptr(), std::move(star));
  auto d = right_adjoint(d_star);
  if (!d) throw InternalInvariantBroken("codiagonal has no right adjoint");
  return LocalicMap(square.left, square.product, d->table());
}

bool is_strongly_hausdorff(FramePtr l, const Guards& g) {
  FrameProduct sq = frame_product(l, l, g);
  return is_closed_map(diagonal(sq));
}

// ---------------------------------------------------------------------------
// Colimits of locale diagrams

LocColimit loc_colimit(const LocDiagram& d, const Guards& g) {
  const int k = static_cast<int>(d.objects.size());
  if (k == 0) {
    // Initial locale: the one-element frame (terminal frame).
    auto one = frame_of(validate_lattice({"*"}, std::vector<std::pair<int, int>>{}), g);
    return LocColimit{one, {}, {{}}};
  }
  for (const auto& a : d.arrows) {
    if (a.src < 0 || a.src >= k || a.tgt < 0 || a.tgt >= k)
      throw ShapeMismatch("diagram arrow references unknown object");
    if (!a.f.src()->lattice().same_as(d.objects[a.src]->lattice()) ||
        !a.f.tgt()->lattice().same_as(d.objects[a.tgt]->lattice()))
      throw ShapeMismatch("diagram arrow endpoints do not match its map");
  }

  // Process objects so that sinks come first: x_src is determined by
  // x_tgt through f*, so assign targets before sources where possible.
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    auto out_degree = [&](int o) {
      int c = 0;
      for (const auto& ar : d.arrows)
        if (ar.src == o && ar.tgt != o) ++c;
      return c;
    };
    return out_degree(a) < out_degree(b);
  });

  std::vector<std::vector<int>> families;
  std::vector<int> assign(k, -1);
  long long steps = 0;

  auto consistent = [&](int obj) {
    for (const auto& a : d.arrows) {
      if (assign[a.src] < 0 || assign[a.tgt] < 0) continue;
      if (a.src != obj && a.tgt != obj) continue;
      if (a.f.star(assign[a.tgt]) != assign[a.src]) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, int pos) -> void {
    if (++steps > 200'000'000)
      throw SizeGuardExceeded("loc_colimit: family search space too large");
    if (pos == k) {
      std::vector<int> fam(assign);
      families.push_back(std::move(fam));
      return;
    }
    int obj = order[pos];
    int forced = -1;
    for (const auto& a : d.arrows)
      if (a.src == obj && assign[a.tgt] >= 0) {
        forced = a.f.star(assign[a.tgt]);
        break;
      }
    if (forced >= 0) {
      assign[obj] = forced;
      if (consistent(obj)) self(self, pos + 1);
      assign[obj] = -1;
    } else {
      for (int v = 0; v < d.objects[obj]->size(); ++v) {
        assign[obj] = v;
        if (consistent(obj)) self(self, pos + 1);
      }
      assign[obj] = -1;
    }
  };
  rec(rec, 0);

  std::sort(families.begin(), families.end());

  const int n = static_cast<int>(families.size());
  if (n == 0)
    throw InternalInvariantBroken("frame limit carrier is empty");
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = "f" + std::to_string(i);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool le = true;
      for (int o = 0; o < k && le; ++o)
        le = d.objects[o]->leq(families[i][o], families[j][o]);
      if (le) pairs.emplace_back(i, j);
    }
  FramePtr apex = frame_of(validate_lattice(std::move(names), pairs), g);

  LocColimit c;
  c.apex = apex;
  c.families = families;
  for (int o = 0; o < k; ++o) {
    std::vector<int> proj(n);
    for (int i = 0; i < n; ++i) proj[i] = families[i][o];
    MonotoneMap pi(apex->lattice_ptr(), d.objects[o]->lattice_ptr(), std::move(proj));
    auto leg = right_adjoint(pi);
    if (!leg) throw InternalInvariantBroken("limit projection has no right adjoint");
    c.legs.emplace_back(d.objects[o], apex, leg->table());
  }
  return c;
}

std::optional<LocalicMap> loc_colimit_factor(const LocDiagram& d,
                                             const LocColimit& c,
                                             const LocCocone& cocone) {
  const int k = static_cast<int>(d.objects.size());
  if (static_cast<int>(cocone.legs.size()) != k)
    throw ShapeMismatch("cocone leg count does not match the diagram");
  const int na = cocone.apex->size();
  std::vector<int> h_star(na);
  for (int a = 0; a < na; ++a) {
    std::vector<int> fam(k);
    for (int o = 0; o < k; ++o) fam[o] = cocone.legs[o].star(a);
    auto it = std::find(c.families.begin(), c.families.end(), fam);
    if (it == c.families.end()) return std::nullopt;
    h_star[a] = static_cast<int>(it - c.families.begin());
  }
  MonotoneMap hs(cocone.apex->lattice_ptr(), c.apex->lattice_ptr(), std::move(h_star));
  auto h = right_adjoint(hs);
  if (!h) return std::nullopt;
  LocalicMap med(c.apex, cocone.apex, h->table());
  for (int o = 0; o < k; ++o) {
    LocalicMap lhs = med.compose_after(c.legs[o]);
    for (int x = 0; x < d.objects[o]->size(); ++x)
      if (lhs(x) != cocone.legs[o](x)) return std::nullopt;
  }
  return med;
}

bool loc_cocone_is_colimiting(const LocDiagram& d, const LocCocone& cocone,
                              const Guards& g) {
  LocColimit c = loc_colimit(d, g);
  auto h = loc_colimit_factor(d, c, cocone);
  return h && h->is_isomorphism();
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

bool iso_rec(const Frame& a, const Frame& b, std::vector<int>& map,
             std::vector<char>& used, int pos) {
  const int n = a.size();
  if (pos == n) return true;
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    bool ok = true;
    for (int prev = 0; prev < pos && ok; ++prev) {
      if (a.leq(prev, pos) != b.leq(map[prev], cand)) ok = false;
      if (a.leq(pos, prev) != b.leq(cand, map[prev])) ok = false;
    }
    if (!ok) continue;
    map[pos] = cand;
    used[cand] = 1;
    if (iso_rec(a, b, map, used, pos + 1)) return true;
    used[cand] = 0;
    map[pos] = -1;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> frame_iso(const Frame& a, const Frame& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<int> map(a.size(), -1);
  std::vector<char> used(a.size(), 0);
  if (iso_rec(a, b, map, used, 0)) return map;
  return std::nullopt;
}

std::vector<LocalicMap> enumerate_localic_maps(FramePtr l, FramePtr m) {
  std::vector<LocalicMap> out;
  const int n = l->size();
  std::vector<int> table(n, -1);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      try {
        out.emplace_back(l, m, table);
      } catch (const NotLocalic&) {
      }
      return;
    }
    for (int v = 0; v < m->size(); ++v) {
      bool ok = true;
      for (int prev = 0; prev < pos && ok; ++prev) {
        if (l->leq(prev, pos) && !m->leq(table[prev], v)) ok = false;
        if (l->leq(pos, prev) && !m->leq(v, table[prev])) ok = false;
        int mi = l->meet(prev, pos);
        if (ok && mi < pos && m->meet(table[prev], v) != table[mi]) ok = false;
      }
      if (pos == l->top() && v != m->top()) ok = false;
      if (!ok) continue;
      table[pos] = v;
      self(self, pos + 1);
      table[pos] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace finloc
