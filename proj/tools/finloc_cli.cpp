#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "finloc/dsl.hpp"
#include "finloc/duality.hpp"
#include "finloc/kanengine.hpp"
#include "finloc/kgen.hpp"
#include "finloc/report.hpp"

namespace fs = std::filesystem;
using namespace finloc;

namespace {

struct CliState {
  unsigned seed = 1;
  bool guard_override = false;
  bool json = false;
  std::vector<std::string> payload;  // text-mode answer lines

  Guards guards() const {
    Guards g;
    g.allow_override = guard_override;
    return g;
  }
  void say(const std::string& line) { payload.push_back(line); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

std::vector<NamedFrame> load_frames(const std::string& path, Report& r,
                                    const Guards& g) {
  std::string bytes = read_file(path);
  r.add_input(path, bytes);
  return parse_frames(bytes, g);
}

NamedCategory load_category(const std::string& path, Report& r) {
  std::string bytes = read_file(path);
  r.add_input(path, bytes);
  return parse_categories(bytes).front();
}

NamedSpace load_space(const std::string& path, Report& r) {
  std::string bytes = read_file(path);
  r.add_input(path, bytes);
  return parse_spaces(bytes).front();
}

UniverseBundle load_universe(const std::string& path, Report& r,
                             const Guards& g) {
  std::string bytes = read_file(path);
  r.add_input(path, bytes);
  return parse_universe(bytes, g);
}

std::string sublocale_elements(const Frame& f, Subset members) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < f.size(); ++i)
    if (subset_has(members, i)) {
      if (!first) out += " ";
      out += f.name(i);
      first = false;
    }
  return out + "}";
}

// ---- frame ----------------------------------------------------------------

void run_frame_check(CliState& st, Report& r, const std::string& file) {
  for (const auto& [name, f] : load_frames(file, r, st.guards())) {
    r.pass("frame-law:" + name, std::to_string(f->size()) + " elements");
    st.say(name + ": frame on " + std::to_string(f->size()) + " elements");
  }
}

void run_frame_heyting(CliState& st, Report& r, const std::string& file,
                       const std::string& a, const std::string& b) {
  auto f = load_frames(file, r, st.guards()).front().frame;
  int res = heyting(*f, f->index_of(a), f->index_of(b));
  r.pass("heyting:" + a + "=>" + b, f->name(res));
  st.say(f->name(res));
}

void run_frame_sublocales(CliState& st, Report& r, const std::string& file) {
  for (const auto& [name, f] : load_frames(file, r, st.guards())) {
    try {
      auto sl = sublocale_lattice(f, st.guards());
      for (Subset s : sl.sublocales) st.say(sublocale_elements(*f, s));
      r.pass("sublocales:" + name, std::to_string(sl.sublocales.size()));
    } catch (const SizeGuardExceeded& e) {
      r.skip("sublocales:" + name, e.what());
    }
  }
}

void run_frame_product(CliState& st, Report& r,
                       const std::vector<std::string>& files) {
  auto left = load_frames(files.front(), r, st.guards());
  FramePtr a = left[0].frame, b;
  std::string nb;
  if (files.size() >= 2) {
    auto right = load_frames(files[1], r, st.guards());
    b = right[0].frame;
    nb = right[0].name;
  } else if (left.size() >= 2) {
    b = left[1].frame;
    nb = left[1].name;
  } else {
    b = a;
    nb = left[0].name;
  }
  try {
    auto p = frame_product(a, b, st.guards());
    r.pass("product:" + left[0].name + "x" + nb,
           std::to_string(p.product->size()) + " elements");
    st.say(std::to_string(p.product->size()) + " elements");
    for (int i = 0; i < p.product->size(); ++i) st.say(p.product->name(i));
  } catch (const SizeGuardExceeded& e) {
    r.skip("product:" + left[0].name + "x" + nb, e.what());
  }
}

void run_frame_sh(CliState& st, Report& r, const std::string& file) {
  for (const auto& [name, f] : load_frames(file, r, st.guards())) {
    try {
      bool sh = is_strongly_hausdorff(f, st.guards());
      r.pass("strongly-hausdorff:" + name, sh ? "true" : "false");
      st.say(name + ": strongly hausdorff = " + (sh ? "true" : "false"));
    } catch (const SizeGuardExceeded& e) {
      r.skip("strongly-hausdorff:" + name, e.what());
    }
  }
}

// ---- cat ------------------------------------------------------------------

FullSubcategory subcat_of(const NamedCategory& nc,
                          const std::vector<std::string>& objs) {
  std::vector<int> ids;
  for (const auto& o : objs) ids.push_back(nc.category->object_index(o));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return full_subcategory(nc.category, ids);
}

void run_cat_final(CliState& st, Report& r, const std::string& file,
                   const std::vector<std::string>& objs) {
  auto nc = load_category(file, r);
  auto inc = subcat_of(nc, objs).inclusion();
  bool slice_route = is_final(inc);
  bool set_route = is_final_via_set_colimit(inc);
  st.say(std::string("final = ") + (slice_route ? "true" : "false"));
  r.pass("final:" + join(objs), slice_route ? "true" : "false");
  if (slice_route == set_route)
    r.pass("finality-routes-agree");
  else
    r.fail("finality-routes-agree",
           std::string("slice route ") + (slice_route ? "true" : "false") +
               ", set-colimit route " + (set_route ? "true" : "false"));
}

void run_cat_colimit(CliState& st, Report& r, const std::string& file,
                     const std::vector<std::string>& objs) {
  auto nc = load_category(file, r);
  auto inc = subcat_of(nc, objs).inclusion();
  try {
    auto col = find_colimit(inc, st.guards());
    if (col) {
      st.say(nc.category->object_name(col->cone.apex));
      r.pass("colimit:" + join(objs), nc.category->object_name(col->cone.apex));
    } else {
      st.say("none");
      r.pass("colimit:" + join(objs), "no colimit");
    }
  } catch (const SizeGuardExceeded& e) {
    r.skip("colimit:" + join(objs), e.what());
  }
}

void run_cat_adjoint(CliState& st, Report& r, const std::string& file,
                     const std::vector<std::string>& objs) {
  auto nc = load_category(file, r);
  auto sub = subcat_of(nc, objs);
  auto inc = sub.inclusion();
  auto adj = find_left_adjoint(inc);
  if (!adj) {
    st.say("none");
    r.pass("left-adjoint:" + join(objs), "none");
    return;
  }
  for (int d = 0; d < nc.category->num_objects(); ++d)
    st.say(nc.category->object_name(d) + " -> " +
           nc.category->object_name(sub.objects[adj->left.on_object(d)]));
  r.pass("left-adjoint:" + join(objs), "found");
  // Every right adjoint is final.
  if (is_final(inc))
    r.pass("right-adjoint-final");
  else
    r.fail("right-adjoint-final", "inclusion has a left adjoint but is not final");
}

// ---- kan ------------------------------------------------------------------

struct KanBundle {
  CatPtr c;
  std::vector<int> w;
  UniverseBundle raw;
};

KanBundle kan_bundle(CliState& st, Report& r, const std::string& file) {
  auto u = load_universe(file, r, st.guards());
  if (!u.category)
    throw ParseError(file + ": this command needs a category universe");
  KanBundle b;
  b.c = u.category->category;
  for (const auto& w : u.w_objects) b.w.push_back(b.c->object_index(w));
  std::sort(b.w.begin(), b.w.end());
  b.w.erase(std::unique(b.w.begin(), b.w.end()), b.w.end());
  b.raw = std::move(u);
  return b;
}

std::optional<ComonadData> build_density(const KanBundle& b, Report& r,
                                         const Guards& g) {
  std::string failure;
  auto m = density_comonad(b.c, b.w, &failure, g);
  if (!m)
    r.fail("density-comonad", "no colimit over W/" + failure);
  else
    r.pass("density-comonad");
  return m;
}

void verify_tables(const KanBundle& b, const CartesianData& prod,
                   Report& r) {
  for (const auto& t : b.raw.products) {
    int a = b.c->object_index(t.a), bb = b.c->object_index(t.b);
    int want = b.c->object_index(t.r);
    if (prod.has(a, bb) && prod.object(a, bb) == want)
      r.pass("products-table:" + t.a + "*" + t.b);
    else
      r.fail("products-table:" + t.a + "*" + t.b,
             prod.has(a, bb) ? "searched product is " +
                                   b.c->object_name(prod.object(a, bb))
                             : "no product found");
  }
  for (const auto& t : b.raw.exponentials) {
    int z = b.c->object_index(t.a), y = b.c->object_index(t.b);
    int want = b.c->object_index(t.r);
    auto ex = find_exponential(prod, y, z);
    if (ex && ex->expo == want)
      r.pass("exponentials-table:" + t.a + "^" + t.b);
    else
      r.fail("exponentials-table:" + t.a + "^" + t.b,
             ex ? "searched exponential is " + b.c->object_name(ex->expo)
                : "no exponential found");
  }
}

void run_kan_density(CliState& st, Report& r, const std::string& file) {
  auto b = kan_bundle(st, r, file);
  auto m = build_density(b, r, st.guards());
  if (!m) return;
  for (int c = 0; c < b.c->num_objects(); ++c)
    st.say("T(" + b.c->object_name(c) + ") = " +
           b.c->object_name(m->t.on_object(c)));
}

void run_kan_idempotent(CliState& st, Report& r, const std::string& file) {
  auto b = kan_bundle(st, r, file);
  auto m = build_density(b, r, st.guards());
  if (!m) return;
  bool idem = is_idempotent(*m);
  st.say(std::string("idempotent = ") + (idem ? "true" : "false"));
  r.pass("idempotent", idem ? "true" : "false");
}

void run_kan_coreflect(CliState& st, Report& r, const std::string& file) {
  auto b = kan_bundle(st, r, file);
  auto m = build_density(b, r, st.guards());
  if (!m) return;
  if (!is_idempotent(*m)) {
    r.fail("coreflection", "comonad is not idempotent");
    return;
  }
  auto coalg = coalgebra_category(*m);
  std::string names;
  for (int o : coalg.objects) {
    if (!names.empty()) names += " ";
    names += b.c->object_name(o);
  }
  st.say("coalgebras: " + names);
  r.pass("coalgebras", names);
  if (coreflection_check(*m, coalg))
    r.pass("coreflection-bijection");
  else
    r.fail("coreflection-bijection", "hom-set bijection through epsilon fails");
  for (int c = 0; c < b.c->num_objects(); ++c)
    if (generated_check(*m, c) != generated_check_via_colimit(*m, c, st.guards())) {
      r.fail("generated-routes-agree", b.c->object_name(c));
      return;
    }
  r.pass("generated-routes-agree");
}

void run_kan_closeable(CliState& st, Report& r, const std::string& file) {
  auto b = kan_bundle(st, r, file);
  auto m = build_density(b, r, st.guards());
  if (!m) return;
  CartesianData prod(b.c);
  verify_tables(b, prod, r);
  auto rep = closeable_check(*m, prod, st.guards());
  auto put = [&](const char* name, bool ok) {
    if (ok)
      r.pass(name);
    else
      r.fail(name, rep.witness.empty() ? "condition fails" : rep.witness);
    st.say(std::string(name) + " = " + (ok ? "true" : "false"));
  };
  put("exponentiable", rep.exponentiable_ok);
  put("product-closure", rep.product_closure_ok);
  put("theta-colimiting", rep.theta_colimiting_ok);
  put("hom-functor-limit", rep.s_functor_limit_ok);
}

void run_kan_hom(CliState& st, Report& r, const std::string& file,
                 const std::string& y, const std::string& z) {
  auto b = kan_bundle(st, r, file);
  auto m = build_density(b, r, st.guards());
  if (!m) return;
  CartesianData prod(b.c);
  verify_tables(b, prod, r);
  int h = internal_hom(*m, prod, b.c->object_index(y), b.c->object_index(z),
                       st.guards());
  st.say(b.c->object_name(h));
  r.pass("internal-hom:" + z + "^" + y, b.c->object_name(h));
  if (exponential_adjunction_check(*m, prod, st.guards()))
    r.pass("exponential-adjunction");
  else
    r.fail("exponential-adjunction", "|Hom(X*Y,Z)| != |Hom(X,Z^Y)| somewhere");
}

// Small thin shapes for random grid diagrams.
std::vector<CatPtr> grid_shapes() {
  std::vector<CatPtr> out;
  auto add = [&](std::vector<std::string> names,
                 std::vector<std::pair<int, int>> pairs) {
    out.push_back(thin_category(FinPoset::from_pairs(std::move(names), pairs)));
  };
  add({"i0"}, {});
  add({"i0", "i1"}, {{0, 1}});
  add({"i0", "i1", "i2"}, {{0, 1}, {1, 2}});
  add({"i0", "i1", "i2"}, {{0, 1}, {0, 2}});
  add({"i0", "i1", "i2"}, {{0, 2}, {1, 2}});
  add({"i0", "i1"}, {});
  return out;
}

std::optional<Functor> random_grid_functor(CatPtr grid, CatPtr c,
                                           std::mt19937& rng) {
  std::uniform_int_distribution<int> pick_obj(0, c->num_objects() - 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<int> omap(grid->num_objects());
    for (int& o : omap) o = pick_obj(rng);
    std::vector<int> mmap(grid->num_morphisms(), -1);
    bool ok = true;
    for (int m = 0; m < grid->num_morphisms() && ok; ++m) {
      auto hom = c->hom(omap[grid->src(m)], omap[grid->tgt(m)]);
      if (hom.empty()) {
        ok = false;
        break;
      }
      if (grid->is_identity(m))
        mmap[m] = c->identity(omap[grid->src(m)]);
      else
        mmap[m] = hom[std::uniform_int_distribution<size_t>(
            0, hom.size() - 1)(rng)];
    }
    if (!ok) continue;
    try {
      return Functor(grid, c, std::move(omap), std::move(mmap));
    } catch (const FunctorLawViolation&) {
    }
  }
  return std::nullopt;
}

void run_kan_fubini(CliState& st, Report& r, const std::string& file,
                    int count) {
  auto b = kan_bundle(st, r, file);
  std::mt19937 rng(st.seed);
  auto shapes = grid_shapes();
  int done = 0, skipped = 0;
  for (int trial = 0; done < count && trial < count * 20; ++trial) {
    CatPtr i = shapes[rng() % shapes.size()];
    CatPtr j = shapes[rng() % shapes.size()];
    auto f = random_grid_functor(product_category(i, j), b.c, rng);
    if (!f) continue;
    try {
      if (!fubini_check(*f, i, j, st.guards())) {
        r.fail("fubini", "comparison map is not iso on a seeded diagram");
        return;
      }
      ++done;
    } catch (const MissingColimit&) {
      ++skipped;
    }
  }
  st.say("fubini agreed on " + std::to_string(done) + " seeded diagrams");
  r.pass("fubini", std::to_string(done) + " diagrams, " +
                       std::to_string(skipped) + " without colimits");
}

// ---- kgen -----------------------------------------------------------------

void run_kgen_kdiagram(CliState& st, Report& r, const std::string& file) {
  for (const auto& [name, f] : load_frames(file, r, st.guards())) {
    try {
      auto kd = k_diagram(f, st.guards());
      for (const auto& s : kd.objects)
        st.say(sublocale_elements(*f, s.members));
      r.pass("k-diagram:" + name,
             std::to_string(kd.objects.size()) + " compact sublocales");
    } catch (const SizeGuardExceeded& e) {
      r.skip("k-diagram:" + name, e.what());
    }
  }
}

void run_kgen_counit(CliState& st, Report& r, const std::string& file) {
  for (const auto& [name, f] : load_frames(file, r, st.guards())) {
    try {
      auto d = density_counit_locale(f, st.guard_override, st.guards());
      st.say(name + ": T(L) has " + std::to_string(d.colimit.apex->size()) +
             " elements, counit iso = " + (d.iso ? "true" : "false"));
      r.pass("counit:" + name, d.iso ? "iso" : "not iso");
    } catch (const NotStronglyHausdorff& e) {
      r.fail("counit:" + name,
             std::string(e.what()) + "; rerun with --guard-override");
    } catch (const SizeGuardExceeded& e) {
      r.skip("counit:" + name, e.what());
    }
  }
}

void run_kgen_product_final(CliState& st, Report& r,
                            const std::vector<std::string>& files) {
  auto left = load_frames(files.front(), r, st.guards());
  FramePtr a = left[0].frame;
  FramePtr b = files.size() >= 2
                   ? load_frames(files[1], r, st.guards())[0].frame
                   : (left.size() >= 2 ? left[1].frame : a);
  try {
    auto rep = product_finality_check(a, b, st.guards());
    auto put = [&](const char* name, bool ok) {
      if (ok)
        r.pass(name);
      else
        r.fail(name, "check fails on the product diagram");
      st.say(std::string(name) + " = " + (ok ? "true" : "false"));
    };
    put("product-adjunction", rep.adjunction_ok);
    put("product-g-final", rep.g_final);
    put("product-theta-colimiting", rep.theta_colimiting);
  } catch (const SizeGuardExceeded& e) {
    r.skip("product-finality", e.what());
  }
}

// ---- dual -----------------------------------------------------------------

void run_dual_lc(CliState& st, Report& r, const std::string& file) {
  auto ns = load_space(file, r);
  auto f = open_set_frame(ns.space, st.guards());
  for (int i = 0; i < f->size(); ++i) st.say(f->name(i));
  r.pass("open-set-frame:" + ns.name, std::to_string(f->size()) + " opens");
}

void run_dual_sp(CliState& st, Report& r, const std::string& file) {
  auto nf = load_frames(file, r, st.guards()).front();
  auto y = points_space(nf.frame, st.guards());
  st.say(std::to_string(y.size()) + " points, " +
         std::to_string(y.num_opens()) + " opens");
  for (Subset o : y.opens) {
    std::string line = "{";
    bool first = true;
    for (int i = 0; i < y.size(); ++i)
      if (subset_has(o, i)) {
        if (!first) line += " ";
        line += y.points[i];
        first = false;
      }
    st.say(line + "}");
  }
  r.pass("points-space:" + nf.name, std::to_string(y.size()) + " points");
}

void dual_space_battery(const std::string& label, const FinTopSpace& x,
                        Report& r, const Guards& g) {
  auto rep = duality_check(x, g);
  auto put = [&](const char* name, bool ok) {
    if (ok)
      r.pass(label + ":" + name);
    else
      r.fail(label + ":" + name, "correspondence fails");
  };
  put("triangle-space", rep.triangle_space_ok);
  put("triangle-frame", rep.triangle_frame_ok);
  put("regular-match", rep.regular_match);
  put("compact-match", rep.compact_match);
  // Finite T0 spaces are sober; non-T0 spaces must fail the round trip.
  if (rep.sober_roundtrip == space_t0(x))
    r.pass(label + ":sober-roundtrip",
           rep.sober_roundtrip ? "homeomorphic" : "not T0, collapses");
  else
    r.fail(label + ":sober-roundtrip", "round trip disagrees with T0");
}

void run_dual_roundtrip(CliState& st, Report& r, const std::string& file) {
  if (fs::path(file).extension() == ".frm") {
    auto nf = load_frames(file, r, st.guards()).front();
    if (spatial_roundtrip(nf.frame, st.guards())) {
      r.pass("spatial-roundtrip:" + nf.name);
      st.say("spatial roundtrip = true");
    } else {
      r.fail("spatial-roundtrip:" + nf.name,
             "open-set frame of the point space is not isomorphic");
    }
    return;
  }
  auto ns = load_space(file, r);
  dual_space_battery(ns.name, ns.space, r, st.guards());
  st.say("duality checks recorded for " + ns.name);
}

// ---- suite ----------------------------------------------------------------

void suite_frame_file(CliState& st, Report& r, const std::string& path) {
  for (const auto& [name, f] : load_frames(path, r, st.guards())) {
    const std::string tag = fs::path(path).filename().string() + ":" + name;
    r.pass(tag + ":frame-law");

    bool resid = true;
    for (int a = 0; a < f->size() && resid; ++a)
      for (int b = 0; b < f->size() && resid; ++b) {
        int h = heyting(*f, a, b);
        for (int x = 0; x < f->size(); ++x)
          if (f->leq(f->meet(a, x), b) != f->leq(x, h)) {
            resid = false;
            break;
          }
      }
    if (resid)
      r.pass(tag + ":heyting-residuation");
    else
      r.fail(tag + ":heyting-residuation", "a^x <= b mismatch");

    try {
      auto sl = sublocale_lattice(f, st.guards());
      bool coframe = true;
      for (Subset s : sl.sublocales)
        for (Subset t1 : sl.sublocales) {
          for (Subset t2 : sl.sublocales) {
            Subset lhs = sub_join(*f, {s, t1 & t2});
            Subset rhs = sub_join(*f, {s, t1}) & sub_join(*f, {s, t2});
            if (lhs != rhs) coframe = false;
          }
          if (!coframe) break;
        }
      if (coframe)
        r.pass(tag + ":sublocale-coframe-law");
      else
        r.fail(tag + ":sublocale-coframe-law", "binary distribution fails");
    } catch (const SizeGuardExceeded& e) {
      r.skip(tag + ":sublocale-coframe-law", e.what());
    }

    if (f->size() <= 5) {
      bool preimage_ok = true;
      try {
        for (const auto& m : enumerate_localic_maps(f, f))
          for (int b = 0; b < f->size(); ++b) (void)preimage_closed(m, b);
      } catch (const InternalInvariantBroken&) {
        preimage_ok = false;
      }
      if (preimage_ok)
        r.pass(tag + ":closed-preimage");
      else
        r.fail(tag + ":closed-preimage", "f^-1(c(b)) != c(f*(b))");
    } else {
      r.skip(tag + ":closed-preimage", "frame larger than the endomap scan bound");
    }

    try {
      bool sh = is_strongly_hausdorff(f, st.guards());
      r.pass(tag + ":strongly-hausdorff", sh ? "true" : "false");
      if (sh) {
        auto d = density_counit_locale(f, false, st.guards());
        if (d.iso)
          r.pass(tag + ":compactly-generated");
        else
          r.fail(tag + ":compactly-generated", "density counit is not iso");
        if (idempotence_locale_check(f, st.guards()))
          r.pass(tag + ":idempotence");
        else
          r.fail(tag + ":idempotence", "T(T(L)) does not collapse to T(L)");
      }
    } catch (const SizeGuardExceeded& e) {
      r.skip(tag + ":strongly-hausdorff", e.what());
    }
  }
}

void suite_cat_file(CliState& st, Report& r, const std::string& path) {
  std::string bytes = read_file(path);
  r.add_input(path, bytes);
  for (const auto& [name, c] : parse_categories(bytes)) {
    const std::string tag = fs::path(path).filename().string() + ":" + name;
    r.pass(tag + ":category-laws",
           std::to_string(c->num_morphisms()) + " morphisms");
    bool agree = true;
    auto probe = [&](const Functor& f) {
      if (is_final(f) != is_final_via_set_colimit(f)) agree = false;
    };
    probe(Functor::identity(c));
    for (int o = 0; o < c->num_objects() && agree; ++o)
      probe(full_subcategory(c, {o}).inclusion());
    if (agree)
      r.pass(tag + ":finality-routes-agree");
    else
      r.fail(tag + ":finality-routes-agree",
             "slice and set-colimit routes disagree");
    (void)st;
  }
}

void suite_spc_file(CliState& st, Report& r, const std::string& path) {
  std::string bytes = read_file(path);
  r.add_input(path, bytes);
  for (const auto& [name, x] : parse_spaces(bytes))
    dual_space_battery(fs::path(path).filename().string() + ":" + name, x, r,
                       st.guards());
}

void suite_uni_file(CliState& st, Report& r, const std::string& path) {
  const std::string tag = fs::path(path).filename().string();
  auto u = load_universe(path, r, st.guards());
  if (u.category) {
    KanBundle b;
    b.c = u.category->category;
    for (const auto& w : u.w_objects) b.w.push_back(b.c->object_index(w));
    std::sort(b.w.begin(), b.w.end());
    b.w.erase(std::unique(b.w.begin(), b.w.end()), b.w.end());
    b.raw = u;
    std::string failure;
    auto m = density_comonad(b.c, b.w, &failure, st.guards());
    if (!m) {
      r.fail(tag + ":density-comonad", "no colimit over W/" + failure);
      return;
    }
    r.pass(tag + ":density-comonad");
    if (!is_idempotent(*m)) {
      r.fail(tag + ":idempotent", "delta has a non-iso component");
      return;
    }
    r.pass(tag + ":idempotent");
    auto coalg = coalgebra_category(*m);
    if (coreflection_check(*m, coalg))
      r.pass(tag + ":coreflection-bijection");
    else
      r.fail(tag + ":coreflection-bijection", "hom-set bijection fails");
    bool gen_agree = true;
    for (int c = 0; c < b.c->num_objects(); ++c)
      if (generated_check(*m, c) !=
          generated_check_via_colimit(*m, c, st.guards()))
        gen_agree = false;
    if (gen_agree)
      r.pass(tag + ":generated-routes-agree");
    else
      r.fail(tag + ":generated-routes-agree", "coalgebra vs colimit route");
    if (!u.products.empty() || !u.exponentials.empty()) {
      CartesianData prod(b.c);
      Report tables;
      verify_tables(b, prod, tables);
      for (auto& res : tables.results) res.check = tag + ":" + res.check;
      r.merge(tables);
    }
    return;
  }

  // Frame-list universe.
  std::vector<FramePtr> frames;
  std::vector<std::string> names;
  for (const auto& [name, f] : u.frames) {
    frames.push_back(f);
    names.push_back(name);
  }
  auto universe = make_universe(frames, st.guards());
  for (const auto& decl : u.maps) {
    auto at = [&](const std::string& n) {
      auto it = std::find(names.begin(), names.end(), n);
      if (it == names.end())
        throw ParseError("maps section references unknown frame " + n);
      return static_cast<int>(it - names.begin());
    };
    int si = at(decl.src), ti = at(decl.tgt);
    std::vector<int> table;
    for (const auto& v : decl.values)
      table.push_back(frames[ti]->index_of(v));
    try {
      LocalicMap m(frames[si], frames[ti], table);
      bool found = false;
      for (const auto& known : universe.maps[si][ti])
        if (known.map().table() == table) found = true;
      r.pass(tag + ":map:" + decl.name, found ? "enumerated" : "valid");
      (void)m;
    } catch (const NotLocalic& e) {
      r.fail(tag + ":map:" + decl.name, e.what());
    }
  }
  auto k = coreflector_k(universe, st.guards());
  if (k.hom_bijection_ok)
    r.pass(tag + ":coreflector-hom-bijection");
  else
    r.fail(tag + ":coreflector-hom-bijection", "|maps(M,T(L))| != |maps(M,L)|");
  for (size_t i = 0; i < frames.size(); ++i) {
    try {
      auto refl = image_reflection(universe, static_cast<int>(i), st.guards());
      if (refl.adjunction_ok && refl.u_final)
        r.pass(tag + ":image-reflection:" + names[i]);
      else
        r.fail(tag + ":image-reflection:" + names[i],
               refl.adjunction_ok ? "inclusion functor is not final"
                                  : "reflection bijection fails");
    } catch (const UniverseTooSmall& e) {
      r.skip(tag + ":image-reflection:" + names[i], e.what());
    }
  }
}

void run_suite(CliState& st, Report& r, const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ParseError(dir + ": no fixture files");
  for (const auto& p : files) {
    const std::string ext = p.extension().string();
    try {
      if (ext == ".frm")
        suite_frame_file(st, r, p.string());
      else if (ext == ".cat")
        suite_cat_file(st, r, p.string());
      else if (ext == ".spc")
        suite_spc_file(st, r, p.string());
      else if (ext == ".uni")
        suite_uni_file(st, r, p.string());
    } catch (const SizeGuardExceeded& e) {
      r.skip(p.filename().string(), e.what());
    } catch (const Error& e) {
      r.fail(p.filename().string(), e.what());
    }
  }
}

void run_validate(CliState& st, Report& r,
                  const std::vector<std::string>& files) {
  for (const auto& file : files) {
    const std::string ext = fs::path(file).extension().string();
    try {
      std::string bytes = read_file(file);
      r.add_input(file, bytes);
      if (ext == ".frm")
        parse_frames(bytes, st.guards());
      else if (ext == ".cat")
        parse_categories(bytes);
      else if (ext == ".spc")
        parse_spaces(bytes);
      else if (ext == ".uni")
        parse_universe(bytes, st.guards());
      else
        throw ParseError("unknown extension " + ext);
      r.pass("parse:" + file);
    } catch (const Error& e) {
      r.fail("parse:" + file, e.what());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CliState st;
  Report report;
  std::function<void()> action;

  CLI::App app{"finite locale and category workbench"};
  app.require_subcommand(1);
  app.add_option("--seed", st.seed, "seed for randomized suites");
  app.add_flag("--guard-override", st.guard_override,
               "lift size guards and strong-Hausdorff preconditions");
  app.add_flag("--json", st.json, "emit the JSON report on stdout");

  static std::vector<std::string> files;
  static std::vector<std::string> objs;
  static std::string file, arg_a, arg_b, dir;
  static int count = 25;

  auto* validate = app.add_subcommand("validate", "parse DSL files");
  validate->add_option("files", files)->required();
  validate->callback([&] { action = [&] { run_validate(st, report, files); }; });

  auto* frame = app.add_subcommand("frame", "frame operations");
  frame->require_subcommand(1);
  auto* fcheck = frame->add_subcommand("check", "validate the frame law");
  fcheck->add_option("file", file)->required();
  fcheck->callback([&] { action = [&] { run_frame_check(st, report, file); }; });
  auto* fhey = frame->add_subcommand("heyting", "compute a => b");
  fhey->add_option("file", file)->required();
  fhey->add_option("a", arg_a)->required();
  fhey->add_option("b", arg_b)->required();
  fhey->callback(
      [&] { action = [&] { run_frame_heyting(st, report, file, arg_a, arg_b); }; });
  auto* fsub = frame->add_subcommand("sublocales", "list all sublocales");
  fsub->add_option("file", file)->required();
  fsub->callback([&] { action = [&] { run_frame_sublocales(st, report, file); }; });
  auto* fprod = frame->add_subcommand("product", "C-ideal product frame");
  fprod->add_option("files", files)->required();
  fprod->callback([&] { action = [&] { run_frame_product(st, report, files); }; });
  auto* fsh = frame->add_subcommand("sh-check", "strong Hausdorff predicate");
  fsh->add_option("file", file)->required();
  fsh->callback([&] { action = [&] { run_frame_sh(st, report, file); }; });

  auto* cat = app.add_subcommand("cat", "category operations");
  cat->require_subcommand(1);
  auto* cfin = cat->add_subcommand("final", "finality of a full-subcategory inclusion");
  cfin->add_option("file", file)->required();
  cfin->add_option("objects", objs)->required();
  cfin->callback([&] { action = [&] { run_cat_final(st, report, file, objs); }; });
  auto* ccol = cat->add_subcommand("colimit", "colimit of a full subdiagram");
  ccol->add_option("file", file)->required();
  ccol->add_option("objects", objs)->required();
  ccol->callback([&] { action = [&] { run_cat_colimit(st, report, file, objs); }; });
  auto* cadj = cat->add_subcommand("adjoint", "left adjoint of an inclusion");
  cadj->add_option("file", file)->required();
  cadj->add_option("objects", objs)->required();
  cadj->callback([&] { action = [&] { run_cat_adjoint(st, report, file, objs); }; });

  auto* kan = app.add_subcommand("kan", "density comonad operations");
  kan->require_subcommand(1);
  auto* kde = kan->add_subcommand("density", "compute the density comonad");
  kde->add_option("file", file)->required();
  kde->callback([&] { action = [&] { run_kan_density(st, report, file); }; });
  auto* kid = kan->add_subcommand("idempotent", "idempotence of the comonad");
  kid->add_option("file", file)->required();
  kid->callback([&] { action = [&] { run_kan_idempotent(st, report, file); }; });
  auto* kco = kan->add_subcommand("coreflect", "coalgebras and the coreflection");
  kco->add_option("file", file)->required();
  kco->callback([&] { action = [&] { run_kan_coreflect(st, report, file); }; });
  auto* kcl = kan->add_subcommand("closeable", "cartesian-closure conditions");
  kcl->add_option("file", file)->required();
  kcl->callback([&] { action = [&] { run_kan_closeable(st, report, file); }; });
  auto* kho = kan->add_subcommand("hom", "internal hom Z^Y");
  kho->add_option("file", file)->required();
  kho->add_option("y", arg_a)->required();
  kho->add_option("z", arg_b)->required();
  kho->callback(
      [&] { action = [&] { run_kan_hom(st, report, file, arg_a, arg_b); }; });
  auto* kfu = kan->add_subcommand("fubini", "joint vs iterated colimits");
  kfu->add_option("file", file)->required();
  kfu->add_option("--count", count, "number of seeded diagrams");
  kfu->callback([&] { action = [&] { run_kan_fubini(st, report, file, count); }; });

  auto* kgen = app.add_subcommand("kgen", "compact-generation operations");
  kgen->require_subcommand(1);
  auto* gkd = kgen->add_subcommand("kdiagram", "compact sublocale diagram");
  gkd->add_option("file", file)->required();
  gkd->callback([&] { action = [&] { run_kgen_kdiagram(st, report, file); }; });
  auto* gcu = kgen->add_subcommand("counit", "density counit at a locale");
  gcu->add_option("file", file)->required();
  gcu->callback([&] { action = [&] { run_kgen_counit(st, report, file); }; });
  auto* gpf = kgen->add_subcommand("product-final", "product finality checks");
  gpf->add_option("files", files)->required();
  gpf->callback(
      [&] { action = [&] { run_kgen_product_final(st, report, files); }; });

  auto* dual = app.add_subcommand("dual", "space/locale duality");
  dual->require_subcommand(1);
  auto* dlc = dual->add_subcommand("lc", "open-set frame of a space");
  dlc->add_option("file", file)->required();
  dlc->callback([&] { action = [&] { run_dual_lc(st, report, file); }; });
  auto* dsp = dual->add_subcommand("sp", "point space of a frame");
  dsp->add_option("file", file)->required();
  dsp->callback([&] { action = [&] { run_dual_sp(st, report, file); }; });
  auto* drt = dual->add_subcommand("roundtrip", "duality round trip");
  drt->add_option("file", file)->required();
  drt->callback([&] { action = [&] { run_dual_roundtrip(st, report, file); }; });

  auto* suite = app.add_subcommand("suite", "property suites over fixtures");
  suite->require_subcommand(1);
  auto* srun = suite->add_subcommand("run", "run all suites over a directory");
  srun->add_option("dir", dir)->required();
  srun->callback([&] { action = [&] { run_suite(st, report, dir); }; });

  CLI11_PARSE(app, argc, argv);

  std::vector<std::string> parts;
  for (int i = 1; i < argc; ++i) parts.emplace_back(argv[i]);
  report.command = join(parts);

  auto started = std::chrono::steady_clock::now();
  try {
    action();
  } catch (const Error& e) {
    report.fail("error", e.what());
    std::cerr << "error: " << e.what() << "\n";
  }
  report.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();

  if (st.json) {
    std::cout << report.to_json();
  } else {
    for (const auto& line : st.payload) std::cout << line << "\n";
    for (const auto& res : report.results)
      if (res.status != "pass")
        std::cout << (res.status == "fail" ? "FAIL " : "skip ") << res.check
                  << (res.witness.empty() ? "" : "  [" + res.witness + "]")
                  << "\n";
  }
  std::cerr << "completed " << report.results.size() << " checks in "
            << report.duration_ms << " ms\n";
  return report.ok() ? 0 : 1;
}
