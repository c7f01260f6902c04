#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finloc/duality.hpp"
#include "finloc/fincat.hpp"
#include "finloc/frames.hpp"

namespace finloc {

struct NamedFrame {
  std::string name;
  FramePtr frame;
};

struct NamedCategory {
  std::string name;
  CatPtr category;
};

struct NamedSpace {
  std::string name;
  FinTopSpace space;
};

// `lattice <name>` / `frame <name>` blocks with `elements:` and `order:`
// sections; `frame` headers additionally run the frame check.
std::vector<NamedFrame> parse_frames(const std::string& text,
                                     const Guards& g = {});

// `category <name>` with `objects:`, `arrows: f: a->b`, `compose: g.f = h`;
// identities are implicit.
std::vector<NamedCategory> parse_categories(const std::string& text);

// `space <name>` with `points:` and `opens: {a b} {} ...`.
std::vector<NamedSpace> parse_spaces(const std::string& text);

// Universe bundle: either a list of frame blocks (locale universe) or a
// category block plus `subcategory W: ...` (generator universe). Supplied
// product/exponential tables and named maps are carried through for the
// caller to verify against the searched structure.
struct UniverseBundle {
  std::vector<NamedFrame> frames;
  std::optional<NamedCategory> category;
  std::vector<std::string> w_objects;

  struct Triple {
    std::string a, b, r;  // products: a*b = r; exponentials: z^y = r
    int line = 0;
  };
  std::vector<Triple> products;
  std::vector<Triple> exponentials;

  struct MapDecl {
    std::string name, src, tgt;
    std::vector<std::string> values;  // image of each source element in order
    int line = 0;
  };
  std::vector<MapDecl> maps;
};

UniverseBundle parse_universe(const std::string& text, const Guards& g = {});

}  // namespace finloc
