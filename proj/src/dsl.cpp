#include "finloc/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <sstream>

namespace finloc {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

struct Section {
  std::string key;
  int line = 0;
  // Raw text per source line, for line-accurate diagnostics.
  std::vector<std::pair<int, std::string>> body;

  std::string text() const {
    std::string out;
    for (const auto& [ln, t] : body) {
      out += t;
      out += ' ';
    }
    return out;
  }
};

struct Block {
  std::string kind;  // lattice, frame, category, space
  std::string name;
  int line = 0;
  std::vector<Section> sections;

  const Section* find(const std::string& key) const {
    for (const auto& s : sections)
      if (s.key == key) return &s;
    return nullptr;
  }
};

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool is_word(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      return false;
  return true;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

const char* kBlockKinds[] = {"lattice", "frame", "category", "space"};
const char* kSectionKeys[] = {"elements", "order",    "objects",
                              "arrows",   "compose",  "points",
                              "opens",    "products", "exponentials",
                              "maps",     "subcategory"};

std::vector<Block> parse_blocks(const std::string& text) {
  std::vector<Block> blocks;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.resize(hash);
    std::string line = strip(raw);
    if (line.empty()) continue;

    auto tokens = words(line);
    bool header = false;
    for (const char* k : kBlockKinds)
      if (tokens.size() >= 1 && tokens[0] == k) {
        if (tokens.size() != 2 || !is_word(tokens[1]))
          fail(lineno, std::string(k) + " header needs exactly one name");
        blocks.push_back(Block{k, tokens[1], lineno, {}});
        header = true;
      }
    if (header) continue;

    std::string key;
    std::string rest;
    if (tokens[0] == "subcategory") {
      // `subcategory W: ...`
      auto colon = line.find(':');
      if (colon == std::string::npos || strip(line.substr(11, colon - 11)) != "W")
        fail(lineno, "expected `subcategory W:`");
      key = "subcategory";
      rest = strip(line.substr(colon + 1));
    } else if (auto colon = line.find(':'); colon != std::string::npos) {
      std::string head = strip(line.substr(0, colon));
      for (const char* k : kSectionKeys)
        if (head == k) key = k;
      if (!key.empty()) rest = strip(line.substr(colon + 1));
    }

    if (blocks.empty())
      fail(lineno, "content before the first block header");
    auto& block = blocks.back();
    if (!key.empty()) {
      block.sections.push_back(Section{key, lineno, {}});
      if (!rest.empty()) block.sections.back().body.emplace_back(lineno, rest);
    } else {
      if (block.sections.empty())
        fail(lineno, "expected a `key:` section line");
      block.sections.back().body.emplace_back(lineno, line);
    }
  }
  return blocks;
}

std::vector<std::pair<int, int>> parse_order(const Section& sec,
                                             const std::map<std::string, int>& index) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [ln, text] : sec.body) {
    std::string acc;
    auto flush_if_complete = [&]() {
      auto at = acc.find("<=");
      if (at == std::string::npos || at + 2 >= acc.size()) return;
      std::string a = acc.substr(0, at), b = acc.substr(at + 2);
      if (!is_word(a) || !is_word(b))
        fail(ln, "malformed order constraint `" + acc + "`");
      auto ia = index.find(a), ib = index.find(b);
      if (ia == index.end()) fail(ln, "unknown element `" + a + "`");
      if (ib == index.end()) fail(ln, "unknown element `" + b + "`");
      pairs.emplace_back(ia->second, ib->second);
      acc.clear();
    };
    for (const auto& w : words(text)) {
      acc += w;
      flush_if_complete();
    }
    if (!acc.empty()) fail(ln, "dangling order constraint `" + acc + "`");
  }
  return pairs;
}

NamedFrame frame_of_block(const Block& b, const Guards& g) {
  const Section* elems = b.find("elements");
  if (!elems) fail(b.line, b.kind + " " + b.name + " has no `elements:` section");
  std::vector<std::string> names = words(elems->text());
  if (names.empty()) fail(elems->line, "empty `elements:` section");
  std::map<std::string, int> index;
  for (size_t i = 0; i < names.size(); ++i) {
    if (!is_word(names[i])) fail(elems->line, "bad element name `" + names[i] + "`");
    if (!index.emplace(names[i], static_cast<int>(i)).second)
      fail(elems->line, "duplicate element `" + names[i] + "`");
  }
  std::vector<std::pair<int, int>> pairs;
  if (const Section* order = b.find("order"))
    pairs = parse_order(*order, index);
  return NamedFrame{b.name, check_frame(std::make_shared<const FinLattice>(
                                validate_lattice(std::move(names), pairs)),
                            g)};
}

NamedCategory category_of_block(const Block& b) {
  const Section* objs = b.find("objects");
  if (!objs) fail(b.line, "category " + b.name + " has no `objects:` section");
  std::vector<std::string> objects = words(objs->text());
  if (objects.empty()) fail(objs->line, "empty `objects:` section");
  std::map<std::string, int> oindex;
  for (size_t i = 0; i < objects.size(); ++i) {
    if (!is_word(objects[i])) fail(objs->line, "bad object name `" + objects[i] + "`");
    if (!oindex.emplace(objects[i], static_cast<int>(i)).second)
      fail(objs->line, "duplicate object `" + objects[i] + "`");
  }

  std::vector<FinCategory::MorphismData> mors;
  std::vector<int> ids;
  std::map<std::string, int> mindex;
  for (size_t i = 0; i < objects.size(); ++i) {
    mors.push_back({"id_" + objects[i], static_cast<int>(i), static_cast<int>(i)});
    ids.push_back(static_cast<int>(i));
    mindex.emplace(mors.back().name, static_cast<int>(i));
  }

  static const std::regex arrow_re(
      R"(([A-Za-z0-9_-]+)\s*:\s*([A-Za-z0-9_-]+)\s*->\s*([A-Za-z0-9_-]+))");
  if (const Section* arrows = b.find("arrows"))
    for (const auto& [ln, text] : arrows->body) {
      for (std::sregex_iterator it(text.begin(), text.end(), arrow_re), end;
           it != end; ++it) {
        const auto& m = *it;
        auto so = oindex.find(m[2]);
        auto to = oindex.find(m[3]);
        if (so == oindex.end()) fail(ln, "unknown object `" + m[2].str() + "`");
        if (to == oindex.end()) fail(ln, "unknown object `" + m[3].str() + "`");
        if (!mindex.emplace(m[1], static_cast<int>(mors.size())).second)
          fail(ln, "duplicate arrow `" + m[1].str() + "`");
        mors.push_back({m[1], so->second, to->second});
      }
      if (!strip(std::regex_replace(text, arrow_re, " ")).empty())
        fail(ln, "malformed arrow declaration near `" + text + "`");
    }

  const int nm = static_cast<int>(mors.size());
  std::vector<int> comp(nm * nm, -1);
  for (int f = 0; f < nm; ++f) {
    comp[ids[mors[f].tgt] * nm + f] = f;
    comp[f * nm + ids[mors[f].src]] = f;
  }

  static const std::regex comp_re(
      R"(([A-Za-z0-9_-]+)\s*\.\s*([A-Za-z0-9_-]+)\s*=\s*([A-Za-z0-9_-]+))");
  if (const Section* sec = b.find("compose"))
    for (const auto& [ln, text] : sec->body) {
      for (std::sregex_iterator it(text.begin(), text.end(), comp_re), end;
           it != end; ++it) {
        const auto& m = *it;
        auto lookup = [&](const std::string& n) {
          auto at = mindex.find(n);
          if (at == mindex.end()) fail(ln, "unknown arrow `" + n + "`");
          return at->second;
        };
        int g = lookup(m[1]), f = lookup(m[2]), h = lookup(m[3]);
        if (mors[g].src != mors[f].tgt)
          fail(ln, "`" + m[1].str() + "." + m[2].str() + "` is not composable");
        int& slot = comp[g * nm + f];
        if (slot != -1 && slot != h)
          fail(ln, "conflicting composite for `" + m[1].str() + "." +
                       m[2].str() + "`");
        slot = h;
      }
      if (!strip(std::regex_replace(text, comp_re, " ")).empty())
        fail(ln, "malformed compose declaration near `" + text + "`");
    }

  return NamedCategory{
      b.name, std::make_shared<const FinCategory>(FinCategory::from_tables(
                  std::move(objects), std::move(mors), std::move(ids),
                  std::move(comp)))};
}

NamedSpace space_of_block(const Block& b) {
  const Section* pts = b.find("points");
  if (!pts) fail(b.line, "space " + b.name + " has no `points:` section");
  std::vector<std::string> points = words(pts->text());
  std::map<std::string, int> pindex;
  for (size_t i = 0; i < points.size(); ++i) {
    if (!is_word(points[i])) fail(pts->line, "bad point name `" + points[i] + "`");
    if (!pindex.emplace(points[i], static_cast<int>(i)).second)
      fail(pts->line, "duplicate point `" + points[i] + "`");
  }
  const Section* ops = b.find("opens");
  if (!ops) fail(b.line, "space " + b.name + " has no `opens:` section");
  std::vector<Subset> opens;
  static const std::regex open_re(R"(\{([^{}]*)\})");
  for (const auto& [ln, text] : ops->body) {
    for (std::sregex_iterator it(text.begin(), text.end(), open_re), end;
         it != end; ++it) {
      Subset s = 0;
      for (const auto& w : words((*it)[1])) {
        auto at = pindex.find(w);
        if (at == pindex.end()) fail(ln, "unknown point `" + w + "`");
        s |= subset_of(at->second);
      }
      opens.push_back(s);
    }
    if (!strip(std::regex_replace(text, open_re, " ")).empty())
      fail(ln, "malformed open set near `" + text + "`");
  }
  return NamedSpace{b.name, make_space(std::move(points), std::move(opens))};
}

std::vector<UniverseBundle::Triple> parse_triples(const Section& sec,
                                                  const std::regex& re) {
  std::vector<UniverseBundle::Triple> out;
  for (const auto& [ln, text] : sec.body) {
    for (std::sregex_iterator it(text.begin(), text.end(), re), end; it != end;
         ++it)
      out.push_back({(*it)[1], (*it)[2], (*it)[3], ln});
    if (!strip(std::regex_replace(text, re, " ")).empty())
      fail(ln, "malformed entry near `" + text + "`");
  }
  return out;
}

}  // namespace

std::vector<NamedFrame> parse_frames(const std::string& text, const Guards& g) {
  std::vector<NamedFrame> out;
  for (const auto& b : parse_blocks(text)) {
    if (b.kind != "lattice" && b.kind != "frame")
      fail(b.line, "expected a lattice or frame block, found " + b.kind);
    out.push_back(frame_of_block(b, g));
  }
  if (out.empty()) throw ParseError("no lattice or frame blocks found");
  return out;
}

std::vector<NamedCategory> parse_categories(const std::string& text) {
  std::vector<NamedCategory> out;
  for (const auto& b : parse_blocks(text)) {
    if (b.kind != "category")
      fail(b.line, "expected a category block, found " + b.kind);
    out.push_back(category_of_block(b));
  }
  if (out.empty()) throw ParseError("no category blocks found");
  return out;
}

std::vector<NamedSpace> parse_spaces(const std::string& text) {
  std::vector<NamedSpace> out;
  for (const auto& b : parse_blocks(text)) {
    if (b.kind != "space")
      fail(b.line, "expected a space block, found " + b.kind);
    out.push_back(space_of_block(b));
  }
  if (out.empty()) throw ParseError("no space blocks found");
  return out;
}

UniverseBundle parse_universe(const std::string& text, const Guards& g) {
  UniverseBundle u;
  auto blocks = parse_blocks(text);
  if (blocks.empty()) throw ParseError("empty universe file");
  static const std::regex prod_re(
      R"(([A-Za-z0-9_-]+)\s*\*\s*([A-Za-z0-9_-]+)\s*=\s*([A-Za-z0-9_-]+))");
  static const std::regex expo_re(
      R"(([A-Za-z0-9_-]+)\s*\^\s*([A-Za-z0-9_-]+)\s*=\s*([A-Za-z0-9_-]+))");
  static const std::regex map_re(
      R"(([A-Za-z0-9_-]+)\s*:\s*([A-Za-z0-9_-]+)\s*->\s*([A-Za-z0-9_-]+)\s*=(.*))");

  for (const auto& b : blocks) {
    if (b.kind == "category") {
      if (u.category) fail(b.line, "a universe holds at most one category");
      u.category = category_of_block(b);
      const Section* sub = b.find("subcategory");
      if (!sub) fail(b.line, "category universe needs `subcategory W:`");
      u.w_objects = words(sub->text());
      for (const auto& w : u.w_objects)
        u.category->category->object_index(w);  // throws UnknownObject
      if (const Section* sec = b.find("products"))
        u.products = parse_triples(*sec, prod_re);
      if (const Section* sec = b.find("exponentials"))
        u.exponentials = parse_triples(*sec, expo_re);
    } else if (b.kind == "lattice" || b.kind == "frame") {
      u.frames.push_back(frame_of_block(b, g));
      if (const Section* sec = b.find("maps"))
        for (const auto& [ln, line] : sec->body) {
          std::smatch m;
          if (!std::regex_match(line, m, map_re))
            fail(ln, "malformed map declaration `" + line + "`");
          u.maps.push_back({m[1], m[2], m[3], words(m[4]), ln});
        }
    } else {
      fail(b.line, "unexpected " + b.kind + " block in a universe file");
    }
  }
  if (u.category && !u.frames.empty())
    throw ParseError("a universe is either a category or a list of frames");
  if (!u.category && u.frames.empty())
    throw ParseError("universe file declares no category and no frames");
  return u;
}

}  // namespace finloc
