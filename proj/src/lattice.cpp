#include "finloc/lattice.hpp"

#include <algorithm>
#include <unordered_set>

namespace finloc {

FinPoset FinPoset::from_pairs(std::vector<std::string> names,
                              const std::vector<std::pair<int, int>>& pairs) {
  const int n = static_cast<int>(names.size());
  if (n == 0) throw NotAPoset("element list is empty");
  if (n > 64) throw NotAPoset("more than 64 elements are not supported");
  {
    std::unordered_set<std::string> seen;
    for (const auto& nm : names)
      if (!seen.insert(nm).second)
        throw NotAPoset("duplicate element identifier: " + nm);
  }

  std::vector<std::uint8_t> leq(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw NotAPoset("order pair references unknown element");
    leq[a * n + b] = 1;
  }
  // Warshall transitive closure.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (int j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = 1;

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq[i * n + j] && leq[j * n + i])
        throw NotAPoset("antisymmetry violated between " + names[i] + " and " +
                        names[j]);

  FinPoset p;
  p.names_ = std::move(names);
  p.leq_ = std::move(leq);
  return p;
}

int FinPoset::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw UnknownElement("unknown element: " + name);
  return static_cast<int>(it - names_.begin());
}

std::optional<int> FinPoset::try_index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

namespace {

// Greatest element of `candidates` under leq, or -1 if there is none.
int greatest(const FinPoset& p, const std::vector<int>& candidates) {
  for (int c : candidates) {
    bool all = true;
    for (int d : candidates)
      if (!p.leq(d, c)) {
        all = false;
        break;
      }
    if (all) return c;
  }
  return -1;
}

int least(const FinPoset& p, const std::vector<int>& candidates) {
  for (int c : candidates) {
    bool all = true;
    for (int d : candidates)
      if (!p.leq(c, d)) {
        all = false;
        break;
      }
    if (all) return c;
  }
  return -1;
}

}  // namespace

FinLattice FinLattice::from_poset(FinPoset poset) {
  const int n = poset.size();
  FinLattice l;
  l.meet_.assign(static_cast<size_t>(n) * n, -1);
  l.join_.assign(static_cast<size_t>(n) * n, -1);

  std::vector<int> lower, upper;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      lower.clear();
      upper.clear();
      for (int x = 0; x < n; ++x) {
        if (poset.leq(x, a) && poset.leq(x, b)) lower.push_back(x);
        if (poset.leq(a, x) && poset.leq(b, x)) upper.push_back(x);
      }
      int m = greatest(poset, lower);
      int j = least(poset, upper);
      if (m < 0)
        throw NotALattice("no meet for " + poset.name(a) + ", " + poset.name(b));
      if (j < 0)
        throw NotALattice("no join for " + poset.name(a) + ", " + poset.name(b));
      l.meet_[a * n + b] = m;
      l.join_[a * n + b] = j;
    }
  }

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  l.bottom_ = least(poset, all);
  l.top_ = greatest(poset, all);
  if (l.bottom_ < 0 || l.top_ < 0)
    throw NotALattice("lattice lacks a bottom or top element");
  l.poset_ = std::move(poset);
  return l;
}

int FinLattice::meet_all(Subset s) const {
  int acc = top_;
  for (int i = 0; i < size(); ++i)
    if (subset_has(s, i)) acc = meet(acc, i);
  return acc;
}

int FinLattice::join_all(Subset s) const {
  int acc = bottom_;
  for (int i = 0; i < size(); ++i)
    if (subset_has(s, i)) acc = join(acc, i);
  return acc;
}

void FinLattice::check_element(int a) const {
  if (a < 0 || a >= size()) throw UnknownElement("element index out of range");
}

bool FinLattice::same_as(const FinLattice& other) const {
  if (size() != other.size()) return false;
  if (poset_.names() != other.poset_.names()) return false;
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      if (leq(a, b) != other.leq(a, b)) return false;
  return true;
}

FinLattice validate_lattice(std::vector<std::string> names,
                            const std::vector<std::pair<int, int>>& pairs) {
  return FinLattice::from_poset(FinPoset::from_pairs(std::move(names), pairs));
}

FinLattice validate_lattice(
    std::vector<std::string> names,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::pair<int, int>> ipairs;
  ipairs.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    auto find = [&](const std::string& s) {
      auto it = std::find(names.begin(), names.end(), s);
      if (it == names.end()) throw NotAPoset("order pair references unknown element: " + s);
      return static_cast<int>(it - names.begin());
    };
    ipairs.emplace_back(find(a), find(b));
  }
  return validate_lattice(std::move(names), ipairs);
}

LatPtr chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    if (i + 1 < n) pairs.emplace_back(i, i + 1);
  }
  return std::make_shared<const FinLattice>(validate_lattice(std::move(names), pairs));
}

MonotoneMap::MonotoneMap(LatPtr src, LatPtr tgt, std::vector<int> table)
    : src_(std::move(src)), tgt_(std::move(tgt)), table_(std::move(table)) {
  if (static_cast<int>(table_.size()) != src_->size())
    throw ShapeMismatch("map table size does not match source lattice");
  for (int v : table_) tgt_->check_element(v);
  for (int x = 0; x < src_->size(); ++x)
    for (int y = 0; y < src_->size(); ++y)
      if (src_->leq(x, y) && !tgt_->leq(table_[x], table_[y]))
        throw ShapeMismatch("map is not monotone at " + src_->name(x) + " <= " +
                            src_->name(y));
}

MonotoneMap MonotoneMap::identity(LatPtr l) {
  std::vector<int> t(l->size());
  for (int i = 0; i < l->size(); ++i) t[i] = i;
  return MonotoneMap(l, l, std::move(t));
}

MonotoneMap MonotoneMap::compose_after(const MonotoneMap& inner) const {
  if (!inner.tgt_->same_as(*src_))
    throw ShapeMismatch("composition shapes do not line up");
  std::vector<int> t(inner.src_->size());
  for (int i = 0; i < inner.src_->size(); ++i) t[i] = table_[inner.table_[i]];
  return MonotoneMap(inner.src_, tgt_, std::move(t));
}

std::optional<MonotoneMap> left_adjoint(const MonotoneMap& f) {
  const FinLattice& l = *f.src();
  const FinLattice& m = *f.tgt();
  std::vector<int> g(m.size());
  for (int b = 0; b < m.size(); ++b) {
    int acc = l.top();
    for (int x = 0; x < l.size(); ++x)
      if (m.leq(b, f(x))) acc = l.meet(acc, x);
    g[b] = acc;
  }
  // g is a candidate; the adjunction biconditional is the real test.
  for (int b = 0; b < m.size(); ++b)
    for (int x = 0; x < l.size(); ++x)
      if (m.leq(b, f(x)) != l.leq(g[b], x)) return std::nullopt;
  return MonotoneMap(f.tgt(), f.src(), std::move(g));
}

std::optional<MonotoneMap> right_adjoint(const MonotoneMap& g) {
  const FinLattice& m = *g.src();
  const FinLattice& l = *g.tgt();
  std::vector<int> f(l.size());
  for (int a = 0; a < l.size(); ++a) {
    int acc = m.bottom();
    for (int b = 0; b < m.size(); ++b)
      if (l.leq(g(b), a)) acc = m.join(acc, b);
    f[a] = acc;
  }
  for (int b = 0; b < m.size(); ++b)
    for (int a = 0; a < l.size(); ++a)
      if (m.leq(b, f[a]) != l.leq(g(b), a)) return std::nullopt;
  return MonotoneMap(g.tgt(), g.src(), std::move(f));
}

bool check_adjunction(const MonotoneMap& g, const MonotoneMap& f) {
  if (!g.src()->same_as(*f.tgt()) || !g.tgt()->same_as(*f.src()))
    throw ShapeMismatch("adjunction candidates do not connect the same lattices");
  const FinLattice& l = *f.src();
  const FinLattice& m = *f.tgt();
  for (int b = 0; b < m.size(); ++b)
    for (int x = 0; x < l.size(); ++x)
      if (m.leq(b, f(x)) != l.leq(g(b), x)) return false;
  return true;
}

bool preserves_all_meets(const MonotoneMap& f, const Guards& g) {
  const FinLattice& l = *f.src();
  g.require_subsets(l.size(), "preserves_all_meets");
  const Subset full = l.full_set();
  for (Subset s = 0;; ++s) {
    int lhs = f(l.meet_all(s));
    Subset img = 0;
    for (int i = 0; i < l.size(); ++i)
      if (subset_has(s, i)) img |= subset_of(f(i));
    if (lhs != f.tgt()->meet_all(img)) return false;
    if (s == full) break;
  }
  return true;
}

bool preserves_all_joins(const MonotoneMap& f, const Guards& g) {
  const FinLattice& l = *f.src();
  g.require_subsets(l.size(), "preserves_all_joins");
  const Subset full = l.full_set();
  for (Subset s = 0;; ++s) {
    int lhs = f(l.join_all(s));
    Subset img = 0;
    for (int i = 0; i < l.size(); ++i)
      if (subset_has(s, i)) img |= subset_of(f(i));
    if (lhs != f.tgt()->join_all(img)) return false;
    if (s == full) break;
  }
  return true;
}

}  // namespace finloc
