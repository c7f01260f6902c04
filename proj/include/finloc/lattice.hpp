#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finloc/guards.hpp"

namespace finloc {

// Subsets of lattice elements are bitmasks; element i is bit (1 << i).
using Subset = std::uint64_t;

inline bool subset_has(Subset s, int i) { return (s >> i) & 1u; }
inline Subset subset_of(int i) { return Subset{1} << i; }
inline int subset_size(Subset s) { return __builtin_popcountll(s); }

// Finite poset over named elements with a dense order matrix.
class FinPoset {
 public:
  FinPoset() = default;

  // Builds the reflexive-transitive closure of `pairs` (indices into
  // `names`) and checks antisymmetry. Throws NotAPoset on failure.
  static FinPoset from_pairs(std::vector<std::string> names,
                             const std::vector<std::pair<int, int>>& pairs);

  int size() const { return static_cast<int>(names_.size()); }
  bool leq(int a, int b) const { return leq_[a * size() + b] != 0; }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  // Throws UnknownElement.
  int index_of(const std::string& name) const;
  std::optional<int> try_index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;
};

// Finite complete lattice: poset plus meet/join tables and 0, 1.
class FinLattice {
 public:
  FinLattice() = default;

  // Computes meet/join tables from the order; throws NotALattice if some
  // pair lacks a greatest lower or least upper bound, naming the pair.
  static FinLattice from_poset(FinPoset poset);

  const FinPoset& poset() const { return poset_; }
  int size() const { return poset_.size(); }
  bool leq(int a, int b) const { return poset_.leq(a, b); }
  const std::string& name(int i) const { return poset_.name(i); }
  int index_of(const std::string& n) const { return poset_.index_of(n); }

  int meet(int a, int b) const { return meet_[a * size() + b]; }
  int join(int a, int b) const { return join_[a * size() + b]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  // Folds over the binary tables; meet of the empty set is 1, join is 0.
  int meet_all(Subset s) const;
  int join_all(Subset s) const;

  Subset full_set() const { return (size() == 64) ? ~Subset{0} : (subset_of(size()) - 1); }

  void check_element(int a) const;

  bool same_as(const FinLattice& other) const;

 private:
  FinPoset poset_;
  std::vector<int> meet_, join_;
  int bottom_ = 0, top_ = 0;
};

using LatPtr = std::shared_ptr<const FinLattice>;

// Validates raw order data (any relation whose closure is a partial
// order) into a lattice. Errors: NotAPoset, NotALattice.
FinLattice validate_lattice(std::vector<std::string> names,
                            const std::vector<std::pair<int, int>>& pairs);
FinLattice validate_lattice(std::vector<std::string> names,
                            const std::vector<std::pair<std::string, std::string>>& pairs);

LatPtr chain(int n);  // 0 < 1 < ... < n-1, named "0","1",..

// Monotone map between lattices; monotonicity checked at construction.
class MonotoneMap {
 public:
  MonotoneMap(LatPtr src, LatPtr tgt, std::vector<int> table);

  const LatPtr& src() const { return src_; }
  const LatPtr& tgt() const { return tgt_; }
  int operator()(int x) const { return table_[x]; }
  const std::vector<int>& table() const { return table_; }

  static MonotoneMap identity(LatPtr l);
  MonotoneMap compose_after(const MonotoneMap& inner) const;  // this ∘ inner

 private:
  LatPtr src_, tgt_;
  std::vector<int> table_;
};

// g(b) = meet{x : b <= f(x)} when g -| f holds; absent when f has no
// left adjoint (equivalently f fails to preserve all meets).
std::optional<MonotoneMap> left_adjoint(const MonotoneMap& f);

// f(a) = join{b : g(b) <= a} when g -| f holds; absent otherwise.
std::optional<MonotoneMap> right_adjoint(const MonotoneMap& g);

// True iff b <= f(x) <=> g(b) <= x for all b, x. Throws ShapeMismatch
// when the lattices do not line up (g: M->L, f: L->M).
bool check_adjunction(const MonotoneMap& g, const MonotoneMap& f);

// True iff f(meet_all A) = meet_all f(A) for every subset A (guarded).
bool preserves_all_meets(const MonotoneMap& f, const Guards& g = {});
bool preserves_all_joins(const MonotoneMap& f, const Guards& g = {});

}  // namespace finloc
