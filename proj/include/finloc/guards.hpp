#pragma once

#include <string>

#include "finloc/errors.hpp"

namespace finloc {

// Size limits for operations that enumerate subsets. `allow_override`
// corresponds to the CLI flag --guard-override.
struct Guards {
  int subset_max = 16;     // 2^n subset enumeration over lattice elements
  int sublocale_max = 16;  // sublocale enumeration over a frame
  int product_max = 64;    // |L| * |M| for the C-ideal construction
  int morphism_max = 24;   // cocone enumeration over a category
  bool allow_override = false;

  void require_subsets(int n, const std::string& where) const {
    if (!allow_override && n > subset_max)
      throw SizeGuardExceeded(where + ": " + std::to_string(n) +
                              " elements exceeds subset guard " +
                              std::to_string(subset_max));
  }
  void require_sublocales(int n, const std::string& where) const {
    if (!allow_override && n > sublocale_max)
      throw SizeGuardExceeded(where + ": " + std::to_string(n) +
                              " elements exceeds sublocale guard " +
                              std::to_string(sublocale_max));
  }
  void require_morphisms(int n, const std::string& where) const {
    if (!allow_override && n > morphism_max)
      throw SizeGuardExceeded(where + ": " + std::to_string(n) +
                              " morphisms exceed morphism guard " +
                              std::to_string(morphism_max));
  }
  void require_product(int nm, const std::string& where) const {
    if (!allow_override && nm > product_max)
      throw SizeGuardExceeded(where + ": " + std::to_string(nm) +
                              " product points exceed product guard " +
                              std::to_string(product_max));
  }
};

}  // namespace finloc
