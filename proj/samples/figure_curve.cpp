// Spectrum, phi_f and dominating intervals of the curve with Puiseux pairs
// (3,4), (2,3).

#include "spectra/spectra.hpp"

#include <iostream>

int main() {
  using namespace spectra;
  const CurveInvariants inv = derive_invariants(validate_pairs({{3, 4}, {2, 3}}));
  const Spectrum spec = enumerate_spectrum_lt1(inv);

  std::cout << "mu = " << inv.mu.get_str() << ", lct = " << inv.lct.str() << ", largest exponent below 1 = "
            << inv.max_exp_lt1.str() << "\n";
  std::cout << spec.values_lt1().size() << " distinct exponents below 1\n";

  ClosedForm cf(inv);
  for (const Rational& r : uniform_grid(8)) {
    const Rational phi = cf.phi(r);
    std::cout << "phi(" << r.str() << ") = " << phi.str() << " ~ " << to_decimal(phi, 6) << "\n";
  }

  const DominatingReport rep = dominating_intervals(inv, 32);
  const RootInterval& iv = rep.interval1;
  std::cout << "p_1 > 0 exactly on (a, b) with a in [" << to_decimal(iv.outer.lo, 6) << ", " << to_decimal(iv.inner.lo, 6)
            << "] and b in [" << to_decimal(iv.inner.hi, 6) << ", " << to_decimal(iv.outer.hi, 6) << "]\n";
}
