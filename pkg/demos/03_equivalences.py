"""Gauge freedom: how equivalences act on deformations.

An equivalence is a pair of formal series (Phi_t, Psi_t) starting at the
identity.  Pulling a deformation back along one changes the infinitesimal by
an exact coboundary only -- so the class in degree-2 cohomology is the real
invariant.  This script shows the shift explicitly, then asks whether two
featured deformations could be equivalent (they cannot).

Run as: python3 demos/03_equivalences.py
"""

import random
from fractions import Fraction

from cpair import catalog
from cpair.cochains import Cochain, TotalCochain, total_delta
from cpair.deformations import (Equivalence, apply_equivalence,
                                equivalent_infinitesimals_differ_by_coboundary,
                                infinitesimal, validate_deformation)

entry = catalog.get("heisenberg")
pair = entry.pair
d = entry.featured_deformations["phi2"]

rng = random.Random(2024)


def small_cochain(p, q):
    dA, dL = pair.A.dim, pair.L.dim
    vdim = dA if p else dL
    c = Cochain.zero(p, q, pair)
    coeffs = c.coeffs.copy()
    for _ in range(4):
        idx = tuple(rng.randrange(s) for s in coeffs.shape)
        coeffs[idx] = Fraction(rng.randint(-3, 3))
    return Cochain(p, q, coeffs)


e = Equivalence.from_terms(pair,
                           phis=[small_cochain(1, 0)],
                           psis=[small_cochain(0, 1)])
moved = apply_equivalence(d, e)
assert validate_deformation(moved).ok

shift = infinitesimal(moved) - infinitesimal(d)
expected = total_delta(TotalCochain(1, (e.phis[0], e.psis[0])), pair)
print("infinitesimal shift equals delta of the equivalence's first "
      "coefficients:", shift == expected)
assert shift == expected

witness = equivalent_infinitesimals_differ_by_coboundary(moved, d)
print("transformed deformation is recognized as equivalent to the "
      "original:", witness is not None)
assert witness is not None

other = entry.featured_deformations["phi1"]
witness = equivalent_infinitesimals_differ_by_coboundary(d, other)
print("phi2 and phi1 deformations equivalent:", witness is not None)
assert witness is None

# the inverse series really is the inverse, order by order
inv = e.inverse(order=3)
back = apply_equivalence(moved, inv)
print("pulling back along the inverse recovers every coefficient:",
      all(back.coefficient(n) == d.coefficient(n)
          for n in range(d.order + 1)))
