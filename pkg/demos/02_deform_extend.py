"""Deform a Courant pair order by order.

Starts from a featured degree-2 class, checks the deformation equations,
assembles the obstruction cochain, and extends through order 4.  Then finds
a direction on another pair where the obstruction class does NOT vanish and
the extension honestly stops.

Run as: python3 demos/02_deform_extend.py
"""

from fractions import Fraction

from cpair import catalog
from cpair.cochains import Cochain, gerstenhaber, total_delta
from cpair.cohomology import total_complex
from cpair.deformations import (Deformation, extend, infinitesimal,
                                obstruction, validate_deformation)


def show(d):
    print(f"  order {d.order}:", end=" ")
    rep = validate_deformation(d)
    print("equations hold" if rep.ok else f"INVALID ({rep.failures[0]})")
    assert rep.ok


def main():
    entry = catalog.get("heisenberg")
    d = entry.featured_deformations["phi1"]
    pair = d.pair
    print("extending the first featured bracket deformation:")
    show(d)

    inf = infinitesimal(d)
    tc = total_complex(pair)
    print(f"  infinitesimal is a 2-cocycle: {tc.is_cocycle(inf)}; "
          f"a coboundary: {tc.is_coboundary(inf) is not None}")

    while d.order < 4:
        theta = obstruction(d)
        total = theta.total()
        assert total_delta(total, pair).is_zero()
        # the algebra component is the usual bracket square sum
        n = d.order + 1
        rhs = Cochain.zero(3, 0, pair)
        for i in range(1, n):
            rhs = rhs + gerstenhaber(d.alphas[i], d.alphas[n - i], pair)
        assert theta.theta_A == Fraction(1, 2) * rhs
        print(f"  obstruction into order {n}: "
              f"{'zero' if theta.is_zero() else 'nonzero but exact'}")
        d = extend(d)
        assert d is not None
        show(d)

    print()
    print("an obstructed direction on the hemisemidirect pair:")
    hemi = catalog.get("hemisemidirect_demo").pair
    tc = total_complex(hemi)
    for rep in tc.representatives(2):
        cand = Deformation.from_terms(
            hemi, {1: (rep.component(2), rep.component(1), rep.component(0))})
        if extend(cand) is None:
            theta = obstruction(cand)
            print(f"  found one: obstruction cocycle nonzero = "
                  f"{not theta.is_zero()}, exact = "
                  f"{tc.is_coboundary(theta.total()) is not None}")
            break
    else:
        raise SystemExit("expected at least one obstructed class")


if __name__ == "__main__":
    main()
