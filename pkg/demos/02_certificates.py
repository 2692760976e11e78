#!/usr/bin/env python3
"""Brute-force lifting certificates for three maps.

A certificate enumerates every horn problem of the requested shape up
to a degree cap and either solves them all or exhibits the least
problem with no solution.  Nerve targets make the cap conclusive.
"""

from sslift import (
    SimplexRef,
    certify_fibration_class,
    constant_map,
    count_horn_lifts,
    is_cartesian_edge,
    nerve_functor,
    standard_simplex,
)
from sslift.corpus import circle, collapse_tower, double_cover

def show(label, rep):
    print(f"\n{label}")
    for cert in (rep.inner, rep.cartesian, rep.cocartesian):
        line = f"  {cert.kind:<12} {cert.status:<12} problems={cert.problems_checked}"
        if cert.conclusive:
            line += " (conclusive)"
        print(line)
        if cert.witness is not None and cert.status == "refuted":
            print(f"    witness: {cert.witness}")

cover = nerve_functor(double_cover())[0]
show("double cover of the 4-cycle nerve", certify_fibration_class(cover))

tower = nerve_functor(collapse_tower())[0]
rep = certify_fibration_class(tower)
show("collapse tower (two sheets merging into one)", rep)
# the witness names an edge of the base and a vertex over its target
# with no good lift; each candidate edge has its own refuting problem
bad_edge, bad_vertex = rep.cartesian.witness
ok, problem, checked = is_cartesian_edge(
    tower, SimplexRef(1, (), "0.0<2.0"), 3
)
print(f"    candidate lift 0.0<2.0: cartesian={ok}, "
      f"its problem admits {count_horn_lifts(tower, problem)} fillers")

# a loop over a point is not an inner fibration: the composite of the
# loop with itself has nowhere to live
loop = constant_map(circle(), standard_simplex(0), SimplexRef(0, (), "0"))
show("circle collapsed to a point", certify_fibration_class(loop))
