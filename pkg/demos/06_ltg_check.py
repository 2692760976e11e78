#!/usr/bin/env python3
"""Realization comparison over every base simplex, then base change.

A map realizes to a fibration-like projection exactly when, over every
simplex of the base, both vertex fibers include into the simplex fiber
by homology isomorphisms.  The base-change check then pulls a
certified map back and confirms certificates and fiber invariants
survive.

The same checks run from the command line:
    sslift fibers fixtures/cylinder_proj.ssx
    sslift ltg-check --cospan fixtures/interval_vertex.ssx fixtures/cylinder_proj.ssx
"""

from sslift import (
    SimplexRef,
    boundary,
    constant_map,
    identity_map,
    ltg_check,
    realization_fibration_certificate,
    standard_simplex,
)
from sslift.corpus import cylinder_projection, interval_vertex

proj = cylinder_projection()
rep = realization_fibration_certificate(proj)
print(f"cylinder over the circle, projected to the interval: {rep.status}")
for comp in rep.comparisons:
    print(f"  over {comp.simplex}: first leg iso={comp.first_iso}, "
          f"last leg iso={comp.last_iso}")

collapse = constant_map(boundary(2), standard_simplex(1), SimplexRef(0, (), "0"))
rep = realization_fibration_certificate(collapse)
print(f"\nsphere collapsed to one end of the interval: {rep.status}")
print(f"  witness: simplex {rep.witness[0]}, {rep.witness[1]} vertex leg")

print("\nbase change of the cylinder projection along a vertex:")
rep = ltg_check(interval_vertex("1"), proj)
print(f"  status: {rep.status}")
print(f"  certificates inherited: {rep.inherited}")
print(f"  pullback over the vertex matches the fiber: {rep.vertex_case}")
print(f"  chi: {rep.chi}")

print("\nbase change of the collapse (not a fibration):")
rep = ltg_check(identity_map(standard_simplex(1)), collapse)
print(f"  status: {rep.status}")
print(f"  witness: {rep.witness}")
