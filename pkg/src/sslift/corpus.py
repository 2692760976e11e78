"""A small standing corpus of objects, maps, and functors.

These are the instances the test suite and the demos lean on: a
pseudo-circle poset and its connected double cover, a tower whose
element category is a discrete opfibration but not a fibration, a
one-loop model of the circle, and seeded random poset functors for
cross-checking the lifting certificates against direct categorical
brute force.
"""

from __future__ import annotations

import os
import random

from .cat import (
    FiniteCategory,
    Functor,
    chain_poset,
    nerve_functor,
    poset_category,
)
from .formats import save_path
from .products import Product
from .sset import SMap, SimplexRef, SimplicialSet, constant_map, standard_simplex


def circle() -> SimplicialSet:
    """One vertex, one loop."""
    pt = SimplexRef(0, (), "p")
    return SimplicialSet({0: [("p", [])], 1: [("e", [pt, pt])]})


def pseudo_circle() -> FiniteCategory:
    """The four-element poset a, b < x, y; its nerve is a circle."""
    return poset_category(
        ["a", "b", "x", "y"],
        [("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")],
    )


def double_cover() -> Functor:
    """Connected two-fold cover of the pseudo-circle.

    The eight-element poset is an eight-cycle zigzag; forgetting the
    sheet index projects it onto the four-cycle.  Fibers are two
    points and the loop swaps them.
    """
    pairs = [
        ("a0", "x0"), ("b0", "x0"), ("b0", "y0"), ("a1", "y0"),
        ("a1", "x1"), ("b1", "x1"), ("b1", "y1"), ("a0", "y1"),
    ]
    p8 = poset_category([f"{o}{i}" for i in "01" for o in "abxy"], pairs)
    c4 = pseudo_circle()
    objs = {o: o[:-1] for o in p8.objects}
    mors = {}
    for m, (s, t) in p8.morphisms.items():
        if p8.is_identity(m):
            mors[m] = c4.identity_of(objs[s])
        else:
            mors[m] = f"{objs[s]}<{objs[t]}"
    return Functor(p8, c4, objs, mors)


def terminal_category() -> FiniteCategory:
    return poset_category(["pt"], [])


def point_functor(c: FiniteCategory, obj: str) -> Functor:
    """The functor from the one-object category picking out obj."""
    t = terminal_category()
    return Functor(t, c, {"pt": obj}, {"id_pt": c.identity_of(obj)})


def collapse_tower() -> Functor:
    """Category of elements of a set tower over the chain [2].

    The tower has two-point sets over 0 and 1 and a point over 2; the
    first step swaps the two points and the second collapses them.
    The projection is a discrete opfibration but not a fibration: the
    collapse step has no cartesian lift.
    """
    pairs = [
        ("0.0", "1.1"), ("0.1", "1.0"),
        ("0.0", "2.0"), ("0.1", "2.0"), ("1.0", "2.0"), ("1.1", "2.0"),
    ]
    el = poset_category(["0.0", "0.1", "1.0", "1.1", "2.0"], pairs)
    base = chain_poset(2)
    objs = {o: o.split(".")[0] for o in el.objects}
    mors = {}
    for m, (s, t) in el.morphisms.items():
        if el.is_identity(m):
            mors[m] = base.identity_of(objs[s])
        elif objs[s] == objs[t]:
            mors[m] = base.identity_of(objs[s])
        else:
            mors[m] = f"{objs[s]}<{objs[t]}"
    return Functor(el, base, objs, mors)


# -- seeded random posets --------------------------------------------------


def random_poset(rng: random.Random, n: int, density: float = 0.4) -> FiniteCategory:
    """A random poset on n elements, relations closed transitively."""
    if not 0 <= n <= 8:
        raise ValueError("random posets are kept small, 0 <= n <= 8")
    objs = [f"p{i}" for i in range(n)]
    pairs = [
        (objs[i], objs[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    return poset_category(objs, pairs)


def random_poset_functor(rng: random.Random, c: FiniteCategory, d: FiniteCategory) -> Functor:
    """A random monotone map of posets, as a functor.

    Objects of c are assigned along a linear extension so each choice
    only has to respect already-placed predecessors; thin targets make
    morphism images forced.
    """
    order = sorted(c.objects, key=lambda o: (len(c.arrows_to(o)), o))
    assignment: dict[str, str] = {}
    for o in order:
        below = [assignment[a] for a in c.objects if a in assignment and c.hom(a, o)]
        candidates = [
            t for t in sorted(d.objects)
            if all(b == t or d.hom(b, t) for b in below)
        ]
        if not candidates:
            raise ValueError("no monotone extension; resample the posets")
        assignment[o] = rng.choice(candidates)
    mors = {}
    for m, (s, t) in c.morphisms.items():
        fs, ft = assignment[s], assignment[t]
        if fs == ft:
            mors[m] = d.identity_of(fs)
        else:
            (img,) = d.hom(fs, ft)
            mors[m] = img
    return Functor(c, d, assignment, mors)


# -- fixture files ----------------------------------------------------------


def cylinder_projection() -> SMap:
    """circle x interval -> interval."""
    return Product(circle(), standard_simplex(1)).to_right


def interval_vertex(v: str = "1") -> SMap:
    """The vertex v of the interval, as a map from the point."""
    return constant_map(standard_simplex(0), standard_simplex(1), SimplexRef(0, (), v))


def build_fixtures() -> dict[str, object]:
    """All committed fixture documents, keyed by file name."""
    from .sset import boundary

    cover = double_cover()
    cover_map, n_p8, n_c4 = nerve_functor(cover)
    tower = collapse_tower()
    tower_map, _, _ = nerve_functor(tower)
    edge_in = SMap(
        standard_simplex(1),
        n_c4.sset,
        {
            0: {"0": SimplexRef(0, (), "a"), "1": SimplexRef(0, (), "x")},
            1: {"0.1": SimplexRef(1, (), "a<x")},
        },
    )
    return {
        "circle.ssx": circle(),
        "cylinder_proj.ssx": cylinder_projection(),
        "interval_vertex.ssx": interval_vertex(),
        "boundary_collapse.ssx": constant_map(
            boundary(2), standard_simplex(1), SimplexRef(0, (), "0")
        ),
        "double_cover.ssx": cover_map,
        "edge_into_circle.ssx": edge_in,
        "collapse_tower.ssx": tower_map,
        "pseudo_circle.cat": pseudo_circle(),
        "cover_functor.cat": cover,
        "point_a.cat": point_functor(pseudo_circle(), "a"),
        "collapse_functor.cat": tower,
    }


def write_fixtures(dirpath: str) -> list[str]:
    os.makedirs(dirpath, exist_ok=True)
    names = []
    for name, obj in sorted(build_fixtures().items()):
        save_path(os.path.join(dirpath, name), obj)
        names.append(name)
    return names
