"""Whole-map verification reports.

The realization comparison walks every nondegenerate simplex of the
base and asks whether the fibers over its first and last vertices
include into the fiber over the whole simplex by homology
isomorphisms.  Over a point this is vacuous; a failure names the least
simplex and which vertex leg broke.  This is the finite, computable
proxy for the geometric statement that realizing the map gives a
fibration-like projection over every cell.

The base-change check pulls a certified map back along another map and
confirms what should be stable: the lifting certificates survive base
change, pulling back to a vertex matches the fiber taken directly,
fiber homology is constant on connected components of the base, and
Euler characteristics multiply over a connected base.
"""

from __future__ import annotations

from dataclasses import dataclass

from .homology import (
    TruncationError,
    euler_characteristic,
    homology,
    induced_homology,
    pi0,
)
from .lifting import FibrationClassReport, certify_fibration_class
from .products import Pullback, pullback_induced, restrict_over_simplex, vertex_inclusion_map
from .sset import SMap, SimplexRef, SimplicialError, identity_map


@dataclass
class SimplexComparison:
    simplex: SimplexRef
    first_iso: bool
    last_iso: bool

    def to_json(self) -> dict:
        return {
            "simplex": self.simplex.to_json(),
            "first_vertex_iso": self.first_iso,
            "last_vertex_iso": self.last_iso,
        }


@dataclass
class RealizationReport:
    cap: int | None
    comparisons: list[SimplexComparison]
    status: str
    witness: tuple[SimplexRef, str] | None

    def by_degree(self) -> dict[int, list[SimplexComparison]]:
        out: dict[int, list[SimplexComparison]] = {}
        for c in self.comparisons:
            out.setdefault(c.simplex.degree, []).append(c)
        return out

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "cap": self.cap,
            "comparisons": [c.to_json() for c in self.comparisons],
            "witness": None
            if self.witness is None
            else {"simplex": self.witness[0].to_json(), "side": self.witness[1]},
        }


def realization_fibration_certificate(p: SMap, cap: int | None = None) -> RealizationReport:
    """Compare vertex fibers with whole-simplex fibers over every base cell."""
    x, y = p.source, p.target
    idx = identity_map(x)
    comparisons = []
    witness = None
    for n in range(1, y.dimension + 1):
        for cell in y.n_cells(n):
            sigma = SimplexRef(n, (), cell)
            fib = restrict_over_simplex(p, sigma)
            prof = homology(fib.sset)
            sides = {}
            for side, vertex_pos in (("first", 0), ("last", n)):
                vfib = restrict_over_simplex(p, y.act(sigma, (vertex_pos,)))
                leg = pullback_induced(
                    vfib, fib, vertex_inclusion_map(n, vertex_pos), idx
                )
                sides[side] = induced_homology(
                    leg, homology(vfib.sset), prof
                ).is_iso
            comparisons.append(SimplexComparison(sigma, sides["first"], sides["last"]))
            if witness is None:
                if not sides["first"]:
                    witness = (sigma, "first")
                elif not sides["last"]:
                    witness = (sigma, "last")
    status = "certified" if witness is None else "refuted"
    return RealizationReport(cap, comparisons, status, witness)


@dataclass
class BaseChangeReport:
    base_class: FibrationClassReport
    pulled_class: FibrationClassReport
    inherited: dict[str, bool]
    vertex_case: bool | None
    component_constancy: dict[str, bool]
    chi: dict | None
    status: str
    witness: str | None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness,
            "base_class": self.base_class.to_json(),
            "pulled_class": self.pulled_class.to_json(),
            "inherited": dict(self.inherited),
            "vertex_case": self.vertex_case,
            "component_constancy": dict(self.component_constancy),
            "chi": self.chi,
        }


def ltg_check(f: SMap, p: SMap, cap: int | None = None) -> BaseChangeReport:
    """Pull p back along f and verify base-change coherence.

    f: Y' -> Y and p: X -> Y.  Certifies p, forms the pullback
    X' = Y' x_Y X with its projection to Y', and checks: certified
    lifting classes are inherited; when Y' is a single vertex the
    pullback agrees with the fiber over its image; fiber homology is
    constant on components of Y; and over a connected Y the Euler
    characteristic of X factors as fiber times base.
    """
    if f.target != p.target:
        raise SimplicialError("base change wants a cospan with a common target")
    y = p.target
    base_class = certify_fibration_class(p, cap)
    pulled = Pullback(f, p)
    p_prime = pulled.to_left
    pulled_class = certify_fibration_class(p_prime, cap)
    inherited = {}
    for kind in ("inner", "cartesian", "cocartesian"):
        before = getattr(base_class, kind)
        after = getattr(pulled_class, kind)
        inherited[kind] = (not before.certified) or after.certified

    vertex_case = None
    if f.source.counts() == (1,):
        v = f.source.n_cells(0)[0]
        image = f.value(0, v)
        fib = restrict_over_simplex(p, image)
        vertex_case = homology(pulled.sset).same_invariants(homology(fib.sset))

    n_components, labels = pi0(y)
    fibers = {}
    for v in y.n_cells(0):
        fibers[v] = homology(restrict_over_simplex(p, SimplexRef(0, (), v)).sset)
    component_constancy: dict[str, bool] = {}
    by_label: dict[str, list[str]] = {}
    for v, lab in labels.items():
        by_label.setdefault(lab, []).append(v)
    for lab, vs in sorted(by_label.items()):
        first = fibers[vs[0]]
        component_constancy[lab] = all(fibers[v].same_invariants(first) for v in vs)

    chi = None
    if n_components == 1 and y.cell_count(0) > 0:
        try:
            chi_total = euler_characteristic(p.source)
            chi_base = euler_characteristic(y)
            chi_fiber = euler_characteristic(
                restrict_over_simplex(p, SimplexRef(0, (), sorted(y.n_cells(0))[0])).sset
            )
            chi = {
                "total": chi_total,
                "fiber": chi_fiber,
                "base": chi_base,
                "multiplicative": chi_total == chi_fiber * chi_base,
            }
        except TruncationError:
            chi = None

    witness = None
    if not all(inherited.values()):
        bad = sorted(k for k, v in inherited.items() if not v)
        witness = f"certified class not inherited by the pullback: {', '.join(bad)}"
    elif vertex_case is False:
        witness = "pullback over a vertex disagrees with the fiber over its image"
    elif not all(component_constancy.values()):
        bad = sorted(k for k, v in component_constancy.items() if not v)
        witness = f"fiber homology varies within component(s): {', '.join(bad)}"
    elif chi is not None and not chi["multiplicative"]:
        witness = "Euler characteristic is not multiplicative"
    if witness is not None:
        status = "refuted"
    elif any(
        getattr(base_class, k).status == "inconclusive"
        for k in ("inner", "cartesian", "cocartesian")
    ):
        status = "inconclusive"
    else:
        status = "certified"
    return BaseChangeReport(
        base_class,
        pulled_class,
        inherited,
        vertex_case,
        component_constancy,
        chi,
        status,
        witness,
    )
