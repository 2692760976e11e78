"""Base-change report for a functor between finite categories.

For F: C -> D, the comma category F/D projects to D, and that
projection's nerve is certified as a cocartesian fibration.  The
hypothesis under test: transporting fiber homology forward along every
edge of the nerve of D (degenerate edges included) is an isomorphism.
When it holds, the report verifies the downstream conclusions on the
finite instance:

  * the fiber over each vertex d agrees in homology with the nerve of
    the slice F/d, computed independently from the category;
  * the fibers of the other projection (to C) are homology-contractible
    (they have initial objects);
  * fiber homology is constant on each connected component of the base;
  * the projection to C induces a homology isomorphism, witnessed by an
    explicit cylinder homotopy contracting the comma category onto C;
  * Euler characteristics multiply when the base is connected.

When the hypothesis fails, the report names the least failing edge and
its transport, and checks nothing further.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cat import (
    Functor,
    NatTrans,
    Nerve,
    comma_category,
    identity_functor,
    nat_trans_homotopy,
    nerve,
    nerve_functor,
    slice_category,
)
from .homology import (
    HomologyProfile,
    TruncationError,
    euler_characteristic,
    homology,
    induced_homology,
    pi0,
)
from .lifting import FibrationClassReport, certify_fibration_class
from .products import restrict_over_simplex
from .sset import SMap, SimplexRef
from .transport import TransportResult, transport_homology


def _contractible(profile: HomologyProfile) -> bool:
    groups = [g.invariants() for g in profile.groups]
    return bool(groups) and groups[0] == (1, ()) and all(
        g == (0, ()) for g in groups[1:]
    )


@dataclass
class TheoremBReport:
    functor: Functor
    fibration: FibrationClassReport
    transports: list[tuple[SimplexRef, TransportResult]]
    hypothesis_holds: bool
    failing_edge: SimplexRef | None
    vertex_fibers: dict[str, HomologyProfile]
    slice_agreement: dict[str, bool]
    coslice_contractible: dict[str, bool]
    component_constancy: dict[str, bool]
    projection_iso: bool | None
    homotopy_ends_match: bool | None
    chi: dict | None
    status: str

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "fibration": self.fibration.to_json(),
            "hypothesis_holds": self.hypothesis_holds,
            "failing_edge": None
            if self.failing_edge is None
            else self.failing_edge.to_json(),
            "transports": [
                {"edge": g.to_json(), "iso": t.is_iso if t.leg_invertible else False}
                for g, t in self.transports
            ],
            "vertex_fibers": {
                d: prof.to_json() for d, prof in self.vertex_fibers.items()
            },
            "slice_agreement": dict(self.slice_agreement),
            "coslice_contractible": dict(self.coslice_contractible),
            "component_constancy": dict(self.component_constancy),
            "projection_iso": self.projection_iso,
            "homotopy_ends_match": self.homotopy_ends_match,
            "chi": self.chi,
        }


def _comma_unit(f: Functor, comma, to_c) -> NatTrans:
    """The transformation contracting the comma category onto C.

    i: C -> F/D sends c to (c, id at F(c)); the component at (c, g) is
    (id_c, g), a morphism from i(P(c, g)) to (c, g)."""
    c_cat, d_cat = f.source, f.target

    def unit_obj(c: str) -> str:
        return f"({c},{d_cat.identity_of(f.object_map[c])})"

    def unit_mor(u: str) -> str:
        a, b = c_cat.morphisms[u]
        ga = d_cat.identity_of(f.object_map[a])
        gb = d_cat.identity_of(f.object_map[b])
        return f"({u},{f.morphism_map[u]}):{ga}>{gb}"

    include = Functor(
        c_cat,
        comma,
        {c: unit_obj(c) for c in c_cat.objects},
        {u: unit_mor(u) for u in c_cat.morphisms},
    )
    retract = include.compose_with(to_c)
    components = {}
    for o in comma.objects:
        c, g = comma.comma_objects[o]
        components[o] = f"({c_cat.identity_of(c)},{g}):{d_cat.identity_of(f.object_map[c])}>{g}"
    return NatTrans(retract, identity_functor(comma), components)


def theorem_b_report(f: Functor, cap: int | None = None) -> TheoremBReport:
    comma, to_c, to_d = comma_category(f)
    q, n_comma, n_d = nerve_functor(to_d, cap)
    fibration = certify_fibration_class(q)

    transports: list[tuple[SimplexRef, TransportResult]] = []
    failing: SimplexRef | None = None
    profiles: dict = {}
    if fibration.inner.certified:
        for g in n_d.sset.refs(1):
            t = transport_homology(
                q, g, certificate=fibration.cocartesian, profiles=profiles
            )
            transports.append((g, t))
            if failing is None and not t.is_iso:
                failing = g
    else:
        failing = None
    hypothesis = fibration.inner.certified and failing is None

    vertex_fibers: dict[str, HomologyProfile] = {}
    for d in sorted(f.target.objects):
        fib = restrict_over_simplex(q, SimplexRef(0, (), d))
        vertex_fibers[d] = homology(fib.sset)

    slice_agreement: dict[str, bool] = {}
    coslice_contractible: dict[str, bool] = {}
    component_constancy: dict[str, bool] = {}
    projection_iso = None
    ends_match = None
    chi = None
    if hypothesis:
        for d in sorted(f.target.objects):
            sl, _ = slice_category(f, d)
            slice_prof = homology(nerve(sl, cap).sset)
            slice_agreement[d] = vertex_fibers[d].same_invariants(slice_prof)
        pmap, _, n_c = nerve_functor(to_c, cap)
        for c in sorted(f.source.objects):
            fib = restrict_over_simplex(pmap, SimplexRef(0, (), c))
            coslice_contractible[c] = _contractible(homology(fib.sset))
        n_components, labels = pi0(n_d.sset)
        by_label: dict[str, list[str]] = {}
        for d, lab in labels.items():
            by_label.setdefault(lab, []).append(d)
        for lab, ds in sorted(by_label.items()):
            first = vertex_fibers[ds[0]]
            component_constancy[lab] = all(
                vertex_fibers[d].same_invariants(first) for d in ds
            )
        projection_iso = induced_homology(pmap).is_iso
        unit = _comma_unit(f, comma, to_c)
        h, prod, src_nerve, tgt_nerve = nat_trans_homotopy(unit, cap)
        retract_map, _, _ = nerve_functor(unit.source, cap)
        ends_match = True
        for (n, cell_id), (lref, rref) in prod.components.items():
            levels = {
                prod.right_object.vertex_of(rref, t).cell for t in range(n + 1)
            }
            if levels == {"0"}:
                expect = retract_map.apply(lref)
            elif levels == {"1"}:
                expect = lref
            else:
                continue
            if h.value(n, cell_id) != expect:
                ends_match = False
                break
        if n_components == 1:
            try:
                chi_base = euler_characteristic(n_d.sset)
                chi_total = euler_characteristic(n_comma.sset)
                fib = restrict_over_simplex(
                    q, SimplexRef(0, (), sorted(f.target.objects)[0])
                )
                chi_fiber = euler_characteristic(fib.sset)
                chi = {
                    "total": chi_total,
                    "fiber": chi_fiber,
                    "base": chi_base,
                    "multiplicative": chi_total == chi_fiber * chi_base,
                }
            except TruncationError:
                chi = None

    if not fibration.inner.certified:
        status = fibration.inner.status
    elif not hypothesis:
        status = "hypothesis-failed"
    else:
        checks = (
            all(slice_agreement.values())
            and all(coslice_contractible.values())
            and all(component_constancy.values())
            and bool(projection_iso)
            and bool(ends_match)
            and (chi is None or chi["multiplicative"])
        )
        status = "verified" if checks else "conclusion-failed"
    return TheoremBReport(
        f,
        fibration,
        transports,
        hypothesis,
        failing,
        vertex_fibers,
        slice_agreement,
        coslice_contractible,
        component_constancy,
        projection_iso,
        ends_match,
        chi,
        status,
    )
