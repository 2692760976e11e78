"""Transport of fiber homology along base edges, checked against sheet chases."""

import pytest

from sslift.corpus import collapse_tower, double_cover
from sslift.cat import nerve_functor
from sslift.homology import IntMatrix
from sslift.sset import SimplexRef, SimplicialError
from sslift.transport import transport_homology


def chase(cover, obj, base_arrow, backward=False):
    """Follow the unique lift of a base arrow through a covering functor."""
    cat = cover.source
    if backward:
        hits = [
            f
            for f in cat.arrows_to(obj)
            if not cat.is_identity(f) and cover.on_morphism(f) == base_arrow
        ]
        assert len(hits) == 1
        return cat.src(hits[0])
    hits = [
        f
        for f in cat.arrows_from(obj)
        if not cat.is_identity(f) and cover.on_morphism(f) == base_arrow
    ]
    assert len(hits) == 1
    return cat.tgt(hits[0])


def fiber_objects(fib):
    """Degree-0 fiber cells in chain order, named by their image objects."""
    out = []
    for c in fib.sset.n_cells(0):
        out.append(fib.to_total.apply(SimplexRef(0, (), c)).cell)
    return out


def assert_matrix_matches_chase(result, profiles, cover, base_arrow):
    """The H_0 matrix must agree with the categorical sheet chase."""
    fib_src, prof_src = profiles[_vertex(result, cover, start=True)]
    fib_tgt, prof_tgt = profiles[_vertex(result, cover, start=False)]
    src_cells = fiber_objects(fib_src)
    tgt_cells = fiber_objects(fib_tgt)
    t = result.matrix(0)
    for j, obj in enumerate(src_cells):
        cyc = [0] * len(src_cells)
        cyc[j] = 1
        coords = prof_src.group(0).coordinates(cyc)
        moved = chase(cover, obj, base_arrow, backward=result.backward)
        want = [0] * len(tgt_cells)
        want[tgt_cells.index(moved)] = 1
        assert t.mul_vec(coords) == prof_tgt.group(0).coordinates(want)


def _vertex(result, cover, start):
    # forward runs source -> target of the edge, backward the other way
    pick = 1 if start else 0
    if result.backward:
        pick = 1 - pick
    base = nerve_functor(cover)[0].target
    return base.face(result.edge, pick)


@pytest.fixture(scope="module")
def cover_setup():
    cover = double_cover()
    p = nerve_functor(cover)[0]
    return cover, p


def test_cover_edges_transport_by_permutation(cover_setup):
    cover, p = cover_setup
    profiles = {}
    for name in ("a<x", "a<y", "b<x", "b<y"):
        edge = SimplexRef(1, (), name)
        res = transport_homology(p, edge, profiles=profiles, certify=False)
        assert res.leg_invertible
        assert res.is_iso
        rows = res.matrix(0).to_lists()
        assert sorted(map(tuple, rows)) == [(0, 1), (1, 0)]
        assert_matrix_matches_chase(res, profiles, cover, name)
    direct = transport_homology(
        p, SimplexRef(1, (), "a<x"), profiles=profiles, certify=False
    )
    assert direct.matrix(0) == IntMatrix.identity(2)


def test_monodromy_around_the_square_swaps_sheets(cover_setup):
    cover, p = cover_setup
    profiles = {}

    def step(name, backward):
        res = transport_homology(
            p,
            SimplexRef(1, (), name),
            backward=backward,
            profiles=profiles,
            certify=False,
        )
        assert res.leg_invertible and res.is_iso
        return res.matrix(0)

    # a -> x <- b -> y <- a, a closed walk generating the base circle
    m = step("a<y", True) @ step("b<y", False) @ step("b<x", True) @ step("a<x", False)
    assert m.to_lists() == [[0, 1], [1, 0]]
    assert (m @ m) == IntMatrix.identity(2)
    # the categorical chase predicts the same exchange of sheets
    obj = "a0"
    for name, back in (("a<x", False), ("b<x", True), ("b<y", False), ("a<y", True)):
        obj = chase(cover, obj, name, backward=back)
    assert obj == "a1"


def test_degenerate_edge_transports_identically(cover_setup):
    _, p = cover_setup
    res = transport_homology(p, SimplexRef(1, (0,), "a"), certify=False)
    assert res.is_iso
    assert res.matrix(0) == IntMatrix.identity(2)


def test_backward_undoes_forward(cover_setup):
    _, p = cover_setup
    profiles = {}
    edge = SimplexRef(1, (), "b<y")
    fwd = transport_homology(p, edge, profiles=profiles, certify=False)
    bwd = transport_homology(p, edge, backward=True, profiles=profiles, certify=False)
    assert (bwd.matrix(0) @ fwd.matrix(0)) == IntMatrix.identity(2)
    assert (fwd.matrix(0) @ bwd.matrix(0)) == IntMatrix.identity(2)


def test_tower_transport_composes_but_collapses(tower_map):
    profiles = {}

    def along(name):
        return transport_homology(
            tower_map, SimplexRef(1, (), name), profiles=profiles, certify=False
        )

    t01, t12, t02 = along("0<1"), along("1<2"), along("0<2")
    assert t01.matrix(0).to_lists() == [[0, 1], [1, 0]]
    assert t01.is_iso
    # both sheets land on the single top point: invertible leg, no iso
    assert t12.leg_invertible and not t12.is_iso
    assert t12.matrix(0).to_lists() == [[1, 1]]
    assert (t12.matrix(0) @ t01.matrix(0)) == t02.matrix(0)


def test_certificate_status_is_advisory(tower_map):
    fwd = transport_homology(tower_map, SimplexRef(1, (), "0<1"))
    assert fwd.certificate_status == "certified"
    # cartesian lifting fails for the tower, yet the backward matrices
    # still exist because the relevant leg is invertible
    bwd = transport_homology(tower_map, SimplexRef(1, (), "0<1"), backward=True)
    assert bwd.certificate_status == "refuted"
    assert bwd.leg_invertible
    assert bwd.matrix(0).to_lists() == [[0, 1], [1, 0]]


def test_profile_cache_is_shared(cover_setup):
    _, p = cover_setup
    profiles = {}
    transport_homology(p, SimplexRef(1, (), "a<x"), profiles=profiles, certify=False)
    assert sorted(v.cell for v in profiles) == ["a", "x"]
    _, prof_a = profiles[SimplexRef(0, (), "a")]
    transport_homology(p, SimplexRef(1, (), "a<y"), profiles=profiles, certify=False)
    assert sorted(v.cell for v in profiles) == ["a", "x", "y"]
    assert profiles[SimplexRef(0, (), "a")][1] is prof_a


def test_transport_rejects_non_edges(cover_setup):
    _, p = cover_setup
    with pytest.raises(SimplicialError):
        transport_homology(p, SimplexRef(0, (), "a"), certify=False)
