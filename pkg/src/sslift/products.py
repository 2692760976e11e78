"""Products, level-wise pullbacks, and fiber restrictions.

Nondegenerate cells of a product are pairs of degeneracy words applied to
nondegenerate cells of the factors, with disjoint words; a pullback keeps
the pairs on which the two legs of the cospan agree.  Faces are computed
componentwise and renormalized jointly, so the result is again presented
by nondegenerate cells only.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable

from . import words as W
from .sset import (
    SMap,
    SimplexRef,
    SimplicialError,
    SimplicialSet,
    classifying_map,
    standard_simplex,
)


def joint_normal_form(
    left: SimplexRef, right: SimplexRef
) -> tuple[tuple[int, ...], SimplexRef, SimplexRef]:
    """Split a pair of equal-degree refs as a common word on a jointly
    nondegenerate pair."""
    if left.degree != right.degree:
        raise SimplicialError("component degrees differ")
    n = left.degree
    common = tuple(sorted(set(left.word) & set(right.word), reverse=True))
    if not common:
        return (), left, right
    sig = W.word_to_map(common, n)
    m = n - len(common)
    section: list[int] = [-1] * (m + 1)
    for i, v in enumerate(sig):
        if section[v] < 0:
            section[v] = i
    sec = tuple(section)
    psi_l = W.word_to_map(left.word, n)
    psi_r = W.word_to_map(right.word, n)
    new_l = SimplexRef(m, W.map_to_word(W.compose(psi_l, sec)), left.cell)
    new_r = SimplexRef(m, W.map_to_word(W.compose(psi_r, sec)), right.cell)
    if set(new_l.word) & set(new_r.word):
        raise SimplicialError("joint normalization failed to separate words")
    return common, new_l, new_r


def _pair_id(left: SimplexRef, right: SimplexRef) -> str:
    return (
        f"{W.word_string(left.word)}|{left.cell}*{W.word_string(right.word)}|{right.cell}"
    )


class PairedSSet:
    """A simplicial set whose cells are compatible pairs from two factors."""

    def __init__(
        self,
        left_object: SimplicialSet,
        right_object: SimplicialSet,
        compatible: Callable[[SimplexRef, SimplexRef], bool],
    ):
        if not (left_object.simplicial and right_object.simplicial):
            raise SimplicialError("pairs need simplicial factors")
        self.left_object = left_object
        self.right_object = right_object
        self.components: dict[tuple[int, str], tuple[SimplexRef, SimplexRef]] = {}
        self._ids: dict[tuple[SimplexRef, SimplexRef], str] = {}
        bound = max(left_object.dimension + right_object.dimension, -1)
        layers: dict[int, list[tuple[str, tuple[SimplexRef, SimplexRef]]]] = {}
        for n in range(bound + 1):
            found: list[tuple[str, tuple[SimplexRef, SimplexRef]]] = []
            for p in range(min(n, left_object.dimension) + 1):
                for q in range(min(n, right_object.dimension) + 1):
                    if (n - p) + (n - q) > n:
                        continue
                    for a in combinations(range(n - 1, -1, -1), n - p):
                        for b in combinations(range(n - 1, -1, -1), n - q):
                            if set(a) & set(b):
                                continue
                            for x in left_object.n_cells(p):
                                lref = SimplexRef(n, a, x)
                                for y in right_object.n_cells(q):
                                    rref = SimplexRef(n, b, y)
                                    if compatible(lref, rref):
                                        found.append((_pair_id(lref, rref), (lref, rref)))
            found.sort(key=lambda item: item[0])
            layers[n] = found
            for cell_id, pair in found:
                self.components[(n, cell_id)] = pair
                self._ids[pair] = cell_id
        cells: dict[int, list[tuple[str, list[SimplexRef]]]] = {}
        for n, found in layers.items():
            layer = []
            for cell_id, (lref, rref) in found:
                faces = []
                for i in range(n + 1):
                    if n == 0:
                        break
                    delta = W.delta_values(i, n)
                    u = left_object.act(lref, delta)
                    v = right_object.act(rref, delta)
                    common, nu, nv = joint_normal_form(u, v)
                    faces.append(SimplexRef(n - 1, common, self._ids[(nu, nv)]))
                layer.append((cell_id, faces))
            cells[n] = layer
        trunc = None
        for t in (left_object.truncated_at, right_object.truncated_at):
            if t is not None:
                trunc = t if trunc is None else min(trunc, t)
        self.sset = SimplicialSet(cells, truncated_at=trunc)
        self.to_left = self._projection(self.left_object, 0)
        self.to_right = self._projection(self.right_object, 1)

    def _projection(self, target: SimplicialSet, side: int) -> SMap:
        assignment: dict[int, dict[str, SimplexRef]] = {}
        for (n, cell_id), pair in self.components.items():
            assignment.setdefault(n, {})[cell_id] = pair[side]
        return SMap(self.sset, target, assignment, check=False)

    def pair_ref(self, left: SimplexRef, right: SimplexRef) -> SimplexRef:
        """The simplex of the paired object with the given component refs."""
        common, nu, nv = joint_normal_form(left, right)
        cell_id = self._ids.get((nu, nv))
        if cell_id is None:
            raise SimplicialError(f"no paired cell with components ({nu}, {nv})")
        return SimplexRef(left.degree, common, cell_id)


class Product(PairedSSet):
    def __init__(self, left_object: SimplicialSet, right_object: SimplicialSet):
        super().__init__(left_object, right_object, lambda a, b: True)


class Pullback(PairedSSet):
    """Level-wise pullback of a cospan F: Y' -> Y <- X : P."""

    def __init__(self, along: SMap, of: SMap):
        if along.target != of.target:
            raise SimplicialError("pullback wants a cospan with a common target")
        self.along = along
        self.of = of
        super().__init__(
            along.source,
            of.source,
            lambda a, b: along.apply(a) == of.apply(b),
        )


def product(x: SimplicialSet, y: SimplicialSet) -> Product:
    return Product(x, y)


def pullback(along: SMap, of: SMap) -> Pullback:
    return Pullback(along, of)


class Fiber(Pullback):
    """Restriction of a map over a single simplex of its target."""

    def __init__(self, p: SMap, simplex: SimplexRef):
        p.target.resolve(simplex)
        self.base_ref = simplex
        self.classifier = classifying_map(p.target, simplex)
        super().__init__(self.classifier, p)

    @property
    def to_simplex(self) -> SMap:
        return self.to_left

    @property
    def to_total(self) -> SMap:
        return self.to_right


def restrict_over_simplex(p: SMap, simplex: SimplexRef) -> Fiber:
    return Fiber(p, simplex)


def pair_map(target: PairedSSet, f: SMap, g: SMap) -> SMap:
    """The map into a paired object with components f and g."""
    if f.source != g.source:
        raise SimplicialError("pair_map components must share a source")
    assignment: dict[int, dict[str, SimplexRef]] = {}
    for n in f.source.degrees():
        for c in f.source.n_cells(n):
            ref = target.pair_ref(f.value(n, c), g.value(n, c))
            assignment.setdefault(n, {})[c] = ref
    return SMap(f.source, target.sset, assignment)


def pullback_induced(
    src: PairedSSet, dst: PairedSSet, left: SMap, right: SMap
) -> SMap:
    """Map of paired objects induced by maps of the two factors."""
    assignment: dict[int, dict[str, SimplexRef]] = {}
    for (n, cell_id), (a, b) in src.components.items():
        ref = dst.pair_ref(left.apply(a), right.apply(b))
        assignment.setdefault(n, {})[cell_id] = ref
    return SMap(src.sset, dst.sset, assignment)


def vertex_inclusion_map(n: int, vertex: int) -> SMap:
    """The inclusion of the standard 0-simplex at a vertex of the standard n-simplex."""
    target = standard_simplex(n)
    return classifying_map(target, target.cell_ref(0, str(vertex)))
