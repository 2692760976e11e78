"""Horn lifting against a map, by exhaustive search.

A horn problem for p: X -> Y is an (n, i)-horn in X together with a
degree-n simplex of Y restricting to its image: faces x_j for j != i
satisfying the matching conditions d_j x_k = d_{k-1} x_j, and a base
simplex tau with d_j tau = p(x_j).  A solution is a degree-n simplex of
X with those faces lying over tau.  Candidates are ordered by
(word length, word, cell id), so "the first solution" and "the first
unsolvable problem" are well defined and reproducible.

Certificates answer three questions up to a degree cap: are all inner
horns solvable, does every edge of the target admit a cartesian lift
with prescribed endpoint, and dually for cocartesian lifts (checked on
the opposite map).  For nerves of categories the inner range n <= 3 is
decisive, so nerve-tagged inputs default to cap 3 and are marked
conclusive there; otherwise a certificate only speaks for the checked
range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import words as W
from .products import Product
from .sset import (
    SMap,
    SimplexRef,
    SimplicialError,
    SimplicialSet,
    op_ref,
    opposite_map,
    ref_sort_key,
    simplex_in_standard,
    standard_simplex,
)


@dataclass(frozen=True)
class HornProblem:
    """An (n, i)-horn in the source with a prescribed base simplex."""

    n: int
    i: int
    faces: tuple[tuple[int, SimplexRef], ...]
    base: SimplexRef

    def face(self, j: int) -> SimplexRef:
        for k, r in self.faces:
            if k == j:
                return r
        raise SimplicialError(f"horn problem has no face {j}")

    def validate(self, p: SMap) -> None:
        """Independent consistency check against the map."""
        x, y = p.source, p.target
        if not 0 <= self.i <= self.n or self.n < 1:
            raise SimplicialError(f"bad horn shape ({self.n}, {self.i})")
        positions = [j for j, _ in self.faces]
        if positions != [j for j in range(self.n + 1) if j != self.i]:
            raise SimplicialError("horn problem faces must cover all j != i in order")
        for j, r in self.faces:
            x.resolve(r)
            if r.degree != self.n - 1:
                raise SimplicialError(f"face {j} has degree {r.degree}")
        y.resolve(self.base)
        if self.base.degree != self.n:
            raise SimplicialError("base degree mismatch")
        for a, (j, xj) in enumerate(self.faces):
            for k, xk in self.faces[a + 1 :]:
                if x.face(xk, j) != x.face(xj, k - 1):
                    raise SimplicialError(
                        f"faces {j} and {k} do not match: d_{j} x_{k} != d_{k-1} x_{j}"
                    )
        for j, xj in self.faces:
            if y.face(self.base, j) != p.apply(xj):
                raise SimplicialError(f"base face {j} does not lie under the horn")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "i": self.i,
            "faces": {str(j): r.to_json() for j, r in self.faces},
            "base": self.base.to_json(),
        }

    def __str__(self) -> str:
        inside = ", ".join(f"d{j}={r}" for j, r in self.faces)
        return f"horn({self.n},{self.i})[{inside}] over {self.base}"


def op_problem(problem: HornProblem) -> HornProblem:
    """The same problem stated for the opposite map."""
    n = problem.n
    faces = tuple(
        sorted(((n - j, op_ref(r)) for j, r in problem.faces), key=lambda t: t[0])
    )
    return HornProblem(n, n - problem.i, faces, op_ref(problem.base))


# -- candidate indexing -------------------------------------------------------


def _face_index(x: SimplicialSet, degree: int) -> dict[int, dict[SimplexRef, list[SimplexRef]]]:
    """refs(degree) of x indexed by (face position, face value), sorted."""
    key = ("findex", degree)
    hit = x._face_index_cache.get(key)
    if hit is not None:
        return hit
    index: dict[int, dict[SimplexRef, list[SimplexRef]]] = {
        j: {} for j in range(degree + 1)
    }
    for r in x.refs(degree):
        for j in range(degree + 1):
            index[j].setdefault(x.face(r, j), []).append(r)
    x._face_index_cache[key] = index
    return index


def _matching(
    x: SimplicialSet,
    degree: int,
    constraints: list[tuple[int, SimplexRef]],
    pool: list[SimplexRef] | None = None,
) -> list[SimplexRef]:
    """Degree-n refs with the prescribed faces, in candidate order."""
    if not constraints:
        return list(x.refs(degree)) if pool is None else pool
    index = _face_index(x, degree)
    lists = [index[j].get(v, []) for j, v in constraints]
    if pool is not None:
        lists.append(pool)
    lists.sort(key=len)
    first, rest = lists[0], [set(l) for l in lists[1:]]
    return [r for r in first if all(r in s for s in rest)]


# -- single problems ----------------------------------------------------------


def horn_solutions(p: SMap, problem: HornProblem) -> list[SimplexRef]:
    """All degree-n solutions, in candidate order."""
    x = p.source
    constraints = [(j, r) for j, r in problem.faces]
    out = []
    for tau in _matching(x, problem.n, constraints):
        if p.apply(tau) == problem.base:
            out.append(tau)
    return out


def solve_horn_lift(p: SMap, problem: HornProblem) -> SimplexRef | None:
    """The first solution in candidate order, or None."""
    x = p.source
    constraints = [(j, r) for j, r in problem.faces]
    for tau in _matching(x, problem.n, constraints):
        if p.apply(tau) == problem.base:
            return tau
    return None


def count_horn_lifts(p: SMap, problem: HornProblem) -> int:
    return len(horn_solutions(p, problem))


# -- problem enumeration ------------------------------------------------------


def _face_tuples(
    x: SimplicialSet, n: int, i: int, position_pool
) -> list[tuple[tuple[int, SimplexRef], ...]]:
    """All mutually compatible face tuples for an (n, i)-horn, in order.

    position_pool(j) may restrict the candidates at position j; tuples are
    produced lexicographically position by position in candidate order.
    """
    positions = [j for j in range(n + 1) if j != i]
    out: list[tuple[tuple[int, SimplexRef], ...]] = []

    def extend(chosen: list[tuple[int, SimplexRef]]):
        if len(chosen) == len(positions):
            out.append(tuple(chosen))
            return
        pos = positions[len(chosen)]
        constraints = [(j, x.face(xj, pos - 1)) for j, xj in chosen]
        pool = position_pool(pos) if position_pool is not None else None
        for cand in _matching(x, n - 1, constraints, pool):
            chosen.append((pos, cand))
            extend(chosen)
            chosen.pop()

    extend([])
    return out


def _bases_for(p: SMap, n: int, i: int, faces) -> list[SimplexRef]:
    y = p.target
    constraints = [(j, p.apply(xj)) for j, xj in faces]
    return _matching(y, n, constraints)


def iter_horn_problems(p: SMap, n: int, i: int, position_pool=None):
    """All (n, i)-horn problems against p, least first."""
    for faces in _face_tuples(p.source, n, i, position_pool):
        for base in _bases_for(p, n, i, faces):
            yield HornProblem(n, i, faces, base)


# -- certificates -------------------------------------------------------------


@dataclass
class Certificate:
    """Outcome of a brute-force lifting certification.

    status is "certified" when every enumerated problem was solved,
    "refuted" with the least failing witness, or "inconclusive" when
    truncation clipped the requested range without a refutation.
    """

    kind: str
    status: str
    requested_cap: int
    effective_cap: int
    problems_checked: int
    witness: object = None
    conclusive: bool = False
    notes: tuple[str, ...] = ()

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def covers(self, degree: int) -> bool:
        return self.certified and (self.conclusive or self.effective_cap >= degree)

    def to_json(self) -> dict:
        witness = self.witness
        if isinstance(witness, HornProblem):
            witness = {"kind": "horn", **witness.to_json()}
        elif isinstance(witness, tuple):
            edge, vertex = witness
            witness = {"kind": "lift", "edge": edge.to_json(), "vertex": vertex.to_json()}
        return {
            "kind": self.kind,
            "status": self.status,
            "requested_cap": self.requested_cap,
            "effective_cap": self.effective_cap,
            "problems_checked": self.problems_checked,
            "conclusive": self.conclusive,
            "witness": witness,
            "notes": list(self.notes),
        }


def _default_cap(p: SMap) -> int:
    if "nerve" in p.source.tags and "nerve" in p.target.tags:
        return 3
    return max(p.source.dimension, p.target.dimension, 0) + 2


def _effective_cap(p: SMap, requested: int) -> tuple[int, list[str]]:
    effective = requested
    notes = []
    for obj, name in ((p.source, "source"), (p.target, "target")):
        if obj.truncated_at is not None and obj.truncated_at < effective:
            effective = obj.truncated_at
            notes.append(
                f"{name} is truncated at degree {obj.truncated_at}; "
                f"horn degrees above it are not represented"
            )
    return effective, notes


def _nerve_conclusive(p: SMap, effective: int) -> bool:
    return (
        "nerve" in p.source.tags and "nerve" in p.target.tags and effective >= 3
    )


def certify_inner_fibration(p: SMap, cap: int | None = None) -> Certificate:
    """Solve every inner horn problem with 2 <= n <= cap against p.

    Nerve-tagged inputs are conclusive once the cap reaches 3: nerve
    inner-horn problems in higher degrees are filled by composites that
    the degree <= 3 range already determines.
    """
    requested = cap if cap is not None else _default_cap(p)
    effective, notes = _effective_cap(p, requested)
    conclusive = _nerve_conclusive(p, effective)
    checked = 0
    for n in range(2, effective + 1):
        for i in range(1, n):
            for problem in iter_horn_problems(p, n, i):
                checked += 1
                if solve_horn_lift(p, problem) is None:
                    return Certificate(
                        "inner", "refuted", requested, effective, checked,
                        witness=problem, conclusive=True, notes=tuple(notes),
                    )
    status = "certified"
    if effective < requested and not conclusive:
        status = "inconclusive"
        notes.append("requested range not exhausted; no refutation found")
    if conclusive and effective < requested:
        notes.append("cap clipped by truncation, but degree 3 decides nerve inputs")
    return Certificate(
        "inner", status, requested, effective, checked, conclusive=conclusive,
        notes=tuple(notes),
    )


def is_cartesian_edge(
    p: SMap, edge: SimplexRef, cap: int
) -> tuple[bool, HornProblem | None, int]:
    """Test the right-horn lifting property of an edge of the source.

    Checks every (n, n)-horn problem with 2 <= n <= cap whose final edge
    (the {n-1, n} edge of the would-be filler) is the given edge.
    Returns (verdict, least refuting problem or None, problems checked).
    """
    x = p.source
    x.resolve(edge)
    if edge.degree != 1:
        raise SimplicialError("cartesian test wants an edge reference")
    checked = 0
    for n in range(2, cap + 1):
        last = {r for r in x.refs(n - 1) if x.last_edge(r) == edge}

        def pool(j: int, last=last, n=n):
            if j <= n - 2:
                return [r for r in x.refs(n - 1) if r in last]
            return None

        for problem in iter_horn_problems(p, n, n, pool):
            checked += 1
            if solve_horn_lift(p, problem) is None:
                return False, problem, checked
    return True, None, checked


def _op_map(p: SMap) -> SMap:
    cached = getattr(p, "_op_map", None)
    if cached is None:
        cached = opposite_map(p)
        p._op_map = cached
    return cached


def is_cocartesian_edge(
    p: SMap, edge: SimplexRef, cap: int
) -> tuple[bool, HornProblem | None, int]:
    """Left-horn dual of is_cartesian_edge, computed on the opposite map."""
    ok, witness, checked = is_cartesian_edge(_op_map(p), op_ref(edge), cap)
    return ok, (op_problem(witness) if witness is not None else None), checked


def _certify_edge_lifts(
    p: SMap, kind: str, inner: Certificate, requested: int, effective: int,
    notes: list[str],
) -> Certificate:
    """Existence of cartesian lifts: for every edge of the target and every
    vertex over its endpoint, some edge over it with that endpoint passes
    the right-horn test."""
    x, y = p.source, p.target
    checked = 0
    for g in y.refs(1):
        target_vertex = y.face(g, 0)
        for c in x.refs(0):
            if p.apply(c) != target_vertex:
                continue
            found = False
            for f in x.refs(1):
                if p.apply(f) != g or x.face(f, 0) != c:
                    continue
                ok, _, n_checked = is_cartesian_edge(p, f, effective)
                checked += n_checked
                if ok:
                    found = True
                    break
            if not found:
                return Certificate(
                    kind, "refuted", requested, effective, checked,
                    witness=(g, c), conclusive=True, notes=tuple(notes),
                )
    status = inner.status
    return Certificate(
        kind, status, requested, effective, checked,
        conclusive=inner.conclusive, notes=tuple(notes),
    )


@dataclass
class FibrationClassReport:
    inner: Certificate
    cartesian: Certificate
    cocartesian: Certificate

    def to_json(self) -> dict:
        return {
            "inner": self.inner.to_json(),
            "cartesian": self.cartesian.to_json(),
            "cocartesian": self.cocartesian.to_json(),
        }


def certify_fibration_class(p: SMap, cap: int | None = None) -> FibrationClassReport:
    """Certify or refute inner, cartesian, and cocartesian conditions.

    Cartesian lifts are sought with prescribed target vertex; cocartesian
    lifts with prescribed source vertex, by running the cartesian search
    on the opposite map and translating witnesses back.
    """
    inner = certify_inner_fibration(p, cap)
    requested = inner.requested_cap
    effective = inner.effective_cap
    if inner.status == "refuted":
        def stub(kind: str) -> Certificate:
            return Certificate(
                kind, "refuted", requested, effective, 0,
                witness=inner.witness, conclusive=True,
                notes=("the inner condition is already refuted; see its witness",),
            )

        return FibrationClassReport(inner, stub("cartesian"), stub("cocartesian"))
    notes = list(inner.notes)
    cartesian = _certify_edge_lifts(p, "cartesian", inner, requested, effective, notes)
    po = _op_map(p)
    cocart_raw = _certify_edge_lifts(
        po, "cocartesian", inner, requested, effective, notes
    )
    witness = cocart_raw.witness
    if isinstance(witness, tuple):
        witness = (op_ref(witness[0]), witness[1])
    cocartesian = Certificate(
        "cocartesian", cocart_raw.status, requested, effective,
        cocart_raw.problems_checked, witness=witness,
        conclusive=cocart_raw.conclusive, notes=cocart_raw.notes,
    )
    return FibrationClassReport(inner, cartesian, cocartesian)


# -- homotopy lifting ---------------------------------------------------------


class LiftObstruction(SimplicialError):
    """Raised when a homotopy lift cannot be constructed.

    status "inconclusive" means a hypothesis failed (an edge that the
    construction relies on is not cocartesian, or a horn went unsolved),
    so nothing is claimed either way about the lift's existence.
    """

    def __init__(self, status: str, message: str, problem: HornProblem | None = None):
        self.status = status
        self.problem = problem
        super().__init__(message)


EDGE_01 = SimplexRef(1, (), "0.1")
VERTEX_0 = SimplexRef(0, (), "0")
VERTEX_1 = SimplexRef(0, (), "1")


def cylinder(base: SimplicialSet) -> Product:
    """The product of a simplicial set with the standard 1-simplex."""
    return Product(base, standard_simplex(1))


def cylinder_region(prism: Product, j_sub: SimplicialSet | None = None) -> SimplicialSet:
    """The subobject of a cylinder where a lift starts out prescribed:
    everything at level 0, plus the whole cylinder over j_sub."""
    from .sset import subcomplex

    seeds = []
    for (n, cell_id), (lref, rref) in prism.components.items():
        at_zero = rref.cell_degree == 0 and rref.cell == "0"
        over_j = j_sub is not None and j_sub.has_cell(lref.cell_degree, lref.cell)
        if at_zero or over_j:
            seeds.append((n, cell_id))
    return subcomplex(prism.sset, seeds)


def _word_apply(value: SimplexRef, r: SimplexRef) -> SimplexRef:
    """Value of a possibly degenerate ref, given the value on its cell."""
    if not r.word:
        return value
    outer = W.word_to_map(value.word, value.degree)
    inner = W.word_to_map(r.word, r.degree)
    return SimplexRef(r.degree, W.map_to_word(W.compose(outer, inner)), value.cell)


def start_map(
    prism: Product,
    x: SimplicialSet,
    f0: SMap,
    designated: dict[str, SimplexRef] | None = None,
) -> tuple[SMap, SimplicialSet | None]:
    """Start data for lift_homotopy.

    f0 maps the left factor of the prism into x and fills the level-0
    slice.  designated optionally pins the edge over a vertex of the
    left factor (vertex cell id -> edge of x whose initial vertex is
    the f0 image); those vertices form the returned j_sub.  No
    cocartesian-ness is checked here, that is lift_homotopy's job.
    """
    from .sset import subcomplex

    a = prism.left_object
    designated = designated or {}
    for v, e in designated.items():
        if not a.has_cell(0, v):
            raise SimplicialError(f"designated id {v!r} is not a vertex of the base")
        x.resolve(e)
        if e.degree != 1 or x.face(e, 1) != f0.apply(SimplexRef(0, (), v)):
            raise SimplicialError(f"designated edge over {v!r} does not start at f0({v})")
    j_sub = (
        subcomplex(a, [(0, v) for v in designated]) if designated else None
    )
    region = cylinder_region(prism, j_sub)
    assignment: dict[int, dict[str, SimplexRef]] = {}
    for n in region.degrees():
        for c in region.n_cells(n):
            lref, rref = prism.components[(n, c)]
            if rref.cell_degree == 0 and rref.cell == "0":
                value = f0.apply(lref)
            else:
                # a cell over a designated vertex: push the pinned edge
                # through the interval coordinate
                e = designated[lref.cell]
                if rref.cell_degree == 0:
                    value = x.act(x.face(e, 0), tuple([0] * (n + 1)))
                else:
                    phi = W.word_to_map(rref.word, n)
                    value = x.act(e, phi)
            assignment.setdefault(n, {})[c] = value
    return SMap(region, x, assignment, check=False), j_sub


def lift_homotopy(
    p: SMap,
    prism: Product,
    homotopy: SMap,
    start: SMap,
    j_sub: SimplicialSet | None = None,
    certificate: Certificate | None = None,
    cap: int | None = None,
) -> SMap:
    """Lift a homotopy through p, extending a prescribed start.

    p: X -> Y; prism: A x Delta^1; homotopy: prism -> Y; start is defined
    on the region (level 0 plus the cylinder over j_sub) and lifts the
    homotopy there.  Over every vertex outside j_sub the lift chooses the
    first cocartesian edge over the tracked edge of Y; over higher cells
    it fills the cylinder simplex by simplex through inner horns, plus
    one initial-vertex horn whose first edge is the chosen cocartesian
    edge.  Start edges over j_sub vertices are required to be cocartesian
    up front; a failed requirement raises LiftObstruction with the least
    refuting horn problem.
    """
    x, y = p.source, p.target
    a = prism.left_object
    if homotopy.source != prism.sset or homotopy.target != y:
        raise SimplicialError("homotopy must map the cylinder to the target of p")
    if start.target != x:
        raise SimplicialError("start must land in the source of p")
    region = cylinder_region(prism, j_sub)
    for n in region.degrees():
        for c in region.n_cells(n):
            if p.apply(start.value(n, c)) != homotopy.value(n, c):
                raise SimplicialError(
                    f"start does not lift the homotopy on cell {c!r} of degree {n}"
                )
    if j_sub is not None:
        for n in j_sub.degrees():
            for c in j_sub.n_cells(n):
                if not a.has_cell(n, c):
                    raise SimplicialError("j_sub must be a subobject of the cylinder base")
    needed = prism.sset.dimension
    edge_cap = cap if cap is not None else max(needed, 2)
    if certificate is not None:
        if not certificate.covers(needed) or certificate.kind not in (
            "inner",
            "cocartesian",
        ):
            raise LiftObstruction(
                "inconclusive",
                f"certificate does not cover horn degrees up to {needed}",
            )
    else:
        inner = certify_inner_fibration(p, cap=max(needed, 2))
        if inner.status != "certified":
            raise LiftObstruction(
                "inconclusive",
                f"inner condition not certified (status {inner.status})",
                problem=inner.witness if isinstance(inner.witness, HornProblem) else None,
            )

    values: dict[tuple[int, str], SimplexRef] = {}
    for n in region.degrees():
        for c in region.n_cells(n):
            values[(n, c)] = start.value(n, c)

    def prism_value(r: SimplexRef) -> SimplexRef:
        return _word_apply(values[(r.cell_degree, r.cell)], r)

    # start edges over j_sub vertices must already be cocartesian
    if j_sub is not None:
        for v in j_sub.n_cells(0):
            edge_id = prism.pair_ref(SimplexRef(1, (0,), v), EDGE_01).cell
            e = x.resolve(values[(1, edge_id)])
            ok, witness, _ = is_cocartesian_edge(p, e, edge_cap)
            if not ok:
                raise LiftObstruction(
                    "inconclusive",
                    f"prescribed edge {e} over vertex {v!r} is not cocartesian",
                    problem=witness,
                )

    designated: dict[str, SimplexRef] = {}
    for m in a.degrees():
        for c in a.n_cells(m):
            if j_sub is not None and j_sub.has_cell(m, c):
                continue
            if m == 0:
                bottom = prism.pair_ref(SimplexRef(0, (), c), VERTEX_0)
                edge_cell = prism.pair_ref(SimplexRef(1, (0,), c), EDGE_01).cell
                g = homotopy.value(1, edge_cell)
                startv = values[(0, bottom.cell)]
                chosen = None
                for f in x.refs(1):
                    if x.face(f, 1) != startv or p.apply(f) != g:
                        continue
                    ok, _, _ = is_cocartesian_edge(p, f, edge_cap)
                    if ok:
                        chosen = f
                        break
                if chosen is None:
                    raise LiftObstruction(
                        "inconclusive",
                        f"no cocartesian edge over {g} starting at {startv}",
                    )
                designated[c] = chosen
                values[(1, edge_cell)] = chosen
                top = prism.pair_ref(SimplexRef(0, (), c), VERTEX_1)
                values[(0, top.cell)] = x.face(chosen, 0)
                continue
            # fill the cylinder over an m-cell by m+1 simplices, top down
            for k in range(m, -1, -1):
                left = SimplexRef(m + 1, (k,), c)
                word = tuple(j for j in range(m, -1, -1) if j != k)
                right = SimplexRef(m + 1, word, "0.1")
                pk = prism.pair_ref(left, right)
                top_ref = SimplexRef(m + 1, (), pk.cell)
                faces = []
                for j in range(m + 2):
                    if j == k:
                        continue
                    faces.append((j, prism_value(prism.sset.face(top_ref, j))))
                problem = HornProblem(
                    m + 1, k, tuple(faces), homotopy.value(m + 1, pk.cell)
                )
                tau = solve_horn_lift(p, problem)
                if tau is None:
                    raise LiftObstruction(
                        "inconclusive",
                        f"horn of the cylinder over cell {c!r} went unsolved",
                        problem=problem,
                    )
                values[(m + 1, pk.cell)] = tau
                wall = prism.sset.face(top_ref, k)
                assert not wall.word  # the open face of each piece is nondegenerate
                values[(m, wall.cell)] = x.act(tau, W.delta_values(k, m + 1))

    assignment: dict[int, dict[str, SimplexRef]] = {}
    for (n, cell_id), r in values.items():
        assignment.setdefault(n, {})[cell_id] = r
    lift = SMap(prism.sset, x, assignment)
    for n, cell_id, _ in prism.sset.cell_items():
        if p.apply(lift.value(n, cell_id)) != homotopy.value(n, cell_id):
            raise SimplicialError("audit failed: the lift does not cover the homotopy")
    for n in region.degrees():
        for c in region.n_cells(n):
            if lift.value(n, c) != start.value(n, c):
                raise SimplicialError("audit failed: the lift moved the start")
    return lift


# -- reference homotopies ------------------------------------------------------


def last_vertex_contraction(n: int) -> tuple[SMap, Product]:
    """The cylinder map contracting the standard n-simplex to its last vertex:
    (i, 0) goes to i and (i, 1) to n."""
    target = standard_simplex(n)
    prism = cylinder(target)
    assignment: dict[int, dict[str, SimplexRef]] = {}
    for (m, cell_id), (lref, rref) in prism.components.items():
        vs = []
        for t in range(m + 1):
            level = prism.right_object.vertex_of(rref, t).cell
            if level == "0":
                vs.append(int(prism.left_object.vertex_of(lref, t).cell))
            else:
                vs.append(n)
        assignment.setdefault(m, {})[cell_id] = simplex_in_standard(n, vs)
    return SMap(prism.sset, target, assignment), prism
