"""Built-in worked examples wired as validated characteristic data.

Entries:
  g42            -- the rank-3 torus acting on the Grassmannian of planes in C^4;
                    sponge = octahedron boundary plus the three equatorial
                    squares, six fixed points, weights along moment edges.
  f3             -- the rank-2 torus on full flags in C^3; sponge = K_{3,3}
                    (one-skeleton of the three-hexagon torus subdivision).
  cp3-reduction  -- the simplex pipeline: reduction of the standard
                    characteristic function on the 3-simplex by the
                    subtorus with character (1, 1, -1).
  local-model-N  -- one chart of the corner model in ambient parameter N.

Weights are stored in a primitive basis of the honest character lattice
(the sum-zero sublattice of the ambient weight lattice, coordinatized by
its first components); moment coordinates that embed the same data with
finite index would make the circle directions non-integral.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .chardata import (
    Ambient,
    CharacteristicData,
    Chart,
    assemble_euler_cycle,
    compatibility_check,
    cocycle_check,
    data_from_charts,
    local_model_data,
    validate_mu,
)
from .errors import UnknownEntryError
from .lattice import IntVector, vec
from .quasitoric import (
    CharacteristicFunction,
    SimplePolytope,
    SubtorusChoice,
    reduce as quasitoric_reduce,
)
from .sponge import (
    Cell,
    CheckResult,
    SpongeComplex,
    ValidationReport,
    face_star,
    homology,
    signed_incidence,
    validate_sponge,
)
from .weights import WeightSystem, cramer_coefficients, is_strictly_appropriate

CATALOG_ENV = "COMPLEXITY_ONE_CATALOG"


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    description: str
    data: CharacteristicData
    weight_systems: Mapping[str, WeightSystem] = field(default_factory=dict)
    expected: Mapping[str, object] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# the octahedron with squares (planes in C^4)

def _pair_vertex_id(p: frozenset[int]) -> str:
    return "x" + "".join(str(i) for i in sorted(p))


def _edge_id(p: frozenset[int], q: frozenset[int]) -> str:
    a, b = sorted([_pair_vertex_id(p), _pair_vertex_id(q)])
    return f"e.{a}.{b}"


def octahedron_sponge(squares: bool = True) -> SpongeComplex:
    """Octahedron boundary, optionally with the three equatorial squares.

    Vertices are the 2-subsets of {1,2,3,4} (the hypersimplex picture), so
    two vertices are joined iff the subsets share one element; the squares
    are the three partitions of {1,2,3,4} into two pairs.
    """
    verts = [frozenset(p) for p in combinations((1, 2, 3, 4), 2)]
    cells: list[tuple[str, int]] = [(_pair_vertex_id(v), 0) for v in verts]
    covers: dict[str, list[str]] = {}
    edges = [(p, q) for p, q in combinations(verts, 2) if len(p & q) == 1]
    for p, q in edges:
        cells.append((_edge_id(p, q), 1))
        covers[_edge_id(p, q)] = sorted([_pair_vertex_id(p), _pair_vertex_id(q)])

    def two_cell(name: str, members: list[frozenset[int]]) -> None:
        cells.append((name, 2))
        covers[name] = sorted(
            _edge_id(p, q) for p, q in combinations(members, 2) if len(p & q) == 1
        )

    for a in (1, 2, 3, 4):
        two_cell(f"t.in{a}", [v for v in verts if a in v])
        two_cell(f"t.out{a}", [v for v in verts if a not in v])
    if squares:
        for a, b in ((1, 2), (1, 3), (1, 4)):
            mixed = [v for v in verts if len(v & {a, b}) == 1]
            two_cell(f"s.{a}{b}", mixed)
    inc = signed_incidence(cells, covers)
    return SpongeComplex(
        n=4,
        cells=tuple(Cell(c, d) for c, d in sorted(cells)),
        incidence=inc,
        ambient="sphere",
    )


def _sum_zero_coords(v: tuple[int, ...]) -> IntVector:
    """Coordinates of a sum-zero vector in the basis e_i - e_last."""
    assert sum(v) == 0
    return IntVector(v[:-1])


def _build_g42() -> CatalogEntry:
    sponge = octahedron_sponge(squares=True)
    verts = [frozenset(p) for p in combinations((1, 2, 3, 4), 2)]
    charts: dict[str, Chart] = {}
    weight_systems: dict[str, WeightSystem] = {}
    for v in verts:
        vid = _pair_vertex_id(v)
        neighbors = sorted(
            (w for w in verts if len(v & w) == 1), key=_pair_vertex_id
        )
        weights = []
        rays = []
        for w in neighbors:
            (gained,) = tuple(w - v)
            (lost,) = tuple(v - w)
            diff = [0, 0, 0, 0]
            diff[gained - 1] += 1
            diff[lost - 1] -= 1
            weights.append(_sum_zero_coords(tuple(diff)))
            rays.append(_edge_id(v, w))
        ws = WeightSystem(4, tuple(weights))
        charts[vid] = Chart(ws, tuple(rays))
        weight_systems[vid] = ws
    data = data_from_charts(sponge, charts, Ambient("sphere"))
    expected = {
        "fixed_points": 6,
        "cells_per_dim": [6, 12, 11],
        "betti": [1, 0, 4],
        "strictly_appropriate": True,
        "cramer_abs": [1, 1, 1, 1],
        "euler_cycle": True,
    }
    return CatalogEntry(
        name="g42",
        description=(
            "Rank-3 torus on the Grassmannian of 2-planes in C^4: six fixed "
            "points, octahedron-with-squares sponge, orbit space a 5-sphere"
        ),
        data=data,
        weight_systems=weight_systems,
        expected=expected,
    )


# ---------------------------------------------------------------------------
# K_{3,3} (full flags in C^3)

_PERMS = ("123", "132", "213", "231", "312", "321")
_TRANSPOSITIONS = ((1, 2), (1, 3), (2, 3))


def _swap_values(word: str, i: int, j: int) -> str:
    table = {str(i): str(j), str(j): str(i)}
    return "".join(table.get(ch, ch) for ch in word)


def k33_sponge() -> SpongeComplex:
    """Complete bipartite graph on the six permutation flags."""
    cells: list[tuple[str, int]] = [(f"w{w}", 0) for w in _PERMS]
    covers: dict[str, list[str]] = {}
    for w in _PERMS:
        for i, j in _TRANSPOSITIONS:
            u = _swap_values(w, i, j)
            a, b = sorted([w, u])
            eid = f"e.w{a}.w{b}"
            if eid not in covers:
                cells.append((eid, 1))
                covers[eid] = [f"w{a}", f"w{b}"]
    inc = signed_incidence(cells, covers)
    return SpongeComplex(
        n=3,
        cells=tuple(Cell(c, d) for c, d in sorted(cells)),
        incidence=inc,
        ambient="product",
    )


def _flag_weight(word: str, i: int, j: int) -> IntVector:
    """Tangent weight at the flag `word` along the edge swapping values i < j."""
    eps = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    if word.index(str(i)) < word.index(str(j)):
        lo, hi = i, j
    else:
        lo, hi = j, i
    diff = tuple(b - a for a, b in zip(eps[lo - 1], eps[hi - 1]))
    return _sum_zero_coords(diff)


def _build_f3() -> CatalogEntry:
    sponge = k33_sponge()
    charts: dict[str, Chart] = {}
    weight_systems: dict[str, WeightSystem] = {}
    for w in _PERMS:
        moves = []
        for i, j in _TRANSPOSITIONS:
            u = _swap_values(w, i, j)
            a, b = sorted([w, u])
            moves.append((f"e.w{a}.w{b}", _flag_weight(w, i, j)))
        moves.sort(key=lambda t: t[0])
        ws = WeightSystem(3, tuple(weight for _, weight in moves))
        charts[f"w{w}"] = Chart(ws, tuple(eid for eid, _ in moves))
        weight_systems[f"w{w}"] = ws
    data = data_from_charts(sponge, charts, Ambient("product", boundary_trivial=True))
    expected = {
        "fixed_points": 6,
        "cells_per_dim": [6, 9],
        "betti": [1, 4],
        "strictly_appropriate": True,
        "cramer_abs": [1, 1, 1],
        "euler_cycle": True,
    }
    return CatalogEntry(
        name="f3",
        description=(
            "Rank-2 torus on full flags in C^3: six fixed points, K_{3,3} "
            "sponge on a torus, orbit space a 4-sphere"
        ),
        data=data,
        weight_systems=weight_systems,
        expected=expected,
    )


# ---------------------------------------------------------------------------
# simplex pipeline and local models

def simplex_polytope() -> SimplePolytope:
    facets = ("f1", "f2", "f3", "f4")
    vertices = tuple(frozenset(v) for v in combinations(facets, 3))
    return SimplePolytope(3, facets, vertices)


def simplex_lambda() -> CharacteristicFunction:
    return CharacteristicFunction(
        {"f1": vec(1, 0, 0), "f2": vec(0, 1, 0), "f3": vec(0, 0, 1), "f4": vec(-1, -1, -1)}
    )


def _build_cp3() -> CatalogEntry:
    p = simplex_polytope()
    lam = simplex_lambda()
    st = SubtorusChoice.from_alpha(vec(1, 1, -1))
    data = quasitoric_reduce(p, lam, st)
    from .weights import induced_weights

    weight_systems = {
        "g:" + ",".join(sorted(v)): induced_weights([lam[f] for f in sorted(v)], st.alpha)
        for v in p.vertices
    }
    expected = {
        "fixed_points": 4,
        "cells_per_dim": [4, 6],
        "betti": [1, 3],
        "strictly_appropriate": True,
        "cramer_abs": [1, 1, 1],
        "euler_cycle": True,
    }
    return CatalogEntry(
        name="cp3-reduction",
        description=(
            "Reduction of the standard characteristic data on the 3-simplex "
            "by the subtorus with character (1, 1, -1)"
        ),
        data=data,
        weight_systems=weight_systems,
        expected=expected,
    )


def _build_local_model(n: int) -> CatalogEntry:
    basis = [
        IntVector(tuple(1 if t == i else 0 for t in range(n))) for i in range(n)
    ]
    alpha = IntVector(tuple([1] * (n - 1) + [-1]))
    from .weights import induced_weights

    ws = induced_weights(basis, alpha)
    data = local_model_data(ws)
    from math import comb

    expected = {
        "fixed_points": 1,
        "cells_per_dim": [comb(n, d) for d in range(n - 1)],
        "strictly_appropriate": True,
        "cramer_abs": [1] * n,
        "euler_cycle": True,
    }
    return CatalogEntry(
        name=f"local-model-{n}",
        description=f"One chart of the corner model for ambient parameter {n}",
        data=data,
        weight_systems={"o": ws},
        expected=expected,
    )


_BUILDERS = {
    "g42": _build_g42,
    "f3": _build_f3,
    "cp3-reduction": _build_cp3,
}


def names() -> list[str]:
    return sorted(_BUILDERS) + ["local-model-4"]


def load(name: str) -> CatalogEntry:
    """Load a catalog entry by name.

    Names: g42, f3, cp3-reduction, local-model-N (N >= 2).  When the
    COMPLEXITY_ONE_CATALOG environment variable points to a directory
    containing <name>.json, that characteristic-data file takes precedence.
    """
    override_dir = os.environ.get(CATALOG_ENV)
    if override_dir:
        path = os.path.join(override_dir, f"{name}.json")
        if os.path.exists(path):
            from .io import chardata_from_dict, loads

            with open(path, "r", encoding="ascii") as fh:
                data = chardata_from_dict(loads(fh.read()), where=path)
            return CatalogEntry(
                name=name, description=f"external entry from {path}", data=data
            )
    if name in _BUILDERS:
        return _BUILDERS[name]()
    if name.startswith("local-model-"):
        suffix = name[len("local-model-") :]
        if suffix.isdigit() and int(suffix) >= 2:
            return _build_local_model(int(suffix))
    raise UnknownEntryError(f"unknown catalog entry {name!r}; known: {', '.join(names())}")


def verify(entry: CatalogEntry) -> ValidationReport:
    """Run every applicable validator on an entry and check expected values."""
    entries: list[CheckResult] = []
    cd = entry.data

    def record(check: str, ok: bool, detail: str = "") -> None:
        entries.append(CheckResult(check, "pass" if ok else "fail", detail))

    sponge_rep = validate_sponge(cd.sponge)
    record("sponge-valid", sponge_rep.ok, "; ".join(e.detail for e in sponge_rep.failures()[:3]))
    mu_rep = validate_mu(cd)
    record("mu-valid", mu_rep.ok, "; ".join(e.detail for e in mu_rep.failures()[:3]))
    record("compatibility", compatibility_check(cd))
    co_rep = cocycle_check(cd)
    record("cocycle", co_rep.ok, "; ".join(e.detail for e in co_rep.failures()[:3]))

    cycle_ok = None
    if co_rep.ok:
        cycle = assemble_euler_cycle(cd)
        cycle_ok = cycle.is_cycle
        record("euler-cycle", cycle.is_cycle)
    else:
        record("euler-cycle", False, "cocycle relations fail")

    stars_ok = all(face_star(cd.sponge, c.id).is_local for c in cd.sponge.cells)
    record("face-stars", stars_ok)

    for vid in sorted(entry.weight_systems):
        ws = entry.weight_systems[vid]
        cc = cramer_coefficients(ws)
        strict = is_strictly_appropriate(ws)
        exp_strict = entry.expected.get("strictly_appropriate")
        if exp_strict is not None:
            record(f"strict[{vid}]", strict == exp_strict, f"c = {list(cc.c)}")
        exp_abs = entry.expected.get("cramer_abs")
        if exp_abs is not None:
            record(
                f"cramer-abs[{vid}]",
                sorted(abs(x) for x in cc.c) == sorted(exp_abs),
                f"c = {list(cc.c)}",
            )

    exp_counts = entry.expected.get("cells_per_dim")
    if exp_counts is not None:
        got = [len(cd.sponge.cells_of_dim(d)) for d in range(cd.n - 1)]
        record("cells-per-dim", got == list(exp_counts), f"got {got}, expected {list(exp_counts)}")
    exp_betti = entry.expected.get("betti")
    if exp_betti is not None:
        got_b = list(homology(cd.sponge).betti)
        record("betti", got_b == list(exp_betti), f"got {got_b}, expected {list(exp_betti)}")
    exp_fixed = entry.expected.get("fixed_points")
    if exp_fixed is not None:
        got_f = len(cd.sponge.cells_of_dim(0))
        record("fixed-points", got_f == exp_fixed, f"got {got_f}")
    exp_cycle = entry.expected.get("euler_cycle")
    if exp_cycle is not None and cycle_ok is not None:
        record("euler-cycle-expected", cycle_ok == exp_cycle)
    return ValidationReport(tuple(entries))
