"""Quasitoric characteristic data and the reduction to a subtorus.

Polytopes are purely combinatorial: a simple polytope is its vertex-facet
incidence, faces are the facet subsets realized at some vertex.  A
characteristic function assigns primitive vectors in Z^n to facets subject
to the determinant-+-1 basis condition at vertices; a subtorus choice is a
primitive character together with the Hermite-canonical basis of its
kernel lattice.  The reduction produces characteristic data on the
codimension-two skeleton of the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .chardata import Ambient, CharacteristicData, Chart, data_from_charts
from .errors import (
    ColoringError,
    ConsistencyError,
    DegenerateInputError,
    InputFormatError,
    PreconditionError,
    StarConditionError,
    ValidationError,
)
from .lattice import (
    IntMatrix,
    IntVector,
    determinant,
    is_unimodular_extension,
    kernel_complement,
    primitive,
    solve_exact,
    stack_rows,
)
from .sponge import Cell, CheckResult, SpongeComplex, ValidationReport, signed_incidence
from .weights import induced_weights


@dataclass(frozen=True, eq=False)
class SimplePolytope:
    """Combinatorial simple polytope: facet ids plus vertex facet-sets."""

    n: int
    facets: tuple[str, ...]
    vertices: tuple[frozenset[str], ...]

    def __post_init__(self):
        object.__setattr__(self, "facets", tuple(str(f) for f in self.facets))
        object.__setattr__(
            self, "vertices", tuple(frozenset(str(f) for f in v) for v in self.vertices)
        )
        self._validate()

    def _validate(self) -> None:
        if self.n < 1:
            raise ValidationError("polytope dimension must be positive")
        fs = set(self.facets)
        if len(fs) != len(self.facets):
            raise ValidationError("duplicate facet ids")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertices")
        for v in self.vertices:
            if len(v) != self.n:
                raise ValidationError(f"vertex {sorted(v)} lies in {len(v)} facets, expected {self.n}")
            if not v <= fs:
                raise ValidationError(f"vertex {sorted(v)} uses unknown facets")
        used = set().union(*self.vertices) if self.vertices else set()
        if used != fs:
            raise ValidationError(f"facets without vertices: {sorted(fs - used)}")
        # every edge (an (n-1)-subset of a vertex) joins exactly two vertices
        if self.n >= 1:
            for v in self.vertices:
                for edge in combinations(sorted(v), self.n - 1):
                    count = sum(1 for w in self.vertices if set(edge) <= w)
                    if count != 2:
                        raise ValidationError(
                            f"edge {list(edge)} lies in {count} vertices, expected 2"
                        )
        # vertex graph connectivity
        if self.vertices:
            seen = {self.vertices[0]}
            frontier = [self.vertices[0]]
            while frontier:
                cur = frontier.pop()
                for w in self.vertices:
                    if w not in seen and len(cur & w) == self.n - 1:
                        seen.add(w)
                        frontier.append(w)
            if len(seen) != len(self.vertices):
                raise ValidationError("vertex graph is disconnected")

    @cached_property
    def _vertex_list(self) -> tuple[frozenset[str], ...]:
        return tuple(sorted(self.vertices, key=lambda v: tuple(sorted(v))))

    def faces_of_codim(self, k: int) -> tuple[frozenset[str], ...]:
        """Realized facet subsets of size k (codimension-k faces)."""
        found = set()
        for v in self.vertices:
            for sub in combinations(sorted(v), k):
                found.add(frozenset(sub))
        return tuple(sorted(found, key=lambda s: tuple(sorted(s))))

    def adjacent_facets(self, f: str, g: str) -> bool:
        return any({f, g} <= v for v in self.vertices)


@dataclass(frozen=True, eq=False)
class CharacteristicFunction:
    values: Mapping[str, IntVector]

    def __post_init__(self):
        vals = {str(k): IntVector(tuple(v)) for k, v in dict(self.values).items()}
        for k, v in vals.items():
            if v.is_zero() or not v.is_primitive():
                raise DegenerateInputError(f"lambda({k}) must be primitive and nonzero")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, fid: str) -> IntVector:
        return self.values[fid]


@dataclass(frozen=True)
class SubtorusChoice:
    """Primitive character alpha plus the basis of its kernel lattice.

    The complement rows are the Hermite-canonical basis of ker<alpha, .>;
    circle directions inside the subtorus are written in this basis, and
    characters are restricted by pairing against it.
    """

    alpha: IntVector
    complement: IntMatrix

    def __post_init__(self):
        object.__setattr__(self, "alpha", IntVector(tuple(self.alpha)))
        if not self.alpha.is_primitive():
            raise DegenerateInputError("alpha must be primitive")
        expect = kernel_complement(self.alpha)
        if expect.entries != self.complement.entries or expect.rows != self.complement.rows:
            raise ConsistencyError("complement is not the canonical kernel basis of alpha")

    @classmethod
    def from_alpha(cls, alpha: IntVector | Sequence[int]) -> "SubtorusChoice":
        a = IntVector(tuple(alpha))
        return cls(alpha=a, complement=kernel_complement(a))

    def pairing(self, lam: IntVector) -> int:
        return self.alpha.dot(lam)

    def kernel_coordinates(self, v: IntVector) -> IntVector:
        """Coordinates of v in the complement basis; v must lie in ker<alpha, .>."""
        if self.alpha.dot(v) != 0:
            raise DegenerateInputError("vector is not in the kernel of alpha")
        x = solve_exact(self.complement.transpose(), v)
        if x is None:
            raise ConsistencyError("kernel vector has no integral coordinates in the basis")
        return x


def validate_star(p: SimplePolytope, lam: CharacteristicFunction) -> ValidationReport:
    """Determinant condition at vertices, basis-extension condition at faces."""
    entries: list[CheckResult] = []
    missing = [f for f in p.facets if f not in lam.values]
    if missing:
        for f in missing:
            entries.append(CheckResult("lambda-domain", "fail", f"facet {f} has no lambda value"))
        return ValidationReport(tuple(entries))
    entries.append(CheckResult("lambda-domain", "pass"))
    bad_dim = [f for f in p.facets if lam[f].dim != p.n]
    if bad_dim:
        for f in bad_dim:
            entries.append(CheckResult("lambda-dim", "fail", f"lambda({f}) has dim {lam[f].dim}"))
        return ValidationReport(tuple(entries))
    entries.append(CheckResult("lambda-dim", "pass"))

    vertex_bad = []
    for v in p._vertex_list:
        det = determinant(stack_rows([lam[f] for f in sorted(v)]))
        if det not in (1, -1):
            vertex_bad.append(f"vertex {sorted(v)}: determinant {det}")
    if vertex_bad:
        for d in vertex_bad:
            entries.append(CheckResult("vertex-determinant", "fail", d))
    else:
        entries.append(CheckResult("vertex-determinant", "pass"))

    face_bad = []
    for k in range(1, p.n):
        for face in p.faces_of_codim(k):
            vs = [lam[f] for f in sorted(face)]
            if not is_unimodular_extension(vs, p.n):
                face_bad.append(f"face {sorted(face)}: values do not extend to a basis")
    if face_bad:
        for d in face_bad:
            entries.append(CheckResult("face-extension", "fail", d))
    else:
        entries.append(CheckResult("face-extension", "pass"))
    return ValidationReport(tuple(entries))


def vertex_weights(
    p: SimplePolytope, lam: CharacteristicFunction, vertex: Iterable[str]
) -> list[IntVector]:
    """Dual basis to the lambda values at a vertex, in sorted facet order."""
    v = sorted(str(f) for f in vertex)
    if frozenset(v) not in set(p.vertices):
        raise InputFormatError(f"{v} is not a vertex of the polytope")
    mat = stack_rows([lam[f] for f in v])
    det = determinant(mat)
    if det not in (1, -1):
        raise StarConditionError(f"vertex {v}: lambda determinant {det}")
    out = []
    for i in range(p.n):
        e = IntVector(tuple(1 if t == i else 0 for t in range(p.n)))
        x = solve_exact(mat, e)
        assert x is not None
        out.append(x)
    return out


def find_strict_subtorus(
    p: SimplePolytope, lam: CharacteristicFunction, search_bound: int = 3
) -> list[SubtorusChoice]:
    """All primitive alpha with entries within the bound pairing to +-1 with every facet.

    Vectors are canonicalized (first nonzero entry positive), so the list is
    deterministic; an empty result is a valid outcome.
    """
    if any(f not in lam.values for f in p.facets):
        raise InputFormatError("lambda must cover every facet")
    lams = [lam[f] for f in sorted(p.facets)]
    out = []
    seen = set()
    for cand in product(range(-search_bound, search_bound + 1), repeat=p.n):
        v = IntVector(cand)
        if v.is_zero() or v.content() != 1:
            continue
        lead = next(x for x in cand if x != 0)
        if lead < 0:
            continue  # +-v are the same subtorus; keep the canonical sign
        if all(abs(v.dot(l)) == 1 for l in lams):
            if cand not in seen:
                seen.add(cand)
                out.append(SubtorusChoice.from_alpha(v))
    return out


def induced_mu(lam1: IntVector, lam2: IntVector, st: SubtorusChoice) -> IntVector:
    """Circle direction of the intersection of two facet circles with the subtorus.

    Primitive reduction of <alpha, lam2> lam1 - <alpha, lam1> lam2, written
    in the complement basis.
    """
    p1, p2 = st.pairing(lam1), st.pairing(lam2)
    if p1 == 0 and p2 == 0:
        raise DegenerateInputError(
            "both facet circles lie in the subtorus: intersection is not a circle"
        )
    u = lam1.scale(p2) - lam2.scale(p1)
    if u.is_zero():
        raise DegenerateInputError("facet circles coincide")
    return st.kernel_coordinates(primitive(u))


def polytope_sponge(p: SimplePolytope) -> SpongeComplex:
    """Codimension-two skeleton of the polytope boundary as a sponge.

    Cells are realized facet subsets of size 2..n; incidence signs come from
    the fundamental-cycle orientation procedure, so they are deterministic.
    """
    def cid(face: frozenset[str]) -> str:
        return "g:" + ",".join(sorted(face))

    cells: list[tuple[str, int]] = []
    covers: dict[str, list[str]] = {}
    realized: dict[int, set[frozenset[str]]] = {}
    for k in range(2, p.n + 1):
        realized[k] = set(p.faces_of_codim(k))
        for face in realized[k]:
            cells.append((cid(face), p.n - k))
    for k in range(2, p.n):
        for face in realized[k]:
            subs = []
            for bigger in realized[k + 1]:
                if face < bigger:
                    subs.append(cid(bigger))
            covers[cid(face)] = sorted(subs)
    inc = signed_incidence(cells, covers)
    return SpongeComplex(
        n=p.n,
        cells=tuple(Cell(c, d) for c, d in sorted(cells)),
        incidence=inc,
        ambient="sphere",
    )


def reduce(
    p: SimplePolytope, lam: CharacteristicFunction, st: SubtorusChoice
) -> CharacteristicData:
    """Characteristic data of the subtorus action on a quasitoric datum.

    The sponge is the codimension-two skeleton of the boundary, mu comes
    from the facet-pair intersections, and Euler signs are the Hopf signs of
    the induced vertex weight systems, oriented coherently so the facet
    chain is a cycle.  The Hopf sign of every codimension-two face is
    computed at all of its vertices and must agree.
    """
    star = validate_star(p, lam)
    if not star.ok:
        raise StarConditionError(
            "; ".join(e.detail for e in star.failures()[:4]) or "star condition fails"
        )
    pairings = {f: st.pairing(lam[f]) for f in p.facets}
    bad = [f for f, x in pairings.items() if abs(x) != 1]
    if bad:
        raise PreconditionError(
            f"subtorus is not strict: pairings with {sorted(bad)} are not +-1"
        )
    sponge = polytope_sponge(p)

    charts: dict[str, Chart] = {}
    for v in p._vertex_list:
        vid = "g:" + ",".join(sorted(v))
        facets = sorted(v)
        ws = induced_weights([lam[f] for f in facets], st.alpha)
        # the ray dual to facet f is the edge of the polytope avoiding f
        rays = tuple("g:" + ",".join(sorted(set(facets) - {f})) for f in facets)
        charts[vid] = Chart(ws, rays)

    # cross-vertex consistency of the Hopf sign, stated directly on pairings
    for face in p.faces_of_codim(2):
        f, g = sorted(face)
        signs = set()
        for v in p.vertices:
            if face <= v:
                signs.add(pairings[f] * pairings[g])
        if len(signs) != 1:
            raise ConsistencyError(f"Hopf sign of face {sorted(face)} differs across vertices")

    cd = data_from_charts(sponge, charts, Ambient("sphere"))
    # mu must match the facet-pair construction
    for face in p.faces_of_codim(2):
        f, g = sorted(face)
        fid = "g:" + ",".join(sorted(face))
        expect = induced_mu(lam[f], lam[g], st)
        if primitive(expect) != primitive(cd.mu[fid]):
            raise ConsistencyError(f"chart mu and facet-pair mu disagree on {fid}")
    return cd


def coloring_pullback(p: SimplePolytope, coloring: Mapping[str, int]) -> CharacteristicFunction:
    """Characteristic function with basis-vector values from a proper coloring."""
    missing = [f for f in p.facets if f not in coloring]
    if missing:
        raise InputFormatError(f"coloring missing facets {sorted(missing)}")
    for f, c in coloring.items():
        if not 1 <= int(c) <= p.n:
            raise ColoringError(f"color of {f} must lie in 1..{p.n}, got {c}")
    for f, g in combinations(sorted(p.facets), 2):
        if p.adjacent_facets(f, g) and coloring[f] == coloring[g]:
            raise ColoringError(f"adjacent facets {f}, {g} share color {coloring[f]}")
    values = {
        f: IntVector(tuple(1 if t == coloring[f] - 1 else 0 for t in range(p.n)))
        for f in p.facets
    }
    lam = CharacteristicFunction(values)
    rep = validate_star(p, lam)
    if not rep.ok:
        raise ConsistencyError("coloring pullback failed the basis condition")
    return lam


@dataclass(frozen=True, eq=False)
class CellManifold:
    """Simple cell subdivision of a closed (n-1)-manifold.

    Cells of dimension up to n-1 with cover lists; every k-cell must lie in
    exactly n-k top cells.  Only the combinatorics is stored.
    """

    n: int
    cells: tuple[tuple[str, int], ...]
    covers: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        object.__setattr__(
            self, "cells", tuple((str(c), int(d)) for c, d in self.cells)
        )
        object.__setattr__(
            self, "covers", {str(k): tuple(str(x) for x in v) for k, v in dict(self.covers).items()}
        )

    @cached_property
    def dims(self) -> dict[str, int]:
        return {c: d for c, d in self.cells}

    @cached_property
    def top_cells(self) -> tuple[str, ...]:
        return tuple(sorted(c for c, d in self.cells if d == self.n - 1))

    def closure(self, cell: str) -> frozenset[str]:
        seen = {cell}
        frontier = [cell]
        while frontier:
            cur = frontier.pop()
            for sub in self.covers.get(cur, ()):
                if sub not in seen:
                    seen.add(sub)
                    frontier.append(sub)
        return frozenset(seen)

    def top_cells_containing(self, cell: str) -> tuple[str, ...]:
        return tuple(sorted(t for t in self.top_cells if cell in self.closure(t)))

    def validate_simple(self) -> ValidationReport:
        entries: list[CheckResult] = []
        bad = []
        for c, d in self.cells:
            want = self.n - d
            got = len(self.top_cells_containing(c))
            if got != want:
                bad.append(f"{d}-cell {c} lies in {got} top cells, expected {want}")
        if bad:
            for b in bad:
                entries.append(CheckResult("simple-subdivision", "fail", b))
        else:
            entries.append(CheckResult("simple-subdivision", "pass"))
        return ValidationReport(tuple(entries))

    def skeleton_sponge(self, ambient: str = "product") -> SpongeComplex:
        cells = [(c, d) for c, d in self.cells if d <= self.n - 2]
        ids = {c for c, _ in cells}
        covers = {
            c: sorted(x for x in self.covers.get(c, ()) if x in ids)
            for c, d in cells
            if d >= 1
        }
        inc = signed_incidence(cells, covers)
        return SpongeComplex(
            n=self.n,
            cells=tuple(Cell(c, d) for c, d in sorted(cells)),
            incidence=inc,
            ambient=ambient,
        )


def cell_manifold_data(
    m: CellManifold,
    lam: Mapping[str, IntVector] | CharacteristicFunction,
    st: SubtorusChoice | None = None,
    search_bound: int = 3,
) -> CharacteristicData:
    """Characteristic data of the subtorus action over a product orbit space.

    lam assigns primitive vectors in Z^n to the top cells of m; at every
    cell the values of the top cells through it must extend to a basis.
    When st is omitted, the first strict subtorus within the search bound is
    used.  The result carries the boundary-trivial product ambient.
    """
    rep = m.validate_simple()
    if not rep.ok:
        raise ValidationError("; ".join(e.detail for e in rep.failures()[:4]))
    values = lam.values if isinstance(lam, CharacteristicFunction) else {
        str(k): IntVector(tuple(v)) for k, v in dict(lam).items()
    }
    missing = [t for t in m.top_cells if t not in values]
    if missing:
        raise InputFormatError(f"lambda missing top cells {missing}")
    for c, d in m.cells:
        tops = m.top_cells_containing(c)
        if not is_unimodular_extension([values[t] for t in tops], m.n):
            raise StarConditionError(f"top-cell values at {c} do not extend to a basis")
    if st is None:
        lams = [values[t] for t in m.top_cells]
        found = None
        for cand in product(range(-search_bound, search_bound + 1), repeat=m.n):
            v = IntVector(cand)
            if v.is_zero() or v.content() != 1:
                continue
            lead = next(x for x in cand if x != 0)
            if lead < 0:
                continue
            if all(abs(v.dot(l)) == 1 for l in lams):
                found = SubtorusChoice.from_alpha(v)
                break
        if found is None:
            raise DegenerateInputError("no strict subtorus within the search bound")
        st = found
    else:
        bad = [t for t in m.top_cells if abs(st.pairing(values[t])) != 1]
        if bad:
            raise PreconditionError(f"subtorus is not strict on top cells {bad}")

    sponge = m.skeleton_sponge()
    edges_by_vertex: dict[str, list[str]] = {}
    for c, d in m.cells:
        if d == 1:
            for v in m.closure(c):
                if m.dims[v] == 0:
                    edges_by_vertex.setdefault(v, []).append(c)
    charts: dict[str, Chart] = {}
    for c, d in m.cells:
        if d != 0:
            continue
        tops = m.top_cells_containing(c)
        ws = induced_weights([values[t] for t in tops], st.alpha)
        rays: list[str] = []
        for i, t in enumerate(tops):
            # the ray dual to top cell t is the edge at c missing exactly t
            want = set(tops) - {t}
            matches = [
                e
                for e in edges_by_vertex.get(c, [])
                if set(m.top_cells_containing(e)) == want
            ]
            if len(matches) != 1 and m.n >= 3:
                raise ConsistencyError(
                    f"vertex {c}: expected one edge avoiding top cell {t}, found {len(matches)}"
                )
            rays.append(matches[0] if matches else f"_missing:{c}:{i}")
        charts[c] = Chart(ws, tuple(rays))
    cd = data_from_charts(sponge, charts, Ambient("product", boundary_trivial=True))
    return cd
