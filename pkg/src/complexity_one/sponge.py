"""Combinatorial sponge complexes.

A sponge for parameter n is a regular cell complex of dimension n-2 whose
local structure matches the truncated Boolean model: every i-cell lies in
exactly C(n-i, d-i) cells of dimension d.  Cells carry signed incidence;
"type" of a point is implemented as the dimension of its cell, and the
filtration is the dimension filtration.

Complexes are immutable after construction and all queries are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .errors import (
    ConsistencyError,
    DegenerateInputError,
    DimensionMismatchError,
    InputFormatError,
    ValidationError,
)
from .lattice import IntMatrix, IntVector, integer_kernel, smith_normal_form


@dataclass(frozen=True)
class Cell:
    id: str
    dim: int
    label: str = ""


@dataclass(frozen=True)
class CheckResult:
    check: str
    status: str  # "pass" | "fail"
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    entries: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(e for e in self.entries if e.status != "pass")

    def to_dict(self) -> list[dict]:
        return [{"check": e.check, "status": e.status, "detail": e.detail} for e in self.entries]


@dataclass(frozen=True, eq=False)
class SpongeComplex:
    """Regular cell complex of dimension n-2 with signed incidence.

    incidence maps each cell of dim >= 1 to ((subcell_id, +-1), ...) over its
    boundary cells of one dimension lower.
    """

    n: int
    cells: tuple[Cell, ...]
    incidence: Mapping[str, tuple[tuple[str, int], ...]]
    ambient: str = "abstract"

    def __post_init__(self):
        cells = tuple(
            c if isinstance(c, Cell) else Cell(str(c[0]), int(c[1]), str(c[2]) if len(c) > 2 else "")
            for c in self.cells
        )
        object.__setattr__(self, "cells", cells)
        inc = {
            str(k): tuple((str(i), int(s)) for i, s in v) for k, v in dict(self.incidence).items()
        }
        object.__setattr__(self, "incidence", inc)
        ids = [c.id for c in cells]
        if len(set(ids)) != len(ids):
            raise InputFormatError("duplicate cell ids")

    @cached_property
    def by_id(self) -> dict[str, Cell]:
        return {c.id: c for c in self.cells}

    @cached_property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=0)

    def cells_of_dim(self, d: int) -> tuple[Cell, ...]:
        return tuple(c for c in sorted(self.cells, key=lambda c: c.id) if c.dim == d)

    @cached_property
    def facet_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.cells_of_dim(self.n - 2))

    def boundary(self, cell_id: str) -> tuple[tuple[str, int], ...]:
        return self.incidence.get(cell_id, ())

    @cached_property
    def _cofaces(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {c.id: [] for c in self.cells}
        for cid, bnd in self.incidence.items():
            for sub, _ in bnd:
                if sub in out:
                    out[sub].append(cid)
        return {k: tuple(sorted(v)) for k, v in out.items()}

    def upper_set(self, cell_id: str) -> frozenset[str]:
        """All cells whose closure contains the given cell (including itself)."""
        if cell_id not in self.by_id:
            raise InputFormatError(f"unknown cell id {cell_id!r}")
        seen = {cell_id}
        frontier = [cell_id]
        while frontier:
            nxt = []
            for c in frontier:
                for up in self._cofaces.get(c, ()):
                    if up not in seen:
                        seen.add(up)
                        nxt.append(up)
            frontier = nxt
        return frozenset(seen)

    def facets_containing(self, cell_id: str) -> tuple[str, ...]:
        top = self.n - 2
        return tuple(sorted(i for i in self.upper_set(cell_id) if self.by_id[i].dim == top))

    def boundary_matrix(self, d: int) -> IntMatrix:
        """Boundary operator from d-chains to (d-1)-chains, cells sorted by id."""
        rows = [c.id for c in self.cells_of_dim(d - 1)]
        cols = [c.id for c in self.cells_of_dim(d)]
        index = {cid: i for i, cid in enumerate(rows)}
        entries = [[0] * len(cols) for _ in rows]
        for j, cid in enumerate(cols):
            for sub, sign in self.boundary(cid):
                if sub in index:
                    entries[index[sub]][j] += sign
        if not rows or not cols:
            return IntMatrix(len(rows), len(cols), (0,) * (len(rows) * len(cols)))
        return IntMatrix.from_rows(entries)

    def boundary_squared_defects(self) -> list[str]:
        out = []
        for c in sorted(self.cells, key=lambda c: c.id):
            if c.dim < 2:
                continue
            acc: dict[str, int] = {}
            for sub, sign in self.boundary(c.id):
                for sub2, sign2 in self.boundary(sub):
                    acc[sub2] = acc.get(sub2, 0) + sign * sign2
            bad = {k: v for k, v in acc.items() if v != 0}
            if bad:
                out.append(f"d(d({c.id})) != 0 at {sorted(bad)}")
        return out


@dataclass(frozen=True)
class LocalModel:
    """Truncated Boolean lattice: subsets of {1..n} of size at most n-2.

    The empty set is the origin; a face I is contained in J iff I is a
    subset of J, and dim(I) = |I|.
    """

    n: int
    faces: tuple[frozenset[int], ...]

    def contains(self, small: frozenset[int], big: frozenset[int]) -> bool:
        return small <= big

    def faces_of_dim(self, d: int) -> tuple[frozenset[int], ...]:
        return tuple(f for f in self.faces if len(f) == d)

    def face_counts(self) -> tuple[int, ...]:
        return tuple(len(self.faces_of_dim(d)) for d in range(self.n - 1))


def local_model(n: int) -> LocalModel:
    """Face poset of the corner-of-coordinate-subspaces model in dimension n-2."""
    if n < 2:
        raise DegenerateInputError(f"local model needs n >= 2, got {n}")
    faces = []
    for size in range(0, n - 1):
        for sub in combinations(range(1, n + 1), size):
            faces.append(frozenset(sub))
    return LocalModel(n=n, faces=tuple(faces))


def signed_incidence(
    cells: Sequence[tuple[str, int]], covers: Mapping[str, Sequence[str]]
) -> dict[str, tuple[tuple[str, int], ...]]:
    """Choose incidence signs for a regular cell poset, bottom-up.

    covers[c] lists the cells of one dimension lower in the boundary of c.
    Each 1-cell becomes high-endpoint minus low (a single endpoint gets -1);
    each higher cell's signs are the unique fundamental cycle of its
    boundary subcomplex, pinned so the lexicographically least boundary cell
    has coefficient +1.  Raises ConsistencyError when a boundary is not a
    +-1 cycle (the poset is not a regular complex).
    """
    dims = {cid: d for cid, d in cells}
    inc: dict[str, tuple[tuple[str, int], ...]] = {}
    closure: dict[str, set[str]] = {cid: {cid} for cid, _ in cells}

    for cid, d in sorted(cells, key=lambda t: (t[1], t[0])):
        below = sorted(covers.get(cid, ()))
        for b in below:
            if b not in dims or dims[b] != d - 1:
                raise ConsistencyError(f"cover {b!r} of {cid!r} is not one dimension lower")
            closure[cid] |= closure[b]
        if d == 0:
            continue
        if d == 1:
            if len(below) == 2:
                lo, hi = below
                inc[cid] = ((hi, 1), (lo, -1))
            elif len(below) == 1:
                inc[cid] = ((below[0], -1),)
            else:
                raise ConsistencyError(f"1-cell {cid!r} has {len(below)} endpoints")
            continue
        # boundary subcomplex of cid: its (d-1)- and (d-2)-cells
        bsub = below
        lower = sorted({x for b in bsub for x, _ in inc[b]})
        idx = {x: i for i, x in enumerate(lower)}
        if lower:
            mat_rows = [[0] * len(bsub) for _ in lower]
            for j, b in enumerate(bsub):
                for x, s in inc[b]:
                    mat_rows[idx[x]][j] += s
            kernel = integer_kernel(IntMatrix.from_rows(mat_rows))
        else:
            kernel = integer_kernel(IntMatrix(0, len(bsub), ()))
        if len(kernel) != 1:
            raise ConsistencyError(
                f"boundary of {cid!r} has cycle space of rank {len(kernel)}, expected 1"
            )
        cyc = kernel[0]
        if any(abs(x) != 1 for x in cyc):
            raise ConsistencyError(f"boundary of {cid!r} is not a +-1 fundamental cycle")
        if cyc[0] < 0:
            cyc = -cyc
        inc[cid] = tuple((b, cyc[j]) for j, b in enumerate(bsub))
    return inc


def local_model_sponge(n: int) -> SpongeComplex:
    """The local model realized as a sponge complex.

    Face ids: "o" for the origin, "c<i>" for rays, "c<i>.<j>..." above.
    """
    model = local_model(n)
    def fid(face: frozenset[int]) -> str:
        return "o" if not face else "c" + ".".join(str(i) for i in sorted(face))

    cells = [(fid(f), len(f)) for f in model.faces]
    covers: dict[str, list[str]] = {}
    for f in model.faces:
        if f:
            covers[fid(f)] = sorted(fid(f - {i}) for i in f)
    inc = signed_incidence(cells, covers)
    return SpongeComplex(
        n=n,
        cells=tuple(Cell(cid, d) for cid, d in sorted(cells)),
        incidence=inc,
        ambient="abstract",
    )


def validate_sponge(s: SpongeComplex) -> ValidationReport:
    """Check the sponge axioms; violations become report entries, not errors."""
    entries: list[CheckResult] = []

    def check(name: str, violations: list[str]) -> None:
        if violations:
            for v in violations:
                entries.append(CheckResult(name, "fail", v))
        else:
            entries.append(CheckResult(name, "pass"))

    dim_bad = []
    if s.n < 2:
        dim_bad.append(f"n must be >= 2, got {s.n}")
    for c in s.cells:
        if not 0 <= c.dim <= s.n - 2:
            dim_bad.append(f"cell {c.id} has dim {c.dim} outside 0..{s.n - 2}")
    check("cell-dims", dim_bad)

    structure_bad = []
    for c in s.cells:
        bnd = s.boundary(c.id)
        if c.dim == 0:
            if bnd:
                structure_bad.append(f"0-cell {c.id} has boundary entries")
            continue
        if not bnd:
            structure_bad.append(f"{c.dim}-cell {c.id} has no boundary")
            continue
        seen = set()
        for sub, sign in bnd:
            if sub not in s.by_id:
                structure_bad.append(f"{c.id} references unknown cell {sub}")
                continue
            if s.by_id[sub].dim != c.dim - 1:
                structure_bad.append(f"{c.id} (dim {c.dim}) lists {sub} of dim {s.by_id[sub].dim}")
            if sign not in (1, -1):
                structure_bad.append(f"incidence {c.id}->{sub} has coefficient {sign}")
            if sub in seen:
                structure_bad.append(f"{c.id} lists {sub} twice")
            seen.add(sub)
    for key in s.incidence:
        if key not in s.by_id:
            structure_bad.append(f"incidence key {key} is not a cell")
    check("incidence-structure", structure_bad)

    check("boundary-squared", s.boundary_squared_defects())

    count_bad = []
    if not structure_bad:
        for c in s.cells:
            upper = s.upper_set(c.id)
            for d in range(c.dim, s.n - 1):
                want = comb(s.n - c.dim, d - c.dim)
                got = sum(1 for x in upper if s.by_id[x].dim == d)
                if got != want:
                    count_bad.append(
                        f"cell {c.id} (dim {c.dim}) lies in {got} cells of dim {d}, expected {want}"
                    )
    check("upper-counts", count_bad)
    return ValidationReport(tuple(entries))


def filtration(s: SpongeComplex) -> list[frozenset[str]]:
    """Cumulative cell-id sets Z_0 <= ... <= Z_(n-2), by cell dimension."""
    out = []
    acc: set[str] = set()
    for k in range(0, s.n - 1):
        acc |= {c.id for c in s.cells if c.dim == k}
        out.append(frozenset(acc))
    return out


@dataclass(frozen=True)
class HomologyResult:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti))


def homology(s: SpongeComplex) -> HomologyResult:
    """Integral cellular homology from Smith forms of the boundary matrices."""
    defects = s.boundary_squared_defects()
    if defects:
        raise ValidationError("incidence is not a chain complex: " + "; ".join(defects))
    top = max(s.n - 2, s.dim)
    counts = [len(s.cells_of_dim(d)) for d in range(top + 1)]
    ranks = [0] * (top + 2)
    torsion: list[tuple[int, ...]] = [()] * (top + 1)
    for d in range(1, top + 1):
        bd = s.boundary_matrix(d)
        if bd.rows and bd.cols:
            dec = smith_normal_form(bd)
            ranks[d] = dec.rank
            tor = dec.torsion()
            if tor:
                torsion[d - 1] = tor
    betti = tuple(counts[d] - ranks[d] - ranks[d + 1] for d in range(top + 1))
    chi_cells = sum((-1) ** d * counts[d] for d in range(top + 1))
    chi_betti = sum((-1) ** d * b for d, b in enumerate(betti))
    if chi_cells != chi_betti:
        raise ConsistencyError(f"Euler characteristic mismatch: {chi_cells} vs {chi_betti}")
    return HomologyResult(betti=betti, torsion=tuple(torsion))


def weighted_cycle_check(s: SpongeComplex, coeffs: Mapping[str, IntVector]) -> bool:
    """True iff the facet chain with the given vector coefficients is a cycle."""
    facets = set(s.facet_ids)
    keys = set(coeffs)
    if keys != facets:
        missing = sorted(facets - keys)
        extra = sorted(keys - facets)
        raise InputFormatError(
            f"coefficients must cover exactly the facets; missing {missing}, extra {extra}"
        )
    dims = {v.dim for v in coeffs.values()}
    if dims and dims != {s.n - 1}:
        raise DimensionMismatchError(f"coefficients must have dim {s.n - 1}")
    acc: dict[str, IntVector] = {}
    for fid in s.facet_ids:
        vecf = coeffs[fid]
        for sub, sign in s.boundary(fid):
            cur = acc.get(sub)
            term = vecf.scale(sign)
            acc[sub] = term if cur is None else cur + term
    return all(v.is_zero() for v in acc.values())


@dataclass(frozen=True)
class FaceStar:
    base: str
    cell_dims: tuple[tuple[str, int], ...]
    relation: tuple[tuple[str, str], ...]  # (lower id, upper id) covers within the star
    is_local: bool


def face_star(s: SpongeComplex, cell_id: str) -> FaceStar:
    """Upper set of a cell plus a flag for local-model shape.

    The flag is true iff the star is poset-isomorphic to the faces of the
    local model containing a fixed face of the same dimension, i.e. to the
    truncated Boolean lattice on n-k elements (k the cell dimension).
    """
    if cell_id not in s.by_id:
        raise InputFormatError(f"unknown cell id {cell_id!r}")
    k = s.by_id[cell_id].dim
    star = sorted(s.upper_set(cell_id))
    dims = {x: s.by_id[x].dim for x in star}
    covers = []
    star_set = set(star)
    for x in star:
        for sub, _ in s.boundary(x):
            if sub in star_set:
                covers.append((sub, x))

    m = s.n - k  # ground-set size of the model star
    target_elems = []
    for size in range(0, s.n - 1 - k):  # relative dims 0 .. (n-2)-k
        target_elems.extend(frozenset(c) for c in combinations(range(m), size))
    by_size: dict[int, list[frozenset[int]]] = {}
    for t in target_elems:
        by_size.setdefault(len(t), []).append(t)

    order = sorted(star, key=lambda x: (dims[x], x))
    cover_set = {(lo, hi) for lo, hi in covers}
    same_rank_below: dict[str, list[str]] = {
        x: [y for y in star if dims[y] == dims[x] - 1] for x in star
    }

    assign: dict[str, frozenset[int]] = {}
    used: set[frozenset[int]] = set()

    def backtrack(pos: int) -> bool:
        if pos == len(order):
            return True
        x = order[pos]
        size = dims[x] - k
        if size < 0 or size not in by_size:
            return False
        for cand in by_size[size]:
            if cand in used:
                continue
            # cover pattern against every assigned cell one rank down
            ok = True
            for lo in same_rank_below[x]:
                img = assign.get(lo)
                if img is None:
                    continue
                if (img < cand) != ((lo, x) in cover_set):
                    ok = False
                    break
            if not ok:
                continue
            assign[x] = cand
            used.add(cand)
            if backtrack(pos + 1):
                return True
            del assign[x]
            used.discard(cand)
        return False

    counts_match = len(star) == len(target_elems) and all(
        sum(1 for x in star if dims[x] == k + t) == len(by_size.get(t, []))
        for t in range(0, s.n - 1 - k)
    )
    is_local = counts_match and backtrack(0)

    return FaceStar(
        base=cell_id,
        cell_dims=tuple((x, dims[x]) for x in order),
        relation=tuple(sorted(covers)),
        is_local=is_local,
    )
