"""Characteristic data on sponge complexes.

A characteristic datum assigns to every sponge facet a primitive circle
direction mu(F) in Z^(n-1) and a sign k(F); the product k(F) * mu(F) is the
local Euler coefficient of the facet.  Validation covers the rank
conditions on stabilizer spans, the three-term vanishing relation at every
codimension-one face of the sponge, and the cycle property of the
assembled facet chain.

The global Euler class is represented by this facet-local data plus the
assembled chain; nothing topological is constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (
    ConsistencyError,
    DegenerateInputError,
    InputFormatError,
    PreconditionError,
    ValidationError,
)
from .lattice import (
    IntVector,
    hermite_normal_form,
    integer_kernel,
    primitive,
    rank as lattice_rank,
    stack_rows,
)
from .sponge import (
    CheckResult,
    SpongeComplex,
    ValidationReport,
    local_model_sponge,
    validate_sponge,
    weighted_cycle_check,
)
from .weights import WeightSystem, cramer_coefficients, is_strictly_appropriate


AMBIENT_KINDS = ("sphere", "product", "abstract")


@dataclass(frozen=True)
class Ambient:
    """Orbit-space descriptor: a sphere, a product M x D^2, or abstract.

    For the product kind, boundary_trivial records that the free part over
    the boundary is a trivial bundle; with that flag the facet-local data
    determines the Euler class uniquely.
    """

    kind: str
    boundary_trivial: bool = True

    def __post_init__(self):
        if self.kind not in AMBIENT_KINDS:
            raise InputFormatError(f"ambient kind must be one of {AMBIENT_KINDS}")


@dataclass(frozen=True, eq=False)
class CharacteristicData:
    n: int
    sponge: SpongeComplex
    mu: Mapping[str, IntVector]
    euler_sign: Mapping[str, int]
    ambient: Ambient = Ambient("abstract")

    def __post_init__(self):
        object.__setattr__(
            self, "mu", {str(k): IntVector(tuple(v)) for k, v in dict(self.mu).items()}
        )
        object.__setattr__(
            self, "euler_sign", {str(k): int(v) for k, v in dict(self.euler_sign).items()}
        )

    def euler_coefficient(self, facet_id: str) -> IntVector:
        return self.mu[facet_id].scale(self.euler_sign[facet_id])


@dataclass(frozen=True)
class OrbitType:
    face_id: str | None  # None stands for the free stratum
    stabilizer_span: tuple[IntVector, ...]
    orbit_dim: int
    quotient_rank: int


def validate_mu(cd: CharacteristicData) -> ValidationReport:
    """Rank conditions for the characteristic map, per face.

    For a face of dimension k, the mu values of the facets containing it
    must span a rank n-1-k sublattice, and distinct facets through a common
    face must carry distinct directions.
    """
    entries: list[CheckResult] = []
    sponge_report = validate_sponge(cd.sponge)
    entries.append(
        CheckResult(
            "sponge",
            "pass" if sponge_report.ok else "fail",
            "" if sponge_report.ok else "; ".join(e.detail for e in sponge_report.failures()[:4]),
        )
    )
    if not sponge_report.ok:
        return ValidationReport(tuple(entries))

    facets = set(cd.sponge.facet_ids)
    domain_bad = []
    for fid in sorted(facets - set(cd.mu)):
        domain_bad.append(f"facet {fid} has no mu value")
    for fid in sorted(set(cd.mu) - facets):
        domain_bad.append(f"mu defined on non-facet {fid}")
    for fid in sorted(facets & set(cd.mu)):
        v = cd.mu[fid]
        if v.dim != cd.n - 1:
            domain_bad.append(f"mu({fid}) has dim {v.dim}, expected {cd.n - 1}")
        elif v.is_zero():
            domain_bad.append(f"mu({fid}) is zero")
        elif not v.is_primitive():
            domain_bad.append(f"mu({fid}) is not primitive")
    if entries_and(domain_bad, entries, "mu-domain"):
        return ValidationReport(tuple(entries))

    rank_bad = []
    for cell in sorted(cd.sponge.cells, key=lambda c: c.id):
        through = cd.sponge.facets_containing(cell.id)
        vs = [cd.mu[f] for f in through]
        want = cd.n - 1 - cell.dim
        got = lattice_rank(stack_rows(vs, cols=cd.n - 1)) if vs else 0
        if got != want:
            rank_bad.append(f"face {cell.id} (dim {cell.dim}): mu-span rank {got}, expected {want}")
        for a in range(len(through)):
            for b in range(a + 1, len(through)):
                if lattice_rank(stack_rows([vs[a], vs[b]])) != 2:
                    rank_bad.append(
                        f"facets {through[a]}, {through[b]} share face {cell.id} with parallel mu"
                    )
    entries_and(rank_bad, entries, "mu-rank")
    return ValidationReport(tuple(entries))


def entries_and(violations: list[str], entries: list[CheckResult], name: str) -> bool:
    if violations:
        for v in violations:
            entries.append(CheckResult(name, "fail", v))
        return True
    entries.append(CheckResult(name, "pass"))
    return False


def compatibility_check(cd: CharacteristicData) -> bool:
    """Representational consistency of the local Euler data.

    In this representation the local class on a facet is euler_sign * mu by
    construction, so the check verifies the representation itself: every
    facet has a primitive nonzero mu and a sign in {+1, -1}.
    """
    for fid in cd.sponge.facet_ids:
        v = cd.mu.get(fid)
        if v is None or v.dim != cd.n - 1 or v.is_zero() or not v.is_primitive():
            return False
        if cd.euler_sign.get(fid) not in (1, -1):
            return False
    return True


def _vanishing_pattern(vectors: Sequence[IntVector]) -> tuple[int, ...] | None:
    """The sign pattern (e0=+1, e1, e2) with e0*v0 + e1*v1 + e2*v2 = 0, if any."""
    v0, v1, v2 = vectors
    for e1 in (1, -1):
        for e2 in (1, -1):
            if (v0 + v1.scale(e1) + v2.scale(e2)).is_zero():
                return (1, e1, e2)
    return None


def cocycle_check(cd: CharacteristicData) -> ValidationReport:
    """Three-term relations at every codimension-one face of the sponge.

    At each (n-3)-cell the three incident facet directions must admit a
    +-1-signed vanishing combination, and the stored signs, twisted by the
    incidence orientation, must realize it up to one global sign per face.
    """
    entries: list[CheckResult] = []
    codim1 = cd.sponge.cells_of_dim(cd.n - 3) if cd.n >= 3 else ()
    if not codim1:
        entries.append(CheckResult("cocycle", "pass", "no codimension-one faces"))
        return ValidationReport(tuple(entries))
    bad = []
    for cell in codim1:
        through = cd.sponge.facets_containing(cell.id)
        if len(through) != 3:
            bad.append(f"face {cell.id} lies in {len(through)} facets, expected 3")
            continue
        mus = [cd.mu[f] for f in through]
        pattern = _vanishing_pattern(mus)
        if pattern is None:
            bad.append(f"face {cell.id}: no +-1 combination of mu values vanishes")
            continue
        inc = {}
        for f in through:
            sign = dict(cd.sponge.boundary(f)).get(cell.id)
            inc[f] = sign if sign is not None else 0
        total = mus[0].scale(0)
        for f, v in zip(through, mus):
            total = total + v.scale(inc[f] * cd.euler_sign[f])
        if not total.is_zero():
            bad.append(
                f"face {cell.id}: stored signs do not match the vanishing pattern "
                f"(facets {', '.join(through)})"
            )
    entries_and(bad, entries, "cocycle")
    return ValidationReport(tuple(entries))


def orbit_types(cd: CharacteristicData) -> list[OrbitType]:
    """Stabilizer sublattice basis and orbit dimension per face, plus the free stratum.

    The basis is the Hermite form of the facet directions through the face,
    so it generates their integer span deterministically.
    """
    out = []
    for cell in sorted(cd.sponge.cells, key=lambda c: (c.dim, c.id)):
        vs = [cd.mu[f] for f in cd.sponge.facets_containing(cell.id)]
        if vs:
            h, _ = hermite_normal_form(stack_rows(vs))
            basis = tuple(h.row(i) for i in range(h.rows) if not h.row(i).is_zero())
        else:
            basis = ()
        r = len(basis)
        out.append(
            OrbitType(
                face_id=cell.id,
                stabilizer_span=basis,
                orbit_dim=cd.n - 1 - r,
                quotient_rank=cd.n - 1 - r,
            )
        )
    out.append(OrbitType(face_id=None, stabilizer_span=(), orbit_dim=cd.n - 1, quotient_rank=cd.n - 1))
    return out


@dataclass(frozen=True)
class EulerCycle:
    chain: Mapping[str, IntVector]
    is_cycle: bool
    determines_class: bool


def assemble_euler_cycle(cd: CharacteristicData) -> EulerCycle:
    """Facet chain k(F) * mu(F) with its cycle flag.

    Refuses (raises ValidationError) when the cocycle relations fail.  The
    determines_class flag is set for spheres and for boundary-trivial
    products, where the facet-local data pins the global class.
    """
    report = cocycle_check(cd)
    if not report.ok:
        raise ValidationError(
            "cocycle relations fail: " + "; ".join(e.detail for e in report.failures()[:4])
        )
    chain = {fid: cd.euler_coefficient(fid) for fid in cd.sponge.facet_ids}
    flag = weighted_cycle_check(cd.sponge, chain)
    determines = cd.ambient.kind == "sphere" or (
        cd.ambient.kind == "product" and cd.ambient.boundary_trivial
    )
    return EulerCycle(chain=chain, is_cycle=flag, determines_class=determines)


def local_euler_from_weights(ws: WeightSystem, i: int, j: int) -> tuple[IntVector, int]:
    """Circle direction and Hopf sign of the facet missing weights i and j.

    The direction is the primitive generator of the rank-one lattice of
    cocharacters vanishing on all other weights and on the i-j relation; it
    is oriented so its pairing vector against the weights is a positive
    multiple of c_j e_i - c_i e_j.  The returned sign is c_i * c_j.
    """
    if i == j:
        raise IndexError("need two distinct weight indices")
    if not 0 <= i < ws.n or not 0 <= j < ws.n:
        raise IndexError(f"indices ({i}, {j}) out of range for n={ws.n}")
    if not is_strictly_appropriate(ws):
        raise PreconditionError("local Euler data needs a strictly appropriate system")
    c = cramer_coefficients(ws).c
    alphas = ws.signed_weights()
    rows = [alphas[m] for m in range(ws.n) if m not in (i, j)]
    rows.append(alphas[i].scale(c[i]) + alphas[j].scale(c[j]))
    kernel = integer_kernel(stack_rows(rows))
    if len(kernel) != 1:
        raise ConsistencyError(f"stabilizer line for pair ({i}, {j}) has rank {len(kernel)}")
    lam = kernel[0]
    # orient so that the pairing with weight i has the sign of c_j
    pair_i = alphas[i].dot(lam)
    if pair_i == 0 or alphas[j].dot(lam) == 0:
        raise ConsistencyError("stabilizer direction pairs to zero with its own weights")
    if pair_i * c[j] < 0:
        lam = -lam
    return lam, c[i] * c[j]


def solve_euler_signs(
    sponge: SpongeComplex, mu: Mapping[str, IntVector], seeds: Mapping[str, int]
) -> dict[str, int]:
    """Orient the facet data so the assembled chain is a cycle.

    The three-term relation at each (n-3)-cell determines the relative signs
    of the facets through it; signs propagate along these constraints, each
    connected component pinned by the seed of its lexicographically least
    facet.  Raises ConsistencyError when no +-1 assignment exists, which
    means the mu data is not coherent.
    """
    facets = list(sponge.facet_ids)
    constraints: dict[str, list[tuple[str, int]]] = {f: [] for f in facets}
    codim1 = sponge.cells_of_dim(sponge.n - 3) if sponge.n >= 3 else ()
    for cell in codim1:
        through = sponge.facets_containing(cell.id)
        if len(through) != 3:
            raise ConsistencyError(f"face {cell.id} lies in {len(through)} facets, expected 3")
        mus = [mu[f] for f in through]
        inc = [dict(sponge.boundary(f))[cell.id] for f in through]
        pattern = _vanishing_pattern(mus)
        if pattern is None:
            raise ConsistencyError(f"face {cell.id}: no +-1 vanishing combination of mu values")
        # need inc[t] * k[t] proportional to pattern[t]
        target = [pattern[t] * inc[t] for t in range(3)]
        for t in range(1, 3):
            rel = target[t] * target[0]
            constraints[through[0]].append((through[t], rel))
            constraints[through[t]].append((through[0], rel))
    signs: dict[str, int] = {}
    for start in sorted(facets):
        if start in signs:
            continue
        signs[start] = seeds.get(start, 1)
        frontier = [start]
        while frontier:
            cur = frontier.pop()
            for other, rel in constraints[cur]:
                want = signs[cur] * rel
                if other in signs:
                    if signs[other] != want:
                        raise ConsistencyError(
                            f"orientation constraints are inconsistent at facet {other}"
                        )
                else:
                    signs[other] = want
                    frontier.append(other)
    return signs


@dataclass(frozen=True)
class Chart:
    """Weight system at a 0-cell with the 1-cell corresponding to each weight."""

    weights: WeightSystem
    rays: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(str(r) for r in self.rays))
        if len(self.rays) != self.weights.n:
            raise DegenerateInputError(
                f"chart has {len(self.rays)} rays for n={self.weights.n}"
            )


def data_from_charts(
    sponge: SpongeComplex,
    charts: Mapping[str, Chart],
    ambient: Ambient,
) -> CharacteristicData:
    """Assemble characteristic data from weight charts at the 0-cells.

    Facet directions and Hopf signs are computed in every adjacent chart and
    must agree; the Euler signs are then oriented to make the facet chain a
    cycle, each orientation component seeded by the Hopf sign of its least
    facet.
    """
    mu: dict[str, IntVector] = {}
    hopf: dict[str, int] = {}
    for fid in sponge.facet_ids:
        closure_vertices = sorted(
            v.id for v in sponge.cells if v.dim == 0 and fid in sponge.upper_set(v.id)
        )
        if not closure_vertices:
            raise ConsistencyError(f"facet {fid} has no vertex in its closure")
        for vid in closure_vertices:
            chart = charts[vid]
            ws = chart.weights
            in_facet = {
                t
                for t, r in enumerate(chart.rays)
                if r in sponge.by_id and fid in sponge.upper_set(r)
            }
            pair = sorted(set(range(ws.n)) - in_facet)
            if len(pair) != 2:
                raise ConsistencyError(
                    f"facet {fid} meets {len(in_facet)} rays at {vid}, cannot form a chart pair"
                )
            direction, sign = local_euler_from_weights(ws, pair[0], pair[1])
            direction = primitive(direction)  # one pinned representative across charts
            if fid in mu:
                if mu[fid] != direction:
                    raise ConsistencyError(
                        f"charts disagree on the direction of facet {fid}"
                    )
                if hopf[fid] != sign:
                    raise ConsistencyError(f"charts disagree on the Hopf sign of facet {fid}")
            else:
                mu[fid] = direction
                hopf[fid] = sign
    signs = solve_euler_signs(sponge, mu, seeds=hopf)
    return CharacteristicData(
        n=sponge.n, sponge=sponge, mu=mu, euler_sign=signs, ambient=ambient
    )


def local_model_data(ws: WeightSystem, ambient: Ambient = Ambient("abstract")) -> CharacteristicData:
    """Characteristic data of a single chart on the local model complex."""
    sponge = local_model_sponge(ws.n)
    rays = tuple(f"c{i + 1}" for i in range(ws.n))
    return data_from_charts(sponge, {"o": Chart(ws, rays)}, ambient)
