"""Equivalence of characteristic data.

Two validated data sets are equivalent when a dimension-preserving cell
bijection of their sponges, a per-cell orientation gauge making the signed
incidences agree, and a single unimodular transformation carry one facet
Euler chain exactly onto the other.  Verdicts are relative to this cellular
notion: Inequivalent never claims topological distinctness of the
underlying pairs, only that no cellular equivalence exists.

The witness returned by the search is re-checked by an independent
verifier that substitutes it into every condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .chardata import CharacteristicData, compatibility_check, validate_mu
from .errors import PreconditionError
from .lattice import (
    IntMatrix,
    IntVector,
    determinant,
    rank as lattice_rank,
    solve_exact,
    stack_rows,
)
from .sponge import SpongeComplex, homology


@dataclass(frozen=True)
class EquivalenceWitness:
    mapping: Mapping[str, str]  # cells of the first sponge -> cells of the second
    gauge: Mapping[str, int]  # per-cell orientation sign of the bijection
    matrix: IntMatrix  # unimodular transform on circle directions
    global_sign: int = 1


@dataclass(frozen=True)
class ComparisonResult:
    verdict: str  # "equivalent" | "inequivalent" | "incomparable"
    witness: EquivalenceWitness | None = None
    certificate: str = ""

    @property
    def equivalent(self) -> bool:
        return self.verdict == "equivalent"


@dataclass(frozen=True)
class Fingerprint:
    """Invariants preserved by every cellular equivalence.

    Equal fingerprints are necessary (not sufficient) for equivalence.
    pair_indices collects, over facet pairs sharing a codimension-one face
    of the sponge, the index of the span of their directions inside its
    saturation; this is unimodular-invariant.
    """

    n: int
    ambient: str
    cells_per_dim: tuple[int, ...]
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    rank_profile: tuple[tuple[int, tuple[int, ...]], ...]
    pair_indices: tuple[int, ...]


def _pair_index(v: IntVector, w: IntVector) -> int:
    """gcd of the 2x2 minors of the stacked pair (0 when parallel)."""
    minors = []
    for a in range(v.dim):
        for b in range(a + 1, v.dim):
            minors.append(v[a] * w[b] - v[b] * w[a])
    return math.gcd(*minors) if minors else 0


def canonical_invariants(cd: CharacteristicData) -> Fingerprint:
    s = cd.sponge
    counts = tuple(len(s.cells_of_dim(d)) for d in range(max(s.n - 1, 1)))
    h = homology(s)
    profile = []
    for d in range(max(s.n - 1, 1)):
        ranks = []
        for cell in s.cells_of_dim(d):
            vs = [cd.mu[f] for f in s.facets_containing(cell.id)]
            ranks.append(lattice_rank(stack_rows(vs, cols=cd.n - 1)) if vs else 0)
        profile.append((d, tuple(sorted(ranks))))
    pair_idx = []
    if s.n >= 3:
        for cell in s.cells_of_dim(s.n - 3):
            through = s.facets_containing(cell.id)
            for a in range(len(through)):
                for b in range(a + 1, len(through)):
                    pair_idx.append(_pair_index(cd.mu[through[a]], cd.mu[through[b]]))
    return Fingerprint(
        n=cd.n,
        ambient=cd.ambient.kind,
        cells_per_dim=counts,
        betti=h.betti,
        torsion=h.torsion,
        rank_profile=tuple(profile),
        pair_indices=tuple(sorted(pair_idx)),
    )


def _require_validated(cd: CharacteristicData, tag: str) -> None:
    # compare works on any well-formed (mu, sign) data; whether the chain is a
    # cycle is a property of the data, not an admissibility requirement
    rep = validate_mu(cd)
    if not rep.ok:
        raise PreconditionError(
            f"{tag} is not validated: " + "; ".join(e.detail for e in rep.failures()[:3])
        )
    if not compatibility_check(cd):
        raise PreconditionError(f"{tag} carries malformed local Euler data")


def _cell_signature(s: SpongeComplex, cid: str) -> tuple:
    """Bijection-invariant local profile: dim plus face/coface counts per dim."""
    dim = s.by_id[cid].dim
    down = tuple(sorted(s.by_id[x].dim for x, _ in s.boundary(cid)))
    upper = s.upper_set(cid)
    up = tuple(sorted(s.by_id[x].dim for x in upper if x != cid))
    return (dim, down, up)


def _poset_bijections(s1: SpongeComplex, s2: SpongeComplex):
    """Yield dim- and cover-preserving cell bijections, most-constrained first."""
    from collections import Counter

    cells1 = sorted((c.id for c in s1.cells), key=lambda x: (-s1.by_id[x].dim, x))
    sig1 = {c.id: _cell_signature(s1, c.id) for c in s1.cells}
    sig2: dict[tuple, list[str]] = {}
    for c in s2.cells:
        sig2.setdefault(_cell_signature(s2, c.id), []).append(c.id)
    if Counter(sig1.values()) != Counter({k: len(v) for k, v in sig2.items()}):
        return
    bnd1 = {c.id: frozenset(x for x, _ in s1.boundary(c.id)) for c in s1.cells}
    bnd2 = {c.id: frozenset(x for x, _ in s2.boundary(c.id)) for c in s2.cells}
    cof1: dict[str, set[str]] = {c.id: set() for c in s1.cells}
    for c in s1.cells:
        for x in bnd1[c.id]:
            cof1[x].add(c.id)

    assign: dict[str, str] = {}
    used: set[str] = set()

    def ok_candidate(c1: str, c2: str) -> bool:
        # one-directional cover preservation; sizes agree via the signatures
        for x in bnd1[c1]:
            if x in assign and assign[x] not in bnd2[c2]:
                return False
        for up in cof1[c1]:
            if up in assign and c2 not in bnd2[assign[up]]:
                return False
        return True

    def backtrack(pos: int):
        if pos == len(cells1):
            yield dict(assign)
            return
        c1 = cells1[pos]
        for c2 in sig2.get(sig1[c1], ()):  # same local profile
            if c2 in used or not ok_candidate(c1, c2):
                continue
            assign[c1] = c2
            used.add(c2)
            yield from backtrack(pos + 1)
            del assign[c1]
            used.discard(c2)

    yield from backtrack(0)


def _solve_gauge(s1: SpongeComplex, s2: SpongeComplex, mapping: Mapping[str, str]):
    """Per-cell signs making the incidences agree; yields each consistent gauge.

    Constraints: inc2(b(C), b(D)) = gauge(C) * gauge(D) * inc1(C, D).  The
    gauge is determined up to one sign per connected component of the
    incidence graph; all completions are enumerated.
    """
    inc1 = {c.id: dict(s1.boundary(c.id)) for c in s1.cells}
    inc2 = {c.id: dict(s2.boundary(c.id)) for c in s2.cells}
    cells = sorted(c.id for c in s1.cells)
    adj: dict[str, list[tuple[str, int]]] = {c: [] for c in cells}
    for c in cells:
        for d, sign1 in inc1[c].items():
            sign2 = inc2[mapping[c]].get(mapping[d])
            if sign2 is None:
                return  # mapping does not even preserve incidence
            rel = sign1 * sign2
            adj[c].append((d, rel))
            adj[d].append((c, rel))
    components: list[list[str]] = []
    base: dict[str, int] = {}
    for start in cells:
        if start in base:
            continue
        comp = [start]
        base[start] = 1
        frontier = [start]
        ok = True
        while frontier:
            cur = frontier.pop()
            for other, rel in adj[cur]:
                want = base[cur] * rel
                if other in base:
                    if base[other] != want:
                        ok = False
                        break
                else:
                    base[other] = want
                    comp.append(other)
                    frontier.append(other)
            if not ok:
                break
        if not ok:
            return
        components.append(comp)

    for flips in range(1 << len(components)):
        gauge = dict(base)
        for c_idx, comp in enumerate(components):
            if flips >> c_idx & 1:
                for x in comp:
                    gauge[x] = -gauge[x]
        yield gauge


def _spanning_facets(cd: CharacteristicData) -> list[str]:
    """Facets whose directions span Q^(n-1), greedily chosen by id."""
    chosen: list[str] = []
    vs: list[IntVector] = []
    for fid in cd.sponge.facet_ids:
        trial = vs + [cd.mu[fid]]
        if lattice_rank(stack_rows(trial)) == len(trial):
            chosen.append(fid)
            vs.append(cd.mu[fid])
        if len(chosen) == cd.n - 1:
            break
    return chosen


def _solve_transform(
    cd1: CharacteristicData,
    cd2: CharacteristicData,
    mapping: Mapping[str, str],
    gauge: Mapping[str, int],
    span: list[str],
) -> IntMatrix | None:
    """Unimodular A with A sigma1(F) = gauge(F) sigma2(b(F)) on all facets."""
    m1 = IntMatrix.from_cols([list(cd1.euler_coefficient(f)) for f in span])
    m2 = IntMatrix.from_cols(
        [list(cd2.euler_coefficient(mapping[f]).scale(gauge[f])) for f in span]
    )
    # solve A m1 = m2 column-wise through the transpose
    rows = []
    m1t = m1.transpose()
    for r in range(cd1.n - 1):
        target = IntVector(tuple(m2.entry(r, j) for j in range(len(span))))
        x = solve_exact(m1t, target)
        if x is None:
            return None
        rows.append(list(x))
    a = IntMatrix.from_rows(rows)
    if determinant(a) not in (1, -1):
        return None
    for fid in cd1.sponge.facet_ids:
        lhs = a @ cd1.euler_coefficient(fid)
        rhs = cd2.euler_coefficient(mapping[fid]).scale(gauge[fid])
        if lhs != rhs:
            return None
    return a


def verify_witness(
    cd1: CharacteristicData, cd2: CharacteristicData, witness: EquivalenceWitness
) -> bool:
    """Independent substitution check of a claimed equivalence."""
    s1, s2 = cd1.sponge, cd2.sponge
    mapping = dict(witness.mapping)
    gauge = dict(witness.gauge)
    ids1 = {c.id for c in s1.cells}
    ids2 = {c.id for c in s2.cells}
    if set(mapping) != ids1 or set(mapping.values()) != ids2 or len(mapping) != len(ids2):
        return False
    if any(gauge.get(c) not in (1, -1) for c in ids1):
        return False
    for c in s1.cells:
        if s2.by_id[mapping[c.id]].dim != c.dim:
            return False
    for c in s1.cells:
        b1 = dict(s1.boundary(c.id))
        b2 = dict(s2.boundary(mapping[c.id]))
        if {mapping[x] for x in b1} != set(b2):
            return False
        for x, sign in b1.items():
            if b2[mapping[x]] != gauge[c.id] * gauge[x] * sign:
                return False
    a = witness.matrix
    if a.rows != cd1.n - 1 or a.cols != cd1.n - 1 or determinant(a) not in (1, -1):
        return False
    if witness.global_sign not in (1, -1):
        return False
    for fid in s1.facet_ids:
        lhs = (a @ cd1.euler_coefficient(fid)).scale(witness.global_sign)
        if lhs != cd2.euler_coefficient(mapping[fid]).scale(gauge[fid]):
            return False
        image_mu = a @ cd1.mu[fid]
        target_mu = cd2.mu[mapping[fid]]
        if image_mu != target_mu and image_mu != -target_mu:
            return False
    return True


def compare(cd1: CharacteristicData, cd2: CharacteristicData) -> ComparisonResult:
    """Decide cellular equivalence of two validated characteristic data.

    Equivalent results carry a witness (verified independently before being
    returned); Inequivalent results carry a certificate naming the failing
    invariant or the exhausted search; Incomparable means the ambient
    descriptors or dimensions differ.
    """
    _require_validated(cd1, "first argument")
    _require_validated(cd2, "second argument")
    if cd1.n != cd2.n:
        return ComparisonResult(
            "incomparable", certificate=f"dimension parameters differ: {cd1.n} vs {cd2.n}"
        )
    if cd1.ambient.kind != cd2.ambient.kind:
        return ComparisonResult(
            "incomparable",
            certificate=f"ambient kinds differ: {cd1.ambient.kind} vs {cd2.ambient.kind}",
        )
    f1, f2 = canonical_invariants(cd1), canonical_invariants(cd2)
    if f1 != f2:
        for name in ("cells_per_dim", "betti", "torsion", "rank_profile", "pair_indices"):
            if getattr(f1, name) != getattr(f2, name):
                return ComparisonResult(
                    "inequivalent",
                    certificate=f"invariant mismatch: {name} {getattr(f1, name)} vs {getattr(f2, name)}",
                )
        return ComparisonResult("inequivalent", certificate="invariant mismatch")

    span = _spanning_facets(cd1)
    tried = 0
    for mapping in _poset_bijections(cd1.sponge, cd2.sponge):
        for gauge in _solve_gauge(cd1.sponge, cd2.sponge, mapping):
            tried += 1
            a = _solve_transform(cd1, cd2, mapping, gauge, span)
            if a is None:
                continue
            witness = EquivalenceWitness(mapping=mapping, gauge=gauge, matrix=a, global_sign=1)
            if verify_witness(cd1, cd2, witness):
                return ComparisonResult("equivalent", witness=witness)
    return ComparisonResult(
        "inequivalent",
        certificate=(
            "no cellular equivalence: exhausted poset bijections "
            f"({tried} gauge assignments tried)"
        ),
    )
