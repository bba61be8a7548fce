"""Weight systems of tangent representations at fixed points.

A weight system is n characters in Z^(n-1).  The induced linear relation
determines the Cramer coefficients; their normalized values decide general
position, strictness (all unit coefficients) and the finite parts of
coordinate stabilizers.  Signs of the stored weights are part of the data
(an omniorientation); every predicate that is sign-independent is tested to
be so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    ConsistencyError,
    DegenerateInputError,
    DimensionMismatchError,
    PreconditionError,
    StarConditionError,
)
from .lattice import (
    IntMatrix,
    IntVector,
    determinant,
    inverse_unimodular,
    kernel_complement,
    smith_normal_form,
    stack_rows,
)


@dataclass(frozen=True)
class WeightSystem:
    """n weight vectors in Z^(n-1), with an optional explicit sign choice."""

    n: int
    weights: tuple[IntVector, ...]
    sign_choice: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(IntVector(tuple(w)) for w in self.weights))
        if self.n < 2:
            raise DegenerateInputError(f"weight system needs n >= 2, got {self.n}")
        if len(self.weights) != self.n:
            raise DimensionMismatchError(f"expected {self.n} weights, got {len(self.weights)}")
        for w in self.weights:
            if w.dim != self.n - 1:
                raise DimensionMismatchError(f"weight of dim {w.dim}, expected {self.n - 1}")
        if self.sign_choice is not None:
            sc = tuple(int(s) for s in self.sign_choice)
            if len(sc) != self.n or any(s not in (1, -1) for s in sc):
                raise DegenerateInputError("sign_choice must be n entries of +-1")
            object.__setattr__(self, "sign_choice", sc)

    def signed_weights(self) -> tuple[IntVector, ...]:
        if self.sign_choice is None:
            return self.weights
        return tuple(w.scale(s) for w, s in zip(self.weights, self.sign_choice))

    def matrix(self) -> IntMatrix:
        """Weights as rows, n x (n-1)."""
        return stack_rows(list(self.signed_weights()))


@dataclass(frozen=True)
class CramerCoefficients:
    c_tilde: tuple[int, ...]
    c_gcd: int
    c: tuple[int, ...]


@dataclass(frozen=True)
class StabilizerStructure:
    torus_rank: int
    finite_orders: tuple[int, ...]


def cramer_coefficients(ws: WeightSystem) -> CramerCoefficients:
    """Signed maximal-minor coefficients of the weight relation.

    c_tilde[i] is (-1)^(i+1) times the determinant of the weights with row i
    deleted (1-based alternation), so that sum_i c_tilde[i] * weight[i] = 0;
    the identity is verified before returning.  c is c_tilde divided by the
    gcd of its entries.
    """
    n = ws.n
    alphas = ws.signed_weights()
    c_tilde = []
    for i in range(n):
        rest = [alphas[j] for j in range(n) if j != i]
        det = determinant(stack_rows(rest))
        c_tilde.append(-det if i % 2 == 0 else det)
    total = alphas[0].scale(0)
    for ci, a in zip(c_tilde, alphas):
        total = total + a.scale(ci)
    if not total.is_zero():
        raise ConsistencyError(f"Cramer identity violated: residual {list(total)}")
    g = math.gcd(*c_tilde)
    if g == 0:
        return CramerCoefficients(tuple(c_tilde), 1, tuple(c_tilde))
    return CramerCoefficients(tuple(c_tilde), g, tuple(x // g for x in c_tilde))


def is_general_position(ws: WeightSystem) -> bool:
    """True iff every n-1 of the n weights are linearly independent."""
    return all(x != 0 for x in cramer_coefficients(ws).c_tilde)


def is_strictly_appropriate(ws: WeightSystem) -> bool:
    """True iff every normalized coefficient is +-1 (all stabilizers connected)."""
    cc = cramer_coefficients(ws)
    if any(x == 0 for x in cc.c_tilde):
        raise PreconditionError("weight system is not in general position")
    return all(abs(x) == 1 for x in cc.c)


def stabilizer_structure(ws: WeightSystem, indices: Iterable[int]) -> StabilizerStructure:
    """Structure of the stabilizer of a coordinate subspace orbit.

    The stabilizer of the coordinate subtorus selected by `indices`
    (0-based) is presented by the single relation with the normalized
    coefficients restricted to those indices; its torus rank and cyclic
    torsion factors are read off the Smith form of that presentation.
    """
    idx = sorted(set(int(i) for i in indices))
    if not idx:
        raise DegenerateInputError("empty index set")
    if idx[0] < 0 or idx[-1] >= ws.n:
        raise DimensionMismatchError(f"indices out of range for n={ws.n}")
    cc = cramer_coefficients(ws)
    if any(x == 0 for x in cc.c_tilde):
        raise PreconditionError("weight system is not in general position")
    relation = IntMatrix.from_rows([[cc.c[i] for i in idx]])
    dec = smith_normal_form(relation)
    orders = tuple(x for x in dec.diagonal() if x > 1)
    return StabilizerStructure(torus_rank=len(idx) - dec.rank, finite_orders=orders)


def hopf_type(ws: WeightSystem, i: int, j: int) -> int:
    """Sign of c_i / c_j for a strict system: +1 Hopf, -1 anti-Hopf."""
    if i == j:
        raise IndexError("hopf_type needs two distinct indices")
    if not 0 <= i < ws.n or not 0 <= j < ws.n:
        raise IndexError(f"indices ({i}, {j}) out of range for n={ws.n}")
    if not is_strictly_appropriate(ws):
        raise PreconditionError("hopf_type requires a strictly appropriate system")
    c = cramer_coefficients(ws).c
    return c[i] * c[j]


def induced_weights(lambda_basis: Sequence[IntVector], alpha_t: IntVector) -> WeightSystem:
    """Weight system induced on the subtorus cut out by alpha_t.

    lambda_basis must be a Z-basis of Z^n.  The tangent weights are the dual
    basis; each is projected to Z^(n-1) by pairing with the Hermite-canonical
    basis of ker <alpha_t, .>.  The normalized Cramer coefficients of the
    result equal (<alpha_t, lambda_i>)_i up to one global sign.
    """
    lams = [IntVector(tuple(v)) for v in lambda_basis]
    n = len(lams)
    if n < 2:
        raise DegenerateInputError("need at least two basis vectors")
    for v in lams:
        if v.dim != n:
            raise DimensionMismatchError("lambda_basis must be square")
    alpha = IntVector(tuple(alpha_t))
    if alpha.dim != n:
        raise DimensionMismatchError(f"alpha_t has dim {alpha.dim}, expected {n}")
    lam_matrix = stack_rows(lams)
    det = determinant(lam_matrix)
    if det not in (1, -1):
        raise StarConditionError(f"lambda vectors have determinant {det}, not a Z-basis")
    if alpha.is_zero() or not alpha.is_primitive():
        raise DegenerateInputError("alpha_t must be a primitive nonzero character")
    dual = inverse_unimodular(lam_matrix)  # column i pairs to 1 with lams[i]
    comp = kernel_complement(alpha)
    ws_vectors = []
    for i in range(n):
        a_i = dual.col(i)
        ws_vectors.append(IntVector(tuple(comp.row(r).dot(a_i) for r in range(n - 1))))
    return WeightSystem(n=n, weights=tuple(ws_vectors))
