"""JSON serialization for the external interfaces.

All values are integers or strings; no floating point is accepted or
produced.  Integers that do not fit in 64 bits are written as decimal
strings and parsed back transparently.  canonical_json is byte-stable:
sorted keys, fixed separators.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .chardata import Ambient, CharacteristicData
from .errors import InputFormatError
from .lattice import IntVector
from .quasitoric import CharacteristicFunction, SimplePolytope
from .sponge import Cell, SpongeComplex, ValidationReport
from .weights import WeightSystem

_I64_MAX = 2**63 - 1
_I64_MIN = -(2**63)


def _encode_int(x: int):
    return x if _I64_MIN <= x <= _I64_MAX else str(x)


def _decode_int(x, where: str) -> int:
    if isinstance(x, bool):
        raise InputFormatError(f"{where}: expected integer, got boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        stripped = x[1:] if x.startswith("-") else x
        if stripped.isdigit():
            return int(x)
    raise InputFormatError(f"{where}: expected integer, got {x!r}")


def _reject_float(value: str):
    raise InputFormatError(f"floating-point literal {value!r} is not allowed")


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputFormatError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _int_list(v: IntVector) -> list:
    return [_encode_int(x) for x in v]


def _vector(data, where: str) -> IntVector:
    if not isinstance(data, list):
        raise InputFormatError(f"{where}: expected a list of integers")
    return IntVector(tuple(_decode_int(x, where) for x in data))


def weight_system_to_dict(ws: WeightSystem) -> dict:
    return {"n": ws.n, "weights": [_int_list(w) for w in ws.signed_weights()]}


def weight_system_from_dict(data: Mapping, where: str = "weight system") -> WeightSystem:
    if not isinstance(data, Mapping) or "n" not in data or "weights" not in data:
        raise InputFormatError(f"{where}: need keys 'n' and 'weights'")
    n = _decode_int(data["n"], f"{where}.n")
    weights = data["weights"]
    if not isinstance(weights, list):
        raise InputFormatError(f"{where}.weights: expected a list")
    return WeightSystem(n=n, weights=tuple(_vector(w, f"{where}.weights[{i}]") for i, w in enumerate(weights)))


def sponge_to_dict(s: SpongeComplex) -> dict:
    return {
        "n": s.n,
        "cells": [
            {"id": c.id, "dim": c.dim, "label": c.label}
            for c in sorted(s.cells, key=lambda c: (c.dim, c.id))
        ],
        "incidence": {
            cid: [[sub, sign] for sub, sign in entries]
            for cid, entries in sorted(s.incidence.items())
        },
    }


def sponge_from_dict(data: Mapping, where: str = "sponge") -> SpongeComplex:
    if not isinstance(data, Mapping) or "n" not in data or "cells" not in data:
        raise InputFormatError(f"{where}: need keys 'n', 'cells', 'incidence'")
    n = _decode_int(data["n"], f"{where}.n")
    cells = []
    for i, c in enumerate(data["cells"]):
        if not isinstance(c, Mapping) or "id" not in c or "dim" not in c:
            raise InputFormatError(f"{where}.cells[{i}]: need 'id' and 'dim'")
        cells.append(
            Cell(str(c["id"]), _decode_int(c["dim"], f"{where}.cells[{i}].dim"), str(c.get("label", "")))
        )
    incidence = {}
    raw_inc = data.get("incidence", {})
    if not isinstance(raw_inc, Mapping):
        raise InputFormatError(f"{where}.incidence: expected an object")
    for cid, entries in raw_inc.items():
        if not isinstance(entries, list):
            raise InputFormatError(f"{where}.incidence[{cid}]: expected a list")
        pairs = []
        for e in entries:
            if not isinstance(e, list) or len(e) != 2:
                raise InputFormatError(f"{where}.incidence[{cid}]: entries are [id, sign] pairs")
            pairs.append((str(e[0]), _decode_int(e[1], f"{where}.incidence[{cid}]")))
        incidence[str(cid)] = tuple(pairs)
    return SpongeComplex(n=n, cells=tuple(cells), incidence=incidence)


def chardata_to_dict(cd: CharacteristicData) -> dict:
    return {
        "n": cd.n,
        "sponge": sponge_to_dict(cd.sponge),
        "mu": {fid: _int_list(cd.mu[fid]) for fid in sorted(cd.mu)},
        "euler_sign": {fid: cd.euler_sign[fid] for fid in sorted(cd.euler_sign)},
        "ambient": cd.ambient.kind,
    }


def chardata_from_dict(data: Mapping, where: str = "chardata") -> CharacteristicData:
    for key in ("n", "sponge", "mu", "euler_sign", "ambient"):
        if not isinstance(data, Mapping) or key not in data:
            raise InputFormatError(f"{where}: missing key {key!r}")
    n = _decode_int(data["n"], f"{where}.n")
    sponge = sponge_from_dict(data["sponge"], f"{where}.sponge")
    if not isinstance(data["mu"], Mapping) or not isinstance(data["euler_sign"], Mapping):
        raise InputFormatError(f"{where}: 'mu' and 'euler_sign' must be objects")
    mu = {str(k): _vector(v, f"{where}.mu[{k}]") for k, v in data["mu"].items()}
    signs = {
        str(k): _decode_int(v, f"{where}.euler_sign[{k}]") for k, v in data["euler_sign"].items()
    }
    ambient = data["ambient"]
    if ambient not in ("sphere", "product", "abstract"):
        raise InputFormatError(f"{where}.ambient: unknown kind {ambient!r}")
    return CharacteristicData(
        n=n, sponge=sponge, mu=mu, euler_sign=signs, ambient=Ambient(str(ambient))
    )


def polytope_to_dict(p: SimplePolytope) -> dict:
    return {
        "n": p.n,
        "facets": list(p.facets),
        "vertices": [sorted(v) for v in sorted(p.vertices, key=lambda v: tuple(sorted(v)))],
    }


def polytope_from_dict(data: Mapping, where: str = "polytope") -> SimplePolytope:
    for key in ("n", "facets", "vertices"):
        if not isinstance(data, Mapping) or key not in data:
            raise InputFormatError(f"{where}: missing key {key!r}")
    n = _decode_int(data["n"], f"{where}.n")
    facets = tuple(str(f) for f in data["facets"])
    vertices = tuple(frozenset(str(f) for f in v) for v in data["vertices"])
    return SimplePolytope(n=n, facets=facets, vertices=vertices)


def lambda_to_dict(lam: CharacteristicFunction) -> dict:
    return {fid: _int_list(v) for fid, v in sorted(lam.values.items())}


def lambda_from_dict(data: Mapping, where: str = "lambda") -> CharacteristicFunction:
    if not isinstance(data, Mapping):
        raise InputFormatError(f"{where}: expected an object of facet -> vector")
    return CharacteristicFunction(
        {str(k): _vector(v, f"{where}[{k}]") for k, v in data.items()}
    )


def report_to_results(report: ValidationReport) -> list[dict]:
    return report.to_dict()
