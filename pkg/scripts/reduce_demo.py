#!/usr/bin/env python3
"""Run the simplex reduction pipeline and print the resulting data."""

import sys

from complexity_one.catalog import simplex_lambda, simplex_polytope
from complexity_one.chardata import assemble_euler_cycle, cocycle_check, validate_mu
from complexity_one.io import canonical_json, chardata_to_dict
from complexity_one.quasitoric import find_strict_subtorus, reduce


def main() -> int:
    p = simplex_polytope()
    lam = simplex_lambda()
    subtori = find_strict_subtorus(p, lam, 1)
    print(f"strict subtorus characters within bound 1: {[list(s.alpha) for s in subtori]}",
          file=sys.stderr)
    st = subtori[0]
    cd = reduce(p, lam, st)
    print(f"alpha = {list(st.alpha)}", file=sys.stderr)
    print(f"validate_mu: {validate_mu(cd).ok}  cocycle: {cocycle_check(cd).ok}  "
          f"cycle: {assemble_euler_cycle(cd).is_cycle}", file=sys.stderr)
    print(canonical_json(chardata_to_dict(cd)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
