#!/usr/bin/env python3
"""Verify every built-in catalog entry and print a summary table."""

import time

from complexity_one.catalog import load, names, verify
from complexity_one.sponge import homology
from complexity_one.weights import cramer_coefficients


def main() -> int:
    failures = 0
    for name in names():
        t0 = time.monotonic()
        entry = load(name)
        report = verify(entry)
        dt = time.monotonic() - t0
        betti = homology(entry.data.sponge).betti
        status = "ok" if report.ok else "FAIL"
        print(f"{name:16} {status:5} betti={list(betti)}  cells="
              f"{[len(entry.data.sponge.cells_of_dim(d)) for d in range(entry.data.n - 1)]}"
              f"  ({dt:.2f}s)")
        for vid in sorted(entry.weight_systems):
            c = cramer_coefficients(entry.weight_systems[vid]).c
            print(f"    {vid:24} c = {list(c)}")
        if not report.ok:
            failures += 1
            for f in report.failures():
                print(f"    !! {f.check}: {f.detail}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
