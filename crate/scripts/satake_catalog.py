#!/usr/bin/env python3
"""Writes the Satake classification rows with rep_dim <= BOUND as JSON.

Evaluates the row formulas directly so the Rust catalog can be checked
against an independent transcription.

    python3 scripts/satake_catalog.py 16 > crates/core/fixtures/satake_catalog.json
"""
import json
import sys
from math import comb


def iv_even_duality(m):
    return {2: "Symplectic", 0: "Orthogonal"}.get(m % 4, "NSD")


def rows(bound):
    out = []

    def add(case, params, hss, rep, duality, compact):
        if rep <= bound:
            out.append({"case": case, "params": params, "hss_dim": hss,
                        "rep_dim": rep, "duality": duality,
                        "min_compact_factors": compact})

    add("A1", {}, 1, 2, "Symplectic", 0)
    add("D4", {}, 6, 8, "Orthogonal", 0)
    for n in range(3, bound + 1):
        for p in range(1, n // 2 + 1):
            add("I", {"p": p, "n": n}, p * (n - p), n, "NSD", 1)
    n = 4
    while comb(n, 2) <= bound:
        for c in range(2, n - 1):
            if 2 * c != n:
                d = "NSD"
            else:
                d = "Orthogonal" if c % 2 == 0 else "Symplectic"
            add("Iprime", {"n": n, "c": c}, n - 1, comb(n, c), d, 1)
        n += 1
    for r in range(2, bound // 2 + 1):
        if r != 4:
            add("II", {"r": r}, r * (r - 1) // 2, 2 * r, "Orthogonal", 1 if r >= 4 else 0)
    for r in range(2, bound // 2 + 1):
        add("III1", {"r": r}, r * (r + 1) // 2, 2 * r, "Symplectic", 0)
    for r in range(2, bound // 2 + 1):
        add("III2", {"r": r}, r * (r + 1) // 2, 2 * r, "Symplectic", 1)
    p = 3
    while 2 ** (p - 1) <= bound:
        if p != 4:
            add("IV1even", {"p": p}, 2 * p - 2, 2 ** (p - 1), iv_even_duality(p), 1)
        p += 1
    p = 2
    while 2 ** p <= bound:
        d = "Orthogonal" if p % 4 in (0, 3) else "Symplectic"
        add("IV1odd", {"p": p}, 2 * p - 1, 2 ** p, d, 1)
        p += 1
    r = 3
    while 2 ** (r - 1) <= bound:
        if r != 4:
            add("IV2", {"r": r}, 2 * r - 2, 2 ** (r - 1), iv_even_duality(r), 1 if r >= 4 else 0)
        r += 1
    return out


if __name__ == "__main__":
    bound = int(sys.argv[1]) if len(sys.argv) > 1 else 16
    print(json.dumps(rows(bound), indent=2))
