#!/usr/bin/env python3
"""Generate newform fixtures in the modular-forms database export schema.

Each output line is one Galois orbit of newforms in S_k^new(N) with trivial
character:

    {"label": "N.k.a.x", "level": N, "weight": k, "hecke_orbit": i,
     "dim": d, "atkin_lehner": [[p, w_p], ...]}

`dim` is the degree of the rationality field and `atkin_lehner` lists the
Atkin-Lehner eigenvalues w_p (not root numbers). The data is computed with
PARI/GP's modular forms package (`pip install cypari2`), which splits the new
space into Galois orbits independently of any quaternionic computation.

Usage: make_fixtures.py OUT_DIR
"""
import json
import sys
from pathlib import Path

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9, silent=True)


def prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            n //= d
            if n % d == 0:
                return None
        d += 1
    if n > 1:
        out.append(n)
    return out


def orbit_letters(i):
    s = ""
    i += 1
    while i > 0:
        i, r = divmod(i - 1, 26)
        s = chr(ord("a") + r) + s
    return s


def newform_orbits(level, weight):
    mf = pari.mfinit([level, weight], 0)
    if int(pari.mfdim(mf)) == 0:
        return []
    split = pari.mfsplit(mf, 0, 0)
    degrees = [int(pari.poldegree(pol)) for pol in split[1]]
    primes = prime_factors(level)
    signs = {p: pari.mfatkineigenvalues(mf, p) for p in primes}
    rows = []
    # Orbits are listed by increasing degree, then in PARI's order.
    order = sorted(range(len(degrees)), key=lambda i: (degrees[i], i))
    for idx, i in enumerate(order):
        al = []
        for p in primes:
            vals = {int(v) for v in signs[p][i]}
            assert len(vals) == 1, (level, weight, p, vals)
            al.append([p, vals.pop()])
        rows.append(
            {
                "label": f"{level}.{weight}.a.{orbit_letters(idx)}",
                "level": level,
                "weight": weight,
                "hecke_orbit": idx + 1,
                "dim": degrees[i],
                "atkin_lehner": al,
            }
        )
    return rows


def write(path, levels, weight):
    with open(path, "w") as fh:
        for n in levels:
            for row in newform_orbits(n, weight):
                fh.write(json.dumps(row, separators=(",", ":")) + "\n")


def squarefree_with(r, lo, hi):
    for n in range(lo, hi + 1):
        f = prime_factors(n)
        if f is not None and len(f) == r:
            yield n


def main():
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    write(out / "newforms_k2_prime_le500.jsonl", squarefree_with(1, 2, 500), 2)
    write(out / "newforms_k4_prime_lt250.jsonl", squarefree_with(1, 2, 249), 4)
    write(out / "newforms_k2_r2_lt250.jsonl", squarefree_with(2, 2, 249), 2)


if __name__ == "__main__":
    main()
