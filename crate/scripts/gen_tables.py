#!/usr/bin/env python3
"""Regenerate the expected-value tables in crates/ck6/data/.

The tables encode the classification of degenerate finite Verma modules over
E(1,6) and the homology dimensions of the associated complexes.  They are
written here independently of the Rust implementation so that the test suite
compares two separate transcriptions of the same results.
"""

import json
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "crates" / "ck6" / "data"


def dim3(d: int) -> int:
    """Monomials of total degree d in three variables."""
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


def choose3(k: int) -> int:
    return {0: 1, 1: 3, 2: 3, 3: 1}.get(k, 0)


def block_nodes(a: int, b: int):
    """Nodes (n1, n2) contributing to the (a, b) block of G_A."""
    assert b >= 0 and b % 2 == 0 and a + b >= 0
    for s in range(max(0, a + b - 12), a + b + 1):
        if (s - a) % 2 != 0:
            continue
        for n2 in range(s // 2 + 1):
            yield s - 2 * n2, n2


def expected_block_homology(a: int, b: int, n1: int, n2: int) -> int:
    """dim H^{n1,n2}(G_A(a,b)) from the case list."""
    if n2 > 1:
        return 0
    if n2 == 1:
        return 1 if n1 == 0 and (a, b) == (2, 2) else 0
    if b == 0:
        if n1 == a:
            return dim3(n1)
        if n1 == a - 2:
            return dim3(n1 - 1)
        return 0
    if b == 2:
        if n1 == a + 2:
            return dim3(n1 - 1)
        if n1 == a:
            return 3 * dim3(n1 - 1)
        if n1 == a - 2:
            return 3 * dim3(n1 - 1) + (1 if n1 == 0 else 0) - dim3(n1)
        return 0
    # b >= 4, even.
    if (a + b - n1) % 2 != 0:
        return 0
    return choose3((a + b - n1) // 2) * dim3(n1 - b // 2)


def ga_table():
    blocks = []
    for b in (0, 2, 4, 6):
        for a in range(-b, 8 - b + 1):
            entries = [
                {"n1": n1, "n2": n2, "dim": expected_block_homology(a, b, n1, n2)}
                for (n1, n2) in sorted(block_nodes(a, b))
            ]
            blocks.append({"a": a, "b": b, "entries": entries})
    return {"blocks": blocks}


def singular_placements():
    """Expected degrees (within 1..5) of highest-weight singular vectors."""
    rows = []
    for m in range(3):
        for n in range(3):
            rows.append({"family": "A", "m": m, "n": n, "degrees": [1]})
    for m in range(3):
        for n in range(3):
            degrees = [1] if n >= 1 else [3]
            rows.append({"family": "B", "m": m, "n": n, "degrees": degrees})
    for m in range(3):
        for n in range(3):
            if m >= 1:
                degrees = [1]
            elif n >= 2:
                degrees = [3]
            elif n == 1:
                degrees = [3, 5]
            else:
                degrees = []  # the weight (0,0,0,4) is not degenerate
            rows.append({"family": "C", "m": m, "n": n, "degrees": degrees})
    return {"rows": rows}


def verma_homology():
    """Slice profiles (degrees 0..8) of the quadrant complexes."""
    rows = []
    for m in range(3):
        for n in range(3):
            profile = [0] * 9
            if (m, n) == (0, 0):
                profile[0] = 1
            rows.append({"quadrant": "A", "m": m, "n": n, "profile": profile})
    for m in range(3):
        for n in range(3):
            profile = [0] * 9
            if (m, n) == (1, 0):
                profile[5] = 1
            rows.append({"quadrant": "C", "m": m, "n": n, "profile": profile})
    return {"rows": rows}


def gacirc():
    """dim H^{n1,n2}(G_A°) on the tested grid n1+n2 <= 3, minus (1,0)."""
    rows = []
    for n1 in range(4):
        for n2 in range(4 - n1):
            if (n1, n2) == (1, 0):
                continue  # open case, untested
            dim = 1 if (n1, n2) in ((0, 0), (0, 1)) else 0
            rows.append({"n1": n1, "n2": n2, "dim": dim})
    return {"rows": rows}


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    tables = {
        "ga_table.json": ga_table(),
        "singular_placements.json": singular_placements(),
        "verma_homology_expected.json": verma_homology(),
        "gacirc_expected.json": gacirc(),
    }
    for name, value in tables.items():
        path = DATA / name
        path.write_text(json.dumps(value, indent=1, sort_keys=True) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
