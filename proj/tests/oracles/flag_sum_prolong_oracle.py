#!/usr/bin/env python3
"""Brute-force oracle for flag-symbol prolongation inside gr gl.

Computes u_{-1} = span(delta), u_k = {X in gl_k : [X, delta] in u_{k-1}}
for the line spanned by delta_{-3,-1} + delta_{-2,-1} acting on Q^5 graded
by degrees (-3 | -2, -2 | -1, -1), coordinates in increasing degree with
the two summands interleaved per degree.

Everything is enumerated directly: gl_k is the list of unit matrices
E[t][s] with deg(t) - deg(s) = k, and the membership condition is solved
by augmenting explicit multiplier unknowns for the previous component's
basis, then taking the kernel of the combined system. Exact Fraction
elimination, no shared code with the library.

A self-check first reproduces the known component dimensions (1, 2, 1)
of the single Jordan block delta_{-3,-1} in gl(3), whose prolongation is
the irreducible copy of gl_2. Regenerate
tests/fixtures/flag_sum_prolong.json by running this file from the
repository root.
"""

import json
from fractions import Fraction


def rref(rows, cols):
    m = [row[:] for row in rows]
    pivots = []
    r = 0
    for c in range(cols):
        if r >= len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def kernel(rows, cols):
    m, pivots = rref(rows, cols)
    pivot_set = set(pivots)
    basis = []
    for q in range(cols):
        if q in pivot_set:
            continue
        v = [Fraction(0)] * cols
        v[q] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][q]
        basis.append(v)
    return basis


def commutator(x, y, n):
    out = [[Fraction(0)] * n for _ in range(n)]
    for t in range(n):
        for s in range(n):
            acc = Fraction(0)
            for q in range(n):
                acc += x[t][q] * y[q][s] - y[t][q] * x[q][s]
            out[t][s] = acc
    return out


def vec(x, n):
    return [x[t][s] for t in range(n) for s in range(n)]


def gl_component(deg, k, n):
    """Unit matrices of pure degree k for the coordinate degrees `deg`."""
    basis = []
    for t in range(n):
        for s in range(n):
            if deg[t] - deg[s] == k:
                e = [[Fraction(0)] * n for _ in range(n)]
                e[t][s] = Fraction(1)
                basis.append(e)
    return basis


def prolong_dims(deg, delta, n):
    """Component dimensions of u^F(R delta), keyed by degree as strings."""
    width = max(deg) - min(deg)
    prev = [vec(delta, n)]
    dims = {"-1": len(rref(prev, n * n)[0])}
    for k in range(width + 1):
        cand = gl_component(deg, k, n)
        bracket_cols = [vec(commutator(x, delta, n), n) for x in cand]
        # Unknowns: len(cand) coefficients, then len(prev) multipliers.
        # Rows: vec([X, delta]) - sum mu_j prev_j = 0, one per matrix entry.
        rows = []
        for e in range(n * n):
            row = [col[e] for col in bracket_cols]
            row += [-p[e] for p in prev]
            rows.append(row)
        sols = kernel(rows, len(cand) + len(prev))
        comp = []
        for v in sols:
            w = [Fraction(0)] * (n * n)
            for a, x in enumerate(cand):
                if v[a] != 0:
                    xv = vec(x, n)
                    w = [u + v[a] * c for u, c in zip(w, xv)]
            comp.append(w)
        comp, _ = rref(comp, n * n)
        dims[str(k)] = len(comp)
        # An empty component leaves no multipliers, forcing [X, delta] = 0.
        prev = comp
    return dims


def jordan_block_check():
    deg = [-3, -2, -1]
    delta = [[Fraction(0)] * 3 for _ in range(3)]
    delta[0][1] = Fraction(1)
    delta[1][2] = Fraction(1)
    dims = prolong_dims(deg, delta, 3)
    expected = {"-1": 1, "0": 2, "1": 1, "2": 0}
    assert dims == expected, f"self-check failed: {dims}"


def main():
    jordan_block_check()

    # delta_{-3,-1} on coordinates (0, 1, 3), delta_{-2,-1} on (2, 4):
    # degree -3: coord 0; degree -2: coords 1, 2; degree -1: coords 3, 4.
    n = 5
    deg = [-3, -2, -2, -1, -1]
    delta = [[Fraction(0)] * n for _ in range(n)]
    delta[0][1] = Fraction(1)
    delta[1][3] = Fraction(1)
    delta[2][4] = Fraction(1)

    dims = prolong_dims(deg, delta, n)
    fixture = {
        "symbol": "R (delta_{-3,-1} + delta_{-2,-1}) in gr gl(5)",
        "coordinate_degrees": deg,
        "delta_nonzero_entries": [[0, 1], [1, 3], [2, 4]],
        "dims": dims,
        "total": sum(dims.values()),
    }
    with open("tests/fixtures/flag_sum_prolong.json", "w") as f:
        json.dump(fixture, f, indent=1)
    print(dims, "total", sum(dims.values()))


if __name__ == "__main__":
    main()
