#!/usr/bin/env python3
"""Generate the zeta-zero ordinate fixture used by the test suite.

Brackets sign changes of Hardy's Z function on a fine grid using a
vectorized Riemann-Siegel main term, then polishes every root with
mpmath.siegelz. Every chunk's root count must equal mpmath.nzeros over the
chunk; a short chunk is searched again with mpmath.siegelz around the
smallest local minima of |Z|. Low ordinates come straight from
mpmath.zetazero. Indices are cross-checked against mpmath.zetazero at
checkpoints.

Usage: gen_zero_fixture.py OUT_PATH [HEIGHT]
"""
import os
import sys

import mpmath
import numpy as np

mpmath.mp.dps = 20
EXACT_BELOW = 120.0
GRID_STEP = 0.004


def theta(t):
    # Riemann-Siegel theta, asymptotic series (t >= 100 here).
    return (t / 2 * np.log(t / (2 * np.pi)) - t / 2 - np.pi / 8
            + 1 / (48 * t) + 7 / (5760 * t**3))


def rs_z(t):
    a = np.sqrt(t / (2 * np.pi))
    n_max = np.floor(a).astype(np.int64)
    th = theta(t)
    total = np.zeros_like(t)
    for n in range(1, int(n_max.max()) + 1):
        mask = n <= n_max
        total += np.where(mask, np.cos(th - t * np.log(n)) / np.sqrt(n), 0.0)
    p = a - n_max
    c0 = np.cos(2 * np.pi * (p * p - p - 1.0 / 16)) / np.cos(2 * np.pi * p)
    sign = np.where((n_max - 1) % 2 == 0, 1.0, -1.0)
    return 2 * total + sign * a ** -0.5 * c0


def polish(t0):
    f = mpmath.siegelz
    a, b = mpmath.mpf(t0) - mpmath.mpf("1e-4"), mpmath.mpf(t0) + mpmath.mpf("1e-4")
    fa, fb = f(a), f(b)
    if fa * fb > 0:
        return None
    return illinois(f, a, b, fa, fb)


def local_roots(lo, hi, points=33):
    """All sign changes of mpmath.siegelz on a uniform sample of [lo, hi], polished."""
    pts = [mpmath.mpf(lo) + (mpmath.mpf(hi) - mpmath.mpf(lo)) * k / (points - 1)
           for k in range(points)]
    vals = [mpmath.siegelz(t) for t in pts]
    return [illinois(mpmath.siegelz, pts[k], pts[k + 1], vals[k], vals[k + 1])
            for k in range(points - 1) if vals[k] * vals[k + 1] < 0]


def illinois(f, a, b, fa, fb):
    if fa * fb > 0:
        raise ValueError("no sign change")
    # secant-bisection (Illinois) on the small bracket
    for _ in range(60):
        c = b - fb * (b - a) / (fb - fa)
        fc = f(c)
        # evaluating Z much closer to a root makes mpmath raise precision without bound
        if abs(fc) < mpmath.mpf("1e-14") or abs(b - a) < mpmath.mpf("1e-12"):
            return float(c)
        if fc * fb < 0:
            a, fa = b, fb
        else:
            fa = fa / 2
        b, fb = c, fc
    return float(b)


def missing_roots(grid, z, have, want):
    """Roots near the smallest local minima of |Z| that show no sign change on the grid."""
    mag = np.abs(z)
    interior = np.arange(1, len(z) - 1)
    minima = interior[(mag[interior] <= mag[interior - 1]) & (mag[interior] <= mag[interior + 1])]
    minima = minima[np.sign(z[minima - 1]) == np.sign(z[minima + 1])]
    found = []
    for i in minima[np.argsort(mag[minima])][:64]:
        found.extend(local_roots(grid[i - 1], grid[i + 1]))
        if have + len(found) >= want:
            break
    return found


def scan_chunk(start, stop):
    grid = np.arange(start, stop + GRID_STEP / 2, GRID_STEP)
    z = rs_z(grid)
    idx = np.nonzero(np.sign(z[:-1]) * np.sign(z[1:]) < 0)[0]
    roots = []
    for i in idx:
        t0 = grid[i] - z[i] * (grid[i + 1] - grid[i]) / (z[i + 1] - z[i])
        r = polish(t0)
        if r is not None and abs(r - t0) < GRID_STEP:
            roots.append(r)
        else:
            roots.extend(local_roots(grid[i] - GRID_STEP, grid[i + 1] + GRID_STEP))
    roots = sorted(set(round(r, 12) for r in roots if start < r <= stop))
    want = int(mpmath.nzeros(stop)) - int(mpmath.nzeros(start))
    if len(roots) < want:
        extra = missing_roots(grid, z, len(roots), want)
        roots = sorted(set(roots) | set(round(r, 12) for r in extra if start < r <= stop))
    if len(roots) != want:
        raise SystemExit(f"chunk ({start}, {stop}]: {len(roots)} roots, expected {want}")
    return roots


def main():
    out = sys.argv[1]
    height = float(sys.argv[2]) if len(sys.argv) > 2 else 10050.0
    zeros = []
    n = 1
    while True:
        g = float(mpmath.zetazero(n).imag)
        if g > EXACT_BELOW:
            break
        zeros.append(g)
        n += 1
    start = EXACT_BELOW
    chunk = 200.0
    partial = out + ".partial"
    done = {}
    try:
        with open(partial) as fh:
            for line in fh:
                key, *vals = line.split()
                done[float(key)] = [float(v) for v in vals]
    except FileNotFoundError:
        pass
    while start < height:
        stop = min(start + chunk, height)
        if start not in done:
            done[start] = scan_chunk(start, stop)
            with open(partial, "a") as fh:
                fh.write(" ".join([repr(start)] + [repr(r) for r in done[start]]) + "\n")
        zeros.extend(done[start])
        start = stop
        print(f"{stop:.0f}: {len(zeros)} zeros", file=sys.stderr, flush=True)
    zeros = sorted(set(round(g, 12) for g in zeros if g <= height))
    checkpoints = [1, 100, 500, 1000, 2000, 4000, 6000, 6709, 6710, 8000, 10000]
    for k in [c for c in checkpoints if c <= len(zeros)] + [len(zeros)]:
        ref = float(mpmath.zetazero(k).imag)
        if abs(ref - zeros[k - 1]) > 1e-8:
            raise SystemExit(f"index check failed at {k}: {ref} vs {zeros[k - 1]}")
    with open(out, "w") as fh:
        for g in zeros:
            fh.write(f"{g:.10f}\n")
    os.remove(partial)
    print(f"wrote {len(zeros)} ordinates up to {zeros[-1]}", file=sys.stderr)


if __name__ == "__main__":
    main()
