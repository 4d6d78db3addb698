#!/usr/bin/env python3
"""Regenerates the model golden files from generator degrees alone.

Ranks are coefficients of prod 1/(1-t^d) over polynomial generators times
prod (1+t^d) over exterior ones; the integral Omega S^3<3> table is written out
from its closed form (Z in degree 0, Z/i in degree 2i-1).
"""
import pathlib

N = 20
OUT = pathlib.Path(__file__).parent / "models"


def series(poly_degrees, ext_degrees):
    r = [1] + [0] * N
    for d in poly_degrees:
        for n in range(d, N + 1):
            r[n] += r[n - d]
    for d in ext_degrees:
        for n in range(N, d - 1, -1):
            r[n] += r[n - d]
    return r


def double_loops(p, first):
    if p == 2:
        return [2 ** (n + 1) - 1 for n in range(first, 6)], []
    polys = [2 * p ** n - 2 for n in range(1, 5)]
    exts = [2 * p ** n - 1 for n in range(first, 5)]
    return polys, exts


tables = {
    "point_F2": series([], []),
    "loops_S3_Z": series([2], []),
    "loops_S3_F2": series([2], []),
    "loops_S3_F3": series([2], []),
    "loops2_S3_F2": series(*double_loops(2, 0)),
    "loops2_S3_F3": series(*double_loops(3, 0)),
    "loops2_S3_F5": series(*double_loops(5, 0)),
    "loops2_S3_conn3_F2": series(*double_loops(2, 1)),
    "loops2_S3_conn3_F3": series(*double_loops(3, 1)),
    "BU_Z": series(list(range(2, N + 1, 2)), []),
    "SU_Z": series([], list(range(3, N + 1, 2))),
    "SU_F2": series([], list(range(3, N + 1, 2))),
    "BBU_Z": series([], list(range(3, N + 1, 2))),
    "MU_coefficients_Z": series(list(range(2, N + 1, 2)), []),
}

OUT.mkdir(exist_ok=True)
for name, ranks in tables.items():
    (OUT / f"{name}.txt").write_text("ranks " + " ".join(map(str, ranks)) + "\n")

groups = ["Z"] + ["0"] * N
for i in range(2, N):
    if 2 * i - 1 <= N:
        groups[2 * i - 1] = f"Z/{i}"
(OUT / "loops_S3_conn3_Z.txt").write_text("".join(f"{n} {g}\n" for n, g in enumerate(groups)))
