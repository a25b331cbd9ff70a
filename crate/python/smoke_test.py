"""Smoke test for the rigidquad_py extension.

Build and install first:
    pip install --no-build-isolation ./crates/rigidquad-py
"""

import json
import math
import sys

import rigidquad_py as rq


def check(name, ok):
    print(f"{'ok  ' if ok else 'FAIL'} {name}")
    return ok


def main():
    results = []

    counts = rq.rigid_counts(8)
    results.append(check("rigid counts", counts[3:] == [1, 5, 33, 252, 2108, 18774]))

    table = rq.catalytic_counts(2, 5)
    results.append(check("catalytic table", table[1][2:5] == [1, 2, 10] and table[2][3:6] == [2, 8, 50]))

    e_terms = {tuple(e): (num, den) for e, num, den in rq.series("e", 5, 1, 2)}
    results.append(check("series E", e_terms[(5, 1, 2)] == (15, 1) and e_terms[(4, 1, 1)] == (5, 1)))

    square = rq.sample_rigid_rooted(3, seed=1)
    sphere = rq.psi(square)
    results.append(check("square image", sphere.kind == "sphere" and sphere.n == 3))
    results.append(check("square round trip", rq.psi_inverse(sphere) == square))

    r = rq.sample_rigid_rooted(12, seed=7)
    q = rq.psi(r)
    results.append(check("psi round trip", rq.psi_inverse(q) == r and q.n == r.n))
    results.append(check("mirror equivariance", rq.psi(r.mirror()) == q.relabel()))

    disk, sig = rq.psi_b(r)
    results.append(check("refined walk", disk.boundary_walk() == rq.walk_of_signature(sig)))
    results.append(check("refined inverse", rq.psi_b_inverse(disk, sig) == r))

    again = rq.RigidQuad.from_json(r.to_json())
    results.append(check("json round trip", again == r and json.loads(r.to_json())["kind"] == "rigid"))

    d = r.dictionary()
    results.append(check("dictionary", d["convex_corners"] == d["vertices"] and d["rows"] == d["even_edges"]))

    svg = rq.render_svg(r, "simplex:5", seed=3)
    results.append(check("svg", svg.count("<rect ") == r.cells))

    results.append(check("R at critical point", abs(rq.eval_r(1 / (4 * math.pi)) - 1 / 16) < 1e-10))

    try:
        rq.sample_rigid_rooted(2)
        results.append(check("empty class raises", False))
    except ValueError:
        results.append(check("empty class raises", True))

    report = rq.verify(quick=True, jobs=2)
    results.append(check("quick verify", len(report) == 10 and all(c["passed"] for c in report)))

    print(f"{sum(results)}/{len(results)} checks passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
