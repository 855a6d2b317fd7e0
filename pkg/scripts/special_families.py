"""Computed HLRC on the special uniform families next to their closed forms."""

from dataclasses import dataclass

import numpy as np

from hypercurv.curvature import hlrc_all
from hypercurv.generators import closed_form_hlrc, gen_complete, gen_hypercycle, gen_hypergrid, gen_hypertree


@dataclass
class FamilyGrid:
    complete: tuple = ((5, 3), (6, 4), (8, 2))
    hypergrid: tuple = (2, 4, 6)
    hypertree: tuple = ((3, 2, 3), (3, 3, 3), (4, 3, 2))
    hypercycle: tuple = ((4, 2, 8), (4, 3, 8), (4, 3, 7), (5, 2, 6), (6, 3, 3), (6, 3, 5), (5, 3, 10))


def row(name, vals, expected):
    uniq = np.unique(np.round(vals, 12))
    exp = "n/a" if expected is None else ", ".join(f"{x:+.6f}" for x in sorted(set(expected)))
    got = ", ".join(f"{x:+.6f}" for x in uniq)
    print(f"{name:<24} computed {got:<32} closed form {exp}")


def main():
    grid = FamilyGrid()
    for n, k in grid.complete:
        row(f"complete({n},{k})", hlrc_all(gen_complete(n, k)).values, [closed_form_hlrc("complete", {})])
    for k in grid.hypergrid:
        row(f"hypergrid({k})", hlrc_all(gen_hypergrid(k)).values, [closed_form_hlrc("hypergrid", {})])
    for k, r, depth in grid.hypertree:
        H, truth = gen_hypertree(k, r, depth)
        expected = [closed_form_hlrc("hypertree", dict(k=k, r=r), role) for role in truth.edge_roles]
        row(f"hypertree({k},{r},{depth})", hlrc_all(H).values, expected)
    for k, s, m in grid.hypercycle:
        cf = closed_form_hlrc("hypercycle", dict(k=k, s=s, m=m))
        row(f"hypercycle({k},{s},{m})", hlrc_all(gen_hypercycle(k, s, m)).values, None if cf is None else [cf])


if __name__ == "__main__":
    main()
