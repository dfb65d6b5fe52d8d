#!/usr/bin/env python3
"""Census of walls around random positive classes of a hyperbolic lattice.

Samples integer classes of positive square in U + <-2k>, reports how often
they land exactly on a wall, and how many walls separate random interior
pairs.  A quick empirical look at the chamber structure the library decides
exactly.
"""
import argparse
import random
import sys
from collections import Counter

from bbf.enumeration import separating_walls, wall_classes_through
from bbf.lattice import BBFLattice, direct_sum, hyperbolic_plane


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=1, help="the <-2k> summand")
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--pairs", type=int, default=100)
    ap.add_argument("--coord-bound", type=int, default=9)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    lat = BBFLattice(direct_sum(hyperbolic_plane(), [[-2 * args.k]]))
    norms = [-2 * args.k]
    rng = random.Random(args.seed)
    bound = args.coord_bound

    on_wall = 0
    interior = []
    drawn = 0
    while drawn < args.samples:
        h = tuple(rng.randint(-bound, bound) for _ in range(3))
        if lat.q(h) <= 0:
            continue
        drawn += 1
        walls = wall_classes_through(lat, h, norms)
        if walls:
            on_wall += 1
        else:
            interior.append(h)
    print("lattice U + <%d>, wall norms %s" % (-2 * args.k, norms))
    print("positive classes drawn   %d" % drawn)
    print("exactly on a wall        %d (%.1f%%)" % (on_wall, 100 * on_wall / drawn))

    counts = Counter()
    tested = 0
    while tested < args.pairs and len(interior) >= 2:
        u, v = rng.sample(interior, 2)
        if lat.inner(u, v) <= 0:
            continue
        tested += 1
        counts[len(separating_walls(lat, u, v, norms))] += 1
    print("interior pairs tested    %d" % tested)
    for walls_between, how_many in sorted(counts.items()):
        print("  %3d separating walls: %d pairs" % (walls_between, how_many))
    return 0


if __name__ == "__main__":
    sys.exit(main())
