#!/usr/bin/env python3
"""Regenerate every desk-scale reference table from first principles.

Prints the module ranks, obstruction dimensions, norm-orbit counts, pairing
values, singular dimensions, and the index-2/3 dimension series, so the
output can be diffed against the frozen values in the test suite.
"""
import argparse

from e8jacobi import config
from e8jacobi.orbitalg import load_tables, save_tables
import e8jacobi.structure as st


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cache-dir", default=None,
                        help="cache directory (default: $E8JACOBI_CACHE)")
    parser.add_argument("--max-rank", type=int, default=18)
    parser.add_argument("--max-norm", type=int, default=23)
    parser.add_argument("--max-singular", type=int, default=5,
                        help="largest index for the singular dimensions")
    args = parser.parse_args()

    if args.cache_dir:
        config.configure(cache_dir=args.cache_dir)
    load_tables()

    ranks = st.rank_r(args.max_rank)[1:]
    print("module ranks      :", tuple(ranks))
    deltas = tuple(st.delta_t(t) for t in range(1, args.max_rank + 1))
    print("dimension gaps    :", deltas)
    norms = tuple(st.orbit_count_norm(t) for t in range(1, args.max_norm + 1))
    print("norm orbit counts :", norms)
    print("pairing values    :", st.pairing_values())

    sing = tuple(st.singular_solve(t).dimension
                 for t in range(1, args.max_singular + 1))
    print("singular dims     :", sing)

    for t in (2, 3):
        mod = st.module_generators(t)
        print(f"index-{t} generators: {mod.weight_poly_str()}")
        print(f"index-{t} dim series: {mod.series_str(20)}")

    save_tables()


if __name__ == "__main__":
    main()
