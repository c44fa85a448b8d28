#!/usr/bin/env python3
"""Warm the on-disk cache: orbit product tables, generators, monomial bodies.

Run once after installation (or after deleting the cache) so that the test
suite and CLI start from precomputed expansions instead of cold arithmetic.
"""
import argparse
import time

from e8jacobi import config
from e8jacobi.genring import NAMED_POLYNOMIALS, expand, sakai_generators
from e8jacobi.orbitalg import load_tables, save_tables


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cache-dir", default=None,
                        help="cache directory (default: $E8JACOBI_CACHE)")
    parser.add_argument("--order", type=int, default=5,
                        help="highest q-order to precompute (default 5)")
    args = parser.parse_args()

    if args.cache_dir:
        config.configure(cache_dir=args.cache_dir)
    if config.get_config().cache_dir is None:
        parser.error("no cache directory: pass --cache-dir or set "
                     "E8JACOBI_CACHE")
    load_tables()

    trunc = args.order + 1
    t0 = time.time()
    gens = sakai_generators(trunc)
    print(f"generators at {len(gens)} names, order {args.order}: "
          f"{time.time() - t0:.1f}s")
    for name, poly in NAMED_POLYNOMIALS.items():
        t0 = time.time()
        expand(poly, trunc, gens)
        print(f"{name}: {time.time() - t0:.1f}s")
    save_tables()
    print("cache written to", config.get_config().cache_dir)


if __name__ == "__main__":
    main()
