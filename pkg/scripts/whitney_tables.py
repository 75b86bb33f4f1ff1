#!/usr/bin/env python3
"""Print Whitney numbers of both kinds for all four poset families.

Useful for eyeballing the twin/dual pattern: the partition families share
one pair of sequences, the forest families the swapped pair.

Usage: python scripts/whitney_tables.py [--max-n N]
"""

import argparse

from whitneydual import (
    build_flyn,
    build_pointed,
    build_spanning_forest_poset,
    build_weighted,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=5)
    args = parser.parse_args()

    families = [
        ("weighted partitions", build_weighted),
        ("pointed partitions", build_pointed),
        ("rooted spanning forests", build_spanning_forest_poset),
        ("pointed Lyndon forests", lambda n: build_flyn(n, "pointed")),
        ("bicolored Lyndon forests", lambda n: build_flyn(n, "weighted")),
    ]
    for n in range(1, args.max_n + 1):
        print(f"n = {n}")
        for name, build in families:
            p = build(n)
            print(f"  {name:26s} w = {p.whitney_first()}  W = {p.whitney_second()}")
        print()


if __name__ == "__main__":
    main()
