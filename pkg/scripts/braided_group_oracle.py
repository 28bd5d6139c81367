"""Count braided group structures on Z_n by brute force and by the census.

    python3 scripts/braided_group_oracle.py [--n 2]

The oracle loops over action tables directly (all tables for n = 2, tables
whose rows or columns are bijections for n = 3).  The census side collects
one-object records with |V| = n over the groups of order n^2 and transports
their actions to Z_n along every isomorphism.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from oracles import all_tables, census_structures, oracle_braided_groups, perm_tables  # noqa: E402

DOMAINS = {2: ["C4", "C2xC2"], 3: ["C9", "C3xC3"]}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, choices=sorted(DOMAINS), default=2)
    args = ap.parse_args()
    n = args.n
    start = time.perf_counter()
    if n == 2:
        oracle = oracle_braided_groups(2, all_tables(2))
    else:
        oracle = oracle_braided_groups(3, perm_tables(3), perm_tables(3, by_columns=True))
    t_oracle = time.perf_counter() - start
    census = census_structures(DOMAINS[n], n)
    print(f"oracle: {len(oracle)} structure(s) on Z{n} in {t_oracle * 1000:.0f}ms")
    print(f"census over {', '.join(DOMAINS[n])}: {len(census)} structure(s)")
    print("match" if oracle == census else "MISMATCH")
    return 0 if oracle == census else 1


if __name__ == "__main__":
    sys.exit(main())
