"""Run a census over catalog groups and print a per-group summary.

    python3 scripts/run_census.py --out census.jsonl [--groups D4 S3xS3] [--resume] [--jobs 2]

Without ``--groups`` the catalog of cyclic groups up to order 24, dihedral
groups up to order 24 and S1..S4 is used.
"""

import argparse
import time
from collections import Counter, defaultdict

from braided_groupoids.search import SearchSpec, default_jobs, read_records, run_census_to_file

CATALOG = [f"C{n}" for n in range(1, 25)] + [f"D{n}" for n in range(1, 13)] + [f"S{n}" for n in range(1, 5)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", required=True)
    ap.add_argument("--groups", nargs="+", default=CATALOG)
    ap.add_argument("--min-objects", type=int, default=1)
    ap.add_argument("--resume", action="store_true")
    ap.add_argument("--jobs", type=int, default=None)
    args = ap.parse_args()

    spec = SearchSpec(args.groups, min_objects=args.min_objects)
    start = time.perf_counter()
    units = run_census_to_file(spec, args.out, resume=args.resume, jobs=args.jobs or default_jobs())
    records = read_records(args.out)
    print(f"{units} units in {time.perf_counter() - start:.1f}s, {len(records)} records")

    by_group = defaultdict(Counter)
    for r in records:
        fp = r.fingerprint
        by_group[args.groups[r.cursor[0]]][(fp["n_objects"], "handy" if r.handy else "non-handy")] += 1
    print(f"{'group':<8} {'#objects':>8} {'kind':<10} {'records':>7}")
    for g in args.groups:
        for (n, kind), c in sorted(by_group[g].items()):
            print(f"{g:<8} {n:>8} {kind:<10} {c:>7}")


if __name__ == "__main__":
    main()
