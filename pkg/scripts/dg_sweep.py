"""Compare the dg axiom list with the raw group axioms of the triple product.

    python3 scripts/dg_sweep.py [--objects 3]

Sweeps every structurally valid handy input over Z2 with trivial actions,
``n`` objects (any unital magma with O as unit), any normalized sigma and
any harpoon fixing O, and reports agreement.
"""

import argparse
import itertools
import time
from collections import Counter

import numpy as np

from braided_groupoids.constructors import (
    HandyInput,
    handy_product_table,
    raw_group_check,
    trivial_actions,
    validate_handy,
)
from braided_groupoids.errors import InvalidInput
from braided_groupoids.groups import cyclic


def candidates(n):
    F = cyclic(2)
    L, R = trivial_actions(F)
    free = [(i, j) for i in range(1, n) for j in range(1, n)]
    perms = [list(p) for p in itertools.permutations(range(1, n))]
    for vals in itertools.product(range(n), repeat=len(free)):
        ob = np.zeros((n, n), dtype=np.int64)
        ob[0] = ob[:, 0] = np.arange(n)
        for (i, j), v in zip(free, vals):
            ob[i, j] = v
        for perm in perms:
            hp = [list(range(n)), [0, *perm]]
            for sv in itertools.product(range(2), repeat=len(free)):
                sig = np.zeros((n, n), dtype=np.int64)
                sig[1:, 1:] = np.array(sv).reshape(n - 1, n - 1)
                try:
                    yield HandyInput(F, L, R, ob, sig, hp)
                except InvalidInput:
                    pass


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--objects", type=int, default=3)
    args = ap.parse_args()
    start = time.perf_counter()
    tally = Counter()
    failed = Counter()
    for inp in candidates(args.objects):
        rep = validate_handy(inp)
        raw, _ = raw_group_check(handy_product_table(inp))
        tally[(rep.ok, raw)] += 1
        failed.update(rep.failed)
    total = sum(tally.values())
    agree = tally[(True, True)] + tally[(False, False)]
    print(f"{total} candidates in {time.perf_counter() - start:.1f}s")
    print(f"  groups: {tally[(True, True)]}, not groups: {tally[(False, False)]}, disagreements: {total - agree}")
    print("  axiom failures:", dict(sorted(failed.items())))


if __name__ == "__main__":
    main()
