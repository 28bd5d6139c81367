"""Brute-force oracles written independently of the library's own checkers."""

import itertools

import numpy as np

from braided_groupoids.constructors import transported_actions_on_v
from braided_groupoids.factorization import derive_maps
from braided_groupoids.groups import cyclic, enumerate_isomorphisms, whole_group
from braided_groupoids.search import SearchSpec, census_records


def oracle_braided_groups(n, lefts, rights=None):
    """Pairs (left, right) of tables on Z_n satisfying the matched-pair axioms
    and x+g = (x|>g) + (x<|g), checked with plain loops."""
    add = lambda a, b: (a + b) % n
    found = set()
    for L in lefts:
        for R in lefts if rights is None else rights:
            ok = True
            for x, y, g in itertools.product(range(n), repeat=3):
                if (
                    L[x][L[y][g]] != L[add(x, y)][g]
                    or R[R[x][y]][g] != R[x][add(y, g)]
                    or L[x][add(y, g)] != add(L[x][y], L[R[x][y]][g])
                    or R[add(x, y)][g] != add(R[x][L[y][g]], R[y][g])
                ):
                    ok = False
                    break
            if ok and all(L[0][g] == g and R[x][0] == x and add(x, g) == add(L[x][g], R[x][g])
                          for x in range(n) for g in range(n)):
                found.add((tuple(map(tuple, L)), tuple(map(tuple, R))))
    return found


def all_tables(n):
    return [np.array(t).reshape(n, n).tolist() for t in itertools.product(range(n), repeat=n * n)]


def perm_tables(n, by_columns=False):
    """Tables whose rows (or columns) are bijections: ``x |> -`` and ``- <| g``
    act by bijections."""
    perms = list(itertools.permutations(range(n)))
    out = []
    for rows in itertools.product(perms, repeat=n):
        t = np.array(rows)
        out.append((t.T if by_columns else t).tolist())
    return out


def census_structures(refs, n):
    """Braided group structures on V = Z_n found by the one-object census,
    transported along every isomorphism V -> Z_n."""
    Zn = cyclic(n)
    found = set()
    for rec in census_records(SearchSpec(refs)):
        if rec.fingerprint["n_objects"] != 1 or rec.fingerprint["order_V"] != n:
            continue
        datum = rec.load_datum()
        left, right = transported_actions_on_v(datum, derive_maps(datum))
        V = datum.V.as_group()
        for iso in enumerate_isomorphisms(whole_group(V), whole_group(Zn)):
            f = np.array(iso.images)
            L = np.empty((n, n), dtype=int)
            R = np.empty((n, n), dtype=int)
            L[f[:, None], f[None, :]] = f[left]
            R[f[:, None], f[None, :]] = f[right]
            found.add((tuple(map(tuple, L.tolist())), tuple(map(tuple, R.tolist()))))
    return found


def naive_is_group(table):
    n = len(table)
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            return False
    if any(table[0][a] != a or table[a][0] != a for a in range(n)):
        return False
    return all(any(table[a][b] == 0 and table[b][a] == 0 for b in range(n)) for a in range(n))
