import itertools

import numpy as np

from braided_groupoids.constructors import check_braided_group, handy_product_table, raw_group_check, validate_handy
from braided_groupoids.groups import cyclic, parse_ref
from braided_groupoids.search import SearchSpec, census_records

from corpus import handy_candidates_z2
from oracles import all_tables, census_structures, naive_is_group, oracle_braided_groups, perm_tables


def test_z2_oracle_count_is_one():
    sols = oracle_braided_groups(2, all_tables(2))
    assert len(sols) == 1
    (L, R), = sols
    assert L == ((0, 1), (0, 1)) and R == ((0, 0), (1, 1))


def test_z2_census_matches_oracle():
    assert census_structures(["C4", "C2xC2"], 2) == oracle_braided_groups(2, all_tables(2))


def test_z3_census_matches_oracle():
    oracle = oracle_braided_groups(3, perm_tables(3), perm_tables(3, by_columns=True))
    assert len(oracle) == 1
    assert census_structures(["C9", "C3xC3"], 3) == oracle


def test_oracle_agrees_with_check_braided_group_on_z2():
    F = cyclic(2)
    sols = oracle_braided_groups(2, all_tables(2))
    for L in all_tables(2):
        for R in all_tables(2):
            key = (tuple(map(tuple, L)), tuple(map(tuple, R)))
            assert check_braided_group(F, np.array(L), np.array(R)) == (key in sols)


def test_raw_group_check_matches_naive_loops():
    cands = handy_candidates_z2()[::7]
    for inp in cands:
        t = handy_product_table(inp).tolist()
        assert raw_group_check(np.array(t))[0] == naive_is_group(t)


def test_product_table_matches_formula_by_hand():
    inp = handy_candidates_z2()[5]
    t = handy_product_table(inp)
    F = inp.F
    for z, w in itertools.product(range(inp.order), repeat=2):
        g, P, x = inp.decode(z)
        h, Q, y = inp.decode(w)
        xl, xr = int(inp.tri_left[x, h]), int(inp.tri_right[x, h])
        X = int(inp.harpoon[F.inv(xl), P])
        Y = int(inp.harpoon[xr, Q])
        s = int(inp.sigma[X, Y])
        expect = inp.index(F.prod(g, xl, s), int(inp.objects[X, Y]), F.prod(F.inv(s), xr, y))
        assert t[z, w] == expect


def test_dg_list_is_equivalent_to_group_axioms_on_z2_sweep():
    for inp in handy_candidates_z2():
        assert validate_handy(inp).ok == raw_group_check(handy_product_table(inp))[0]


def test_k4_has_six_one_object_records():
    recs = census_records(SearchSpec(["C2xC2"]))
    assert sum(r.fingerprint["n_objects"] == 1 for r in recs) == 6
    assert parse_ref("C2xC2").order == 4
