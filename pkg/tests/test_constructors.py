import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braided_groupoids.constructors import (
    HandyInput,
    NonHandyInput,
    adjoint_actions,
    bicharacter_psi,
    build_handy_group,
    build_nonhandy,
    characters,
    check_braided_group,
    coro1_input,
    coro2_input,
    derive_psi,
    detect_handy,
    handy_braiding_closed_form,
    handy_datum_is_braided,
    handy_product_table,
    nonhandy_braiding_closed_form,
    normal_subgroups_corollary_check,
    raw_group_check,
    reconstruct_handy,
    trivial_actions,
    validate_handy,
)
from braided_groupoids.errors import (
    HandyAxiomViolation,
    HypothesisFailure,
    InvalidInput,
    NotBraidedGroup,
    NotHandy,
    PsiCocycleViolation,
    PsiNotCentral,
)
from braided_groupoids.factorization import build_datum, derive_maps
from braided_groupoids.groupoid import Arrow, braiding, composable_vertical_pairs
from braided_groupoids.groups import (
    are_isomorphic,
    cyclic,
    dihedral,
    direct_product,
    parse_ref,
    subgroup,
    symmetric,
)
from braided_groupoids.verify import BRAIDED

from corpus import (
    fixed_objects,
    handy_candidates_mixed,
    handy_candidates_z2,
    handy_instances,
    is_braided,
    nonhandy_instances,
    s3s3_diagonal_data,
)

Z2, Z3, S3 = cyclic(2), cyclic(3), symmetric(3)


def test_check_braided_group_examples():
    for ref in ("C1", "C4", "C2xC2", "C6"):
        F = parse_ref(ref)
        assert check_braided_group(F, *trivial_actions(F))
    for ref in ("S3", "D4", "C5"):
        F = parse_ref(ref)
        assert check_braided_group(F, *adjoint_actions(F))
    assert not check_braided_group(S3, *trivial_actions(S3))


def test_validate_handy_examples():
    inp = handy_instances()["Z2/Z3"]
    assert validate_handy(inp).ok
    inv = handy_instances()["Z2/Z3 inversion"]
    assert validate_handy(inv).ok
    assert validate_handy(HandyInput(cyclic(1), [[0]], [[0]], Z3.table, np.zeros((3, 3), int), [[0, 1, 2]])).ok


def test_mixed_candidates_name_the_failed_axiom():
    failed = [validate_handy(c).failed for c in handy_candidates_mixed()]
    assert failed == [[], [], ["dg1"], ["dg7"]]
    for c in handy_candidates_mixed():
        assert validate_handy(c).ok == raw_group_check(handy_product_table(c))[0]


def test_structural_validation():
    L, R = trivial_actions(Z2)
    z = np.zeros((3, 3), int)
    with pytest.raises(InvalidInput) as err:
        HandyInput(Z2, L, R, Z3.table, z, [[0, 1, 2], [1, 0, 2]])  # moves O
    assert err.value.path is not None
    with pytest.raises(InvalidInput):
        HandyInput(Z2, L, R, Z3.table, np.ones((3, 3), int), fixed_objects(Z2, 3))
    with pytest.raises(InvalidInput):
        HandyInput(Z2, L, R, [[1, 0, 2], [0, 1, 2], [2, 2, 0]], z, fixed_objects(Z2, 3))


def test_build_handy_examples():
    triv = build_handy_group(HandyInput(cyclic(1), [[0]], [[0]], Z3.table, np.zeros((3, 3), int), [[0, 1, 2]]))
    assert triv.D.order == 3 and triv.n_objects == 3 and triv.V.order == 1
    assert are_isomorphic(triv.D, Z3)
    d = build_handy_group(handy_instances()["Z2/Z3"])
    assert d.D.order == 12 and are_isomorphic(d.D, parse_ref("C2xC3xC2"))


def test_handy_product_normalization():
    inp = handy_instances()["Z2/K4 cocycle"]
    t = handy_product_table(inp)
    F = inp.F
    for g, P, Q, y in itertools.product(range(2), range(4), range(4), range(2)):
        s = int(inp.sigma[P, Q])
        expect = inp.index(F.mul(g, s), int(inp.objects[P, Q]), F.mul(F.inv(s), y))
        assert t[inp.index(g, P, 0), inp.index(0, Q, y)] == expect


def test_handy_axiom_violation_carries_report():
    with pytest.raises(HandyAxiomViolation) as err:
        build_handy_group(handy_candidates_mixed()[2])
    assert not err.value.details["report"]["dg1"]["ok"]


def test_handy_datum_is_braided_examples():
    assert handy_datum_is_braided(handy_instances()["trivial"]).verdict == BRAIDED
    assert handy_datum_is_braided(handy_instances()["Z2/Z3"]).verdict == BRAIDED
    inp = handy_instances()["S3adj/Z2"]
    assert handy_datum_is_braided(inp).verdict == BRAIDED
    assert build_handy_group(inp).D.order == 72
    with pytest.raises(NotBraidedGroup):
        handy_datum_is_braided(handy_candidates_mixed()[1])


@pytest.mark.parametrize("name", sorted(handy_instances()))
def test_handy_round_trip(name):
    inp = handy_instances()[name]
    out = reconstruct_handy(build_handy_group(inp))
    assert out.same_tables(inp)


def test_round_trip_trivial_and_z3():
    out = reconstruct_handy(build_handy_group(handy_instances()["Z2/Z3"]))
    assert not out.sigma.any()
    assert (out.harpoon == np.arange(3)[None, :]).all()
    assert np.array_equal(out.objects, Z3.table)


def test_order8_is_not_handy():
    d = build_nonhandy(nonhandy_instances()["order 8"])
    det = detect_handy(d)
    assert not det.handy
    assert det.witnesses["cas1"]["product"] == [1, 4]  # (0,0,1)(1,0,0)
    with pytest.raises(NotHandy) as err:
        reconstruct_handy(d)
    assert "cas1" in err.value.details["witnesses"]


def test_psi_trivial_iff_handy():
    for name, inp in nonhandy_instances().items():
        d = build_nonhandy(inp)
        trivial = not inp.psi.any()
        assert detect_handy(d).handy == trivial, name


def test_order8_is_dihedral():
    d = build_nonhandy(nonhandy_instances()["order 8"])
    assert d.D.order == 8 and d.n_objects == 2
    assert are_isomorphic(d.D, dihedral(4))


def test_s3_sign_bits_satisfy_cocycle_identities():
    inp = nonhandy_instances()["S3 sign bits"]
    assert inp.psi.any()
    assert is_braided(build_nonhandy(inp))


def test_psi_errors():
    L, R = trivial_actions(Z2)
    with pytest.raises(PsiNotCentral) as err:
        NonHandyInput(Z2, L, R, S3, [[0, 0], [0, 1]])
    assert err.value.path == "$.psi[1][1]"
    with pytest.raises(PsiCocycleViolation) as err:
        NonHandyInput(Z2, L, R, Z3, [[0, 0], [0, 1]])
    assert err.value.details["equation"] in ("d1", "d2")
    with pytest.raises(PsiNotCentral):
        bicharacter_psi(Z2, S3, [0, 1], [0, 1], 1, 2)


def test_characters():
    assert len(characters(S3, 2)) == 2
    assert len(characters(parse_ref("C2xC2"), 2)) == 4
    assert len(characters(Z3, 3)) == 3


def test_derive_psi():
    assert np.array_equal(derive_psi(build_nonhandy(nonhandy_instances()["order 8"])), [[0, 0], [0, 1]])
    assert not derive_psi(build_handy_group(handy_instances()["Z2/Z3"])).any()
    diag = next(d for d in s3s3_diagonal_data() if is_braided(d))
    assert not derive_psi(diag).any()
    with pytest.raises(HypothesisFailure):
        derive_psi(build_handy_group(handy_instances()["Z2/Z3 inversion"]))


def test_derive_psi_round_trips_bicharacters():
    for name in ("Z3 bicharacter", "K4 mixed", "Z4 parity"):
        inp = nonhandy_instances()[name]
        assert np.array_equal(derive_psi(build_nonhandy(inp)), inp.psi), name


def test_normal_subgroups_corollary():
    assert normal_subgroups_corollary_check(build_handy_group(handy_instances()["trivial"])) is True
    assert normal_subgroups_corollary_check(build_handy_group(handy_instances()["Z2/Z3"])) is True
    diag = next(d for d in s3s3_diagonal_data() if is_braided(d))
    assert not diag.H.is_normal()
    assert normal_subgroups_corollary_check(diag) is None


def test_coro2_inputs_validate():
    inp = coro2_input(Z2, *trivial_actions(Z2), Z3, [[0, 1, 2], [0, 2, 1]])
    assert validate_handy(inp).ok
    K4 = parse_ref("C2xC2")
    inp = coro2_input(Z2, *trivial_actions(Z2), K4, [[0, 1, 2, 3], [0, 2, 1, 3]])
    assert validate_handy(inp).ok
    with pytest.raises(InvalidInput):
        coro2_input(Z2, *trivial_actions(Z2), Z3, [[0, 1, 2], [1, 2, 0]])


def test_coro1_inputs_validate():
    K4 = parse_ref("C2xC2")
    sigma = handy_instances()["Z2/K4 cocycle"].sigma
    inp = coro1_input(Z2, *trivial_actions(Z2), K4, sigma)
    assert validate_handy(inp).ok
    with pytest.raises(InvalidInput):
        coro1_input(Z2, *trivial_actions(Z2), K4, [[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])


def _all_pairs_agree(inp, datum, closed_form):
    return all(closed_form(inp, a, b) == braiding(datum, a, b) for a, b in composable_vertical_pairs(datum))


@pytest.mark.parametrize("name", sorted(handy_instances()))
def test_handy_closed_form_braiding(name):
    inp = handy_instances()[name]
    assert _all_pairs_agree(inp, build_handy_group(inp), handy_braiding_closed_form)


@pytest.mark.parametrize("name", sorted(nonhandy_instances()))
def test_nonhandy_closed_form_braiding(name):
    inp = nonhandy_instances()[name]
    assert _all_pairs_agree(inp, build_nonhandy(inp), nonhandy_braiding_closed_form)


def test_one_object_closed_form_is_braided_group_braiding():
    inp = handy_instances()["S3adj/C1"]
    L, R = inp.tri_left, inp.tri_right
    for x, y in itertools.product(range(6), repeat=2):
        first, second = handy_braiding_closed_form(inp, Arrow(0, inp.index(x, 0, 0), 0), Arrow(0, inp.index(y, 0, 0), 0))
        assert (first.elem, second.elem) == (inp.index(int(L[x, y]), 0, 0), inp.index(int(R[x, y]), 0, 0))


def test_order8_closed_form_example():
    inp = nonhandy_instances()["order 8"]
    a = Arrow(0, inp.index(1, 0, 0), 0)
    first, second = nonhandy_braiding_closed_form(inp, a, a)
    assert first.dst == second.src == 1
    assert (first.src, second.dst) == (0, 0)


def test_trivial_z3_closed_form_objects():
    inp = handy_instances()["Z2/Z3"]
    for a, b in composable_vertical_pairs(build_handy_group(inp)):
        first, second = handy_braiding_closed_form(inp, a, b)
        assert first.dst == (a.src - a.dst + b.dst) % 3
        assert (first.elem, second.elem) == (b.elem, a.elem)


@settings(max_examples=40, deadline=None)
@given(k=st.integers(0, 95))
def test_valid_z2_candidates_are_braided_and_round_trip(k):
    inp = handy_candidates_z2()[k]
    if not validate_handy(inp).ok:
        with pytest.raises(HandyAxiomViolation):
            build_handy_group(inp)
        return
    d = build_handy_group(inp)
    assert is_braided(d) and reconstruct_handy(d).same_tables(inp)


def test_subgroups_of_built_group():
    d = build_handy_group(handy_instances()["Z4/K4"])
    assert d.D.order == 4 * 4 * 4 and d.n_objects == 4
    assert subgroup(d.D, d.V.elements) == d.V
    assert build_datum(d.D, d.V, d.H, d.gamma, d.phi).n_objects == 4
    assert direct_product(Z2, Z2).order == 4
    assert derive_maps(d).tri_obj.shape == (4, 4)


def _literal_middle_object(inp, a, b):
    """Middle object ``ST`` with S, T read literally as
    ``S = (σ(P,Q^-1)^-1 ▷ y)^-1 ⇁ (PQ^-1)`` and ``T = (σ(P,Q^-1)^-1 ▷ y) ⇁ R``."""
    F = inp.F
    P, Q, R = a.src, a.dst, b.dst
    y = inp.decode(b.elem)[0]
    Qi = int(inp.object_inverse[Q])
    w = int(inp.tri_left[F.inv(int(inp.sigma[P, Qi])), y])
    S = int(inp.harpoon[F.inv(w), inp.objects[P, Qi]])
    T = int(inp.harpoon[w, R])
    return int(inp.objects[S, T])


@pytest.mark.parametrize("name", sorted(handy_instances()))
def test_literal_object_formula_needs_trivial_harpoon(name):
    # the literal reading drops the twist x ⇁ Q^-1; the corrected closed form keeps it
    inp = handy_instances()[name]
    d = build_handy_group(inp)
    agree = [_literal_middle_object(inp, a, b) == braiding(d, a, b)[0].dst for a, b in composable_vertical_pairs(d)]
    trivial_harpoon = bool((inp.harpoon == np.arange(inp.n_objects)[None, :]).all())
    assert all(agree) == trivial_harpoon


@pytest.mark.parametrize("name", sorted(handy_instances()))
def test_inverse_formula_matches_table_inverse(name):
    # (g,P,x)^-1 = (x^-1 ▷ g^-1, ((x^-1 ◁ g^-1) g) ⇁ P^-1, x^-1 ◁ g^-1)
    inp = handy_instances()[name]
    d = build_handy_group(inp)
    F = inp.F
    for z in range(d.D.order):
        g, P, x = inp.decode(z)
        xi, gi = F.inv(x), F.inv(g)
        left, right = int(inp.tri_left[xi, gi]), int(inp.tri_right[xi, gi])
        obj = int(inp.harpoon[F.mul(right, g), inp.object_inverse[P]])
        assert inp.index(left, obj, right) == d.D.inv(z)
