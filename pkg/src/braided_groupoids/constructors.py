"""Builders for braided groupoid data.

Handy data ``F ⋈_σ P _σ⋈ F``: a group F with actions ▷ (left) and ◁ (right),
a unital magma P with inverses, a map ``σ: P×P -> F`` and an action
``⇁`` of F on P.  Element ``(g, P, x)`` of the built group has index
``(g*#P + P)*|F| + x``.

Non-handy data: a group A with actions, a group P and ``ψ: A×A -> Z(P)``;
the group lives on ``A × P × A`` with the same index layout.

Table conventions: ``tri_left[x, g] = x ▷ g``, ``tri_right[x, g] = x ◁ g``,
``objects[P, Q] = PQ`` (object 0 is the unit), ``sigma[P, Q]``,
``harpoon[g, P] = g ⇁ P``, ``psi[a, b]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ClosedFormMismatch,
    GroupAxiomError,
    HandyAxiomViolation,
    HypothesisFailure,
    InvalidInput,
    NotBraided,
    NotBraidedGroup,
    NotComposable,
    NotHandy,
    PsiCocycleViolation,
    PsiNotCentral,
    ReconstructionError,
)
from .factorization import DerivedMaps, FactorizationDatum, build_datum, derive_maps
from .groupoid import Arrow
from .groups import (
    FiniteGroup,
    GroupMorphism,
    Subgroup,
    _extend,
    build_group,
    cyclic,
    greedy_generators,
    whole_group,
)
from .verify import VerificationReport, check_c1_c2_c3, verify


def _table(a, shape: tuple[int, ...], bound: int, name: str) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    if arr.shape != shape:
        raise InvalidInput(f"{name} must have shape {shape}, got {arr.shape}", path=f"$.{name}")
    if arr.size and (arr.min() < 0 or arr.max() >= bound):
        raise InvalidInput(f"{name} has entries outside 0..{bound - 1}", path=f"$.{name}")
    arr.setflags(write=False)
    return arr


def _first(mask: np.ndarray):
    hit = np.argwhere(mask)
    return None if len(hit) == 0 else tuple(int(i) for i in hit[0])


# ---------------------------------------------------------------------------
# braided groups


def matched_pair_violation(F: FiniteGroup, tri_left: np.ndarray, tri_right: np.ndarray) -> dict | None:
    """First failure of: ▷ left action, ◁ right action, and the two
    compatibilities ``x▷gh = (x▷g)((x◁g)▷h)``, ``xy◁g = (x◁(y▷g))(y◁g)``."""
    t, L, R = F.table, tri_left, tri_right
    n = F.order
    ar = np.arange(n)
    if (bad := _first(L[0] != ar)) is not None:
        return {"axiom": "1|>g = g", "g": bad[0]}
    if (bad := _first(R[:, 0] != ar)) is not None:
        return {"axiom": "x<|1 = x", "x": bad[0]}
    x, y, g = np.ix_(ar, ar, ar)
    if (bad := _first(L[x, L[y, g]] != L[t[x, y], g])) is not None:
        return {"axiom": "x|>(y|>g) = xy|>g", "x": bad[0], "y": bad[1], "g": bad[2]}
    x, g, h = np.ix_(ar, ar, ar)
    if (bad := _first(R[R[x, g], h] != R[x, t[g, h]])) is not None:
        return {"axiom": "(x<|g)<|h = x<|gh", "x": bad[0], "g": bad[1], "h": bad[2]}
    if (bad := _first(L[x, t[g, h]] != t[L[x, g], L[R[x, g], h]])) is not None:
        return {"axiom": "x|>gh = (x|>g)((x<|g)|>h)", "x": bad[0], "g": bad[1], "h": bad[2]}
    x, y, g = np.ix_(ar, ar, ar)
    if (bad := _first(R[t[x, y], g] != t[R[x, L[y, g]], R[y, g]])) is not None:
        return {"axiom": "xy<|g = (x<|(y|>g))(y<|g)", "x": bad[0], "y": bad[1], "g": bad[2]}
    return None


def check_braided_group(F: FiniteGroup, tri_left, tri_right) -> bool:
    L = np.asarray(tri_left)
    R = np.asarray(tri_right)
    if matched_pair_violation(F, L, R) is not None:
        return False
    ar = np.arange(F.order)
    return bool(np.array_equal(F.table, F.table[L, R[ar[:, None], ar[None, :]]]))


def trivial_actions(F: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    ar = np.arange(F.order)
    return np.broadcast_to(ar[None, :], (F.order,) * 2).copy(), np.broadcast_to(ar[:, None], (F.order,) * 2).copy()


def adjoint_actions(F: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    """``x ▷ g = x g x^-1`` and trivial ``◁``; always a braided group."""
    t = F.table
    ar = np.arange(F.order)
    left = t[t[ar[:, None], ar[None, :]], F.inverses[ar][:, None]]
    return left, np.broadcast_to(ar[:, None], (F.order,) * 2).copy()


# ---------------------------------------------------------------------------
# handy input


@dataclass(frozen=True, eq=False)
class HandyInput:
    F: FiniteGroup
    tri_left: np.ndarray
    tri_right: np.ndarray
    objects: np.ndarray
    sigma: np.ndarray
    harpoon: np.ndarray
    object_inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        nF = self.F.order
        objects = np.array(self.objects, dtype=np.int64)
        if objects.ndim != 2 or objects.shape[0] != objects.shape[1] or objects.shape[0] == 0:
            raise InvalidInput("object table must be a non-empty square array", path="$.objects")
        nP = objects.shape[0]
        set_ = object.__setattr__
        set_(self, "tri_left", _table(self.tri_left, (nF, nF), nF, "tri_left"))
        set_(self, "tri_right", _table(self.tri_right, (nF, nF), nF, "tri_right"))
        set_(self, "objects", _table(objects, (nP, nP), nP, "objects"))
        set_(self, "sigma", _table(self.sigma, (nP, nP), nF, "sigma"))
        set_(self, "harpoon", _table(self.harpoon, (nF, nP), nP, "harpoon"))
        set_(self, "object_inverse", _object_inverses(self.objects))
        problem = _handy_structure_violation(self)
        if problem is not None:
            raise InvalidInput(problem[0], path=problem[1])

    @property
    def n_objects(self) -> int:
        return int(self.objects.shape[0])

    @property
    def order(self) -> int:
        return self.F.order**2 * self.n_objects

    def index(self, g: int, P: int, x: int) -> int:
        return (g * self.n_objects + P) * self.F.order + x

    def decode(self, z: int) -> tuple[int, int, int]:
        gP, x = divmod(int(z), self.F.order)
        g, P = divmod(gP, self.n_objects)
        return g, P, x

    def same_tables(self, other: "HandyInput") -> bool:
        return self.F.same_table(other.F) and all(
            np.array_equal(getattr(self, k), getattr(other, k))
            for k in ("tri_left", "tri_right", "objects", "sigma", "harpoon")
        )


def _object_inverses(objects: np.ndarray) -> np.ndarray:
    n = objects.shape[0]
    inv = np.full(n, -1, dtype=np.int64)
    for P in range(n):
        hits = np.nonzero((objects[P] == 0) & (objects[:, P] == 0))[0]
        if len(hits) == 1:
            inv[P] = hits[0]
    return inv


def _handy_structure_violation(inp: HandyInput) -> tuple[str, str] | None:
    P_ = np.arange(inp.n_objects)
    ob, sig, hp = inp.objects, inp.sigma, inp.harpoon
    if not (np.array_equal(ob[0], P_) and np.array_equal(ob[:, 0], P_)):
        return "object 0 is not a two-sided unit", "$.objects"
    if (bad := _first(inp.object_inverse < 0)) is not None:
        return f"object {bad[0]} has no unique two-sided inverse", f"$.objects[{bad[0]}]"
    if (bad := _first((sig[:, 0] != 0) | (sig[0, :] != 0))) is not None:
        return f"sigma(P, O) and sigma(O, P) must be 1 (P = {bad[0]})", f"$.sigma[{bad[0]}]"
    if (bad := _first(hp[:, 0] != 0)) is not None:
        return f"g ⇁ O must be O (g = {bad[0]})", f"$.harpoon[{bad[0]}][0]"
    if (bad := _first(sig[P_, inp.object_inverse] != 0)) is not None:
        return f"sigma(P, P^-1) must be 1 (P = {bad[0]})", f"$.sigma[{bad[0]}]"
    if not np.array_equal(hp[0], P_):
        return "1 ⇁ P must be P", "$.harpoon[0]"
    t = inp.F.table
    g, h = np.ix_(np.arange(inp.F.order), np.arange(inp.F.order))
    lhs = hp[g[:, :, None], hp[h[:, :, None], P_[None, None, :]]]
    rhs = hp[t[g, h][:, :, None], P_[None, None, :]]
    if (bad := _first(lhs != rhs)) is not None:
        return f"⇁ is not an action: g={bad[0]}, h={bad[1]}, P={bad[2]}", "$.harpoon"
    return None


@dataclass
class AxiomResult:
    ok: bool
    counterexample: dict | None = None


@dataclass
class HandyReport:
    axioms: dict[str, AxiomResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.axioms.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, r in self.axioms.items() if not r.ok]

    def to_dict(self) -> dict:
        return {k: {"ok": r.ok, "counterexample": r.counterexample} for k, r in self.axioms.items()}


HANDY_AXIOMS = ("dg1", "dg2", "dg4", "dg6", "dg7", "dg8")


def validate_handy(inp: HandyInput) -> HandyReport:
    """Check each group axiom of the twisted product in its list form."""
    t, inv = inp.F.table, inp.F.inverses
    ob, sig, hp = inp.objects, inp.sigma, inp.harpoon
    L, R = inp.tri_left, inp.tri_right
    nF, nP = inp.F.order, inp.n_objects
    out: dict[str, AxiomResult] = {}

    ce = matched_pair_violation(inp.F, L, R)
    out["dg1"] = AxiomResult(ce is None, ce)

    P, Q, Rr = np.ix_(np.arange(nP), np.arange(nP), np.arange(nP))
    s_pq, s_qr = sig[P, Q], sig[Q, Rr]
    lhs = ob[ob[P, Q], hp[inv[s_pq], Rr]]
    rhs = ob[hp[inv[s_qr], P], ob[Q, Rr]]
    bad = _first(lhs != rhs)
    out["dg2"] = AxiomResult(bad is None, None if bad is None else {
        "P": bad[0], "Q": bad[1], "R": bad[2], "lhs": int(lhs[bad]), "rhs": int(rhs[bad])})

    lhs = t[s_qr, sig[hp[inv[s_qr], P], ob[Q, Rr]]]
    rhs = t[s_pq, sig[ob[P, Q], hp[inv[s_pq], Rr]]]
    bad = _first(lhs != rhs)
    out["dg4"] = AxiomResult(bad is None, None if bad is None else {
        "P": bad[0], "Q": bad[1], "R": bad[2], "lhs": int(lhs[bad]), "rhs": int(rhs[bad])})

    g, P, Q = np.ix_(np.arange(nF), np.arange(nP), np.arange(nP))
    s = sig[P, Q]
    lhs = ob[hp[g, P], hp[g, Q]]
    rhs = hp[R[g, s], ob[P, Q]]
    bad = _first(lhs != rhs)
    out["dg6"] = AxiomResult(bad is None, None if bad is None else {
        "g": bad[0], "P": bad[1], "Q": bad[2], "lhs": int(lhs[bad]), "rhs": int(rhs[bad])})

    lhs = np.broadcast_to(L[g, s], (nF, nP, nP))
    rhs = sig[hp[g, P], hp[g, Q]]
    bad = _first(lhs != rhs)
    out["dg7"] = AxiomResult(bad is None, None if bad is None else {
        "g": bad[0], "P": bad[1], "Q": bad[2], "lhs": int(lhs[bad]), "rhs": int(rhs[bad])})

    lhs = t[L[g, s], R[g, s]]
    rhs = np.broadcast_to(t[g, s], (nF, nP, nP))
    bad = _first(lhs != rhs)
    out["dg8"] = AxiomResult(bad is None, None if bad is None else {
        "g": bad[0], "P": bad[1], "Q": bad[2], "lhs": int(lhs[bad]), "rhs": int(rhs[bad])})
    return HandyReport(out)


def handy_product_table(inp: HandyInput) -> np.ndarray:
    """``(g,P,x)(h,Q,y) = (g(x▷h)σ(X,Y), XY, σ(X,Y)^-1 (x◁h) y)`` with
    ``X = (x▷h)^-1 ⇁ P`` and ``Y = (x◁h) ⇁ Q``."""
    t, inv = inp.F.table, inp.F.inverses
    ob, sig, hp = inp.objects, inp.sigma, inp.harpoon
    nF, nP = inp.F.order, inp.n_objects
    g, P, x, h, Q, y = np.ix_(*(np.arange(k) for k in (nF, nP, nF, nF, nP, nF)))
    xl, xr = inp.tri_left[x, h], inp.tri_right[x, h]
    X = hp[inv[xl], P]
    Y = hp[xr, Q]
    s = sig[X, Y]
    first = t[t[g, xl], s]
    mid = ob[X, Y]
    last = t[t[inv[s], xr], y]
    n = nF * nF * nP
    return ((first * nP + mid) * nF + last).reshape(n, n)


def raw_group_check(table: np.ndarray) -> tuple[bool, str | None]:
    """Whether a product table is a group with unit 0, by the raw axioms."""
    try:
        build_group(table)
    except GroupAxiomError as exc:
        return False, f"{type(exc).__name__}: {exc.message}"
    return True, None


def build_handy_group(inp: HandyInput, label: str | None = None) -> FactorizationDatum:
    """The group ``F ⋈_σ P _σ⋈ F`` with ``V = F×O×1``, ``H = 1×O×F``,
    ``gamma_P = (1,P,1)`` and ``phi(1,O,x) = (x,O,1)``."""
    report = validate_handy(inp)
    if not report.ok:
        raise HandyAxiomViolation(f"axioms {report.failed} fail", report=report.to_dict())
    nF, nP = inp.F.order, inp.n_objects
    D = build_group(handy_product_table(inp), label or f"{inp.F.label}⋈P{nP}⋈{inp.F.label}")
    V = Subgroup(D, tuple(inp.index(g, 0, 0) for g in range(nF)))
    H = Subgroup(D, tuple(inp.index(0, 0, x) for x in range(nF)))
    phi = GroupMorphism(H, V, tuple(inp.index(x, 0, 0) for x in range(nF)))
    gamma = [inp.index(0, P, 0) for P in range(nP)]
    return build_datum(D, V, H, gamma, phi)


def handy_closed_form_mismatches(inp: HandyInput, datum: FactorizationDatum, maps: DerivedMaps) -> list[dict]:
    """Compare the tabulated structure maps with their closed forms:

    ``lamV(P,(h,O,1),Q) = (h σ(h^-1⇁P, Q), O, 1)``,
    ``rhoV = (1, O, σ(h^-1⇁P, Q)^-1)``,
    ``lamH(P,(1,O,y),Q) = (σ(P, y⇁Q), O, 1)``,
    ``rhoH = (1, O, σ(P, y⇁Q)^-1 y)``,
    ``(1,O,y) ▷ (h,O,1) = (y▷h, O, 1)``, ``(1,O,y) ◁ (h,O,1) = (1, O, y◁h)``.
    Positions in V and H coincide with F indices.
    """
    t, inv = inp.F.table, inp.F.inverses
    sig, hp = inp.sigma, inp.harpoon
    nF, nP = inp.F.order, inp.n_objects
    h, P, Q = np.ix_(np.arange(nF), np.arange(nP), np.arange(nP))
    Vpos, Hpos = datum.V.position, datum.H.position
    s = sig[hp[inv[h], P], Q]
    expected = {
        "lamV": (t[h, s], Vpos[maps.lamV].transpose(1, 0, 2)),
        "rhoV": (inv[s], Hpos[maps.rhoV].transpose(1, 0, 2)),
    }
    s = sig[P, hp[h, Q]]
    expected["lamH"] = (s, Vpos[maps.lamH].transpose(1, 0, 2))
    expected["rhoH"] = (t[inv[s], h], Hpos[maps.rhoH].transpose(1, 0, 2))
    expected["tri_left"] = (inp.tri_left, Vpos[maps.tri_left])
    expected["tri_right"] = (inp.tri_right, Hpos[maps.tri_right])
    expected["tri_obj"] = (np.zeros((nF, nF), dtype=np.int64), maps.tri_obj)
    out = []
    for name, (want, got) in expected.items():
        want = np.broadcast_to(want, got.shape)
        bad = _first(want != got)
        if bad is not None:
            out.append({"map": name, "at": list(bad), "closed_form": int(want[bad]), "table": int(got[bad])})
    return out


def handy_datum_is_braided(inp: HandyInput) -> VerificationReport:
    if not check_braided_group(inp.F, inp.tri_left, inp.tri_right):
        raise NotBraidedGroup("(F, ▷, ◁) is not a braided group")
    datum = build_handy_group(inp)
    maps = derive_maps(datum)
    mism = handy_closed_form_mismatches(inp, datum, maps)
    if mism:
        raise ClosedFormMismatch("structure maps differ from their closed forms", mismatches=mism)
    return verify(datum, maps)


# ---------------------------------------------------------------------------
# recognizing handy data


@dataclass
class HandyDetection:
    handy: bool
    witnesses: dict[str, dict] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"handy": self.handy, "witnesses": self.witnesses}


def _set_equality_witness(D: FiniteGroup, A, B, name: str) -> dict | None:
    """Witness that ``{a*b}`` differs from ``{b*a}`` (A, B index lists)."""
    t = D.table
    A = np.asarray(A)
    B = np.asarray(B)
    AB = t[A[:, None], B[None, :]]
    BA = t[B[:, None], A[None, :]]
    ab_set = np.zeros(D.order, dtype=bool)
    ab_set[AB.ravel()] = True
    ba_set = np.zeros(D.order, dtype=bool)
    ba_set[BA.ravel()] = True
    bad = _first(~ab_set[BA])
    if bad is not None:
        i, j = bad
        return {"equation": name, "product": [int(B[i]), int(A[j])], "value": int(BA[i, j]), "side": "right"}
    bad = _first(~ba_set[AB])
    if bad is not None:
        i, j = bad
        return {"equation": name, "product": [int(A[i]), int(B[j])], "value": int(AB[i, j]), "side": "left"}
    return None


def detect_handy(datum: FactorizationDatum) -> HandyDetection:
    """Check ``VH = HV``, ``γ(P)H = Hγ(P)`` and ``γ(P)V = Vγ(P)``.

    A witness names a product lying on one side but not the other; e.g. for
    cas1 ``product = [h, v]`` with ``h*v`` outside ``VH``.
    """
    D = datum.D
    V, H, gam = datum.V.index_array, datum.H.index_array, datum.gamma_array
    witnesses = {}
    for name, A, B in (("cas1", V, H), ("cas2", gam, H), ("cas3", gam, V)):
        w = _set_equality_witness(D, A, B, name)
        if w is not None:
            witnesses[name] = w
    return HandyDetection(not witnesses, witnesses)


def transported_actions_on_v(datum: FactorizationDatum, maps: DerivedMaps) -> tuple[np.ndarray, np.ndarray]:
    """``g ▷ h = φ^-1(g) ▷ h`` and ``g ◁ h = φ(φ^-1(g) ◁ h)`` as position tables on V."""
    phi, phi_inv = datum.phi_array, datum.phi_inverse_array
    Vpos, Hpos = datum.V.position, datum.H.position
    j = Hpos[phi_inv[datum.V.index_array]]
    left = Vpos[maps.tri_left[j, :]]
    right = Vpos[phi[maps.tri_right[j, :]]]
    return left, right


def reconstruct_handy(datum: FactorizationDatum, maps: DerivedMaps | None = None) -> HandyInput:
    """Recover ``(F, ▷, ◁, P-operation, σ, ⇁)`` from a braided handy datum.

    F is V (element i is ``V.elements[i]``), ``PQ = (P;1;Q)``,
    ``σ(P,Q) = lamV(P,1,Q)`` and ``g γ_P = γ_{g⇁P} g``.  The map
    ``g γ_P x -> (g, P, φ(x))`` is checked to be an isomorphism onto the
    rebuilt group.
    """
    detection = detect_handy(datum)
    if not detection.handy:
        raise NotHandy(f"fails {sorted(detection.witnesses)}", witnesses=detection.witnesses)
    maps = maps or derive_maps(datum)
    datum.require_phi()
    if not check_c1_c2_c3(datum, maps).ok:
        raise NotBraided("datum is not braided")
    D = datum.D
    t, inv = D.table, D.inverses
    V = datum.V
    F = V.as_group(f"V({D.label})")
    left, right = transported_actions_on_v(datum, maps)
    objects = maps.objV[:, 0, :]
    sigma = V.position[maps.lamV[:, 0, :]]
    gam = datum.gamma_array
    # lhs[g, P, P'] = gamma_{P'}^-1 g gamma_P
    cand = t[t[inv[gam][None, None, :], V.index_array[:, None, None]], gam[None, :, None]]
    hits = cand == V.index_array[:, None, None]
    if not (hits.sum(axis=2) == 1).all():
        g, P = _first(hits.sum(axis=2) != 1)
        raise ReconstructionError(f"no unique object P' with g γ_P = γ_P' g for g={V.elements[g]}, P={P}")
    harpoon = hits.argmax(axis=2)
    try:
        out = HandyInput(F, left, right, objects, sigma, harpoon)
    except InvalidInput as exc:
        raise ReconstructionError(f"recovered tables are not handy input: {exc.message}") from exc
    f = handy_isomorphism(datum, out)
    rebuilt = handy_product_table(out)
    if sorted(f.tolist()) != list(range(D.order)):
        raise ReconstructionError("g γ_P x -> (g, P, φ(x)) is not a bijection")
    bad = _first(f[t] != rebuilt[f[:, None], f[None, :]])
    if bad is not None:
        raise ReconstructionError(f"g γ_P x -> (g, P, φ(x)) is not multiplicative at {bad}")
    return out


def handy_isomorphism(datum: FactorizationDatum, inp: HandyInput) -> np.ndarray:
    """``f(g γ_P x) = (g, P, φ(x))`` as an index array over D."""
    Vpos = datum.V.position
    g = Vpos[datum.fac_g]
    x = Vpos[datum.phi_array[datum.fac_x]]
    return (g * inp.n_objects + datum.fac_obj) * inp.F.order + x


def normal_subgroups_corollary_check(datum: FactorizationDatum, maps: DerivedMaps | None = None) -> bool | None:
    """For braided data with V and H normal: handy, and ⇁ trivial.

    Returns None when V or H is not normal (the check does not apply).
    """
    if not (datum.V.is_normal() and datum.H.is_normal()):
        return None
    maps = maps or derive_maps(datum)
    if not detect_handy(datum).handy:
        return False
    recovered = reconstruct_handy(datum, maps)
    trivial = np.broadcast_to(np.arange(datum.n_objects)[None, :], recovered.harpoon.shape)
    return bool(np.array_equal(recovered.harpoon, trivial))


# ---------------------------------------------------------------------------
# builders where the object magma is a group


def coro2_input(F: FiniteGroup, tri_left, tri_right, P: FiniteGroup, action) -> HandyInput:
    """Trivial σ and ⇁ acting on the group P by automorphisms."""
    action = np.asarray(action, dtype=np.int64)
    if matched_pair_violation(F, np.asarray(tri_left), np.asarray(tri_right)) is not None:
        raise InvalidInput("(F, ▷, ◁) is not a matched pair")
    t = P.table
    lhs = action[:, t]
    rhs = t[action[:, :, None], action[:, None, :]]
    if not np.array_equal(lhs, rhs):
        raise InvalidInput("⇁ does not act by group automorphisms")
    zero = np.zeros((P.order, P.order), dtype=np.int64)
    return HandyInput(F, tri_left, tri_right, P.table, zero, action)


def coro1_input(F: FiniteGroup, tri_left, tri_right, P: FiniteGroup, sigma) -> HandyInput:
    """A normalized 2-cocycle σ with ▷ fixing its values and ◁ conjugating by
    them; ⇁ trivial."""
    sigma = np.asarray(sigma, dtype=np.int64)
    L, R = np.asarray(tri_left), np.asarray(tri_right)
    if matched_pair_violation(F, L, R) is not None:
        raise InvalidInput("(F, ▷, ◁) is not a matched pair")
    tF, tP = F.table, P.table
    a = np.arange(P.order)
    p, q, r = np.ix_(a, a, a)
    if not np.array_equal(tF[sigma[q, r], sigma[p, tP[q, r]]], tF[sigma[p, q], sigma[tP[p, q], r]]):
        raise InvalidInput("σ is not a 2-cocycle")
    s = np.unique(sigma)
    g = np.arange(F.order)
    if not (L[np.ix_(g, s)] == s[None, :]).all():
        raise InvalidInput("▷ must fix the values of σ")
    conj = tF[tF[F.inverses[s][None, :], g[:, None]], s[None, :]]
    if not np.array_equal(R[np.ix_(g, s)], conj):
        raise InvalidInput("◁ must act on σ-values by conjugation")
    harpoon = np.broadcast_to(a[None, :], (F.order, P.order)).copy()
    return HandyInput(F, L, R, P.table, sigma, harpoon)


# ---------------------------------------------------------------------------
# non-handy data


@dataclass(frozen=True, eq=False)
class NonHandyInput:
    A: FiniteGroup
    tri_left: np.ndarray
    tri_right: np.ndarray
    P: FiniteGroup
    psi: np.ndarray

    def __post_init__(self):
        nA = self.A.order
        object.__setattr__(self, "tri_left", _table(self.tri_left, (nA, nA), nA, "tri_left"))
        object.__setattr__(self, "tri_right", _table(self.tri_right, (nA, nA), nA, "tri_right"))
        object.__setattr__(self, "psi", _table(self.psi, (nA, nA), self.P.order, "psi"))
        center = np.zeros(self.P.order, dtype=bool)
        center[list(self.P.center)] = True
        bad = _first(~center[self.psi])
        if bad is not None:
            raise PsiNotCentral(
                f"psi{bad} = {self.psi[bad]} is not central", path=f"$.psi[{bad[0]}][{bad[1]}]"
            )
        ce = psi_cocycle_violation(self.A, self.tri_left, self.tri_right, self.P.table, self.psi)
        if ce is not None:
            raise PsiCocycleViolation(f"{ce['equation']} fails at {ce['triple']}", **ce)

    @property
    def n_objects(self) -> int:
        return self.P.order

    def index(self, a: int, P: int, c: int) -> int:
        return (a * self.P.order + P) * self.A.order + c

    def decode(self, z: int) -> tuple[int, int, int]:
        aP, c = divmod(int(z), self.A.order)
        a, P = divmod(aP, self.P.order)
        return a, P, c


def psi_cocycle_violation(A: FiniteGroup, L, R, P_table, psi) -> dict | None:
    """``ψ(a,bc) = ψ(a,b)ψ(a◁b,c)`` and ``ψ(ab,c) = ψ(a,b▷c)ψ(b,c)``."""
    t = A.table
    a, b, c = np.ix_(*(np.arange(A.order),) * 3)
    lhs = psi[a, t[b, c]]
    rhs = P_table[psi[a, b], psi[R[a, b], c]]
    bad = _first(lhs != rhs)
    if bad is not None:
        return {"equation": "d1", "triple": list(bad), "lhs": int(lhs[bad]), "rhs": int(rhs[bad])}
    lhs = psi[t[a, b], c]
    rhs = P_table[psi[a, L[b, c]], psi[b, c]]
    bad = _first(lhs != rhs)
    if bad is not None:
        return {"equation": "d2", "triple": list(bad), "lhs": int(lhs[bad]), "rhs": int(rhs[bad])}
    return None


def characters(A: FiniteGroup, modulus: int) -> list[np.ndarray]:
    """All homomorphisms from A to the integers mod ``modulus``."""
    C = cyclic(modulus)
    src, dst = whole_group(A), whole_group(C)
    gens = greedy_generators(src)
    out = []
    for imgs in itertools.product(range(modulus), repeat=len(gens)):
        images = _extend(src, dst, gens, imgs)
        if images is not None:
            out.append(np.array(images, dtype=np.int64))
    return out


def bicharacter_psi(A: FiniteGroup, P: FiniteGroup, chi_left, chi_right, z: int, modulus: int) -> np.ndarray:
    """``ψ(a, b) = z^(χ(a) χ'(b))`` for characters ``χ, χ': A -> Z/modulus`` and
    a central ``z`` of P whose order divides ``modulus``."""
    if z not in P.center:
        raise PsiNotCentral(f"{z} is not central in {P.label}")
    if P.power(z, modulus) != 0:
        raise InvalidInput(f"the order of {z} does not divide {modulus}")
    chi_left = np.asarray(chi_left)
    chi_right = np.asarray(chi_right)
    for chi in (chi_left, chi_right):
        if not np.array_equal(chi[A.table], (chi[:, None] + chi[None, :]) % modulus):
            raise InvalidInput("character is not a homomorphism")
    powers = np.array([P.power(z, k) for k in range(modulus)], dtype=np.int64)
    return powers[(chi_left[:, None] * chi_right[None, :]) % modulus]


def nonhandy_product_table(inp: NonHandyInput) -> np.ndarray:
    """``(a,P,c)(x,Q,z) = (a(c▷x), Pψ(c,x)Q, (c◁x)z)``."""
    t, tP = inp.A.table, inp.P.table
    nA, nP = inp.A.order, inp.P.order
    a, P, c, x, Q, z = np.ix_(*(np.arange(k) for k in (nA, nP, nA, nA, nP, nA)))
    first = t[a, inp.tri_left[c, x]]
    mid = tP[tP[P, inp.psi[c, x]], Q]
    last = t[inp.tri_right[c, x], z]
    n = nA * nA * nP
    return ((first * nP + mid) * nA + last).reshape(n, n)


def nonhandy_closed_form_mismatches(inp: NonHandyInput, datum: FactorizationDatum, maps: DerivedMaps) -> list[dict]:
    """``lamV(P,(a,1,1),Q) = (a,1,1)``, ``rhoV = 1``, ``lamH = 1``,
    ``rhoH(P,(1,1,a),Q) = (1,1,a)``, ``(1,1,a)▷(b,1,1) = (a▷b,1,1)`` and
    ``(1,1,a)◁(b,1,1) = (1,1,a◁b)``."""
    nA, nP = inp.A.order, inp.P.order
    a = np.arange(nA)[None, :, None]
    Vpos, Hpos = datum.V.position, datum.H.position
    shape = (nP, nA, nP)
    expected = {
        "lamV": (a, Vpos[maps.lamV]),
        "rhoV": (0, maps.rhoV),
        "lamH": (0, maps.lamH),
        "rhoH": (a, Hpos[maps.rhoH]),
        "tri_left": (inp.tri_left, Vpos[maps.tri_left]),
        "tri_right": (inp.tri_right, Hpos[maps.tri_right]),
    }
    out = []
    for name, (want, got) in expected.items():
        want = np.broadcast_to(want, got.shape if name.startswith("tri") else shape)
        bad = _first(want != got)
        if bad is not None:
            out.append({"map": name, "at": list(bad), "closed_form": int(want[bad]), "table": int(got[bad])})
    return out


def build_nonhandy(inp: NonHandyInput, label: str | None = None) -> FactorizationDatum:
    """The group on ``A × P × A`` with ``V = A×1×1``, ``H = 1×1×A``,
    ``gamma_P = (1,P,1)`` and ``phi(1,1,a) = (a,1,1)``; checked braided."""
    if not check_braided_group(inp.A, inp.tri_left, inp.tri_right):
        raise NotBraidedGroup("(A, ▷, ◁) is not a braided group")
    nA, nP = inp.A.order, inp.P.order
    D = build_group(nonhandy_product_table(inp), label or f"{inp.A.label}x{inp.P.label}x{inp.A.label}[psi]")
    V = Subgroup(D, tuple(inp.index(a, 0, 0) for a in range(nA)))
    H = Subgroup(D, tuple(inp.index(0, 0, a) for a in range(nA)))
    phi = GroupMorphism(H, V, tuple(inp.index(a, 0, 0) for a in range(nA)))
    datum = build_datum(D, V, H, [inp.index(0, P, 0) for P in range(nP)], phi)
    maps = derive_maps(datum)
    mism = nonhandy_closed_form_mismatches(inp, datum, maps)
    if mism:
        raise ClosedFormMismatch("structure maps differ from their closed forms", mismatches=mism)
    if not check_c1_c2_c3(datum, maps).ok:
        raise NotBraided("built datum is not braided")
    return datum


def derive_psi(datum: FactorizationDatum, maps: DerivedMaps | None = None) -> np.ndarray:
    """``ψ(g, h) = (φ^-1(g); h)`` as a table over V positions, valued in objects.

    Requires every ``gamma_P`` to commute with V and H.  The result is checked
    against both cocycle identities under ``P·Q = (P;1;Q)`` and for centrality
    in that operation.
    """
    D = datum.D
    t = D.table
    maps = maps or derive_maps(datum)
    gam = datum.gamma_array
    for name, S in (("V", datum.V), ("H", datum.H)):
        idx = S.index_array
        gs = t[gam[:, None], idx[None, :]]
        sg = t[idx[None, :], gam[:, None]]
        bad = _first(gs != sg)
        if bad is not None:
            P, i = bad
            raise HypothesisFailure(
                f"gamma_{P} does not commute with {idx[i]} in {name}",
                object=P, element=int(idx[i]), subgroup=name,
            )
    Hpos = datum.H.position
    j = Hpos[datum.phi_inverse_array[datum.V.index_array]]
    psi = maps.tri_obj[j, :]
    op = maps.objV[:, 0, :]
    left, right = transported_actions_on_v(datum, maps)
    V_group = datum.V.as_group()
    ce = psi_cocycle_violation(V_group, left, right, op, psi)
    if ce is not None:
        raise PsiCocycleViolation(f"derived psi fails {ce['equation']}", **ce)
    vals = np.unique(psi)
    if not np.array_equal(op[vals, :], op[:, vals].T):
        raise PsiCocycleViolation("derived psi values are not central for P·Q = (P;1;Q)")
    return psi


# ---------------------------------------------------------------------------
# closed-form braidings


def _vertical_coords(inp, a: Arrow, b: Arrow) -> tuple[int, int, int, int, int]:
    if a.dst != b.src:
        raise NotComposable(f"{a} and {b} are not composable")
    g, P0, x0 = inp.decode(a.elem)
    h, P1, x1 = inp.decode(b.elem)
    if P0 or x0 or P1 or x1:
        raise ValueError("closed-form braidings take vertical arrows (g, O, 1)")
    return a.src, g, a.dst, h, b.dst


def handy_braiding_closed_form(inp: HandyInput, a: Arrow, b: Arrow) -> tuple[Arrow, Arrow]:
    """Braiding of ``a = (P, (x,O,1), Q)`` and ``b = (Q, (y,O,1), R)``.

    With ``s = σ(P, x⇁Q^-1)`` and ``u = s^-1 x``:
    ``S = (u▷y)^-1 ⇁ (P·(x⇁Q^-1))``, ``T = (u◁y) ⇁ R`` and
    ``c(a, b) = ((P, (s(u▷y)σ(S,T), O, 1), ST), (ST, (σ(S,T)^-1 (u◁y), O, 1), R))``.
    """
    P, x, Q, y, R = _vertical_coords(inp, a, b)
    F = inp.F
    ob, sig, hp, L, Rt = inp.objects, inp.sigma, inp.harpoon, inp.tri_left, inp.tri_right
    Qx = int(hp[x, inp.object_inverse[Q]])
    s = int(sig[P, Qx])
    u = F.mul(F.inv(s), x)
    ul, ur = int(L[u, y]), int(Rt[u, y])
    S = int(hp[F.inv(ul), ob[P, Qx]])
    T = int(hp[ur, R])
    st = int(sig[S, T])
    ST = int(ob[S, T])
    first = F.prod(s, ul, st)
    second = F.mul(F.inv(st), ur)
    return Arrow(P, inp.index(first, 0, 0), ST), Arrow(ST, inp.index(second, 0, 0), R)


def nonhandy_braiding_closed_form(inp: NonHandyInput, a: Arrow, b: Arrow) -> tuple[Arrow, Arrow]:
    """``c(a, b) = ((P, (a▷b,1,1), S), (S, (a◁b,1,1), R))`` with ``S = ψ(a,b) P Q^-1 R``."""
    P, x, Q, y, R = _vertical_coords(inp, a, b)
    G = inp.P
    S = G.prod(int(inp.psi[x, y]), P, G.inv(Q), R)
    return (
        Arrow(P, inp.index(int(inp.tri_left[x, y]), 0, 0), S),
        Arrow(S, inp.index(int(inp.tri_right[x, y]), 0, 0), R),
    )
