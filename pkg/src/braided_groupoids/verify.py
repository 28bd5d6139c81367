"""Deciding braidedness of a factorization datum along three independent routes.

* ``c1c2c3``: the three table identities on the structure maps (fast path).
* ``m_morphism``: the map ``m`` from the big groupoid to the vertical one is a
  groupoid morphism.
* ``braid``: the transported actions form a matched pair, satisfy
  ``fg = (f⇀g)(f↼g)`` on every composable pair, and the induced ``c`` solves
  the braid equation on every composable triple.

Counterexamples carry all inputs and both evaluated sides.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import RouteDisagreement
from .factorization import DerivedMaps, FactorizationDatum, derive_maps
from .groupoid import ActionTables, MatchedPairActions, actions, m_table

ROUTES = ("c1c2c3", "m_morphism", "braid")

BRAIDED = "braided"
NOT_BRAIDED = "not-braided"
NOT_APPLICABLE = "not-applicable"


@dataclass
class RouteResult:
    name: str
    ok: bool
    counterexample: dict | None = None
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"route": self.name, "ok": self.ok, "seconds": round(self.seconds, 6)}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class VerificationReport:
    is_braided: bool | None
    routes: dict[str, RouteResult] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.is_braided is None:
            return NOT_APPLICABLE
        return BRAIDED if self.is_braided else NOT_BRAIDED

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "routes": [r.to_dict() for r in self.routes.values()],
        }


def _first(mask: np.ndarray):
    hit = np.argwhere(mask)
    return None if len(hit) == 0 else tuple(int(i) for i in hit[0])


def _i(x) -> int:
    return int(x)


# ---------------------------------------------------------------------------
# route 1


def check_c1_c2_c3(datum: FactorizationDatum, maps: DerivedMaps) -> RouteResult:
    start = time.perf_counter()
    t = datum.D.table
    phi = datum.phi_array
    vi, hi = datum.V.index_array, datum.H.index_array
    violations: dict[str, dict] = {}

    rhs = t[maps.lamV, phi[maps.rhoV]]
    bad = _first(rhs != vi[None, :, None])
    if bad is not None:
        P, i, Q = bad
        violations["c1"] = {
            "equation": "c1",
            "P": P, "g": _i(vi[i]), "Q": Q,
            "lhs": _i(vi[i]),
            "rhs": _i(rhs[P, i, Q]),
            "lamV": _i(maps.lamV[P, i, Q]), "rhoV": _i(maps.rhoV[P, i, Q]),
        }  # fmt: skip

    rhs = t[maps.lamH, phi[maps.rhoH]]
    lhs = phi[hi]
    bad = _first(rhs != lhs[None, :, None])
    if bad is not None:
        P, j, Q = bad
        violations["c2"] = {
            "equation": "c2",
            "P": P, "x": _i(hi[j]), "Q": Q,
            "lhs": _i(lhs[j]),
            "rhs": _i(rhs[P, j, Q]),
            "lamH": _i(maps.lamH[P, j, Q]), "rhoH": _i(maps.rhoH[P, j, Q]),
        }  # fmt: skip

    lhs = t[phi[hi][:, None], vi[None, :]]
    rhs = t[maps.tri_left, phi[maps.tri_right]]
    bad = _first(lhs != rhs)
    if bad is not None:
        j, i = bad
        violations["c3"] = {
            "equation": "c3",
            "x": _i(hi[j]), "g": _i(vi[i]),
            "lhs": _i(lhs[j, i]),
            "rhs": _i(rhs[j, i]),
            "x|>g": _i(maps.tri_left[j, i]), "x<|g": _i(maps.tri_right[j, i]),
        }  # fmt: skip

    first = next(iter(violations.values()), None)
    return RouteResult(
        "c1c2c3",
        not violations,
        first,
        time.perf_counter() - start,
        {"violated": sorted(violations), "violations": violations} if violations else {},
    )


# ---------------------------------------------------------------------------
# route 2


def check_m_morphism(datum: FactorizationDatum, maps: DerivedMaps) -> RouteResult:
    """``m(ab) = m(a) m(b)`` over every composable pair, and ``m(id) = id``.

    ``m`` never reads the source object, so pairs that differ only in their
    source give the same equation; the source is fixed at 0.
    """
    start = time.perf_counter()
    t = datum.D.table
    M = m_table(datum, maps)
    n = datum.n_objects
    ce = None
    bad_id = _first(M[0, :] != 0)
    if bad_id is not None:
        (Q,) = bad_id
        ce = {"kind": "identity", "object": Q, "image": _i(M[0, Q])}
    else:
        nD = datum.D.order
        for z in range(nD):
            # lhs[Q, w, R] = m(z*w, R); rhs = m(z, Q) m(w, R)
            zw = t[z]
            lhs = np.broadcast_to(M[zw][None, :, :], (n, nD, n))
            rhs = t[M[z][:, None, None], M[None, :, :]]
            bad = _first(lhs != rhs)
            if bad is not None:
                Q, w, R = bad
                ce = {
                    "kind": "product",
                    "a": [0, z, Q],
                    "b": [Q, w, R],
                    "lhs": _i(lhs[Q, w, R]),
                    "rhs": _i(rhs[Q, w, R]),
                }
                break
    return RouteResult("m_morphism", ce is None, ce, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# route 3


def matched_pair_violation(
    acts: ActionTables, acting_table: np.ndarray, acted_table: np.ndarray
) -> dict | None:
    """First failure of the matched-pair axioms for actions of a groupoid
    ``(P, a, Q)`` on a groupoid ``(Q, b, R)``, both in position coordinates."""
    L, LO, Rt = acts.left_pos, acts.left_obj, acts.right_pos
    n, nA, _, nB, _ = L.shape
    P_ = np.arange(n)
    A_ = np.arange(nA)
    B_ = np.arange(nB)

    # unit axioms: id ⇀ g = g, x ↼ id = x
    Pi, Bi, Ri = np.ix_(P_, B_, P_)
    bad = _first((L[Pi, 0, Pi, Bi, Ri] != Bi) | (LO[Pi, 0, Pi, Bi, Ri] != Ri))
    if bad is not None:
        return {"axiom": "left unit", "P": bad[0], "g": bad[1], "R": bad[2]}
    Pi, Ai, Qi = np.ix_(P_, A_, P_)
    bad = _first((Rt[Pi, Ai, Qi, 0, Qi] != Ai) | (LO[Pi, Ai, Qi, 0, Qi] != Pi))
    if bad is not None:
        return {"axiom": "right unit", "P": bad[0], "x": bad[1], "Q": bad[2]}

    # x=(P,a,Q), y=(Q,b,R) in the acting groupoid; g=(R,c,T), h=(T,d,U) in the acted one
    for P in range(n):
        Ai, Qi, Bi, Ri, Ci, Ti = np.ix_(A_, P_, A_, P_, B_, P_)
        # (xy) ⇀ g = x ⇀ (y ⇀ g)
        ab = acting_table[Ai, Bi]
        k1, S1 = L[Qi, Bi, Ri, Ci, Ti], LO[Qi, Bi, Ri, Ci, Ti]
        lhs_k, lhs_S = L[P, ab, Ri, Ci, Ti], LO[P, ab, Ri, Ci, Ti]
        rhs_k, rhs_S = L[P, Ai, Qi, k1, S1], LO[P, Ai, Qi, k1, S1]
        bad = _first((lhs_k != rhs_k) | (lhs_S != rhs_S))
        if bad is not None:
            a, Q, b, R, c, T = bad
            return {"axiom": "left action", "x": [P, a, Q], "y": [Q, b, R], "g": [R, c, T]}
        # xy ↼ g = (x ↼ (y ⇀ g)) (y ↼ g)
        y1 = Rt[Qi, Bi, Ri, Ci, Ti]
        y2 = Rt[P, Ai, Qi, k1, S1]
        lhs_y = Rt[P, ab, Ri, Ci, Ti]
        lhs_S = LO[P, ab, Ri, Ci, Ti]
        rhs_S = LO[P, Ai, Qi, k1, S1]
        bad = _first((lhs_y != acting_table[y2, y1]) | (lhs_S != rhs_S))
        if bad is not None:
            a, Q, b, R, c, T = bad
            return {"axiom": "xy<-g", "x": [P, a, Q], "y": [Q, b, R], "g": [R, c, T]}

        Ai, Qi, Ci, Ri, Di, Ti = np.ix_(A_, P_, B_, P_, B_, P_)
        # x ⇀ gh = (x ⇀ g)((x ↼ g) ⇀ h)
        cd = acted_table[Ci, Di]
        lhs_k, lhs_S = L[P, Ai, Qi, cd, Ti], LO[P, Ai, Qi, cd, Ti]
        k1, S1, y1 = L[P, Ai, Qi, Ci, Ri], LO[P, Ai, Qi, Ci, Ri], Rt[P, Ai, Qi, Ci, Ri]
        k2, S2 = L[S1, y1, Ri, Di, Ti], LO[S1, y1, Ri, Di, Ti]
        bad = _first((lhs_k != acted_table[k1, k2]) | (lhs_S != S2))
        if bad is not None:
            a, Q, c, R, d, T = bad
            return {"axiom": "x->gh", "x": [P, a, Q], "g": [Q, c, R], "h": [R, d, T]}
        # (x ↼ g) ↼ h = x ↼ gh
        lhs_y = Rt[S1, y1, Ri, Di, Ti]
        rhs_y = Rt[P, Ai, Qi, cd, Ti]
        bad = _first(lhs_y != rhs_y)
        if bad is not None:
            a, Q, c, R, d, T = bad
            return {"axiom": "right action", "x": [P, a, Q], "g": [Q, c, R], "h": [R, d, T]}
    return None


def braid_equation_violation(T: ActionTables) -> dict | None:
    """First composable triple where ``(c×1)(1×c)(c×1) != (1×c)(c×1)(1×c)``."""
    K, S, Y = T.left_pos, T.left_obj, T.right_pos
    n, nV = K.shape[0], K.shape[1]
    P_, V_ = np.arange(n), np.arange(nV)
    for P in range(n):
        a, Q, b, R, c, U = np.ix_(V_, P_, V_, P_, V_, P_)
        # left side
        k1, S1, y1 = K[P, a, Q, b, R], S[P, a, Q, b, R], Y[P, a, Q, b, R]
        k2, S2, y2 = K[S1, y1, R, c, U], S[S1, y1, R, c, U], Y[S1, y1, R, c, U]
        k3, S3, y3 = K[P, k1, S1, k2, S2], S[P, k1, S1, k2, S2], Y[P, k1, S1, k2, S2]
        left = (k3, S3, y3, S2, y2)
        # right side
        m1, T1, z1 = K[Q, b, R, c, U], S[Q, b, R, c, U], Y[Q, b, R, c, U]
        m2, T2, z2 = K[P, a, Q, m1, T1], S[P, a, Q, m1, T1], Y[P, a, Q, m1, T1]
        m3, T3, z3 = K[T2, z2, T1, z1, U], S[T2, z2, T1, z1, U], Y[T2, z2, T1, z1, U]
        right = (m2, T2, m3, T3, z3)
        diff = np.zeros(np.broadcast(*left, *right).shape, dtype=bool)
        for lv, rv in zip(left, right):
            diff |= lv != rv
        bad = _first(diff)
        if bad is not None:
            ai, Qi, bi, Ri, ci, Ui = bad
            return {
                "triple": [[P, ai, Qi], [Qi, bi, Ri], [Ri, ci, Ui]],
                "lhs": [_i(v[bad]) for v in np.broadcast_arrays(*left)],
                "rhs": [_i(v[bad]) for v in np.broadcast_arrays(*right)],
            }
    return None


def braiding_is_bijective(T: ActionTables) -> bool:
    K, S, Y = T.left_pos, T.left_obj, T.right_pos
    n, nV = K.shape[0], K.shape[1]
    P = np.arange(n)[:, None, None, None, None]
    R = np.arange(n)[None, None, None, None, :]
    code = (((P * nV + K) * n + S) * nV + Y) * n + R
    return len(np.unique(code)) == code.size


def check_braid_route(datum: FactorizationDatum, acts: MatchedPairActions | None = None) -> RouteResult:
    start = time.perf_counter()
    acts = acts or actions(datum)
    T = acts._require_transported()
    vt = acts.v_table
    ce = matched_pair_violation(T, vt, vt)
    if ce is not None:
        ce = {"part": "matched pair", **ce}
    if ce is None:
        K, Y = T.left_pos, T.right_pos
        nV = K.shape[1]
        prod = vt[np.arange(nV)[None, :, None, None, None], np.arange(nV)[None, None, None, :, None]]
        bad = _first(vt[K, Y] != prod)
        if bad is not None:
            P, i, Q, k, R = bad
            V = datum.V.elements
            ce = {
                "part": "ec1",
                "f": [P, V[i], Q],
                "g": [Q, V[k], R],
                "lhs": V[prod[0, i, 0, k, 0]],
                "rhs": V[vt[K[bad], Y[bad]]],
            }
    if ce is None:
        ce = braid_equation_violation(T)
        if ce is not None:
            ce = {"part": "braid equation", **ce}
    return RouteResult(
        "braid",
        ce is None,
        ce,
        time.perf_counter() - start,
        {"bijective": braiding_is_bijective(T)},
    )


# ---------------------------------------------------------------------------


def verify(
    datum: FactorizationDatum,
    maps: DerivedMaps | None = None,
    routes: tuple[str, ...] = ROUTES,
    strict: bool = True,
) -> VerificationReport:
    """Run the requested routes; with ``strict`` a disagreement raises."""
    if datum.phi is None:
        return VerificationReport(None)
    maps = maps or derive_maps(datum)
    results: dict[str, RouteResult] = {}
    for name in routes:
        if name == "c1c2c3":
            results[name] = check_c1_c2_c3(datum, maps)
        elif name == "m_morphism":
            results[name] = check_m_morphism(datum, maps)
        elif name == "braid":
            results[name] = check_braid_route(datum)
        else:
            raise ValueError(f"unknown route {name!r}")
    verdicts = {r.ok for r in results.values()}
    if len(verdicts) > 1 and strict:
        raise RouteDisagreement(
            "braidedness routes disagree",
            verdicts={k: r.ok for k, r in results.items()},
        )
    is_braided = next(iter(results.values())).ok if results else None
    return VerificationReport(is_braided, results)


def is_braided(datum: FactorizationDatum, maps: DerivedMaps | None = None) -> bool:
    if datum.phi is None:
        return False
    return check_c1_c2_c3(datum, maps or derive_maps(datum)).ok
