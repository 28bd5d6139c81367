"""The connected groupoid of a factorization datum.

Arrows are stored gauge-free as ``(src, elem, dst)`` with ``elem`` in D and
composition ``(P, z, Q)(Q, w, R) = (P, z*w, R)``.  An arrow lies in the
vertical subgroupoid when ``elem`` is in V, and in the horizontal one when
``elem`` is in ``gamma_P H gamma_Q^-1``.

Both subgroupoids are parametrized as ``(P, position, Q)`` with the position
taken in V (resp. H); in those coordinates composition multiplies the
positions, so the action tables below are indexed
``[P, left_position, Q, right_position, R]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

import numpy as np

from .errors import NotComposable
from .factorization import DerivedMaps, FactorizationDatum
from .groups import FiniteGroup


class Arrow(NamedTuple):
    src: int
    elem: int
    dst: int


def compose(D: FiniteGroup, a: Arrow, b: Arrow) -> Arrow:
    if a.dst != b.src:
        raise NotComposable(f"target {a.dst} of {a} differs from source {b.src} of {b}")
    return Arrow(a.src, D.mul(a.elem, b.elem), b.dst)


def inverse(D: FiniteGroup, a: Arrow) -> Arrow:
    return Arrow(a.dst, D.inv(a.elem), a.src)


def identity_arrow(P: int) -> Arrow:
    return Arrow(P, 0, P)


def in_vertical(datum: FactorizationDatum, a: Arrow) -> bool:
    return a.elem in datum.V


def in_horizontal(datum: FactorizationDatum, a: Arrow) -> bool:
    D = datum.D
    return D.prod(D.inv(datum.gamma[a.src]), a.elem, datum.gamma[a.dst]) in datum.H


def horizontal_arrow(datum: FactorizationDatum, P: int, x: int, Q: int) -> Arrow:
    """The horizontal arrow ``gamma_P x gamma_Q^-1`` from P to Q."""
    D = datum.D
    return Arrow(P, D.prod(datum.gamma[P], x, D.inv(datum.gamma[Q])), Q)


def horizontal_param(datum: FactorizationDatum, a: Arrow) -> int:
    D = datum.D
    return D.prod(D.inv(datum.gamma[a.src]), a.elem, datum.gamma[a.dst])


def arrows(datum: FactorizationDatum) -> Iterator[Arrow]:
    """All arrows, lexicographic in (src, elem, dst)."""
    n = datum.n_objects
    for P in range(n):
        for z in range(datum.D.order):
            for Q in range(n):
                yield Arrow(P, z, Q)


def vertical_arrows(datum: FactorizationDatum) -> Iterator[Arrow]:
    n = datum.n_objects
    for P in range(n):
        for g in datum.V.elements:
            for Q in range(n):
                yield Arrow(P, g, Q)


def composable_vertical_pairs(datum: FactorizationDatum) -> Iterator[tuple[Arrow, Arrow]]:
    n = datum.n_objects
    for a in vertical_arrows(datum):
        for h in datum.V.elements:
            for R in range(n):
                yield a, Arrow(a.dst, h, R)


# ---------------------------------------------------------------------------
# the morphism m


def m_map(datum: FactorizationDatum, maps: DerivedMaps, a: Arrow) -> Arrow:
    """``m(a) = g * lamH(R, x, Q) * phi(rhoH(R, x, Q))`` where ``a.elem = g gamma_R x``."""
    phi = datum.phi_array
    g, R, x = datum.factorize(a.elem)
    j = int(datum.H.position[x])
    lam = int(maps.lamH[R, j, a.dst])
    rho = int(maps.rhoH[R, j, a.dst])
    return Arrow(a.src, datum.D.prod(g, lam, int(phi[rho])), a.dst)


def m_table(datum: FactorizationDatum, maps: DerivedMaps) -> np.ndarray:
    """``m`` as an array ``[z, Q]`` of V elements.

    The value never depends on the source object, so that axis is dropped.
    """
    phi = datum.phi_array
    t = datum.D.table
    g, R, x = datum.fac_g, datum.fac_obj, datum.fac_x
    j = datum.H.position[x]
    Q = np.arange(datum.n_objects)
    lam = maps.lamH[R[:, None], j[:, None], Q[None, :]]
    rho = maps.rhoH[R[:, None], j[:, None], Q[None, :]]
    return t[t[g[:, None], lam], phi[rho]]


# ---------------------------------------------------------------------------
# actions


@dataclass(frozen=True, eq=False)
class ActionTables:
    """Tables for a pair of actions ``x ⇀ g`` and ``x ↼ g`` on composable pairs.

    ``left_pos``/``left_obj`` give ``x ⇀ g = (P, left, S)``; ``right_pos`` gives
    ``x ↼ g = (S, right, R)``.  Positions are relative to the parametrizing
    subgroups (``acting`` for x and ``right_pos``, ``acted`` for g and
    ``left_pos``).
    """

    left_pos: np.ndarray
    left_obj: np.ndarray
    right_pos: np.ndarray


def _position_table(S) -> np.ndarray:
    idx = S.index_array
    return S.position[S.parent.table[np.ix_(idx, idx)]]


@dataclass(frozen=True, eq=False)
class MatchedPairActions:
    datum: FactorizationDatum
    horizontal: ActionTables
    transported: ActionTables | None

    @cached_property
    def v_table(self) -> np.ndarray:
        return _position_table(self.datum.V)

    @cached_property
    def h_table(self) -> np.ndarray:
        return _position_table(self.datum.H)

    def act_left(self, alpha: Arrow, beta: Arrow) -> Arrow:
        """``alpha ⇀ beta`` for a horizontal alpha and vertical beta."""
        d = self.datum
        P, j, Q, i, R = self._coords(alpha, beta, horizontal=True)
        T = self.horizontal
        return Arrow(P, d.V.elements[T.left_pos[P, j, Q, i, R]], int(T.left_obj[P, j, Q, i, R]))

    def act_right(self, alpha: Arrow, beta: Arrow) -> Arrow:
        d = self.datum
        P, j, Q, i, R = self._coords(alpha, beta, horizontal=True)
        T = self.horizontal
        S = int(T.left_obj[P, j, Q, i, R])
        return horizontal_arrow(d, S, d.H.elements[T.right_pos[P, j, Q, i, R]], R)

    def transported_left(self, a: Arrow, b: Arrow) -> Arrow:
        d = self.datum
        P, i, Q, k, R = self._coords(a, b, horizontal=False)
        T = self._require_transported()
        return Arrow(P, d.V.elements[T.left_pos[P, i, Q, k, R]], int(T.left_obj[P, i, Q, k, R]))

    def transported_right(self, a: Arrow, b: Arrow) -> Arrow:
        d = self.datum
        P, i, Q, k, R = self._coords(a, b, horizontal=False)
        T = self._require_transported()
        return Arrow(int(T.left_obj[P, i, Q, k, R]), d.V.elements[T.right_pos[P, i, Q, k, R]], R)

    def _require_transported(self) -> ActionTables:
        if self.transported is None:
            self.datum.require_phi()
        return self.transported  # type: ignore[return-value]

    def _coords(self, a: Arrow, b: Arrow, horizontal: bool):
        d = self.datum
        if a.dst != b.src:
            raise NotComposable(f"{a} and {b} are not composable")
        if horizontal:
            first = int(d.H.position[horizontal_param(d, a)])
        else:
            first = int(d.V.position[a.elem])
        second = int(d.V.position[b.elem])
        if first < 0 or second < 0:
            raise ValueError("arrow outside the expected subgroupoid")
        return a.src, first, a.dst, second, b.dst


def _action_tables(datum: FactorizationDatum, x_elems: np.ndarray, to_h) -> ActionTables:
    """Factor ``gamma_P x gamma_Q^-1 g gamma_R`` for every (P, x, Q, g, R)."""
    D = datum.D
    t = D.table
    gam = datum.gamma_array
    gam_inv = D.inverses[gam]
    vi = datum.V.index_array
    n = datum.n_objects
    # w[P, j, Q, i, R]
    left = t[gam[:, None], x_elems[None, :]]                       # P, j
    left = t[left[:, :, None], gam_inv[None, None, :]]              # P, j, Q
    left = t[left[:, :, :, None], vi[None, None, None, :]]          # P, j, Q, i
    w = t[left[..., None], gam[None, None, None, None, :]]          # P, j, Q, i, R
    assert w.shape == (n, len(x_elems), n, len(vi), n)
    return ActionTables(
        left_pos=datum.V.position[datum.fac_g[w]],
        left_obj=datum.fac_obj[w],
        right_pos=to_h(datum.fac_x[w]),
    )


def actions(datum: FactorizationDatum) -> MatchedPairActions:
    """Matched-pair actions from the exact factorization, plus their
    phi-transported versions on the vertical groupoid when phi is present."""
    horizontal = _action_tables(datum, datum.H.index_array, lambda y: datum.H.position[y])
    transported = None
    if datum.phi is not None:
        phi, phi_inv = datum.phi_array, datum.phi_inverse_array
        transported = _action_tables(
            datum, phi_inv[datum.V.index_array], lambda y: datum.V.position[phi[y]]
        )
    return MatchedPairActions(datum, horizontal, transported)


def braiding(datum: FactorizationDatum, a: Arrow, b: Arrow) -> tuple[Arrow, Arrow]:
    """``c(a, b) = (a ⇀ b, a ↼ b)`` for composable vertical arrows."""
    if a.dst != b.src:
        raise NotComposable(f"{a} and {b} are not composable")
    D = datum.D
    phi, phi_inv = datum.phi_array, datum.phi_inverse_array
    if not (a.elem in datum.V and b.elem in datum.V):
        raise ValueError("braiding is defined on vertical arrows only")
    gam = datum.gamma
    w = D.prod(gam[a.src], int(phi_inv[a.elem]), D.inv(gam[a.dst]), b.elem, gam[b.dst])
    k, S, y = datum.factorize(w)
    return Arrow(a.src, k, S), Arrow(S, int(phi[y]), b.dst)


BRAIDING_COLUMNS = ("src1", "elem1", "mid", "elem2", "dst2", "out1_elem", "out_mid", "out2_elem")


def braiding_columns(datum: FactorizationDatum, acts: MatchedPairActions | None = None) -> np.ndarray:
    """The braiding on composable vertical pairs as an array with one row per
    pair (lexicographic in ``src1, elem1, mid, elem2, dst2``) and the columns
    of ``BRAIDING_COLUMNS``."""
    acts = acts or actions(datum)
    T = acts._require_transported()
    V = datum.V.index_array
    n, k = datum.n_objects, len(V)
    P, i, Q, j, R = np.meshgrid(*(np.arange(m) for m in (n, k, n, k, n)), indexing="ij")
    cols = [P, V[i], Q, V[j], R, V[T.left_pos], T.left_obj, V[T.right_pos]]
    return np.stack([c.reshape(-1) for c in cols], axis=1).astype(np.int64)


def braiding_records(datum: FactorizationDatum, acts: MatchedPairActions | None = None) -> Iterator[dict]:
    """One record per composable vertical pair, lexicographic order."""
    for row in braiding_columns(datum, acts).tolist():
        yield dict(zip(BRAIDING_COLUMNS, row))
