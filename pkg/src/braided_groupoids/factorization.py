"""Exact factorization data (D, V, H, gamma, phi) and its structure maps.

Every element of D factors uniquely as ``g * gamma[P] * x`` with ``g`` in V,
``x`` in H and ``P`` an object (a double coset).  All structure maps are read
off that factorization and stored as dense tables.

Table conventions: the *domain* of a table is indexed by positions
(``V.elements[i]``, ``H.elements[j]``, object number ``P``); the *values* are
element indices of D, or object numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    BadSection,
    ConjugateIntersectionFailure,
    CosetCoverFailure,
    PhiMissing,
    PhiNotIso,
)
from .groups import (
    FiniteGroup,
    GroupMorphism,
    Subgroup,
    conjugate_intersection_witness,
    double_cosets,
)


@dataclass(frozen=True, eq=False)
class FactorizationDatum:
    D: FiniteGroup
    V: Subgroup
    H: Subgroup
    objects: tuple[tuple[int, ...], ...]
    gamma: tuple[int, ...]
    phi: GroupMorphism | None = None

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @cached_property
    def object_of(self) -> np.ndarray:
        out = np.empty(self.D.order, dtype=np.int64)
        for P, coset in enumerate(self.objects):
            out[list(coset)] = P
        return out

    @cached_property
    def gamma_array(self) -> np.ndarray:
        return np.array(self.gamma, dtype=np.int64)

    @cached_property
    def _factor_tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        D, V, H = self.D, self.V, self.H
        t = D.table
        fg = np.full(D.order, -1, dtype=np.int64)
        fP = np.full(D.order, -1, dtype=np.int64)
        fx = np.full(D.order, -1, dtype=np.int64)
        vi, hi = V.index_array, H.index_array
        for P, gP in enumerate(self.gamma):
            z = t[t[vi, gP][:, None], hi[None, :]]
            fg[z] = vi[:, None]
            fP[z] = P
            fx[z] = hi[None, :]
        for arr in (fg, fP, fx):
            arr.setflags(write=False)
        return fg, fP, fx

    @property
    def fac_g(self) -> np.ndarray:
        """V-part of the factorization, indexed by D elements."""
        return self._factor_tables[0]

    @property
    def fac_obj(self) -> np.ndarray:
        return self._factor_tables[1]

    @property
    def fac_x(self) -> np.ndarray:
        return self._factor_tables[2]

    def factorize(self, z: int) -> tuple[int, int, int]:
        """The unique ``(g, P, x)`` with ``z = g * gamma[P] * x``."""
        return int(self.fac_g[z]), int(self.fac_obj[z]), int(self.fac_x[z])

    def compose_triple(self, g: int, P: int, x: int) -> int:
        return self.D.prod(g, self.gamma[P], x)

    def require_phi(self) -> GroupMorphism:
        if self.phi is None:
            raise PhiMissing("this operation needs an isomorphism phi: H -> V")
        return self.phi

    @cached_property
    def phi_array(self) -> np.ndarray:
        return self.require_phi().as_array

    @cached_property
    def phi_inverse_array(self) -> np.ndarray:
        return self.require_phi().inverse_array

    def with_phi(self, phi: GroupMorphism | None) -> "FactorizationDatum":
        return build_datum(self.D, self.V, self.H, self.gamma, phi)

    def with_gamma(self, gamma: Sequence[int]) -> "FactorizationDatum":
        return build_datum(self.D, self.V, self.H, gamma, self.phi)


def build_datum(
    D: FiniteGroup,
    V: Subgroup,
    H: Subgroup,
    gamma: Sequence[int],
    phi: GroupMorphism | None = None,
) -> FactorizationDatum:
    """Validate and assemble a factorization datum.

    ``gamma[P]`` must lie in the P-th double coset of ``double_cosets(D, V, H)``
    (identity coset first) and ``gamma[0]`` must be the identity.
    """
    if V.parent is not D or H.parent is not D:
        raise ValueError("V and H must be subgroups of D")
    witness = conjugate_intersection_witness(D, V, H)
    if witness is not None:
        z, v = witness
        raise ConjugateIntersectionFailure(
            f"V meets z H z^-1 in {v} != 1 for z = {z}", z=z, element=v
        )
    objects = tuple(double_cosets(D, V, H))
    gamma = _check_section(objects, gamma)
    t = D.table
    vi, hi = V.index_array, H.index_array
    seen: dict[int, tuple[int, int, int]] = {}
    for P, gP in enumerate(gamma):
        z = t[t[vi, gP][:, None], hi[None, :]]
        for i, v in enumerate(vi):
            for j, h in enumerate(hi):
                e = int(z[i, j])
                if e in seen:
                    raise CosetCoverFailure(
                        f"{e} arises twice as g*gamma*x: {seen[e]} and {(int(v), P, int(h))}",
                        pair=(seen[e], (int(v), P, int(h))),
                    )
                seen[e] = (int(v), P, int(h))
    if len(seen) != D.order:
        missing = sorted(set(range(D.order)) - set(seen))
        raise CosetCoverFailure(f"elements {missing[:5]} are not covered", missing=missing[:5])
    _check_phi(V, H, phi)
    return FactorizationDatum(D, V, H, objects, gamma, phi)


def with_section(datum: FactorizationDatum, gamma: Sequence[int], phi: GroupMorphism | None) -> FactorizationDatum:
    """Same ``(D, V, H)`` with another section and isomorphism.

    The pair-level checks of ``build_datum`` do not depend on the section
    (every double coset already has ``|V||H|`` elements), so only the section
    and ``phi`` are re-checked.
    """
    gamma = _check_section(datum.objects, gamma)
    _check_phi(datum.V, datum.H, phi)
    return FactorizationDatum(datum.D, datum.V, datum.H, datum.objects, gamma, phi)


def _check_section(objects, gamma) -> tuple[int, ...]:
    gamma = tuple(int(g) for g in gamma)
    if len(gamma) != len(objects):
        raise BadSection(
            f"gamma has {len(gamma)} entries but there are {len(objects)} double cosets",
            path="$.gamma",
        )
    if gamma[0] != 0:
        raise BadSection("gamma of the base object must be the identity", path="$.gamma[0]", value=gamma[0])
    for P, (g, coset) in enumerate(zip(gamma, objects)):
        if g not in coset:
            raise BadSection(f"gamma[{P}] = {g} is not in double coset {P}", path=f"$.gamma[{P}]", value=g)
    return gamma


def _check_phi(V: Subgroup, H: Subgroup, phi: GroupMorphism | None) -> None:
    if phi is None:
        return
    if phi.source != H or phi.target != V:
        raise PhiNotIso("phi must map H to V")
    if not phi.is_bijective():
        raise PhiNotIso("phi is not a bijection onto V", path="$.phi")
    if not phi.is_homomorphism():
        raise PhiNotIso("phi is not a homomorphism", path="$.phi")


@dataclass(frozen=True, eq=False)
class DerivedMaps:
    """Tabulated structure maps.

    ``tri_left[j, i]`` is ``x |> g`` for ``x = H[j]``, ``g = V[i]`` (a V
    element), ``tri_right`` its H-part and ``tri_obj`` the object ``(x;g)``.
    ``lamV[P, i, Q]``/``rhoV``/``objV`` factor ``gamma_P g gamma_Q``;
    ``lamH[P, j, Q]``/``rhoH``/``objH`` factor ``gamma_P x gamma_Q``.
    """

    tri_left: np.ndarray
    tri_right: np.ndarray
    tri_obj: np.ndarray
    lamV: np.ndarray
    rhoV: np.ndarray
    objV: np.ndarray
    lamH: np.ndarray
    rhoH: np.ndarray
    objH: np.ndarray


def derive_maps(datum: FactorizationDatum) -> DerivedMaps:
    t = datum.D.table
    vi, hi = datum.V.index_array, datum.H.index_array
    gam = datum.gamma_array
    fg, fP, fx = datum.fac_g, datum.fac_obj, datum.fac_x

    xg = t[hi[:, None], vi[None, :]]
    gPg = t[gam[:, None], vi[None, :]]
    gPgQ = t[gPg[:, :, None], gam[None, None, :]]
    gPx = t[gam[:, None], hi[None, :]]
    gPxQ = t[gPx[:, :, None], gam[None, None, :]]

    return DerivedMaps(
        tri_left=fg[xg], tri_right=fx[xg], tri_obj=fP[xg],
        lamV=fg[gPgQ], rhoV=fx[gPgQ], objV=fP[gPgQ],
        lamH=fg[gPxQ], rhoH=fx[gPxQ], objH=fP[gPxQ],
    )  # fmt: skip
