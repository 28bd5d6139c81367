"""Finite groups as explicit multiplication tables.

Elements are the integers ``0..n-1`` and the identity is always ``0``.  Every
higher module works on these indices only.

Catalog orderings (frozen, tests depend on them):

* ``cyclic(n)``: element ``k`` is ``k mod n``.
* ``dihedral(n)`` (order ``2n``): element ``e*n + k`` is ``r^k s^e`` with
  ``s r s = r^-1``.
* ``symmetric(n)``: permutations of ``range(n)`` in lexicographic order
  (``itertools.permutations``); the product is composition
  ``(a*b)(i) = a(b(i))``.
* ``direct_product(A, B)``: element ``a*|B| + b`` is ``(a, b)``.
"""

from __future__ import annotations

import itertools
import re
import weakref
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    GroupAxiomError,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotASubgroup,
    SizeLimitExceeded,
    UnknownFamily,
)

MAX_ORDER = 128
MAX_SYMMETRIC_DEGREE = 5


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    label: str = ""
    inverses: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]

    identity = 0

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def prod(self, *elems: int) -> int:
        out = 0
        for e in elems:
            out = int(self.table[out, e])
        return out

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 0
        for _ in range(k):
            out = int(self.table[out, a])
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        out = np.zeros(self.order, dtype=np.int64)
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = int(self.table[x, a])
                k += 1
            out[a] = k
        return out

    def order_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(int(k) for k in self.element_orders).items()))

    @cached_property
    def center(self) -> tuple[int, ...]:
        t = self.table
        return tuple(int(a) for a in range(self.order) if np.array_equal(t[a, :], t[:, a]))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def same_table(self, other: "FiniteGroup") -> bool:
        return self.table.shape == other.table.shape and bool(np.array_equal(self.table, other.table))


def _first_true(mask: np.ndarray) -> tuple[int, ...] | None:
    idx = np.argwhere(mask)
    if len(idx) == 0:
        return None
    return tuple(int(i) for i in idx[0])


def build_group(table, label: str = "") -> FiniteGroup:
    """Validate a multiplication table and return the group it defines.

    The identity must sit at index 0.  Raises ``NoIdentity``, ``NoInverse`` or
    ``NotAssociative`` naming the offending element or triple.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupAxiomError(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if n > MAX_ORDER:
        raise SizeLimitExceeded(f"order {n} exceeds the limit {MAX_ORDER}", order=n)
    if t.min() < 0 or t.max() >= n:
        raise GroupAxiomError("table entries out of range")
    ar = np.arange(n)
    units = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not units:
        raise NoIdentity("no two-sided identity element")
    if units[0] != 0:
        raise NoIdentity(f"identity must be element 0, found {units[0]}", element=units[0])
    inverses = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.nonzero((t[a] == 0) & (t[:, a] == 0))[0]
        if len(hits) == 0:
            raise NoInverse(f"element {a} has no two-sided inverse", element=a)
        inverses[a] = hits[0]
    bad = _first_true(t[t] != t[ar[:, None, None], t[None, :, :]])
    if bad is not None:
        a, b, c = bad
        raise NotAssociative(
            f"({a}*{b})*{c} = {t[t[a, b], c]} but {a}*({b}*{c}) = {t[a, t[b, c]]}",
            triple=(a, b, c),
        )
    # associativity + two-sided unit + two-sided inverses already force a latin square
    t.setflags(write=False)
    inverses.setflags(write=False)
    return FiniteGroup(t, label, inverses)


# ---------------------------------------------------------------------------
# catalog


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic order must be positive")
    if n > MAX_ORDER:
        raise SizeLimitExceeded(f"order {n} exceeds the limit {MAX_ORDER}", order=n)
    a = np.arange(n)
    return build_group((a[:, None] + a[None, :]) % n, f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("dihedral parameter must be positive")
    if 2 * n > MAX_ORDER:
        raise SizeLimitExceeded(f"order {2 * n} exceeds the limit {MAX_ORDER}", order=2 * n)
    size = 2 * n
    t = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        e, k = divmod(i, n)
        for j in range(size):
            f, l = divmod(j, n)
            t[i, j] = ((e + f) % 2) * n + (k + (-1) ** e * l) % n
    return build_group(t, f"D{n}")


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric degree must be positive")
    if n > MAX_SYMMETRIC_DEGREE:
        raise SizeLimitExceeded(f"symmetric degree {n} exceeds {MAX_SYMMETRIC_DEGREE}", degree=n)
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    t = np.array([[index[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms])
    return build_group(t, f"S{n}")


def direct_product(A: FiniteGroup, B: FiniteGroup, label: str | None = None) -> FiniteGroup:
    if A.order * B.order > MAX_ORDER:
        raise SizeLimitExceeded(
            f"order {A.order * B.order} exceeds the limit {MAX_ORDER}", order=A.order * B.order
        )
    nb = B.order
    t = (A.table[:, None, :, None] * nb + B.table[None, :, None, :]).reshape(A.order * nb, A.order * nb)
    return build_group(t, label or f"{A.label}x{B.label}")


_FAMILIES = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}


def catalog(name: str, parameter) -> FiniteGroup:
    """Named group.  ``parameter`` is an int, or for ``direct_product`` a pair of
    catalog references (strings such as ``"S3"`` or ``(name, param)`` tuples)."""
    if name == "direct_product":
        left, right = parameter
        return direct_product(_resolve(left), _resolve(right))
    if name not in _FAMILIES:
        raise UnknownFamily(f"unknown group family {name!r}", family=name)
    return _FAMILIES[name](int(parameter))


def _resolve(ref) -> FiniteGroup:
    if isinstance(ref, FiniteGroup):
        return ref
    if isinstance(ref, str):
        return parse_ref(ref)
    name, param = ref
    return catalog(name, param)


_REF = re.compile(r"^([CDS])(\d+)$")


def parse_ref(ref: str) -> FiniteGroup:
    """Parse compact references like ``C3``, ``D4`` (order 8), ``S3`` or ``C2xS3``."""
    parts = [p.strip() for p in ref.split("x")]
    groups = []
    for p in parts:
        m = _REF.match(p)
        if not m:
            raise UnknownFamily(f"cannot parse group reference {p!r}", ref=ref)
        fam = {"C": "cyclic", "D": "dihedral", "S": "symmetric"}[m.group(1)]
        groups.append(catalog(fam, int(m.group(2))))
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return out


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return bool(self.mask[a])

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.elements == self.elements
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    @cached_property
    def position(self) -> np.ndarray:
        """Map from parent index to position in ``elements`` (-1 outside)."""
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[list(self.elements)] = np.arange(self.order)
        return pos

    @cached_property
    def index_array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64)

    def is_normal(self) -> bool:
        G = self.parent
        for z in range(G.order):
            zi = G.inv(z)
            for h in self.elements:
                if not self.mask[G.prod(z, h, zi)]:
                    return False
        return True

    def as_group(self, label: str | None = None) -> FiniteGroup:
        """This subgroup as a standalone group; element ``i`` is ``elements[i]``."""
        sub = self.parent.table[np.ix_(self.index_array, self.index_array)]
        return build_group(self.position[sub], label or f"{self.parent.label}<{self.order}>")


def subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    elems = tuple(sorted(set(int(e) for e in elements)))
    if not elems or elems[0] != 0:
        raise NotASubgroup("subgroup must contain the identity", elements=elems)
    s = Subgroup(G, elems)
    idx = s.index_array
    closed = s.mask[G.table[np.ix_(idx, idx)]]
    if not closed.all():
        i, j = _first_true(~closed)
        raise NotASubgroup(
            f"not closed: {elems[i]}*{elems[j]} = {G.table[elems[i], elems[j]]}",
            pair=(elems[i], elems[j]),
        )
    return s


def generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    members = {0}
    frontier = deque([0])
    gens = [int(g) for g in gens]
    while frontier:
        a = frontier.popleft()
        for g in gens:
            b = int(G.table[a, g])
            if b not in members:
                members.add(b)
                frontier.append(b)
    return Subgroup(G, tuple(sorted(members)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


_SUBGROUPS: "weakref.WeakKeyDictionary[FiniteGroup, list[Subgroup]]" = weakref.WeakKeyDictionary()


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by (order, elements).

    Closure of joins of cyclic subgroups, memoized on the element set and
    cached per group object.
    """
    if G not in _SUBGROUPS:
        _SUBGROUPS[G] = _all_subgroups(G)
    return list(_SUBGROUPS[G])


def _all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    cyclic_gens: dict[tuple[int, ...], int] = {}
    for a in range(G.order):
        cyclic_gens.setdefault(generated(G, [a]).elements, a)
    found: dict[tuple[int, ...], Subgroup] = {(0,): trivial_subgroup(G)}
    frontier = list(found.values())
    while frontier:
        nxt = []
        for s in frontier:
            base = greedy_generators(s)
            for a in cyclic_gens.values():
                if s.mask[a]:
                    continue
                j = generated(G, base + [a])
                if j.elements not in found:
                    found[j.elements] = j
                    nxt.append(j)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, s.elements))


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return [s for s in all_subgroups(G) if s.is_normal()]


# ---------------------------------------------------------------------------
# cosets and conjugates


def double_cosets(D: FiniteGroup, V: Subgroup, H: Subgroup) -> list[tuple[int, ...]]:
    """Partition of D into double cosets ``V z H``.

    The identity's coset comes first, the others follow by smallest element;
    each coset is sorted.
    """
    seen = np.zeros(D.order, dtype=bool)
    out = []
    t = D.table
    vi, hi = V.index_array, H.index_array
    for z in range(D.order):
        if seen[z]:
            continue
        coset = np.unique(t[t[vi, z][:, None], hi[None, :]])
        seen[coset] = True
        out.append(tuple(int(c) for c in coset))
    return out


def trivial_intersection_all_conjugates(D: FiniteGroup, V: Subgroup, H: Subgroup) -> bool:
    return conjugate_intersection_witness(D, V, H) is None


def conjugate_intersection_witness(D: FiniteGroup, V: Subgroup, H: Subgroup) -> tuple[int, int] | None:
    """First ``(z, v)`` with ``1 != v`` in ``V ∩ z H z^-1``, or None."""
    t, inv = D.table, D.inverses
    hi = H.index_array
    for z in range(D.order):
        conj = t[t[z, hi], inv[z]]
        hits = conj[(conj != 0) & V.mask[conj]]
        if len(hits):
            return z, int(hits.min())
    return None


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class GroupMorphism:
    """Map between subgroups; ``images[i]`` is the image of ``source.elements[i]``."""

    source: Subgroup
    target: Subgroup
    images: tuple[int, ...]

    def __call__(self, a: int) -> int:
        i = int(self.source.position[a])
        if i < 0:
            raise KeyError(f"{a} is not in the source subgroup")
        return self.images[i]

    @cached_property
    def as_array(self) -> np.ndarray:
        """Lookup over parent indices of the source (-1 outside the source)."""
        out = np.full(self.source.parent.order, -1, dtype=np.int64)
        out[self.source.index_array] = self.images
        return out

    @cached_property
    def inverse_array(self) -> np.ndarray:
        out = np.full(self.target.parent.order, -1, dtype=np.int64)
        out[list(self.images)] = self.source.index_array
        return out

    def is_homomorphism(self) -> bool:
        S, T = self.source.parent, self.target.parent
        a = self.as_array
        idx = self.source.index_array
        lhs = a[S.table[np.ix_(idx, idx)]]
        rhs = T.table[a[idx][:, None], a[idx][None, :]]
        return bool(np.array_equal(lhs, rhs))

    def is_bijective(self) -> bool:
        return sorted(self.images) == list(self.target.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.images))


def greedy_generators(S: Subgroup) -> list[int]:
    """Generating set picked by ascending index, skipping elements already generated."""
    G = S.parent
    gens: list[int] = []
    current = trivial_subgroup(G)
    for a in S.elements:
        if not current.mask[a]:
            gens.append(a)
            current = generated(G, gens)
            if current.order == S.order:
                break
    return gens


def _extend(S: Subgroup, T: Subgroup, gens: Sequence[int], imgs: Sequence[int]) -> tuple[int, ...] | None:
    Gs, Gt = S.parent, T.parent
    image = {0: 0}
    frontier = deque([0])
    while frontier:
        a = frontier.popleft()
        ia = image[a]
        for g, tg in zip(gens, imgs):
            b = int(Gs.table[a, g])
            ib = int(Gt.table[ia, tg])
            if b in image:
                if image[b] != ib:
                    return None
            else:
                image[b] = ib
                frontier.append(b)
    return tuple(image[a] for a in S.elements)


def enumerate_isomorphisms(H: Subgroup, V: Subgroup) -> list[GroupMorphism]:
    """All isomorphisms H -> V, in lexicographic order of generator images."""
    if H.order != V.order:
        return []
    gens = greedy_generators(H)
    orders_h = H.parent.element_orders
    orders_v = V.parent.element_orders
    choices = [[v for v in V.elements if orders_v[v] == orders_h[g]] for g in gens]
    out = []
    for imgs in itertools.product(*choices):
        images = _extend(H, V, gens, imgs)
        if images is None or len(set(images)) != V.order:
            continue
        out.append(GroupMorphism(H, V, images))
    return out


def are_isomorphic(A: FiniteGroup, B: FiniteGroup) -> bool:
    return bool(enumerate_isomorphisms(whole_group(A), whole_group(B)))
