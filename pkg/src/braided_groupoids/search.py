"""Exhaustive census of braided groupoid data over small groups.

Search order is lexicographic at every level: groups as listed, subgroup
pairs ``(V, H)`` in ``all_subgroups`` order, sections as mixed-radix tuples of
positions inside each non-identity double coset, and isomorphisms in
``enumerate_isomorphisms`` order.  A work unit is one ``(group, pair)``.

Pruning.  A datum is braided exactly when ``g γ_R x -> g φ(x)`` is a
homomorphism ``D -> V``; its kernel K is then a normal complement of V with
every ``γ_R`` in K and ``φ`` the projection along K restricted to H.  With
``prune=True`` only those candidates are generated, and each is still
confirmed by the c1-c3 route before it is emitted.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .constructors import detect_handy
from .errors import SinkFailure, SizeLimitExceeded
from .factorization import FactorizationDatum, build_datum, derive_maps, with_section
from .groupoid import BRAIDING_COLUMNS, braiding_columns
from .groups import (
    MAX_ORDER,
    FiniteGroup,
    GroupMorphism,
    Subgroup,
    all_subgroups,
    build_group,
    double_cosets,
    enumerate_isomorphisms,
    normal_subgroups,
    parse_ref,
    trivial_intersection_all_conjugates,
)
from .io import datum_from_json, datum_to_json, dumps, group_from_json
from .verify import check_c1_c2_c3

JOBS_ENV = "BRAIDED_GROUPOIDS_JOBS"


@dataclass
class SearchSpec:
    groups: Sequence = ()
    max_order: int = MAX_ORDER
    require_handy: bool = False
    require_nonhandy: bool = False
    min_objects: int = 1
    prune: bool = True

    def __post_init__(self):
        if self.max_order > MAX_ORDER:
            raise SizeLimitExceeded(f"max_order may not exceed {MAX_ORDER}", max_order=self.max_order)
        if self.require_handy and self.require_nonhandy:
            raise ValueError("require_handy and require_nonhandy exclude each other")

    def resolved_groups(self) -> list[FiniteGroup]:
        out = []
        for g in self.groups:
            G = g if isinstance(g, FiniteGroup) else (parse_ref(g) if isinstance(g, str) else group_from_json(g))
            if G.order > self.max_order:
                raise SizeLimitExceeded(f"{G.label} has order {G.order} > {self.max_order}", order=G.order)
            out.append(G)
        return out


@dataclass
class CensusRecord:
    datum: dict
    fingerprint: dict
    handy: bool
    digest: str
    cursor: tuple[int, int, int, int]

    def to_dict(self) -> dict:
        return {
            "cursor": list(self.cursor),
            "datum": self.datum,
            "digest": self.digest,
            "fingerprint": self.fingerprint,
            "handy": self.handy,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "CensusRecord":
        return cls(doc["datum"], doc["fingerprint"], bool(doc["handy"]), doc["digest"], tuple(doc["cursor"]))

    def load_datum(self) -> FactorizationDatum:
        return datum_from_json(self.datum)


def fingerprint(datum: FactorizationDatum) -> dict:
    return {
        "order_D": datum.D.order,
        "order_V": datum.V.order,
        "n_objects": datum.n_objects,
        "hist_D": [[k, v] for k, v in datum.D.order_histogram().items()],
        "hist_V": [[k, v] for k, v in datum.V.as_group().order_histogram().items()],
    }


_LINE = "{" + ",".join(f'"{k}":%d' for k in sorted(BRAIDING_COLUMNS)) + "}\n"
_ORDER = [BRAIDING_COLUMNS.index(k) for k in sorted(BRAIDING_COLUMNS)]


def braiding_table_lines(datum: FactorizationDatum) -> Iterator[str]:
    """JSON lines identical to ``dumps`` of each braiding record."""
    for row in braiding_columns(datum)[:, _ORDER].tolist():
        yield _LINE % tuple(row)


def braiding_digest(datum: FactorizationDatum) -> str:
    """sha256 of the braiding table as little-endian uint16 rows (orders are
    capped at 128, so every entry fits)."""
    return hashlib.sha256(braiding_columns(datum).astype("<u2").tobytes()).hexdigest()


# ---------------------------------------------------------------------------
# enumeration


def enumerate_subpairs(D: FiniteGroup) -> Iterator[tuple[Subgroup, Subgroup]]:
    subs = all_subgroups(D)
    for V in subs:
        for H in subs:
            if V.order == H.order and trivial_intersection_all_conjugates(D, V, H):
                yield V, H


def enumerate_sections(D: FiniteGroup, V: Subgroup, H: Subgroup) -> Iterator[tuple[int, ...]]:
    cosets = double_cosets(D, V, H)
    for rest in itertools.product(*cosets[1:]):
        yield (0, *rest)


def _projections(D: FiniteGroup, V: Subgroup) -> list[tuple[Subgroup, np.ndarray]]:
    """Normal complements K of V with the projection ``v k -> v``."""
    out = []
    for K in normal_subgroups(D):
        if K.order * V.order != D.order or np.count_nonzero(K.mask[V.index_array]) != 1:
            continue
        proj = np.full(D.order, -1, dtype=np.int64)
        proj[D.table[V.index_array[:, None], K.index_array[None, :]]] = V.index_array[:, None]
        if (proj >= 0).all():
            out.append((K, proj))
    return out


def _candidates(D, V, H, cosets, isos, prune: bool) -> Iterator[tuple[int, int, tuple[int, ...], GroupMorphism]]:
    """``(section index, phi index, gamma, phi)`` in lexicographic order."""
    radix = [len(c) for c in cosets[1:]]
    if not prune:
        for s, gamma in enumerate(itertools.product(*cosets[1:])):
            for p, phi in enumerate(isos):
                yield s, p, (0, *gamma), phi
        return
    by_images = {phi.images: p for p, phi in enumerate(isos)}
    found = []
    for K, proj in _projections(D, V):
        images = tuple(int(v) for v in proj[H.index_array])
        p = by_images.get(images)
        if p is None:
            continue
        choices = [[i for i, z in enumerate(c) if K.mask[z]] for c in cosets[1:]]
        for pos in itertools.product(*choices):
            s = 0
            for r, i in zip(radix, pos):
                s = s * r + i
            gamma = (0, *(c[i] for c, i in zip(cosets[1:], pos)))
            found.append((s, p, gamma, isos[p]))
    found.sort(key=lambda t: (t[0], t[1]))
    yield from found


@lru_cache(maxsize=8)
def _unit_context(table_bytes: bytes, order: int, label: str):
    D = build_group(np.frombuffer(table_bytes, dtype=np.int64).reshape(order, order), label)
    return D, list(enumerate_subpairs(D))


def _group_context(D: FiniteGroup):
    return _unit_context(np.ascontiguousarray(D.table, dtype=np.int64).tobytes(), D.order, D.label)


def _keep(spec: SearchSpec, datum: FactorizationDatum, handy: bool) -> bool:
    if datum.n_objects < spec.min_objects:
        return False
    if spec.require_handy and not handy:
        return False
    if spec.require_nonhandy and handy:
        return False
    return True


def census_unit(spec: SearchSpec, D: FiniteGroup, gi: int, pi: int) -> list[CensusRecord]:
    """All braided data of one ``(group, pair)`` unit."""
    D, pairs = _group_context(D)
    V, H = pairs[pi]
    isos = enumerate_isomorphisms(H, V)
    if not isos:
        return []
    cosets = double_cosets(D, V, H)
    if len(cosets) < spec.min_objects:
        return []
    out = []
    base = build_datum(D, V, H, [c[0] for c in cosets])
    for s, p, gamma, phi in _candidates(D, V, H, cosets, isos, spec.prune):
        datum = with_section(base, gamma, phi)
        maps = derive_maps(datum)
        if not check_c1_c2_c3(datum, maps).ok:
            continue
        handy = detect_handy(datum).handy
        if not _keep(spec, datum, handy):
            continue
        out.append(CensusRecord(datum_to_json(datum), fingerprint(datum), handy, braiding_digest(datum), (gi, pi, s, p)))
    return out


def work_units(spec: SearchSpec) -> list[tuple[int, int]]:
    units = []
    for gi, D in enumerate(spec.resolved_groups()):
        _, pairs = _group_context(D)
        units.extend((gi, pi) for pi in range(len(pairs)))
    return units


def _run_unit(args):
    spec, D, gi, pi = args
    return gi, pi, census_unit(spec, D, gi, pi)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def run_census(
    spec: SearchSpec,
    start_after: tuple[int, int] | None = None,
    jobs: int | None = None,
) -> Iterator[tuple[tuple[int, int], list[CensusRecord]]]:
    """Stream ``((group index, pair index), records)`` per completed unit, in
    order, skipping units up to and including ``start_after``."""
    groups = spec.resolved_groups()
    units = [u for u in work_units(spec) if start_after is None or u > tuple(start_after)]
    jobs = default_jobs() if jobs is None else jobs
    tasks = ((spec, groups[gi], gi, pi) for gi, pi in units)
    if jobs <= 1:
        for task in tasks:
            gi, pi, recs = _run_unit(task)
            yield (gi, pi), recs
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for gi, pi, recs in pool.map(_run_unit, tasks):
            yield (gi, pi), recs


def census_records(spec: SearchSpec, jobs: int | None = None) -> list[CensusRecord]:
    return [r for _, recs in run_census(spec, jobs=jobs) for r in recs]


# ---------------------------------------------------------------------------
# JSON-lines sink with a cursor file


@dataclass
class CensusSink:
    """Appends records to ``path`` and checkpoints ``path.cursor`` after each unit.

    The cursor stores the last completed unit and the sink's byte length at
    that point; resuming truncates any partial tail first.
    """

    path: Path
    cursor_path: Path = field(init=False)

    def __post_init__(self):
        self.path = Path(self.path)
        self.cursor_path = self.path.with_name(self.path.name + ".cursor")

    def read_cursor(self) -> dict | None:
        if not self.cursor_path.exists():
            return None
        return json.loads(self.cursor_path.read_text())

    def prepare(self, resume: bool) -> tuple[int, int] | None:
        try:
            cur = self.read_cursor() if resume else None
            if cur is None:
                self.path.write_bytes(b"")
                self.cursor_path.unlink(missing_ok=True)
                return None
            with open(self.path, "r+b") as fh:
                fh.truncate(cur["bytes"])
            return tuple(cur["unit"])
        except OSError as exc:
            raise SinkFailure(f"cannot prepare {self.path}: {exc.strerror}") from exc

    def commit(self, unit: tuple[int, int], records: list[CensusRecord]) -> None:
        try:
            with open(self.path, "ab") as fh:
                for r in records:
                    fh.write(dumps(r.to_dict()).encode())
                size = fh.tell()
            tmp = self.cursor_path.with_suffix(".tmp")
            tmp.write_text(dumps({"unit": list(unit), "bytes": size}))
            tmp.replace(self.cursor_path)
        except OSError as exc:
            raise SinkFailure(f"cannot append to {self.path}: {exc.strerror}") from exc


def run_census_to_file(
    spec: SearchSpec,
    path: str | Path,
    resume: bool = False,
    jobs: int | None = None,
    max_units: int | None = None,
) -> int:
    """Run (or resume) a census into a JSON-lines file; returns units completed
    in this call.  ``max_units`` stops early, leaving a resumable cursor."""
    sink = CensusSink(Path(path))
    start = sink.prepare(resume)
    done = 0
    for unit, recs in run_census(spec, start_after=start, jobs=jobs):
        sink.commit(unit, recs)
        done += 1
        if max_units is not None and done >= max_units:
            break
    return done


def read_records(path: str | Path) -> list[CensusRecord]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(CensusRecord.from_dict(json.loads(line)))
    return out
