"""Exhaustive sector enumeration, exact friend grouping, probes and report files.

The scan phase shards the norm range into contiguous intervals that can run
in separate worker processes; the merge concatenates shard results in norm
order, so reports are byte-identical for any worker count.  Grouping keys are
canonical surd values, never floats, so groups cannot merge spuriously.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt
from pathlib import Path
from typing import IO, Iterator

from .abundancy import abundancy_index
from .intarith import is_prime
from .rings import Ring, RingElement
from .solitary import certify_solitary, friend_shape_filter, matches_conjugate_pair_hypothesis
from .surd import SurdValue, format_surd, parse_surd
from .version import __version__

#: Environment variable overriding the default worker count (default 1).
WORKERS_ENV = "HEEGNER_WORKERS"


# -- enumeration ------------------------------------------------------------


def enumerate_sector(ring: Ring, norm_bound: int) -> Iterator[RingElement]:
    """Every canonical-sector element with 1 <= norm <= norm_bound,
    each exactly once, in (norm, a, b) order."""
    if norm_bound < 1:
        raise ValueError(f"norm bound must be positive, got {norm_bound}")
    yield from _sector_range(ring, 1, norm_bound)


def _sector_range(ring: Ring, lo: int, hi: int) -> list[RingElement]:
    """Sector elements with lo <= norm <= hi, sorted by (norm, a, b)."""
    d = ring.d
    out: list[RingElement] = []
    if ring.half_integral:
        # 4*norm = (2a + b)**2 - d*b**2
        bmax = isqrt(4 * hi // -d)
        for b in range(-bmax, bmax + 1):
            rem = 4 * hi + d * b * b
            if rem < 0:
                continue
            s = isqrt(rem)
            for a in range(-((s + b) // 2), (s - b) // 2 + 1):
                z = RingElement(ring, a, b)
                n = z.norm()
                if lo <= n <= hi and z.in_canonical_sector():
                    out.append(z)
    else:
        bmax = isqrt(hi // -d)
        for b in range(-bmax, bmax + 1):
            rem = hi + d * b * b
            amax = isqrt(rem)
            for a in range(-amax, amax + 1):
                z = RingElement(ring, a, b)
                n = z.norm()
                if lo <= n <= hi and z.in_canonical_sector():
                    out.append(z)
    out.sort(key=lambda z: (z.norm(), z.a, z.b))
    return out


# -- friend search ------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FriendGroup:
    """Elements sharing one exact index value; a friend set needs at least
    two distinct norms among its members."""

    ring: Ring
    n: int
    index_key: SurdValue
    members: tuple[tuple[RingElement, int], ...]

    def distinct_norms(self) -> int:
        return len({nrm for _, nrm in self.members})

    def is_friend_set(self) -> bool:
        return self.distinct_norms() >= 2


@dataclass(frozen=True, slots=True)
class SearchReport:
    ring: Ring
    n: int
    norm_bound: int
    groups: tuple[FriendGroup, ...]
    certified_count: int
    version: str
    elapsed: float = field(default=0.0, compare=False)


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        env = os.environ.get(WORKERS_ENV, "").strip()
        workers = int(env) if env else 1
    if workers < 1:
        raise ValueError(f"worker count must be positive, got {workers}")
    return workers


def _plan_shards(norm_bound: int, workers: int) -> list[tuple[int, int]]:
    count = min(workers, norm_bound)
    width = norm_bound // count
    shards = []
    lo = 1
    for i in range(count):
        hi = norm_bound if i == count - 1 else lo + width - 1
        shards.append((lo, hi))
        lo = hi + 1
    return shards


def _scan_shard(args: tuple[int, int, int, int]) -> list[tuple[SurdValue, int, int, int, bool]]:
    """Worker body: (d, n, lo, hi) -> rows of (index, a, b, norm, certified)."""
    d, n, lo, hi = args
    ring = Ring(d)
    rows = []
    for z in _sector_range(ring, lo, hi):
        rows.append((abundancy_index(z, n), z.a, z.b, z.norm(), certify_solitary(z, n).certified))
    return rows


def friend_search(
    ring: Ring,
    n: int,
    norm_bound: int,
    *,
    prune: bool = False,
    workers: int | None = None,
) -> SearchReport:
    """Group every sector element up to norm_bound by its exact index value
    and report the groups containing at least two distinct norms.

    With ``prune`` set, groups whose reference member (the (norm, a, b)-least
    one) satisfies the split-conjugate-pair hypothesis drop members rejected
    by friend_shape_filter.  The filter is a proven necessary condition, so
    pruned and unpruned reports must coincide; the flag exists to exercise
    that check.
    """
    if n < 1:
        raise ValueError(f"expected a positive power, got {n}")
    if norm_bound < 1:
        raise ValueError(f"norm bound must be positive, got {norm_bound}")
    started = time.perf_counter()
    nworkers = _resolve_workers(workers)
    shards = _plan_shards(norm_bound, nworkers)
    tasks = [(ring.d, n, lo, hi) for lo, hi in shards]
    if nworkers == 1 or len(shards) == 1:
        chunks = [_scan_shard(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            chunks = list(pool.map(_scan_shard, tasks))

    grouped: dict[SurdValue, list[tuple[RingElement, int]]] = {}
    certified_count = 0
    for chunk in chunks:
        for key, a, b, nrm, certified in chunk:
            certified_count += certified
            grouped.setdefault(key, []).append((RingElement(ring, a, b), nrm))

    friend_groups = []
    for key, members in grouped.items():
        group_members = tuple(members)
        if len({nrm for _, nrm in group_members}) < 2:
            continue
        if prune:
            group_members = _shape_prune(group_members, n)
            if len({nrm for _, nrm in group_members}) < 2:
                continue
        friend_groups.append(FriendGroup(ring, n, key, group_members))
    friend_groups.sort(key=lambda g: (g.members[0][1], g.members[0][0].a, g.members[0][0].b))

    return SearchReport(
        ring=ring,
        n=n,
        norm_bound=norm_bound,
        groups=tuple(friend_groups),
        certified_count=certified_count,
        version=__version__,
        elapsed=time.perf_counter() - started,
    )


def _shape_prune(
    members: tuple[tuple[RingElement, int], ...], n: int
) -> tuple[tuple[RingElement, int], ...]:
    reference = members[0][0]
    if not matches_conjugate_pair_hypothesis(reference, n):
        return members
    kept = [members[0]]
    kept.extend(
        (elem, nrm) for elem, nrm in members[1:] if friend_shape_filter(reference, elem, n)
    )
    return tuple(kept)


# -- conjecture probes --------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ProbeReport:
    """Bounded empirical scan for a same-index partner of p**k: a hit is a
    reportable counterexample, an empty hit list only says none exists up to
    the bound."""

    ring: Ring
    n: int
    p: int
    k: int
    norm_bound: int
    target: RingElement
    target_norm: int
    target_index: SurdValue
    certified: bool
    certificate_reason: str | None
    hits: tuple[tuple[RingElement, int], ...]
    elapsed: float = field(default=0.0, compare=False)

    def friend_found(self) -> bool:
        return bool(self.hits)


def conjecture_probe(ring: Ring, n: int, p: int, k: int, norm_bound: int) -> ProbeReport:
    """Scan every sector element of differing norm for exact index equality
    with p**k.  No pruning: the scan is the evidence."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError(f"expected a positive exponent, got {k}")
    if n < 1:
        raise ValueError(f"expected a positive power, got {n}")
    started = time.perf_counter()
    target = ring.element(p**k)
    certificate = certify_solitary(target, n)
    target_index = abundancy_index(target, n)
    target_norm = target.norm()
    hits = tuple(
        (z, z.norm())
        for z in enumerate_sector(ring, norm_bound)
        if z.norm() != target_norm and abundancy_index(z, n) == target_index
    )
    return ProbeReport(
        ring=ring,
        n=n,
        p=p,
        k=k,
        norm_bound=norm_bound,
        target=target,
        target_norm=target_norm,
        target_index=target_index,
        certified=certificate.certified,
        certificate_reason=certificate.reason.value if certificate.reason else None,
        hits=hits,
        elapsed=time.perf_counter() - started,
    )


# -- report files ---------------------------------------------------------------


class ReportParseError(ValueError):
    """A report line that does not parse; carries the 1-based line number."""


def report_lines(report: SearchReport) -> list[str]:
    """Serialize to line-oriented JSON records: one header, one line per group.

    ``elapsed`` is deliberately not persisted, keeping files byte-identical
    across runs and worker counts.
    """
    header = {
        "kind": "header",
        "d": report.ring.d,
        "n": report.n,
        "bound": report.norm_bound,
        "certified_count": report.certified_count,
        "group_count": len(report.groups),
        "version": report.version,
    }
    lines = [_dump(header)]
    for group in report.groups:
        lines.append(
            _dump(
                {
                    "kind": "group",
                    "d": report.ring.d,
                    "n": report.n,
                    "bound": report.norm_bound,
                    "index_key": format_surd(group.index_key),
                    "members": [[elem.a, elem.b, nrm] for elem, nrm in group.members],
                }
            )
        )
    return lines


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def write_report(report: SearchReport, destination: str | Path | IO[str]) -> None:
    text = "\n".join(report_lines(report)) + "\n"
    if isinstance(destination, (str, Path)):
        Path(destination).write_text(text, encoding="utf-8")
    else:
        destination.write(text)


def read_report(source: str | Path | IO[str]) -> SearchReport:
    """Parse a report file back; elapsed is not stored and reads as 0."""
    if isinstance(source, (str, Path)):
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    else:
        lines = source.read().splitlines()
    records = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            records.append((lineno, json.loads(line)))
        except json.JSONDecodeError as exc:
            raise ReportParseError(f"line {lineno}: invalid JSON: {exc}") from exc
    if not records:
        raise ReportParseError("line 1: empty report")

    lineno, header = records[0]
    if header.get("kind") != "header":
        raise ReportParseError(f"line {lineno}: expected a header record")
    try:
        ring = Ring(header["d"])
        n = header["n"]
        bound = header["bound"]
        certified_count = header["certified_count"]
        group_count = header["group_count"]
        version = header["version"]
    except KeyError as exc:
        raise ReportParseError(f"line {lineno}: header missing field {exc}") from exc

    groups = []
    for lineno, rec in records[1:]:
        if rec.get("kind") != "group":
            raise ReportParseError(f"line {lineno}: expected a group record")
        if rec.get("d") != ring.d or rec.get("n") != n or rec.get("bound") != bound:
            raise ReportParseError(f"line {lineno}: group does not match header")
        try:
            key = parse_surd(rec["index_key"])
            members = tuple(
                (RingElement(ring, int(a), int(b)), int(nrm)) for a, b, nrm in rec["members"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ReportParseError(f"line {lineno}: bad group record: {exc}") from exc
        for elem, nrm in members:
            if elem.norm() != nrm:
                raise ReportParseError(
                    f"line {lineno}: member {elem.coord_str()} has norm {elem.norm()}, not {nrm}"
                )
        groups.append(FriendGroup(ring, n, key, members))
    if len(groups) != group_count:
        raise ReportParseError(
            f"line {records[0][0]}: header promises {group_count} groups, found {len(groups)}"
        )
    return SearchReport(
        ring=ring,
        n=n,
        norm_bound=bound,
        groups=tuple(groups),
        certified_count=certified_count,
        version=version,
    )
