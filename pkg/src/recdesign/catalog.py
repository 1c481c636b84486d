"""File-backed knowledge of which ingredient parameter sets are known to exist.

One family per line::

    # comment
    t v k : m1 m2 m3 [; closed] [; blocks=path/to/file]

The multipliers are in units of lambda_min(t, k, v). A catalog only ever
records positive knowledge: a query answers ``existent`` or ``unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, TextIO

from .combinatorics import DesignParams, complement_lambda, lambda_min, m_max

EXISTENT = "existent"
UNKNOWN = "unknown"


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    t: int
    v: int
    k: int
    existent_m: frozenset[int]
    closure_applied: bool = False
    blocks_path: Optional[str] = None

    @property
    def family(self) -> tuple[int, int, int]:
        return (self.t, self.v, self.k)

    def validate(self) -> None:
        t, v, k = self.family
        if not v >= k >= t >= 0:
            raise CatalogError(f"family {t}-({v},{k},.) needs v >= k >= t >= 0")
        top = m_max(t, k, v)
        bad = sorted(m for m in self.existent_m if not 1 <= m <= top)
        if bad:
            raise CatalogError(
                f"family {t}-({v},{k},m{lambda_min(t, k, v)}): multipliers {bad} outside 1..{top}"
            )

    def format(self) -> str:
        ms = " ".join(str(m) for m in sorted(self.existent_m))
        line = f"{self.t} {self.v} {self.k} :" + (f" {ms}" if ms else "")
        if self.closure_applied:
            line += " ; closed"
        if self.blocks_path:
            line += f" ; blocks={self.blocks_path}"
        return line


class Catalog:
    """Immutable mapping (t, v, k) -> CatalogEntry."""

    def __init__(self, entries: Iterable[CatalogEntry] = ()):
        self._entries: dict[tuple[int, int, int], CatalogEntry] = {}
        for e in entries:
            e.validate()
            if e.family in self._entries:
                raise CatalogError(f"duplicate family {e.family}")
            self._entries[e.family] = e

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(sorted(self._entries.values(), key=lambda e: e.family))

    def __contains__(self, family) -> bool:
        return tuple(family) in self._entries

    def get(self, t: int, v: int, k: int) -> Optional[CatalogEntry]:
        return self._entries.get((t, v, k))

    def query(self, t: int, v: int, k: int, lam: int) -> str:
        lmin = lambda_min(t, k, v)
        if lam % lmin:
            raise CatalogError(f"index {lam} is not a multiple of lambda_min({t},{k},{v}) = {lmin}")
        m = lam // lmin
        top = m_max(t, k, v)
        if not 1 <= m <= top:
            return UNKNOWN
        entry = self.get(t, v, k)
        if entry is None:
            # the complete design always exists
            return EXISTENT if m == top else UNKNOWN
        return EXISTENT if m in entry.existent_m else UNKNOWN


def _parse_line(line: str, lineno: int) -> Optional[CatalogEntry]:
    line = line.split("#", 1)[0].strip()
    if not line:
        return None
    head, sep, rest = line.partition(":")
    if not sep:
        raise CatalogError(f"line {lineno}: missing ':' separator")
    try:
        t, v, k = (int(x) for x in head.split())
    except ValueError:
        raise CatalogError(f"line {lineno}: expected 't v k' before ':', got {head.strip()!r}") from None
    chunks = rest.split(";")
    try:
        ms = [int(x) for x in chunks[0].split()]
    except ValueError:
        raise CatalogError(f"line {lineno}: non-integer multiplier in {chunks[0].strip()!r}") from None
    closed = False
    blocks = None
    for opt in chunks[1:]:
        opt = opt.strip()
        if opt == "closed":
            closed = True
        elif opt.startswith("blocks="):
            blocks = opt[len("blocks="):]
        else:
            raise CatalogError(f"line {lineno}: unknown option {opt!r}")
    if len(set(ms)) != len(ms):
        raise CatalogError(f"line {lineno}: repeated multiplier")
    entry = CatalogEntry(t, v, k, frozenset(ms), closed, blocks)
    try:
        entry.validate()
    except CatalogError as exc:
        raise CatalogError(f"line {lineno}: {exc}") from None
    return entry


def load_catalog(source: TextIO) -> Catalog:
    entries = []
    seen: dict[tuple[int, int, int], int] = {}
    for lineno, line in enumerate(source, start=1):
        entry = _parse_line(line, lineno)
        if entry is None:
            continue
        if entry.family in seen:
            raise CatalogError(f"line {lineno}: family {entry.family} already defined on line {seen[entry.family]}")
        seen[entry.family] = lineno
        entries.append(entry)
    return Catalog(entries)


def save_catalog(cat: Catalog, fh: TextIO) -> None:
    for entry in cat:
        fh.write(entry.format() + "\n")


def read_catalog_file(path) -> Catalog:
    with open(path) as fh:
        return load_catalog(fh)


def apply_closure(cat: Catalog) -> Catalog:
    """Close every family under supplement and add complement families."""
    ms: dict[tuple[int, int, int], set[int]] = {e.family: set(e.existent_m) for e in cat}
    paths = {e.family: e.blocks_path for e in cat}
    changed = True
    while changed:
        changed = False
        for (t, v, k), values in list(ms.items()):
            top = m_max(t, k, v)
            extra = {top - m for m in values if top - m >= 1} - values
            if extra:
                values |= extra
                changed = True
            if v - k < t:
                continue
            lmin = lambda_min(t, k, v)
            image = {complement_lambda(DesignParams(t, v, k, m * lmin)).m for m in values}
            # an empty image must not create a family: that would read as "nothing exists"
            if image and not image <= ms.get((t, v, v - k), set()):
                ms.setdefault((t, v, v - k), set()).update(image)
                changed = True
    return Catalog(
        CatalogEntry(t, v, k, frozenset(values), True, paths.get((t, v, k)))
        for (t, v, k), values in ms.items()
    )


def with_entry(cat: Catalog, entry: CatalogEntry) -> Catalog:
    """Copy of ``cat`` with ``entry`` added or replacing its family."""
    rest = [e for e in cat if e.family != entry.family]
    return Catalog(rest + [entry])
