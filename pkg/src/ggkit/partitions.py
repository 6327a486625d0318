"""Overpartitions, ordinary partitions, enumeration, and frequency-condition families.

Parts of an overpartition are totally ordered by ``1~ < 1 < 2~ < 2 < ...``
(the overlined copy of a size precedes the plain one), and each size carries
at most one overlined part.  Ordinary partitions are plain nondecreasing
tuples of positive ints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple

OVERLINE_MARKS = "̄̅"  # combining macron / overline, accepted on input


class Part(NamedTuple):
    """One part of an overpartition.  Never sort Parts without `part_key`."""

    size: int
    overlined: bool


def part_key(p: Part) -> tuple[int, int]:
    return (p.size, 0 if p.overlined else 1)


def part_text(p: Part) -> str:
    return f"{p.size}~" if p.overlined else str(p.size)


class ParseError(ValueError):
    """Malformed overpartition text or JSON."""


class FrequencyTable:
    """Occurrence counts per size: f(s) plain parts, fbar(s) in {0, 1} overlined."""

    __slots__ = ("_d",)

    def __init__(self, parts):
        d: dict[int, list[int]] = {}
        for p in parts:
            e = d.setdefault(p.size, [0, 0])
            if p.overlined:
                e[1] += 1
            else:
                e[0] += 1
        self._d = d

    def f(self, size: int) -> int:
        e = self._d.get(size)
        return e[0] if e else 0

    def fbar(self, size: int) -> int:
        e = self._d.get(size)
        return e[1] if e else 0

    def sizes(self) -> list[int]:
        return sorted(self._d)

    def max_size(self) -> int:
        return max(self._d) if self._d else 0


class Overpartition:
    """An overpartition: parts nondecreasing in the part order defined above."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        norm = []
        for p in parts:
            if isinstance(p, Part):
                norm.append(p)
            else:
                s, ov = p
                norm.append(Part(int(s), bool(ov)))
        norm.sort(key=part_key)
        seen = set()
        for p in norm:
            if p.size < 1:
                raise ParseError(f"part size must be positive, got {p.size}")
            if p.overlined:
                if p.size in seen:
                    raise ParseError(f"duplicate overlined part of size {p.size}")
                seen.add(p.size)
        self.parts = tuple(norm)

    def weight(self) -> int:
        return sum(p.size for p in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Overpartition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Overpartition({self.to_text()!r})"

    def freq_table(self) -> FrequencyTable:
        return FrequencyTable(self.parts)

    def smallest(self) -> Part:
        if not self.parts:
            raise ValueError("empty overpartition has no smallest part")
        return self.parts[0]

    # -- text / JSON forms ---------------------------------------------------

    def to_text(self) -> str:
        return ",".join(part_text(p) for p in self.parts) if self.parts else "-"

    @classmethod
    def from_text(cls, text: str) -> "Overpartition":
        text = text.strip()
        if text in ("", "-"):
            return cls()
        parts = []
        for raw in text.split(","):
            tok = raw.strip()
            if not tok:
                raise ParseError(f"empty part in {text!r}")
            overlined = False
            if tok.endswith("~"):
                overlined = True
                tok = tok[:-1]
            cleaned = "".join(ch for ch in tok if ch not in OVERLINE_MARKS)
            if cleaned != tok:
                overlined = True
                tok = cleaned
            if not re.fullmatch(r"\d+", tok):
                raise ParseError(f"cannot parse part {raw.strip()!r}")
            parts.append(Part(int(tok), overlined))
        return cls(parts)

    def to_json(self) -> dict:
        return {"parts": [{"size": p.size, "overlined": p.overlined} for p in self.parts]}

    @classmethod
    def from_json(cls, data: dict) -> "Overpartition":
        try:
            return cls(Part(int(d["size"]), bool(d["overlined"])) for d in data["parts"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed overpartition JSON: {exc}") from exc


Partition = tuple[int, ...]


def as_partition(parts) -> Partition:
    t = tuple(sorted(int(x) for x in parts))
    if t and t[0] < 1:
        raise ValueError("partition parts must be positive")
    return t


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """All ordinary partitions of n, nondecreasing parts, in lexicographic order."""

    def rec(rem: int, smin: int):
        if rem == 0:
            yield ()
            return
        for s in range(smin, rem + 1):
            for tail in rec(rem - s, s):
                yield (s,) + tail

    return rec(n, 1)


def enumerate_overpartitions(n: int) -> Iterator[Overpartition]:
    """Every overpartition of weight n exactly once, in lexicographic part order."""

    def rec(rem: int, smin: int, over_ok: bool):
        if rem == 0:
            yield ()
            return
        for s in range(smin, rem + 1):
            if s > smin or over_ok:
                for tail in rec(rem - s, s, False):
                    yield (Part(s, True),) + tail
            for tail in rec(rem - s, s, False):
                yield (Part(s, False),) + tail

    for parts in rec(n, 1, True):
        yield Overpartition(parts)


def iter_overpartitions_bounded(max_weight: int, max_parts: int) -> Iterator[Overpartition]:
    """All overpartitions of weight <= max_weight with at most max_parts parts."""

    def rec(rem: int, smin: int, over_ok: bool, count: int):
        yield ()
        if count == max_parts:
            return
        for s in range(smin, rem + 1):
            if s > smin or over_ok:
                for tail in rec(rem - s, s, False, count + 1):
                    yield (Part(s, True),) + tail
            for tail in rec(rem - s, s, False, count + 1):
                yield (Part(s, False),) + tail

    for parts in rec(max_weight, 1, True, 0):
        yield Overpartition(parts)


def iter_partitions_bounded(max_weight: int, max_parts: int) -> Iterator[Partition]:
    def rec(rem: int, smin: int, count: int):
        yield ()
        if count == max_parts:
            return
        for s in range(smin, rem + 1):
            for tail in rec(rem - s, s, count + 1):
                yield (s,) + tail

    return rec(max_weight, 1, 0)


# ---------------------------------------------------------------------------
# Frequency-condition families
# ---------------------------------------------------------------------------

OVERPARTITION_FAMILIES = frozenset("OPFH")
PARTITION_FAMILIES = frozenset("CDAB")


class FamilyKindError(TypeError):
    """Object kind does not match the family (overpartition vs. partition)."""


@dataclass(frozen=True)
class FamilySpec:
    family: str
    k: int
    i: int

    def __post_init__(self):
        if self.family not in OVERPARTITION_FAMILIES | PARTITION_FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not self.k >= self.i >= 1:
            raise ValueError(f"parameters must satisfy k >= i >= 1, got k={self.k}, i={self.i}")


def _part_is_f_kind(p: Part) -> bool:
    # smallest-part split: F takes overlined-odd / plain-even smallest parts
    return p.overlined == (p.size % 2 == 1)


def o_family_stats(ft: FrequencyTable) -> tuple[int, int, int]:
    """(overlined-1-plus-2 count, largest even window, largest even count after a
    plain odd; -1 when no plain odd occurs).  An overpartition is in the O family
    for (k, i) iff these are at most i-1, k-1 and k-2 respectively."""
    top = ft.max_size()
    fb = ft.fbar(1) + ft.f(2)
    mw = 0
    for t in range(1, top // 2 + 2):
        w = ft.fbar(2 * t) + ft.f(2 * t) + ft.fbar(2 * t + 1) + ft.f(2 * t + 2)
        if w > mw:
            mw = w
    c3 = -1
    for t in range(0, (top + 1) // 2 + 1):
        if ft.f(2 * t + 1) >= 1 and ft.f(2 * t + 2) > c3:
            c3 = ft.f(2 * t + 2)
    return fb, mw, c3


def _in_family_O(ft: FrequencyTable, k: int, i: int) -> bool:
    fb, mw, c3 = o_family_stats(ft)
    return fb <= i - 1 and mw <= k - 1 and c3 <= k - 2


def _in_family_P(ft: FrequencyTable, k: int, i: int) -> bool:
    if i == k:
        d = 2 * k - 1
        return all(s % d != 0 for s in ft.sizes())
    mod = 4 * k - 2
    bad = {0, (2 * i - 1) % mod, (mod - (2 * i - 1)) % mod}
    return all(s % mod not in bad for s in ft.sizes() if ft.f(s))


def _in_family_B(ft: FrequencyTable, k: int, i: int) -> bool:
    if ft.f(1) > i - 1:
        return False
    top = ft.max_size()
    return all(ft.f(t) + ft.f(t + 1) <= k - 1 for t in range(1, top + 1))


def _in_family_A(ft: FrequencyTable, k: int, i: int) -> bool:
    mod = 2 * k + 1
    bad = {0, i % mod, (mod - i) % mod}
    return all(s % mod not in bad for s in ft.sizes())


def _in_family_C(ft: FrequencyTable, k: int, i: int) -> bool:
    if ft.f(1) + ft.f(2) > i - 1:
        return False
    top = ft.max_size()
    for t in range(0, (top + 1) // 2 + 1):
        if ft.f(2 * t + 1) > 1:
            return False
    for t in range(1, top // 2 + 2):
        if ft.f(2 * t) + ft.f(2 * t + 1) + ft.f(2 * t + 2) > k - 1:
            return False
    return True


def _in_family_D(ft: FrequencyTable, k: int, i: int) -> bool:
    mod = 4 * k
    bad = {0, (2 * i - 1) % mod, (mod - (2 * i - 1)) % mod}
    return all(s % 4 != 2 and s % mod not in bad for s in ft.sizes())


def satisfies_family(obj, spec: FamilySpec) -> bool:
    """True iff obj satisfies every clause of the named family.

    O/P/F/H take an Overpartition; C/D/A/B take an ordinary partition
    (any iterable of positive ints).  The empty object belongs to every
    O/P/C/D/A/B family and to neither F nor H.
    """
    fam = spec.family
    if fam in OVERPARTITION_FAMILIES:
        if not isinstance(obj, Overpartition):
            raise FamilyKindError(f"family {fam} needs an Overpartition, got {type(obj).__name__}")
        ft = obj.freq_table()
        if fam == "O":
            return _in_family_O(ft, spec.k, spec.i)
        if fam == "P":
            return _in_family_P(ft, spec.k, spec.i)
        if not obj.parts or not _in_family_O(ft, spec.k, spec.i):
            return False
        return _part_is_f_kind(obj.smallest()) == (fam == "F")
    if isinstance(obj, Overpartition):
        raise FamilyKindError(f"family {fam} needs an ordinary partition, got an Overpartition")
    ft = FrequencyTable(Part(s, False) for s in obj)
    if fam == "B":
        return _in_family_B(ft, spec.k, spec.i)
    if fam == "A":
        return _in_family_A(ft, spec.k, spec.i)
    if fam == "C":
        return _in_family_C(ft, spec.k, spec.i)
    return _in_family_D(ft, spec.k, spec.i)


def count_family(spec: FamilySpec, n: int) -> int:
    """Exhaustive filter-and-count over all objects of weight n."""
    if spec.family in OVERPARTITION_FAMILIES:
        return sum(1 for op in enumerate_overpartitions(n) if satisfies_family(op, spec))
    return sum(1 for p in enumerate_partitions(n) if satisfies_family(p, spec))


def count_family_bivariate(spec: FamilySpec, n: int) -> dict[int, int]:
    """Counts of weight-n family members per number of parts m."""
    out: dict[int, int] = {}
    if spec.family in OVERPARTITION_FAMILIES:
        objs: Iterator = enumerate_overpartitions(n)
    else:
        objs = enumerate_partitions(n)
    for obj in objs:
        if satisfies_family(obj, spec):
            m = len(obj)
            out[m] = out.get(m, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Bulk enumeration sweeps (exhaustive oracles for the verifier)
#
# The sweeps visit every (over)partition of weight <= n_max exactly once via a
# recursion over sizes, carrying just the statistics the family clauses read:
# the count of overlined 1s plus plain 2s, the largest even-anchored window
# sum, and the largest plain-even count following a plain odd size.  Windows
# that straddle the gap after the last chosen size are resolved lazily, when a
# later size (or the end of the object) passes them.
# ---------------------------------------------------------------------------


def overpartition_ofh_tables(n_max: int, pairs) -> dict[tuple[str, int, int], dict[tuple[int, int], int]]:
    """Exhaustive (m, n) count tables for the O family and its F/H smallest-part
    split, for every (k, i) in `pairs`, over all overpartitions of weight <= n_max."""
    pairs = sorted(set(pairs))
    kmax = max(k for k, _ in pairs)
    imax = max(i for _, i in pairs)
    fbcap = imax
    wcap = kmax
    ccap = kmax - 1
    span = n_max + 1
    hist: dict[int, int] = {}

    def rec(smin, rem, t1, f1, o1, t2, f2, o2, fb, mw, c3, m, w, kind):
        for s in range(smin, rem + 1):
            mw0, c30 = mw, c3
            if t1:
                if t1 % 2:
                    if t1 + 1 < s:
                        if t1 >= 3:  # window anchored at even t1+1 >= 4
                            if t2 == t1 - 1:
                                wv = o1 + o2 + f2
                            else:
                                wv = o1
                            if wv > mw0:
                                mw0 = wv
                        if f1 and c30 < 0:
                            c30 = 0
                else:
                    if t1 + 2 < s:
                        wv = o1 + f1
                        if wv > mw0:
                            mw0 = wv
            if s - 1 == t1:
                fprev, oprev = f1, o1
            elif s - 1 == t2:
                fprev, oprev = f2, o2
            else:
                fprev = oprev = 0
            if s - 2 == t1:
                fpp, opp = f1, o1
            elif s - 2 == t2:
                fpp, opp = f2, o2
            else:
                fpp = opp = 0
            maxc = rem // s
            for o in (1, 0):
                for f in range(1 - o, maxc - o + 1):
                    mw1, c31 = mw0, c30
                    if s % 2 == 0:
                        if s >= 4:  # window (2t, 2t+1~, 2t+2) needs t >= 1
                            wv = opp + fpp + oprev + f
                            if wv > mw1:
                                mw1 = wv
                        if fprev and f > c31:
                            c31 = f
                    fb1 = fb
                    if s == 1:
                        fb1 += o
                    elif s == 2:
                        fb1 += f
                    kind1 = kind if kind else (1 if (s % 2 == 1) == (o == 1) else 2)
                    m1 = m + f + o
                    w1 = w + s * (f + o)
                    # emission: the object whose largest size is s
                    mwE, c3E = mw1, c31
                    if s % 2:
                        wv = (o + oprev + fprev) if s >= 3 else 0
                        if f and c3E < 0:
                            c3E = 0
                    else:
                        wv = o + f
                    if wv > mwE:
                        mwE = wv
                    key = ((min(fb1, fbcap) * (wcap + 1) + min(mwE, wcap)) * (ccap + 2)
                           + min(c3E, ccap) + 1) * 3 + kind1
                    pk = (key * span + m1) * span + w1
                    hist[pk] = hist.get(pk, 0) + 1
                    if w1 < n_max:
                        rec(s + 1, n_max - w1, s, f, o, t1, f1, o1,
                            fb1, mw1, c31, m1, w1, kind1)

    tables: dict[tuple[str, int, int], dict[tuple[int, int], int]] = {
        (fam, k, i): {} for fam in "OFH" for (k, i) in pairs
    }
    for (k, i) in pairs:
        tables[("O", k, i)][(0, 0)] = 1  # the empty overpartition is in O but not F/H
    rec(1, n_max, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0)
    for pk, cnt in hist.items():
        w = pk % span
        m = (pk // span) % span
        key = pk // (span * span)
        kind = key % 3
        key //= 3
        c3 = key % (ccap + 2) - 1
        key //= ccap + 2
        mw = key % (wcap + 1)
        fb = key // (wcap + 1)
        for (k, i) in pairs:
            if fb <= i - 1 and mw <= k - 1 and c3 <= k - 2:
                cell = (m, w)
                t = tables[("O", k, i)]
                t[cell] = t.get(cell, 0) + cnt
                t = tables[("F" if kind == 1 else "H", k, i)]
                t[cell] = t.get(cell, 0) + cnt
    return tables


def overpartition_p_counts(n_max: int, pairs) -> dict[tuple[int, int], list[int]]:
    """Exhaustive per-n counts of the modular-restriction overpartition family P."""
    pairs = sorted(set(pairs))
    masks = []
    for (k, i) in pairs:
        if i == k:
            d = 2 * k - 1
            bad = sum(1 << s for s in range(1, n_max + 1) if s % d == 0)
            masks.append((k, i, bad, bad))
        else:
            mod = 4 * k - 2
            res = {0, (2 * i - 1) % mod, (mod - (2 * i - 1)) % mod}
            bad = sum(1 << s for s in range(1, n_max + 1) if s % mod in res)
            masks.append((k, i, bad, 0))
    counts = {(k, i): [0] * (n_max + 1) for (k, i) in pairs}

    def rec(smin, rem, plain_mask, over_mask, w):
        for (k, i, bp, bo) in masks:
            if not (plain_mask & bp) and not (over_mask & bo):
                counts[(k, i)][w] += 1
        for s in range(smin, rem + 1):
            bit = 1 << s
            maxc = rem // s
            for o in (1, 0):
                for f in range(1 - o, maxc - o + 1):
                    rec(s + 1, rem - s * (f + o),
                        plain_mask | (bit if f else 0),
                        over_mask | (bit if o else 0),
                        w + s * (f + o))

    rec(1, n_max, 0, 0, 0)
    return counts


def partition_family_tables(n_max: int, pairs) -> dict[tuple[str, int, int], dict[tuple[int, int], int]]:
    """Exhaustive (m, n) count tables for the ordinary-partition families
    B, C (frequency conditions) and A, D (modular restrictions)."""
    pairs = sorted(set(pairs))
    tables: dict[tuple[str, int, int], dict[tuple[int, int], int]] = {
        (fam, k, i): {(0, 0): 1} for fam in "BCAD" for (k, i) in pairs
    }
    amasks = {}
    dmasks = {}
    for (k, i) in pairs:
        mod = 2 * k + 1
        res = {0, i % mod, (mod - i) % mod}
        amasks[(k, i)] = sum(1 << s for s in range(1, n_max + 1) if s % mod in res)
        mod = 4 * k
        res = {0, (2 * i - 1) % mod, (mod - (2 * i - 1)) % mod}
        dmasks[(k, i)] = sum(1 << s for s in range(1, n_max + 1)
                             if s % 4 == 2 or s % mod in res)

    def rec(smin, rem, t1, g1, t2, g2, mpair, mw3, f1, f12, modd, mask, m, w):
        for s in range(smin, rem + 1):
            mp0, mw0 = mpair, mw3
            if t1:
                if t1 + 1 < s and g1 > mp0:
                    mp0 = g1  # pair window (t1, t1+1) closes with zero
                if t1 % 2:
                    if t1 + 1 < s and t1 >= 3:  # 3-window at even t1+1 >= 4
                        wv = g1 + (g2 if t2 == t1 - 1 else 0)
                        if wv > mw0:
                            mw0 = wv
                else:
                    if t1 + 2 < s and g1 > mw0:  # 3-window at even t1+2
                        mw0 = g1
            gprev = g1 if t1 == s - 1 else 0
            gpp = g1 if t1 == s - 2 else (g2 if t2 == s - 2 else 0)
            for f in range(1, rem // s + 1):
                mp1 = mp0 if gprev + f <= mp0 else gprev + f
                mw1 = mw0
                if s % 2 == 0 and s >= 4:
                    wv = gpp + gprev + f
                    if wv > mw1:
                        mw1 = wv
                f1n = f1 + f if s == 1 else f1
                f12n = f12 + f if s <= 2 else f12
                moddn = f if (s % 2 and f > modd) else modd
                m1 = m + f
                w1 = w + s * f
                mask1 = mask | (1 << s)
                # emission with everything above s empty
                mpE = mp1 if f <= mp1 else f
                mwE = mw1
                if s % 2:
                    if s >= 3:
                        wv = gprev + f
                        if wv > mwE:
                            mwE = wv
                else:
                    if f > mwE:
                        mwE = f
                cell = (m1, w1)
                for (k, i) in pairs:
                    if f1n <= i - 1 and mpE <= k - 1:
                        t = tables[("B", k, i)]
                        t[cell] = t.get(cell, 0) + 1
                    if f12n <= i - 1 and moddn <= 1 and mwE <= k - 1:
                        t = tables[("C", k, i)]
                        t[cell] = t.get(cell, 0) + 1
                    if not mask1 & amasks[(k, i)]:
                        t = tables[("A", k, i)]
                        t[cell] = t.get(cell, 0) + 1
                    if not mask1 & dmasks[(k, i)]:
                        t = tables[("D", k, i)]
                        t[cell] = t.get(cell, 0) + 1
                if w1 < n_max:
                    rec(s + 1, n_max - w1, s, f, t1, g1, mp1, mw1,
                        f1n, f12n, moddn, mask1, m1, w1)

    rec(1, n_max, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0)
    return tables


def family_counts_by_n(table: dict[tuple[int, int], int], n_max: int) -> list[int]:
    """Collapse an (m, n) table to per-n totals."""
    out = [0] * (n_max + 1)
    for (_, n), c in table.items():
        if n <= n_max:
            out[n] += c
    return out
