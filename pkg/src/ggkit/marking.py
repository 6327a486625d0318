"""Göllnitz-Gordon marking of overpartitions and the Gordon marking of partitions.

The marking assigns a positive integer (a mark) to every part, smallest part
first.  Plain odd parts and overlined even parts are always 1-marked.  An
overlined odd part takes the least mark unused at the size one below it.  A
plain even part 2t+2 normally takes the least mark unused within size
distance 2, except in one reuse case: when the least mark g already present
at size 2t satisfies g >= 2, the immediately preceding part carries mark g-1,
some 2t+1 or overlined 2t+2 occurs, and no overlined 2t+1 occurs, the part
reuses g.

Row r of the marking collects the parts marked r; row sizes are always
nonincreasing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .partitions import Overpartition, Part, Partition, part_text


class PreconditionError(ValueError):
    """A map or classifier was applied outside its stated domain."""


def _mex(used) -> int:
    m = 1
    while m in used:
        m += 1
    return m


@dataclass(frozen=True)
class MarkedOverpartition:
    base: Overpartition
    marks: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.marks)

    def row_counts(self) -> tuple[int, ...]:
        """(N_1, N_2, ...): how many parts carry each mark, up to the largest mark."""
        if not self.marks:
            return ()
        top = max(self.marks)
        out = [0] * top
        for mk in self.marks:
            out[mk - 1] += 1
        return tuple(out)

    def profile(self, k: int) -> tuple[int, ...]:
        """Row counts padded to length k-1; error if any mark reaches k."""
        rows = self.row_counts()
        if len(rows) > k - 1:
            raise PreconditionError(f"marking has {len(rows)} rows, more than k-1 = {k - 1}")
        return rows + (0,) * (k - 1 - len(rows))

    def sub_overpartition(self, r: int) -> tuple[Part, ...]:
        """The parts marked r, in part order (empty when no part is r-marked)."""
        if r < 1:
            raise ValueError("mark index must be >= 1")
        return tuple(p for p, mk in zip(self.base.parts, self.marks) if mk == r)

    def row_indices(self, r: int) -> list[int]:
        return [j for j, mk in enumerate(self.marks) if mk == r]

    def find(self, size: int, overlined: bool, mark: int) -> int:
        """Index of the part with this size, overline flag and mark."""
        for j, (p, mk) in enumerate(zip(self.base.parts, self.marks)):
            if p.size == size and p.overlined == overlined and mk == mark:
                return j
        raise PreconditionError(
            f"no {mark}-marked part {part_text(Part(size, overlined))} present"
        )

    def marks_at_size(self, size: int, overlined: bool | None = None) -> set[int]:
        """Marks carried by the parts of the given size (optionally filtered by kind)."""
        return {
            mk
            for p, mk in zip(self.base.parts, self.marks)
            if p.size == size and (overlined is None or p.overlined == overlined)
        }

    def to_json(self) -> dict:
        return {
            "parts": [{"size": p.size, "overlined": p.overlined} for p in self.base.parts],
            "marks": list(self.marks),
        }

    def render(self) -> str:
        """Plain-text array: one row per mark, top row = largest mark."""
        if not self.marks:
            return "(empty)"
        top = max(self.marks)
        cells = [part_text(p) for p in self.base.parts]
        width = max(len(c) for c in cells)
        lines = []
        for r in range(top, 0, -1):
            row = [
                (c if mk == r else "").ljust(width)
                for c, mk in zip(cells, self.marks)
            ]
            lines.append(f"{r} | " + " ".join(row).rstrip())
        return "\n".join(lines)


def gg_mark(op: Overpartition) -> MarkedOverpartition:
    """Mark an overpartition; the marking is a deterministic function of the parts."""
    ft = op.freq_table()
    marks: list[int] = []
    by_size: dict[int, set[int]] = {}
    for idx, p in enumerate(op.parts):
        s, ov = p
        if s % 2 == 1 and not ov:
            mk = 1
        elif s % 2 == 0 and ov:
            mk = 1
        elif ov:  # overlined odd: blocked only by marks at size exactly s-1
            mk = _mex(by_size.get(s - 1, ()))
        else:  # plain even, s = 2t+2
            used: set[int] = set()
            for d in (0, 1, 2):
                used |= by_size.get(s - d, set())
            f = _mex(used)
            at_two_below = by_size.get(s - 2)
            g = min(at_two_below) if at_two_below else 0
            if (
                g >= 2
                and idx > 0
                and marks[idx - 1] == g - 1
                and (ft.f(s - 1) > 0 or ft.fbar(s) > 0)
                and ft.fbar(s - 1) == 0
            ):
                mk = g
            else:
                mk = f
        marks.append(mk)
        by_size.setdefault(s, set()).add(mk)
    return MarkedOverpartition(op, tuple(marks))


def gordon_mark(parts: Partition) -> tuple[int, ...]:
    """Greedy marks for an ordinary partition: the least mark not used on any
    earlier equal or consecutive part."""
    parts = tuple(sorted(parts))
    marks: list[int] = []
    by_size: dict[int, set[int]] = {}
    for s in parts:
        used = by_size.get(s, set()) | by_size.get(s - 1, set())
        mk = _mex(used)
        marks.append(mk)
        by_size.setdefault(s, set()).add(mk)
    return tuple(marks)


def gordon_row_counts(parts: Partition) -> tuple[int, ...]:
    marks = gordon_mark(parts)
    if not marks:
        return ()
    out = [0] * max(marks)
    for mk in marks:
        out[mk - 1] += 1
    return tuple(out)


def row_counts(m: MarkedOverpartition) -> tuple[int, ...]:
    return m.row_counts()


def sub_overpartition(m: MarkedOverpartition, r: int) -> tuple[Part, ...]:
    return m.sub_overpartition(r)


# ---------------------------------------------------------------------------
# Part kinds and positional classifiers
# ---------------------------------------------------------------------------


def is_clearable(p: Part) -> bool:
    """Plain odd or overlined even: the kinds the first reduction removes."""
    return p.overlined == (p.size % 2 == 0)


def is_stable(p: Part) -> bool:
    """Overlined odd or plain even: the kinds that survive the first reduction."""
    return p.overlined == (p.size % 2 == 1)


def in_stable_class(op: Overpartition) -> bool:
    """Smallest part overlined odd or plain even (vacuously true when empty)."""
    return not op.parts or is_stable(op.smallest())


def is_reduced(op: Overpartition) -> bool:
    """No overlined even and no plain odd parts at all."""
    return all(is_stable(p) for p in op.parts)


def is_doubled(op: Overpartition) -> bool:
    """Every part is a plain even part."""
    return all(not p.overlined and p.size % 2 == 0 for p in op.parts)


def part_type(m: MarkedOverpartition, j: int) -> str:
    """Type of the j-th first-row part (1-based): "O" when it is an overlined odd
    part or an overlined odd part of size one larger occurs; otherwise "E"."""
    if not is_reduced(m.base):
        raise PreconditionError(
            "part types are defined only without overlined even or plain odd parts"
        )
    row1 = m.row_indices(1)
    if not 1 <= j <= len(row1):
        raise PreconditionError(f"first-row position {j} out of range 1..{len(row1)}")
    p = m.base.parts[row1[j - 1]]
    if p.overlined:
        return "O"
    return "O" if m.base.freq_table().fbar(p.size + 1) else "E"


def first_row_types(m: MarkedOverpartition) -> list[str]:
    return [part_type(m, j) for j in range(1, len(m.row_indices(1)) + 1)]


@dataclass(frozen=True)
class PositionReport:
    """Where position p sits relative to the sweep that clears the first row.

    pending: position p holds the next part to clear (everything above is done);
    advanced: the part to clear has moved to position p+1;
    cleared: positions p..N1 are all done.
    subcase: the 1..4 dispatch used by the step map (pending/advanced only).
    """

    p: int
    pending: bool
    advanced: bool
    cleared: bool
    subcase: int | None = None


def _stable_size(m: MarkedOverpartition, row1: list[int], j: int) -> int | None:
    """Size of the j-th first-row part, or None beyond N1 (treated as infinite)."""
    if j <= len(row1):
        return m.base.parts[row1[j - 1]].size
    return None


def _f_subcase(m: MarkedOverpartition, row1: list[int], p: int) -> int:
    op = m.base
    ft = op.freq_table()
    part = op.parts[row1[p - 1]]
    if not part.overlined:  # plain odd
        prev = op.parts[row1[p - 2]]
        if ft.f(part.size + 1) > 0 and prev.size <= part.size - 2:
            return 2
        return 1
    # overlined even
    return 4 if ft.fbar(part.size + 1) else 3


def _fbar_subcase(m: MarkedOverpartition, row1: list[int], p: int) -> int:
    op = m.base
    ft = op.freq_table()
    part = op.parts[row1[p - 1]]
    nxt = _stable_size(m, row1, p + 1)
    if part.overlined:  # overlined odd
        if ft.f(part.size + 1) > 0 and (nxt is None or nxt >= part.size + 2):
            return 4
        return 1
    # plain even
    if not ft.fbar(part.size + 1):
        return 3
    if ft.f(part.size + 2) > 0 and (nxt is None or nxt > part.size + 2):
        return 4
    return 2


def classify_f(m: MarkedOverpartition, p: int) -> PositionReport:
    """Positional classification of a stable-class overpartition at first-row p."""
    if not in_stable_class(m.base):
        raise PreconditionError("smallest part must be overlined odd or plain even")
    row1 = m.row_indices(1)
    n1 = len(row1)
    if not 1 <= p <= n1:
        raise PreconditionError(f"position {p} out of range 1..{n1}")
    kinds = [is_clearable(m.base.parts[j]) for j in row1]
    pending = kinds[p - 1] and not any(kinds[p:])
    advanced = (
        not kinds[p - 1]
        and (p >= n1 or kinds[p])
        and not any(kinds[p + 1 :])
    )
    cleared = not any(kinds[p - 1 :])
    sub = None
    if pending:
        sub = _f_subcase(m, row1, p)
    elif advanced:
        sub = _fbar_subcase(m, row1, p)
    return PositionReport(p, pending, advanced, cleared, sub)


def classify_g(m: MarkedOverpartition, p: int) -> PositionReport:
    """Positional classification by first-row part types O/E."""
    if not is_reduced(m.base):
        raise PreconditionError(
            "type classification needs an overpartition without overlined even "
            "or plain odd parts"
        )
    types = first_row_types(m)
    n1 = len(types)
    if not 1 <= p <= n1:
        raise PreconditionError(f"position {p} out of range 1..{n1}")
    is_o = [t == "O" for t in types]
    pending = is_o[p - 1] and not any(is_o[p:])
    advanced = (
        not is_o[p - 1]
        and (p >= n1 or is_o[p])
        and not any(is_o[p + 1 :])
    )
    cleared = not any(is_o[p - 1 :])
    return PositionReport(p, pending, advanced, cleared)
