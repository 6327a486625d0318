"""Weight-tracked maps on marked overpartitions.

``phi_step``/``psi_step`` trade the clearable part at a first-row position for
stable parts two units heavier (and back); chains sweep a position to the top
of the first row; the full maps split an overpartition into a set of distinct
negative even parts plus a reduced overpartition, and the theta/lambda family
does the same for overlined odd parts against distinct negative odd parts.
``halve``/``double`` convert all-plain-even overpartitions to ordinary
partitions and back.  Every map re-derives the marking from scratch after each
rewrite; nothing trusts stored marks across a rewrite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .marking import (
    MarkedOverpartition,
    PreconditionError,
    classify_f,
    classify_g,
    first_row_types,
    gg_mark,
    in_stable_class,
    is_clearable,
    is_doubled,
    is_reduced,
)
from .partitions import Overpartition, Part, Partition, satisfies_family, FamilySpec


@dataclass
class TraceStep:
    name: str
    before: Overpartition
    after: Overpartition
    delta: int

    def to_json(self) -> dict:
        return {
            "step": self.name,
            "before": self.before.to_text(),
            "after": self.after.to_text(),
            "delta": self.delta,
        }


@dataclass
class Trace:
    steps: list[TraceStep] = field(default_factory=list)

    def record(self, name: str, before: Overpartition, after: Overpartition) -> None:
        self.steps.append(TraceStep(name, before, after, after.weight() - before.weight()))

    def total_delta(self) -> int:
        return sum(s.delta for s in self.steps)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]


def _rewrite(m: MarkedOverpartition, repl: dict[int, Part]) -> Overpartition:
    parts = list(m.base.parts)
    for idx, new in repl.items():
        parts[idx] = new
    return Overpartition(parts)


def _toggle_next(m: MarkedOverpartition, row1: list[int], p: int, repl: dict[int, Part]) -> None:
    # flip the overline of the first-row part at position p+1 (no-op at the top)
    if p < len(row1):
        idx = row1[p]
        part = m.base.parts[idx]
        repl[idx] = Part(part.size, not part.overlined)


def _common_mark(m: MarkedOverpartition, low_size: int, high_size: int) -> int | None:
    both = m.marks_at_size(low_size, overlined=False) & m.marks_at_size(high_size, overlined=False)
    return min(both) if both else None


def _reuse_index(m: MarkedOverpartition, row1: list[int], p: int, size: int) -> int:
    """The mark index r used when clearing an overlined even part of this size:
    1 when the previous first-row part sits within distance 2; else a mark shared
    by the plain parts two below and at the size; else the largest mark at the size."""
    prev = m.base.parts[row1[p - 2]]
    if prev.size >= size - 2:
        return 1
    b = _common_mark(m, size - 2, size)
    if b is not None:
        return b
    return max(m.marks_at_size(size))


def phi_step(op: Overpartition, p: int, trace: Trace | None = None) -> Overpartition:
    """Clear the first-row part at position p (1 < p <= N1), raising weight by 2."""
    m = gg_mark(op)
    rep = classify_f(m, p)
    if not rep.pending:
        raise PreconditionError(
            f"first-row position {p} must hold the last plain-odd/overlined-even part"
        )
    row1 = m.row_indices(1)
    part = op.parts[row1[p - 1]]
    repl: dict[int, Part] = {}
    l = rep.subcase
    if l == 1:
        repl[row1[p - 1]] = Part(part.size + 2, True)
    elif l == 2:
        r = _common_mark(m, part.size - 1, part.size + 1)
        if r is None:
            r = max(m.marks_at_size(part.size + 1, overlined=False))
        repl[row1[p - 1]] = Part(part.size + 1, False)
        repl[m.find(part.size + 1, False, r)] = Part(part.size + 2, True)
    elif l == 3:
        r = _reuse_index(m, row1, p, part.size)
        if r == 1:
            repl[row1[p - 1]] = Part(part.size + 2, False)
        else:
            repl[row1[p - 1]] = Part(part.size, False)
            repl[m.find(part.size, False, r)] = Part(part.size + 2, False)
    else:
        s = min(m.marks_at_size(part.size + 1, overlined=True))
        r = _reuse_index(m, row1, p, part.size)
        if r == 1:
            repl[row1[p - 1]] = Part(part.size + 1, True)
        else:
            repl[row1[p - 1]] = Part(part.size, False)
            repl[m.find(part.size, False, r)] = Part(part.size + 1, True)
        repl[m.find(part.size + 1, True, s)] = Part(part.size + 2, False)
    _toggle_next(m, row1, p, repl)
    out = _rewrite(m, repl)
    assert out.weight() == op.weight() + 2
    if trace is not None:
        trace.record(f"phi[{l},{p}]", op, out)
    return out


def psi_step(op: Overpartition, p: int, trace: Trace | None = None) -> Overpartition:
    """Inverse of phi_step at position p, lowering weight by 2."""
    m = gg_mark(op)
    rep = classify_f(m, p)
    if not rep.advanced:
        raise PreconditionError(
            f"first-row position {p} must hold a stable part followed by the part to restore"
        )
    row1 = m.row_indices(1)
    part = op.parts[row1[p - 1]]
    repl: dict[int, Part] = {}
    l = rep.subcase
    if l == 1:
        repl[row1[p - 1]] = Part(part.size - 2, False)
    elif l == 2:
        r = min(m.marks_at_size(part.size + 1, overlined=True))
        repl[row1[p - 1]] = Part(part.size - 1, False)
        repl[m.find(part.size + 1, True, r)] = Part(part.size, False)
    elif l == 3:
        nxt = row1[p] if p < len(row1) else None
        nxt_size = op.parts[nxt].size if nxt is not None else None
        if (nxt_size is not None and nxt_size <= part.size + 2) or not m.marks_at_size(
            part.size + 2, overlined=False
        ):
            repl[row1[p - 1]] = Part(part.size - 2, True)
        else:
            r = min(m.marks_at_size(part.size + 2, overlined=False))
            repl[m.find(part.size + 2, False, r)] = Part(part.size, False)
            repl[row1[p - 1]] = Part(part.size, True)
    else:
        if part.overlined:
            s = min(m.marks_at_size(part.size + 1, overlined=False))
            repl[row1[p - 1]] = Part(part.size - 1, True)
            repl[m.find(part.size + 1, False, s)] = Part(part.size, True)
        else:
            r = min(m.marks_at_size(part.size + 1, overlined=True))
            s = min(m.marks_at_size(part.size + 2, overlined=False))
            repl[row1[p - 1]] = Part(part.size, True)
            repl[m.find(part.size + 1, True, r)] = Part(part.size, False)
            repl[m.find(part.size + 2, False, s)] = Part(part.size + 1, True)
    _toggle_next(m, row1, p, repl)
    out = _rewrite(m, repl)
    assert out.weight() == op.weight() - 2
    if trace is not None:
        trace.record(f"psi[{l},{p}]", op, out)
    return out


def _first_row_size(op: Overpartition) -> int:
    rows = gg_mark(op).row_counts()
    return rows[0] if rows else 0


def phi_chain(op: Overpartition, p: int, trace: Trace | None = None) -> Overpartition:
    """Sweep position p to the top: phi_step at p, p+1, ..., N1 (weight +2(N1-p+1))."""
    n1 = _first_row_size(op)
    if not 1 <= p <= n1:
        raise PreconditionError(f"position {p} out of range 1..{n1}")
    cur = op
    for q in range(p, n1 + 1):
        cur = phi_step(cur, q, trace)
    return cur


def psi_chain(op: Overpartition, p: int, trace: Trace | None = None) -> Overpartition:
    """Inverse sweep: psi_step at N1, N1-1, ..., p."""
    n1 = _first_row_size(op)
    if not 1 <= p <= n1:
        raise PreconditionError(f"position {p} out of range 1..{n1}")
    cur = op
    for q in range(n1, p - 1, -1):
        cur = psi_step(cur, q, trace)
    return cur


SignedEvenPartition = tuple[int, ...]
SignedOddPartition = tuple[int, ...]


def _check_signed(parts, n_max: int, parity: int, label: str) -> tuple[int, ...]:
    t = tuple(sorted(parts))
    if len(set(t)) != len(t):
        raise PreconditionError(f"{label} parts must be distinct")
    for x in t:
        if x >= 0 or x % 2 != parity or x < parity - 2 * n_max:
            raise PreconditionError(
                f"{label} part {x} outside the allowed range [{parity - 2 * n_max}, {parity - 2}]"
            )
    return t


def phi_full(op: Overpartition, trace: Trace | None = None) -> tuple[SignedEvenPartition, Overpartition]:
    """Remove every plain-odd/overlined-even part, emitting one distinct negative
    even part per removal; weights satisfy |input| = |evens| + |output|."""
    if not in_stable_class(op):
        raise PreconditionError("smallest part must be overlined odd or plain even")
    m = gg_mark(op)
    n1 = m.row_counts()[0] if m.marks else 0
    js: list[int] = []
    cur = op
    while True:
        m = gg_mark(cur)
        row1 = m.row_indices(1)
        clear = [j + 1 for j, idx in enumerate(row1) if is_clearable(cur.parts[idx])]
        if not clear:
            break
        p = max(clear)
        js.append(p)
        cur = phi_chain(cur, p, trace)
    tau = tuple(-2 * (n1 - j + 1) for j in sorted(js))
    assert op.weight() == sum(tau) + cur.weight()
    return tau, cur


def psi_full(tau, op: Overpartition, trace: Trace | None = None) -> Overpartition:
    """Inverse of phi_full: reinsert one part per negative even entry of tau."""
    if not is_reduced(op):
        raise PreconditionError("target overpartition may not contain plain odd or overlined even parts")
    m = gg_mark(op)
    n1 = m.row_counts()[0] if m.marks else 0
    tau = _check_signed(tau, n1 - 1, 0, "negative even")
    cur = op
    for t in tau:
        j = n1 + 1 + t // 2
        cur = psi_chain(cur, j, trace)
    assert cur.weight() == op.weight() + sum(tau)
    return cur


def theta_step(op: Overpartition, p: int, trace: Trace | None = None) -> Overpartition:
    """Convert the type-O first-row part at position p to type E
    (weight +2, or +1 at the top position)."""
    m = gg_mark(op)
    rep = classify_g(m, p)
    if not rep.pending:
        raise PreconditionError(f"first-row position {p} must hold the last type-O part")
    row1 = m.row_indices(1)
    n1 = len(row1)
    part = op.parts[row1[p - 1]]
    repl: dict[int, Part] = {}
    if p < n1:
        nxt = op.parts[row1[p]]
        if part.overlined:
            t2 = part.size + 1  # 2t+2
            if nxt.size == part.size + 3:
                repl[row1[p - 1]] = Part(t2, False)
                repl[row1[p]] = Part(nxt.size + 1, True)
                case = "1.1"
            else:
                r = max(m.marks_at_size(nxt.size, overlined=False))
                repl[row1[p - 1]] = Part(t2, False)
                repl[m.find(nxt.size, False, r)] = Part(nxt.size + 1, True)
                case = "1.2"
        else:
            s = min(m.marks_at_size(part.size + 1, overlined=True))
            if s in m.marks_at_size(part.size + 4, overlined=False):
                repl[m.find(part.size + 1, True, s)] = Part(part.size + 2, False)
                repl[m.find(part.size + 4, False, s)] = Part(part.size + 5, True)
                case = "2.1"
            else:
                r = max(m.marks_at_size(nxt.size, overlined=False))
                repl[m.find(part.size + 1, True, s)] = Part(part.size + 2, False)
                repl[m.find(nxt.size, False, r)] = Part(nxt.size + 1, True)
                case = "2.2"
    else:
        if part.overlined:
            repl[row1[p - 1]] = Part(part.size + 1, False)
            case = "3.1"
        else:
            s = min(m.marks_at_size(part.size + 1, overlined=True))
            repl[m.find(part.size + 1, True, s)] = Part(part.size + 2, False)
            case = "3.2"
    out = _rewrite(m, repl)
    assert out.weight() == op.weight() + (1 if p == n1 else 2)
    if trace is not None:
        trace.record(f"theta[{case},{p}]", op, out)
    return out


def lambda_step(op: Overpartition, p: int, trace: Trace | None = None) -> Overpartition:
    """Inverse of theta_step at position p."""
    m = gg_mark(op)
    rep = classify_g(m, p)
    if not rep.advanced:
        raise PreconditionError(
            f"first-row position {p} must hold a type-E part followed by the type-O part"
        )
    row1 = m.row_indices(1)
    n1 = len(row1)
    part = op.parts[row1[p - 1]]  # plain even, size 2t+2
    t = part.size // 2 - 1
    repl: dict[int, Part] = {}
    if p < n1:
        nxt = op.parts[row1[p]]
        if nxt.overlined:  # 2b+3 overlined
            b = (nxt.size - 3) // 2
            if t > b - 1:
                raise PreconditionError("first-row sizes out of order for the inverse step")
            if t == b - 1:
                repl[row1[p]] = Part(nxt.size - 1, False)
                repl[row1[p - 1]] = Part(part.size - 1, True)
                case = "1.1"
            elif not m.marks_at_size(2 * t + 4, overlined=False):
                repl[row1[p - 1]] = Part(2 * t + 1, True)
                repl[row1[p]] = Part(nxt.size - 1, False)
                case = "1.2"
            else:
                sp = min(m.marks_at_size(2 * t + 4, overlined=False))
                repl[row1[p]] = Part(nxt.size - 1, False)
                repl[m.find(2 * t + 4, False, sp)] = Part(2 * t + 3, True)
                case = "1.3"
        else:  # plain even 2b+2 of type O via an overlined 2b+3
            rp = min(m.marks_at_size(nxt.size + 1, overlined=True))
            if not m.marks_at_size(2 * t + 4, overlined=False):
                repl[m.find(nxt.size + 1, True, rp)] = Part(nxt.size, False)
                repl[row1[p - 1]] = Part(2 * t + 1, True)
                case = "2.1"
            else:
                sp = min(m.marks_at_size(2 * t + 4, overlined=False))
                repl[m.find(nxt.size + 1, True, rp)] = Part(nxt.size, False)
                repl[m.find(2 * t + 4, False, sp)] = Part(2 * t + 3, True)
                case = "2.2"
    else:
        if not m.marks_at_size(2 * t + 4, overlined=False):
            repl[row1[p - 1]] = Part(2 * t + 1, True)
            case = "3.1"
        else:
            sp = min(m.marks_at_size(2 * t + 4, overlined=False))
            repl[m.find(2 * t + 4, False, sp)] = Part(2 * t + 3, True)
            case = "3.2"
    out = _rewrite(m, repl)
    assert out.weight() == op.weight() - (1 if p == n1 else 2)
    if trace is not None:
        trace.record(f"lambda[{case},{p}]", op, out)
    return out


def theta_chain(op: Overpartition, p: int, trace: Trace | None = None) -> Overpartition:
    """theta_step at p, p+1, ..., N1 (weight +2(N1-p)+1)."""
    n1 = _first_row_size(op)
    if not 1 <= p <= n1:
        raise PreconditionError(f"position {p} out of range 1..{n1}")
    cur = op
    for q in range(p, n1 + 1):
        cur = theta_step(cur, q, trace)
    return cur


def lambda_chain(op: Overpartition, p: int, trace: Trace | None = None) -> Overpartition:
    n1 = _first_row_size(op)
    if not 1 <= p <= n1:
        raise PreconditionError(f"position {p} out of range 1..{n1}")
    cur = op
    for q in range(n1, p - 1, -1):
        cur = lambda_step(cur, q, trace)
    return cur


def theta_full(op: Overpartition, trace: Trace | None = None) -> tuple[SignedOddPartition, Overpartition]:
    """Remove every overlined odd part, emitting one distinct negative odd part
    per removal; weights satisfy |input| = |odds| + |output|."""
    if not is_reduced(op):
        raise PreconditionError("input may not contain plain odd or overlined even parts")
    m = gg_mark(op)
    n1 = m.row_counts()[0] if m.marks else 0
    js: list[int] = []
    cur = op
    while True:
        m = gg_mark(cur)
        types = first_row_types(m)
        opos = [j + 1 for j, t in enumerate(types) if t == "O"]
        if not opos:
            break
        p = max(opos)
        js.append(p)
        cur = theta_chain(cur, p, trace)
    eta = tuple(1 - 2 * (n1 - j + 1) for j in sorted(js))
    assert op.weight() == sum(eta) + cur.weight()
    return eta, cur


def lambda_full(eta, op: Overpartition, trace: Trace | None = None) -> Overpartition:
    """Inverse of theta_full: reinsert one overlined odd part per entry of eta."""
    if not is_doubled(op):
        raise PreconditionError("target overpartition must consist of plain even parts")
    m = gg_mark(op)
    n1 = m.row_counts()[0] if m.marks else 0
    eta = _check_signed(eta, n1, 1, "negative odd")
    cur = op
    for t in eta:
        j = n1 + 1 + (t - 1) // 2
        cur = lambda_chain(cur, j, trace)
    assert cur.weight() == op.weight() + sum(eta)
    return cur


# ---------------------------------------------------------------------------
# Smallest-part toggle and the doubling map
# ---------------------------------------------------------------------------


def fh_toggle(op: Overpartition, k: int, i: int, trace: Trace | None = None) -> Overpartition:
    """Flip the overline of the smallest part; for i = 1 additionally subtract 2
    from every part.  Weight is preserved (i >= 2) or drops by 2 per part (i = 1)."""
    if not satisfies_family(op, FamilySpec("F", k, i)):
        raise PreconditionError(f"input is not in the F family for k={k}, i={i}")
    small = op.smallest()
    parts = [Part(small.size, not small.overlined)] + list(op.parts[1:])
    if i == 1:
        if any(p.size <= 2 for p in op.parts):
            raise PreconditionError("the i=1 toggle needs every part size above 2")
        parts = [Part(p.size - 2, p.overlined) for p in parts]
    out = Overpartition(parts)
    if trace is not None:
        trace.record(f"toggle[{k},{i}]", op, out)
    return out


def fh_untoggle(op: Overpartition, k: int, i: int, trace: Trace | None = None) -> Overpartition:
    """Inverse of fh_toggle with the same (k, i): from H at i-1 (or H at k when
    i = 1) back to F at i."""
    target = FamilySpec("H", k, i - 1 if i >= 2 else k)
    if not satisfies_family(op, target):
        raise PreconditionError(
            f"input is not in the H family for k={k}, i={target.i}"
        )
    parts = list(op.parts)
    if i == 1:
        parts = [Part(p.size + 2, p.overlined) for p in parts]
    small = parts[0]
    parts[0] = Part(small.size, not small.overlined)
    out = Overpartition(parts)
    if trace is not None:
        trace.record(f"untoggle[{k},{i}]", op, out)
    return out


def halve(op: Overpartition) -> Partition:
    """Halve an all-plain-even overpartition into an ordinary partition."""
    if not is_doubled(op):
        raise PreconditionError("halving needs every part plain and even")
    return tuple(p.size // 2 for p in op.parts)


def double(parts: Partition) -> Overpartition:
    """Double an ordinary partition into an all-plain-even overpartition."""
    return Overpartition(Part(2 * s, False) for s in sorted(parts))
