"""Exhaustive backtracking over basic arrangements.

All enumerations fix a_1 = e (left translation is quotiented out up front)
and extend prefixes depth-first with candidates in ascending id order,
pruning as soon as the partial quotient list violates the target kind.

Essentially-different counting uses the fact that the automorphism group
acts freely on complete basic arrangements (an automorphism fixing every
entry fixes the whole group), so each orbit contains exactly |Aut(G)|
sequences and exactly one lexicographically-least canonical form.  The
directed and terrace counters prune non-canonical prefixes on the fly;
the other kinds filter at the leaves.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass

from .groups import Group, _class_data, automorphisms
from .props import Arrangement

__all__ = [
    "EnumMode",
    "EnumResult",
    "BudgetExceeded",
    "KINDS",
    "enumerate_basic",
    "count_table",
    "search_first",
    "DEFAULT_TERRACE_CAP",
    "DEFAULT_DIRECTED_CAP",
    "DEFAULT_SEARCH_CAP",
]

KINDS = (
    "directed",
    "terrace",
    "directed_tk",
    "half_and_half",
    "narcissistic",
    "directed_half_and_half",
)
_DIRECTED_KINDS = {"directed", "directed_tk", "directed_half_and_half"}

DEFAULT_TERRACE_CAP = 16
DEFAULT_DIRECTED_CAP = 24
DEFAULT_SEARCH_CAP = 64


class BudgetExceeded(RuntimeError):
    """A budgeted search ran out of nodes before exhausting its space."""


class _Stop(Exception):
    pass


@dataclass(frozen=True)
class EnumMode:
    """What to enumerate: kind, T_k depth, and result shape."""

    kind: str
    k: int = 1
    count_only: bool = True
    essentially_different: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown enumeration kind {self.kind!r}")
        if self.kind == "directed_tk" and self.k < 2:
            raise ValueError("directed_tk requires k >= 2 (k=1 is kind='directed')")

    def label(self) -> str:
        if self.kind == "directed_tk":
            return f"directed_t{self.k}"
        return self.kind


@dataclass
class EnumResult:
    raw_count: int
    essential_count: int | None = None
    witnesses: tuple[Arrangement, ...] | None = None


def _odd_order_required(group: Group, kind: str) -> None:
    if kind in ("half_and_half", "narcissistic", "directed_half_and_half") and group.order % 2 == 0:
        raise ValueError(f"{kind} enumeration requires odd group order, got {group.order}")


def _nonidentity_auts(group: Group) -> list[tuple[int, ...]] | None:
    auts = [phi for phi in automorphisms(group) if any(phi[i] != i for i in range(group.order))]
    return auts or None


# ---------------------------------------------------------------------------
# Pure counters for the two headline kinds.  `active` carries the
# automorphisms that still agree with the prefix; a candidate with a
# strictly smaller image under one of them cannot start a canonical
# completion and is skipped (orderly generation).


def _count_directed(group: Group, active0=None, a2: int | None = None) -> int:
    n = group.order
    if n == 1:
        return 1
    ldiv = group.ldiv
    used = bytearray(n)
    used[0] = 1
    vused = bytearray(n)
    rng = range(1, n)
    n1 = n - 1

    def rec(last, depth, active):
        row = ldiv[last]
        total = 0
        if depth == n1:
            for y in rng:
                if used[y] or vused[row[y]]:
                    continue
                if active is not None:
                    ok = True
                    for phi in active:
                        if phi[y] < y:
                            ok = False
                            break
                    if not ok:
                        continue
                total += 1
            return total
        for y in rng:
            if used[y]:
                continue
            v = row[y]
            if vused[v]:
                continue
            na = None
            if active is not None:
                rej = False
                for phi in active:
                    t = phi[y]
                    if t < y:
                        rej = True
                        break
                    if t == y:
                        if na is None:
                            na = [phi]
                        else:
                            na.append(phi)
                if rej:
                    continue
            used[y] = 1
            vused[v] = 1
            total += rec(y, depth + 1, na)
            used[y] = 0
            vused[v] = 0
        return total

    if a2 is None:
        return rec(0, 1, active0)
    y = a2
    na = None
    if active0 is not None:
        for phi in active0:
            t = phi[y]
            if t < y:
                return 0
            if t == y:
                na = [phi] if na is None else na + [phi]
    if n1 == 1:
        return 1
    used[y] = 1
    vused[y] = 1
    return rec(y, 2, na)


def _count_terrace(group: Group, active0=None, a2: int | None = None) -> int:
    n = group.order
    if n == 1:
        return 1
    ldiv = group.ldiv
    _classes, caps, cindex = _class_data(group)
    rem = list(caps)
    cls = list(cindex)
    used = bytearray(n)
    used[0] = 1
    rng = range(1, n)
    n1 = n - 1

    def rec(last, depth, active):
        row = ldiv[last]
        total = 0
        if depth == n1:
            for y in rng:
                if used[y] or not rem[cls[row[y]]]:
                    continue
                if active is not None:
                    ok = True
                    for phi in active:
                        if phi[y] < y:
                            ok = False
                            break
                    if not ok:
                        continue
                total += 1
            return total
        for y in rng:
            if used[y]:
                continue
            c = cls[row[y]]
            if not rem[c]:
                continue
            na = None
            if active is not None:
                rej = False
                for phi in active:
                    t = phi[y]
                    if t < y:
                        rej = True
                        break
                    if t == y:
                        if na is None:
                            na = [phi]
                        else:
                            na.append(phi)
                if rej:
                    continue
            used[y] = 1
            rem[c] -= 1
            total += rec(y, depth + 1, na)
            used[y] = 0
            rem[c] += 1
        return total

    if a2 is None:
        return rec(0, 1, active0)
    y = a2
    na = None
    if active0 is not None:
        for phi in active0:
            t = phi[y]
            if t < y:
                return 0
            if t == y:
                na = [phi] if na is None else na + [phi]
    if n1 == 1:
        return 1
    used[y] = 1
    rem[cls[y]] -= 1
    return rec(y, 2, na)


# ---------------------------------------------------------------------------
# Count-or-collect runners for the remaining kinds.  These track the actual
# sequence, so they also back witness streaming and first-witness searches.
# `auts_filter` enables leaf-level canonical filtering; `sink`/`limit` turn
# collection on; `budget` is a mutable one-cell node allowance.


def _leaf_canonical(seq, auts_filter) -> bool:
    for phi in auts_filter:
        for x in seq:
            t = phi[x]
            if t > x:
                break
            if t < x:
                return False
    return True


class _Runner:
    """Shared state for the sequence-tracking enumerations."""

    __slots__ = ("group", "n", "seq", "used", "raw", "essential", "auts_filter", "sink", "limit", "budget")

    def __init__(self, group, auts_filter, sink, limit, budget):
        self.group = group
        self.n = group.order
        self.seq = [0] * self.n
        self.used = bytearray(self.n)
        self.used[0] = 1
        self.raw = 0
        self.essential = 0
        self.auts_filter = auts_filter
        self.sink = sink
        self.limit = limit
        self.budget = budget

    def node(self) -> None:
        b = self.budget
        if b is not None:
            if b[0] <= 0:
                raise BudgetExceeded("search node budget exhausted")
            b[0] -= 1

    def leaf(self) -> None:
        self.raw += 1
        if self.auts_filter is not None:
            if not _leaf_canonical(self.seq, self.auts_filter):
                return
            self.essential += 1
        if self.sink is not None:
            self.sink.append(Arrangement(self.group, tuple(self.seq)))
            if self.limit is not None and len(self.sink) >= self.limit:
                raise _Stop


def _run_tk(group: Group, k: int, st: _Runner, a2: int | None = None) -> None:
    """Directed T_k enumeration; k = 1 is the plain directed kind."""
    n = group.order
    ldiv = group.ldiv
    seq, used = st.seq, st.used
    marks = [bytearray(n) for _ in range(k + 1)]  # marks[m] = used b^(m) values
    rng = range(1, n)
    leaf, node = st.leaf, st.node
    n1 = n - 1

    if k == 2:
        m1, m2 = marks[1], marks[2]

        def rec(depth):
            node()
            row1 = ldiv[seq[depth - 1]]
            row2 = ldiv[seq[depth - 2]]
            last = depth == n1
            for y in rng:
                if used[y]:
                    continue
                v1 = row1[y]
                if m1[v1]:
                    continue
                v2 = row2[y]
                if m2[v2]:
                    continue
                seq[depth] = y
                if last:
                    leaf()
                    continue
                used[y] = 1
                m1[v1] = 1
                m2[v2] = 1
                rec(depth + 1)
                used[y] = 0
                m1[v1] = 0
                m2[v2] = 0

    else:

        def rec(depth):
            node()
            row = ldiv[seq[depth - 1]]
            mtop = k if k < depth else depth
            rows = [ldiv[seq[depth - m]] for m in range(2, mtop + 1)]
            last = depth == n1
            for y in rng:
                if used[y]:
                    continue
                v1 = row[y]
                if marks[1][v1]:
                    continue
                vals = [r[y] for r in rows]
                ok = True
                for m, v in enumerate(vals, start=2):
                    if marks[m][v]:
                        ok = False
                        break
                if not ok:
                    continue
                seq[depth] = y
                if last:
                    leaf()
                    continue
                used[y] = 1
                marks[1][v1] = 1
                for m, v in enumerate(vals, start=2):
                    marks[m][v] = 1
                rec(depth + 1)
                used[y] = 0
                marks[1][v1] = 0
                for m, v in enumerate(vals, start=2):
                    marks[m][v] = 0

    def rec1(depth):
        # depth 1 has no b^(2) entry yet; feed rec a dummy row via seq[-1]=0
        node()
        row = ldiv[seq[0]]
        for y in rng:
            if used[y]:
                continue
            v1 = row[y]
            if marks[1][v1]:
                continue
            seq[1] = y
            if n == 2:
                leaf()
                continue
            used[y] = 1
            marks[1][v1] = 1
            rec(2)
            used[y] = 0
            marks[1][v1] = 0

    if n == 1:
        leaf()
        return
    if a2 is None:
        rec1(1)
        return
    seq[1] = a2
    used[a2] = 1
    marks[1][a2] = 1
    if n == 2:
        leaf()
    else:
        rec(2)


def _run_terrace_collect(group: Group, st: _Runner, a2: int | None = None) -> None:
    n = group.order
    ldiv = group.ldiv
    _classes, caps, cindex = _class_data(group)
    rem = list(caps)
    cls = list(cindex)
    seq, used = st.seq, st.used
    rng = range(1, n)
    leaf, node = st.leaf, st.node

    def rec(depth):
        node()
        row = ldiv[seq[depth - 1]]
        for y in rng:
            if used[y]:
                continue
            c = cls[row[y]]
            if not rem[c]:
                continue
            seq[depth] = y
            used[y] = 1
            rem[c] -= 1
            if depth + 1 == n:
                leaf()
            else:
                rec(depth + 1)
            used[y] = 0
            rem[c] += 1

    if n == 1:
        leaf()
        return
    if a2 is None:
        rec(1)
        return
    seq[1] = a2
    used[a2] = 1
    rem[cls[a2]] -= 1
    if n == 2:
        leaf()
    else:
        rec(2)


def _run_half_and_half(group: Group, st: _Runner, a2: int | None = None, directed: bool = False) -> None:
    """Half-and-half kinds: one entry per inverse pair in the first half of b."""
    n = group.order
    ldiv = group.ldiv
    _classes, caps, cindex = _class_data(group)
    rem = list(caps)
    cls = list(cindex)
    half = (n - 1) // 2
    cfirst = bytearray(len(caps))
    vused = bytearray(n)
    seq, used = st.seq, st.used
    rng = range(1, n)
    leaf, node = st.leaf, st.node

    def rec(depth):
        node()
        row = ldiv[seq[depth - 1]]
        in_first = depth <= half
        for y in rng:
            if used[y]:
                continue
            v = row[y]
            if directed:
                if vused[v]:
                    continue
            c = cls[v]
            if not rem[c]:
                continue
            if in_first and cfirst[c]:
                continue
            seq[depth] = y
            used[y] = 1
            rem[c] -= 1
            if directed:
                vused[v] = 1
            if in_first:
                cfirst[c] = 1
            if depth + 1 == n:
                leaf()
            else:
                rec(depth + 1)
            used[y] = 0
            rem[c] += 1
            if directed:
                vused[v] = 0
            if in_first:
                cfirst[c] = 0

    if n == 1:
        leaf()
        return
    if a2 is None:
        rec(1)
        return
    seq[1] = a2
    used[a2] = 1
    rem[cls[a2]] -= 1
    if half >= 1:
        cfirst[cls[a2]] = 1
    if directed:
        vused[a2] = 1
    rec(2)


def _run_narcissistic(group: Group, st: _Runner, a2: int | None = None) -> None:
    """Palindromic-b terraces; the second half of the sequence is forced."""
    n = group.order
    mul = group.mul
    ldiv = group.ldiv
    _classes, caps, cindex = _class_data(group)
    cls = list(cindex)
    half = (n - 1) // 2  # free b entries; h = half + 1 elements are chosen
    cfirst = bytearray(len(caps))
    bvals = [0] * (half + 1)
    seq, used = st.seq, st.used
    rng = range(1, n)
    leaf, node = st.leaf, st.node

    def close_out():
        # b_j = b_{n-j} for j > half; a_{j+1} = a_j * b_j (1-based).
        x = seq[half]
        placed = []
        ok = True
        for j in range(half + 1, n):
            x = mul[x][bvals[n - j]]
            if used[x]:
                ok = False
                break
            used[x] = 1
            seq[j] = x
            placed.append(x)
        if ok:
            leaf()
        for x in placed:
            used[x] = 0

    def rec(depth):
        node()
        row = ldiv[seq[depth - 1]]
        for y in rng:
            if used[y]:
                continue
            v = row[y]
            c = cls[v]
            if cfirst[c]:
                continue
            seq[depth] = y
            used[y] = 1
            cfirst[c] = 1
            bvals[depth] = v
            if depth == half:
                close_out()
            else:
                rec(depth + 1)
            used[y] = 0
            cfirst[c] = 0

    if n == 1:
        leaf()
        return
    if a2 is None:
        rec(1)
        return
    seq[1] = a2
    used[a2] = 1
    cfirst[cls[a2]] = 1
    bvals[1] = a2
    if half == 1:
        close_out()
    else:
        rec(2)


# ---------------------------------------------------------------------------
# Public surface


def _default_cap(kind: str) -> int:
    return DEFAULT_DIRECTED_CAP if kind in _DIRECTED_KINDS else DEFAULT_TERRACE_CAP


def _check_tk_range(group: Group, mode: EnumMode) -> None:
    if mode.kind == "directed_tk" and group.order > 1 and mode.k > group.order - 1:
        raise ValueError(f"k={mode.k} out of range 1..{group.order - 1}")


def _run_kind(group: Group, mode: EnumMode, st: _Runner, a2: int | None = None) -> None:
    kind = mode.kind
    if kind in ("directed", "directed_tk"):
        _run_tk(group, mode.k if kind == "directed_tk" else 1, st, a2)
    elif kind == "terrace":
        _run_terrace_collect(group, st, a2)
    elif kind == "half_and_half":
        _run_half_and_half(group, st, a2, directed=False)
    elif kind == "directed_half_and_half":
        _run_half_and_half(group, st, a2, directed=True)
    else:
        _run_narcissistic(group, st, a2)


def _count_branch(group: Group, mode: EnumMode, a2: int | None) -> tuple[int, int | None]:
    """(raw, essential|None) for one a2 branch (or the whole tree)."""
    kind = mode.kind
    if mode.essentially_different:
        if kind == "directed":
            ess = _count_directed(group, _nonidentity_auts(group), a2)
            return -1, ess  # raw of an orderly branch is not meaningful
        if kind == "terrace":
            ess = _count_terrace(group, _nonidentity_auts(group), a2)
            return -1, ess
        auts = automorphisms(group)
        st = _Runner(group, [p for p in auts if any(p[i] != i for i in range(group.order))] or [], None, None, None)
        _run_kind(group, mode, st, a2)
        return st.raw, st.essential
    if kind == "directed":
        return _count_directed(group, None, a2), None
    if kind == "terrace":
        return _count_terrace(group, None, a2), None
    st = _Runner(group, None, None, None, None)
    _run_kind(group, mode, st, a2)
    return st.raw, None


def _branch_worker(args) -> tuple[int, int | None]:
    mul, words, spec, mode, a2 = args
    group = Group(mul, words, spec)
    return _count_branch(group, mode, a2)


def enumerate_basic(
    group: Group,
    mode: EnumMode,
    cap: int | None = None,
    threads: int = 1,
    max_witnesses: int | None = None,
) -> EnumResult:
    """Count (and optionally collect) basic sequences of the given kind.

    With essentially_different set, the essential count equals the number
    of distinct canonical forms; the free Aut-action makes the raw count
    exactly essential * |Aut(G)|.
    """
    cap = _default_cap(mode.kind) if cap is None else cap
    if group.order > cap:
        raise ValueError(f"enumeration capped at order {cap}, group has {group.order}")
    _odd_order_required(group, mode.kind)
    _check_tk_range(group, mode)
    n = group.order

    if n == 1:
        wit = None if mode.count_only else (Arrangement(group, (0,)),)
        return EnumResult(1, 1 if mode.essentially_different else None, wit)

    if not mode.count_only:
        if threads != 1:
            raise ValueError("witness collection runs single-threaded")
        auts_filter = None
        if mode.essentially_different:
            auts = automorphisms(group)
            auts_filter = [p for p in auts if any(p[i] != i for i in range(n))] or []
        sink: list[Arrangement] = []
        st = _Runner(group, auts_filter, sink, max_witnesses, None)
        try:
            _run_kind(group, mode, st)
        except _Stop:
            pass
        essential = st.essential if mode.essentially_different else None
        return EnumResult(st.raw, essential, tuple(sink))

    if threads > 1:
        ctx = multiprocessing.get_context("fork")
        jobs = [(group.mul, group.element_words, group.spec, mode, a2) for a2 in range(1, n)]
        with ctx.Pool(threads) as pool:
            parts = pool.map(_branch_worker, jobs)
    else:
        parts = [_count_branch(group, mode, a2) for a2 in range(1, n)]

    if mode.essentially_different:
        essential = sum(p[1] for p in parts)
        if mode.kind in ("directed", "terrace"):
            raw = essential * len(automorphisms(group))
        else:
            raw = sum(p[0] for p in parts)
        return EnumResult(raw, essential, None)
    return EnumResult(sum(p[0] for p in parts), None, None)


def count_table(group: Group, threads: int = 1) -> tuple[int, int]:
    """(t, d): essentially different terraces and directed terraces, |G| <= 15."""
    if group.order > 15:
        raise ValueError(f"count_table covers orders up to 15, group has {group.order}")
    t = enumerate_basic(group, EnumMode("terrace", essentially_different=True), threads=threads)
    d = enumerate_basic(group, EnumMode("directed", essentially_different=True), threads=threads)
    assert t.essential_count is not None and d.essential_count is not None
    return t.essential_count, d.essential_count


def search_first(
    group: Group,
    mode: EnumMode,
    cap: int = DEFAULT_SEARCH_CAP,
    max_nodes: int | None = None,
) -> Arrangement | None:
    """First witness in DFS order, or None after exhausting the space.

    A None return is a nonexistence certificate; running past `max_nodes`
    raises BudgetExceeded instead.  Canonical filtering is irrelevant for
    existence, so essentially_different is ignored here.
    """
    if group.order > cap:
        raise ValueError(f"search capped at order {cap}, group has {group.order}")
    _odd_order_required(group, mode.kind)
    _check_tk_range(group, mode)
    if group.order == 1:
        return Arrangement(group, (0,))
    sink: list[Arrangement] = []
    budget = None if max_nodes is None else [max_nodes]
    st = _Runner(group, None, sink, 1, budget)
    try:
        _run_kind(group, mode, st)
    except _Stop:
        pass
    return sink[0] if sink else None
