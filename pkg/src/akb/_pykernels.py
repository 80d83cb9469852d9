"""Pure-Python kernels.  Sets of arguments are Python ints used as bitsets,
bit ``i`` standing for argument ``i``."""

from __future__ import annotations

from typing import Sequence

from .bitset import bits as _bits


def _index(n_keys: int, members: Sequence[Sequence[int]]) -> list[int]:
    """Invert ``members`` (argument -> keys) into key -> bitset of arguments."""
    out = [0] * n_keys
    for i, keys in enumerate(members):
        bit = 1 << i
        for k in keys:
            out[k] |= bit
    return out


def _gather(index: list[int], members: Sequence[Sequence[int]]) -> list[int]:
    out = []
    for keys in members:
        acc = 0
        for k in keys:
            acc |= index[k]
        out.append(acc)
    return out


def defeat_relation(n_lits: int, n_pairs: int, concl, weak, pairs, rebuts, empty: int, thin):
    """Attack and defeat bitsets for every argument.

    ``concl``/``weak``/``pairs`` list, per argument, its conclusion literal
    ids, weak-premise literal ids and step ids; ``rebuts[p]`` lists the step
    ids that step ``p`` rebuts (preference gate already applied); ``thin[a]``
    lists the targets auxiliary argument ``a`` was generated against.

    Returns ``(uc_col, rb_col, th_col, def_col, def_row)`` where ``*_col[x]``
    holds the attackers of ``x`` and ``def_row[a]`` the arguments ``a``
    defeats.
    """
    n = len(concl)
    concl_by = _index(n_lits, concl)
    weak_by = _index(n_lits, weak)
    has_pair = _index(n_pairs, pairs)

    rebutted_by = [0] * n_pairs   # step -> arguments containing a rebutter of it
    rebut_targets = [0] * n_pairs  # step -> arguments containing a step it rebuts
    for p, targets in enumerate(rebuts):
        for q in targets:
            rebutted_by[q] |= has_pair[p]
            rebut_targets[p] |= has_pair[q]

    uc_col = _gather(concl_by, weak)
    uc_row = _gather(weak_by, concl)
    rb_col = _gather(rebutted_by, pairs)
    rb_row = _gather(rebut_targets, pairs)

    th_col = [0] * n
    th_row = [0] * n
    for a, targets in enumerate(thin):
        for x in targets:
            th_col[x] |= 1 << a
            th_row[a] |= 1 << x

    self_uc = 0
    for x in range(n):
        if uc_col[x] >> x & 1:
            self_uc |= 1 << x
    empty_bit = 1 << empty if empty >= 0 else 0

    def_col = []
    def_row = []
    for x in range(n):
        col = uc_col[x] | (rb_col[x] & ~uc_row[x]) | th_col[x]
        if self_uc >> x & 1:
            col |= empty_bit
        def_col.append(col)
        row = uc_row[x] | (rb_row[x] & ~uc_col[x]) | th_row[x]
        if x == empty:
            row |= self_uc
        def_row.append(row)
    return uc_col, rb_col, th_col, def_col, def_row


def fixpoint_trace(def_col: Sequence[int], strict_row: Sequence[int]) -> list[int]:
    """Iterate ``F(i) = Pi(F(i-1))`` from ``F(0) = Pi(0)`` until stable.

    ``Pi(A)`` admits ``x`` when every defeater of ``x`` is strictly defeated by
    a member of ``A``.  Returns the strictly ascending chain
    ``[F(0), F(1), ...]``; its last element is the least fixpoint.
    """
    n = len(def_col)
    members = 0
    covered = 0
    trace: list[int] = []
    while True:
        new = 0
        for x in range(n):
            if not def_col[x] & ~covered:
                new |= 1 << x
        if trace and new == members:
            return trace
        trace.append(new)
        for x in _bits(new & ~members):
            covered |= strict_row[x]
        members = new


def apply_pi(def_col: Sequence[int], strict_row: Sequence[int], members: int) -> int:
    covered = 0
    for x in _bits(members):
        covered |= strict_row[x]
    out = 0
    for x, col in enumerate(def_col):
        if not col & ~covered:
            out |= 1 << x
    return out
