"""The integers as an FLe-algebra: min, max, addition, subtraction residual.

``Z(n)`` points the structure at ``0 := n``.  The monoid unit is the integer
0, so the constant written ``1`` in terms evaluates to the integer 0 and the
constant ``0`` evaluates to ``n``.  Nothing here certifies a universal claim:
:func:`search_witness` only scans a finite window, and reports say so.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import UnboundDelta
from .report import CheckReport
from .terms import (
    BiArrow,
    BDiamond,
    CnxMeet,
    CnxMeetDelta,
    CnxProd,
    CnxProdDelta,
    Delta,
    Dm,
    Join,
    Meet,
    Neg,
    Prod,
    Statement,
    Term,
    check_grid,
    evaluate_with,
    parse,
)


@dataclass(frozen=True)
class ComputableAlgebra:
    zero_param: int

    @property
    def unit(self) -> int:
        return 0

    @property
    def zero(self) -> int:
        return self.zero_param

    def meet(self, x, y):
        return np.minimum(x, y)

    def join(self, x, y):
        return np.maximum(x, y)

    def prod(self, x, y):
        return x + y

    def arrow(self, x, y):
        return y - x

    def neg(self, x):
        return self.arrow(x, self.zero)

    def dm(self, x):
        return self.neg(self.neg(x))

    def __str__(self) -> str:
        return f"Z({self.zero_param})"


class IntegerBackend:
    def __init__(self, model: ComputableAlgebra, delta=None):
        self.m = model
        self.delta = delta

    def const(self, which, shape):
        return np.full(shape, self.m.zero if which == 0 else self.m.unit, dtype=np.int64)

    def unary(self, t, a):
        m = self.m
        if isinstance(t, Neg):
            return m.neg(a)
        if isinstance(t, Dm):
            return m.dm(a)
        if isinstance(t, (Delta, BDiamond)):
            if self.delta is None:
                raise UnboundDelta(f"{t.keyword}(...) needs a bound map")
            return self.delta(a)
        raise TypeError(t)

    def binary(self, t, a, b):
        m = self.m
        if isinstance(t, Meet):
            return m.meet(a, b)
        if isinstance(t, Join):
            return m.join(a, b)
        if isinstance(t, Prod):
            return m.prod(a, b)
        if isinstance(t, BiArrow):
            return m.meet(m.arrow(a, b), m.arrow(b, a))
        if isinstance(t, (CnxMeet, CnxProd)):
            combine = m.meet if isinstance(t, CnxMeet) else m.prod
            return combine(m.arrow(a, b), m.arrow(b, m.dm(a)))
        if isinstance(t, (CnxMeetDelta, CnxProdDelta)):
            if self.delta is None:
                raise UnboundDelta(f"'{t.keyword}' needs a bound map")
            combine = m.meet if isinstance(t, CnxMeetDelta) else m.prod
            return combine(m.arrow(a, b), m.arrow(b, self.delta(a)))
        return m.arrow(a, b)

    def leq(self, a, b):
        return a <= b

    def label(self, v) -> int:
        return int(v)


def eval_computable(model: ComputableAlgebra, term: Term, assignment: dict, delta=None) -> int:
    env = {k: np.int64(v) for k, v in assignment.items()}
    return int(evaluate_with(IntegerBackend(model, delta), term, env))


def check_window(model: ComputableAlgebra, stmt: Statement, window: int = 10, delta=None) -> CheckReport:
    """Check over ``[-window, window]``; a pass is labelled window-checked."""
    if isinstance(stmt, str):
        stmt = parse(stmt)
    domain = np.arange(-window, window + 1, dtype=np.int64)
    report = check_grid(IntegerBackend(model, delta), stmt, domain)
    if report.passed:
        return CheckReport("pass", statement=stmt, detail=f"window-checked on [-{window}, {window}]")
    return report


def search_witness(model: ComputableAlgebra, stmt: Statement, window: int = 10, delta=None) -> Optional[dict]:
    """Lexicographically least failing assignment in the window, or None."""
    report = check_window(model, stmt, window, delta)
    return None if report.passed else report.witness
