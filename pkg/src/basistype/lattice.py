"""Lattice of Basis Types, with IBN adjoined as a top element.

``(N1, K1) <= (N2, K2)`` iff ``N1 <= N2`` and ``K1`` divides ``K2``.
Join takes ``max``/``lcm``, meet takes ``min``/``gcd``; ``(1, 1)`` is the
bottom. ``TOP`` stands for "has IBN" and sits above every Basis Type.
"""

from __future__ import annotations

import enum
import math
from typing import Union

from .ranks import BasisType, checked_lcm

BOTTOM = BasisType(1, 1)


class _Top(enum.Enum):
    TOP = "IBN"

    def __repr__(self) -> str:
        return "TOP"


TOP = _Top.TOP

ExtendedType = Union[BasisType, _Top]


def leq(t1: BasisType, t2: BasisType) -> bool:
    return t1.n_min <= t2.n_min and t2.k_period % t1.k_period == 0


def join(t1: BasisType, t2: BasisType) -> BasisType:
    return BasisType(max(t1.n_min, t2.n_min), checked_lcm(t1.k_period, t2.k_period))


def meet(t1: BasisType, t2: BasisType) -> BasisType:
    return BasisType(min(t1.n_min, t2.n_min), math.gcd(t1.k_period, t2.k_period))


def is_top(e: ExtendedType) -> bool:
    return e is TOP


def ext_leq(e1: ExtendedType, e2: ExtendedType) -> bool:
    if e2 is TOP:
        return True
    if e1 is TOP:
        return False
    return leq(e1, e2)


def ext_join(e1: ExtendedType, e2: ExtendedType) -> ExtendedType:
    if e1 is TOP or e2 is TOP:
        return TOP
    return join(e1, e2)


def ext_meet(e1: ExtendedType, e2: ExtendedType) -> ExtendedType:
    if e1 is TOP:
        return e2
    if e2 is TOP:
        return e1
    return meet(e1, e2)
