"""Fraction-free Gaussian elimination over Q(q) and Q.

Rows over the field are first scaled to the integral domain (Z[q] or Z) by
clearing denominators.  Elimination then proceeds with Bareiss' one-step
division-exact update, so intermediate entries stay minors of the cleared
matrix and no gcd is ever taken inside the loop.  Only the final
back-substitution returns to the field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from flint import fmpz_poly

from .exact import RatFunc


class SingularSystemError(ArithmeticError):
    pass


@dataclass
class Echelon:
    rows: list[list[Any]]  # over the integral domain, rank rows
    pivots: list[int]
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)


# -- domain helpers ------------------------------------------------------


def _domain_of(entries: Sequence[Any]) -> str:
    for e in entries:
        if isinstance(e, RatFunc):
            return "poly"
    return "int"


def _clear_row(row: Sequence[Any], domain: str) -> list[Any]:
    if domain == "poly":
        rs = [e if isinstance(e, RatFunc) else RatFunc(e) for e in row]
        lcm = fmpz_poly([1])
        for e in rs:
            if not e.den.is_one():
                lcm = lcm * (e.den // lcm.gcd(e.den))
        return [e.num * (lcm // e.den) for e in rs]
    fs = [Fraction(e) for e in row]
    lcm = 1
    for e in fs:
        lcm = math.lcm(lcm, e.denominator)
    return [e.numerator * (lcm // e.denominator) for e in fs]


def _is_zero(x: Any) -> bool:
    return x.is_zero() if isinstance(x, fmpz_poly) else x == 0


def _size(x: Any) -> int:
    if isinstance(x, fmpz_poly):
        return sum(int(c).bit_length() for c in x.coeffs())
    return abs(x).bit_length()


def _to_field(x: Any, domain: str):
    if domain == "poly":
        return RatFunc._raw(x, fmpz_poly([1])) if not x.is_zero() else RatFunc()
    return Fraction(x)


def _field_int(v: int, domain: str):
    return RatFunc(v) if domain == "poly" else Fraction(v)


# -- elimination ---------------------------------------------------------


def echelon_form(rows: Sequence[Sequence[Any]], domain: str) -> Echelon:
    """Fraction-free row echelon form of already-integral rows.

    The pivot in each column is the nonzero candidate of smallest total
    coefficient size.
    """
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    one = fmpz_poly([1]) if domain == "poly" else 1
    prev = one
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        best = None
        for i in range(r, len(work)):
            if not _is_zero(work[i][c]):
                sz = _size(work[i][c])
                if best is None or sz < best[0]:
                    best = (sz, i)
        if best is None:
            continue
        i = best[1]
        work[r], work[i] = work[i], work[r]
        p = work[r][c]
        for i in range(r + 1, len(work)):
            a = work[i][c]
            row_i = work[i]
            row_r = work[r]
            if _is_zero(a):
                if prev != one:
                    work[i] = [row_i[k] * p // prev if k > c else row_i[k] for k in range(ncols)]
                else:
                    work[i] = [row_i[k] * p if k > c else row_i[k] for k in range(ncols)]
                continue
            new = list(row_i[: c])
            new.append(row_i[c] * 0)
            for k in range(c + 1, ncols):
                v = p * row_i[k] - a * row_r[k]
                new.append(v // prev if prev != one else v)
            work[i] = new
        pivots.append(c)
        prev = p
        r += 1
    return Echelon(work[:r], pivots, ncols)


def clear_matrix(rows: Sequence[Sequence[Any]]) -> tuple[list[list[Any]], str]:
    flat = [e for row in rows for e in row]
    domain = _domain_of(flat)
    return [_clear_row(row, domain) for row in rows], domain


def rank(rows: Sequence[Sequence[Any]]) -> int:
    if not rows:
        return 0
    cleared, domain = clear_matrix(rows)
    return echelon_form(cleared, domain).rank


def nullspace(rows: Sequence[Sequence[Any]], ncols: int | None = None) -> list[list[Any]]:
    """Basis of the right kernel, one vector per non-pivot column.

    Each basis vector has a 1 in its free column and 0 in the other free
    columns.
    """
    if not rows:
        if ncols is None:
            raise ValueError("ncols is required for an empty matrix")
        return [[1 if i == k else 0 for i in range(ncols)] for k in range(ncols)]
    cleared, domain = clear_matrix(rows)
    ech = echelon_form(cleared, domain)
    n = ech.ncols
    free = [c for c in range(n) if c not in ech.pivots]
    basis = []
    for f in free:
        x: list[Any] = [_field_int(0, domain) for _ in range(n)]
        x[f] = _field_int(1, domain)
        _back_substitute(ech, x, domain)
        basis.append(x)
    return basis


def _back_substitute(ech: Echelon, x: list[Any], domain: str) -> None:
    for i in range(ech.rank - 1, -1, -1):
        c = ech.pivots[i]
        row = ech.rows[i]
        acc = None
        for k in range(c + 1, ech.ncols):
            if _is_zero(row[k]) or x[k] == 0:
                continue
            term = _to_field(row[k], domain) * x[k]
            acc = term if acc is None else acc + term
        x[c] = (-acc / _to_field(row[c], domain)) if acc is not None else x[c] * 0


def solve(rows: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> list[Any]:
    """Unique solution of a square nonsingular system."""
    n = len(rows)
    if any(len(r) != n for r in rows) or len(rhs) != n:
        raise ValueError("solve expects a square system")
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    cleared, domain = clear_matrix(augmented)
    ech = echelon_form(cleared, domain)
    if ech.rank < n or ech.pivots[-1] >= n:
        raise SingularSystemError("coefficient matrix is singular")
    # solution of [M | b] is the kernel vector with last entry -1
    x = [_field_int(0, domain) for _ in range(n)] + [_field_int(-1, domain)]
    _back_substitute(ech, x, domain)
    return x[:n]
