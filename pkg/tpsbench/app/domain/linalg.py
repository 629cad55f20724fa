"""
Exact sparse linear algebra over the Gaussian rationals.

Rows are dicts column -> GaussianRational. Elimination clears denominators
and works on Gaussian-integer pairs (re, im) with fraction-free
cross-multiplication, dividing out the integer content of every new row.
Rows are processed shortest first (ties in input order) and the pivot of a
row is its smallest column, so results depend only on the input.
"""

import logging
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from tpsbench.app.core.exceptions import SolverInvariantError
from tpsbench.app.domain.exactnum import GaussianRational, ZERO, ONE

logger = logging.getLogger("tpsbench.domain.linalg")

Row = Dict[int, GaussianRational]
GInt = Tuple[int, int]
IntRow = Dict[int, GInt]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _to_int_row(row: Row) -> IntRow:
    scale = 1
    for value in row.values():
        scale = _lcm(scale, value.re_den)
        scale = _lcm(scale, value.im_den)
    out: IntRow = {}
    for col, value in row.items():
        if value:
            out[col] = (value.re_num * (scale // value.re_den), value.im_num * (scale // value.im_den))
    return _primitive(out)


def _primitive(row: IntRow) -> IntRow:
    g = 0
    for re, im in row.values():
        g = gcd(g, gcd(re, im))
        if g == 1:
            return row
    if g <= 1:
        return row
    return {c: (re // g, im // g) for c, (re, im) in row.items()}


def _gmul(x: GInt, y: GInt) -> GInt:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _eliminate(row: IntRow, col: int, pivot_row: IntRow) -> IntRow:
    """row <- p*row - row[col]*pivot_row, which clears `col`."""
    p = pivot_row[col]
    r = row[col]
    out: IntRow = {}
    for c, v in row.items():
        if c != col:
            out[c] = _gmul(p, v)
    for c, v in pivot_row.items():
        if c == col:
            continue
        rv = _gmul(r, v)
        cur = out.get(c)
        if cur is None:
            out[c] = (-rv[0], -rv[1])
        else:
            new = (cur[0] - rv[0], cur[1] - rv[1])
            if new == (0, 0):
                del out[c]
            else:
                out[c] = new
    out = {c: v for c, v in out.items() if v != (0, 0)}
    return _primitive(out)


class EchelonForm:
    """Incremental echelon basis of a row space.

    Args:
        rows: Initial rows; more can be added with `add`.
    """

    def __init__(self, rows: Iterable[Row] = ()):
        self.pivots: Dict[int, IntRow] = {}
        self.rows_seen = 0
        ordered = sorted(enumerate(r for r in rows if r), key=lambda item: (len(item[1]), item[0]))
        for _, row in ordered:
            self.add(row)

    def _reduce(self, row: IntRow) -> IntRow:
        while row:
            hits = [c for c in row if c in self.pivots]
            if not hits:
                return row
            col = min(hits)
            row = _eliminate(row, col, self.pivots[col])
        return row

    def add(self, row: Row) -> bool:
        """Insert a row; True when it increased the rank."""
        self.rows_seen += 1
        reduced = self._reduce(_to_int_row(row))
        if not reduced:
            return False
        self.pivots[min(reduced)] = reduced
        return True

    def contains(self, row: Row) -> bool:
        return not self._reduce(_to_int_row(row))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduced_rows(self) -> Dict[int, IntRow]:
        """Back-substitute to reduced echelon form (pivot columns cleared from other rows)."""
        reduced: Dict[int, IntRow] = {}
        for col in sorted(self.pivots, reverse=True):
            row = self.pivots[col]
            while True:
                hits = [c for c in row if c != col and c in reduced]
                if not hits:
                    break
                c = min(hits)
                row = _eliminate(row, c, reduced[c])
            reduced[col] = row
        return reduced

    def rref(self) -> List[Row]:
        """Reduced rows over the rationals with unit pivots, ordered by pivot column."""
        out = []
        reduced = self.reduced_rows()
        for col in sorted(reduced):
            row = reduced[col]
            p = GaussianRational(*row[col])
            out.append({c: GaussianRational(*v) / p for c, v in sorted(row.items())})
        return out

    def nullspace(self, n_cols: int) -> List[Row]:
        """Canonical nullspace basis: one vector per free column, 1 at that column."""
        reduced = self.reduced_rows()
        pivot_cols = sorted(reduced)
        basis: List[Row] = []
        for free in range(n_cols):
            if free in reduced:
                continue
            vec: Row = {free: ONE}
            for col in pivot_cols:
                row = reduced[col]
                if free in row:
                    vec[col] = -GaussianRational(*row[free]) / GaussianRational(*row[col])
            basis.append(vec)
        return basis


def dot(row: Row, vec: Row) -> GaussianRational:
    total = ZERO
    if len(row) > len(vec):
        row, vec = vec, row
    for c, v in row.items():
        w = vec.get(c)
        if w is not None:
            total = total + v * w
    return total


def nullspace(rows: Sequence[Row], n_cols: int) -> List[Row]:
    """Exact nullspace basis of the homogeneous system given by rows."""
    echelon = EchelonForm(rows)
    basis = echelon.nullspace(n_cols)
    logger.debug(
        "Nullspace computed",
        extra={"rows": len(rows), "columns": n_cols, "rank": echelon.rank, "dimension": len(basis)},
    )
    return basis


def rank(rows: Sequence[Row]) -> int:
    return EchelonForm(rows).rank


def rref(rows: Sequence[Row]) -> List[Row]:
    return EchelonForm(rows).rref()


def verify_nullspace(rows: Sequence[Row], basis: Sequence[Row], context: Optional[str] = None) -> None:
    """Re-check every basis vector against every row.

    Raises:
        SolverInvariantError: if some row does not annihilate some vector.
    """
    for k, vec in enumerate(basis):
        for r, row in enumerate(rows):
            if dot(row, vec):
                raise SolverInvariantError(
                    "Solution vector violates a constraint",
                    details={"context": context, "vector": k, "row": r},
                )
