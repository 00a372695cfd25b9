"""Exact linear algebra over the rationals.

Everything here works on plain ``fractions.Fraction`` values so that rank,
membership and solving decisions are never subject to rounding.  Dense
routines take sequences of rows; :class:`SpanBasis` handles sparse vectors
keyed by arbitrary comparable keys (used for spans of polynomial vector
fields, where a key names one monomial of one component).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence


def _rows_copy(rows: Iterable[Sequence[Fraction]]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rank(rows: Iterable[Sequence[Fraction]]) -> int:
    """Rank of a matrix given as an iterable of rows.

    Gaussian elimination with the pivot chosen as the first nonzero entry in
    the current column, ties broken by lowest row index.
    """
    m = _rows_copy(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][col]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = m[i][col] / pv
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    m = _rows_copy(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    result = Fraction(1)
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if m[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        pv = m[col][col]
        result *= pv
        for i in range(col + 1, n):
            if m[i][col] != 0:
                factor = m[i][col] / pv
                m[i] = [a - factor * b for a, b in zip(m[i], m[col])]
    return result


def solve_combination(
    vectors: Sequence[Sequence[Fraction]], target: Sequence[Fraction]
) -> list[Fraction] | None:
    """Coefficients c with sum(c_a * vectors[a]) == target, or None.

    The vectors need not be independent; any exact solution is returned,
    preferring earlier vectors (free coefficients are set to zero).
    """
    k = len(vectors)
    if k == 0:
        return [] if all(x == 0 for x in target) else None
    n = len(target)
    # columns are the vectors; rows the ambient coordinates
    aug = [[Fraction(vectors[a][i]) for a in range(k)] + [Fraction(target[i])] for i in range(n)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(k):
        pivot = None
        for i in range(r, n):
            if aug[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][col]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, col))
        r += 1
    for i in range(r, n):
        if aug[i][k] != 0:
            return None
    coeffs = [Fraction(0)] * k
    for row, col in pivots:
        coeffs[col] = aug[row][k]
    return coeffs


class SpanBasis:
    """Reduced echelon basis of a span of sparse rational vectors.

    Vectors are dicts mapping comparable keys to nonzero Fractions.  Rows are
    kept fully reduced (each leading key occurs in exactly one row, with
    coefficient one), so the stored basis is canonical for the span, and
    membership coordinates are read off directly.
    """

    def __init__(self) -> None:
        self._rows: dict[Hashable, dict] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def rows(self) -> list[dict]:
        """Basis rows sorted by leading key."""
        return [dict(self._rows[k]) for k in sorted(self._rows)]

    def leading_keys(self) -> list[Hashable]:
        return sorted(self._rows)

    def reduce(self, vec: dict) -> dict:
        """Remainder of vec after subtracting its span component."""
        v = {k: Fraction(c) for k, c in vec.items() if c != 0}
        while v:
            lead = max(v)
            row = self._rows.get(lead)
            if row is None:
                # reduce any lower keys that match stored rows
                remaining = sorted((k for k in v if k in self._rows), reverse=True)
                if not remaining:
                    return v
                lead = remaining[0]
                row = self._rows[lead]
            coef = v[lead]
            for k, c in row.items():
                nv = v.get(k, Fraction(0)) - coef * c
                if nv == 0:
                    v.pop(k, None)
                else:
                    v[k] = nv
        return v

    def insert(self, vec: dict) -> bool:
        """Add vec to the span. Returns True when the dimension grew."""
        v = self.reduce(vec)
        if not v:
            return False
        lead = max(v)
        pivot = v[lead]
        row = {k: c / pivot for k, c in v.items()}
        # keep full reduction: eliminate the new leading key from old rows
        for other in self._rows.values():
            if lead in other:
                factor = other[lead]
                for k, c in row.items():
                    nc = other.get(k, Fraction(0)) - factor * c
                    if nc == 0:
                        other.pop(k, None)
                    else:
                        other[k] = nc
        self._rows[lead] = row
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: dict) -> list[Fraction] | None:
        """Coordinates of vec in the basis returned by rows(), or None.

        With full reduction each leading key occurs in exactly one row, so
        the coordinate along a row is the coefficient of its leading key.
        """
        if self.reduce(vec):
            return None
        return [Fraction(vec.get(k, 0)) for k in self.leading_keys()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpanBasis):
            return NotImplemented
        return self._rows == other._rows

    def __len__(self) -> int:
        return len(self._rows)
