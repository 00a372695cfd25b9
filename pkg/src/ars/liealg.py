"""Lie algebras of polynomial vector fields: closure, ideals, classification.

A :class:`LieBasis` stores a finite-dimensional algebra as a canonical
reduced basis over the monomial-coefficient vector space together with its
structure constants.  Spans, memberships and series computations are all
exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .approx import ApproximationSet, DegenerateApproximation
from .grading import check_weights, homogeneous_component, homogeneous_orders
from .linalg import SpanBasis, rank, solve_combination
from .symcore import (
    ArsError,
    VectorField,
    as_point,
    field_to_vec,
    lie_bracket,
    max_degree_cap,
    vec_to_field,
)


class DegreeBoundExceeded(ArsError):
    """A bracket grew past the polynomial degree bound; check the generators."""


class NotInvariant(ArsError):
    """The field does not normalize the given algebra."""


class GradedFrameUnavailable(ArsError):
    """No homogeneous echelon frame exists (rank deficit or inhomogeneous span)."""


class LieBasis:
    """Vector-space basis of a Lie algebra with structure constants.

    ``basis`` is the canonical reduced basis of the span; ``structure``
    holds rationals c[i][j][k] with [b_i, b_j] = sum_k c[i][j][k] b_k.
    """

    __slots__ = ("dim", "basis", "structure", "_span")

    def __init__(self, dim: int, basis: Sequence[VectorField], structure, span: SpanBasis):
        self.dim = dim
        self.basis = tuple(basis)
        self.structure = structure
        self._span = span

    @classmethod
    def from_span(cls, dim: int, span: SpanBasis) -> "LieBasis":
        basis = [vec_to_field(dim, row) for row in span.rows()]
        structure = []
        for i, bi in enumerate(basis):
            row = []
            for j, bj in enumerate(basis):
                br = lie_bracket(bi, bj)
                coords = span.coordinates(field_to_vec(br))
                if coords is None:
                    raise ArsError("internal error: span is not closed under brackets")
                row.append(tuple(coords))
            structure.append(tuple(row))
        return cls(dim, basis, tuple(structure), span)

    def __len__(self) -> int:
        return len(self.basis)

    def contains(self, X: VectorField) -> bool:
        return self._span.contains(field_to_vec(X))

    def member(self, X: VectorField) -> tuple[Fraction, ...] | None:
        """Coordinates of X in ``basis``, or None when X is outside the span."""
        coords = self._span.coordinates(field_to_vec(X))
        return tuple(coords) if coords is not None else None

    def same_span(self, fields: Iterable[VectorField]) -> bool:
        other = SpanBasis()
        for f in fields:
            other.insert(field_to_vec(f))
        return other == self._span

    def span_copy(self) -> SpanBasis:
        s = SpanBasis()
        for b in self.basis:
            s.insert(field_to_vec(b))
        return s

    def __repr__(self) -> str:
        return f"LieBasis(dim={len(self.basis)}, ambient={self.dim})"


@dataclass(frozen=True)
class Classification:
    """Labels of the approximating fields on the homogeneous space.

    ``order`` permutes the approximating fields so that labels come as
    invariant (1..l), then linear or affine (l+1..m), then linear (m+1..n).
    """

    labels: tuple[str, ...]
    k: int
    l: int
    m: int
    lie_dim: int
    ideal_dim: int
    ideal_nilpotent_step: int | None
    solvable: bool
    order: tuple[int, ...]


def _check_degrees(X: VectorField, cap: int) -> None:
    if X.total_degree() > cap:
        raise DegreeBoundExceeded(
            f"bracket components reached degree {X.total_degree()} > cap {cap}"
        )


def lie_closure(generators: Sequence[VectorField], max_degree: int | None = None) -> LieBasis:
    """Smallest Lie algebra containing the generators, as a closed basis.

    Brackets are explored breadth-first, shortest words first.  The degree
    cap (ARS_MAX_DEGREE by default) catches generator sets that do not
    produce a finite-dimensional algebra.
    """
    gens = [g for g in generators if not g.is_zero]
    if not gens:
        raise ValueError("lie_closure needs at least one nonzero generator")
    dim = gens[0].dim
    if any(g.dim != dim for g in gens):
        raise ValueError("generators must share a dimension")
    cap = max_degree if max_degree is not None else max_degree_cap()

    span = SpanBasis()
    frontier: list[VectorField] = []
    for g in gens:
        if span.insert(field_to_vec(g)):
            frontier.append(g)
    while frontier:
        new_frontier: list[VectorField] = []
        for g in gens:
            for f in frontier:
                b = lie_bracket(g, f)
                if b.is_zero:
                    continue
                _check_degrees(b, cap)
                if span.insert(field_to_vec(b)):
                    new_frontier.append(b)
        frontier = new_frontier
    return LieBasis.from_span(dim, span)


def ideal_closure(L: LieBasis, generators: Sequence[VectorField]) -> LieBasis:
    """Smallest ideal of L containing the generators."""
    for g in generators:
        if not L.contains(g):
            raise ValueError("ideal generators must lie in the algebra")
    span = SpanBasis()
    frontier: list[VectorField] = []
    for g in generators:
        if span.insert(field_to_vec(g)):
            frontier.append(g)
    while frontier:
        new_frontier: list[VectorField] = []
        for b in L.basis:
            for f in frontier:
                br = lie_bracket(b, f)
                if br.is_zero:
                    continue
                if span.insert(field_to_vec(br)):
                    new_frontier.append(br)
        frontier = new_frontier
    return LieBasis.from_span(L.dim, span)


def _bracket_span(left: Sequence[VectorField], right: Sequence[VectorField]) -> SpanBasis:
    span = SpanBasis()
    for a in left:
        for b in right:
            br = lie_bracket(a, b)
            if not br.is_zero:
                span.insert(field_to_vec(br))
    return span


def nilpotent_step(L: LieBasis) -> int | None:
    """Length of the lower central series; None when it stabilizes nonzero.

    The step is the smallest number of bracketings after which everything
    vanishes: an abelian algebra has step 1, the zero algebra step 0.
    """
    if not L.basis:
        return 0
    current: list[VectorField] = list(L.basis)
    step = 0
    while True:
        span = _bracket_span(L.basis, current)
        step += 1
        if span.dim == 0:
            return step
        # the series is decreasing, so an equal dimension means it stalled
        if span.dim == len(current):
            return None
        current = [vec_to_field(L.dim, r) for r in span.rows()]


def is_solvable(L: LieBasis) -> bool:
    """True iff the derived series reaches zero."""
    current: list[VectorField] = list(L.basis)
    while current:
        span = _bracket_span(current, current)
        if span.dim == 0:
            return True
        if span.dim == len(current):
            return False
        current = [vec_to_field(L.dim, r) for r in span.rows()]
    return True


def adjoint_matrix(X: VectorField, G: LieBasis) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix D of ad(X) on G's basis: [X, b_j] = sum_i D[i][j] b_i.

    Raises NotInvariant when some bracket leaves the span of G.
    """
    columns = []
    for b in G.basis:
        coords = G.member(lie_bracket(X, b))
        if coords is None:
            raise NotInvariant(f"[X, b] leaves the algebra for b = {b}")
        columns.append(coords)
    size = len(G.basis)
    return tuple(tuple(columns[j][i] for j in range(size)) for i in range(size))


def rank_condition_at_zero(G: LieBasis, point: Sequence) -> bool:
    """True iff the evaluations of G's basis at the point span R^n."""
    pt = as_point(point, G.dim)
    return rank([b.evaluate(pt) for b in G.basis]) == G.dim


def classify_fields(A: ApproximationSet, L: LieBasis, G: LieBasis) -> Classification:
    """Classify approximating fields as invariant, linear or affine.

    Membership in the ideal means the field projects from an invariant
    field; otherwise it acts on the ideal as a derivation and projects from
    a linear field, or from an affine one when the recorded transform had
    removed an invariant part from it.  Fields are reordered so the
    invariant ones come first.
    """
    if A.degenerate:
        raise DegenerateApproximation("cannot classify a degenerate approximating set")
    k, m, n = A.k, A.m, A.dim
    adjusted = A.adjusted_flags()
    fields = A.fields

    in_ideal: list[int] = []
    outside: list[int] = []
    for pos in range(k, m):
        (in_ideal if G.contains(fields[pos]) else outside).append(pos)
    order = list(range(k)) + in_ideal + outside + list(range(m, n))
    l = k + len(in_ideal)

    labels: list[str] = []
    for new_pos, pos in enumerate(order):
        if new_pos < l:
            labels.append("invariant")
            continue
        # derivation check is the contract for non-ideal fields
        adjoint_matrix(fields[pos], G)
        if pos < m and adjusted[pos]:
            labels.append("affine")
        else:
            labels.append("linear")

    return Classification(
        labels=tuple(labels),
        k=k,
        l=l,
        m=m,
        lie_dim=len(L.basis),
        ideal_dim=len(G.basis),
        ideal_nilpotent_step=nilpotent_step(G),
        solvable=is_solvable(L),
        order=tuple(order),
    )


def graded_frame(G: LieBasis, weights: Sequence[int]) -> tuple[VectorField, ...]:
    """Echelonized homogeneous frame witnessing transitivity.

    Returns one field per coordinate: field i is homogeneous of order -w_i,
    equals d/dx_i plus terms supported on strictly heavier coordinates, so
    the frame matrix is unit triangular under weight ordering and has full
    rank everywhere.
    """
    w = check_weights(weights, G.dim)
    n = G.dim
    origin = [Fraction(0)] * n

    by_order: dict[int, list[VectorField]] = {}
    for b in G.basis:
        for s in homogeneous_orders(b, w):
            h = homogeneous_component(b, s, w)
            if h.is_zero:
                continue
            if not G.contains(h):
                raise GradedFrameUnavailable(
                    "the algebra is not spanned by homogeneous elements"
                )
            by_order.setdefault(s, []).append(h)

    result: list[VectorField | None] = [None] * n
    for level in sorted(set(w)):
        coords = [j for j in range(n) if w[j] == level]
        candidates = by_order.get(-level, [])
        # deduplicate while keeping deterministic order
        span = SpanBasis()
        pool: list[VectorField] = []
        for h in candidates:
            if span.insert(field_to_vec(h)):
                pool.append(h)
        values = [[h.evaluate(origin)[j] for j in coords] for h in pool]
        for idx, j in enumerate(coords):
            target = [Fraction(1 if jj == idx else 0) for jj in range(len(coords))]
            coeffs = None
            if pool:
                coeffs = solve_combination(values, target)
            if coeffs is None:
                raise GradedFrameUnavailable(
                    f"no homogeneous element of order {-level} hits coordinate {j} at the origin"
                )
            Y = VectorField.zero(n)
            for c, h in zip(coeffs, pool):
                if c != 0:
                    Y = Y + c * h
            result[j] = Y
    return tuple(result)  # type: ignore[arg-type]
