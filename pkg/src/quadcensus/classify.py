"""On / external / internal classification of points against a smooth quadric.

Three independent routes are provided:

* algebraic  -- the sign of (-1)^((n-1)/2) * disc * F(P);
* geometric  -- the Witt type of the dual hyperplane-section form G_P;
* tangent counting -- in the plane only, by enumerating lines through P and
  counting those meeting the conic in exactly one point.

All three must agree; the counting engine uses the algebraic route and the
other two serve as cross-checks.
"""

from __future__ import annotations

import enum
import functools

from .field import FieldError
from .forms import QuadraticForm, mat_det, mat_inv
from .projective import lines_through, normalize

__all__ = [
    "PointClass",
    "hyperplane_section_form",
    "classify_algebraic",
    "classify_geometric",
    "classify_tangent_count",
    "tangent_count",
    "algebraic_sign_constant",
]


class PointClass(enum.Enum):
    ON = "on"
    EXTERNAL = "ext"
    INTERNAL = "int"

    def __str__(self):
        return self.value


def _require_odd_dimension(q_form):
    if q_form.n % 2 == 0:
        raise FieldError(
            f"classification is undefined for an even number of variables (n={q_form.n}):"
            " the polar space is parabolic for every point off the quadric"
        )
    if not q_form.is_smooth():
        raise FieldError("classification requires a smooth (non-degenerate) form")


def algebraic_sign_constant(q_form):
    """The field constant (-1)^((n-1)/2) * disc(F) whose product with F(P)
    decides external (square) vs internal (non-square)."""
    f = q_form.field
    disc = q_form.discriminant()
    if q_form.n % 4 == 3:  # (n-1)/2 odd
        disc = f.neg(disc)
    return disc


@functools.lru_cache(maxsize=512)
def _permuted_gram_inverse(q_form, piv):
    """Inverse of the pivot-permuted Gram matrix; cached per (form, pivot)."""
    n = q_form.n
    perm = [piv] + [i for i in range(n) if i != piv]
    a_perm = tuple(
        tuple(q_form.gram[perm[i]][perm[j]] for j in range(n)) for i in range(n)
    )
    return perm, mat_inv(q_form.field, a_perm)


def hyperplane_section_form(q_form, point):
    """The (n-1)-variable form G_P cutting the dual quadric by the hyperplane
    of hyperplanes through P.

    Coordinates are permuted so the point's pivot (first nonzero coordinate,
    normalized to 1) plays the distinguished role; then with A the permuted
    Gram matrix and B the pivot-elimination matrix [-p; I], the section form
    is B^t A^{-1} B.  Its discriminant is F(P)/disc(F) up to squares, and it
    vanishes exactly when P lies on the quadric.
    """
    if not q_form.is_smooth():
        raise FieldError("hyperplane section requires a smooth form")
    n = q_form.n
    if n < 3:
        raise FieldError("hyperplane section needs n >= 3")
    f = q_form.field
    p = normalize(f, point)
    piv = next(i for i, c in enumerate(p) if c != 0)
    perm, m = _permuted_gram_inverse(q_form, piv)
    tail = [p[perm[i]] for i in range(1, n)]
    gram = []
    for i in range(n - 1):
        row = []
        for j in range(n - 1):
            v = m[i + 1][j + 1]
            v = f.sub(v, f.mul(tail[j], m[i + 1][0]))
            v = f.sub(v, f.mul(tail[i], m[0][j + 1]))
            v = f.add(v, f.mul(f.mul(tail[i], tail[j]), m[0][0]))
            row.append(v)
        gram.append(tuple(row))
    return QuadraticForm(f, gram)


def classify_algebraic(q_form, point):
    """Lemma-style criterion: sign of (-1)^((n-1)/2) * disc * F(P)."""
    _require_odd_dimension(q_form)
    f = q_form.field
    value = q_form.evaluate(point)
    if value == 0:
        return PointClass.ON
    sign = f.char(f.mul(algebraic_sign_constant(q_form), value))
    return PointClass.EXTERNAL if sign == 1 else PointClass.INTERNAL


def classify_geometric(q_form, point):
    """Witt type of the dual section: hyperbolic -> external, elliptic -> internal.

    Evaluates the square class of disc(G_P) directly instead of diagonalizing.
    """
    _require_odd_dimension(q_form)
    f = q_form.field
    if q_form.evaluate(point) == 0:
        return PointClass.ON
    section = hyperplane_section_form(q_form, point)
    disc = mat_det(f, section.gram)
    if disc == 0:
        raise FieldError("section form degenerate off the quadric: implementation bug")
    k = (q_form.n - 1) // 2
    sign = f.neg(1) if k % 2 == 1 else 1
    if f.char(f.mul(sign, disc)) == 1:
        return PointClass.EXTERNAL  # hyperbolic section
    return PointClass.INTERNAL  # elliptic section


@functools.lru_cache(maxsize=128)
def _conic_points(q_form):
    return tuple(q_form.zero_points())


def tangent_count(q_form, point):
    """Number of lines through a point of P^2 meeting the conic in exactly
    one rational point."""
    if q_form.n != 3:
        raise FieldError("tangent counting is defined in the plane (n = 3)")
    if not q_form.is_smooth():
        raise FieldError("tangent counting requires a smooth conic")
    f = q_form.field
    conic = _conic_points(q_form)
    count = 0
    for line in lines_through(f, point):
        hits = 0
        for cp in conic:
            acc = 0
            for li, ci in zip(line, cp):
                acc = f.add(acc, f.mul(li, ci))
            if acc == 0:
                hits += 1
                if hits > 1:
                    break
        if hits == 1:
            count += 1
    return count


def classify_tangent_count(q_form, point):
    """Planar trichotomy by tangent counting: 2 tangents -> external,
    0 -> internal, exactly 1 for points on the conic."""
    count = tangent_count(q_form, point)
    if q_form.evaluate(point) == 0:
        if count != 1:
            raise FieldError(
                f"point on the conic with {count} tangents: implementation bug"
            )
        return PointClass.ON
    if count == 2:
        return PointClass.EXTERNAL
    if count == 0:
        return PointClass.INTERNAL
    raise FieldError(f"impossible tangent count {count} for a smooth conic")
