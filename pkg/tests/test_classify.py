"""Point classification: algebraic, geometric, and tangent-count routes."""

import random

import pytest

from quadcensus.classify import (
    PointClass,
    classify_algebraic,
    classify_geometric,
    classify_tangent_count,
    hyperplane_section_form,
    tangent_count,
)
from quadcensus.field import FieldError, field_for_order
from quadcensus.forms import QuadraticForm, mat_det
from quadcensus.projective import enumerate_points

SEED = 9090


def _random_smooth(n, field, rng):
    while True:
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                gram[i][j] = gram[j][i] = rng.randrange(field.q)
        form = QuadraticForm(field, gram)
        if form.is_smooth():
            return form


def _conic(field):
    return QuadraticForm.from_coeffs(3, field, {(0, 0): 1, (1, 1): 1, (2, 2): -1})


def test_worked_example_f7():
    f = field_for_order(7)
    conic = _conic(f)
    for fn in (classify_algebraic, classify_geometric, classify_tangent_count):
        assert fn(conic, (0, 0, 1)) == PointClass.INTERNAL
        assert fn(conic, (1, 0, 0)) == PointClass.EXTERNAL
        assert fn(conic, (3, 4, 5)) == PointClass.ON


def test_section_form_example():
    # section of x^2 + y^2 - z^2 at [1:0:0] is diag(1, -1)
    f = field_for_order(7)
    section = hyperplane_section_form(_conic(f), (1, 0, 0))
    assert section == QuadraticForm.diagonal(f, (1, -1))


def test_section_discriminant_law():
    # chi(disc G_P) = chi(F(P)) chi(disc F) off the quadric; disc G_P = 0 on it
    rng = random.Random(SEED)
    for n, q in [(3, 5), (3, 9), (5, 3), (5, 7)]:
        f = field_for_order(q)
        for _ in range(3):
            form = _random_smooth(n, f, rng)
            disc = form.discriminant()
            for pt in enumerate_points(n, f):
                sd = mat_det(f, hyperplane_section_form(form, pt).gram)
                fv = form.evaluate(pt)
                assert (sd == 0) == (fv == 0)
                if fv != 0:
                    assert f.char(sd) == f.char(fv) * f.char(disc)


def test_section_scale_invariant():
    # the section's square class only depends on the projective point
    rng = random.Random(SEED)
    f = field_for_order(9)
    form = _random_smooth(3, f, rng)
    pts = [pt for pt in enumerate_points(3, f) if form.evaluate(pt) != 0]
    for pt in pts[:20]:
        base = f.char(mat_det(f, hyperplane_section_form(form, pt).gram))
        for lam in range(2, 9):
            scaled = tuple(f.mul(lam, c) for c in pt)
            assert f.char(mat_det(f, hyperplane_section_form(form, scaled).gram)) == base


def test_tangent_counts():
    f = field_for_order(7)
    conic = _conic(f)
    assert tangent_count(conic, (3, 4, 5)) == 1  # on the conic
    assert tangent_count(conic, (1, 0, 0)) == 2  # external
    assert tangent_count(conic, (0, 0, 1)) == 0  # internal
    # global tangent bookkeeping: each of the q+1 conic points carries one
    # tangent line with q external points on it besides the touch point
    total = sum(tangent_count(conic, pt) for pt in enumerate_points(3, f))
    q = 7
    assert total == (q + 1) + 2 * (q * (q + 1) // 2)


def test_three_way_agreement():
    rng = random.Random(SEED)
    for q in (3, 5, 9):
        f = field_for_order(q)
        for _ in range(3):
            form = _random_smooth(3, f, rng)
            for pt in enumerate_points(3, f):
                a = classify_algebraic(form, pt)
                assert a == classify_geometric(form, pt)
                assert a == classify_tangent_count(form, pt)


def test_scaling_the_form():
    # any nonzero scaling leaves the quadric, and hence every class, unchanged:
    # disc * F(P) picks up lambda^(n+1), an even power
    rng = random.Random(SEED)
    f = field_for_order(7)
    form = _random_smooth(3, f, rng)
    for lam in (f.mul(2, 2), f.non_square_witness()):
        for pt in enumerate_points(3, f):
            assert classify_algebraic(form.scaled(lam), pt) == classify_algebraic(form, pt)


def test_even_dimension_rejected():
    f = field_for_order(7)
    form = QuadraticForm.diagonal(f, (1, 1, 1, 1))
    with pytest.raises(FieldError):
        classify_algebraic(form, (1, 0, 0, 0))
    with pytest.raises(FieldError):
        classify_geometric(form, (1, 0, 0, 0))
    with pytest.raises(FieldError):
        tangent_count(form, (1, 0, 0, 0))


def test_degenerate_rejected():
    f = field_for_order(7)
    form = QuadraticForm.diagonal(f, (1, 1, 0))
    with pytest.raises(FieldError):
        classify_algebraic(form, (1, 0, 0))
    with pytest.raises(FieldError):
        hyperplane_section_form(form, (1, 0, 0))
