"""Built-in verification batteries behind the `selftest` CLI subcommand.

Each battery re-checks one module's invariants at pinned seeds and sizes and
reports (name, passed, detail).  The quick profile shrinks sizes so a full
run stays under ten seconds.
"""

from __future__ import annotations

import hashlib
import random

from .classify import (
    classify_algebraic,
    classify_geometric,
    classify_tangent_count,
    hyperplane_section_form,
)
from .counting import (
    count_joint,
    derive_seed,
    indicator_identity_check,
    lemma32_bound,
    random_pair,
    random_smooth_quadric,
    rl_bound,
    rl_params_for_quadric_product,
    single_form_projective_char_sum,
)
from .field import field_for_order
from .forms import QuadraticForm, mat_det, mat_mul, mat_transpose
from .projective import chunk_ranges, enumerate_points, normalize, num_points

__all__ = ["run_selftest", "BATTERIES"]

SEED = 20240915


def _battery_field_axioms(quick):
    qs = [3, 9] if quick else [3, 5, 7, 9, 13, 25, 27]
    for q in qs:
        f = field_for_order(q)
        elems = list(f.elements())
        for a in elems:
            if a != 0 and f.mul(a, f.inv(a)) != 1:
                return False, f"inverse fails for {a} in {f!r}"
            for b in elems:
                if f.add(a, b) != f.add(b, a) or f.mul(a, b) != f.mul(b, a):
                    return False, f"commutativity fails in {f!r}"
                for c in elems:
                    if f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)):
                        return False, f"distributivity fails in {f!r}"
                    if f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c)):
                        return False, f"associativity fails in {f!r}"
    return True, f"axioms exhaustive on q in {qs}"


def _battery_character(quick):
    qs = [3, 7, 9] if quick else [3, 5, 7, 9, 11, 13, 25, 27]
    for q in qs:
        f = field_for_order(q)
        table = f.char_table()
        if table[0] != 0:
            return False, f"chi(0) != 0 over {f!r}"
        plus = sum(1 for v in table if v == 1)
        minus = sum(1 for v in table if v == -1)
        if plus != (q - 1) // 2 or minus != (q - 1) // 2:
            return False, f"square/non-square counts off over {f!r}"
        for a in range(q):
            if table[a] != (0 if a == 0 else (1 if f.pow(a, (q - 1) // 2) == 1 else -1)):
                return False, f"char table disagrees with exponentiation over {f!r}"
        for a in range(1, q):
            if table[f.mul(a, a)] != 1 or table[f.inv(a)] != table[a]:
                return False, f"chi multiplicativity fails over {f!r}"
            for b in range(1, q):
                if table[f.mul(a, b)] != table[a] * table[b]:
                    return False, f"chi(ab) != chi(a)chi(b) over {f!r}"
        if f.char(f.non_square_witness()) != -1:
            return False, f"non-square witness is a square over {f!r}"
    return True, f"character checks on q in {qs}"


def _battery_projective(quick):
    cases = [(2, 9), (3, 7), (5, 3)] if quick else [(2, 9), (3, 7), (3, 9), (4, 5), (5, 3)]
    for n, q in cases:
        f = field_for_order(q)
        pts = list(enumerate_points(n, f))
        if len(pts) != num_points(n, q) or len(set(pts)) != len(pts):
            return False, f"point count wrong for n={n}, q={q}"
        # chunked enumeration covers the same multiset
        digest = hashlib.sha256(str(pts).encode()).hexdigest()
        chunked = []
        for s, e in chunk_ranges(len(pts), 4):
            chunked.extend(enumerate_points(n, f, s, e))
        if hashlib.sha256(str(chunked).encode()).hexdigest() != digest:
            return False, f"chunked enumeration diverges for n={n}, q={q}"
        rng = random.Random(SEED)
        for _ in range(20):
            pt = pts[rng.randrange(len(pts))]
            lam = rng.randrange(1, q)
            scaled = tuple(f.mul(lam, c) for c in pt)
            if normalize(f, scaled) != pt or normalize(f, pt) != pt:
                return False, f"normalize not orbit-constant for n={n}, q={q}"
    return True, f"enumeration checks on {cases}"


def _battery_cauchy_binet(quick):
    trials = 100 if quick else 1000
    rng = random.Random(SEED)
    qs = [3, 7, 9, 25]
    for t in range(trials):
        f = field_for_order(qs[t % len(qs)])
        m = rng.randrange(2, 9)
        a = [rng.randrange(1, f.q) for _ in range(m + 1)]
        c = [1] + [rng.randrange(f.q) for _ in range(m)]
        b = tuple(
            tuple(c[j + 1] for j in range(m)) if i == 0
            else tuple(1 if j == i - 1 else 0 for j in range(m))
            for i in range(m + 1)
        )
        # A_n has diagonal a_i^{-1}, so A_n^{-1} = diag(a_i)
        a_mat = tuple(
            tuple(a[i] if i == j else 0 for j in range(m + 1)) for i in range(m + 1)
        )
        e = mat_mul(f, mat_mul(f, mat_transpose(b), a_mat), b)
        lhs = mat_det(f, e)
        prod = 1
        for ai in a:
            prod = f.mul(prod, ai)
        acc = 0
        for i in range(m + 1):
            acc = f.add(acc, f.div(f.mul(c[i], c[i]), a[i]))
        if lhs != f.mul(prod, acc):
            return False, f"determinant identity fails at trial {t}"
    return True, f"{trials} seeded instances, exact equality"


def _battery_section_disc(quick):
    cases = [(3, 7, 3)] if quick else [(3, 5, 5), (3, 9, 5), (5, 3, 3), (5, 7, 2)]
    for n, q, n_forms in cases:
        f = field_for_order(q)
        for s in range(n_forms):
            form = random_smooth_quadric(n, f, derive_seed(SEED, "sec", n, q, s))
            disc = form.discriminant()
            for pt in enumerate_points(n, f):
                section = hyperplane_section_form(form, pt)
                sd = mat_det(f, section.gram)
                fv = form.evaluate(pt)
                if (sd == 0) != (fv == 0):
                    return False, f"section degenerate off quadric (n={n}, q={q})"
                if fv != 0 and f.char(sd) != f.char(fv) * f.char(disc):
                    return False, f"section discriminant class wrong (n={n}, q={q})"
    return True, f"hyperplane-section discriminant on {cases}"


def _battery_classifier_agreement(quick):
    plane = [(3, 2)] if quick else [(3, 5), (5, 5), (7, 5), (9, 3)]
    for q, n_forms in plane:
        f = field_for_order(q)
        for s in range(n_forms):
            form = random_smooth_quadric(3, f, derive_seed(SEED, "agree", q, s))
            for pt in enumerate_points(3, f):
                a = classify_algebraic(form, pt)
                if a != classify_geometric(form, pt) or a != classify_tangent_count(form, pt):
                    return False, f"classifier mismatch at q={q}, point {pt}"
    f = field_for_order(3)
    form = random_smooth_quadric(5, f, derive_seed(SEED, "agree5"))
    for pt in enumerate_points(5, f):
        if classify_algebraic(form, pt) != classify_geometric(form, pt):
            return False, f"dimension-5 mismatch at {pt}"
    return True, f"agreement on plane cases {plane} and one n=5 case"


def _battery_census(quick):
    qs = [3, 7] if quick else [3, 5, 7, 9, 11]
    from .classify import PointClass

    for q in qs:
        f = field_for_order(q)
        form = QuadraticForm.from_coeffs(3, f, {(0, 0): 1, (1, 1): 1, (2, 2): -1})
        tally = {PointClass.ON: 0, PointClass.EXTERNAL: 0, PointClass.INTERNAL: 0}
        for pt in enumerate_points(3, f):
            tally[classify_algebraic(form, pt)] += 1
        expect = (q + 1, q * (q + 1) // 2, q * (q - 1) // 2)
        got = (tally[PointClass.ON], tally[PointClass.EXTERNAL], tally[PointClass.INTERNAL])
        if got != expect:
            return False, f"conic census {got} != {expect} at q={q}"
    return True, f"single-conic census on q in {qs}"


def _battery_witt_counts(quick):
    qs = [3] if quick else [3, 5, 7]
    for q in qs:
        f = field_for_order(q)
        lam = f.non_square_witness()
        for m in (2, 3, 4, 5):
            k = m // 2
            hyp = {}
            for i in range(k):
                hyp[(2 * i, 2 * i + 1)] = 1
            if m % 2 == 1:
                par = dict(hyp)
                par[(m - 1, m - 1)] = 1
                form = QuadraticForm.from_coeffs(m, f, par)
                expect = (q ** (2 * k) - 1) // (q - 1)
            else:
                form = QuadraticForm.from_coeffs(m, f, hyp)
                expect = (q ** (k - 1) + 1) * (q**k - 1) // (q - 1)
            if m >= 2 and form.projective_zero_count() != expect:
                return False, f"zero count wrong for type at m={m}, q={q}"
            if m % 2 == 0:
                ell = dict(hyp)
                del ell[(m - 2, m - 1)]
                ell[(m - 2, m - 2)] = 1
                ell[(m - 1, m - 1)] = -lam
                eform = QuadraticForm.from_coeffs(m, f, ell)
                eexpect = (q ** (k - 1) - 1) * (q**k + 1) // (q - 1)
                if eform.projective_zero_count() != eexpect:
                    return False, f"elliptic zero count wrong at m={m}, q={q}"
    return True, f"Witt-class zero counts on q in {qs}"


def _battery_indicator_identity(quick):
    cases = [(3, 7, 2)] if quick else [(3, 7, 5), (3, 9, 5), (3, 11, 3), (5, 7, 2)]
    for n, q, trials in cases:
        f = field_for_order(q)
        for t in range(trials):
            pair = random_pair(n, f, derive_seed(SEED, "pair", n, q, t))
            joint = count_joint(pair)
            if joint.total != num_points(n, q):
                return False, f"census does not sum to the point count (n={n}, q={q})"
            chars = indicator_identity_check(pair, joint=joint)
            if not chars.identity_holds:
                return False, f"indicator identity fails (n={n}, q={q}, trial {t})"
            ee = joint.counts[1][1]
            ii = joint.counts[2][2]
            if 4 * ee != chars.t22 + chars.chi_a * chars.t12 + chars.chi_b * chars.t21 + chars.chi_ab * chars.t11:
                return False, f"ext/ext identity fails (n={n}, q={q})"
            if 4 * ii != chars.t22 - chars.chi_a * chars.t12 - chars.chi_b * chars.t21 + chars.chi_ab * chars.t11:
                return False, f"int/int identity fails (n={n}, q={q})"
    return True, f"exact indicator identities on {cases}"


def _battery_bounds(quick):
    for n in (3, 5, 7):
        inst = rl_bound(rl_params_for_quadric_product(n), 7)
        direct = 3.0 * 8 ** (n + 1) * 7 ** ((2 * n - 3) / 2)
        if abs(inst - direct) > 1e-9 * direct:
            return False, f"general bound does not reproduce the first term at n={n}"
    trials = 5 if quick else 20
    f = field_for_order(7)
    for t in range(trials):
        form = random_smooth_quadric(3, f, derive_seed(SEED, "katz", t))
        s = single_form_projective_char_sum(form)
        # exact Gauss-sum value for n odd: chi((-1)^((n-1)/2) disc) * q^((n-1)/2)
        expect = f.char(f.mul(f.neg(1), form.discriminant())) * 7
        if s != expect:
            return False, f"single-form sum {s} != expected {expect} (trial {t})"
    if lemma32_bound(3, 49) != 3 * 4096 * 343 + 98:
        return False, "closed-form bound value wrong at (3, 49)"
    return True, "bound evaluators consistent; single-form sums exact"


BATTERIES = [
    ("field_axioms", _battery_field_axioms),
    ("quadratic_character", _battery_character),
    ("projective_enumeration", _battery_projective),
    ("determinant_identity", _battery_cauchy_binet),
    ("section_discriminant", _battery_section_disc),
    ("classifier_agreement", _battery_classifier_agreement),
    ("conic_census", _battery_census),
    ("witt_zero_counts", _battery_witt_counts),
    ("indicator_identity", _battery_indicator_identity),
    ("explicit_bounds", _battery_bounds),
]


def run_selftest(quick=False):
    """Run every battery; returns a list of (name, passed, detail)."""
    results = []
    for name, fn in BATTERIES:
        try:
            ok, detail = fn(quick)
        except Exception as exc:  # a crashing battery is a failing battery
            ok, detail = False, f"exception: {exc!r}"
        results.append((name, ok, detail))
    return results
