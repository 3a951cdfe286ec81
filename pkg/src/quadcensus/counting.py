"""Joint censuses for pairs of quadrics, quadratic character sums, and the
explicit bound evaluators.

The census and the four character sums T_ab are computed by separate passes
over P^{n-1}(F_q) (the census classifies points, the sums evaluate characters
of literal products), so the indicator identity

    4 * #S_{f,g} = T22 + chi((-1)^k A) T12 - chi((-1)^k B) T21 - chi(AB) T11

is checked across two independent code paths.  Enumeration is chunked by
point rank, and partial results merge by componentwise addition in chunk
order, so parallel runs are byte-identical to serial ones.
"""

from __future__ import annotations

import math
import multiprocessing
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .classify import PointClass, algebraic_sign_constant, classify_algebraic
from .field import FieldError, FieldSpec, field_for_order
from .forms import QuadraticForm
from .projective import chunk_ranges, enumerate_points, num_points

__all__ = [
    "QuadricPair",
    "JointCountReport",
    "CharSumReport",
    "RLBoundParams",
    "count_joint",
    "char_sum",
    "indicator_identity_check",
    "single_form_projective_char_sum",
    "restricted_char_sum",
    "PairScan",
    "pair_scan",
    "lemma32_bound",
    "rl_bound",
    "rl_params_for_quadric_product",
    "katz_bound",
    "random_smooth_quadric",
    "random_pair",
    "sweep",
]

_CLASS_INDEX = {PointClass.ON: 0, PointClass.EXTERNAL: 1, PointClass.INTERNAL: 2}


def forms_proportional(a, b):
    """Whether b = c * a for some nonzero scalar c (projective equality)."""
    f = a.field
    n = a.n
    ref = next(
        ((i, j) for i in range(n) for j in range(n) if a.gram[i][j] != 0), None
    )
    if ref is None:
        return all(x == 0 for row in b.gram for x in row)
    i, j = ref
    if b.gram[i][j] == 0:
        return False
    c = f.div(b.gram[i][j], a.gram[i][j])
    return all(
        b.gram[r][s] == f.mul(c, a.gram[r][s]) for r in range(n) for s in range(n)
    )


@dataclass(frozen=True)
class QuadricPair:
    """Two distinct smooth quadrics over the same field, n odd."""

    c: QuadraticForm
    d: QuadraticForm

    def __post_init__(self):
        if self.c.field != self.d.field:
            raise FieldError("pair members live over different fields")
        if self.c.n != self.d.n:
            raise FieldError("pair members have different variable counts")
        if self.c.n % 2 == 0:
            raise FieldError(f"joint classification needs n odd, got n={self.c.n}")
        if not self.c.is_smooth() or not self.d.is_smooth():
            raise FieldError("both forms must be smooth")
        if forms_proportional(self.c, self.d):
            raise FieldError("forms are projectively equal; the pair must be distinct")

    @property
    def field(self):
        return self.c.field

    @property
    def n(self):
        return self.c.n

    @property
    def q(self):
        return self.c.field.q


@dataclass(frozen=True)
class JointCountReport:
    """3x3 census of (class w.r.t. C) x (class w.r.t. D); rows and columns
    are indexed on/ext/int."""

    n: int
    q: int
    seed: int
    pair_id: int
    counts: tuple

    @property
    def total(self):
        return sum(sum(row) for row in self.counts)

    @property
    def s_fg(self):
        return self.counts[1][2]

    @property
    def main_term(self):
        return Fraction(self.q ** (self.n - 1), 4)

    @property
    def deviation(self):
        return self.s_fg - self.main_term

    @property
    def normalized_deviation(self):
        return abs(float(self.deviation)) / self.q ** (self.n - 1.5)

    def row_sums(self):
        return tuple(sum(row) for row in self.counts)

    def col_sums(self):
        return tuple(sum(col) for col in zip(*self.counts))


@dataclass(frozen=True)
class CharSumReport:
    """The four character sums of the indicator expansion plus the exact
    identity check and the explicit bound evaluations."""

    t11: int
    t12: int
    t21: int
    t22: int
    chi_a: int
    chi_b: int
    chi_ab: int
    s_fg: int
    identity_holds: bool
    lemma32_rhs: float | None
    katz_rhs: float


# -- enumeration kernels -------------------------------------------------------


def _terms(q_form):
    """Nonzero monomial coefficients a_ij as (i, j, code) triples."""
    return [
        (i, j, q_form.coeff(i, j))
        for i in range(q_form.n)
        for j in range(i, q_form.n)
        if q_form.coeff(i, j) != 0
    ]


def _census_chunk(pair, start, stop):
    """Partial 3x3 census over the rank range [start, stop)."""
    f = pair.field
    n = pair.n
    counts = [0] * 9
    c_c = algebraic_sign_constant(pair.c)
    c_d = algebraic_sign_constant(pair.d)
    if f.tables_available:
        q = f.q
        mul = f.mul_table()
        add = f.add_table()
        ch = f.char_table()
        terms_c = _terms(pair.c)
        terms_d = _terms(pair.d)
        for pt in enumerate_points(n, f, start, stop):
            fv = 0
            for i, j, c in terms_c:
                fv = add[fv * q + mul[mul[c * q + pt[i]] * q + pt[j]]]
            gv = 0
            for i, j, c in terms_d:
                gv = add[gv * q + mul[mul[c * q + pt[i]] * q + pt[j]]]
            ic = 0 if fv == 0 else (1 if ch[mul[c_c * q + fv]] > 0 else 2)
            idx = 0 if gv == 0 else (1 if ch[mul[c_d * q + gv]] > 0 else 2)
            counts[ic * 3 + idx] += 1
    else:
        for pt in enumerate_points(n, f, start, stop):
            ic = _CLASS_INDEX[classify_algebraic(pair.c, pt)]
            idx = _CLASS_INDEX[classify_algebraic(pair.d, pt)]
            counts[ic * 3 + idx] += 1
    return tuple(counts)


def _tsum_chunk(pair, start, stop):
    """Partial (T11, T12, T21, T22) over the rank range [start, stop)."""
    f = pair.field
    n = pair.n
    t11 = t12 = t21 = t22 = 0
    if f.tables_available:
        q = f.q
        mul = f.mul_table()
        add = f.add_table()
        ch = f.char_table()
        terms_c = _terms(pair.c)
        terms_d = _terms(pair.d)
        for pt in enumerate_points(n, f, start, stop):
            fv = 0
            for i, j, c in terms_c:
                fv = add[fv * q + mul[mul[c * q + pt[i]] * q + pt[j]]]
            gv = 0
            for i, j, c in terms_d:
                gv = add[gv * q + mul[mul[c * q + pt[i]] * q + pt[j]]]
            ff = mul[fv * q + fv]
            gg = mul[gv * q + gv]
            t11 += ch[mul[fv * q + gv]]
            t12 += ch[mul[fv * q + gg]]
            t21 += ch[mul[ff * q + gv]]
            t22 += ch[mul[ff * q + gg]]
    else:
        for pt in enumerate_points(n, f, start, stop):
            fv = pair.c.evaluate(pt)
            gv = pair.d.evaluate(pt)
            ff = f.mul(fv, fv)
            gg = f.mul(gv, gv)
            t11 += f.char(f.mul(fv, gv))
            t12 += f.char(f.mul(fv, gg))
            t21 += f.char(f.mul(ff, gv))
            t22 += f.char(f.mul(ff, gg))
    return (t11, t12, t21, t22)


def _run_chunked(kernel, pair, workers):
    total = num_points(pair.n, pair.field.q)
    ranges = chunk_ranges(total, max(1, workers))
    if workers <= 1 or len(ranges) == 1:
        parts = [kernel(pair, s, e) for s, e in ranges]
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers) as pool:
            parts = pool.starmap(kernel, [(pair, s, e) for s, e in ranges])
    # merge in chunk order; componentwise integer addition
    merged = [0] * len(parts[0])
    for part in parts:
        for i, v in enumerate(part):
            merged[i] += v
    return tuple(merged)


def count_joint(pair, workers=1, seed=0, pair_id=0):
    """Exhaustive joint classification of every point against both quadrics."""
    flat = _run_chunked(_census_chunk, pair, workers)
    counts = tuple(tuple(flat[r * 3 + c] for c in range(3)) for r in range(3))
    return JointCountReport(
        n=pair.n, q=pair.q, seed=seed, pair_id=pair_id, counts=counts
    )


def char_sum(pair, a, b, workers=1):
    """Exact sum of chi(f(P)^a g(P)^b) over P^{n-1}(F_q), exponents in {1, 2}."""
    if a not in (1, 2) or b not in (1, 2):
        raise ValueError("exponents must be 1 or 2")
    t11, t12, t21, t22 = _run_chunked(_tsum_chunk, pair, workers)
    return {(1, 1): t11, (1, 2): t12, (2, 1): t21, (2, 2): t22}[(a, b)]


def indicator_identity_check(pair, workers=1, joint=None):
    """Compute T11..T22 and verify the exact indicator expansion of #S_{f,g}
    against the census from count_joint."""
    f = pair.field
    k = (pair.n - 1) // 2
    sign = f.neg(1) if k % 2 == 1 else 1
    disc_a = pair.c.discriminant()
    disc_b = pair.d.discriminant()
    chi_a = f.char(f.mul(sign, disc_a))
    chi_b = f.char(f.mul(sign, disc_b))
    chi_ab = f.char(f.mul(disc_a, disc_b))
    t11, t12, t21, t22 = _run_chunked(_tsum_chunk, pair, workers)
    if joint is None:
        joint = count_joint(pair, workers=workers)
    s_fg = joint.s_fg
    identity = 4 * s_fg == t22 + chi_a * t12 - chi_b * t21 - chi_ab * t11
    q = pair.q
    return CharSumReport(
        t11=t11,
        t12=t12,
        t21=t21,
        t22=t22,
        chi_a=chi_a,
        chi_b=chi_b,
        chi_ab=chi_ab,
        s_fg=s_fg,
        identity_holds=identity,
        lemma32_rhs=lemma32_bound(pair.n, q) if q >= 7 else None,
        katz_rhs=katz_bound(pair.n, q),
    )


def single_form_projective_char_sum(q_form):
    """Exact sum of chi(f(P)) over P^{n-1}(F_q)."""
    f = q_form.field
    return sum(
        f.char(q_form.evaluate(pt)) for pt in enumerate_points(q_form.n, f)
    )


def restricted_char_sum(q_form, z_form):
    """Exact sum of chi(f(P)) over the zero set of another form."""
    if q_form.field != z_form.field or q_form.n != z_form.n:
        raise FieldError("forms must share a field and variable count")
    f = q_form.field
    return sum(
        f.char(q_form.evaluate(pt))
        for pt in enumerate_points(q_form.n, f)
        if z_form.evaluate(pt) == 0
    )


@dataclass(frozen=True)
class PairScan:
    """Zero counts and restricted sums for a pair, from one enumeration pass.

    sum_f / sum_g are the projective character sums of each member;
    restricted_f_on_g is chi(f) summed over the zero set of g (and vice
    versa); zeros_* count rational points on each quadric and on their
    intersection."""

    sum_f: int
    sum_g: int
    restricted_f_on_g: int
    restricted_g_on_f: int
    zeros_f: int
    zeros_g: int
    zeros_common: int

    @property
    def zeros_union(self):
        return self.zeros_f + self.zeros_g - self.zeros_common


def pair_scan(pair):
    """One pass over P^{n-1} collecting the single-form sums, the restricted
    sums, and the zero counts of a pair.  Kept separate from the T_ab kernel
    so bookkeeping identities cross two code paths."""
    f = pair.field
    n = pair.n
    sum_f = sum_g = rfg = rgf = zf = zg = zc = 0
    if f.tables_available:
        q = f.q
        mul = f.mul_table()
        add = f.add_table()
        ch = f.char_table()
        terms_c = _terms(pair.c)
        terms_d = _terms(pair.d)
        for pt in enumerate_points(n, f):
            fv = 0
            for i, j, c in terms_c:
                fv = add[fv * q + mul[mul[c * q + pt[i]] * q + pt[j]]]
            gv = 0
            for i, j, c in terms_d:
                gv = add[gv * q + mul[mul[c * q + pt[i]] * q + pt[j]]]
            cf = ch[fv]
            cg = ch[gv]
            sum_f += cf
            sum_g += cg
            if fv == 0:
                zf += 1
                rgf += cg
            if gv == 0:
                zg += 1
                rfg += cf
                if fv == 0:
                    zc += 1
    else:
        for pt in enumerate_points(n, f):
            fv = pair.c.evaluate(pt)
            gv = pair.d.evaluate(pt)
            cf = f.char(fv)
            cg = f.char(gv)
            sum_f += cf
            sum_g += cg
            if fv == 0:
                zf += 1
                rgf += cg
            if gv == 0:
                zg += 1
                rfg += cf
                if fv == 0:
                    zc += 1
    return PairScan(
        sum_f=sum_f,
        sum_g=sum_g,
        restricted_f_on_g=rfg,
        restricted_g_on_f=rgf,
        zeros_f=zf,
        zeros_g=zg,
        zeros_common=zc,
    )


# -- explicit bounds -----------------------------------------------------------


@dataclass(frozen=True)
class RLBoundParams:
    """Numeric parameters of the multiplicative character sum bound over a
    projective scheme cut out by r forms in P^N."""

    capital_n: int
    r: int
    m: int
    delta: int
    d: int
    e: int
    a_degrees: tuple = dc_field(default=())

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("the scheme dimension m must be >= 2")
        if math.gcd(self.d, self.e) != 1:
            raise ValueError("d and e must be coprime")


def rl_bound(params, q):
    """3 (3 + max(a_1..a_r, e) + d)^(N+r+2) * q^((m+delta+2)/2), as binary64."""
    top = max((*params.a_degrees, params.e))
    base = 3 + top + params.d
    return 3.0 * base ** (params.capital_n + params.r + 2) * q ** (
        (params.m + params.delta + 2) / 2
    )


def rl_params_for_quadric_product(n):
    """Instantiation used for the product f*g of two smooth quadrics in
    P^{n-1}: ambient projective space, quartic H, generic hyperplane Z."""
    return RLBoundParams(capital_n=n - 1, r=0, m=n - 1, delta=n - 4, d=4, e=1)


def lemma32_bound(n, q):
    """Explicit bound 3 * 8^(n+1) * q^((2n-3)/2) + 2 q^(n-2) for |T11|.

    Asserted only under its hypotheses (q >= 7 odd prime power, n >= 3);
    evaluated in binary64, whose relative error is immaterial against the
    integer sums it dominates.
    """
    if q < 7:
        raise ValueError("the explicit bound is only asserted for q >= 7")
    if n < 3:
        raise ValueError("the explicit bound needs n >= 3")
    return 3.0 * 8 ** (n + 1) * q ** ((2 * n - 3) / 2) + 2.0 * q ** (n - 2)


def katz_bound(n, q):
    """q^(n/2) / (q-1), the bound for the single-form projective sum."""
    return q ** (n / 2) / (q - 1)


# -- seeded random instances ---------------------------------------------------


def random_smooth_quadric(n, field, rng_seed):
    """Rejection-sample symmetric Gram matrices until non-degenerate.

    Deterministic for a fixed seed; singular matrices are rare (density about
    n/q), but a hard cap guards termination.
    """
    rng = random.Random(rng_seed)
    q = field.q
    for _ in range(1000):
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                gram[i][j] = gram[j][i] = rng.randrange(q)
        form = QuadraticForm(field, gram)
        if form.is_smooth():
            return form
    raise FieldError("failed to sample a smooth quadric in 1000 attempts")


def random_pair(n, field, rng_seed):
    """Seeded pair of distinct smooth quadrics."""
    first = random_smooth_quadric(n, field, rng_seed)
    for bump in range(1, 1000):
        second = random_smooth_quadric(n, field, f"{rng_seed}:{bump}")
        if not forms_proportional(first, second):
            return QuadricPair(first, second)
    raise FieldError("failed to sample a distinct second quadric")


def derive_seed(seed, *labels):
    """Stable integer sub-seed for a labelled component of a run."""
    rng = random.Random(":".join([str(seed), *map(str, labels)]))
    return rng.getrandbits(32)


def sweep(n, q_list, trials, seed, workers=1):
    """For each q, run `trials` seeded random pairs through the census and the
    identity check; returns (joint, chars) report pairs in run order."""
    if n % 2 == 0:
        raise FieldError(f"sweep needs n odd, got n={n}")
    rows = []
    for q in q_list:
        if q % 2 == 0:
            raise FieldError(f"sweep needs odd prime powers, got q={q}")
        fld = field_for_order(q)
        for t in range(trials):
            pair_seed = derive_seed(seed, q, t)
            pair = random_pair(n, fld, pair_seed)
            joint = count_joint(pair, workers=workers, seed=pair_seed, pair_id=t)
            chars = indicator_identity_check(pair, workers=workers, joint=joint)
            rows.append((joint, chars))
    return rows
