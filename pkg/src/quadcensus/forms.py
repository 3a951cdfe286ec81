"""Quadratic forms over F_q as symmetric Gram matrices.

A form sum_{i<=j} a_ij x_i x_j is stored as the symmetric matrix G with
G[i][i] = a_ii and G[i][j] = G[j][i] = a_ij / 2 (q odd, so 2 is invertible),
so that evaluation is x G x^t.  The discriminant is det(G); it is a
congruence invariant modulo nonzero squares and agrees with the coefficient
determinant on diagonal forms.
"""

from __future__ import annotations

import functools

from .field import FieldError, FieldSpec, field_for_order
from .projective import enumerate_points

__all__ = [
    "QuadraticForm",
    "WittClass",
    "mat_mul",
    "mat_vec",
    "mat_transpose",
    "mat_det",
    "mat_inv",
    "parse_form",
    "format_form",
]


# -- exact linear algebra over a field (matrices = tuples of tuples of codes) --


def mat_mul(field, x, y):
    rows = len(x)
    inner = len(y)
    cols = len(y[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = 0
            for t in range(inner):
                acc = field.add(acc, field.mul(x[i][t], y[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(field, m, v):
    return tuple(
        functools.reduce(field.add, (field.mul(m[i][j], v[j]) for j in range(len(v))))
        for i in range(len(m))
    )


def mat_transpose(m):
    return tuple(zip(*m))


def mat_det(field, m):
    """Determinant by Gaussian elimination, exact."""
    n = len(m)
    a = [list(row) for row in m]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = field.neg(det)
        det = field.mul(det, a[col][col])
        inv = field.inv(a[col][col])
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = field.mul(a[r][col], inv)
                for c in range(col, n):
                    a[r][c] = field.sub(a[r][c], field.mul(f, a[col][c]))
    return det


def mat_inv(field, m):
    """Inverse by Gauss-Jordan; raises FieldError on a singular matrix."""
    n = len(m)
    a = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise FieldError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = field.inv(a[col][col])
        a[col] = [field.mul(inv, c) for c in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [field.sub(c, field.mul(f, pc)) for c, pc in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


class WittClass:
    """Isometry type of a non-degenerate quadratic space in m variables."""

    __slots__ = ("kind", "m")

    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"

    def __init__(self, kind, m):
        if (kind == self.PARABOLIC) != (m % 2 == 1):
            raise ValueError("parabolic iff the variable count is odd")
        self.kind = kind
        self.m = m

    def __eq__(self, other):
        return isinstance(other, WittClass) and (self.kind, self.m) == (other.kind, other.m)

    def __hash__(self):
        return hash((self.kind, self.m))

    def __repr__(self):
        return f"WittClass({self.kind!r}, m={self.m})"


class QuadraticForm:
    """Immutable quadratic form over a FieldSpec."""

    __slots__ = ("field", "n", "gram")

    def __init__(self, field, gram):
        n = len(gram)
        gram = tuple(tuple(row) for row in gram)
        for row in gram:
            if len(row) != n:
                raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        self.field = field
        self.n = n
        self.gram = gram

    @classmethod
    def from_coeffs(cls, n, field, coeffs):
        """Form sum a_ij x_i x_j from {(i, j): int} with 0 <= i <= j < n.

        Coefficients are signed integers, reduced canonically into the field;
        off-diagonal entries of the Gram matrix are halved.
        """
        gram = [[0] * n for _ in range(n)]
        half = field.inv(field.from_int(2))
        for (i, j), a in coeffs.items():
            if not (0 <= i <= j < n):
                raise IndexError(f"coefficient index ({i}, {j}) out of range")
            a = field.from_int(a)
            if i == j:
                gram[i][i] = a
            else:
                gram[i][j] = gram[j][i] = field.mul(a, half)
        return cls(field, gram)

    @classmethod
    def diagonal(cls, field, entries):
        n = len(entries)
        gram = [[0] * n for _ in range(n)]
        for i, d in enumerate(entries):
            gram[i][i] = field.from_int(d)
        return cls(field, gram)

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticForm)
            and self.field == other.field
            and self.gram == other.gram
        )

    def __hash__(self):
        return hash((self.field, self.gram))

    def __repr__(self):
        return f"QuadraticForm({self.field!r}, {self.gram!r})"

    # -- coefficients and evaluation -----------------------------------------

    def coeff(self, i, j):
        """Coefficient a_ij of x_i x_j (i <= j), with the off-diagonal doubling undone."""
        if i == j:
            return self.gram[i][i]
        return self.field.add(self.gram[i][j], self.gram[i][j])

    def upper_coeffs(self):
        """Upper-triangular coefficients a_ij in row order (the wire format)."""
        return [self.coeff(i, j) for i in range(self.n) for j in range(i, self.n)]

    def evaluate(self, v):
        if len(v) != self.n:
            raise ValueError(f"expected a length-{self.n} vector")
        f = self.field
        acc = 0
        for i in range(self.n):
            row = self.gram[i]
            for j in range(self.n):
                if row[j] != 0 and v[i] != 0 and v[j] != 0:
                    acc = f.add(acc, f.mul(f.mul(row[j], v[i]), v[j]))
        return acc

    # -- invariants ----------------------------------------------------------

    def discriminant(self):
        return mat_det(self.field, self.gram)

    def is_smooth(self):
        return self.discriminant() != 0

    def witt_classify(self):
        """Hyperbolic / elliptic / parabolic type of a non-degenerate form."""
        disc = self.discriminant()
        if disc == 0:
            raise FieldError("Witt type is undefined for degenerate forms")
        f = self.field
        if self.n % 2 == 1:
            return WittClass(WittClass.PARABOLIC, self.n)
        k = self.n // 2
        sign = f.neg(1) if k % 2 == 1 else 1
        if f.char(f.mul(sign, disc)) == 1:
            return WittClass(WittClass.HYPERBOLIC, self.n)
        return WittClass(WittClass.ELLIPTIC, self.n)

    # -- transformations -----------------------------------------------------

    def diagonalize(self):
        """(S, d) with S invertible and S^t G S = diag(d), all d_i nonzero.

        Symmetric Gaussian elimination; when the working diagonal entry
        vanishes, either swap in a later nonzero diagonal entry or mix in a
        column with a nonzero off-diagonal coupling (q odd keeps 2G[i][j]
        nonzero).
        """
        f = self.field
        n = self.n
        g = [list(row) for row in self.gram]
        s = [list(row) for row in _identity(n)]

        def add_col(dst, src, factor):
            # x_dst <- x_dst + factor * x_src, applied congruently
            for r in range(n):
                g[r][dst] = f.add(g[r][dst], f.mul(factor, g[r][src]))
            for c in range(n):
                g[dst][c] = f.add(g[dst][c], f.mul(factor, g[src][c]))
            for r in range(n):
                s[r][dst] = f.add(s[r][dst], f.mul(factor, s[r][src]))

        def swap_cols(i, j):
            for r in range(n):
                g[r][i], g[r][j] = g[r][j], g[r][i]
            g[i], g[j] = g[j], g[i]
            for r in range(n):
                s[r][i], s[r][j] = s[r][j], s[r][i]

        for i in range(n):
            if g[i][i] == 0:
                j = next((t for t in range(i + 1, n) if g[t][t] != 0), None)
                if j is not None:
                    swap_cols(i, j)
                else:
                    pair = next(
                        (
                            (r, c)
                            for r in range(i, n)
                            for c in range(r + 1, n)
                            if g[r][c] != 0
                        ),
                        None,
                    )
                    if pair is None:
                        raise FieldError("cannot diagonalize a degenerate form")
                    r, c = pair
                    if r != i:
                        swap_cols(i, r)  # c > r >= i, so the coupling lands in row i
                    add_col(i, c, 1)
            piv_inv = f.inv(g[i][i])
            for j in range(i + 1, n):
                if g[i][j] != 0:
                    add_col(j, i, f.neg(f.mul(g[i][j], piv_inv)))
        d = tuple(g[i][i] for i in range(n))
        if any(x == 0 for x in d):
            raise FieldError("cannot diagonalize a degenerate form")
        return tuple(tuple(row) for row in s), d

    def dual_form(self):
        """Form of the dual quadric: Gram matrix is the inverse of this one's."""
        if not self.is_smooth():
            raise FieldError("dual form requires a non-degenerate form")
        return QuadraticForm(self.field, mat_inv(self.field, self.gram))

    def scaled(self, c):
        c = self.field.from_int(c)
        return QuadraticForm(
            self.field,
            tuple(tuple(self.field.mul(c, x) for x in row) for row in self.gram),
        )

    def transformed(self, s):
        """Congruent form S^t G S."""
        st = mat_transpose(s)
        return QuadraticForm(self.field, mat_mul(self.field, mat_mul(self.field, st, self.gram), s))

    # -- enumeration ---------------------------------------------------------

    def zero_points(self):
        """All points of {Q = 0} in P^{n-1}(F_q)."""
        return [p for p in enumerate_points(self.n, self.field) if self.evaluate(p) == 0]

    def projective_zero_count(self):
        return sum(1 for p in enumerate_points(self.n, self.field) if self.evaluate(p) == 0)


# -- wire format: "n q a_11 a_12 ... a_nn" ------------------------------------


def format_form(q_form):
    parts = [str(q_form.n), str(q_form.field.q)]
    parts += [str(c) for c in q_form.upper_coeffs()]
    return " ".join(parts)


def parse_form(text, field=None):
    """Parse "n q a_11 a_12 ... a_nn" (upper-triangular coefficients, row order).

    Coefficients are signed integers mapped canonically into F_q.  When no
    field is supplied, the field of order q with the default modulus is used.
    """
    parts = text.split()
    if len(parts) < 2:
        raise ValueError("form string needs at least 'n q'")
    n = int(parts[0])
    q = int(parts[1])
    if n < 1:
        raise ValueError(f"bad variable count {n}")
    if field is None:
        field = field_for_order(q)
    elif field.q != q:
        raise ValueError(f"form declares q={q} but the field has order {field.q}")
    expected = n * (n + 1) // 2
    coeff_strs = parts[2:]
    if len(coeff_strs) != expected:
        raise ValueError(
            f"expected {expected} coefficients for n={n}, got {len(coeff_strs)}"
        )
    coeffs = {}
    it = iter(coeff_strs)
    for i in range(n):
        for j in range(i, n):
            coeffs[(i, j)] = int(next(it))
    return QuadraticForm.from_coeffs(n, field, coeffs)
