"""Exact arithmetic in finite fields F_q of odd order q = p^k.

Elements are represented as canonical integers in [0, q): the coefficient
vector of the residue polynomial read as base-p digits (coefficient of x^i
is digit i).  This keeps the representation unique, gives a deterministic
element ordering, and makes lookup tables straightforward.
"""

from __future__ import annotations

import numpy as np
from sympy import Poly, Symbol, isprime

__all__ = [
    "FieldError",
    "FieldSpec",
    "field_create",
    "field_for_order",
    "odd_prime_powers",
    "CHAR_TABLE_BUDGET",
    "MUL_TABLE_BUDGET",
]


class FieldError(ValueError):
    """Invalid field construction or arithmetic request."""


# Budgets for precomputed lookup tables.  The character table is linear in q;
# the add/mul tables are quadratic, so they get a separate q*q entry budget.
CHAR_TABLE_BUDGET = 1 << 20
MUL_TABLE_BUDGET = 1 << 20

# Set by the hidden CLI fault-injection flag; corrupts one character-table
# entry so the self-test negative control has something to catch.
_CHAR_FAULT = False


def _is_irreducible(coeffs, p):
    """Whether the monic polynomial with low-to-high `coeffs` is irreducible over Z_p."""
    x = Symbol("x")
    return Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible


def _default_modulus(p, k):
    """Lexicographically smallest monic irreducible degree-k polynomial over Z_p.

    Candidates are ordered by the integer value of the non-leading coefficient
    vector read as base-p digits.
    """
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        coeffs = []
        v = code
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {k} over Z_{p}")  # unreachable


class FieldSpec:
    """The finite field F_q with q = p^k odd.

    All element-level operations take and return canonical integer codes.
    Instances are immutable and hashable; lookup tables are built lazily and
    cached, so a spec can be shared freely across workers.
    """

    def __init__(self, p, k=1, modulus=None):
        if not isinstance(p, int) or p < 3 or not isprime(p):
            raise FieldError(f"characteristic must be an odd prime, got {p}")
        if not isinstance(k, int) or k < 1:
            raise FieldError(f"extension degree must be >= 1, got {k}")
        if modulus is None:
            modulus = _default_modulus(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {k}")
            if k > 1 and not _is_irreducible(modulus, p):
                raise FieldError(f"modulus {modulus} is reducible over Z_{p}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p**k
        # Reduction rule: x^k = -(modulus without leading coeff).
        self._red = tuple((-c) % p for c in modulus[:-1])
        self._char_table = None
        self._mul_table = None
        self._add_table = None
        self._inv_table = None

    # -- identity / plumbing -------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        # Tables are rebuilt lazily on the receiving side.
        return (FieldSpec, (self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"F({self.p})"
        return f"F({self.p}^{self.k}, modulus={self.modulus})"

    # -- element representation ----------------------------------------------

    def elements(self):
        return range(self.q)

    def coeffs(self, a):
        """Base-p digit vector (length k) of element code `a`."""
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def element(self, coeffs):
        """Element code from a length-k coefficient sequence (reduced mod p)."""
        if len(coeffs) > self.k:
            raise FieldError("coefficient vector longer than extension degree")
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + (int(c) % self.p)
        return a

    def from_int(self, v):
        """Canonical embedding of a signed integer.

        Non-negative v is reduced mod q and read as an element code; negative v
        maps to the field negation of |v| (so -1 is always the additive inverse
        of 1, also in extension fields).
        """
        if v >= 0:
            return v % self.q
        return self.neg((-v) % self.q)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        w = 1
        for _ in range(self.k):
            out += ((a + b) % p) * w
            a //= p
            b //= p
            w *= self.p
        return out

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        w = 1
        for _ in range(self.k):
            out += ((-a) % p) * w
            a //= p
            w *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a * self.q + b]
        if self.k == 1:
            return (a * b) % self.p
        return self._mul_raw(a, b)

    def _mul_raw(self, a, b):
        p, k = self.p, self.k
        da = self.coeffs(a)
        db = self.coeffs(b)
        prod = [0] * (2 * k - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        # reduce degree >= k terms via x^k = red
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j, r in enumerate(self._red):
                    prod[d - k + j] = (prod[d - k + j] + c * r) % p
        out = 0
        for c in reversed(prod[:k]):
            out = out * p + c
        return out

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.k == 1:
            return pow(a, e, self.p)
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- quadratic character -------------------------------------------------

    def char(self, a):
        """Quadratic character: 0 for zero, +1 for nonzero squares, -1 otherwise."""
        if self._char_table is not None:
            return self._char_table[a]
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1

    def char_table(self, budget=CHAR_TABLE_BUDGET):
        """Lookup table of the quadratic character, indexed by element code."""
        if self._char_table is None:
            if self.q > budget:
                raise FieldError(
                    f"q={self.q} exceeds the character table budget {budget}"
                )
            table = [-1] * self.q
            table[0] = 0
            for a in range(1, self.q):
                table[self.mul(a, a)] = 1
            if _CHAR_FAULT:
                table[1] = -table[1]
            self._char_table = table
        return self._char_table

    def non_square_witness(self):
        """Smallest element (in canonical order) with character -1."""
        for a in range(1, self.q):
            if self.char(a) == -1:
                return a
        raise FieldError("no non-square found (q must be odd)")  # unreachable

    # -- lookup tables for enumeration kernels --------------------------------

    @property
    def tables_available(self):
        return self.q * self.q <= MUL_TABLE_BUDGET

    def _build_tables(self):
        q, p, k = self.q, self.p, self.k
        if q * q > MUL_TABLE_BUDGET:
            raise FieldError(f"q={q} exceeds the mul/add table budget")
        if k == 1:
            a = np.arange(q, dtype=np.int64)
            add = (a[:, None] + a[None, :]) % p
            mul = np.outer(a, a) % p
        else:
            digits = (np.arange(q, dtype=np.int64)[:, None] // p ** np.arange(k)) % p
            weights = p ** np.arange(k)
            add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
            # exp/log over the cyclic group F_q* generated by g
            exp, log = self._discrete_log_tables()
            lg = np.array(log[1:], dtype=np.int64)
            nz = np.array(exp, dtype=np.int64)[(lg[:, None] + lg[None, :]) % (q - 1)]
            mul = np.zeros((q, q), dtype=np.int64)
            mul[1:, 1:] = nz
        self._add_table = add.reshape(-1).tolist()
        self._mul_table = mul.reshape(-1).tolist()
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self.pow(a, q - 2)
        self._inv_table = inv

    def _discrete_log_tables(self):
        """exp (length q-1, powers of a generator) and log (code -> exponent)."""
        q = self.q
        for g in range(2, q):
            exp = [1]
            a = g
            while a != 1:
                exp.append(a)
                a = self._mul_raw(a, g) if self.k > 1 else (a * g) % self.p
            if len(exp) == q - 1:
                log = [0] * q
                for e, v in enumerate(exp):
                    log[v] = e
                return exp, log
        raise FieldError("no generator found")  # unreachable

    def mul_table(self):
        """Flat q*q multiplication table: table[a*q + b] = a*b."""
        if self._mul_table is None:
            self._build_tables()
        return self._mul_table

    def add_table(self):
        """Flat q*q addition table: table[a*q + b] = a+b."""
        if self._add_table is None:
            self._build_tables()
        return self._add_table


def field_create(p, k=1, modulus=None):
    """Validated field construction; default modulus is the lexicographically
    smallest monic irreducible polynomial of degree k over Z_p."""
    return FieldSpec(p, k, modulus)


def field_for_order(q, modulus=None):
    """Field of a given odd prime-power order, with the default modulus."""
    if q < 3 or q % 2 == 0:
        raise FieldError(f"order must be an odd prime power, got {q}")
    for p in range(3, q + 1, 2):
        if not isprime(p):
            continue
        k = 0
        v = q
        while v % p == 0:
            v //= p
            k += 1
        if v == 1 and k >= 1:
            return FieldSpec(p, k, modulus)
        if q % p == 0:
            break
    raise FieldError(f"{q} is not an odd prime power")


def odd_prime_powers(lo, hi):
    """All odd prime powers q with lo <= q <= hi, ascending."""
    out = []
    for q in range(max(lo, 3) | 1, hi + 1, 2):
        p = _smallest_prime_factor(q)
        v = q
        while v % p == 0:
            v //= p
        if v == 1:
            out.append(q)
    return out


def _smallest_prime_factor(q):
    for p in range(3, q + 1, 2):
        if q % p == 0:
            return p
    return q
