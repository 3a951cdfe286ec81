"""Canonical points of P^{n-1}(F_q) and chunked exhaustive enumeration.

Points are tuples of canonical element codes, normalized so the first
nonzero coordinate is 1.  Enumeration order: pivot position 0 first, then 1,
..., with the free coordinates after the pivot ranging lexicographically in
canonical element order.  That order gives O(1) rank -> point decoding, so
the point set can be split into disjoint ranges for parallel scans.
"""

from __future__ import annotations

import itertools

__all__ = [
    "num_points",
    "normalize",
    "enumerate_points",
    "point_at",
    "chunk_ranges",
    "lines_through",
    "points_on_line",
]


def num_points(n, q):
    """|P^{n-1}(F_q)| = (q^n - 1)/(q - 1)."""
    return (q**n - 1) // (q - 1)


def normalize(field, v):
    """Scale v so its first nonzero coordinate is 1."""
    v = tuple(v)
    for i, c in enumerate(v):
        if c != 0:
            if c == 1:
                return v
            s = field.inv(c)
            return tuple(0 if j < i else field.mul(s, c2) for j, c2 in enumerate(v))
    raise ValueError("cannot normalize the zero vector")


def enumerate_points(n, field, start=0, stop=None):
    """Yield each point of P^{n-1}(F_q) exactly once, in rank order.

    `start`/`stop` select a rank range, enabling disjoint parallel chunks.
    """
    if n < 2:
        raise ValueError("projective enumeration needs n >= 2")
    q = field.q
    total = num_points(n, q)
    if stop is None:
        stop = total
    if start == 0 and stop == total:
        rng = range(q)
        for piv in range(n):
            head = (0,) * piv + (1,)
            for tail in itertools.product(rng, repeat=n - 1 - piv):
                yield head + tail
    else:
        for r in range(start, stop):
            yield point_at(n, field, r)


def point_at(n, field, rank):
    """Rank -> point under the enumeration order."""
    q = field.q
    for piv in range(n):
        block = q ** (n - 1 - piv)
        if rank < block:
            tail = [0] * (n - 1 - piv)
            for i in range(n - 2 - piv, -1, -1):
                rank, tail[i] = divmod(rank, q)
            return (0,) * piv + (1,) + tuple(tail)
        rank -= block
    raise IndexError("rank out of range")


def chunk_ranges(total, chunks):
    """Split range(total) into `chunks` contiguous near-equal ranges."""
    chunks = max(1, min(chunks, total))
    base, extra = divmod(total, chunks)
    out = []
    start = 0
    for i in range(chunks):
        size = base + (1 if i < extra else 0)
        out.append((start, start + size))
        start += size
    return out


def _incident_basis(field, v):
    """Basis of {w : w . v = 0} for a normalized v (pivot coordinate is 1)."""
    n = len(v)
    piv = next(i for i, c in enumerate(v) if c != 0)
    basis = []
    for i in range(n):
        if i == piv:
            continue
        w = [0] * n
        w[i] = 1
        w[piv] = field.neg(v[i])
        basis.append(tuple(w))
    return basis


def lines_through(field, point):
    """The q+1 lines of P^2 incident to a point, as normalized dual triples."""
    if len(point) != 3:
        raise ValueError("lines_through is defined in the plane (n = 3)")
    b1, b2 = _incident_basis(field, normalize(field, point))
    lines = [normalize(field, b2)]
    for t in field.elements():
        line = tuple(field.add(b1[i], field.mul(t, b2[i])) for i in range(3))
        lines.append(normalize(field, line))
    return lines


def points_on_line(field, line):
    """The q+1 points of P^2 on a line given by normalized dual coordinates."""
    if len(line) != 3:
        raise ValueError("points_on_line is defined in the plane (n = 3)")
    # point/line incidence is symmetric under duality
    return lines_through(field, line)
