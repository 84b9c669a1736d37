"""Determinants of sparse integer Laurent-polynomial matrices.

Laplace expansion row by row, memoized on the set of used columns.  Every
step multiplies an accumulated minor by a single (small) matrix entry, so no
polynomial division is needed.  Exponent vectors are packed into one int64
key per monomial and polynomials are numpy arrays of (key, coefficient).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .laurent import LaurentPoly

_SAFE = 2 ** 62


def _permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class _Packer:
    def __init__(self, nvars: int, bounds: Sequence[int]):
        self.nvars = nvars
        self.base = [b + 1 for b in bounds]
        weights = []
        w = 1
        for b in reversed(self.base):
            weights.append(w)
            w *= b
        self.weights = list(reversed(weights))
        if w >= 2 ** 62:
            raise OverflowError("exponent packing exceeds 64 bits")

    def pack(self, p: LaurentPoly, lo: Sequence[int]):
        keys = np.array([sum((e[i] - lo[i]) * self.weights[i] for i in range(self.nvars)) for e in p.terms],
                        dtype=np.int64)
        coeffs = np.array([int(c) for c in p.terms.values()], dtype=object)
        return keys, coeffs

    def unpack(self, keys, coeffs) -> LaurentPoly:
        terms = {}
        for k, c in zip(keys.tolist(), coeffs.tolist()):
            e = []
            for w in self.weights:
                q, k = divmod(k, w)
                e.append(q)
            terms[tuple(e)] = int(c)
        return LaurentPoly(self.nvars, terms)


def _reduce(keys, coeffs):
    """Sum coefficients of equal keys and drop zeros."""
    order = np.argsort(keys, kind="stable")
    keys, coeffs = keys[order], coeffs[order]
    starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    summed = np.add.reduceat(coeffs, starts)
    nz = summed != 0
    return keys[starts][nz], summed[nz]


def _row_order(supports: Sequence[set[int]]) -> list[int]:
    """Greedy order keeping the union of touched columns small.

    States of the expansion are subsets of that union, so a slowly growing
    union keeps the number of states down.
    """
    left = set(range(len(supports)))
    seen: set[int] = set()
    order = []
    while left:
        r = min(left, key=lambda k: (len(seen | supports[k]), len(supports[k]), k))
        order.append(r)
        seen |= supports[r]
        left.remove(r)
    return order


def determinant(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant of a square matrix of integer Laurent polynomials."""
    size = len(matrix)
    if size == 0:
        raise ValueError("empty matrix")
    nvars = next((e.nvars for row in matrix for e in row), 0)
    if any(len(row) != size for row in matrix):
        raise ValueError("matrix is not square")
    if any(not isinstance(c, int) for row in matrix for e in row for c in e.terms.values()):
        raise TypeError("determinant expects integer coefficients")
    # shift each row to nonnegative exponents; remember the shift
    shifts, bounds = [], [0] * nvars
    for row in matrix:
        nz = [e for e in row if not e.is_zero()]
        if not nz:
            return LaurentPoly.zero(nvars)
        lo = [min(e.min_exponents()[i] for e in nz) for i in range(nvars)]
        hi = [max(e.max_exponents()[i] for e in nz) for i in range(nvars)]
        shifts.append(lo)
        bounds = [b + h - l for b, h, l in zip(bounds, hi, lo)]
    packer = _Packer(nvars, bounds)
    packed = [[packer.pack(e, lo) if not e.is_zero() else None for e in row] for row, lo in zip(matrix, shifts)]
    l1 = [max((int(np.abs(p[1]).sum()) for p in row if p is not None), default=0) for row in packed]

    order = _row_order([{c for c, p in enumerate(row) if p is not None} for row in packed])
    sign = _permutation_sign(order)
    states = {0: (np.zeros(1, dtype=np.int64), np.ones(1, dtype=np.int64))}
    bound = 1
    for r in order:
        row = packed[r]
        use_int = bound * l1[r] * size < _SAFE
        buckets: dict[int, list] = {}
        for mask, (keys, coeffs) in states.items():
            if not use_int:
                coeffs = coeffs.astype(object)
            for c, ent in enumerate(row):
                if ent is None or (mask >> c) & 1:
                    continue
                s = -1 if bin(mask >> (c + 1)).count("1") % 2 else 1
                ek, ec = ent
                ec = ec.astype(np.int64) if use_int else ec
                buckets.setdefault(mask | (1 << c), []).append(
                    ((keys[:, None] + ek[None, :]).ravel(), (coeffs[:, None] * (s * ec)[None, :]).ravel()))
        states = {}
        for mask, parts in buckets.items():
            if len(parts) == 1:
                keys, coeffs = _reduce(*parts[0])
            else:
                keys, coeffs = _reduce(np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts]))
            if keys.size:
                states[mask] = (keys, coeffs)
        if not states:
            return LaurentPoly.zero(nvars)
        if use_int:
            bound = max(int(np.abs(c).max()) for _, c in states.values())
        else:
            bound = max(max(abs(int(x)) for x in c) for _, c in states.values())
    keys, coeffs = states[(1 << size) - 1]
    det = packer.unpack(keys, coeffs)
    total_shift = [sum(s[i] for s in shifts) for i in range(nvars)]
    return det.shift(total_shift) * sign
