"""Fixed-point complex matrices for fast high-precision matrix identities.

Entries are stored as Python integers scaled by 2**bits in numpy object
arrays, so products use exact integer arithmetic and one rounding per entry.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np
from mpmath import mp


class FixedMatrix:
    def __init__(self, re: np.ndarray, im: np.ndarray, bits: int):
        self.re = re
        self.im = im
        self.bits = bits

    @classmethod
    def from_rows(cls, rows, dps: int) -> FixedMatrix:
        bits = math.ceil(dps * 3.33) + 16
        scale = mpmath.mpf(2) ** bits
        n, m = len(rows), len(rows[0])
        re = np.empty((n, m), dtype=object)
        im = np.empty((n, m), dtype=object)
        with mp.workdps(dps + 10):
            for i, row in enumerate(rows):
                for j, z in enumerate(row):
                    z = mpmath.mpc(z)
                    re[i, j] = int(mpmath.nint(z.real * scale))
                    im[i, j] = int(mpmath.nint(z.imag * scale))
        return cls(re, im, bits)

    @classmethod
    def identity(cls, n: int, bits: int) -> FixedMatrix:
        re = np.zeros((n, n), dtype=object)
        re[:] = 0
        for i in range(n):
            re[i, i] = 1 << bits
        im = np.zeros((n, n), dtype=object)
        im[:] = 0
        return cls(re, im, bits)

    @classmethod
    def from_int_matrix(cls, a, bits: int) -> FixedMatrix:
        a = np.asarray(a)
        re = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            re[idx] = int(x) << bits
        im = np.empty(a.shape, dtype=object)
        im[:] = 0
        return cls(re, im, bits)

    @property
    def shape(self):
        return self.re.shape

    def _shift(self, a):
        b = self.bits
        return np.vectorize(lambda x: x >> b, otypes=[object])(a)

    def __matmul__(self, other: FixedMatrix) -> FixedMatrix:
        rr = self.re.dot(other.re) - self.im.dot(other.im)
        ii = self.re.dot(other.im) + self.im.dot(other.re)
        return FixedMatrix(self._shift(rr), self._shift(ii), self.bits)

    def __sub__(self, other: FixedMatrix) -> FixedMatrix:
        return FixedMatrix(self.re - other.re, self.im - other.im, self.bits)

    def conj_transpose(self) -> FixedMatrix:
        return FixedMatrix(self.re.T.copy(), (-self.im).T.copy(), self.bits)

    def transpose(self) -> FixedMatrix:
        return FixedMatrix(self.re.T.copy(), self.im.T.copy(), self.bits)

    def scale_columns(self, diag) -> FixedMatrix:
        """self @ diag(d) for a vector of fixed-point complex (re, im) pairs."""
        dre = np.array([d[0] for d in diag], dtype=object)
        dim = np.array([d[1] for d in diag], dtype=object)
        rr = self.re * dre - self.im * dim
        ii = self.re * dim + self.im * dre
        return FixedMatrix(self._shift(rr), self._shift(ii), self.bits)

    def fixed_vector(self, values, dps: int):
        scale = mpmath.mpf(2) ** self.bits
        out = []
        with mp.workdps(dps + 10):
            for z in values:
                z = mpmath.mpc(z)
                out.append((int(mpmath.nint(z.real * scale)), int(mpmath.nint(z.imag * scale))))
        return out

    def max_abs(self):
        """Largest |entry| as an mpf."""
        best = 0
        for a, b in zip(self.re.flat, self.im.flat):
            v = a * a + b * b
            if v > best:
                best = v
        return mpmath.sqrt(mpmath.mpf(best)) / mpmath.mpf(2) ** self.bits

    def entry(self, i: int, j: int):
        s = mpmath.mpf(2) ** self.bits
        return mpmath.mpc(mpmath.mpf(self.re[i, j]) / s, mpmath.mpf(self.im[i, j]) / s)
