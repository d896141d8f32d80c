"""Radial symbols with structured tails and their Hankel-matrix calculus.

A radial symbol assigns a complex value phi(n) to every word length
n >= 0.  We restrict to symbols with finitely many free head values
followed by a structured tail: eventually constant, or constant plus a
damped geometric term r*z**n with |z| < 1.  For these the two Hankel
difference matrices

    h[i, j] = phi(i+j)   - phi(i+j+1)
    k[i, j] = phi(i+j+1) - phi(i+j+2)

have summable singular values, the error of an M x M cutoff admits a
closed-form bound, and the telescoped parts

    psi1(n) = sum_{i>=0} (phi(n+2i) - phi(n+2i+1)),   psi2(n) = psi1(n+1)

recover the symbol exactly: phi = psi1 + psi2 + lim phi.

Rank-one factorizations of h and k supply the vector pairs whose sliding
correlations reproduce psi1 and psi2; those pairs are the raw material of
the multiplier assembled in :mod:`radmul.operators`.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

SV_RELATIVE_CUTOFF = 1e-13  # singular values below this fraction of the top one are noise


@dataclass(frozen=True)
class ConstantTail:
    """Tail phi(n) = limit for n past the head."""

    limit: complex = 0j


@dataclass(frozen=True)
class GeometricTail:
    """Tail phi(n) = limit + coefficient * ratio**n for n past the head."""

    coefficient: complex
    ratio: complex
    limit: complex = 0j

    def __post_init__(self):
        if abs(self.ratio) >= 1:
            raise ValueError("geometric tail needs |ratio| < 1, got %r" % (self.ratio,))


Tail = Union[ConstantTail, GeometricTail]


@dataclass(frozen=True)
class RadialSymbol:
    """phi: N0 -> C given by explicit head values and a structured tail.

    ``head`` holds phi(0), ..., phi(m); the tail formula applies for n > m.
    An empty head means the tail formula holds everywhere.
    """

    head: tuple
    tail: Tail

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(complex(v) for v in self.head))

    @property
    def head_end(self) -> int:
        """Largest index covered by the head; -1 for an empty head."""
        return len(self.head) - 1

    @property
    def limit(self) -> complex:
        return complex(self.tail.limit)

    def __call__(self, n: int) -> complex:
        return self.evaluate(n)

    def evaluate(self, n: int) -> complex:
        if n < 0:
            raise ValueError("radial symbols are defined on n >= 0")
        if n < len(self.head):
            return self.head[n]
        if isinstance(self.tail, GeometricTail):
            return self.tail.limit + self.tail.coefficient * self.tail.ratio ** n
        return self.tail.limit

    def default_hankel_dim(self) -> int:
        return max(2 * (self.head_end + 1), 32)

    # common examples used across tests and presets
    @staticmethod
    def delta0() -> "RadialSymbol":
        return RadialSymbol(head=(1.0,), tail=ConstantTail(0.0))

    @staticmethod
    def indicator01() -> "RadialSymbol":
        return RadialSymbol(head=(1.0, 1.0), tail=ConstantTail(0.0))

    @staticmethod
    def constant(c) -> "RadialSymbol":
        return RadialSymbol(head=(), tail=ConstantTail(complex(c)))

    @staticmethod
    def geometric(ratio, coefficient=1.0, limit=0.0) -> "RadialSymbol":
        return RadialSymbol(head=(), tail=GeometricTail(complex(coefficient),
                                                        complex(ratio), complex(limit)))


def evaluate(phi: RadialSymbol, n: int) -> complex:
    return phi.evaluate(n)


@dataclass(frozen=True)
class HankelPair:
    """M x M truncations of the two Hankel difference matrices.

    ``tail_error`` bounds the trace norm of everything the truncation
    discarded, summed over both matrices; it vanishes for eventually
    constant symbols once M exceeds the head.
    """

    h: np.ndarray
    k: np.ndarray
    truncation_dim: int
    tail_error: float


def _sum_weighted_geometric(q: float, start: int) -> float:
    """sum_{s >= start} (s+1) * q**s, for 0 <= q < 1."""
    if q == 0.0:
        return float(start == 0)
    return q ** start * ((start + 1) * (1 - q) + q) / (1 - q) ** 2


def _discard_bound(phi: RadialSymbol, M: int, offset: int) -> float:
    """Bound the trace norm of the part of the (offset-shifted) Hankel
    difference matrix outside the leading M x M block.

    Each discarded antidiagonal i+j = s contributes at most (s+1) rank-one
    units of size |phi(s+offset) - phi(s+offset+1)|.
    """
    m = phi.head_end
    total = 0.0
    s = M
    while s + offset <= m:
        total += (s + 1) * abs(phi(s + offset) - phi(s + offset + 1))
        s += 1
    if isinstance(phi.tail, GeometricTail) and phi.tail.coefficient != 0:
        q = abs(phi.tail.ratio)
        amp = abs(phi.tail.coefficient * (1 - phi.tail.ratio))
        total += amp * q ** offset * _sum_weighted_geometric(q, s)
    return total


def hankel_pair(phi: RadialSymbol, M: int) -> HankelPair:
    if M < 1:
        raise ValueError("truncation dimension must be positive")
    values = np.array([phi(n) for n in range(2 * M + 1)], dtype=complex)
    diffs = values[:-1] - values[1:]  # diffs[s] = phi(s) - phi(s+1)
    idx = np.arange(M)
    s = idx[:, None] + idx[None, :]
    h = diffs[s]
    k = diffs[s + 1]
    tail_error = _discard_bound(phi, M, 0) + _discard_bound(phi, M, 1)
    return HankelPair(h=h, k=k, truncation_dim=M, tail_error=tail_error)


def trace_norm(A: np.ndarray) -> float:
    """Sum of singular values (Schatten-1 norm)."""
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    if A.size == 0:
        return 0.0
    return float(np.linalg.svd(A, compute_uv=False).sum())


@dataclass(frozen=True)
class HankelFactorization:
    """Rank-one expansion A = sum_i outer(x_i, conj(y_i)) from an SVD.

    The pairs are balanced (||x_i|| = ||y_i|| = sqrt(sigma_i)), so
    sum_i ||x_i|| * ||y_i|| equals the trace norm of the factored matrix.
    """

    pairs: tuple
    dim: int

    def reconstruct(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for x, y in self.pairs:
            out += np.outer(x, y.conj())
        return out

    def norm_sum(self) -> float:
        return float(sum(np.linalg.norm(x) * np.linalg.norm(y) for x, y in self.pairs))

    def stacked(self):
        """(X, Y) with rows x_i resp. y_i; (0, M)-shaped when empty."""
        if not self.pairs:
            z = np.zeros((0, self.dim), dtype=complex)
            return z, z.copy()
        X = np.stack([x for x, _ in self.pairs])
        Y = np.stack([y for _, y in self.pairs])
        return X, Y


def factorize(A: np.ndarray, rel_cutoff: float = SV_RELATIVE_CUTOFF) -> HankelFactorization:
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    if A.shape[0] != A.shape[1]:
        raise ValueError("factorize expects a square matrix")
    u, s, vh = np.linalg.svd(A)
    pairs = []
    if s.size and s[0] > 0:
        for i, sv in enumerate(s):
            if sv <= rel_cutoff * s[0]:
                break
            w = math.sqrt(sv)
            pairs.append((w * u[:, i], w * vh[i, :].conj()))
    return HankelFactorization(pairs=tuple(pairs), dim=A.shape[0])


class PsiDecomposition:
    """The exact splitting phi(n) = psi1(n) + psi2(n) + c.

    psi1 is evaluated by telescoping the head and closing the structured
    tail in one step: past the head, psi1(n) = r * z**n / (1 + z) for a
    geometric tail and 0 for a constant one.
    """

    def __init__(self, phi: RadialSymbol):
        self.phi = phi
        self.c = phi.limit

    def psi1(self, n: int) -> complex:
        phi = self.phi
        m = phi.head_end
        total = 0j
        arg = n
        while arg <= m:
            total += phi(arg) - phi(arg + 1)
            arg += 2
        if isinstance(phi.tail, GeometricTail):
            total += phi.tail.coefficient * phi.tail.ratio ** arg / (1 + phi.tail.ratio)
        return total

    def psi2(self, n: int) -> complex:
        return self.psi1(n + 1)


def psi_decompose(phi: RadialSymbol) -> PsiDecomposition:
    return PsiDecomposition(phi)


def psi_via_factors(fh: HankelFactorization, fk: HankelFactorization,
                    k: int, l: int) -> tuple:
    """(psi1(k+l), psi2(k+l)) recovered from the sliding correlations

        sum_i sum_t x_i(k+t) * conj(y_i(l+t))

    of the rank-one pairs of h resp. k.  Must agree with the telescoped
    values up to the Hankel truncation error.
    """
    if k < 0 or l < 0:
        raise ValueError("sector indices must be nonnegative")

    def correlate(fact: HankelFactorization) -> complex:
        if k >= fact.dim or l >= fact.dim:
            raise ValueError(
                "index pair (%d, %d) outside truncation dim %d" % (k, l, fact.dim))
        span = fact.dim - max(k, l)
        total = 0j
        for x, y in fact.pairs:
            total += np.vdot(y[l:l + span], x[k:k + span])
        return total

    return correlate(fh), correlate(fk)


def norm_C(phi: RadialSymbol, M: int) -> tuple:
    """(||h||_1 + ||k||_1 + |c| at truncation M, bound on the truncation error)."""
    hp = hankel_pair(phi, M)
    value = trace_norm(hp.h) + trace_norm(hp.k) + abs(phi.limit)
    return value, hp.tail_error


def ricard_xu_bound(phi: RadialSymbol) -> float:
    """The linear-growth comparison bound |phi(0)| + sum_{n>=1} 4n|phi(n)|.

    Diverges (returns inf) whenever the symbol does not vanish at infinity.
    """
    if abs(phi.limit) > 0:
        return math.inf
    m = phi.head_end
    total = abs(phi(0))
    for n in range(1, m + 1):
        total += 4 * n * abs(phi(n))
    if isinstance(phi.tail, GeometricTail) and phi.tail.coefficient != 0:
        q = abs(phi.tail.ratio)
        start = max(m + 1, 1)
        total += 4 * abs(phi.tail.coefficient) * q ** start * (start * (1 - q) + q) / (1 - q) ** 2
    return total


def write_symbol_csv(path, phi: RadialSymbol, M: int) -> None:
    """Tabulate phi, psi1, psi2 on 0 <= n <= 2M as real/imaginary columns."""
    dec = psi_decompose(phi)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "re_phi", "im_phi", "re_psi1", "im_psi1", "re_psi2", "im_psi2"])
        for n in range(2 * M + 1):
            p, p1, p2 = phi(n), dec.psi1(n), dec.psi2(n)
            writer.writerow([n, repr(p.real), repr(p.imag), repr(p1.real),
                             repr(p1.imag), repr(p2.real), repr(p2.imag)])
