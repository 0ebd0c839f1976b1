"""Nilpotent structure theory: Jordan partitions, the closed form for the
Jordan type of a polynomial in a single nilpotent cell, semisimplicity
testing and the Jordan-Chevalley decomposition over Q and GF(p^k)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    InseparableMinimalPolynomial,
    NotNilpotent,
    OutOfRange,
    PartitionTooLarge,
)
from .field import FieldSpec, Poly
from .matrices import ExactMatrix, minimal_polynomial, poly_eval, rank


@dataclass(frozen=True)
class Partition:
    """Multiset of positive cell sizes, stored sorted descending."""

    parts: tuple[int, ...]

    def __init__(self, parts):
        parts = tuple(sorted(parts, reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError("partition parts must be positive")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    def g_set(self) -> "GSet":
        return GSet(p for p in self.parts if p > 1)


@dataclass(frozen=True)
class GSet:
    """Multiset of non-unit cell sizes (a Partition with the 1s removed)."""

    parts: tuple[int, ...]

    def __init__(self, parts):
        parts = tuple(sorted(parts, reverse=True))
        if any(p < 2 for p in parts):
            raise ValueError("g-set parts must be at least 2")
        object.__setattr__(self, "parts", parts)

    @property
    def sizes(self) -> frozenset[int]:
        return frozenset(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "[" + ",".join(str(p) for p in self.parts) + "]"


def _defect_chain(x: ExactMatrix):
    """Defects of successive powers up to the nilpotency index.

    Returns the list [def(x^1), ..., def(x^h)] with def(x^h) = n, or raises
    NotNilpotent when the defects stop short of n within n powers.
    """
    n = x.n
    if n == 0:
        return []
    defects = []
    power = x
    for p in range(1, n + 1):
        d = n - rank(power)
        defects.append(d)
        if d == n:
            return defects
        if p < n:
            power = power * x
    raise NotNilpotent(f"matrix of size {n} with nonzero {n}-th power")


def nilpotency_index(x: ExactMatrix) -> int:
    """Least k with x^k = 0 (equals the maximal Jordan cell size)."""
    if x.n == 0:
        return 1
    return len(_defect_chain(x))


def jordan_partition(x: ExactMatrix) -> Partition:
    """Cell sizes recovered from the defect sequence of the powers:
    the number of cells of size >= p is def(x^p) - def(x^(p-1))."""
    defects = _defect_chain(x)
    counts = []
    prev = 0
    for d in defects:
        counts.append(d - prev)
        prev = d
    counts.append(0)
    parts = []
    for size in range(len(defects), 0, -1):
        parts.extend([size] * (counts[size - 1] - counts[size]))
    return Partition(parts)


def jordan_matrix(p: Partition, n: int, spec: FieldSpec) -> ExactMatrix:
    """Block-diagonal nilpotent matrix with the given cell sizes, padded by
    1-cells (zeros) to dimension n."""
    if p.total > n:
        raise PartitionTooLarge(f"partition {p} does not fit in dimension {n}")
    zero = spec.zero()
    cells = [ExactMatrix.jordan_cell(spec, zero, m) for m in p.parts]
    return ExactMatrix.block_diag(spec, cells, n)


def g_set(x: ExactMatrix) -> GSet:
    """Non-unit Jordan cell sizes of a nilpotent matrix."""
    return jordan_partition(x).g_set()


def predicted_poly_partition(m: int, k: int) -> Partition:
    """Jordan type of f(J) for a size-m nilpotent cell J and any polynomial f
    whose lowest nonzero term has degree k: exactly k cells, r of size q+1 and
    k-r of size q, where q = m // k and r = m - k*q."""
    if not 1 <= k <= m:
        raise OutOfRange(f"need 1 <= k <= m, got k={k}, m={m}")
    q, r = divmod(m, k)
    return Partition([q + 1] * r + [q] * (k - r))


# ---------------------------------------------------------------------------
# semisimplicity and Jordan-Chevalley decomposition
# ---------------------------------------------------------------------------

def _pth_root_poly(f: Poly) -> Poly:
    """Inverse Frobenius on a polynomial with vanishing derivative:
    f(t) = g(t^p) maps to g with p-th roots taken coefficient-wise."""
    spec = f.spec
    p = spec.char
    root_exp = p ** (spec.degree - 1)  # a -> a^(p^(k-1)) inverts a -> a^p
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(f.coeffs[i] ** root_exp)
    return Poly(spec, out)


def squarefree_part(f: Poly) -> Poly:
    """Monic product of the distinct irreducible factors.

    In characteristic p a vanishing derivative means f is a polynomial in
    t^p; coefficient-wise p-th roots (exact on these perfect fields) reduce
    the degree and the recursion continues.
    """
    f = f.monic()
    if f.degree <= 0:
        return Poly.one(f.spec)
    d = f.derivative()
    if d.is_zero:
        return squarefree_part(_pth_root_poly(f))
    g = f.gcd(d)
    if g.degree == 0:
        return f
    w = f // g
    r = squarefree_part(g)
    return ((w * r) // w.gcd(r)).monic()


def is_semisimple(x: ExactMatrix) -> bool:
    """True iff the minimal polynomial is squarefree (diagonalizable over
    the algebraic closure)."""
    f = minimal_polynomial(x)
    return squarefree_part(f) == f


def jordan_chevalley(x: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """Unique decomposition x = s + u with s semisimple, u nilpotent and
    [s, u] = 0, both polynomials in x.

    Newton iteration on the squarefree part f1 of the minimal polynomial:
    S <- S - f1(S) * g(S) with g the inverse of f1' modulo f1, starting at
    x; ceil(log2 n) + 1 steps suffice by quadratic convergence.
    """
    n = x.n
    f1 = squarefree_part(minimal_polynomial(x))
    deriv = f1.derivative()
    gcd_fd, _, g = f1.xgcd(deriv)  # g * f1' = 1 modulo f1
    if gcd_fd.degree != 0:
        raise InseparableMinimalPolynomial(
            f"squarefree part {f1} shares a factor with its derivative")
    steps = max(1, math.ceil(math.log2(n)) + 1) if n > 1 else 1
    s = x
    for _ in range(steps):
        correction = poly_eval(f1, s) * poly_eval(g % f1, s)
        s = s - correction
    u = x - s
    return s, u
