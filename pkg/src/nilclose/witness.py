"""Constructive counterexamples to closure.

For every rejected cell-size set the falsifier produces two commuting
nilpotent matrices inside the set together with coefficients whose
combination leaves it.  Three constructions cover all rejections:

* power    -- x and the similar x + x^k; their difference is x^k, whose
              cells have sizes floor(m/k) and ceil(m/k);
* neighbor -- two commuting copies of a 2m-dimensional block pair whose
              combination has cells of sizes m+1 and m-1; needs a
              nontrivial group of m-th roots of unity;
* gap      -- quotient operators on a (m1 + m + 2 - 2)-dimensional space
              whose difference has a single cell of size m+2.

Every emitted witness is re-verified by direct computation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .criterion import QSet, check_criterion, is_char_power, member_mq
from .errors import (
    DimensionTooSmall,
    InternalInconsistency,
    IsCharPower,
    OutOfRange,
)
from .field import (
    FieldSpec,
    Scalar,
    extension_for_roots,
    galois,
    geometric_sum,
    rationals,
    roots_of_unity,
    surrogate_prime,
)
from .jordan import Partition, jordan_matrix, jordan_partition
from .matrices import ExactMatrix, matrix_to_json


@dataclass(frozen=True)
class Witness:
    """A checkable refutation of closure: commuting x, y in the set and
    coefficients a, b with a*x + b*y outside it."""

    construction: str           # "power" | "neighbor" | "gap" | "enumerated"
    field: FieldSpec
    x: ExactMatrix
    y: ExactMatrix
    a: Scalar
    b: Scalar
    combo_partition: Partition
    violating_size: int
    note: str | None = None

    def combination(self) -> ExactMatrix:
        return self.x.scale(self.a) + self.y.scale(self.b)

    def to_json(self) -> dict:
        out = {
            "construction": self.construction,
            "field": str(self.field),
            "x": matrix_to_json(self.x),
            "y": matrix_to_json(self.y),
            "a": str(self.a),
            "b": str(self.b),
            "combo_partition": list(self.combo_partition.parts),
            "violating_size": self.violating_size,
        }
        if self.note is not None:
            out["note"] = self.note
        return out


def verify_witness(w: Witness, q: QSet) -> None:
    """Recompute every invariant of the witness; raise on any failure."""
    if not w.x.commutator(w.y).is_zero:
        raise InternalInconsistency("witness matrices do not commute")
    if not member_mq(w.x, q):
        raise InternalInconsistency(f"witness x is not in M({q})")
    if not member_mq(w.y, q):
        raise InternalInconsistency(f"witness y is not in M({q})")
    combo = w.combination()
    part = jordan_partition(combo)
    if part != w.combo_partition:
        raise InternalInconsistency(
            f"combination partition {part} != recorded {w.combo_partition}")
    if w.violating_size not in part.g_set().sizes:
        raise InternalInconsistency(
            f"violating size {w.violating_size} absent from combination {part}")
    if w.violating_size in q or w.violating_size == 1:
        raise InternalInconsistency(
            f"violating size {w.violating_size} is admitted by {q}")


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def build_coupled_cells(m: int, a: Scalar, b: Scalar,
                        spec: FieldSpec) -> ExactMatrix:
    """The 2m x 2m block matrix with blocks (a*J, I; 0, b*J) for a single
    size-m nilpotent cell J.  It commutes with diag(J, J); for nonzero a, b
    its cells are (m, m) when the geometric sum S_m(a, b) vanishes and
    (m+1, m-1) otherwise."""
    if m < 1:
        raise OutOfRange("cell size must be positive")
    if a.spec != spec or b.spec != spec:
        from .errors import FieldMismatch
        raise FieldMismatch("coefficients from a different field")
    zero, one = spec.zero(), spec.one()
    n2 = 2 * m
    rows = [[zero] * n2 for _ in range(n2)]
    for i in range(m - 1):
        rows[i][i + 1] = a
        rows[m + i][m + i + 1] = b
    for i in range(m):
        rows[i][m + i] = one
    return ExactMatrix(spec, rows)


def _pad(x: ExactMatrix, n: int) -> ExactMatrix:
    if x.n > n:
        raise DimensionTooSmall(f"block of size {x.n} does not fit in n={n}")
    if x.n == n:
        return x
    return ExactMatrix.block_diag(x.spec, [x], n)


def _base_field(char: int) -> FieldSpec:
    return rationals() if char == 0 else galois(char)


def _pick_violating(combo_part: Partition, q: QSet | None) -> int:
    sizes = sorted(combo_part.g_set().sizes, reverse=True)
    if q is not None:
        for s in sizes:
            if s not in q:
                return s
    if sizes:
        return sizes[0]
    raise InternalInconsistency("combination has no non-unit cell")


def witness_power(m: int, k: int, n: int, spec: FieldSpec,
                  q: QSet | None = None) -> Witness:
    """x a single size-m cell, y = x + x^k (similar to x); the combination
    y - x = x^k has cells of sizes floor(m/k) and ceil(m/k) only."""
    if not 2 <= k <= m - 1:
        raise OutOfRange(f"need 2 <= k <= m-1, got k={k}, m={m}")
    if m > n:
        raise OutOfRange(f"cell size {m} exceeds dimension {n}")
    x = jordan_matrix(Partition([m]), n, spec)
    xk = x.power(k)
    y = x + xk
    a = -spec.one()
    b = spec.one()
    combo_part = jordan_partition(xk)
    return Witness("power", spec, x, y, a, b, combo_part,
                   _pick_violating(combo_part, q))


def _char_free_part(m: int, char: int) -> int:
    while char > 1 and m % char == 0:
        m //= char
    return m


def _neighbor_field(m: int, n: int, char: int):
    """Working field plus a justification note for the surrogate case."""
    if char == 0:
        if m % 2 == 0:
            return rationals(), None
        p = surrogate_prime(n, m)
        note = (f"surrogate prime field GF({p}) realizes the characteristic-0 "
                f"verdict: p > n makes every power of p exceed n/2 + 1, and "
                f"GF({p}) holds the order-{m} roots of unity unavailable in Q")
        return galois(p), note
    mfree = _char_free_part(m, char)
    j = extension_for_roots(char, mfree)
    return galois(char, j), None


def witness_neighbor(m: int, n: int, char: int,
                     q: QSet | None = None) -> Witness:
    """Two commuting matrices with cells (m, m) whose combination has cells
    (m+1, m-1).  Uses a nonidentity m-th root of unity e0 (so the size-m
    geometric sum S_m(1, e0) vanishes) and the least t making
    S_m(t+1, t+e0) nonzero; unavailable exactly when m is a power of the
    characteristic."""
    if m < 2:
        raise OutOfRange(f"need m >= 2, got {m}")
    if 2 * m > n:
        raise DimensionTooSmall(f"need 2m <= n, got m={m}, n={n}")
    if char > 0 and is_char_power(m, char):
        raise IsCharPower(f"{m} is a power of the characteristic {char}")
    spec, note = _neighbor_field(m, n, char)
    while True:
        one = spec.one()
        eps = next(r for r in roots_of_unity(spec, m) if r != one)
        t = None
        for cand in spec.elements():
            if (cand + one).is_zero or (cand + eps).is_zero:
                continue
            if not geometric_sum(m, cand + one, cand + eps).is_zero:
                t = cand
                break
        if t is not None:
            break
        # finite field too small to dodge the finitely many bad t values
        spec = galois(spec.char, 2 * spec.degree)
    cell = ExactMatrix.jordan_cell(spec, spec.zero(), m)
    x = _pad(ExactMatrix.block_diag(spec, [cell, cell]), n)
    y = _pad(build_coupled_cells(m, one, eps, spec), n)
    combo = x.scale(t) + y
    combo_part = jordan_partition(combo)
    violating = m + 1
    if q is not None and (m + 1) in q:
        violating = m - 1
    return Witness("neighbor", spec, x, y, t, one, combo_part, violating,
                   note=note)


def _gap_quotient_ops(m: int, m1: int, spec: FieldSpec):
    """Matrices of the two quotient operators of the gap construction, in
    the complement basis e_{1,1..m1-1}, e_{2,2..m2-1}, e_{1,m1}+e_{2,m2},
    where e_{2,1} is identified with -e_{1,1}."""
    m2 = m + 2
    dim = m1 + m2 - 2
    zero, one = spec.zero(), spec.one()

    def idx1(k):                 # e_{1,k}, 1 <= k <= m1-1
        return k - 1

    def idx2(k):                 # e_{2,k}, 2 <= k <= m2-1
        return (m1 - 1) + (k - 2)

    top = dim - 1                # e_{1,m1} + e_{2,m2}
    z1 = [[zero] * dim for _ in range(dim)]
    for k in range(2, m1):
        z1[idx1(k - 1)][idx1(k)] = one
    z1[idx1(m1 - 1)][top] = one
    z2 = [[zero] * dim for _ in range(dim)]
    for k in range(3, m2):
        z2[idx2(k - 1)][idx2(k)] = one
    z2[idx1(1)][idx2(2)] = -one  # e_{2,1} = -e_{1,1} in the quotient
    z2[idx2(m2 - 1)][top] = one
    return ExactMatrix(spec, z1), ExactMatrix(spec, z2)


def witness_gap(m: int, m1: int, n: int, spec: FieldSpec,
                q: QSet | None = None) -> Witness:
    """Commuting x (cells {m, m1}) and y (cells {m1}) whose difference has a
    single non-unit cell of the otherwise unreachable size m+2."""
    if m < 1 or m1 <= m + 2:
        raise OutOfRange(f"need m >= 1 and m1 > m+2, got m={m}, m1={m1}")
    if m + m1 > n:
        raise OutOfRange(f"need m + m1 <= n, got m={m}, m1={m1}, n={n}")
    z1, z2 = _gap_quotient_ops(m, m1, spec)
    x = _pad(z1 + z2, n)
    y = _pad(z1, n)
    a, b = spec.one(), -spec.one()
    combo_part = jordan_partition(x.scale(a) + y.scale(b))
    violating = m + 2
    if q is not None and violating in q:
        violating = _pick_violating(combo_part, q)
    return Witness("gap", spec, x, y, a, b, combo_part, violating)


# ---------------------------------------------------------------------------
# the falsification decision tree
# ---------------------------------------------------------------------------

def falsify(n: int, char: int, q: QSet) -> Witness | None:
    """None when the criterion accepts; otherwise a self-verified witness.

    Rejections are covered in order: a missing size 2 yields a power
    witness; a maximal prefix that is not a characteristic power yields a
    neighbor witness at the first missing size; the remaining case (prefix
    a characteristic power with an element outside its window) yields a gap
    witness, after at most one halving step through a power witness.
    """
    if check_criterion(n, char, q).accepted:
        return None
    base = _base_field(char)
    if 2 not in q:
        m = min(q)
        w = witness_power(m, m - 1, n, base, q)
        verify_witness(w, q)
        return w
    m0 = 2
    while (m0 + 1) in q:
        m0 += 1
    if m0 > n // 2:
        raise InternalInconsistency(
            f"criterion rejected q={q} despite prefix through {m0}")
    if not is_char_power(m0, char):
        w = witness_neighbor(m0, n, char, q)
        verify_witness(w, q)
        return w
    # the prefix anchor is a characteristic power, so some element escapes
    # its window [n - m0 + 2, 2*m0]
    lo, hi = n - m0 + 2, 2 * m0
    m1 = min(m for m in q if m > m0 and not lo <= m <= hi)
    if m1 < lo:
        # below the window: the gap construction manufactures size m0 + 1
        w = witness_gap(m0 - 1, m1, n, base, q)
    else:
        half_lo, half_hi = m1 // 2, (m1 + 1) // 2
        if half_lo not in q or half_hi not in q:
            w = witness_power(m1, 2, n, base, q)
        else:
            # both halves admitted; the lower half sits strictly between the
            # prefix and the window, so the gap construction applies to it
            w = witness_gap(m0 - 1, half_lo, n, base, q)
    verify_witness(w, q)
    return w
