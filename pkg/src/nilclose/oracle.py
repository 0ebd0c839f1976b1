"""Brute-force verification of closure under spans of commuting pairs.

The exhaustive oracle enumerates, for each admissible Jordan type X (one
representative per conjugacy class), every element Y of the span of the
centralizer of X, keeps the nilpotent ones whose cell sizes are admitted,
and checks every combination a*X + b*Y.  Nilpotency of the candidates is
recomputed by raw matrix powering so the oracle does not depend on the
structure theory it is meant to check.

The inner loop runs on integer-encoded field elements with numpy lookup
tables; results are cached per (field, dimension, Jordan type) so scans
over many q-sets reuse the enumeration.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache

import numpy as np

from .criterion import QSet, check_criterion, all_qsets
from .errors import (
    BudgetExceeded,
    Inconsistency,
    InfiniteField,
    InvalidQ,
    NotNilpotent,
)
from .field import FieldSpec, Poly, galois, roots_of_unity
from .jordan import Partition, jordan_matrix, jordan_partition
from .matrices import ExactMatrix, centralizer_basis, poly_eval
from .witness import (
    Witness,
    build_coupled_cells,
    _gap_quotient_ops,
    _pad,
    falsify,
    verify_witness,
)


# ---------------------------------------------------------------------------
# admissible Jordan types and the budget estimate
# ---------------------------------------------------------------------------

def admissible_partitions(n: int, q: QSet) -> list[Partition]:
    """Partitions of n with parts in q plus 1-cells and at least one part
    >= 2, in descending lexicographic order."""
    allowed = sorted(q.elements, reverse=True)
    out = []

    def recurse(remaining, max_part, acc):
        if remaining == 0:
            if any(p > 1 for p in acc):
                out.append(Partition(acc))
            return
        for part in allowed:
            if part <= max_part and part <= remaining:
                recurse(remaining - part, part, acc + [part])
        # trailing 1-cells
        if acc and any(p > 1 for p in acc):
            out.append(Partition(acc + [1] * remaining))

    recurse(n, n, [])
    return out


def centralizer_dimension(p: Partition) -> int:
    """Closed form sum(min(a, b)) over all ordered pairs of parts."""
    return sum(min(a, b) for a in p.parts for b in p.parts)


# ---------------------------------------------------------------------------
# numpy lookup-table engine for small finite fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Tables:
    q: int
    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    inv: np.ndarray


@lru_cache(maxsize=None)
def _tables(spec: FieldSpec) -> _Tables:
    q = spec.order
    elems = [spec.element_from_index(i) for i in range(q)]
    add = np.zeros((q, q), dtype=np.int16)
    sub = np.zeros((q, q), dtype=np.int16)
    mul = np.zeros((q, q), dtype=np.int16)
    inv = np.zeros(q, dtype=np.int16)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            add[i, j] = spec.index_of(a + b)
            sub[i, j] = spec.index_of(a - b)
            mul[i, j] = spec.index_of(a * b)
        if i:
            inv[i] = spec.index_of(a.inverse())
    return _Tables(q, add, sub, mul, inv)


def _encode(x: ExactMatrix) -> np.ndarray:
    spec = x.spec
    return np.array([spec.index_of(e) for row in x.rows for e in row],
                    dtype=np.int16)


def _decode(flat, spec: FieldSpec, n: int) -> ExactMatrix:
    vals = [spec.element_from_index(int(v)) for v in flat]
    return ExactMatrix(spec, [vals[i * n:(i + 1) * n] for i in range(n)])


def _batch_matmul(a: np.ndarray, b: np.ndarray, tab: _Tables) -> np.ndarray:
    """(B, n, n) x (B, n, n) product through the lookup tables."""
    n = a.shape[1]
    out = np.zeros_like(a)
    for i in range(n):
        for j in range(n):
            acc = tab.mul[a[:, i, 0], b[:, 0, j]]
            for k in range(1, n):
                acc = tab.add[acc, tab.mul[a[:, i, k], b[:, k, j]]]
            out[:, i, j] = acc
    return out


def _batch_nilpotent(mats: np.ndarray, tab: _Tables) -> np.ndarray:
    """Mask of matrices whose n-th power vanishes, by repeated squaring."""
    n = mats.shape[1]
    power = mats
    exponent = 1
    while exponent < n:
        power = _batch_matmul(power, power, tab)
        exponent *= 2
    return ~power.any(axis=(1, 2))


def _batch_rank(mats: np.ndarray, tab: _Tables) -> np.ndarray:
    """Ranks of a batch of square matrices by vectorized elimination."""
    a = mats.copy()
    batch, n, _ = a.shape
    row = np.zeros(batch, dtype=np.int64)
    cols = np.arange(n)
    for col in range(n):
        cand = (a[:, :, col] != 0) & (cols[None, :] >= row[:, None])
        has = cand.any(axis=1)
        idx = np.nonzero(has)[0]
        if idx.size == 0:
            continue
        piv = np.argmax(cand[idx], axis=1)
        r = row[idx]
        # swap the pivot row up
        tmp = a[idx, r, :].copy()
        a[idx, r, :] = a[idx, piv, :]
        a[idx, piv, :] = tmp
        # normalize and eliminate everything below
        pivinv = tab.inv[a[idx, r, col]]
        a[idx, r, :] = tab.mul[pivinv[:, None], a[idx, r, :]]
        factors = a[idx, :, col]
        pivrow = a[idx, r, :]
        reduced = tab.sub[a[idx], tab.mul[factors[:, :, None],
                                          pivrow[:, None, :]]]
        below = cols[None, :] > r[:, None]
        a[idx] = np.where(below[:, :, None], reduced, a[idx])
        row[idx] += 1
    return row


def _batch_partitions(mats: np.ndarray, tab: _Tables) -> list[tuple[int, ...]]:
    """Jordan partitions (descending part tuples) of nilpotent matrices."""
    batch, n, _ = mats.shape
    if batch == 0:
        return []
    defect_rows = []
    power = mats
    while True:
        d = n - _batch_rank(power, tab)
        defect_rows.append(d)
        if np.all(d == n):
            break
        if len(defect_rows) > n:
            raise NotNilpotent("batch contains a non-nilpotent matrix")
        power = _batch_matmul(power, mats, tab)
    stacked = np.stack(defect_rows, axis=1)
    out = []
    for row in stacked:
        counts, prev = [], 0
        for d in row:
            counts.append(int(d) - prev)
            prev = int(d)
            if d == n:
                break
        counts.append(0)
        parts = []
        for size in range(len(counts) - 1, 0, -1):
            parts.extend([size] * (counts[size - 1] - counts[size]))
        out.append(tuple(sorted(parts, reverse=True)))
    return out


# ---------------------------------------------------------------------------
# cached closure tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _ClosureRecord:
    y_index: int                       # odometer index into the span
    y_partition: tuple[int, ...]
    combo_partitions: tuple[tuple[int, ...], ...]   # X + c*Y for c = 1..q-1


@dataclass(frozen=True)
class _ClosureTable:
    span_size: int
    x: ExactMatrix
    basis: tuple[ExactMatrix, ...]
    records: tuple[_ClosureRecord, ...]


_CLOSURE_CACHE: dict = {}


def _span_rows(basis_enc: np.ndarray, indices: np.ndarray,
               tab: _Tables) -> np.ndarray:
    """Span elements for the given odometer indices (last coefficient moves
    fastest), as (len(indices), n*n) encoded rows."""
    d, nn = basis_enc.shape
    q = tab.q
    out = np.zeros((len(indices), nn), dtype=np.int16)
    rem = indices.copy()
    for i in range(d - 1, -1, -1):
        digit = rem % q
        rem //= q
        out = tab.add[out, tab.mul[digit[:, None].astype(np.int16),
                                   basis_enc[i][None, :]]]
    return out


def _nilpotent_span_elements(basis_enc: np.ndarray, n: int, tab: _Tables):
    """Odometer indices and encoded matrices of the nilpotent span elements,
    in enumeration order."""
    d = basis_enc.shape[0]
    q = tab.q
    total = q ** d
    # split the digits in two halves so candidate rows come from one table
    # lookup instead of a d-step fold
    d_hi = d // 2
    d_lo = d - d_hi
    hi_idx = np.arange(q ** d_hi, dtype=np.int64)
    lo_idx = np.arange(q ** d_lo, dtype=np.int64)
    hi_rows = _span_rows(basis_enc[:d_hi], hi_idx, tab) \
        if d_hi else np.zeros((1, n * n), dtype=np.int16)
    lo_rows = _span_rows(basis_enc[d_hi:], lo_idx, tab)
    diag = np.arange(n) * (n + 1)
    hi_tr = hi_rows[:, diag[0]]
    lo_tr = lo_rows[:, diag[0]]
    for pos in diag[1:]:
        hi_tr = tab.add[hi_tr, hi_rows[:, pos]]
        lo_tr = tab.add[lo_tr, lo_rows[:, pos]]
    indices_out = []
    mats_out = []
    chunk = max(1, (1 << 22) // max(len(lo_idx), 1))
    for start in range(0, len(hi_idx), chunk):
        stop = min(start + chunk, len(hi_idx))
        trace = tab.add[hi_tr[start:stop, None], lo_tr[None, :]]
        hi_sel, lo_sel = np.nonzero(trace == 0)  # nilpotent => trace zero
        if hi_sel.size == 0:
            continue
        rows = tab.add[hi_rows[start + hi_sel], lo_rows[lo_sel]]
        mats = rows.reshape(-1, n, n)
        nil = _batch_nilpotent(mats, tab)
        if not nil.any():
            continue
        keep = np.nonzero(nil)[0]
        global_idx = (start + hi_sel[keep]).astype(np.int64) * len(lo_idx) \
            + lo_sel[keep]
        indices_out.append(global_idx)
        mats_out.append(rows[keep])
    if not indices_out:
        return (np.zeros(0, dtype=np.int64),
                np.zeros((0, n * n), dtype=np.int16), total)
    return np.concatenate(indices_out), np.vstack(mats_out), total


def _closure_table(spec: FieldSpec, n: int, p: Partition) -> _ClosureTable:
    key = (spec, n, p.parts)
    cached = _CLOSURE_CACHE.get(key)
    if cached is not None:
        return cached
    tab = _tables(spec)
    q = tab.q
    x = jordan_matrix(p, n, spec)
    basis = tuple(centralizer_basis(x))
    basis_enc = np.stack([_encode(b) for b in basis])
    indices, y_rows, total = _nilpotent_span_elements(basis_enc, n, tab)
    y_parts = _batch_partitions(y_rows.reshape(-1, n, n), tab)
    x_enc = _encode(x)
    records = []
    k = len(indices)
    if k:
        combos = np.zeros((k, q - 1, n, n), dtype=np.int16)
        for c in range(1, q):
            scaled = tab.mul[np.int16(c), y_rows]
            combos[:, c - 1] = tab.add[x_enc[None, :], scaled].reshape(-1, n, n)
        combo_parts = _batch_partitions(combos.reshape(-1, n, n), tab)
    for i in range(k):
        row = tuple(combo_parts[i * (q - 1) + c] for c in range(q - 1))
        records.append(_ClosureRecord(int(indices[i]), y_parts[i], row))
    table = _ClosureTable(total, x, basis, tuple(records))
    _CLOSURE_CACHE[key] = table
    return table


def _rebuild_span_element(table: _ClosureTable, y_index: int,
                          spec: FieldSpec) -> ExactMatrix:
    """Decode a span element from its odometer index (exact arithmetic)."""
    q = spec.order
    d = len(table.basis)
    n = table.x.n
    acc = ExactMatrix.zeros(spec, n)
    rem = y_index
    for i in range(d - 1, -1, -1):
        digit = rem % q
        rem //= q
        if digit:
            acc = acc + table.basis[i].scale(spec.element_from_index(digit))
    return acc


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OracleReport:
    mode: str                   # "exhaustive" | "sampled"
    field: FieldSpec
    n: int
    q: QSet
    outcome: str                # "pass" | "violation"
    violation: Witness | None
    matrices_enumerated: int
    pairs_tested: int
    combinations_tested: int
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "field": str(self.field),
            "n": self.n,
            "q": str(self.q),
            "outcome": self.outcome,
            "counts": {
                "matrices_enumerated": self.matrices_enumerated,
                "pairs_tested": self.pairs_tested,
                "combinations_tested": self.combinations_tested,
            },
        }
        if self.violation is not None:
            out["violation"] = self.violation.to_json()
        if self.seed is not None:
            out["seed"] = self.seed
        return out


# ---------------------------------------------------------------------------
# exhaustive check
# ---------------------------------------------------------------------------

def exhaustive_check(n: int, spec: FieldSpec, q: QSet,
                     budget: int = 5_000_000) -> OracleReport:
    """Closure check with one Jordan representative X per admissible
    conjugacy class and every nilpotent admitted Y in its centralizer span.
    The first failing triple in enumeration order is reported."""
    if not spec.is_finite:
        raise InfiniteField("exhaustive enumeration needs a finite field")
    if q.n != n:
        raise InvalidQ(f"q has ambient dimension {q.n}, expected {n}")
    parts_list = admissible_partitions(n, q)
    for p in parts_list:
        required = spec.order ** centralizer_dimension(p)
        if required > budget:
            raise BudgetExceeded(
                f"partition {p} needs {required} span elements "
                f"(budget {budget})", partition=p, required=required)
    qset = set(q.elements)
    elems = [spec.element_from_index(i) for i in range(spec.order)]
    tab = _tables(spec)
    matrices = pairs = combos = 0
    for p in parts_list:
        table = _closure_table(spec, n, p)
        matrices += table.span_size
        for rec in table.records:
            if not all(s in qset for s in rec.y_partition if s > 1):
                continue
            pairs += 1
            for ai in range(spec.order):
                for bi in range(spec.order):
                    combos += 1
                    if ai == 0 or bi == 0:
                        continue  # a scaled copy of X, Y or zero: admitted
                    c = int(tab.mul[bi, tab.inv[ai]])
                    combo_part = rec.combo_partitions[c - 1]
                    bad = [s for s in combo_part if s > 1 and s not in qset]
                    if bad:
                        y = _rebuild_span_element(table, rec.y_index, spec)
                        a_val, b_val = elems[ai], elems[bi]
                        w = Witness(
                            "enumerated", spec, table.x, y, a_val, b_val,
                            Partition(combo_part), max(bad))
                        verify_witness(w, q)
                        return OracleReport(
                            "exhaustive", spec, n, q, "violation", w,
                            matrices, pairs, combos)
    return OracleReport("exhaustive", spec, n, q, "pass", None,
                        matrices, pairs, combos)


# ---------------------------------------------------------------------------
# sampled check
# ---------------------------------------------------------------------------

def _random_poly(spec: FieldSpec, rng: random.Random, degree: int,
                 min_valuation: int = 1) -> Poly:
    """Random polynomial with valuation exactly min_valuation."""
    coeffs = [0] * min_valuation
    coeffs.append(rng.randrange(1, 5))
    for _ in range(degree - min_valuation):
        coeffs.append(rng.randrange(-3, 4))
    poly = Poly.from_ints(spec, coeffs)
    if poly.is_zero or poly.valuation() != min_valuation:
        # a coefficient collapsed modulo the characteristic; retry
        return _random_poly(spec, rng, degree, min_valuation)
    return poly


def _coefficient_pairs(spec: FieldSpec, rng: random.Random):
    small = [spec.from_int(v) for v in (0, 1, -1, 2, -2)]
    pairs = [(a, b) for a in small for b in small]
    if spec.is_finite:
        for _ in range(3):
            pairs.append((spec.element_from_index(rng.randrange(spec.order)),
                          spec.element_from_index(rng.randrange(spec.order))))
    else:
        for _ in range(3):
            pairs.append((spec.from_int(rng.randrange(-9, 10)),
                          spec.from_int(rng.randrange(-9, 10))))
    return pairs


def _witness_family_pairs(n: int, spec: FieldSpec, q: QSet):
    """All neighbor- and gap-shaped commuting pairs that fit (n, q)."""
    out = []
    one = spec.one()
    for m in q:
        if 2 * m > n:
            continue
        cell = ExactMatrix.jordan_cell(spec, spec.zero(), m)
        zdiag = _pad(ExactMatrix.block_diag(spec, [cell, cell]), n)
        for eps in roots_of_unity(spec, m):
            if eps == one:
                continue
            out.append((zdiag, _pad(build_coupled_cells(m, one, eps, spec), n)))
    for m in sorted({1} | set(q.elements)):
        for m1 in q:
            if m1 > m + 2 and m + m1 <= n:
                z1, z2 = _gap_quotient_ops(m, m1, spec)
                out.append((_pad(z1 + z2, n), _pad(z1, n)))
    return out


def sampled_check(n: int, spec: FieldSpec, q: QSet, samples: int,
                  seed: int) -> OracleReport:
    """Randomized closure check over a structured catalog of commuting
    pairs; deterministic for a given seed."""
    if q.n != n:
        raise InvalidQ(f"q has ambient dimension {q.n}, expected {n}")
    rng = random.Random(seed)
    parts_list = admissible_partitions(n, q)
    qset = set(q.elements)
    matrices = pairs = combos = 0

    def check_pair(x, y):
        nonlocal pairs, combos
        from .criterion import member_mq
        if not member_mq(x, q) or not member_mq(y, q):
            return None
        pairs += 1
        for a, b in _coefficient_pairs(spec, rng):
            combos += 1
            combo = x.scale(a) + y.scale(b)
            try:
                part = jordan_partition(combo)
            except NotNilpotent:
                part = None
            bad = None
            if part is None:
                bad = 0
            else:
                outside = [s for s in part if s > 1 and s not in qset]
                if outside:
                    bad = max(outside)
            if bad:
                w = Witness("enumerated", spec, x, y, a, b,
                            part if part is not None else Partition([n]),
                            bad)
                verify_witness(w, q)
                return w
        return None

    for x, y in _witness_family_pairs(n, spec, q):
        matrices += 2
        w = check_pair(x, y)
        if w is not None:
            return OracleReport("sampled", spec, n, q, "violation", w,
                                matrices, pairs, combos, seed=seed)
    for _ in range(samples):
        if not parts_list:
            break
        p = parts_list[rng.randrange(len(parts_list))]
        base = jordan_matrix(p, n, spec)
        matrices += 2
        if rng.random() < 0.5:
            x = poly_eval(_random_poly(spec, rng, n, 1), base)
            y = poly_eval(_random_poly(spec, rng, n, 1), base)
        else:
            basis = centralizer_basis(base)
            coeffs = [spec.from_int(rng.randrange(-2, 3)) for _ in basis]
            y = ExactMatrix.zeros(spec, n)
            for c, bmat in zip(coeffs, basis):
                if not c.is_zero:
                    y = y + bmat.scale(c)
            x = base
        w = check_pair(x, y)
        if w is not None:
            return OracleReport("sampled", spec, n, q, "violation", w,
                                matrices, pairs, combos, seed=seed)
    return OracleReport("sampled", spec, n, q, "pass", None,
                        matrices, pairs, combos, seed=seed)


# ---------------------------------------------------------------------------
# cross validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossValidationReport:
    n: int
    char: int
    degrees: tuple[int, ...]
    accepted: tuple[str, ...]
    rejected: tuple[str, ...]
    oracle_passes: int
    witnesses: int
    skipped: tuple[str, ...] = dataclass_field(default=())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "char": self.char,
            "degrees": list(self.degrees),
            "accepted": list(self.accepted),
            "rejected": list(self.rejected),
            "oracle_passes": self.oracle_passes,
            "witnesses": self.witnesses,
            "skipped": list(self.skipped),
        }


def cross_validate(n: int, char: int, degrees, q_range="all",
                   budget: int = 5_000_000) -> CrossValidationReport:
    """Tie the criterion to the brute-force oracle and the witness module.

    Accepted q-sets must pass the exhaustive oracle over GF(char^d) for
    every feasible degree d (a violation is a fatal inconsistency).
    Rejected q-sets must be falsified by a self-verifying witness.  A pass
    over one small field never contradicts a rejection: counterexamples may
    need extension fields, so that direction is not checked.
    """
    if q_range == "all":
        qs = all_qsets(n)
    else:
        qs = list(q_range)
    degrees = tuple(degrees)
    accepted, rejected, skipped = [], [], []
    oracle_passes = witnesses = 0
    for q in qs:
        res = check_criterion(n, char, q)
        if res.accepted:
            accepted.append(str(q))
            for d in degrees:
                spec = galois(char, d)
                try:
                    report = exhaustive_check(n, spec, q, budget=budget)
                except BudgetExceeded:
                    skipped.append(f"{q}@GF({char}^{d})")
                    continue
                if not report.passed:
                    raise Inconsistency(
                        f"criterion accepts q={q} but the oracle found a "
                        f"violation over {spec}")
                oracle_passes += 1
        else:
            rejected.append(str(q))
            w = falsify(n, char, q)
            if w is None:
                raise Inconsistency(
                    f"criterion rejects q={q} but no witness was found")
            witnesses += 1
    return CrossValidationReport(n, char, degrees, tuple(accepted),
                                 tuple(rejected), oracle_passes, witnesses,
                                 tuple(skipped))
