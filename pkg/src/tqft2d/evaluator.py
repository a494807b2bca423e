"""The TQFT functor: cobordism words to exact matrices.

Each layer compiles to the Kronecker product of its generators'
matrices (cap -> unit column, cup -> counit row, id -> identity,
mu -> d x d^2, delta -> d^2 x d, swap -> the basis-swap permutation);
the word evaluates to the composite, a d^target x d^source matrix.
Wire 0 is the leftmost tensor factor, so basis index i*d + j means
e_i (x) e_j.  All arithmetic is exact.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Sequence

from . import dsl
from .fields import Field, FieldSpec, Scalar, make_field
from .frobenius import (
    FrobeniusAlgebraData,
    ValidationReport,
    cached_check_all,
    _freeze3,
)
from .words import CobordismWord, Generator


class InvalidAlgebra(ValueError):
    """The algebra fails check_all; evaluation refused."""

    def __init__(self, report: ValidationReport) -> None:
        lines = [str(f) for f in report.failures[:5]]
        more = len(report.failures) - len(lines)
        msg = "; ".join(lines) + (f"; and {more} more" if more > 0 else "")
        super().__init__(f"algebra fails validation: {msg}")
        self.report = report


class EvalTooLarge(ValueError):
    """A layer map would exceed the configured tensor-entry cap."""

    def __init__(self, layer_index: int, entries: int, cap: int) -> None:
        super().__init__(
            f"layer {layer_index} needs {entries} tensor entries (cap {cap})"
        )
        self.layer_index = layer_index


@dataclass(frozen=True)
class EvalConfig:
    max_tensor_entries: int = 2**20

    def __post_init__(self) -> None:
        if self.max_tensor_entries < 1:
            raise ValueError("max_tensor_entries must be >= 1")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix of exact scalars over one field."""

    rows: int
    cols: int
    field: FieldSpec
    entries: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    def entry(self, r: int, c: int) -> Scalar:
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple[Scalar, ...]:
        return self.entries[r * self.cols : (r + 1) * self.cols]

    @staticmethod
    def identity(n: int, field: FieldSpec) -> "ExactMatrix":
        f = make_field(field)
        entries = tuple(f.one if i == j else f.zero for i in range(n) for j in range(n))
        return ExactMatrix(n, n, field, entries)


def matrix_to_json(m: ExactMatrix) -> dict:
    f = make_field(m.field)
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[f.to_str(x) for x in m.row(r)] for r in range(m.rows)],
    }


def matrix_to_csv(m: ExactMatrix) -> str:
    f = make_field(m.field)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for r in range(m.rows):
        writer.writerow([f.to_str(x) for x in m.row(r)])
    return buf.getvalue()


def kron(m1: ExactMatrix, m2: ExactMatrix) -> ExactMatrix:
    """Kronecker product with m1 as the most significant factor."""
    if m1.field != m2.field:
        raise ValueError(f"field mismatch: {m1.field} vs {m2.field}")
    f = make_field(m1.field)
    rows, cols = m1.rows * m2.rows, m1.cols * m2.cols
    entries = []
    for r1 in range(m1.rows):
        for r2 in range(m2.rows):
            for c1 in range(m1.cols):
                a = m1.entry(r1, c1)
                entries.extend(
                    f.normalize(a * m2.entry(r2, c2)) if a else f.zero
                    for c2 in range(m2.cols)
                )
    return ExactMatrix(rows, cols, m1.field, tuple(entries))


def matmul(m1: ExactMatrix, m2: ExactMatrix) -> ExactMatrix:
    """Plain exact matrix product m1 * m2."""
    if m1.field != m2.field:
        raise ValueError(f"field mismatch: {m1.field} vs {m2.field}")
    if m1.cols != m2.rows:
        raise ValueError(f"shape mismatch: {m1.rows}x{m1.cols} times {m2.rows}x{m2.cols}")
    f = make_field(m1.field)
    entries = []
    for r in range(m1.rows):
        row = m1.row(r)
        for c in range(m2.cols):
            entries.append(
                f.normalize(sum(row[k] * m2.entry(k, c) for k in range(m1.cols) if row[k]))
            )
    return ExactMatrix(m1.rows, m2.cols, m1.field, tuple(entries))


# ---------------------------------------------------------------------------
# evaluation


_SparseCols = list[dict[int, Scalar]]


def _generator_columns(a: FrobeniusAlgebraData, f: Field) -> dict[Generator, _SparseCols]:
    d = a.dim
    table: dict[Generator, _SparseCols] = {}
    table[Generator.CAP] = [{k: a.unit[k] for k in range(d) if a.unit[k]}]
    table[Generator.CUP] = [({0: a.counit[i]} if a.counit[i] else {}) for i in range(d)]
    table[Generator.ID] = [{i: f.one} for i in range(d)]
    table[Generator.MERGE] = [
        {k: a.mu[i][j][k] for k in range(d) if a.mu[i][j][k]}
        for i in range(d)
        for j in range(d)
    ]
    table[Generator.SPLIT] = [
        {i * d + j: a.delta[k][i][j] for i in range(d) for j in range(d) if a.delta[k][i][j]}
        for k in range(d)
    ]
    table[Generator.SWAP] = [
        {j * d + i: f.one} for i in range(d) for j in range(d)
    ]
    return table


def _layer_column_fn(
    gens: Sequence[Generator], gen_cols: dict[Generator, _SparseCols], d: int, f: Field
) -> Callable[[int], dict[int, Scalar]]:
    """Sparse columns of the layer's Kronecker product, built on demand.

    Only the columns actually hit by the running state are assembled,
    so wide identity-heavy layers stay cheap.
    """
    radices = [d**g.n_in for g in gens]
    out_sizes = [d**g.n_out for g in gens]
    cache: dict[int, dict[int, Scalar]] = {}

    def column(mid: int) -> dict[int, Scalar]:
        col = cache.get(mid)
        if col is not None:
            return col
        digits = []
        rem = mid
        for radix in reversed(radices):
            digits.append(rem % radix)
            rem //= radix
        digits.reverse()
        col = {0: f.one}
        for gen, digit, out_size in zip(gens, digits, out_sizes):
            own = gen_cols[gen][digit]
            merged: dict[int, Scalar] = {}
            for li, lv in col.items():
                base = li * out_size
                for ri, rv in own.items():
                    merged[base + ri] = f.normalize(lv * rv)
            col = merged
        cache[mid] = col
        return col

    return column


def _apply_layer(
    state: _SparseCols, layer_col: Callable[[int], dict[int, Scalar]], f: Field
) -> _SparseCols:
    out: _SparseCols = []
    for column in state:
        acc: dict[int, Scalar] = {}
        for mid, v in column.items():
            for r, w in layer_col(mid).items():
                acc[r] = acc.get(r, 0) + v * w
        out.append({r: nv for r, nv in ((r, f.normalize(x)) for r, x in acc.items()) if nv})
    return out


def _evaluate_unchecked(
    w: CobordismWord, a: FrobeniusAlgebraData, cfg: EvalConfig
) -> ExactMatrix:
    f = make_field(a.field)
    d = a.dim
    gen_cols = _generator_columns(a, f)
    state: _SparseCols = [{i: f.one} for i in range(d**w.source)]
    for idx, layer in enumerate(w.layers):
        if d**layer.inputs * d**layer.outputs > cfg.max_tensor_entries:
            raise EvalTooLarge(idx, d**layer.inputs * d**layer.outputs, cfg.max_tensor_entries)
        state = _apply_layer(state, _layer_column_fn(layer.generators, gen_cols, d, f), f)
    n_rows = d**w.target
    entries = [f.zero] * (n_rows * len(state))
    n_cols = len(state)
    for c, column in enumerate(state):
        for r, v in column.items():
            entries[r * n_cols + c] = v
    return ExactMatrix(n_rows, n_cols, a.field, tuple(entries))


def _require_valid(a: FrobeniusAlgebraData) -> None:
    report = cached_check_all(a)
    if not report.ok:
        raise InvalidAlgebra(report)


def evaluate(
    w: CobordismWord, a: FrobeniusAlgebraData, cfg: EvalConfig = DEFAULT_CONFIG
) -> ExactMatrix:
    """Image of the word under the functor defined by a valid algebra."""
    _require_valid(a)
    return _evaluate_unchecked(w, a, cfg)


def genus_invariant(
    genus: int, a: FrobeniusAlgebraData, cfg: EvalConfig = DEFAULT_CONFIG
) -> Scalar:
    """Closed genus-g invariant counit(H^g(unit)) with H = mu . delta.

    Equals evaluating the closed normal-form word of that genus, but
    runs through the d x d handle operator instead of tensor assembly.
    """
    if genus < 0:
        raise ValueError(f"genus must be >= 0, got {genus}")
    _require_valid(a)
    f = make_field(a.field)
    d = a.dim
    handle = [
        [
            f.normalize(
                sum(
                    a.delta[k][i][j] * a.mu[i][j][m]
                    for i in range(d)
                    for j in range(d)
                    if a.delta[k][i][j]
                )
            )
            for k in range(d)
        ]
        for m in range(d)
    ]
    vec = list(a.unit)
    for _ in range(genus):
        vec = [
            f.normalize(sum(handle[m][k] * vec[k] for k in range(d) if vec[k]))
            for m in range(d)
        ]
    return f.normalize(sum(a.counit[m] * vec[m] for m in range(d) if vec[m]))


# ---------------------------------------------------------------------------
# generator relations


_RELATION_WORDS: tuple[tuple[str, str, str], ...] = (
    ("identity-cap", "cap ; id", "cap"),
    ("identity-cup", "id ; cup", "cup"),
    ("identity-merge", "id^2 ; mu", "mu ; id"),
    ("unit-left", "cap | id ; mu", "id"),
    ("unit-right", "id | cap ; mu", "id"),
    ("counit-left", "delta ; cup | id", "id"),
    ("counit-right", "delta ; id | cup", "id"),
    ("associativity", "mu | id ; mu", "id | mu ; mu"),
    ("coassociativity", "delta ; delta | id", "delta ; id | delta"),
    ("commutativity", "swap ; mu", "mu"),
    ("cocommutativity", "delta ; swap", "delta"),
    ("frobenius-left", "delta | id ; id | mu", "mu ; delta"),
    ("frobenius-right", "id | delta ; mu | id", "mu ; delta"),
)


def relation_table() -> list[tuple[str, CobordismWord, CobordismWord]]:
    """The 13 built-in generator relations as word pairs."""
    return [(name, dsl.parse(lhs), dsl.parse(rhs)) for name, lhs, rhs in _RELATION_WORDS]


@dataclass(frozen=True)
class RelationFailure:
    name: str
    lhs: str
    rhs: str


@dataclass(frozen=True)
class RelationReport:
    failures: tuple[RelationFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_relations(
    a: FrobeniusAlgebraData, cfg: EvalConfig = DEFAULT_CONFIG
) -> RelationReport:
    """Evaluate both sides of every built-in relation and compare exactly.

    Runs on unvalidated data on purpose: feeding in broken algebras and
    seeing which relations fail is the point of the diagnostic.
    """
    failures = []
    for name, lhs, rhs in relation_table():
        ml = _evaluate_unchecked(lhs, a, cfg)
        mr = _evaluate_unchecked(rhs, a, cfg)
        if ml != mr:
            failures.append(RelationFailure(name, dsl.format_word(lhs), dsl.format_word(rhs)))
    return RelationReport(tuple(failures))


def extract_algebra(evaluator: Callable[[CobordismWord], ExactMatrix]) -> FrobeniusAlgebraData:
    """Read the algebra back out of an evaluator closed over it.

    Evaluates the four single-generator words and reassembles the
    structure tensors; for any valid input algebra this round-trips
    entrywise.
    """
    ident = evaluator(dsl.parse("id"))
    d = ident.rows
    spec = ident.field
    m_mu = evaluator(dsl.parse("mu"))
    m_delta = evaluator(dsl.parse("delta"))
    m_cap = evaluator(dsl.parse("cap"))
    m_cup = evaluator(dsl.parse("cup"))
    mu = _freeze3(
        [
            [[m_mu.entry(k, i * d + j) for k in range(d)] for j in range(d)]
            for i in range(d)
        ]
    )
    delta = _freeze3(
        [
            [[m_delta.entry(i * d + j, k) for j in range(d)] for i in range(d)]
            for k in range(d)
        ]
    )
    unit = tuple(m_cap.entry(k, 0) for k in range(d))
    counit = tuple(m_cup.entry(0, i) for i in range(d))
    return FrobeniusAlgebraData(spec, d, mu, unit, delta, counit)
