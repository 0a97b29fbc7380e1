"""Recompute the two result tables (vertex and arc parameters) on concrete instances.

Each row is an infinite family; ``instances`` picks the smallest sizes whose
edge count is at most ``max_size``. Expected values are the closed forms of
the rows; ``None`` marks a cell the row does not pin down for that instance.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .config import Caps, InvalidInputError, ResourceCapError, resolve
from .distinguishing import (
    Ambiguous,
    Kind,
    MAX,
    MIN,
    biclique_index_formula,
    ceil_div,
    classical_bounds,
    extremal,
    graph_parameter_value,
)
from .graph_core import build_family

VERTEX_COLUMNS = ("chi", "D", "chiD", "Dmin", "Dmax", "chiDmin", "chiDmax")
ARC_COLUMNS = ("chi'", "D'", "chi'D", "D'min", "D'max", "chi'Dmin", "chi'Dmax")
COLUMNS = {1: VERTEX_COLUMNS, 2: ARC_COLUMNS}
KINDS = {1: (Kind.OD, Kind.OCHID), 2: (Kind.ODP, Kind.OCHIDP)}

Expected = dict[str, "int | None"]


@dataclass(frozen=True)
class Row:
    table: int
    row: int
    label: str
    sizes: Callable[[], Iterable[tuple[str, int]]]  # (family spec, edge count), increasing
    expected: Callable[[str], Expected]


@dataclass
class TableRow:
    table: int
    row: int
    label: str
    instance: str
    expected: Expected
    computed: dict[str, int] = field(default_factory=dict)
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return all(v is None or self.computed.get(k) == v for k, v in self.expected.items())

    def mismatches(self) -> list[str]:
        return [k for k, v in self.expected.items() if v is not None and self.computed.get(k) != v]

    def as_dict(self) -> dict:
        return {
            "table": self.table,
            "row": self.row,
            "label": self.label,
            "instance": self.instance,
            "expected": self.expected,
            "computed": self.computed,
            "witnesses": self.witnesses,
            "match": self.match,
        }


def _params(spec: str) -> tuple[int, ...]:
    return tuple(int(x) for x in spec.split(":", 1)[1].split(","))


def _row(table: int, row: int, label: str, sizes, expected) -> Row:
    return Row(table, row, label, sizes, lambda spec, f=expected: dict(zip(COLUMNS[table], f(*_params(spec)))))


def _paths(parity: int, first: int):
    return lambda: ((f"path:{k}", k - 1) for k in range(first, 10_000, 2) if k % 2 == parity)


def _cycles(start: int, step: int = 2, only: int | None = None):
    if only is not None:
        return lambda: iter([(f"cycle:{only}", only)])
    return lambda: ((f"cycle:{k}", k) for k in range(start, 10_000, step))


def _completes(start: int, step: int = 1, only: int | None = None):
    if only is not None:
        return lambda: iter([(f"complete:{only}", only * (only - 1) // 2)])
    return lambda: ((f"complete:{k}", k * (k - 1) // 2) for k in range(start, 200, step))


def _stars(start: int):
    return lambda: ((f"biclique:1,{k}", k) for k in range(start, 10_000))


def _balanced(start: int, stop: int | None = None):
    return lambda: ((f"biclique:{k},{k}", k * k) for k in range(start, 100 if stop is None else stop + 1))


def _only(spec: str, edges: int):
    return lambda: iter([(spec, edges)])


def _unbalanced():
    def gen():
        pairs = sorted(((m * n, m, n) for n in range(3, 40) for m in range(2, n)))
        return ((f"biclique:{m},{n}", e) for e, m, n in pairs)
    return gen


def _covered_rigid(m: int, n: int) -> bool:
    """Unbalanced bicliques for which a rigid orientation is known to exist."""
    if m >= 5:
        return n <= (1 << m) - (m + 1) // 2
    return (m, n) in {(2, 3), (3, 4), (3, 5), (3, 6)} or (m == 4 and 5 <= n <= 13)


def _table1_unbalanced(m: int, n: int):
    rigid = _covered_rigid(m, n)
    return 2, n, m + n, 1 if rigid else None, n, 2 if rigid else None, m + n


def _biclique_index(m: int, n: int) -> int | None:
    res = biclique_index_formula(m, n)
    return None if isinstance(res, Ambiguous) else res.value


def _table2_unbalanced(m: int, n: int):
    rigid = _covered_rigid(m, n)
    d = _biclique_index(m, n)
    return n, d, n, 1 if rigid else None, d, n if rigid else None, n


TABLE1 = [
    _row(1, 1, "P_2n, n>=1", _paths(0, 2), lambda k: (2, 2, 2, 1, 1, 2, 2)),
    _row(1, 2, "P_2n+1, n>=1", _paths(1, 3), lambda k: (2, 2, 3, 1, 2, 2, 3)),
    _row(1, 3, "C_4", _cycles(0, only=4), lambda k: (2, 3, 4, 1, 2, 2, 4)),
    _row(1, 4, "C_5", _cycles(0, only=5), lambda k: (3, 3, 3, 1, 2, 3, 3)),
    _row(1, 5, "C_6", _cycles(0, only=6), lambda k: (2, 2, 4, 1, 2, 2, 3)),
    _row(1, 6, "C_2n, n>=4", _cycles(8), lambda k: (2, 2, 3, 1, 2, 2, 3)),
    _row(1, 7, "C_2n+1, n>=3", _cycles(7), lambda k: (3, 2, 3, 1, 2, 3, 3)),
    _row(1, 8, "K_n, n>=3", _completes(3), lambda k: (k, k, k, 1, 2, k, k)),
    _row(1, 9, "K_1,n, n>=2", _stars(2), lambda one, k: (2, k, k + 1, ceil_div(k, 2), k, 1 + ceil_div(k, 2), k + 1)),
    _row(1, 10, "K_n,n, n>=2", _balanced(2), lambda k, _: (2, k + 1, 2 * k, 1, k, 2, 2 * k)),
    _row(1, 11, "K_m,n, n>m>=2", _unbalanced(), _table1_unbalanced),
]

TABLE2 = [
    _row(2, 1, "P_2n, n>=2", _paths(0, 4), lambda k: (2, 2, 3, 1, 1, 2, 2)),
    _row(2, 2, "P_2n+1, n>=1", _paths(1, 3), lambda k: (2, 2, 2, 1, 2, 2, 2)),
    _row(2, 3, "C_4", _cycles(0, only=4), lambda k: (2, 3, 4, 1, 2, 2, 3)),
    _row(2, 4, "C_5", _cycles(0, only=5), lambda k: (3, 3, 3, 1, 2, 3, 3)),
    _row(2, 5, "C_6", _cycles(0, only=6), lambda k: (2, 2, 4, 1, 2, 2, 3)),
    _row(2, 6, "C_2n, n>=4", _cycles(8), lambda k: (2, 2, 3, 1, 2, 2, 3)),
    _row(2, 7, "C_2n+1, n>=3", _cycles(7), lambda k: (3, 2, 3, 1, 2, 3, 3)),
    _row(2, 8, "K_3", _completes(0, only=3), lambda k: (3, 3, 3, 1, 2, 3, 3)),
    _row(2, 9, "K_4", _completes(0, only=4), lambda k: (3, 3, 5, 1, 2, 3, 3)),
    _row(2, 10, "K_5", _completes(0, only=5), lambda k: (5, 3, 5, 1, 2, 5, 5)),
    _row(2, 11, "K_2n, n>=3", _completes(6, 2), lambda k: (k - 1, 2, k - 1, 1, 2, k - 1, k - 1)),
    _row(2, 12, "K_2n+1, n>=3", _completes(7, 2), lambda k: (k, 2, k, 1, 2, k, k)),
    _row(2, 13, "K_1,n, n>=3", _stars(3), lambda one, k: (k, k, k, ceil_div(k, 2), k, k, k)),
    _row(2, 14, "K_3,3", _only("biclique:3,3", 9), lambda k, _: (3, 3, 5, 1, 2, 3, 4)),
    _row(2, 15, "K_n,n, 4<=n<=6", _balanced(4, 6), lambda k, _: (k, 2, k + 1, 1, 2, k, k + 1)),
    _row(2, 16, "K_n,n, n>=7", _balanced(7), lambda k, _: (k, 2, k + 1, 1, 2, k, k)),
    _row(2, 17, "K_m,n, n>m>=2", _unbalanced(), _table2_unbalanced),
]

TABLES = {1: TABLE1, 2: TABLE2}


def parse_rows(text: str, table: int) -> list[int]:
    """``all``, ``3``, ``1-5`` or ``1-3,7,9-10``."""
    known = [r.row for r in TABLES[table]]
    if text.strip().lower() == "all":
        return known
    rows: set[int] = set()
    try:
        for part in text.split(","):
            a, sep, b = part.strip().partition("-")
            lo = int(a)
            hi = int(b) if sep else lo
            rows.update(range(lo, hi + 1))
    except ValueError:
        raise InvalidInputError(f"bad row range {text!r}") from None
    unknown = sorted(rows - set(known))
    if unknown:
        raise InvalidInputError(f"table {table} has no rows {unknown}")
    return sorted(rows)


def instances(row: Row, max_size: int, count: int = 3) -> list[str]:
    out = []
    for spec, edges in row.sizes():
        if edges > max_size:
            break
        out.append(spec)
        if len(out) == count:
            break
    return out


def compute_instance(table: int, row_id: int, spec: str, caps: Caps | None = None) -> TableRow:
    caps = resolve(caps)
    row = next(r for r in TABLES[table] if r.row == row_id)
    g = build_family(spec, caps)
    cols = COLUMNS[table]
    plain, proper = KINDS[table]
    result = TableRow(table, row_id, row.label, spec, row.expected(spec))
    chi, chi_prime = classical_bounds(g, caps)
    result.computed[cols[0]] = chi if table == 1 else chi_prime
    result.computed[cols[1]] = graph_parameter_value(g, plain, caps)[0]
    result.computed[cols[2]] = graph_parameter_value(g, proper, caps)[0]
    for col, kind, direction in (
        (cols[3], plain, MIN),
        (cols[4], plain, MAX),
        (cols[5], proper, MIN),
        (cols[6], proper, MAX),
    ):
        res = extremal(g, kind, direction, caps)
        result.computed[col] = res.value
        result.witnesses[col] = str(res.witness_mask)
    return result


def _task(args: tuple[int, int, str, Caps]) -> TableRow:
    return compute_instance(*args)


def plan(table: int, rows: Iterable[int], max_size: int, explicit: bool) -> list[tuple[int, str]]:
    """(row, instance) pairs to compute; an explicitly requested row with no instance is a cap error."""
    tasks = []
    for row_id in rows:
        row = next(r for r in TABLES[table] if r.row == row_id)
        found = instances(row, max_size)
        if not found and explicit:
            raise ResourceCapError(f"table {table} row {row_id} has no instance with at most {max_size} edges")
        tasks += [(row_id, spec) for spec in found]
    return tasks


def verify_table(
    table: int,
    rows: Iterable[int] | None = None,
    max_size: int = 12,
    jobs: int = 1,
    caps: Caps | None = None,
) -> list[TableRow]:
    if table not in TABLES:
        raise InvalidInputError("table must be 1 or 2")
    caps = resolve(caps)
    explicit = rows is not None
    rows = [r.row for r in TABLES[table]] if rows is None else list(rows)
    tasks = [(table, row_id, spec, caps) for row_id, spec in plan(table, rows, max_size, explicit)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_task, tasks))
    else:
        results = [_task(t) for t in tasks]
    return results  # already in (row, size) order
