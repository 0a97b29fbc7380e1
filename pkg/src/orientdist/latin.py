"""Latin squares, autotopisms and the search for asymmetric squares.

Symbols are ``1..n``; rows and columns are 0-based. An autotopism is a triple
``(α, β, γ)`` of row, column and symbol permutations with
``L[α(i)][β(j)] = γ(L[i][j])`` for all cells.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

from .config import InvalidInputError

Triple = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class LatinSquare:
    n: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        cells = tuple(tuple(int(x) for x in row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        full = set(range(1, self.n + 1))
        if self.n < 1 or len(cells) != self.n or any(len(row) != self.n for row in cells):
            raise InvalidInputError("a Latin square of order n needs n rows of n symbols")
        if any(set(row) != full for row in cells) or any(
            {row[j] for row in cells} != full for j in range(self.n)
        ):
            raise InvalidInputError("every row and column must be a permutation of 1..n")

    @classmethod
    def parse(cls, text: str) -> "LatinSquare":
        rows = [tuple(int(x) for x in line.split()) for line in text.strip().splitlines() if line.strip()]
        return cls(len(rows), tuple(rows))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.cells)


def cyclic_square(n: int) -> LatinSquare:
    return LatinSquare(n, tuple(tuple((i + j) % n + 1 for j in range(n)) for i in range(n)))


def apply_isotopy(L: LatinSquare, alpha: Sequence[int], beta: Sequence[int], gamma: Sequence[int]) -> LatinSquare:
    """The square M with M[α(i)][β(j)] = γ(L[i][j]); γ acts on 0-based symbol indices."""
    n = L.n
    cells = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cells[alpha[i]][beta[j]] = gamma[L.cells[i][j] - 1] + 1
    return LatinSquare(n, tuple(tuple(row) for row in cells))


def is_autotopism(L: LatinSquare, alpha: Sequence[int], beta: Sequence[int], gamma: Sequence[int]) -> bool:
    c = L.cells
    return all(
        c[alpha[i]][beta[j]] == gamma[c[i][j] - 1] + 1 for i in range(L.n) for j in range(L.n)
    )


def autotopisms(L: LatinSquare) -> Iterator[Triple]:
    """Every autotopism, α in lexicographic order.

    Given α and β(0), column 0 forces γ (it holds every symbol) and row α(0)
    then forces β; the triple is kept only if it checks out on all cells.
    """
    n, c = L.n, L.cells
    where = [{c[i][j]: j for j in range(n)} for i in range(n)]  # column of each symbol per row
    for alpha in permutations(range(n)):
        for b0 in range(n):
            gamma = [0] * n
            for i in range(n):
                gamma[c[i][0] - 1] = c[alpha[i]][b0] - 1
            if len(set(gamma)) != n:
                continue
            row = where[alpha[0]]
            beta = tuple(row[gamma[c[0][j] - 1] + 1] for j in range(n))
            if is_autotopism(L, alpha, beta, gamma):
                yield alpha, beta, tuple(gamma)


def find_autotopism(L: LatinSquare) -> Triple | None:
    """A non-trivial autotopism, or None when the square is asymmetric."""
    ident = tuple(range(L.n))
    for triple in autotopisms(L):
        if triple != (ident, ident, ident):
            return triple
    return None


def is_asymmetric_latin(L: LatinSquare) -> bool:
    return find_autotopism(L) is None


def reduced_squares(n: int) -> Iterator[LatinSquare]:
    """All Latin squares of order n with first row and first column 1..n."""
    if n < 1:
        raise InvalidInputError("order must be at least 1")
    cells = [[0] * n for _ in range(n)]
    for j in range(n):
        cells[0][j] = j + 1
    for i in range(n):
        cells[i][0] = i + 1
    row_used = [set(cells[i][:1]) if i else set(range(1, n + 1)) for i in range(n)]
    col_used = [set(range(1, n + 1)) if j == 0 else {j + 1} for j in range(n)]
    order = [(i, j) for i in range(1, n) for j in range(1, n)]

    def rec(k: int) -> Iterator[LatinSquare]:
        if k == len(order):
            yield LatinSquare(n, tuple(tuple(row) for row in cells))
            return
        i, j = order[k]
        for s in range(1, n + 1):
            if s in row_used[i] or s in col_used[j]:
                continue
            cells[i][j] = s
            row_used[i].add(s)
            col_used[j].add(s)
            yield from rec(k + 1)
            row_used[i].discard(s)
            col_used[j].discard(s)
        cells[i][j] = 0

    yield from rec(0)


def exhaustive_asymmetric(n: int) -> LatinSquare | None:
    """Search every reduced square; isotopy keeps the autotopism group size, so this is complete."""
    for L in reduced_squares(n):
        if is_asymmetric_latin(L):
            return L
    return None


def random_square(n: int, rng: random.Random) -> LatinSquare:
    """Cell-by-cell backtracking with a shuffled symbol order at every cell."""
    cells = [[0] * n for _ in range(n)]
    row_used = [set() for _ in range(n)]
    col_used = [set() for _ in range(n)]

    def rec(k: int) -> bool:
        if k == n * n:
            return True
        i, j = divmod(k, n)
        symbols = list(range(1, n + 1))
        rng.shuffle(symbols)
        for s in symbols:
            if s in row_used[i] or s in col_used[j]:
                continue
            cells[i][j] = s
            row_used[i].add(s)
            col_used[j].add(s)
            if rec(k + 1):
                return True
            row_used[i].discard(s)
            col_used[j].discard(s)
        cells[i][j] = 0
        return False

    rec(0)
    return LatinSquare(n, tuple(tuple(row) for row in cells))


def find_asymmetric_latin_square(
    n: int, budget: int = 100_000, seed: int = 0, exhaustive_order_6: bool = False
) -> LatinSquare | None:
    """An asymmetric Latin square of order n, or None.

    Orders 2..5 are settled by exhaustive search (none exist); order 1 is
    excluded as degenerate. Order 6 and above use seeded random squares, up to
    ``budget`` attempts, unless ``exhaustive_order_6`` asks for the complete
    (slow) search at order 6.
    """
    if n < 1:
        raise InvalidInputError("order must be at least 1")
    if n == 1:
        return None
    if n <= 5 or (n == 6 and exhaustive_order_6):
        return exhaustive_asymmetric(n)
    rng = random.Random(seed)
    for _ in range(budget):
        L = random_square(n, rng)
        if is_asymmetric_latin(L):
            return L
    return None
