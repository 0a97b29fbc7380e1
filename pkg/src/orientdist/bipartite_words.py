"""Binary-word descriptions of orientations of K_{m,n}.

The word of a Y-vertex has one symbol per X-vertex, in X order: ``0`` when
the arc runs x -> y, ``1`` when it runs y -> x. A twin-free orientation is the
canonical orientation of K_{m,2^m} (all 2^m words, increasing binary order)
with some words deleted, so it is described by its deleted set.

All indices in this module are 0-based: X-vertex ``j`` is vertex ``j`` and
word position ``j``; Y-vertex ``i`` is vertex ``m + i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .automorphism import (
    Permutation,
    is_automorphism,
    is_distinguishing,
    is_rigid,
    transposition,
)
from .config import Caps, InvalidInputError, ResourceCapError, resolve
from .graph_core import (
    VERTEX,
    Labelling,
    OrientedGraph,
    biclique,
    is_proper,
    orient,
)


def _check_word(word: str, m: int) -> None:
    if len(word) != m or any(c not in "01" for c in word):
        raise InvalidInputError(f"{word!r} is not a binary word of length {m}")


def all_words(m: int) -> list[str]:
    return [format(v, f"0{m}b") for v in range(1 << m)] if m else [""]


def complement(word: str) -> str:
    return "".join("1" if c == "0" else "0" for c in word)


def flip(word: str, *positions: int) -> str:
    chars = list(word)
    for p in positions:
        chars[p] = "1" if chars[p] == "0" else "0"
    return "".join(chars)


@dataclass(frozen=True)
class WordSet:
    m: int
    words: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "words", tuple(self.words))
        for w in self.words:
            _check_word(w, self.m)

    @property
    def n(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class DeletedWordSet:
    m: int
    deleted: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "deleted", tuple(self.deleted))
        for w in self.deleted:
            _check_word(w, self.m)
        if len(set(self.deleted)) != len(self.deleted):
            raise InvalidInputError("deleted words must be distinct")

    @classmethod
    def parse(cls, m: int, text: str) -> "DeletedWordSet":
        words = [w.strip() for w in text.split(",") if w.strip()]
        return cls(m, tuple(words))

    @property
    def n(self) -> int:
        return (1 << self.m) - len(self.deleted)

    def remaining(self) -> list[str]:
        gone = set(self.deleted)
        return [w for w in all_words(self.m) if w not in gone]

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(int(w[j]) for w in self.deleted) for j in range(self.m))

    def __str__(self) -> str:
        return ",".join(self.deleted)


def orientation_from_words(ws: WordSet, caps: Caps | None = None) -> OrientedGraph:
    m, n = ws.m, ws.n
    g = biclique(m, n, caps)
    # edge (x_j, y_i) sits at index j*n + i and its bit is exactly b^j_i
    mask = "".join(ws.words[i][j] for j in range(m) for i in range(n))
    return orient(g, mask)


def _parts(og: OrientedGraph) -> tuple[int, int]:
    if og.parts is None:
        raise InvalidInputError("not an orientation of a biclique with declared parts")
    return og.parts


def words_of(og: OrientedGraph) -> WordSet:
    m, n = _parts(og)
    words = tuple(
        "".join("1" if og.has_arc(m + i, j) else "0" for j in range(m)) for i in range(n)
    )
    return WordSet(m, words)


def canonical_orientation(m: int, caps: Caps | None = None) -> OrientedGraph:
    caps = resolve(caps)
    if m < 1:
        raise InvalidInputError("m must be at least 1")
    if m > caps.max_canonical_m:
        raise ResourceCapError(f"canonical orientation capped at m={caps.max_canonical_m}")
    return orientation_from_words(WordSet(m, tuple(all_words(m))), caps)


def from_deleted_words(dw: DeletedWordSet, caps: Caps | None = None) -> OrientedGraph:
    if len(dw.deleted) >= 1 << dw.m:
        raise InvalidInputError("cannot delete every word")
    return orientation_from_words(WordSet(dw.m, tuple(dw.remaining())), caps)


def in_degree_from_deleted(dw: DeletedWordSet, i: int) -> int:
    """In-degree of x_i read off the deleted words alone."""
    if not 0 <= i < dw.m:
        raise InvalidInputError(f"X index {i} out of range 0..{dw.m - 1}")
    return (1 << (dw.m - 1)) - sum(int(w[i]) for w in dw.deleted)


def full_twins(og: OrientedGraph) -> list[tuple[int, int]]:
    """Pairs of Y-vertices with identical words, as vertex indices."""
    m, _ = _parts(og)
    words = words_of(og).words
    return [
        (m + a, m + b) for a, b in combinations(range(len(words)), 2) if words[a] == words[b]
    ]


def full_antitwins(og: OrientedGraph) -> list[tuple[int, int]]:
    m, _ = _parts(og)
    words = words_of(og).words
    return [
        (m + a, m + b)
        for a, b in combinations(range(len(words)), 2)
        if words[a] == complement(words[b])
    ]


def pair_antitwins(og: OrientedGraph, x: int, x2: int) -> list[tuple[int, int]]:
    """Y-pairs closing a directed 4-cycle through x and x2 and agreeing elsewhere."""
    m, _ = _parts(og)
    if not (0 <= x < m and 0 <= x2 < m) or x == x2:
        raise InvalidInputError(f"need two distinct X indices in 0..{m - 1}")
    words = words_of(og).words
    out = []
    for a, b in combinations(range(len(words)), 2):
        wa, wb = words[a], words[b]
        if wa[x] != wa[x2] and wb == flip(wa, x, x2):
            out.append((m + a, m + b))
    return out


def twin_transposition(og: OrientedGraph) -> Permutation | None:
    """The swap of two full twins, if any exist (checked on Y, then on X)."""
    m, n = _parts(og)
    pairs = full_twins(og)
    if not pairs:
        for a, b in combinations(range(m), 2):
            if og.out_bits[a] == og.out_bits[b]:
                pairs = [(a, b)]
                break
    if not pairs:
        return None
    p = transposition(m + n, pairs[0])
    assert is_automorphism(og, p)
    return p


def equal_columns(dw: DeletedWordSet) -> tuple[int, int] | None:
    """First pair of positions on which every deleted word agrees."""
    for i, i2 in combinations(range(dw.m), 2):
        if all(w[i] == w[i2] for w in dw.deleted):
            return i, i2
    return None


def column_equal_automorphism(
    dw: DeletedWordSet, i: int, i2: int, caps: Caps | None = None
) -> Permutation:
    """Swap x_i, x_i2 together with every {x_i, x_i2}-antitwin pair."""
    m = dw.m
    if not (0 <= i < m and 0 <= i2 < m) or i == i2:
        raise InvalidInputError(f"need two distinct positions in 0..{m - 1}")
    if any(w[i] != w[i2] for w in dw.deleted):
        raise InvalidInputError(f"some deleted word differs at positions {i} and {i2}")
    og = from_deleted_words(dw, caps)
    words = dw.remaining()
    where = {w: m + k for k, w in enumerate(words)}
    swaps = [(i, i2)]
    for w in words:
        if w[i] == "0" and w[i2] == "1":
            swaps.append((where[w], where[flip(w, i, i2)]))
    assert len(swaps) - 1 == 1 << (m - 2)
    p = transposition(m + len(words), *swaps)
    if not is_automorphism(og, p):
        raise AssertionError("column swap failed to give an automorphism")
    return p


# ---------------------------------------------------------------------------
# explicit deleted sets
# ---------------------------------------------------------------------------


def _ceil_half(m: int) -> int:
    return (m + 1) // 2


def rigid_deleted_set(m: int, k: int) -> DeletedWordSet:
    """A size-k deleted set (m >= 5) whose orientation of K_{m,2^m-k} is rigid.

    The core words leave only the X-pairs (x_{2i-1}, x_{2i}) (1-based) with
    equal in-degrees, and each core word blocks the swap of one such pair
    through an antitwin partner that stays present. Padding adds full-antitwin
    pairs (in increasing order of the smaller word, avoiding 0^m/1^m and words
    already used), plus 0^m when the padding count is odd.
    """
    half = _ceil_half(m)
    if m < 5 or not half <= k < (1 << m) - m:
        raise InvalidInputError(f"need m >= 5 and {half} <= k < {(1 << m) - m}")
    core = ["00" + "1" * (m - 2)]
    for i in range(2, half):
        core.append("0" * (2 * i - 3) + "100" + "1" * (m - 2 * i))
    core.append("0" * (m - 2) + "10" if m % 2 else "0" * (m - 3) + "101")
    p = k - half
    words = list(core)
    used = set(core) | {complement(w) for w in core}
    for w in all_words(m)[1 : 1 << (m - 1)]:
        if len(words) >= k - p % 2:
            break
        if w in used:
            continue
        words += [w, complement(w)]
    if p % 2:
        words.append("0" * m)
    if len(words) != k:
        raise AssertionError("ran out of antitwin pairs")
    return DeletedWordSet(m, tuple(words))


_M3_SETS = {4: ("110", "010", "000", "111"), 5: ("110", "010", "000"), 6: ("110", "010")}
_M4_CORE = ("1110", "1100", "1000")


def small_deleted_set(m: int, n: int) -> DeletedWordSet | None:
    """The hand-made rigid deleted sets for m = 3 and m = 4, if (m, n) is covered."""
    if m == 3 and n in _M3_SETS:
        return DeletedWordSet(3, _M3_SETS[n])
    if m == 4 and 5 <= n <= 13:
        words = list(_M4_CORE)
        used = set(words) | {complement(w) for w in words}
        pairs = [w for w in all_words(4)[1:8] if w not in used]
        for w in pairs[: (13 - n) // 2]:
            words += [w, complement(w)]
        if n % 2 == 0:
            words.append("0000")
        return DeletedWordSet(4, tuple(words))
    return None


def staircase_orientation(n: int, caps: Caps | None = None) -> OrientedGraph:
    """K_{n,n} with x_i -> y_j exactly when j <= i (1-based)."""
    g = biclique(n, n, caps)
    return orient(g, "".join("1" if j > i else "0" for i in range(n) for j in range(n)))


# a rigid orientation of K_{2,3}: words 00, 01, 11
K23_RIGID_WORDS = ("00", "01", "11")


# ---------------------------------------------------------------------------
# rigidity decision for K_{m,n}
# ---------------------------------------------------------------------------

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class RigidityResult:
    status: str
    reason: str
    m: int
    n: int
    witness: OrientedGraph | None = None
    deleted: DeletedWordSet | None = None
    example: OrientedGraph | None = None  # a non-rigid orientation, for No results
    automorphism: Permutation | None = None  # non-trivial automorphism of ``example``
    candidates_checked: int = 0


def _yes(m: int, n: int, reason: str, og: OrientedGraph, dw: DeletedWordSet | None, caps: Caps, checked: int = 0) -> RigidityResult:
    if not is_rigid(og, caps):
        raise AssertionError(f"construction for K_{{{m},{n}}} is not rigid")
    return RigidityResult(YES, reason, m, n, witness=og, deleted=dw, candidates_checked=checked)


def rigid_orientation_exists(
    m: int, n: int, budget: int = 200_000, caps: Caps | None = None
) -> RigidityResult:
    """Decide whether K_{m,n} has a rigid orientation, with a certificate when possible."""
    caps = resolve(caps)
    if m < 1 or n < 1:
        raise InvalidInputError("need m, n >= 1")
    if budget < 0:
        raise InvalidInputError("budget must be non-negative")
    m, n = min(m, n), max(m, n)
    if m == n:
        return _yes(m, n, "staircase", staircase_orientation(n, caps), None, caps)
    if n > 1 << m:
        words = all_words(m) + [all_words(m)[0]] * (n - (1 << m))
        example = orientation_from_words(WordSet(m, tuple(words)), caps)
        return RigidityResult(
            NO, "twins", m, n, example=example, automorphism=twin_transposition(example)
        )
    if m == 1:  # n = 2: a directed path on three vertices
        return _yes(m, n, "directed path", orient(biclique(1, 2, caps), "01"), None, caps)
    k = (1 << m) - n
    if m >= 3 and (1 << k) < m:
        dw = DeletedWordSet(m, tuple(all_words(m)[:k]))
        i, i2 = equal_columns(dw)
        return RigidityResult(
            NO,
            "equal columns",
            m,
            n,
            example=from_deleted_words(dw, caps),
            automorphism=column_equal_automorphism(dw, i, i2, caps),
            deleted=dw,
        )
    if (m, n) == (2, 4):
        example = canonical_orientation(2, caps)
        return RigidityResult(NO, "K_{2,4} swap", m, n, example=example, automorphism=(1, 0, 2, 4, 3, 5))
    if (m, n) == (2, 3):
        return _yes(m, n, "K_{2,3} construction", orientation_from_words(WordSet(2, K23_RIGID_WORDS), caps), None, caps)
    dw = small_deleted_set(m, n)
    if dw is None and m >= 5 and _ceil_half(m) <= k < (1 << m) - m:
        dw = rigid_deleted_set(m, k)
    if dw is not None:
        return _yes(m, n, "deleted-word construction", from_deleted_words(dw, caps), dw, caps)
    return _search(m, n, k, budget, caps)


def _search(m: int, n: int, k: int, budget: int, caps: Caps) -> RigidityResult:
    """Exhaust deleted sets of size k up to column permutation (sorted column sums)."""
    checked = 0
    for combo in combinations(all_words(m), k):
        if checked >= budget:
            return RigidityResult(UNKNOWN, "search budget exhausted", m, n, candidates_checked=checked)
        checked += 1
        dw = DeletedWordSet(m, combo)
        sums = dw.column_sums()
        if any(sums[j] > sums[j + 1] for j in range(m - 1)):
            continue
        if equal_columns(dw) is not None:
            continue
        og = from_deleted_words(dw, caps)
        if is_rigid(og, caps):
            return _yes(m, n, "search", og, dw, caps, checked)
    return RigidityResult(NO, "exhaustive search", m, n, candidates_checked=checked)


# ---------------------------------------------------------------------------
# orientation with cycling Y out-degrees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CyclingConstruction:
    orientation: OrientedGraph
    labelling: Labelling  # ceil(n/(m-1)) labels
    proper_labelling: Labelling  # one extra label on X


def degree_cycling_orientation(m: int, n: int, caps: Caps | None = None) -> CyclingConstruction:
    """K_{m,n} with d+(y_j) = 1 + (j mod (m-1)) and N+(y_{i(m-1)}) = {x_i} (1-based j, i).

    Each out-degree class of Y gets pairwise distinct labels and the special
    Y-vertices pin down X, so the labelling and its proper variant are
    distinguishing. Both facts are re-verified before returning.
    """
    caps = resolve(caps)
    if not (2 <= m < n) or n < m * (m - 1):
        raise InvalidInputError("need 2 <= m < n and n >= m(m-1)")
    words = []
    for j in range(1, n + 1):
        if j <= m * (m - 1) and j % (m - 1) == 0:
            outs = {j // (m - 1) - 1}
        else:
            outs = set(range(1 + j % (m - 1)))
        words.append("".join("1" if x in outs else "0" for x in range(m)))
    og = orientation_from_words(WordSet(m, tuple(words)), caps)
    y_labels = [1 + (j - 1) // (m - 1) for j in range(1, n + 1)]
    r = max(y_labels)
    lab = Labelling(VERTEX, tuple([1] * m + y_labels), r)
    proper = Labelling(VERTEX, tuple([r + 1] * m + y_labels), r + 1)
    if not is_distinguishing(og, lab, caps) or not is_distinguishing(og, proper, caps):
        raise AssertionError("cycling construction is not distinguishing")
    if not is_proper(og, proper):
        raise AssertionError("cycling colouring is not proper")
    return CyclingConstruction(og, lab, proper)


def serialize_words(words: Iterable[str]) -> str:
    return ",".join(words)


def y_name(og: OrientedGraph, v: int) -> str:
    m, _ = _parts(og)
    return f"x{v + 1}" if v < m else f"y{v - m + 1}"


def name_pairs(og: OrientedGraph, pairs: Sequence[tuple[int, int]]) -> list[str]:
    return [f"{{{y_name(og, a)},{y_name(og, b)}}}" for a, b in pairs]
