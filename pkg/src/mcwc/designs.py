"""Skew almost-resolvable squares, their holey and frame variants, group
divisible designs, and the translations between squares and distance-6 codes.

A square is an s x s array over row/column index set [0, s) whose cells are
either empty or hold an unordered pair of points from [0, v).  The four kinds
differ in their resolvability requirement:

* ``sas``   every row i together with column i partitions all points but one;
* ``sas*``  as ``sas`` except one index misses three distinct points;
* ``hsas``  a hole T x T is empty, hole rows partition the points outside a
  point hole W, other rows partition all points but one, and no pair inside
  W occurs anywhere;
* ``sfs``   rows and points are partitioned in parallel into holes; row
  indices of hole i partition the points outside point-hole i, and no pair
  inside a point-hole occurs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .core import (
    CodeParameters,
    ConstructionError,
    DomainError,
    FormatError,
    IngredientError,
    PartitionedCode,
    ShapeError,
    VerificationReport,
    _content_lines,
    verify_mcwc,
)


class SquareKind(str, Enum):
    SAS = "sas"
    SAS_STAR = "sas*"
    HSAS = "hsas"
    SFS = "sfs"


Cell = tuple[int, int]
Pair = frozenset  # of two point indices


@dataclass(frozen=True)
class SkewSquare:
    kind: SquareKind
    s: int
    v: int
    cells: dict[Cell, Pair] = field(compare=False)
    hole_rows: frozenset[int] = frozenset()
    hole_points: frozenset[int] = frozenset()
    row_parts: tuple[tuple[int, ...], ...] = ()
    point_parts: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def build(
        cls,
        kind: Union[SquareKind, str],
        s: int,
        v: int,
        cells: Mapping[Cell, Iterable[int]],
        *,
        hole_rows: Iterable[int] = (),
        hole_points: Iterable[int] = (),
        row_parts: Iterable[Iterable[int]] = (),
        point_parts: Iterable[Iterable[int]] = (),
    ) -> "SkewSquare":
        kind = SquareKind(kind)
        frozen = {
            (int(i), int(j)): frozenset(int(p) for p in pair)
            for (i, j), pair in cells.items()
        }
        return cls(
            kind,
            int(s),
            int(v),
            frozen,
            frozenset(int(i) for i in hole_rows),
            frozenset(int(p) for p in hole_points),
            tuple(tuple(sorted(int(i) for i in part)) for part in row_parts),
            tuple(tuple(sorted(int(p) for p in part)) for part in point_parts),
        )

    @property
    def num_cells(self) -> int:
        return len(self.cells)

    def sfs_type(self) -> tuple[tuple[int, int], ...]:
        """Sorted multiset of (rows, points) hole sizes of an SFS."""
        if self.kind is not SquareKind.SFS:
            raise ShapeError("sfs_type is defined for SFS squares only")
        return tuple(sorted((len(r), len(p)) for r, p in zip(self.row_parts, self.point_parts)))


def sfs_type_key(pairs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Canonical lookup key for an SFS type: the sorted (rows, points) multiset."""
    return tuple(sorted((int(a), int(b)) for a, b in pairs))


def _row_col_pairs(sq: SkewSquare, index: int) -> list[Pair]:
    pairs = []
    for (i, j), pair in sq.cells.items():
        if i == index or j == index:
            pairs.append(pair)
    return pairs


def _partition_target(pairs: list[Pair]) -> Optional[set[int]]:
    """Union of the pairs if they are pairwise disjoint, else None."""
    seen: set[int] = set()
    for pair in pairs:
        for p in pair:
            if p in seen:
                return None
            seen.add(p)
    return seen


def verify_square(sq: SkewSquare) -> VerificationReport:
    """Check every defining property of the square's kind; the report names
    the first violated property and the offending index or cell."""

    def fail(msg: str) -> VerificationReport:
        return VerificationReport(False, msg)

    if sq.s <= 0 or sq.v <= 0:
        return fail("side and point count must be positive")

    for (i, j), pair in sq.cells.items():
        if not (0 <= i < sq.s and 0 <= j < sq.s):
            return fail(f"cell ({i},{j}) outside the {sq.s}x{sq.s} array")
        if len(pair) != 2:
            return fail(f"cell ({i},{j}) does not hold a pair of two distinct points")
        if any(not 0 <= p < sq.v for p in pair):
            return fail(f"cell ({i},{j}) holds a point outside [0, {sq.v})")

    # kind-specific structure metadata
    if sq.kind is SquareKind.HSAS:
        if not sq.hole_rows or not sq.hole_points:
            return fail("an HSAS needs non-empty hole rows and hole points")
        if not all(0 <= i < sq.s for i in sq.hole_rows):
            return fail("hole rows outside the array")
        if not all(0 <= p < sq.v for p in sq.hole_points):
            return fail("hole points outside the point set")
    elif sq.kind is SquareKind.SFS:
        rows = sorted(itertools.chain(*sq.row_parts))
        points = sorted(itertools.chain(*sq.point_parts))
        if rows != list(range(sq.s)):
            return fail("row parts do not partition the row index set")
        if points != list(range(sq.v)):
            return fail("point parts do not partition the point set")
        if len(sq.row_parts) != len(sq.point_parts):
            return fail("row and point partitions must have the same number of holes")

    # property 1: skewness
    for (i, j) in sq.cells:
        if i != j and (j, i) in sq.cells:
            return fail(f"skewness violated: both ({i},{j}) and ({j},{i}) are filled")

    # property 2: empty diagonal / empty hole subarray
    for (i, j) in sq.cells:
        if i == j:
            return fail(f"diagonal cell ({i},{i}) is filled")
    if sq.kind is SquareKind.HSAS:
        for (i, j) in sq.cells:
            if i in sq.hole_rows and j in sq.hole_rows:
                return fail(f"hole cell ({i},{j}) is filled")
    if sq.kind is SquareKind.SFS:
        part_of = {}
        for k, part in enumerate(sq.row_parts):
            for i in part:
                part_of[i] = k
        for (i, j) in sq.cells:
            if part_of[i] == part_of[j]:
                return fail(f"cell ({i},{j}) lies inside hole {part_of[i]}")

    # property 3: every pair of points at most once
    seen_pairs: dict[Pair, Cell] = {}
    for cell, pair in sq.cells.items():
        if pair in seen_pairs:
            return fail(
                f"pair {set(pair)} appears in cells {seen_pairs[pair]} and {cell}"
            )
        seen_pairs[pair] = cell

    # property 4 for the holey kinds: no pair inside a point hole
    if sq.kind is SquareKind.HSAS:
        for cell, pair in sq.cells.items():
            if pair <= sq.hole_points:
                return fail(f"cell {cell} pairs two hole points {set(pair)}")
    if sq.kind is SquareKind.SFS:
        ppart_of = {}
        for k, part in enumerate(sq.point_parts):
            for p in part:
                ppart_of[p] = k
        for cell, pair in sq.cells.items():
            a, b = sorted(pair)
            if ppart_of[a] == ppart_of[b]:
                return fail(f"cell {cell} pairs two points of hole {ppart_of[a]}")

    # resolvability
    if sq.kind in (SquareKind.SAS, SquareKind.SAS_STAR):
        starred = []
        for i in range(sq.s):
            union = _partition_target(_row_col_pairs(sq, i))
            if union is None:
                return fail(f"row/column {i}: a point is covered twice")
            if len(union) == sq.v - 1:
                continue
            if sq.kind is SquareKind.SAS_STAR and len(union) == sq.v - 3:
                starred.append(i)
                continue
            return fail(
                f"row/column {i} covers {len(union)} points, not a partition of"
                f" the point set minus {'one point' if sq.kind is SquareKind.SAS else 'one or three points'}"
            )
        if sq.kind is SquareKind.SAS_STAR and len(starred) != 1:
            return fail(
                f"expected exactly one deficient row/column, found {starred or 'none'}"
            )
    elif sq.kind is SquareKind.HSAS:
        outside = frozenset(range(sq.v)) - sq.hole_points
        for i in range(sq.s):
            union = _partition_target(_row_col_pairs(sq, i))
            if union is None:
                return fail(f"row/column {i}: a point is covered twice")
            if i in sq.hole_rows:
                if union != outside:
                    return fail(
                        f"hole row/column {i} does not partition the points outside the hole"
                    )
            elif len(union) != sq.v - 1:
                return fail(
                    f"row/column {i} covers {len(union)} points, expected {sq.v - 1}"
                )
    elif sq.kind is SquareKind.SFS:
        all_points = frozenset(range(sq.v))
        for k, part in enumerate(sq.row_parts):
            outside = all_points - frozenset(sq.point_parts[k])
            for i in part:
                union = _partition_target(_row_col_pairs(sq, i))
                if union is None:
                    return fail(f"row/column {i}: a point is covered twice")
                if union != outside:
                    return fail(
                        f"row/column {i} of hole {k} does not partition the points"
                        f" outside point-hole {k}"
                    )
    return VerificationReport(True)


# ---------------------------------------------------------------------------
# Squares <-> codes with two blocks of weight 2 and distance 6
# ---------------------------------------------------------------------------


def square_to_mcwc(sq: SkewSquare) -> PartitionedCode:
    """One codeword per filled cell (i, j) holding {a, b}: the support is
    {a, b, v+i, v+j} inside parameters (2; v, s; 2, 2; 6)."""
    if sq.kind not in (SquareKind.SAS, SquareKind.SAS_STAR):
        raise ShapeError("only sas and sas* squares translate to codes directly")
    report = verify_square(sq)
    if not report:
        raise ConstructionError(f"invalid square: {report.violation}")
    params = CodeParameters((sq.v, sq.s), (2, 2), 6)
    supports = [
        sorted(pair) + [sq.v + i, sq.v + j] for (i, j), pair in sorted(sq.cells.items())
    ]
    code = PartitionedCode.from_supports(params, supports)
    report = verify_mcwc(code)
    if not report:
        raise ConstructionError(f"translated code fails verification: {report.violation}")
    return code


def mcwc_to_square(code: PartitionedCode) -> SkewSquare:
    """Inverse translation; requires an extremal code of shape (2; n1, n2; 2, 2; 6).

    The square kind follows n1 mod 4 (1: sas, 3: sas*).  Cells are oriented
    canonically with row < column; orientation does not affect validity.
    """
    params = code.params
    if params.m != 2 or params.block_weights != (2, 2) or params.distance != 6:
        raise ShapeError("expected parameters (2; n1, n2; 2, 2; 6)")
    n1, n2 = params.block_lengths
    if n1 % 4 == 1:
        kind = SquareKind.SAS
    elif n1 % 4 == 3:
        kind = SquareKind.SAS_STAR
    else:
        raise DomainError("the point-side length must be odd")
    target = (n2 * (n1 - 1)) // 4
    if len(code) != target:
        raise DomainError(
            f"resolvability needs an extremal code: {len(code)} words, expected {target}"
        )
    report = verify_mcwc(code)
    if not report:
        raise ConstructionError(f"invalid code: {report.violation}")
    cells: dict[Cell, Pair] = {}
    for word in code.words:
        points = [x for x in word.support if x < n1]
        rows = [x - n1 for x in word.support if x >= n1]
        i, j = sorted(rows)
        cells[(i, j)] = frozenset(points)
    sq = SkewSquare.build(kind, n2, n1, cells)
    report = verify_square(sq)
    if not report:
        raise ConstructionError(f"translated square fails verification: {report.violation}")
    return sq


# ---------------------------------------------------------------------------
# Group divisible designs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GddDesign:
    num_points: int
    groups: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, num_points: int, groups, blocks) -> "GddDesign":
        return cls(
            int(num_points),
            tuple(tuple(sorted(int(p) for p in g)) for g in groups),
            tuple(tuple(sorted(int(p) for p in b)) for b in blocks),
        )


def verify_gdd(design: GddDesign, block_sizes: Optional[set[int]] = None) -> VerificationReport:
    """Every pair of distinct points lies in one group or exactly one block,
    never both; optionally restrict the admissible block sizes."""
    x = design.num_points
    flat = sorted(itertools.chain(*design.groups))
    if flat != list(range(x)):
        return VerificationReport(False, "groups do not partition the point set")
    group_of = {}
    for k, g in enumerate(design.groups):
        for p in g:
            group_of[p] = k
    for b, block in enumerate(design.blocks):
        if len(set(block)) != len(block):
            return VerificationReport(False, f"block {b} repeats a point")
        if block_sizes is not None and len(block) not in block_sizes:
            return VerificationReport(
                False, f"block {b} has size {len(block)}, not in {sorted(block_sizes)}"
            )
        if any(not 0 <= p < x for p in block):
            return VerificationReport(False, f"block {b} contains an unknown point")
    cover: dict[tuple[int, int], int] = {}
    for b, block in enumerate(design.blocks):
        for p, q in itertools.combinations(block, 2):
            if group_of[p] == group_of[q]:
                return VerificationReport(
                    False, f"block {b} joins points {p}, {q} of one group"
                )
            cover[(p, q)] = cover.get((p, q), 0) + 1
            if cover[(p, q)] > 1:
                return VerificationReport(False, f"pair ({p}, {q}) is covered twice")
    for p, q in itertools.combinations(range(x), 2):
        if group_of[p] != group_of[q] and (p, q) not in cover:
            return VerificationReport(False, f"cross-group pair ({p}, {q}) is uncovered")
    return VerificationReport(True)


def transversal_design(k: int, q: int) -> GddDesign:
    """TD(k, q) over a prime power q (prime fields plus GF(4), GF(8), GF(9)).

    Point (i, x) of group i is encoded as i*q + x.  Block (a, b) consists of
    (i, a*l_i + b) with distinct field labels l_i, plus the slope point (q, a)
    when k = q + 1, so this construction supports k <= q + 1.
    """
    mul = _gf_mul_table(q)
    if k > q + 1:
        raise DomainError(f"this construction needs k <= q + 1, got k = {k}, q = {q}")
    groups = [tuple(i * q + x for x in range(q)) for i in range(k)]
    blocks = []
    for a in range(q):
        for b in range(q):
            block = [i * q + _gf_add(q, mul[a][i], b) for i in range(min(k, q))]
            if k == q + 1:
                block.append(q * q + a)
            blocks.append(tuple(block))
    return GddDesign.build(k * q, groups, blocks)


def _gf_add(q: int, x: int, y: int) -> int:
    if q in (4, 8):
        return x ^ y
    if q == 9:
        return 3 * ((x // 3 + y // 3) % 3) + (x % 3 + y % 3) % 3
    return (x + y) % q


def _gf_mul_table(q: int) -> list[list[int]]:
    def is_prime(p):
        return p > 1 and all(p % d for d in range(2, int(p**0.5) + 1))

    if is_prime(q):
        return [[(a * b) % q for b in range(q)] for a in range(q)]
    if q == 4:
        # GF(4) as GF(2)[x]/(x^2+x+1), elements 0,1,2=x,3=x+1
        table = [[0] * 4 for _ in range(4)]
        for a in range(1, 4):
            for b in range(1, 4):
                prod, acc = 0, a
                for bit in range(2):
                    if b >> bit & 1:
                        prod ^= acc
                    acc <<= 1
                    if acc & 4:
                        acc ^= 0b111
                table[a][b] = prod
        return table
    if q == 8:
        table = [[0] * 8 for _ in range(8)]
        for a in range(1, 8):
            for b in range(1, 8):
                prod, acc = 0, a
                for bit in range(3):
                    if b >> bit & 1:
                        prod ^= acc
                    acc <<= 1
                    if acc & 8:
                        acc ^= 0b1011
                table[a][b] = prod
        return table
    if q == 9:
        # GF(9) as GF(3)[x]/(x^2+1), element 3*h + l for h*x + l
        table = [[0] * 9 for _ in range(9)]
        for a in range(9):
            ah, al = divmod(a, 3)
            for b in range(9):
                bh, bl = divmod(b, 3)
                high = (ah * bl + al * bh) % 3
                low = (al * bl - ah * bh) % 3
                table[a][b] = 3 * high + low
        return table
    raise DomainError(f"no field arithmetic available for q = {q}")


# ---------------------------------------------------------------------------
# Frame constructions
# ---------------------------------------------------------------------------

WeightFn = Union[Mapping[int, int], Callable[[int], int]]
IngredientSource = Union[
    Mapping[tuple[tuple[int, int], ...], SkewSquare],
    Callable[[tuple[tuple[int, int], ...]], SkewSquare],
]


def _weight(fn: WeightFn, x: int) -> int:
    return fn[x] if isinstance(fn, Mapping) else fn(x)


def wfc_construct(
    design: GddDesign,
    s_weight: WeightFn,
    v_weight: WeightFn,
    ingredients: IngredientSource,
) -> SkewSquare:
    """Weighting frame construction: inflate a GDD by two weight functions.

    Each point x receives a run of s(x) row indices and v(x) point indices;
    for every block an ingredient SFS of type {(s(x), v(x)) : x in B} is laid
    onto the corresponding index runs.  Groups become the holes of the result.
    Ingredient parts are matched to block points by sorted (s, v) pairs.
    """
    report = verify_gdd(design)
    if not report:
        raise ConstructionError(f"invalid design: {report.violation}")
    x_count = design.num_points
    s_of = {x: _weight(s_weight, x) for x in range(x_count)}
    v_of = {x: _weight(v_weight, x) for x in range(x_count)}
    if any(s < 0 for s in s_of.values()) or any(v < 0 for v in v_of.values()):
        raise DomainError("weights must be non-negative")
    row_start, point_start = {}, {}
    r = p = 0
    for x in range(x_count):
        row_start[x], point_start[x] = r, p
        r += s_of[x]
        p += v_of[x]
    total_rows, total_points = r, p

    cells: dict[Cell, Pair] = {}
    for block in design.blocks:
        key = sfs_type_key((s_of[x], v_of[x]) for x in block)
        try:
            ingredient = (
                ingredients[key] if isinstance(ingredients, Mapping) else ingredients(key)
            )
        except (KeyError, IngredientError):
            raise IngredientError(f"no SFS ingredient of type {key}") from None
        if ingredient.kind is not SquareKind.SFS:
            raise IngredientError(f"ingredient for type {key} is not an SFS")
        if sfs_type_key(zip(map(len, ingredient.row_parts), map(len, ingredient.point_parts))) != key:
            raise IngredientError(f"ingredient type mismatch for {key}")

        points_sorted = sorted(block, key=lambda x: (s_of[x], v_of[x], x))
        parts_sorted = sorted(
            range(len(ingredient.row_parts)),
            key=lambda k: (
                len(ingredient.row_parts[k]),
                len(ingredient.point_parts[k]),
                k,
            ),
        )
        row_map: dict[int, int] = {}
        point_map: dict[int, int] = {}
        for x, k in zip(points_sorted, parts_sorted):
            for offset, i in enumerate(ingredient.row_parts[k]):
                row_map[i] = row_start[x] + offset
            for offset, pt in enumerate(ingredient.point_parts[k]):
                point_map[pt] = point_start[x] + offset
        for (i, j), pair in ingredient.cells.items():
            cell = (row_map[i], row_map[j])
            if cell in cells:
                raise ConstructionError(f"cell collision at {cell} while assembling")
            cells[cell] = frozenset(point_map[q] for q in pair)

    row_parts = [
        tuple(
            itertools.chain(*(range(row_start[x], row_start[x] + s_of[x]) for x in g))
        )
        for g in design.groups
    ]
    point_parts = [
        tuple(
            itertools.chain(*(range(point_start[x], point_start[x] + v_of[x]) for x in g))
        )
        for g in design.groups
    ]
    result = SkewSquare.build(
        SquareKind.SFS,
        total_rows,
        total_points,
        cells,
        row_parts=row_parts,
        point_parts=point_parts,
    )
    report = verify_square(result)
    if not report:
        raise ConstructionError(
            f"assembled frame fails verification (bad ingredient?): {report.violation}"
        )
    return result


def _map_square_cells(
    sq: SkewSquare, row_map: Mapping[int, int], point_map: Mapping[int, int]
) -> dict[Cell, Pair]:
    return {
        (row_map[i], row_map[j]): frozenset(point_map[p] for p in pair)
        for (i, j), pair in sq.cells.items()
    }


def bfc_fill(
    frame: SkewSquare, e: int, w: int, fillers: Sequence[SkewSquare]
) -> SkewSquare:
    """Basic frame construction: add e rows/columns and w points, then cover
    hole i of the SFS frame with filler i.

    Fillers for all holes but the last must be holey squares of shape
    (s_i + e, h_i + w; e, w) whose hole lands on the new indices; the last
    filler may be holey (result ``hsas``), plain (``sas``) or starred
    (``sas*``), and its kind determines the kind of the result.
    """
    if frame.kind is not SquareKind.SFS:
        raise ShapeError("the frame must be an SFS")
    report = verify_square(frame)
    if not report:
        raise ConstructionError(f"invalid frame: {report.violation}")
    n = len(frame.row_parts)
    if len(fillers) != n:
        raise ShapeError(f"expected {n} fillers, got {len(fillers)}")
    if e < 0 or w < 0:
        raise DomainError("e and w must be non-negative")
    new_rows = list(range(frame.s, frame.s + e))
    new_points = list(range(frame.v, frame.v + w))
    cells = dict(frame.cells)
    for k, filler in enumerate(fillers):
        s_k = len(frame.row_parts[k])
        h_k = len(frame.point_parts[k])
        last = k == n - 1
        freport = verify_square(filler)
        if not freport:
            raise ConstructionError(f"filler {k} is invalid: {freport.violation}")
        if filler.s != s_k + e or filler.v != h_k + w:
            raise ShapeError(
                f"filler {k} is {filler.s}x{filler.s} on {filler.v} points,"
                f" expected {s_k + e}x{s_k + e} on {h_k + w}"
            )
        if filler.kind is SquareKind.HSAS:
            if len(filler.hole_rows) != e or len(filler.hole_points) != w:
                raise ShapeError(f"filler {k} hole is not ({e}, {w})-shaped")
            old_rows = [i for i in range(filler.s) if i not in filler.hole_rows]
            hole_rows = sorted(filler.hole_rows)
            old_points = [p for p in range(filler.v) if p not in filler.hole_points]
            hole_points = sorted(filler.hole_points)
        elif last and filler.kind in (SquareKind.SAS, SquareKind.SAS_STAR):
            old_rows = list(range(s_k))
            hole_rows = list(range(s_k, s_k + e))
            old_points = list(range(h_k))
            hole_points = list(range(h_k, h_k + w))
        else:
            raise ShapeError(
                f"filler {k} must be holey{' (or plain/starred for the last hole)' if last else ''}"
            )
        row_map = dict(zip(old_rows, frame.row_parts[k]))
        row_map.update(zip(hole_rows, new_rows))
        point_map = dict(zip(old_points, frame.point_parts[k]))
        point_map.update(zip(hole_points, new_points))
        for cell, pair in _map_square_cells(filler, row_map, point_map).items():
            if cell in cells:
                raise ConstructionError(f"cell collision at {cell} while filling")
            cells[cell] = pair

    last_kind = fillers[-1].kind
    if last_kind is SquareKind.HSAS:
        result = SkewSquare.build(
            SquareKind.HSAS,
            frame.s + e,
            frame.v + w,
            cells,
            hole_rows=new_rows,
            hole_points=new_points,
        )
    else:
        result = SkewSquare.build(last_kind, frame.s + e, frame.v + w, cells)
    report = verify_square(result)
    if not report:
        raise ConstructionError(f"assembled square fails verification: {report.violation}")
    return result


def sas_as_hsas(sq: SkewSquare, row: int) -> SkewSquare:
    """View a plain square as holey with a size-(1,1) hole.

    Row ``row`` becomes the hole row and the single point it misses becomes
    the hole point; the two definitions coincide for this shape, so the
    result verifies whenever the input does.
    """
    if sq.kind is not SquareKind.SAS:
        raise ShapeError("sas_as_hsas expects a plain sas square")
    report = verify_square(sq)
    if not report:
        raise ConstructionError(f"invalid square: {report.violation}")
    if not 0 <= row < sq.s:
        raise DomainError(f"row {row} outside the array")
    covered = _partition_target(_row_col_pairs(sq, row))
    assert covered is not None and len(covered) == sq.v - 1
    (missing,) = set(range(sq.v)) - covered
    result = SkewSquare.build(
        SquareKind.HSAS,
        sq.s,
        sq.v,
        sq.cells,
        hole_rows=[row],
        hole_points=[missing],
    )
    report = verify_square(result)
    if not report:
        raise ConstructionError(f"holey view fails verification: {report.violation}")
    return result


def fill_hole(frame: SkewSquare, filler: SkewSquare) -> SkewSquare:
    """Cover the hole of a holey square with a plain or starred square of the
    hole's exact shape; the result inherits the filler's kind."""
    if frame.kind is not SquareKind.HSAS:
        raise ShapeError("fill_hole expects an hsas frame")
    if filler.kind not in (SquareKind.SAS, SquareKind.SAS_STAR):
        raise ShapeError("the hole filler must be sas or sas*")
    report = verify_square(frame)
    if not report:
        raise ConstructionError(f"invalid frame: {report.violation}")
    report = verify_square(filler)
    if not report:
        raise ConstructionError(f"invalid filler: {report.violation}")
    if filler.s != len(frame.hole_rows) or filler.v != len(frame.hole_points):
        raise ShapeError(
            f"filler is {filler.s}x{filler.s} on {filler.v} points; the hole"
            f" needs {len(frame.hole_rows)}x{len(frame.hole_rows)} on {len(frame.hole_points)}"
        )
    row_map = dict(enumerate(sorted(frame.hole_rows)))
    point_map = dict(enumerate(sorted(frame.hole_points)))
    cells = dict(frame.cells)
    for cell, pair in _map_square_cells(filler, row_map, point_map).items():
        if cell in cells:
            raise ConstructionError(f"cell collision at {cell} while filling the hole")
        cells[cell] = pair
    result = SkewSquare.build(filler.kind, frame.s, frame.v, cells)
    report = verify_square(result)
    if not report:
        raise ConstructionError(f"filled square fails verification: {report.violation}")
    return result


# ---------------------------------------------------------------------------
# Square file format
#
#   square <kind> <s> <v>          kind in {sas, sas*, hsas, sfs}
#   hole-rows <i ...>              hsas only
#   hole-points <x ...>            hsas only
#   row-part <i ...>; <i ...>; ...     sfs only
#   point-part <x ...>; <x ...>; ...   sfs only
#   cell <i> <j> <a> <b>           pair {a, b} in cell (i, j)
# ---------------------------------------------------------------------------


def parse_square(text: str) -> SkewSquare:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty square file")
    lineno, header = lines[0]
    tokens = header.split()
    if len(tokens) != 4 or tokens[0] != "square":
        raise FormatError("expected header 'square <kind> <s> <v>'", lineno)
    try:
        kind = SquareKind(tokens[1])
    except ValueError:
        raise FormatError(f"unknown square kind {tokens[1]!r}", lineno) from None
    try:
        s, v = int(tokens[2]), int(tokens[3])
    except ValueError:
        raise FormatError("side and point count must be integers", lineno) from None
    cells: dict[Cell, Pair] = {}
    hole_rows: list[int] = []
    hole_points: list[int] = []
    row_parts: list[list[int]] = []
    point_parts: list[list[int]] = []

    def ints(items, lineno):
        try:
            return [int(t) for t in items]
        except ValueError:
            raise FormatError("expected integers", lineno) from None

    for lineno, line in lines[1:]:
        tokens = line.split()
        tag = tokens[0]
        if tag == "cell":
            if len(tokens) != 5:
                raise FormatError("expected 'cell <i> <j> <a> <b>'", lineno)
            i, j, a, b = ints(tokens[1:], lineno)
            if (i, j) in cells:
                raise FormatError(f"cell ({i},{j}) filled twice", lineno)
            cells[(i, j)] = frozenset((a, b))
        elif tag == "hole-rows":
            hole_rows = ints(tokens[1:], lineno)
        elif tag == "hole-points":
            hole_points = ints(tokens[1:], lineno)
        elif tag in ("row-part", "point-part"):
            groups = " ".join(tokens[1:]).split(";")
            parts = [ints(g.split(), lineno) for g in groups if g.strip()]
            if tag == "row-part":
                row_parts = parts
            else:
                point_parts = parts
        else:
            raise FormatError(f"unknown directive {tag!r}", lineno)
    return SkewSquare.build(
        kind,
        s,
        v,
        cells,
        hole_rows=hole_rows,
        hole_points=hole_points,
        row_parts=row_parts,
        point_parts=point_parts,
    )


def format_square(sq: SkewSquare) -> str:
    out = [f"square {sq.kind.value} {sq.s} {sq.v}"]
    if sq.kind is SquareKind.HSAS:
        out.append("hole-rows " + " ".join(map(str, sorted(sq.hole_rows))))
        out.append("hole-points " + " ".join(map(str, sorted(sq.hole_points))))
    if sq.kind is SquareKind.SFS:
        out.append(
            "row-part " + "; ".join(" ".join(map(str, part)) for part in sq.row_parts)
        )
        out.append(
            "point-part "
            + "; ".join(" ".join(map(str, part)) for part in sq.point_parts)
        )
    for (i, j) in sorted(sq.cells):
        a, b = sorted(sq.cells[(i, j)])
        out.append(f"cell {i} {j} {a} {b}")
    return "\n".join(out) + "\n"


def load_square(path) -> SkewSquare:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_square(fh.read())


def save_square(sq: SkewSquare, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_square(sq))


# GDD file format: 'gdd <x>' header, then 'group <points...>' and
# 'block <points...>' lines.


def parse_gdd(text: str) -> GddDesign:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty design file")
    lineno, header = lines[0]
    tokens = header.split()
    if len(tokens) != 2 or tokens[0] != "gdd":
        raise FormatError("expected header 'gdd <points>'", lineno)
    try:
        x = int(tokens[1])
    except ValueError:
        raise FormatError("point count must be an integer", lineno) from None
    groups, blocks = [], []
    for lineno, line in lines[1:]:
        tokens = line.split()
        if tokens[0] == "group":
            groups.append([int(t) for t in tokens[1:]])
        elif tokens[0] == "block":
            blocks.append([int(t) for t in tokens[1:]])
        else:
            raise FormatError(f"unknown directive {tokens[0]!r}", lineno)
    return GddDesign.build(x, groups, blocks)


def format_gdd(design: GddDesign) -> str:
    out = [f"gdd {design.num_points}"]
    for g in design.groups:
        out.append("group " + " ".join(map(str, g)))
    for b in design.blocks:
        out.append("block " + " ".join(map(str, b)))
    return "\n".join(out) + "\n"
