"""Code constructions: concatenation, cyclic development of base-codeword
tables, resolvable designs and edge-colored decompositions.

Every construction re-verifies its output; nothing is trusted, including the
shipped data tables.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .core import (
    CodeParameters,
    ConstructionError,
    DomainError,
    FormatError,
    PartitionedCode,
    ShapeError,
    SizeError,
    VerificationReport,
    _content_lines,
    verify_mcwc,
)

# ---------------------------------------------------------------------------
# q-ary codes and concatenation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QaryCode:
    q: int
    length: int
    words: tuple[tuple[int, ...], ...]
    distance: int

    @classmethod
    def build(cls, q: int, length: int, words, distance: int) -> "QaryCode":
        return cls(int(q), int(length), tuple(tuple(int(s) for s in w) for w in words), int(distance))


def verify_qary(code: QaryCode) -> VerificationReport:
    for k, word in enumerate(code.words):
        if len(word) != code.length:
            return VerificationReport(False, f"word {k} has length {len(word)}")
        if any(not 0 <= s < code.q for s in word):
            return VerificationReport(False, f"word {k} has a symbol outside [0, {code.q})")
    for a, b in itertools.combinations(range(len(code.words)), 2):
        d = sum(x != y for x, y in zip(code.words[a], code.words[b]))
        if d < code.distance:
            return VerificationReport(
                False, f"words {a} and {b} are at distance {d} < {code.distance}"
            )
    return VerificationReport(True)


def repetition_code(q: int, length: int) -> QaryCode:
    return QaryCode.build(q, length, [(s,) * length for s in range(q)], length)


def concatenate(inner: PartitionedCode, outer: QaryCode) -> PartitionedCode:
    """Substitute inner constant-weight codewords for outer symbols.

    The output has one block per outer coordinate and distance at least the
    product of the two distances."""
    if inner.params.m != 1:
        raise ShapeError("the inner code must have a single block")
    report = verify_mcwc(inner)
    if not report:
        raise ConstructionError(f"invalid inner code: {report.violation}")
    report = verify_qary(outer)
    if not report:
        raise ConstructionError(f"invalid outer code: {report.violation}")
    if outer.q > len(inner.words):
        raise SizeError(
            f"outer alphabet {outer.q} exceeds the {len(inner.words)} inner codewords"
        )
    n = inner.params.block_lengths[0]
    w = inner.params.block_weights[0]
    params = CodeParameters(
        (n,) * outer.length,
        (w,) * outer.length,
        inner.params.distance * outer.distance,
    )
    inner_supports = [word.support for word in inner.words]
    supports = []
    for word in outer.words:
        supp: list[int] = []
        for block, symbol in enumerate(word):
            supp.extend(block * n + i for i in inner_supports[symbol])
        supports.append(supp)
    code = PartitionedCode.from_supports(params, supports)
    report = verify_mcwc(code)
    if not report:
        raise ConstructionError(f"concatenated code fails verification: {report.violation}")
    return code


# ---------------------------------------------------------------------------
# Base-codeword tables and cyclic development
#
# Points are labeled e_c (group element e in a class c), 'inf' or 'a<k>'.
# Development adds t to the group element of every non-fixed point, for t in
# the cyclic group; words marked with a shorter orbit repeat earlier and the
# declared length is cross-checked against actual closure.
# ---------------------------------------------------------------------------

Point = tuple  # ("g", element, class) | ("inf",) | ("a", k)


@dataclass(frozen=True)
class BaseWord:
    points: tuple[Point, ...]
    orbit: Optional[int] = None  # None: full group order

    def __str__(self) -> str:
        return "<" + ", ".join(_point_str(p) for p in self.points) + ">"


@dataclass(frozen=True)
class BaseCodewordTable:
    group_order: int
    classes: tuple[tuple[int, ...], tuple[int, ...]]
    fixed: tuple[tuple[str, ...], tuple[str, ...]]
    words: tuple[BaseWord, ...]

    @property
    def side_lengths(self) -> tuple[int, int]:
        return (
            self.group_order * len(self.classes[0]) + len(self.fixed[0]),
            self.group_order * len(self.classes[1]) + len(self.fixed[1]),
        )


def _point_str(p: Point) -> str:
    if p[0] == "g":
        return f"{p[1]}_{p[2]}"
    if p[0] == "inf":
        return "inf"
    return f"a{p[1]}"


def _parse_point(token: str, lineno=None) -> Point:
    if token == "inf":
        return ("inf",)
    m = re.fullmatch(r"a(\d+)", token)
    if m:
        return ("a", int(m.group(1)))
    m = re.fullmatch(r"(\d+)_(\d+)", token)
    if m:
        return ("g", int(m.group(1)), int(m.group(2)))
    raise FormatError(f"cannot parse point token {token!r}", lineno)


def _layout(table: BaseCodewordTable) -> dict[Point, int]:
    """Global coordinate of every labeled point: class-major group points
    first, then the fixed points, side 1 before side 2."""
    coord: dict[Point, int] = {}
    offset = 0
    for side in range(2):
        for c in table.classes[side]:
            for e in range(table.group_order):
                coord[("g", e, c)] = offset
                offset += 1
        for token in table.fixed[side]:
            coord[_parse_point(token)] = offset
            offset += 1
    return coord


def _translate(p: Point, t: int, g: int) -> Point:
    if p[0] == "g":
        return ("g", (p[1] + t) % g, p[2])
    return p


def develop(table: BaseCodewordTable, distance: int = 6) -> PartitionedCode:
    """Develop every base word under the cyclic group, flatten to global
    coordinates, and verify the resulting code at the given distance.

    Declared short orbits are cross-checked: the orbit of a word must close
    exactly at its declared length (at the group order when undeclared).
    """
    g = table.group_order
    if g < 1:
        raise DomainError("group order must be positive")
    coord = _layout(table)
    side1 = set(
        coord[("g", e, c)] for c in table.classes[0] for e in range(g)
    ) | set(coord[_parse_point(t)] for t in table.fixed[0])
    n1, n2 = table.side_lengths
    params = CodeParameters((n1, n2), (2, 2), distance)
    supports: list[tuple[int, ...]] = []
    for k, word in enumerate(table.words):
        if len(word.points) != 4:
            raise ConstructionError(f"base word {k} {word} does not have four points")
        for p in word.points:
            if p not in coord:
                raise ConstructionError(
                    f"base word {k} {word} uses {_point_str(p)}, outside the declared layout"
                )
        in1 = sum(1 for p in word.points if coord[p] in side1)
        if in1 != 2:
            raise ConstructionError(
                f"base word {k} {word} has {in1} points on the first side, expected 2"
            )
        declared = word.orbit if word.orbit is not None else g
        orbit_supports = []
        seen = set()
        for t in range(g):
            translated = tuple(_translate(p, t, g) for p in word.points)
            try:
                supp = tuple(sorted(coord[p] for p in translated))
            except KeyError as exc:
                raise ConstructionError(
                    f"base word {k} {word} leaves the declared layout at {exc}"
                ) from None
            if supp in seen:
                break
            seen.add(supp)
            orbit_supports.append(supp)
        if len(orbit_supports) != declared:
            raise ConstructionError(
                f"base word {k} {word} has orbit length {len(orbit_supports)},"
                f" declared {declared}"
            )
        supports.extend(orbit_supports)
    code = PartitionedCode.from_supports(params, supports)
    report = verify_mcwc(code)
    if not report:
        raise ConstructionError(f"developed code fails verification: {report.violation}")
    return code


# Base-codeword file format:
#   develop <g> <m>                      (m must be 2)
#   layout <side> classes=<c,...> [fixed=<tok,...>]
#   w <p1> <p2> <p3> <p4> [orbit=<len>]


def parse_base_table(text: str) -> BaseCodewordTable:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty base-codeword file")
    lineno, header = lines[0]
    tokens = header.split()
    if len(tokens) != 3 or tokens[0] != "develop":
        raise FormatError("expected header 'develop <g> <m>'", lineno)
    try:
        g, m = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise FormatError("header fields must be integers", lineno) from None
    if m != 2:
        raise FormatError("only two-sided tables are supported (m = 2)", lineno)
    classes: dict[int, tuple[int, ...]] = {}
    fixed: dict[int, tuple[str, ...]] = {}
    words: list[BaseWord] = []
    for lineno, line in lines[1:]:
        tokens = line.split()
        if tokens[0] == "layout":
            if len(tokens) < 3:
                raise FormatError("expected 'layout <side> classes=... [fixed=...]'", lineno)
            side = int(tokens[1])
            if side not in (1, 2):
                raise FormatError("side must be 1 or 2", lineno)
            cls: tuple[int, ...] = ()
            fix: tuple[str, ...] = ()
            for item in tokens[2:]:
                if item.startswith("classes="):
                    value = item[len("classes="):]
                    cls = tuple(int(c) for c in value.split(",") if c)
                elif item.startswith("fixed="):
                    value = item[len("fixed="):]
                    fix = tuple(t for t in value.split(",") if t)
                else:
                    raise FormatError(f"unknown layout item {item!r}", lineno)
            classes[side] = cls
            fixed[side] = fix
        elif tokens[0] == "w":
            orbit = None
            points = []
            for token in tokens[1:]:
                if token.startswith("orbit="):
                    orbit = int(token[len("orbit="):])
                else:
                    points.append(_parse_point(token, lineno))
            if len(points) != 4:
                raise FormatError("a base word needs exactly four points", lineno)
            words.append(BaseWord(tuple(points), orbit))
        else:
            raise FormatError(f"unknown directive {tokens[0]!r}", lineno)
    if 1 not in classes or 2 not in classes:
        raise FormatError("both 'layout 1' and 'layout 2' lines are required")
    return BaseCodewordTable(
        g,
        (classes[1], classes[2]),
        (fixed.get(1, ()), fixed.get(2, ())),
        tuple(words),
    )


def format_base_table(table: BaseCodewordTable) -> str:
    out = [f"develop {table.group_order} 2"]
    for side in (1, 2):
        items = [f"layout {side}"]
        items.append("classes=" + ",".join(map(str, table.classes[side - 1])))
        if table.fixed[side - 1]:
            items.append("fixed=" + ",".join(table.fixed[side - 1]))
        out.append(" ".join(items))
    for word in table.words:
        line = "w " + " ".join(_point_str(p) for p in word.points)
        if word.orbit is not None:
            line += f" orbit={word.orbit}"
        out.append(line)
    return "\n".join(out) + "\n"


def load_base_table(path) -> BaseCodewordTable:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_base_table(fh.read())


# ---------------------------------------------------------------------------
# Resolvable designs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResolvableBibd:
    v: int
    k: int
    lam: int
    alpha: int
    classes: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def build(cls, v, k, lam, alpha, classes) -> "ResolvableBibd":
        return cls(
            int(v),
            int(k),
            int(lam),
            int(alpha),
            tuple(
                tuple(tuple(sorted(int(p) for p in block)) for block in cl)
                for cl in classes
            ),
        )

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.chain(*self.classes))


def verify_bibd(design: ResolvableBibd) -> VerificationReport:
    """Check block sizes, pair balance, and that every class covers each
    point exactly alpha times."""
    v, k, lam, alpha = design.v, design.k, design.lam, design.alpha
    for b, block in enumerate(design.blocks):
        if len(block) != k or len(set(block)) != k:
            return VerificationReport(False, f"block {b} is not a {k}-subset")
        if any(not 0 <= p < v for p in block):
            return VerificationReport(False, f"block {b} contains an unknown point")
    pair_count: dict[tuple[int, int], int] = {}
    for block in design.blocks:
        for p, q in itertools.combinations(block, 2):
            pair_count[(p, q)] = pair_count.get((p, q), 0) + 1
    for p, q in itertools.combinations(range(v), 2):
        c = pair_count.get((p, q), 0)
        if c != lam:
            return VerificationReport(
                False, f"pair ({p}, {q}) occurs in {c} blocks, expected {lam}"
            )
    for ci, cl in enumerate(design.classes):
        count = [0] * v
        for block in cl:
            for p in block:
                count[p] += 1
        bad = [p for p in range(v) if count[p] != alpha]
        if bad:
            return VerificationReport(
                False,
                f"class {ci} covers point {bad[0]} {count[bad[0]]} times, expected {alpha}",
            )
    return VerificationReport(True)


def bibd_to_mcwc(design: ResolvableBibd) -> PartitionedCode:
    """One codeword per point, indicating block membership over the class/block
    grid; classes index the blocks row by row in file order."""
    report = verify_bibd(design)
    if not report:
        raise ConstructionError(f"invalid design: {report.violation}")
    v, k, lam, alpha = design.v, design.k, design.lam, design.alpha
    if (lam * (v - 1)) % (alpha * (k - 1)) != 0:
        raise DomainError("the class count lambda*(v-1)/(alpha*(k-1)) is not integral")
    m = (lam * (v - 1)) // (alpha * (k - 1))
    if m < 1:
        raise DomainError("parameters force fewer than one class")
    if (alpha * v) % k != 0:
        raise DomainError("the class size alpha*v/k is not integral")
    n = (alpha * v) // k
    if len(design.classes) != m:
        raise DomainError(f"expected {m} classes, found {len(design.classes)}")
    for ci, cl in enumerate(design.classes):
        if len(cl) != n:
            raise DomainError(f"class {ci} has {len(cl)} blocks, expected {n}")
    d = 2 * ((lam * (v - 1)) // (k - 1) - lam)
    params = CodeParameters.uniform(m, n, alpha, d)
    supports = []
    for x in range(v):
        supp = [
            ci * n + bi
            for ci, cl in enumerate(design.classes)
            for bi, block in enumerate(cl)
            if x in block
        ]
        supports.append(supp)
    code = PartitionedCode.from_supports(params, supports)
    report = verify_mcwc(code)
    if not report:
        raise ConstructionError(f"translated code fails verification: {report.violation}")
    return code


# BIBD file format: 'bibd <v> <k> <lambda> <alpha>', then 'class' separator
# lines each followed by its 'block <points...>' lines.


def parse_bibd(text: str) -> ResolvableBibd:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty design file")
    lineno, header = lines[0]
    tokens = header.split()
    if len(tokens) != 5 or tokens[0] != "bibd":
        raise FormatError("expected header 'bibd <v> <k> <lambda> <alpha>'", lineno)
    try:
        v, k, lam, alpha = (int(t) for t in tokens[1:])
    except ValueError:
        raise FormatError("header fields must be integers", lineno) from None
    classes: list[list[tuple[int, ...]]] = []
    for lineno, line in lines[1:]:
        tokens = line.split()
        if tokens[0] == "class":
            classes.append([])
        elif tokens[0] == "block":
            if not classes:
                raise FormatError("a 'class' line must precede the first block", lineno)
            classes[-1].append(tuple(int(t) for t in tokens[1:]))
        else:
            raise FormatError(f"unknown directive {tokens[0]!r}", lineno)
    return ResolvableBibd.build(v, k, lam, alpha, classes)


def format_bibd(design: ResolvableBibd) -> str:
    out = [f"bibd {design.v} {design.k} {design.lam} {design.alpha}"]
    for cl in design.classes:
        out.append("class")
        for block in cl:
            out.append("block " + " ".join(map(str, block)))
    return "\n".join(out) + "\n"


def affine_plane_bibd(q: int) -> ResolvableBibd:
    """The resolvable BIBD(q^2, q, 1) of lines of the affine plane over GF(q),
    with alpha = 1; parallel classes are the direction classes."""
    from .designs import _gf_add, _gf_mul_table

    mul = _gf_mul_table(q)
    classes = []
    # lines y = s*x + b for each slope s, then the vertical lines x = c
    for s in range(q):
        cl = []
        for b in range(q):
            cl.append(tuple(x * q + _gf_add(q, mul[s][x], b) for x in range(q)))
        classes.append(cl)
    classes.append([tuple(c * q + y for y in range(q)) for c in range(q)])
    return ResolvableBibd.build(q * q, q, 1, 1, classes)


def one_factorization_k4() -> ResolvableBibd:
    """The three perfect matchings of K4 as a resolvable BIBD(4, 2, 1)."""
    classes = [
        [(0, 1), (2, 3)],
        [(0, 2), (1, 3)],
        [(0, 3), (1, 2)],
    ]
    return ResolvableBibd.build(4, 2, 1, 1, classes)


# ---------------------------------------------------------------------------
# Edge-colored decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionMember:
    """A member given by its vertex partition; its edges are implied: every
    ordered pair (x, y) with x in part i, y in part j, x != y, colored (i, j)."""

    parts: tuple[tuple[int, ...], ...]

    def edges(self) -> Iterable[tuple[int, int, tuple[int, int]]]:
        for i, pi in enumerate(self.parts, start=1):
            for j, pj in enumerate(self.parts, start=1):
                for x in pi:
                    for y in pj:
                        if x != y:
                            yield (x, y, (i, j))


@dataclass(frozen=True)
class EdgeMember:
    x: int
    y: int
    color: tuple[int, int]

    def edges(self):
        yield (self.x, self.y, self.color)


Member = Union[PartitionMember, EdgeMember]


@dataclass(frozen=True)
class ColoredDecomposition:
    n: int
    m: int  # colors are the ordered pairs over [1, m]
    members: tuple[Member, ...]


def verify_decomposition(dec: ColoredDecomposition) -> VerificationReport:
    """Every edge of the complete edge-colored digraph (all ordered vertex
    pairs in all m^2 colors) must occur in exactly one member."""
    n, m = dec.n, dec.m
    seen: dict[tuple[int, int, tuple[int, int]], int] = {}
    for k, member in enumerate(dec.members):
        if isinstance(member, PartitionMember):
            if len(member.parts) != m:
                return VerificationReport(
                    False, f"member {k} has {len(member.parts)} parts, expected {m}"
                )
            flat = list(itertools.chain(*member.parts))
            if len(set(flat)) != len(flat):
                return VerificationReport(False, f"member {k} repeats a vertex")
        for x, y, c in member.edges():
            if not (0 <= x < n and 0 <= y < n) or x == y:
                return VerificationReport(False, f"member {k} has an invalid edge ({x},{y})")
            if not (1 <= c[0] <= m and 1 <= c[1] <= m):
                return VerificationReport(False, f"member {k} uses an unknown color {c}")
            key = (x, y, c)
            if key in seen:
                return VerificationReport(
                    False, f"edge {key} occurs in members {seen[key]} and {k}"
                )
            seen[key] = k
    expected = n * (n - 1) * m * m
    if len(seen) != expected:
        return VerificationReport(
            False, f"{len(seen)} edges covered, the complete digraph has {expected}"
        )
    return VerificationReport(True)


def decomposition_to_mcwc(
    dec: ColoredDecomposition, weights: Sequence[int]
) -> PartitionedCode:
    """One codeword per partition member: coordinate (i, x) is set when x lies
    in part i.  Output distance is 2*(total weight) - 2 because any two members
    share at most one colored edge, hence at most one support coordinate."""
    weights = [int(w) for w in weights]
    if len(weights) != dec.m:
        raise ShapeError(f"expected {dec.m} weights, got {len(weights)}")
    if any(w <= 0 for w in weights):
        raise DomainError("weights must be positive")
    if any(weights[i] < weights[i + 1] for i in range(len(weights) - 1)):
        raise DomainError("weights must be non-increasing")
    report = verify_decomposition(dec)
    if not report:
        raise ConstructionError(f"invalid decomposition: {report.violation}")
    n = dec.n
    total = sum(weights)
    params = CodeParameters(
        (n,) * dec.m, tuple(weights), 2 * total - 2
    )
    supports = []
    for k, member in enumerate(dec.members):
        if not isinstance(member, PartitionMember):
            continue
        sizes = tuple(len(p) for p in member.parts)
        if sizes != tuple(weights):
            raise ConstructionError(
                f"member {k} has part sizes {sizes}, expected {tuple(weights)}"
            )
        supp = [
            i * n + x for i, part in enumerate(member.parts) for x in part
        ]
        supports.append(supp)
    code = PartitionedCode.from_supports(params, supports)
    report = verify_mcwc(code)
    if not report:
        raise ConstructionError(f"translated code fails verification: {report.violation}")
    w1 = weights[0]
    strictly_largest = w1 > weights[1] if dec.m > 1 else w1 > 1
    divisor = w1 * (w1 - 1) if strictly_largest else w1 * w1
    expected = n * (n - 1) // divisor
    if len(code) != expected:
        raise ConstructionError(
            f"{len(code)} shaped members, a full decomposition determines {expected}"
        )
    return code


# Decomposition file format:
#   decomp <n> <m>
#   member partition S1=<p,p,...> S2=<...> ...
#   member edge <x> <y> <i> <j>


def parse_decomposition(text: str) -> ColoredDecomposition:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty decomposition file")
    lineno, header = lines[0]
    tokens = header.split()
    if len(tokens) != 3 or tokens[0] != "decomp":
        raise FormatError("expected header 'decomp <n> <m>'", lineno)
    try:
        n, m = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise FormatError("header fields must be integers", lineno) from None
    members: list[Member] = []
    for lineno, line in lines[1:]:
        tokens = line.split()
        if tokens[0] != "member" or len(tokens) < 2:
            raise FormatError("expected a 'member ...' line", lineno)
        if tokens[1] == "partition":
            parts: dict[int, tuple[int, ...]] = {}
            for item in tokens[2:]:
                mm = re.fullmatch(r"S(\d+)=([\d,]*)", item)
                if not mm:
                    raise FormatError(f"cannot parse partition item {item!r}", lineno)
                idx = int(mm.group(1))
                values = tuple(int(p) for p in mm.group(2).split(",") if p)
                parts[idx] = values
            if sorted(parts) != list(range(1, m + 1)):
                raise FormatError(f"partition must declare S1..S{m}", lineno)
            members.append(PartitionMember(tuple(parts[i] for i in range(1, m + 1))))
        elif tokens[1] == "edge":
            if len(tokens) != 6:
                raise FormatError("expected 'member edge <x> <y> <i> <j>'", lineno)
            x, y, i, j = (int(t) for t in tokens[2:])
            members.append(EdgeMember(x, y, (i, j)))
        else:
            raise FormatError(f"unknown member kind {tokens[1]!r}", lineno)
    return ColoredDecomposition(n, m, tuple(members))


def format_decomposition(dec: ColoredDecomposition) -> str:
    out = [f"decomp {dec.n} {dec.m}"]
    for member in dec.members:
        if isinstance(member, PartitionMember):
            items = [
                f"S{i}=" + ",".join(map(str, part))
                for i, part in enumerate(member.parts, start=1)
            ]
            out.append("member partition " + " ".join(items))
        else:
            out.append(
                f"member edge {member.x} {member.y} {member.color[0]} {member.color[1]}"
            )
    return "\n".join(out) + "\n"


def digon_decomposition(n: int) -> ColoredDecomposition:
    """Decompose the one-colored complete digraph into digons (m = 1, parts of
    size two); the translated code is all weight-2 words at distance 2."""
    members = [
        PartitionMember(((x, y),)) for x, y in itertools.combinations(range(n), 2)
    ]
    return ColoredDecomposition(n, 1, tuple(members))


def ordered_pair_decomposition(n: int) -> ColoredDecomposition:
    """Decompose the 4-colored complete digraph (m = 2) into two-vertex
    members with parts {x}, {y}, plus single edges for the within-part colors."""
    members: list[Member] = []
    for x in range(n):
        for y in range(n):
            if x != y:
                members.append(PartitionMember(((x,), (y,))))
                members.append(EdgeMember(x, y, (1, 1)))
                members.append(EdgeMember(x, y, (2, 2)))
    return ColoredDecomposition(n, 2, tuple(members))
