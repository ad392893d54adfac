"""Access to the data corpus shipped with the package.

Three groups of files live under ``mcwc/data``:

* ``codes/small_<n1>_<n2>.mcwc``   explicit optimal codes, 3 <= n1 <= 9;
* ``develop/t<n1>_n<n2>.dev``      cyclic base-codeword tables, n1 in 13..37;
* ``squares/sfs<f>_a<a>.sq`` and ``squares/hsas_v<v>_t<t>_s<s>.sq``
  frame and holey-square ingredients.

Everything here is data: the regression suite re-verifies every file, and the
loaders run no verification themselves.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Iterator

from .constructions import BaseCodewordTable, parse_base_table
from .core import PartitionedCode, parse_code
from .designs import SkewSquare, parse_square

SMALL_PAIRS = [
    (3, 3), (3, 5),
    (5, 5), (5, 7), (5, 9),
    (7, 7), (7, 9), (7, 11), (7, 13),
    (9, 9), (9, 11), (9, 13), (9, 15), (9, 17),
]

DEVELOP_FAMILIES = {13: 3, 17: 4, 21: 5, 25: 6, 29: 7, 33: 8, 37: 9}

SFS_SHAPES = [(f, a) for f in range(5, 10) for a in range(f + 1) if (f, a) != (9, 8)]

HSAS_SHAPES = [(v, 3, s) for v in (11, 15, 19) for s in range(v, 2 * v - 2, 2)] + [
    (11, 5, 21), (15, 5, 29), (19, 5, 37),
]


def data_root() -> Path:
    return Path(resources.files("mcwc") / "data")


def _read(relative: str) -> str:
    return (data_root() / relative).read_text(encoding="utf-8")


def small_code(n1: int, n2: int) -> PartitionedCode:
    if (n1, n2) not in SMALL_PAIRS:
        raise KeyError(f"no shipped explicit code for (n1, n2) = ({n1}, {n2})")
    return parse_code(_read(f"codes/small_{n1}_{n2}.mcwc"))


def develop_pairs() -> Iterator[tuple[int, int]]:
    for n1, g in DEVELOP_FAMILIES.items():
        for n2 in range(n1, 8 * g + 2, 2):
            yield (n1, n2)


def develop_table(n1: int, n2: int) -> BaseCodewordTable:
    if n1 not in DEVELOP_FAMILIES:
        raise KeyError(f"no shipped base-codeword family for n1 = {n1}")
    g = DEVELOP_FAMILIES[n1]
    if not (n1 <= n2 <= 8 * g + 1 and n2 % 2 == 1):
        raise KeyError(f"no shipped table for (n1, n2) = ({n1}, {n2})")
    return parse_base_table(_read(f"develop/t{n1}_n{n2}.dev"))


def sfs_square(f: int, a: int) -> SkewSquare:
    if (f, a) not in SFS_SHAPES:
        raise KeyError(f"no shipped SFS with {f} holes and a = {a}")
    return parse_square(_read(f"squares/sfs{f}_a{a}.sq"))


def hsas_square(v: int, t: int, s: int) -> SkewSquare:
    if (v, t, s) not in HSAS_SHAPES:
        raise KeyError(f"no shipped HSAS(s={s}, v={v}; t={t}, 3)")
    return parse_square(_read(f"squares/hsas_v{v}_t{t}_s{s}.sq"))


def all_files() -> Iterator[tuple[str, Path]]:
    """Every shipped data file as ('codes'|'develop'|'squares', path)."""
    root = data_root()
    for sub in ("codes", "develop", "squares"):
        for path in sorted((root / sub).iterdir()):
            if path.suffix in (".mcwc", ".dev", ".sq"):
                yield sub, path
