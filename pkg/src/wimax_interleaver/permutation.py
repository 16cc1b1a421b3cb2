"""Reference IEEE 802.16 channel interleaver / deinterleaver permutations.

Everything here is exact integer arithmetic: floors are ``//``. These
functions are the oracle the floor-free generator is checked against.

Interleaver (bit index ``k`` -> transmitted position)::

    m = (ncpbs / d) * (k mod d) + floor(k / d)
    j = s * floor(m / s) + (m + ncpbs - floor(d * m / ncpbs)) mod s

Deinterleaver (received index ``n`` -> original position)::

    m = s * floor(n / s) + (n + floor(d * n / ncpbs)) mod s
    k = d * m - (ncpbs - 1) * floor(d * m / ncpbs)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    BadRowCount,
    ColumnsNotMultipleOfS,
    IndexOutOfRange,
    NotAPermutation,
    NotDivisibleByD,
    ParameterError,
)

VALID_ROW_COUNTS = (12, 16)
DEFAULT_ROWS = 16


class ModulationScheme(enum.Enum):
    """Subcarrier modulation; value is coded bits per subcarrier (Ncpc)."""

    QPSK = 2
    QAM16 = 4
    QAM64 = 6

    @property
    def ncpc(self) -> int:
        return self.value

    @property
    def s(self) -> int:
        return self.value // 2

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def cli_name(self) -> str:
        return _CLI_NAMES[self]

    @classmethod
    def parse(cls, name: str) -> ModulationScheme:
        """Accept ``qpsk``, ``16qam``, ``64qam`` (and the enum names), any case."""
        key = name.strip().lower().replace("-", "").replace("_", "")
        try:
            return _ALIASES[key]
        except KeyError:
            raise ParameterError(
                f"unknown modulation {name!r}; expected one of qpsk, 16qam, 64qam"
            ) from None


_LABELS = {
    ModulationScheme.QPSK: "QPSK",
    ModulationScheme.QAM16: "16-QAM",
    ModulationScheme.QAM64: "64-QAM",
}

_CLI_NAMES = {
    ModulationScheme.QPSK: "qpsk",
    ModulationScheme.QAM16: "16qam",
    ModulationScheme.QAM64: "64qam",
}

_ALIASES = {
    "qpsk": ModulationScheme.QPSK,
    "16qam": ModulationScheme.QAM16,
    "qam16": ModulationScheme.QAM16,
    "64qam": ModulationScheme.QAM64,
    "qam64": ModulationScheme.QAM64,
}


class Direction(enum.Enum):
    INTERLEAVE = "interleave"
    DEINTERLEAVE = "deinterleave"

    def flipped(self) -> Direction:
        if self is Direction.INTERLEAVE:
            return Direction.DEINTERLEAVE
        return Direction.INTERLEAVE


@dataclass(frozen=True)
class InterleaverParams:
    """Validated block geometry. Build it with :func:`make_params`."""

    ncpbs: int
    d: int
    modulation: ModulationScheme
    columns: int
    columns_max: int

    @property
    def s(self) -> int:
        return self.modulation.s

    def describe(self) -> str:
        return f"{self.modulation.label} ncpbs={self.ncpbs} d={self.d}"

    def to_dict(self) -> dict:
        return {
            "modulation": self.modulation.cli_name,
            "ncpbs": self.ncpbs,
            "d": self.d,
            "columns": self.columns,
        }


def make_params(
    mod: ModulationScheme, ncpbs: int, d: int = DEFAULT_ROWS
) -> InterleaverParams:
    """Validate ``(mod, ncpbs, d)`` and derive the column count.

    A depth is accepted when ``ncpbs`` splits into ``d`` whole rows and the
    row width is a multiple of ``s``. The second condition keeps every
    swap/rotate group of the floor-free generator inside one row.
    """
    if d not in VALID_ROW_COUNTS:
        raise BadRowCount(f"d={d} is not a valid row count; d must be 12 or 16")
    if ncpbs <= 0:
        raise ParameterError(f"ncpbs={ncpbs} must be positive")
    if ncpbs % d:
        raise NotDivisibleByD(
            f"ncpbs={ncpbs} is not divisible by d={d} (ncpbs % d = {ncpbs % d})"
        )
    columns = ncpbs // d
    if columns % mod.s:
        raise ColumnsNotMultipleOfS(
            f"ncpbs={ncpbs} gives {columns} columns, not a multiple of s={mod.s} "
            f"for {mod.label} (ncpbs must be a multiple of d*s = {d * mod.s})"
        )
    return InterleaverParams(ncpbs, d, mod, columns, columns - 1)


def is_valid_depth(mod: ModulationScheme, ncpbs: int, d: int = DEFAULT_ROWS) -> bool:
    return ncpbs > 0 and ncpbs % (d * mod.s) == 0


def _check_index(params: InterleaverParams, index: int) -> None:
    if not 0 <= index < params.ncpbs:
        raise IndexOutOfRange(f"index {index} outside block of {params.ncpbs} bits")


def interleaver_stages(params: InterleaverParams, k: int) -> tuple[int, int]:
    """Return ``(m_k, j_k)``: the first-permutation output and the final position."""
    _check_index(params, k)
    n, d, s = params.ncpbs, params.d, params.s
    m = params.columns * (k % d) + k // d
    j = s * (m // s) + (m + n - (d * m) // n) % s
    return m, j


def interleaver_address(params: InterleaverParams, k: int) -> int:
    return interleaver_stages(params, k)[1]


def deinterleaver_stages(params: InterleaverParams, n: int) -> tuple[int, int]:
    """Return ``(m, k)`` for received index ``n``."""
    _check_index(params, n)
    size, d, s = params.ncpbs, params.d, params.s
    m = s * (n // s) + (n + (d * n) // size) % s
    k = d * m - (size - 1) * ((d * m) // size)
    return m, k


def deinterleaver_address(params: InterleaverParams, n: int) -> int:
    return deinterleaver_stages(params, n)[1]


@dataclass(frozen=True)
class AddressSequence:
    """Scatter table: ``addresses[n]`` is where source bit ``n`` is written."""

    params: InterleaverParams
    direction: Direction
    addresses: tuple[int, ...]

    def __post_init__(self):
        if len(self.addresses) != self.params.ncpbs:
            raise NotAPermutation(
                f"{len(self.addresses)} addresses for a block of {self.params.ncpbs}"
            )
        if not is_permutation(self.addresses):
            raise NotAPermutation("addresses are not a bijection on 0..ncpbs-1")

    def __len__(self) -> int:
        return len(self.addresses)

    def __getitem__(self, n):
        return self.addresses[n]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.addresses, dtype=np.intp)


def is_permutation(values) -> bool:
    size = len(values)
    seen = bytearray(size)
    for v in values:
        if not 0 <= v < size or seen[v]:
            return False
        seen[v] = 1
    return True


@lru_cache(maxsize=256)
def build_sequence(params: InterleaverParams, direction: Direction) -> AddressSequence:
    address = (
        interleaver_address
        if direction is Direction.INTERLEAVE
        else deinterleaver_address
    )
    addresses = tuple(address(params, n) for n in range(params.ncpbs))
    return AddressSequence(params, direction, addresses)


def invert(seq: AddressSequence) -> AddressSequence:
    if not is_permutation(seq.addresses):
        raise NotAPermutation("cannot invert: addresses are not a bijection")
    inverse = [0] * len(seq.addresses)
    for n, target in enumerate(seq.addresses):
        inverse[target] = n
    return AddressSequence(seq.params, seq.direction.flipped(), tuple(inverse))


def identity_sequence(params: InterleaverParams, direction: Direction) -> AddressSequence:
    return AddressSequence(params, direction, tuple(range(params.ncpbs)))
