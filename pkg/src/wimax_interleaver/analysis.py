"""Golden tables, oracle equivalence, depth sweeps and burst dispersion."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import BurstTooLong, DimensionTooLarge, ParameterError
from .floorless import generate_all
from .permutation import (
    DEFAULT_ROWS,
    Direction,
    InterleaverParams,
    ModulationScheme,
    build_sequence,
    deinterleaver_address,
    is_valid_depth,
    make_params,
)

MODULATION_ORDER = (ModulationScheme.QPSK, ModulationScheme.QAM16, ModulationScheme.QAM64)


@dataclass(frozen=True)
class AddressTable:
    params: InterleaverParams
    rows: tuple[tuple[int, ...], ...]

    def header(self) -> str:
        p = self.params
        return f"modulation={p.modulation.cli_name},ncpbs={p.ncpbs},d={p.d}"

    def format(self, table_format: str = "txt") -> str:
        if table_format == "csv":
            lines = [self.header()]
            lines += [",".join(str(v) for v in row) for row in self.rows]
            return "\n".join(lines) + "\n"
        if table_format != "txt":
            raise ValueError(f"unknown table format {table_format!r}")
        p = self.params
        width = len(str(p.ncpbs - 1))
        lines = [f"{p.modulation.label} ncpbs={p.ncpbs} d={p.d}"]
        lines += [" ".join(str(v).rjust(width) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"


def emit_address_table(
    params: InterleaverParams, num_rows: int | None = None, num_cols: int | None = None
) -> AddressTable:
    """Oracle deinterleaver addresses laid out as row ``j`` by column ``i``.

    Defaults to the full ``d x columns`` block.
    """
    num_rows = params.d if num_rows is None else num_rows
    num_cols = params.columns if num_cols is None else num_cols
    if not 0 <= num_rows <= params.d:
        raise DimensionTooLarge(f"rows={num_rows} exceeds d={params.d}")
    if not 0 <= num_cols <= params.columns:
        raise DimensionTooLarge(f"cols={num_cols} exceeds columns={params.columns}")
    rows = tuple(
        tuple(deinterleaver_address(params, j * params.columns + i) for i in range(num_cols))
        for j in range(num_rows)
    )
    return AddressTable(params, rows)


@dataclass(frozen=True)
class Mismatch:
    n: int
    oracle_address: int
    floorless_address: int


@dataclass(frozen=True)
class EquivalenceReport:
    params: InterleaverParams
    total_indices: int
    mismatches: tuple[Mismatch, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{self.params.describe()} checked={self.total_indices} "
            f"mismatches={len(self.mismatches)} {status}"
        )

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "total_indices": self.total_indices,
            "mismatches": [vars(m) for m in self.mismatches],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def verify_equivalence(params: InterleaverParams) -> EquivalenceReport:
    """Compare the floor-free generator to the oracle at every index.

    All mismatches are collected; nothing is raised for a failed comparison.
    """
    oracle = build_sequence(params, Direction.DEINTERLEAVE).addresses
    floorless = generate_all(params).addresses
    mismatches = tuple(
        Mismatch(n, a, b) for n, (a, b) in enumerate(zip(oracle, floorless)) if a != b
    )
    return EquivalenceReport(params, len(floorless), mismatches)


def valid_depths(mod: ModulationScheme, max_ncpbs: int, d: int = DEFAULT_ROWS) -> list[int]:
    step = d * mod.s
    return [n for n in range(step, max_ncpbs + 1, step) if is_valid_depth(mod, n, d)]


def sweep_depths(
    max_ncpbs: int, d: int = DEFAULT_ROWS, verify: bool = False
) -> list[tuple[ModulationScheme, list]]:
    """Valid depths up to ``max_ncpbs`` per modulation, ascending.

    With ``verify=True`` each list holds :class:`EquivalenceReport` objects
    instead of bare depths.
    """
    result = []
    for mod in MODULATION_ORDER:
        depths = valid_depths(mod, max_ncpbs, d)
        if verify:
            depths = [verify_equivalence(make_params(mod, n, d)) for n in depths]
        result.append((mod, depths))
    return result


@dataclass(frozen=True)
class DispersionReport:
    params: InterleaverParams
    burst_start: int
    burst_len: int
    positions: tuple[int, ...]
    max_run: int
    min_gap: int | None

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "burst_start": self.burst_start,
            "burst_len": self.burst_len,
            "positions": list(self.positions),
            "max_run": self.max_run,
            "min_gap": self.min_gap,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def run_statistics(positions) -> tuple[int, int | None]:
    """Longest run of consecutive integers and smallest adjacent gap of a sorted list."""
    max_run = run = 1
    min_gap = None
    for prev, cur in zip(positions, positions[1:]):
        gap = cur - prev
        min_gap = gap if min_gap is None else min(min_gap, gap)
        run = run + 1 if gap == 1 else 1
        max_run = max(max_run, run)
    return max_run, min_gap


def burst_dispersion(
    params: InterleaverParams, burst_start: int, burst_len: int
) -> DispersionReport:
    """Where a contiguous received burst lands after deinterleaving.

    The burst wraps inside the block; ``min_gap`` is ``None`` for a single error.
    """
    if burst_len < 1:
        raise ParameterError(f"burst_len={burst_len} must be at least 1")
    if burst_len > params.ncpbs:
        raise BurstTooLong(f"burst_len={burst_len} exceeds block of {params.ncpbs} bits")
    size = params.ncpbs
    start = burst_start % size
    positions = tuple(
        sorted(deinterleaver_address(params, (start + t) % size) for t in range(burst_len))
    )
    max_run, min_gap = run_statistics(positions)
    return DispersionReport(params, start, burst_len, positions, max_run, min_gap)
