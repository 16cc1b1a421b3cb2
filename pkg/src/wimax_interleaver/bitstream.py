"""Apply address sequences to bit blocks and framed bit streams.

Both directions use the scatter convention: ``out[addresses[n]] = in[n]``.

Stream formats:

``ascii``
    characters ``0``/``1``; whitespace is ignored on input. Output is one
    frame per line.
``raw``
    packed bytes, most-significant bit first. On input an optional declared
    bit count trims the final byte; on output the last byte is zero-filled.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import BinaryIO, Iterator, NamedTuple

import numpy as np

from .errors import BitFormatError, LengthMismatch, PartialBlock, StreamIOError
from .permutation import Direction, InterleaverParams, build_sequence


class PartialPolicy(enum.Enum):
    STRICT = "strict"
    PAD = "pad"


class IOFormat(enum.Enum):
    ASCII = "ascii"
    RAW = "raw"


@dataclass(frozen=True, eq=False)
class BitBlock:
    """Exactly ``params.ncpbs`` bits stored as a read-only ``uint8`` array."""

    bits: np.ndarray
    params: InterleaverParams

    def __post_init__(self):
        bits = np.array(self.bits, dtype=np.uint8).reshape(-1)
        if bits.size != self.params.ncpbs:
            raise LengthMismatch(
                f"block has {bits.size} bits, params expect {self.params.ncpbs}"
            )
        if bits.size and bits.max() > 1:
            raise BitFormatError("block contains values other than 0 and 1")
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    def __eq__(self, other):
        if not isinstance(other, BitBlock):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.bits, other.bits)

    def __len__(self) -> int:
        return self.bits.size

    def weight(self) -> int:
        return int(self.bits.sum())


@lru_cache(maxsize=256)
def _scatter_index(params: InterleaverParams, direction: Direction) -> np.ndarray:
    index = build_sequence(params, direction).as_array()
    index.flags.writeable = False
    return index


def _permute(params: InterleaverParams, block, direction: Direction) -> BitBlock:
    if not isinstance(block, BitBlock):
        block = BitBlock(block, params)
    elif block.params != params:
        raise LengthMismatch(
            f"block sized for {block.params.describe()}, got {params.describe()}"
        )
    out = np.empty_like(block.bits)
    out[_scatter_index(params, direction)] = block.bits
    return BitBlock(out, params)


def interleave_block(params: InterleaverParams, block) -> BitBlock:
    """``out[interleaver_address(k)] = in[k]``. Accepts a BitBlock or bit array."""
    return _permute(params, block, Direction.INTERLEAVE)


def deinterleave_block(params: InterleaverParams, block) -> BitBlock:
    """``out[deinterleaver_address(n)] = in[n]``. Accepts a BitBlock or bit array."""
    return _permute(params, block, Direction.DEINTERLEAVE)


# --- stream I/O ---------------------------------------------------------------

_ASCII_BITS = np.full(256, 255, dtype=np.uint8)
_ASCII_BITS[ord("0")] = 0
_ASCII_BITS[ord("1")] = 1
_ASCII_SPACE = np.zeros(256, dtype=bool)
_ASCII_SPACE[list(b" \t\r\n\v\f")] = True


def parse_ascii_bits(data: bytes) -> np.ndarray:
    raw = np.frombuffer(data, dtype=np.uint8)
    raw = raw[~_ASCII_SPACE[raw]]
    bits = _ASCII_BITS[raw]
    bad = np.flatnonzero(bits == 255)
    if bad.size:
        char = bytes([raw[bad[0]]])
        raise BitFormatError(f"invalid character {char!r} in ascii bit stream")
    return bits


def _read_chunks(source: BinaryIO, chunk_size: int) -> Iterator[bytes]:
    while True:
        chunk = source.read(chunk_size)
        if not chunk:
            return
        if isinstance(chunk, str):
            chunk = chunk.encode("ascii", errors="replace")
        yield chunk


def read_bits(
    source: BinaryIO,
    io_format: IOFormat = IOFormat.ASCII,
    bit_count: int | None = None,
    chunk_size: int = 1 << 16,
) -> Iterator[np.ndarray]:
    """Yield decoded bit chunks from ``source``.

    ``bit_count`` applies to raw input: bits past it are dropped, and a
    shorter stream is a :class:`BitFormatError`.
    """
    if io_format is IOFormat.ASCII:
        for chunk in _read_chunks(source, chunk_size):
            yield parse_ascii_bits(chunk)
        return

    remaining = bit_count
    for chunk in _read_chunks(source, chunk_size):
        bits = np.unpackbits(np.frombuffer(chunk, dtype=np.uint8))
        if remaining is not None:
            bits = bits[:remaining]
            remaining -= bits.size
        if bits.size:
            yield bits
    if remaining:
        raise BitFormatError(f"raw stream ended {remaining} bits short of declared count")


class BitWriter:
    """Sink adaptor for either format; call :meth:`close` to flush raw padding."""

    def __init__(self, sink: BinaryIO, io_format: IOFormat = IOFormat.ASCII):
        self.sink = sink
        self.io_format = io_format
        self._carry = np.zeros(0, dtype=np.uint8)
        self.bits_written = 0

    def write(self, bits: np.ndarray) -> None:
        bits = np.asarray(bits, dtype=np.uint8)
        self.bits_written += bits.size
        if self.io_format is IOFormat.ASCII:
            self.sink.write((bits + ord("0")).tobytes() + b"\n")
            return
        if self._carry.size:
            bits = np.concatenate([self._carry, bits])
        whole = bits.size - bits.size % 8
        if whole:
            self.sink.write(np.packbits(bits[:whole]).tobytes())
        self._carry = bits[whole:].copy()

    def close(self) -> None:
        if self._carry.size:
            self.sink.write(np.packbits(self._carry).tobytes())
            self._carry = self._carry[:0]
        flush = getattr(self.sink, "flush", None)
        if flush is not None:
            flush()


class StreamResult(NamedTuple):
    blocks: int
    pad_bits: int


def iter_frames(chunks, ncpbs: int, policy: PartialPolicy) -> Iterator[tuple[np.ndarray, int]]:
    """Regroup bit chunks into ``(frame, pad_bits)`` pairs of exactly ``ncpbs`` bits."""
    pending = np.zeros(0, dtype=np.uint8)
    frame = 0
    for chunk in chunks:
        pending = np.concatenate([pending, chunk]) if pending.size else chunk
        usable = pending.size - pending.size % ncpbs
        for start in range(0, usable, ncpbs):
            yield pending[start : start + ncpbs], 0
            frame += 1
        pending = pending[usable:]
    if pending.size:
        if policy is PartialPolicy.STRICT:
            raise PartialBlock(frame, pending.size, ncpbs)
        pad = ncpbs - pending.size
        yield np.concatenate([pending, np.zeros(pad, dtype=np.uint8)]), pad


def process_stream(
    params: InterleaverParams,
    direction: Direction,
    source: BinaryIO,
    sink: BinaryIO,
    partial_policy: PartialPolicy = PartialPolicy.STRICT,
    io_format: IOFormat = IOFormat.ASCII,
    bit_count: int | None = None,
) -> StreamResult:
    """Permute ``source`` frame by frame into ``sink``.

    Frames are written as they complete, so under the strict policy every
    whole frame before a trailing partial one has already reached ``sink``
    when :class:`~wimax_interleaver.errors.PartialBlock` is raised.
    OS-level failures surface as :class:`StreamIOError` carrying the frame index.
    """
    index = _scatter_index(params, direction)
    writer = BitWriter(sink, io_format)
    blocks = 0
    pad_bits = 0
    frames = iter_frames(read_bits(source, io_format, bit_count), params.ncpbs, partial_policy)
    try:
        try:
            for frame, pad in frames:
                out = np.empty_like(frame)
                out[index] = frame
                writer.write(out)
                blocks += 1
                pad_bits += pad
        finally:
            writer.close()
    except OSError as exc:
        raise StreamIOError(blocks, exc) from exc
    return StreamResult(blocks, pad_bits)
