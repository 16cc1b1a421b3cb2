"""Division-free streaming deinterleaver address generator.

Received bits are scanned row-major over a ``d x columns`` block: row ``j``
outer, column ``i`` inner, so step ``n`` corresponds to received index
``n = j * columns + i``. The address is ``d*i + j`` with a per-modulation
column correction chosen from ``j mod s`` and ``i mod s``:

=========  ===========  ===========  ==================
s          j mod s      i mod s      address
=========  ===========  ===========  ==================
1          any          any          d*i + j
2          0            any          d*i + j
2          1            0            d*(i+1) + j
2          1            1            d*(i-1) + j
3          0            any          d*i + j
3          1            2            d*(i-2) + j
3          1            0, 1         d*(i+1) + j
3          2            0            d*(i+2) + j
3          2            1, 2         d*(i-1) + j
=========  ===========  ===========  ==================

``d*i`` lives in an accumulator, and both residues are phase counters, so a
step uses only addition, subtraction and comparison.
"""

from __future__ import annotations

from .errors import Exhausted
from .permutation import AddressSequence, Direction, InterleaverParams


class GeneratorState:
    """Registers of the step machine. Single owner; not safe to share mutably.

    Attributes mirror the hardware registers: ``row`` (j), ``col`` (i),
    ``base`` (d*i), ``j_phase`` (j mod s), ``i_phase`` (i mod s) and
    ``emitted``.
    """

    __slots__ = (
        "params",
        "row",
        "col",
        "base",
        "j_phase",
        "i_phase",
        "emitted",
        "_d",
        "_two_d",
        "_s",
        "_columns_max",
        "_ncpbs",
    )

    def __init__(self, params: InterleaverParams):
        self.params = params
        self._d = params.d
        self._two_d = params.d + params.d
        self._s = params.s
        self._columns_max = params.columns_max
        self._ncpbs = params.ncpbs
        self.reset()

    def reset(self) -> GeneratorState:
        self.row = 0
        self.col = 0
        self.base = 0
        self.j_phase = 0
        self.i_phase = 0
        self.emitted = 0
        return self

    @property
    def columns(self) -> int:
        return self.params.columns

    @property
    def remaining(self) -> int:
        return self._ncpbs - self.emitted

    def __iter__(self):
        return self

    def __next__(self) -> int:
        return next_address(self)

    def __repr__(self) -> str:
        return (
            f"GeneratorState({self.params.describe()}, row={self.row}, col={self.col}, "
            f"base={self.base}, j_phase={self.j_phase}, i_phase={self.i_phase}, "
            f"emitted={self.emitted})"
        )


def new_generator(params: InterleaverParams) -> GeneratorState:
    return GeneratorState(params)


def reset(state: GeneratorState) -> GeneratorState:
    return state.reset()


def next_address(state: GeneratorState) -> int:
    """Emit the deinterleaver address for the next received bit and advance."""
    if state.emitted == state._ncpbs:
        raise Exhausted(f"all {state._ncpbs} addresses already emitted")

    d = state._d
    s = state._s
    j = state.row
    base = state.base
    jp = state.j_phase
    ip = state.i_phase

    if s == 1 or jp == 0:
        address = base + j
    elif s == 2:
        if ip == 0:
            address = base + d + j
        else:
            address = base - d + j
    elif jp == 1:
        if ip == 2:
            address = base - state._two_d + j
        else:
            address = base + d + j
    else:
        if ip == 0:
            address = base + state._two_d + j
        else:
            address = base - d + j

    # advance: column counter with terminal count columns_max, row on wrap
    if state.col == state._columns_max:
        state.col = 0
        state.base = 0
        state.i_phase = 0
        state.row = j + 1
        jp = jp + 1
        state.j_phase = 0 if jp == s else jp
    else:
        state.col += 1
        state.base = base + d
        ip = ip + 1
        state.i_phase = 0 if ip == s else ip
    state.emitted += 1
    return address


def generate_all(params: InterleaverParams) -> AddressSequence:
    """Drain a fresh generator into an :class:`AddressSequence` (emission order)."""
    state = GeneratorState(params)
    addresses = tuple(next_address(state) for _ in range(params.ncpbs))
    return AddressSequence(params, Direction.DEINTERLEAVE, addresses)
