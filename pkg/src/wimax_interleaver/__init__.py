"""IEEE 802.16 (WiMAX) channel interleaver and a division-free deinterleaver
address generator."""

from .analysis import (
    AddressTable,
    DispersionReport,
    EquivalenceReport,
    burst_dispersion,
    emit_address_table,
    sweep_depths,
    verify_equivalence,
)
from .bitstream import (
    BitBlock,
    IOFormat,
    PartialPolicy,
    deinterleave_block,
    interleave_block,
    process_stream,
)
from .floorless import GeneratorState, generate_all, new_generator, next_address, reset
from .permutation import (
    AddressSequence,
    Direction,
    InterleaverParams,
    ModulationScheme,
    build_sequence,
    deinterleaver_address,
    interleaver_address,
    invert,
    make_params,
)

__all__ = [
    "AddressSequence",
    "AddressTable",
    "BitBlock",
    "Direction",
    "DispersionReport",
    "EquivalenceReport",
    "GeneratorState",
    "IOFormat",
    "InterleaverParams",
    "ModulationScheme",
    "PartialPolicy",
    "build_sequence",
    "burst_dispersion",
    "deinterleave_block",
    "deinterleaver_address",
    "emit_address_table",
    "generate_all",
    "interleave_block",
    "interleaver_address",
    "invert",
    "make_params",
    "new_generator",
    "next_address",
    "process_stream",
    "reset",
    "sweep_depths",
    "verify_equivalence",
]
